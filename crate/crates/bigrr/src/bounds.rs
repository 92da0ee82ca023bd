//! The asymptotic lower bound on the number of bipartite DRRs of a pair
//! (R, M): 2^{n/2} − 5·2^{3n/8 + log₂n·log₂(n/2)} for n = |R|. The sign is
//! decided by exact-enough exponent comparison, and the value is computed
//! exactly whenever both exponents are integers (n a power of two, 8 | n).

use num_bigint::{BigInt, Sign};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

/// Sign and (where representable) exact value of the DRR-count lower bound
/// at group order `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundValue {
    pub n: u64,
    /// −1, 0, or +1; always consistent with `exact` when that is present.
    pub sign: i8,
    pub exact: Option<BigInt>,
}

impl Serialize for BoundValue {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("BoundValue", 3)?;
        s.serialize_field("n", &self.n)?;
        s.serialize_field("sign", &self.sign)?;
        s.serialize_field("exact", &self.exact.as_ref().map(|v| v.to_string()))?;
        s.end()
    }
}

/// Exponent of the subtracted term: log₂5 + 3n/8 + log₂n · log₂(n/2).
fn negative_term_log2(n: u64) -> f64 {
    let nf = n as f64;
    5f64.log2() + 3.0 * nf / 8.0 + nf.log2() * (nf / 2.0).log2()
}

/// Lower bound on the number of connection sets S ⊆ R∖M with Cay(R, S) a
/// bipartite DRR, for |R| = n.
///
/// Panics if `n` is odd or zero — the bound is about index-2 subgroups.
pub fn drr_lower_bound(n: u64) -> BoundValue {
    assert!(n >= 2 && n % 2 == 0, "bound applies to even group orders, got {n}");
    let exact = exact_value(n);
    let sign = match &exact {
        Some(v) => match v.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        },
        None => {
            let diff = n as f64 / 2.0 - negative_term_log2(n);
            if diff > 0.0 {
                1
            } else {
                -1
            }
        }
    };
    BoundValue { n, sign, exact }
}

/// 2^{n/2} − 5·2^{3n/8 + log₂n·log₂(n/2)} exactly, when both exponents are
/// integral: n = 2^k with k ≥ 3, where the second exponent is
/// 3n/8 + k(k−1).
fn exact_value(n: u64) -> Option<BigInt> {
    if !n.is_power_of_two() || n % 8 != 0 {
        return None;
    }
    let k = n.trailing_zeros() as u64;
    let positive = BigInt::from(1) << (n / 2);
    let negative = BigInt::from(5) << (3 * n / 8 + k * (k - 1));
    Some(positive - negative)
}

/// Scan horizon for [`bound_crossover`].
pub const CROSSOVER_HORIZON: u64 = 1_000_000;

/// The smallest even n with `drr_lower_bound(m).sign > 0` for every even
/// m ≥ n up to the scan horizon.
pub fn bound_crossover() -> u64 {
    let mut last_nonpositive = 0;
    for n in (2..=CROSSOVER_HORIZON).step_by(2) {
        if drr_lower_bound(n).sign <= 0 {
            last_nonpositive = n;
        }
    }
    last_nonpositive + 2
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_values() {
        let b8 = drr_lower_bound(8);
        assert_eq!(b8.sign, -1);
        assert_eq!(b8.exact, Some(BigInt::from(16 - 2560)));

        assert_eq!(drr_lower_bound(638).sign, -1);
        assert_eq!(drr_lower_bound(638).exact, None);
        assert_eq!(drr_lower_bound(640).sign, 1);
    }

    #[test]
    fn crossover_is_640() {
        assert_eq!(bound_crossover(), 640);
    }

    #[test]
    fn exact_values_small_powers_of_two() {
        // n = 16: 2^8 − 5·2^{6+4·3} = 256 − 5·2^18.
        assert_eq!(drr_lower_bound(16).exact, Some(BigInt::from(256i64 - 5 * (1i64 << 18))));
        // n = 2048 = 2^11: 2^1024 dominates 5·2^{768+110}.
        let b = drr_lower_bound(2048);
        assert_eq!(b.sign, 1);
        let v = b.exact.unwrap();
        assert_eq!(v.sign(), Sign::Plus);
        assert_eq!(v, (BigInt::from(1) << 1024) - (BigInt::from(5) << 878));
        // Exponents not both integral: no exact form.
        assert_eq!(drr_lower_bound(4).exact, None);
        assert_eq!(drr_lower_bound(12).exact, None);
    }

    #[test]
    fn sign_matches_exact_wherever_exact_exists() {
        for k in 3..16u32 {
            let n = 1u64 << k;
            let b = drr_lower_bound(n);
            let float_sign = if n as f64 / 2.0 > negative_term_log2(n) { 1 } else { -1 };
            assert_eq!(b.sign, float_sign, "n = {n}");
        }
    }

    #[test]
    fn negative_below_crossover_positive_after() {
        for n in (2..640u64).step_by(2) {
            assert_eq!(drr_lower_bound(n).sign, -1, "n = {n}");
        }
        for n in (640..10_000u64).step_by(2) {
            assert_eq!(drr_lower_bound(n).sign, 1, "n = {n}");
        }
    }

    #[test]
    #[should_panic(expected = "even group orders")]
    fn odd_order_rejected() {
        drr_lower_bound(7);
    }

    #[test]
    fn json_shape() {
        let json = serde_json::to_value(drr_lower_bound(8)).unwrap();
        assert_eq!(json["n"], 8);
        assert_eq!(json["sign"], -1);
        assert_eq!(json["exact"], "-2544");
        let json = serde_json::to_value(drr_lower_bound(10)).unwrap();
        assert_eq!(json["exact"], serde_json::Value::Null);
    }
}
