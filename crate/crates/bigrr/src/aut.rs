//! Group automorphisms: exhaustive enumeration for small groups, and a
//! heavily pruned search for "half-inverting" automorphisms — non-identity
//! maps with `g^φ ∈ {g, g⁻¹}` for every `g` outside an index-2 subgroup.
//!
//! The enumerator backtracks over images of a short generating sequence,
//! closing each tentative assignment under products so the homomorphism
//! property is verified incrementally rather than per-leaf.

use std::ops::ControlFlow;

use num_bigint::BigUint;
use thiserror::Error;

use crate::group::{FiniteGroup, GroupError, Subgroup};

/// Enumeration is exponential in the worst case; callers stay small.
pub const MAX_AUT_ORDER: usize = 64;

#[derive(Debug, Error)]
pub enum AutError {
    #[error("group order {order} exceeds automorphism cap {cap}")]
    CapExceeded { order: usize, cap: usize },
    #[error("subgroup is not invariant under the automorphism")]
    NotInvariant,
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// A verified automorphism, stored as its full image array.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GroupAutomorphism {
    image: Vec<usize>,
}

impl GroupAutomorphism {
    /// Validates bijectivity, identity preservation, and the full n²
    /// homomorphism property.
    pub fn new(g: &FiniteGroup, image: Vec<usize>) -> Result<Self, GroupError> {
        let n = g.order();
        if image.len() != n {
            return Err(GroupError::Validation("image length mismatch".into()));
        }
        let mut seen = vec![false; n];
        for &y in &image {
            if y >= n || std::mem::replace(&mut seen[y], true) {
                return Err(GroupError::Validation("image is not a bijection".into()));
            }
        }
        if image[0] != 0 {
            return Err(GroupError::Validation("identity not fixed".into()));
        }
        for a in 0..n {
            for b in 0..n {
                if image[g.mul(a, b)] != g.mul(image[a], image[b]) {
                    return Err(GroupError::Validation(format!(
                        "not a homomorphism at ({a}, {b})"
                    )));
                }
            }
        }
        Ok(GroupAutomorphism { image })
    }

    pub fn identity(g: &FiniteGroup) -> Self {
        GroupAutomorphism { image: (0..g.order()).collect() }
    }

    pub(crate) fn from_verified(image: Vec<usize>) -> Self {
        GroupAutomorphism { image }
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.image[x]
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &y)| i == y)
    }

    /// Half-inverting with respect to `m`: non-identity and fixes-or-inverts
    /// every element outside `m`.
    pub fn is_half_inverting(&self, g: &FiniteGroup, m: &Subgroup) -> bool {
        !self.is_identity()
            && (0..g.order())
                .filter(|&x| !m.contains(x))
                .all(|x| self.image[x] == x || self.image[x] == g.inv(x))
    }
}

/// Greedy generating sequence: repeatedly the smallest element id not in the
/// closure of the prefix. Short (≤ log₂|G|) and deterministic.
pub fn greedy_generating_sequence(g: &FiniteGroup) -> Vec<usize> {
    greedy_generators_from(g, None)
}

fn greedy_generators_from(g: &FiniteGroup, pool: Option<&[usize]>) -> Vec<usize> {
    let mut gens: Vec<usize> = Vec::new();
    let mut closure = g.subgroup_generated(&gens);
    while closure.len() < g.order() {
        let next = match pool {
            Some(pool) => pool.iter().copied().find(|&x| !closure.contains(x)),
            None => (1..g.order()).find(|&x| !closure.contains(x)),
        };
        let Some(next) = next else {
            // The pool failed to generate; callers only pass generating pools.
            unreachable!("generator pool does not generate the group");
        };
        gens.push(next);
        closure = g.subgroup_generated(&gens);
    }
    gens
}

/// Backtracking state: a partial map closed under products at all times.
struct Partial<'a> {
    g: &'a FiniteGroup,
    image: Vec<usize>, // usize::MAX = unassigned
    used: Vec<bool>,
    defined: Vec<usize>,
}

const UNSET: usize = usize::MAX;

impl<'a> Partial<'a> {
    fn new(g: &'a FiniteGroup) -> Self {
        let n = g.order();
        let mut p = Partial {
            g,
            image: vec![UNSET; n],
            used: vec![false; n],
            defined: Vec::with_capacity(n),
        };
        // The identity is pinned before any search step.
        p.image[0] = 0;
        p.used[0] = true;
        p.defined.push(0);
        p
    }

    /// Assigns `x ↦ y` and closes under products against everything already
    /// defined. Returns false (and rolls back) on any conflict, including a
    /// `constraint` veto. The constraint sees every forced assignment, not
    /// just the root one.
    fn try_extend(
        &mut self,
        x: usize,
        y: usize,
        constraint: &mut dyn FnMut(usize, usize) -> bool,
    ) -> bool {
        let mark = self.defined.len();
        let mut queue = vec![(x, y)];
        while let Some((u, v)) = queue.pop() {
            if self.image[u] != UNSET {
                if self.image[u] != v {
                    self.rollback(mark);
                    return false;
                }
                continue;
            }
            if self.used[v]
                || self.g.element_order(u) != self.g.element_order(v)
                || !constraint(u, v)
            {
                self.rollback(mark);
                return false;
            }
            self.image[u] = v;
            self.used[v] = true;
            self.defined.push(u);
            for i in 0..self.defined.len() {
                let d = self.defined[i];
                let dv = self.image[d];
                queue.push((self.g.mul(u, d), self.g.mul(v, dv)));
                queue.push((self.g.mul(d, u), self.g.mul(dv, v)));
            }
        }
        true
    }

    fn rollback(&mut self, mark: usize) {
        while self.defined.len() > mark {
            let x = self.defined.pop().unwrap();
            self.used[self.image[x]] = false;
            self.image[x] = UNSET;
        }
    }

    fn is_total(&self) -> bool {
        self.defined.len() == self.g.order()
    }
}

/// Core enumerator. Visits every automorphism satisfying `constraint` (one
/// call per forced assignment), in the deterministic order induced by trying
/// candidate images ascending. The visitor can stop the walk early.
fn enumerate_with(
    g: &FiniteGroup,
    gens: &[usize],
    constraint: &mut dyn FnMut(usize, usize) -> bool,
    visit: &mut dyn FnMut(&[usize]) -> ControlFlow<()>,
) -> ControlFlow<()> {
    fn recurse(
        p: &mut Partial,
        gens: &[usize],
        depth: usize,
        constraint: &mut dyn FnMut(usize, usize) -> bool,
        visit: &mut dyn FnMut(&[usize]) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        if depth == gens.len() {
            debug_assert!(p.is_total(), "generators must close to the whole group");
            return visit(&p.image);
        }
        let x = gens[depth];
        if p.image[x] != UNSET {
            // Already forced by closure of earlier choices.
            return recurse(p, gens, depth + 1, constraint, visit);
        }
        let mark = p.defined.len();
        for y in 0..p.g.order() {
            if p.try_extend(x, y, constraint) {
                recurse(p, gens, depth + 1, constraint, visit)?;
                p.rollback(mark);
            }
        }
        ControlFlow::Continue(())
    }
    let mut p = Partial::new(g);
    recurse(&mut p, gens, 0, constraint, visit)
}

/// The complete automorphism group of `g`, enumerated by backtracking over
/// generator images.
pub fn automorphism_group(g: &FiniteGroup) -> Result<Vec<GroupAutomorphism>, AutError> {
    if g.order() > MAX_AUT_ORDER {
        return Err(AutError::CapExceeded { order: g.order(), cap: MAX_AUT_ORDER });
    }
    let gens = greedy_generating_sequence(g);
    let mut out = Vec::new();
    let _ = enumerate_with(g, &gens, &mut |_, _| true, &mut |image| {
        out.push(GroupAutomorphism::from_verified(image.to_vec()));
        ControlFlow::Continue(())
    });
    Ok(out)
}

/// All automorphisms of `r` leaving `m` setwise invariant, identity
/// included. Enumerated directly under the coset constraint, so the full
/// automorphism group is never materialized.
pub fn m_invariant_automorphisms(
    r: &FiniteGroup,
    m: &Subgroup,
) -> Result<Vec<GroupAutomorphism>, AutError> {
    if r.order() > MAX_AUT_ORDER {
        return Err(AutError::CapExceeded { order: r.order(), cap: MAX_AUT_ORDER });
    }
    let gens = greedy_generating_sequence(r);
    let mut out = Vec::new();
    // φ(M) = M forces φ(R∖M) = R∖M, so constrain both cosets.
    let mut constraint = |x: usize, y: usize| m.contains(x) == m.contains(y);
    let _ = enumerate_with(r, &gens, &mut constraint, &mut |image| {
        out.push(GroupAutomorphism::from_verified(image.to_vec()));
        ControlFlow::Continue(())
    });
    Ok(out)
}

/// Exhaustive search for a non-identity φ with `g^φ ∈ {g, g⁻¹}` for every
/// `g ∈ R∖M`. Returns the first one found, or `None` when no such
/// automorphism exists.
///
/// The search generates from `R∖M` (which always generates `R`), so every
/// generator has at most two candidate images; combined with the coset
/// constraints this makes the search cheap even where |Aut(R)| is huge.
pub fn find_half_inverting_automorphism(
    r: &FiniteGroup,
    m: &Subgroup,
) -> Result<Option<GroupAutomorphism>, AutError> {
    if r.order() > MAX_AUT_ORDER {
        return Err(AutError::CapExceeded { order: r.order(), cap: MAX_AUT_ORDER });
    }
    let complement = m.complement();
    let gens = greedy_generators_from(r, Some(&complement));
    let mut found: Option<GroupAutomorphism> = None;
    // Necessary conditions on every assignment: the complement must map
    // fix-or-invert, and M must map into M (forced since g, g⁻¹ ∉ M).
    let mut constraint = |x: usize, y: usize| {
        if m.contains(x) {
            m.contains(y)
        } else {
            y == x || y == r.inv(x)
        }
    };
    let _ = enumerate_with(r, &gens, &mut constraint, &mut |image| {
        if image.iter().enumerate().any(|(i, &y)| i != y) {
            found = Some(GroupAutomorphism::from_verified(image.to_vec()));
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    Ok(found)
}

/// ℓ = number of orbits of ⟨φ⟩ on R∖M. Errors unless M is φ-invariant.
pub fn complement_orbit_count(
    g: &FiniteGroup,
    phi: &GroupAutomorphism,
    m: &Subgroup,
) -> Result<usize, AutError> {
    if m.members().iter().any(|&x| !m.contains(phi.apply(x))) {
        return Err(AutError::NotInvariant);
    }
    let mut seen = vec![false; g.order()];
    let mut orbits = 0;
    for x in 0..g.order() {
        if m.contains(x) || seen[x] {
            continue;
        }
        orbits += 1;
        let mut p = x;
        while !seen[p] {
            seen[p] = true;
            p = phi.apply(p);
        }
    }
    Ok(orbits)
}

/// |{S ⊆ R∖M : S^φ = S}| = 2^ℓ, as an exact big integer.
pub fn invariant_subset_count(
    g: &FiniteGroup,
    phi: &GroupAutomorphism,
    m: &Subgroup,
) -> Result<BigUint, AutError> {
    let ell = complement_orbit_count(g, phi, m)?;
    Ok(BigUint::from(1u32) << ell)
}
