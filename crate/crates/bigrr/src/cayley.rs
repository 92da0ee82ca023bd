//! Bipartite Cayley digraphs: connection sets drawn from R∖M, the digraph
//! construction `(g, h) is an arc iff g·h⁻¹ ∈ S`, and the two structural
//! predicates (generation = connectivity, inverse-closure = graphhood) the
//! search pipeline keys on.

use thiserror::Error;

use crate::group::{FiniteGroup, Subgroup};

/// Automorphism searches are exponential in the worst case; digraphs stay
/// desk-sized.
pub const MAX_DIGRAPH_VERTICES: usize = 128;

#[derive(Debug, Error)]
pub enum CayleyError {
    #[error("connection set element {0} lies inside M")]
    InsideSubgroup(usize),
    #[error("element id {0} out of range")]
    OutOfRange(usize),
    #[error("digraph on {n} vertices exceeds cap {cap}")]
    SizeExceeded { n: usize, cap: usize },
}

/// A validated connection set: a subset of R∖M, stored sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConnectionSet {
    elems: Vec<usize>,
    parent_order: usize,
}

impl ConnectionSet {
    pub fn new(r: &FiniteGroup, m: &Subgroup, mut elems: Vec<usize>) -> Result<Self, CayleyError> {
        elems.sort_unstable();
        elems.dedup();
        for &s in &elems {
            if s >= r.order() {
                return Err(CayleyError::OutOfRange(s));
            }
            if m.contains(s) {
                return Err(CayleyError::InsideSubgroup(s));
            }
        }
        Ok(ConnectionSet { elems, parent_order: r.order() })
    }

    /// Decodes a bitmask over an (ascending) complement listing. Used by the
    /// exhaustive scans, which enumerate subsets as integers.
    pub fn from_mask(
        r: &FiniteGroup,
        m: &Subgroup,
        complement: &[usize],
        mask: u64,
    ) -> Result<Self, CayleyError> {
        let elems = complement
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &s)| s)
            .collect();
        ConnectionSet::new(r, m, elems)
    }

    pub fn elements(&self) -> &[usize] {
        &self.elems
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }
}

/// A dense small digraph: adjacency lists plus row bitmasks for O(1) arc
/// queries, and a two-coloring recording the bipartition (not imposed on
/// automorphisms).
#[derive(Clone, Debug)]
pub struct CayleyDigraph {
    n: usize,
    words: usize,
    out: Vec<Vec<usize>>,
    ins: Vec<Vec<usize>>,
    out_bits: Vec<u64>,
    in_bits: Vec<u64>,
    parts: Vec<u8>,
}

impl CayleyDigraph {
    fn empty(n: usize, parts: Vec<u8>) -> Result<Self, CayleyError> {
        if n > MAX_DIGRAPH_VERTICES {
            return Err(CayleyError::SizeExceeded { n, cap: MAX_DIGRAPH_VERTICES });
        }
        let words = n.div_ceil(64).max(1);
        Ok(CayleyDigraph {
            n,
            words,
            out: vec![Vec::new(); n],
            ins: vec![Vec::new(); n],
            out_bits: vec![0; n * words],
            in_bits: vec![0; n * words],
            parts,
        })
    }

    fn add_arc(&mut self, u: usize, v: usize) {
        self.out[u].push(v);
        self.ins[v].push(u);
        self.out_bits[u * self.words + v / 64] |= 1 << (v % 64);
        self.in_bits[v * self.words + u / 64] |= 1 << (u % 64);
    }

    fn finish(&mut self) {
        for list in self.out.iter_mut().chain(self.ins.iter_mut()) {
            list.sort_unstable();
        }
    }

    /// Builds an arbitrary digraph from an arc list (testing and ingestion;
    /// duplicate arcs are rejected implicitly by the bitmask check).
    pub fn from_adjacency(
        n: usize,
        arcs: &[(usize, usize)],
        parts: Option<Vec<u8>>,
    ) -> Result<Self, CayleyError> {
        let parts = parts.unwrap_or_else(|| vec![0; n]);
        let mut g = CayleyDigraph::empty(n, parts)?;
        for &(u, v) in arcs {
            if u >= n {
                return Err(CayleyError::OutOfRange(u));
            }
            if v >= n {
                return Err(CayleyError::OutOfRange(v));
            }
            if !g.arc(u, v) {
                g.add_arc(u, v);
            }
        }
        g.finish();
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn arc(&self, u: usize, v: usize) -> bool {
        self.out_bits[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    pub fn out_neighbors(&self, v: usize) -> &[usize] {
        &self.out[v]
    }

    pub fn in_neighbors(&self, v: usize) -> &[usize] {
        &self.ins[v]
    }

    #[inline]
    pub(crate) fn out_row(&self, v: usize) -> &[u64] {
        &self.out_bits[v * self.words..(v + 1) * self.words]
    }

    #[inline]
    pub(crate) fn in_row(&self, v: usize) -> &[u64] {
        &self.in_bits[v * self.words..(v + 1) * self.words]
    }

    pub fn parts(&self) -> &[u8] {
        &self.parts
    }

    /// One line per vertex: `v: h1 h2 …` (debug export).
    pub fn export_adjacency(&self) -> String {
        let mut s = String::new();
        for v in 0..self.n {
            s.push_str(&v.to_string());
            s.push(':');
            for w in &self.out[v] {
                s.push(' ');
                s.push_str(&w.to_string());
            }
            s.push('\n');
        }
        s
    }
}

/// out(g) = { s⁻¹·g : s ∈ S }, so that (g, h) is an arc iff g·h⁻¹ ∈ S.
/// Right translations are then automorphisms: (gd)·(hd)⁻¹ = g·h⁻¹.
pub fn build_cayley_digraph(
    r: &FiniteGroup,
    m: &Subgroup,
    s: &ConnectionSet,
) -> Result<CayleyDigraph, CayleyError> {
    let n = r.order();
    let parts: Vec<u8> = (0..n).map(|v| u8::from(!m.contains(v))).collect();
    let mut g = CayleyDigraph::empty(n, parts)?;
    for &si in s.elements() {
        let inv_s = r.inv(si);
        for v in 0..n {
            g.add_arc(v, r.mul(inv_s, v));
        }
    }
    g.finish();
    Ok(g)
}

/// Connectivity of the Cayley digraph ⟺ ⟨S⟩ = R.
pub fn generates_whole_group(r: &FiniteGroup, s: &[usize]) -> bool {
    r.subgroup_generated(s).len() == r.order()
}

/// The digraph is a graph (all arcs paired) ⟺ S is inverse-closed.
pub fn is_inverse_closed(r: &FiniteGroup, s: &[usize]) -> bool {
    s.iter().all(|&x| s.contains(&r.inv(x)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{build_group, GroupSpec};

    fn c4() -> (FiniteGroup, Subgroup) {
        let g = build_group(&GroupSpec::Cyclic(4)).unwrap();
        let m = Subgroup::new(&g, vec![0, 2]).unwrap();
        (g, m)
    }

    #[test]
    fn connection_set_validation() {
        let (g, m) = c4();
        assert!(ConnectionSet::new(&g, &m, vec![1, 3]).is_ok());
        assert!(matches!(ConnectionSet::new(&g, &m, vec![2]), Err(CayleyError::InsideSubgroup(2))));
        assert!(matches!(ConnectionSet::new(&g, &m, vec![9]), Err(CayleyError::OutOfRange(9))));
        // Sorted and deduplicated.
        let s = ConnectionSet::new(&g, &m, vec![3, 1, 3]).unwrap();
        assert_eq!(s.elements(), &[1, 3]);
    }

    #[test]
    fn directed_four_cycle() {
        let (g, m) = c4();
        let s = ConnectionSet::new(&g, &m, vec![1]).unwrap();
        let d = build_cayley_digraph(&g, &m, &s).unwrap();
        // out(g) = x⁻¹·g = g - 1 (mod 4): a single directed 4-cycle.
        assert_eq!(d.out_neighbors(0), &[3]);
        assert_eq!(d.out_neighbors(1), &[0]);
        assert_eq!(d.out_neighbors(2), &[1]);
        assert_eq!(d.out_neighbors(3), &[2]);
        assert!(d.arc(0, 3) && !d.arc(3, 0));
        assert_eq!(d.parts(), &[0, 1, 0, 1]);
        // Every arc crosses the bipartition.
        for v in 0..4 {
            for &w in d.out_neighbors(v) {
                assert_ne!(d.parts()[v], d.parts()[w]);
            }
        }
    }

    #[test]
    fn k2_and_arcless() {
        let c2 = build_group(&GroupSpec::Cyclic(2)).unwrap();
        let m = Subgroup::new(&c2, vec![0]).unwrap();
        let s = ConnectionSet::new(&c2, &m, vec![1]).unwrap();
        let d = build_cayley_digraph(&c2, &m, &s).unwrap();
        assert!(d.arc(0, 1) && d.arc(1, 0));

        let (g4, m4) = c4();
        let empty = ConnectionSet::new(&g4, &m4, vec![]).unwrap();
        let d = build_cayley_digraph(&g4, &m4, &empty).unwrap();
        assert!((0..4).all(|v| d.out_neighbors(v).is_empty()));
    }

    #[test]
    fn degrees_equal_set_size() {
        let g = build_group(&GroupSpec::Dicyclic(3)).unwrap();
        let m = Subgroup::new(&g, (0..6).collect()).unwrap();
        let s = ConnectionSet::new(&g, &m, vec![6, 8, 11]).unwrap();
        let d = build_cayley_digraph(&g, &m, &s).unwrap();
        for v in 0..g.order() {
            assert_eq!(d.out_neighbors(v).len(), 3);
            assert_eq!(d.in_neighbors(v).len(), 3);
        }
        // Arc definition checked directly against the group.
        for u in 0..g.order() {
            for v in 0..g.order() {
                let expected = s.elements().contains(&g.mul(u, g.inv(v)));
                assert_eq!(d.arc(u, v), expected, "({u}, {v})");
            }
        }
    }

    #[test]
    fn right_translations_are_automorphisms() {
        // For every d ∈ R, g ↦ g·d preserves arcs (groups up to order 32).
        for spec in [
            GroupSpec::Abelian(vec![4, 2]),
            GroupSpec::GeneralizedDihedral(vec![8]),
            GroupSpec::Dicyclic(4),
            GroupSpec::Abelian(vec![2, 2, 2, 2, 2]),
        ] {
            let g = build_group(&spec).unwrap();
            let m = &g.index2_subgroups()[0];
            let complement = m.complement();
            // A fixed, irregular-looking subset of the complement.
            let elems: Vec<usize> = complement
                .iter()
                .copied()
                .enumerate()
                .filter(|(i, _)| i % 3 != 1)
                .map(|(_, s)| s)
                .collect();
            let s = ConnectionSet::new(&g, m, elems).unwrap();
            let d = build_cayley_digraph(&g, m, &s).unwrap();
            for t in 0..g.order() {
                for u in 0..g.order() {
                    for &w in d.out_neighbors(u) {
                        assert!(d.arc(g.mul(u, t), g.mul(w, t)), "{spec:?} d={t}");
                    }
                }
            }
        }
    }

    #[test]
    fn generation_and_inverse_closure() {
        let (g, _) = c4();
        assert!(generates_whole_group(&g, &[1]));
        assert!(!generates_whole_group(&g, &[2]));
        assert!(is_inverse_closed(&g, &[1, 3]));
        assert!(!is_inverse_closed(&g, &[1]));

        let klein = build_group(&GroupSpec::Abelian(vec![2, 2])).unwrap();
        assert!(!generates_whole_group(&klein, &[1]));

        let q8 = build_group(&GroupSpec::Dicyclic(2)).unwrap();
        // {j, k} generates Q8.
        assert!(generates_whole_group(&q8, &[4, 5]));

        let d4 = build_group(&GroupSpec::GeneralizedDihedral(vec![4])).unwrap();
        assert!(is_inverse_closed(&d4, &[4, 5])); // two reflections

        // Graph ⟺ inverse-closed: every arc is paired exactly when S = S⁻¹.
        let m = Subgroup::new(&d4, vec![0, 1, 2, 3]).unwrap();
        for elems in [vec![4], vec![4, 6], vec![5, 6, 7]] {
            let s = ConnectionSet::new(&d4, &m, elems.clone()).unwrap();
            let d = build_cayley_digraph(&d4, &m, &s).unwrap();
            let paired = (0..8).all(|u| d.out_neighbors(u).iter().all(|&w| d.arc(w, u)));
            assert_eq!(paired, is_inverse_closed(&d4, &elems), "{elems:?}");
        }
    }

    #[test]
    fn from_adjacency_and_export() {
        let d = CayleyDigraph::from_adjacency(3, &[(0, 1), (1, 2), (0, 1)], None).unwrap();
        assert_eq!(d.out_neighbors(0), &[1]);
        assert_eq!(d.in_neighbors(2), &[1]);
        assert_eq!(d.export_adjacency(), "0: 1\n1: 2\n2:\n");
        assert!(matches!(
            CayleyDigraph::from_adjacency(2, &[(0, 5)], None),
            Err(CayleyError::OutOfRange(5))
        ));
        assert!(matches!(
            CayleyDigraph::from_adjacency(300, &[], None),
            Err(CayleyError::SizeExceeded { n: 300, cap: 128 })
        ));
    }
}
