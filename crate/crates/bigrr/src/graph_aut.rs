//! Digraph automorphisms by individualization-refinement: exact stabilizer
//! and automorphism-group orders for small digraphs, and the DRR/GRR test
//! (trivial stabilizer of the identity vertex).
//!
//! The search keeps two partitions — source and target — refined in
//! lockstep; a branch pins one vertex of the first smallest non-singleton
//! source cell and tries every vertex of the aligned target cell. Candidate
//! bijections at discrete leaves are verified arc-by-arc, so refinement only
//! ever prunes, never certifies.

use num_bigint::BigUint;
use thiserror::Error;

use crate::cayley::{
    build_cayley_digraph, generates_whole_group, CayleyDigraph, CayleyError, ConnectionSet,
    MAX_DIGRAPH_VERTICES,
};
use crate::group::{FiniteGroup, Subgroup};

#[derive(Debug, Error)]
pub enum GraphAutError {
    #[error("digraph on {n} vertices exceeds cap {cap}")]
    SizeExceeded { n: usize, cap: usize },
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error(transparent)]
    Cayley(#[from] CayleyError),
}

/// An ordered partition of the vertex set. Cells are non-empty, disjoint,
/// and kept in a deterministic order; vertices within a cell stay ascending.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderedPartition {
    cells: Vec<Vec<usize>>,
}

impl OrderedPartition {
    pub fn unit(n: usize) -> Self {
        OrderedPartition { cells: if n == 0 { Vec::new() } else { vec![(0..n).collect()] } }
    }

    pub fn new(n: usize, cells: Vec<Vec<usize>>) -> Result<Self, GraphAutError> {
        let mut seen = vec![false; n];
        for cell in &cells {
            if cell.is_empty() {
                return Err(GraphAutError::InvalidPartition("empty cell".into()));
            }
            for &v in cell {
                if v >= n || std::mem::replace(&mut seen[v], true) {
                    return Err(GraphAutError::InvalidPartition(format!(
                        "vertex {v} out of range or repeated"
                    )));
                }
            }
        }
        if seen.iter().any(|&s| !s) {
            return Err(GraphAutError::InvalidPartition("cells do not cover".into()));
        }
        let cells = cells
            .into_iter()
            .map(|mut c| {
                c.sort_unstable();
                c
            })
            .collect();
        Ok(OrderedPartition { cells })
    }

    pub fn cells(&self) -> &[Vec<usize>] {
        &self.cells
    }

    pub fn is_discrete(&self) -> bool {
        self.cells.iter().all(|c| c.len() == 1)
    }
}

/// Per-vertex signature against the current cells: (out-count, in-count)
/// into each cell, in cell order.
fn signature(g: &CayleyDigraph, v: usize, cell_masks: &[Vec<u64>]) -> Vec<(u32, u32)> {
    let out = g.out_row(v);
    let ins = g.in_row(v);
    cell_masks
        .iter()
        .map(|mask| {
            let mut o = 0;
            let mut i = 0;
            for (w, &m) in mask.iter().enumerate() {
                o += (out[w] & m).count_ones();
                i += (ins[w] & m).count_ones();
            }
            (o, i)
        })
        .collect()
}

fn cell_masks(n: usize, cells: &[Vec<usize>]) -> Vec<Vec<u64>> {
    let words = n.div_ceil(64).max(1);
    cells
        .iter()
        .map(|cell| {
            let mut mask = vec![0u64; words];
            for &v in cell {
                mask[v / 64] |= 1 << (v % 64);
            }
            mask
        })
        .collect()
}

/// Splits `cells[ci]` by signature. Returns the fragments sorted
/// lexicographically by signature (vertices ascending within a fragment),
/// or None when the cell does not split.
fn split_cell(
    g: &CayleyDigraph,
    cells: &[Vec<usize>],
    masks: &[Vec<u64>],
    ci: usize,
) -> Option<Vec<(Vec<(u32, u32)>, Vec<usize>)>> {
    let cell = &cells[ci];
    if cell.len() <= 1 {
        return None;
    }
    let mut tagged: Vec<(Vec<(u32, u32)>, usize)> =
        cell.iter().map(|&v| (signature(g, v, masks), v)).collect();
    if tagged.iter().all(|(sig, _)| *sig == tagged[0].0) {
        return None;
    }
    tagged.sort();
    let mut fragments: Vec<(Vec<(u32, u32)>, Vec<usize>)> = Vec::new();
    for (sig, v) in tagged {
        match fragments.last_mut() {
            Some((last_sig, verts)) if *last_sig == sig => verts.push(v),
            _ => fragments.push((sig, vec![v])),
        }
    }
    Some(fragments)
}

/// Equitable refinement of a single partition (used where source and target
/// coincide). Restarts the scan after every split; deterministic.
fn refine(g: &CayleyDigraph, mut cells: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    'outer: loop {
        let masks = cell_masks(g.n(), &cells);
        for ci in 0..cells.len() {
            if let Some(fragments) = split_cell(g, &cells, &masks, ci) {
                let replacement: Vec<Vec<usize>> =
                    fragments.into_iter().map(|(_, verts)| verts).collect();
                cells.splice(ci..=ci, replacement);
                continue 'outer;
            }
        }
        return cells;
    }
}

/// Lockstep refinement of an aligned (source, target) pair. Any divergence
/// in split structure proves no automorphism respects the alignment, so the
/// pair is rejected.
fn refine_paired(
    g: &CayleyDigraph,
    mut src: Vec<Vec<usize>>,
    mut dst: Vec<Vec<usize>>,
) -> Option<(Vec<Vec<usize>>, Vec<Vec<usize>>)> {
    'outer: loop {
        let src_masks = cell_masks(g.n(), &src);
        let dst_masks = cell_masks(g.n(), &dst);
        for ci in 0..src.len() {
            let s_frags = split_cell(g, &src, &src_masks, ci);
            let d_frags = split_cell(g, &dst, &dst_masks, ci);
            match (s_frags, d_frags) {
                (None, None) => continue,
                (Some(sf), Some(df)) => {
                    if sf.len() != df.len() {
                        return None;
                    }
                    for ((s_sig, s_verts), (d_sig, d_verts)) in sf.iter().zip(df.iter()) {
                        if s_sig != d_sig || s_verts.len() != d_verts.len() {
                            return None;
                        }
                    }
                    src.splice(ci..=ci, sf.into_iter().map(|(_, v)| v));
                    dst.splice(ci..=ci, df.into_iter().map(|(_, v)| v));
                    continue 'outer;
                }
                // One side splits, the other does not: structure differs.
                _ => return None,
            }
        }
        // Aligned cells must agree in size even without splits.
        debug_assert!(src.iter().zip(dst.iter()).all(|(a, b)| a.len() == b.len()));
        return Some((src, dst));
    }
}

/// Public wrapper: coarsest equitable refinement with deterministic order.
pub fn color_refine(g: &CayleyDigraph, p: &OrderedPartition) -> OrderedPartition {
    OrderedPartition { cells: refine(g, p.cells.clone()) }
}

/// Index of the first smallest non-singleton cell, if any.
fn branch_cell(cells: &[Vec<usize>]) -> Option<usize> {
    let mut best: Option<usize> = None;
    for (ci, cell) in cells.iter().enumerate() {
        if cell.len() > 1 && best.map_or(true, |b| cell.len() < cells[b].len()) {
            best = Some(ci);
        }
    }
    best
}

fn individualize(cells: &[Vec<usize>], ci: usize, v: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::with_capacity(cells.len() + 1);
    for (i, cell) in cells.iter().enumerate() {
        if i == ci {
            out.push(vec![v]);
            out.push(cell.iter().copied().filter(|&w| w != v).collect());
        } else {
            out.push(cell.clone());
        }
    }
    out
}

/// Full verification of a candidate bijection: every arc maps to an arc.
/// Since arcs are counted equally on both sides, forward preservation
/// suffices.
fn verify_map(g: &CayleyDigraph, map: &[usize]) -> bool {
    (0..g.n()).all(|u| g.out_neighbors(u).iter().all(|&w| g.arc(map[u], map[w])))
}

/// Searches for an automorphism aligning `src` to `dst` cell-by-cell.
fn extend_search(
    g: &CayleyDigraph,
    src: Vec<Vec<usize>>,
    dst: Vec<Vec<usize>>,
) -> Option<Vec<usize>> {
    let (src, dst) = refine_paired(g, src, dst)?;
    match branch_cell(&src) {
        None => {
            let mut map = vec![0usize; g.n()];
            for (s_cell, d_cell) in src.iter().zip(dst.iter()) {
                map[s_cell[0]] = d_cell[0];
            }
            verify_map(g, &map).then_some(map)
        }
        Some(ci) => {
            let x = src[ci][0];
            for &y in &dst[ci] {
                if let Some(map) =
                    extend_search(g, individualize(&src, ci, x), individualize(&dst, ci, y))
                {
                    return Some(map);
                }
            }
            None
        }
    }
}

/// Orbit-stabilizer recursion on an already-refined partition (source =
/// target). Returns the exact order of the group of automorphisms fixing
/// every singleton so far, plus one nontrivial witness if the order > 1.
fn stabilizer_rec(g: &CayleyDigraph, cells: Vec<Vec<usize>>) -> (BigUint, Option<Vec<usize>>) {
    let Some(ci) = branch_cell(&cells) else {
        return (BigUint::from(1u32), None);
    };
    let x = cells[ci][0];
    let mut orbit = 1u32;
    let mut witness: Option<Vec<usize>> = None;
    for &y in &cells[ci][1..] {
        if let Some(map) =
            extend_search(g, individualize(&cells, ci, x), individualize(&cells, ci, y))
        {
            orbit += 1;
            if witness.is_none() {
                witness = Some(map);
            }
        }
    }
    let (sub_order, sub_witness) = stabilizer_rec(g, refine(g, individualize(&cells, ci, x)));
    (BigUint::from(orbit) * sub_order, witness.or(sub_witness))
}

/// Early-exit variant: true as soon as any nontrivial automorphism fixing
/// the pinned prefix exists.
fn has_nontrivial_rec(g: &CayleyDigraph, cells: Vec<Vec<usize>>) -> bool {
    let Some(ci) = branch_cell(&cells) else {
        return false;
    };
    let x = cells[ci][0];
    for &y in &cells[ci][1..] {
        if extend_search(g, individualize(&cells, ci, x), individualize(&cells, ci, y)).is_some() {
            return true;
        }
    }
    has_nontrivial_rec(g, refine(g, individualize(&cells, ci, x)))
}

/// Automorphism counts around a vertex: total group order, stabilizer order,
/// and a witness automorphism fixing `v` when the stabilizer is nontrivial.
#[derive(Clone, Debug)]
pub struct AutReport {
    pub group_order: BigUint,
    pub stabilizer_order: BigUint,
    pub witness: Option<Vec<usize>>,
}

fn check_size(n: usize) -> Result<(), GraphAutError> {
    if n > MAX_DIGRAPH_VERTICES {
        return Err(GraphAutError::SizeExceeded { n, cap: MAX_DIGRAPH_VERTICES });
    }
    Ok(())
}

fn pinned_partition(n: usize, v: usize) -> Vec<Vec<usize>> {
    let rest: Vec<usize> = (0..n).filter(|&w| w != v).collect();
    if rest.is_empty() {
        vec![vec![v]]
    } else {
        vec![vec![v], rest]
    }
}

/// Exact |Aut_v| and |Aut| (= orbit of v × |Aut_v|). The two-coloring is
/// carried data only; automorphisms may swap the parts when arcs allow.
pub fn stabilizer_report(g: &CayleyDigraph, v: usize) -> Result<AutReport, GraphAutError> {
    check_size(g.n())?;
    assert!(v < g.n(), "vertex out of range");
    let base = refine(g, pinned_partition(g.n(), v));
    let (stab, witness) = stabilizer_rec(g, base);

    // Orbit of v inside Aut: only vertices sharing v's cell in the refined
    // unit partition are candidates.
    let unit = refine(g, OrderedPartition::unit(g.n()).cells);
    let v_cell =
        unit.iter().find(|cell| cell.contains(&v)).expect("refinement covers all vertices");
    let mut orbit = 0u64;
    for &w in v_cell {
        if w == v {
            orbit += 1;
        } else if extend_search(g, pinned_partition(g.n(), v), pinned_partition(g.n(), w)).is_some()
        {
            orbit += 1;
        }
    }
    Ok(AutReport { group_order: BigUint::from(orbit) * &stab, stabilizer_order: stab, witness })
}

/// |Aut_v| only (with witness), skipping the orbit computation.
pub fn stabilizer_order(
    g: &CayleyDigraph,
    v: usize,
) -> Result<(BigUint, Option<Vec<usize>>), GraphAutError> {
    check_size(g.n())?;
    assert!(v < g.n(), "vertex out of range");
    let base = refine(g, pinned_partition(g.n(), v));
    Ok(stabilizer_rec(g, base))
}

pub fn automorphism_group_order(g: &CayleyDigraph) -> Result<BigUint, GraphAutError> {
    Ok(stabilizer_report(g, 0)?.group_order)
}

/// DRR test with an early exit: true iff no non-identity automorphism fixes
/// the identity vertex. A disconnected Cayley digraph on ≥ 3 vertices always
/// fails, so generation is checked first as a shortcut.
pub fn is_regular_representation(
    r: &FiniteGroup,
    m: &Subgroup,
    s: &ConnectionSet,
) -> Result<bool, GraphAutError> {
    check_size(r.order())?;
    if r.order() >= 3 && !generates_whole_group(r, s.elements()) {
        return Ok(false);
    }
    let g = build_cayley_digraph(r, m, s)?;
    let base = refine(&g, pinned_partition(g.n(), 0));
    Ok(!has_nontrivial_rec(&g, base))
}
