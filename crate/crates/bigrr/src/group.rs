//! Finite groups given by full multiplication tables.
//!
//! Element ids are `0..order` with the identity fixed at id `0`. Every
//! constructor funnels through the same table validator, so a value of
//! type [`FiniteGroup`] is always a genuine group.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rng::splitmix64;

/// Hard cap on group order accepted by [`build_group`] and the parser.
pub const MAX_GROUP_ORDER: usize = 4096;

/// Orders up to this get the full `n^3` associativity check; larger
/// tables are spot-checked on sampled triples.
const FULL_ASSOC_LIMIT: usize = 256;
const SAMPLED_TRIPLES: usize = 10_000;

#[derive(Debug, Error)]
pub enum GroupError {
    #[error("invalid group spec: {0}")]
    InvalidSpec(String),
    #[error("cannot parse Cayley table: {0}")]
    Parse(String),
    #[error("invalid multiplication table: {0}")]
    Validation(String),
    #[error("group order {order} exceeds cap {cap}")]
    OrderCap { order: usize, cap: usize },
    #[error("reading table file: {0}")]
    Io(#[from] std::io::Error),
}

/// A finite group as a validated multiplication table.
#[derive(Clone)]
pub struct FiniteGroup {
    order: usize,
    /// Row-major: `table[a * order + b] = a · b`.
    table: Vec<u16>,
    inv: Vec<u16>,
    elem_order: Vec<u16>,
    name: Option<String>,
}

impl std::fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FiniteGroup").field("order", &self.order).field("name", &self.name).finish()
    }
}

impl FiniteGroup {
    /// Validates and adopts a multiplication table. `rows[a][b] = a · b`.
    pub fn from_rows(name: Option<String>, rows: &[Vec<usize>]) -> Result<Self, GroupError> {
        let n = rows.len();
        if n == 0 {
            return Err(GroupError::Validation("empty table".into()));
        }
        if n > MAX_GROUP_ORDER {
            return Err(GroupError::OrderCap { order: n, cap: MAX_GROUP_ORDER });
        }
        let mut table = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(GroupError::Validation(format!(
                    "row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            for &v in row {
                if v >= n {
                    return Err(GroupError::Validation(format!(
                        "row {i} contains out-of-range id {v}"
                    )));
                }
                table.push(v as u16);
            }
        }

        let g = |a: usize, b: usize| table[a * n + b] as usize;

        // Identity pinned at id 0.
        for x in 0..n {
            if g(0, x) != x || g(x, 0) != x {
                return Err(GroupError::Validation("id 0 is not a two-sided identity".into()));
            }
        }
        // Latin square: each row and column is a bijection.
        let mut seen = vec![false; n];
        for a in 0..n {
            seen.iter_mut().for_each(|s| *s = false);
            for b in 0..n {
                if std::mem::replace(&mut seen[g(a, b)], true) {
                    return Err(GroupError::Validation(format!("row {a} is not a bijection")));
                }
            }
        }
        for b in 0..n {
            seen.iter_mut().for_each(|s| *s = false);
            for a in 0..n {
                if std::mem::replace(&mut seen[g(a, b)], true) {
                    return Err(GroupError::Validation(format!("column {b} is not a bijection")));
                }
            }
        }
        // Two-sided inverses.
        let mut inv = vec![0u16; n];
        for a in 0..n {
            let Some(b) = (0..n).find(|&b| g(a, b) == 0) else {
                return Err(GroupError::Validation(format!("{a} has no right inverse")));
            };
            if g(b, a) != 0 {
                return Err(GroupError::Validation(format!("inverse of {a} is not two-sided")));
            }
            inv[a] = b as u16;
        }
        // Associativity: full below the limit, sampled above it.
        if n <= FULL_ASSOC_LIMIT {
            for a in 0..n {
                for b in 0..n {
                    let ab = g(a, b);
                    for c in 0..n {
                        if g(ab, c) != g(a, g(b, c)) {
                            return Err(GroupError::Validation(format!(
                                "({a}·{b})·{c} != {a}·({b}·{c})"
                            )));
                        }
                    }
                }
            }
        } else {
            let mut state = 0x9e37_79b9_7f4a_7c15u64 ^ (n as u64);
            for _ in 0..SAMPLED_TRIPLES {
                state = splitmix64(state);
                let a = (state % n as u64) as usize;
                state = splitmix64(state);
                let b = (state % n as u64) as usize;
                state = splitmix64(state);
                let c = (state % n as u64) as usize;
                if g(g(a, b), c) != g(a, g(b, c)) {
                    return Err(GroupError::Validation(format!("({a}·{b})·{c} != {a}·({b}·{c})")));
                }
            }
        }

        let mut grp = FiniteGroup { order: n, table, inv, elem_order: Vec::new(), name };
        grp.elem_order = (0..n).map(|x| grp.compute_order(x) as u16).collect();
        Ok(grp)
    }

    fn compute_order(&self, x: usize) -> usize {
        let mut p = x;
        let mut k = 1;
        while p != 0 {
            p = self.mul(p, x);
            k += 1;
        }
        k
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn set_name(&mut self, name: impl Into<String>) {
        self.name = Some(name.into());
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    /// `g⁻¹ · x · g`.
    #[inline]
    pub fn conj(&self, x: usize, g: usize) -> usize {
        self.mul(self.mul(self.inv(g), x), g)
    }

    /// `[a, b] = a⁻¹ b⁻¹ a b`.
    #[inline]
    pub fn commutator(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }

    pub fn element_order(&self, x: usize) -> usize {
        self.elem_order[x] as usize
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (a..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Multiset of element orders as `order -> count`.
    pub fn order_census(&self) -> BTreeMap<usize, usize> {
        let mut census = BTreeMap::new();
        for x in 0..self.order {
            *census.entry(self.elem_order[x] as usize).or_insert(0) += 1;
        }
        census
    }

    pub fn center(&self) -> Subgroup {
        let members: Vec<usize> = (0..self.order)
            .filter(|&x| (0..self.order).all(|y| self.mul(x, y) == self.mul(y, x)))
            .collect();
        Subgroup::new_unchecked(self, members)
    }

    /// The derived subgroup `γ₂(G)`: closure of all commutators.
    pub fn derived_subgroup(&self) -> Subgroup {
        let mut gens = vec![false; self.order];
        for a in 0..self.order {
            for b in 0..self.order {
                gens[self.commutator(a, b)] = true;
            }
        }
        let gen_list: Vec<usize> = (0..self.order).filter(|&x| gens[x]).collect();
        self.subgroup_generated(&gen_list)
    }

    /// Closure of `gens` under multiplication (identity always included).
    pub fn subgroup_generated(&self, gens: &[usize]) -> Subgroup {
        let mut in_set = vec![false; self.order];
        in_set[0] = true;
        let mut members = vec![0usize];
        let mut frontier: Vec<usize> = Vec::new();
        for &g in gens {
            if !in_set[g] {
                in_set[g] = true;
                members.push(g);
                frontier.push(g);
            }
        }
        while let Some(x) = frontier.pop() {
            // Products with everything already present, both sides.
            let mut i = 0;
            while i < members.len() {
                let m = members[i];
                for p in [self.mul(x, m), self.mul(m, x)] {
                    if !in_set[p] {
                        in_set[p] = true;
                        members.push(p);
                        frontier.push(p);
                    }
                }
                i += 1;
            }
        }
        members.sort_unstable();
        Subgroup { members, in_set, parent_order: self.order }
    }

    /// All index-2 subgroups, each sorted, the list ordered lexicographically.
    ///
    /// Index-2 subgroups contain every commutator and every square, so they
    /// are exactly the preimages of hyperplanes of the elementary abelian
    /// quotient `G/⟨γ₂(G), squares⟩`.
    pub fn index2_subgroups(&self) -> Vec<Subgroup> {
        let all: Vec<usize> = (0..self.order).collect();
        self.index2_of_members(&all)
            .into_iter()
            .map(|members| Subgroup::new_unchecked(self, members))
            .collect()
    }

    /// Index-2 subgroups of the subgroup formed by `members` (which must be
    /// closed), as sorted member lists inside the parent group.
    pub(crate) fn index2_of_members(&self, members: &[usize]) -> Vec<Vec<usize>> {
        // K = ⟨ commutators of H, squares of H ⟩ within H.
        let mut gens = vec![false; self.order];
        for &a in members {
            gens[self.mul(a, a)] = true;
            for &b in members {
                gens[self.commutator(a, b)] = true;
            }
        }
        let gen_list: Vec<usize> = (0..self.order).filter(|&x| gens[x]).collect();
        let k = self.subgroup_generated(&gen_list);

        // Coset labels within H; cosets of K partition H.
        let mut coset_of: Vec<Option<usize>> = vec![None; self.order];
        let mut reps: Vec<usize> = Vec::new();
        for &h in members {
            if coset_of[h].is_none() {
                let id = reps.len();
                reps.push(h);
                for &x in k.members() {
                    coset_of[self.mul(h, x)] = Some(id);
                }
            }
        }
        let classes = reps.len();
        if classes <= 1 {
            return Vec::new();
        }

        // F2 coordinates for the quotient (elementary abelian 2-group).
        let mut coords: Vec<Option<u32>> = vec![None; classes];
        coords[coset_of[0].unwrap()] = Some(0);
        let mut known: Vec<usize> = vec![coset_of[0].unwrap()];
        let mut rank = 0u32;
        for c in 0..classes {
            if coords[c].is_some() {
                continue;
            }
            let bit = 1u32 << rank;
            rank += 1;
            let snapshot = known.clone();
            for &x in &snapshot {
                let prod = coset_of[self.mul(reps[x], reps[c])].unwrap();
                let v = coords[x].unwrap() ^ bit;
                debug_assert!(coords[prod].is_none());
                coords[prod] = Some(v);
                known.push(prod);
            }
        }
        debug_assert_eq!(1usize << rank, classes);

        let mut subs: Vec<Vec<usize>> = (1u32..(1 << rank))
            .map(|lambda| {
                members
                    .iter()
                    .copied()
                    .filter(|&h| {
                        (coords[coset_of[h].unwrap()].unwrap() & lambda).count_ones() % 2 == 0
                    })
                    .collect()
            })
            .collect();
        subs.sort();
        subs
    }

    /// Whether `R` is generalized dihedral on the abelian subgroup `M`:
    /// some involution outside `M` inverts every element of `M` (and then
    /// every element of `R∖M` does).
    pub fn is_generalized_dihedral_on(&self, m: &Subgroup) -> bool {
        if !m.is_abelian(self) {
            return false;
        }
        (0..self.order).any(|x| {
            !m.contains(x)
                && self.mul(x, x) == 0
                && m.members().iter().all(|&a| self.conj(a, x) == self.inv(a))
        })
    }
}

/// A subgroup as a sorted member list; the parent group is passed to the
/// operations that need it rather than stored.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subgroup {
    members: Vec<usize>,
    in_set: Vec<bool>,
    parent_order: usize,
}

impl Subgroup {
    /// Validates closure under products and inverses; the identity must be
    /// a member.
    pub fn new(g: &FiniteGroup, mut members: Vec<usize>) -> Result<Self, GroupError> {
        members.sort_unstable();
        members.dedup();
        if members.first() != Some(&0) {
            return Err(GroupError::Validation("subgroup must contain id 0".into()));
        }
        if members.iter().any(|&x| x >= g.order()) {
            return Err(GroupError::Validation("subgroup member out of range".into()));
        }
        let mut in_set = vec![false; g.order()];
        for &x in &members {
            in_set[x] = true;
        }
        for &a in &members {
            if !in_set[g.inv(a)] {
                return Err(GroupError::Validation(format!("{a} has no inverse in subgroup")));
            }
            for &b in &members {
                if !in_set[g.mul(a, b)] {
                    return Err(GroupError::Validation(format!(
                        "subgroup not closed: {a}·{b} outside"
                    )));
                }
            }
        }
        Ok(Subgroup { members, in_set, parent_order: g.order() })
    }

    /// For internally-constructed member lists that are closed by build.
    pub(crate) fn new_unchecked(g: &FiniteGroup, members: Vec<usize>) -> Self {
        let mut in_set = vec![false; g.order()];
        for &x in &members {
            in_set[x] = true;
        }
        Subgroup { members, in_set, parent_order: g.order() }
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    #[inline]
    pub fn contains(&self, x: usize) -> bool {
        self.in_set[x]
    }

    pub fn index_in_parent(&self) -> usize {
        self.parent_order / self.members.len()
    }

    /// Sorted ids of the complement `R∖M`.
    pub fn complement(&self) -> Vec<usize> {
        (0..self.parent_order).filter(|&x| !self.in_set[x]).collect()
    }

    pub fn is_abelian(&self, g: &FiniteGroup) -> bool {
        self.members.iter().all(|&a| self.members.iter().all(|&b| g.mul(a, b) == g.mul(b, a)))
    }

    /// The center of this subgroup (elements commuting with all members),
    /// as a member list in the parent group.
    pub fn center_members(&self, g: &FiniteGroup) -> Vec<usize> {
        self.members
            .iter()
            .copied()
            .filter(|&x| self.members.iter().all(|&y| g.mul(x, y) == g.mul(y, x)))
            .collect()
    }

    /// The derived subgroup of this subgroup, as a member list.
    pub fn derived_members(&self, g: &FiniteGroup) -> Vec<usize> {
        let mut gens = vec![false; self.parent_order];
        for &a in &self.members {
            for &b in &self.members {
                gens[g.commutator(a, b)] = true;
            }
        }
        let gen_list: Vec<usize> = (0..self.parent_order).filter(|&x| gens[x]).collect();
        g.subgroup_generated(&gen_list).members.clone()
    }
}

/// Declarative group constructions.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GroupSpec {
    Cyclic(usize),
    /// Direct product of cyclic groups of the given orders.
    Abelian(Vec<usize>),
    /// Generalized dihedral group on the abelian group with these
    /// invariants: `A ⋊ C2` with the involution inverting `A`.
    GeneralizedDihedral(Vec<usize>),
    /// Order `4n`: `⟨x, y | x^{2n} = 1, y² = xⁿ, x^y = x⁻¹⟩`.
    Dicyclic(usize),
    DirectProduct(Box<GroupSpec>, Box<GroupSpec>),
    /// Split extension `N ⋊ H` with the action given explicitly.
    Semidirect {
        normal: Box<GroupSpec>,
        quotient: Box<GroupSpec>,
        action: ActionSpec,
    },
    /// Multiplication table loaded from a file (text or `.json`).
    TableFile(PathBuf),
}

/// How `H` acts on `N` in [`GroupSpec::Semidirect`].
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ActionSpec {
    /// One image array over `N`'s ids per element of `H`, in id order.
    Full(Vec<Vec<usize>>),
    /// `H` is cyclic and its generator (id 1) acts by the automorphism
    /// determined by these `(element, image)` generator pairs.
    CyclicByGenImages(Vec<(usize, usize)>),
}

/// Builds a [`FiniteGroup`] from a spec. Every path re-validates the final
/// table, so a successful result is a group regardless of the input.
pub fn build_group(spec: &GroupSpec) -> Result<FiniteGroup, GroupError> {
    match spec {
        GroupSpec::Cyclic(n) => {
            let n = check_order(*n)?;
            let rows =
                (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect::<Vec<Vec<usize>>>();
            FiniteGroup::from_rows(Some(format!("C{n}")), &rows)
        }
        GroupSpec::Abelian(invariants) => {
            if invariants.is_empty() || invariants.contains(&0) {
                return Err(GroupError::InvalidSpec("empty or zero abelian invariant".into()));
            }
            let order = invariants.iter().try_fold(1usize, |acc, &k| {
                let next = acc.checked_mul(k)?;
                (next <= MAX_GROUP_ORDER).then_some(next)
            });
            let Some(n) = order else {
                return Err(GroupError::InvalidSpec(format!(
                    "abelian invariants overflow the order cap {MAX_GROUP_ORDER}"
                )));
            };
            let rows = (0..n)
                .map(|i| (0..n).map(|j| mixed_radix_add(invariants, i, j)).collect())
                .collect::<Vec<Vec<usize>>>();
            let label = invariants.iter().map(|k| format!("C{k}")).collect::<Vec<_>>().join("x");
            FiniteGroup::from_rows(Some(label), &rows)
        }
        GroupSpec::GeneralizedDihedral(invariants) => {
            let a = build_group(&GroupSpec::Abelian(invariants.clone()))?;
            let na = a.order();
            let n = check_order(2 * na)?;
            // (a1, e1)(a2, e2) = (a1 · a2^{±1}, e1 xor e2), inverting when e1 = 1.
            let rows = (0..n)
                .map(|i| {
                    let (a1, e1) = (i % na, i / na);
                    (0..n)
                        .map(|j| {
                            let (a2, e2) = (j % na, j / na);
                            let a2 = if e1 == 1 { a.inv(a2) } else { a2 };
                            a.mul(a1, a2) + na * (e1 ^ e2)
                        })
                        .collect()
                })
                .collect::<Vec<Vec<usize>>>();
            FiniteGroup::from_rows(Some(format!("Dih({})", a.name().unwrap_or("A"))), &rows)
        }
        GroupSpec::Dicyclic(m) => {
            if *m == 0 {
                return Err(GroupError::InvalidSpec("dicyclic parameter must be ≥ 1".into()));
            }
            let two_m = 2 * m;
            let n = check_order(4 * m)?;
            // Elements x^i y^j, id = i + 2m·j.
            let rows = (0..n)
                .map(|id1| {
                    let (i, j) = (id1 % two_m, id1 / two_m);
                    (0..n)
                        .map(|id2| {
                            let (k, l) = (id2 % two_m, id2 / two_m);
                            if j == 0 {
                                (i + k) % two_m + two_m * l
                            } else if l == 0 {
                                (i + two_m - k) % two_m + two_m
                            } else {
                                // y² = x^m folds back into the rotation part.
                                (i + two_m - k + *m) % two_m
                            }
                        })
                        .collect()
                })
                .collect::<Vec<Vec<usize>>>();
            FiniteGroup::from_rows(Some(format!("Dic{m}")), &rows)
        }
        GroupSpec::DirectProduct(sa, sb) => {
            let a = build_group(sa)?;
            let b = build_group(sb)?;
            let na = a.order();
            let n = check_order(na * b.order())?;
            let rows = (0..n)
                .map(|i| {
                    let (a1, b1) = (i % na, i / na);
                    (0..n)
                        .map(|j| {
                            let (a2, b2) = (j % na, j / na);
                            a.mul(a1, a2) + na * b.mul(b1, b2)
                        })
                        .collect()
                })
                .collect::<Vec<Vec<usize>>>();
            let label = format!("{}x{}", a.name().unwrap_or("A"), b.name().unwrap_or("B"));
            FiniteGroup::from_rows(Some(label), &rows)
        }
        GroupSpec::Semidirect { normal, quotient, action } => {
            let ng = build_group(normal)?;
            let h = build_group(quotient)?;
            let maps = expand_action(&ng, &h, action)?;
            let nn = ng.order();
            let n = check_order(nn * h.order())?;
            // (n1, h1)(n2, h2) = (n1 · f_{h1}(n2), h1 h2).
            let rows = (0..n)
                .map(|i| {
                    let (n1, h1) = (i % nn, i / nn);
                    (0..n)
                        .map(|j| {
                            let (n2, h2) = (j % nn, j / nn);
                            ng.mul(n1, maps[h1][n2]) + nn * h.mul(h1, h2)
                        })
                        .collect()
                })
                .collect::<Vec<Vec<usize>>>();
            let label = format!("{}:{}", ng.name().unwrap_or("N"), h.name().unwrap_or("H"));
            FiniteGroup::from_rows(Some(label), &rows)
        }
        GroupSpec::TableFile(path) => parse_cayley_table(path),
    }
}

fn check_order(n: usize) -> Result<usize, GroupError> {
    if n == 0 {
        Err(GroupError::InvalidSpec("order must be ≥ 1".into()))
    } else if n > MAX_GROUP_ORDER {
        Err(GroupError::OrderCap { order: n, cap: MAX_GROUP_ORDER })
    } else {
        Ok(n)
    }
}

fn mixed_radix_add(invariants: &[usize], mut i: usize, mut j: usize) -> usize {
    let mut out = 0;
    let mut stride = 1;
    for &k in invariants {
        let d = (i % k + j % k) % k;
        out += d * stride;
        stride *= k;
        i /= k;
        j /= k;
    }
    out
}

/// Completes `(element, image)` pairs to a full automorphism image array of
/// `g` by closing under products, or reports why it cannot be done.
pub fn complete_automorphism(
    g: &FiniteGroup,
    pairs: &[(usize, usize)],
) -> Result<Vec<usize>, GroupError> {
    let n = g.order();
    let mut image: Vec<Option<usize>> = vec![None; n];
    let mut used = vec![false; n];
    image[0] = Some(0);
    used[0] = true;
    let mut mapped = vec![0usize];
    let mut queue: Vec<(usize, usize)> = pairs.to_vec();
    while let Some((x, y)) = queue.pop() {
        if let Some(prev) = image[x] {
            if prev != y {
                return Err(GroupError::InvalidSpec(format!("conflicting images for element {x}")));
            }
            continue;
        }
        if y >= n || used[y] || g.element_order(x) != g.element_order(y) {
            return Err(GroupError::InvalidSpec(format!("element {x} cannot map to {y}")));
        }
        image[x] = Some(y);
        used[y] = true;
        mapped.push(x);
        for i in 0..mapped.len() {
            let m = mapped[i];
            let my = image[m].unwrap();
            queue.push((g.mul(x, m), g.mul(y, my)));
            queue.push((g.mul(m, x), g.mul(my, y)));
        }
    }
    let image: Vec<usize> = image.into_iter().collect::<Option<Vec<_>>>().ok_or_else(|| {
        GroupError::InvalidSpec("generator images do not generate the group".into())
    })?;
    Ok(image)
}

fn expand_action(
    ng: &FiniteGroup,
    h: &FiniteGroup,
    action: &ActionSpec,
) -> Result<Vec<Vec<usize>>, GroupError> {
    let maps = match action {
        ActionSpec::Full(maps) => maps.clone(),
        ActionSpec::CyclicByGenImages(pairs) => {
            if h.order() > 1 && h.element_order(1) != h.order() {
                return Err(GroupError::InvalidSpec(
                    "CyclicByGenImages requires a cyclic quotient with generator id 1".into(),
                ));
            }
            let f = complete_automorphism(ng, pairs)?;
            let mut maps = vec![(0..ng.order()).collect::<Vec<usize>>()];
            let mut cur = maps[0].clone();
            for _ in 1..h.order() {
                cur = cur.iter().map(|&x| f[x]).collect();
                maps.push(cur.clone());
            }
            // maps[k] = f^k with maps built in generator-power order; h is
            // cyclic with h-element k equal to generator^k under Cyclic's
            // encoding, so id order and power order agree.
            maps
        }
    };
    if maps.len() != h.order() {
        return Err(GroupError::InvalidSpec(format!(
            "action has {} maps for quotient of order {}",
            maps.len(),
            h.order()
        )));
    }
    let n = ng.order();
    for (hid, f) in maps.iter().enumerate() {
        if f.len() != n {
            return Err(GroupError::InvalidSpec(format!("action map {hid} has wrong length")));
        }
        let mut seen = vec![false; n];
        for &y in f {
            if y >= n || std::mem::replace(&mut seen[y], true) {
                return Err(GroupError::InvalidSpec(format!(
                    "action map {hid} is not a bijection"
                )));
            }
        }
        for a in 0..n {
            for b in 0..n {
                if f[ng.mul(a, b)] != ng.mul(f[a], f[b]) {
                    return Err(GroupError::InvalidSpec(format!(
                        "action map {hid} is not an automorphism"
                    )));
                }
            }
        }
    }
    if maps[0] != (0..n).collect::<Vec<usize>>() {
        return Err(GroupError::InvalidSpec("action of identity is not trivial".into()));
    }
    for h1 in 0..h.order() {
        for h2 in 0..h.order() {
            let prod = h.mul(h1, h2);
            for x in 0..n {
                if maps[prod][x] != maps[h1][maps[h2][x]] {
                    return Err(GroupError::InvalidSpec(
                        "action is not a homomorphism into Aut(N)".into(),
                    ));
                }
            }
        }
    }
    Ok(maps)
}

#[derive(Deserialize)]
struct JsonTable {
    name: Option<String>,
    order: usize,
    table: Vec<Vec<usize>>,
}

/// Parses a multiplication table file.
///
/// Text format: first line `order n`, optional line `name <label>`, then
/// `n` lines of `n` whitespace-separated ids. Files ending in `.json` use
/// `{"name": ..., "order": n, "table": [[...], ...]}` instead.
pub fn parse_cayley_table(path: &Path) -> Result<FiniteGroup, GroupError> {
    let text = std::fs::read_to_string(path)?;
    if path.extension().is_some_and(|e| e == "json") {
        let parsed: JsonTable = serde_json::from_str(&text)
            .map_err(|e| GroupError::Parse(format!("bad JSON table: {e}")))?;
        if parsed.table.len() != parsed.order {
            return Err(GroupError::Parse(format!(
                "declared order {} but table has {} rows",
                parsed.order,
                parsed.table.len()
            )));
        }
        return FiniteGroup::from_rows(parsed.name, &parsed.table);
    }

    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
    let header = lines.next().ok_or_else(|| GroupError::Parse("empty file".into()))?;
    let order: usize = header
        .strip_prefix("order")
        .map(str::trim)
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| GroupError::Parse(format!("expected `order n`, found `{header}`")))?;
    let mut rest = lines.peekable();
    let name = rest.peek().and_then(|l| l.strip_prefix("name ")).map(|s| s.trim().to_string());
    if name.is_some() {
        rest.next();
    }
    let mut rows = Vec::with_capacity(order);
    for line in rest {
        let row: Result<Vec<usize>, _> = line.split_whitespace().map(str::parse).collect();
        let row = row.map_err(|e| GroupError::Parse(format!("bad row `{line}`: {e}")))?;
        rows.push(row);
    }
    if rows.len() != order {
        return Err(GroupError::Parse(format!(
            "declared order {order} but found {} rows",
            rows.len()
        )));
    }
    FiniteGroup::from_rows(name, &rows)
}
