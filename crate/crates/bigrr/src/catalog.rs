//! The embedded catalog: every group of even order 4–24, the four order-32
//! groups and the order-64 group appearing in the no-bipartite-DRR table,
//! with claimed GAP SmallGroups ids where known, plus the reference rows of
//! both classification tables.
//!
//! The data lives in `data/expected_tables.json` and is parsed once. Row
//! labels refer to catalog entries; subgroup selectors pick out which
//! index-2 subgroups a no-DRR row claims.

use std::sync::OnceLock;

use serde::Deserialize;

use crate::group::{build_group, FiniteGroup, GroupError, GroupSpec, Subgroup};

const EXPECTED_TABLES_JSON: &str = include_str!("../data/expected_tables.json");

/// One catalog group: display label, order, optional GAP SmallGroups id
/// `(order, index)`, and the constructor.
#[derive(Clone, Debug, Deserialize)]
pub struct CatalogGroup {
    pub label: String,
    pub order: usize,
    pub gap: Option<(u32, u32)>,
    pub spec: GroupSpec,
}

impl CatalogGroup {
    pub fn build(&self) -> Result<FiniteGroup, GroupError> {
        build_group(&self.spec)
    }
}

/// Which index-2 subgroups of a group a table row refers to.
#[derive(Clone, Debug, Deserialize, PartialEq, Eq)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SubgroupSelector {
    /// Every index-2 subgroup.
    All,
    /// Exactly the index-2 subgroups containing all the listed elements.
    Contains { elements: Vec<usize> },
}

impl SubgroupSelector {
    pub fn matches(&self, m: &Subgroup) -> bool {
        match self {
            SubgroupSelector::All => true,
            SubgroupSelector::Contains { elements } => elements.iter().all(|&x| m.contains(x)),
        }
    }

    /// Indices into `subs` of the selected subgroups.
    pub fn select(&self, subs: &[Subgroup]) -> Vec<usize> {
        subs.iter().enumerate().filter(|(_, m)| self.matches(m)).map(|(i, _)| i).collect()
    }
}

/// A no-bipartite-DRR row: the named group, restricted to the selected
/// index-2 subgroups.
#[derive(Clone, Debug, Deserialize)]
pub struct NoDrrRow {
    pub label: String,
    pub order: usize,
    pub selector: SubgroupSelector,
}

/// A no-bipartite-GRR row realized in the catalog (order ≤ 24): the group
/// has at least one unobstructed index-2 subgroup yet no bipartite GRR.
#[derive(Clone, Debug, Deserialize)]
pub struct NoGrrRow {
    pub label: String,
    pub order: usize,
    pub gap_id: u32,
}

/// No-bipartite-GRR rows beyond the catalog's constructive reach, recorded
/// by GAP id only and never claimed as verified.
#[derive(Clone, Debug, Deserialize)]
pub struct UnrealizedGrrRow {
    pub order: usize,
    pub gap_ids: Vec<u32>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct ExpectedTables {
    pub groups: Vec<CatalogGroup>,
    pub no_drr: Vec<NoDrrRow>,
    pub no_grr: Vec<NoGrrRow>,
    pub no_grr_unrealized: Vec<UnrealizedGrrRow>,
}

/// The parsed embedded data; panics only if the embedded JSON is invalid,
/// which the test suite rules out.
pub fn expected_tables() -> &'static ExpectedTables {
    static TABLES: OnceLock<ExpectedTables> = OnceLock::new();
    TABLES.get_or_init(|| {
        serde_json::from_str(EXPECTED_TABLES_JSON).expect("embedded table data parses")
    })
}

pub fn catalog() -> &'static [CatalogGroup] {
    &expected_tables().groups
}

pub fn find_group(label: &str) -> Option<&'static CatalogGroup> {
    catalog().iter().find(|g| g.label == label)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::{BTreeMap, BTreeSet};

    /// Cheap isomorphism-sensitive fingerprint: element-order census, the
    /// orders of the centre and derived subgroup, the index-2 subgroup
    /// count, and the order census of the centre.
    fn fingerprint(g: &FiniteGroup) -> (Vec<(usize, usize)>, usize, usize, usize, Vec<usize>) {
        let census: Vec<(usize, usize)> = g.order_census().into_iter().collect();
        let center = g.center();
        let center_orders: Vec<usize> =
            center.members().iter().map(|&x| g.element_order(x)).collect();
        (
            census,
            center.len(),
            g.derived_subgroup().len(),
            g.index2_subgroups().len(),
            center_orders,
        )
    }

    #[test]
    fn data_parses_and_all_groups_build() {
        let tables = expected_tables();
        assert_eq!(tables.groups.len(), 64);
        for entry in &tables.groups {
            let g = entry.build().unwrap_or_else(|e| panic!("{} failed: {e}", entry.label));
            assert_eq!(g.order(), entry.order, "{}", entry.label);
            if let Some((gap_order, _)) = entry.gap {
                assert_eq!(gap_order as usize, entry.order, "{}", entry.label);
            }
        }
    }

    #[test]
    fn labels_and_gap_ids_unique() {
        let mut labels = BTreeSet::new();
        let mut gaps = BTreeSet::new();
        for entry in catalog() {
            assert!(labels.insert(entry.label.clone()), "duplicate label {}", entry.label);
            if let Some(gap) = entry.gap {
                assert!(gaps.insert(gap), "duplicate GAP id {gap:?}");
            }
        }
    }

    #[test]
    fn per_order_census() {
        let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
        for entry in catalog() {
            *counts.entry(entry.order).or_default() += 1;
        }
        let expected: BTreeMap<usize, usize> = [
            (4, 2),
            (6, 2),
            (8, 5),
            (10, 2),
            (12, 5),
            (14, 2),
            (16, 14),
            (18, 5),
            (20, 5),
            (22, 2),
            (24, 15),
            (32, 4),
            (64, 1),
        ]
        .into_iter()
        .collect();
        assert_eq!(counts, expected);
    }

    #[test]
    fn groups_of_equal_order_are_pairwise_distinct() {
        let mut by_order: BTreeMap<usize, Vec<(&str, _)>> = BTreeMap::new();
        for entry in catalog() {
            let g = entry.build().unwrap();
            by_order.entry(entry.order).or_default().push((entry.label.as_str(), fingerprint(&g)));
        }
        for (order, prints) in by_order {
            for i in 0..prints.len() {
                for j in i + 1..prints.len() {
                    assert_ne!(
                        prints[i].1, prints[j].1,
                        "order {order}: {} vs {} not separated",
                        prints[i].0, prints[j].0
                    );
                }
            }
        }
    }

    #[test]
    fn structural_spot_checks() {
        let s4 = find_group("S4").unwrap().build().unwrap();
        let census = s4.order_census();
        assert_eq!(census.get(&2), Some(&9));
        assert_eq!(census.get(&3), Some(&8));
        assert_eq!(census.get(&4), Some(&6));
        assert_eq!(s4.index2_subgroups().len(), 1);
        assert_eq!(s4.derived_subgroup().len(), 12);

        let sl23 = find_group("SL2(3)").unwrap().build().unwrap();
        let census = sl23.order_census();
        assert_eq!(census.get(&2), Some(&1));
        assert_eq!(census.get(&3), Some(&8));
        assert_eq!(census.get(&4), Some(&6));
        assert_eq!(census.get(&6), Some(&8));
        assert!(sl23.index2_subgroups().is_empty());

        let a4 = find_group("A4").unwrap().build().unwrap();
        assert!(a4.index2_subgroups().is_empty());
        assert_eq!(a4.derived_subgroup().len(), 4);

        // The two order-16 lookalikes: both have centre of order 4, but
        // D4∘C4's centre is cyclic while C2²⋊C4's is elementary abelian.
        let pauli = find_group("D4oC4").unwrap().build().unwrap();
        let z = pauli.center();
        assert_eq!(z.len(), 4);
        assert!(z.members().iter().any(|&x| pauli.element_order(x) == 4));

        let swap = find_group("C2^2:C4").unwrap().build().unwrap();
        let z = swap.center();
        assert_eq!(z.len(), 4);
        assert!(z.members().iter().all(|&x| swap.element_order(x) <= 2));

        let f20 = find_group("F20").unwrap().build().unwrap();
        assert_eq!(f20.center().len(), 1);
        assert_eq!(f20.derived_subgroup().len(), 5);
    }

    #[test]
    fn no_drr_rows_resolve() {
        let tables = expected_tables();
        assert_eq!(tables.no_drr.len(), 22);
        let mut order32_selected = 0;
        for row in &tables.no_drr {
            let entry = find_group(&row.label)
                .unwrap_or_else(|| panic!("row label {} not in catalog", row.label));
            assert_eq!(entry.order, row.order, "{}", row.label);
            let g = entry.build().unwrap();
            let subs = g.index2_subgroups();
            let selected = row.selector.select(&subs);
            assert!(!selected.is_empty(), "{} selects nothing", row.label);
            if row.order == 32 && row.label != "C2^5" {
                order32_selected += selected.len();
            }
        }
        // "Five listed order-32 pairs": C4xC2^3 and D4xC2^2 contribute one
        // subgroup each, Q8xC2^2 three.
        assert_eq!(order32_selected, 5);
    }

    #[test]
    fn selector_counts() {
        for (label, expected) in [
            ("D4", 1usize),
            ("C4xC2", 1),
            ("D6", 1),
            ("D4xC2", 3),
            ("D4oC4", 1),
            ("C4xC2^3", 1),
            ("D4xC2^2", 1),
            ("Q8xC2^2", 3),
        ] {
            let row = expected_tables().no_drr.iter().find(|r| r.label == label).unwrap();
            let g = find_group(label).unwrap().build().unwrap();
            let selected = row.selector.select(&g.index2_subgroups());
            assert_eq!(selected.len(), expected, "{label}");
        }
        // The selected D4×C2 subgroups are exactly those containing z.
        let g = find_group("D4xC2").unwrap().build().unwrap();
        let row = expected_tables().no_drr.iter().find(|r| r.label == "D4xC2").unwrap();
        let subs = g.index2_subgroups();
        for idx in row.selector.select(&subs) {
            assert!(subs[idx].contains(8));
        }
    }

    #[test]
    fn no_grr_rows_resolve() {
        let tables = expected_tables();
        assert_eq!(tables.no_grr.len(), 16);
        for row in &tables.no_grr {
            let entry = find_group(&row.label)
                .unwrap_or_else(|| panic!("row label {} not in catalog", row.label));
            assert_eq!(entry.order, row.order);
            assert!(row.order <= 24);
            assert_eq!(entry.gap, Some((row.order as u32, row.gap_id)), "{}", row.label);
        }
        // 16 realized + 43 id-only rows = the full table of 59 groups.
        let unrealized: usize = tables.no_grr_unrealized.iter().map(|r| r.gap_ids.len()).sum();
        assert_eq!(unrealized, 43);
        let orders: Vec<usize> = tables.no_grr_unrealized.iter().map(|r| r.order).collect();
        assert_eq!(orders, vec![32, 36, 48, 54, 64]);
    }

    #[test]
    fn selector_matching_semantics() {
        let g = find_group("C4xC2").unwrap().build().unwrap();
        let subs = g.index2_subgroups();
        assert_eq!(subs.len(), 3);
        let all = SubgroupSelector::All;
        assert_eq!(all.select(&subs), vec![0, 1, 2]);
        let narrow = SubgroupSelector::Contains { elements: vec![2, 4] };
        let picked = narrow.select(&subs);
        assert_eq!(picked.len(), 1);
        assert_eq!(subs[picked[0]].members(), &[0, 2, 4, 6]);
        assert!(find_group("nope").is_none());
    }
}
