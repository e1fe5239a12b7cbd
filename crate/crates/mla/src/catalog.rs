//! The built-in catalog of test groups and the census machinery that
//! classifies every structure found on them.

use crate::families::FamilySpec;
use crate::group::GroupTable;
use crate::search::{enumerate_stars, SearchOptions};
use crate::series::{compute_series, SeriesKind};
use crate::star::{Mla, StarTable};
use serde::Serialize;
use std::time::Duration;

/// A named catalog member with its pinned sanity facts.
#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: String,
    pub spec: FamilySpec,
    pub expected_order: usize,
    pub expected_class2: bool,
}

impl CatalogEntry {
    fn new(spec: FamilySpec, expected_order: usize, expected_class2: bool) -> Self {
        CatalogEntry {
            name: spec.canonical_name(),
            spec,
            expected_order,
            expected_class2,
        }
    }

    pub fn build(&self) -> GroupTable {
        self.spec.build().expect("catalog entries are well-formed")
    }
}

/// Everything the acceptance runs quantify over: cyclic groups through
/// order 32, a spread of abelian products, the dihedral family, the
/// quaternions, both small Heisenberg groups and a handful of metacyclic
/// samples.
pub fn standard_catalog() -> Vec<CatalogEntry> {
    let mut out = Vec::new();
    for n in 1..=32 {
        out.push(CatalogEntry::new(FamilySpec::Cyclic(n), n, true));
    }
    for dims in [
        vec![2, 2],
        vec![2, 4],
        vec![3, 3],
        vec![2, 2, 2],
        vec![2, 6],
        vec![4, 4],
        vec![2, 8],
        vec![2, 2, 4],
        vec![3, 9],
        vec![5, 5],
        vec![2, 16],
        vec![2, 2, 2, 2],
    ] {
        let order = dims.iter().product();
        out.push(CatalogEntry::new(FamilySpec::Abelian(dims), order, true));
    }
    for n in 3..=16 {
        // D_n is class 2 exactly when rotations square into the center
        out.push(CatalogEntry::new(FamilySpec::Dihedral(n), 2 * n, n == 4));
    }
    out.push(CatalogEntry::new(FamilySpec::Quaternion8, 8, true));
    out.push(CatalogEntry::new(FamilySpec::Heisenberg(2), 8, true));
    out.push(CatalogEntry::new(FamilySpec::Heisenberg(3), 27, true));
    for (m, n, r, s, class2) in [
        (3, 2, 2, 0, false),
        (5, 4, 2, 0, false),
        (7, 3, 2, 0, false),
        (8, 2, 5, 0, true),
        (4, 4, 3, 0, true),
        (9, 3, 4, 3, true),
    ] {
        out.push(CatalogEntry::new(
            FamilySpec::Metacyclic { m, n, r, s },
            m * n,
            class2,
        ));
    }
    out
}

/// Catalog members small enough for complete enumeration.
pub fn enumeration_catalog(max_order: usize) -> Vec<CatalogEntry> {
    standard_catalog()
        .into_iter()
        .filter(|e| e.expected_order <= max_order)
        .collect()
}

/// One census line per structure.
#[derive(Debug, Clone, Serialize)]
pub struct CensusRecord {
    pub group: String,
    pub star: Vec<Vec<usize>>,
    pub class2: bool,
    pub mla_nilpotency: Option<usize>,
    pub lie_nilpotency: Option<usize>,
    pub is_trivial: bool,
    pub is_improper: bool,
}

/// One census summary line per group.
#[derive(Debug, Clone, Serialize)]
pub struct CensusSummary {
    pub group: String,
    pub structures: usize,
    pub complete: bool,
}

/// Enumerates and classifies every structure on one group. Records come out
/// sorted by star table; a blown budget yields partial records and an
/// incomplete summary rather than an error.
pub fn census_group(g: &GroupTable, budget: Duration) -> (Vec<CensusRecord>, CensusSummary) {
    let opts = SearchOptions {
        time_budget: budget,
        ..SearchOptions::default()
    };
    let enumeration = enumerate_stars(g, &opts);
    let class2 = g.is_class2();
    let trivial = StarTable::trivial(g);
    let improper = StarTable::improper(g);
    let mut records = Vec::new();
    for star in &enumeration.stars {
        let mla = Mla::certify(g.clone(), star.clone()).expect("enumeration output certifies");
        let gamma = compute_series(&mla, SeriesKind::GammaLowerCentral);
        let lie = compute_series(&mla, SeriesKind::LieLowerCentral);
        records.push(CensusRecord {
            group: g.name().to_string(),
            star: star.rows(),
            class2,
            mla_nilpotency: gamma.class,
            lie_nilpotency: lie.class,
            is_trivial: *star == trivial,
            is_improper: *star == improper,
        });
    }
    let summary = CensusSummary {
        group: g.name().to_string(),
        structures: records.len(),
        complete: enumeration.complete,
    };
    (records, summary)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_entries_match_their_pins() {
        for entry in standard_catalog() {
            let g = entry.build();
            assert_eq!(g.order(), entry.expected_order, "{}", entry.name);
            assert_eq!(g.is_class2(), entry.expected_class2, "{}", entry.name);
            assert_eq!(g.name(), entry.name);
        }
    }

    #[test]
    fn census_of_small_cyclics_is_all_trivial() {
        for n in [2, 3, 4] {
            let g = FamilySpec::Cyclic(n).build().unwrap();
            let (records, summary) = census_group(&g, Duration::from_secs(60));
            assert!(summary.complete);
            assert_eq!(records.len(), 1);
            assert!(records[0].is_trivial);
            assert_eq!(records[0].mla_nilpotency, Some(1));
        }
    }

    #[test]
    fn census_classifies_improper_on_q8() {
        let g = FamilySpec::Quaternion8.build().unwrap();
        let (records, summary) = census_group(&g, Duration::from_secs(60));
        assert!(summary.complete);
        let improper = records.iter().find(|r| r.is_improper).unwrap();
        assert!(improper.class2);
        assert_eq!(improper.mla_nilpotency, Some(2));
        assert_eq!(improper.lie_nilpotency, Some(1));
    }
}
