//! Acceptance suite: one test per criterion, each printing a PASS line with
//! its measurements (visible under `--nocapture`; the harness line itself
//! doubles as the pass/fail marker).
//!
//! Everything here is exact: tolerances are equality of tables, subsets and
//! booleans, with the stated runtime envelopes left to the harness.

use mla::catalog::{enumeration_catalog, standard_catalog, CatalogEntry};
use mla::extension::random_verified_instances;
use mla::families::{self, FamilySpec};
use mla::group::{GroupTable, Subset};
use mla::identities::check_derived_identities;
use mla::pairing::{
    central_pairing_to_star, enumerate_central_pairings, sample_transversals,
    star_to_central_pairing, star_to_pairing_with_transversal,
};
use mla::search::{abelian_bracket_oracle, enumerate_stars, SearchOptions};
use mla::series::{compute_series, SeriesKind};
use mla::star::{check_mla_axioms, Mla, StarTable};
use mla::structure::{class2_property_report, combine_structures, CombineError};

fn opts() -> SearchOptions {
    SearchOptions::default()
}

fn enumerate_complete(g: &GroupTable) -> Vec<StarTable> {
    let e = enumerate_stars(g, &opts());
    assert!(e.complete, "enumeration exceeded budget on {}", g.name());
    e.stars
}

/// Every certified structure the suite quantifies over: catalog trivial and
/// improper structures, complete enumerations at order <= 8, central
/// pairing structures on the class-2 members up to order 27, and a sample
/// of extension-built structures.
fn all_encountered_structures() -> Vec<Mla> {
    let mut out = Vec::new();
    for entry in standard_catalog() {
        let g = entry.build();
        out.push(Mla::trivial(&g));
        out.push(Mla::improper(&g));
    }
    for entry in enumeration_catalog(8) {
        let g = entry.build();
        for star in enumerate_complete(&g) {
            out.push(Mla::certify(g.clone(), star).expect("enumeration output certifies"));
        }
    }
    for entry in class2_members_up_to(27) {
        let g = entry.build();
        for p in pairings_of(&g) {
            out.push(central_pairing_to_star(&g, &p).expect("pairings induce structures"));
        }
    }
    for data in random_verified_instances(11, 25) {
        out.push(data.build_star().expect("verified data builds"));
    }
    out
}

fn class2_members_up_to(max_order: usize) -> Vec<CatalogEntry> {
    standard_catalog()
        .into_iter()
        .filter(|e| e.expected_class2 && e.expected_order <= max_order)
        .collect()
}

fn pairings_of(g: &GroupTable) -> Vec<mla::pairing::CentralPairing> {
    let derived = g.derived_subgroup();
    let (q, _) = g.quotient(&derived).unwrap();
    let (a, _) = g.subgroup_table(&derived, "A").unwrap();
    enumerate_central_pairings(&q, &a)
}

#[test]
fn criterion_01_trivial_and_improper_certify_on_catalog() {
    let mut groups = 0;
    for entry in standard_catalog() {
        let g = entry.build();
        for star in [StarTable::trivial(&g), StarTable::improper(&g)] {
            let violations = check_mla_axioms(&g, &star);
            assert!(
                violations.is_empty(),
                "{} violates {:?}",
                entry.name,
                violations
            );
        }
        groups += 1;
    }
    println!("criterion 01 (axiom soundness, trivial+improper on {groups} catalog groups): PASS");
}

#[test]
fn criterion_02_identity_suite_everywhere() {
    let structures = all_encountered_structures();
    for m in &structures {
        let violations = check_derived_identities(m.group(), m.star());
        assert!(
            violations.is_empty(),
            "{} violates {:?}",
            m.group().name(),
            violations
        );
    }
    println!(
        "criterion 02 (all 12 identities on {} certified structures): PASS",
        structures.len()
    );
}

/// Class-2 structures quantified over by criteria 3-5: complete
/// enumerations at order <= 8, and trivial, improper plus all central
/// pairing structures on the larger class-2 members up to order 16.
fn class2_structures_up_to_16() -> Vec<Mla> {
    let mut out = Vec::new();
    for entry in class2_members_up_to(16) {
        let g = entry.build();
        if entry.expected_order <= 8 {
            for star in enumerate_complete(&g) {
                out.push(Mla::certify(g.clone(), star).expect("certifies"));
            }
        } else {
            out.push(Mla::trivial(&g));
            out.push(Mla::improper(&g));
            for p in pairings_of(&g) {
                out.push(central_pairing_to_star(&g, &p).expect("pairing structure"));
            }
        }
    }
    out
}

#[test]
fn criterion_03_class2_properties() {
    let structures = class2_structures_up_to_16();
    for m in &structures {
        assert!(m.group().is_class2());
        for check in class2_property_report(m) {
            assert!(
                check.holds,
                "{} fails {} at {:?}",
                m.group().name(),
                check.label,
                check.witness
            );
        }
    }
    println!(
        "criterion 03 (five class-2 properties on {} structures): PASS",
        structures.len()
    );
}

#[test]
fn criterion_04_nilpotent_implies_lie_nilpotent() {
    let structures = class2_structures_up_to_16();
    let mut nilpotent = 0;
    for m in &structures {
        let gamma = compute_series(m, SeriesKind::GammaLowerCentral);
        let lie = compute_series(m, SeriesKind::LieLowerCentral);
        if gamma.reaches_identity() {
            nilpotent += 1;
            assert!(
                lie.reaches_identity(),
                "{}: nilpotent structure is not Lie nilpotent",
                m.group().name()
            );
        }
        // pointwise L_n <= Gamma_(n): lie terms are indexed from L_0 = G,
        // gamma terms from Gamma_(1) = G
        let depth = lie.terms.len().max(gamma.terms.len()) + 1;
        for n in 1..depth {
            assert!(
                lie.term(n).is_subset_of(gamma.term(n - 1)),
                "{}: L_{} escapes Gamma_({})",
                m.group().name(),
                n,
                n
            );
        }
    }
    println!(
        "criterion 04 (KC: {} nilpotent of {} structures, all Lie nilpotent, containments exact): PASS",
        nilpotent,
        structures.len()
    );
}

#[test]
fn criterion_05_commutator_containment() {
    let structures = class2_structures_up_to_16();
    for m in &structures {
        let g = m.group();
        let gamma = compute_series(m, SeriesKind::GammaLowerCentral);
        let lie = compute_series(m, SeriesKind::LieLowerCentral);
        let depth = lie.terms.len() + 1;
        for n in 0..depth {
            let ln = lie.term(n);
            let mut gens = Subset::empty(g.order());
            for a in g.elements() {
                for b in ln.iter() {
                    gens.insert(g.comm(a, b));
                }
            }
            let commutators = g.subgroup_closure(&gens);
            assert!(
                commutators.is_subset_of(gamma.term(n)),
                "{}: [G, L_{}] escapes Gamma_({})",
                g.name(),
                n,
                n + 1
            );
        }
    }
    println!(
        "criterion 05 ([G, L_n] <= Gamma_(n+1) on {} structures): PASS",
        structures.len()
    );
}

#[test]
fn criterion_06_combination_theorem_on_d4_and_q8() {
    let mut combined_total = 0;
    for g in [
        families::dihedral(4).unwrap(),
        families::quaternion8().unwrap(),
    ] {
        let stars = enumerate_complete(&g);
        let mlas: Vec<Mla> = stars
            .iter()
            .map(|s| Mla::certify(g.clone(), s.clone()).expect("certifies"))
            .collect();
        for m1 in &mlas {
            for m2 in &mlas {
                match combine_structures(m1, m2) {
                    Ok(combined) => {
                        combined_total += 1;
                        assert!(combined.certified());
                        assert!(
                            stars.contains(combined.star()),
                            "{}: combined structure escapes the enumerated set",
                            g.name()
                        );
                    }
                    Err(CombineError::Precondition { .. }) => {}
                    Err(other) => panic!("{}: {other}", g.name()),
                }
            }
        }
    }
    assert!(combined_total > 0);
    println!("criterion 06 (combination theorem, {combined_total} admissible ordered pairs all certify): PASS");
}

#[test]
fn criterion_07_oracle_equivalence_on_abelian_groups() {
    let specs = [
        FamilySpec::Cyclic(2),
        FamilySpec::Cyclic(3),
        FamilySpec::Cyclic(4),
        FamilySpec::Abelian(vec![2, 2]),
        FamilySpec::Cyclic(5),
        FamilySpec::Cyclic(6),
        FamilySpec::Abelian(vec![2, 4]),
        FamilySpec::Abelian(vec![3, 3]),
    ];
    let mut total = 0;
    for spec in specs {
        let g = spec.build().unwrap();
        let search = enumerate_complete(&g);
        let oracle = abelian_bracket_oracle(&g);
        assert_eq!(search, oracle, "disagreement on {}", g.name());
        total += search.len();
    }
    println!(
        "criterion 07 (search = bracket oracle on 8 abelian groups, {total} structures): PASS"
    );
}

#[test]
fn criterion_08_forced_counts() {
    for n in 1..=12 {
        let g = families::cyclic(n).unwrap();
        let stars = enumerate_complete(&g);
        assert_eq!(stars.len(), 1, "C{n} must be rigid");
        assert_eq!(stars[0], StarTable::trivial(&g));
    }
    let mut nonabelian = 0;
    for entry in standard_catalog() {
        let g = entry.build();
        if g.is_abelian() {
            continue;
        }
        nonabelian += 1;
        let trivial = StarTable::trivial(&g);
        let improper = StarTable::improper(&g);
        assert_ne!(trivial, improper, "{}", entry.name);
        assert!(check_mla_axioms(&g, &trivial).is_empty());
        assert!(check_mla_axioms(&g, &improper).is_empty());
    }
    println!("criterion 08 (cyclic rigidity to order 12; >=2 structures on {nonabelian} nonabelian groups): PASS");
}

#[test]
fn criterion_09_extension_theorem_end_to_end() {
    let instances = random_verified_instances(2024, 100);
    assert_eq!(instances.len(), 100);
    for (i, data) in instances.iter().enumerate() {
        let group = data.build_group().unwrap_or_else(|e| {
            panic!("instance {i}: group construction failed: {e}");
        });
        // the constructor revalidates; double-check through the public path
        assert!(GroupTable::from_table(group.name(), &group.rows()).is_ok());
        let mla = data.build_star().unwrap_or_else(|e| {
            panic!("instance {i}: star construction failed: {e}");
        });
        assert!(mla.certified());
    }
    println!("criterion 09 (100 randomized extension data: all build and certify): PASS");
}

#[test]
fn criterion_10_pairing_round_trip_and_section_independence() {
    let mut members: Vec<CatalogEntry> = class2_members_up_to(16)
        .into_iter()
        .filter(|e| e.expected_order == 16)
        .collect();
    members.push(
        standard_catalog()
            .into_iter()
            .find(|e| e.name == "Heis3")
            .expect("catalog contains Heis3"),
    );
    let mut pairings_total = 0;
    for entry in members {
        let g = entry.build();
        let derived = g.derived_subgroup();
        for p in pairings_of(&g) {
            pairings_total += 1;
            let m = central_pairing_to_star(&g, &p).expect("pairing induces a structure");
            let back = star_to_central_pairing(&m).expect("structure is central type");
            assert_eq!(back.table(), p.table(), "{}: round trip drifts", entry.name);
            let again = central_pairing_to_star(&g, &back).expect("round trip rebuilds");
            assert_eq!(again.star(), m.star());
            for reps in sample_transversals(&g, &derived).unwrap() {
                let via = star_to_pairing_with_transversal(&m, &reps).unwrap();
                assert_eq!(
                    via.table(),
                    p.table(),
                    "{}: pairing depends on the transversal",
                    entry.name
                );
            }
        }
    }
    println!("criterion 10 (pairing round trip + section independence on {pairings_total} pairings): PASS");
}

#[test]
fn criterion_11_heisenberg_reconstruction() {
    // K = C3 x C3, H = C3, twist factor set
    let h = families::cyclic(3).unwrap();
    let k = families::abelian(&[3, 3]).unwrap();
    let kn = k.order();
    let mut f = vec![0; kn * kn];
    for x in 0..kn {
        for y in 0..kn {
            f[x * kn + y] = (x % 3) * (y / 3) % 3;
        }
    }
    let data = mla::extension::ExtensionData::new(
        mla::star::LieRing::trivial(h.clone()).unwrap(),
        mla::star::LieRing::trivial(k.clone()).unwrap(),
        mla::extension::identity_sigma(&h, &k),
        vec![vec![0; 3]; kn],
        f,
        vec![0; kn * kn],
    )
    .unwrap();
    assert!(data.verify_cocycle().is_empty());
    let g = data.build_group().unwrap();
    let reference = families::heisenberg(3).unwrap();

    assert_eq!(g.order(), 27);
    assert!(g.is_class2());
    assert_eq!(g.center().len(), 3);
    assert_eq!(g.center(), g.derived_subgroup());

    assert_eq!(reference.order(), 27);
    assert!(reference.is_class2());
    assert_eq!(reference.center().len(), 3);
    assert_eq!(reference.center(), reference.derived_subgroup());
    println!("criterion 11 (heisenberg reconstruction: order 27, class 2, |Z|=3, [G,G]=Z): PASS");
}
