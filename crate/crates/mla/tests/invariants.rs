//! Cross-cutting invariants quantified over complete enumerations: the two
//! center lemmas, the commutation of values across structures, and oracle
//! agreement on the larger abelian groups.

use mla::families;
use mla::group::GroupTable;
use mla::search::{abelian_bracket_oracle, enumerate_stars, SearchOptions};
use mla::series::lz_center;
use mla::star::Mla;
use mla::structure::induced_quotient_star;

fn structures_on(g: &GroupTable) -> Vec<Mla> {
    let e = enumerate_stars(g, &SearchOptions::default());
    assert!(e.complete);
    e.stars
        .into_iter()
        .map(|s| Mla::certify(g.clone(), s).expect("enumeration output certifies"))
        .collect()
}

#[test]
fn trivial_quotient_structure_puts_derived_in_lie_center() {
    for g in [
        families::dihedral(4).unwrap(),
        families::quaternion8().unwrap(),
        families::heisenberg(2).unwrap(),
    ] {
        let derived = g.derived_subgroup();
        for m in structures_on(&g) {
            let Ok((q, _)) = induced_quotient_star(&m, &derived) else {
                continue;
            };
            if q.is_trivial_structure() {
                assert!(
                    derived.is_subset_of(&lz_center(&m)),
                    "{}: derived subgroup escapes the Lie center",
                    g.name()
                );
            }
        }
    }
}

#[test]
fn annihilated_derived_subgroup_makes_values_commute_across_structures() {
    // When [G,G] lies in the Lie center of star1, every star1 value
    // commutes with every value of every other certified structure.
    for g in [
        families::dihedral(4).unwrap(),
        families::quaternion8().unwrap(),
        families::metacyclic(3, 2, 2, 0).unwrap(),
    ] {
        let derived = g.derived_subgroup();
        let all = structures_on(&g);
        for m1 in &all {
            if !derived.is_subset_of(&lz_center(m1)) {
                continue;
            }
            for m2 in &all {
                for x in g.elements() {
                    for y in g.elements() {
                        let v1 = m1.star().get(x, y);
                        for z in g.elements() {
                            for w in g.elements() {
                                let v2 = m2.star().get(z, w);
                                assert_eq!(
                                    g.mul(v1, v2),
                                    g.mul(v2, v1),
                                    "{}: values fail to commute",
                                    g.name()
                                );
                            }
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn improper_combines_with_every_pairing_structure_on_heisenberg() {
    use mla::pairing::{central_pairing_to_star, enumerate_central_pairings};
    use mla::structure::combine_structures;
    let g = families::heisenberg(3).unwrap();
    let improper = Mla::improper(&g);
    let derived = g.derived_subgroup();
    let (q, _) = g.quotient(&derived).unwrap();
    let (a, _) = g.subgroup_table(&derived, "A").unwrap();
    for p in enumerate_central_pairings(&q, &a) {
        let pairing_structure = central_pairing_to_star(&g, &p).unwrap();
        let combined = combine_structures(&improper, &pairing_structure)
            .expect("the preconditions degenerate for central values");
        assert!(combined.certified());
    }
}

#[test]
fn oracle_equivalence_extends_to_order_16() {
    for dims in [vec![2, 2, 2], vec![4, 4], vec![2, 8]] {
        let g = families::abelian(&dims).unwrap();
        let search = enumerate_stars(&g, &SearchOptions::default());
        assert!(search.complete);
        assert_eq!(
            search.stars,
            abelian_bracket_oracle(&g),
            "disagreement on {}",
            g.name()
        );
    }
}
