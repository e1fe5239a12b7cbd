//! Randomized property suites: closure operators behave like closure
//! operators, conjugation acts by automorphisms, automorphism transport
//! preserves certification, and verified extension data always builds.

use mla::extension::random_verified_instances;
use mla::families;
use mla::group::{GroupTable, Subset};
use mla::search::{abelian_bracket_oracle, automorphism_group, transport_star};
use mla::star::{check_mla_axioms, StarTable};
use proptest::prelude::*;

fn small_group() -> impl Strategy<Value = GroupTable> {
    prop_oneof![
        (1usize..=8).prop_map(|n| families::cyclic(n).unwrap()),
        (2usize..=4, 2usize..=4).prop_map(|(a, b)| families::abelian(&[a, b]).unwrap()),
        (2usize..=6).prop_map(|n| families::dihedral(n).unwrap()),
        Just(families::quaternion8().unwrap()),
        Just(families::heisenberg(2).unwrap()),
        Just(families::metacyclic(3, 2, 2, 0).unwrap()),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn conjugation_is_an_automorphism((g, seeds) in small_group().prop_flat_map(|g| {
        let n = g.order();
        (Just(g), prop::collection::vec(0..n, 3))
    })) {
        let (z, x, y) = (seeds[0], seeds[1], seeds[2]);
        prop_assert_eq!(g.conj(z, g.mul(x, y)), g.mul(g.conj(z, x), g.conj(z, y)));
        prop_assert_eq!(g.mul3(g.comm(x, y), y, x), g.mul(x, y));
        prop_assert_eq!(g.conj(g.identity(), x), x);
    }

    #[test]
    fn closures_are_closure_operators((g, members) in small_group().prop_flat_map(|g| {
        let n = g.order();
        (Just(g), prop::collection::vec(0..n, 0..4))
    })) {
        let gens = Subset::from_members(g.order(), members.iter().copied());
        let closed = g.subgroup_closure(&gens);
        prop_assert!(gens.is_subset_of(&closed));
        prop_assert!(closed.is_subgroup(&g));
        prop_assert_eq!(g.subgroup_closure(&closed).clone(), closed.clone());
        let normal = g.normal_closure(&gens);
        prop_assert!(closed.is_subset_of(&normal));
        prop_assert!(normal.is_normal(&g));
    }

    #[test]
    fn transport_preserves_certification(g in small_group()) {
        let auts = automorphism_group(&g);
        for star in [StarTable::trivial(&g), StarTable::improper(&g)] {
            for aut in &auts {
                let moved = transport_star(&star, aut);
                prop_assert!(check_mla_axioms(&g, &moved).is_empty());
                // canonical structures are fixed by every automorphism
                prop_assert_eq!(&moved, &star);
            }
        }
    }

    #[test]
    fn bracket_oracle_emits_certified_tables((a, b) in (2usize..=4, 2usize..=4)) {
        let g = families::abelian(&[a, b]).unwrap();
        let brackets = abelian_bracket_oracle(&g);
        prop_assert!(!brackets.is_empty());
        for star in &brackets {
            prop_assert!(check_mla_axioms(&g, star).is_empty());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn verified_extension_data_always_builds(seed in 0u64..1000) {
        let data = random_verified_instances(seed, 1).remove(0);
        let mla = data.build_star().expect("verified data must build");
        prop_assert!(mla.certified());
        prop_assert!(GroupTable::from_table("roundtrip", &mla.group().rows()).is_ok());
    }
}
