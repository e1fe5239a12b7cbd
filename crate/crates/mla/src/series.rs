//! Spans, ideals, descending series and the two centers of a certified
//! structure.
//!
//! Four series are tracked. With `Γ` built from `⋆`-spans and `L`-terms from
//! ideals generated by Lie commutators:
//!
//! - gamma derived:        `T_0 = G`, `T_{k+1} = T_k ⋆ T_k`
//! - gamma lower central:  `T_0 = G`, `T_{k+1} = G ⋆ T_k`
//! - lie derived:          `T_0 = G`, `T_{k+1} = ideal generated by L[T_k, T_k]`
//! - lie lower central:    `T_0 = G`, `T_{k+1} = ideal generated by L[G, T_k]`
//!
//! Degenerate conventions: every class is 0 on the trivial group, and the
//! trivial structure on a nontrivial group has nilpotency class 1.

use crate::group::{GroupTable, Subset};
use crate::star::{lie_commutator, Mla, StarTable};
use serde::Serialize;

/// Subgroup generated by `{ a ⋆ b : a in A, b in B }`.
pub fn star_span(g: &GroupTable, star: &StarTable, a: &Subset, b: &Subset) -> Subset {
    let mut gens = Subset::empty(g.order());
    for x in a.iter() {
        for y in b.iter() {
            gens.insert(star.get(x, y));
        }
    }
    g.subgroup_closure(&gens)
}

/// Smallest ideal containing `s`: a normal subgroup additionally closed
/// under starring with arbitrary group elements on either side. Computed by
/// worklist saturation.
pub fn ideal_closure(g: &GroupTable, star: &StarTable, s: &Subset) -> Subset {
    let mut current = g.normal_closure(s);
    loop {
        let mut extra = Subset::empty(g.order());
        for m in current.iter() {
            for x in g.elements() {
                for v in [star.get(x, m), star.get(m, x)] {
                    if !current.contains(v) {
                        extra.insert(v);
                    }
                }
            }
        }
        if extra.is_empty() {
            return current;
        }
        let mut gens = current.clone();
        gens.union_with(&extra);
        current = g.normal_closure(&gens);
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SeriesKind {
    GammaDerived,
    GammaLowerCentral,
    LieDerived,
    LieLowerCentral,
}

/// A computed descending chain, stopped at the identity subgroup or at the
/// first repeat.
#[derive(Debug, Clone)]
pub struct SeriesReport {
    pub kind: SeriesKind,
    /// `terms[0]` is the whole group.
    pub terms: Vec<Subset>,
    /// True once the chain provably stops changing, either by reaching `{e}`
    /// or by repeating a term strictly above it.
    pub stabilized: bool,
    /// Position of the first `{e}` term, when the chain reaches it: the
    /// solvability class, nilpotency class, or derived length depending on
    /// `kind`. `None` means the chain stabilizes above the identity.
    pub class: Option<usize>,
}

impl SeriesReport {
    pub fn reaches_identity(&self) -> bool {
        self.class.is_some()
    }

    /// Term at position `i`, clamped to the stable tail.
    pub fn term(&self, i: usize) -> &Subset {
        &self.terms[i.min(self.terms.len() - 1)]
    }
}

/// Iterates the requested series until stabilization. Requires a certified
/// structure.
pub fn compute_series(mla: &Mla, kind: SeriesKind) -> SeriesReport {
    debug_assert!(mla.certified());
    let g = mla.group();
    let star = mla.star();
    let full = Subset::full(g.order());
    let mut terms = vec![full.clone()];
    loop {
        let prev = terms.last().unwrap();
        if prev.is_trivial(g) {
            break;
        }
        let next = match kind {
            SeriesKind::GammaDerived => star_span(g, star, prev, prev),
            SeriesKind::GammaLowerCentral => star_span(g, star, &full, prev),
            SeriesKind::LieDerived => lie_ideal(g, star, prev, prev),
            SeriesKind::LieLowerCentral => lie_ideal(g, star, &full, prev),
        };
        if &next == prev {
            break;
        }
        terms.push(next);
    }
    let class = terms.iter().position(|t| t.is_trivial(g));
    SeriesReport {
        kind,
        terms,
        stabilized: true,
        class,
    }
}

/// Ideal generated by `{ L[a, b] : a in A, b in B }`.
pub fn lie_ideal(g: &GroupTable, star: &StarTable, a: &Subset, b: &Subset) -> Subset {
    let mut gens = Subset::empty(g.order());
    for x in a.iter() {
        for y in b.iter() {
            gens.insert(lie_commutator(g, star, x, y));
        }
    }
    ideal_closure(g, star, &gens)
}

/// Multiplicative Lie center: `{ a : L[a, b] = 1 for all b }`.
pub fn mz_center(mla: &Mla) -> Subset {
    let g = mla.group();
    Subset::from_members(
        g.order(),
        g.elements().filter(|&a| {
            g.elements()
                .all(|b| mla.lie_commutator(a, b) == g.identity())
        }),
    )
}

/// Lie center: `{ a : a ⋆ b = 1 for all b }`.
///
/// The star-annihilator reading is the one that makes `[G, G]` land in the
/// Lie center whenever the induced quotient structure is trivial.
pub fn lz_center(mla: &Mla) -> Subset {
    let g = mla.group();
    let star = mla.star();
    Subset::from_members(
        g.order(),
        g.elements()
            .filter(|&a| g.elements().all(|b| star.get(a, b) == g.identity())),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    #[test]
    fn trivial_star_span_is_identity() {
        let g = families::dihedral(4).unwrap();
        let m = Mla::trivial(&g);
        let span = star_span(m.group(), m.star(), &Subset::full(8), &Subset::full(8));
        assert!(span.is_trivial(&g));
    }

    #[test]
    fn improper_full_span_is_derived_subgroup() {
        for g in [
            families::dihedral(4).unwrap(),
            families::quaternion8().unwrap(),
            families::metacyclic(3, 2, 2, 0).unwrap(),
        ] {
            let m = Mla::improper(&g);
            let n = g.order();
            let span = star_span(m.group(), m.star(), &Subset::full(n), &Subset::full(n));
            assert_eq!(span, g.derived_subgroup());
        }
    }

    #[test]
    fn improper_heisenberg_center_span_vanishes() {
        let g = families::heisenberg(3).unwrap();
        let m = Mla::improper(&g);
        let span = star_span(m.group(), m.star(), &Subset::full(27), &g.center());
        assert!(span.is_trivial(&g));
    }

    #[test]
    fn ideal_closure_of_identity_is_identity() {
        let g = families::quaternion8().unwrap();
        let m = Mla::improper(&g);
        let s = Subset::singleton(8, g.identity());
        assert!(ideal_closure(m.group(), m.star(), &s).is_trivial(&g));
        assert!(ideal_closure(m.group(), m.star(), &Subset::empty(8)).is_trivial(&g));
    }

    #[test]
    fn ideal_closure_with_trivial_star_is_normal_closure() {
        let g = families::dihedral(4).unwrap();
        let m = Mla::trivial(&g);
        let one_comm = Subset::singleton(8, g.comm(1, 4));
        assert_eq!(
            ideal_closure(m.group(), m.star(), &one_comm),
            g.normal_closure(&one_comm)
        );
    }

    #[test]
    fn trivial_star_classes() {
        let g = families::dihedral(4).unwrap();
        let m = Mla::trivial(&g);
        let r = compute_series(&m, SeriesKind::GammaLowerCentral);
        assert_eq!(r.class, Some(1));
        let g1 = families::cyclic(1).unwrap();
        let m1 = Mla::trivial(&g1);
        assert_eq!(
            compute_series(&m1, SeriesKind::GammaLowerCentral).class,
            Some(0)
        );
        assert_eq!(compute_series(&m1, SeriesKind::GammaDerived).class, Some(0));
    }

    #[test]
    fn improper_heisenberg_is_nilpotent_of_class_2() {
        let g = families::heisenberg(3).unwrap();
        let m = Mla::improper(&g);
        let r = compute_series(&m, SeriesKind::GammaLowerCentral);
        assert_eq!(r.class, Some(2));
        assert_eq!(r.terms[1], g.derived_subgroup());
    }

    #[test]
    fn improper_s3_is_solvable_of_class_2() {
        let g = families::metacyclic(3, 2, 2, 0).unwrap();
        let m = Mla::improper(&g);
        let r = compute_series(&m, SeriesKind::GammaDerived);
        assert_eq!(r.class, Some(2));
        assert_eq!(r.terms[1], g.derived_subgroup());
    }

    #[test]
    fn improper_structures_have_lie_class_at_most_1() {
        let g = families::quaternion8().unwrap();
        let m = Mla::improper(&g);
        let r = compute_series(&m, SeriesKind::LieLowerCentral);
        assert_eq!(r.class, Some(1));
        assert!(r.terms[1].is_trivial(&g));
    }

    #[test]
    fn trivial_star_lie_series_matches_group_series() {
        // With the trivial star, L[a,b] = [a,b], so the lie lower central
        // series agrees with the group-theoretic one.
        let g = families::dihedral(4).unwrap();
        let m = Mla::trivial(&g);
        let r = compute_series(&m, SeriesKind::LieLowerCentral);
        // D4 lower central series: G > [G,G] > 1
        assert_eq!(r.terms[1], g.derived_subgroup());
        assert_eq!(r.class, Some(2));
    }

    #[test]
    fn centers_on_reference_structures() {
        let g = families::heisenberg(3).unwrap();
        let imp = Mla::improper(&g);
        assert_eq!(mz_center(&imp), Subset::full(27));
        assert_eq!(lz_center(&imp), g.center());

        let triv = Mla::trivial(&g);
        assert_eq!(mz_center(&triv), g.center());
        assert_eq!(lz_center(&triv), Subset::full(27));
    }

    #[test]
    fn mz_center_is_an_ideal_fixed_point() {
        for g in [
            families::dihedral(4).unwrap(),
            families::quaternion8().unwrap(),
        ] {
            for m in [Mla::trivial(&g), Mla::improper(&g)] {
                let mz = mz_center(&m);
                assert_eq!(ideal_closure(m.group(), m.star(), &mz), mz);
            }
        }
    }
}
