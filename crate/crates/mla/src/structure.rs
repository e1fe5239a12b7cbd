//! Structure-level operations: pushing a star to a quotient, combining two
//! structures pointwise, and the five-point report for class-2 groups.

use crate::group::{Elem, GroupHom, GroupTable, Subset};
use crate::series::{lie_ideal, mz_center, star_span};
use crate::star::{check_mla_axioms, Mla, StarTable, Violation};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone)]
pub enum QuotientStarError {
    #[error("subset is not an ideal: witness {witness:?}")]
    NotAnIdeal { witness: Vec<Elem> },
    #[error("quotient star not well defined: ({a},{b}) and ({c},{d}) disagree")]
    NotWellDefined { a: Elem, b: Elem, c: Elem, d: Elem },
    #[error("quotient construction failed: {0}")]
    Group(#[from] crate::group::GroupError),
    #[error("quotient star fails the axioms: {0:?}")]
    NotCertified(Vec<Violation>),
}

/// Pushes a certified star down to `G/N` for an ideal `N`, verifying
/// well-definedness over every pair of representatives.
pub fn induced_quotient_star(mla: &Mla, n: &Subset) -> Result<(Mla, GroupHom), QuotientStarError> {
    let g = mla.group();
    let star = mla.star();
    if let Some(witness) = ideal_witness(g, star, n) {
        return Err(QuotientStarError::NotAnIdeal { witness });
    }
    let (q, proj) = g.quotient(n)?;
    let k = q.order();
    let mut values = vec![usize::MAX; k * k];
    for a in g.elements() {
        for b in g.elements() {
            let (qa, qb) = (proj.apply(a), proj.apply(b));
            let v = proj.apply(star.get(a, b));
            let slot = &mut values[qa * k + qb];
            if *slot == usize::MAX {
                *slot = v;
            } else if *slot != v {
                // find the earlier pair for the witness
                let (c, d) = witness_pair(g, &proj, qa, qb);
                return Err(QuotientStarError::NotWellDefined {
                    a: c,
                    b: d,
                    c: a,
                    d: b,
                });
            }
        }
    }
    let qstar = StarTable::from_flat(k, values).expect("projection stays in range");
    let mla_q = Mla::certify(q, qstar).map_err(QuotientStarError::NotCertified)?;
    Ok((mla_q, proj))
}

fn witness_pair(g: &GroupTable, proj: &GroupHom, qa: Elem, qb: Elem) -> (Elem, Elem) {
    for a in g.elements() {
        for b in g.elements() {
            if proj.apply(a) == qa && proj.apply(b) == qb {
                return (a, b);
            }
        }
    }
    unreachable!("projection is surjective")
}

/// First witness that `n` is not an ideal: either a normality failure or a
/// star value escaping the subset.
fn ideal_witness(g: &GroupTable, star: &StarTable, n: &Subset) -> Option<Vec<Elem>> {
    if !n.is_subgroup(g) {
        return Some(vec![]);
    }
    if let Some((member, by)) = n.normality_witness(g) {
        return Some(vec![member, by]);
    }
    for m in n.iter() {
        for x in g.elements() {
            if !n.contains(star.get(x, m)) || !n.contains(star.get(m, x)) {
                return Some(vec![x, m]);
            }
        }
    }
    None
}

pub fn is_ideal(g: &GroupTable, star: &StarTable, n: &Subset) -> bool {
    ideal_witness(g, star, n).is_none()
}

#[derive(Debug, Error, Clone)]
pub enum CombineError {
    #[error("structures live on different groups")]
    GroupMismatch,
    #[error("combination precondition {condition} fails at {witness:?}")]
    Precondition { condition: u8, witness: Vec<Elem> },
    #[error("combined star failed certification despite preconditions: {0}")]
    TheoremViolated(Violation),
}

/// Combines two certified structures into `x ⋆ y = (x ⋆₁ y)(x ⋆₂ y)` after
/// exhaustively checking the three preconditions:
///
/// 1. both spans `G ⋆₁ G` and `G ⋆₂ G` are abelian,
/// 2. every `⋆₁` value commutes with every `⋆₂` value,
/// 3. the six-factor mixed Jacobi product vanishes for all triples.
///
/// The result is then independently re-certified; a certification failure is
/// reported loudly as [`CombineError::TheoremViolated`], never swallowed.
pub fn combine_structures(m1: &Mla, m2: &Mla) -> Result<Mla, CombineError> {
    let g = m1.group();
    if m2.group() != g {
        return Err(CombineError::GroupMismatch);
    }
    let (s1, s2) = (m1.star(), m2.star());
    let n = g.order();
    let full = Subset::full(n);

    for (id, star) in [(1u8, s1), (2u8, s2)] {
        let span = star_span(g, star, &full, &full);
        if let Some((a, b)) = abelian_witness(g, &span) {
            return Err(CombineError::Precondition {
                condition: 1,
                witness: vec![id as usize, a, b],
            });
        }
    }

    for x in 0..n {
        for y in 0..n {
            let v1 = s1.get(x, y);
            for z in 0..n {
                for w in 0..n {
                    let v2 = s2.get(z, w);
                    if g.mul(v1, v2) != g.mul(v2, v1) {
                        return Err(CombineError::Precondition {
                            condition: 2,
                            witness: vec![x, y, z, w],
                        });
                    }
                }
            }
        }
    }

    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let yz = g.conj(y, z);
                let zx = g.conj(z, x);
                let xy = g.conj(x, y);
                let p = [
                    s2.get(s1.get(x, y), yz),
                    s1.get(s2.get(x, y), yz),
                    s2.get(s1.get(y, z), zx),
                    s1.get(s2.get(y, z), zx),
                    s2.get(s1.get(z, x), xy),
                    s1.get(s2.get(z, x), xy),
                ];
                let prod = p.iter().fold(g.identity(), |acc, &v| g.mul(acc, v));
                if prod != g.identity() {
                    return Err(CombineError::Precondition {
                        condition: 3,
                        witness: vec![x, y, z],
                    });
                }
            }
        }
    }

    let mut values = vec![0; n * n];
    for x in 0..n {
        for y in 0..n {
            values[x * n + y] = g.mul(s1.get(x, y), s2.get(x, y));
        }
    }
    let star = StarTable::from_flat(n, values).expect("products stay in range");
    match check_mla_axioms(g, &star) {
        v if v.is_empty() => Ok(Mla::certify(g.clone(), star).expect("just checked")),
        mut v => Err(CombineError::TheoremViolated(v.remove(0))),
    }
}

fn abelian_witness(g: &GroupTable, s: &Subset) -> Option<(Elem, Elem)> {
    for a in s.iter() {
        for b in s.iter() {
            if g.mul(a, b) != g.mul(b, a) {
                return Some((a, b));
            }
        }
    }
    None
}

/// One of the five class-2 checks, with the first counterexample if it
/// failed.
#[derive(Debug, Clone, Serialize)]
pub struct Class2Check {
    pub label: &'static str,
    pub holds: bool,
    pub witness: Option<Vec<Elem>>,
}

/// For a certified structure on a class-2 group, checks the five facts that
/// must hold there:
///
/// 1. the star restricted to `[G, G]` is trivial,
/// 2. `G ⋆ G` is abelian,
/// 3. the ideal generated by the Lie commutators is abelian,
/// 4. star values of multiplicative-Lie-central elements are central,
/// 5. `(G ⋆ G) ⋆ [G, G] = 1`.
///
/// A `false` anywhere indicates a bug, not a mathematical discovery.
pub fn class2_property_report(mla: &Mla) -> Vec<Class2Check> {
    let g = mla.group();
    let star = mla.star();
    let n = g.order();
    let e = g.identity();
    debug_assert!(g.is_class2());
    let derived = g.derived_subgroup();
    let full = Subset::full(n);
    let mut out = Vec::with_capacity(5);

    let mut w1 = None;
    'p1: for a in derived.iter() {
        for b in derived.iter() {
            if star.get(a, b) != e {
                w1 = Some(vec![a, b]);
                break 'p1;
            }
        }
    }
    out.push(Class2Check {
        label: "derived-subgroup-restriction-trivial",
        holds: w1.is_none(),
        witness: w1,
    });

    let span = star_span(g, star, &full, &full);
    let w2 = abelian_witness(g, &span).map(|(a, b)| vec![a, b]);
    out.push(Class2Check {
        label: "star-span-abelian",
        holds: w2.is_none(),
        witness: w2,
    });

    let lie_comm_ideal = lie_ideal(g, star, &full, &full);
    let w3 = abelian_witness(g, &lie_comm_ideal).map(|(a, b)| vec![a, b]);
    out.push(Class2Check {
        label: "lie-commutator-ideal-abelian",
        holds: w3.is_none(),
        witness: w3,
    });

    let mz = mz_center(mla);
    let mut w4 = None;
    'p4: for x in mz.iter() {
        for y in mz.iter() {
            let v = star.get(x, y);
            for z in g.elements() {
                if g.comm(z, v) != e {
                    w4 = Some(vec![x, y, z]);
                    break 'p4;
                }
            }
        }
    }
    out.push(Class2Check {
        label: "mz-star-values-central",
        holds: w4.is_none(),
        witness: w4,
    });

    let mut w5 = None;
    'p5: for x in 0..n {
        for y in 0..n {
            let s = star.get(x, y);
            for u in 0..n {
                for v in 0..n {
                    if star.get(s, g.comm(u, v)) != e {
                        w5 = Some(vec![x, y, u, v]);
                        break 'p5;
                    }
                }
            }
        }
    }
    out.push(Class2Check {
        label: "span-star-derived-vanishes",
        holds: w5.is_none(),
        witness: w5,
    });

    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use crate::series::lz_center;

    #[test]
    fn quotient_by_identity_is_same_structure() {
        let g = families::quaternion8().unwrap();
        let m = Mla::improper(&g);
        let n = Subset::singleton(8, g.identity());
        let (q, _) = induced_quotient_star(&m, &n).unwrap();
        assert_eq!(q.group().order(), 8);
        assert_eq!(q.star(), m.star());
    }

    #[test]
    fn quotient_by_whole_group_is_trivial() {
        let g = families::quaternion8().unwrap();
        let m = Mla::improper(&g);
        let (q, _) = induced_quotient_star(&m, &Subset::full(8)).unwrap();
        assert_eq!(q.group().order(), 1);
    }

    #[test]
    fn heisenberg_improper_quotient_by_derived_is_trivial_structure() {
        let g = families::heisenberg(3).unwrap();
        let m = Mla::improper(&g);
        let (q, _) = induced_quotient_star(&m, &g.derived_subgroup()).unwrap();
        assert_eq!(q.group().order(), 9);
        assert!(q.group().is_abelian());
        assert!(q.is_trivial_structure());
    }

    #[test]
    fn non_ideal_is_rejected() {
        let g = families::metacyclic(3, 2, 2, 0).unwrap();
        let m = Mla::trivial(&g);
        // {e, b} is a subgroup but not normal in S3
        let b = 1; // a^0 b^1
        let s = Subset::from_members(6, [g.identity(), b]);
        assert!(matches!(
            induced_quotient_star(&m, &s),
            Err(QuotientStarError::NotAnIdeal { .. })
        ));
    }

    #[test]
    fn quotient_projection_maps_star_values_exactly() {
        let g = families::heisenberg(2).unwrap();
        let m = Mla::improper(&g);
        let n = g.derived_subgroup();
        let (q, proj) = induced_quotient_star(&m, &n).unwrap();
        for a in g.elements() {
            for b in g.elements() {
                assert_eq!(
                    proj.apply(m.star().get(a, b)),
                    q.star().get(proj.apply(a), proj.apply(b))
                );
            }
        }
    }

    #[test]
    fn combine_trivial_with_trivial() {
        let g = families::dihedral(4).unwrap();
        let t = Mla::trivial(&g);
        let c = combine_structures(&t, &t).unwrap();
        assert!(c.is_trivial_structure());
    }

    #[test]
    fn combine_trivial_with_any_returns_other() {
        let g = families::quaternion8().unwrap();
        let t = Mla::trivial(&g);
        let imp = Mla::improper(&g);
        let c = combine_structures(&t, &imp).unwrap();
        assert_eq!(c.star(), imp.star());
        let c2 = combine_structures(&imp, &t).unwrap();
        assert_eq!(c2.star(), imp.star());
    }

    #[test]
    fn lz_containment_from_trivial_quotient_structure() {
        // When the induced structure on G/[G,G] is trivial, [G,G] lands in
        // the Lie center.
        let g = families::heisenberg(3).unwrap();
        let m = Mla::improper(&g);
        let d = g.derived_subgroup();
        let (q, _) = induced_quotient_star(&m, &d).unwrap();
        assert!(q.is_trivial_structure());
        assert!(d.is_subset_of(&lz_center(&m)));
    }

    #[test]
    fn class2_report_all_hold_on_reference_structures() {
        for g in [
            families::dihedral(4).unwrap(),
            families::quaternion8().unwrap(),
            families::heisenberg(3).unwrap(),
            families::abelian(&[2, 4]).unwrap(),
        ] {
            for m in [Mla::trivial(&g), Mla::improper(&g)] {
                for check in class2_property_report(&m) {
                    assert!(check.holds, "{} fails {}", g.name(), check.label);
                }
            }
        }
    }
}
