//! The twelve consequences every certified structure must satisfy.
//!
//! Five identities follow from the axioms directly; seven more govern the
//! Lie commutator `L[a,b] = (a ⋆ b)^{-1}[a, b]`. All quantifiers are
//! exhausted, and for each identity only the first failing witness (in
//! row-major order) is reported. A nonempty result on a certified structure
//! means either the axiom checker or this suite is wrong, so the two act as
//! cross-checks on each other.

use crate::group::{Elem, GroupTable};
use crate::star::{lie_commutator, StarTable, Violation};

/// Exhaustively verifies all twelve identities; empty means all hold.
pub fn check_derived_identities(g: &GroupTable, star: &StarTable) -> Vec<Violation> {
    let n = g.order();
    let e = g.identity();
    let s = |a: Elem, b: Elem| star.get(a, b);
    let lie = |a: Elem, b: Elem| lie_commutator(g, star, a, b);
    let mut out = Vec::new();
    let mut report = |law: &'static str, witness: Vec<Elem>, left: Elem, right: Elem| {
        out.push(Violation {
            law,
            witness,
            left,
            right,
        });
    };

    // 1 ⋆ x = x ⋆ 1 = 1
    'unit: for x in 0..n {
        for (left, w) in [(s(e, x), vec![e, x]), (s(x, e), vec![x, e])] {
            if left != e {
                report("id-unit", w, left, e);
                break 'unit;
            }
        }
    }

    // (x ⋆ y)(y ⋆ x) = 1
    'antisym: for x in 0..n {
        for y in 0..n {
            let left = g.mul(s(x, y), s(y, x));
            if left != e {
                report("id-antisymmetry", vec![x, y], left, e);
                break 'antisym;
            }
        }
    }

    // ^(x⋆y)(u⋆v) = ^[x,y](u⋆v)
    'conj: for x in 0..n {
        for y in 0..n {
            let sv = s(x, y);
            let cm = g.comm(x, y);
            for u in 0..n {
                for v in 0..n {
                    let left = g.conj(sv, s(u, v));
                    let right = g.conj(cm, s(u, v));
                    if left != right {
                        report(
                            "id-star-conjugates-like-comm",
                            vec![x, y, u, v],
                            left,
                            right,
                        );
                        break 'conj;
                    }
                }
            }
        }
    }

    // [(x⋆y), z] = [x,y] ⋆ z
    'commstar: for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let left = g.comm(s(x, y), z);
                let right = s(g.comm(x, y), z);
                if left != right {
                    report("id-comm-of-star-value", vec![x, y, z], left, right);
                    break 'commstar;
                }
            }
        }
    }

    // x^{-1} ⋆ y = ^(x^{-1})((x⋆y)^{-1}) and x ⋆ y^{-1} = ^(y^{-1})((x⋆y)^{-1})
    'inverse: for x in 0..n {
        for y in 0..n {
            let left1 = s(g.inv(x), y);
            let right1 = g.conj(g.inv(x), g.inv(s(x, y)));
            if left1 != right1 {
                report("id-inverse-arguments", vec![x, y], left1, right1);
                break 'inverse;
            }
            let left2 = s(x, g.inv(y));
            let right2 = g.conj(g.inv(y), g.inv(s(x, y)));
            if left2 != right2 {
                report("id-inverse-arguments", vec![x, y], left2, right2);
                break 'inverse;
            }
        }
    }

    // L[a, a] = 1
    'lalt: for a in 0..n {
        let left = lie(a, a);
        if left != e {
            report("lie-alternating", vec![a], left, e);
            break 'lalt;
        }
    }

    // L[a,b] L[b,a] = 1
    'lanti: for a in 0..n {
        for b in 0..n {
            let left = g.mul(lie(a, b), lie(b, a));
            if left != e {
                report("lie-antisymmetry", vec![a, b], left, e);
                break 'lanti;
            }
        }
    }

    // L[ab, c] = L[a,c] ^(^c a)(L[b,c])
    'lleft: for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let left = lie(g.mul(a, b), c);
                let right = g.mul(lie(a, c), g.conj(g.conj(c, a), lie(b, c)));
                if left != right {
                    report("lie-left-expansion", vec![a, b, c], left, right);
                    break 'lleft;
                }
            }
        }
    }

    // L[a, bc] = ^b(L[a,c]) ^([^b c, ^b a])(L[a,b])
    'lright: for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let left = lie(a, g.mul(b, c));
                let tw = g.comm(g.conj(b, c), g.conj(b, a));
                let right = g.mul(g.conj(b, lie(a, c)), g.conj(tw, lie(a, b)));
                if left != right {
                    report("lie-right-expansion", vec![a, b, c], left, right);
                    break 'lright;
                }
            }
        }
    }

    // ^a(L[b,c]) = L[^a b, ^a c]
    'lequi: for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let left = g.conj(a, lie(b, c));
                let right = lie(g.conj(a, b), g.conj(a, c));
                if left != right {
                    report("lie-equivariance", vec![a, b, c], left, right);
                    break 'lequi;
                }
            }
        }
    }

    // L[a^{-1}, b] = ^(a^{-1})(L[b,a]) and L[a, b^{-1}] = ^(b^{-1})(L[b,a])
    'linv: for a in 0..n {
        for b in 0..n {
            let left1 = lie(g.inv(a), b);
            let right1 = g.conj(g.inv(a), lie(b, a));
            if left1 != right1 {
                report("lie-inverse-arguments", vec![a, b], left1, right1);
                break 'linv;
            }
            let left2 = lie(a, g.inv(b));
            let right2 = g.conj(g.inv(b), lie(b, a));
            if left2 != right2 {
                report("lie-inverse-arguments", vec![a, b], left2, right2);
                break 'linv;
            }
        }
    }

    // ^(L[a,b])(x ⋆ y) = x ⋆ y
    'lcent: for a in 0..n {
        for b in 0..n {
            let l = lie(a, b);
            for x in 0..n {
                for y in 0..n {
                    let left = g.conj(l, s(x, y));
                    let right = s(x, y);
                    if left != right {
                        report("lie-centralizes-star-values", vec![a, b, x, y], left, right);
                        break 'lcent;
                    }
                }
            }
        }
    }

    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use crate::star::Mla;

    #[test]
    fn identities_hold_on_trivial_and_improper() {
        for g in [
            families::cyclic(8).unwrap(),
            families::dihedral(4).unwrap(),
            families::quaternion8().unwrap(),
            families::metacyclic(3, 2, 2, 0).unwrap(),
            families::heisenberg(3).unwrap(),
        ] {
            for m in [Mla::trivial(&g), Mla::improper(&g)] {
                let vs = check_derived_identities(m.group(), m.star());
                assert!(vs.is_empty(), "{} violates {:?}", g.name(), vs);
            }
        }
    }

    #[test]
    fn lie_commutator_on_trivial_equals_comm() {
        let g = families::dihedral(3).unwrap();
        let m = Mla::trivial(&g);
        for a in g.elements() {
            for b in g.elements() {
                assert_eq!(m.lie_commutator(a, b), g.comm(a, b));
            }
        }
    }

    #[test]
    fn bogus_table_reports_identity_violation() {
        // A star table that is alternating but not a structure: violations
        // must surface somewhere in the suite.
        let g = families::dihedral(3).unwrap();
        let mut rows = vec![vec![0; 6]; 6];
        rows[1][2] = 3;
        rows[2][1] = g.inv(3);
        let star = StarTable::from_rows(6, &rows).unwrap();
        assert!(!check_derived_identities(&g, &star).is_empty());
    }
}
