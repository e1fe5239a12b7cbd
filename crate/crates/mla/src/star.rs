//! Star tables, the five defining axioms, and certified structures.
//!
//! A multiplicative Lie algebra is a group together with a second binary
//! operation `⋆` satisfying, for all `x, y, z` (writing `^zx` for `zxz^{-1}`):
//!
//! 1. `x ⋆ x = 1`
//! 2. `x ⋆ (yz) = (x ⋆ y) ^y(x ⋆ z)`
//! 3. `(xy) ⋆ z = ^x(y ⋆ z) (x ⋆ z)`
//! 4. `((x⋆y) ⋆ ^yz)((y⋆z) ⋆ ^zx)((z⋆x) ⋆ ^xy) = 1`
//! 5. `^z(x ⋆ y) = ^zx ⋆ ^zy`
//!
//! Every group carries the trivial structure `x ⋆ y = 1`, and every group
//! also carries the improper structure `x ⋆ y = [x, y]`.

use crate::group::{Elem, GroupTable};
use serde::Serialize;
use thiserror::Error;

/// A candidate binary operation as an index table over a group.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StarTable {
    order: usize,
    values: Vec<Elem>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StarError {
    #[error("star table shape does not match group of order {0}")]
    ShapeMismatch(usize),
    #[error("star entry at ({a},{b}) is {value}, out of range for order {order}")]
    OutOfRange {
        a: Elem,
        b: Elem,
        value: usize,
        order: usize,
    },
}

impl StarTable {
    /// Table with every entry equal to `v`.
    pub fn constant(order: usize, v: Elem) -> Self {
        StarTable {
            order,
            values: vec![v; order * order],
        }
    }

    pub fn from_rows(order: usize, rows: &[Vec<usize>]) -> Result<Self, StarError> {
        if rows.len() != order || rows.iter().any(|r| r.len() != order) {
            return Err(StarError::ShapeMismatch(order));
        }
        let mut values = Vec::with_capacity(order * order);
        for (a, r) in rows.iter().enumerate() {
            for (b, &v) in r.iter().enumerate() {
                if v >= order {
                    return Err(StarError::OutOfRange {
                        a,
                        b,
                        value: v,
                        order,
                    });
                }
                values.push(v);
            }
        }
        Ok(StarTable { order, values })
    }

    pub fn from_flat(order: usize, values: Vec<Elem>) -> Result<Self, StarError> {
        if values.len() != order * order {
            return Err(StarError::ShapeMismatch(order));
        }
        for a in 0..order {
            for b in 0..order {
                let v = values[a * order + b];
                if v >= order {
                    return Err(StarError::OutOfRange {
                        a,
                        b,
                        value: v,
                        order,
                    });
                }
            }
        }
        Ok(StarTable { order, values })
    }

    /// `x ⋆ y = 1`.
    pub fn trivial(g: &GroupTable) -> Self {
        StarTable::constant(g.order(), g.identity())
    }

    /// `x ⋆ y = [x, y]`.
    pub fn improper(g: &GroupTable) -> Self {
        let n = g.order();
        let mut values = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                values[a * n + b] = g.comm(a, b);
            }
        }
        StarTable { order: n, values }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn get(&self, a: Elem, b: Elem) -> Elem {
        self.values[a * self.order + b]
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        (0..self.order)
            .map(|a| self.values[a * self.order..(a + 1) * self.order].to_vec())
            .collect()
    }

    pub fn values(&self) -> &[Elem] {
        &self.values
    }
}

/// One failed law instance: replaying the witness reproduces `left != right`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub law: &'static str,
    pub witness: Vec<Elem>,
    pub left: Elem,
    pub right: Elem,
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{} fails at {:?}: {} != {}",
            self.law, self.witness, self.left, self.right
        )
    }
}

/// Exhaustively checks the five axioms; axiom 1 over all `x`, the others
/// over all triples. Returns the first witness per axiom, in row-major
/// order, so the report is deterministic. Empty result means certified.
pub fn check_mla_axioms(g: &GroupTable, star: &StarTable) -> Vec<Violation> {
    let mut out = Vec::new();
    let n = g.order();
    debug_assert_eq!(star.order(), n);
    let e = g.identity();

    'ax1: for x in 0..n {
        let v = star.get(x, x);
        if v != e {
            out.push(Violation {
                law: "axiom1-alternating",
                witness: vec![x],
                left: v,
                right: e,
            });
            break 'ax1;
        }
    }

    'ax2: for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let left = star.get(x, g.mul(y, z));
                let right = g.mul(star.get(x, y), g.conj(y, star.get(x, z)));
                if left != right {
                    out.push(Violation {
                        law: "axiom2-right-expansion",
                        witness: vec![x, y, z],
                        left,
                        right,
                    });
                    break 'ax2;
                }
            }
        }
    }

    'ax3: for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let left = star.get(g.mul(x, y), z);
                let right = g.mul(g.conj(x, star.get(y, z)), star.get(x, z));
                if left != right {
                    out.push(Violation {
                        law: "axiom3-left-expansion",
                        witness: vec![x, y, z],
                        left,
                        right,
                    });
                    break 'ax3;
                }
            }
        }
    }

    'ax4: for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let f1 = star.get(star.get(x, y), g.conj(y, z));
                let f2 = star.get(star.get(y, z), g.conj(z, x));
                let f3 = star.get(star.get(z, x), g.conj(x, y));
                let left = g.mul3(f1, f2, f3);
                if left != e {
                    out.push(Violation {
                        law: "axiom4-jacobi",
                        witness: vec![x, y, z],
                        left,
                        right: e,
                    });
                    break 'ax4;
                }
            }
        }
    }

    'ax5: for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let left = g.conj(z, star.get(x, y));
                let right = star.get(g.conj(z, x), g.conj(z, y));
                if left != right {
                    out.push(Violation {
                        law: "axiom5-equivariance",
                        witness: vec![x, y, z],
                        left,
                        right,
                    });
                    break 'ax5;
                }
            }
        }
    }

    out
}

/// The defect `(a ⋆ b)^{-1} [a, b]`, which vanishes exactly on the improper
/// structure.
#[inline]
pub fn lie_commutator(g: &GroupTable, star: &StarTable, a: Elem, b: Elem) -> Elem {
    g.mul(g.inv(star.get(a, b)), g.comm(a, b))
}

/// A group with a certified star operation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mla {
    group: GroupTable,
    star: StarTable,
    certified: bool,
}

impl Mla {
    /// Runs the axiom checker and wraps the pair on success.
    pub fn certify(group: GroupTable, star: StarTable) -> Result<Mla, Vec<Violation>> {
        let violations = check_mla_axioms(&group, &star);
        if violations.is_empty() {
            Ok(Mla {
                group,
                star,
                certified: true,
            })
        } else {
            Err(violations)
        }
    }

    /// The trivial structure; certified by the checker like everything else.
    pub fn trivial(g: &GroupTable) -> Mla {
        Mla::certify(g.clone(), StarTable::trivial(g))
            .expect("trivial structure satisfies the axioms")
    }

    /// The improper structure `x ⋆ y = [x, y]`.
    pub fn improper(g: &GroupTable) -> Mla {
        Mla::certify(g.clone(), StarTable::improper(g))
            .expect("improper structure satisfies the axioms")
    }

    pub fn group(&self) -> &GroupTable {
        &self.group
    }

    pub fn star(&self) -> &StarTable {
        &self.star
    }

    pub fn certified(&self) -> bool {
        self.certified
    }

    pub fn lie_commutator(&self, a: Elem, b: Elem) -> Elem {
        lie_commutator(&self.group, &self.star, a, b)
    }

    pub fn is_trivial_structure(&self) -> bool {
        self.star == StarTable::trivial(&self.group)
    }

    pub fn is_improper_structure(&self) -> bool {
        self.star == StarTable::improper(&self.group)
    }

    pub fn into_parts(self) -> (GroupTable, StarTable) {
        (self.group, self.star)
    }
}

#[derive(Debug, Error, Clone)]
pub enum LieRingError {
    #[error("underlying group is not abelian")]
    NotAbelian,
    #[error("bracket fails the axioms: {0:?}")]
    NotCertified(Vec<Violation>),
}

/// A certified structure on an abelian group. The axioms then say the
/// bracket is an alternating biadditive map satisfying the Jacobi law.
#[derive(Debug, Clone)]
pub struct LieRing {
    mla: Mla,
}

impl LieRing {
    pub fn new(group: GroupTable, bracket: StarTable) -> Result<LieRing, LieRingError> {
        if !group.is_abelian() {
            return Err(LieRingError::NotAbelian);
        }
        let mla = Mla::certify(group, bracket).map_err(LieRingError::NotCertified)?;
        Ok(LieRing { mla })
    }

    /// Abelian group with the trivial bracket.
    pub fn trivial(group: GroupTable) -> Result<LieRing, LieRingError> {
        let star = StarTable::trivial(&group);
        LieRing::new(group, star)
    }

    pub fn group(&self) -> &GroupTable {
        self.mla.group()
    }

    pub fn bracket(&self) -> &StarTable {
        self.mla.star()
    }

    pub fn as_mla(&self) -> &Mla {
        &self.mla
    }
}
