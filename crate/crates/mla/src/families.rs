//! Constructors for the standard group families and the `name:params` spec
//! grammar used by the CLI and file loaders.
//!
//! Indexing conventions (identity is always index 0):
//! - `cyclic(n)`: `i` is `g^i`.
//! - `abelian(n_1, ..., n_k)`: mixed radix with the last factor fastest.
//! - `dihedral(n)` (order `2n`): `f*n + i` is `r^i s^f` with `s r s = r^{-1}`.
//! - `quaternion8`: `sign*4 + axis` over `{1, i, j, k}`, so `4` is `-1`.
//! - `heisenberg(p)` (order `p^3`): triples `(a, b, c)` indexed `(a*p + b)*p + c`
//!   with `(a,b,c)(a',b',c') = (a+a', b+b', c+c'+a*b')` mod `p`.
//! - `metacyclic(m, n, r, s)`: `a^i b^j` indexed `i*n + j`, subject to
//!   `a^m = 1`, `b^n = a^s`, `b a b^{-1} = a^r`.

use crate::group::{GroupError, GroupTable};

/// A family descriptor for one of the built-in constructions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilySpec {
    Cyclic(usize),
    Abelian(Vec<usize>),
    Dihedral(usize),
    Quaternion8,
    Heisenberg(usize),
    Metacyclic {
        m: usize,
        n: usize,
        r: usize,
        s: usize,
    },
}

impl FamilySpec {
    /// Parses the `name:params` grammar, e.g. `metacyclic:5,4,2,0`.
    pub fn parse(text: &str) -> Result<Self, GroupError> {
        let bad = |msg: &str| GroupError::InvalidParameters(format!("{msg}: {text:?}"));
        let (name, params) = match text.split_once(':') {
            Some((n, p)) => (n, p),
            None => (text, ""),
        };
        let nums: Vec<usize> = if params.is_empty() {
            Vec::new()
        } else {
            params
                .split(',')
                .map(|p| p.trim().parse::<usize>())
                .collect::<Result<_, _>>()
                .map_err(|_| bad("parameters must be integers"))?
        };
        match (name, nums.as_slice()) {
            ("cyclic", [n]) => Ok(FamilySpec::Cyclic(*n)),
            ("abelian", dims) if !dims.is_empty() => Ok(FamilySpec::Abelian(dims.to_vec())),
            ("dihedral", [n]) => Ok(FamilySpec::Dihedral(*n)),
            ("quaternion8", []) => Ok(FamilySpec::Quaternion8),
            ("heisenberg", [p]) => Ok(FamilySpec::Heisenberg(*p)),
            ("metacyclic", [m, n, r, s]) => Ok(FamilySpec::Metacyclic {
                m: *m,
                n: *n,
                r: *r,
                s: *s,
            }),
            _ => Err(bad("unknown family or wrong arity")),
        }
    }

    pub fn canonical_name(&self) -> String {
        match self {
            FamilySpec::Cyclic(n) => format!("C{n}"),
            FamilySpec::Abelian(dims) => dims
                .iter()
                .map(|d| format!("C{d}"))
                .collect::<Vec<_>>()
                .join("x"),
            FamilySpec::Dihedral(n) => format!("D{n}"),
            FamilySpec::Quaternion8 => "Q8".to_string(),
            FamilySpec::Heisenberg(p) => format!("Heis{p}"),
            FamilySpec::Metacyclic { m, n, r, s } => format!("MC({m},{n},{r},{s})"),
        }
    }

    /// Builds the group table. Every result passes full validation.
    pub fn build(&self) -> Result<GroupTable, GroupError> {
        match *self {
            FamilySpec::Cyclic(n) => cyclic(n),
            FamilySpec::Abelian(ref dims) => abelian(dims),
            FamilySpec::Dihedral(n) => dihedral(n),
            FamilySpec::Quaternion8 => quaternion8(),
            FamilySpec::Heisenberg(p) => heisenberg(p),
            FamilySpec::Metacyclic { m, n, r, s } => metacyclic(m, n, r, s),
        }
    }
}

pub fn cyclic(n: usize) -> Result<GroupTable, GroupError> {
    if n == 0 {
        return Err(GroupError::InvalidParameters(
            "cyclic order must be >= 1".into(),
        ));
    }
    let mut mul = vec![0; n * n];
    for a in 0..n {
        for b in 0..n {
            mul[a * n + b] = (a + b) % n;
        }
    }
    GroupTable::from_flat(format!("C{n}"), n, mul)
}

pub fn abelian(dims: &[usize]) -> Result<GroupTable, GroupError> {
    if dims.is_empty() || dims.contains(&0) {
        return Err(GroupError::InvalidParameters(
            "abelian factors must be nonempty and >= 1".into(),
        ));
    }
    let mut g = cyclic(dims[0])?;
    for &d in &dims[1..] {
        g = g.direct_product(&cyclic(d)?);
    }
    let name = FamilySpec::Abelian(dims.to_vec()).canonical_name();
    GroupTable::from_flat(name, g.order(), g.rows().concat())
}

pub fn dihedral(n: usize) -> Result<GroupTable, GroupError> {
    if n == 0 {
        return Err(GroupError::InvalidParameters(
            "dihedral n must be >= 1".into(),
        ));
    }
    let ord = 2 * n;
    let idx = |i: usize, f: usize| f * n + i;
    let mut mul = vec![0; ord * ord];
    for i in 0..n {
        for f in 0..2 {
            for j in 0..n {
                for e in 0..2 {
                    // r^i s^f * r^j s^e = r^(i + j*(-1)^f) s^(f xor e)
                    let jj = if f == 1 { (n - j) % n } else { j };
                    mul[idx(i, f) * ord + idx(j, e)] = idx((i + jj) % n, f ^ e);
                }
            }
        }
    }
    GroupTable::from_flat(format!("D{n}"), ord, mul)
}

pub fn quaternion8() -> Result<GroupTable, GroupError> {
    // basis products in {1, i, j, k}, with sign
    const TBL: [[(usize, usize); 4]; 4] = [
        [(0, 0), (0, 1), (0, 2), (0, 3)],
        [(0, 1), (1, 0), (0, 3), (1, 2)],
        [(0, 2), (1, 3), (1, 0), (0, 1)],
        [(0, 3), (0, 2), (1, 1), (1, 0)],
    ];
    let mut mul = vec![0; 64];
    for s1 in 0..2 {
        for b1 in 0..4 {
            for s2 in 0..2 {
                for b2 in 0..4 {
                    let (s3, b3) = TBL[b1][b2];
                    mul[(s1 * 4 + b1) * 8 + (s2 * 4 + b2)] = ((s1 + s2 + s3) % 2) * 4 + b3;
                }
            }
        }
    }
    GroupTable::from_flat("Q8", 8, mul)
}

pub fn heisenberg(p: usize) -> Result<GroupTable, GroupError> {
    if p < 2 {
        return Err(GroupError::InvalidParameters(
            "heisenberg p must be >= 2".into(),
        ));
    }
    let ord = p * p * p;
    let idx = |a: usize, b: usize, c: usize| (a * p + b) * p + c;
    let mut mul = vec![0; ord * ord];
    for a in 0..p {
        for b in 0..p {
            for c in 0..p {
                for a2 in 0..p {
                    for b2 in 0..p {
                        for c2 in 0..p {
                            mul[idx(a, b, c) * ord + idx(a2, b2, c2)] =
                                idx((a + a2) % p, (b + b2) % p, (c + c2 + a * b2) % p);
                        }
                    }
                }
            }
        }
    }
    GroupTable::from_flat(format!("Heis{p}"), ord, mul)
}

pub fn metacyclic(m: usize, n: usize, r: usize, s: usize) -> Result<GroupTable, GroupError> {
    if m == 0 || n == 0 {
        return Err(GroupError::InvalidParameters(
            "metacyclic m, n must be >= 1".into(),
        ));
    }
    if pow_mod(r, n, m) != 1 % m {
        return Err(GroupError::InvalidParameters(format!(
            "metacyclic requires r^n = 1 mod m, got r={r}, n={n}, m={m}"
        )));
    }
    if !(s * (r + m - 1)).is_multiple_of(m) {
        return Err(GroupError::InvalidParameters(format!(
            "metacyclic requires s*(r-1) = 0 mod m, got r={r}, s={s}, m={m}"
        )));
    }
    let ord = m * n;
    let idx = |i: usize, j: usize| i * n + j;
    let mut mul = vec![0; ord * ord];
    for i in 0..m {
        for j in 0..n {
            for k in 0..m {
                for l in 0..n {
                    // a^i b^j a^k b^l = a^(i + k r^j + s*((j+l) div n)) b^((j+l) mod n)
                    let carry = (j + l) / n;
                    let e = (i + k * pow_mod(r, j, m) + s * carry) % m;
                    mul[idx(i, j) * ord + idx(k, l)] = idx(e, (j + l) % n);
                }
            }
        }
    }
    GroupTable::from_flat(format!("MC({m},{n},{r},{s})"), ord, mul)
}

fn pow_mod(base: usize, exp: usize, modulus: usize) -> usize {
    let mut acc = 1 % modulus;
    let mut b = base % modulus;
    let mut e = exp;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % modulus;
        }
        b = b * b % modulus;
        e >>= 1;
    }
    acc
}
