//! Central pairings on class-2 groups.
//!
//! A structure on a class-2 group whose induced quotient structure on
//! `G/[G,G]` is trivial is the same thing as an alternating biadditive map
//! `h: G/[G,G] x G/[G,G] -> [G,G]`: the star of two elements depends only
//! on their cosets and lands in the commutator subgroup. Both directions of
//! that correspondence live here, together with an enumerator for all such
//! pairings on a pair of abelian groups.

use crate::group::{abelian_basis, Elem, GroupError, GroupTable, Subset};
use crate::series::lz_center;
use crate::star::{Mla, StarTable, Violation};
use crate::structure::induced_quotient_star;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum PairingError {
    #[error("pairing table shape mismatch")]
    Shape,
    #[error("pairing law fails: {0}")]
    NotBilinear(Violation),
    #[error("quotient mismatch: {0}")]
    QuotientMismatch(String),
    #[error("group is not nilpotent of class 2")]
    NotClass2,
    #[error("structure is not of central type: {0}")]
    NotCentralType(String),
    #[error("group machinery failed: {0}")]
    Group(#[from] GroupError),
    #[error("built star failed certification: {0}")]
    CertificationFailed(Violation),
}

/// An alternating biadditive map `Q x Q -> A`, verified exhaustively at
/// construction: `h(x,x) = 1`, `h(xy,z) = h(x,z)h(y,z)` and
/// `h(x,yz) = h(x,y)h(x,z)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CentralPairing {
    q: GroupTable,
    a: GroupTable,
    table: Vec<Elem>,
}

impl CentralPairing {
    pub fn new(q: GroupTable, a: GroupTable, table: Vec<Elem>) -> Result<Self, PairingError> {
        let qn = q.order();
        if table.len() != qn * qn || table.iter().any(|&v| v >= a.order()) {
            return Err(PairingError::Shape);
        }
        let at = |x: Elem, y: Elem| table[x * qn + y];
        for x in 0..qn {
            if at(x, x) != a.identity() {
                return Err(PairingError::NotBilinear(Violation {
                    law: "pairing-alternating",
                    witness: vec![x],
                    left: at(x, x),
                    right: a.identity(),
                }));
            }
        }
        for x in 0..qn {
            for y in 0..qn {
                for z in 0..qn {
                    let left = at(q.mul(x, y), z);
                    let right = a.mul(at(x, z), at(y, z));
                    if left != right {
                        return Err(PairingError::NotBilinear(Violation {
                            law: "pairing-left-additive",
                            witness: vec![x, y, z],
                            left,
                            right,
                        }));
                    }
                    let left = at(x, q.mul(y, z));
                    let right = a.mul(at(x, y), at(x, z));
                    if left != right {
                        return Err(PairingError::NotBilinear(Violation {
                            law: "pairing-right-additive",
                            witness: vec![x, y, z],
                            left,
                            right,
                        }));
                    }
                }
            }
        }
        Ok(CentralPairing { q, a, table })
    }

    pub fn quotient_group(&self) -> &GroupTable {
        &self.q
    }

    pub fn target_group(&self) -> &GroupTable {
        &self.a
    }

    pub fn get(&self, x: Elem, y: Elem) -> Elem {
        self.table[x * self.q.order() + y]
    }

    pub fn table(&self) -> &[Elem] {
        &self.table
    }

    pub fn is_zero(&self) -> bool {
        self.table.iter().all(|&v| v == self.a.identity())
    }
}

/// Same multiplication table, ignoring the display name.
fn same_table(a: &GroupTable, b: &GroupTable) -> bool {
    a.order() == b.order() && a.rows() == b.rows()
}

/// Enumerates every alternating biadditive `Q x Q -> A`.
///
/// Values on basis pairs range over elements killed by both basis orders,
/// the rest extends biadditively, and each candidate is re-verified
/// exhaustively by the `CentralPairing` constructor.
pub fn enumerate_central_pairings(q: &GroupTable, a: &GroupTable) -> Vec<CentralPairing> {
    assert!(
        q.is_abelian() && a.is_abelian(),
        "central pairings require abelian groups"
    );
    let qn = q.order();
    let basis = abelian_basis(q).expect("abelian");
    let k = basis.gens.len();
    let mut pairs = Vec::new();
    for i in 0..k {
        for j in (i + 1)..k {
            pairs.push((i, j));
        }
    }
    let mut cands = Vec::new();
    for &(i, j) in &pairs {
        let (mi, mj) = (basis.orders[i] as i64, basis.orders[j] as i64);
        let c: Vec<Elem> = a
            .elements()
            .filter(|&v| a.pow(v, mi) == a.identity() && a.pow(v, mj) == a.identity())
            .collect();
        cands.push(c);
    }

    let mut out = Vec::new();
    let mut choice = vec![0usize; pairs.len()];
    loop {
        let mut table = vec![a.identity(); qn * qn];
        for x in 0..qn {
            for y in 0..qn {
                let ex = &basis.exponents[x];
                let ey = &basis.exponents[y];
                let mut v = a.identity();
                for (p, &(i, j)) in pairs.iter().enumerate() {
                    let exp = ex[i] as i64 * ey[j] as i64 - ex[j] as i64 * ey[i] as i64;
                    v = a.mul(v, a.pow(cands[p][choice[p]], exp));
                }
                table[x * qn + y] = v;
            }
        }
        out.push(
            CentralPairing::new(q.clone(), a.clone(), table)
                .expect("biadditive extension satisfies the pairing laws"),
        );
        let mut p = pairs.len();
        loop {
            if p == 0 {
                out.sort_by(|l, r| l.table.cmp(&r.table));
                out.dedup_by(|l, r| l.table == r.table);
                return out;
            }
            p -= 1;
            choice[p] += 1;
            if choice[p] < cands[p].len() {
                break;
            }
            choice[p] = 0;
        }
    }
}

/// Embeds a pairing as a star on a class-2 group: `a ⋆ b` is the pairing of
/// the cosets, landed inside `[G, G]`. The result is certified.
pub fn central_pairing_to_star(g: &GroupTable, p: &CentralPairing) -> Result<Mla, PairingError> {
    if !g.is_class2() {
        return Err(PairingError::NotClass2);
    }
    let derived = g.derived_subgroup();
    let (q, proj) = g.quotient(&derived)?;
    let (a, embed) = g.subgroup_table(&derived, "A")?;
    if !same_table(&q, p.quotient_group()) {
        return Err(PairingError::QuotientMismatch(
            "pairing quotient differs from G/[G,G]".into(),
        ));
    }
    if !same_table(&a, p.target_group()) {
        return Err(PairingError::QuotientMismatch(
            "pairing target differs from [G,G]".into(),
        ));
    }
    let n = g.order();
    let mut values = vec![0; n * n];
    for x in 0..n {
        for y in 0..n {
            values[x * n + y] = embed[p.get(proj.apply(x), proj.apply(y))];
        }
    }
    let star = StarTable::from_flat(n, values).expect("embedded values in range");
    Mla::certify(g.clone(), star).map_err(|mut v| PairingError::CertificationFailed(v.remove(0)))
}

/// Reads the pairing back off a central-type structure, checking
/// well-definedness over every pair of representatives.
pub fn star_to_central_pairing(mla: &Mla) -> Result<CentralPairing, PairingError> {
    let g = mla.group();
    if !g.is_class2() {
        return Err(PairingError::NotClass2);
    }
    let derived = g.derived_subgroup();
    let (quotient_mla, proj) = induced_quotient_star(mla, &derived)
        .map_err(|e| PairingError::NotCentralType(format!("{e}")))?;
    if !quotient_mla.is_trivial_structure() {
        return Err(PairingError::NotCentralType(
            "induced quotient structure is nontrivial".into(),
        ));
    }
    if !derived.is_subset_of(&lz_center(mla)) {
        return Err(PairingError::NotCentralType(
            "commutator subgroup does not annihilate under star".into(),
        ));
    }
    let q = quotient_mla.group();
    let (a, embed) = g.subgroup_table(&derived, "A")?;
    let mut index_in_a = vec![usize::MAX; g.order()];
    for (i, &e) in embed.iter().enumerate() {
        index_in_a[e] = i;
    }
    let qn = q.order();
    let star = mla.star();
    let mut table = vec![usize::MAX; qn * qn];
    for x in 0..g.order() {
        for y in 0..g.order() {
            let v = star.get(x, y);
            if !derived.contains(v) {
                return Err(PairingError::NotCentralType(format!(
                    "star value at ({x},{y}) escapes [G,G]"
                )));
            }
            let slot = &mut table[proj.apply(x) * qn + proj.apply(y)];
            let sub = index_in_a[v];
            if *slot == usize::MAX {
                *slot = sub;
            } else if *slot != sub {
                return Err(PairingError::NotCentralType(format!(
                    "section dependence witnessed at ({x},{y})"
                )));
            }
        }
    }
    CentralPairing::new(q.clone(), a, table)
}

/// Pairing extraction along an explicit transversal: entry `(x, y)` is
/// `t(x) ⋆ t(y)`. Used to demonstrate section independence; must agree with
/// [`star_to_central_pairing`] for every valid transversal.
pub fn star_to_pairing_with_transversal(
    mla: &Mla,
    reps: &[Elem],
) -> Result<CentralPairing, PairingError> {
    let g = mla.group();
    if !g.is_class2() {
        return Err(PairingError::NotClass2);
    }
    let derived = g.derived_subgroup();
    let (q, proj) = g.quotient(&derived)?;
    let qn = q.order();
    if reps.len() != qn {
        return Err(PairingError::Shape);
    }
    for (c, &r) in reps.iter().enumerate() {
        if r >= g.order() || proj.apply(r) != c {
            return Err(PairingError::QuotientMismatch(format!(
                "element {r} does not represent coset {c}"
            )));
        }
    }
    let (a, embed) = g.subgroup_table(&derived, "A")?;
    let mut index_in_a = vec![usize::MAX; g.order()];
    for (i, &e) in embed.iter().enumerate() {
        index_in_a[e] = i;
    }
    let star = mla.star();
    let mut table = vec![0; qn * qn];
    for x in 0..qn {
        for y in 0..qn {
            let v = star.get(reps[x], reps[y]);
            if !derived.contains(v) {
                return Err(PairingError::NotCentralType(format!(
                    "star value at transversal pair ({x},{y}) escapes [G,G]"
                )));
            }
            table[x * qn + y] = index_in_a[v];
        }
    }
    CentralPairing::new(q, a, table)
}

/// All transversals used by the section-independence checks: the canonical
/// minimal one, the maximal one, and a shifted variant.
pub fn sample_transversals(g: &GroupTable, normal: &Subset) -> Result<Vec<Vec<Elem>>, GroupError> {
    let (q, proj) = g.quotient(normal)?;
    let qn = q.order();
    let mut min_rep = vec![usize::MAX; qn];
    let mut max_rep = vec![0; qn];
    let mut all: Vec<Vec<Elem>> = vec![Vec::new(); qn];
    for x in g.elements() {
        let c = proj.apply(x);
        if min_rep[c] == usize::MAX {
            min_rep[c] = x;
        }
        max_rep[c] = x;
        all[c].push(x);
    }
    // middle element of each coset; different from both ends when |N| > 2
    let mid_rep: Vec<Elem> = all.iter().map(|coset| coset[coset.len() / 2]).collect();
    Ok(vec![min_rep, max_rep, mid_rep])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    #[test]
    fn cyclic_quotient_admits_only_zero_pairing() {
        let q = families::cyclic(6).unwrap();
        let a = families::cyclic(3).unwrap();
        let ps = enumerate_central_pairings(&q, &a);
        assert_eq!(ps.len(), 1);
        assert!(ps[0].is_zero());
    }

    #[test]
    fn c3c3_into_c3_has_three_pairings() {
        let q = families::abelian(&[3, 3]).unwrap();
        let a = families::cyclic(3).unwrap();
        let ps = enumerate_central_pairings(&q, &a);
        assert_eq!(ps.len(), 3);
    }

    #[test]
    fn c2c2_into_c4_respects_order_congruence() {
        let q = families::abelian(&[2, 2]).unwrap();
        let a = families::cyclic(4).unwrap();
        let ps = enumerate_central_pairings(&q, &a);
        // the basis-pair value must be killed by 2: {0, 2}
        assert_eq!(ps.len(), 2);
        for p in &ps {
            for x in 0..4 {
                for y in 0..4 {
                    assert!(p.get(x, y) == 0 || p.get(x, y) == 2);
                }
            }
        }
    }

    #[test]
    fn zero_pairing_gives_trivial_star() {
        let g = families::heisenberg(3).unwrap();
        let derived = g.derived_subgroup();
        let (q, _) = g.quotient(&derived).unwrap();
        let (a, _) = g.subgroup_table(&derived, "A").unwrap();
        let zero = enumerate_central_pairings(&q, &a)
            .into_iter()
            .find(|p| p.is_zero())
            .unwrap();
        let m = central_pairing_to_star(&g, &zero).unwrap();
        assert!(m.is_trivial_structure());
    }

    #[test]
    fn heisenberg_pairings_round_trip() {
        let g = families::heisenberg(3).unwrap();
        let derived = g.derived_subgroup();
        let (q, _) = g.quotient(&derived).unwrap();
        let (a, _) = g.subgroup_table(&derived, "A").unwrap();
        let pairings = enumerate_central_pairings(&q, &a);
        assert_eq!(pairings.len(), 3);
        for p in pairings {
            let m = central_pairing_to_star(&g, &p).unwrap();
            assert!(m.certified());
            let back = star_to_central_pairing(&m).unwrap();
            assert_eq!(back.table(), p.table());
        }
    }

    #[test]
    fn improper_star_on_heisenberg_is_central_type() {
        let g = families::heisenberg(3).unwrap();
        let m = Mla::improper(&g);
        let p = star_to_central_pairing(&m).unwrap();
        // the pairing is the commutator of representatives, hence nonzero
        assert!(!p.is_zero());
        let again = central_pairing_to_star(&g, &p).unwrap();
        assert_eq!(again.star(), m.star());
    }

    #[test]
    fn section_independence_on_heisenberg() {
        let g = families::heisenberg(3).unwrap();
        let m = Mla::improper(&g);
        let derived = g.derived_subgroup();
        let baseline = star_to_central_pairing(&m).unwrap();
        for reps in sample_transversals(&g, &derived).unwrap() {
            let p = star_to_pairing_with_transversal(&m, &reps).unwrap();
            assert_eq!(p.table(), baseline.table());
        }
    }

    #[test]
    fn trivial_star_on_non_central_group_still_works() {
        // D4 trivial star: quotient structure trivial, pairing zero
        let g = families::dihedral(4).unwrap();
        let m = Mla::trivial(&g);
        let p = star_to_central_pairing(&m).unwrap();
        assert!(p.is_zero());
    }
}
