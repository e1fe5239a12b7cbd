//! Finite groups as explicit Cayley tables, with the subgroup, closure and
//! quotient machinery everything else builds on.
//!
//! Elements are indices `0..n` into an `n * n` multiplication table. Every
//! constructor in [`crate::families`] places the identity at index 0; tables
//! loaded from files may put it anywhere, the validator locates it.

use thiserror::Error;

/// Index of a group element within its table.
pub type Elem = usize;

/// Errors produced while validating or manipulating group tables.
///
/// Validation reports the first witness found in row-major scan order, so
/// error output is deterministic for a given table.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("multiplication table is empty")]
    Empty,
    #[error("row {row} has {len} entries, expected {expected}")]
    NotSquare {
        row: usize,
        len: usize,
        expected: usize,
    },
    #[error("entry at ({a},{b}) is {value}, out of range for order {order}")]
    NotClosed {
        a: Elem,
        b: Elem,
        value: usize,
        order: usize,
    },
    #[error("associativity fails at ({a},{b},{c})")]
    NotAssociative { a: Elem, b: Elem, c: Elem },
    #[error("no two-sided identity element")]
    NoIdentity,
    #[error("element {0} has no inverse")]
    MissingInverse(Elem),
    #[error("invalid family parameters: {0}")]
    InvalidParameters(String),
    #[error("subset is not normal: conjugating {member} by {by} escapes it")]
    NotNormal { member: Elem, by: Elem },
    #[error("subset is not a subgroup")]
    NotSubgroup,
}

/// A finite group given by a validated multiplication table.
///
/// Immutable after construction; cheap to clone and safe to share.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupTable {
    name: String,
    order: usize,
    mul: Vec<Elem>,
    identity: Elem,
    inv: Vec<Elem>,
}

impl GroupTable {
    /// Validates a raw table and builds a `GroupTable`.
    ///
    /// Checks, in order: shape, closure, associativity (`O(n^3)`), existence
    /// of a two-sided identity, and inverses. The first violating tuple in
    /// row-major order is reported.
    pub fn from_table(name: impl Into<String>, rows: &[Vec<usize>]) -> Result<Self, GroupError> {
        let n = rows.len();
        if n == 0 {
            return Err(GroupError::Empty);
        }
        for (row, r) in rows.iter().enumerate() {
            if r.len() != n {
                return Err(GroupError::NotSquare {
                    row,
                    len: r.len(),
                    expected: n,
                });
            }
        }
        let mut flat = Vec::with_capacity(n * n);
        for r in rows {
            flat.extend_from_slice(r);
        }
        Self::from_flat(name, n, flat)
    }

    /// Validates a flattened row-major table.
    pub fn from_flat(
        name: impl Into<String>,
        order: usize,
        mul: Vec<Elem>,
    ) -> Result<Self, GroupError> {
        if order == 0 || mul.len() != order * order {
            return Err(GroupError::Empty);
        }
        for a in 0..order {
            for b in 0..order {
                let v = mul[a * order + b];
                if v >= order {
                    return Err(GroupError::NotClosed {
                        a,
                        b,
                        value: v,
                        order,
                    });
                }
            }
        }
        let at = |a: Elem, b: Elem| mul[a * order + b];
        for a in 0..order {
            for b in 0..order {
                for c in 0..order {
                    if at(at(a, b), c) != at(a, at(b, c)) {
                        return Err(GroupError::NotAssociative { a, b, c });
                    }
                }
            }
        }
        let identity = (0..order)
            .find(|&e| (0..order).all(|a| at(e, a) == a && at(a, e) == a))
            .ok_or(GroupError::NoIdentity)?;
        let mut inv = vec![0; order];
        for (a, slot) in inv.iter_mut().enumerate() {
            *slot = (0..order)
                .find(|&b| at(a, b) == identity && at(b, a) == identity)
                .ok_or(GroupError::MissingInverse(a))?;
        }
        Ok(GroupTable {
            name: name.into(),
            order,
            mul,
            identity,
            inv,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> Elem {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mul[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.inv[a]
    }

    /// `z x z^{-1}`.
    #[inline]
    pub fn conj(&self, z: Elem, x: Elem) -> Elem {
        self.mul(self.mul(z, x), self.inv(z))
    }

    /// Commutator `[x, y] = x y x^{-1} y^{-1}`.
    #[inline]
    pub fn comm(&self, x: Elem, y: Elem) -> Elem {
        self.mul(self.mul(x, y), self.mul(self.inv(x), self.inv(y)))
    }

    pub fn mul3(&self, a: Elem, b: Elem, c: Elem) -> Elem {
        self.mul(self.mul(a, b), c)
    }

    /// `a^k` for any integer exponent.
    pub fn pow(&self, a: Elem, k: i64) -> Elem {
        let base = if k < 0 { self.inv(a) } else { a };
        let mut e = k.unsigned_abs();
        let mut acc = self.identity;
        let mut cur = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, cur);
            }
            cur = self.mul(cur, cur);
            e >>= 1;
        }
        acc
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.order
    }

    pub fn is_abelian(&self) -> bool {
        for a in 0..self.order {
            for b in 0..a {
                if self.mul(a, b) != self.mul(b, a) {
                    return false;
                }
            }
        }
        true
    }

    pub fn element_order(&self, a: Elem) -> usize {
        let mut cur = a;
        let mut k = 1;
        while cur != self.identity {
            cur = self.mul(cur, a);
            k += 1;
        }
        k
    }

    /// Row-major rows, for serialization.
    pub fn rows(&self) -> Vec<Vec<usize>> {
        (0..self.order)
            .map(|a| self.mul[a * self.order..(a + 1) * self.order].to_vec())
            .collect()
    }

    /// Smallest subgroup containing `gens`, by worklist saturation under
    /// multiplication and inversion.
    pub fn subgroup_closure(&self, gens: &Subset) -> Subset {
        let mut s = Subset::empty(self.order);
        s.insert(self.identity);
        let mut work: Vec<Elem> = vec![self.identity];
        for g in gens.iter() {
            if s.insert(g) {
                work.push(g);
            }
        }
        while let Some(x) = work.pop() {
            let candidates: Vec<Elem> = s.iter().collect();
            for y in candidates {
                for v in [self.mul(x, y), self.mul(y, x)] {
                    if s.insert(v) {
                        work.push(v);
                    }
                }
            }
            let ix = self.inv(x);
            if s.insert(ix) {
                work.push(ix);
            }
        }
        s
    }

    /// Smallest normal subgroup containing `gens`.
    pub fn normal_closure(&self, gens: &Subset) -> Subset {
        let mut current = self.subgroup_closure(gens);
        loop {
            let mut extra = Subset::empty(self.order);
            for x in current.iter() {
                for z in 0..self.order {
                    let c = self.conj(z, x);
                    if !current.contains(c) {
                        extra.insert(c);
                    }
                }
            }
            if extra.is_empty() {
                return current;
            }
            let mut gens2 = current.clone();
            gens2.union_with(&extra);
            current = self.subgroup_closure(&gens2);
        }
    }

    /// `{ z : zx = xz for all x }`.
    pub fn center(&self) -> Subset {
        let mut s = Subset::empty(self.order);
        for z in 0..self.order {
            if (0..self.order).all(|x| self.mul(z, x) == self.mul(x, z)) {
                s.insert(z);
            }
        }
        s
    }

    /// Subgroup generated by all commutators.
    pub fn derived_subgroup(&self) -> Subset {
        let mut gens = Subset::empty(self.order);
        for x in 0..self.order {
            for y in 0..self.order {
                gens.insert(self.comm(x, y));
            }
        }
        self.subgroup_closure(&gens)
    }

    /// Nilpotency class at most 2: `[G, G] <= Z(G)`. Abelian groups count.
    pub fn is_class2(&self) -> bool {
        let center = self.center();
        self.derived_subgroup().is_subset_of(&center)
    }

    /// Coset group modulo a normal subgroup, with the canonical projection.
    ///
    /// Coset representatives are the minimal element index per coset and the
    /// quotient is indexed by representatives in increasing order, so the
    /// result is deterministic.
    pub fn quotient(&self, n: &Subset) -> Result<(GroupTable, GroupHom), GroupError> {
        if !n.is_subgroup(self) {
            return Err(GroupError::NotSubgroup);
        }
        if let Some((member, by)) = n.normality_witness(self) {
            return Err(GroupError::NotNormal { member, by });
        }
        let mut coset_of = vec![usize::MAX; self.order];
        let mut reps: Vec<Elem> = Vec::new();
        for a in 0..self.order {
            if coset_of[a] != usize::MAX {
                continue;
            }
            let idx = reps.len();
            reps.push(a);
            for h in n.iter() {
                coset_of[self.mul(a, h)] = idx;
            }
        }
        let k = reps.len();
        let mut mul = vec![0; k * k];
        for (i, &a) in reps.iter().enumerate() {
            for (j, &b) in reps.iter().enumerate() {
                mul[i * k + j] = coset_of[self.mul(a, b)];
            }
        }
        let name = format!("{}/N{}", self.name, n.len());
        let q = GroupTable::from_flat(name, k, mul)?;
        let hom = GroupHom {
            source: self.clone(),
            target: q.clone(),
            image: coset_of,
        };
        Ok((q, hom))
    }

    /// Componentwise product on pairs `(g, h)`, indexed `g * |H| + h`.
    pub fn direct_product(&self, other: &GroupTable) -> GroupTable {
        let n = self.order * other.order;
        let mut mul = vec![0; n * n];
        for a1 in 0..self.order {
            for a2 in 0..other.order {
                let a = a1 * other.order + a2;
                for b1 in 0..self.order {
                    for b2 in 0..other.order {
                        let b = b1 * other.order + b2;
                        mul[a * n + b] = self.mul(a1, b1) * other.order + other.mul(a2, b2);
                    }
                }
            }
        }
        GroupTable::from_flat(format!("{}x{}", self.name, other.name), n, mul)
            .expect("componentwise product of valid groups is valid")
    }

    /// Re-indexes a subgroup as a standalone group.
    ///
    /// Returns the group together with the embedding map from sub-indices to
    /// parent indices (members in increasing parent order).
    pub fn subgroup_table(
        &self,
        s: &Subset,
        name: impl Into<String>,
    ) -> Result<(GroupTable, Vec<Elem>), GroupError> {
        if !s.is_subgroup(self) {
            return Err(GroupError::NotSubgroup);
        }
        let embed: Vec<Elem> = s.iter().collect();
        let mut index_of = vec![usize::MAX; self.order];
        for (i, &e) in embed.iter().enumerate() {
            index_of[e] = i;
        }
        let k = embed.len();
        let mut mul = vec![0; k * k];
        for i in 0..k {
            for j in 0..k {
                mul[i * k + j] = index_of[self.mul(embed[i], embed[j])];
            }
        }
        let g = GroupTable::from_flat(name, k, mul)?;
        Ok((g, embed))
    }
}

/// A subset of group elements as membership flags.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subset {
    order: usize,
    members: Vec<bool>,
}

impl Subset {
    pub fn empty(order: usize) -> Self {
        Subset {
            order,
            members: vec![false; order],
        }
    }

    pub fn full(order: usize) -> Self {
        Subset {
            order,
            members: vec![true; order],
        }
    }

    pub fn singleton(order: usize, e: Elem) -> Self {
        let mut s = Self::empty(order);
        s.insert(e);
        s
    }

    pub fn from_members<I: IntoIterator<Item = Elem>>(order: usize, members: I) -> Self {
        let mut s = Self::empty(order);
        for m in members {
            s.insert(m);
        }
        s
    }

    pub fn parent_order(&self) -> usize {
        self.order
    }

    /// Inserts an element, returning true if it was new.
    pub fn insert(&mut self, e: Elem) -> bool {
        let fresh = !self.members[e];
        self.members[e] = true;
        fresh
    }

    #[inline]
    pub fn contains(&self, e: Elem) -> bool {
        self.members[e]
    }

    pub fn len(&self) -> usize {
        self.members.iter().filter(|&&m| m).count()
    }

    pub fn is_empty(&self) -> bool {
        self.members.iter().all(|&m| !m)
    }

    pub fn iter(&self) -> impl Iterator<Item = Elem> + '_ {
        self.members
            .iter()
            .enumerate()
            .filter_map(|(i, &m)| m.then_some(i))
    }

    pub fn union_with(&mut self, other: &Subset) {
        for (m, o) in self.members.iter_mut().zip(&other.members) {
            *m |= o;
        }
    }

    pub fn is_subset_of(&self, other: &Subset) -> bool {
        self.members
            .iter()
            .zip(&other.members)
            .all(|(&a, &b)| !a || b)
    }

    /// Closed under multiplication and inverses, and contains the identity.
    pub fn is_subgroup(&self, g: &GroupTable) -> bool {
        if self.order != g.order() || !self.contains(g.identity()) {
            return false;
        }
        for a in self.iter() {
            if !self.contains(g.inv(a)) {
                return false;
            }
            for b in self.iter() {
                if !self.contains(g.mul(a, b)) {
                    return false;
                }
            }
        }
        true
    }

    /// First (member, conjugator) pair escaping the subset, if any.
    pub fn normality_witness(&self, g: &GroupTable) -> Option<(Elem, Elem)> {
        for a in self.iter() {
            for z in g.elements() {
                if !self.contains(g.conj(z, a)) {
                    return Some((a, z));
                }
            }
        }
        None
    }

    pub fn is_normal(&self, g: &GroupTable) -> bool {
        self.is_subgroup(g) && self.normality_witness(g).is_none()
    }

    /// The subset `{e}`.
    pub fn is_trivial(&self, g: &GroupTable) -> bool {
        self.len() == 1 && self.contains(g.identity())
    }
}

/// A homomorphism stored as the image table of source indices.
#[derive(Debug, Clone)]
pub struct GroupHom {
    pub source: GroupTable,
    pub target: GroupTable,
    pub image: Vec<Elem>,
}

impl GroupHom {
    pub fn apply(&self, a: Elem) -> Elem {
        self.image[a]
    }

    pub fn is_homomorphism(&self) -> bool {
        if self.image.len() != self.source.order() {
            return false;
        }
        if self.image[self.source.identity()] != self.target.identity() {
            return false;
        }
        for a in self.source.elements() {
            for b in self.source.elements() {
                if self.image[self.source.mul(a, b)]
                    != self.target.mul(self.image[a], self.image[b])
                {
                    return false;
                }
            }
        }
        true
    }

    pub fn kernel(&self) -> Subset {
        Subset::from_members(
            self.source.order(),
            self.source
                .elements()
                .filter(|&a| self.image[a] == self.target.identity()),
        )
    }

    pub fn is_bijective(&self) -> bool {
        let mut seen = vec![false; self.target.order()];
        for &v in &self.image {
            if v >= seen.len() || seen[v] {
                return false;
            }
            seen[v] = true;
        }
        self.source.order() == self.target.order()
    }
}

/// Basis of a finite abelian group: generators whose cyclic spans form an
/// internal direct product, plus the exponent normal form of every element.
#[derive(Debug, Clone)]
pub struct AbelianBasis {
    pub gens: Vec<Elem>,
    pub orders: Vec<usize>,
    /// `exponents[a]` is the unique tuple `(e_1, ..., e_k)` with
    /// `a = gens[0]^e_1 * ... * gens[k-1]^e_k`.
    pub exponents: Vec<Vec<usize>>,
}

/// Decomposes an abelian group into cyclic factors.
///
/// Picks a maximal-order element, splits it off, and recurses on the
/// quotient; lifts of quotient generators are chosen with matching order so
/// the spans intersect trivially. Returns `None` on nonabelian input.
pub fn abelian_basis(g: &GroupTable) -> Option<AbelianBasis> {
    if !g.is_abelian() {
        return None;
    }
    let gens = abelian_gens(g);
    let orders: Vec<usize> = gens.iter().map(|&b| g.element_order(b)).collect();
    debug_assert_eq!(orders.iter().product::<usize>(), g.order());

    let mut exponents = vec![Vec::new(); g.order()];
    let mut tuple = vec![0usize; gens.len()];
    loop {
        let mut elem = g.identity();
        for (i, &e) in tuple.iter().enumerate() {
            elem = g.mul(elem, g.pow(gens[i], e as i64));
        }
        debug_assert!(
            exponents[elem].is_empty() || elem == g.identity() && tuple.iter().all(|&e| e == 0)
        );
        exponents[elem] = tuple.clone();
        // advance mixed-radix counter
        let mut i = gens.len();
        loop {
            if i == 0 {
                return Some(AbelianBasis {
                    gens,
                    orders,
                    exponents,
                });
            }
            i -= 1;
            tuple[i] += 1;
            if tuple[i] < orders[i] {
                break;
            }
            tuple[i] = 0;
        }
    }
}

fn abelian_gens(g: &GroupTable) -> Vec<Elem> {
    if g.order() == 1 {
        return Vec::new();
    }
    let b1 = g
        .elements()
        .max_by_key(|&a| (g.element_order(a), std::cmp::Reverse(a)))
        .unwrap();
    let span = g.subgroup_closure(&Subset::singleton(g.order(), b1));
    if span.len() == g.order() {
        return vec![b1];
    }
    let (q, proj) = g.quotient(&span).expect("abelian subgroups are normal");
    let qgens = abelian_gens(&q);
    let mut out = vec![b1];
    for qb in qgens {
        let d = q.element_order(qb) as i64;
        let lift = g
            .elements()
            .find(|&y| proj.apply(y) == qb && g.pow(y, d) == g.identity())
            .expect("maximal-order cyclic factors split off");
        out.push(lift);
    }
    out
}
