//! Finite groups given by full multiplication tables.
//!
//! Elements are indices `0..order`. The canonical element order used for
//! every "least" choice in the crate is this index order.

use std::collections::{BTreeSet, VecDeque};

use crate::error::{Error, Result};

/// A finite group stored as a validated multiplication table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<usize>,
    identity: usize,
    inverses: Vec<usize>,
    names: Option<Vec<String>>,
}

impl FiniteGroup {
    /// Validates `table` (row `a`, column `b` holds `a·b`) and builds the group.
    ///
    /// Checks run in this order: shape, range, identity, Latin square,
    /// associativity, inverses. The first failure is returned with a witness.
    pub fn from_table(table: Vec<Vec<usize>>, names: Option<Vec<String>>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::NotAGroup("empty table".into()));
        }
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::NotAGroup(format!(
                    "row {i} has length {} but the table has {n} rows",
                    row.len()
                )));
            }
            if let Some(&bad) = row.iter().find(|&&x| x >= n) {
                return Err(Error::NotAGroup(format!(
                    "entry {bad} in row {i} out of range"
                )));
            }
        }
        if let Some(names) = &names {
            if names.len() != n {
                return Err(Error::NotAGroup(format!(
                    "{} names given for {n} elements",
                    names.len()
                )));
            }
            let distinct: BTreeSet<_> = names.iter().collect();
            if distinct.len() != n {
                return Err(Error::NotAGroup("element names are not distinct".into()));
            }
        }
        let flat: Vec<usize> = table.into_iter().flatten().collect();
        let at = |a: usize, b: usize| flat[a * n + b];

        let identity = (0..n)
            .find(|&e| (0..n).all(|x| at(e, x) == x && at(x, e) == x))
            .ok_or_else(|| Error::NotAGroup("no two-sided identity".into()))?;

        for a in 0..n {
            let mut row_seen = vec![false; n];
            let mut col_seen = vec![false; n];
            for b in 0..n {
                if std::mem::replace(&mut row_seen[at(a, b)], true) {
                    return Err(Error::NotAGroup(format!(
                        "row {a} repeats element {}",
                        at(a, b)
                    )));
                }
                if std::mem::replace(&mut col_seen[at(b, a)], true) {
                    return Err(Error::NotAGroup(format!(
                        "column {a} repeats element {}",
                        at(b, a)
                    )));
                }
            }
        }

        for a in 0..n {
            for b in 0..n {
                let ab = at(a, b);
                for c in 0..n {
                    if at(ab, c) != at(a, at(b, c)) {
                        return Err(Error::NotAGroup(format!(
                            "associativity fails at ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }

        let mut inverses = vec![usize::MAX; n];
        for a in 0..n {
            let inv = (0..n)
                .find(|&b| at(a, b) == identity && at(b, a) == identity)
                .ok_or_else(|| Error::NotAGroup(format!("element {a} has no inverse")))?;
            inverses[a] = inv;
        }

        Ok(Self {
            order: n,
            table: flat,
            identity,
            inverses,
            names,
        })
    }

    /// Builds a group from a closed binary operation on `0..n` without the
    /// O(n³) associativity sweep. Only used for constructions that are groups
    /// by design (cyclic groups, products, quotients, subgroups).
    pub(crate) fn from_op_trusted(
        n: usize,
        op: impl Fn(usize, usize) -> usize,
        names: Option<Vec<String>>,
    ) -> Self {
        let mut table = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                table.push(op(a, b));
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e * n + x] == x))
            .expect("trusted construction has an identity");
        let mut inverses = vec![0; n];
        for a in 0..n {
            inverses[a] = (0..n)
                .find(|&b| table[a * n + b] == identity)
                .expect("trusted construction has inverses");
        }
        Self {
            order: n,
            table,
            identity,
            inverses,
            names,
        }
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    /// ℤ/n with element `k` standing for `k mod n`.
    pub fn cyclic(n: usize) -> Self {
        assert!(n > 0, "cyclic group of order 0");
        Self::from_op_trusted(n, |a, b| (a + b) % n, None)
    }

    /// Direct product; the pair `(a, b)` has index `a * |right| + b`.
    pub fn direct_product(left: &FiniteGroup, right: &FiniteGroup) -> Self {
        let m = right.order;
        let names = match (&left.names, &right.names) {
            (None, None) => None,
            _ => Some(
                (0..left.order * m)
                    .map(|i| format!("({},{})", left.name(i / m), right.name(i % m)))
                    .collect(),
            ),
        };
        Self::from_op_trusted(
            left.order * m,
            |x, y| left.mul(x / m, y / m) * m + right.mul(x % m, y % m),
            names,
        )
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.order {
            return Err(Error::Malformed(format!(
                "{} names for a group of order {}",
                names.len(),
                self.order
            )));
        }
        self.names = Some(names);
        Ok(self)
    }

    /// Label of an element: its name when present, otherwise its index.
    pub fn name(&self, x: usize) -> String {
        match &self.names {
            Some(names) => names[x].clone(),
            None => x.to_string(),
        }
    }

    /// Resolves a label produced by [`FiniteGroup::name`].
    pub fn index_of(&self, label: &str) -> Option<usize> {
        match &self.names {
            Some(names) => names.iter().position(|n| n == label),
            None => label.parse().ok().filter(|&i| i < self.order),
        }
    }

    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.order).map(|r| r.to_vec()).collect()
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn mul_all(&self, xs: &[usize]) -> usize {
        xs.iter().fold(self.identity, |acc, &x| self.mul(acc, x))
    }

    /// `g x g⁻¹`
    #[inline]
    pub fn conj(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    /// `[a, b] = a b a⁻¹ b⁻¹`
    #[inline]
    pub fn commutator(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(a, b), self.mul(self.inv(a), self.inv(b)))
    }

    pub fn pow(&self, a: usize, k: usize) -> usize {
        (0..k).fold(self.identity, |acc, _| self.mul(acc, a))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn center(&self) -> Vec<usize> {
        (0..self.order)
            .filter(|&z| (0..self.order).all(|x| self.mul(z, x) == self.mul(x, z)))
            .collect()
    }

    pub fn is_central(&self, z: usize) -> bool {
        (0..self.order).all(|x| self.mul(z, x) == self.mul(x, z))
    }

    /// Subgroup generated by `gens`, sorted.
    pub fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order];
        seen[self.identity] = true;
        let mut queue = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        (0..self.order).filter(|&x| seen[x]).collect()
    }

    /// Greedy generating set: repeatedly adds the least element outside the
    /// subgroup generated so far.
    pub fn generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = vec![self.identity];
        while span.len() < self.order {
            let next = (0..self.order)
                .find(|x| span.binary_search(x).is_err())
                .expect("span is proper");
            gens.push(next);
            span = self.closure(&gens);
        }
        gens
    }

    pub fn is_subgroup(&self, elems: &[usize]) -> bool {
        let set: BTreeSet<usize> = elems.iter().copied().collect();
        set.contains(&self.identity)
            && set
                .iter()
                .all(|&a| set.iter().all(|&b| set.contains(&self.mul(a, self.inv(b)))))
    }

    pub fn is_normal(&self, elems: &[usize]) -> bool {
        let set: BTreeSet<usize> = elems.iter().copied().collect();
        self.is_subgroup(elems)
            && set
                .iter()
                .all(|&h| (0..self.order).all(|g| set.contains(&self.conj(g, h))))
    }

    /// The subgroup on `elems` re-indexed `0..elems.len()` in increasing
    /// element order, together with the embedding into `self`.
    pub fn subgroup(&self, elems: &[usize]) -> Result<(FiniteGroup, Vec<usize>)> {
        let mut sorted = elems.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if !self.is_subgroup(&sorted) {
            return Err(Error::Malformed(format!("{sorted:?} is not a subgroup")));
        }
        let pos = |x: usize| sorted.binary_search(&x).expect("closed under products");
        let names = self
            .names
            .as_ref()
            .map(|_| sorted.iter().map(|&x| self.name(x)).collect());
        let sub = Self::from_op_trusted(
            sorted.len(),
            |a, b| pos(self.mul(sorted[a], sorted[b])),
            names,
        );
        Ok((sub, sorted))
    }

    /// Quotient by a normal subgroup. Cosets are indexed by increasing least
    /// element; returns the quotient and the projection.
    pub fn quotient(&self, normal: &[usize]) -> Result<(FiniteGroup, Vec<usize>)> {
        if !self.is_normal(normal) {
            return Err(Error::Malformed(format!(
                "{normal:?} is not a normal subgroup"
            )));
        }
        let mut proj = vec![usize::MAX; self.order];
        let mut reps = Vec::new();
        for x in 0..self.order {
            if proj[x] != usize::MAX {
                continue;
            }
            let idx = reps.len();
            reps.push(x);
            for &k in normal {
                proj[self.mul(x, k)] = idx;
            }
        }
        let q = Self::from_op_trusted(reps.len(), |a, b| proj[self.mul(reps[a], reps[b])], None);
        Ok((q, proj))
    }

    /// `true` when `perm` is a bijection of the element set that respects
    /// the multiplication.
    pub fn is_automorphism(&self, perm: &[usize]) -> bool {
        if perm.len() != self.order {
            return false;
        }
        let mut seen = vec![false; self.order];
        for &p in perm {
            if p >= self.order || std::mem::replace(&mut seen[p], true) {
                return false;
            }
        }
        self.automorphism_violation(perm).is_none()
    }

    /// First pair `(x, y)` with `perm(xy) ≠ perm(x)·perm(y)`.
    pub fn automorphism_violation(&self, perm: &[usize]) -> Option<(usize, usize)> {
        for x in 0..self.order {
            for y in 0..self.order {
                if perm[self.mul(x, y)] != self.mul(perm[x], perm[y]) {
                    return Some((x, y));
                }
            }
        }
        None
    }
}

/// A homomorphism between finite groups, stored as its image table.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupHom {
    image: Vec<usize>,
    target_order: usize,
}

impl GroupHom {
    pub fn new(source: &FiniteGroup, target: &FiniteGroup, image: Vec<usize>) -> Result<Self> {
        if image.len() != source.order() {
            return Err(Error::NotAHomomorphism(format!(
                "image table has {} entries for a source of order {}",
                image.len(),
                source.order()
            )));
        }
        if let Some(&bad) = image.iter().find(|&&y| y >= target.order()) {
            return Err(Error::NotAHomomorphism(format!("image {bad} out of range")));
        }
        for x in source.elements() {
            for y in source.elements() {
                if image[source.mul(x, y)] != target.mul(image[x], image[y]) {
                    return Err(Error::NotAHomomorphism(format!(
                        "f({x}·{y}) ≠ f({x})·f({y})"
                    )));
                }
            }
        }
        Ok(Self {
            image,
            target_order: target.order(),
        })
    }

    pub fn identity(group: &FiniteGroup) -> Self {
        Self {
            image: group.elements().collect(),
            target_order: group.order(),
        }
    }

    pub fn trivial(source: &FiniteGroup, target: &FiniteGroup) -> Self {
        Self {
            image: vec![target.identity(); source.order()],
            target_order: target.order(),
        }
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.image[x]
    }

    pub fn image_table(&self) -> &[usize] {
        &self.image
    }

    pub fn source_order(&self) -> usize {
        self.image.len()
    }

    pub fn target_order(&self) -> usize {
        self.target_order
    }

    /// `other ∘ self`
    pub fn then(&self, other: &GroupHom) -> GroupHom {
        GroupHom {
            image: self.image.iter().map(|&y| other.apply(y)).collect(),
            target_order: other.target_order,
        }
    }

    pub fn kernel(&self, source: &FiniteGroup, target: &FiniteGroup) -> Vec<usize> {
        source
            .elements()
            .filter(|&x| self.image[x] == target.identity())
            .collect()
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.target_order];
        for &y in &self.image {
            hit[y] = true;
        }
        hit.into_iter().all(|h| h)
    }
}

/// Composes permutations: `(f ∘ g)(x) = f(g(x))`.
pub fn compose(f: &[usize], g: &[usize]) -> Vec<usize> {
    g.iter().map(|&x| f[x]).collect()
}

pub fn invert_perm(p: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; p.len()];
    for (x, &y) in p.iter().enumerate() {
        inv[y] = x;
    }
    inv
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_table() {
        let g = FiniteGroup::from_table(vec![vec![0]], None).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.identity(), 0);
    }

    #[test]
    fn non_associative_table_reports_triple() {
        // A Latin square with identity 0 that is not associative (order 5 loop).
        let t = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        match FiniteGroup::from_table(t, None) {
            Err(Error::NotAGroup(msg)) => assert!(msg.contains("associativity"), "{msg}"),
            other => panic!("expected associativity failure, got {other:?}"),
        }
    }

    #[test]
    fn missing_identity_and_bad_shape() {
        assert!(FiniteGroup::from_table(vec![vec![1, 0], vec![1, 0]], None).is_err());
        // ℤ/2 with identity 1
        assert_eq!(
            FiniteGroup::from_table(vec![vec![1, 0], vec![0, 1]], None)
                .unwrap()
                .identity(),
            1
        );
        assert!(FiniteGroup::from_table(vec![vec![0, 1], vec![1]], None).is_err());
        assert!(FiniteGroup::from_table(vec![vec![0, 2], vec![1, 0]], None).is_err());
    }

    #[test]
    fn products_and_quotients() {
        let z4 = FiniteGroup::cyclic(4);
        let z2 = FiniteGroup::cyclic(2);
        let p = FiniteGroup::direct_product(&z4, &z2);
        assert_eq!(p.order(), 8);
        assert!(p.is_abelian());
        let (q, proj) = z4.quotient(&[0, 2]).unwrap();
        assert_eq!(q.order(), 2);
        assert_eq!(proj, vec![0, 1, 0, 1]);
        let (sub, emb) = z4.subgroup(&[2, 0]).unwrap();
        assert_eq!(sub.order(), 2);
        assert_eq!(emb, vec![0, 2]);
    }

    #[test]
    fn generators_span() {
        let g = FiniteGroup::direct_product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(4));
        let gens = g.generators();
        assert_eq!(g.closure(&gens).len(), 8);
    }

    #[test]
    fn hom_rejects_non_hom() {
        let z4 = FiniteGroup::cyclic(4);
        let z2 = FiniteGroup::cyclic(2);
        assert!(GroupHom::new(&z4, &z2, vec![0, 1, 0, 1]).is_ok());
        assert!(GroupHom::new(&z4, &z2, vec![0, 1, 1, 0]).is_err());
    }
}
