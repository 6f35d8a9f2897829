//! Finite groups given by multiplication tables. Element 0 is the identity.

use std::collections::BTreeSet;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    table: Vec<Vec<usize>>,
    inverses: Vec<usize>,
}

impl FiniteGroup {
    /// Validates a Cayley table: closure, identity at index 0, associativity, inverses.
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<FiniteGroup> {
        let n = table.len();
        if n == 0 {
            return Err(Error::InvalidGroup("empty table".into()));
        }
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidGroup(format!("row {i} has length {}", row.len())));
            }
            if let Some(&bad) = row.iter().find(|&&x| x >= n) {
                return Err(Error::InvalidGroup(format!("entry {bad} out of range in row {i}")));
            }
        }
        for a in 0..n {
            if table[0][a] != a || table[a][0] != a {
                return Err(Error::InvalidGroup(format!("element 0 is not an identity for {a}")));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::InvalidGroup(format!("associativity fails on ({a}, {b}, {c})")));
                    }
                }
            }
        }
        let mut inverses = Vec::with_capacity(n);
        for a in 0..n {
            match (0..n).find(|&b| table[a][b] == 0 && table[b][a] == 0) {
                Some(b) => inverses.push(b),
                None => return Err(Error::InvalidGroup(format!("element {a} has no inverse"))),
            }
        }
        Ok(FiniteGroup { table, inverses })
    }

    pub fn trivial() -> FiniteGroup {
        FiniteGroup::cyclic(1)
    }

    /// `C_n` with element `i` the `i`-th power of a generator.
    pub fn cyclic(n: usize) -> FiniteGroup {
        assert!(n >= 1);
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        FiniteGroup {
            table,
            inverses: (0..n).map(|a| (n - a) % n).collect(),
        }
    }

    /// `A x B` with `(a, b)` at index `a * |B| + b`.
    pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> FiniteGroup {
        let (na, nb) = (a.order(), b.order());
        let table = (0..na * nb)
            .map(|x| {
                (0..na * nb)
                    .map(|y| a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb))
                    .collect()
            })
            .collect();
        let inverses = (0..na * nb).map(|x| a.inv(x / nb) * nb + b.inv(x % nb)).collect();
        FiniteGroup { table, inverses }
    }

    /// `N ⋊ Q` with `(n, q)` at index `q * |N| + n` and
    /// `(n1, q1)(n2, q2) = (n1 * act[q1](n2), q1 q2)`.
    pub fn semidirect(n: &FiniteGroup, q: &FiniteGroup, act: &[Vec<usize>]) -> Result<FiniteGroup> {
        if act.len() != q.order() {
            return Err(Error::NotHomomorphism("one automorphism per element of Q".into()));
        }
        for (qi, p) in act.iter().enumerate() {
            if !n.is_automorphism(p) {
                return Err(Error::NotHomomorphism(format!("image of {qi} is not an automorphism")));
            }
        }
        for a in 0..q.order() {
            for b in 0..q.order() {
                let ab = q.mul(a, b);
                if (0..n.order()).any(|x| act[ab][x] != act[a][act[b][x]]) {
                    return Err(Error::NotHomomorphism(format!("pair ({a}, {b})")));
                }
            }
        }
        let nn = n.order();
        let total = nn * q.order();
        let table = (0..total)
            .map(|x| {
                let (n1, q1) = (x % nn, x / nn);
                (0..total)
                    .map(|y| {
                        let (n2, q2) = (y % nn, y / nn);
                        q.mul(q1, q2) * nn + n.mul(n1, act[q1][n2])
                    })
                    .collect()
            })
            .collect();
        FiniteGroup::from_table(table)
    }

    /// Group generated by permutations of `0..degree`, elements in breadth-first
    /// discovery order from the identity.
    pub fn from_permutations(gens: &[Vec<usize>]) -> Result<FiniteGroup> {
        let degree = gens.first().map_or(0, |g| g.len());
        for g in gens {
            let set: BTreeSet<usize> = g.iter().copied().collect();
            if g.len() != degree || set.len() != degree || set.iter().any(|&x| x >= degree) {
                return Err(Error::InvalidGroup("generator is not a permutation".into()));
            }
        }
        let id: Vec<usize> = (0..degree).collect();
        let mut elems = vec![id];
        let mut i = 0;
        while i < elems.len() {
            for g in gens {
                // apply g after elems[i]
                let p: Vec<usize> = elems[i].iter().map(|&x| g[x]).collect();
                if !elems.contains(&p) {
                    elems.push(p);
                }
            }
            i += 1;
        }
        let idx = |p: &Vec<usize>| elems.iter().position(|e| e == p).unwrap();
        // (a * b)(x) = a(b(x))
        let table = elems
            .iter()
            .map(|a| elems.iter().map(|b| idx(&b.iter().map(|&x| a[x]).collect())).collect())
            .collect();
        FiniteGroup::from_table(table)
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order()
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut k = 1;
        let mut x = g;
        while x != 0 {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        self.elements()
            .all(|a| self.elements().all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Whether `p` is a permutation of the elements respecting multiplication.
    pub fn is_automorphism(&self, p: &[usize]) -> bool {
        let n = self.order();
        if p.len() != n || p.iter().copied().collect::<BTreeSet<_>>().len() != n {
            return false;
        }
        if p.iter().any(|&x| x >= n) {
            return false;
        }
        self.elements()
            .all(|a| self.elements().all(|b| p[self.mul(a, b)] == self.mul(p[a], p[b])))
    }

    /// Sorted subgroup generated by `gens`.
    pub fn generate(&self, gens: &[usize]) -> Vec<usize> {
        let mut set: BTreeSet<usize> = BTreeSet::from([0]);
        let mut frontier = vec![0];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if set.insert(y) {
                    frontier.push(y);
                }
            }
        }
        set.into_iter().collect()
    }

    pub fn is_subgroup(&self, elems: &[usize]) -> bool {
        let set: BTreeSet<usize> = elems.iter().copied().collect();
        set.contains(&0)
            && set.iter().all(|&x| x < self.order())
            && set.iter().all(|&a| set.iter().all(|&b| set.contains(&self.mul(a, b))))
    }

    /// Checks and canonicalizes a subgroup descriptor to a sorted list.
    pub fn check_subgroup(&self, elems: &[usize]) -> Result<Vec<usize>> {
        if !self.is_subgroup(elems) {
            return Err(Error::NotSubgroup(elems.to_vec()));
        }
        let set: BTreeSet<usize> = elems.iter().copied().collect();
        Ok(set.into_iter().collect())
    }

    /// All subgroups as sorted element lists, ordered by size then elements.
    pub fn subgroups(&self) -> Vec<Vec<usize>> {
        let mut found: BTreeSet<Vec<usize>> = self.elements().map(|g| self.generate(&[g])).collect();
        loop {
            let current: Vec<Vec<usize>> = found.iter().cloned().collect();
            let mut grew = false;
            for a in &current {
                for b in &current {
                    let mut gens = a.clone();
                    gens.extend(b);
                    if found.insert(self.generate(&gens)) {
                        grew = true;
                    }
                }
            }
            if !grew {
                break;
            }
        }
        let mut v: Vec<Vec<usize>> = found.into_iter().collect();
        v.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
        v
    }

    /// Least-index representatives of the right cosets `H g`, in increasing order.
    pub fn right_coset_reps(&self, sub: &[usize]) -> Result<Vec<usize>> {
        let sub = self.check_subgroup(sub)?;
        let mut seen = vec![false; self.order()];
        let mut reps = Vec::new();
        for g in self.elements() {
            if seen[g] {
                continue;
            }
            reps.push(g);
            for &h in &sub {
                seen[self.mul(h, g)] = true;
            }
        }
        Ok(reps)
    }

    /// Validates a right transversal for `sub` whose first entry is the identity.
    pub fn check_right_transversal(&self, sub: &[usize], reps: &[usize]) -> Result<()> {
        let sub = self.check_subgroup(sub)?;
        if reps.first() != Some(&0) {
            return Err(Error::InvalidCosetReps("identity must represent the subgroup".into()));
        }
        let mut seen = vec![false; self.order()];
        for &r in reps {
            if r >= self.order() {
                return Err(Error::InvalidCosetReps(format!("{r} out of range")));
            }
            for &h in &sub {
                let x = self.mul(h, r);
                if seen[x] {
                    return Err(Error::InvalidCosetReps(format!("{r} repeats a coset")));
                }
                seen[x] = true;
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::InvalidCosetReps("cosets not covered".into()));
        }
        Ok(())
    }

    /// Whether `g` normalizes the subgroup `sub`.
    pub fn normalizes(&self, g: usize, sub: &[usize]) -> bool {
        let gi = self.inv(g);
        sub.iter().all(|&h| sub.contains(&self.mul(self.mul(g, h), gi)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_group() {
        // 0 is not an identity
        assert!(FiniteGroup::from_table(vec![vec![1, 0], vec![0, 1]]).is_err());
        // no inverses
        assert!(FiniteGroup::from_table(vec![vec![0, 1], vec![1, 1]]).is_err());
        // non-associative loop of order 5
        let t = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(FiniteGroup::from_table(t).is_err());
    }

    #[test]
    fn subgroup_counts() {
        assert_eq!(FiniteGroup::cyclic(4).subgroups().len(), 3);
        let k = FiniteGroup::direct_product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(2));
        assert_eq!(k.subgroups().len(), 5);
        let s3 = FiniteGroup::from_permutations(&[vec![1, 2, 0], vec![1, 0, 2]]).unwrap();
        assert_eq!(s3.order(), 6);
        assert_eq!(s3.subgroups().len(), 6);
        assert!(!s3.is_abelian());
    }

    #[test]
    fn semidirect_c3_c2_is_s3() {
        let n = FiniteGroup::cyclic(3);
        let q = FiniteGroup::cyclic(2);
        let g = FiniteGroup::semidirect(&n, &q, &[vec![0, 1, 2], vec![0, 2, 1]]).unwrap();
        assert_eq!(g.order(), 6);
        assert!(!g.is_abelian());
    }

    #[test]
    fn coset_reps_and_transversals() {
        let c4 = FiniteGroup::cyclic(4);
        assert_eq!(c4.right_coset_reps(&[0, 2]).unwrap(), vec![0, 1]);
        assert!(c4.check_right_transversal(&[0, 2], &[0, 3]).is_ok());
        assert!(c4.check_right_transversal(&[0, 2], &[0, 2]).is_err());
        assert!(c4.right_coset_reps(&[0, 1]).is_err());
    }
}
