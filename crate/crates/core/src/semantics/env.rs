use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

/// A total function ℕ → domain stored as a cyclic table: `ρ(n) = table[n mod len]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Env {
    table: Vec<usize>,
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl Env {
    /// Panics on an empty table.
    pub fn new(table: Vec<usize>) -> Self {
        assert!(!table.is_empty(), "environment table must be nonempty");
        Self { table }
    }

    pub fn constant(x: usize) -> Self {
        Self::new(vec![x])
    }

    /// `[0, 1, …, n-1]`.
    pub fn identity(n: usize) -> Self {
        Self::new((0..n).collect())
    }

    pub fn get(&self, n: usize) -> usize {
        self.table[n % self.table.len()]
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn range(&self) -> BTreeSet<usize> {
        self.table.iter().copied().collect()
    }

    pub fn fits(&self, domain_size: usize) -> bool {
        self.table.iter().all(|&x| x < domain_size)
    }

    /// Interleaving with `r(2n) = f(n)` and `r(2n+1) = g(n)` at every `n`.
    ///
    /// The table has length `2·lcm(|f|,|g|)`, which makes the law exact rather
    /// than approximate past the end of either input.
    pub fn union(&self, other: &Env) -> Env {
        let (a, b) = (self.len(), other.len());
        let lcm = a / gcd(a, b) * b;
        let mut table = Vec::with_capacity(2 * lcm);
        for n in 0..lcm {
            table.push(self.get(n));
            table.push(other.get(n));
        }
        Env::new(table)
    }

    /// `f ⊆ g`: every value of `f` is a value of `g`.
    pub fn subseteq(&self, other: &Env) -> bool {
        let r = other.range();
        self.table.iter().all(|x| r.contains(x))
    }

    /// Distinct values in order of first occurrence. Same range, and the value
    /// at index 0 is kept.
    pub fn compact(&self) -> Env {
        let mut seen = BTreeSet::new();
        Env::new(self.table.iter().copied().filter(|x| seen.insert(*x)).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn union_interleaves() {
        let f = Env::new(vec![7]);
        let g = Env::new(vec![9]);
        let r = f.union(&g);
        assert_eq!(r.table(), &[7, 9]);
        assert_eq!(r.get(3), g.get(1));
        let f = Env::new(vec![0, 1]);
        let g = Env::new(vec![2, 3, 4]);
        let r = f.union(&g);
        assert_eq!(r.len(), 12);
        for n in 0..1000 {
            assert_eq!(r.get(2 * n), f.get(n));
            assert_eq!(r.get(2 * n + 1), g.get(n));
        }
        assert!(f.subseteq(&r) && g.subseteq(&r));
        assert_eq!(f.union(&f).range(), f.range());
    }

    #[test]
    fn inclusion() {
        let f = Env::new(vec![0, 1]);
        assert!(f.subseteq(&f));
        assert!(!f.subseteq(&Env::new(vec![0])));
        assert_eq!(Env::new(vec![2, 0, 2, 1, 0]).compact().table(), &[2, 0, 1]);
    }
}
