use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::semantics::Env;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PrincipleError {
    #[error("carrier must have at least one element")]
    EmptyCarrier,
    #[error("relation is not total: {0}")]
    NotTotal(String),
    #[error("relation is not directed: {0}")]
    NotDirected(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("construction failed its own check: {0}")]
    Internal(String),
}

/// A Boolean table over a finite carrier `A`: a predicate (arity 1), a binary
/// relation `R x y` (arity 2) or a relation `R (x,y) z` (arity 3).
/// Row-major, first argument most significant.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RelationTable {
    pub carrier: usize,
    pub arity: usize,
    pub table: Vec<bool>,
}

impl RelationTable {
    pub fn new(carrier: usize, arity: usize, table: Vec<bool>) -> Result<Self, PrincipleError> {
        let r = Self { carrier, arity, table };
        r.validate()?;
        Ok(r)
    }

    pub fn validate(&self) -> Result<(), PrincipleError> {
        if self.carrier == 0 {
            return Err(PrincipleError::EmptyCarrier);
        }
        if !(1..=3).contains(&self.arity) {
            return Err(PrincipleError::Shape(format!("arity must be 1, 2 or 3, got {}", self.arity)));
        }
        let want = self.carrier.pow(self.arity as u32);
        if self.table.len() != want {
            return Err(PrincipleError::Shape(format!("table: expected {want} entries, found {}", self.table.len())));
        }
        Ok(())
    }

    pub fn unary(carrier: usize, p: impl FnMut(usize) -> bool) -> Self {
        Self { carrier, arity: 1, table: (0..carrier).map(p).collect() }
    }

    pub fn binary(carrier: usize, mut r: impl FnMut(usize, usize) -> bool) -> Self {
        let table = (0..carrier * carrier).map(|i| r(i / carrier, i % carrier)).collect();
        Self { carrier, arity: 2, table }
    }

    pub fn ternary(carrier: usize, mut r: impl FnMut(usize, usize, usize) -> bool) -> Self {
        let n = carrier;
        let table = (0..n * n * n).map(|i| r(i / (n * n), (i / n) % n, i % n)).collect();
        Self { carrier, arity: 3, table }
    }

    /// The predicate whose `bits`-th bit says whether `x` is in it.
    pub fn from_bits(carrier: usize, bits: u64) -> Self {
        Self::unary(carrier, |x| bits >> x & 1 == 1)
    }

    pub fn p(&self, x: usize) -> bool {
        debug_assert_eq!(self.arity, 1);
        self.table[x]
    }

    pub fn r2(&self, x: usize, y: usize) -> bool {
        debug_assert_eq!(self.arity, 2);
        self.table[x * self.carrier + y]
    }

    pub fn r3(&self, x: usize, y: usize, z: usize) -> bool {
        debug_assert_eq!(self.arity, 3);
        let n = self.carrier;
        self.table[(x * n + y) * n + z]
    }

    pub fn expect_arity(&self, arity: usize) -> Result<(), PrincipleError> {
        self.validate()?;
        if self.arity == arity {
            Ok(())
        } else {
            Err(PrincipleError::Shape(format!("expected a relation of arity {arity}, got arity {}", self.arity)))
        }
    }
}

/// A relation `R : ℕ → A → bool` known on the window `[0, N)` and extended
/// beyond it by reading `n mod N`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CcInstance {
    pub window: usize,
    pub carrier: usize,
    pub table: Vec<bool>,
}

impl CcInstance {
    pub fn new(window: usize, carrier: usize, table: Vec<bool>) -> Result<Self, PrincipleError> {
        let c = Self { window, carrier, table };
        c.validate()?;
        Ok(c)
    }

    pub fn from_fn(window: usize, carrier: usize, mut r: impl FnMut(usize, usize) -> bool) -> Self {
        Self { window, carrier, table: (0..window * carrier).map(|i| r(i / carrier, i % carrier)).collect() }
    }

    pub fn validate(&self) -> Result<(), PrincipleError> {
        if self.carrier == 0 {
            return Err(PrincipleError::EmptyCarrier);
        }
        if self.window == 0 {
            return Err(PrincipleError::Shape("window must be nonempty".into()));
        }
        if self.table.len() != self.window * self.carrier {
            return Err(PrincipleError::Shape(format!(
                "table: expected {} entries, found {}",
                self.window * self.carrier,
                self.table.len()
            )));
        }
        Ok(())
    }

    pub fn get(&self, n: usize, a: usize) -> bool {
        self.table[(n % self.window) * self.carrier + a]
    }

    /// Every window index has some image.
    pub fn check_total(&self) -> Result<(), PrincipleError> {
        self.validate()?;
        match (0..self.window).find(|&n| (0..self.carrier).all(|a| !self.get(n, a))) {
            Some(n) => Err(PrincipleError::NotTotal(format!("window index {n} has no image"))),
            None => Ok(()),
        }
    }
}

/// An eventually periodic sequence `prefix ++ cycle ++ cycle ++ …`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LassoSeq {
    pub prefix: Vec<usize>,
    pub cycle: Vec<usize>,
}

impl LassoSeq {
    pub fn new(prefix: Vec<usize>, cycle: Vec<usize>) -> Self {
        assert!(!cycle.is_empty(), "lasso cycle must be nonempty");
        Self { prefix, cycle }
    }

    pub fn get(&self, n: usize) -> usize {
        match self.prefix.get(n) {
            Some(&x) => x,
            None => self.cycle[(n - self.prefix.len()) % self.cycle.len()],
        }
    }

    /// The orbit `x, step(x), step(step(x)), …` of a map on a finite set.
    pub fn from_iteration(start: usize, step: impl Fn(usize) -> usize) -> Self {
        let mut seen = HashMap::new();
        let mut seq = Vec::new();
        let mut x = start;
        while let std::collections::hash_map::Entry::Vacant(e) = seen.entry(x) {
            e.insert(seq.len());
            seq.push(x);
            x = step(x);
        }
        let loop_start = seen[&x];
        let cycle = seq.split_off(loop_start);
        Self::new(seq, cycle)
    }

    pub fn map(&self, f: impl Fn(usize) -> usize) -> Self {
        Self::new(self.prefix.iter().map(|&x| f(x)).collect(), self.cycle.iter().map(|&x| f(x)).collect())
    }

    /// The shortest prefix and cycle describing the same sequence.
    pub fn normalize(&self) -> Self {
        let mut cycle = self.cycle.clone();
        let len = cycle.len();
        if let Some(d) = (1..=len).find(|&d| len.is_multiple_of(d) && (0..len).all(|i| cycle[i] == cycle[i % d])) {
            cycle.truncate(d);
        }
        let mut prefix = self.prefix.clone();
        while prefix.last().is_some_and(|&x| x == *cycle.last().expect("nonempty")) {
            prefix.pop();
            cycle.rotate_right(1);
        }
        Self::new(prefix, cycle)
    }

    /// Positions `0 ..` this many cover every consecutive pair of the lasso,
    /// so checking them checks the whole infinite sequence.
    pub fn period_horizon(&self) -> usize {
        self.prefix.len() + self.cycle.len()
    }
}

/// A function `ℕ → A` stored as a cyclic table, used as a Henkin blur or a
/// blurred choice function.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Blur {
    pub carrier: usize,
    pub table: Vec<usize>,
}

impl Blur {
    pub fn new(carrier: usize, table: Vec<usize>) -> Result<Self, PrincipleError> {
        let b = Self { carrier, table };
        b.validate()?;
        Ok(b)
    }

    pub fn from_env(carrier: usize, env: &Env) -> Self {
        Self { carrier, table: env.table().to_vec() }
    }

    pub fn identity(carrier: usize) -> Self {
        Self { carrier, table: (0..carrier).collect() }
    }

    pub fn validate(&self) -> Result<(), PrincipleError> {
        if self.carrier == 0 {
            return Err(PrincipleError::EmptyCarrier);
        }
        if self.table.is_empty() {
            return Err(PrincipleError::Shape("blur table must be nonempty".into()));
        }
        if let Some((i, v)) = self.table.iter().enumerate().find(|(_, &v)| v >= self.carrier) {
            return Err(PrincipleError::Shape(format!("table[{i}] = {v} is outside the carrier of size {}", self.carrier)));
        }
        Ok(())
    }

    pub fn get(&self, n: usize) -> usize {
        self.table[n % self.table.len()]
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    pub fn env(&self) -> Env {
        Env::new(self.table.clone())
    }

    /// Distinct values in first-occurrence order.
    pub fn range(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for &v in &self.table {
            if !out.contains(&v) {
                out.push(v);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lasso_detection_and_normalization() {
        let l = LassoSeq::from_iteration(5, |x| if x == 5 { 0 } else { (x + 1) % 3 });
        assert_eq!(l, LassoSeq::new(vec![5], vec![0, 1, 2]));
        assert_eq!(l.get(4), 0);
        let redundant = LassoSeq::new(vec![1, 2, 0, 1], vec![2, 0, 1, 2, 0, 1]);
        assert_eq!(redundant.normalize(), LassoSeq::new(vec![], vec![1, 2, 0]));
        for n in 0..30 {
            assert_eq!(redundant.get(n), redundant.normalize().get(n));
        }
    }

    #[test]
    fn shapes() {
        assert!(RelationTable::new(2, 2, vec![true; 3]).is_err());
        assert_eq!(RelationTable::new(0, 1, vec![]).unwrap_err(), PrincipleError::EmptyCarrier);
        assert!(Blur::new(2, vec![2]).is_err());
        let r = RelationTable::ternary(3, |x, y, z| z == x.max(y));
        assert!(r.r3(2, 1, 2) && !r.r3(2, 1, 1));
    }
}
