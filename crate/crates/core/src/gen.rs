//! Seeded random inputs: terms, formulas, substitutions, models and relations.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::principles::RelationTable;
use crate::semantics::FiniteModel;
use crate::syntax::{Formula, Signature, Substitution, Tail, Term};

pub struct Gen {
    rng: ChaCha8Rng,
}

impl Gen {
    pub fn new(seed: u64) -> Self {
        Self { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    /// An independent stream for the same seed, so that one consumer drawing
    /// more values does not perturb another.
    pub fn stream(seed: u64, stream: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        Self { rng }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn below(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }

    pub fn range(&mut self, lo: usize, hi: usize) -> usize {
        self.rng.gen_range(lo..=hi)
    }

    /// Splits `total` into `parts` positive summands.
    fn split(&mut self, total: usize, parts: usize) -> Vec<usize> {
        let mut out = vec![1; parts];
        for _ in parts..total {
            let i = self.below(parts);
            out[i] += 1;
        }
        out
    }

    /// A term of at most `budget` nodes over `scope` variables. `None` when
    /// there are neither variables nor constants.
    pub fn term(&mut self, sig: &Signature, budget: usize, scope: usize) -> Option<Term> {
        let consts: Vec<usize> = sig.constants().collect();
        if scope + consts.len() == 0 {
            return None;
        }
        let compound: Vec<usize> =
            (0..sig.functions.len()).filter(|&f| sig.functions[f].arity > 0 && sig.functions[f].arity < budget).collect();
        if !compound.is_empty() && self.rng.gen_bool(0.45) {
            let f = *compound.choose(&mut self.rng).expect("nonempty");
            let arity = sig.functions[f].arity;
            let total = self.range(arity, budget - 1);
            let args = self.split(total, arity).into_iter().map(|b| self.term(sig, b, scope)).collect::<Option<_>>()?;
            return Some(Term::App(f, args));
        }
        let leaf = self.below(scope + consts.len());
        Some(if leaf < scope { Term::Var(leaf) } else { Term::constant(consts[leaf - scope]) })
    }

    /// A formula of at most `budget` nodes with `free` free slots.
    pub fn formula(&mut self, sig: &Signature, budget: usize, free: usize) -> Formula {
        let target = self.range(1, budget.max(1));
        self.formula_at(sig, target, free)
    }

    fn formula_at(&mut self, sig: &Signature, budget: usize, scope: usize) -> Formula {
        if budget >= 2 && self.rng.gen_bool(0.75) {
            let pick = if budget >= 3 { self.below(5) } else { 3 + self.below(2) };
            if pick < 3 {
                let left = self.range(1, budget - 2);
                let a = self.formula_at(sig, left, scope);
                let b = self.formula_at(sig, budget - 1 - left, scope);
                return [Formula::imp, Formula::and, Formula::or][pick](a, b);
            }
            let body = self.formula_at(sig, budget - 1, scope + 1);
            return if pick == 3 { Formula::all(body) } else { Formula::ex(body) };
        }
        let has_leaf = scope > 0 || sig.constants().next().is_some();
        let atoms: Vec<usize> = (0..sig.relations.len())
            .filter(|&r| {
                let a = sig.relations[r].arity;
                a < budget && (a == 0 || has_leaf)
            })
            .collect();
        if atoms.is_empty() || self.rng.gen_bool(0.1) {
            return Formula::Bot;
        }
        let r = *atoms.choose(&mut self.rng).expect("nonempty");
        let arity = sig.relations[r].arity;
        let total = if arity == 0 { 0 } else { self.range(arity, budget - 1) };
        let args = self.split(total, arity).into_iter().map(|b| self.term(sig, b, scope).expect("leaves exist")).collect();
        Formula::atom(r, args)
    }

    /// A substitution with a short prefix and either a shift or a cyclic tail.
    pub fn substitution(&mut self, sig: &Signature, scope: usize) -> Substitution {
        let scope = scope.max(1);
        let prefix: Vec<Term> = (0..self.range(0, 3)).map(|_| self.term(sig, 3, scope).expect("scope > 0")).collect();
        let tail = if self.rng.gen_bool(0.7) {
            Tail::Shift(self.rng.gen_range(-(prefix.len() as isize)..=2))
        } else {
            Tail::Cycle((0..self.range(1, 3)).map(|_| self.term(sig, 3, scope).expect("scope > 0")).collect())
        };
        Substitution::new(prefix, tail)
    }

    pub fn model(&mut self, sig: &Signature, n: usize) -> FiniteModel {
        let functions = sig
            .functions
            .iter()
            .map(|f| (0..n.pow(f.arity as u32)).map(|_| self.below(n)).collect())
            .collect();
        let relations = sig
            .relations
            .iter()
            .map(|r| (0..n.pow(r.arity as u32)).map(|_| self.rng.gen_bool(0.5)).collect())
            .collect();
        FiniteModel::new(sig.clone(), n, functions, relations).expect("tables have the right shape")
    }

    pub fn predicate(&mut self, n: usize) -> RelationTable {
        RelationTable::unary(n, |_| self.rng.gen_bool(0.5))
    }

    /// A relation of the given arity in which every prefix of `arity - 1`
    /// arguments has at least one image in the last position.
    pub fn total_relation(&mut self, n: usize, arity: usize) -> RelationTable {
        assert!(arity >= 1);
        let rows = n.pow(arity as u32 - 1);
        let mut table = Vec::with_capacity(rows * n);
        for _ in 0..rows {
            let forced = self.below(n);
            table.extend((0..n).map(|z| z == forced || self.rng.gen_bool(0.3)));
        }
        RelationTable::new(n, arity, table).expect("shape")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::principles::is_total;

    #[test]
    fn seeded_and_bounded() {
        let sig = Signature::from_pairs(&[("c", 0), ("f", 1)], &[("P", 1), ("R", 2)]);
        let mut g = Gen::new(9);
        let a: Vec<Formula> = (0..50).map(|_| g.formula(&sig, 12, 2)).collect();
        let mut g = Gen::new(9);
        for f in &a {
            assert_eq!(*f, g.formula(&sig, 12, 2));
            assert!(f.size() <= 12);
            assert!(f.free_vars().iter().all(|&v| v < 2));
        }
        let mut g = Gen::new(1);
        for n in 1..=4 {
            assert!(is_total(&g.total_relation(n, 2)));
            assert!(is_total(&g.total_relation(n, 3)));
        }
    }
}
