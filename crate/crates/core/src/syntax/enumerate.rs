//! Deterministic enumeration of formulas by size.
//!
//! Order: size first, then `Bot < Atom < Imp < And < Or < All < Ex`, then
//! recursively lexicographic (argument size splits ascending, then the
//! sub-enumerations in their own order). Only formulas whose free indices are
//! below a fixed number of free slots are produced; the slot count does not
//! depend on `k`, so the output for `k` is a prefix of the output for `k + 1`.

use std::collections::HashMap;
use std::rc::Rc;

use super::{Formula, Signature, Term};

/// Free slots used when none are specified.
pub const DEFAULT_FREE_VARS: usize = 2;

/// All formulas of size ≤ `k` with free indices below [`DEFAULT_FREE_VARS`].
pub fn enum_formulas(sig: &Signature, k: usize) -> Vec<Formula> {
    enum_formulas_with(sig, k, DEFAULT_FREE_VARS)
}

/// All formulas of size ≤ `k` whose free indices are below `free`.
pub fn enum_formulas_with(sig: &Signature, k: usize, free: usize) -> Vec<Formula> {
    FormulaEnumerator::new(sig, free).upto(k)
}

/// Memoizing enumerator keyed by (size, binder depth).
pub struct FormulaEnumerator<'a> {
    sig: &'a Signature,
    free: usize,
    terms: HashMap<(usize, usize), Rc<Vec<Term>>>,
    formulas: HashMap<(usize, usize), Rc<Vec<Formula>>>,
}

impl<'a> FormulaEnumerator<'a> {
    pub fn new(sig: &'a Signature, free: usize) -> Self {
        Self { sig, free, terms: HashMap::new(), formulas: HashMap::new() }
    }

    pub fn upto(&mut self, k: usize) -> Vec<Formula> {
        (1..=k).flat_map(|s| self.formulas_of_size(s, 0).iter().cloned().collect::<Vec<_>>()).collect()
    }

    /// Terms of exactly `size` nodes at binder depth `depth`.
    pub fn terms_of_size(&mut self, size: usize, depth: usize) -> Rc<Vec<Term>> {
        if let Some(v) = self.terms.get(&(size, depth)) {
            return v.clone();
        }
        let mut out = Vec::new();
        if size == 1 {
            out.extend((0..depth + self.free).map(Term::Var));
        }
        for (f, sym) in self.sig.functions.iter().enumerate() {
            if size == 1 && sym.arity == 0 {
                out.push(Term::constant(f));
            } else if sym.arity > 0 && size > sym.arity {
                for args in self.term_tuples(sym.arity, size - 1, depth) {
                    out.push(Term::App(f, args));
                }
            }
        }
        let out = Rc::new(out);
        self.terms.insert((size, depth), out.clone());
        out
    }

    /// Tuples of `n` terms whose sizes sum to `total`.
    fn term_tuples(&mut self, n: usize, total: usize, depth: usize) -> Vec<Vec<Term>> {
        if n == 0 {
            return if total == 0 { vec![Vec::new()] } else { Vec::new() };
        }
        let mut out = Vec::new();
        for first in 1..=total.saturating_sub(n - 1) {
            let heads = self.terms_of_size(first, depth);
            if heads.is_empty() {
                continue;
            }
            let rests = self.term_tuples(n - 1, total - first, depth);
            for h in heads.iter() {
                for r in &rests {
                    let mut v = Vec::with_capacity(n);
                    v.push(h.clone());
                    v.extend(r.iter().cloned());
                    out.push(v);
                }
            }
        }
        out
    }

    /// Formulas of exactly `size` nodes at binder depth `depth`.
    pub fn formulas_of_size(&mut self, size: usize, depth: usize) -> Rc<Vec<Formula>> {
        if let Some(v) = self.formulas.get(&(size, depth)) {
            return v.clone();
        }
        let mut out = Vec::new();
        if size == 1 {
            out.push(Formula::Bot);
        }
        for (r, sym) in self.sig.relations.iter().enumerate() {
            if size == 1 + sym.arity && sym.arity == 0 {
                out.push(Formula::atom(r, Vec::new()));
            } else if sym.arity > 0 && size > sym.arity {
                for args in self.term_tuples(sym.arity, size - 1, depth) {
                    out.push(Formula::Atom(r, args));
                }
            }
        }
        if size >= 3 {
            type Mk = fn(Formula, Formula) -> Formula;
            for mk in [Formula::imp as Mk, Formula::and, Formula::or] {
                for left in 1..=size - 2 {
                    let ls = self.formulas_of_size(left, depth);
                    let rs = self.formulas_of_size(size - 1 - left, depth);
                    for a in ls.iter() {
                        for b in rs.iter() {
                            out.push(mk(a.clone(), b.clone()));
                        }
                    }
                }
            }
        }
        if size >= 2 {
            let bodies = self.formulas_of_size(size - 1, depth + 1);
            out.extend(bodies.iter().cloned().map(Formula::all));
            out.extend(bodies.iter().cloned().map(Formula::ex));
        }
        let out = Rc::new(out);
        self.formulas.insert((size, depth), out.clone());
        out
    }
}

/// The most variable occurrences any formula of size ≤ `size` can have.
pub fn max_var_leaves(sig: &Signature, size: usize) -> usize {
    // term_best[s]: most variable leaves in a term of exactly s nodes
    let mut term_best: Vec<Option<usize>> = vec![None; size + 1];
    for s in 1..=size {
        let mut best = if s == 1 { Some(1) } else { None };
        for sym in sig.functions.iter().filter(|f| f.arity > 0 && s > f.arity) {
            if let Some(v) = best_split(&term_best, sym.arity, s - 1) {
                best = best.max(Some(v));
            }
        }
        term_best[s] = best;
    }
    let mut form_best: Vec<Option<usize>> = vec![None; size + 1];
    for s in 1..=size {
        let mut best = if s == 1 { Some(0) } else { None };
        for sym in sig.relations.iter().filter(|r| r.arity > 0 && s > r.arity) {
            if let Some(v) = best_split(&term_best, sym.arity, s - 1) {
                best = best.max(Some(v));
            }
        }
        if sig.relations.iter().any(|r| r.arity == 0) && s == 1 {
            best = best.max(Some(0));
        }
        for left in 1..s.saturating_sub(1) {
            if let (Some(a), Some(b)) = (form_best[left], form_best[s - 1 - left]) {
                best = best.max(Some(a + b));
            }
        }
        if s >= 2 {
            best = best.max(form_best[s - 1]);
        }
        form_best[s] = best;
    }
    form_best[1..].iter().flatten().copied().max().unwrap_or(0)
}

fn best_split(term_best: &[Option<usize>], n: usize, total: usize) -> Option<usize> {
    if n == 0 {
        return (total == 0).then_some(0);
    }
    (1..=total.saturating_sub(n - 1))
        .filter_map(|first| Some(term_best[first]? + best_split(term_best, n - 1, total - first)?))
        .max()
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeSet;

    use super::*;

    #[test]
    fn starts_with_bot_and_is_prefix_stable() {
        let sig = Signature::from_pairs(&[("c", 0)], &[("P", 1)]);
        for k in 1..6 {
            let a = enum_formulas(&sig, k);
            let b = enum_formulas(&sig, k + 1);
            assert_eq!(a[0], Formula::Bot);
            assert_eq!(&b[..a.len()], &a[..]);
        }
    }

    #[test]
    fn propositional_example() {
        let sig = Signature::from_pairs(&[], &[("Q", 0)]);
        let fs = enum_formulas(&sig, 3);
        let q = Formula::atom(0, vec![]);
        let wanted = [Formula::Bot, q.clone(), Formula::imp(Formula::Bot, Formula::Bot), Formula::imp(Formula::Bot, q)];
        let positions: Vec<usize> = wanted.iter().map(|w| fs.iter().position(|f| f == w).unwrap()).collect();
        assert!(positions.windows(2).all(|w| w[0] < w[1]), "{positions:?}");
        // size 1: Bot, Q; size 2: two quantifiers over each; size 3: 3 × 2 × 2
        // binaries plus two quantifiers over each of the 4 size-2 formulas
        assert_eq!(fs.len(), 2 + 4 + 12 + 8);
    }

    #[test]
    fn leaf_bound() {
        let sig = Signature::from_pairs(&[("c", 0)], &[("P", 1), ("R", 2)]);
        assert_eq!(max_var_leaves(&sig, 5), 2);
        assert_eq!(max_var_leaves(&sig, 7), 4);
        let unary = Signature::from_pairs(&[("f", 1)], &[("P", 1)]);
        assert_eq!(max_var_leaves(&unary, 2), 1);
        let prop = Signature::from_pairs(&[], &[("Q", 0)]);
        assert_eq!(max_var_leaves(&prop, 9), 0);
    }

    #[test]
    fn no_duplicates() {
        let sig = Signature::from_pairs(&[("f", 1), ("c", 0)], &[("P", 1), ("R", 2)]);
        let fs = enum_formulas(&sig, 6);
        let set: BTreeSet<_> = fs.iter().collect();
        assert_eq!(set.len(), fs.len());
        assert!(fs.windows(2).all(|w| w[0].size() <= w[1].size()));
    }
}
