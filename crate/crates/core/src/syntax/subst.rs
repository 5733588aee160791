//! Finitely represented parallel substitutions.
//!
//! A substitution is an explicit prefix of terms followed by a tail rule, so
//! that identity, shift, cons, composition and lifting all stay representable.

use serde::{Deserialize, Serialize};

use super::{Formula, Signature, SyntaxError, Term};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Tail {
    /// `n ↦ Var(n + k)` for indices past the prefix.
    Shift(isize),
    /// Past the prefix, repeat this nonempty table.
    Cycle(Vec<Term>),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Substitution {
    prefix: Vec<Term>,
    tail: Tail,
}

impl Substitution {
    /// Panics when the tail could produce a negative index or an empty cycle.
    pub fn new(prefix: Vec<Term>, tail: Tail) -> Self {
        match &tail {
            Tail::Shift(k) => assert!(prefix.len() as isize + k >= 0, "shift tail reaches below zero"),
            Tail::Cycle(c) => assert!(!c.is_empty(), "empty cycle tail"),
        }
        Self { prefix, tail }
    }

    pub fn identity() -> Self {
        Self::new(Vec::new(), Tail::Shift(0))
    }

    pub fn shift() -> Self {
        Self::shift_by(1)
    }

    pub fn shift_by(k: usize) -> Self {
        Self::new(Vec::new(), Tail::Shift(k as isize))
    }

    /// `t · id`: maps 0 to `t` and `n+1` to `Var n`.
    pub fn single(t: Term) -> Self {
        Self::identity().cons(t)
    }

    /// Sends `i` to `terms[i]` and leaves every index past the table alone.
    pub fn from_prefix(terms: Vec<Term>) -> Self {
        Self::new(terms, Tail::Shift(0))
    }

    pub fn cyclic(terms: Vec<Term>) -> Self {
        Self::new(Vec::new(), Tail::Cycle(terms))
    }

    pub fn prefix(&self) -> &[Term] {
        &self.prefix
    }

    pub fn tail(&self) -> &Tail {
        &self.tail
    }

    pub fn get(&self, n: usize) -> Term {
        if let Some(t) = self.prefix.get(n) {
            return t.clone();
        }
        let past = n - self.prefix.len();
        match &self.tail {
            Tail::Shift(k) => Term::Var((n as isize + k) as usize),
            Tail::Cycle(c) => c[past % c.len()].clone(),
        }
    }

    /// `t · σ`.
    pub fn cons(&self, t: Term) -> Self {
        let mut prefix = Vec::with_capacity(self.prefix.len() + 1);
        prefix.push(t);
        prefix.extend(self.prefix.iter().cloned());
        let tail = match &self.tail {
            Tail::Shift(k) => Tail::Shift(k - 1),
            Tail::Cycle(c) => Tail::Cycle(c.clone()),
        };
        Self::new(prefix, tail)
    }

    /// The substitution `n ↦ σ(n)[τ]`.
    pub fn compose(&self, tau: &Substitution) -> Self {
        let mut prefix: Vec<Term> = self.prefix.iter().map(|t| t.subst(tau)).collect();
        let tail = match &self.tail {
            Tail::Cycle(c) => Tail::Cycle(c.iter().map(|t| t.subst(tau)).collect()),
            Tail::Shift(k) => {
                let k = *k;
                let tau_len = tau.prefix.len() as isize;
                // Past `start`, σ(n) = Var(n+k) lands beyond τ's prefix.
                let start = (self.prefix.len() as isize).max(tau_len - k) as usize;
                for n in self.prefix.len()..start {
                    prefix.push(tau.get((n as isize + k) as usize));
                }
                match &tau.tail {
                    Tail::Shift(j) => Tail::Shift(k + j),
                    Tail::Cycle(c) => {
                        let offset = (start as isize + k - tau_len) as usize;
                        let len = c.len();
                        Tail::Cycle((0..len).map(|i| c[(offset + i) % len].clone()).collect())
                    }
                }
            }
        };
        Self::new(prefix, tail)
    }

    /// `↑σ`: `0 ↦ Var 0`, `n+1 ↦ σ(n)[↑]`.
    pub fn lift(&self) -> Self {
        self.compose(&Self::shift()).cons(Term::Var(0))
    }

    /// Every term the substitution can produce.
    pub fn stored_terms(&self) -> impl Iterator<Item = &Term> {
        let tail: &[Term] = match &self.tail {
            Tail::Cycle(c) => c,
            Tail::Shift(_) => &[],
        };
        self.prefix.iter().chain(tail)
    }
}

impl Term {
    pub fn subst(&self, sigma: &Substitution) -> Term {
        match self {
            Term::Var(n) => sigma.get(*n),
            Term::App(f, args) => Term::App(*f, args.iter().map(|a| a.subst(sigma)).collect()),
        }
    }

    /// Adds `k` to every variable at or above `cutoff`.
    pub fn shift_from(&self, cutoff: usize, k: usize) -> Term {
        match self {
            Term::Var(n) if *n >= cutoff => Term::Var(n + k),
            Term::Var(n) => Term::Var(*n),
            Term::App(f, args) => Term::App(*f, args.iter().map(|a| a.shift_from(cutoff, k)).collect()),
        }
    }
}

impl Formula {
    pub fn subst(&self, sigma: &Substitution) -> Formula {
        match self {
            Formula::Bot => Formula::Bot,
            Formula::Atom(r, args) => Formula::Atom(*r, args.iter().map(|a| a.subst(sigma)).collect()),
            Formula::Imp(a, b) => Formula::imp(a.subst(sigma), b.subst(sigma)),
            Formula::And(a, b) => Formula::and(a.subst(sigma), b.subst(sigma)),
            Formula::Or(a, b) => Formula::or(a.subst(sigma), b.subst(sigma)),
            Formula::All(b) => Formula::all(b.subst(&sigma.lift())),
            Formula::Ex(b) => Formula::ex(b.subst(&sigma.lift())),
        }
    }

    /// [`Formula::subst`] after validating the formula and every stored term
    /// of the substitution against `sig`.
    pub fn subst_checked(&self, sig: &Signature, sigma: &Substitution) -> Result<Formula, SyntaxError> {
        sig.check_formula(self)?;
        sigma.stored_terms().try_for_each(|t| sig.check_term(t))?;
        Ok(self.subst(sigma))
    }

    /// Instantiates the outermost bound variable of a quantifier body with
    /// `t` and lowers the other free indices by one.
    ///
    /// Walks the tree directly instead of going through [`Substitution`].
    pub fn inst0(&self, t: &Term) -> Formula {
        self.inst_at(0, t)
    }

    fn inst_at(&self, depth: usize, t: &Term) -> Formula {
        let term = |u: &Term| inst_term(u, depth, t);
        match self {
            Formula::Bot => Formula::Bot,
            Formula::Atom(r, args) => Formula::Atom(*r, args.iter().map(term).collect()),
            Formula::Imp(a, b) => Formula::imp(a.inst_at(depth, t), b.inst_at(depth, t)),
            Formula::And(a, b) => Formula::and(a.inst_at(depth, t), b.inst_at(depth, t)),
            Formula::Or(a, b) => Formula::or(a.inst_at(depth, t), b.inst_at(depth, t)),
            Formula::All(b) => Formula::all(b.inst_at(depth + 1, t)),
            Formula::Ex(b) => Formula::ex(b.inst_at(depth + 1, t)),
        }
    }
}

fn inst_term(u: &Term, depth: usize, t: &Term) -> Term {
    match u {
        Term::Var(n) if *n < depth => Term::Var(*n),
        Term::Var(n) if *n == depth => t.shift_from(0, depth),
        Term::Var(n) => Term::Var(n - 1),
        Term::App(f, args) => Term::App(*f, args.iter().map(|a| inst_term(a, depth, t)).collect()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(n: usize) -> Term {
        Term::Var(n)
    }

    fn c() -> Term {
        Term::constant(0)
    }

    #[test]
    fn shift_and_lift() {
        assert_eq!(v(3).subst(&Substitution::shift()), v(4));
        assert_eq!(Substitution::shift().lift().get(2), v(3));
        assert_eq!(Substitution::shift().lift().get(0), v(0));
        let id = Substitution::identity();
        for n in 0..10 {
            assert_eq!(id.lift().get(n), id.get(n));
        }
        let s = Substitution::single(c());
        assert_eq!(s.lift().get(1), c());
    }

    #[test]
    fn closed_terms_survive_lifting() {
        let phi = Formula::all(Formula::atom(0, vec![v(0), v(1)]));
        let got = phi.subst(&Substitution::single(c()));
        assert_eq!(got, Formula::all(Formula::atom(0, vec![v(0), c()])));
    }

    #[test]
    fn inst0_examples() {
        let p = |t| Formula::atom(0, vec![t]);
        assert_eq!(p(v(0)).inst0(&c()), p(c()));
        assert_eq!(p(v(1)).inst0(&c()), p(v(0)));
        // under a binder the instantiated term is shifted past it
        let phi = Formula::all(Formula::atom(0, vec![v(0), v(1)]));
        assert_eq!(phi.inst0(&v(0)), Formula::all(Formula::atom(0, vec![v(0), v(1)])));
        assert_eq!(phi.inst0(&v(0)), phi.subst(&Substitution::single(v(0))));
    }

    #[test]
    fn compose_pointwise() {
        let sigmas = [
            Substitution::identity(),
            Substitution::shift_by(2),
            Substitution::single(c()),
            Substitution::new(vec![v(3)], Tail::Shift(-1)),
            Substitution::cyclic(vec![v(1), c()]),
            Substitution::new(vec![c(), v(0), v(5)], Tail::Cycle(vec![v(2)])),
            Substitution::new(vec![v(4), v(4), v(0)], Tail::Shift(-3)),
        ];
        for s in &sigmas {
            for t in &sigmas {
                let st = s.compose(t);
                for n in 0..20 {
                    assert_eq!(st.get(n), s.get(n).subst(t), "{s:?} then {t:?} at {n}");
                }
            }
        }
    }

    #[test]
    fn checked_substitution_reports_arity() {
        let sig = Signature::from_pairs(&[("c", 0)], &[("P", 1)]);
        let phi = Formula::atom(0, vec![v(0)]);
        let bad = Substitution::single(Term::App(0, vec![v(0)]));
        assert!(phi.subst_checked(&sig, &bad).is_err());
        assert!(phi.subst_checked(&sig, &Substitution::single(c())).is_ok());
    }
}
