//! First-order syntax with de Bruijn binding.
//!
//! Variables are de Bruijn indices: `Var(0)` refers to the innermost enclosing
//! quantifier, and indices at or above the binder depth are free. Terms and
//! formulas are plain trees; everything is immutable once built.

mod enumerate;
mod pairing;
mod parser;
mod printer;
mod subst;

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use enumerate::{enum_formulas, enum_formulas_with, max_var_leaves, FormulaEnumerator, DEFAULT_FREE_VARS};
pub use pairing::{cantor_pair, cantor_unpair};
pub use parser::{parse_formula, parse_formula_open, parse_term, ParseError};
pub use printer::{print_formula, print_term};
pub use subst::{Substitution, Tail};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Symbol {
    pub name: String,
    pub arity: usize,
}

impl Symbol {
    pub fn new(name: impl Into<String>, arity: usize) -> Self {
        Self { name: name.into(), arity }
    }
}

/// A finite stock of function and relation symbols.
///
/// Arity-0 function symbols are constants. Symbols are referred to by their
/// position in the respective list.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Signature {
    #[serde(default)]
    pub functions: Vec<Symbol>,
    pub relations: Vec<Symbol>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SyntaxError {
    #[error("signature declares no relation symbols")]
    NoRelations,
    #[error("duplicate {kind} symbol `{name}`")]
    DuplicateSymbol { kind: &'static str, name: String },
    #[error("unknown function symbol #{0}")]
    UnknownFunction(usize),
    #[error("unknown relation symbol #{0}")]
    UnknownRelation(usize),
    #[error("`{name}` expects {expected} argument(s), got {found}")]
    Arity { name: String, expected: usize, found: usize },
}

impl Signature {
    pub fn new(functions: Vec<Symbol>, relations: Vec<Symbol>) -> Result<Self, SyntaxError> {
        let sig = Self { functions, relations };
        sig.validate()?;
        Ok(sig)
    }

    /// Builds a signature from `(name, arity)` pairs. Panics on an invalid
    /// signature; meant for fixtures and tests.
    pub fn from_pairs(functions: &[(&str, usize)], relations: &[(&str, usize)]) -> Self {
        let mk = |xs: &[(&str, usize)]| xs.iter().map(|&(n, a)| Symbol::new(n, a)).collect();
        Self::new(mk(functions), mk(relations)).expect("invalid fixture signature")
    }

    pub fn validate(&self) -> Result<(), SyntaxError> {
        if self.relations.is_empty() {
            return Err(SyntaxError::NoRelations);
        }
        for (kind, syms) in [("function", &self.functions), ("relation", &self.relations)] {
            let mut seen = BTreeSet::new();
            for s in syms {
                if !seen.insert(s.name.as_str()) {
                    return Err(SyntaxError::DuplicateSymbol { kind, name: s.name.clone() });
                }
            }
        }
        Ok(())
    }

    pub fn function(&self, name: &str) -> Option<usize> {
        self.functions.iter().position(|s| s.name == name)
    }

    pub fn relation(&self, name: &str) -> Option<usize> {
        self.relations.iter().position(|s| s.name == name)
    }

    pub fn constants(&self) -> impl Iterator<Item = usize> + '_ {
        self.functions.iter().enumerate().filter(|(_, s)| s.arity == 0).map(|(i, _)| i)
    }

    pub fn check_term(&self, t: &Term) -> Result<(), SyntaxError> {
        match t {
            Term::Var(_) => Ok(()),
            Term::App(f, args) => {
                let sym = self.functions.get(*f).ok_or(SyntaxError::UnknownFunction(*f))?;
                if sym.arity != args.len() {
                    return Err(SyntaxError::Arity {
                        name: sym.name.clone(),
                        expected: sym.arity,
                        found: args.len(),
                    });
                }
                args.iter().try_for_each(|a| self.check_term(a))
            }
        }
    }

    pub fn check_formula(&self, phi: &Formula) -> Result<(), SyntaxError> {
        match phi {
            Formula::Bot => Ok(()),
            Formula::Atom(r, args) => {
                let sym = self.relations.get(*r).ok_or(SyntaxError::UnknownRelation(*r))?;
                if sym.arity != args.len() {
                    return Err(SyntaxError::Arity {
                        name: sym.name.clone(),
                        expected: sym.arity,
                        found: args.len(),
                    });
                }
                args.iter().try_for_each(|a| self.check_term(a))
            }
            Formula::Imp(a, b) | Formula::And(a, b) | Formula::Or(a, b) => {
                self.check_formula(a)?;
                self.check_formula(b)
            }
            Formula::All(b) | Formula::Ex(b) => self.check_formula(b),
        }
    }
}

/// `Var(n)` or a function symbol applied to argument terms.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Term {
    Var(usize),
    App(usize, Vec<Term>),
}

impl Term {
    pub fn constant(f: usize) -> Self {
        Term::App(f, Vec::new())
    }

    /// Node count.
    pub fn size(&self) -> usize {
        match self {
            Term::Var(_) => 1,
            Term::App(_, args) => 1 + args.iter().map(Term::size).sum::<usize>(),
        }
    }

    /// Variables and constants have depth 0.
    pub fn depth(&self) -> usize {
        match self {
            Term::Var(_) => 0,
            Term::App(_, args) => args.iter().map(|a| a.depth() + 1).max().unwrap_or(0),
        }
    }

    pub fn is_closed(&self) -> bool {
        match self {
            Term::Var(_) => false,
            Term::App(_, args) => args.iter().all(Term::is_closed),
        }
    }

    fn collect_vars(&self, offset: usize, out: &mut BTreeSet<usize>) {
        match self {
            Term::Var(n) if *n >= offset => {
                out.insert(n - offset);
            }
            Term::Var(_) => {}
            Term::App(_, args) => args.iter().for_each(|a| a.collect_vars(offset, out)),
        }
    }

    pub fn free_vars(&self) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        self.collect_vars(0, &mut out);
        out
    }
}

/// Formulas over `⊥, P t⃗, →, ∧, ∨, ∀, ∃`. Negation is `φ → ⊥`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Formula {
    Bot,
    Atom(usize, Vec<Term>),
    Imp(Box<Formula>, Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    All(Box<Formula>),
    Ex(Box<Formula>),
}

impl Formula {
    pub fn atom(r: usize, args: Vec<Term>) -> Self {
        Formula::Atom(r, args)
    }

    pub fn imp(a: Formula, b: Formula) -> Self {
        Formula::Imp(Box::new(a), Box::new(b))
    }

    pub fn and(a: Formula, b: Formula) -> Self {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Self {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn all(body: Formula) -> Self {
        Formula::All(Box::new(body))
    }

    pub fn ex(body: Formula) -> Self {
        Formula::Ex(Box::new(body))
    }

    pub fn not(a: Formula) -> Self {
        Formula::imp(a, Formula::Bot)
    }

    /// Node count, term nodes included.
    pub fn size(&self) -> usize {
        match self {
            Formula::Bot => 1,
            Formula::Atom(_, args) => 1 + args.iter().map(Term::size).sum::<usize>(),
            Formula::Imp(a, b) | Formula::And(a, b) | Formula::Or(a, b) => 1 + a.size() + b.size(),
            Formula::All(b) | Formula::Ex(b) => 1 + b.size(),
        }
    }

    fn collect_vars(&self, depth: usize, out: &mut BTreeSet<usize>) {
        match self {
            Formula::Bot => {}
            Formula::Atom(_, args) => args.iter().for_each(|a| a.collect_vars(depth, out)),
            Formula::Imp(a, b) | Formula::And(a, b) | Formula::Or(a, b) => {
                a.collect_vars(depth, out);
                b.collect_vars(depth, out);
            }
            Formula::All(b) | Formula::Ex(b) => b.collect_vars(depth + 1, out),
        }
    }

    /// The de Bruijn indices free in the formula, measured from its root.
    pub fn free_vars(&self) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        self.collect_vars(0, &mut out);
        out
    }

    pub fn is_closed(&self) -> bool {
        self.free_vars().is_empty()
    }

    /// Built only from `⊥`, `→` and `∀`.
    pub fn is_negative(&self) -> bool {
        match self {
            Formula::Bot | Formula::Atom(..) => true,
            Formula::Imp(a, b) => a.is_negative() && b.is_negative(),
            Formula::All(b) => b.is_negative(),
            Formula::And(..) | Formula::Or(..) | Formula::Ex(..) => false,
        }
    }

    /// No `→` (hence no negation) anywhere.
    pub fn is_positive(&self) -> bool {
        match self {
            Formula::Bot | Formula::Atom(..) => true,
            Formula::And(a, b) | Formula::Or(a, b) => a.is_positive() && b.is_positive(),
            Formula::All(b) | Formula::Ex(b) => b.is_positive(),
            Formula::Imp(..) => false,
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(n) => write!(f, "#{n}"),
            Term::App(g, args) => {
                write!(f, "f{g}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{a}")?;
                }
                write!(f, ")")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_vars_discount_binders() {
        let p = |t| Formula::atom(0, vec![t]);
        assert_eq!(p(Term::Var(2)).free_vars(), BTreeSet::from([2]));
        assert!(Formula::all(p(Term::Var(0))).free_vars().is_empty());
        assert_eq!(Formula::all(p(Term::Var(3))).free_vars(), BTreeSet::from([2]));
        assert!(Formula::all(p(Term::Var(0))).is_closed());
    }

    #[test]
    fn size_counts_term_nodes() {
        let f = Formula::all(Formula::atom(0, vec![Term::Var(0), Term::App(0, vec![Term::Var(1)])]));
        assert_eq!(f.size(), 5);
        assert_eq!(Term::App(0, vec![Term::constant(1)]).depth(), 1);
        assert_eq!(Term::constant(1).depth(), 0);
    }

    #[test]
    fn signature_rejects_bad_shapes() {
        assert_eq!(Signature::new(vec![], vec![]), Err(SyntaxError::NoRelations));
        let dup = Signature::new(vec![], vec![Symbol::new("P", 1), Symbol::new("P", 2)]);
        assert!(matches!(dup, Err(SyntaxError::DuplicateSymbol { .. })));
        let sig = Signature::from_pairs(&[("c", 0)], &[("P", 1)]);
        assert!(sig.check_formula(&Formula::atom(0, vec![])).is_err());
        assert!(sig.check_formula(&Formula::atom(1, vec![])).is_err());
        assert!(sig.check_formula(&Formula::atom(0, vec![Term::constant(0)])).is_ok());
    }

    #[test]
    fn fragments() {
        let p = Formula::atom(0, vec![Term::Var(0)]);
        assert!(Formula::all(Formula::not(p.clone())).is_negative());
        assert!(!Formula::ex(p.clone()).is_negative());
        assert!(Formula::ex(p.clone()).is_positive());
        assert!(!Formula::not(p).is_positive());
    }
}
