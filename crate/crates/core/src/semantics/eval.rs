use crate::syntax::{Formula, Signature, Term};

use super::{Env, FiniteModel};

/// Anything formulas can be evaluated in: a signature, a quantifier domain
/// and interpretations of the symbols.
///
/// For finite models the quantifier domain is the whole carrier. Term models
/// have infinite carriers, so their views expose a depth-bounded slice.
pub trait Structure {
    type Elem: Clone;

    fn sig(&self) -> &Signature;

    /// The elements quantifiers range over.
    fn elements(&self) -> Vec<Self::Elem>;

    fn apply(&self, f: usize, args: Vec<Self::Elem>) -> Self::Elem;

    fn holds(&self, r: usize, args: &[Self::Elem]) -> bool;

    /// Human-readable element, for reports.
    fn describe(&self, e: &Self::Elem) -> String;
}

impl Structure for FiniteModel {
    type Elem = usize;

    fn sig(&self) -> &Signature {
        FiniteModel::sig(self)
    }

    fn elements(&self) -> Vec<usize> {
        (0..self.domain_size()).collect()
    }

    fn apply(&self, f: usize, args: Vec<usize>) -> usize {
        FiniteModel::apply(self, f, &args)
    }

    fn holds(&self, r: usize, args: &[usize]) -> bool {
        FiniteModel::holds(self, r, args)
    }

    fn describe(&self, e: &usize) -> String {
        e.to_string()
    }
}

struct Evaluator<'a, S: Structure + ?Sized> {
    s: &'a S,
    dom: Vec<S::Elem>,
    base: &'a dyn Fn(usize) -> S::Elem,
    /// Values of the enclosing binders, innermost last.
    stack: Vec<S::Elem>,
}

impl<S: Structure + ?Sized> Evaluator<'_, S> {
    fn term(&self, t: &Term) -> S::Elem {
        match t {
            Term::Var(n) => {
                let depth = self.stack.len();
                if *n < depth {
                    self.stack[depth - 1 - n].clone()
                } else {
                    (self.base)(n - depth)
                }
            }
            Term::App(f, args) => self.s.apply(*f, args.iter().map(|a| self.term(a)).collect()),
        }
    }

    fn formula(&mut self, phi: &Formula) -> bool {
        match phi {
            Formula::Bot => false,
            Formula::Atom(r, args) => {
                let vals: Vec<_> = args.iter().map(|a| self.term(a)).collect();
                self.s.holds(*r, &vals)
            }
            Formula::Imp(a, b) => !self.formula(a) || self.formula(b),
            Formula::And(a, b) => self.formula(a) && self.formula(b),
            Formula::Or(a, b) => self.formula(a) || self.formula(b),
            Formula::All(b) => self.quantify(b, true),
            Formula::Ex(b) => self.quantify(b, false),
        }
    }

    fn quantify(&mut self, body: &Formula, universal: bool) -> bool {
        for i in 0..self.dom.len() {
            let x = self.dom[i].clone();
            self.stack.push(x);
            let v = self.formula(body);
            self.stack.pop();
            if v != universal {
                return v;
            }
        }
        universal
    }
}

/// `S ⊨_base φ`, where `base(n)` is the value of the free index `n`.
pub fn satisfies<S: Structure + ?Sized>(s: &S, base: &dyn Fn(usize) -> S::Elem, phi: &Formula) -> bool {
    Evaluator { s, dom: s.elements(), base, stack: Vec::new() }.formula(phi)
}

/// Evaluates a term whose variables are read from `base`.
pub fn eval_in<S: Structure + ?Sized>(s: &S, base: &dyn Fn(usize) -> S::Elem, t: &Term) -> S::Elem {
    Evaluator { s, dom: Vec::new(), base, stack: Vec::new() }.term(t)
}

/// `ρ̂ t`.
pub fn eval_term(m: &FiniteModel, rho: &Env, t: &Term) -> usize {
    match t {
        Term::Var(n) => rho.get(*n),
        Term::App(f, args) => {
            let vals: Vec<usize> = args.iter().map(|a| eval_term(m, rho, a)).collect();
            m.apply(*f, &vals)
        }
    }
}

/// `M ⊨_ρ φ`.
pub fn sat(m: &FiniteModel, rho: &Env, phi: &Formula) -> bool {
    satisfies(m, &|n| rho.get(n), phi)
}

/// Satisfaction of a closed formula; free indices, if any, read element 0.
pub fn sat_closed<S: Structure + ?Sized>(s: &S, phi: &Formula) -> bool {
    let dom = s.elements();
    let first = dom[0].clone();
    satisfies(s, &|_| first.clone(), phi)
}
