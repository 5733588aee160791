use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::syntax::{print_term, Formula, Signature, Term};

use super::eval::{eval_term, Structure};
use super::{Env, FiniteModel};

/// Decides membership of closed formulas in some theory `Δ`.
pub trait TheoryOracle: Send + Sync {
    fn decide(&self, phi: &Formula) -> bool;
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TermModelError {
    #[error("the signature has no constant, so there are no closed terms to quantify over")]
    NoClosedTerms,
}

/// Where atom truth in a term model comes from.
#[derive(Clone)]
pub enum Backing {
    /// `P^N t⃗ := P^M(ρ̂ t⃗)`.
    Source { model: FiniteModel, env: Env },
    /// `P^N t⃗ := P t⃗ ∈ Δ`.
    Oracle(Arc<dyn TheoryOracle>),
}

impl fmt::Debug for Backing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Backing::Source { env, .. } => f.debug_struct("Source").field("env", env).finish_non_exhaustive(),
            Backing::Oracle(_) => f.write_str("Oracle"),
        }
    }
}

/// The syntactic model whose carrier is the set of terms and whose function
/// symbols are interpreted by themselves.
#[derive(Debug, Clone)]
pub struct TermModel {
    sig: Signature,
    backing: Backing,
}

/// The evaluation map `ρ̂ : Term → M` of a source-backed term model.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Embedding {
    model: FiniteModel,
    env: Env,
}

impl Embedding {
    pub fn new(model: FiniteModel, env: Env) -> Self {
        Self { model, env }
    }

    pub fn apply(&self, t: &Term) -> usize {
        eval_term(&self.model, &self.env, t)
    }

    pub fn target(&self) -> &FiniteModel {
        &self.model
    }

    pub fn env(&self) -> &Env {
        &self.env
    }
}

impl TermModel {
    pub fn from_source(model: FiniteModel, env: Env) -> Self {
        Self { sig: model.sig().clone(), backing: Backing::Source { model, env } }
    }

    pub fn from_oracle(sig: Signature, oracle: Arc<dyn TheoryOracle>) -> Self {
        Self { sig, backing: Backing::Oracle(oracle) }
    }

    pub fn sig(&self) -> &Signature {
        &self.sig
    }

    pub fn backing(&self) -> &Backing {
        &self.backing
    }

    pub fn holds(&self, r: usize, args: &[Term]) -> bool {
        match &self.backing {
            Backing::Source { model, env } => {
                let vals: Vec<usize> = args.iter().map(|t| eval_term(model, env, t)).collect();
                model.holds(r, &vals)
            }
            Backing::Oracle(delta) => delta.decide(&Formula::Atom(r, args.to_vec())),
        }
    }

    /// The view whose quantifiers range over terms of depth ≤ `depth`.
    ///
    /// Source-backed models use the variables `Var(0..|ρ|)` and the constants
    /// as leaves; since `ρ` is cyclic every other variable denotes the same as
    /// one of these. Oracle-backed models use closed terms only.
    pub fn at_depth(&self, depth: usize) -> Result<TermModelView<'_>, TermModelError> {
        let mut leaves: Vec<Term> = match &self.backing {
            Backing::Source { env, .. } => (0..env.len()).map(Term::Var).collect(),
            Backing::Oracle(_) => Vec::new(),
        };
        leaves.extend(self.sig.constants().map(Term::constant));
        if leaves.is_empty() {
            return Err(TermModelError::NoClosedTerms);
        }
        Ok(TermModelView { model: self, depth, domain: terms_upto_depth(&self.sig, leaves, depth) })
    }
}

/// All terms of depth ≤ `depth` built from `leaves`, ordered by depth and then
/// by construction order.
pub fn terms_upto_depth(sig: &Signature, leaves: Vec<Term>, depth: usize) -> Vec<Term> {
    let mut all = leaves;
    let mut seen: BTreeSet<Term> = all.iter().cloned().collect();
    let mut last_start = 0;
    for _ in 0..depth {
        let prev = all.clone();
        let fresh_from = last_start;
        let mut next = Vec::new();
        for (f, sym) in sig.functions.iter().enumerate().filter(|(_, s)| s.arity > 0) {
            let mut idx = vec![0usize; sym.arity];
            'tuples: loop {
                // at least one argument comes from the newest level
                if idx.iter().any(|&i| i >= fresh_from) {
                    let t = Term::App(f, idx.iter().map(|&i| prev[i].clone()).collect());
                    if seen.insert(t.clone()) {
                        next.push(t);
                    }
                }
                for slot in idx.iter_mut().rev() {
                    *slot += 1;
                    if *slot < prev.len() {
                        continue 'tuples;
                    }
                    *slot = 0;
                }
                break;
            }
        }
        if next.is_empty() {
            break;
        }
        last_start = all.len();
        all.extend(next);
    }
    all
}

/// A term model with quantifiers cut off at a term depth.
pub struct TermModelView<'a> {
    model: &'a TermModel,
    depth: usize,
    domain: Vec<Term>,
}

impl TermModelView<'_> {
    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn domain(&self) -> &[Term] {
        &self.domain
    }

    pub fn model(&self) -> &TermModel {
        self.model
    }
}

impl Structure for TermModelView<'_> {
    type Elem = Term;

    fn sig(&self) -> &Signature {
        &self.model.sig
    }

    fn elements(&self) -> Vec<Term> {
        self.domain.clone()
    }

    fn apply(&self, f: usize, args: Vec<Term>) -> Term {
        Term::App(f, args)
    }

    fn holds(&self, r: usize, args: &[Term]) -> bool {
        self.model.holds(r, args)
    }

    fn describe(&self, e: &Term) -> String {
        print_term(&self.model.sig, e)
    }
}
