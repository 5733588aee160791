//! Budget-bounded theory comparison and elementarity checks.

use serde::{Deserialize, Serialize};

use crate::par::par_flat_map;
use crate::syntax::{enum_formulas_with, print_formula, Formula, DEFAULT_FREE_VARS};

use super::eval::{satisfies, sat_closed, Structure};
use super::FiniteModel;

/// How far a brute-force check looks: formulas of size ≤ `size`, term-model
/// quantifiers over terms of depth ≤ `depth`, free indices below `free_vars`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    pub size: usize,
    pub depth: usize,
    pub free_vars: usize,
}

impl Budget {
    pub fn new(size: usize, depth: usize) -> Self {
        Self { size, depth, free_vars: DEFAULT_FREE_VARS }
    }
}

/// The closed formulas of size ≤ `k` true in `s`, in enumeration order.
pub fn theory_upto<S: Structure + Sync>(s: &S, k: usize) -> Vec<Formula> {
    let sentences = enum_formulas_with(s.sig(), k, 0);
    par_flat_map(&sentences, |phi| sat_closed(s, phi).then(|| phi.clone()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivReport {
    pub size_budget: usize,
    pub sentences_checked: usize,
    /// Printed sentences on which the two sides disagree.
    pub differences: Vec<String>,
}

impl EquivReport {
    pub fn equivalent(&self) -> bool {
        self.differences.is_empty()
    }
}

/// Compares two structures over the same signature on all sentences of size ≤ `k`.
pub fn elem_equiv_upto<A, B>(a: &A, b: &B, k: usize) -> EquivReport
where
    A: Structure + Sync,
    B: Structure + Sync,
{
    let sentences = enum_formulas_with(a.sig(), k, 0);
    let differences = par_flat_map(&sentences, |phi| (sat_closed(a, phi) != sat_closed(b, phi)).then(|| print_formula(a.sig(), phi)));
    EquivReport { size_budget: k, sentences_checked: sentences.len(), differences }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddingViolation {
    pub formula: String,
    /// `(free index, source element)` pairs.
    pub assignment: Vec<(usize, String)>,
    pub source_holds: bool,
    pub target_holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddingReport {
    pub budget: Budget,
    pub formulas_checked: usize,
    pub instances_checked: usize,
    pub violations: Vec<EmbeddingViolation>,
}

impl EmbeddingReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks `src ⊨_σ φ ⇔ target ⊨_{h∘σ} φ` for every formula within the budget
/// and every assignment of its free indices to quantifier-domain elements of
/// `src`. Indices that are not free read the first domain element.
pub fn elem_embedding_upto<S, H>(src: &S, target: &FiniteModel, h: H, budget: Budget) -> EmbeddingReport
where
    S: Structure + Sync,
    S::Elem: Send + Sync,
    H: Fn(&S::Elem) -> usize + Sync,
{
    let formulas = enum_formulas_with(src.sig(), budget.size, budget.free_vars);
    let dom = src.elements();
    let images: Vec<usize> = dom.iter().map(&h).collect();
    let results = par_flat_map(&formulas, |phi| {
        let fv: Vec<usize> = phi.free_vars().into_iter().collect();
        let slots = fv.iter().max().map_or(0, |m| m + 1);
        let mut pick = vec![0usize; fv.len()];
        let mut instances = 0usize;
        let mut bad = Vec::new();
        loop {
            let mut chosen = vec![0usize; slots];
            for (&v, &i) in fv.iter().zip(&pick) {
                chosen[v] = i;
            }
            let at = |n: usize| chosen.get(n).copied().unwrap_or(0);
            let lhs = satisfies(src, &|n| dom[at(n)].clone(), phi);
            let rhs = satisfies(target, &|n| images[at(n)], phi);
            instances += 1;
            if lhs != rhs {
                bad.push(EmbeddingViolation {
                    formula: print_formula(src.sig(), phi),
                    assignment: fv.iter().zip(&pick).map(|(&v, &i)| (v, src.describe(&dom[i]))).collect(),
                    source_holds: lhs,
                    target_holds: rhs,
                });
            }
            if !advance(&mut pick, dom.len()) {
                break;
            }
        }
        Some((instances, bad))
    });
    let instances_checked = results.iter().map(|(n, _)| n).sum();
    let violations = results.into_iter().flat_map(|(_, v)| v).collect();
    EmbeddingReport { budget, formulas_checked: formulas.len(), instances_checked, violations }
}

/// Odometer step over `base^len`; false once it wraps around.
pub(crate) fn advance(digits: &mut [usize], base: usize) -> bool {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < base {
            return true;
        }
        *d = 0;
    }
    false
}
