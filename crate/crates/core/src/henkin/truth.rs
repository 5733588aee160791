//! Term models built from a theory oracle, and the Truth Lemma check.

use std::collections::BTreeSet;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::par::par_flat_map;
use crate::semantics::{advance, sat_closed, satisfies, Budget, FiniteModel, TermModel, TermModelError, TheoryOracle};
use crate::syntax::{enum_formulas_with, print_formula, Formula, Signature, Substitution};

/// `Δ` = the full theory of a finite model, decided by evaluation.
pub struct ModelTheory(pub FiniteModel);

impl TheoryOracle for ModelTheory {
    fn decide(&self, phi: &Formula) -> bool {
        sat_closed(&self.0, phi)
    }
}

/// `Δ` given as an explicit set of sentences.
pub struct Theory(pub BTreeSet<Formula>);

impl TheoryOracle for Theory {
    fn decide(&self, phi: &Formula) -> bool {
        self.0.contains(phi)
    }
}

/// `Δ` with membership of a single sentence flipped.
pub struct Mutated {
    pub inner: Arc<dyn TheoryOracle>,
    pub flipped: Formula,
}

impl TheoryOracle for Mutated {
    fn decide(&self, phi: &Formula) -> bool {
        self.inner.decide(phi) != (*phi == self.flipped)
    }
}

/// `N` with `P^N t⃗ := P t⃗ ∈ Δ` over closed terms.
pub fn term_model_from_theory(sig: Signature, delta: Arc<dyn TheoryOracle>) -> TermModel {
    TermModel::from_oracle(sig, delta)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Fragment {
    Full,
    /// Only formulas built from `⊥`, `→`, `∀`.
    Negative,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TruthLemmaViolation {
    pub formula: String,
    /// The closed instance `φ[σ]`.
    pub instance: String,
    pub model_holds: bool,
    pub in_theory: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TruthLemmaReport {
    pub budget: Budget,
    pub fragment: Fragment,
    pub formulas_checked: usize,
    pub instances_checked: usize,
    pub violations: Vec<TruthLemmaViolation>,
}

impl TruthLemmaReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks `N ⊨_σ φ ⇔ φ[σ] ∈ Δ` for every formula within the budget and every
/// assignment of closed terms of depth ≤ `d` to its free indices.
pub fn truth_lemma_check(
    n: &TermModel,
    delta: &dyn TheoryOracle,
    budget: Budget,
    fragment: Fragment,
) -> Result<TruthLemmaReport, TermModelError> {
    let view = n.at_depth(budget.depth)?;
    let dom = view.domain().to_vec();
    let formulas: Vec<Formula> = enum_formulas_with(n.sig(), budget.size, budget.free_vars)
        .into_iter()
        .filter(|f| fragment == Fragment::Full || f.is_negative())
        .collect();
    let results = par_flat_map(&formulas, |phi| {
        let fv: Vec<usize> = phi.free_vars().into_iter().collect();
        let slots = fv.iter().max().map_or(0, |m| m + 1);
        let mut pick = vec![0usize; fv.len()];
        let mut bad = Vec::new();
        let mut count = 0;
        loop {
            let mut terms = vec![dom[0].clone(); slots];
            for (&v, &i) in fv.iter().zip(&pick) {
                terms[v] = dom[i].clone();
            }
            let instance = phi.subst(&Substitution::from_prefix(terms.clone()));
            let model_holds = satisfies(&view, &|k| terms.get(k).cloned().unwrap_or_else(|| dom[0].clone()), phi);
            let in_theory = delta.decide(&instance);
            count += 1;
            if model_holds != in_theory {
                bad.push(TruthLemmaViolation {
                    formula: print_formula(n.sig(), phi),
                    instance: print_formula(n.sig(), &instance),
                    model_holds,
                    in_theory,
                });
            }
            if !advance(&mut pick, dom.len()) {
                break;
            }
        }
        Some((count, bad))
    });
    Ok(TruthLemmaReport {
        budget,
        fragment,
        formulas_checked: formulas.len(),
        instances_checked: results.iter().map(|(c, _)| c).sum(),
        violations: results.into_iter().flat_map(|(_, b)| b).collect(),
    })
}
