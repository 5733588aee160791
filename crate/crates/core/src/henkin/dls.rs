//! Syntactic elementary submodels and the end-to-end pipeline.

use serde::{Deserialize, Serialize};

use crate::semantics::{
    elem_embedding_upto, eval_term, terms_upto_depth, theory_upto, Budget, EmbeddingReport, Embedding, Env, FiniteModel,
    Structure, TermModel,
};
use crate::syntax::Term;

use super::stages::{henkin_env, StageFamily};
use super::witness::{check_blurred_henkin, saturated_env, HenkinReport};

/// `N` with `f^N t⃗ := f t⃗` and `P^N t⃗ := P^M(ρ̂ t⃗)`, plus `h = ρ̂`.
pub fn syntactic_submodel(m: &FiniteModel, rho: &Env) -> (TermModel, Embedding) {
    (TermModel::from_source(m.clone(), rho.clone()), Embedding::new(m.clone(), rho.clone()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelSummary {
    pub domain_size: usize,
    pub functions: Vec<String>,
    pub relations: Vec<String>,
}

impl ModelSummary {
    pub fn of(m: &FiniteModel) -> Self {
        let show = |s: &crate::syntax::Symbol| format!("{}/{}", s.name, s.arity);
        Self {
            domain_size: m.domain_size(),
            functions: m.sig().functions.iter().map(show).collect(),
            relations: m.sig().relations.iter().map(show).collect(),
        }
    }
}

/// The depth-bounded slice of `N` that was checked, with `h` on each term.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermModelSummary {
    pub depth: usize,
    /// `(term, h(term))` for every term the quantifiers range over.
    pub embedding: Vec<(String, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DlsReport {
    pub model: ModelSummary,
    pub budget: Budget,
    /// How `ρ` was obtained: `henkin` or `saturate`, or `given`.
    pub env_source: String,
    pub env: Env,
    /// The stage family, when `ρ` came from the staged construction.
    pub stages: Option<StageFamily>,
    pub henkin: HenkinReport,
    pub term_model: TermModelSummary,
    pub elementarity: EmbeddingReport,
    /// Sentences of size ≤ k true in `N`.
    pub theory_size: usize,
    /// Whether `N` and the submodel built on the saturated environment have
    /// exactly the same theory up to the budget.
    pub oracle_agreement: bool,
}

impl DlsReport {
    pub fn passed(&self) -> bool {
        self.henkin.passed && self.elementarity.passed() && self.oracle_agreement
    }
}

/// Builds `ρ` by the staged construction at budget `k`, extracts the
/// syntactic submodel and checks it at `(k, d)`.
pub fn dls_pipeline(m: &FiniteModel, k: usize, d: usize) -> DlsReport {
    let h = henkin_env(m, k);
    let mut report = dls_with_env(m, &h.env, Budget::new(k, d));
    report.env_source = "henkin".into();
    report.stages = Some(h.family);
    report
}

/// The pipeline for a given environment.
pub fn dls_with_env(m: &FiniteModel, rho: &Env, budget: Budget) -> DlsReport {
    let k = budget.size;
    let henkin = check_blurred_henkin(m, rho, k);
    let (n, h) = syntactic_submodel(m, rho);
    let view = n.at_depth(budget.depth).expect("source-backed term models always have leaves");
    let elementarity = elem_embedding_upto(&view, m, |t| h.apply(t), budget);
    let theory = theory_upto(&view, k);

    let (oracle_n, _) = syntactic_submodel(m, &saturated_env(m));
    let oracle_view = oracle_n.at_depth(budget.depth).expect("leaves");
    let oracle_agreement = theory == theory_upto(&oracle_view, k);

    let embedding = view.domain().iter().map(|t| (view.describe(t), h.apply(t))).collect();
    DlsReport {
        model: ModelSummary::of(m),
        budget,
        env_source: "given".into(),
        env: rho.clone(),
        stages: None,
        henkin,
        term_model: TermModelSummary { depth: budget.depth, embedding },
        elementarity,
        theory_size: theory.len(),
        oracle_agreement,
    }
}

/// When every element is the value of a closed term of depth ≤ `d`, the
/// environment listing those values in term order (repeats dropped).
pub fn witness_property_env(m: &FiniteModel, d: usize) -> Option<Env> {
    let leaves: Vec<Term> = m.sig().constants().map(Term::constant).collect();
    if leaves.is_empty() {
        return None;
    }
    let dummy = Env::constant(0);
    let mut table = Vec::new();
    for t in terms_upto_depth(m.sig(), leaves, d) {
        let v = eval_term(m, &dummy, &t);
        if !table.contains(&v) {
            table.push(v);
        }
    }
    (table.len() == m.domain_size()).then(|| Env::new(table))
}

/// Human-readable summary.
pub fn render_dls(r: &DlsReport) -> String {
    let mut out = String::new();
    let verdict = |b: bool| if b { "pass" } else { "FAIL" };
    out.push_str(&format!(
        "model: domain {} functions [{}] relations [{}]\n",
        r.model.domain_size,
        r.model.functions.join(", "),
        r.model.relations.join(", ")
    ));
    out.push_str(&format!("budget: k={} d={}\n", r.budget.size, r.budget.depth));
    out.push_str(&format!("env ({}): {:?}", r.env_source, r.env.table()));
    if let Some(f) = &r.stages {
        out.push_str(&format!(", stabilized at s*={}", f.stabilization));
    }
    out.push('\n');
    out.push_str(&format!(
        "blurred Henkin: {} ({} instances)\n",
        verdict(r.henkin.passed),
        r.henkin.instances_checked
    ));
    for fl in r.henkin.failures.iter().take(5) {
        out.push_str(&format!("  {:?} clause fails: {} with {:?}\n", fl.clause, fl.formula, fl.params));
    }
    let terms: Vec<String> = r.term_model.embedding.iter().map(|(t, v)| format!("{t}↦{v}")).collect();
    out.push_str(&format!("h on depth-{} terms: {}\n", r.term_model.depth, terms.join(" ")));
    out.push_str(&format!(
        "elementarity: {} ({} formulas, {} instances, {} violations)\n",
        verdict(r.elementarity.passed()),
        r.elementarity.formulas_checked,
        r.elementarity.instances_checked,
        r.elementarity.violations.len()
    ));
    for v in r.elementarity.violations.iter().take(5) {
        out.push_str(&format!("  {} under {:?}: N={} M={}\n", v.formula, v.assignment, v.source_holds, v.target_holds));
    }
    out.push_str(&format!(
        "theory: {} sentences; saturation oracle agreement: {}\n",
        r.theory_size,
        verdict(r.oracle_agreement)
    ));
    out.push_str(&format!("overall: {}\n", verdict(r.passed())));
    out
}
