//! Henkin witnesses, the step relation, staged Henkin environments, syntactic
//! submodels and the downward Löwenheim–Skolem pipeline.
//!
//! Everything is bounded by a formula-size budget `k`: "every formula" means
//! every quantified formula of size ≤ `k`, whose body therefore has size
//! ≤ `k-1`. Witness search replaces the choice and excluded-middle steps of
//! the infinite construction, which is possible because finite models decide
//! satisfaction.

mod dls;
mod stages;
mod truth;
mod witness;

pub use dls::{dls_pipeline, dls_with_env, render_dls, syntactic_submodel, witness_property_env, DlsReport, ModelSummary, TermModelSummary};
pub use stages::{henkin_env, henkin_env_from, HenkinEnv, StageFamily};
pub use truth::{term_model_from_theory, truth_lemma_check, Fragment, ModelTheory, Mutated, Theory, TruthLemmaReport, TruthLemmaViolation};
pub use witness::{
    body_free_slots, body_instances, check_blurred_henkin, closure, henkin_step, henkin_witness, saturated_env, step_relation,
    BodyInstance, HenkinFailure, HenkinKind, HenkinReport,
};
