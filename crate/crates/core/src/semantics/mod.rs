//! Tarski semantics over explicit finite models, cyclic environments, term
//! models, and budget-bounded elementarity checks.

mod checks;
mod env;
mod eval;
mod model;
mod term_model;

pub use checks::{elem_embedding_upto, elem_equiv_upto, theory_upto, Budget, EmbeddingReport, EmbeddingViolation, EquivReport};
pub(crate) use checks::advance;
pub use env::Env;
pub use eval::{eval_in, eval_term, sat, sat_closed, satisfies, Structure};
pub use model::{AllModels, FiniteModel, ModelError, ModelFile};
pub use term_model::{terms_upto_depth, Backing, Embedding, TermModel, TermModelError, TermModelView, TheoryOracle};
