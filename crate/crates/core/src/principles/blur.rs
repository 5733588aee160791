//! Henkin blurs for predicates, their combinators, and the omniscient
//! blurred choice gadgets.

use serde::{Deserialize, Serialize};

use crate::henkin::{henkin_env, syntactic_submodel};
use crate::semantics::sat_closed;
use crate::syntax::Term;

use super::check::{check_obdc, is_total};
use super::dc::{relation_model, totality_sentence};
use super::types::{Blur, PrincipleError, RelationTable};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BlurKind {
    /// Drinker: `(∀n. P(f n)) → ∀x. P x`.
    Dp,
    /// Dual: `(∃x. P x) → ∃n. P(f n)`.
    Ep,
}

/// Budget for [`blur_via_dls`]; `∀x. P x` has size 3.
pub const BLUR_BUDGET: usize = 3;

/// Budget for the routed OBDC mode; `∀x∀y∃z. R(x,y,z)` has size 7.
pub const OBDC_BUDGET: usize = 7;

/// A Henkin blur for `P` read off the syntactic submodel of `P` seen as a
/// model: `h ∘ f` with `f` the identity on term indices. The same
/// environment serves both kinds; `kind` only selects the contract that is
/// verified.
pub fn blur_via_dls(p: &RelationTable, kind: BlurKind, k: usize) -> Result<Blur, PrincipleError> {
    p.expect_arity(1)?;
    let m = relation_model(p, "P");
    let rho = henkin_env(&m, k).env;
    let (_, h) = syntactic_submodel(&m, &rho);
    let blur = Blur::new(p.carrier, (0..rho.len()).map(|i| h.apply(&Term::Var(i))).collect())?;
    let ok = match kind {
        BlurKind::Dp => super::check::check_dp_blur(p, &blur),
        BlurKind::Ep => super::check::check_ep_blur(p, &blur),
    };
    if ok {
        Ok(blur)
    } else {
        Err(PrincipleError::Internal(format!("{kind:?} contract fails for the extracted blur")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "kind")]
pub enum Combinator {
    /// `f1 ∘ f2`, where `f2` is a blur over the indices `[0, |f1|)` of `f1`.
    Compose { outer: Blur, inner: Blur },
    /// The constant blur `[x]` over a carrier.
    Const { carrier: usize, element: usize },
    /// The same table, read as a drinker blur for the complement predicate.
    Negate { blur: Blur },
}

pub fn blur_combinator(c: &Combinator) -> Result<Blur, PrincipleError> {
    match c {
        Combinator::Compose { outer, inner } => {
            outer.validate()?;
            inner.validate()?;
            if inner.carrier != outer.len() {
                return Err(PrincipleError::Shape(format!(
                    "inner blur ranges over {} indices but the outer table has {}",
                    inner.carrier,
                    outer.len()
                )));
            }
            Blur::new(outer.carrier, inner.table.iter().map(|&i| outer.get(i)).collect())
        }
        Combinator::Const { carrier, element } => Blur::new(*carrier, vec![*element]),
        Combinator::Negate { blur } => {
            blur.validate()?;
            Ok(blur.clone())
        }
    }
}

/// The complement of a predicate.
pub fn complement(p: &RelationTable) -> RelationTable {
    RelationTable::unary(p.carrier, |x| !p.p(x))
}

/// `R(x,y)z := P x` (drinker) or `R(x,y)z := P z` (dual).
pub fn gadget_relation(kind: BlurKind, p: &RelationTable) -> Result<RelationTable, PrincipleError> {
    p.expect_arity(1)?;
    Ok(match kind {
        BlurKind::Dp => RelationTable::ternary(p.carrier, |x, _, _| p.p(x)),
        BlurKind::Ep => RelationTable::ternary(p.carrier, |_, _, z| p.p(z)),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ObdcMode {
    /// The whole carrier; surjectivity makes the biconditional immediate.
    Saturate,
    /// Through the syntactic submodel: `f` is the identity on term indices.
    Dls,
}

/// `f` with `total R ↔ total (R ∘ f)`. No totality precondition.
pub fn obdc_blur(r: &RelationTable, mode: ObdcMode) -> Result<Blur, PrincipleError> {
    r.expect_arity(3)?;
    let blur = match mode {
        ObdcMode::Saturate => Blur::identity(r.carrier),
        ObdcMode::Dls => {
            let m = relation_model(r, "R");
            let rho = henkin_env(&m, OBDC_BUDGET).env;
            let (n, h) = syntactic_submodel(&m, &rho);
            let view = n.at_depth(0).expect("variables are leaves");
            if sat_closed(&view, &totality_sentence(3)) != is_total(r) {
                return Err(PrincipleError::Internal("submodel totality differs from the model's".into()));
            }
            Blur::new(r.carrier, (0..rho.len()).map(|i| h.apply(&Term::Var(i))).collect())?
        }
    };
    if check_obdc(r, &blur) {
        Ok(blur)
    } else {
        Err(PrincipleError::Internal("biconditional fails".into()))
    }
}
