//! Contracts of the principles, checked exhaustively at finite scale.
//!
//! Quantifiers over ℕ-indices of a cyclic table are decided on one period.

use serde::{Deserialize, Serialize};

use super::types::{Blur, CcInstance, LassoSeq, PrincipleError, RelationTable};

/// Paths are always checked at least this far, however short their period.
pub const PATH_HORIZON: usize = 100;

pub fn is_total(r: &RelationTable) -> bool {
    let n = r.carrier;
    match r.arity {
        2 => (0..n).all(|x| (0..n).any(|y| r.r2(x, y))),
        3 => (0..n).all(|x| (0..n).all(|y| (0..n).any(|z| r.r3(x, y, z)))),
        _ => false,
    }
}

pub fn is_directed(r: &RelationTable) -> bool {
    let n = r.carrier;
    r.arity == 2 && (0..n).all(|x| (0..n).all(|y| (0..n).any(|z| r.r2(x, z) && r.r2(y, z))))
}

/// `R(g n, g (n+1))` for every `n`.
pub fn check_path(r: &RelationTable, g: &LassoSeq) -> bool {
    let horizon = PATH_HORIZON.max(g.period_horizon() + 1);
    (0..horizon).all(|n| g.get(n) < r.carrier && r.r2(g.get(n), g.get(n + 1)))
}

/// `(∀n. P(f n)) → ∀x. P x`.
pub fn check_dp_blur(p: &RelationTable, f: &Blur) -> bool {
    !f.table.iter().all(|&x| p.p(x)) || (0..p.carrier).all(|x| p.p(x))
}

/// `(∃x. P x) → ∃n. P(f n)`.
pub fn check_ep_blur(p: &RelationTable, f: &Blur) -> bool {
    !(0..p.carrier).any(|x| p.p(x)) || f.table.iter().any(|&x| p.p(x))
}

/// `R(n, choice n)` on the window.
pub fn check_choice(inst: &CcInstance, choice: &[usize]) -> bool {
    choice.len() == inst.window && choice.iter().enumerate().all(|(n, &a)| a < inst.carrier && inst.get(n, a))
}

/// `∀n. ∃m. R n (f m)` on the window.
pub fn check_bcc(inst: &CcInstance, f: &Blur) -> bool {
    (0..inst.window).all(|n| f.table.iter().any(|&a| inst.get(n, a)))
}

/// `R ∘ f` total: `∀i. ∃j. R(f i, f j)`.
pub fn check_bdc(r: &RelationTable, f: &Blur) -> bool {
    f.table.iter().all(|&x| f.table.iter().any(|&y| r.r2(x, y)))
}

/// `R ∘ f` directed.
pub fn check_ddc(r: &RelationTable, f: &Blur) -> bool {
    let t = &f.table;
    t.iter().all(|&x| t.iter().all(|&y| t.iter().any(|&z| r.r2(x, z) && r.r2(y, z))))
}

/// `R ∘ f` total for a relation on pairs: `∀i j. ∃k. R(f i, f j)(f k)`.
pub fn check_bdc2(r: &RelationTable, f: &Blur) -> bool {
    let t = &f.table;
    t.iter().all(|&x| t.iter().all(|&y| t.iter().any(|&z| r.r3(x, y, z))))
}

/// `total R ↔ total (R ∘ f)`.
pub fn check_obdc(r: &RelationTable, f: &Blur) -> bool {
    is_total(r) == check_bdc2(r, f)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WitnessKind {
    Path,
    DpBlur,
    EpBlur,
    Choice,
    Bcc,
    Bdc,
    Ddc,
    Bdc2,
    Obdc,
}

/// What a witness is claimed to be a witness for.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Instance {
    Relation(RelationTable),
    Window(CcInstance),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Witness {
    Lasso(LassoSeq),
    Blur(Blur),
    Choice(Vec<usize>),
}

/// Uniform entry point over every contract above.
pub fn check_witness(kind: WitnessKind, instance: &Instance, witness: &Witness) -> Result<bool, PrincipleError> {
    let shape = |what: &str| Err(PrincipleError::Shape(format!("{kind:?} expects {what}")));
    let fits = |f: &Blur, carrier: usize| -> Result<(), PrincipleError> {
        f.validate()?;
        if f.carrier == carrier {
            Ok(())
        } else {
            Err(PrincipleError::Shape(format!("blur over {} elements for a carrier of {carrier}", f.carrier)))
        }
    };
    match (kind, instance, witness) {
        (WitnessKind::Path, Instance::Relation(r), Witness::Lasso(g)) => {
            r.expect_arity(2)?;
            Ok(check_path(r, g))
        }
        (WitnessKind::DpBlur | WitnessKind::EpBlur, Instance::Relation(p), Witness::Blur(f)) => {
            p.expect_arity(1)?;
            fits(f, p.carrier)?;
            Ok(if kind == WitnessKind::DpBlur { check_dp_blur(p, f) } else { check_ep_blur(p, f) })
        }
        (WitnessKind::Choice, Instance::Window(c), Witness::Choice(choice)) => {
            c.validate()?;
            Ok(check_choice(c, choice))
        }
        (WitnessKind::Bcc, Instance::Window(c), Witness::Blur(f)) => {
            c.validate()?;
            fits(f, c.carrier)?;
            Ok(check_bcc(c, f))
        }
        (WitnessKind::Bdc | WitnessKind::Ddc, Instance::Relation(r), Witness::Blur(f)) => {
            r.expect_arity(2)?;
            fits(f, r.carrier)?;
            Ok(if kind == WitnessKind::Bdc { check_bdc(r, f) } else { check_ddc(r, f) })
        }
        (WitnessKind::Bdc2 | WitnessKind::Obdc, Instance::Relation(r), Witness::Blur(f)) => {
            r.expect_arity(3)?;
            fits(f, r.carrier)?;
            Ok(if kind == WitnessKind::Bdc2 { check_bdc2(r, f) } else { check_obdc(r, f) })
        }
        (WitnessKind::Path, ..) => shape("a binary relation and a lasso"),
        (WitnessKind::Choice, ..) => shape("a window instance and a choice table"),
        (WitnessKind::Bcc, ..) => shape("a window instance and a blur"),
        _ => shape("a relation and a blur"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn totality_and_directedness() {
        let full = RelationTable::binary(3, |_, _| true);
        assert!(is_total(&full) && is_directed(&full));
        let empty = RelationTable::binary(2, |_, _| false);
        assert!(!is_total(&empty) && !is_directed(&empty));
        let succ = RelationTable::binary(3, |x, y| y == (x + 1) % 3);
        assert!(is_total(&succ) && !is_directed(&succ));
    }

    #[test]
    fn dispatch_rejects_mismatched_shapes() {
        let r = Instance::Relation(RelationTable::binary(2, |_, _| true));
        let f = Witness::Blur(Blur::identity(2));
        assert!(check_witness(WitnessKind::Ddc, &r, &f).unwrap());
        assert!(matches!(check_witness(WitnessKind::Bdc2, &r, &f), Err(PrincipleError::Shape(_))));
        assert!(matches!(check_witness(WitnessKind::Path, &r, &f), Err(PrincipleError::Shape(_))));
    }
}
