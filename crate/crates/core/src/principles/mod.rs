//! Finite instances of the choice and drinker principles.
//!
//! Objects indexed by ℕ are finitized: countable-choice instances carry a
//! window `[0, N)` read modulo `N`, paths are lassos, and blurs are cyclic
//! tables. Every quantifier over ℕ then ranges over one period and is
//! decided by search. Ties are always broken towards the least index.

mod blur;
mod check;
mod choice;
mod dc;
mod types;

pub use blur::{blur_combinator, blur_via_dls, complement, gadget_relation, obdc_blur, BlurKind, Combinator, ObdcMode, BLUR_BUDGET, OBDC_BUDGET};
pub use check::{
    check_bcc, check_bdc, check_bdc2, check_choice, check_ddc, check_dp_blur, check_ep_blur, check_obdc, check_path, check_witness, is_directed,
    is_total, Instance, Witness, WitnessKind, PATH_HORIZON,
};
pub use choice::{bcc_blur, bcc_from_bdc_gadget, bdc2_from_ddc_bcc, bdc2_step_holds, ddc_extract, paired_instance, BccFromBdc, Bdc2Construction, PathMode};
pub use dc::{cc_from_dc_gadget, cc_gadget, dc_from_bdc2_cc, dc_via_dls, dls_path_provider, relation_model, totality_sentence, DLS_BUDGET};
pub use types::{Blur, CcInstance, LassoSeq, PrincipleError, RelationTable};
