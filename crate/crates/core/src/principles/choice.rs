//! Blurred countable choice, blurred and directed dependent choice, and the
//! staged construction of a BDC² witness from DDC and BCC.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::henkin::henkin_env;
use crate::semantics::Env;
use crate::syntax::{cantor_pair, cantor_unpair};

use super::check::{check_bcc, check_bdc, check_bdc2, check_ddc, is_directed, is_total};
use super::dc::{cc_gadget, relation_model, DLS_BUDGET};
use super::types::{Blur, CcInstance, PrincipleError, RelationTable};

/// A blurred choice function: the least image of each window index.
pub fn bcc_blur(inst: &CcInstance) -> Result<Blur, PrincipleError> {
    inst.check_total()?;
    let table = (0..inst.window)
        .map(|n| (0..inst.carrier).find(|&a| inst.get(n, a)).expect("window is total"))
        .collect();
    Blur::new(inst.carrier, table)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PathMode {
    /// Blurred path from the Henkin construction on the gadget.
    Dls,
    /// Blurred path enumerating every reachable gadget element.
    Saturate,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BccFromBdc {
    /// The blurred path through the gadget, as `(n, x)` pairs.
    pub path: Vec<(usize, usize)>,
    /// `π₂` of the path.
    pub blur: Blur,
    /// `∀n < N. ∃m. π₁(f' m) = n`, the induction step of the argument.
    pub first_projection_onto: bool,
}

/// Elements reachable from `start`, in ascending order.
fn reachable(r: &RelationTable, start: usize) -> Vec<usize> {
    let mut seen = BTreeSet::from([start]);
    let mut todo = vec![start];
    while let Some(x) = todo.pop() {
        for y in 0..r.carrier {
            if r.r2(x, y) && seen.insert(y) {
                todo.push(y);
            }
        }
    }
    seen.into_iter().collect()
}

/// A blurred choice function from a blurred path through
/// `R'(n,x)(m,y) := m = n+1 ∧ R n y`, restricted to what `(0, 0)` reaches.
pub fn bcc_from_bdc_gadget(inst: &CcInstance, mode: PathMode) -> Result<BccFromBdc, PrincipleError> {
    inst.check_total()?;
    let gadget = cc_gadget(inst);
    let live = reachable(&gadget, 0);
    let sub = RelationTable::binary(live.len(), |i, j| gadget.r2(live[i], live[j]));
    let path_idx: Vec<usize> = match mode {
        PathMode::Saturate => (0..live.len()).collect(),
        PathMode::Dls => henkin_env(&relation_model(&sub, "R"), DLS_BUDGET).env.table().to_vec(),
    };
    let f_sub = Blur::new(live.len(), path_idx.clone())?;
    if f_sub.get(0) != 0 || !check_bdc(&sub, &f_sub) {
        return Err(PrincipleError::Internal("gadget path is not a blurred path from (0,0)".into()));
    }
    let a = inst.carrier;
    let path: Vec<(usize, usize)> = path_idx.iter().map(|&i| (live[i] / a, live[i] % a)).collect();
    let first_projection_onto = (0..inst.window).all(|n| path.iter().any(|&(m, _)| m == n));
    let blur = Blur::new(a, path.iter().map(|&(_, x)| x).collect())?;
    if !check_bcc(inst, &blur) {
        return Err(PrincipleError::Internal("projection is not a blurred choice function".into()));
    }
    Ok(BccFromBdc { path, blur, first_projection_onto })
}

/// A blur `f` with `R ∘ f` directed: starting from `{0}`, repeatedly add the
/// least common upper bound of any pair that has none yet.
pub fn ddc_extract(r: &RelationTable) -> Result<Blur, PrincipleError> {
    r.expect_arity(2)?;
    if !is_directed(r) {
        return Err(PrincipleError::NotDirected("some pair has no common successor".into()));
    }
    let mut chosen = vec![0usize];
    'grow: loop {
        for i in 0..chosen.len() {
            for j in i..chosen.len() {
                let (x, y) = (chosen[i], chosen[j]);
                if !chosen.iter().any(|&z| r.r2(x, z) && r.r2(y, z)) {
                    let z = (0..r.carrier).find(|&z| r.r2(x, z) && r.r2(y, z)).expect("directed");
                    chosen.push(z);
                    continue 'grow;
                }
            }
        }
        break;
    }
    let blur = Blur::new(r.carrier, chosen)?;
    debug_assert!(check_ddc(r, &blur));
    Ok(blur)
}

/// The paired relation `R'⟨n1,n2⟩ x := R(ρ n1, ρ n2) x` on the window of all
/// codes up to `⟨L-1, L-1⟩`, which covers every pair of table positions.
pub fn paired_instance(r: &RelationTable, rho: &Env) -> CcInstance {
    let last = rho.len() as u64 - 1;
    let window = cantor_pair(last, last) as usize + 1;
    CcInstance::from_fn(window, r.carrier, |code, x| {
        let (n1, n2) = cantor_unpair(code as u64);
        r.r3(rho.get(n1 as usize), rho.get(n2 as usize), x)
    })
}

/// `S ρ ρ' := ρ ⊆ ρ' ∧ ∀n m. ∃k. R(ρ m, ρ n)(ρ' k)`.
pub fn bdc2_step_holds(r: &RelationTable, rho: &Env, rho2: &Env) -> bool {
    let (a, b) = (rho.range(), rho2.range());
    rho.subseteq(rho2) && a.iter().all(|&x| a.iter().all(|&y| b.iter().any(|&z| r.r3(y, x, z))))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bdc2Construction {
    /// `F_0 ⊆ F_1 ⊆ …`, stabilized at the last entry.
    pub stages: Vec<Env>,
    /// `S F_i F_{i+1}` for each consecutive pair, and `S F_s* F_s*`.
    pub step_holds: Vec<bool>,
    /// `S ∘ F` directed: any two stages have a common `S`-successor stage.
    pub directed: bool,
    /// `ρ⟨n1,n2⟩ := F_{n1}(n2)`, collapsed to a cyclic table.
    pub blur: Blur,
}

/// Builds `F_{i+1} := F_i ∪ ρ'` with `ρ'` a blurred choice function for the
/// paired relation at `F_i`, until the range stops growing, then merges the
/// stages through Cantor pairing.
pub fn bdc2_from_ddc_bcc(r: &RelationTable) -> Result<Bdc2Construction, PrincipleError> {
    r.expect_arity(3)?;
    if !is_total(r) {
        return Err(PrincipleError::NotTotal("some pair has no image".into()));
    }
    let mut stages = vec![Env::constant(0)];
    loop {
        let last = stages.last().expect("nonempty");
        let blurred = bcc_blur(&paired_instance(r, last))?;
        let next = last.union(&blurred.env().compact()).compact();
        if next.range() == last.range() {
            break;
        }
        stages.push(next);
    }
    let s = stages.len() - 1;
    let stage = |i: usize| &stages[i.min(s)];
    let step_holds: Vec<bool> = (0..=s).map(|i| bdc2_step_holds(r, stage(i), stage(i + 1))).collect();
    let directed = (0..=s).all(|i| (0..=s).all(|j| bdc2_step_holds(r, stage(i), stage(i.max(j) + 1)) && bdc2_step_holds(r, stage(j), stage(i.max(j) + 1))));

    let target = stages[s].range();
    let mut got = BTreeSet::new();
    let mut table = Vec::new();
    let mut code = 0u64;
    while got.len() < target.len() {
        let (n1, n2) = cantor_unpair(code);
        let v = stage(n1 as usize).get(n2 as usize);
        if got.insert(v) {
            table.push(v);
        }
        code += 1;
    }
    let blur = Blur::new(r.carrier, table)?;
    if !check_bdc2(r, &blur) {
        return Err(PrincipleError::Internal("merged environment is not a BDC² witness".into()));
    }
    Ok(Bdc2Construction { stages, step_holds, directed, blur })
}
