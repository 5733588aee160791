//! Staged construction of a blurred Henkin environment.

use serde::{Deserialize, Serialize};

use crate::semantics::{Env, FiniteModel};
use crate::syntax::cantor_unpair;

use super::witness::henkin_step;

/// `F_0 ⊆ F_1 ⊆ … ⊆ F_s*`, where `s*` is the first stage whose successor adds
/// no new element. Stages past `s*` are taken to equal `F_s*`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StageFamily {
    pub stages: Vec<Env>,
    pub stabilization: usize,
    pub budget: usize,
}

impl StageFamily {
    pub fn stage(&self, i: usize) -> &Env {
        &self.stages[i.min(self.stabilization)]
    }

    /// `ρ⟨n1,n2⟩ := F_{n1}(n2)`, read literally through Cantor unpairing.
    pub fn merged(&self, code: u64) -> usize {
        let (n1, n2) = cantor_unpair(code);
        self.stage(n1 as usize).get(n2 as usize)
    }

    /// The merged environment as a cyclic table: the values of
    /// [`StageFamily::merged`] at codes 0, 1, 2, … (repeats dropped) until
    /// they cover the range of the last stage.
    pub fn collapse(&self) -> Env {
        let target = self.stages[self.stabilization].range();
        let mut got = std::collections::BTreeSet::new();
        let mut table = Vec::new();
        let mut code = 0u64;
        while got.len() < target.len() {
            let v = self.merged(code);
            if got.insert(v) {
                table.push(v);
            }
            code += 1;
        }
        Env::new(table)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HenkinEnv {
    pub env: Env,
    pub family: StageFamily,
}

/// Iterates [`henkin_step`] from `[0]` until the range stops growing.
pub fn henkin_env(m: &FiniteModel, k: usize) -> HenkinEnv {
    henkin_env_from(m, Env::constant(0), k)
}

/// As [`henkin_env`] from a chosen first stage.
///
/// Every non-final step adds an element, so this stops after at most
/// `domain_size` steps.
pub fn henkin_env_from(m: &FiniteModel, initial: Env, k: usize) -> HenkinEnv {
    assert!(initial.fits(m.domain_size()), "initial environment leaves the domain");
    let mut stages = vec![initial];
    loop {
        let last = stages.last().expect("nonempty");
        let next = henkin_step(m, last, k);
        if next.range() == last.range() {
            break;
        }
        stages.push(next);
    }
    let family = StageFamily { stabilization: stages.len() - 1, stages, budget: k };
    HenkinEnv { env: family.collapse(), family }
}
