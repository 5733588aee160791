//! Henkin witnesses by least-index search, and the step relation on
//! environments at a formula-size budget.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::semantics::{advance, satisfies, Env, FiniteModel};
use crate::syntax::{enum_formulas_with, max_var_leaves, print_formula, Formula};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HenkinKind {
    Forall,
    Exists,
}

/// A witness for the quantifier body `body`, whose other free indices read
/// `ρ` (index `n+1` reads `ρ(n)`).
///
/// `Forall` yields the least counterexample, `Exists` the least witness; when
/// there is none, element 0 serves, since the Henkin implication then holds
/// for every element.
pub fn henkin_witness(m: &FiniteModel, rho: &Env, body: &Formula, kind: HenkinKind) -> usize {
    let holds = |a: usize| satisfies(m, &|n| if n == 0 { a } else { rho.get(n - 1) }, body);
    let found = match kind {
        HenkinKind::Forall => (0..m.domain_size()).find(|&a| !holds(a)),
        HenkinKind::Exists => (0..m.domain_size()).find(|&a| holds(a)),
    };
    found.unwrap_or(0)
}

/// Free index slots for quantifier bodies at budget `k`.
///
/// A body of size ≤ `k-1` has at most this many variable occurrences, so
/// after renaming its free indices fit below it. Renaming does not change
/// which predicates a body defines once its parameters range over a whole
/// set, so checking these canonical bodies covers every body in the budget.
pub fn body_free_slots(m: &FiniteModel, k: usize) -> usize {
    max_var_leaves(m.sig(), k.saturating_sub(1)).max(1)
}

/// Closes a set of elements under the function tables (constants included).
pub fn closure(m: &FiniteModel, seed: &BTreeSet<usize>) -> BTreeSet<usize> {
    let mut set = seed.clone();
    loop {
        let elems: Vec<usize> = set.iter().copied().collect();
        let mut grew = false;
        for (f, sym) in m.sig().functions.iter().enumerate() {
            let mut args = vec![0usize; sym.arity];
            loop {
                let v = m.apply(f, &args.iter().map(|&i| elems[i]).collect::<Vec<_>>());
                grew |= set.insert(v);
                if !advance(&mut args, elems.len()) {
                    break;
                }
            }
        }
        if !grew {
            return set;
        }
    }
}

/// One quantifier body together with values for its parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BodyInstance {
    pub body: Formula,
    /// `(free index, element)` for every free index of the body except 0.
    pub params: Vec<(usize, usize)>,
    /// `mask[a]`: the body holds with index 0 set to `a`.
    pub mask: Vec<bool>,
}

/// Every canonical body of size ≤ `k-1`, each under every assignment of its
/// parameters to elements of `params`.
pub fn body_instances(m: &FiniteModel, params: &BTreeSet<usize>, k: usize) -> Vec<BodyInstance> {
    let slots = body_free_slots(m, k);
    let values: Vec<usize> = params.iter().copied().collect();
    let bodies = enum_formulas_with(m.sig(), k.saturating_sub(1), slots);
    crate::par::par_flat_map(&bodies, |body| {
        let fv: Vec<usize> = body.free_vars().into_iter().filter(|&v| v > 0).collect();
        let mut out = Vec::new();
        if !fv.is_empty() && values.is_empty() {
            return Some(out);
        }
        let mut pick = vec![0usize; fv.len()];
        loop {
            let mut env = vec![0usize; slots + 1];
            for (&v, &i) in fv.iter().zip(&pick) {
                env[v] = values[i];
            }
            let mask = (0..m.domain_size())
                .map(|a| satisfies(m, &|n| if n == 0 { a } else { env.get(n).copied().unwrap_or(0) }, body))
                .collect();
            out.push(BodyInstance {
                body: body.clone(),
                params: fv.iter().map(|&v| (v, env[v])).collect(),
                mask,
            });
            if !advance(&mut pick, values.len()) {
                break;
            }
        }
        Some(out)
    })
    .into_iter()
    .flatten()
    .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HenkinFailure {
    pub clause: HenkinKind,
    pub formula: String,
    pub params: Vec<(usize, usize)>,
}

/// Outcome of checking the Henkin clauses at a budget.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HenkinReport {
    pub budget: usize,
    /// Whether the earlier environment is included in the later one; always
    /// true for the fixed-point check.
    pub included: bool,
    /// Body instances checked, each against both clauses.
    pub instances_checked: usize,
    pub failures: Vec<HenkinFailure>,
    pub passed: bool,
}

/// `S ρ ρ'` at budget `k`: `ρ ⊆ ρ'`, and for every quantified formula of
/// size ≤ `k` with parameters drawn from the closure of `range ρ`:
///
/// * if the body holds at every `ρ'(n)`, it holds everywhere;
/// * if it holds somewhere, it holds at some `ρ'(n)`.
///
/// Both quantifiers over `n` are decided on `range ρ'`, which is exact for
/// cyclic environments.
pub fn step_relation(m: &FiniteModel, rho: &Env, rho2: &Env, k: usize) -> HenkinReport {
    let params = closure(m, &rho.range());
    let seen: Vec<usize> = rho2.range().into_iter().collect();
    let instances = body_instances(m, &params, k);
    let mut failures = Vec::new();
    for inst in &instances {
        let everywhere = inst.mask.iter().all(|&b| b);
        let somewhere = inst.mask.iter().any(|&b| b);
        if seen.iter().all(|&a| inst.mask[a]) && !everywhere {
            failures.push(failure(m, inst, HenkinKind::Forall));
        }
        if somewhere && !seen.iter().any(|&a| inst.mask[a]) {
            failures.push(failure(m, inst, HenkinKind::Exists));
        }
    }
    let included = rho.subseteq(rho2);
    HenkinReport {
        budget: k,
        included,
        instances_checked: instances.len(),
        passed: included && failures.is_empty(),
        failures,
    }
}

fn failure(m: &FiniteModel, inst: &BodyInstance, clause: HenkinKind) -> HenkinFailure {
    let quantified = match clause {
        HenkinKind::Forall => Formula::all(inst.body.clone()),
        HenkinKind::Exists => Formula::ex(inst.body.clone()),
    };
    // params refer to body indices; shift them to the quantified formula
    HenkinFailure {
        clause,
        formula: print_formula(m.sig(), &quantified),
        params: inst.params.iter().map(|&(v, a)| (v - 1, a)).collect(),
    }
}

/// Whether `ρ` is a blurred Henkin environment at budget `k`.
pub fn check_blurred_henkin(m: &FiniteModel, rho: &Env, k: usize) -> HenkinReport {
    step_relation(m, rho, rho, k)
}

/// `[0, 1, …, n-1]`: trivially blurred Henkin, since its range is everything.
pub fn saturated_env(m: &FiniteModel) -> Env {
    Env::identity(m.domain_size())
}

/// One stage: `ρ ∪ (ρ∀ ∪ ρ∃)` with both witness tables tabulated over every
/// body instance, compacted to distinct values (ranges are all that matter).
pub fn henkin_step(m: &FiniteModel, rho: &Env, k: usize) -> Env {
    let params = closure(m, &rho.range());
    let instances = body_instances(m, &params, k);
    let least = |want: bool, mask: &[bool]| mask.iter().position(|&b| b == want).unwrap_or(0);
    let mut forall: Vec<usize> = instances.iter().map(|i| least(false, &i.mask)).collect();
    let mut exists: Vec<usize> = instances.iter().map(|i| least(true, &i.mask)).collect();
    if forall.is_empty() {
        forall.push(0);
        exists.push(0);
    }
    let witnesses = Env::new(forall).compact().union(&Env::new(exists).compact());
    rho.union(&witnesses).compact()
}
