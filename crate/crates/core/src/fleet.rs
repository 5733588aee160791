//! The property fleet: one deterministic result per checked property, driven
//! by a single seed. Reports contain counts and failure descriptions only, so
//! two runs with the same seed serialize to identical bytes.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::deduction::{check_proof, corpus, soundness_check};
use crate::gen::Gen;
use crate::henkin::{
    check_blurred_henkin, dls_pipeline, henkin_env, term_model_from_theory, truth_lemma_check, Fragment, ModelTheory,
    Mutated,
};
use crate::heyting::{dp_witness_report, rpc, validate_algebra, FiniteHeytingAlgebra, HValuation};
use crate::principles::{
    bdc2_from_ddc_bcc, blur_combinator, blur_via_dls, check_witness, complement, dc_via_dls, gadget_relation, obdc_blur,
    relation_model, BlurKind, Combinator, Instance, ObdcMode, RelationTable, Witness, WitnessKind, BLUR_BUDGET,
    DLS_BUDGET,
};
use crate::semantics::{Budget, FiniteModel, TheoryOracle};
use crate::syntax::{enum_formulas_with, print_formula, Formula, Signature, Substitution, Tail, Term};

pub const DEFAULT_SEED: u64 = 20240601;

/// Failure lists are cut to this many entries.
const MAX_FAILURES: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriterionResult {
    pub id: usize,
    pub name: String,
    pub passed: bool,
    /// Number of individual checks performed.
    pub cases: usize,
    pub summary: String,
    pub failures: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FleetReport {
    pub seed: u64,
    pub passed: bool,
    pub criteria: Vec<CriterionResult>,
}

impl FleetReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

struct Tally {
    cases: usize,
    failures: Vec<String>,
    failed: usize,
}

impl Tally {
    fn new() -> Self {
        Self { cases: 0, failures: Vec::new(), failed: 0 }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failed += 1;
            if self.failures.len() < MAX_FAILURES {
                self.failures.push(what());
            }
        }
    }

    fn finish(self, id: usize, name: &str, summary: String) -> CriterionResult {
        CriterionResult { id, name: name.into(), passed: self.failed == 0, cases: self.cases, summary, failures: self.failures }
    }
}

pub const CRITERIA: [&str; 9] = [
    "substitution laws",
    "dls pipeline",
    "blurred henkin fixed point",
    "truth lemma",
    "dc extraction",
    "exhaustive blur soundness",
    "bdc2 construction",
    "heyting countermodel",
    "soundness harness",
];

pub fn run_fleet(seed: u64) -> FleetReport {
    let criteria: Vec<CriterionResult> = (1..=CRITERIA.len()).map(|id| run_criterion(id, seed)).collect();
    FleetReport { seed, passed: criteria.iter().all(|c| c.passed), criteria }
}

/// Panics on an id outside `1..=9`.
pub fn run_criterion(id: usize, seed: u64) -> CriterionResult {
    match id {
        1 => substitution_laws(seed),
        2 => dls_fleet(seed),
        3 => blurred_henkin(seed),
        4 => truth_lemma(),
        5 => dc_extraction(seed),
        6 => blur_soundness(),
        7 => bdc2(seed),
        8 => heyting_countermodel(),
        9 => soundness_harness(),
        _ => panic!("no criterion {id}"),
    }
}

/// `f/1` and `R/2`: the signature for the exhaustive substitution sweep.
pub fn two_symbol_sig() -> Signature {
    Signature::from_pairs(&[("f", 1)], &[("R", 2)])
}

/// `c/0`, `P/1`, `R/2`.
pub fn fleet_sig() -> Signature {
    Signature::from_pairs(&[("c", 0)], &[("P", 1), ("R", 2)])
}

pub fn random_subst_sig() -> Signature {
    Signature::from_pairs(&[("c", 0), ("f", 1), ("g", 2)], &[("P", 1), ("R", 2)])
}

pub const RANDOM_FORMULAS: usize = 1000;
pub const RANDOM_FORMULA_SIZE: usize = 12;
pub const EXHAUSTIVE_SIZE: usize = 6;

/// The random half of the substitution check: `(φ, σ, τ)` triples.
pub fn random_subst_cases(seed: u64) -> Vec<(Formula, Substitution, Substitution)> {
    let sig = random_subst_sig();
    let mut g = Gen::stream(seed, 1);
    (0..RANDOM_FORMULAS)
        .map(|_| {
            let phi = g.formula(&sig, RANDOM_FORMULA_SIZE, 3);
            let sigma = g.substitution(&sig, 3);
            let tau = g.substitution(&sig, 3);
            (phi, sigma, tau)
        })
        .collect()
}

/// Fixed substitutions for the exhaustive sweep over [`two_symbol_sig`].
pub fn fixed_substitutions() -> Vec<Substitution> {
    let f = |t: Term| Term::App(0, vec![t]);
    vec![
        Substitution::identity(),
        Substitution::shift(),
        Substitution::shift_by(2),
        Substitution::single(f(Term::Var(0))),
        Substitution::from_prefix(vec![Term::Var(1), Term::Var(0)]),
        Substitution::new(vec![Term::Var(2)], Tail::Shift(-1)),
        Substitution::cyclic(vec![f(Term::Var(1)), Term::Var(0)]),
    ]
}

fn substitution_laws(seed: u64) -> CriterionResult {
    let mut t = Tally::new();
    let rs = random_subst_sig();
    for (i, (phi, sigma, tau)) in random_subst_cases(seed).iter().enumerate() {
        t.check(phi.subst(&Substitution::identity()) == *phi, || format!("random #{i}: identity law fails for {}", print_formula(&rs, phi)));
        t.check(phi.subst(sigma).subst(tau) == phi.subst(&sigma.compose(tau)), || {
            format!("random #{i}: composition law fails for {}", print_formula(&rs, phi))
        });
    }
    let sig = two_symbol_sig();
    let subs = fixed_substitutions();
    let formulas = enum_formulas_with(&sig, EXHAUSTIVE_SIZE, 2);
    let n_formulas = formulas.len();
    for phi in &formulas {
        t.check(phi.subst(&Substitution::identity()) == *phi, || format!("identity law fails for {}", print_formula(&sig, phi)));
        for (a, sigma) in subs.iter().enumerate() {
            let once = phi.subst(sigma);
            for (b, tau) in subs.iter().enumerate() {
                t.check(once.subst(tau) == phi.subst(&sigma.compose(tau)), || {
                    format!("composition law fails for {} with substitutions {a} then {b}", print_formula(&sig, phi))
                });
            }
        }
    }
    let summary = format!(
        "{RANDOM_FORMULAS} random formulas of size <= {RANDOM_FORMULA_SIZE}; {n_formulas} formulas of size <= {EXHAUSTIVE_SIZE} against {} substitution pairs",
        subs.len() * subs.len()
    );
    t.finish(1, CRITERIA[0], summary)
}

pub const DLS_MODELS: usize = 50;
pub const DLS_K: usize = 6;
pub const DLS_D: usize = 2;

/// Random models over [`fleet_sig`] with one to three elements.
pub fn dls_models(seed: u64) -> Vec<FiniteModel> {
    let sig = fleet_sig();
    let mut g = Gen::stream(seed, 2);
    (0..DLS_MODELS)
        .map(|_| {
            let n = g.range(1, 3);
            g.model(&sig, n)
        })
        .collect()
}

fn dls_fleet(seed: u64) -> CriterionResult {
    let mut t = Tally::new();
    let mut instances = 0;
    for (i, m) in dls_models(seed).iter().enumerate() {
        let r = dls_pipeline(m, DLS_K, DLS_D);
        instances += r.elementarity.instances_checked;
        t.check(r.elementarity.passed(), || format!("model #{i}: {} elementarity violations", r.elementarity.violations.len()));
        t.check(r.oracle_agreement, || format!("model #{i}: theory differs from the saturation oracle's"));
    }
    t.finish(2, CRITERIA[1], format!("{DLS_MODELS} models at (k={DLS_K}, d={DLS_D}); {instances} embedding instances"))
}

/// Every model the fleet hands to `henkin_env`, with the budget it uses.
pub fn henkin_inputs(seed: u64) -> Vec<(String, FiniteModel, usize)> {
    let mut out: Vec<(String, FiniteModel, usize)> =
        dls_models(seed).into_iter().enumerate().map(|(i, m)| (format!("dls model #{i}"), m, DLS_K)).collect();
    for (i, r) in dc_relations(seed).iter().enumerate() {
        out.push((format!("dc relation #{i}"), relation_model(r, "R"), DLS_BUDGET));
    }
    for n in 1..=BLUR_MAX_CARRIER {
        for bits in 0..1u64 << n {
            out.push((format!("predicate {bits:#b} on {n}"), relation_model(&RelationTable::from_bits(n, bits), "P"), BLUR_BUDGET));
        }
    }
    out
}

fn blurred_henkin(seed: u64) -> CriterionResult {
    let mut t = Tally::new();
    let inputs = henkin_inputs(seed);
    let mut max_stage = 0;
    for (name, m, k) in &inputs {
        let h = henkin_env(m, *k);
        let report = check_blurred_henkin(m, &h.env, *k);
        t.check(report.passed, || format!("{name}: {} Henkin failures", report.failures.len()));
        let s = h.family.stabilization;
        max_stage = max_stage.max(s);
        t.check(s <= m.domain_size(), || format!("{name}: stabilizes at stage {s} with {} elements", m.domain_size()));
    }
    t.finish(3, CRITERIA[2], format!("{} environments; largest stabilization index {max_stage}", inputs.len()))
}

/// One element with `P` true and `R` false; two elements with `f` swapping
/// them and `P = {c}`.
pub fn truth_models() -> Vec<FiniteModel> {
    let one = FiniteModel::new(fleet_sig(), 1, vec![vec![0]], vec![vec![true], vec![false]]).expect("valid");
    let two = FiniteModel::new(
        Signature::from_pairs(&[("c", 0), ("f", 1)], &[("P", 1)]),
        2,
        vec![vec![0], vec![1, 0]],
        vec![vec![true, false]],
    )
    .expect("valid");
    vec![one, two]
}

pub const TRUTH_BUDGET: Budget = Budget { size: 6, depth: 2, free_vars: crate::syntax::DEFAULT_FREE_VARS };

/// The sentence whose membership the mutation flips: the first compound
/// sentence in enumeration order.
pub fn mutation_target(sig: &Signature) -> Formula {
    enum_formulas_with(sig, TRUTH_BUDGET.size, 0)
        .into_iter()
        .find(|f| !matches!(f, Formula::Atom(..) | Formula::Bot))
        .expect("compound sentences exist")
}

fn truth_lemma() -> CriterionResult {
    let mut t = Tally::new();
    let mut instances = 0;
    for (i, m) in truth_models().iter().enumerate() {
        let delta: Arc<dyn TheoryOracle> = Arc::new(ModelTheory(m.clone()));
        let n = term_model_from_theory(m.sig().clone(), delta.clone());
        match truth_lemma_check(&n, delta.as_ref(), TRUTH_BUDGET, Fragment::Full) {
            Ok(r) => {
                instances += r.instances_checked;
                t.check(r.passed(), || format!("model #{i}: {} truth lemma violations", r.violations.len()));
            }
            Err(e) => t.check(false, || format!("model #{i}: {e}")),
        }
        let target = mutation_target(m.sig());
        let mutated: Arc<dyn TheoryOracle> = Arc::new(Mutated { inner: delta.clone(), flipped: target.clone() });
        let n2 = term_model_from_theory(m.sig().clone(), mutated.clone());
        let detected = truth_lemma_check(&n2, mutated.as_ref(), TRUTH_BUDGET, Fragment::Full).map(|r| !r.passed());
        t.check(detected == Ok(true), || format!("model #{i}: flipping {} goes unnoticed", print_formula(m.sig(), &target)));
    }
    t.finish(4, CRITERIA[3], format!("2 fixed models at (6, 2); {instances} instances; one mutation each"))
}

pub const DC_RELATIONS: usize = 20;

/// Random total binary relations on at most four elements.
pub fn dc_relations(seed: u64) -> Vec<RelationTable> {
    let mut g = Gen::stream(seed, 5);
    (0..DC_RELATIONS)
        .map(|_| {
            let n = g.range(1, 4);
            g.total_relation(n, 2)
        })
        .collect()
}

pub fn successor_mod_3() -> RelationTable {
    RelationTable::binary(3, |x, y| y == (x + 1) % 3)
}

fn dc_extraction(seed: u64) -> CriterionResult {
    let mut t = Tally::new();
    let succ = successor_mod_3();
    match dc_via_dls(&succ, 0, DLS_BUDGET) {
        Ok(g) => {
            t.check(g.cycle.len() == 3, || format!("successor mod 3: cycle length {}", g.cycle.len()));
            let ok = check_witness(WitnessKind::Path, &Instance::Relation(succ.clone()), &Witness::Lasso(g));
            t.check(ok == Ok(true), || "successor mod 3: not a path".into());
        }
        Err(e) => t.check(false, || format!("successor mod 3: {e}")),
    }
    for (i, r) in dc_relations(seed).iter().enumerate() {
        let ok = dc_via_dls(r, 0, DLS_BUDGET)
            .and_then(|g| check_witness(WitnessKind::Path, &Instance::Relation(r.clone()), &Witness::Lasso(g)));
        t.check(ok == Ok(true), || format!("relation #{i}: {ok:?}"));
    }
    t.finish(5, CRITERIA[4], format!("successor mod 3 and {DC_RELATIONS} random total relations"))
}

pub const BLUR_MAX_CARRIER: usize = 4;

fn blur_soundness() -> CriterionResult {
    let mut t = Tally::new();
    for n in 1..=BLUR_MAX_CARRIER {
        for bits in 0..1u64 << n {
            let p = RelationTable::from_bits(n, bits);
            let name = format!("predicate {bits:#b} on {n}");
            let inst = Instance::Relation(p.clone());
            let neg = Instance::Relation(complement(&p));
            let check = |kind, inst: &Instance, f: Result<_, _>| f.and_then(|f| check_witness(kind, inst, &Witness::Blur(f))) == Ok(true);
            for (kind, wk, dual) in [(BlurKind::Dp, WitnessKind::DpBlur, WitnessKind::EpBlur), (BlurKind::Ep, WitnessKind::EpBlur, WitnessKind::DpBlur)] {
                let f = blur_via_dls(&p, kind, BLUR_BUDGET);
                t.check(check(wk, &inst, f.clone()), || format!("{name}: {kind:?} blur"));
                let negated = f.and_then(|blur| blur_combinator(&Combinator::Negate { blur }));
                t.check(check(dual, &neg, negated), || format!("{name}: negated {kind:?} blur"));
                for mode in [ObdcMode::Saturate, ObdcMode::Dls] {
                    let g = gadget_relation(kind, &p).and_then(|r| obdc_blur(&r, mode));
                    t.check(check(wk, &inst, g), || format!("{name}: {kind:?} through the omniscient gadget ({mode:?})"));
                }
            }
        }
    }
    t.finish(6, CRITERIA[5], format!("all predicates on carriers of size 1..={BLUR_MAX_CARRIER}"))
}

pub const BDC2_RELATIONS: usize = 20;

/// Random total ternary relations on at most four elements.
pub fn bdc2_relations(seed: u64) -> Vec<RelationTable> {
    let mut g = Gen::stream(seed, 7);
    (0..BDC2_RELATIONS)
        .map(|_| {
            let n = g.range(1, 4);
            g.total_relation(n, 3)
        })
        .collect()
}

fn bdc2(seed: u64) -> CriterionResult {
    let mut t = Tally::new();
    let mut stages = 0;
    for (i, r) in bdc2_relations(seed).iter().enumerate() {
        match bdc2_from_ddc_bcc(r) {
            Ok(c) => {
                stages += c.stages.len();
                let ok = check_witness(WitnessKind::Bdc2, &Instance::Relation(r.clone()), &Witness::Blur(c.blur.clone()));
                t.check(ok == Ok(true), || format!("relation #{i}: R ∘ f is not total"));
                t.check(c.step_holds.iter().all(|&b| b), || format!("relation #{i}: a stage breaks the step property"));
                t.check(c.directed, || format!("relation #{i}: stages are not directed"));
            }
            Err(e) => t.check(false, || format!("relation #{i}: {e}")),
        }
    }
    t.finish(7, CRITERIA[6], format!("{BDC2_RELATIONS} random total ternary relations; {stages} stages"))
}

fn heyting_countermodel() -> CriterionResult {
    let mut t = Tally::new();
    let h = FiniteHeytingAlgebra::diamond();
    let (bot, a, b) = (h.bot(), h.element("a").expect("a"), h.element("b").expect("b"));
    let valid = validate_algebra(&h);
    t.check(valid.passed, || format!("diamond: {:?}", valid.violation));
    t.check(rpc(&h, a, bot) == b, || "rpc(a, ⊥) is not b".into());
    t.check(rpc(&h, b, bot) == a, || "rpc(b, ⊥) is not a".into());
    let mut summary = String::new();
    match dp_witness_report(&h, &HValuation::diamond_drinker(), 0) {
        Ok(r) => {
            let values: Vec<&str> = r.witnesses.iter().map(|w| w.value_label.as_str()).collect();
            t.check(values == ["b", "a"], || format!("witness values {values:?}"));
            t.check(r.join_is_top, || format!("join is {}", r.join_label));
            summary = format!("witness values {values:?}, join {}", r.join_label);
        }
        Err(e) => t.check(false, || e.to_string()),
    }
    t.finish(8, CRITERIA[7], summary)
}

pub const SOUNDNESS_MAX_DOMAIN: usize = 2;

fn soundness_harness() -> CriterionResult {
    let mut t = Tally::new();
    let entries = corpus();
    let mut models = 0;
    for e in &entries {
        let concl = check_proof(&e.sig, &e.context, &e.proof, e.classical);
        t.check(concl.as_ref() == Ok(&e.expected), || format!("{}: {concl:?}", e.name));
        match soundness_check(&e.sig, &e.context, &e.proof, e.classical, SOUNDNESS_MAX_DOMAIN) {
            Ok(r) => {
                models += r.models_of_context;
                t.check(r.passed(), || format!("{}: {} countermodels", e.name, r.violations.len()));
            }
            Err(err) => t.check(false, || format!("{}: {err}", e.name)),
        }
    }
    let classical = entries.iter().filter(|e| e.classical).count();
    t.finish(
        9,
        CRITERIA[8],
        format!("{} proofs ({classical} classical); {models} models of contexts up to size {SOUNDNESS_MAX_DOMAIN}", entries.len()),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cheap_criteria_pass() {
        for id in [4, 5, 7, 8, 9] {
            let r = run_criterion(id, DEFAULT_SEED);
            assert!(r.passed, "{r:?}");
        }
    }
}
