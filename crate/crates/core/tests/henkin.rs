use std::collections::BTreeSet;
use std::sync::Arc;

use skolemkit_core::henkin::*;
use skolemkit_core::semantics::{eval_term, Budget, Env, FiniteModel, Structure, TheoryOracle};
use skolemkit_core::syntax::{enum_formulas_with, parse_formula, Formula, Signature, Term};

fn p_model(p: &[bool]) -> FiniteModel {
    let sig = Signature::from_pairs(&[], &[("P", 1)]);
    FiniteModel::new(sig, p.len(), vec![], vec![p.to_vec()]).unwrap()
}

fn fleet_sig() -> Signature {
    Signature::from_pairs(&[("c", 0)], &[("P", 1), ("R", 2)])
}

#[test]
fn witnesses_are_least() {
    let body = Formula::atom(0, vec![Term::Var(0)]);
    let rho = Env::constant(0);
    assert_eq!(henkin_witness(&p_model(&[true, false]), &rho, &body, HenkinKind::Forall), 1);
    assert_eq!(henkin_witness(&p_model(&[true, true]), &rho, &body, HenkinKind::Forall), 0);
    assert_eq!(henkin_witness(&p_model(&[false, true]), &rho, &body, HenkinKind::Exists), 1);
}

#[test]
fn step_adds_the_counterexample() {
    let m = p_model(&[true, false]);
    let rho = Env::constant(0);
    let next = henkin_step(&m, &rho, 3);
    assert_eq!(next.range(), BTreeSet::from([0, 1]));
    assert!(step_relation(&m, &rho, &next, 3).passed);
    let sat = saturated_env(&m);
    assert_eq!(henkin_step(&m, &sat, 5).range(), sat.range());

    let report = check_blurred_henkin(&m, &rho, 3);
    assert!(!report.passed);
    assert!(report.failures.iter().any(|f| f.clause == HenkinKind::Forall && f.formula == "forall x0. P(x0)"));
}

#[test]
fn staged_environments() {
    let one = p_model(&[true]);
    let h = henkin_env(&one, 4);
    assert_eq!(h.env.table(), &[0]);
    assert_eq!(h.family.stabilization, 0);
    assert_eq!(h.env, saturated_env(&one));

    let m = p_model(&[true, false]);
    let h = henkin_env(&m, 4);
    assert_eq!(h.env.range(), BTreeSet::from([0, 1]));
    for w in h.family.stages.windows(2) {
        assert!(w[0].subseteq(&w[1]));
    }
    assert!(check_blurred_henkin(&m, &h.env, 4).passed);
}

#[test]
fn merged_accessor_is_literal() {
    let m = FiniteModel::new(
        fleet_sig(),
        3,
        vec![vec![2]],
        vec![vec![true, false, false], vec![false, true, false, false, false, true, true, false, false]],
    )
    .unwrap();
    let h = henkin_env(&m, 5);
    let f = &h.family;
    for code in 0..200u64 {
        let (n1, n2) = skolemkit_core::syntax::cantor_unpair(code);
        let i = (n1 as usize).min(f.stabilization);
        assert_eq!(f.merged(code), f.stages[i].get(n2 as usize));
    }
    assert_eq!(h.env.range(), f.stages[f.stabilization].range());
    assert!(f.stabilization <= m.domain_size());
}

#[test]
fn submodel_atoms_follow_the_embedding() {
    let m = FiniteModel::new(
        Signature::from_pairs(&[("c", 0), ("f", 1)], &[("P", 1)]),
        3,
        vec![vec![1], vec![2, 0, 0]],
        vec![vec![false, true, true]],
    )
    .unwrap();
    let rho = Env::new(vec![2, 0]);
    let (n, h) = syntactic_submodel(&m, &rho);
    assert_eq!(h.apply(&Term::Var(3)), rho.get(3));
    let fc = Term::App(1, vec![Term::constant(0)]);
    assert_eq!(h.apply(&fc), m.apply(1, &[h.apply(&Term::constant(0))]));
    let view = n.at_depth(3).unwrap();
    for t in view.domain() {
        assert_eq!(view.holds(0, std::slice::from_ref(t)), m.holds(0, &[eval_term(&m, &rho, t)]));
    }
}

#[test]
fn pipeline_on_two_elements() {
    let m = p_model(&[true, false]);
    let r = dls_pipeline(&m, 6, 2);
    assert!(r.passed(), "{}", render_dls(&r));
    let phi = parse_formula("(exists x. P(x)) /\\ exists x. ~P(x)", m.sig()).unwrap();
    let (n, _) = syntactic_submodel(&m, &r.env);
    let view = n.at_depth(2).unwrap();
    assert!(skolemkit_core::semantics::sat_closed(&view, &phi));
    let one = p_model(&[true]);
    let r = dls_pipeline(&one, 7, 3);
    assert!(r.elementarity.passed() && r.oracle_agreement);
}

#[test]
fn witness_property_pipeline() {
    // c = 0, f swaps
    let m = FiniteModel::new(
        Signature::from_pairs(&[("c", 0), ("f", 1)], &[("P", 1)]),
        2,
        vec![vec![0], vec![1, 0]],
        vec![vec![true, false]],
    )
    .unwrap();
    let rho = witness_property_env(&m, 1).expect("every element is named");
    assert_eq!(rho.table(), &[0, 1]);
    assert!(dls_with_env(&m, &rho, Budget::new(6, 2)).passed());
    // nothing names element 1 when f is constant
    let m2 = FiniteModel::new(m.sig().clone(), 2, vec![vec![0], vec![0, 0]], vec![vec![true, false]]).unwrap();
    assert_eq!(witness_property_env(&m2, 3), None);
}

fn truth_models() -> Vec<FiniteModel> {
    let one = FiniteModel::new(fleet_sig(), 1, vec![vec![0]], vec![vec![true], vec![false]]).unwrap();
    let two = FiniteModel::new(
        Signature::from_pairs(&[("c", 0), ("f", 1)], &[("P", 1)]),
        2,
        vec![vec![0], vec![1, 0]],
        vec![vec![true, false]],
    )
    .unwrap();
    vec![one, two]
}

#[test]
fn truth_lemma_holds_and_detects_mutation() {
    for m in truth_models() {
        let delta: Arc<dyn TheoryOracle> = Arc::new(ModelTheory(m.clone()));
        let n = term_model_from_theory(m.sig().clone(), delta.clone());
        let r = truth_lemma_check(&n, delta.as_ref(), Budget::new(6, 2), Fragment::Full).unwrap();
        assert!(r.passed(), "{:?}", &r.violations[..r.violations.len().min(3)]);
        let target = enum_formulas_with(m.sig(), 6, 0).into_iter().find(|f| !matches!(f, Formula::Atom(..) | Formula::Bot)).unwrap();
        let mutated = Mutated { inner: delta.clone(), flipped: target };
        let n2 = term_model_from_theory(m.sig().clone(), Arc::new(Mutated { inner: delta.clone(), flipped: mutated.flipped.clone() }));
        let r = truth_lemma_check(&n2, &mutated, Budget::new(6, 2), Fragment::Full).unwrap();
        assert!(!r.passed());
    }
}

#[test]
fn theory_oracles_on_atoms() {
    let sig = Signature::from_pairs(&[("c", 0)], &[("P", 1)]);
    let p_c = Formula::atom(0, vec![Term::constant(0)]);
    let empty = term_model_from_theory(sig.clone(), Arc::new(Theory(BTreeSet::new())));
    assert!(!empty.holds(0, &[Term::constant(0)]));
    let full = term_model_from_theory(sig.clone(), Arc::new(Theory(BTreeSet::from([p_c]))));
    assert!(full.holds(0, &[Term::constant(0)]));
    let one = FiniteModel::new(sig.clone(), 1, vec![vec![0]], vec![vec![true]]).unwrap();
    let delta: Arc<dyn TheoryOracle> = Arc::new(ModelTheory(one));
    let n = term_model_from_theory(sig.clone(), delta.clone());
    let all_p = parse_formula("forall x. P(x)", &sig).unwrap();
    assert!(delta.decide(&all_p));
    assert!(skolemkit_core::semantics::sat_closed(&n.at_depth(2).unwrap(), &all_p));
}
