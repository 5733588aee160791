use std::collections::BTreeSet;

use proptest::prelude::*;
use skolemkit_core::gen::Gen;
use skolemkit_core::semantics::*;
use skolemkit_core::syntax::*;

fn p_model(p: &[bool]) -> FiniteModel {
    FiniteModel::new(Signature::from_pairs(&[], &[("P", 1)]), p.len(), vec![], vec![p.to_vec()]).unwrap()
}

fn px() -> Formula {
    Formula::atom(0, vec![Term::Var(0)])
}

#[test]
fn term_evaluation_examples() {
    let sig = Signature::from_pairs(&[("c", 0), ("f", 1)], &[("P", 1)]);
    let m = FiniteModel::new(sig, 2, vec![vec![1], vec![1, 0]], vec![vec![true, false]]).unwrap();
    assert_eq!(eval_term(&m, &Env::new(vec![1]), &Term::Var(0)), 1);
    for rho in [Env::new(vec![0]), Env::new(vec![1, 0])] {
        assert_eq!(eval_term(&m, &rho, &Term::constant(0)), 1);
    }
    let f_v1 = Term::App(1, vec![Term::Var(1)]);
    assert_eq!(eval_term(&m, &Env::new(vec![0, 1]), &f_v1), 0);
}

#[test]
fn satisfaction_examples() {
    let m = p_model(&[true, false]);
    let rho = Env::constant(0);
    assert!(!sat(&m, &rho, &Formula::all(px())));
    assert!(sat(&m, &rho, &Formula::ex(px())));
    assert!(!sat(&m, &rho, &Formula::Bot));
}

#[test]
fn union_and_inclusion() {
    let (x, y) = (Env::new(vec![3]), Env::new(vec![5]));
    let r = x.union(&y);
    assert_eq!(r.table(), &[3, 5]);
    assert_eq!(r.get(3), y.get(1));
    assert!(x.subseteq(&r) && y.subseteq(&r) && x.subseteq(&x));
    assert_eq!(x.union(&x).range(), x.range());
    assert!(!Env::new(vec![0, 1]).subseteq(&Env::new(vec![0])));

    let mut g = Gen::new(17);
    for _ in 0..50 {
        let f = Env::new((0..g.range(1, 5)).map(|_| g.below(4)).collect());
        let h = Env::new((0..g.range(1, 5)).map(|_| g.below(4)).collect());
        let r = f.union(&h);
        for n in 0..=100 {
            assert_eq!(r.get(2 * n), f.get(n));
            assert_eq!(r.get(2 * n + 1), h.get(n));
        }
        assert_eq!(r.compact().range(), r.range());
        assert_eq!(r.compact().get(0), r.get(0));
    }
}

#[test]
fn theory_examples() {
    let one = p_model(&[true]);
    let th = theory_upto(&one, 4);
    assert!(th.contains(&Formula::all(px())));
    assert!(!th.contains(&Formula::Bot));

    let sig = Signature::from_pairs(&[("c", 0), ("f", 1)], &[("P", 1), ("R", 2)]);
    let mut g = Gen::new(3);
    for _ in 0..5 {
        let m = g.model(&sig, 3);
        for perm in [[1, 2, 0], [2, 1, 0]] {
            assert_eq!(theory_upto(&m, 5), theory_upto(&m.relabel(&perm), 5));
        }
    }
}

#[test]
fn equivalence_examples() {
    let two = p_model(&[true, false]);
    assert!(elem_equiv_upto(&two, &two, 5).equivalent());
    assert!(elem_equiv_upto(&two, &two.relabel(&[1, 0]), 5).equivalent());
    let one = p_model(&[true]);
    let r = elem_equiv_upto(&two, &one, 5);
    assert!(!r.equivalent());
    assert!(r.differences.iter().any(|d| d.contains("exists") && d.contains("~")), "{:?}", r.differences);
}

#[test]
fn embedding_examples() {
    let two = p_model(&[true, false]);
    assert!(elem_embedding_upto(&two, &two, |&x| x, Budget::new(5, 0)).passed());
    let one = p_model(&[true]);
    let r = elem_embedding_upto(&two, &one, |_| 0, Budget::new(5, 0));
    assert!(!r.passed());
    assert!(r.violations.iter().any(|v| v.formula == "P(v0)"), "{:?}", &r.violations[..1]);
}

#[test]
fn finite_models_are_classical() {
    let sig = Signature::from_pairs(&[("c", 0)], &[("P", 1), ("R", 2)]);
    let mut g = Gen::new(8);
    let sentences = enum_formulas_with(&sig, 6, 0);
    for n in 1..=3 {
        let m = g.model(&sig, n);
        for phi in &sentences {
            assert!(sat_closed(&m, phi) || sat_closed(&m, &Formula::not(phi.clone())));
        }
    }
}

#[test]
fn model_files() {
    let good = r#"{"signature": {"functions": [{"name": "f", "arity": 1}], "relations": [{"name": "P", "arity": 1}]},
                   "domain_size": 2, "functions": {"f": [1, 0]}, "relations": {"P": [true, false]}}"#;
    let m = FiniteModel::from_json(good).unwrap();
    assert_eq!(m.apply(0, &[0]), 1);
    assert_eq!(FiniteModel::from_json(&m.to_json()).unwrap(), m);

    let bad = good.replace("[1, 0]", "[1, 2]");
    let e = FiniteModel::from_json(&bad).unwrap_err();
    assert_eq!(e.to_string(), "functions.f[1]: value 2 is outside the domain of size 2");
    let missing = good.replace(r#""P": [true, false]"#, "");
    assert!(matches!(FiniteModel::from_json(&missing).unwrap_err(), ModelError::MissingTable { .. }));
}

#[test]
fn enumeration_counts() {
    let sig = Signature::from_pairs(&[("c", 0)], &[("P", 1)]);
    // c has n choices, P has 2^n
    let counts: Vec<usize> = (1..=3).map(|n| FiniteModel::enumerate(&sig, n).count()).collect();
    assert_eq!(counts, vec![2, 8, 24]);
    let distinct: BTreeSet<String> = FiniteModel::enumerate(&sig, 3).map(|m| m.to_json()).collect();
    assert_eq!(distinct.len(), 24);
}

proptest! {
    #[test]
    fn substitution_lemma(seed in any::<u64>()) {
        // M ⊨_ρ φ[σ] ⇔ M ⊨_{n ↦ ⟦σ n⟧ρ} φ
        let sig = Signature::from_pairs(&[("c", 0), ("f", 1)], &[("P", 1), ("R", 2)]);
        let mut g = Gen::new(seed);
        let m = g.model(&sig, 3);
        let phi = g.formula(&sig, 10, 3);
        let sigma = g.substitution(&sig, 3);
        let rho = Env::new((0..3).map(|_| g.below(3)).collect());
        let shifted = |n: usize| eval_term(&m, &rho, &sigma.get(n));
        prop_assert_eq!(sat(&m, &rho, &phi.subst(&sigma)), satisfies(&m, &shifted, &phi));
    }
}
