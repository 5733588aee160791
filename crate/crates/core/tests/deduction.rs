use skolemkit_core::deduction::*;
use skolemkit_core::gen::Gen;
use skolemkit_core::syntax::{parse_formula, Formula, Signature, Term};

fn sig() -> Signature {
    Signature::from_pairs(&[("c", 0)], &[("P", 1), ("R", 2)])
}

fn assume(index: usize) -> Box<ProofTerm> {
    Box::new(Proof::Assume { index })
}

#[test]
fn identity_for_any_annotation() {
    let s = sig();
    let mut g = Gen::new(1);
    for _ in 0..200 {
        let phi = g.formula(&s, 10, 0);
        let p = Proof::ImpI { hyp: phi.clone(), body: assume(0) };
        assert_eq!(check_proof(&s, &[], &p, false).unwrap(), Formula::imp(phi.clone(), phi));
    }
}

#[test]
fn universal_elimination() {
    let s = sig();
    let ctx = [parse_formula("forall x. P(x)", &s).unwrap()];
    let p = Proof::AllE { witness: Term::constant(0), proof: assume(0) };
    assert_eq!(check_proof(&s, &ctx, &p, false).unwrap(), parse_formula("P(c)", &s).unwrap());
    let r = soundness_check(&s, &ctx, &p, false, 2).unwrap();
    assert!(r.passed());
    // P must be everywhere true; c and R are free: 1·2 models of size 1, 2·16 of size 2
    assert_eq!(r.models_of_context, 2 + 2 * 16);
}

#[test]
fn classical_rule_is_gated() {
    let s = sig();
    let target = parse_formula("P(c)", &s).unwrap();
    let p = Proof::DNE { target, proof: assume(0) };
    let ctx = [parse_formula("~~P(c)", &s).unwrap()];
    let err = check_proof(&s, &ctx, &p, false).unwrap_err();
    assert_eq!((err.path.as_str(), err.message.as_str()), ("root", "classical rule disabled"));
    assert!(check_proof(&s, &ctx, &p, true).is_ok());
}

#[test]
fn misapplications_report_their_position() {
    let s = sig();
    let ctx = [parse_formula("P(c)", &s).unwrap()];
    let p = Proof::AndI { left: assume(0), right: Box::new(Proof::AndE1 { proof: assume(0) }) };
    let err = check_proof(&s, &ctx, &p, false).unwrap_err();
    assert_eq!(err.path, "root.right");
    assert!(err.message.contains("conjunction"));
}

#[test]
fn corpus_is_sound_on_small_models() {
    let entries = corpus();
    assert!(entries.len() >= 10);
    assert!(entries.iter().any(|e| e.classical));
    for e in entries {
        let r = soundness_check(&e.sig, &e.context, &e.proof, e.classical, 2).unwrap();
        assert!(r.passed(), "{}: {:?}", e.name, r.violations);
        assert!(r.models_of_context > 0, "{}", e.name);
    }
}

#[test]
fn peirce_holds_classically() {
    let e = corpus().into_iter().find(|e| e.name == "peirce").unwrap();
    let r = soundness_check(&e.sig, &[], &e.proof, true, 2).unwrap();
    assert!(r.passed());
    assert_eq!(r.models_checked, r.models_of_context);
}

#[test]
fn weakening() {
    let s = sig();
    let extra = [parse_formula("exists x. R(x, c)", &s).unwrap(), Formula::Bot];
    for e in corpus() {
        let want = check_proof(&e.sig, &e.context, &e.proof, e.classical).unwrap();
        let appended = [e.context.clone(), extra.to_vec()].concat();
        let p = e.proof.shift_assumptions(e.context.len(), extra.len());
        assert_eq!(check_proof(&e.sig, &appended, &p, e.classical).unwrap(), want, "{}", e.name);
        let prepended = [extra.to_vec(), e.context.clone()].concat();
        let p = e.proof.shift_assumptions(0, extra.len());
        assert_eq!(check_proof(&e.sig, &prepended, &p, e.classical).unwrap(), want, "{}", e.name);
    }
}

#[test]
fn checking_is_deterministic() {
    for e in corpus() {
        let a = check_proof(&e.sig, &e.context, &e.proof, e.classical);
        let b = check_proof(&e.sig, &e.context, &e.proof.clone(), e.classical);
        assert_eq!(a, b);
    }
}

#[test]
fn files_roundtrip() {
    let ctx = r#"{"signature": {"functions": [{"name": "c", "arity": 0}],
                                "relations": [{"name": "P", "arity": 1}, {"name": "R", "arity": 2}]},
                  "formulas": ["forall x. P(x)", "forall x. P(x) -> R(x, x)"]}"#;
    let (s, formulas) = ContextFile::from_json(ctx).unwrap();
    let e = corpus().into_iter().find(|e| e.name == "all-modus-ponens").unwrap();
    assert_eq!(formulas, e.context);
    let json = serde_json::to_string_pretty(&e.proof.to_file(&s)).unwrap();
    assert!(json.contains("\"rule\": \"AllI\""));
    assert_eq!(ProofFile::from_json(&json, &s).unwrap(), e.proof);
    let bad = json.replace("v0", "w0");
    assert!(matches!(ProofFile::from_json(&bad, &s), Err(ProofFileError::Parse { .. })));
}
