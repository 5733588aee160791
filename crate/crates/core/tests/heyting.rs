use skolemkit_core::gen::Gen;
use skolemkit_core::heyting::*;
use skolemkit_core::semantics::{sat, Env};
use skolemkit_core::syntax::{enum_formulas_with, Formula, Signature, Term};

fn from_le(n: usize, le: impl Fn(usize, usize) -> bool) -> Result<FiniteHeytingAlgebra, HeytingError> {
    FiniteHeytingAlgebra::from_order(n, (0..n * n).map(|i| le(i / n, i % n)).collect(), vec![])
}

#[test]
fn laws_hold_in_chains_and_grids() {
    for n in 1..=5 {
        let chain = from_le(n, |a, b| a <= b).unwrap();
        assert!(validate_algebra(&chain).passed);
    }
    // products of chains, elements encoded as i * w + j
    for (h, w) in [(2, 2), (2, 3), (3, 3)] {
        let grid = from_le(h * w, |a, b| a / w <= b / w && a % w <= b % w).unwrap();
        let report = validate_algebra(&grid);
        assert!(report.passed, "{report:?}");
        for a in 0..h * w {
            for b in 0..h * w {
                for x in 0..h * w {
                    assert_eq!(grid.le(grid.meet(x, a), b), grid.le(x, grid.imp(a, b)));
                }
            }
        }
    }
}

#[test]
fn non_distributive_lattices_are_rejected() {
    // pentagon: 0 < a < b < 1 and 0 < c < 1
    let pentagon = [(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)];
    let le = |a: usize, b: usize| a == b || a == 0 || b == 4 || pentagon.contains(&(a, b));
    assert!(matches!(from_le(5, le), Err(HeytingError::NoImplication(_))));
    // three atoms between bottom and top
    let m3 = |a: usize, b: usize| a == b || a == 0 || b == 4;
    assert!(matches!(from_le(5, m3), Err(HeytingError::NoImplication(_))));
}

#[test]
fn pseudocomplement_examples() {
    let d = FiniteHeytingAlgebra::diamond();
    for x in 0..4 {
        assert_eq!(rpc(&d, d.top(), x), x);
        assert_eq!(rpc(&d, d.bot(), x), d.top());
    }
    let (a, b) = (d.element("a").unwrap(), d.element("b").unwrap());
    assert_eq!(rpc(&d, a, d.bot()), b);
    assert_eq!(rpc(&d, b, d.bot()), a);
}

#[test]
fn drinker_countermodel() {
    let d = FiniteHeytingAlgebra::diamond();
    let v = HValuation::diamond_drinker();
    assert_eq!(heval(&d, &v, &|_| 0, &Formula::Bot), d.bot());
    let all_p = Formula::all(Formula::atom(0, vec![Term::Var(0)]));
    assert_eq!(heval(&d, &v, &|_| 0, &all_p), d.meet(1, 2));
    let r = dp_witness_report(&d, &v, 0).unwrap();
    let shown: Vec<(&str, &str)> = r.witnesses.iter().map(|w| (w.element.as_str(), w.value_label.as_str())).collect();
    assert_eq!(shown, [("true", "b"), ("false", "a")]);
    assert!(r.every_witness_refuted);
    assert_eq!(r.join_label, "⊤");
}

#[test]
fn monotone_on_the_positive_fragment() {
    let d = FiniteHeytingAlgebra::diamond();
    let sig = Signature::from_pairs(&[], &[("P", 1)]);
    let formulas: Vec<Formula> = enum_formulas_with(&sig, 6, 1).into_iter().filter(|f| f.is_positive()).collect();
    assert!(!formulas.is_empty());
    let valuation = |t: [usize; 2]| HValuation {
        sig: sig.clone(),
        domain_size: 2,
        functions: vec![],
        relations: vec![t.to_vec()],
        domain_labels: vec![],
    };
    let tables: Vec<[usize; 2]> = (0..16).map(|i| [i / 4, i % 4]).collect();
    for lo in &tables {
        for hi in tables.iter().filter(|hi| d.le(lo[0], hi[0]) && d.le(lo[1], hi[1])) {
            let (vl, vh) = (valuation(*lo), valuation(*hi));
            for phi in &formulas {
                for x in 0..2 {
                    assert!(d.le(heval(&d, &vl, &|_| x, phi), heval(&d, &vh, &|_| x, phi)));
                }
            }
        }
    }
}

#[test]
fn boolean_collapse() {
    let b = FiniteHeytingAlgebra::bool2();
    let sig = Signature::from_pairs(&[("c", 0), ("f", 1)], &[("P", 1), ("R", 2)]);
    let mut g = Gen::new(5);
    let mut checked = 0;
    while checked < 500 {
        let n = g.range(1, 3);
        let m = g.model(&sig, n);
        let v = HValuation {
            sig: sig.clone(),
            domain_size: m.domain_size(),
            functions: (0..2).map(|f| m.function_table(f).to_vec()).collect(),
            relations: (0..2).map(|r| m.relation_table(r).iter().map(|&x| usize::from(x)).collect()).collect(),
            domain_labels: vec![],
        };
        for _ in 0..50 {
            let phi = g.formula(&sig, 12, 2);
            let rho = Env::new(vec![g.below(m.domain_size()), g.below(m.domain_size())]);
            let value = heval(&b, &v, &|i| rho.get(i), &phi);
            assert_eq!(value == b.top(), sat(&m, &rho, &phi));
            checked += 1;
        }
    }
}

#[test]
fn algebra_files() {
    let text = r#"{"size": 4, "labels": ["⊥", "a", "b", "⊤"],
                   "order": [[true, true, true, true], [false, true, false, true],
                             [false, false, true, true], [false, false, false, true]]}"#;
    assert_eq!(FiniteHeytingAlgebra::from_json(text).unwrap(), FiniteHeytingAlgebra::diamond());
    let ragged = r#"{"size": 2, "order": [[true, true], [true]]}"#;
    assert!(matches!(FiniteHeytingAlgebra::from_json(ragged), Err(HeytingError::Shape(_))));
    assert!(matches!(FiniteHeytingAlgebra::from_json("{"), Err(HeytingError::Json(_))));
    assert!(FiniteHeytingAlgebra::builtin("nope").is_err());
}
