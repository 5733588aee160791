//! Paths through total relations: dependent choice read off a syntactic
//! submodel, the countable-choice gadget, and paths from blurred paths.

use crate::henkin::{henkin_env_from, syntactic_submodel};
use crate::semantics::{sat_closed, Env, FiniteModel};
use crate::syntax::{Formula, Signature, Term};

use super::check::{check_bdc, check_choice, is_total};
use super::types::{Blur, CcInstance, LassoSeq, PrincipleError, RelationTable};

/// Budget used when a construction routes through the Henkin pipeline.
pub const DLS_BUDGET: usize = 5;

/// The model with one relation symbol interpreted by `r`.
pub fn relation_model(r: &RelationTable, name: &str) -> FiniteModel {
    let sig = Signature::from_pairs(&[], &[(name, r.arity)]);
    FiniteModel::new(sig, r.carrier, vec![], vec![r.table.clone()]).expect("validated table")
}

/// `∀x0 … ∀x{n-2}. ∃z. R(x0, …, z)`.
pub fn totality_sentence(arity: usize) -> Formula {
    let args = (0..arity).rev().map(Term::Var).collect();
    let mut phi = Formula::ex(Formula::atom(0, args));
    for _ in 1..arity {
        phi = Formula::all(phi);
    }
    phi
}

/// A path through a total `R` starting at `x0`.
///
/// Runs the Henkin construction on `R` seen as a model, starting from `[x0]`,
/// so that `ρ(0) = x0`. The syntactic submodel `N` has decidable atoms and,
/// being elementary, a total relation; least-index search on `N` gives a
/// choice step `f` on term indices, and `g n := h(f^n 0)` is the path.
pub fn dc_via_dls(r: &RelationTable, x0: usize, k: usize) -> Result<LassoSeq, PrincipleError> {
    r.expect_arity(2)?;
    if x0 >= r.carrier {
        return Err(PrincipleError::Shape(format!("start {x0} is outside the carrier")));
    }
    if !is_total(r) {
        return Err(PrincipleError::NotTotal("some element has no successor".into()));
    }
    let m = relation_model(r, "R");
    let rho = henkin_env_from(&m, Env::constant(x0), k).env;
    let (n, h) = syntactic_submodel(&m, &rho);
    let view = n.at_depth(0).expect("variables are leaves");
    if !sat_closed(&view, &totality_sentence(2)) {
        return Err(PrincipleError::Internal("the submodel relation is not total".into()));
    }
    let len = rho.len();
    let step = |i: usize| {
        (0..len)
            .find(|&j| n.holds(0, &[Term::Var(i), Term::Var(j)]))
            .expect("submodel relation is total")
    };
    let indices = LassoSeq::from_iteration(0, step);
    Ok(indices.map(|i| h.apply(&Term::Var(i))).normalize())
}

/// Encodes `(n, x)` of the gadget carrier `[0,N) × A`.
pub fn pair_index(inst: &CcInstance, n: usize, x: usize) -> usize {
    n * inst.carrier + x
}

/// `R'(n,x)(m,y) := m = n+1 ∧ R n y` on `[0,N) × A`, successor taken mod `N`.
pub fn cc_gadget(inst: &CcInstance) -> RelationTable {
    let a = inst.carrier;
    RelationTable::binary(inst.window * a, |p, q| {
        let (n, m, y) = (p / a, q / a, q % a);
        m == (n + 1) % inst.window && inst.get(n, y)
    })
}

/// A choice function on the window from a path through the gadget:
/// `choice(n) = π₂(path(n+1))`, the path starting at `(0, 0)`.
pub fn cc_from_dc_gadget(
    inst: &CcInstance,
    path_provider: impl Fn(&RelationTable, usize) -> Result<LassoSeq, PrincipleError>,
) -> Result<Vec<usize>, PrincipleError> {
    inst.check_total()?;
    let gadget = cc_gadget(inst);
    let path = path_provider(&gadget, pair_index(inst, 0, 0))?;
    let choice: Vec<usize> = (0..inst.window).map(|n| path.get(n + 1) % inst.carrier).collect();
    if !check_choice(inst, &choice) {
        return Err(PrincipleError::Internal("projected path is not a choice function".into()));
    }
    Ok(choice)
}

/// The default provider for [`cc_from_dc_gadget`].
pub fn dls_path_provider(r: &RelationTable, x0: usize) -> Result<LassoSeq, PrincipleError> {
    dc_via_dls(r, x0, DLS_BUDGET)
}

/// A path `h n := f(g^n 0)` from a blur `f` with `R ∘ f` total, where `g` is
/// the least-index choice on `R ∘ f`.
pub fn dc_from_bdc2_cc(r: &RelationTable, f: &Blur) -> Result<LassoSeq, PrincipleError> {
    r.expect_arity(2)?;
    f.validate()?;
    if f.carrier != r.carrier {
        return Err(PrincipleError::Shape("blur and relation have different carriers".into()));
    }
    if !check_bdc(r, f) {
        return Err(PrincipleError::NotTotal("R ∘ f is not total".into()));
    }
    let step = |i: usize| (0..f.len()).find(|&j| r.r2(f.get(i), f.get(j))).expect("R ∘ f is total");
    Ok(LassoSeq::from_iteration(0, step).map(|i| f.get(i)).normalize())
}
