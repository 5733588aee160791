//! Finite Heyting algebras and Heyting-valued evaluation of formulas.
//!
//! Implication is never taken from input: it is computed as the relative
//! pseudocomplement by search, so residuation holds by construction whenever
//! construction succeeds.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::syntax::{Formula, Signature, Term};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HeytingError {
    #[error("carrier must be nonempty")]
    Empty,
    #[error("{0}")]
    Shape(String),
    #[error("not a partial order: {0}")]
    NotPartialOrder(String),
    #[error("not a lattice: {0}")]
    NotLattice(String),
    #[error("not a Heyting algebra: {0}")]
    NoImplication(String),
    #[error("malformed algebra file: {0}")]
    Json(String),
    #[error("unknown built-in algebra `{0}` (try bool2 or diamond)")]
    UnknownBuiltin(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteHeytingAlgebra {
    size: usize,
    /// `order[a * size + b]` is `a ≤ b`.
    order: Vec<bool>,
    meet: Vec<usize>,
    join: Vec<usize>,
    imp: Vec<usize>,
    bot: usize,
    top: usize,
    labels: Vec<String>,
}

/// On-disk form: the carrier size and the order as a matrix, `order[a][b]`
/// meaning `a ≤ b`. Labels are optional.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub size: usize,
    pub order: Vec<Vec<bool>>,
    #[serde(default)]
    pub labels: Vec<String>,
}

impl FiniteHeytingAlgebra {
    /// Computes meet, join, extrema and implication from an order.
    pub fn from_order(size: usize, order: Vec<bool>, labels: Vec<String>) -> Result<Self, HeytingError> {
        if size == 0 {
            return Err(HeytingError::Empty);
        }
        if order.len() != size * size {
            return Err(HeytingError::Shape(format!("order: expected {} entries, found {}", size * size, order.len())));
        }
        let le = |a: usize, b: usize| order[a * size + b];
        check_partial_order(size, &le)?;
        let extreme = |below: bool| (0..size).find(|&x| (0..size).all(|y| if below { le(x, y) } else { le(y, x) }));
        let bot = extreme(true).ok_or_else(|| HeytingError::NotLattice("no least element".into()))?;
        let top = extreme(false).ok_or_else(|| HeytingError::NotLattice("no greatest element".into()))?;
        let mut meet = vec![0; size * size];
        let mut join = vec![0; size * size];
        for a in 0..size {
            for b in 0..size {
                meet[a * size + b] = (0..size)
                    .filter(|&x| le(x, a) && le(x, b))
                    .find(|&x| (0..size).all(|y| !(le(y, a) && le(y, b)) || le(y, x)))
                    .ok_or_else(|| HeytingError::NotLattice(format!("elements {a} and {b} have no meet")))?;
                join[a * size + b] = (0..size)
                    .filter(|&x| le(a, x) && le(b, x))
                    .find(|&x| (0..size).all(|y| !(le(a, y) && le(b, y)) || le(x, y)))
                    .ok_or_else(|| HeytingError::NotLattice(format!("elements {a} and {b} have no join")))?;
            }
        }
        Self::from_tables(size, order, meet, join, bot, top, labels)
    }

    /// Takes meet and join as given, without checking them, and computes
    /// implication. [`validate_algebra`] is the way to find out whether the
    /// tables are what they claim to be.
    pub fn from_tables(
        size: usize,
        order: Vec<bool>,
        meet: Vec<usize>,
        join: Vec<usize>,
        bot: usize,
        top: usize,
        labels: Vec<String>,
    ) -> Result<Self, HeytingError> {
        let n2 = size * size;
        if order.len() != n2 || meet.len() != n2 || join.len() != n2 || bot >= size || top >= size {
            return Err(HeytingError::Shape("table sizes do not match the carrier".into()));
        }
        if meet.iter().chain(&join).any(|&x| x >= size) {
            return Err(HeytingError::Shape("meet/join entry outside the carrier".into()));
        }
        let labels = if labels.len() == size { labels } else { (0..size).map(|i| i.to_string()).collect() };
        let mut h = Self { size, order, meet, join, imp: vec![0; n2], bot, top, labels };
        for a in 0..size {
            for b in 0..size {
                h.imp[a * size + b] = h
                    .search_rpc(a, b)
                    .ok_or_else(|| HeytingError::NoImplication(format!("{} → {} has no greatest candidate", h.labels[a], h.labels[b])))?;
            }
        }
        Ok(h)
    }

    pub fn from_file(file: AlgebraFile) -> Result<Self, HeytingError> {
        if file.order.len() != file.size || file.order.iter().any(|row| row.len() != file.size) {
            return Err(HeytingError::Shape(format!("order must be a {0}×{0} matrix", file.size)));
        }
        Self::from_order(file.size, file.order.concat(), file.labels)
    }

    pub fn from_json(text: &str) -> Result<Self, HeytingError> {
        let file: AlgebraFile = serde_json::from_str(text).map_err(|e| HeytingError::Json(e.to_string()))?;
        Self::from_file(file)
    }

    pub fn builtin(name: &str) -> Result<Self, HeytingError> {
        match name {
            "bool2" => Ok(Self::bool2()),
            "diamond" => Ok(Self::diamond()),
            other => Err(HeytingError::UnknownBuiltin(other.into())),
        }
    }

    /// `⊥ < ⊤`.
    pub fn bool2() -> Self {
        Self::from_order(2, vec![true, true, false, true], vec!["⊥".into(), "⊤".into()]).expect("valid")
    }

    /// `⊥ < a, b < ⊤` with `a`, `b` incomparable; elements are numbered
    /// `⊥ = 0, a = 1, b = 2, ⊤ = 3`.
    pub fn diamond() -> Self {
        let le = |x: usize, y: usize| x == y || x == 0 || y == 3;
        let order = (0..16).map(|i| le(i / 4, i % 4)).collect();
        Self::from_order(4, order, ["⊥", "a", "b", "⊤"].map(String::from).to_vec()).expect("valid")
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn le(&self, a: usize, b: usize) -> bool {
        self.order[a * self.size + b]
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.size + b]
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.size + b]
    }

    pub fn imp(&self, a: usize, b: usize) -> usize {
        self.imp[a * self.size + b]
    }

    pub fn bot(&self) -> usize {
        self.bot
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn element(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Greatest `x` with `x ∧ a ≤ b`, if the candidates have a greatest one.
    fn search_rpc(&self, a: usize, b: usize) -> Option<usize> {
        let ok: Vec<usize> = (0..self.size).filter(|&x| self.le(self.meet(x, a), b)).collect();
        ok.iter().copied().find(|&x| ok.iter().all(|&y| self.le(y, x)))
    }
}

fn check_partial_order(size: usize, le: &dyn Fn(usize, usize) -> bool) -> Result<(), HeytingError> {
    for a in 0..size {
        if !le(a, a) {
            return Err(HeytingError::NotPartialOrder(format!("{a} ≤ {a} fails")));
        }
        for b in 0..size {
            if a != b && le(a, b) && le(b, a) {
                return Err(HeytingError::NotPartialOrder(format!("{a} and {b} are below each other")));
            }
            for c in 0..size {
                if le(a, b) && le(b, c) && !le(a, c) {
                    return Err(HeytingError::NotPartialOrder(format!("{a} ≤ {b} ≤ {c} but not {a} ≤ {c}")));
                }
            }
        }
    }
    Ok(())
}

/// The relative pseudocomplement `a → b`: the greatest `x` with `x ∧ a ≤ b`.
pub fn rpc(h: &FiniteHeytingAlgebra, a: usize, b: usize) -> usize {
    h.search_rpc(a, b).expect("validated algebra has implications")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraReport {
    pub passed: bool,
    pub violation: Option<String>,
}

/// Checks the order, meets and joins, distributivity, extrema and residuation.
pub fn validate_algebra(h: &FiniteHeytingAlgebra) -> AlgebraReport {
    let fail = |msg: String| AlgebraReport { passed: false, violation: Some(msg) };
    let n = h.size;
    if let Err(e) = check_partial_order(n, &|a, b| h.le(a, b)) {
        return fail(e.to_string());
    }
    for a in 0..n {
        if !h.le(h.bot, a) || !h.le(a, h.top) {
            return fail(format!("{} is not between the extrema", h.label(a)));
        }
        for b in 0..n {
            let (m, j) = (h.meet(a, b), h.join(a, b));
            if !(h.le(m, a) && h.le(m, b)) || (0..n).any(|x| h.le(x, a) && h.le(x, b) && !h.le(x, m)) {
                return fail(format!("meet({}, {}) = {} is not the greatest lower bound", h.label(a), h.label(b), h.label(m)));
            }
            if !(h.le(a, j) && h.le(b, j)) || (0..n).any(|x| h.le(a, x) && h.le(b, x) && !h.le(j, x)) {
                return fail(format!("join({}, {}) = {} is not the least upper bound", h.label(a), h.label(b), h.label(j)));
            }
            for c in 0..n {
                if h.meet(a, h.join(b, c)) != h.join(h.meet(a, b), h.meet(a, c)) {
                    return fail(format!("meet does not distribute at ({}, {}, {})", h.label(a), h.label(b), h.label(c)));
                }
                if h.le(h.meet(c, a), b) != h.le(c, h.imp(a, b)) {
                    return fail(format!("residuation fails at x={}, a={}, b={}", h.label(c), h.label(a), h.label(b)));
                }
            }
        }
    }
    AlgebraReport { passed: true, violation: None }
}

/// A Heyting-valued structure: function tables over a finite domain and
/// relation tables valued in the algebra.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HValuation {
    pub sig: Signature,
    pub domain_size: usize,
    pub functions: Vec<Vec<usize>>,
    pub relations: Vec<Vec<usize>>,
    /// Names for domain elements in reports; defaults to their indices.
    #[serde(default)]
    pub domain_labels: Vec<String>,
}

impl HValuation {
    pub fn validate(&self, h: &FiniteHeytingAlgebra) -> Result<(), HeytingError> {
        let n = self.domain_size;
        if n == 0 {
            return Err(HeytingError::Empty);
        }
        if self.functions.len() != self.sig.functions.len() || self.relations.len() != self.sig.relations.len() {
            return Err(HeytingError::Shape("one table per symbol is required".into()));
        }
        for (s, t) in self.sig.functions.iter().zip(&self.functions) {
            if t.len() != n.pow(s.arity as u32) || t.iter().any(|&v| v >= n) {
                return Err(HeytingError::Shape(format!("functions.{}: bad table", s.name)));
            }
        }
        for (s, t) in self.sig.relations.iter().zip(&self.relations) {
            if t.len() != n.pow(s.arity as u32) || t.iter().any(|&v| v >= h.size()) {
                return Err(HeytingError::Shape(format!("relations.{}: bad table", s.name)));
            }
        }
        Ok(())
    }

    pub fn domain_label(&self, d: usize) -> String {
        self.domain_labels.get(d).cloned().unwrap_or_else(|| d.to_string())
    }

    /// Domain `{true, false}` (numbered 0 and 1) with one predicate `P`,
    /// `P(true) = a` and `P(false) = b` in the diamond.
    pub fn diamond_drinker() -> Self {
        Self {
            sig: Signature::from_pairs(&[], &[("P", 1)]),
            domain_size: 2,
            functions: vec![],
            relations: vec![vec![1, 2]],
            domain_labels: vec!["true".into(), "false".into()],
        }
    }
}

fn index(n: usize, args: &[usize]) -> usize {
    args.iter().fold(0, |acc, &a| acc * n + a)
}

fn heval_term(v: &HValuation, rho: &dyn Fn(usize) -> usize, stack: &[usize], t: &Term) -> usize {
    match t {
        Term::Var(i) if *i < stack.len() => stack[stack.len() - 1 - i],
        Term::Var(i) => rho(i - stack.len()),
        Term::App(f, args) => {
            let vals: Vec<usize> = args.iter().map(|a| heval_term(v, rho, stack, a)).collect();
            v.functions[*f][index(v.domain_size, &vals)]
        }
    }
}

fn heval_at(h: &FiniteHeytingAlgebra, v: &HValuation, rho: &dyn Fn(usize) -> usize, stack: &mut Vec<usize>, phi: &Formula) -> usize {
    match phi {
        Formula::Bot => h.bot(),
        Formula::Atom(r, args) => {
            let vals: Vec<usize> = args.iter().map(|a| heval_term(v, rho, stack, a)).collect();
            v.relations[*r][index(v.domain_size, &vals)]
        }
        Formula::Imp(a, b) => {
            let x = heval_at(h, v, rho, stack, a);
            let y = heval_at(h, v, rho, stack, b);
            h.imp(x, y)
        }
        Formula::And(a, b) => {
            let x = heval_at(h, v, rho, stack, a);
            let y = heval_at(h, v, rho, stack, b);
            h.meet(x, y)
        }
        Formula::Or(a, b) => {
            let x = heval_at(h, v, rho, stack, a);
            let y = heval_at(h, v, rho, stack, b);
            h.join(x, y)
        }
        Formula::All(body) | Formula::Ex(body) => {
            let universal = matches!(phi, Formula::All(_));
            let mut acc = if universal { h.top() } else { h.bot() };
            for d in 0..v.domain_size {
                stack.push(d);
                let x = heval_at(h, v, rho, stack, body);
                stack.pop();
                acc = if universal { h.meet(acc, x) } else { h.join(acc, x) };
            }
            acc
        }
    }
}

/// The truth value of `φ`, with free index `n` read from `rho(n)`.
pub fn heval(h: &FiniteHeytingAlgebra, v: &HValuation, rho: &dyn Fn(usize) -> usize, phi: &Formula) -> usize {
    heval_at(h, v, rho, &mut Vec::new(), phi)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DpWitness {
    pub element: String,
    pub value: usize,
    pub value_label: String,
    pub is_top: bool,
}

/// Values of the drinker instances `P(d) → ∀y. P(y)`, one per element, and
/// separately the value of `∃x. (P(x) → ∀y. P(y))`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DpReport {
    pub witnesses: Vec<DpWitness>,
    /// Whether no single element is a witness with value `⊤`.
    pub every_witness_refuted: bool,
    pub join: usize,
    pub join_label: String,
    pub join_is_top: bool,
}

/// The drinker instance `P(x0) → ∀y. P(y)` with `x0` free.
pub fn drinker_instance(p: usize) -> Formula {
    Formula::imp(Formula::atom(p, vec![Term::Var(0)]), Formula::all(Formula::atom(p, vec![Term::Var(0)])))
}

/// Evaluates the drinker instance for the unary relation `p` at every element.
pub fn dp_witness_report(h: &FiniteHeytingAlgebra, v: &HValuation, p: usize) -> Result<DpReport, HeytingError> {
    v.validate(h)?;
    if v.sig.relations.get(p).map(|s| s.arity) != Some(1) {
        return Err(HeytingError::Shape("the drinker report needs a unary relation".into()));
    }
    let inst = drinker_instance(p);
    let witnesses: Vec<DpWitness> = (0..v.domain_size)
        .map(|d| {
            let value = heval(h, v, &|_| d, &inst);
            DpWitness { element: v.domain_label(d), value, value_label: h.label(value).into(), is_top: value == h.top() }
        })
        .collect();
    let join = heval(h, v, &|_| 0, &Formula::ex(inst));
    Ok(DpReport {
        every_witness_refuted: witnesses.iter().all(|w| !w.is_top),
        witnesses,
        join,
        join_label: h.label(join).into(),
        join_is_top: join == h.top(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_validate() {
        assert!(validate_algebra(&FiniteHeytingAlgebra::bool2()).passed);
        assert!(validate_algebra(&FiniteHeytingAlgebra::diamond()).passed);
    }

    #[test]
    fn diamond_pseudocomplements() {
        let d = FiniteHeytingAlgebra::diamond();
        let (bot, a, b, top) = (0, 1, 2, 3);
        assert_eq!(rpc(&d, a, bot), b);
        assert_eq!(rpc(&d, b, bot), a);
        for x in 0..4 {
            assert_eq!(rpc(&d, top, x), x);
            assert_eq!(rpc(&d, bot, x), top);
        }
    }

    #[test]
    fn tampered_meet_is_caught() {
        let d = FiniteHeytingAlgebra::diamond();
        let mut meet = d.meet.clone();
        meet[4 + 2] = 1; // a ∧ b := a
        meet[2 * 4 + 1] = 1;
        let t = FiniteHeytingAlgebra::from_tables(4, d.order.clone(), meet, d.join.clone(), 0, 3, d.labels.clone()).unwrap();
        let r = validate_algebra(&t);
        assert!(!r.passed);
        assert!(r.violation.unwrap().contains("meet"));
    }

    #[test]
    fn non_lattices_are_rejected() {
        // two incomparable elements and nothing else
        let e = FiniteHeytingAlgebra::from_order(2, vec![true, false, false, true], vec![]).unwrap_err();
        assert!(matches!(e, HeytingError::NotLattice(_)));
        let cyc = FiniteHeytingAlgebra::from_order(2, vec![true, true, true, true], vec![]).unwrap_err();
        assert!(matches!(cyc, HeytingError::NotPartialOrder(_)));
    }

    #[test]
    fn drinker_in_the_diamond() {
        let d = FiniteHeytingAlgebra::diamond();
        let v = HValuation::diamond_drinker();
        let all_p = Formula::all(Formula::atom(0, vec![Term::Var(0)]));
        assert_eq!(heval(&d, &v, &|_| 0, &all_p), 0);
        let r = dp_witness_report(&d, &v, 0).unwrap();
        let values: Vec<usize> = r.witnesses.iter().map(|w| w.value).collect();
        assert_eq!(values, vec![2, 1]);
        assert!(r.every_witness_refuted);
        assert_eq!(r.join, 3);
        assert!(r.join_is_top);
    }
}
