//! Natural-deduction proof terms over de Bruijn formulas, a checker that
//! synthesizes conclusions, and a finite-model soundness harness.
//!
//! Contexts grow at the end: `ImpI`, `OrE` and `ExE` append their hypothesis
//! and `Assume(i)` reads position `i` from the front. Under `AllI` and `ExE`
//! every context formula is shifted by one, so the eigenvariable is `Var(0)`
//! and fresh by construction.

mod corpus;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::par::par_flat_map;
use crate::semantics::{sat, Env, FiniteModel};
use crate::syntax::{
    parse_formula_open, parse_term, print_formula, print_term, Formula, ParseError, Signature, Substitution, SyntaxError,
    Tail, Term,
};

pub use corpus::{corpus, CorpusEntry};

/// A proof tree, generic over how formulas and terms are stored so that the
/// same shape serves both checked proofs and proof files with surface syntax.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "rule", deny_unknown_fields)]
pub enum Proof<F, T> {
    Assume { index: usize },
    ImpI { hyp: F, body: Box<Proof<F, T>> },
    ImpE { fun: Box<Proof<F, T>>, arg: Box<Proof<F, T>> },
    AndI { left: Box<Proof<F, T>>, right: Box<Proof<F, T>> },
    AndE1 { proof: Box<Proof<F, T>> },
    AndE2 { proof: Box<Proof<F, T>> },
    /// From `φ` conclude `φ ∨ right`.
    OrI1 { right: F, proof: Box<Proof<F, T>> },
    /// From `φ` conclude `left ∨ φ`.
    OrI2 { left: F, proof: Box<Proof<F, T>> },
    OrE { proof: Box<Proof<F, T>>, left: Box<Proof<F, T>>, right: Box<Proof<F, T>> },
    BotE { target: F, proof: Box<Proof<F, T>> },
    AllI { proof: Box<Proof<F, T>> },
    AllE { witness: T, proof: Box<Proof<F, T>> },
    /// From `body[witness]` conclude `∃ body`.
    ExI { body: F, witness: T, proof: Box<Proof<F, T>> },
    /// `major` proves `∃φ`; `minor` proves the goal from the shifted context
    /// extended with `φ`.
    ExE { major: Box<Proof<F, T>>, minor: Box<Proof<F, T>> },
    /// From `¬¬target` conclude `target`. Classical only.
    DNE { target: F, proof: Box<Proof<F, T>> },
}

pub type ProofTerm = Proof<Formula, Term>;

/// Proof file form: formulas and terms in surface syntax. Free de Bruijn
/// index `j` is written `vj`, the same way the printer writes it.
pub type ProofFile = Proof<String, String>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{path}: {message}")]
pub struct ProofError {
    /// Dotted path from the root to the offending node, e.g. `root.body.fun`.
    pub path: String,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProofFileError {
    #[error("{path}: {error}")]
    Parse { path: String, error: ParseError },
    #[error("context formula {index}: {error}")]
    Context { index: usize, error: ParseError },
    #[error("malformed JSON: {0}")]
    Json(String),
    #[error(transparent)]
    Signature(#[from] SyntaxError),
}

/// Enough names for any free index a hand-written proof could mention.
const FREE_NAMES: usize = 64;

fn free_names() -> Vec<String> {
    (0..FREE_NAMES).map(|j| format!("v{j}")).collect()
}

impl<F, T> Proof<F, T> {
    /// Rebuilds the tree with converted leaves. `path` tracks the position
    /// for error reports.
    pub fn try_map<G, U, E>(
        &self,
        path: &str,
        f: &mut impl FnMut(&str, &F) -> Result<G, E>,
        t: &mut impl FnMut(&str, &T) -> Result<U, E>,
    ) -> Result<Proof<G, U>, E> {
        use Proof::*;
        let sub = |name: &str| format!("{path}.{name}");
        macro_rules! rec {
            ($p:expr, $name:expr) => {
                Box::new($p.try_map(&sub($name), f, t)?)
            };
        }
        Ok(match self {
            Assume { index } => Assume { index: *index },
            ImpI { hyp, body } => ImpI { hyp: f(&sub("hyp"), hyp)?, body: rec!(body, "body") },
            ImpE { fun, arg } => ImpE { fun: rec!(fun, "fun"), arg: rec!(arg, "arg") },
            AndI { left, right } => AndI { left: rec!(left, "left"), right: rec!(right, "right") },
            AndE1 { proof } => AndE1 { proof: rec!(proof, "proof") },
            AndE2 { proof } => AndE2 { proof: rec!(proof, "proof") },
            OrI1 { right, proof } => OrI1 { right: f(&sub("right"), right)?, proof: rec!(proof, "proof") },
            OrI2 { left, proof } => OrI2 { left: f(&sub("left"), left)?, proof: rec!(proof, "proof") },
            OrE { proof, left, right } => {
                OrE { proof: rec!(proof, "proof"), left: rec!(left, "left"), right: rec!(right, "right") }
            }
            BotE { target, proof } => BotE { target: f(&sub("target"), target)?, proof: rec!(proof, "proof") },
            AllI { proof } => AllI { proof: rec!(proof, "proof") },
            AllE { witness, proof } => AllE { witness: t(&sub("witness"), witness)?, proof: rec!(proof, "proof") },
            ExI { body, witness, proof } => ExI {
                body: f(&sub("body"), body)?,
                witness: t(&sub("witness"), witness)?,
                proof: rec!(proof, "proof"),
            },
            ExE { major, minor } => ExE { major: rec!(major, "major"), minor: rec!(minor, "minor") },
            DNE { target, proof } => DNE { target: f(&sub("target"), target)?, proof: rec!(proof, "proof") },
        })
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        use Proof::*;
        match self {
            Assume { .. } => 1,
            ImpI { body: p, .. }
            | AndE1 { proof: p }
            | AndE2 { proof: p }
            | OrI1 { proof: p, .. }
            | OrI2 { proof: p, .. }
            | BotE { proof: p, .. }
            | AllI { proof: p }
            | AllE { proof: p, .. }
            | ExI { proof: p, .. }
            | DNE { proof: p, .. } => 1 + p.size(),
            ImpE { fun: a, arg: b } | AndI { left: a, right: b } | ExE { major: a, minor: b } => 1 + a.size() + b.size(),
            OrE { proof, left, right } => 1 + proof.size() + left.size() + right.size(),
        }
    }
}

impl ProofFile {
    pub fn to_proof(&self, sig: &Signature) -> Result<ProofTerm, ProofFileError> {
        let names = free_names();
        let names: Vec<&str> = names.iter().map(String::as_str).collect();
        self.try_map(
            "root",
            &mut |path, s: &String| {
                parse_formula_open(s, sig, &names).map_err(|error| ProofFileError::Parse { path: path.into(), error })
            },
            &mut |path, s: &String| {
                parse_term(s, sig, &names).map_err(|error| ProofFileError::Parse { path: path.into(), error })
            },
        )
    }

    pub fn from_json(text: &str, sig: &Signature) -> Result<ProofTerm, ProofFileError> {
        let file: ProofFile = serde_json::from_str(text).map_err(|e| ProofFileError::Json(e.to_string()))?;
        file.to_proof(sig)
    }
}

impl ProofTerm {
    pub fn to_file(&self, sig: &Signature) -> ProofFile {
        let r: Result<_, std::convert::Infallible> = self.try_map(
            "root",
            &mut |_, phi: &Formula| Ok(print_formula(sig, phi)),
            &mut |_, t: &Term| Ok(print_term(sig, t)),
        );
        match r {
            Ok(p) => p,
            Err(never) => match never {},
        }
    }

    /// Renumbers assumptions for a context that had `extra` formulas inserted
    /// at position `at`: indices at or past `at` move up by `extra`.
    ///
    /// With `at = |Γ|` this turns a proof from `Γ` into one from `Γ ++ Δ`.
    pub fn shift_assumptions(&self, at: usize, extra: usize) -> ProofTerm {
        self.shift_assumptions_at(at, extra)
    }

    fn shift_assumptions_at(&self, at: usize, extra: usize) -> ProofTerm {
        use Proof::*;
        let go = |p: &ProofTerm| Box::new(p.shift_assumptions_at(at, extra));
        match self {
            Assume { index } => Assume { index: if *index >= at { index + extra } else { *index } },
            ImpI { hyp, body } => ImpI { hyp: hyp.clone(), body: go(body) },
            ImpE { fun, arg } => ImpE { fun: go(fun), arg: go(arg) },
            AndI { left, right } => AndI { left: go(left), right: go(right) },
            AndE1 { proof } => AndE1 { proof: go(proof) },
            AndE2 { proof } => AndE2 { proof: go(proof) },
            OrI1 { right, proof } => OrI1 { right: right.clone(), proof: go(proof) },
            OrI2 { left, proof } => OrI2 { left: left.clone(), proof: go(proof) },
            OrE { proof, left, right } => OrE { proof: go(proof), left: go(left), right: go(right) },
            BotE { target, proof } => BotE { target: target.clone(), proof: go(proof) },
            AllI { proof } => AllI { proof: go(proof) },
            AllE { witness, proof } => AllE { witness: witness.clone(), proof: go(proof) },
            ExI { body, witness, proof } => ExI { body: body.clone(), witness: witness.clone(), proof: go(proof) },
            ExE { major, minor } => ExE { major: go(major), minor: go(minor) },
            DNE { target, proof } => DNE { target: target.clone(), proof: go(proof) },
        }
    }
}

/// Context file: a signature plus assumptions in surface syntax.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ContextFile {
    pub signature: Signature,
    #[serde(default)]
    pub formulas: Vec<String>,
}

impl ContextFile {
    pub fn from_json(text: &str) -> Result<(Signature, Vec<Formula>), ProofFileError> {
        let file: ContextFile = serde_json::from_str(text).map_err(|e| ProofFileError::Json(e.to_string()))?;
        file.signature.validate()?;
        let names = free_names();
        let names: Vec<&str> = names.iter().map(String::as_str).collect();
        let ctx = file
            .formulas
            .iter()
            .enumerate()
            .map(|(index, s)| {
                parse_formula_open(s, &file.signature, &names).map_err(|error| ProofFileError::Context { index, error })
            })
            .collect::<Result<_, _>>()?;
        Ok((file.signature, ctx))
    }
}

fn shift_ctx(ctx: &[Formula]) -> Vec<Formula> {
    let up = Substitution::shift();
    ctx.iter().map(|f| f.subst(&up)).collect()
}

/// Lowers every free index by one; the caller has checked that `Var(0)` is
/// not free.
fn lower(phi: &Formula) -> Formula {
    phi.subst(&Substitution::new(vec![Term::Var(0)], Tail::Shift(-1)))
}

struct Checker<'a> {
    sig: &'a Signature,
    classical: bool,
}

impl Checker<'_> {
    fn err<X>(&self, path: &str, message: impl Into<String>) -> Result<X, ProofError> {
        Err(ProofError { path: path.into(), message: message.into() })
    }

    fn show(&self, phi: &Formula) -> String {
        print_formula(self.sig, phi)
    }

    fn formula(&self, path: &str, phi: &Formula) -> Result<(), ProofError> {
        self.sig.check_formula(phi).or_else(|e| self.err(path, e.to_string()))
    }

    fn check(&self, ctx: &[Formula], p: &ProofTerm, path: &str) -> Result<Formula, ProofError> {
        use Proof::*;
        let sub = |name: &str| format!("{path}.{name}");
        match p {
            Assume { index } => match ctx.get(*index) {
                Some(phi) => Ok(phi.clone()),
                None => self.err(path, format!("assumption {index} is outside a context of length {}", ctx.len())),
            },
            ImpI { hyp, body } => {
                self.formula(&sub("hyp"), hyp)?;
                let mut inner = ctx.to_vec();
                inner.push(hyp.clone());
                let concl = self.check(&inner, body, &sub("body"))?;
                Ok(Formula::imp(hyp.clone(), concl))
            }
            ImpE { fun, arg } => {
                let f = self.check(ctx, fun, &sub("fun"))?;
                let a = self.check(ctx, arg, &sub("arg"))?;
                match f {
                    Formula::Imp(lhs, rhs) if *lhs == a => Ok(*rhs),
                    Formula::Imp(lhs, _) => self.err(
                        path,
                        format!("argument proves {} but the implication needs {}", self.show(&a), self.show(&lhs)),
                    ),
                    other => self.err(path, format!("expected an implication, found {}", self.show(&other))),
                }
            }
            AndI { left, right } => {
                Ok(Formula::and(self.check(ctx, left, &sub("left"))?, self.check(ctx, right, &sub("right"))?))
            }
            AndE1 { proof } | AndE2 { proof } => match self.check(ctx, proof, &sub("proof"))? {
                Formula::And(a, b) => Ok(if matches!(p, AndE1 { .. }) { *a } else { *b }),
                other => self.err(path, format!("expected a conjunction, found {}", self.show(&other))),
            },
            OrI1 { right, proof } => {
                self.formula(&sub("right"), right)?;
                Ok(Formula::or(self.check(ctx, proof, &sub("proof"))?, right.clone()))
            }
            OrI2 { left, proof } => {
                self.formula(&sub("left"), left)?;
                Ok(Formula::or(left.clone(), self.check(ctx, proof, &sub("proof"))?))
            }
            OrE { proof, left, right } => {
                let (a, b) = match self.check(ctx, proof, &sub("proof"))? {
                    Formula::Or(a, b) => (*a, *b),
                    other => return self.err(path, format!("expected a disjunction, found {}", self.show(&other))),
                };
                let mut lctx = ctx.to_vec();
                lctx.push(a);
                let mut rctx = ctx.to_vec();
                rctx.push(b);
                let l = self.check(&lctx, left, &sub("left"))?;
                let r = self.check(&rctx, right, &sub("right"))?;
                if l != r {
                    return self.err(path, format!("branches disagree: {} versus {}", self.show(&l), self.show(&r)));
                }
                Ok(l)
            }
            BotE { target, proof } => {
                self.formula(&sub("target"), target)?;
                match self.check(ctx, proof, &sub("proof"))? {
                    Formula::Bot => Ok(target.clone()),
                    other => self.err(path, format!("expected false, found {}", self.show(&other))),
                }
            }
            AllI { proof } => Ok(Formula::all(self.check(&shift_ctx(ctx), proof, &sub("proof"))?)),
            AllE { witness, proof } => {
                self.sig.check_term(witness).or_else(|e| self.err(&sub("witness"), e.to_string()))?;
                match self.check(ctx, proof, &sub("proof"))? {
                    Formula::All(body) => Ok(body.subst(&Substitution::single(witness.clone()))),
                    other => self.err(path, format!("expected a universal, found {}", self.show(&other))),
                }
            }
            ExI { body, witness, proof } => {
                self.formula(&sub("body"), body)?;
                self.sig.check_term(witness).or_else(|e| self.err(&sub("witness"), e.to_string()))?;
                let want = body.subst(&Substitution::single(witness.clone()));
                let got = self.check(ctx, proof, &sub("proof"))?;
                if got != want {
                    return self.err(path, format!("proof gives {} but the instance is {}", self.show(&got), self.show(&want)));
                }
                Ok(Formula::ex(body.clone()))
            }
            ExE { major, minor } => {
                let body = match self.check(ctx, major, &sub("major"))? {
                    Formula::Ex(body) => *body,
                    other => return self.err(path, format!("expected an existential, found {}", self.show(&other))),
                };
                let mut inner = shift_ctx(ctx);
                inner.push(body);
                let concl = self.check(&inner, minor, &sub("minor"))?;
                if concl.free_vars().contains(&0) {
                    return self.err(path, format!("the witness variable escapes into {}", self.show(&concl)));
                }
                Ok(lower(&concl))
            }
            DNE { target, proof } => {
                if !self.classical {
                    return self.err(path, "classical rule disabled");
                }
                self.formula(&sub("target"), target)?;
                let want = Formula::not(Formula::not(target.clone()));
                let got = self.check(ctx, proof, &sub("proof"))?;
                if got != want {
                    return self.err(path, format!("expected {}, found {}", self.show(&want), self.show(&got)));
                }
                Ok(target.clone())
            }
        }
    }
}

/// Synthesizes the conclusion of `p` from `ctx`.
pub fn check_proof(sig: &Signature, ctx: &[Formula], p: &ProofTerm, classical: bool) -> Result<Formula, ProofError> {
    Checker { sig, classical }.check(ctx, p, "root")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SoundnessReport {
    pub conclusion: String,
    pub max_domain: usize,
    pub models_checked: usize,
    pub models_of_context: usize,
    /// Models that satisfy the context but not the conclusion, as JSON.
    pub violations: Vec<String>,
}

impl SoundnessReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SoundnessError {
    #[error(transparent)]
    Proof(#[from] ProofError),
    #[error("soundness is checked for closed formulas only; {0} is open")]
    Open(String),
}

/// Checks the proof, then evaluates context and conclusion in every model
/// with at most `max_domain` elements.
pub fn soundness_check(
    sig: &Signature,
    ctx: &[Formula],
    p: &ProofTerm,
    classical: bool,
    max_domain: usize,
) -> Result<SoundnessReport, SoundnessError> {
    let concl = check_proof(sig, ctx, p, classical)?;
    if let Some(open) = ctx.iter().chain([&concl]).find(|f| !f.is_closed()) {
        return Err(SoundnessError::Open(print_formula(sig, open)));
    }
    let models: Vec<FiniteModel> = FiniteModel::enumerate_upto(sig, max_domain).collect();
    let env = Env::constant(0);
    let outcomes = par_flat_map(&models, |m| {
        let holds_ctx = ctx.iter().all(|g| sat(m, &env, g));
        Some((holds_ctx, (holds_ctx && !sat(m, &env, &concl)).then(|| m.to_json())))
    });
    Ok(SoundnessReport {
        conclusion: print_formula(sig, &concl),
        max_domain,
        models_checked: models.len(),
        models_of_context: outcomes.iter().filter(|o| o.0).count(),
        violations: outcomes.into_iter().filter_map(|o| o.1).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_formula;

    fn sig() -> Signature {
        Signature::from_pairs(&[("c", 0)], &[("P", 1), ("R", 2)])
    }

    #[test]
    fn corpus_checks_to_expected() {
        for e in corpus() {
            let got = check_proof(&e.sig, &e.context, &e.proof, e.classical).unwrap_or_else(|err| panic!("{}: {err}", e.name));
            assert_eq!(got, e.expected, "{}", e.name);
        }
    }

    #[test]
    fn dne_needs_classical() {
        let peirce = corpus().into_iter().find(|e| e.name == "peirce").unwrap();
        let err = check_proof(&peirce.sig, &[], &peirce.proof, false).unwrap_err();
        assert_eq!(err.message, "classical rule disabled");
        assert_eq!(err.path, "root.body");
    }

    #[test]
    fn errors_carry_paths() {
        let s = sig();
        let p: ProofTerm = Proof::ImpI { hyp: parse_formula("P(c)", &s).unwrap(), body: Box::new(Proof::Assume { index: 3 }) };
        let err = check_proof(&s, &[], &p, false).unwrap_err();
        assert_eq!(err.path, "root.body");
    }

    #[test]
    fn escaping_eigenvariable_rejected() {
        let s = sig();
        let ctx = [parse_formula("exists x. P(x)", &s).unwrap()];
        let p: ProofTerm = Proof::ExE { major: Box::new(Proof::Assume { index: 0 }), minor: Box::new(Proof::Assume { index: 1 }) };
        let err = check_proof(&s, &ctx, &p, false).unwrap_err();
        assert!(err.message.contains("escapes"), "{err}");
    }

    #[test]
    fn file_roundtrip() {
        for e in corpus() {
            let file = e.proof.to_file(&e.sig);
            let json = serde_json::to_string(&file).unwrap();
            assert_eq!(ProofFile::from_json(&json, &e.sig).unwrap(), e.proof, "{}", e.name);
        }
    }
}
