//! A fixed set of checked proofs over the signature `c/0, P/1, R/2`.

use crate::syntax::{Formula, Signature};

use super::{Proof, ProofFile, ProofTerm};

#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub name: &'static str,
    pub sig: Signature,
    pub context: Vec<Formula>,
    pub proof: ProofTerm,
    pub classical: bool,
    /// The conclusion the checker must produce.
    pub expected: Formula,
}

fn b(p: ProofFile) -> Box<ProofFile> {
    Box::new(p)
}

fn assume(index: usize) -> ProofFile {
    Proof::Assume { index }
}

fn imp_i(hyp: &str, body: ProofFile) -> ProofFile {
    Proof::ImpI { hyp: hyp.into(), body: b(body) }
}

fn imp_e(fun: ProofFile, arg: ProofFile) -> ProofFile {
    Proof::ImpE { fun: b(fun), arg: b(arg) }
}

fn all_e(witness: &str, proof: ProofFile) -> ProofFile {
    Proof::AllE { witness: witness.into(), proof: b(proof) }
}

fn entry(name: &'static str, ctx: &[&str], proof: ProofFile, classical: bool, expected: &str) -> CorpusEntry {
    let sig = Signature::from_pairs(&[("c", 0)], &[("P", 1), ("R", 2)]);
    let parse = |s: &str| crate::syntax::parse_formula(s, &sig).expect("corpus formula");
    CorpusEntry {
        name,
        context: ctx.iter().map(|s| parse(s)).collect(),
        proof: proof.to_proof(&sig).expect("corpus proof"),
        classical,
        expected: parse(expected),
        sig,
    }
}

pub fn corpus() -> Vec<CorpusEntry> {
    use Proof::*;
    vec![
        entry("identity", &[], imp_i("P(c)", assume(0)), false, "P(c) -> P(c)"),
        entry("instantiate", &["forall x. P(x)"], all_e("c", assume(0)), false, "P(c)"),
        entry(
            "and-swap",
            &[],
            imp_i("P(c) /\\ R(c, c)", AndI { left: b(AndE2 { proof: b(assume(0)) }), right: b(AndE1 { proof: b(assume(0)) }) }),
            false,
            "P(c) /\\ R(c, c) -> R(c, c) /\\ P(c)",
        ),
        entry(
            "or-swap",
            &[],
            imp_i(
                "P(c) \\/ R(c, c)",
                OrE {
                    proof: b(assume(0)),
                    left: b(OrI2 { left: "R(c, c)".into(), proof: b(assume(1)) }),
                    right: b(OrI1 { right: "P(c)".into(), proof: b(assume(1)) }),
                },
            ),
            false,
            "P(c) \\/ R(c, c) -> R(c, c) \\/ P(c)",
        ),
        entry("explosion", &[], imp_i("false", BotE { target: "P(c)".into(), proof: b(assume(0)) }), false, "false -> P(c)"),
        entry(
            "all-to-ex",
            &["forall x. P(x)"],
            ExI { body: "P(v0)".into(), witness: "c".into(), proof: b(all_e("c", assume(0))) },
            false,
            "exists x. P(x)",
        ),
        entry(
            "all-modus-ponens",
            &["forall x. P(x)", "forall x. P(x) -> R(x, x)"],
            AllI { proof: b(imp_e(all_e("v0", assume(1)), all_e("v0", assume(0)))) },
            false,
            "forall x. R(x, x)",
        ),
        entry(
            "ex-transfer",
            &["exists x. P(x)", "forall x. P(x) -> R(x, c)"],
            ExE {
                major: b(assume(0)),
                minor: b(ExI {
                    body: "R(v0, c)".into(),
                    witness: "v0".into(),
                    proof: b(imp_e(all_e("v0", assume(1)), assume(2))),
                }),
            },
            false,
            "exists y. R(y, c)",
        ),
        entry(
            "all-and-projection",
            &[],
            imp_i(
                "forall x. P(x) /\\ R(x, x)",
                AllI { proof: b(AndE1 { proof: b(all_e("v0", assume(0))) }) },
            ),
            false,
            "(forall x. P(x) /\\ R(x, x)) -> forall x. P(x)",
        ),
        entry(
            "ex-not-to-not-all",
            &["exists x. ~P(x)"],
            imp_i(
                "forall x. P(x)",
                ExE { major: b(assume(0)), minor: b(imp_e(assume(2), all_e("v0", assume(1)))) },
            ),
            false,
            "~forall x. P(x)",
        ),
        // Peirce's law for closed atoms: ((A -> B) -> A) -> A.
        entry(
            "peirce",
            &[],
            imp_i(
                "(P(c) -> R(c, c)) -> P(c)",
                DNE {
                    target: "P(c)".into(),
                    proof: b(imp_i(
                        "~P(c)",
                        imp_e(
                            assume(1),
                            imp_e(
                                assume(0),
                                imp_i("P(c)", BotE { target: "R(c, c)".into(), proof: b(imp_e(assume(1), assume(2))) }),
                            ),
                        ),
                    )),
                },
            ),
            true,
            "((P(c) -> R(c, c)) -> P(c)) -> P(c)",
        ),
    ]
}
