//! `skolemkit`: command-line front end for the logic kernel, the DLS
//! pipeline, the choice-principle constructions and the Heyting checks.
//!
//! Exit codes: 0 when every check passes, 1 when a verification fails, 2 on
//! bad input or usage.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use skolemkit_core::deduction::{check_proof, soundness_check, ContextFile, ProofFile, SoundnessError};
use skolemkit_core::fleet::{run_fleet, DEFAULT_SEED};
use skolemkit_core::henkin::{dls_pipeline, dls_with_env, render_dls, saturated_env};
use skolemkit_core::heyting::{dp_witness_report, validate_algebra, FiniteHeytingAlgebra, HValuation, HeytingError};
use skolemkit_core::principles::{
    bcc_blur, bcc_from_bdc_gadget, bdc2_from_ddc_bcc, blur_via_dls, check_witness, dc_via_dls, ddc_extract, obdc_blur,
    Blur, BlurKind, CcInstance, Instance, ObdcMode, PathMode, PrincipleError, RelationTable, Witness, WitnessKind,
    BLUR_BUDGET, DLS_BUDGET,
};
use skolemkit_core::semantics::{sat, Budget, Env, FiniteModel};
use skolemkit_core::syntax::{parse_formula_open, print_formula, Signature, Symbol};

#[derive(Parser)]
#[command(name = "skolemkit", version, about = "Finite model theory and Löwenheim–Skolem workbench")]
struct Cli {
    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a formula and show its de Bruijn form.
    Parse {
        formula: String,
        #[command(flatten)]
        sig: SigArgs,
    },
    /// Evaluate a formula in a finite model.
    Eval {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        formula: String,
        /// Values of the free variables v0, v1, …, repeated cyclically.
        #[arg(long, value_delimiter = ',', default_value = "0")]
        env: Vec<usize>,
    },
    /// Check a natural-deduction proof against a context.
    Check {
        #[arg(long)]
        context: PathBuf,
        #[arg(long)]
        proof: PathBuf,
        /// Allow double negation elimination.
        #[arg(long)]
        classical: bool,
        /// Also test the conclusion in every model of the context up to this size.
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=3))]
        soundness: Option<u64>,
    },
    /// Build a syntactic elementary submodel and verify it.
    Dls {
        #[arg(long)]
        model: PathBuf,
        /// Formula size budget k.
        #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(u64).range(1..))]
        budget: u64,
        /// Term depth d of the checked term-model slice.
        #[arg(long, default_value_t = 2)]
        depth: u64,
        /// Use the whole domain as the environment instead of the staged construction.
        #[arg(long, value_enum)]
        oracle: Option<Oracle>,
    },
    /// Finite instances of choice and drinker principles.
    #[command(subcommand)]
    Principle(PrincipleCmd),
    /// Validate a finite Heyting algebra and optionally evaluate the drinker instances.
    Heyting {
        /// `bool2`, `diamond`, or a path to an algebra file.
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        dp: bool,
        /// Valuation file for --dp; defaults to P(true)=a, P(false)=b.
        #[arg(long)]
        valuation: Option<PathBuf>,
    },
    /// Run the full property fleet.
    Fleet {
        #[arg(long, env = "SKOLEMKIT_SEED")]
        seed: Option<u64>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Oracle {
    Saturate,
}

#[derive(Args)]
struct SigArgs {
    /// Take the signature from a model file.
    #[arg(long, conflicts_with_all = ["functions", "relations"])]
    model: Option<PathBuf>,
    /// Function symbols, e.g. `c/0,f/1`.
    #[arg(long, default_value = "")]
    functions: String,
    /// Relation symbols, e.g. `P/1,R/2`.
    #[arg(long, default_value = "")]
    relations: String,
}

#[derive(Subcommand)]
enum PrincipleCmd {
    /// A path through a total binary relation.
    Dc {
        #[arg(long)]
        relation: PathBuf,
        #[arg(long, default_value_t = 0)]
        start: usize,
    },
    /// A Henkin blur for a predicate.
    Blur {
        #[arg(long)]
        predicate: PathBuf,
        #[arg(long, value_enum, default_value_t = Kind::Dp)]
        kind: Kind,
    },
    /// A blurred choice function for a window instance.
    Bcc {
        #[arg(long)]
        instance: PathBuf,
        /// Go through a blurred path of the dependent-choice gadget.
        #[arg(long)]
        via_bdc: bool,
    },
    /// A blur on which a directed relation stays directed.
    Ddc {
        #[arg(long)]
        relation: PathBuf,
    },
    /// A blur on which a total ternary relation stays total.
    Bdc2 {
        #[arg(long)]
        relation: PathBuf,
    },
    /// A blur reflecting totality of a ternary relation.
    Obdc {
        #[arg(long)]
        relation: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::Dls)]
        mode: Mode,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Dp,
    Ep,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Dls,
    Saturate,
}

/// An input problem: exit code 2.
#[derive(Debug)]
struct CliError {
    code: &'static str,
    message: String,
}

fn input(code: &'static str, message: impl ToString) -> CliError {
    CliError { code, message: message.to_string() }
}

struct Outcome {
    passed: bool,
    json: Value,
    text: String,
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| input("io", format!("{}: {e}", path.display())))
}

fn load_model(path: &Path) -> Result<FiniteModel, CliError> {
    FiniteModel::from_json(&read(path)?).map_err(|e| input("model", format!("{}: {e}", path.display())))
}

fn load_json<T: serde::de::DeserializeOwned>(path: &Path, code: &'static str) -> Result<T, CliError> {
    serde_json::from_str(&read(path)?).map_err(|e| input(code, format!("{}: {e}", path.display())))
}

fn load_relation(path: &Path) -> Result<RelationTable, CliError> {
    let r: RelationTable = load_json(path, "relation")?;
    r.validate().map_err(|e| input("relation", format!("{}: {e}", path.display())))?;
    Ok(r)
}

fn free_names() -> Vec<String> {
    (0..64).map(|j| format!("v{j}")).collect()
}

fn parse_symbols(spec: &str) -> Result<Vec<Symbol>, CliError> {
    spec.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            let (name, arity) = s.split_once('/').ok_or_else(|| input("signature", format!("`{s}` is not NAME/ARITY")))?;
            let arity = arity.parse().map_err(|_| input("signature", format!("bad arity in `{s}`")))?;
            Ok(Symbol::new(name, arity))
        })
        .collect()
}

fn signature(args: &SigArgs) -> Result<Signature, CliError> {
    if let Some(path) = &args.model {
        return Ok(load_model(path)?.sig().clone());
    }
    Signature::new(parse_symbols(&args.functions)?, parse_symbols(&args.relations)?).map_err(|e| input("signature", e))
}

fn parse_in(sig: &Signature, text: &str) -> Result<skolemkit_core::syntax::Formula, CliError> {
    let names = free_names();
    let names: Vec<&str> = names.iter().map(String::as_str).collect();
    parse_formula_open(text, sig, &names).map_err(|e| input("parse", e))
}

fn verdict(b: bool) -> &'static str {
    if b {
        "pass"
    } else {
        "FAIL"
    }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

fn cmd_parse(formula: &str, sig: &SigArgs) -> Result<Outcome, CliError> {
    let sig = signature(sig)?;
    let phi = parse_in(&sig, formula)?;
    let printed = print_formula(&sig, &phi);
    let free: Vec<usize> = phi.free_vars().into_iter().collect();
    Ok(Outcome {
        passed: true,
        json: json!({
            "formula": printed,
            "tree": to_value(&phi),
            "size": phi.size(),
            "free_vars": free,
            "negative": phi.is_negative(),
        }),
        text: format!("{printed}\nsize {}; free {:?}; negative fragment: {}\n{phi:?}\n", phi.size(), free, phi.is_negative()),
    })
}

fn cmd_eval(model: &Path, formula: &str, env: &[usize]) -> Result<Outcome, CliError> {
    let m = load_model(model)?;
    let phi = parse_in(m.sig(), formula)?;
    if env.is_empty() || !env.iter().all(|&x| x < m.domain_size()) {
        return Err(input("env", format!("environment values must be below the domain size {}", m.domain_size())));
    }
    let rho = Env::new(env.to_vec());
    let holds = sat(&m, &rho, &phi);
    let printed = print_formula(m.sig(), &phi);
    Ok(Outcome {
        passed: true,
        json: json!({ "formula": printed, "env": env, "holds": holds }),
        text: format!("{printed}: {holds}\n"),
    })
}

fn cmd_check(context: &Path, proof: &Path, classical: bool, soundness: Option<u64>) -> Result<Outcome, CliError> {
    let (sig, ctx) = ContextFile::from_json(&read(context)?).map_err(|e| input("context", format!("{}: {e}", context.display())))?;
    let p = ProofFile::from_json(&read(proof)?, &sig).map_err(|e| input("proof", format!("{}: {e}", proof.display())))?;
    let mut json = json!({ "classical": classical, "proof_size": p.size() });
    let mut text = String::new();
    let mut passed = match check_proof(&sig, &ctx, &p, classical) {
        Ok(concl) => {
            let shown = print_formula(&sig, &concl);
            json["conclusion"] = json!(shown);
            let _ = writeln!(text, "proves: {shown}");
            true
        }
        Err(e) => {
            json["error"] = json!({ "path": e.path, "message": e.message });
            let _ = writeln!(text, "rejected at {}: {}", e.path, e.message);
            false
        }
    };
    if let (true, Some(n)) = (passed, soundness) {
        match soundness_check(&sig, &ctx, &p, classical, n as usize) {
            Ok(r) => {
                let _ = writeln!(
                    text,
                    "soundness up to size {n}: {} ({} models, {} satisfy the context, {} violations)",
                    verdict(r.passed()),
                    r.models_checked,
                    r.models_of_context,
                    r.violations.len()
                );
                passed = r.passed();
                json["soundness"] = to_value(&r);
            }
            Err(SoundnessError::Open(f)) => return Err(input("soundness", format!("{f} is not closed"))),
            Err(SoundnessError::Proof(e)) => return Err(input("proof", e)),
        }
    }
    json["passed"] = json!(passed);
    Ok(Outcome { passed, json, text })
}

fn cmd_dls(model: &Path, budget: u64, depth: u64, oracle: Option<Oracle>) -> Result<Outcome, CliError> {
    let m = load_model(model)?;
    let (k, d) = (budget as usize, depth as usize);
    let report = match oracle {
        None => dls_pipeline(&m, k, d),
        Some(Oracle::Saturate) => {
            let mut r = dls_with_env(&m, &saturated_env(&m), Budget::new(k, d));
            r.env_source = "saturate".into();
            r
        }
    };
    Ok(Outcome { passed: report.passed(), json: to_value(&report), text: render_dls(&report) })
}

/// Bad shapes and unmet preconditions are input errors; anything else means
/// a construction did not verify.
fn principle_error(e: PrincipleError) -> Result<Outcome, CliError> {
    match e {
        PrincipleError::Internal(msg) => Ok(Outcome {
            passed: false,
            json: json!({ "passed": false, "error": msg }),
            text: format!("verification failed: {msg}\n"),
        }),
        other => Err(input("precondition", other)),
    }
}

fn blur_outcome(name: &str, blur: &Blur, verified: Result<bool, PrincipleError>, extra: Value) -> Result<Outcome, CliError> {
    let verified = match verified {
        Ok(v) => v,
        Err(e) => return principle_error(e),
    };
    let mut json = json!({ "principle": name, "blur": to_value(blur), "verified": verified });
    if let (Value::Object(dst), Value::Object(src)) = (&mut json, extra) {
        dst.extend(src);
    }
    Ok(Outcome { passed: verified, text: format!("{name}: blur {:?} ({})\n", blur.table, verdict(verified)), json })
}

fn cmd_principle(cmd: &PrincipleCmd) -> Result<Outcome, CliError> {
    match cmd {
        PrincipleCmd::Dc { relation, start } => {
            let r = load_relation(relation)?;
            if *start >= r.carrier {
                return Err(input("start", format!("start {start} is outside a carrier of size {}", r.carrier)));
            }
            let g = match dc_via_dls(&r, *start, DLS_BUDGET) {
                Ok(g) => g,
                Err(e) => return principle_error(e),
            };
            let ok = check_witness(WitnessKind::Path, &Instance::Relation(r), &Witness::Lasso(g.clone()));
            let ok = match ok {
                Ok(v) => v,
                Err(e) => return principle_error(e),
            };
            let first: Vec<usize> = (0..12).map(|n| g.get(n)).collect();
            Ok(Outcome {
                passed: ok,
                json: json!({ "principle": "dc", "path": to_value(&g), "verified": ok }),
                text: format!("dc: prefix {:?} cycle {:?}; first values {first:?} ({})\n", g.prefix, g.cycle, verdict(ok)),
            })
        }
        PrincipleCmd::Blur { predicate, kind } => {
            let p = load_relation(predicate)?;
            let (bk, wk, name) = match kind {
                Kind::Dp => (BlurKind::Dp, WitnessKind::DpBlur, "blur (dp)"),
                Kind::Ep => (BlurKind::Ep, WitnessKind::EpBlur, "blur (ep)"),
            };
            match blur_via_dls(&p, bk, BLUR_BUDGET) {
                Ok(f) => {
                    let v = check_witness(wk, &Instance::Relation(p), &Witness::Blur(f.clone()));
                    blur_outcome(name, &f, v, json!({}))
                }
                Err(e) => principle_error(e),
            }
        }
        PrincipleCmd::Bcc { instance, via_bdc } => {
            let inst: CcInstance = load_json(instance, "instance")?;
            inst.validate().map_err(|e| input("instance", e))?;
            if *via_bdc {
                match bcc_from_bdc_gadget(&inst, PathMode::Dls) {
                    Ok(c) => {
                        let v = check_witness(WitnessKind::Bcc, &Instance::Window(inst), &Witness::Blur(c.blur.clone()));
                        let extra = json!({ "path": to_value(&c.path), "first_projection_onto": c.first_projection_onto });
                        let mut out = blur_outcome("bcc via bdc", &c.blur, v, extra)?;
                        out.passed &= c.first_projection_onto;
                        Ok(out)
                    }
                    Err(e) => principle_error(e),
                }
            } else {
                match bcc_blur(&inst) {
                    Ok(f) => {
                        let v = check_witness(WitnessKind::Bcc, &Instance::Window(inst), &Witness::Blur(f.clone()));
                        blur_outcome("bcc", &f, v, json!({}))
                    }
                    Err(e) => principle_error(e),
                }
            }
        }
        PrincipleCmd::Ddc { relation } => {
            let r = load_relation(relation)?;
            match ddc_extract(&r) {
                Ok(f) => {
                    let v = check_witness(WitnessKind::Ddc, &Instance::Relation(r), &Witness::Blur(f.clone()));
                    blur_outcome("ddc", &f, v, json!({}))
                }
                Err(e) => principle_error(e),
            }
        }
        PrincipleCmd::Bdc2 { relation } => {
            let r = load_relation(relation)?;
            match bdc2_from_ddc_bcc(&r) {
                Ok(c) => {
                    let v = check_witness(WitnessKind::Bdc2, &Instance::Relation(r), &Witness::Blur(c.blur.clone()));
                    let extra = json!({
                        "stages": c.stages.iter().map(|e| e.table().to_vec()).collect::<Vec<_>>(),
                        "step_holds": c.step_holds,
                        "directed": c.directed,
                    });
                    let mut out = blur_outcome("bdc2", &c.blur, v, extra)?;
                    out.passed &= c.directed && c.step_holds.iter().all(|&b| b);
                    let _ = writeln!(out.text, "stages: {}; step property: {}", c.stages.len(), verdict(out.passed));
                    Ok(out)
                }
                Err(e) => principle_error(e),
            }
        }
        PrincipleCmd::Obdc { relation, mode } => {
            let r = load_relation(relation)?;
            let mode = match mode {
                Mode::Dls => ObdcMode::Dls,
                Mode::Saturate => ObdcMode::Saturate,
            };
            match obdc_blur(&r, mode) {
                Ok(f) => {
                    let v = check_witness(WitnessKind::Obdc, &Instance::Relation(r), &Witness::Blur(f.clone()));
                    blur_outcome("obdc", &f, v, json!({}))
                }
                Err(e) => principle_error(e),
            }
        }
    }
}

fn load_algebra(spec: &str) -> Result<FiniteHeytingAlgebra, CliError> {
    match FiniteHeytingAlgebra::builtin(spec) {
        Ok(h) => Ok(h),
        Err(HeytingError::UnknownBuiltin(_)) if Path::new(spec).exists() => {
            FiniteHeytingAlgebra::from_json(&read(Path::new(spec))?).map_err(|e| input("algebra", format!("{spec}: {e}")))
        }
        Err(e) => Err(input("algebra", e)),
    }
}

fn cmd_heyting(algebra: &str, dp: bool, valuation: Option<&Path>) -> Result<Outcome, CliError> {
    let h = load_algebra(algebra)?;
    let report = validate_algebra(&h);
    let n = h.size();
    let labels: Vec<&str> = (0..n).map(|a| h.label(a)).collect();
    let imp: Vec<Vec<&str>> = (0..n).map(|a| (0..n).map(|b| h.label(h.imp(a, b))).collect()).collect();
    let mut text = format!("elements: {}\nlaws: {}\n", labels.join(" "), verdict(report.passed));
    if let Some(v) = &report.violation {
        let _ = writeln!(text, "  {v}");
    }
    text.push_str("implication (row → column):\n");
    for (a, row) in imp.iter().enumerate() {
        let _ = writeln!(text, "  {:>3} | {}", labels[a], row.iter().map(|s| format!("{s:>3}")).collect::<Vec<_>>().join(" "));
    }
    let mut json = json!({ "elements": labels, "validation": to_value(&report), "imp": imp });
    let passed = report.passed;
    if dp {
        let v = match valuation {
            Some(path) => load_json::<HValuation>(path, "valuation")?,
            None => {
                let (a, b) = (h.element("a"), h.element("b"));
                let (Some(a), Some(b)) = (a, b) else {
                    return Err(input("valuation", "the default valuation needs elements labelled a and b; pass --valuation"));
                };
                HValuation { relations: vec![vec![a, b]], ..HValuation::diamond_drinker() }
            }
        };
        let r = dp_witness_report(&h, &v, 0).map_err(|e| input("valuation", e))?;
        text.push_str("drinker instances P(d) → ∀y. P(y):\n");
        for w in &r.witnesses {
            let _ = writeln!(text, "  d = {}: {}{}", w.element, w.value_label, if w.is_top { "" } else { " (not ⊤)" });
        }
        let _ = writeln!(text, "∃x. (P(x) → ∀y. P(y)) = {}", r.join_label);
        json["dp"] = to_value(&r);
    }
    json["passed"] = json!(passed);
    Ok(Outcome { passed, json, text })
}

fn cmd_fleet(seed: Option<u64>) -> Outcome {
    let report = run_fleet(seed.unwrap_or(DEFAULT_SEED));
    let mut text = format!("seed {}\n", report.seed);
    for c in &report.criteria {
        let _ = writeln!(text, "{:>2} {} {}: {} ({} checks)", c.id, verdict(c.passed), c.name, c.summary, c.cases);
        for f in &c.failures {
            let _ = writeln!(text, "     {f}");
        }
    }
    let _ = writeln!(text, "overall: {}", verdict(report.passed));
    Outcome { passed: report.passed, json: to_value(&report), text }
}

fn run(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Parse { formula, sig } => cmd_parse(formula, sig),
        Command::Eval { model, formula, env } => cmd_eval(model, formula, env),
        Command::Check { context, proof, classical, soundness } => cmd_check(context, proof, *classical, *soundness),
        Command::Dls { model, budget, depth, oracle } => cmd_dls(model, *budget, *depth, *oracle),
        Command::Principle(p) => cmd_principle(p),
        Command::Heyting { algebra, dp, valuation } => cmd_heyting(algebra, *dp, valuation.as_deref()),
        Command::Fleet { seed } => Ok(cmd_fleet(*seed)),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            match cli.format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&out.json).expect("json")),
                Format::Text => print!("{}", out.text),
            }
            if out.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            match cli.format {
                Format::Json => eprintln!("{}", json!({ "error": { "code": e.code, "message": e.message } })),
                Format::Text => eprintln!("error[{}]: {}", e.code, e.message),
            }
            ExitCode::from(2)
        }
    }
}
