//! Command-line front end. Exit status: 0 on pass, 1 on a failed verdict
//! or stage, 2 on usage and parse errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::catalog::{
    get_principle, golden_text, pipeline_with, plus_version, Kind, PipelineOptions, Report, Status,
    CONSEQUENT, PIPELINE_PRINCIPLES, PRINCIPLE_NAMES,
};
use crate::error::{Error, Result};
use crate::extraction::{collapse_all, extract, herbrandise, meta_reverse, Herbrandisation};
use crate::normalform::{is_normal_form, normalize, Logic, RuleName};
use crate::semantics::{
    check_extraction, check_rule_soundness, exhaustive_realiser, ModelConfig, SoundnessConfig,
    TwoLevelModel,
};
use crate::syntax::{alpha_eq, parse_document, print_formula, Formula, Signature};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Environment variable overriding `--seed`.
pub const SEED_VAR: &str = "NSZOO_SEED";

#[derive(Parser, Debug)]
#[command(name = "nszoo", version, about = "Normal forms, extraction and Herbrandisation for nonstandard arithmetic")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum LogicArg {
    Classical,
    Intuitionistic,
}

impl From<LogicArg> for Logic {
    fn from(l: LogicArg) -> Logic {
        match l {
            LogicArg::Classical => Logic::Classical,
            LogicArg::Intuitionistic => Logic::Intuitionistic,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, ValueEnum)]
pub enum ReportFormat {
    #[default]
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse and typecheck a formula file.
    Parse { file: PathBuf },
    /// Print a formula file in canonical form.
    Print { file: PathBuf },
    /// Compute a normal form and the rule trace.
    Normalize {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "classical")]
        logic: LogicArg,
        #[arg(long, value_enum, default_value = "text")]
        format: ReportFormat,
    },
    /// Extract witness terms from the normal form of a formula file.
    Extract {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "classical")]
        logic: LogicArg,
    },
    /// Herbrandise `ANTECEDENT -> CONSEQUENT`; either may be a catalog name.
    Herbrandise {
        antecedent: String,
        #[arg(long, default_value = CONSEQUENT)]
        consequent: String,
    },
    /// Herbrandise, then recover the implication.
    MetaReverse {
        antecedent: String,
        #[arg(long, default_value = CONSEQUENT)]
        consequent: String,
    },
    /// Browse the principle catalog.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Run the full pipeline for a principle.
    Pipeline {
        name: String,
        #[arg(long, value_enum)]
        logic: LogicArg,
        /// Directory of reference texts; the shipped ones by default.
        #[arg(long)]
        golden: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
        /// Also run the rule-soundness suite.
        #[arg(long)]
        soundness: bool,
        /// Record per-stage timings (makes the output irreproducible).
        #[arg(long)]
        timings: bool,
        #[arg(long, value_enum, default_value = "json")]
        format: ReportFormat,
    },
    /// Check a rule or an extraction in small finite models.
    ModelCheck {
        #[command(subcommand)]
        target: CheckTarget,
    },
}

#[derive(Subcommand, Debug)]
enum CatalogAction {
    List,
    Show { name: String },
}

#[derive(Subcommand, Debug)]
enum CheckTarget {
    /// Soundness of one rewrite rule.
    Rule {
        name: String,
        #[arg(long)]
        seed: Option<u64>,
        /// Largest domain size.
        #[arg(long, default_value_t = 3)]
        size: u32,
        #[arg(long, default_value_t = 1000)]
        pairs: usize,
        /// Write counterexamples to this file.
        #[arg(long)]
        dump: Option<PathBuf>,
    },
    /// Validity of the terms extracted from a formula file, with every
    /// witness realised by the full candidate list.
    Extraction {
        file: PathBuf,
        #[arg(long)]
        seed: Option<u64>,
        /// Domain size; the whole domain is standard.
        #[arg(long, default_value_t = 3)]
        size: u32,
        #[arg(long, value_enum, default_value = "classical")]
        logic: LogicArg,
    },
}

/// Outcome of a command before it is written out.
struct Outcome {
    code: i32,
    stdout: String,
}

impl Outcome {
    fn new(pass: bool, stdout: String) -> Outcome {
        Outcome {
            code: if pass { EXIT_PASS } else { EXIT_FAIL },
            stdout,
        }
    }
}

fn is_input_error(e: &Error) -> bool {
    matches!(
        e,
        Error::Syntax { .. }
            | Error::Type { .. }
            | Error::Undeclared(_)
            | Error::Unbound(_)
            | Error::Io(_)
            | Error::UnknownPrinciple(_)
            | Error::Bounds(_)
    )
}

/// Runs one invocation, writing to the given streams; returns the exit status.
pub fn run_command<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{}", text);
            } else {
                let _ = write!(err, "{}", text);
            }
            return if code == 0 { EXIT_PASS } else { EXIT_USAGE };
        }
    };
    let env_seed = std::env::var(SEED_VAR).ok();
    match dispatch(cli.command, env_seed.as_deref()) {
        Ok(o) => {
            let _ = write!(out, "{}", o.stdout);
            o.code
        }
        Err((e, partial)) => {
            if let Some(p) = partial {
                let _ = write!(out, "{}", p);
            }
            let _ = writeln!(err, "error: {}", e);
            if is_input_error(&e) {
                EXIT_USAGE
            } else {
                EXIT_FAIL
            }
        }
    }
}

type Failure = (Error, Option<String>);

fn plain<T>(r: Result<T>) -> std::result::Result<T, Failure> {
    r.map_err(|e| (e, None))
}

/// `--seed`, overridden by the environment.
fn seed(flag: Option<u64>, env: Option<&str>) -> std::result::Result<u64, Failure> {
    match env {
        Some(s) => s
            .trim()
            .parse()
            .map_err(|_| (Error::Io(format!("{} is not a number: {}", SEED_VAR, s)), None)),
        None => Ok(flag.unwrap_or(0)),
    }
}

fn read_file(path: &PathBuf) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {}", path.display(), e)))
}

fn read_formula(path: &PathBuf) -> Result<(Signature, Formula)> {
    parse_document(&read_file(path)?, &Signature::new())
}

/// A catalog name (its plus version when it is uniform) or a formula file.
fn load_statement(arg: &str) -> Result<(Signature, Formula)> {
    match get_principle(arg) {
        Ok(p) if p.kind == Kind::Uniform => {
            let plus = plus_version(&p)?;
            Ok((plus.signature, plus.statement))
        }
        Ok(p) => Ok((p.signature, p.statement)),
        Err(_) => read_formula(&PathBuf::from(arg)),
    }
}

fn pretty(v: &Value) -> String {
    format!("{}\n", serde_json::to_string_pretty(v).expect("json serialises"))
}

fn dispatch(command: Command, env_seed: Option<&str>) -> std::result::Result<Outcome, Failure> {
    match command {
        Command::Parse { file } => {
            let (sig, f) = plain(read_formula(&file))?;
            let v = json!({
                "formula": print_formula(&f),
                "signature": sig.restricted_to(&f).to_string(),
                "internal": f.is_internal(),
                "normal_form": is_normal_form(&f).is_some(),
                "free_variables": f.free_names(),
            });
            Ok(Outcome::new(true, pretty(&v)))
        }
        Command::Print { file } => {
            let (sig, f) = plain(read_formula(&file))?;
            Ok(Outcome::new(true, golden_text(&sig, &f)))
        }
        Command::Normalize { file, logic, format } => {
            let (_, f) = plain(read_formula(&file))?;
            let (nf, trace) = plain(normalize(&f, logic.into()))?;
            let text = match format {
                ReportFormat::Text => format!("{}\n\n{}", print_formula(&nf.to_formula()), trace.to_text()),
                ReportFormat::Json => pretty(&json!({
                    "normal_form": print_formula(&nf.to_formula()),
                    "trace": trace.to_json(),
                })),
            };
            Ok(Outcome::new(true, text))
        }
        Command::Extract { file, logic } => {
            let (_, f) = plain(read_formula(&file))?;
            let (nf, trace) = plain(normalize(&f, logic.into()))?;
            let mut r = plain(extract(&nf, &trace))?;
            plain(collapse_all(&mut r))?;
            Ok(Outcome::new(true, pretty(&r.to_json())))
        }
        Command::Herbrandise { antecedent, consequent } => {
            let h = plain(herbrandise_pair(&antecedent, &consequent))?.0;
            Ok(Outcome::new(true, pretty(&h.to_json())))
        }
        Command::MetaReverse { antecedent, consequent } => {
            let (h, original) = plain(herbrandise_pair(&antecedent, &consequent))?;
            let back = plain(meta_reverse(&h))?;
            let ok = alpha_eq(&back, &original);
            let v = json!({
                "herbrandisation": print_formula(&h.body),
                "meta_reversal": print_formula(&back),
                "round_trip": if ok { "pass" } else { "fail" },
            });
            Ok(Outcome::new(ok, pretty(&v)))
        }
        Command::Catalog { action } => match action {
            CatalogAction::List => {
                let mut text = String::new();
                for name in PRINCIPLE_NAMES {
                    let p = plain(get_principle(name))?;
                    let tag = if PIPELINE_PRINCIPLES.contains(&name) { " (pipeline)" } else { "" };
                    text.push_str(&format!("{}\t{:?}{}\n", name, p.kind, tag));
                }
                Ok(Outcome::new(true, text))
            }
            CatalogAction::Show { name } => {
                let p = plain(get_principle(&name))?;
                Ok(Outcome::new(true, p.text()))
            }
        },
        Command::Pipeline {
            name,
            logic,
            golden,
            seed: flag,
            soundness,
            timings,
            format,
        } => {
            let seed = seed(flag, env_seed)?;
            let options = PipelineOptions {
                golden_dir: golden,
                timings,
                seed: Some(seed),
                soundness: soundness.then(|| SoundnessConfig {
                    seed,
                    ..SoundnessConfig::default()
                }),
            };
            match pipeline_with(&name, logic.into(), &options) {
                Ok(r) => Ok(Outcome::new(r.passed(), emit_report(&r, format))),
                Err(e) => Err((e.error, Some(emit_report(&e.report, format)))),
            }
        }
        Command::ModelCheck { target } => match target {
            CheckTarget::Rule {
                name,
                seed: flag,
                size,
                pairs,
                dump,
            } => {
                let rule: RuleName = plain(parse_rule(&name))?;
                let config = SoundnessConfig {
                    pairs,
                    max_size: size,
                    level: 1,
                    seed: seed(flag, env_seed)?,
                };
                if size == 0 || size > crate::semantics::MAX_SIZE {
                    return Err((Error::Bounds(format!("size {} outside 1..=4", size)), None));
                }
                let r = plain(check_rule_soundness(rule, &config))?;
                // idealisation is only valid in infinite structures: a
                // counterexample is the expected outcome
                let expect_sound = rule != RuleName::Idealisation;
                let expected = r.pass == expect_sound;
                if let Some(path) = dump {
                    let text: String = r.counterexamples.iter().map(|c| c.to_text() + "\n").collect();
                    plain(std::fs::write(&path, text).map_err(|e| Error::Io(e.to_string())))?;
                }
                let v = json!({
                    "rule": rule,
                    "seed": config.seed,
                    "max_size": size,
                    "expected": if expect_sound { "sound" } else { "counterexample" },
                    "verdict": if expected { Status::Pass } else { Status::Fail },
                    "report": r,
                });
                Ok(Outcome::new(expected, pretty(&v)))
            }
            CheckTarget::Extraction {
                file,
                seed: flag,
                size,
                logic,
            } => {
                let seed = seed(flag, env_seed)?;
                let (sig, f) = plain(read_formula(&file))?;
                let (nf, trace) = plain(normalize(&f, logic.into()))?;
                let mut r = plain(extract(&nf, &trace))?;
                plain(collapse_all(&mut r))?;
                let config = ModelConfig::new(size, size).seed(seed);
                let mut model = plain(TwoLevelModel::new(config, &sig.merged(&r.signature)))?;
                for w in &r.witnesses {
                    model = model.with_interp(
                        &crate::extraction::witness_symbol(&w.var),
                        exhaustive_realiser(w.var.ty.clone()),
                    );
                }
                let check = plain(check_extraction(&r, &model))?;
                let v = json!({ "seed": seed, "size": size, "check": check });
                Ok(Outcome::new(check.pass, pretty(&v)))
            }
        },
    }
}

fn parse_rule(name: &str) -> Result<RuleName> {
    serde_json::from_value(Value::String(name.to_string()))
        .map_err(|_| Error::Io(format!("unknown rule `{}`", name)))
}

fn herbrandise_pair(antecedent: &str, consequent: &str) -> Result<(Herbrandisation, Formula)> {
    let (_, ante) = load_statement(antecedent)?;
    let (_, cons) = load_statement(consequent)?;
    let (nf, _) = normalize(&cons, Logic::Classical)?;
    let h = herbrandise(&ante, &nf)?;
    Ok((h, Formula::implies(ante, cons)))
}

/// Deterministic serialisation of a report.
pub fn emit_report(report: &Report, format: ReportFormat) -> String {
    match format {
        ReportFormat::Json => pretty(&report.to_json()),
        ReportFormat::Text => {
            let mut text = format!("{} ({})\n", report.principle, report.logic);
            if let Some(s) = report.seed {
                text.push_str(&format!("seed {}\n", s));
            }
            for s in &report.stages {
                text.push_str(&format!("[{}] {}\n", s.stage, s.formula));
            }
            for (k, v) in &report.verdicts {
                let status = match v.status {
                    Status::Pass => "pass",
                    Status::Fail => "FAIL",
                    Status::Skipped => "skipped",
                };
                text.push_str(&format!("{:<8} {}: {}\n", status, k, v.detail));
            }
            if let Some(e) = &report.error {
                text.push_str(&format!("error: {}\n", e));
            }
            text
        }
    }
}
