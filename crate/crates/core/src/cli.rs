//! The `plausible` command line.
//!
//! Machine-readable JSON goes to stdout and diagnostics to stderr. Exit
//! status is 0 on success, 1 for a negative finding (false, countermodel,
//! rejected proof, failed axiom) and 2 for usage or input errors.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::algebra::{
    agreement_experiment, alg_validates, check_algebra, check_derived_laws, plausible_elements,
    FinitePlausibilityAlgebra,
};
use crate::formula::{translate, Dialect, Formula};
use crate::proof::{check_proof_with, translate_proof, verdict_report, CheckOptions, Proof, SystemId};
use crate::search::{
    check_global_consequence, find_countermodel, run_k_experiment, sample_countermodel, ModelClass, SearchBounds,
    SearchOutcome, SearchReport, SearchVerdict,
};
use crate::semantics::{ConditionReport, Model, ModelFile};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "plausible", version, about = "Workbench for the logic of the plausible")]
pub struct Cli {
    /// Human-readable output instead of JSON.
    #[arg(long, global = true)]
    pub pretty: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EvalClass {
    /// Neighborhood model.
    Nm,
    /// Kripke model.
    Km,
    /// Universal model.
    Um,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Target {
    Nabla,
    Box,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse and print a formula canonically, with its dialect.
    Fmt { formula: String },
    /// Evaluate a formula at a world of a model file.
    Eval {
        model: PathBuf,
        world: usize,
        formula: String,
        /// Expected model kind; inferred from the file when omitted.
        #[arg(long, value_enum)]
        class: Option<EvalClass>,
    },
    /// Bounded validity check with countermodel search.
    Valid {
        formula: String,
        #[command(flatten)]
        bounds: BoundsArgs,
        /// Sample random models with this seed instead of enumerating.
        #[arg(long)]
        seed: Option<u64>,
        /// Number of random models when sampling.
        #[arg(long, default_value_t = 1000, requires = "seed")]
        samples: u64,
    },
    /// Bounded global consequence: do the premises entail the formula?
    Consequence {
        formula: String,
        /// A premise; repeat for several.
        #[arg(long = "premise", short = 'p')]
        premises: Vec<String>,
        #[command(flatten)]
        bounds: BoundsArgs,
    },
    /// Check a proof file.
    Checkproof {
        proof: PathBuf,
        /// Treat `re` as a primitive rule of S5.
        #[arg(long)]
        s5_re: bool,
    },
    /// Translate a formula or a proof file between nabla and box.
    Translate {
        /// A formula, or the path of a proof file.
        input: String,
        #[arg(long, value_enum)]
        to: Target,
    },
    /// Close every neighborhood family under supersets.
    Supplement { model: PathBuf },
    /// Check an algebra file.
    Algebra {
        algebra: PathBuf,
        /// Also decide whether the algebra validates this formula.
        #[arg(long)]
        formula: Option<String>,
    },
    /// Search constrained neighborhood models for a countermodel to K.
    ExperimentK {
        #[arg(long, default_value_t = 3)]
        max_worlds: usize,
        /// Also write the report to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare algebraic validity with bounded neighborhood validity over a
    /// corpus of nabla formulas, one per line.
    ExperimentAgreement {
        corpus: PathBuf,
        #[arg(long, default_value_t = 3)]
        max_worlds: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, clap::Args)]
pub struct BoundsArgs {
    /// raw, constrained, kripke-equiv, kripke or universal.
    #[arg(long, default_value = "constrained")]
    pub class: ModelClass,
    #[arg(long, default_value_t = 3)]
    pub max_worlds: usize,
    /// Atoms to vary, e.g. `0,1` or `p0,p1`; defaults to the formula's atoms.
    #[arg(long, value_delimiter = ',')]
    pub atoms: Option<Vec<String>>,
}

/// An input error, reported with status 2.
#[derive(Debug)]
struct InputError(String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

type CmdResult = Result<(Value, String, i32), InputError>;

/// Parses `args` (program name first) and runs the command.
pub fn run_with_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli, out, err),
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{text}");
                EXIT_INPUT
            } else {
                let _ = write!(out, "{text}");
                EXIT_OK
            }
        }
    }
}

pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match execute(&cli.command) {
        Ok((value, pretty, status)) => {
            let text = if cli.pretty { pretty } else { value.to_string() };
            let _ = writeln!(out, "{text}");
            status
        }
        Err(InputError(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_INPUT
        }
    }
}

fn read(path: &Path) -> Result<String, InputError> {
    fs::read_to_string(path).map_err(|e| InputError(format!("cannot read {}: {e}", path.display())))
}

fn formula(text: &str) -> Result<Formula, InputError> {
    text.parse::<Formula>()
        .map_err(|e| InputError(format!("cannot parse `{text}`: {e}")))
}

fn status(ok: bool) -> i32 {
    if ok {
        EXIT_OK
    } else {
        EXIT_NEGATIVE
    }
}

fn execute(cmd: &Command) -> CmdResult {
    match cmd {
        Command::Fmt { formula: text } => {
            let f = formula(text)?;
            let dialect = Dialect::of(&f)?;
            let value = json!({"formula": f.to_string(), "dialect": dialect.name()});
            Ok((value, format!("{f}\ndialect: {dialect}"), EXIT_OK))
        }
        Command::Eval {
            model,
            world,
            formula: text,
            class,
        } => {
            let m = ModelFile::from_json(&read(model)?)?;
            let expected = class.map(|c| match c {
                EvalClass::Nm => "neighborhood",
                EvalClass::Km => "kripke",
                EvalClass::Um => "universal",
            });
            if let Some(kind) = expected.filter(|&k| k != m.kind()) {
                return Err(InputError(format!(
                    "expected a {kind} model, found a {} model",
                    m.kind()
                )));
            }
            let f = formula(text)?;
            let value = match &m {
                ModelFile::Neighborhood(m) => m.eval(*world, &f),
                ModelFile::Kripke(m) => m.eval(*world, &f),
                ModelFile::Universal(m) => m.eval(*world, &f),
            }?;
            let json = json!({"world": world, "formula": f.to_string(), "value": value});
            Ok((json, format!("{f} is {value} at world {world}"), status(value)))
        }
        Command::Valid {
            formula: text,
            bounds,
            seed,
            samples,
        } => {
            let f = formula(text)?;
            let b = search_bounds(bounds, [&f])?;
            let outcome = match seed {
                Some(seed) => sample_countermodel(&f, &b, *samples, *seed)?,
                None => find_countermodel(&f, &b)?,
            };
            let report = SearchReport {
                formula: &f,
                premises: &[],
                bounds: &b,
                outcome: &outcome,
                sampling: seed.map(|s| (*samples, s)),
            };
            Ok(search_result(&report))
        }
        Command::Consequence {
            formula: text,
            premises,
            bounds,
        } => {
            let f = formula(text)?;
            let gamma = premises.iter().map(|p| formula(p)).collect::<Result<Vec<_>, _>>()?;
            let b = search_bounds(bounds, gamma.iter().chain([&f]))?;
            let outcome = check_global_consequence(&gamma, &f, &b)?;
            let report = SearchReport {
                formula: &f,
                premises: &gamma,
                bounds: &b,
                outcome: &outcome,
                sampling: None,
            };
            Ok(search_result(&report))
        }
        Command::Checkproof { proof, s5_re } => {
            let p = Proof::from_json(&read(proof)?)?;
            let verdict = check_proof_with(
                &p,
                CheckOptions {
                    s5_primitive_re: *s5_re,
                },
            )?;
            let value = verdict_report(&p, &verdict);
            let ok = verdict.is_accepted();
            Ok((value, verdict.to_string(), status(ok)))
        }
        Command::Translate { input, to } => translate_cmd(input, *to),
        Command::Supplement { model } => {
            let m = match ModelFile::from_json(&read(model)?)? {
                ModelFile::Neighborhood(m) => m,
                other => {
                    return Err(InputError(format!(
                        "supplementation needs a neighborhood model, found a {} model",
                        other.kind()
                    )))
                }
            };
            let before = m.check_conditions();
            let sup = m.supplement();
            let after = sup.check_conditions();
            let file = ModelFile::from(sup);
            let value = json!({
                "model": file.to_value(),
                "before": conditions_json(&before),
                "after": conditions_json(&after),
            });
            let pretty = format!(
                "{}\nbefore: {}\nafter:  {}",
                file.to_json(),
                conditions_pretty(&before),
                conditions_pretty(&after)
            );
            Ok((value, pretty, EXIT_OK))
        }
        Command::Algebra { algebra, formula: text } => {
            let a = FinitePlausibilityAlgebra::from_json(&read(algebra)?)?;
            let f = text.as_deref().map(formula).transpose()?;
            if let Some(f) = &f {
                if !Dialect::NablaSystem.admits(f) {
                    return Err(InputError(format!("`{f}` contains box or diamond")));
                }
            }
            let report = check_algebra(&a);
            let mut value = json!({"algebra": serde_json::to_value(&a)?, "axioms": report, "valid": report.all_hold()});
            let mut pretty = match report.failures().next() {
                None => "a1-a4 hold".to_string(),
                Some(_) => report
                    .failures()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
                    .join("\n"),
            };
            let mut ok = report.all_hold();
            if ok {
                let plausible = plausible_elements(&a)?;
                let laws = check_derived_laws(&a)?;
                pretty += &format!("\nplausible elements: {plausible:?}");
                if !laws.all_hold() {
                    pretty += "\ninternal contradiction: a derived law fails";
                    ok = false;
                }
                value["plausible"] = json!(plausible);
                value["derived_laws"] = json!(laws);
                if let Some(f) = &f {
                    let validates = alg_validates(&a, f)?;
                    value["formula"] = json!(f.to_string());
                    value["validates"] = json!(validates);
                    pretty += &format!("\n{f}: {}", if validates { "validated" } else { "not validated" });
                    ok &= validates;
                }
            }
            Ok((value, pretty, status(ok)))
        }
        Command::ExperimentK { max_worlds, out } => {
            let f = crate::search::k_schema();
            let b = SearchBounds::new(ModelClass::ConstrainedNeighborhood, *max_worlds, [0, 1]);
            let outcome = run_k_experiment(&b)?;
            let report = SearchReport {
                formula: &f,
                premises: &[],
                bounds: &b,
                outcome: &outcome,
                sampling: None,
            };
            let (value, pretty, _) = search_result(&report);
            write_out(out.as_deref(), &value)?;
            Ok((value, pretty, EXIT_OK))
        }
        Command::ExperimentAgreement {
            corpus,
            max_worlds,
            out,
        } => {
            let formulas = read(corpus)?
                .lines()
                .map(str::trim)
                .filter(|l| !l.is_empty() && !l.starts_with('#'))
                .map(formula)
                .collect::<Result<Vec<_>, _>>()?;
            let report = agreement_experiment(&formulas, *max_worlds)?;
            let value = serde_json::to_value(&report)?;
            write_out(out.as_deref(), &value)?;
            let pretty = report
                .rows
                .iter()
                .map(|r| {
                    format!(
                        "{:<5} algebras: {:<5} neighborhoods: {:<17} {}",
                        if r.agree { "ok" } else { "DIFF" },
                        r.algebraic_valid,
                        r.neighborhood_verdict,
                        r.formula
                    )
                })
                .chain([format!(
                    "{} agree, {} disagree",
                    report.agreements, report.disagreements
                )])
                .collect::<Vec<_>>()
                .join("\n");
            Ok((value, pretty, EXIT_OK))
        }
    }
}

fn write_out(path: Option<&Path>, value: &Value) -> Result<(), InputError> {
    if let Some(path) = path {
        let text = serde_json::to_string_pretty(value)? + "\n";
        fs::write(path, text).map_err(|e| InputError(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(())
}

fn parse_atom(text: &str) -> Result<u32, InputError> {
    let digits = text.trim().strip_prefix('p').unwrap_or(text.trim());
    digits
        .parse()
        .map_err(|_| InputError(format!("bad atom `{text}` (expected e.g. 0 or p0)")))
}

fn search_bounds<'a>(
    args: &BoundsArgs,
    formulas: impl IntoIterator<Item = &'a Formula>,
) -> Result<SearchBounds, InputError> {
    let atoms: Vec<u32> = match &args.atoms {
        Some(list) => list.iter().map(|a| parse_atom(a)).collect::<Result<_, _>>()?,
        None => formulas.into_iter().flat_map(|f| f.atoms()).collect(),
    };
    Ok(SearchBounds::new(args.class, args.max_worlds, atoms))
}

fn search_result(report: &SearchReport<'_>) -> (Value, String, i32) {
    let value = report.to_value();
    let outcome: &SearchOutcome = report.outcome;
    let mut pretty = format!(
        "{}: {} ({} models checked, {} up to {} worlds)",
        report.formula,
        outcome.verdict.name(),
        outcome.models_checked,
        report.bounds.model_class,
        report.bounds.max_worlds
    );
    if let SearchVerdict::CountermodelFound { model, world } = &outcome.verdict {
        pretty += &format!("\nfalse at world {world} of {}", model.to_json());
    }
    let negative = matches!(outcome.verdict, SearchVerdict::CountermodelFound { .. });
    (value, pretty, status(!negative))
}

fn conditions_json(r: &ConditionReport) -> Value {
    json!({
        "c": r.c_holds(),
        "h": r.h_holds(),
        "t": r.t_holds(),
        "n": r.n_holds(),
        "failures": r.failures().collect::<Vec<_>>(),
    })
}

fn conditions_pretty(r: &ConditionReport) -> String {
    [
        ("c", r.c_holds()),
        ("h", r.h_holds()),
        ("t", r.t_holds()),
        ("n", r.n_holds()),
    ]
    .iter()
    .map(|(name, ok)| format!("({name}) {}", if *ok { "yes" } else { "no" }))
    .collect::<Vec<_>>()
    .join(" ")
}

fn translate_cmd(input: &str, to: Target) -> CmdResult {
    let (system, dialect) = match to {
        Target::Nabla => (SystemId::LNabla, Dialect::NablaSystem),
        Target::Box => (SystemId::LPBox, Dialect::BoxSystem),
    };
    if Path::new(input).is_file() {
        let p = Proof::from_json(&read(Path::new(input))?)?;
        let t = translate_proof(&p, system)?;
        let pretty = t
            .bridges
            .iter()
            .map(|b| {
                format!(
                    "line {} ({}) bridged by lines {}-{}",
                    b.source_line,
                    b.replaces,
                    b.lines.start(),
                    b.lines.end()
                )
            })
            .chain([t.proof.to_json()])
            .collect::<Vec<_>>()
            .join("\n");
        return Ok((t.proof.to_value(), pretty, EXIT_OK));
    }
    let f = formula(input)?;
    let from = match Dialect::of(&f)? {
        Dialect::Classical => dialect,
        Dialect::S5 => {
            return Err(InputError(format!(
                "`{f}` uses diamond, which has no plausibility translation"
            )))
        }
        d => d,
    };
    let g = translate(&f, from, dialect)?;
    let value = json!({"formula": g.to_string(), "dialect": dialect.name()});
    Ok((value, g.to_string(), EXIT_OK))
}
