//! `cutpoint` command-line front end.
//!
//! Exit codes: `0` success, `1` a verification did not hold, `2` bad input
//! (usage, unreadable or invalid machine files, mismatched alphabets).

pub mod document;
pub mod report;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use cutpoint_core::convert::{gfa_to_pfa_with, ConversionOptions, ConversionTrace};
use cutpoint_core::linearize::qfa_to_gfa;
use cutpoint_core::models::{Automaton, Pfa};
use cutpoint_core::scalar::{parse_rational, Decision};
use cutpoint_core::verify::{check_agreement, AgreementReport};
use cutpoint_core::witness::{
    all_subsets, random_subsets, verify_shattering, NormBound, SignVector, Witness, WitnessParams, EXACT_MAX_LIMIT,
};
use cutpoint_core::Rational;
use rand::SeedableRng;
use serde_json::{json, Value};

use document::{read_machine, write_machine, Machine};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Input(_) => 2,
            Self::Failed(_) => 1,
        }
    }
}

impl From<document::DocError> for CliError {
    fn from(e: document::DocError) -> Self {
        Self::Input(e.to_string())
    }
}

impl From<cutpoint_core::Error> for CliError {
    fn from(e: cutpoint_core::Error) -> Self {
        Self::Input(e.to_string())
    }
}

type CliResult<T = ()> = Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(name = "cutpoint", version, about = "Exact GFA / PFA / quantum automaton conversion and verification")]
pub struct Cli {
    /// Emit machine-readable JSON instead of tables.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Acceptance value and strict-cutpoint decision for each word.
    Eval {
        machine: PathBuf,
        /// Comma-separated symbols, or concatenated one-character symbols;
        /// "" or "ε" is the empty word.
        #[arg(required = true, allow_hyphen_values = true)]
        words: Vec<String>,
        /// Boundary band for float machines.
        #[arg(long, default_value_t = cutpoint_core::scalar::BOUNDARY_TOL)]
        tol: f64,
    },
    /// Convert a machine file into another model.
    Convert(ConvertArgs),
    /// Build the shattering witness family.
    #[command(subcommand)]
    Witness(WitnessCommand),
    /// Brute-force checks against machines or the witness.
    #[command(subcommand)]
    Verify(VerifyCommand),
    /// Closed-form state-complexity tables.
    #[command(subcommand)]
    Report(ReportCommand),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Direction {
    GfaToPfa,
    QfaToGfa,
    QfaToPfa,
}

#[derive(Debug, Args)]
pub struct ConvertArgs {
    pub direction: Direction,
    pub input: PathBuf,
    pub output: PathBuf,
    /// Write every intermediate of the PFA construction as JSON.
    #[arg(long)]
    pub trace: Option<PathBuf>,
    /// Added to the largest zero-sum entry to form the scale constant C.
    #[arg(long, default_value = "1")]
    pub scale_margin: String,
}

#[derive(Debug, Subcommand)]
pub enum WitnessCommand {
    /// Write the prepare-test machine Q_n.
    Build {
        /// Hilbert space dimension, at least 2.
        #[arg(short)]
        n: usize,
        #[arg(short, long)]
        output: PathBuf,
        /// Test symbols to include, e.g. "tau:+--,tau:-+-".
        #[arg(long, value_delimiter = ',')]
        tests: Vec<String>,
        /// Include all 2^(n²-1) test symbols.
        #[arg(long, conflicts_with = "tests")]
        all_tests: bool,
        /// Use the exact maximum of ||X_s|| instead of the triangle bound.
        #[arg(long)]
        exact_max: bool,
    },
}

#[derive(Debug, Subcommand)]
pub enum VerifyCommand {
    /// Compare cutpoint decisions of two machines on all words up to a length.
    Agreement {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        max_len: usize,
        /// Boundary band for float machines.
        #[arg(long, default_value_t = cutpoint_core::scalar::BOUNDARY_TOL)]
        tol: f64,
    },
    /// Check that Q_n accepts p_k tau_s(S) exactly when k is in S.
    Shattering {
        /// Hilbert space dimension, at least 2.
        #[arg(short)]
        n: usize,
        /// Every subset of the n²-1 prepared states.
        #[arg(long)]
        all_subsets: bool,
        /// Number of random subsets otherwise.
        #[arg(long, default_value_t = 100)]
        subsets: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug, Subcommand)]
pub enum ReportCommand {
    /// PFA state bounds 2n²+6 and n²-1 for a range of n.
    Bounds {
        #[arg(long, default_value_t = 2)]
        n_from: usize,
        #[arg(long, default_value_t = 6)]
        n_to: usize,
    },
}

/// Parses `args` (including the program name) and runs the command.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn emit(out: &mut dyn Write, text: &str) -> CliResult {
    out.write_all(text.as_bytes())
        .map_err(|e| CliError::Input(format!("writing output: {e}")))
}

fn emit_json(out: &mut dyn Write, v: &Value) -> CliResult {
    emit(out, &format!("{}\n", serde_json::to_string_pretty(v).unwrap()))
}

pub fn execute(cli: &Cli, out: &mut dyn Write) -> CliResult {
    match &cli.command {
        Command::Eval { machine, words, tol } => eval(cli.json, machine, words, *tol, out),
        Command::Convert(args) => convert(cli.json, args, out),
        Command::Witness(WitnessCommand::Build {
            n,
            output,
            tests,
            all_tests,
            exact_max,
        }) => witness_build(cli.json, *n, output, tests, *all_tests, *exact_max, out),
        Command::Verify(VerifyCommand::Agreement { a, b, max_len, tol }) => {
            agreement(cli.json, a, b, *max_len, *tol, out)
        }
        Command::Verify(VerifyCommand::Shattering {
            n,
            all_subsets,
            subsets,
            seed,
        }) => shattering(cli.json, *n, *all_subsets, *subsets, *seed, out),
        Command::Report(ReportCommand::Bounds { n_from, n_to }) => bounds(cli.json, *n_from, *n_to, out),
    }
}

fn decision_name(d: Decision) -> &'static str {
    match d {
        Decision::Accept => "accept",
        Decision::Reject => "reject",
        Decision::Boundary { .. } => "boundary",
    }
}

fn eval_rows<A: Automaton>(m: &A, words: &[String], tol: f64) -> CliResult<Vec<(String, String, f64, &'static str)>>
where
    A::Value: std::fmt::Display,
{
    words
        .iter()
        .map(|text| {
            let w = m.alphabet().parse_word(text)?;
            let v = m.evaluate(&w)?;
            let d = m.decide_with(&v, tol);
            Ok((m.alphabet().format_word(&w), v.to_string(), A::to_f64(&v), decision_name(d)))
        })
        .collect()
}

fn eval(json_out: bool, path: &Path, words: &[String], tol: f64, out: &mut dyn Write) -> CliResult {
    let machine = read_machine(path)?;
    let rows = with_machine!(&machine, |m| eval_rows(m, words, tol))?;
    if json_out {
        let items: Vec<Value> = rows
            .iter()
            .map(|(w, v, f, d)| json!({"word": w, "value": v, "value_f64": f, "decision": d}))
            .collect();
        return emit_json(out, &Value::Array(items));
    }
    let mut text = String::new();
    for (w, v, f, d) in &rows {
        let shown = if w.is_empty() { "ε" } else { w };
        if machine.scalar_mode() == cutpoint_core::ScalarMode::Rational {
            text.push_str(&format!("{shown}\t{v}\t(≈ {f:.12})\t{d}\n"));
        } else {
            text.push_str(&format!("{shown}\t{v}\t{d}\n"));
        }
    }
    emit(out, &text)
}

fn convert(json_out: bool, args: &ConvertArgs, out: &mut dyn Write) -> CliResult {
    let margin = parse_rational(&args.scale_margin)?;
    let options = ConversionOptions { scale_margin: margin };
    let input = read_machine(&args.input)?;
    let (result, trace): (Machine, Option<ConversionTrace>) = match (args.direction, &input) {
        (Direction::GfaToPfa, Machine::GfaRational(g)) => pfa_with_trace(gfa_to_pfa_with(g, &options)?),
        (Direction::GfaToPfa, Machine::GfaFloat(g)) => pfa_with_trace(gfa_to_pfa_with(g, &options)?),
        (Direction::QfaToGfa, Machine::Gqfa(q)) => (Machine::GfaFloat(qfa_to_gfa(q)?), None),
        (Direction::QfaToPfa, Machine::Gqfa(q)) => pfa_with_trace(gfa_to_pfa_with(&qfa_to_gfa(q)?, &options)?),
        (dir, m) => {
            return Err(CliError::Input(format!(
                "{} expects a {} document, got {}",
                dir.to_possible_value().unwrap().get_name(),
                match dir {
                    Direction::GfaToPfa => "gfa",
                    _ => "gqfa",
                },
                m.kind()
            )))
        }
    };
    if args.trace.is_some() && trace.is_none() {
        return Err(CliError::Input("--trace applies only to conversions producing a PFA".into()));
    }
    write_machine(&args.output, &result).map_err(|e| CliError::Input(format!("{}: {e}", args.output.display())))?;
    if let (Some(path), Some(t)) = (&args.trace, &trace) {
        let text = serde_json::to_string_pretty(&report::trace_json(t)).unwrap();
        std::fs::write(path, text + "\n").map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    }
    let degenerate = trace.as_ref().and_then(|t| t.degenerate).is_some();
    if json_out {
        return emit_json(
            out,
            &json!({
                "input_kind": input.kind(),
                "input_states": input.states(),
                "output_kind": result.kind(),
                "output_states": result.states(),
                "degenerate": degenerate,
                "output": args.output.display().to_string(),
            }),
        );
    }
    emit(
        out,
        &format!(
            "{}-state {} -> {}-state {}{} written to {}\n",
            input.states(),
            input.kind(),
            result.states(),
            result.kind(),
            if degenerate { " (degenerate input)" } else { "" },
            args.output.display()
        ),
    )
}

fn pfa_with_trace((p, t): (Pfa<Rational>, ConversionTrace)) -> (Machine, Option<ConversionTrace>) {
    (Machine::PfaRational(p), Some(t))
}

fn witness_build(
    json_out: bool,
    n: usize,
    output: &Path,
    tests: &[String],
    all_tests: bool,
    exact_max: bool,
    out: &mut dyn Write,
) -> CliResult {
    let bound = if exact_max { NormBound::ExactMax } else { NormBound::Triangle };
    let w = Witness::new(WitnessParams::with_bound(n, bound)?)?;
    let q = if all_tests {
        w.gqfa_all_tests()?
    } else {
        let signs = tests.iter().map(|s| SignVector::parse(s)).collect::<Result<Vec<_>, _>>()?;
        w.gqfa(&signs)?
    };
    let p = w.params();
    let machine = Machine::Gqfa(q);
    write_machine(output, &machine).map_err(|e| CliError::Input(format!("{}: {e}", output.display())))?;
    if json_out {
        return emit_json(
            out,
            &json!({
                "n": n,
                "d": p.d(),
                "epsilon": p.epsilon(),
                "t": p.t(),
                "m_bound": p.m_bound(),
                "margin": p.margin(),
                "symbols": machine.alphabet().symbols(),
                "output": output.display().to_string(),
            }),
        );
    }
    emit(
        out,
        &format!(
            "Q_{n}: {} prepare symbols, {} test symbols, epsilon = {:.6}, t = {:.6}, margin t*epsilon = {:.6}; written to {}\n",
            p.d(),
            machine.alphabet().len() - p.d(),
            p.epsilon(),
            p.t(),
            p.margin(),
            output.display()
        ),
    )
}

fn agreement(json_out: bool, a: &Path, b: &Path, max_len: usize, tol: f64, out: &mut dyn Write) -> CliResult {
    let ma = read_machine(a)?;
    let mb = read_machine(b)?;
    let report: AgreementReport = with_machine!(&ma, |x| with_machine!(&mb, |y| check_agreement(x, y, max_len, tol)))?;
    let fmt_word = |w: &[usize]| {
        let s = ma.alphabet().format_word(w);
        if s.is_empty() {
            "ε".to_string()
        } else {
            s
        }
    };
    if json_out {
        emit_json(
            out,
            &json!({
                "words_checked": report.words_checked,
                "disagreements": report.disagreements.iter().map(|d| json!({
                    "word": fmt_word(&d.word), "value_a": d.value_a, "value_b": d.value_b
                })).collect::<Vec<_>>(),
                "boundary_flags": report.boundary_flags.iter().map(|f| json!({
                    "word": fmt_word(&f.word), "machine": f.machine.to_string(), "value": f.value, "distance": f.distance
                })).collect::<Vec<_>>(),
            }),
        )?;
    } else {
        let mut text = format!(
            "{} words checked, {} disagreements, {} boundary flags\n",
            report.words_checked,
            report.disagreements.len(),
            report.boundary_flags.len()
        );
        for d in report.disagreements.iter().take(20) {
            text.push_str(&format!("  disagree on {}: A = {:.12}, B = {:.12}\n", fmt_word(&d.word), d.value_a, d.value_b));
        }
        for f in report.boundary_flags.iter().take(20) {
            text.push_str(&format!(
                "  boundary on {} in machine {}: value {:.12}, distance {:.1e}\n",
                fmt_word(&f.word),
                f.machine,
                f.value,
                f.distance
            ));
        }
        emit(out, &text)?;
    }
    if !report.agree() {
        Err(CliError::Failed(format!("{} words decided differently", report.disagreements.len())))
    } else if !report.clean() {
        Err(CliError::Failed(format!(
            "{} words lie within {tol:e} of a cutpoint and could not be decided",
            report.boundary_flags.len()
        )))
    } else {
        Ok(())
    }
}

fn shattering(json_out: bool, n: usize, every: bool, count: usize, seed: u64, out: &mut dyn Write) -> CliResult {
    let w = Witness::new(WitnessParams::new(n)?)?;
    let d = w.params().d();
    let subsets = if every {
        if d > EXACT_MAX_LIMIT {
            return Err(CliError::Input(format!("--all-subsets needs 2^{d} subsets; use --subsets")));
        }
        all_subsets(d)
    } else {
        random_subsets(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed), d, count)
    };
    let report = verify_shattering(&w, &subsets)?;
    if json_out {
        emit_json(
            out,
            &json!({
                "n": n,
                "d": d,
                "subsets": subsets.len(),
                "checks": report.total(),
                "passed": report.passed(),
                "min_margin": report.min_margin(),
                "predicted_margin": w.params().margin(),
                "failures": report.failures().iter().map(|c| json!({
                    "k": c.k, "subset": c.subset, "value": c.value
                })).collect::<Vec<_>>(),
            }),
        )?;
    } else {
        emit(
            out,
            &format!(
                "{}/{} checks passed (n = {n}, {} subsets, min margin {:.6})\n",
                report.passed(),
                report.total(),
                subsets.len(),
                report.min_margin()
            ),
        )?;
    }
    if report.all_passed() {
        Ok(())
    } else {
        Err(CliError::Failed(format!("{} shattering checks failed", report.total() - report.passed())))
    }
}

fn bounds(json_out: bool, from: usize, to: usize, out: &mut dyn Write) -> CliResult {
    if from < 2 || from > to {
        return Err(CliError::Input(format!("need 2 <= n-from <= n-to, got {from}..{to}")));
    }
    let rows = report::bounds_table(from, to);
    if json_out {
        emit_json(out, &serde_json::to_value(&rows).unwrap())
    } else {
        emit(out, &report::format_bounds(&rows))
    }
}
