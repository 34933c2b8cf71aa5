use std::io::Write;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use tracecode::charsum;
use tracecode::code::{self, Family, LinearCode};
use tracecode::dual::{self, DualReport, TheoremVerdict};
use tracecode::harness::{self, Status, VerifyOptions};
use tracecode::weights;
use tracecode::{bounds, Error, Field};

#[derive(Parser)]
#[command(
    name = "tracecode",
    version,
    about = "Trace codes over prime fields: construction, weights, duals, bounds and character sums"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    out: Format,
    /// Accepted for scripts; every computation is deterministic.
    #[arg(long, global = true)]
    seedless: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FamilyArg {
    D1,
    D1bar,
    D2,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::D1 => Family::D1,
            FamilyArg::D1bar => Family::D1Bar,
            FamilyArg::D2 => Family::D2,
        }
    }
}

#[derive(Args)]
struct CodeSpec {
    #[arg(long)]
    p: u32,
    #[arg(long)]
    m: u32,
    /// Required for d1 and d1bar.
    #[arg(long)]
    e: Option<u32>,
    #[arg(long, value_enum)]
    family: FamilyArg,
    /// Field modulus of degree 2m, coefficients low-degree first, e.g. 2,1,0,0,1.
    #[arg(long, value_delimiter = ',')]
    modulus: Option<Vec<u32>>,
}

#[derive(Subcommand)]
enum Command {
    /// Build a code and print its generator matrix.
    Construct(CodeSpec),
    /// Enumerated weight distribution next to the predicted one.
    Weights(CodeSpec),
    /// Minimum distance of the dual code, with witnesses.
    Dual {
        #[command(flatten)]
        spec: CodeSpec,
        #[arg(long, default_value_t = dual::DEFAULT_CAP)]
        cap: usize,
    },
    /// Griesmer and sphere-packing verdict for [n, k, d]_q.
    Bounds {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        k: u64,
        #[arg(long)]
        d: u64,
        #[arg(long)]
        q: u64,
    },
    /// Per-beta character-sum verification rows.
    Charsums {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        e: u32,
        /// Only the row for beta = alpha^L.
        #[arg(long)]
        beta_log: Option<u64>,
    },
    /// Check every published claim; exit 1 on any mismatch.
    VerifyPaper {
        /// Extend to the full default parameter sweep.
        #[arg(long)]
        sweep: bool,
    },
}

/// Failure modes mapped to exit codes.
enum Failure {
    Invalid(String),
    Mismatch,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Invalid(e.to_string())
    }
}

macro_rules! from_lib_error {
    ($($t:ty),*) => {$(
        impl From<$t> for Failure {
            fn from(e: $t) -> Self {
                Failure::Invalid(e.to_string())
            }
        }
    )*};
}
from_lib_error!(
    tracecode::FieldError,
    tracecode::CodeError,
    tracecode::WeightError,
    tracecode::DualError,
    tracecode::BoundsError,
    tracecode::CharSumError
);

fn build(spec: &CodeSpec) -> Result<LinearCode, Failure> {
    let s = spec
        .m
        .checked_mul(2)
        .ok_or_else(|| Failure::Invalid("m is too large".into()))?;
    let field = match &spec.modulus {
        Some(modulus) => Field::with_modulus(spec.p, s, modulus)?,
        None => Field::new(spec.p, s)?,
    };
    let family = Family::from(spec.family);
    if family != Family::D2 && spec.e.is_none() {
        return Err(Failure::Invalid("--e is required for d1 and d1bar".into()));
    }
    Ok(code::build_family(family, &Arc::new(field), spec.e)?)
}

fn print_json<T: Serialize>(out: &mut impl Write, value: &T) {
    writeln!(out, "{}", serde_json::to_string(value).expect("serializable")).ok();
}

#[derive(Serialize)]
struct DualOutput<'a> {
    #[serde(flatten)]
    report: &'a DualReport,
    verdicts: Vec<TheoremVerdict>,
}

fn run(cli: Cli) -> Result<(), Failure> {
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match cli.command {
        Command::Construct(spec) => {
            let code = build(&spec)?;
            match cli.out {
                Format::Json => print_json(&mut out, &code),
                Format::Csv => {
                    write!(out, "{}", code.to_csv()).ok();
                }
            }
        }
        Command::Weights(spec) => {
            let code = build(&spec)?;
            let dist = weights::weight_distribution(&code)?;
            let predicted = weights::predicted_distribution(spec.family.into(), spec.p, spec.m, spec.e).ok();
            match cli.out {
                Format::Json => print_json(
                    &mut out,
                    &json!({
                        "enumerated": dist,
                        "predicted": predicted,
                        "match": predicted.as_ref() == Some(&dist),
                    }),
                ),
                Format::Csv => {
                    write!(out, "{}", dist.to_csv()).ok();
                }
            }
        }
        Command::Dual { spec, cap } => {
            let code = build(&spec)?;
            let report = dual::dual_min_distance(&code, cap)?;
            let verdicts = dual::verify_dual_theorems(&code, &report)?;
            match cli.out {
                Format::Json => print_json(
                    &mut out,
                    &DualOutput {
                        report: &report,
                        verdicts,
                    },
                ),
                Format::Csv => {
                    let mut w = csv::Writer::from_writer(&mut out);
                    w.write_record(["columns", "coeffs"]).ok();
                    for wit in &report.witnesses {
                        let join = |v: &[usize]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ");
                        let coeffs: Vec<usize> = wit.coeffs.iter().map(|&c| c as usize).collect();
                        w.write_record([join(&wit.columns), join(&coeffs)]).ok();
                    }
                    w.flush().ok();
                }
            }
        }
        Command::Bounds { n, k, d, q } => {
            let v = bounds::bound_verdict(n, k, d, q)?;
            match cli.out {
                Format::Json => print_json(&mut out, &v),
                Format::Csv => {
                    let labels: Vec<String> = v
                        .labels
                        .iter()
                        .map(|l| {
                            serde_json::to_value(l)
                                .expect("label")
                                .as_str()
                                .expect("str")
                                .to_string()
                        })
                        .collect();
                    let mut w = csv::Writer::from_writer(&mut out);
                    w.write_record([
                        "n",
                        "k",
                        "d",
                        "q",
                        "griesmer_min_length",
                        "griesmer_max_d",
                        "hamming_max_d",
                        "labels",
                    ])
                    .ok();
                    w.write_record([
                        v.n.to_string(),
                        v.k.to_string(),
                        v.d.to_string(),
                        v.q.to_string(),
                        v.griesmer_min_length.to_string(),
                        v.griesmer_max_d.to_string(),
                        v.hamming_max_d.to_string(),
                        labels.join(" "),
                    ])
                    .ok();
                    w.flush().ok();
                }
            }
        }
        Command::Charsums { p, m, e, beta_log } => {
            let s = m
                .checked_mul(2)
                .ok_or_else(|| Failure::Invalid("m is too large".into()))?;
            let field = Arc::new(Field::new(p, s)?);
            let rows = match beta_log {
                Some(l) => vec![charsum::n_beta(&field, e, field.exp(l))?],
                None => charsum::lemma_sweep(&field, e)?.rows,
            };
            let all_ok = rows.iter().all(|r| r.ok);
            match cli.out {
                Format::Json => rows.iter().for_each(|r| print_json(&mut out, r)),
                Format::Csv => {
                    let mut w = csv::Writer::from_writer(&mut out);
                    w.write_record(["beta_log", "trace_condition", "B", "N_beta", "weight", "ok"])
                        .ok();
                    for r in &rows {
                        let opt = |v: Option<String>| v.unwrap_or_default();
                        w.write_record([
                            r.beta_log.to_string(),
                            r.trace_condition.to_string(),
                            opt(r.b.map(|b| b.to_string())),
                            r.n_beta.to_string(),
                            opt(r.weight.map(|w| w.to_string())),
                            r.ok.to_string(),
                        ])
                        .ok();
                    }
                    w.flush().ok();
                }
            }
            if !all_ok {
                return Err(Failure::Mismatch);
            }
        }
        Command::VerifyPaper { sweep } => {
            let report = harness::verify_paper_claims(VerifyOptions { sweep })?;
            match cli.out {
                Format::Json => {
                    write!(out, "{}", report.to_json_lines()).ok();
                }
                Format::Csv => {
                    let mut w = csv::Writer::from_writer(&mut out);
                    w.write_record(["claim_id", "status", "expected", "computed", "note"])
                        .ok();
                    for item in &report.items {
                        let status = match item.status {
                            Status::Match => "match",
                            Status::Mismatch => "mismatch",
                            Status::InformationalDiscrepancy => "informational-discrepancy",
                        };
                        w.write_record([
                            item.claim_id.as_str(),
                            status,
                            &item.expected.to_string(),
                            &item.computed.to_string(),
                            item.note.as_deref().unwrap_or(""),
                        ])
                        .ok();
                    }
                    w.flush().ok();
                }
            }
            if !report.passed() {
                return Err(Failure::Mismatch);
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Mismatch) => ExitCode::from(1),
        Err(Failure::Invalid(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
