//! `orthoset-lab`: run verification suites and one-shot constructions on
//! Hermitian spaces and maps read from JSON files.

mod construct;
mod io;

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use orthoset_lab::orthoset::ProbeSpec;
use orthoset_lab::par::Execution;
use orthoset_lab::report::{all_passed, ReportRecord};
use orthoset_lab::starfields::{GaussianRational, Rational, RationalQuaternion, SfieldTag, StarField};
use orthoset_lab::suites::{run_generated, run_suite, Suite, SuiteConfig};
use orthoset_lab::{Error, Result};
use serde_json::Value;

use construct::Kind;
use io::Documents;

#[derive(Parser)]
#[command(name = "orthoset-lab", version, about = "Exact checks on orthosets of Hermitian spaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a named verification suite; without input files it runs on
    /// seeded random instances over Q, Q(i) and the rational quaternions.
    Verify {
        #[arg(long, default_value = "all", value_parser = parse_suite)]
        suite: Suite,
        #[command(flatten)]
        common: Common,
    },
    /// Run one construction and print its result with a verification report.
    Construct {
        #[arg(value_enum)]
        kind: Kind,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args)]
struct Common {
    #[arg(long)]
    space: Option<PathBuf>,
    /// A map file; an optional "adjoint" field holds a claimed adjoint.
    #[arg(long)]
    map: Option<PathBuf>,
    /// A subspace file; project also reads its "vector" field.
    #[arg(long)]
    subspace: Option<PathBuf>,
    /// Number of probe rays, including the zero ray and the basis rays.
    #[arg(long, default_value_t = 256)]
    probes: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write the report here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Include elapsed milliseconds in every record.
    #[arg(long)]
    timings: bool,
}

fn parse_suite(s: &str) -> std::result::Result<Suite, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// 2 for unreadable or uncertified input, 1 for anything else.
fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse(_) | Error::Certificate(_) => 2,
        _ => 1,
    }
}

fn configure_threads() {
    #[cfg(feature = "parallel")]
    if let Some(n) = std::env::var("ORTHOSET_LAB_THREADS").ok().and_then(|s| s.parse::<usize>().ok()) {
        // a second initialization in the same process is harmless
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
}

fn with_sfield<T>(
    tag: SfieldTag,
    q: impl FnOnce() -> T,
    qi: impl FnOnce() -> T,
    hq: impl FnOnce() -> T,
) -> T {
    match tag {
        SfieldTag::Q => q(),
        SfieldTag::Qi => qi(),
        SfieldTag::HQ => hq(),
    }
}

fn verify_on<F: StarField>(config: &SuiteConfig, docs: &Documents) -> Result<Vec<ReportRecord>> {
    Ok(run_suite::<F>(config, &docs.inputs::<F>()?))
}

fn verify(suite: Suite, docs: &Documents, config: SuiteConfig) -> Result<Vec<ReportRecord>> {
    let config = SuiteConfig { suite, ..config };
    match docs.tag()? {
        None => Ok(run_generated(&config)),
        Some(tag) => with_sfield(
            tag,
            || verify_on::<Rational>(&config, docs),
            || verify_on::<GaussianRational>(&config, docs),
            || verify_on::<RationalQuaternion>(&config, docs),
        ),
    }
}

fn construct(kind: Kind, docs: &Documents, config: SuiteConfig) -> Result<(Value, Vec<ReportRecord>)> {
    let tag = docs
        .tag()?
        .ok_or_else(|| Error::parse("construct needs an input file"))?;
    let (spec, exec) = (config.probes, config.exec);
    with_sfield(
        tag,
        || construct::run::<Rational>(kind, docs, spec, exec),
        || construct::run::<GaussianRational>(kind, docs, spec, exec),
        || construct::run::<RationalQuaternion>(kind, docs, spec, exec),
    )
}

fn emit(out: Option<&PathBuf>, lines: &[String]) -> std::io::Result<()> {
    let mut w: Box<dyn Write> = match out {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(std::io::stdout().lock())),
    };
    for line in lines {
        writeln!(w, "{line}")?;
    }
    w.flush()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    configure_threads();
    let (name, common) = match &cli.command {
        Command::Verify { suite, common } => (format!("verify.{suite}"), common),
        Command::Construct { kind, common } => (format!("construct.{kind:?}"), common),
    };
    let config = SuiteConfig {
        suite: Suite::All,
        probes: ProbeSpec::new(common.seed, common.probes),
        exec: Execution::default(),
    };
    let timings = common.timings;
    let line = |r: &ReportRecord| r.to_json(timings).to_string();

    let outcome = Documents::load(common.space.as_deref(), common.map.as_deref(), common.subspace.as_deref())
        .and_then(|docs| match cli.command {
            Command::Verify { suite, .. } => verify(suite, &docs, config).map(|records| {
                let code = if all_passed(&records) { 0 } else { 1 };
                (records.iter().map(line).collect::<Vec<_>>(), code)
            }),
            Command::Construct { kind, .. } => construct(kind, &docs, config).map(|(mut doc, report)| {
                let code = if all_passed(&report) { 0 } else { 1 };
                doc["report"] = Value::Array(report.iter().map(|r| r.to_json(timings)).collect());
                (vec![doc.to_string()], code)
            }),
        });
    let (lines, code) = match outcome {
        Ok(ok) => ok,
        Err(e) => (vec![line(&ReportRecord::error(name, &e))], exit_code(&e)),
    };
    if let Err(e) = emit(common.out.as_ref(), &lines) {
        eprintln!("orthoset-lab: cannot write report: {e}");
        return ExitCode::from(2);
    }
    ExitCode::from(code)
}
