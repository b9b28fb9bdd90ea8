// SPDX-License-Identifier: Apache-2.0

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;
use skewinfo::catalog::names::{
    channels_from_json, is_catalog_name, observables_from_json, parse_channel, parse_observables,
    parse_state, split_targets, state_from_json,
};
use skewinfo::channel_bounds::channel_report;
use skewinfo::figures::{format_sig, generate, FigureId, FigureSpec};
use skewinfo::verify::{self, Suite, VerifyConfig};
use skewinfo::{
    observable_bounds, skew_channel, skew_observable, DensityState, KrausChannel, Observable,
    SearchMode, Tolerances,
};

const EXIT_VIOLATION: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_BOUND: u8 = 3;

#[derive(Parser)]
#[command(
    name = "skewctl",
    version,
    about = "Skew information and uncertainty bounds"
)]
struct Cli {
    /// Absolute tolerance for equalities and bound validity.
    #[arg(long, env = "SKEWCTL_TOL_EQ", global = true)]
    tol_eq: Option<f64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Skew information of a state for an observable or a channel.
    Skew(SkewArgs),
    /// Bound report for a list of observables or channels.
    Bounds(BoundsArgs),
    /// Write a figure dataset as CSV.
    Figure(FigureArgs),
    /// Run seeded property suites.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct SkewArgs {
    /// Catalog name or JSON file.
    #[arg(long)]
    state: String,
    #[arg(long, conflicts_with = "channel", required_unless_present = "channel")]
    observable: Option<String>,
    #[arg(long)]
    channel: Option<String>,
    /// Print JSON with exact values instead of rounded text.
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum TargetKind {
    Obs,
    Chan,
}

#[derive(Args)]
struct BoundsArgs {
    kind: TargetKind,
    #[arg(long)]
    state: String,
    /// Comma-separated catalog names or JSON files.
    #[arg(long)]
    targets: String,
    /// Evaluate only the identity permutation tuple.
    #[arg(long)]
    identity_only: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct FigureArgs {
    id: String,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Points per axis.
    #[arg(long)]
    res: Option<usize>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value = "all")]
    suite: String,
    #[arg(long, default_value_t = 200)]
    trials: usize,
    #[arg(long, default_value_t = 7)]
    seed: u64,
    #[arg(long, value_delimiter = ',', default_value = "2,3")]
    dims: Vec<usize>,
    /// Also write the first violating instance here.
    #[arg(long)]
    instance_out: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn read_file(spec: &str) -> anyhow::Result<String> {
    let path = Path::new(spec);
    if !path.is_file() {
        bail!("'{spec}' is neither a catalog name nor a readable file");
    }
    fs::read_to_string(path).with_context(|| format!("reading {spec}"))
}

fn load_state(spec: &str, tol: &Tolerances) -> anyhow::Result<DensityState> {
    if is_catalog_name(spec) {
        return Ok(parse_state(spec, tol)?);
    }
    state_from_json(&read_file(spec)?, tol).with_context(|| format!("state file {spec}"))
}

fn load_observables(spec: &str, tol: &Tolerances) -> anyhow::Result<Vec<Observable>> {
    if is_catalog_name(spec) {
        return Ok(parse_observables(spec)?);
    }
    observables_from_json(&read_file(spec)?, tol).with_context(|| format!("observable file {spec}"))
}

fn load_channels(spec: &str, tol: &Tolerances) -> anyhow::Result<Vec<KrausChannel>> {
    if is_catalog_name(spec) {
        return Ok(vec![parse_channel(spec, tol)?]);
    }
    channels_from_json(&read_file(spec)?, tol).with_context(|| format!("channel file {spec}"))
}

fn emit(text: &str, out: Option<&Path>) -> anyhow::Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn cmd_skew(args: &SkewArgs, tol: &Tolerances) -> anyhow::Result<u8> {
    let rho = load_state(&args.state, tol)?;
    let values = if let Some(spec) = &args.observable {
        load_observables(spec, tol)?
            .iter()
            .map(|m| skew_observable(&rho, m))
            .collect::<skewinfo::Result<Vec<_>>>()?
    } else {
        let spec = args.channel.as_deref().expect("clap requires one target");
        load_channels(spec, tol)?
            .iter()
            .map(|c| skew_channel(&rho, c))
            .collect::<skewinfo::Result<Vec<_>>>()?
    };
    if args.json {
        println!("{}", json!({ "values": values }));
    } else {
        for v in values {
            println!("{}", format_sig(v, 12));
        }
    }
    Ok(0)
}

fn report_violations(violations: &[(&str, f64)]) -> u8 {
    if violations.is_empty() {
        return 0;
    }
    for (name, value) in violations {
        eprintln!("bound violation: {name} = {value}");
    }
    EXIT_BOUND
}

fn cmd_bounds(args: &BoundsArgs, tol: &Tolerances) -> anyhow::Result<u8> {
    let rho = load_state(&args.state, tol)?;
    let targets = split_targets(&args.targets);
    if targets.is_empty() {
        bail!("no targets given");
    }
    let (text, code) = match args.kind {
        TargetKind::Obs => {
            let mut obs = Vec::new();
            for t in &targets {
                obs.extend(load_observables(t, tol)?);
            }
            let report = observable_bounds::report(&rho, &obs, tol)?;
            let code = report_violations(&report.violations(tol));
            (serde_json::to_string_pretty(&report)?, code)
        }
        TargetKind::Chan => {
            let mut channels = Vec::new();
            for t in &targets {
                channels.extend(load_channels(t, tol)?);
            }
            let mode = if args.identity_only {
                SearchMode::IdentityOnly
            } else {
                SearchMode::Exhaustive
            };
            let report = channel_report(&rho, &channels, mode)?;
            let code = report_violations(&report.violations(tol));
            (serde_json::to_string_pretty(&report)?, code)
        }
    };
    emit(&(text + "\n"), args.out.as_deref())?;
    Ok(code)
}

fn cmd_figure(args: &FigureArgs, tol: &Tolerances) -> anyhow::Result<u8> {
    let id: FigureId = args.id.parse()?;
    let mut spec = FigureSpec::new(id);
    if let Some(res) = args.res {
        spec = spec.with_resolution(res);
    }
    let data = generate(&spec, tol)?;
    emit(&data.to_csv(), args.out.as_deref())?;
    Ok(0)
}

fn cmd_verify(args: &VerifyArgs, tol: &Tolerances) -> anyhow::Result<u8> {
    let suite: Suite = args.suite.parse()?;
    let cfg = VerifyConfig::new(suite, args.trials, args.seed)
        .with_dims(args.dims.clone())
        .with_tolerances(*tol);
    let summary = verify::run(&cfg)?;
    emit(
        &(serde_json::to_string_pretty(&summary)? + "\n"),
        args.out.as_deref(),
    )?;
    if let Some(v) = &summary.first_violation {
        eprintln!(
            "property {} violated at trial {} (residual {:e}, limit {:e})",
            v.property, v.trial, v.residual, v.limit
        );
        if let Some(path) = &args.instance_out {
            fs::write(path, serde_json::to_string_pretty(&v.instance)? + "\n")
                .with_context(|| format!("writing {}", path.display()))?;
        }
    }
    Ok(if summary.passed { 0 } else { EXIT_VIOLATION })
}

fn run(cli: Cli) -> anyhow::Result<u8> {
    let mut tol = Tolerances::default();
    if let Some(eq) = cli.tol_eq {
        tol = tol.with_eq_tol(eq)?;
    }
    match &cli.command {
        Command::Skew(a) => cmd_skew(a, &tol),
        Command::Bounds(a) => cmd_bounds(a, &tol),
        Command::Figure(a) => cmd_figure(a, &tol),
        Command::Verify(a) => cmd_verify(a, &tol),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}
