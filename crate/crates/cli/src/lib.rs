//! Command-line front end: rate curves, outage curves, scheduling ratios and
//! an oracle self-check, written as CSV or JSON.

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;

use anyhow::{Context, Result};
use backhaul_secrecy::mac_oracle::equivalence_sweep;
use clap::{Args, Parser, Subcommand};

pub mod outage;
pub mod rates;
pub mod schedule;
pub mod sweep;
pub mod table;

use outage::{OutageArgs, OutageJob};
use rates::{RatesArgs, RatesJob};
use schedule::{ScheduleArgs, ScheduleJob};
use sweep::{SweepSpec, SweepVar};
use table::{sig9, Format, Table};

#[derive(Debug, Parser)]
#[command(name = "bhsec", version, about = "Uplink secrecy with a capacity-limited backhaul between base stations")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Deterministic rate curves for fixed link SNRs.
    Rates(RatesArgs),
    /// Outage probability of the secrecy rate under Rayleigh fading.
    Outage(OutageArgs),
    /// Downlink-user scheduling: MaxSec vs MaxRc rate ratios.
    Schedule(ScheduleArgs),
    /// Compare every closed-form uplink rate against the log-determinant oracle.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Write to this file instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Worker threads for Monte-Carlo work; results do not depend on it.
    #[arg(long)]
    pub threads: Option<usize>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Variable on the x axis.
    #[arg(long, value_enum)]
    pub sweep: Option<SweepVar>,
    #[arg(long, allow_hyphen_values = true)]
    pub start: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub stop: Option<f64>,
    #[arg(long)]
    pub step: Option<f64>,
}

impl SweepArgs {
    /// Overrides the preset sweep field by field.
    pub fn apply(&self, base: SweepSpec) -> Result<SweepSpec> {
        SweepSpec::new(
            self.sweep.unwrap_or(base.variable),
            self.start.unwrap_or(base.start),
            self.stop.unwrap_or(base.stop),
            self.step.unwrap_or(base.step),
        )
    }
}

#[derive(Debug, Args)]
pub struct FadingArgs {
    #[arg(long = "mean-ab-db", allow_hyphen_values = true)]
    pub mean_ab_db: Option<f64>,
    #[arg(long = "mean-ae-db", allow_hyphen_values = true)]
    pub mean_ae_db: Option<f64>,
    #[arg(long = "mean-ce-db", allow_hyphen_values = true)]
    pub mean_ce_db: Option<f64>,
    #[arg(long = "mean-cd-db", allow_hyphen_values = true)]
    pub mean_cd_db: Option<f64>,
    /// Constant inter-BS SNR [dB].
    #[arg(long = "gcb-db", allow_hyphen_values = true)]
    pub gcb_db: Option<f64>,
    /// Monte-Carlo realizations per point.
    #[arg(long)]
    pub samples: Option<u64>,
    #[arg(long)]
    pub seed: Option<u64>,
}

impl FadingArgs {
    fn apply(&self, means_db: &mut [f64; 5], samples: &mut u64, seed: &mut u64) {
        let flags = [self.mean_ab_db, self.mean_ae_db, self.mean_ce_db, self.mean_cd_db, self.gcb_db];
        for (slot, flag) in means_db.iter_mut().zip(flags) {
            if let Some(v) = flag {
                *slot = v;
            }
        }
        if let Some(n) = self.samples {
            *samples = n;
        }
        if let Some(s) = self.seed {
            *seed = s;
        }
    }
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Number of random parameter tuples.
    #[arg(long, default_value_t = 10_000)]
    pub grid: u64,
    #[arg(long, default_value_t = 7)]
    pub seed: u64,
    #[command(flatten)]
    pub output: OutputArgs,
}

/// Largest tolerated closed-form/oracle gap in `verify`.
pub const VERIFY_TOLERANCE: f64 = 1e-9;

/// Parses `args` (program name first) and runs the command, writing results
/// to `out` unless `--out` is given. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            1
        }
    }
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32> {
    let output = match &cli.command {
        Command::Rates(a) => &a.output,
        Command::Outage(a) => &a.output,
        Command::Schedule(a) => &a.output,
        Command::Verify(a) => &a.output,
    };
    let (table, code) = with_threads(output.threads, || -> Result<(Table, i32)> {
        Ok(match &cli.command {
            Command::Rates(a) => (RatesJob::resolve(a)?.run(a.verify)?, 0),
            Command::Outage(a) => (OutageJob::resolve(a)?.run()?, 0),
            Command::Schedule(a) => (ScheduleJob::resolve(a)?.run()?, 0),
            Command::Verify(a) => verify(a)?,
        })
    })?;
    match &output.out {
        Some(path) => {
            let file = File::create(path).with_context(|| format!("creating {}", path.display()))?;
            let mut w = BufWriter::new(file);
            table.write(output.format, &mut w)?;
            w.flush()?;
        }
        None => table.write(output.format, out)?,
    }
    Ok(code)
}

fn with_threads<R: Send>(threads: Option<usize>, f: impl FnOnce() -> Result<R> + Send) -> Result<R> {
    match threads {
        Some(n) => rayon::ThreadPoolBuilder::new().num_threads(n).build()?.install(f),
        None => f(),
    }
}

fn verify(args: &VerifyArgs) -> Result<(Table, i32)> {
    let report = equivalence_sweep(args.grid, args.seed)?;
    let checks = [
        ("elem_quant", report.elem_quant),
        ("wyner_ziv", report.wyner_ziv),
        ("sup_send_wc1", report.sup_send_wc1),
        ("sup_send_wc2", report.sup_send_wc2),
        ("sup_full_transfer", report.sup_full_transfer),
        ("wz_loop", report.wz_loop),
    ];
    let mut table = Table::new("check", vec!["max_abs_deviation".into(), "tolerance".into(), "pass".into()]);
    let mut failed = false;
    for (i, (name, dev)) in checks.iter().enumerate() {
        let pass = *dev < VERIFY_TOLERANCE;
        failed |= !pass;
        eprintln!("{name}: max |closed form - oracle| = {} ({})", sig9(*dev), if pass { "pass" } else { "FAIL" });
        table.push(i as f64, vec![*dev, VERIFY_TOLERANCE, if pass { 1.0 } else { 0.0 }]);
    }
    Ok((table.with_row_names(checks.iter().map(|c| c.0)), i32::from(failed)))
}
