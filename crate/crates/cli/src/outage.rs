//! Monte-Carlo outage curves under Rayleigh fading.

use anyhow::Result;
use backhaul_secrecy::fading::outage_probabilities;
use backhaul_secrecy::{FadingAverages, RateBps, StrategyKind};
use clap::{Args, ValueEnum};

use crate::rates::parse_strategy;
use crate::sweep::{SweepSpec, SweepVar};
use crate::table::Table;
use crate::{FadingArgs, OutputArgs, SweepArgs};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutageFigure {
    /// Outage vs c_l in [0, 10] step 0.5; 15 dB means, gamma_cb 15 dB, target 1 bps.
    Fig6,
    /// Outage vs gamma_cb in [-10, 40] dB step 2.5; 15 dB means, c_l 2, target 2 bps.
    Fig7,
}

#[derive(Debug, Args)]
pub struct OutageArgs {
    #[arg(long, value_enum)]
    pub figure: Option<OutageFigure>,
    /// Comma-separated strategies (full names or EQ, WZ, SUP, FT, NF, NJB, ND).
    #[arg(long, value_delimiter = ',', value_parser = parse_strategy)]
    pub strategy: Option<Vec<StrategyKind>>,
    /// Backhaul capacity [bps].
    #[arg(long, allow_hyphen_values = true)]
    pub cl: Option<f64>,
    /// Target secrecy rate [bps].
    #[arg(long, allow_hyphen_values = true)]
    pub target: Option<f64>,
    #[command(flatten)]
    pub fading: FadingArgs,
    #[command(flatten)]
    pub sweep: SweepArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OutageJob {
    pub sweep: SweepSpec,
    pub strategies: Vec<StrategyKind>,
    pub target: f64,
    pub c_l: f64,
    /// Mean SNRs in dB: ab, ae, ce, cd, then the constant gamma_cb.
    pub means_db: [f64; 5],
    pub samples: u64,
    pub seed: u64,
}

pub const DEFAULT_SEED: u64 = 2017;

fn preset(fig: OutageFigure) -> Result<OutageJob> {
    use StrategyKind::*;
    Ok(match fig {
        OutageFigure::Fig6 => OutageJob {
            sweep: SweepSpec::new(SweepVar::CL, 0.0, 10.0, 0.5)?,
            strategies: vec![ElemQuant, WynerZiv, Superposition, FullTransfer, NoiseJamBound, NoDownlink],
            target: 1.0,
            c_l: 0.0,
            means_db: [15.0; 5],
            samples: 200_000,
            seed: DEFAULT_SEED,
        },
        OutageFigure::Fig7 => OutageJob {
            sweep: SweepSpec::new(SweepVar::GammaCbDb, -10.0, 40.0, 2.5)?,
            strategies: vec![ElemQuant, WynerZiv, Superposition, NoBackbone, FullTransfer, NoDownlink, NoiseJamBound],
            target: 2.0,
            c_l: 2.0,
            means_db: [15.0; 5],
            samples: 200_000,
            seed: DEFAULT_SEED,
        },
    })
}

impl OutageJob {
    pub fn resolve(args: &OutageArgs) -> Result<Self> {
        let mut job = match args.figure {
            Some(fig) => preset(fig)?,
            None => OutageJob {
                sweep: SweepSpec::new(SweepVar::CL, 0.0, 10.0, 1.0)?,
                ..preset(OutageFigure::Fig6)?
            },
        };
        if let Some(list) = &args.strategy {
            job.strategies = list.clone();
        }
        if let Some(t) = args.target {
            job.target = RateBps::new(t)?.get();
        }
        if let Some(cl) = args.cl {
            job.c_l = RateBps::new(cl)?.get();
        }
        args.fading.apply(&mut job.means_db, &mut job.samples, &mut job.seed);
        job.sweep = args.sweep.apply(job.sweep)?;
        Ok(job)
    }

    pub fn run(&self) -> Result<Table> {
        let names = self.strategies.iter().map(|k| k.short().to_string()).collect();
        let mut table = Table::new(self.sweep.variable.label(), names);
        let target = RateBps::new(self.target)?;
        for x in self.sweep.points() {
            let mut means = self.means_db;
            let mut c_l = self.c_l;
            match self.sweep.variable {
                SweepVar::CL => c_l = x,
                SweepVar::GammaCbDb => means[4] = x,
                SweepVar::RC => anyhow::bail!("outage curves cannot sweep r_c; it follows the faded downlink"),
            }
            let [ab, ae, ce, cd, cb] = means;
            let avg = FadingAverages::from_db(ab, ae, ce, cd, cb)?;
            let est = outage_probabilities(&self.strategies, target, &avg, RateBps::new(c_l)?, self.samples, self.seed)?;
            table.push(x, est.iter().map(|e| e.p_out).collect());
        }
        Ok(table)
    }
}
