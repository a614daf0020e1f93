//! Multiuser scheduling ratios.

use anyhow::{bail, Result};
use backhaul_secrecy::{simulate_schedulers, FadingAverages, MultiuserScenario, RateBps};
use clap::{Args, ValueEnum};

use crate::outage::DEFAULT_SEED;
use crate::sweep::{SweepSpec, SweepVar};
use crate::table::Table;
use crate::{FadingArgs, OutputArgs, SweepArgs};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ScheduleFigure {
    /// Downlink-rate ratio MaxSec/MaxRc vs c_l in [0, 10] step 0.5; 15 dB means, gamma_cb 5 dB, 4+4 users.
    Fig8,
    /// Secrecy-rate ratio MaxSec/MaxRc vs c_l in [0, 10] step 0.5; 15 dB means, gamma_cb 5 dB, 4+4 users.
    Fig9,
}

#[derive(Debug, Args)]
pub struct ScheduleArgs {
    #[arg(long, value_enum)]
    pub figure: Option<ScheduleFigure>,
    /// Backhaul capacity [bps].
    #[arg(long, allow_hyphen_values = true)]
    pub cl: Option<f64>,
    /// Number of uplink users.
    #[arg(long)]
    pub mu: Option<usize>,
    /// Number of downlink users.
    #[arg(long)]
    pub md: Option<usize>,
    #[command(flatten)]
    pub fading: FadingArgs,
    #[command(flatten)]
    pub sweep: SweepArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Metric {
    DownlinkRate,
    SecrecyRate,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScheduleJob {
    pub sweep: SweepSpec,
    pub metric: Metric,
    pub c_l: f64,
    pub m_u: usize,
    pub m_d: usize,
    pub means_db: [f64; 5],
    pub samples: u64,
    pub seed: u64,
}

fn preset(fig: ScheduleFigure) -> Result<ScheduleJob> {
    Ok(ScheduleJob {
        sweep: SweepSpec::new(SweepVar::CL, 0.0, 10.0, 0.5)?,
        metric: match fig {
            ScheduleFigure::Fig8 => Metric::DownlinkRate,
            ScheduleFigure::Fig9 => Metric::SecrecyRate,
        },
        c_l: 0.0,
        m_u: MultiuserScenario::DEFAULT_USERS,
        m_d: MultiuserScenario::DEFAULT_USERS,
        means_db: [15.0, 15.0, 15.0, 15.0, 5.0],
        samples: 200_000,
        seed: DEFAULT_SEED,
    })
}

impl ScheduleJob {
    pub fn resolve(args: &ScheduleArgs) -> Result<Self> {
        let mut job = preset(args.figure.unwrap_or(ScheduleFigure::Fig9))?;
        if let Some(cl) = args.cl {
            job.c_l = RateBps::new(cl)?.get();
        }
        if let Some(m) = args.mu {
            job.m_u = m;
        }
        if let Some(m) = args.md {
            job.m_d = m;
        }
        args.fading.apply(&mut job.means_db, &mut job.samples, &mut job.seed);
        job.sweep = args.sweep.apply(job.sweep)?;
        Ok(job)
    }

    pub fn run(&self) -> Result<Table> {
        let prefix = match self.metric {
            Metric::DownlinkRate => "R_C_ratio",
            Metric::SecrecyRate => "R_As_ratio",
        };
        let columns = ["SUP", "WZ", "SUP_ci95", "WZ_ci95"].iter().map(|s| format!("{prefix}_{s}")).collect();
        let mut table = Table::new(self.sweep.variable.label(), columns);
        for x in self.sweep.points() {
            let mut means = self.means_db;
            let mut c_l = self.c_l;
            match self.sweep.variable {
                SweepVar::CL => c_l = x,
                SweepVar::GammaCbDb => means[4] = x,
                SweepVar::RC => bail!("scheduling curves cannot sweep r_c; it follows the selected downlink user"),
            }
            let [ab, ae, ce, cd, cb] = means;
            let scn = MultiuserScenario::new(self.m_u, self.m_d, FadingAverages::from_db(ab, ae, ce, cd, cb)?)?;
            let s = simulate_schedulers(&scn, RateBps::new(c_l)?, self.samples, self.seed)?;
            let (sup, wz) = match self.metric {
                Metric::DownlinkRate => (s.r_c_ratio_sup, s.r_c_ratio_wz),
                Metric::SecrecyRate => (s.r_as_ratio_sup, s.r_as_ratio_wz),
            };
            table.push(x, vec![sup.ratio, wz.ratio, sup.half_width_95, wz.half_width_95]);
        }
        Ok(table)
    }
}
