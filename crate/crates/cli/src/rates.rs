//! Deterministic (unfaded) rate curves.

use anyhow::{bail, Result};
use backhaul_secrecy::mac_oracle::{gaussian_mi, oracle_s_ab_quant, oracle_s_ab_sup, MiTerm, VectorChannelSpec};
use backhaul_secrecy::rate_core::db_to_linear;
use backhaul_secrecy::strategies::{self, s_ab_sup, sup_alphas};
use backhaul_secrecy::{capacity, secrecy_rate, ChannelGains, RateBps, SnrLinear, StrategyKind, SupVariant};
use clap::{Args, ValueEnum};

use crate::sweep::{SweepSpec, SweepVar};
use crate::table::Table;
use crate::{OutputArgs, SweepArgs, VERIFY_TOLERANCE};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RatesFigure {
    /// Full-transfer secrecy vs r_c in [0, 6] step 0.05; gamma_ab=7, gamma_ae=15, gamma_ce=10 (linear).
    Fig2,
    /// Uplink rates vs r_c in [0, 8] step 0.05; gamma_ab=gamma_cb=10 dB, c_l=2.
    Fig3,
    /// Uplink rates vs gamma_cb in [-10, 40] dB step 0.5; gamma_ab=15 dB, r_c=3, c_l=2.
    Fig4,
    /// Secrecy vs r_c in [0, 10] step 0.05 for c_l in {0, 2, 4}; every SNR 20 dB.
    Fig5,
}

#[derive(Debug, Args)]
pub struct RatesArgs {
    #[arg(long, value_enum)]
    pub figure: Option<RatesFigure>,
    /// Comma-separated strategies (full names or EQ, WZ, SUP, FT, NF, NJB, ND).
    #[arg(long, value_delimiter = ',', value_parser = parse_strategy)]
    pub strategy: Option<Vec<StrategyKind>>,
    /// Backhaul capacity [bps].
    #[arg(long, allow_hyphen_values = true)]
    pub cl: Option<f64>,
    /// Downlink rate [bps].
    #[arg(long, allow_hyphen_values = true)]
    pub rc: Option<f64>,
    #[arg(long = "gab-db", allow_hyphen_values = true)]
    pub gab_db: Option<f64>,
    #[arg(long = "gcb-db", allow_hyphen_values = true)]
    pub gcb_db: Option<f64>,
    #[arg(long = "gae-db", allow_hyphen_values = true)]
    pub gae_db: Option<f64>,
    #[arg(long = "gce-db", allow_hyphen_values = true)]
    pub gce_db: Option<f64>,
    /// Downlink SNR; sets r_c to its capacity when --rc is absent.
    #[arg(long = "gcd-db", allow_hyphen_values = true)]
    pub gcd_db: Option<f64>,
    /// Cross-check every uplink rate against the log-determinant oracle.
    #[arg(long)]
    pub verify: bool,
    #[command(flatten)]
    pub sweep: SweepArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

pub(crate) fn parse_strategy(s: &str) -> Result<StrategyKind, String> {
    s.parse().map_err(|e: backhaul_secrecy::Error| e.to_string())
}

/// Link parameters of one curve point, all SNRs linear.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkParams {
    pub gab: f64,
    pub gcb: f64,
    pub gae: f64,
    pub gce: f64,
    pub r_c: f64,
    pub c_l: f64,
}

impl LinkParams {
    fn set(&mut self, var: SweepVar, x: f64) -> Result<()> {
        match var {
            SweepVar::RC => self.r_c = x,
            SweepVar::CL => self.c_l = x,
            SweepVar::GammaCbDb => self.gcb = db_to_linear(x)?.get(),
        }
        Ok(())
    }

    fn gains(&self) -> Result<ChannelGains> {
        let gcd = self.r_c.exp2() - 1.0;
        Ok(ChannelGains::new(self.gab, self.gcb, self.gae, self.gce, gcd.min(f64::MAX))?)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Quantity {
    /// Secrecy rate; `c_l` overrides the point's backhaul.
    Secrecy(StrategyKind, Option<f64>),
    /// Legitimate uplink rate of a strategy.
    Uplink(StrategyKind),
    /// Uplink rate of one superposition split, full transfer when `r_c <= c_l`.
    Split(SupVariant),
    Eavesdropper,
    DirectCapacity,
    /// `C(gamma_ab) - R_As` for a strategy.
    RateLoss(StrategyKind),
}

#[derive(Debug, Clone, PartialEq)]
pub struct RatesJob {
    pub sweep: SweepSpec,
    pub params: LinkParams,
    pub columns: Vec<(String, Quantity)>,
}

fn preset(fig: RatesFigure) -> Result<RatesJob> {
    let lin = |db: f64| db_to_linear(db).map(SnrLinear::get);
    use Quantity::*;
    use StrategyKind::*;
    let s_ab_columns = || {
        vec![
            ("S_AB_SUP1".to_string(), Split(SupVariant::SendWc1)),
            ("S_AB_SUP2".to_string(), Split(SupVariant::SendWc2)),
            ("S_AB_EQ".to_string(), Uplink(ElemQuant)),
            ("S_AB_WZ".to_string(), Uplink(WynerZiv)),
            ("S_AB_CL0".to_string(), Uplink(NoBackbone)),
            ("S_AB_FT".to_string(), Uplink(FullTransfer)),
        ]
    };
    Ok(match fig {
        RatesFigure::Fig2 => RatesJob {
            sweep: SweepSpec::new(SweepVar::RC, 0.0, 6.0, 0.05)?,
            params: LinkParams { gab: 7.0, gcb: 10.0, gae: 15.0, gce: 10.0, r_c: 0.0, c_l: 0.0 },
            columns: vec![
                ("R_As".into(), Secrecy(FullTransfer, None)),
                ("S_AE".into(), Eavesdropper),
                ("C_AB".into(), DirectCapacity),
                ("R_x".into(), RateLoss(FullTransfer)),
            ],
        },
        RatesFigure::Fig3 => RatesJob {
            sweep: SweepSpec::new(SweepVar::RC, 0.0, 8.0, 0.05)?,
            params: LinkParams { gab: lin(10.0)?, gcb: lin(10.0)?, gae: lin(10.0)?, gce: lin(10.0)?, r_c: 0.0, c_l: 2.0 },
            columns: s_ab_columns(),
        },
        RatesFigure::Fig4 => RatesJob {
            sweep: SweepSpec::new(SweepVar::GammaCbDb, -10.0, 40.0, 0.5)?,
            params: LinkParams { gab: lin(15.0)?, gcb: 1.0, gae: lin(15.0)?, gce: lin(15.0)?, r_c: 3.0, c_l: 2.0 },
            columns: s_ab_columns(),
        },
        RatesFigure::Fig5 => {
            let g = lin(20.0)?;
            let mut columns = Vec::new();
            for c_l in [0.0, 2.0, 4.0] {
                for k in [ElemQuant, WynerZiv, Superposition] {
                    columns.push((format!("{}_CL{c_l}", k.short()), Secrecy(k, Some(c_l))));
                }
            }
            columns.push(("NF".into(), Secrecy(NoBackbone, None)));
            columns.push(("FT".into(), Secrecy(FullTransfer, None)));
            RatesJob {
                sweep: SweepSpec::new(SweepVar::RC, 0.0, 10.0, 0.05)?,
                params: LinkParams { gab: g, gcb: g, gae: g, gce: g, r_c: 0.0, c_l: 0.0 },
                columns,
            }
        }
    })
}

impl RatesJob {
    pub fn resolve(args: &RatesArgs) -> Result<Self> {
        let mut job = match args.figure {
            Some(fig) => preset(fig)?,
            None => {
                let g = 10.0;
                let strategies = args.strategy.clone().unwrap_or_else(|| {
                    vec![
                        StrategyKind::NoBackbone,
                        StrategyKind::ElemQuant,
                        StrategyKind::WynerZiv,
                        StrategyKind::Superposition,
                        StrategyKind::FullTransfer,
                    ]
                });
                RatesJob {
                    sweep: SweepSpec::new(SweepVar::RC, 0.0, 6.0, 0.1)?,
                    params: LinkParams { gab: g, gcb: g, gae: g, gce: g, r_c: 3.0, c_l: 2.0 },
                    columns: strategies
                        .into_iter()
                        .map(|k| (k.name().to_string(), Quantity::Secrecy(k, None)))
                        .collect(),
                }
            }
        };
        if let (Some(_), Some(list)) = (args.figure, &args.strategy) {
            job.columns = list.iter().map(|&k| (k.name().to_string(), Quantity::Secrecy(k, None))).collect();
        }
        let p = &mut job.params;
        for (flag, slot) in [
            (args.gab_db, &mut p.gab),
            (args.gcb_db, &mut p.gcb),
            (args.gae_db, &mut p.gae),
            (args.gce_db, &mut p.gce),
        ] {
            if let Some(db) = flag {
                *slot = db_to_linear(db)?.get();
            }
        }
        if let Some(db) = args.gcd_db {
            p.r_c = capacity(db_to_linear(db)?).get();
        }
        if let Some(rc) = args.rc {
            p.r_c = RateBps::new(rc)?.get();
        }
        if let Some(cl) = args.cl {
            p.c_l = RateBps::new(cl)?.get();
        }
        job.sweep = args.sweep.apply(job.sweep)?;
        Ok(job)
    }

    pub fn run(&self, verify: bool) -> Result<Table> {
        let names = self.columns.iter().map(|(n, _)| n.clone()).collect();
        let mut table = Table::new(self.sweep.variable.label(), names);
        for x in self.sweep.points() {
            let mut p = self.params;
            p.set(self.sweep.variable, x)?;
            let values = self
                .columns
                .iter()
                .map(|&(_, q)| evaluate(q, &p, verify))
                .collect::<Result<Vec<_>>>()?;
            table.push(x, values);
        }
        Ok(table)
    }
}

fn evaluate(q: Quantity, p: &LinkParams, verify: bool) -> Result<f64> {
    let gains = p.gains()?;
    let r_c = RateBps::new(p.r_c)?;
    let c_l = RateBps::new(p.c_l)?;
    let value = match q {
        Quantity::Secrecy(kind, cl_override) => {
            let c_l = cl_override.map(RateBps::new).transpose()?.unwrap_or(c_l);
            let eval = secrecy_rate(kind, &gains, r_c, c_l);
            if verify {
                check_uplink(kind, &gains, r_c, c_l, eval.s_ab.get())?;
            }
            eval.r_as.get()
        }
        Quantity::Uplink(kind) => {
            let s_ab = secrecy_rate(kind, &gains, r_c, c_l).s_ab.get();
            if verify {
                check_uplink(kind, &gains, r_c, c_l, s_ab)?;
            }
            s_ab
        }
        Quantity::Split(variant) => {
            if r_c <= c_l {
                capacity(gains.gamma_ab).get()
            } else {
                let alpha = sup_alphas(c_l, gains.gamma_cd)?;
                let v = s_ab_sup(variant, gains.gamma_ab, gains.gamma_cb, &alpha, r_c, c_l).get();
                if verify {
                    let o = oracle_s_ab_sup(variant, gains.gamma_ab, gains.gamma_cb, &alpha, r_c, c_l)?.get();
                    ensure_close("superposition split", v, o)?;
                }
                v
            }
        }
        Quantity::Eavesdropper => strategies::s_ae(&gains, r_c).get(),
        Quantity::DirectCapacity => capacity(gains.gamma_ab).get(),
        Quantity::RateLoss(kind) => capacity(gains.gamma_ab).get() - secrecy_rate(kind, &gains, r_c, c_l).r_as.get(),
    };
    Ok(value)
}

fn ensure_close(what: &str, closed: f64, oracle: f64) -> Result<()> {
    if (closed - oracle).abs() >= VERIFY_TOLERANCE {
        bail!("{what}: closed form {closed} disagrees with oracle {oracle}");
    }
    Ok(())
}

fn check_uplink(kind: StrategyKind, gains: &ChannelGains, r_c: RateBps, c_l: RateBps, s_ab: f64) -> Result<()> {
    let full = || gaussian_mi(&VectorChannelSpec::wireless_only(gains.gamma_ab, gains.gamma_cb), MiTerm::UplinkGivenDownlink);
    let oracle = match kind {
        StrategyKind::ElemQuant | StrategyKind::WynerZiv | StrategyKind::Superposition if r_c <= c_l => full()?,
        StrategyKind::FullTransfer => full()?,
        StrategyKind::NoBackbone => oracle_s_ab_quant(gains.gamma_ab, gains.gamma_cb, SnrLinear::ZERO, r_c)?,
        StrategyKind::ElemQuant => {
            oracle_s_ab_quant(gains.gamma_ab, gains.gamma_cb, strategies::gamma_q_eq(c_l), r_c)?
        }
        StrategyKind::WynerZiv => {
            let q = strategies::gamma_q_wz(c_l, gains.gamma_ab, gains.gamma_cb);
            oracle_s_ab_quant(gains.gamma_ab, gains.gamma_cb, q, r_c)?
        }
        StrategyKind::Superposition => {
            let alpha = sup_alphas(c_l, gains.gamma_cd)?;
            let f = |v| oracle_s_ab_sup(v, gains.gamma_ab, gains.gamma_cb, &alpha, r_c, c_l);
            let best = f(SupVariant::SendWc1)?.get().max(f(SupVariant::SendWc2)?.get());
            return ensure_close(kind.name(), s_ab, best);
        }
        StrategyKind::NoiseJamBound | StrategyKind::NoDownlink => return Ok(()),
    };
    ensure_close(kind.name(), s_ab, oracle.get())
}
