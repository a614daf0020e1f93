//! Multiuser scheduling with full channel state information.
//!
//! Each slot the receiving base station picks the uplink user with the best
//! uplink SNR, and the interfering base station picks a downlink user either
//! for the largest downlink rate (`MaxRc`) or for the largest uplink secrecy
//! rate under a given backhaul method (`MaxSec*`). All schedulers see the
//! same channels in every slot.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fading::{draw_exp, FadingAverages};
use crate::rate_core::{capacity, ChannelGains, RateBps, SnrLinear};
use crate::strategies::{secrecy_rate, StrategyKind};
use crate::substream::{chunks, realization_rng};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SchedulerKind {
    MaxRc,
    MaxSecWz,
    MaxSecSup,
}

impl SchedulerKind {
    pub const ALL: [SchedulerKind; 3] = [SchedulerKind::MaxRc, SchedulerKind::MaxSecWz, SchedulerKind::MaxSecSup];

    pub fn name(self) -> &'static str {
        match self {
            SchedulerKind::MaxRc => "max-rc",
            SchedulerKind::MaxSecWz => "max-sec-wz",
            SchedulerKind::MaxSecSup => "max-sec-sup",
        }
    }
}

impl fmt::Display for SchedulerKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SchedulerKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SchedulerKind::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::UnknownName { what: "scheduler", name: s.to_string() })
    }
}

/// How the interfering base station uses the backhaul.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum BackhaulMethod {
    WynerZiv,
    Superposition,
}

impl BackhaulMethod {
    pub fn strategy(self) -> StrategyKind {
        match self {
            BackhaulMethod::WynerZiv => StrategyKind::WynerZiv,
            BackhaulMethod::Superposition => StrategyKind::Superposition,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MultiuserScenario {
    pub m_u: usize,
    pub m_d: usize,
    pub avg: FadingAverages,
}

impl MultiuserScenario {
    pub const DEFAULT_USERS: usize = 4;

    pub fn new(m_u: usize, m_d: usize, avg: FadingAverages) -> Result<Self> {
        for m in [m_u, m_d] {
            if m == 0 {
                return Err(Error::NoUsers(m));
            }
        }
        Ok(MultiuserScenario { m_u, m_d, avg })
    }
}

/// Index of the uplink user with the largest `gamma_AiB`; first on ties.
/// Each entry is `(gamma_AiB, gamma_AiE)`.
pub fn select_uplink(gains_per_user: &[(SnrLinear, SnrLinear)]) -> Result<usize> {
    argmax_first(gains_per_user.iter().map(|&(ab, _)| ab.get())).ok_or(Error::NoCandidates)
}

fn argmax_first(values: impl Iterator<Item = f64>) -> Option<usize> {
    let mut best: Option<(usize, f64)> = None;
    for (i, v) in values.enumerate() {
        if best.is_none_or(|(_, b)| v > b) {
            best = Some((i, v));
        }
    }
    best.map(|(i, _)| i)
}

/// Downlink user chosen by `kind`.
///
/// `fixed` carries the selected uplink user's channels plus `gamma_ce` and
/// `gamma_cb`; its `gamma_cd` is ignored. `MaxSec*` evaluates the secrecy
/// rate with each candidate's downlink at capacity and breaks ties toward
/// the larger downlink SNR, then the smaller index.
pub fn select_downlink(
    kind: SchedulerKind,
    gamma_cd_list: &[SnrLinear],
    fixed: &ChannelGains,
    c_l: RateBps,
) -> Result<usize> {
    if gamma_cd_list.is_empty() {
        return Err(Error::NoCandidates);
    }
    let method = match kind {
        SchedulerKind::MaxRc => {
            return Ok(argmax_first(gamma_cd_list.iter().map(|g| g.get())).expect("non-empty"));
        }
        SchedulerKind::MaxSecWz => BackhaulMethod::WynerZiv,
        SchedulerKind::MaxSecSup => BackhaulMethod::Superposition,
    };
    let mut best = 0;
    let mut best_key = (f64::NEG_INFINITY, f64::NEG_INFINITY);
    for (j, &gamma_cd) in gamma_cd_list.iter().enumerate() {
        let key = (secrecy_for(method, fixed, gamma_cd, c_l), gamma_cd.get());
        if key.0 > best_key.0 || (key.0 == best_key.0 && key.1 > best_key.1) {
            best = j;
            best_key = key;
        }
    }
    Ok(best)
}

fn secrecy_for(method: BackhaulMethod, fixed: &ChannelGains, gamma_cd: SnrLinear, c_l: RateBps) -> f64 {
    let gains = ChannelGains { gamma_cd, ..*fixed };
    secrecy_rate(method.strategy(), &gains, capacity(gamma_cd), c_l).r_as.get()
}

/// Everything the schedulers did in one slot.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SlotOutcome {
    pub uplink_user: usize,
    pub downlink_max_rc: usize,
    pub downlink_max_sec_wz: usize,
    pub downlink_max_sec_sup: usize,
    pub r_c_max_rc: f64,
    pub r_c_max_sec_wz: f64,
    pub r_c_max_sec_sup: f64,
    /// Secrecy under the `MaxRc` choice with Wyner-Ziv backhaul.
    pub r_as_max_rc_wz: f64,
    /// Secrecy under the `MaxRc` choice with superposition backhaul.
    pub r_as_max_rc_sup: f64,
    pub r_as_max_sec_wz: f64,
    pub r_as_max_sec_sup: f64,
}

impl SlotOutcome {
    fn values(&self) -> [f64; SLOT_VALUES] {
        [
            self.r_c_max_rc,
            self.r_c_max_sec_wz,
            self.r_c_max_sec_sup,
            self.r_as_max_rc_wz,
            self.r_as_max_rc_sup,
            self.r_as_max_sec_wz,
            self.r_as_max_sec_sup,
        ]
    }
}

const SLOT_VALUES: usize = 7;

/// Draws slot `index` of the run seeded with `seed` and applies every scheduler.
pub fn schedule_slot(scn: &MultiuserScenario, c_l: RateBps, seed: u64, index: u64) -> SlotOutcome {
    let mut rng = realization_rng(seed, index);
    let avg = &scn.avg;
    let uplink: Vec<(SnrLinear, SnrLinear)> = (0..scn.m_u)
        .map(|_| (draw_exp(avg.mean_ab, &mut rng), draw_exp(avg.mean_ae, &mut rng)))
        .collect();
    let gamma_ce = draw_exp(avg.mean_ce, &mut rng);
    let downlink: Vec<SnrLinear> = (0..scn.m_d).map(|_| draw_exp(avg.mean_cd, &mut rng)).collect();

    let uplink_user = select_uplink(&uplink).expect("m_u >= 1");
    let (gamma_ab, gamma_ae) = uplink[uplink_user];
    let fixed = ChannelGains { gamma_ab, gamma_cb: avg.gamma_cb_const, gamma_ae, gamma_ce, gamma_cd: SnrLinear::ZERO };

    let pick = |kind| select_downlink(kind, &downlink, &fixed, c_l).expect("m_d >= 1");
    let rc = pick(SchedulerKind::MaxRc);
    let wz = pick(SchedulerKind::MaxSecWz);
    let sup = pick(SchedulerKind::MaxSecSup);
    let r_c = |j: usize| capacity(downlink[j]).get();
    let sec = |m, j: usize| secrecy_for(m, &fixed, downlink[j], c_l);

    SlotOutcome {
        uplink_user,
        downlink_max_rc: rc,
        downlink_max_sec_wz: wz,
        downlink_max_sec_sup: sup,
        r_c_max_rc: r_c(rc),
        r_c_max_sec_wz: r_c(wz),
        r_c_max_sec_sup: r_c(sup),
        r_as_max_rc_wz: sec(BackhaulMethod::WynerZiv, rc),
        r_as_max_rc_sup: sec(BackhaulMethod::Superposition, rc),
        r_as_max_sec_wz: sec(BackhaulMethod::WynerZiv, wz),
        r_as_max_sec_sup: sec(BackhaulMethod::Superposition, sup),
    }
}

/// Average rates of one scheduler under one backhaul method.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScheduleReport {
    pub scheduler: SchedulerKind,
    pub method: BackhaulMethod,
    pub mean_r_c: f64,
    pub mean_r_as: f64,
    pub n_samples: u64,
    pub seed: u64,
}

/// Ratio of two paired averages with a delta-method 95% half-width.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RatioEstimate {
    pub ratio: f64,
    pub half_width_95: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScheduleSummary {
    pub c_l: RateBps,
    pub n_samples: u64,
    pub seed: u64,
    /// `(MaxRc, WZ)`, `(MaxRc, SUP)`, `(MaxSecWz, WZ)`, `(MaxSecSup, SUP)`.
    pub reports: Vec<ScheduleReport>,
    /// `R_C(MaxSecWz) / R_C(MaxRc)`
    pub r_c_ratio_wz: RatioEstimate,
    /// `R_C(MaxSecSup) / R_C(MaxRc)`
    pub r_c_ratio_sup: RatioEstimate,
    /// `R_As(MaxSecWz) / R_As(MaxRc)`, both with Wyner-Ziv backhaul.
    pub r_as_ratio_wz: RatioEstimate,
    /// `R_As(MaxSecSup) / R_As(MaxRc)`, both with superposition backhaul.
    pub r_as_ratio_sup: RatioEstimate,
    /// Slots where the two `MaxSec` schedulers picked the same user.
    pub sec_selections_agree: u64,
}

impl ScheduleSummary {
    pub fn report(&self, scheduler: SchedulerKind, method: BackhaulMethod) -> Option<&ScheduleReport> {
        self.reports.iter().find(|r| r.scheduler == scheduler && r.method == method)
    }
}

#[derive(Clone)]
struct Moments {
    sum: [f64; SLOT_VALUES],
    cross: [[f64; SLOT_VALUES]; SLOT_VALUES],
    agree: u64,
}

impl Moments {
    fn new() -> Self {
        Moments { sum: [0.0; SLOT_VALUES], cross: [[0.0; SLOT_VALUES]; SLOT_VALUES], agree: 0 }
    }

    fn push(&mut self, slot: &SlotOutcome) {
        let v = slot.values();
        for i in 0..SLOT_VALUES {
            self.sum[i] += v[i];
            for j in 0..SLOT_VALUES {
                self.cross[i][j] += v[i] * v[j];
            }
        }
        self.agree += u64::from(slot.downlink_max_sec_wz == slot.downlink_max_sec_sup);
    }

    fn merge(mut self, other: &Moments) -> Self {
        for i in 0..SLOT_VALUES {
            self.sum[i] += other.sum[i];
            for j in 0..SLOT_VALUES {
                self.cross[i][j] += other.cross[i][j];
            }
        }
        self.agree += other.agree;
        self
    }

    fn ratio(&self, num: usize, den: usize, n: f64) -> RatioEstimate {
        let (mx, my) = (self.sum[num] / n, self.sum[den] / n);
        let r = mx / my;
        let (sxx, sxy, syy) = (self.cross[num][num] / n, self.cross[num][den] / n, self.cross[den][den] / n);
        // variance of x - r y, whose mean is zero by construction
        let var = (sxx - 2.0 * r * sxy + r * r * syy).max(0.0);
        RatioEstimate { ratio: r, half_width_95: 1.96 * (var / n).sqrt() / my }
    }
}

/// Runs `n` slots and averages the downlink and secrecy rates of every
/// scheduler. Output depends only on `(scn, c_l, n, seed)`.
pub fn simulate_schedulers(scn: &MultiuserScenario, c_l: RateBps, n: u64, seed: u64) -> Result<ScheduleSummary> {
    if n == 0 {
        return Err(Error::NoSamples);
    }
    let ranges: Vec<_> = chunks(n).collect();
    let partial: Vec<Moments> = ranges
        .into_par_iter()
        .map(|range| {
            let mut m = Moments::new();
            for i in range {
                m.push(&schedule_slot(scn, c_l, seed, i));
            }
            m
        })
        .collect();
    let total = partial.iter().fold(Moments::new(), Moments::merge);
    let nf = n as f64;
    let mean = |i: usize| total.sum[i] / nf;
    let report = |scheduler, method, rc: usize, ras: usize| ScheduleReport {
        scheduler,
        method,
        mean_r_c: mean(rc),
        mean_r_as: mean(ras),
        n_samples: n,
        seed,
    };
    use BackhaulMethod::*;
    use SchedulerKind::*;
    Ok(ScheduleSummary {
        c_l,
        n_samples: n,
        seed,
        reports: vec![
            report(MaxRc, WynerZiv, 0, 3),
            report(MaxRc, Superposition, 0, 4),
            report(MaxSecWz, WynerZiv, 1, 5),
            report(MaxSecSup, Superposition, 2, 6),
        ],
        r_c_ratio_wz: total.ratio(1, 0, nf),
        r_c_ratio_sup: total.ratio(2, 0, nf),
        r_as_ratio_wz: total.ratio(5, 3, nf),
        r_as_ratio_sup: total.ratio(6, 4, nf),
        sec_selections_agree: total.agree,
    })
}
