//! Secrecy outage over Rayleigh block fading.
//!
//! Every link except the line-of-sight inter-BS link has an exponentially
//! distributed SNR. The eavesdropper's channels are unknown to the
//! transmitters, so a target secrecy rate is met only on some realizations;
//! the downlink rate follows the instantaneous downlink capacity.
//!
//! Realization `i` of a run with seed `s` always draws from its own ChaCha
//! stream `(s, i)`, so estimates do not depend on the number of threads and
//! every strategy sees the same channels.

use rand::{Rng, RngExt};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rate_core::{capacity, ChannelGains, RateBps, SnrLinear};
use crate::strategies::{secrecy_rate, StrategyKind};
use crate::substream::{chunks, realization_rng};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FadingAverages {
    pub mean_ab: SnrLinear,
    pub mean_ae: SnrLinear,
    pub mean_ce: SnrLinear,
    pub mean_cd: SnrLinear,
    /// Unfaded inter-BS link.
    pub gamma_cb_const: SnrLinear,
}

impl FadingAverages {
    pub fn new(mean_ab: f64, mean_ae: f64, mean_ce: f64, mean_cd: f64, gamma_cb_const: f64) -> Result<Self> {
        let mean = |v: f64| {
            let s = SnrLinear::new(v)?;
            if v > 0.0 {
                Ok(s)
            } else {
                Err(Error::NotPositive { what: "mean SNR", value: v })
            }
        };
        Ok(FadingAverages {
            mean_ab: mean(mean_ab)?,
            mean_ae: mean(mean_ae)?,
            mean_ce: mean(mean_ce)?,
            mean_cd: mean(mean_cd)?,
            gamma_cb_const: SnrLinear::new(gamma_cb_const)?,
        })
    }

    /// Same, with every argument in dB.
    pub fn from_db(mean_ab: f64, mean_ae: f64, mean_ce: f64, mean_cd: f64, gamma_cb: f64) -> Result<Self> {
        let lin = |db| SnrLinear::from_db(db).map(SnrLinear::get);
        Self::new(lin(mean_ab)?, lin(mean_ae)?, lin(mean_ce)?, lin(mean_cd)?, lin(gamma_cb)?)
    }
}

/// Inverse CDF of the exponential distribution.
pub fn exponential_quantile(mean: SnrLinear, u: f64) -> SnrLinear {
    debug_assert!((0.0..1.0).contains(&u));
    SnrLinear::raw(-mean.get() * (-u).ln_1p())
}

pub(crate) fn draw_exp<R: Rng + ?Sized>(mean: SnrLinear, rng: &mut R) -> SnrLinear {
    exponential_quantile(mean, rng.random::<f64>())
}

/// Draws one channel realization; `gamma_cb` is copied from the constant.
pub fn sample_realization<R: Rng + ?Sized>(avg: &FadingAverages, rng: &mut R) -> ChannelGains {
    let gamma_ab = draw_exp(avg.mean_ab, rng);
    let gamma_ae = draw_exp(avg.mean_ae, rng);
    let gamma_ce = draw_exp(avg.mean_ce, rng);
    let gamma_cd = draw_exp(avg.mean_cd, rng);
    ChannelGains { gamma_ab, gamma_cb: avg.gamma_cb_const, gamma_ae, gamma_ce, gamma_cd }
}

/// Realization `index` of the run seeded with `seed`.
pub fn realization(avg: &FadingAverages, seed: u64, index: u64) -> ChannelGains {
    sample_realization(avg, &mut realization_rng(seed, index))
}

/// Secrecy rate on one realization, with the downlink at its capacity.
pub fn realized_secrecy(kind: StrategyKind, gains: &ChannelGains, c_l: RateBps) -> RateBps {
    secrecy_rate(kind, gains, capacity(gains.gamma_cd), c_l).r_as
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OutageEstimate {
    pub strategy: StrategyKind,
    pub target: RateBps,
    pub c_l: RateBps,
    pub outages: u64,
    pub p_out: f64,
    /// Normal-approximation 95% half-width of the binomial proportion.
    pub half_width_95: f64,
    pub n_samples: u64,
    pub seed: u64,
}

impl OutageEstimate {
    fn from_count(strategy: StrategyKind, target: RateBps, c_l: RateBps, outages: u64, n: u64, seed: u64) -> Self {
        let p = outages as f64 / n as f64;
        OutageEstimate {
            strategy,
            target,
            c_l,
            outages,
            p_out: p,
            half_width_95: 1.96 * (p * (1.0 - p) / n as f64).sqrt(),
            n_samples: n,
            seed,
        }
    }
}

/// Fraction of realizations on which `kind` falls short of `target`
/// (strictly below it).
pub fn outage_probability(
    kind: StrategyKind,
    target: RateBps,
    avg: &FadingAverages,
    c_l: RateBps,
    n: u64,
    seed: u64,
) -> Result<OutageEstimate> {
    Ok(outage_probabilities(&[kind], target, avg, c_l, n, seed)?[0])
}

/// [`outage_probability`] for several strategies over one set of realizations.
pub fn outage_probabilities(
    kinds: &[StrategyKind],
    target: RateBps,
    avg: &FadingAverages,
    c_l: RateBps,
    n: u64,
    seed: u64,
) -> Result<Vec<OutageEstimate>> {
    if n == 0 {
        return Err(Error::NoSamples);
    }
    let chunks: Vec<_> = chunks(n).collect();
    let counts = chunks
        .into_par_iter()
        .map(|range| {
            let mut counts = vec![0u64; kinds.len()];
            for i in range {
                let gains = realization(avg, seed, i);
                for (slot, &kind) in counts.iter_mut().zip(kinds) {
                    if realized_secrecy(kind, &gains, c_l) < target {
                        *slot += 1;
                    }
                }
            }
            counts
        })
        .reduce(
            || vec![0u64; kinds.len()],
            |mut acc, c| {
                acc.iter_mut().zip(c).for_each(|(a, b)| *a += b);
                acc
            },
        );
    Ok(kinds
        .iter()
        .zip(counts)
        .map(|(&k, c)| OutageEstimate::from_count(k, target, c_l, c, n, seed))
        .collect())
}
