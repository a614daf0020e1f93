//! Independent evaluation of the uplink rates through Gaussian mutual
//! informations computed as log-determinant ratios of output covariances.
//!
//! The receiving base station observes two outputs: its wireless signal
//! `y_w = sqrt(g_ab) x_a + sqrt(g_cb) x_c + n` with unit noise, and (when a
//! quantizer is present) the backhaul copy `y_q = x_c + q` with noise power
//! `sigma_q^2 = 1 / gamma_q`. Both inputs have unit power. Nothing here uses
//! the closed forms in [`crate::strategies`]; the two paths only meet in
//! [`equivalence_sweep`].

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rate_core::{RateBps, SnrLinear};
use crate::strategies::{self, AlphaChoice, SupVariant};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VectorChannelSpec {
    gamma_ab: f64,
    gamma_cb: f64,
    /// Noise power on the quantized output; `None` when there is none.
    quant_noise: Option<f64>,
}

impl VectorChannelSpec {
    /// Wireless output plus a quantized copy of the downlink signal at
    /// equivalent SNR `gamma_q`. `gamma_q = 0` drops the quantized output.
    pub fn new(gamma_ab: SnrLinear, gamma_cb: SnrLinear, gamma_q: SnrLinear) -> Self {
        let quant_noise = (gamma_q.get() > 0.0).then(|| 1.0 / gamma_q.get());
        VectorChannelSpec { gamma_ab: gamma_ab.get(), gamma_cb: gamma_cb.get(), quant_noise }
    }

    pub fn wireless_only(gamma_ab: SnrLinear, gamma_cb: SnrLinear) -> Self {
        VectorChannelSpec { gamma_ab: gamma_ab.get(), gamma_cb: gamma_cb.get(), quant_noise: None }
    }

    pub fn with_quant_noise(gamma_ab: SnrLinear, gamma_cb: SnrLinear, sigma_q2: f64) -> Result<Self> {
        if !sigma_q2.is_finite() {
            return Err(Error::NotFinite { what: "quantization noise power", value: sigma_q2 });
        }
        if sigma_q2 <= 0.0 {
            return Err(Error::NotPositive { what: "quantization noise power", value: sigma_q2 });
        }
        Ok(VectorChannelSpec { gamma_ab: gamma_ab.get(), gamma_cb: gamma_cb.get(), quant_noise: Some(sigma_q2) })
    }

    /// Determinant of the output covariance with the selected inputs random
    /// and the others known (hence removed).
    fn output_det(&self, with_a: bool, with_c: bool) -> f64 {
        let a = if with_a { self.gamma_ab } else { 0.0 };
        let c = if with_c { 1.0 } else { 0.0 };
        let ww = 1.0 + a + c * self.gamma_cb;
        match self.quant_noise {
            None => ww,
            Some(s2) => {
                let wq = c * self.gamma_cb.sqrt();
                let qq = s2 + c;
                ww * qq - wq * wq
            }
        }
    }
}

/// Which mutual information to evaluate. `A` is the uplink input, `C` the
/// interfering downlink input, `Y` every output available at the receiver.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MiTerm {
    /// `I(A, C; Y)`
    Joint,
    /// `I(A; Y | C)`
    UplinkGivenDownlink,
    /// `I(C; Y | A)`
    DownlinkGivenUplink,
    /// `I(A; Y)`, downlink treated as noise.
    UplinkOnly,
    /// `I(C; Y)`, uplink treated as noise.
    DownlinkOnly,
}

pub fn gaussian_mi(spec: &VectorChannelSpec, term: MiTerm) -> Result<RateBps> {
    let (num, den) = match term {
        MiTerm::Joint => ((true, true), (false, false)),
        MiTerm::UplinkGivenDownlink => ((true, false), (false, false)),
        MiTerm::DownlinkGivenUplink => ((false, true), (false, false)),
        MiTerm::UplinkOnly => ((true, true), (false, true)),
        MiTerm::DownlinkOnly => ((true, true), (true, false)),
    };
    let num = spec.output_det(num.0, num.1);
    let den = spec.output_det(den.0, den.1);
    if !(num > 0.0 && den > 0.0) || !num.is_finite() || !den.is_finite() {
        return Err(Error::SingularCovariance);
    }
    // information is non-negative; clip rounding residue
    Ok(RateBps::raw((num / den).log2().max(0.0)))
}

/// Best uplink rate against an interferer carrying `r_int` bits: either the
/// interferer is decoded jointly (when its rate is inside the region) or it
/// is treated as noise.
fn best_uplink(spec: &VectorChannelSpec, r_int: f64) -> Result<f64> {
    let noise = gaussian_mi(spec, MiTerm::UplinkOnly)?.get();
    if r_int <= gaussian_mi(spec, MiTerm::DownlinkGivenUplink)?.get() {
        let single = gaussian_mi(spec, MiTerm::UplinkGivenDownlink)?.get();
        let sum = gaussian_mi(spec, MiTerm::Joint)?.get();
        Ok(noise.max(single.min(sum - r_int)))
    } else {
        Ok(noise)
    }
}

/// Largest uplink rate with a quantized downlink copy at SNR `gamma_q`.
pub fn oracle_s_ab_quant(gamma_ab: SnrLinear, gamma_cb: SnrLinear, gamma_q: SnrLinear, r_c: RateBps) -> Result<RateBps> {
    let spec = VectorChannelSpec::new(gamma_ab, gamma_cb, gamma_q);
    best_uplink(&spec, r_c.get()).map(RateBps::raw)
}

/// Largest uplink rate after cancelling the superposition layer received
/// over the backhaul; the remaining layer carries `r_c - c_l` bits.
pub fn oracle_s_ab_sup(
    variant: SupVariant,
    gamma_ab: SnrLinear,
    gamma_cb: SnrLinear,
    alpha: &AlphaChoice,
    r_c: RateBps,
    c_l: RateBps,
) -> Result<RateBps> {
    let residual = SnrLinear::new(alpha.residual_fraction(variant) * gamma_cb.get())?;
    let spec = VectorChannelSpec::wireless_only(gamma_ab, residual);
    let excess = (r_c.get() - c_l.get()).max(0.0);
    best_uplink(&spec, excess).map(RateBps::raw)
}

/// `I(X_C; Y_q | Y_w)` for the side-information quantizer sized for `c_l`
/// bits. Equals `c_l` when the quantizer SNR is right.
pub fn wz_rate_identity(c_l: RateBps, gamma_ab: SnrLinear, gamma_cb: SnrLinear) -> Result<RateBps> {
    let gamma_q = strategies::gamma_q_wz(c_l, gamma_ab, gamma_cb);
    let both = gaussian_mi(&VectorChannelSpec::new(gamma_ab, gamma_cb, gamma_q), MiTerm::DownlinkOnly)?;
    let wireless = gaussian_mi(&VectorChannelSpec::wireless_only(gamma_ab, gamma_cb), MiTerm::DownlinkOnly)?;
    Ok(RateBps::raw((both.get() - wireless.get()).max(0.0)))
}

/// Largest absolute gap between closed form and oracle over a random grid.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct EquivalenceReport {
    pub tuples: u64,
    pub seed: u64,
    pub elem_quant: f64,
    pub wyner_ziv: f64,
    pub sup_send_wc1: f64,
    pub sup_send_wc2: f64,
    /// Tuples where the downlink rate fit on the backhaul, checked against
    /// the interference-free rate instead of the two split variants.
    pub sup_full_transfer: f64,
    pub wz_loop: f64,
}

impl EquivalenceReport {
    pub fn max_deviation(&self) -> f64 {
        [
            self.elem_quant,
            self.wyner_ziv,
            self.sup_send_wc1,
            self.sup_send_wc2,
            self.sup_full_transfer,
            self.wz_loop,
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }
}

/// Compares every closed-form uplink rate with its oracle on `tuples`
/// random draws: SNRs log-uniform in [-10, 30] dB, `c_l` in [0, 6],
/// `r_c` in [0, 10].
pub fn equivalence_sweep(tuples: u64, seed: u64) -> Result<EquivalenceReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rep = EquivalenceReport { tuples, seed, ..Default::default() };
    let db = |rng: &mut ChaCha8Rng| SnrLinear::from_db(rng.random_range(-10.0..=30.0));
    for _ in 0..tuples {
        let gab = db(&mut rng)?;
        let gcb = db(&mut rng)?;
        let c_l = RateBps::new(rng.random_range(0.0..=6.0))?;
        let r_c = RateBps::new(rng.random_range(0.0..=10.0))?;

        let q = strategies::gamma_q_eq(c_l);
        let dev = (strategies::s_ab_quant(gab, gcb, q, r_c).get() - oracle_s_ab_quant(gab, gcb, q, r_c)?.get()).abs();
        rep.elem_quant = rep.elem_quant.max(dev);

        let q = strategies::gamma_q_wz(c_l, gab, gcb);
        let dev = (strategies::s_ab_quant(gab, gcb, q, r_c).get() - oracle_s_ab_quant(gab, gcb, q, r_c)?.get()).abs();
        rep.wyner_ziv = rep.wyner_ziv.max(dev);

        if r_c > c_l {
            let gamma_cd = SnrLinear::new(r_c.get().exp2() - 1.0)?;
            let alpha = strategies::sup_alphas(c_l, gamma_cd)?;
            for (variant, slot) in [
                (SupVariant::SendWc1, &mut rep.sup_send_wc1),
                (SupVariant::SendWc2, &mut rep.sup_send_wc2),
            ] {
                let closed = strategies::s_ab_sup(variant, gab, gcb, &alpha, r_c, c_l).get();
                let oracle = oracle_s_ab_sup(variant, gab, gcb, &alpha, r_c, c_l)?.get();
                *slot = slot.max((closed - oracle).abs());
            }
        } else {
            let gains = crate::ChannelGains { gamma_ab: gab, gamma_cb: gcb, ..Default::default() };
            let closed = strategies::sup_secrecy(&gains, r_c, c_l).s_ab.get();
            let spec = VectorChannelSpec::wireless_only(gab, gcb);
            let oracle = gaussian_mi(&spec, MiTerm::UplinkGivenDownlink)?.get();
            rep.sup_full_transfer = rep.sup_full_transfer.max((closed - oracle).abs());
        }

        let dev = (wz_rate_identity(c_l, gab, gcb)?.get() - c_l.get()).abs();
        rep.wz_loop = rep.wz_loop.max(dev);
    }
    Ok(rep)
}
