//! Closed-form achievable secrecy rates for each cooperation strategy.
//!
//! Every strategy has the same shape: the uplink rate the legitimate base
//! station can decode (`s_ab`) minus the rate the eavesdropper can decode
//! (`s_ae`), clipped at zero. The strategies differ only in how much of the
//! interfering downlink signal the receiving base station can remove with
//! the help of the backhaul; the eavesdropper term is common to all of them.
//!
//! When the downlink rate fits on the backhaul (`r_c <= c_l`) the whole
//! downlink message is forwarded and every backhaul strategy collapses to
//! [`full_transfer_secrecy`].

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rate_core::{cap, mac_residual_branch, positive_part, ChannelGains, RateBps, SnrLinear};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StrategyKind {
    /// No backhaul: the downlink acts as plain noise forwarding.
    NoBackbone,
    /// Whole downlink message forwarded over the backhaul, whatever `c_l` is.
    FullTransfer,
    /// Rate-`c_l` quantization of the downlink codeword.
    ElemQuant,
    /// Quantization using the received signal as decoder side information.
    WynerZiv,
    /// Two-layer superposition code with one layer sent over the backhaul.
    Superposition,
    /// Reference: interferer sends Gaussian noise known at the receiver.
    NoiseJamBound,
    /// Reference: interfering base station silent.
    NoDownlink,
}

impl StrategyKind {
    pub const ALL: [StrategyKind; 7] = [
        StrategyKind::NoBackbone,
        StrategyKind::FullTransfer,
        StrategyKind::ElemQuant,
        StrategyKind::WynerZiv,
        StrategyKind::Superposition,
        StrategyKind::NoiseJamBound,
        StrategyKind::NoDownlink,
    ];

    pub fn name(self) -> &'static str {
        match self {
            StrategyKind::NoBackbone => "no-backbone",
            StrategyKind::FullTransfer => "full-transfer",
            StrategyKind::ElemQuant => "elem-quant",
            StrategyKind::WynerZiv => "wyner-ziv",
            StrategyKind::Superposition => "superposition",
            StrategyKind::NoiseJamBound => "noise-jam-bound",
            StrategyKind::NoDownlink => "no-downlink",
        }
    }

    /// Short column label.
    pub fn short(self) -> &'static str {
        match self {
            StrategyKind::NoBackbone => "NF",
            StrategyKind::FullTransfer => "FT",
            StrategyKind::ElemQuant => "EQ",
            StrategyKind::WynerZiv => "WZ",
            StrategyKind::Superposition => "SUP",
            StrategyKind::NoiseJamBound => "NJB",
            StrategyKind::NoDownlink => "ND",
        }
    }

    /// Whether the strategy uses the backhaul and falls back to full
    /// transfer when the downlink rate fits on it.
    pub fn uses_backhaul(self) -> bool {
        matches!(self, StrategyKind::ElemQuant | StrategyKind::WynerZiv | StrategyKind::Superposition)
    }
}

impl fmt::Display for StrategyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for StrategyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.trim().to_ascii_lowercase();
        StrategyKind::ALL
            .into_iter()
            .find(|k| k.name() == lower || k.short().eq_ignore_ascii_case(&lower))
            .ok_or_else(|| Error::UnknownName { what: "strategy", name: s.to_string() })
    }
}

/// Which superposition layer is forwarded over the backhaul.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SupVariant {
    /// The layer the downlink user decodes first.
    SendWc1,
    /// The layer the downlink user decodes last.
    SendWc2,
}

/// What a superposition evaluation ended up doing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SplitChoice {
    SendWc1,
    SendWc2,
    FullTransfer,
}

impl From<SupVariant> for SplitChoice {
    fn from(v: SupVariant) -> Self {
        match v {
            SupVariant::SendWc1 => SplitChoice::SendWc1,
            SupVariant::SendWc2 => SplitChoice::SendWc2,
        }
    }
}

/// Power fractions of the first-decoded layer for the two ways of filling
/// the backhaul: `alpha1` when that layer is forwarded, `alpha2` when the
/// last-decoded layer is.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AlphaChoice {
    pub alpha1: f64,
    pub alpha2: f64,
}

impl AlphaChoice {
    /// Power of the downlink signal left at the receiver after cancelling
    /// the forwarded layer, as a fraction of the full downlink power.
    pub fn residual_fraction(&self, variant: SupVariant) -> f64 {
        match variant {
            SupVariant::SendWc2 => self.alpha2,
            SupVariant::SendWc1 => 1.0 - self.alpha1,
        }
    }
}

/// Piece of a piecewise rate expression that was active.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Piece {
    /// Interference known in full through the backhaul.
    FullTransfer,
    /// Interference decoded and cancelled at no cost to the wanted user.
    Cancel,
    /// Joint decoding, limited by the sum rate.
    Joint,
    /// Interference treated as noise.
    TreatAsNoise,
    /// Interferer absent or replaced by a fixed model.
    Reference,
}

impl Piece {
    fn from_index(i: u8) -> Piece {
        match i {
            1 => Piece::Cancel,
            2 => Piece::Joint,
            _ => Piece::TreatAsNoise,
        }
    }

    fn name(self) -> &'static str {
        match self {
            Piece::FullTransfer => "full-transfer",
            Piece::Cancel => "cancel",
            Piece::Joint => "joint",
            Piece::TreatAsNoise => "noise",
            Piece::Reference => "reference",
        }
    }
}

/// Active pieces of the legitimate and eavesdropper rate expressions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BranchLabel {
    pub s_ab: Piece,
    pub s_ae: Piece,
}

impl fmt::Display for BranchLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ab={},ae={}", self.s_ab.name(), self.s_ae.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SecrecyEvaluation {
    pub strategy: StrategyKind,
    pub r_c: RateBps,
    pub c_l: RateBps,
    pub s_ab: RateBps,
    pub s_ae: RateBps,
    pub r_as: RateBps,
    /// Equivalent quantization SNR; quantization strategies only.
    pub gamma_q: Option<SnrLinear>,
    /// Power split; superposition only, absent after a full-transfer fallback.
    pub alpha: Option<AlphaChoice>,
    /// Superposition only.
    pub split: Option<SplitChoice>,
    pub branch: BranchLabel,
}

impl SecrecyEvaluation {
    #[allow(clippy::too_many_arguments)]
    fn assemble(
        strategy: StrategyKind,
        r_c: RateBps,
        c_l: RateBps,
        s_ab: f64,
        s_ae: f64,
        s_ab_piece: Piece,
        s_ae_piece: Piece,
    ) -> Self {
        SecrecyEvaluation {
            strategy,
            r_c,
            c_l,
            s_ab: RateBps::raw(s_ab),
            s_ae: RateBps::raw(s_ae),
            r_as: RateBps::raw(positive_part(s_ab - s_ae)),
            gamma_q: None,
            alpha: None,
            split: None,
            branch: BranchLabel { s_ab: s_ab_piece, s_ae: s_ae_piece },
        }
    }
}

/// Rate the eavesdropper can decode from the uplink user while the
/// interfering base station transmits at `r_c`. Shared by every strategy.
pub fn s_ae(gains: &ChannelGains, r_c: RateBps) -> RateBps {
    RateBps::raw(s_ae_branch(gains, r_c).0)
}

fn s_ae_branch(gains: &ChannelGains, r_c: RateBps) -> (f64, Piece) {
    let (v, i) = mac_residual_branch(gains.gamma_ae.get(), gains.gamma_ce.get(), r_c.get());
    (v, Piece::from_index(i))
}

/// Noise forwarding without a backhaul.
pub fn nf_secrecy(gains: &ChannelGains, r_c: RateBps) -> SecrecyEvaluation {
    let (ab, i) = mac_residual_branch(gains.gamma_ab.get(), gains.gamma_cb.get(), r_c.get());
    let (ae, ae_piece) = s_ae_branch(gains, r_c);
    SecrecyEvaluation::assemble(
        StrategyKind::NoBackbone,
        r_c,
        RateBps::ZERO,
        ab,
        ae,
        Piece::from_index(i),
        ae_piece,
    )
}

/// Whole downlink message known at the receiving base station, so the
/// uplink sees an interference-free link. `c_l` is recorded as `r_c`, the
/// smallest backhaul that supports it.
pub fn full_transfer_secrecy(gains: &ChannelGains, r_c: RateBps) -> SecrecyEvaluation {
    full_transfer_as(StrategyKind::FullTransfer, gains, r_c, r_c)
}

fn full_transfer_as(kind: StrategyKind, gains: &ChannelGains, r_c: RateBps, c_l: RateBps) -> SecrecyEvaluation {
    let (ae, ae_piece) = s_ae_branch(gains, r_c);
    let ab = cap(gains.gamma_ab.get());
    let mut eval = SecrecyEvaluation::assemble(kind, r_c, c_l, ab, ae, Piece::FullTransfer, ae_piece);
    if kind == StrategyKind::Superposition {
        eval.split = Some(SplitChoice::FullTransfer);
    }
    eval
}

fn exp2_m1(x: f64) -> f64 {
    (x * std::f64::consts::LN_2).exp_m1()
}

/// Equivalent SNR of a rate-`c_l` quantizer that ignores side information.
pub fn gamma_q_eq(c_l: RateBps) -> SnrLinear {
    SnrLinear::raw(exp2_m1(c_l.get()).min(f64::MAX))
}

/// Equivalent SNR of a rate-`c_l` quantizer that exploits the receiver's
/// own observation of the downlink signal.
pub fn gamma_q_wz(c_l: RateBps, gamma_ab: SnrLinear, gamma_cb: SnrLinear) -> SnrLinear {
    let boost = 1.0 + gamma_cb.get() / (1.0 + gamma_ab.get());
    SnrLinear::raw((exp2_m1(c_l.get()) * boost).min(f64::MAX))
}

/// Largest uplink rate at the receiving base station when it also holds a
/// quantized copy of the downlink signal with equivalent SNR `gamma_q`.
///
/// With `gamma_q = 0` this is exactly [`crate::mac_residual_rate`].
pub fn s_ab_quant(gamma_ab: SnrLinear, gamma_cb: SnrLinear, gamma_q: SnrLinear, r_c: RateBps) -> RateBps {
    RateBps::raw(s_ab_quant_branch(gamma_ab.get(), gamma_cb.get(), gamma_q.get(), r_c.get()).0)
}

fn s_ab_quant_branch(a: f64, b: f64, q: f64, r: f64) -> (f64, Piece) {
    if r <= cap(b / (1.0 + a) + q) {
        (cap(a), Piece::Cancel)
    } else if r <= cap(b + q) {
        // log2((1+a)(1+q) + b), arranged so that q = 0 reproduces cap(a + b)
        (cap(a + b + q * (1.0 + a)) - r, Piece::Joint)
    } else {
        // equals the sum rate minus cap(b + q)
        (cap(a / (1.0 + b / (1.0 + q))), Piece::TreatAsNoise)
    }
}

pub fn eq_secrecy(gains: &ChannelGains, r_c: RateBps, c_l: RateBps) -> SecrecyEvaluation {
    quant_secrecy(StrategyKind::ElemQuant, gamma_q_eq(c_l), gains, r_c, c_l)
}

pub fn wz_secrecy(gains: &ChannelGains, r_c: RateBps, c_l: RateBps) -> SecrecyEvaluation {
    let q = gamma_q_wz(c_l, gains.gamma_ab, gains.gamma_cb);
    quant_secrecy(StrategyKind::WynerZiv, q, gains, r_c, c_l)
}

fn quant_secrecy(
    kind: StrategyKind,
    gamma_q: SnrLinear,
    gains: &ChannelGains,
    r_c: RateBps,
    c_l: RateBps,
) -> SecrecyEvaluation {
    if r_c <= c_l {
        return full_transfer_as(kind, gains, r_c, c_l);
    }
    let (ab, piece) = s_ab_quant_branch(gains.gamma_ab.get(), gains.gamma_cb.get(), gamma_q.get(), r_c.get());
    let (ae, ae_piece) = s_ae_branch(gains, r_c);
    let mut eval = SecrecyEvaluation::assemble(kind, r_c, c_l, ab, ae, piece, ae_piece);
    eval.gamma_q = Some(gamma_q);
    eval
}

/// Power split that puts exactly `c_l` bits of a rate-`cap(gamma_cd)`
/// downlink code on the backhaul, for either choice of forwarded layer.
///
/// Fails when the downlink rate is below `c_l`; the whole message then fits
/// on the backhaul and no split is needed.
pub fn sup_alphas(c_l: RateBps, gamma_cd: SnrLinear) -> Result<AlphaChoice> {
    alphas(c_l.get(), gamma_cd.get())
}

fn alphas(c_l: f64, gamma_cd: f64) -> Result<AlphaChoice> {
    let needed = exp2_m1(c_l);
    if gamma_cd < needed {
        return Err(Error::FullTransferApplies { c_l, gamma_cd });
    }
    if gamma_cd == 0.0 {
        // nothing to split
        return Ok(AlphaChoice { alpha1: 0.0, alpha2: 1.0 });
    }
    let alpha2 = 1.0 - needed / gamma_cd;
    // (1 - 2^{-c_l}) / (1 - 1/(1 + gamma_cd))
    let alpha1 = -exp2_m1(-c_l) * (1.0 + 1.0 / gamma_cd);
    Ok(AlphaChoice { alpha1: alpha1.clamp(0.0, 1.0), alpha2: alpha2.clamp(0.0, 1.0) })
}

/// Uplink rate at the receiving base station after it cancels the layer it
/// received over the backhaul; the other layer, carrying `r_c - c_l` bits,
/// is either decoded jointly or treated as noise.
pub fn s_ab_sup(
    variant: SupVariant,
    gamma_ab: SnrLinear,
    gamma_cb: SnrLinear,
    alpha: &AlphaChoice,
    r_c: RateBps,
    c_l: RateBps,
) -> RateBps {
    let residual = alpha.residual_fraction(variant) * gamma_cb.get();
    RateBps::raw(sup_layer_branch(gamma_ab.get(), residual, r_c.get() - c_l.get()).0)
}

fn sup_layer_branch(a: f64, residual: f64, excess: f64) -> (f64, Piece) {
    if excess < cap(residual) {
        let joint = cap(a + residual) - excess;
        let single = cap(a);
        if joint < single {
            (joint, Piece::Joint)
        } else {
            (single, Piece::Cancel)
        }
    } else {
        (cap(a / (1.0 + residual)), Piece::TreatAsNoise)
    }
}

/// Superposition strategy with the better of the two forwarded layers.
///
/// The downlink SNR is taken as `2^r_c - 1`, so `r_c` can be swept freely;
/// under fading `r_c = cap(gamma_cd)` and the two agree.
pub fn sup_secrecy(gains: &ChannelGains, r_c: RateBps, c_l: RateBps) -> SecrecyEvaluation {
    if r_c <= c_l {
        return full_transfer_as(StrategyKind::Superposition, gains, r_c, c_l);
    }
    let gamma_cd = exp2_m1(r_c.get());
    let alpha = alphas(c_l.get(), gamma_cd).expect("r_c > c_l implies a valid split");
    let a = gains.gamma_ab.get();
    let b = gains.gamma_cb.get();
    let excess = r_c.get() - c_l.get();
    let last = sup_layer_branch(a, alpha.residual_fraction(SupVariant::SendWc2) * b, excess);
    let first = sup_layer_branch(a, alpha.residual_fraction(SupVariant::SendWc1) * b, excess);
    let (best, split) = if last.0 >= first.0 {
        (last, SplitChoice::SendWc2)
    } else {
        (first, SplitChoice::SendWc1)
    };
    let (ae, ae_piece) = s_ae_branch(gains, r_c);
    let mut eval = SecrecyEvaluation::assemble(StrategyKind::Superposition, r_c, c_l, best.0, ae, best.1, ae_piece);
    eval.alpha = Some(alpha);
    eval.split = Some(split);
    eval
}

/// Evaluates `kind` at downlink rate `r_c` and backhaul capacity `c_l`.
///
/// Reference strategies ignore the arguments that do not apply to them:
/// `NoBackbone` ignores `c_l`, `FullTransfer` assumes the backhaul is large
/// enough, `NoiseJamBound` and `NoDownlink` ignore both.
pub fn secrecy_rate(kind: StrategyKind, gains: &ChannelGains, r_c: RateBps, c_l: RateBps) -> SecrecyEvaluation {
    match kind {
        StrategyKind::NoBackbone => nf_secrecy(gains, r_c),
        StrategyKind::FullTransfer => full_transfer_as(kind, gains, r_c, c_l),
        StrategyKind::ElemQuant => eq_secrecy(gains, r_c, c_l),
        StrategyKind::WynerZiv => wz_secrecy(gains, r_c, c_l),
        StrategyKind::Superposition => sup_secrecy(gains, r_c, c_l),
        StrategyKind::NoiseJamBound => {
            let ae = cap(gains.gamma_ae.get() / (1.0 + gains.gamma_ce.get()));
            SecrecyEvaluation::assemble(
                kind,
                r_c,
                c_l,
                cap(gains.gamma_ab.get()),
                ae,
                Piece::FullTransfer,
                Piece::Reference,
            )
        }
        StrategyKind::NoDownlink => SecrecyEvaluation::assemble(
            kind,
            r_c,
            c_l,
            cap(gains.gamma_ab.get()),
            cap(gains.gamma_ae.get()),
            Piece::Reference,
            Piece::Reference,
        ),
    }
}
