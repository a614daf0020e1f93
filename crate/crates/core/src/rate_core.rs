//! Closed-form rate primitives shared by every strategy.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Linear received SNR (power ratio), always finite and non-negative.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SnrLinear(f64);

impl SnrLinear {
    pub const ZERO: SnrLinear = SnrLinear(0.0);

    pub fn new(value: f64) -> Result<Self> {
        check_non_negative("SNR", value).map(SnrLinear)
    }

    pub fn from_db(db: f64) -> Result<Self> {
        db_to_linear(db)
    }

    pub fn get(self) -> f64 {
        self.0
    }

    pub(crate) fn raw(value: f64) -> Self {
        debug_assert!(value.is_finite() && value >= 0.0, "bad SNR {value}");
        SnrLinear(value)
    }
}

/// Rate in bits per channel use.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RateBps(f64);

impl RateBps {
    pub const ZERO: RateBps = RateBps(0.0);

    pub fn new(value: f64) -> Result<Self> {
        check_non_negative("rate", value).map(RateBps)
    }

    pub fn get(self) -> f64 {
        self.0
    }

    pub(crate) fn raw(value: f64) -> Self {
        debug_assert!(value.is_finite() && value >= 0.0, "bad rate {value}");
        RateBps(value)
    }
}

fn check_non_negative(what: &'static str, value: f64) -> Result<f64> {
    if !value.is_finite() {
        Err(Error::NotFinite { what, value })
    } else if value < 0.0 {
        Err(Error::Negative { what, value })
    } else {
        // normalise -0.0
        Ok(value + 0.0)
    }
}

/// One realization of every link SNR in the two-cell system.
///
/// `gamma_ab`/`gamma_cb` are the uplink user and the interfering base station
/// as seen by the receiving base station; `gamma_ae`/`gamma_ce` the same two
/// transmitters as seen by the eavesdropper; `gamma_cd` is the downlink.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct ChannelGains {
    pub gamma_ab: SnrLinear,
    pub gamma_cb: SnrLinear,
    pub gamma_ae: SnrLinear,
    pub gamma_ce: SnrLinear,
    pub gamma_cd: SnrLinear,
}

impl ChannelGains {
    /// Builds gains from raw linear values, validating each one.
    pub fn new(gamma_ab: f64, gamma_cb: f64, gamma_ae: f64, gamma_ce: f64, gamma_cd: f64) -> Result<Self> {
        Ok(ChannelGains {
            gamma_ab: SnrLinear::new(gamma_ab)?,
            gamma_cb: SnrLinear::new(gamma_cb)?,
            gamma_ae: SnrLinear::new(gamma_ae)?,
            gamma_ce: SnrLinear::new(gamma_ce)?,
            gamma_cd: SnrLinear::new(gamma_cd)?,
        })
    }
}

/// Gaussian single-link capacity `log2(1 + gamma)`.
pub fn capacity(gamma: SnrLinear) -> RateBps {
    RateBps::raw(cap(gamma.0))
}

#[inline]
pub(crate) fn cap(gamma: f64) -> f64 {
    (1.0 + gamma).log2()
}

/// Largest rate user 1 can get through to a receiver that also hears user 2
/// transmitting at `r_u2`.
///
/// User 2 is decoded and cancelled when its rate allows it and treated as
/// noise otherwise. `r_u2` may lie outside the MAC capacity region.
pub fn mac_residual_rate(gamma_u1v: SnrLinear, gamma_u2v: SnrLinear, r_u2: RateBps) -> RateBps {
    RateBps::raw(mac_residual(gamma_u1v.0, gamma_u2v.0, r_u2.0))
}

pub(crate) fn mac_residual(g1: f64, g2: f64, r2: f64) -> f64 {
    mac_residual_branch(g1, g2, r2).0
}

/// Value plus index (1, 2 or 3) of the active piece.
pub(crate) fn mac_residual_branch(g1: f64, g2: f64, r2: f64) -> (f64, u8) {
    if r2 <= cap(g2 / (1.0 + g1)) {
        (cap(g1), 1)
    } else if r2 <= cap(g2) {
        (cap(g1 + g2) - r2, 2)
    } else {
        (cap(g1 / (1.0 + g2)), 3)
    }
}

/// `max(x, 0)`.
pub fn positive_part(x: f64) -> f64 {
    if x > 0.0 {
        x
    } else {
        0.0
    }
}

pub fn db_to_linear(db: f64) -> Result<SnrLinear> {
    if !db.is_finite() {
        return Err(Error::NotFinite { what: "SNR in dB", value: db });
    }
    SnrLinear::new(10f64.powf(db / 10.0))
}

pub fn linear_to_db(g: SnrLinear) -> Result<f64> {
    if g.0 <= 0.0 {
        return Err(Error::NotPositive { what: "linear SNR", value: g.0 });
    }
    Ok(10.0 * g.0.log10())
}
