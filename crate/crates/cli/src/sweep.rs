use anyhow::{bail, Result};
use clap::ValueEnum;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SweepVar {
    /// Downlink rate in bps.
    #[value(name = "r_c")]
    RC,
    /// Inter-BS SNR in dB.
    #[value(name = "gamma_cb_db")]
    GammaCbDb,
    /// Backhaul capacity in bps.
    #[value(name = "c_l")]
    CL,
}

impl SweepVar {
    pub fn label(self) -> &'static str {
        match self {
            SweepVar::RC => "r_c",
            SweepVar::GammaCbDb => "gamma_cb_db",
            SweepVar::CL => "c_l",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepSpec {
    pub variable: SweepVar,
    pub start: f64,
    pub stop: f64,
    pub step: f64,
}

impl SweepSpec {
    pub fn new(variable: SweepVar, start: f64, stop: f64, step: f64) -> Result<Self> {
        if !(start.is_finite() && stop.is_finite() && step.is_finite()) {
            bail!("sweep bounds must be finite");
        }
        if start > stop {
            bail!("sweep start {start} exceeds stop {stop}");
        }
        if step <= 0.0 {
            bail!("sweep step must be positive, got {step}");
        }
        Ok(SweepSpec { variable, start, stop, step })
    }

    /// Grid points `start + i * step` up to `stop`, computed without
    /// accumulating rounding error.
    pub fn points(&self) -> Vec<f64> {
        let n = ((self.stop - self.start) / self.step + 1e-9).floor() as usize;
        (0..=n).map(|i| self.start + i as f64 * self.step).collect()
    }
}
