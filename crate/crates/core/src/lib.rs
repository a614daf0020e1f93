//! Achievable uplink secrecy rates for a two-cell system in which the
//! interfering base station shares information about its downlink signal
//! with the receiving base station over a finite-capacity backhaul.
//!
//! The crate is organised bottom-up:
//!
//! - [`rate_core`]: Gaussian link capacity and the two-user MAC residual rate.
//! - [`strategies`]: closed-form secrecy rates for each cooperation strategy.
//! - [`mac_oracle`]: an independent log-determinant evaluation of the same
//!   rates, used for cross-checking.
//! - [`fading`]: secrecy-outage probability over Rayleigh block fading.
//! - [`scheduler`]: multiuser downlink scheduling with full CSI.
//!
//! All rates are in bits per channel use and all SNRs are linear power ratios.

pub mod error;
pub mod fading;
pub mod mac_oracle;
pub mod rate_core;
pub mod scheduler;
pub mod strategies;
mod substream;

pub use error::{Error, Result};
pub use fading::{outage_probability, sample_realization, FadingAverages, OutageEstimate};
pub use rate_core::{capacity, mac_residual_rate, positive_part, ChannelGains, RateBps, SnrLinear};
pub use scheduler::{
    simulate_schedulers, BackhaulMethod, MultiuserScenario, ScheduleReport, ScheduleSummary,
    SchedulerKind,
};
pub use strategies::{secrecy_rate, AlphaChoice, SecrecyEvaluation, SplitChoice, StrategyKind, SupVariant};
