use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{what} must be finite, got {value}")]
    NotFinite { what: &'static str, value: f64 },

    #[error("{what} must be non-negative, got {value}")]
    Negative { what: &'static str, value: f64 },

    #[error("{what} must be strictly positive, got {value}")]
    NotPositive { what: &'static str, value: f64 },

    #[error("downlink SNR {gamma_cd} cannot carry the backhaul rate {c_l} bps; full transfer applies")]
    FullTransferApplies { c_l: f64, gamma_cd: f64 },

    #[error("covariance matrix is singular")]
    SingularCovariance,

    #[error("candidate list is empty")]
    NoCandidates,

    #[error("sample count must be at least 1")]
    NoSamples,

    #[error("user count must be at least 1, got {0}")]
    NoUsers(usize),

    #[error("unknown {what} `{name}`")]
    UnknownName { what: &'static str, name: String },
}
