use thiserror::Error;

/// Failure modes shared by every numerical routine in the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{op}: argument outside the domain ({detail})")]
    Domain { op: &'static str, detail: String },

    #[error("{op}: result overflows f64 ({detail})")]
    Overflow { op: &'static str, detail: String },

    #[error("{op}: no convergence ({detail})")]
    Convergence { op: &'static str, detail: String },

    #[error("{op}: integrand returned a non-finite value at x = {at}")]
    NonFinite { op: &'static str, at: f64 },

    #[error("meijer_g: no contour separates the two pole families ({detail})")]
    PoleSeparation { detail: String },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("at {snr_db} dB: {source}")]
    AtSnr { snr_db: f64, source: Box<Error> },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(op: &'static str, detail: impl Into<String>) -> Error {
    Error::Domain {
        op,
        detail: detail.into(),
    }
}

pub(crate) fn convergence(op: &'static str, detail: impl Into<String>) -> Error {
    Error::Convergence {
        op,
        detail: detail.into(),
    }
}
