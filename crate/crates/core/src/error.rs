use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("undefined resultant: zero polynomial input")]
    UndefinedResultant,
    #[error("discriminant requires degree >= 2, got {0}")]
    DegreeTooLow(isize),
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("empty or reversed interval [{lo}, {hi}]")]
    BadInterval { lo: String, hi: String },
    #[error("interval [{lo}, {hi}] does not isolate a single root ({count} found)")]
    NotIsolating { lo: String, hi: String, count: usize },
    #[error("segment inside Omega: Q vanishes identically on the segment")]
    SegmentInsideOmega,
    #[error("point lies on Omega")]
    OnSurface,
    #[error("unresolved at this resolution: no admissible grid connection")]
    Unresolved,
    #[error("invalid rational literal {0:?}: expected p/q")]
    ParseRational(String),
    #[error("parameter out of domain: {0}")]
    Domain(String),
    #[error("region calibration failed: reference signs of G are not opposite")]
    Calibration,
    #[error("no equilibrium found from this guess: {0}")]
    NoEquilibrium(String),
}

pub type Result<T> = std::result::Result<T, Error>;
