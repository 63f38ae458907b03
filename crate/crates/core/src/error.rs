use thiserror::Error;

/// Domain errors shared by every engine.
///
/// Each variant has a stable machine name (see [`Error::kind`]) that the
/// command line front end prints in its structured error reports.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid class: {0}")]
    InvalidClass(String),
    #[error("unsupported cone: {0}")]
    UnsupportedCone(String),
    #[error("ray is of fiber type; contraction is not birational")]
    NotBirational,
    #[error("invalid ray: {0}")]
    InvalidRay(String),
    #[error("class is not nef: {0}")]
    NotNef(String),
    #[error("not homaloidal: {0}")]
    NotHomaloidal(String),
    #[error("the type is already linear")]
    AlreadyLinear,
    #[error("no quadratic untwist: {0}")]
    NoUntwist(String),
    #[error("composition is degenerate (all components vanish)")]
    DegenerateComposition,
    #[error("degree {degree} exceeds the polynomial degree ceiling {ceiling}")]
    DegreeCeiling { degree: u32, ceiling: u32 },
    #[error("bad cluster: {0}")]
    BadCluster(String),
    #[error("position failure: {0}")]
    PositionFailure(String),
    #[error("inconclusive: {0}")]
    Inconclusive(String),
    #[error("singularity at the origin is not isolated")]
    NotIsolated,
    #[error("resolution depth exceeded the limit {0}")]
    DepthExceeded(usize),
    #[error("tangent direction is irrational and repeated: {0}")]
    IrrationalTangent(String),
    #[error("not of minimal degree: {0}")]
    NotMinimalDegree(String),
    #[error("ambiguous classification: {0}")]
    Ambiguous(String),
    #[error("out of regime: {0}")]
    OutOfRegime(String),
    #[error("genus is not integral: {0}")]
    NonIntegralGenus(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidClass(_) => "InvalidClass",
            Error::UnsupportedCone(_) => "UnsupportedCone",
            Error::NotBirational => "NotBirational",
            Error::InvalidRay(_) => "InvalidRay",
            Error::NotNef(_) => "NotNef",
            Error::NotHomaloidal(_) => "NotHomaloidal",
            Error::AlreadyLinear => "AlreadyLinear",
            Error::NoUntwist(_) => "NoUntwist",
            Error::DegenerateComposition => "DegenerateComposition",
            Error::DegreeCeiling { .. } => "DegreeCeiling",
            Error::BadCluster(_) => "BadCluster",
            Error::PositionFailure(_) => "PositionFailure",
            Error::Inconclusive(_) => "Inconclusive",
            Error::NotIsolated => "NotIsolated",
            Error::DepthExceeded(_) => "DepthExceeded",
            Error::IrrationalTangent(_) => "IrrationalTangent",
            Error::NotMinimalDegree(_) => "NotMinimalDegree",
            Error::Ambiguous(_) => "Ambiguous",
            Error::OutOfRegime(_) => "OutOfRegime",
            Error::NonIntegralGenus(_) => "NonIntegralGenus",
            Error::InvalidInput(_) => "InvalidInput",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
