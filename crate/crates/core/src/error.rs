use num_complex::Complex64;

pub type Result<T> = std::result::Result<T, Error>;

/// Coarse classification used by front ends to map failures to exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// Malformed or inconsistent input (shapes, bands, arguments).
    Input,
    /// A mathematical precondition of the requested formula does not hold.
    Precondition,
    /// The inputs were admissible but a numerical kernel failed.
    Numerical,
}

#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    #[error("{what}: expected a square matrix, got {rows}x{cols}")]
    NotSquare {
        what: &'static str,
        rows: usize,
        cols: usize,
    },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("non-finite entry in {0}")]
    NonFinite(&'static str),
    #[error("{what} is singular to working precision")]
    Singular { what: &'static str },
    #[error("matrix is not Schur stable: spectral radius {spectral_radius} (margin {margin:e})")]
    NotSchur { spectral_radius: f64, margin: f64 },
    #[error("right-hand side is not symmetric (asymmetry {asymmetry:e})")]
    Asymmetric { asymmetry: f64 },
    #[error("singular pencil: det(alpha E + beta A) vanishes for every tried shift")]
    SingularPencil,
    #[error(
        "pole on integration path: eigenvalue {eigenvalue} is {clearance:e} from the path (threshold {threshold:e})"
    )]
    PoleOnPath {
        eigenvalue: Complex64,
        clearance: f64,
        threshold: f64,
    },
    #[error(
        "principal logarithm undefined: eigenvalue {eigenvalue} is {distance:e} from the closed negative real axis"
    )]
    LogBranch { eigenvalue: Complex64, distance: f64 },
    #[error("feedthrough D must be zero for this method")]
    NonzeroFeedthrough,
    #[error("eigenvector matrix condition {condition:e} exceeds bound {bound:e}")]
    IllConditioned { condition: f64, bound: f64 },
    #[error("point {point} lies in the excluded set of the scalar function")]
    ExcludedPoint { point: Complex64 },
    #[error("iteration failed to converge: {0}")]
    NoConvergence(&'static str),
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::NotSquare { .. }
            | Error::ShapeMismatch(_)
            | Error::InvalidArgument(_)
            | Error::NonFinite(_)
            | Error::Asymmetric { .. }
            | Error::NonzeroFeedthrough => ErrorKind::Input,
            Error::NotSchur { .. }
            | Error::SingularPencil
            | Error::PoleOnPath { .. }
            | Error::ExcludedPoint { .. } => ErrorKind::Precondition,
            Error::Singular { .. }
            | Error::LogBranch { .. }
            | Error::IllConditioned { .. }
            | Error::NoConvergence(_) => ErrorKind::Numerical,
        }
    }
}
