use thiserror::Error;

/// Failure modes of the workbench.
///
/// The variants split into two families. Parameter errors mean the request
/// itself has no admissible answer. Numerical errors mean a computation failed
/// to meet its tolerance. The command-line front end maps them to exit codes
/// 2 and 3 respectively.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("coupling strength Z = {z} is not below the single-lobe bound 2/(pi c2) = {bound}")]
    InadmissibleStrength { z: f64, bound: f64 },

    #[error("modulus k = {k} is outside the {branch} branch window {window:?}")]
    BranchMismatch {
        k: f64,
        branch: &'static str,
        window: (f64, f64),
    },

    #[error("no stationary state: {0}")]
    NoSolution(String),

    #[error("configuration error: {0}")]
    Configuration(String),

    #[error("numerical failure: {0}")]
    Numerical(String),
}

impl Error {
    /// True when the error reflects an inadmissible request rather than a
    /// numerical breakdown.
    pub fn is_inadmissible(&self) -> bool {
        !matches!(self, Error::Numerical(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
