use thiserror::Error;

/// Errors raised by the index toolkit.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum QcaError {
    /// A precondition on the inputs does not hold.
    #[error("domain error: {0}")]
    Domain(String),

    /// An operator is not a tensor product across the requested cut.
    #[error("operator is not factorizable across the cut (relative residual {residual:.3e})")]
    NotFactorizable { residual: f64 },

    /// No d-smooth rational lies within tolerance of the value.
    #[error("no {d}-smooth rational within tolerance of {value}")]
    SnapFailure { value: f64, d: u64 },

    /// The automaton does not commute with the global symmetry.
    #[error("automaton does not commute with the global symmetry (defect {defect:.3e})")]
    NotSymmetric { defect: f64 },

    /// A symmetry-protected index has a vanishing trace in its denominator.
    #[error("index undefined: {0}")]
    UndefinedSpi(String),

    /// The requested edge spectra are incompatible with the on-site representation.
    #[error("spectrum obstruction: {0}")]
    SpectrumObstruction(String),

    /// The two representations are not related by a unitary and a 1D representation.
    #[error("no intertwiner exists")]
    NoIntertwiner,

    /// A conjugated operator leaked outside its light cone.
    #[error("locality violation: {0}")]
    LocalityViolation(String),

    /// A dense decomposition did not converge.
    #[error("linear algebra failure: {0}")]
    Solver(String),

    /// The computation would exceed the dense dimension budget.
    #[error("dimension budget exceeded: {0}")]
    Budget(String),
}

pub type Result<T> = std::result::Result<T, QcaError>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(QcaError::Domain(msg.into()))
}
