use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not Hermitian (max |m - m^dagger| = {deviation:e})")]
    NotHermitian { deviation: f64 },
    #[error("matrix is not positive semidefinite (smallest eigenvalue {min_eigenvalue:e})")]
    NotPsd { min_eigenvalue: f64 },
    #[error("Werner parameter alpha = {0} is outside [-1/3, 1]")]
    AlphaOutOfRange(f64),
    #[error("invalid generalized Werner parameters: {0}")]
    SpecInvalid(String),
    #[error("invalid X state: {0}")]
    StateInvalid(String),
    #[error("operation needs a constant-field scenario, got {0}")]
    WrongScenarioKind(&'static str),
    #[error("amplitudes are not normalized (squared norm {0})")]
    NotNormalized(f64),
    #[error("parameter out of range: {0}")]
    ParamOutOfRange(String),
    #[error("not a density matrix: {0}")]
    NotDensityMatrix(String),
    #[error("propagator is not unitary (max |U U^dagger - I| = {0:e})")]
    NotUnitary(f64),
    #[error("invalid scenario: {0}")]
    ScenarioInvalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
