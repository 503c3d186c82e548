use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix has non-finite entries")]
    NonFinite,

    #[error("matrix is not Hermitian (max |m - m^dagger| = {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("Jacobi eigensolver did not converge within {sweeps} sweeps")]
    NotConverged { sweeps: usize },

    #[error("matrix is not positive semidefinite (min eigenvalue {min_eigenvalue:e})")]
    NotPsd { min_eigenvalue: f64 },

    #[error("trace is {trace}, expected 1")]
    BadTrace { trace: f64 },

    #[error("state vector norm is {norm}, expected 1")]
    BadNorm { norm: f64 },

    #[error("parameter {value} out of range for {family}")]
    ParamOutOfRange { family: &'static str, value: f64 },

    #[error("{name} = {value} out of range")]
    OutOfRange { name: &'static str, value: f64 },

    #[error("precondition violated: {0}")]
    Precondition(&'static str),

    #[error("no records to summarize")]
    Empty,

    #[error("non-finite objective value for sample {index}")]
    NonFiniteObjective { index: u64 },
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
