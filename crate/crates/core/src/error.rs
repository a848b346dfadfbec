use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid generators: {0}")]
    InvalidGenerators(String),

    #[error("invalid arithmetic progression: {0}")]
    InvalidProgression(String),

    #[error("invalid minimal polynomial: {0}")]
    InvalidMinpoly(String),

    #[error("elements belong to different number rings")]
    RingMismatch,

    #[error("division by zero")]
    DivisionByZero,

    /// The modulus turned out to be reducible; `factor` is the nontrivial
    /// factor found while inverting.
    #[error("minimal polynomial is reducible, found factor {factor}")]
    ReducibleModulus { factor: String },

    #[error("invalid weight: {0}")]
    InvalidLambda(String),

    #[error("weight lambda = 1 is excluded; use the unweighted power sum instead")]
    LambdaIsOne,

    #[error("formula branch does not apply: {0}")]
    WrongBranch(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("root refinement did not converge")]
    NoConvergence,

    /// A quantity that must be an integer (or two routes that must agree)
    /// did not. Always a bug or a corrupted table.
    #[error("internal consistency failure: {0}")]
    Internal(String),
}
