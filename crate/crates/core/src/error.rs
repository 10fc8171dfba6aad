use thiserror::Error;

/// Everything that can go wrong inside the engine.
///
/// Most variants signal a violated precondition. `Inconsistency` and
/// `Decomposition` signal an internal contradiction and should never fire on
/// a correct build.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("truncation: coefficient t^{exponent} requested but series is only valid below t^{order}")]
    Truncation { exponent: i64, order: i64 },

    #[error("valuation error: {0}")]
    Valuation(String),

    #[error("leading coefficient {0} is not a rational square")]
    NotSquare(String),

    #[error("unstable (g, n) = ({g}, {n})")]
    Unstable { g: u32, n: u32 },

    #[error("empty stratum (g, n) = ({g}, {n})")]
    EmptyStratum { g: u32, n: u32 },

    #[error("cannot add values carrying pi^{left} and pi^{right}")]
    MixedPiPower { left: i64, right: i64 },

    #[error("decomposition failure: {0}")]
    Decomposition(String),

    #[error("singular linear system")]
    Singular,

    #[error("inconsistency: {0}")]
    Inconsistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;
