//! One-variable truncated series, pole-part polynomials and multivariate amplitudes.

mod amplitude;
mod laurent;
mod truncated;

pub use amplitude::Amplitude;
pub use laurent::LaurentPoly;
pub use truncated::TruncatedSeries;

use crate::error::Result;

/// The binary and unary operations exposed as one dispatch point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesOp {
    Add,
    Mul,
    Div,
    Compose,
    Sqrt,
    Derivative,
    Log,
}

/// Applies `op` to `a` (and `b` where binary; unary ops ignore `b`).
pub fn series_arith(a: &TruncatedSeries, b: &TruncatedSeries, op: SeriesOp) -> Result<TruncatedSeries> {
    match op {
        SeriesOp::Add => Ok(a.add(b)),
        SeriesOp::Mul => Ok(a.mul(b)),
        SeriesOp::Div => a.div(b),
        SeriesOp::Compose => a.compose(b),
        SeriesOp::Sqrt => a.sqrt(),
        SeriesOp::Derivative => Ok(a.derivative()),
        SeriesOp::Log => a.log(),
    }
}

/// Compositional inverse; see [`TruncatedSeries::reversion`].
pub fn reversion(a: &TruncatedSeries) -> Result<TruncatedSeries> {
    a.reversion()
}

/// Coefficient of `t^{-1}`.
pub fn residue(a: &TruncatedSeries) -> Result<crate::exact::Rational> {
    a.residue()
}

/// Stored coefficient of an amplitude at an exponent tuple.
pub fn amplitude_coefficient(w: &Amplitude, exponents: &[i64]) -> Result<crate::exact::Rational> {
    w.coefficient(exponents)
}
