//! Exact rendering and the matching parser.

use num_bigint::BigInt;
use num_traits::Zero;
use qdvol_core::{PiScalar, Rational};
use serde::{Deserialize, Serialize};

/// `num/den`, always with an explicit denominator.
pub fn rational(x: &Rational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// `num/den * pi^e`.
pub fn pi_scalar(x: &PiScalar) -> String {
    x.to_string()
}

pub fn parse_rational(s: &str) -> Option<Rational> {
    let (n, d) = s.trim().split_once('/')?;
    let n: BigInt = n.trim().parse().ok()?;
    let d: BigInt = d.trim().parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(Rational::new(n, d))
}

pub fn parse_pi_scalar(s: &str) -> Option<PiScalar> {
    let (c, p) = s.split_once('*')?;
    let e = p.trim().strip_prefix("pi^")?.parse().ok()?;
    Some(PiScalar::new(parse_rational(c)?, e))
}

/// A rational as a pair of decimal strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactJson {
    pub num: String,
    pub den: String,
}

impl From<&Rational> for ExactJson {
    fn from(x: &Rational) -> Self {
        ExactJson { num: x.numer().to_string(), den: x.denom().to_string() }
    }
}

impl ExactJson {
    pub fn parse(&self) -> Option<Rational> {
        parse_rational(&format!("{}/{}", self.num, self.den))
    }
}

/// Fixed-precision float text, identical across runs.
pub fn float(x: f64) -> String {
    format!("{x:.12e}")
}
