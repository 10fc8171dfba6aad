//! Exact scalars and the combinatorial kernels built on them.

use std::fmt;
use std::ops::{Div, Mul, Neg};
use std::sync::RwLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rational = BigRational;

/// Shorthand for the rational `n / d`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Shorthand for the integer `n` as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `k!!` with the conventions `(-1)!! = 1` and `(-3)!! = -1`.
pub fn double_factorial(k: i64) -> Result<Rational> {
    match k {
        -3 => Ok(int(-1)),
        -1 | 0 => Ok(int(1)),
        k if k < 0 => Err(Error::Domain(format!("double factorial undefined at {k}"))),
        k => {
            let mut acc = BigInt::one();
            let mut i = k;
            while i > 1 {
                acc *= i;
                i -= 2;
            }
            Ok(Rational::from_integer(acc))
        }
    }
}

/// `n!` as a big integer.
pub fn factorial(n: u64) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// Binomial coefficient `C(n, k)`, zero outside `0 <= k <= n`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Central binomial weight `4^{-k} C(2k, k)`.
pub fn gamma_k(k: i64) -> Result<Rational> {
    if k < 0 {
        return Err(Error::Domain(format!("gamma_k needs k >= 0, got {k}")));
    }
    let den = BigInt::one() << (2 * k as usize);
    Ok(Rational::new(binomial(2 * k, k), den))
}

static BERNOULLI: RwLock<Vec<Rational>> = RwLock::new(Vec::new());

/// Bernoulli number `B_n` with `B_1 = -1/2`, memoized.
pub fn bernoulli_number(n: usize) -> Rational {
    if let Some(b) = BERNOULLI.read().unwrap().get(n) {
        return b.clone();
    }
    let mut memo = BERNOULLI.write().unwrap();
    while memo.len() <= n {
        let m = memo.len();
        if m == 0 {
            memo.push(int(1));
            continue;
        }
        // sum_{k<=m} C(m+1, k) B_k = 0
        let mut acc = Rational::zero();
        for (k, b) in memo.iter().enumerate() {
            acc += b * Rational::from_integer(binomial(m as i64 + 1, k as i64));
        }
        memo.push(-acc / int(m as i64 + 1));
    }
    memo[n].clone()
}

/// Bernoulli polynomial `B_n(x) = sum_k C(n, k) B_k x^{n-k}`.
pub fn bernoulli_polynomial(n: usize, x: &Rational) -> Rational {
    let mut acc = Rational::zero();
    let mut xp = Rational::one();
    for k in (0..=n).rev() {
        acc += bernoulli_number(k) * Rational::from_integer(binomial(n as i64, k as i64)) * &xp;
        xp *= x;
    }
    acc
}

/// `x^e` for a signed exponent. Fails on `0^e` with `e < 0`.
pub fn pow(x: &Rational, e: i64) -> Result<Rational> {
    if e < 0 && x.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let p = num_traits::pow(x.clone(), e.unsigned_abs() as usize);
    Ok(if e < 0 { p.recip() } else { p })
}

/// Exact rational square root, if it exists.
pub fn sqrt_exact(x: &Rational) -> Option<Rational> {
    if x.is_negative() {
        return None;
    }
    let n = x.numer().sqrt();
    let d = x.denom().sqrt();
    (&n * &n == *x.numer() && &d * &d == *x.denom()).then(|| Rational::new(n, d))
}

/// Lossy conversion for diagnostics only.
pub fn to_f64(x: &Rational) -> f64 {
    x.to_f64().unwrap_or_else(|| {
        // Fall back through logarithms when numerator or denominator overflow.
        let ln = |b: &BigInt| {
            let s = b.abs().to_string();
            let lead: f64 = s[..s.len().min(17)].parse().unwrap_or(0.0);
            lead.ln() + (s.len().saturating_sub(17)) as f64 * std::f64::consts::LN_10
        };
        let mag = (ln(x.numer()) - ln(x.denom())).exp();
        if x.is_negative() {
            -mag
        } else {
            mag
        }
    })
}

/// `coefficient * pi^pi_power`. Zero is always stored with `pi_power = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PiScalar {
    coefficient: Rational,
    pi_power: i64,
}

impl PiScalar {
    pub fn new(coefficient: Rational, pi_power: i64) -> Self {
        let pi_power = if coefficient.is_zero() { 0 } else { pi_power };
        PiScalar { coefficient, pi_power }
    }

    pub fn zero() -> Self {
        PiScalar::new(Rational::zero(), 0)
    }

    pub fn coefficient(&self) -> &Rational {
        &self.coefficient
    }

    pub fn pi_power(&self) -> i64 {
        self.pi_power
    }

    /// Sum of two values; both must carry the same power of pi unless one is zero.
    pub fn checked_add(&self, other: &PiScalar) -> Result<PiScalar> {
        if self.coefficient.is_zero() {
            return Ok(other.clone());
        }
        if other.coefficient.is_zero() {
            return Ok(self.clone());
        }
        if self.pi_power != other.pi_power {
            return Err(Error::MixedPiPower { left: self.pi_power, right: other.pi_power });
        }
        Ok(PiScalar::new(&self.coefficient + &other.coefficient, self.pi_power))
    }

    pub fn checked_div(&self, other: &PiScalar) -> Result<PiScalar> {
        if other.coefficient.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(PiScalar::new(&self.coefficient / &other.coefficient, self.pi_power - other.pi_power))
    }

    pub fn to_f64(&self) -> f64 {
        to_f64(&self.coefficient) * std::f64::consts::PI.powi(self.pi_power as i32)
    }
}

impl Mul for &PiScalar {
    type Output = PiScalar;
    fn mul(self, rhs: &PiScalar) -> PiScalar {
        PiScalar::new(&self.coefficient * &rhs.coefficient, self.pi_power + rhs.pi_power)
    }
}

impl Mul<&Rational> for &PiScalar {
    type Output = PiScalar;
    fn mul(self, rhs: &Rational) -> PiScalar {
        PiScalar::new(&self.coefficient * rhs, self.pi_power)
    }
}

impl Div<&Rational> for &PiScalar {
    type Output = PiScalar;
    fn div(self, rhs: &Rational) -> PiScalar {
        PiScalar::new(&self.coefficient / rhs, self.pi_power)
    }
}

impl Neg for PiScalar {
    type Output = PiScalar;
    fn neg(self) -> PiScalar {
        PiScalar::new(-self.coefficient, self.pi_power)
    }
}

impl fmt::Display for PiScalar {
    /// Renders as `num/den * pi^e`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{} * pi^{}", self.coefficient.numer(), self.coefficient.denom(), self.pi_power)
    }
}

/// `(-1)^k` as a rational.
pub fn sign(k: i64) -> Rational {
    if k.is_even() {
        int(1)
    } else {
        int(-1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn double_factorial_conventions() {
        assert_eq!(double_factorial(-1).unwrap(), int(1));
        assert_eq!(double_factorial(-3).unwrap(), int(-1));
        assert_eq!(double_factorial(5).unwrap(), int(15));
        assert_eq!(double_factorial(0).unwrap(), int(1));
        assert!(double_factorial(-2).is_err());
        assert!(double_factorial(-5).is_err());
    }

    #[test]
    fn gamma_values() {
        assert_eq!(gamma_k(0).unwrap(), int(1));
        assert_eq!(gamma_k(1).unwrap(), rat(1, 2));
        assert_eq!(gamma_k(2).unwrap(), rat(3, 8));
        assert!(gamma_k(-1).is_err());
    }

    #[test]
    fn bernoulli_values() {
        assert_eq!(bernoulli_polynomial(1, &int(0)), rat(-1, 2));
        assert_eq!(bernoulli_polynomial(2, &int(0)), rat(1, 6));
        assert_eq!(bernoulli_number(12), rat(-691, 2730));
        assert_eq!(bernoulli_number(13), int(0));
        let x = rat(2, 7);
        assert_eq!(bernoulli_polynomial(3, &x), -bernoulli_polynomial(3, &(int(1) - &x)));
    }

    #[test]
    fn pi_scalar_rules() {
        let a = PiScalar::new(rat(1, 3), 4);
        let b = PiScalar::new(rat(2, 3), 4);
        assert_eq!(a.checked_add(&b).unwrap(), PiScalar::new(int(1), 4));
        assert!(a.checked_add(&PiScalar::new(int(1), 2)).is_err());
        assert_eq!(PiScalar::new(int(0), 6).pi_power(), 0);
        assert_eq!(a.to_string(), "1/3 * pi^4");
        assert_eq!((&a * &b).pi_power(), 8);
    }

    #[test]
    fn square_roots() {
        assert_eq!(sqrt_exact(&rat(9, 4)), Some(rat(3, 2)));
        assert_eq!(sqrt_exact(&rat(2, 1)), None);
        assert_eq!(sqrt_exact(&rat(-1, 4)), None);
    }
}
