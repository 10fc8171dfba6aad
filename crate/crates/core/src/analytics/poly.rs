use std::fmt;

use num_traits::{Signed, Zero};

use crate::exact::{int, Rational};

/// Polynomial in `n` with rational coefficients, ascending degree, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RationalPolynomial {
    coeffs: Vec<Rational>,
}

impl RationalPolynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        RationalPolynomial { coeffs }
    }

    pub fn zero() -> Self {
        RationalPolynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// `c + s n`.
    pub fn linear(c: Rational, s: Rational) -> Self {
        Self::new(vec![c, s])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coefficient(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, n: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * n + c)
    }

    pub fn eval_f64(&self, n: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * n + crate::exact::to_f64(c))
    }

    pub fn add(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..len).map(|i| self.coefficient(i) + other.coefficient(i)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    /// `prod_{j=1}^{i} (c + 2j + 2n)`, the ratio `(c + 2n + 2i)!! / (c + 2n)!!`.
    pub fn double_factorial_ratio(c: i64, i: usize) -> Self {
        (1..=i as i64).fold(Self::constant(int(1)), |acc, j| acc.mul(&Self::linear(int(c + 2 * j), int(2))))
    }
}

impl fmt::Display for RationalPolynomial {
    /// Descending powers, e.g. `28/135*n + 7/18`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let abs = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
            }
            first = false;
            match i {
                0 => write!(f, "{abs}")?,
                1 => write!(f, "{abs}*n")?,
                _ => write!(f, "{abs}*n^{i}")?,
            }
        }
        Ok(())
    }
}
