use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::{int, Rational};
use crate::series::TruncatedSeries;

/// A finite sum `sum_p c_p t^{-p}` with `p >= 0`: a pole part, possibly with a constant.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct LaurentPoly {
    // pole order -> coefficient, never storing zeros
    poles: BTreeMap<u32, Rational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    /// `c * t^{-p}`.
    pub fn pole(c: Rational, p: u32) -> Self {
        let mut l = LaurentPoly::zero();
        l.add_term(p, c);
        l
    }

    /// Builds from `(exponent, coefficient)` pairs. Positive exponents are rejected.
    pub fn from_terms<I: IntoIterator<Item = (i64, Rational)>>(terms: I) -> Result<Self> {
        let mut l = LaurentPoly::zero();
        for (e, c) in terms {
            if e > 0 {
                return Err(Error::Domain(format!("positive exponent {e} in a pole part")));
            }
            l.add_term((-e) as u32, c);
        }
        Ok(l)
    }

    fn add_term(&mut self, p: u32, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.poles.entry(p).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.poles.remove(&p);
        }
    }

    /// Coefficient of `t^e`; zero for any positive exponent.
    pub fn coeff(&self, e: i64) -> Rational {
        if e > 0 {
            return Rational::zero();
        }
        self.poles.get(&((-e) as u32)).cloned().unwrap_or_else(Rational::zero)
    }

    /// Highest pole order present.
    pub fn top_pole(&self) -> Option<u32> {
        self.poles.keys().next_back().copied()
    }

    /// Lowest pole order present.
    pub fn bottom_pole(&self) -> Option<u32> {
        self.poles.keys().next().copied()
    }

    /// Iterator over `(pole order, coefficient)`, ascending in pole order.
    pub fn poles(&self) -> impl Iterator<Item = (u32, &Rational)> {
        self.poles.iter().map(|(p, c)| (*p, c))
    }

    pub fn is_zero(&self) -> bool {
        self.poles.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (p, c) in &other.poles {
            out.add_term(*p, c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = LaurentPoly::zero();
        for (p, x) in &self.poles {
            out.add_term(*p, x * c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&int(-1)))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = LaurentPoly::zero();
        for (p, a) in &self.poles {
            for (q, b) in &other.poles {
                out.add_term(p + q, a * b);
            }
        }
        out
    }

    pub fn derivative(&self) -> Self {
        let mut out = LaurentPoly::zero();
        for (p, c) in &self.poles {
            if *p > 0 {
                out.add_term(p + 1, c * int(-(*p as i64)));
            }
        }
        out
    }

    /// Exact view as a series; known to every order.
    pub fn to_series(&self, order: i64) -> TruncatedSeries {
        let Some(top) = self.top_pole() else {
            return TruncatedSeries::zero(order);
        };
        let low = -(top as i64);
        let coeffs = (low..=0).map(|e| self.coeff(e)).collect();
        TruncatedSeries::new(low, coeffs, order)
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.poles.iter().map(|(p, c)| format!("{c}/t^{p}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_positive_exponents() {
        assert!(LaurentPoly::from_terms([(1, int(1))]).is_err());
        assert!(LaurentPoly::from_terms([(0, int(1)), (-2, int(3))]).is_ok());
    }

    #[test]
    fn derivative_of_pole() {
        let l = LaurentPoly::pole(int(1), 2);
        assert_eq!(l.derivative(), LaurentPoly::pole(int(-2), 3));
        assert!(LaurentPoly::pole(int(5), 0).derivative().is_zero());
    }

    #[test]
    fn series_view_round_trips() {
        let l = LaurentPoly::from_terms([(-3, int(2)), (-1, int(5)), (0, int(7))]).unwrap();
        let s = l.to_series(4);
        assert_eq!(s.residue().unwrap(), int(5));
        assert_eq!(s.coeff(-3).unwrap(), int(2));
    }
}
