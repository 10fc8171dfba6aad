use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{int, sqrt_exact, Rational};

/// Order used for exactly known finite series.
pub(crate) const EXACT: i64 = i64::MAX / 8;

/// A one-variable series `sum c_e t^e`, known exactly for `e < order`.
///
/// Coefficients below `low` are zero. Every operation propagates the tightest
/// order it can guarantee, so reading past it is an error instead of a silent
/// wrong answer.
#[derive(Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    low: i64,
    coeffs: Vec<Rational>,
    order: i64,
}

impl TruncatedSeries {
    /// Builds a series from coefficients starting at `t^low`, valid below `order`.
    /// Entries at or beyond `order` are dropped.
    pub fn new(low: i64, coeffs: Vec<Rational>, order: i64) -> Self {
        let mut s = TruncatedSeries { low, coeffs, order };
        s.normalize();
        s
    }

    pub fn zero(order: i64) -> Self {
        TruncatedSeries { low: order.min(0), coeffs: Vec::new(), order }
    }

    /// `c * t^e` known to `order`.
    pub fn monomial(c: Rational, e: i64, order: i64) -> Self {
        TruncatedSeries::new(e, vec![c], order)
    }

    /// The variable `t` itself.
    pub fn var(order: i64) -> Self {
        TruncatedSeries::monomial(int(1), 1, order)
    }

    pub fn constant(c: Rational, order: i64) -> Self {
        TruncatedSeries::monomial(c, 0, order)
    }

    fn normalize(&mut self) {
        let keep = (self.order - self.low).max(0) as usize;
        self.coeffs.truncate(keep);
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.low += lead as i64;
        }
        if self.coeffs.is_empty() {
            self.low = self.order.min(0);
        }
    }

    /// Exclusive upper bound of trusted exponents.
    pub fn order(&self) -> i64 {
        self.order
    }

    /// Coefficient of `t^e`; an error at or beyond the truncation order.
    pub fn coeff(&self, e: i64) -> Result<Rational> {
        if e >= self.order {
            return Err(Error::Truncation { exponent: e, order: self.order });
        }
        Ok(self.get(e))
    }

    /// Coefficient with no truncation check. Only for internal loops that
    /// already stay inside the order.
    fn get(&self, e: i64) -> Rational {
        let i = e - self.low;
        if i < 0 || i as usize >= self.coeffs.len() {
            Rational::zero()
        } else {
            self.coeffs[i as usize].clone()
        }
    }

    /// Lowest exponent with a nonzero coefficient, if any is known.
    pub fn valuation(&self) -> Option<i64> {
        (!self.coeffs.is_empty()).then_some(self.low)
    }

    /// Iterator over `(exponent, coefficient)` for the nonzero known terms.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.low + i as i64, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Same series with the order lowered to `order`.
    pub fn truncate(&self, order: i64) -> Self {
        TruncatedSeries::new(self.low, self.coeffs.clone(), order.min(self.order))
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        TruncatedSeries { low: self.low + k, coeffs: self.coeffs.clone(), order: self.order + k }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        TruncatedSeries::new(self.low, self.coeffs.iter().map(|x| x * c).collect(), self.order)
    }

    pub fn neg(&self) -> Self {
        self.scale(&int(-1))
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = self.order.min(other.order);
        let low = self.low.min(other.low).min(order);
        let coeffs = (low..order.max(low))
            .take_while(|&e| e <= self.top().max(other.top()))
            .map(|e| self.get(e) + other.get(e))
            .collect();
        TruncatedSeries::new(low, coeffs, order)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    fn top(&self) -> i64 {
        self.low + self.coeffs.len() as i64 - 1
    }

    /// Product, valid to `min(order_a + val_b, order_b + val_a)`.
    pub fn mul(&self, other: &Self) -> Self {
        let (va, vb) = (self.low, other.low);
        let order = match (self.valuation(), other.valuation()) {
            (None, None) => self.order + other.order,
            (None, Some(v)) => self.order + v,
            (Some(v), None) => other.order + v,
            _ => (self.order + vb).min(other.order + va),
        };
        if self.is_zero() || other.is_zero() {
            return TruncatedSeries::zero(order);
        }
        let low = va + vb;
        let len = ((order - low).max(0) as usize).min(self.coeffs.len() + other.coeffs.len() - 1);
        let mut out = vec![Rational::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() || i >= len {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(len - i) {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        TruncatedSeries::new(low, out, order)
    }

    /// `t^k` power by repeated squaring (k >= 0).
    pub fn powi(&self, k: u32) -> Self {
        let mut result = TruncatedSeries::constant(int(1), EXACT);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Multiplicative inverse. Needs a nonzero known term.
    pub fn inv(&self) -> Result<Self> {
        let v = self.valuation().ok_or(Error::DivisionByZero)?;
        let rel = self.order - v;
        if rel > 1 << 20 {
            return Err(Error::Domain("inverse of an exactly known series needs a finite order".into()));
        }
        let c0 = self.coeffs[0].recip();
        let mut out: Vec<Rational> = Vec::with_capacity(rel as usize);
        for k in 0..rel as usize {
            if k == 0 {
                out.push(c0.clone());
                continue;
            }
            let mut acc = Rational::zero();
            for j in 1..=k.min(self.coeffs.len() - 1) {
                let a = &self.coeffs[j];
                if !a.is_zero() {
                    acc += a * &out[k - j];
                }
            }
            out.push(-acc * &c0);
        }
        Ok(TruncatedSeries::new(-v, out, rel - v))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c * int(self.low + i as i64))
            .collect();
        TruncatedSeries::new(self.low - 1, coeffs, self.order - 1)
    }

    /// Term-wise antiderivative of a series with no `t^{-1}` term.
    pub fn integral(&self) -> Result<Self> {
        if !self.get(-1).is_zero() {
            return Err(Error::Domain("antiderivative of a series with a residue".into()));
        }
        let coeffs = (self.low..=self.top())
            .map(|e| if e == -1 { Rational::zero() } else { self.get(e) / int(e + 1) })
            .collect();
        Ok(TruncatedSeries::new(self.low + 1, coeffs, self.order + 1))
    }

    /// `self(inner(t))`. The inner series must have positive valuation.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        let v = match inner.valuation() {
            Some(v) if v >= 1 => v,
            Some(v) => return Err(Error::Valuation(format!("compose needs inner valuation >= 1, got {v}"))),
            None => return Err(Error::Valuation("compose with a zero inner series".into())),
        };
        let rel = inner.order - v;
        let mut order = self.order.saturating_mul(v);
        for (e, _) in self.terms() {
            if e != 0 {
                order = order.min(e * v + rel);
            }
        }
        let mut acc = TruncatedSeries::zero(order);
        if self.low < 0 {
            let recip = inner.inv()?;
            let mut p = TruncatedSeries::constant(int(1), EXACT);
            for e in (self.low..0).rev() {
                p = p.mul(&recip).truncate(order);
                let c = self.get(e);
                if !c.is_zero() {
                    acc = acc.add(&p.scale(&c));
                }
            }
        }
        // Horner over the nonnegative part.
        let inner = inner.truncate(order);
        let top = self.top().min(order / v);
        if top >= 0 {
            let mut h = TruncatedSeries::zero(order);
            for e in (0..=top).rev() {
                h = h.mul(&inner).truncate(order).add(&TruncatedSeries::constant(self.get(e), order));
            }
            acc = acc.add(&h);
        }
        Ok(acc.truncate(order))
    }

    /// Square root with positive leading coefficient. Needs even valuation and a
    /// rational square leading term.
    pub fn sqrt(&self) -> Result<Self> {
        let v = self.valuation().ok_or_else(|| Error::Valuation("sqrt of zero series".into()))?;
        if v % 2 != 0 {
            return Err(Error::Valuation(format!("sqrt needs even valuation, got {v}")));
        }
        let c0 = &self.coeffs[0];
        let r0 = sqrt_exact(c0).ok_or_else(|| Error::NotSquare(c0.to_string()))?;
        let rel = (self.order - v) as usize;
        // r^2 = a, coefficientwise: 2 r0 r_k = a_k - sum_{0<j<k} r_j r_{k-j}
        let two_r0 = &r0 * int(2);
        let mut r: Vec<Rational> = vec![r0];
        for k in 1..rel {
            let mut acc = self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero);
            for j in 1..k {
                acc -= &r[j] * &r[k - j];
            }
            r.push(acc / &two_r0);
        }
        Ok(TruncatedSeries::new(v / 2, r, v / 2 + rel as i64))
    }

    /// Logarithm of a series with constant term 1.
    pub fn log(&self) -> Result<Self> {
        if self.low != 0 || !self.coeffs[0].is_one() {
            return Err(Error::Domain("log needs constant term 1".into()));
        }
        let d = self.derivative().div(self)?;
        d.integral()
    }

    /// Exponential of a series with zero constant term.
    pub fn exp(&self) -> Result<Self> {
        if self.valuation().is_some_and(|v| v < 1) {
            return Err(Error::Domain("exp needs zero constant term".into()));
        }
        let n = self.order.max(0) as usize;
        // e' = a' e, so k e_k = sum_j j a_j e_{k-j}
        let mut e: Vec<Rational> = vec![int(1)];
        for k in 1..n {
            let mut acc = Rational::zero();
            for j in 1..=k {
                let a = self.get(j as i64);
                if !a.is_zero() {
                    acc += a * int(j as i64) * &e[k - j];
                }
            }
            e.push(acc / int(k as i64));
        }
        Ok(TruncatedSeries::new(0, e, self.order))
    }

    /// Compositional inverse of a series with valuation exactly 1.
    pub fn reversion(&self) -> Result<Self> {
        if self.valuation() != Some(1) {
            return Err(Error::Valuation(format!("reversion needs valuation 1, got {:?}", self.valuation())));
        }
        let order = self.order;
        let d = self.derivative();
        let t = TruncatedSeries::var(order);
        let mut b = TruncatedSeries::monomial(self.coeffs[0].recip(), 1, order);
        // Newton: each step doubles the number of correct terms.
        let mut good = 2;
        while good < order {
            let err = self.compose(&b)?.sub(&t);
            let step = err.div(&d.compose(&b)?)?;
            b = b.sub(&step).truncate(order);
            good = 2 * good - 1;
        }
        let check = self.compose(&b)?.sub(&t);
        if !check.is_zero() {
            return Err(Error::Inconsistency("reversion failed to converge".into()));
        }
        Ok(b)
    }

    /// Coefficient of `t^{-1}`.
    pub fn residue(&self) -> Result<Rational> {
        self.coeff(-1)
    }
}

impl fmt::Debug for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (e, c) in self.terms() {
            write!(f, "{c}*t^{e} + ")?;
        }
        write!(f, "O(t^{})", self.order)
    }
}
