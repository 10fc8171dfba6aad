//! The coefficients `t_d`, `r_d` of the Laplace transforms `T(u)`, `R(u)` at the
//! branch point, by a closed Bernoulli formula and by local expansion.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::{bernoulli_number, bernoulli_polynomial, double_factorial, int, pow, sqrt_exact, Rational};
use crate::series::TruncatedSeries;
use crate::spectral::curve::{x_local_series, y_local_series, CurveParams};

/// `T(u) = T(0) exp(-sum_{d>=1} t_d u^d)` and `R(u) = exp(sum_{d>=1} r_d u^d)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrCoefficients {
    /// `t_1, ..., t_{d_max}`.
    pub t: Vec<Rational>,
    /// `r_1, ..., r_{d_max}`.
    pub r: Vec<Rational>,
    /// `T(0)^2 = e^{-2 t_0}`, which is rational even when `e^{t_0}` is not.
    pub t0_squared: Rational,
    /// The pair `(b, a)` with `e^{t_0} = -i b^{-1} a^{1/2 - b}`.
    pub t0_data: (i64, Rational),
}

/// Closed forms `t_d = (-1)^{d+1} B_{d+1}(1-b) / (d(d+1) a^d)` and
/// `r_d = -B_{d+1} / (d(d+1) a^d)`.
pub fn tr_coefficients_closed(params: &CurveParams, d_max: usize) -> Result<TrCoefficients> {
    if d_max < 1 {
        return Err(Error::Domain("d_max must be at least 1".into()));
    }
    let a = params.a();
    let one_minus_b = int(1 - params.b());
    let mut t = Vec::with_capacity(d_max);
    let mut r = Vec::with_capacity(d_max);
    for d in 1..=d_max {
        let den = int((d * (d + 1)) as i64) * pow(a, d as i64)?;
        let sign = if d % 2 == 1 { int(1) } else { int(-1) };
        t.push(sign * bernoulli_polynomial(d + 1, &one_minus_b) / &den);
        r.push(-bernoulli_number(d + 1) / den);
    }
    let b = params.b();
    let t0_squared = -int(b * b) * pow(a, 2 * b - 1)?;
    Ok(TrCoefficients { t, r, t0_squared, t0_data: (b, a.clone()) })
}

/// `log(s / s(0))` coefficients `1..=d_max` of a series in `u`.
fn log_coefficients(s: &TruncatedSeries, d_max: usize) -> Result<Vec<Rational>> {
    let c0 = s.coeff(0)?;
    if c0.is_zero() {
        return Err(Error::Inconsistency("series with vanishing constant term".into()));
    }
    let l = s.scale(&c0.recip()).log()?;
    (1..=d_max).map(|d| l.coeff(d as i64)).collect()
}

/// The same coefficients from the expansion of `y` and `xi_0` in the
/// coordinate `zeta = sqrt(2(x(z) - x(a)))`. Needs `-1/a` to be a rational square.
pub fn tr_coefficients_local(params: &CurveParams, d_max: usize) -> Result<TrCoefficients> {
    if d_max < 1 {
        return Err(Error::Domain("d_max must be at least 1".into()));
    }
    let s = sqrt_exact(&-params.a().recip()).ok_or_else(|| {
        Error::Domain(format!("-1/a = {} is not a rational square; local coordinate unavailable", -params.a().recip()))
    })?;
    let order = 2 * d_max as i64 + 6;
    let zeta = x_local_series(params, order + 1)?.scale(&int(2)).sqrt()?;
    let t_of_zeta = zeta.reversion()?;
    let y = y_local_series(params, order)?.compose(&t_of_zeta)?;

    // xi_0 = dt / (s t^2), rewritten in zeta, minus its double pole.
    let xi0 = t_of_zeta.derivative().div(&t_of_zeta.mul(&t_of_zeta))?.scale(&s.recip());
    let xi0_reg = xi0.sub(&TruncatedSeries::monomial(int(1), -2, xi0.order()));
    if !xi0_reg.coeff(-2)?.is_zero() || !xi0_reg.coeff(-1)?.is_zero() {
        return Err(Error::Inconsistency("xi_0 has an unexpected polar part".into()));
    }

    let mut tu = Vec::with_capacity(d_max + 1);
    for d in 0..=d_max {
        tu.push(-(double_factorial(2 * d as i64 + 1)? * y.coeff(2 * d as i64 + 1)?));
    }
    let t0 = tu[0].clone();
    let tser = TruncatedSeries::new(0, tu, d_max as i64 + 1);

    // The contour integral of zeta^{2k} against the Gaussian weight is -(2k-1)!! u^k.
    let mut ru = vec![int(1)];
    for d in 0..d_max {
        ru.push(-(double_factorial(2 * d as i64 - 1)? * xi0_reg.coeff(2 * d as i64)?));
    }
    let rser = TruncatedSeries::new(0, ru, d_max as i64 + 1);

    let t = log_coefficients(&tser, d_max)?.into_iter().map(|c| -c).collect();
    let r = log_coefficients(&rser, d_max)?;
    Ok(TrCoefficients { t, r, t0_squared: &t0 * &t0, t0_data: (params.b(), params.a().clone()) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn even_r_vanish() {
        let c = tr_coefficients_closed(&CurveParams::principal(), 9).unwrap();
        for d in (2..=9).step_by(2) {
            assert!(c.r[d - 1].is_zero());
        }
        assert_eq!(c.r[0], rat(1, 12));
    }

    #[test]
    fn routes_agree_principal() {
        let p = CurveParams::principal();
        assert_eq!(tr_coefficients_closed(&p, 10).unwrap(), tr_coefficients_local(&p, 10).unwrap());
    }

    #[test]
    fn routes_agree_rescaled() {
        let p = CurveParams::new(rat(-4, 1), 3).unwrap();
        assert_eq!(tr_coefficients_closed(&p, 8).unwrap(), tr_coefficients_local(&p, 8).unwrap());
        let p = CurveParams::new(rat(-1, 9), -2).unwrap();
        assert_eq!(tr_coefficients_closed(&p, 6).unwrap(), tr_coefficients_local(&p, 6).unwrap());
    }

    #[test]
    fn local_route_needs_square() {
        let p = CurveParams::new(rat(-2, 1), 2).unwrap();
        assert!(tr_coefficients_local(&p, 3).is_err());
        assert!(tr_coefficients_closed(&p, 3).is_ok());
    }
}
