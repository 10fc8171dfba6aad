use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::{int, Rational};
use crate::series::TruncatedSeries;

/// Parameters of the curve `x(z) = -z + a ln z`, `y(z) = z^b`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CurveParams {
    a: Rational,
    b: i64,
}

impl CurveParams {
    pub fn new(a: Rational, b: i64) -> Result<Self> {
        if a.is_zero() || b == 0 {
            return Err(Error::Domain(format!("curve needs a != 0 and b != 0, got a = {a}, b = {b}")));
        }
        Ok(CurveParams { a, b })
    }

    /// The specialization `(a, b) = (-1, 2)`.
    pub fn principal() -> Self {
        CurveParams { a: int(-1), b: 2 }
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> i64 {
        self.b
    }

    pub fn is_principal(&self) -> bool {
        *self == CurveParams::principal()
    }
}

impl fmt::Debug for CurveParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "S[{}, {}]", self.a, self.b)
    }
}

/// `log(1 + c t)` to the given order.
fn log1p_scaled(c: &Rational, order: i64) -> TruncatedSeries {
    let mut coeffs = vec![Rational::zero()];
    let mut p = c.clone();
    for k in 1..order.max(1) {
        let term = &p / int(k);
        coeffs.push(if k % 2 == 1 { term } else { -term });
        p *= c;
    }
    TruncatedSeries::new(0, coeffs, order)
}

/// `x(a + t) - x(a) = -t + a log(1 + t/a)`, valuation two.
pub fn x_local_series(params: &CurveParams, order: i64) -> Result<TruncatedSeries> {
    if order < 3 {
        return Err(Error::Domain(format!("x_local_series needs order >= 3, got {order}")));
    }
    let a = params.a();
    let l = log1p_scaled(&a.recip(), order).scale(a);
    Ok(l.sub(&TruncatedSeries::var(order)))
}

/// `y(a + t) = (a + t)^b` as a series in `t`.
pub fn y_local_series(params: &CurveParams, order: i64) -> Result<TruncatedSeries> {
    let a = params.a();
    let base = TruncatedSeries::new(0, vec![int(1), a.recip()], order);
    let p = if params.b() >= 0 {
        base.powi(params.b() as u32)
    } else {
        base.powi(params.b().unsigned_abs() as u32).inv()?
    };
    Ok(p.scale(&crate::exact::pow(a, params.b())?).truncate(order))
}

/// `dx/dt` at `z = a + t`, which is `-t / (a + t)`.
pub fn dx_series(params: &CurveParams, order: i64) -> Result<TruncatedSeries> {
    let denom = TruncatedSeries::new(0, vec![params.a().clone(), int(1)], order);
    TruncatedSeries::monomial(int(-1), 1, order).div(&denom).map(|s| s.truncate(order))
}

/// Normalizing coordinate `w(t)` with `w^2 = -2a (x(a+t) - x(a))` and `w = t + O(t^2)`.
fn local_square_root(params: &CurveParams, order: i64) -> Result<TruncatedSeries> {
    let x = x_local_series(params, order + 1)?;
    x.scale(&(params.a() * int(-2))).sqrt()
}

/// The nontrivial deck involution `sigma(t)` with `x(a + sigma(t)) = x(a + t)`,
/// known to `order`.
pub fn involution(params: &CurveParams, order: i64) -> Result<TruncatedSeries> {
    if order < 2 {
        return Err(Error::Domain(format!("involution needs order >= 2, got {order}")));
    }
    let w = local_square_root(params, order)?;
    let winv = w.reversion()?;
    winv.compose(&w.neg())
}

/// `sigma_hat(t)`, the involution of the principal curve, solving
/// `t + ln(1 - t) = s + ln(1 - s)` with `s = -t + O(t^2)`.
pub fn sigma_hat_series(order: i64) -> Result<TruncatedSeries> {
    involution(&CurveParams::principal(), order)
}

/// `x(a + sigma(t)) - x(a + t)`, zero to the known order when `sigma` is right.
pub fn involution_defect(params: &CurveParams, sigma: &TruncatedSeries) -> Result<TruncatedSeries> {
    let x = x_local_series(params, sigma.order() + 1)?;
    let diff = x.compose(sigma)?.sub(&x);
    Ok(diff)
}

/// `-1/a`, needed as a square for the local coordinate route.
pub fn minus_inverse_a(params: &CurveParams) -> Rational {
    -params.a().recip()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn sigma_hat_low_terms() {
        let s = sigma_hat_series(12).unwrap();
        let expect = [
            (1, rat(-1, 1)),
            (2, rat(-2, 3)),
            (3, rat(-4, 9)),
            (4, rat(-44, 135)),
            (5, rat(-104, 405)),
            (6, rat(-40, 189)),
            (7, rat(-7648, 42525)),
            (8, rat(-2848, 18225)),
            (9, rat(-31712, 229635)),
        ];
        for (e, c) in expect {
            assert_eq!(s.coeff(e).unwrap(), c, "t^{e}");
        }
        assert!(s.coeff(12).is_err());
    }

    #[test]
    fn x_local_principal() {
        let x = x_local_series(&CurveParams::principal(), 6).unwrap();
        assert_eq!(x, TruncatedSeries::new(2, vec![rat(1, 2), rat(1, 3), rat(1, 4), rat(1, 5)], 6));
    }

    #[test]
    fn x_local_general_second_order() {
        let p = CurveParams::new(rat(-4, 1), 3).unwrap();
        let x = x_local_series(&p, 5).unwrap();
        assert_eq!(x.coeff(2).unwrap(), rat(1, 8));
        assert_eq!(x.coeff(1).unwrap(), int(0));
    }

    #[test]
    fn involution_is_x_invariant() {
        for a in [rat(-4, 1), rat(3, 2), rat(-1, 1)] {
            let p = CurveParams::new(a, 2).unwrap();
            let s = involution(&p, 16).unwrap();
            assert!(involution_defect(&p, &s).unwrap().is_zero());
            assert_eq!(s.compose(&s).unwrap(), TruncatedSeries::var(s.order()));
        }
    }

    #[test]
    fn rejects_degenerate_params() {
        assert!(CurveParams::new(int(0), 2).is_err());
        assert!(CurveParams::new(int(1), 0).is_err());
    }
}
