//! The `n = 0` numbers `F_{g,0}`.

use crate::error::{Error, Result};
use crate::exact::{int, Rational};
use crate::spectral::basis::f_table;
use crate::spectral::curve::{dx_series, y_local_series, CurveParams};
use crate::spectral::monomial::tr_amplitude;

/// `F_{g,0} = (F_{g,1}[1] + F_{g,1}[2]) / (g - 1)`, from the basis route.
pub fn f_g0(g: u32) -> Result<Rational> {
    if g < 2 {
        return Err(Error::Domain(format!("F_(g,0) needs g >= 2, got {g}")));
    }
    let f = f_table(g, 1)?;
    Ok((f.get(&[1]) + f.get(&[2])) / int(g as i64 - 1))
}

/// `F_{g,0} = Res_{t=0} Phi(t) W_{g,1}(t) / (2 - 2g)` with `Phi` the primitive of
/// `y dx` vanishing at the branch point, from the monomial amplitude.
pub fn f_g0_residue(g: u32) -> Result<Rational> {
    if g < 2 {
        return Err(Error::Domain(format!("F_(g,0) needs g >= 2, got {g}")));
    }
    let w = tr_amplitude(g, 1)?;
    let order = w.max_pole() as i64 + 2;
    let p = CurveParams::principal();
    let phi = y_local_series(&p, order)?.mul(&dx_series(&p, order)?).integral()?;
    let mut res = Rational::from_integer(0.into());
    for (key, c) in w.terms() {
        res += c * phi.coeff(key[0] as i64 - 1)?;
    }
    Ok(res / int(2 - 2 * g as i64))
}
