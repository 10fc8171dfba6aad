//! Segre numbers and Masur-Veech volumes of the principal strata.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::exact::{double_factorial, factorial, gamma_k, int, sign, PiScalar, Rational};
use crate::spectral::{f_g0, f_table};

use super::hodge::pq_polynomials;

pub(crate) fn fact(n: i64) -> Result<Rational> {
    if n < 0 {
        return Err(Error::Domain(format!("factorial of negative {n}")));
    }
    Ok(Rational::from_integer(factorial(n as u64)))
}

pub(crate) fn pow2(e: i64) -> Rational {
    if e >= 0 {
        Rational::from_integer(BigInt::from(1) << e as usize)
    } else {
        Rational::new(BigInt::from(1), BigInt::from(1) << (-e) as usize)
    }
}

/// Rejects `(g, n)` outside the principal strata: unstable, empty, or without zeros.
pub fn check_stratum(g: u32, n: u32) -> Result<()> {
    if (g, n) == (1, 0) || (g, n) == (1, 1) {
        return Err(Error::EmptyStratum { g, n });
    }
    if n == 0 && g < 2 {
        return Err(Error::Domain(format!("n = 0 needs g >= 2, got g = {g}")));
    }
    if 4 * g as i64 - 4 + (n as i64) < 0 {
        return Err(Error::Domain(format!("no principal stratum for (g, n) = ({g}, {n}): needs 4g - 4 + n >= 0")));
    }
    Ok(())
}

/// `s_{g,n} = int s_{3g-3+n}(Q_{g,n}) = 2^{2g-2+n} F_{g,n}[0, ..., 0]`.
pub fn segre_number(g: u32, n: u32) -> Result<Rational> {
    let f0 = if n == 0 { f_g0(g)? } else { f_table(g, n)?.zero_entry() };
    Ok(pow2(2 * g as i64 - 2 + n as i64) * f0)
}

/// Volume of `Q_{g, 4g-4+2n}(1^{4g-4+n}, -1^n)`, a positive rational times `pi^{6g-6+2n}`.
pub fn volume_principal(g: u32, n: u32) -> Result<PiScalar> {
    check_stratum(g, n)?;
    let (gi, ni) = (g as i64, n as i64);
    let e = 6 * gi - 6 + 2 * ni;
    let c = if n == 0 {
        let f = f_table(g, 1)?;
        int(3) * pow2(4 * gi) * sign(3 * gi - 3) * fact(4 * gi - 4)? / fact(6 * gi - 6)? * (f.get(&[1]) + f.get(&[2]))
    } else {
        let f0 = f_table(g, n)?.zero_entry();
        pow2(4 * gi - 1 + ni) * sign(3 * gi - 3 + ni) * fact(4 * gi - 4 + ni)? / fact(6 * gi - 7 + 2 * ni)? * f0
    };
    Ok(PiScalar::new(c, e))
}

/// `pi^{2n} n! / (3 (2n-1)!) ((2n-3)!! + (2n-2)!!)`, the genus-one closed form.
pub fn volume_g1_closed(n: u32) -> Result<PiScalar> {
    if n < 2 {
        return Err(Error::EmptyStratum { g: 1, n });
    }
    let n = n as i64;
    let c = fact(n)? / (int(3) * fact(2 * n - 1)?) * (double_factorial(2 * n - 3)? + double_factorial(2 * n - 2)?);
    Ok(PiScalar::new(c, 2 * n))
}

/// `v(g,n) = vol / (2^n pi^{6g-6+2n}) (6g-7+2n)! / ((2g-3+n)! (4g-4+n)!)`.
pub fn v_norm(g: u32, n: u32) -> Result<Rational> {
    let vol = volume_principal(g, n)?;
    normalize_volume(g, n, vol.coefficient())
}

pub(crate) fn normalize_volume(g: u32, n: u32, coeff: &Rational) -> Result<Rational> {
    let (gi, ni) = (g as i64, n as i64);
    Ok(coeff / pow2(ni) * fact(6 * gi - 7 + 2 * ni)? / (fact(2 * gi - 3 + ni)? * fact(4 * gi - 4 + ni)?))
}

/// The volume rebuilt from the fixed-genus polynomials, `v(g,n) = p_g(n) + gamma_{2g-3+n} q_g(n)`.
pub fn volume_via_pq(g: u32, n: u32) -> Result<PiScalar> {
    check_stratum(g, n)?;
    let (gi, ni) = (g as i64, n as i64);
    let pq = pq_polynomials(g)?;
    let x = int(ni);
    let v = pq.p.eval(&x) + gamma_k(2 * gi - 3 + ni)? * pq.q.eval(&x);
    let c = pow2(ni) * fact(2 * gi - 3 + ni)? * fact(4 * gi - 4 + ni)? / fact(6 * gi - 7 + 2 * ni)? * v;
    Ok(PiScalar::new(c, 6 * gi - 6 + 2 * ni))
}
