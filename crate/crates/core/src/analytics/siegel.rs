//! Area Siegel-Veech constants and Lyapunov sums of the principal strata.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::{binomial, double_factorial, int, rat, PiScalar, Rational};

use super::volume::{check_stratum, segre_number};

/// `c_area = -N / (2 pi^2 s_{g,n})` from the boundary recursion
/// `N = s_{g-1,n+2}/2 + (1/2) sum C(n,n_1) s_{g_1,n_1+1} s_{g_2,n_2+1}`,
/// the sum running over stable splittings only.
pub fn carea_principal(g: u32, n: u32) -> Result<PiScalar> {
    check_stratum(g, n)?;
    let s = segre_number(g, n)?;
    if s.is_zero() {
        return Err(Error::Inconsistency(format!("vanishing Segre number at ({g}, {n})")));
    }
    let mut num = Rational::zero();
    if g >= 1 {
        num += segre_number(g - 1, n + 2)?;
    }
    for g1 in 0..=g {
        for n1 in 0..=n {
            let (g2, n2) = (g - g1, n - n1);
            if (g1 == 0 && n1 < 2) || (g2 == 0 && n2 < 2) {
                continue;
            }
            let c = Rational::from_integer(binomial(n as i64, n1 as i64));
            num += c * segre_number(g1, n1 + 1)? * segre_number(g2, n2 + 1)?;
        }
    }
    num /= int(2);
    Ok(PiScalar::new(-num / (int(2) * s), -2))
}

/// `L+ = (5g - 5 - n)/18 + (pi^2/3) c_area`.
pub fn lplus_principal(g: u32, n: u32) -> Result<Rational> {
    let c = carea_principal(g, n)?;
    Ok(rat(5 * g as i64 - 5 - n as i64, 18) + c.coefficient() / int(3))
}

/// Genus-one closed forms `c_area = (n/6 + 6/(1 + R)) / pi^2` and `L+ = 2/(1 + R)`
/// with `R = (2n-2)!!/(2n-3)!!`.
pub fn carea_lplus_g1_closed(n: u32) -> Result<(PiScalar, Rational)> {
    if n < 2 {
        return Err(Error::EmptyStratum { g: 1, n });
    }
    let n = n as i64;
    let r = double_factorial(2 * n - 2)? / double_factorial(2 * n - 3)?;
    let one_plus = int(1) + r;
    let c = rat(n, 6) + int(6) / &one_plus;
    Ok((PiScalar::new(c, -2), int(2) / one_plus))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(carea_principal(1, 2).unwrap(), PiScalar::new(rat(7, 3), -2));
        assert_eq!(carea_principal(2, 0).unwrap(), PiScalar::new(rat(19, 6), -2));
        assert_eq!(carea_principal(0, 5).unwrap(), PiScalar::new(rat(5, 3), -2));
        assert_eq!(lplus_principal(1, 2).unwrap(), rat(2, 3));
        assert_eq!(lplus_principal(2, 0).unwrap(), rat(4, 3));
    }

    #[test]
    fn genus_one_closed() {
        let (c, l) = carea_lplus_g1_closed(2).unwrap();
        assert_eq!(c, PiScalar::new(rat(7, 3), -2));
        assert_eq!(l, rat(2, 3));
        assert_eq!(carea_lplus_g1_closed(3).unwrap().1, rat(6, 11));
        assert!(carea_lplus_g1_closed(1).is_err());
    }
}
