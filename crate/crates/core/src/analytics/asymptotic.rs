//! Large-`n` behaviour at fixed genus, evaluated in log space.

use std::f64::consts::{LN_2, PI};

use statrs::function::gamma::ln_gamma;

use crate::error::{Error, Result};
use crate::exact::{to_f64, Rational};

use super::hodge::{pq_polynomials, rs_polynomials};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AsymptoticMode {
    Volume,
    Lplus,
}

/// Leading behaviour `C * 2^{two_power} * pi^{pi_power_x2 / 2} * n^{n_power_x2 / 2}`
/// next to the value it approximates. Values are kept as logarithms because the
/// volumes leave the `f64` range for `n` in the hundreds.
#[derive(Debug, Clone, PartialEq)]
pub struct Asymptotic {
    pub g: u32,
    pub n: u32,
    pub mode: AsymptoticMode,
    /// `m_g` for volumes, `n_g / m_g` for `L+`.
    pub constant: Rational,
    pub two_power: i64,
    pub pi_power_x2: i64,
    pub n_power_x2: i64,
    pub ln_estimate: f64,
    /// Log of the value from the exact fixed-genus formula.
    pub ln_value: f64,
}

impl Asymptotic {
    /// value / estimate.
    pub fn ratio(&self) -> f64 {
        (self.ln_value - self.ln_estimate).exp()
    }

    pub fn estimate(&self) -> f64 {
        self.ln_estimate.exp()
    }

    pub fn value(&self) -> f64 {
        self.ln_value.exp()
    }
}

/// `ln gamma_k = ln((2k)!) - 2 ln(k!) - 2k ln 2`.
pub fn ln_gamma_k(k: f64) -> f64 {
    ln_gamma(2.0 * k + 1.0) - 2.0 * ln_gamma(k + 1.0) - 2.0 * k * LN_2
}

fn ln_rational(x: &Rational) -> Result<f64> {
    let v = to_f64(x);
    if v <= 0.0 {
        return Err(Error::Inconsistency(format!("expected a positive constant, got {x}")));
    }
    Ok(v.ln())
}

/// Volume mode: `2^{-n} pi^{6g-6+2n+eps/2} m_g n^{g/2}` against the fixed-genus
/// volume formula. L+ mode: `pi^{1/2-eps} (n_g/m_g) / sqrt(n)` against
/// `(r + gamma s) / ((2g-3+n)(p + gamma q))`. Here `eps` is the parity of `g`.
pub fn asymptotics(g: u32, n: u32, mode: AsymptoticMode) -> Result<Asymptotic> {
    if g < 1 || n < 1 {
        return Err(Error::Domain(format!("asymptotics need g >= 1 and n >= 1, got ({g}, {n})")));
    }
    if 2 * g as i64 - 3 + (n as i64) < 1 {
        return Err(Error::Domain(format!("asymptotics need 2g - 3 + n >= 1, got ({g}, {n})")));
    }
    let pq = pq_polynomials(g)?;
    let eps = (g % 2) as i64;
    let (gf, nf) = (g as f64, n as f64);
    let k = 2.0 * gf - 3.0 + nf;
    let gam = ln_gamma_k(k).exp();
    let pq_val = pq.p.eval_f64(nf) + gam * pq.q.eval_f64(nf);
    if pq_val <= 0.0 {
        return Err(Error::Inconsistency(format!("non-positive p + gamma q at ({g}, {n})")));
    }
    match mode {
        AsymptoticMode::Volume => {
            let pi_power_x2 = 2 * (6 * g as i64 - 6 + 2 * n as i64) + eps;
            let ln_estimate = -nf * LN_2 + pi_power_x2 as f64 / 2.0 * PI.ln() + ln_rational(&pq.m_g)? + gf / 2.0 * nf.ln();
            let ln_value = nf * LN_2 + (6.0 * gf - 6.0 + 2.0 * nf) * PI.ln() + ln_gamma(k + 1.0)
                + ln_gamma(4.0 * gf - 3.0 + nf)
                - ln_gamma(6.0 * gf - 6.0 + 2.0 * nf)
                + pq_val.ln();
            Ok(Asymptotic {
                g,
                n,
                mode,
                constant: pq.m_g.clone(),
                two_power: -(n as i64),
                pi_power_x2,
                n_power_x2: g as i64,
                ln_estimate,
                ln_value,
            })
        }
        AsymptoticMode::Lplus => {
            let rs = rs_polynomials(g)?;
            let constant = &rs.n_g / &pq.m_g;
            let pi_power_x2 = 1 - 2 * eps;
            let ln_estimate = pi_power_x2 as f64 / 2.0 * PI.ln() + ln_rational(&constant)? - nf.ln() / 2.0;
            let rs_val = rs.r.eval_f64(nf) + gam * rs.s.eval_f64(nf);
            let l = rs_val / (k * pq_val);
            if l <= 0.0 {
                return Err(Error::Inconsistency(format!("non-positive L+ at ({g}, {n})")));
            }
            Ok(Asymptotic {
                g,
                n,
                mode,
                constant,
                two_power: 0,
                pi_power_x2,
                n_power_x2: -1,
                ln_estimate,
                ln_value: l.ln(),
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{gamma_k, rat};

    #[test]
    fn ln_gamma_matches_exact() {
        for k in [1, 5, 40] {
            let exact = to_f64(&gamma_k(k).unwrap());
            assert!((ln_gamma_k(k as f64).exp() / exact - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn genus_one_lplus_limit() {
        let a = asymptotics(1, 300, AsymptoticMode::Lplus).unwrap();
        assert_eq!(a.constant, rat(2, 1));
        assert!((a.ratio() - 1.0).abs() < 0.05, "{}", a.ratio());
    }

    #[test]
    fn rejects_bad_input() {
        assert!(asymptotics(0, 5, AsymptoticMode::Volume).is_err());
        assert!(asymptotics(1, 0, AsymptoticMode::Volume).is_err());
    }
}
