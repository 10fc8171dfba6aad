//! Hodge integrals `kappa(g,i)`, `theta(g,i)` recovered from volumes and
//! Lyapunov sums, and the fixed-genus polynomials built from them.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::{double_factorial, gamma_k, int, sign, Rational};

use super::linalg::solve_exact;
use super::poly::RationalPolynomial;
use super::siegel::{carea_lplus_g1_closed, lplus_principal};
use super::volume::{fact, normalize_volume, pow2, segre_number, v_norm, volume_g1_closed};

/// `kappa(g,i) = int psi_1^2 ... psi_{2g-3+i}^2 lambda_{g-i}` and
/// `theta(g,i) = int psi_1^2 ... psi_{2g-4+i}^2 lambda_{g-i} lambda_1`, with their
/// primed rescalings. Either half may be left empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HodgeConstants {
    pub g: u32,
    pub kappa: Vec<Rational>,
    pub kappa_prime: Vec<Rational>,
    pub theta: Vec<Rational>,
    pub theta_prime: Vec<Rational>,
}

/// `v(g,n) = p_g(n) + gamma_{2g-3+n} q_g(n)`, with `2^{6g-7} m_g` the top coefficient
/// of `q_g` (g even) or `p_g` (g odd).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VolumePolynomials {
    pub g: u32,
    pub p: RationalPolynomial,
    pub q: RationalPolynomial,
    pub m_g: Rational,
}

/// `u(g,n) = r_g(n) + gamma_{2g-3+n} s_g(n)`, with `2^{6g-7} n_g` the top coefficient
/// of `r_g` (g even) or `s_g` (g odd).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LyapunovPolynomials {
    pub g: u32,
    pub r: RationalPolynomial,
    pub s: RationalPolynomial,
    pub n_g: Rational,
}

fn need_genus_two(g: u32, what: &str) -> Result<()> {
    if g < 2 {
        return Err(Error::Domain(format!("{what} needs g >= 2, got {g}")));
    }
    Ok(())
}

fn df_ratio(top: i64, bottom: i64) -> Result<Rational> {
    Ok(double_factorial(top)? / double_factorial(bottom)?)
}

/// Solves `2^{2-4g} v(g,n) = sum_i kappa(g,i)' (a+i-1)!!/a!!`, `a = 4g-6+2n`, over `n = 0..=g`.
pub fn kappa_prime_extract(g: u32) -> Result<HodgeConstants> {
    need_genus_two(g, "kappa extraction")?;
    let gi = g as i64;
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for n in 0..=gi {
        let a = 4 * gi - 6 + 2 * n;
        rows.push((0..=gi).map(|i| df_ratio(a + i - 1, a)).collect::<Result<Vec<_>>>()?);
        rhs.push(pow2(2 - 4 * gi) * v_norm(g, n as u32)?);
    }
    let kappa_prime = solve_exact(&rows, &rhs).map_err(fatal)?;
    let kappa = kappa_prime
        .iter()
        .enumerate()
        .map(|(i, k)| Ok(k * fact(2 * gi - 3 + i as i64)? * double_factorial(4 * gi - 7 + i as i64)?))
        .collect::<Result<Vec<_>>>()?;
    Ok(HodgeConstants { g, kappa, kappa_prime, theta: Vec::new(), theta_prime: Vec::new() })
}

fn fatal(e: Error) -> Error {
    match e {
        Error::Singular => Error::Inconsistency("extraction system is singular".into()),
        e => e,
    }
}

/// `u(g,n) = (-1)^{3g-4+n} 2^{4g-2} / (4g-8+2n)!! int s_{3g-4+n}(Q_{g,n}) lambda_1`,
/// where the integral equals `-L+ s_{g,n} / 2`.
pub fn u_norm(g: u32, n: u32) -> Result<Rational> {
    need_genus_two(g, "u(g,n)")?;
    let (gi, ni) = (g as i64, n as i64);
    let integral = -lplus_principal(g, n)? * segre_number(g, n)? / int(2);
    Ok(sign(3 * gi - 4 + ni) * pow2(4 * gi - 2) / double_factorial(4 * gi - 8 + 2 * ni)? * integral)
}

/// Solves `2^{2-4g} u(g,n) = sum_i theta(g,i)' (b+i)!!/b!!`, `b = 4g-8+2n`, over `n = 0..=g`.
pub fn theta_prime_extract(g: u32) -> Result<HodgeConstants> {
    need_genus_two(g, "theta extraction")?;
    let gi = g as i64;
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for n in 0..=gi {
        let b = 4 * gi - 8 + 2 * n;
        rows.push((0..=gi).map(|i| df_ratio(b + i, b)).collect::<Result<Vec<_>>>()?);
        rhs.push(pow2(2 - 4 * gi) * u_norm(g, n as u32)?);
    }
    let theta_prime = solve_exact(&rows, &rhs).map_err(fatal)?;
    let theta = theta_prime
        .iter()
        .enumerate()
        .map(|(i, t)| Ok(t * fact(2 * gi - 4 + i as i64)? * double_factorial(4 * gi - 8 + i as i64)?))
        .collect::<Result<Vec<_>>>()?;
    Ok(HodgeConstants { g, kappa: Vec::new(), kappa_prime: Vec::new(), theta, theta_prime })
}

/// Both extractions together.
pub fn hodge_constants(g: u32) -> Result<HodgeConstants> {
    let k = kappa_prime_extract(g)?;
    let t = theta_prime_extract(g)?;
    Ok(HodgeConstants { theta: t.theta, theta_prime: t.theta_prime, ..k })
}

fn check_degree(name: &str, g: u32, p: &RationalPolynomial, want: usize) -> Result<()> {
    if p.degree() != Some(want) {
        return Err(Error::Inconsistency(format!("deg {name}_{g} = {:?}, expected {want}", p.degree())));
    }
    Ok(())
}

/// `sum c_i (base + 2n + 2i)!! / (base + 2n)!!` over the listed `(c_i, i)`.
fn ratio_sum(terms: impl Iterator<Item = (Rational, usize)>, base: i64) -> RationalPolynomial {
    terms.fold(RationalPolynomial::zero(), |acc, (c, i)| {
        acc.add(&RationalPolynomial::double_factorial_ratio(base, i).scale(&c))
    })
}

fn memo<T: Send + Sync + 'static>(
    cell: &'static OnceLock<Mutex<HashMap<u32, Arc<T>>>>,
    g: u32,
    f: impl FnOnce() -> Result<T>,
) -> Result<Arc<T>> {
    let m = cell.get_or_init(Default::default);
    if let Some(v) = m.lock().unwrap().get(&g) {
        return Ok(v.clone());
    }
    let v = Arc::new(f()?);
    m.lock().unwrap().insert(g, v.clone());
    Ok(v)
}

/// `p_g`, `q_g`, `m_g`. Genus one is fitted to the closed-form volumes; higher
/// genus comes from the `kappa` extraction.
pub fn pq_polynomials(g: u32) -> Result<Arc<VolumePolynomials>> {
    static MEMO: OnceLock<Mutex<HashMap<u32, Arc<VolumePolynomials>>>> = OnceLock::new();
    memo(&MEMO, g, || if g == 1 { genus_one_pq() } else { pq_from_kappa(g) })
}

fn pq_from_kappa(g: u32) -> Result<VolumePolynomials> {
    need_genus_two(g, "pq_polynomials")?;
    let gi = g as i64;
    let kp = kappa_prime_extract(g)?.kappa_prime;
    let w = pow2(4 * gi - 2);
    let p = ratio_sum((0..=(g as usize - 1) / 2).map(|i| (&w * &kp[2 * i + 1], i)), 4 * gi - 6);
    let q = ratio_sum((0..=g as usize / 2).map(|i| (&w * &kp[2 * i], i)), 4 * gi - 7);
    check_degree("p", g, &p, (g as usize - 1) / 2)?;
    check_degree("q", g, &q, g as usize / 2)?;
    let top = if g.is_multiple_of(2) { q.leading() } else { p.leading() };
    Ok(VolumePolynomials { g, p, q, m_g: top / pow2(6 * gi - 7) })
}

/// `r_g`, `s_g`, `n_g`. Genus one is fitted to the closed-form Lyapunov sums;
/// higher genus comes from the `theta` extraction.
pub fn rs_polynomials(g: u32) -> Result<Arc<LyapunovPolynomials>> {
    static MEMO: OnceLock<Mutex<HashMap<u32, Arc<LyapunovPolynomials>>>> = OnceLock::new();
    memo(&MEMO, g, || if g == 1 { genus_one_rs() } else { rs_from_theta(g) })
}

fn rs_from_theta(g: u32) -> Result<LyapunovPolynomials> {
    need_genus_two(g, "rs_polynomials")?;
    let gi = g as i64;
    let tp = theta_prime_extract(g)?.theta_prime;
    let w = pow2(4 * gi - 2);
    let r = ratio_sum((0..=g as usize / 2).map(|i| (&w * &tp[2 * i], i)), 4 * gi - 8);
    let s = ratio_sum((0..=(g as usize - 1) / 2).map(|i| (&w * &tp[2 * i + 1], i)), 4 * gi - 7)
        .mul(&RationalPolynomial::linear(int(4 * gi - 6), int(2)));
    check_degree("r", g, &r, g as usize / 2)?;
    check_degree("s", g, &s, (g as usize).div_ceil(2))?;
    let top = if g.is_multiple_of(2) { r.leading() } else { s.leading() };
    Ok(LyapunovPolynomials { g, r, s, n_g: top / pow2(6 * gi - 7) })
}

/// Fits `value(n) = a(n) + gamma_{n-1} b(n)` with `deg a = da`, `deg b = db` on
/// `n = 2, 3, ...` and verifies the fit on the next `extra` values.
fn fit_genus_one(
    da: usize,
    db: usize,
    extra: u32,
    value: impl Fn(u32) -> Result<Rational>,
) -> Result<(RationalPolynomial, RationalPolynomial)> {
    let unknowns = da + db + 2;
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for n in 2..2 + unknowns as u32 {
        let x = int(n as i64);
        let gam = gamma_k(n as i64 - 1)?;
        let mut row: Vec<Rational> = (0..=da).map(|k| pow_int(&x, k)).collect();
        row.extend((0..=db).map(|k| &gam * pow_int(&x, k)));
        rows.push(row);
        rhs.push(value(n)?);
    }
    let sol = solve_exact(&rows, &rhs).map_err(fatal)?;
    let a = RationalPolynomial::new(sol[..=da].to_vec());
    let b = RationalPolynomial::new(sol[da + 1..].to_vec());
    for n in 2 + unknowns as u32..2 + unknowns as u32 + extra {
        let x = int(n as i64);
        if a.eval(&x) + gamma_k(n as i64 - 1)? * b.eval(&x) != value(n)? {
            return Err(Error::Inconsistency(format!("genus-one fit fails at n = {n}")));
        }
    }
    Ok((a, b))
}

fn pow_int(x: &Rational, k: usize) -> Rational {
    (0..k).fold(int(1), |acc, _| acc * x)
}

fn genus_one_pq() -> Result<VolumePolynomials> {
    let (p, q) = fit_genus_one(0, 0, 6, |n| normalize_volume(1, n, volume_g1_closed(n)?.coefficient()))?;
    let m_g = p.leading() / pow2(-1);
    Ok(VolumePolynomials { g: 1, p, q, m_g })
}

/// Genus one has no `theta` extraction; `u(1,n)` is defined through
/// `L+ = (r + gamma s) / ((n - 1)(p + gamma q))` with the closed forms.
fn genus_one_rs() -> Result<LyapunovPolynomials> {
    let pq = genus_one_pq()?;
    let u = |n: u32| -> Result<Rational> {
        let x = int(n as i64);
        let v = pq.p.eval(&x) + gamma_k(n as i64 - 1)? * pq.q.eval(&x);
        Ok(int(n as i64 - 1) * v * carea_lplus_g1_closed(n)?.1)
    };
    let (r, s) = fit_genus_one(0, 1, 6, u)?;
    let n_g = s.leading() / pow2(-1);
    Ok(LyapunovPolynomials { g: 1, r, s, n_g })
}

/// `(r + gamma s) / ((2g-3+n)(p + gamma q))`, the Lyapunov sum from the polynomials.
pub fn lplus_via_rs(g: u32, n: u32) -> Result<Rational> {
    let (pq, rs) = (pq_polynomials(g)?, rs_polynomials(g)?);
    let k = 2 * g as i64 - 3 + n as i64;
    if k <= 0 {
        return Err(Error::Domain(format!("2g - 3 + n must be positive, got {k}")));
    }
    let (x, gam) = (int(n as i64), gamma_k(k)?);
    let den = int(k) * (pq.p.eval(&x) + &gam * pq.q.eval(&x));
    if den.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok((rs.r.eval(&x) + gam * rs.s.eval(&x)) / den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn genus_two_kappa() {
        let h = kappa_prime_extract(2).unwrap();
        assert_eq!(h.kappa, vec![rat(7, 5760), rat(5, 576), rat(7, 240)]);
        for (i, (k, kp)) in h.kappa.iter().zip(&h.kappa_prime).enumerate() {
            let i = i as i64;
            assert_eq!(*kp, k / (fact(1 + i).unwrap() * double_factorial(1 + i).unwrap()));
        }
    }

    #[test]
    fn genus_two_polynomials() {
        let pq = pq_polynomials(2).unwrap();
        assert_eq!(pq.p, RationalPolynomial::constant(rat(5, 36)));
        assert_eq!(pq.q, RationalPolynomial::linear(rat(105, 270), rat(56, 270)));
        assert_eq!(pq.m_g, rat(7, 1080));
    }

    #[test]
    fn genus_one_fits() {
        let pq = pq_polynomials(1).unwrap();
        assert_eq!(pq.p, RationalPolynomial::constant(rat(1, 6)));
        assert_eq!(pq.q, RationalPolynomial::constant(rat(1, 6)));
        assert_eq!(pq.m_g, rat(1, 3));
        let rs = rs_polynomials(1).unwrap();
        assert!(rs.r.is_zero());
        assert_eq!(rs.s, RationalPolynomial::linear(rat(-1, 3), rat(1, 3)));
        assert_eq!(rs.n_g, rat(2, 3));
    }

    #[test]
    fn genus_two_u() {
        assert_eq!(u_norm(2, 0).unwrap(), rat(4, 9));
        assert!(u_norm(1, 3).is_err());
    }
}
