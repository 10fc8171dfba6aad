//! The recursion carried out literally on monomials in `1/t_i`.
//!
//! This is the reference route: it builds `W_{g,n}` term by term from the
//! kernel expansion and is used for the base cases, for the general curve
//! family and to cross-check the basis route.

use std::collections::HashMap;
use std::sync::atomic::{AtomicI64, Ordering};
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::{int, Rational};
use crate::series::{Amplitude, LaurentPoly, TruncatedSeries};
use crate::spectral::curve::CurveParams;
use crate::spectral::ftable::FTable;
use crate::spectral::kernel::{kernel_data, KernelData};
use crate::spectral::xi::decompose_on_xi;

static MARGIN: AtomicI64 = AtomicI64::new(0);

/// Extra series order added on top of the default working order.
pub fn set_truncation_margin(margin: i64) {
    MARGIN.store(margin.max(0), Ordering::Relaxed);
}

pub fn truncation_margin() -> i64 {
    MARGIN.load(Ordering::Relaxed)
}

/// Default working order for `W_{g,n}`.
pub fn working_order(g: u32, n: u32) -> i64 {
    2 * (3 * g as i64 - 2 + n as i64) + 8 + truncation_margin()
}

pub(crate) fn check_stable(g: u32, n: u32) -> Result<()> {
    if 2 * g as i64 - 2 + n as i64 <= 0 {
        return Err(Error::Unstable { g, n });
    }
    Ok(())
}

type AmpKey = (CurveParams, i64, u32, u32);
type AmpMemo = Mutex<HashMap<AmpKey, Arc<OnceLock<Arc<Amplitude>>>>>;

fn amp_memo() -> &'static AmpMemo {
    static MEMO: OnceLock<AmpMemo> = OnceLock::new();
    MEMO.get_or_init(Default::default)
}

/// `W_{g,n}` of the principal curve, memoized.
pub fn tr_amplitude(g: u32, n: u32) -> Result<Arc<Amplitude>> {
    tr_amplitude_family(&CurveParams::principal(), g, n)
}

/// `W_{g,n}` of the curve with parameters `params`, memoized.
pub fn tr_amplitude_family(params: &CurveParams, g: u32, n: u32) -> Result<Arc<Amplitude>> {
    check_stable(g, n)?;
    if n == 0 {
        return Err(Error::Domain("amplitudes need n >= 1".into()));
    }
    let key = (params.clone(), truncation_margin(), g, n);
    let cell = amp_memo().lock().unwrap().entry(key).or_default().clone();
    if let Some(w) = cell.get() {
        return Ok(w.clone());
    }
    let w = Arc::new(tr_amplitude_at_order(params, g, n, working_order(g, n))?);
    Ok(cell.get_or_init(|| w).clone())
}

/// Accumulates brackets: rest-variable pole key to coefficients of `t^{-p}`.
struct Brackets {
    map: HashMap<Vec<u16>, Vec<Rational>>,
}

impl Brackets {
    /// Adds `c * t^shift * series`, keeping exponents `<= 0`.
    fn add(&mut self, key: Vec<u16>, series: &TruncatedSeries, shift: i64, c: &Rational) -> Result<()> {
        if series.order() + shift < 1 {
            return Err(Error::Truncation { exponent: -shift, order: series.order() });
        }
        let slot = self.map.entry(key).or_default();
        for (e, x) in series.terms() {
            let e = e + shift;
            if e > 0 {
                break;
            }
            let p = (-e) as usize;
            if slot.len() <= p {
                slot.resize(p + 1, Rational::zero());
            }
            slot[p] += x * c;
        }
        Ok(())
    }
}

fn merge_key(rest_n: usize, mask: u32, a: &[u16], b: &[u16]) -> Vec<u16> {
    let (mut ia, mut ib) = (a.iter(), b.iter());
    (0..rest_n)
        .map(|i| if mask >> i & 1 == 1 { *ia.next().unwrap() } else { *ib.next().unwrap() })
        .collect()
}

/// Computes `W_{g,n}` at an explicit working order, reusing memoized lower amplitudes.
pub fn tr_amplitude_at_order(params: &CurveParams, g: u32, n: u32, order: i64) -> Result<Amplitude> {
    check_stable(g, n)?;
    let kd = kernel_data(params, order)?;
    let rest_n = n as usize - 1;
    let mut br = Brackets { map: HashMap::new() };

    if g >= 1 {
        if (g - 1, n + 1) == (0, 2) {
            br.add(vec![], &kd.diagonal()?, 0, &int(1))?;
        } else {
            for (key, c) in tr_amplitude_family(params, g - 1, n + 1)?.terms() {
                let (p, q) = (key[0] as i64, key[1] as usize);
                br.add(key[2..].to_vec(), kd.sigma_inv_pow(q)?, -p, c)?;
            }
        }
    }

    for mask in 0u32..(1 << rest_n) {
        let nj = mask.count_ones();
        for h in 0..=g {
            let (a, b) = ((h, 1 + nj), (g - h, 1 + rest_n as u32 - nj));
            if a == (0, 1) || b == (0, 1) {
                continue;
            }
            split_term(&kd, params, &mut br, rest_n, mask, a, b)?;
        }
    }

    let mut out = Amplitude::new(n as usize);
    for (rest, coeffs) in br.map {
        for (p, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let kj = kd.kernel(p as i64 - 1)?;
            for (r, k) in kj.poles() {
                let mut key = Vec::with_capacity(n as usize);
                key.push(r as u16);
                key.extend_from_slice(&rest);
                out.add_term(key, k * c)?;
            }
        }
    }
    Ok(out)
}

/// One stable splitting `W_a(t, J) W_b(sigma(t), J')` of the bracket.
fn split_term(
    kd: &KernelData,
    params: &CurveParams,
    br: &mut Brackets,
    rest_n: usize,
    mask: u32,
    a: (u32, u32),
    b: (u32, u32),
) -> Result<()> {
    match (a == (0, 2), b == (0, 2)) {
        (true, true) => {
            // Only the constant terms of both two-point factors survive.
            br.add(merge_key(rest_n, mask, &[2], &[2]), &TruncatedSeries::constant(int(1), kd.order), 0, &int(1))?;
        }
        (true, false) => {
            for (kb, cb) in tr_amplitude_family(params, b.0, b.1)?.terms() {
                let q = kb[0] as i64;
                let s = kd.sigma_inv_pow(q as usize)?;
                for m in 0..=q {
                    let key = merge_key(rest_n, mask, &[m as u16 + 2], &kb[1..]);
                    br.add(key, s, m, &(cb * int(m + 1)))?;
                }
            }
        }
        (false, true) => {
            for (ka, ca) in tr_amplitude_family(params, a.0, a.1)?.terms() {
                let p = ka[0] as i64;
                for m in 0..=p {
                    let key = merge_key(rest_n, mask, &ka[1..], &[m as u16 + 2]);
                    br.add(key, kd.sigma_pow(m as usize)?, -p, &(ca * int(m + 1)))?;
                }
            }
        }
        (false, false) => {
            let wa = tr_amplitude_family(params, a.0, a.1)?;
            let wb = tr_amplitude_family(params, b.0, b.1)?;
            for (kb, cb) in wb.terms() {
                let s = kd.sigma_inv_pow(kb[0] as usize)?;
                for (ka, ca) in wa.terms() {
                    let key = merge_key(rest_n, mask, &ka[1..], &kb[1..]);
                    br.add(key, s, -(ka[0] as i64), &(ca * cb))?;
                }
            }
        }
    }
    Ok(())
}

/// Coefficient of `prod t_i^{-2}` in `W_{g,n}`.
pub fn f_zero_residue(g: u32, n: u32) -> Result<Rational> {
    let w = tr_amplitude(g, n)?;
    w.coefficient(&vec![-2; n as usize])
}

/// Multilinear greedy decomposition of an amplitude on `Xi` products.
///
/// The amplitude need not be stored symmetrically; any asymmetry shows up as a
/// conflict between permuted entries and is reported as an error.
pub fn decompose_amplitude(w: &Amplitude, g: u32) -> Result<FTable> {
    let n = w.arity();
    let mut cur: HashMap<Vec<u16>, Rational> =
        w.terms().map(|(k, c)| (k.to_vec(), c.clone())).collect();
    for i in 0..n {
        let mut groups: HashMap<Vec<u16>, Vec<(i64, Rational)>> = HashMap::new();
        for (k, c) in cur {
            let mut other = k.clone();
            let p = other.remove(i);
            groups.entry(other).or_default().push((-(p as i64), c));
        }
        let mut next = HashMap::new();
        for (other, poly) in groups {
            let poly = LaurentPoly::from_terms(poly)?;
            for (k, c) in decompose_on_xi(&poly)? {
                let mut key = other.clone();
                key.insert(i, k as u16);
                *next.entry(key).or_insert_with(Rational::zero) += c;
            }
        }
        cur = next;
    }
    let mut table = FTable::new(g, n as u32);
    let mut seen: HashMap<Vec<u8>, Rational> = HashMap::new();
    for (k, c) in cur {
        if c.is_zero() {
            continue;
        }
        let idx: Vec<usize> = k.iter().map(|&x| x as usize).collect();
        let sk = crate::spectral::ftable::sorted_key(&idx);
        if let Some(prev) = seen.get(&sk) {
            if *prev != c {
                return Err(Error::Inconsistency(format!("asymmetric amplitude at indices {idx:?}")));
            }
        } else {
            seen.insert(sk, c.clone());
            table.insert(&idx, c);
        }
    }
    Ok(table)
}

/// `F_{g,n}` read off from the monomial amplitude.
pub fn f_table_monomial(g: u32, n: u32) -> Result<FTable> {
    let w = tr_amplitude(g, n)?;
    decompose_amplitude(&w, g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn base_amplitudes() {
        let w03 = tr_amplitude(0, 3).unwrap();
        assert_eq!(w03.coefficient(&[-2, -2, -2]).unwrap(), rat(1, 2));
        assert_eq!(w03.len(), 1);
        let w11 = tr_amplitude(1, 1).unwrap();
        assert_eq!(w11.coefficient(&[-2]).unwrap(), rat(-1, 24));
        assert_eq!(w11.coefficient(&[-3]).unwrap(), rat(-1, 24));
        assert_eq!(w11.coefficient(&[-4]).unwrap(), rat(1, 16));
        assert_eq!(w11.len(), 3);
    }

    #[test]
    fn unstable_rejected() {
        assert!(tr_amplitude(0, 2).is_err());
        assert!(tr_amplitude(1, 0).is_err());
    }

    #[test]
    fn genus_two_one_point() {
        let f = f_table_monomial(2, 1).unwrap();
        let expect = [rat(29, 5120), rat(-29, 5120), rat(47, 15360), rat(-41, 46080), rat(1, 9216)];
        for (k, e) in expect.iter().enumerate() {
            assert_eq!(f.get(&[k]), *e);
        }
        assert_eq!(f.len(), 5);
    }
}
