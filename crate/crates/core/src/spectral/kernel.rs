use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::{int, rat, Rational};
use crate::series::{LaurentPoly, TruncatedSeries};
use crate::spectral::curve::{dx_series, involution, y_local_series, CurveParams};
use crate::spectral::xi::decompose_on_xi;

/// Everything the recursion needs about one curve at one working order.
#[derive(Debug)]
pub struct KernelData {
    pub params: CurveParams,
    pub order: i64,
    pub sigma: TruncatedSeries,
    /// Scalar part of the kernel, `K(t1, t) = kappa(t) / ((t1 - t)(t1 - sigma(t)))`.
    pub kappa: TruncatedSeries,
    /// `K_j(t1)` for `j = -1, 0, 1, ...`, stored at index `j + 1`.
    pub k_j: Vec<LaurentPoly>,
    /// `sigma^m` for `m = 0 ..= order`.
    pub sigma_pows: Vec<TruncatedSeries>,
    /// `sigma^{-p}` for `p = 0 ..= order`.
    pub sigma_inv_pows: Vec<TruncatedSeries>,
}

impl KernelData {
    pub fn build(params: &CurveParams, order: i64) -> Result<Self> {
        let sigma = involution(params, order)?;
        let t = TruncatedSeries::var(order);
        let y = y_local_series(params, order + 2)?;
        let d = y.sub(&y.compose(&sigma)?).div(&t.sub(&sigma))?;
        let kappa = sigma.derivative().scale(&rat(1, 2)).div(&d.mul(&dx_series(params, order + 2)?))?;
        if kappa.valuation() != Some(-1) {
            return Err(Error::Inconsistency(format!("kernel valuation {:?}, expected -1", kappa.valuation())));
        }

        let n = order.max(1) as usize;
        let mut sigma_pows = vec![TruncatedSeries::constant(int(1), order)];
        for m in 1..=n {
            let next = sigma_pows[m - 1].mul(&sigma);
            sigma_pows.push(next);
        }
        let sigma_inv = sigma.inv()?;
        let mut sigma_inv_pows = vec![TruncatedSeries::constant(int(1), order)];
        for p in 1..=n {
            let next = sigma_inv_pows[p - 1].mul(&sigma_inv);
            sigma_inv_pows.push(next);
        }

        // h_m = sum_i t^i sigma^{m-i}, built as h_m = t h_{m-1} + sigma^m.
        let jmax = kappa.order() - 1;
        let mut k_rows: Vec<BTreeMap<u32, Rational>> = vec![BTreeMap::new(); (jmax + 2).max(0) as usize];
        let mut h = TruncatedSeries::constant(int(1), order);
        for m in 0..=(jmax + 1) as usize {
            if m > 0 {
                h = h.mul(&t).add(&sigma_pows[m]);
            }
            let kh = kappa.mul(&h);
            for j in -1..=jmax {
                let c = kh.coeff(j)?;
                if !c.is_zero() {
                    k_rows[(j + 1) as usize].insert(m as u32 + 2, c);
                }
            }
        }
        let k_j = k_rows
            .into_iter()
            .map(|row| LaurentPoly::from_terms(row.into_iter().map(|(p, c)| (-(p as i64), c))))
            .collect::<Result<Vec<_>>>()?;

        Ok(KernelData { params: params.clone(), order, sigma, kappa, k_j, sigma_pows, sigma_inv_pows })
    }

    /// `K_j(t1)`, or a truncation error past the working order.
    pub fn kernel(&self, j: i64) -> Result<&LaurentPoly> {
        self.k_j
            .get((j + 1) as usize)
            .ok_or(Error::Truncation { exponent: j, order: self.k_j.len() as i64 - 1 })
    }

    /// `1 / (t - sigma(t))^2`, the diagonal two-point term.
    pub fn diagonal(&self) -> Result<TruncatedSeries> {
        let d = TruncatedSeries::var(self.order).sub(&self.sigma);
        d.mul(&d).inv()
    }

    pub fn sigma_pow(&self, m: usize) -> Result<&TruncatedSeries> {
        self.sigma_pows.get(m).ok_or(Error::Truncation { exponent: m as i64, order: self.order })
    }

    pub fn sigma_inv_pow(&self, p: usize) -> Result<&TruncatedSeries> {
        self.sigma_inv_pows.get(p).ok_or(Error::Truncation { exponent: -(p as i64), order: self.order })
    }
}

type KernelKey = (CurveParams, i64);
type KernelMemo = Mutex<HashMap<KernelKey, Arc<OnceLock<Arc<KernelData>>>>>;

fn kernel_memo() -> &'static KernelMemo {
    static MEMO: OnceLock<KernelMemo> = OnceLock::new();
    MEMO.get_or_init(Default::default)
}

/// Shared kernel data for `(params, order)`, built once.
pub fn kernel_data(params: &CurveParams, order: i64) -> Result<Arc<KernelData>> {
    let cell = kernel_memo().lock().unwrap().entry((params.clone(), order)).or_default().clone();
    if let Some(k) = cell.get() {
        return Ok(k.clone());
    }
    let built = Arc::new(KernelData::build(params, order)?);
    Ok(cell.get_or_init(|| built).clone())
}

/// Expansion `K(t1, t) = sum_{j >= -1} K_j(t1) t^j` of the principal kernel for
/// `j <= order`.
pub fn recursion_kernel_series(order: i64) -> Result<Vec<(i64, LaurentPoly)>> {
    if order < -1 {
        return Err(Error::Domain(format!("kernel order must be >= -1, got {order}")));
    }
    let kd = kernel_data(&CurveParams::principal(), order + 4)?;
    (-1..=order).map(|j| Ok((j, kd.kernel(j)?.clone()))).collect()
}

/// `K_j` written on the `Xi` basis, as `k -> coefficient of Xi_k`.
pub fn kernel_on_xi(order: i64) -> Result<Vec<(i64, BTreeMap<usize, Rational>)>> {
    recursion_kernel_series(order)?
        .into_iter()
        .map(|(j, k)| Ok((j, decompose_on_xi(&k)?)))
        .collect()
}
