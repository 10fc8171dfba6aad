use std::collections::BTreeMap;
use std::sync::{Arc, RwLock};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::{double_factorial, int, Rational};
use crate::series::LaurentPoly;

static XI: RwLock<Vec<Arc<LaurentPoly>>> = RwLock::new(Vec::new());

/// Basis element `Xi_k(t)` of the principal curve.
///
/// `Xi_0 = 1/t^2` and `Xi_k = -d/dt (Xi_{k-1} (t - 1)/(-t))`. Poles run over
/// orders `k + 2 ..= 2k + 2` with top coefficient `(2k + 1)!!`.
pub fn xi_basis(k: usize) -> Arc<LaurentPoly> {
    if let Some(x) = XI.read().unwrap().get(k) {
        return x.clone();
    }
    let mut memo = XI.write().unwrap();
    if memo.is_empty() {
        memo.push(Arc::new(LaurentPoly::pole(int(1), 2)));
    }
    // (t - 1)/(-t) = -1 + 1/t
    let factor = LaurentPoly::pole(int(-1), 0).add(&LaurentPoly::pole(int(1), 1));
    while memo.len() <= k {
        let prev = memo.last().unwrap();
        let next = prev.mul(&factor).derivative().scale(&int(-1));
        memo.push(Arc::new(next));
    }
    memo[k].clone()
}

/// Greedy decomposition of a pole part on the `Xi_k` basis.
///
/// Peels the highest pole order `p` (which must be even), sets `k = (p - 2)/2`,
/// and subtracts the matching multiple of `Xi_k` until nothing is left.
pub fn decompose_on_xi(poly: &LaurentPoly) -> Result<BTreeMap<usize, Rational>> {
    let mut rest = poly.clone();
    let mut out = BTreeMap::new();
    while let Some(p) = rest.top_pole() {
        if p % 2 == 1 || p < 2 {
            return Err(Error::Decomposition(format!("leftover pole of order {p} in {rest:?}")));
        }
        let k = (p as usize - 2) / 2;
        let c = rest.coeff(-(p as i64)) / double_factorial(2 * k as i64 + 1)?;
        rest = rest.sub(&xi_basis(k).scale(&c));
        if !c.is_zero() {
            out.insert(k, c);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_basis_elements() {
        let x1 = LaurentPoly::from_terms([(-3, int(-2)), (-4, int(3))]).unwrap();
        assert_eq!(*xi_basis(1), x1);
        let x2 = LaurentPoly::from_terms([(-4, int(6)), (-5, int(-20)), (-6, int(15))]).unwrap();
        assert_eq!(*xi_basis(2), x2);
        assert_eq!(xi_basis(5).coeff(-12), int(10395));
    }

    #[test]
    fn pole_ranges() {
        for k in 0..12 {
            let x = xi_basis(k);
            assert_eq!(x.bottom_pole(), Some(k as u32 + 2));
            assert_eq!(x.top_pole(), Some(2 * k as u32 + 2));
        }
    }

    #[test]
    fn decomposition_round_trip() {
        let combo = xi_basis(3).scale(&int(5)).add(&xi_basis(0).scale(&int(-2)));
        let d = decompose_on_xi(&combo).unwrap();
        assert_eq!(d.len(), 2);
        assert_eq!(d[&3], int(5));
        assert_eq!(d[&0], int(-2));
        assert!(decompose_on_xi(&LaurentPoly::pole(int(1), 3)).is_err());
    }
}
