//! Pure psi-class intersection numbers `<tau_{d_1} ... tau_{d_n}>_g`.
//!
//! Computed by the Virasoro (DVV) recursion in its double-factorial form and
//! independent of the topological recursion engine.

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::{double_factorial, int, rat, Rational};

/// A correlator `<prod tau_{d_i}>_g` with indices kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TauIndex {
    g: u32,
    indices: Vec<u32>,
}

impl TauIndex {
    pub fn new(g: u32, indices: &[u32]) -> Self {
        let mut indices = indices.to_vec();
        indices.sort_unstable();
        TauIndex { g, indices }
    }

    pub fn g(&self) -> u32 {
        self.g
    }

    pub fn n(&self) -> usize {
        self.indices.len()
    }

    pub fn indices(&self) -> &[u32] {
        &self.indices
    }

    pub fn is_stable(&self) -> bool {
        2 * self.g as i64 - 2 + self.n() as i64 > 0
    }

    /// `sum d_i = 3g - 3 + n`.
    pub fn satisfies_dimension(&self) -> bool {
        self.indices.iter().map(|&d| d as i64).sum::<i64>() == 3 * self.g as i64 - 3 + self.n() as i64
    }
}

type Memo = RwLock<HashMap<TauIndex, Rational>>;

fn memo() -> &'static Memo {
    static MEMO: OnceLock<Memo> = OnceLock::new();
    MEMO.get_or_init(Default::default)
}

/// `<tau_{d_1} ... tau_{d_n}>_g`, zero when the dimension constraint fails.
pub fn tau_correlator(idx: &TauIndex) -> Result<Rational> {
    if !idx.is_stable() {
        return Err(Error::Unstable { g: idx.g, n: idx.n() as u32 });
    }
    correlator(idx)
}

/// As `tau_correlator`, but unstable correlators vanish.
fn correlator(idx: &TauIndex) -> Result<Rational> {
    if !idx.is_stable() || !idx.satisfies_dimension() {
        return Ok(Rational::zero());
    }
    if let Some(v) = memo().read().unwrap().get(idx) {
        return Ok(v.clone());
    }
    let v = dvv(idx)?;
    memo().write().unwrap().insert(idx.clone(), v.clone());
    Ok(v)
}

fn df(k: i64) -> Result<Rational> {
    double_factorial(k)
}

/// One DVV step removing the largest index `k + 1`.
fn dvv(idx: &TauIndex) -> Result<Rational> {
    let g = idx.g;
    match (g, idx.indices.as_slice()) {
        (0, [0, 0, 0]) => return Ok(int(1)),
        (1, [1]) => return Ok(rat(1, 24)),
        _ => {}
    }
    let (&top, rest) = idx.indices.split_last().expect("stable correlator has an index");
    if top == 0 {
        return Err(Error::Inconsistency(format!("no recursion step for {idx:?}")));
    }
    let k = top as i64 - 1;
    let mut acc = Rational::zero();

    for j in 0..rest.len() {
        let d = rest[j] as i64;
        let mut others = rest.to_vec();
        others[j] = (d + k) as u32;
        acc += df(2 * k + 2 * d + 1)? / df(2 * d - 1)? * correlator(&TauIndex::new(g, &others))?;
    }

    let mut split = Rational::zero();
    for r in 0..k {
        let s = k - 1 - r;
        let w = df(2 * r + 1)? * df(2 * s + 1)?;
        if g >= 1 {
            let mut ind = rest.to_vec();
            ind.push(r as u32);
            ind.push(s as u32);
            split += &w * correlator(&TauIndex::new(g - 1, &ind))?;
        }
        for mask in 0u32..(1 << rest.len()) {
            let (mut i1, mut i2) = (vec![r as u32], vec![s as u32]);
            for (i, &d) in rest.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    i1.push(d);
                } else {
                    i2.push(d);
                }
            }
            for g1 in 0..=g {
                let a = correlator(&TauIndex::new(g1, &i1))?;
                if a.is_zero() {
                    continue;
                }
                split += &w * a * correlator(&TauIndex::new(g - g1, &i2))?;
            }
        }
    }
    acc += split / int(2);
    Ok(acc / df(2 * k + 3)?)
}

/// Applies the string equation (when some index is 0) or else the dilaton
/// equation (when some index is 1), returning the reduced combination.
pub fn string_dilaton_reduce(idx: &TauIndex) -> Result<Vec<(Rational, TauIndex)>> {
    let n = idx.n();
    let reduced_stable = 2 * idx.g as i64 - 2 + n as i64 - 1 > 0;
    if let Some(pos) = idx.indices.iter().position(|&d| d == 0) {
        if !reduced_stable {
            return Err(Error::Unstable { g: idx.g, n: n as u32 - 1 });
        }
        let mut rest = idx.indices.clone();
        rest.remove(pos);
        let mut out: Vec<(Rational, TauIndex)> = Vec::new();
        for j in 0..rest.len() {
            if rest[j] == 0 {
                continue;
            }
            let mut lowered = rest.clone();
            lowered[j] -= 1;
            let t = TauIndex::new(idx.g, &lowered);
            match out.iter_mut().find(|(_, u)| *u == t) {
                Some((c, _)) => *c += int(1),
                None => out.push((int(1), t)),
            }
        }
        return Ok(out);
    }
    if let Some(pos) = idx.indices.iter().position(|&d| d == 1) {
        if !reduced_stable {
            return Err(Error::Unstable { g: idx.g, n: n as u32 - 1 });
        }
        let mut rest = idx.indices.clone();
        rest.remove(pos);
        return Ok(vec![(int(2 * idx.g as i64 - 2 + n as i64 - 1), TauIndex::new(idx.g, &rest))]);
    }
    Err(Error::Domain(format!("no index 0 or 1 to remove in {:?}", idx.indices)))
}

/// `<tau_2^{3g-3}>_g = int psi_1^2 ... psi_{3g-3}^2`.
pub fn psi2_top_intersection(g: u32) -> Result<Rational> {
    if g < 2 {
        return Err(Error::Domain(format!("psi2_top_intersection needs g >= 2, got {g}")));
    }
    tau_correlator(&TauIndex::new(g, &vec![2; 3 * g as usize - 3]))
}

/// All dimension-compatible index tuples for `(g, n)`, sorted.
pub fn dimension_compatible(g: u32, n: usize) -> Vec<TauIndex> {
    let total = 3 * g as i64 - 3 + n as i64;
    let mut out = Vec::new();
    if total < 0 || n == 0 {
        return out;
    }
    fn rec(left: u32, slots: usize, max: u32, cur: &mut Vec<u32>, g: u32, out: &mut Vec<TauIndex>) {
        if slots == 0 {
            if left == 0 {
                out.push(TauIndex::new(g, cur));
            }
            return;
        }
        for d in (0..=max.min(left)).rev() {
            cur.push(d);
            rec(left - d, slots - 1, d, cur, g, out);
            cur.pop();
        }
    }
    rec(total as u32, n, total as u32, &mut Vec::new(), g, &mut out);
    out
}

/// Checks that string and dilaton reductions agree with the recursion for every
/// reducible correlator with `2g - 2 + n <= chi_max`. Returns the number checked.
pub fn check_reductions(chi_max: u32) -> Result<usize> {
    let mut checked = 0;
    for g in 0..=(chi_max + 2) / 2 {
        for n in 1..=(chi_max + 2 - 2 * g) as usize {
            if 2 * g as i64 - 2 + n as i64 <= 1 {
                continue;
            }
            for idx in dimension_compatible(g, n) {
                let Ok(terms) = string_dilaton_reduce(&idx) else { continue };
                let mut via = Rational::zero();
                for (c, t) in &terms {
                    via += c * tau_correlator(t)?;
                }
                let direct = tau_correlator(&idx)?;
                if via != direct {
                    return Err(Error::Inconsistency(format!(
                        "reduction mismatch at g={g} {:?}: {direct} vs {via}",
                        idx.indices
                    )));
                }
                checked += 1;
            }
        }
    }
    Ok(checked)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tau(g: u32, d: &[u32]) -> Rational {
        tau_correlator(&TauIndex::new(g, d)).unwrap()
    }

    #[test]
    fn small_values() {
        assert_eq!(tau(0, &[0, 0, 0]), int(1));
        assert_eq!(tau(1, &[1]), rat(1, 24));
        assert_eq!(tau(0, &[0, 0, 0, 0]), int(0));
        assert_eq!(tau(0, &[1, 0, 0, 0]), int(1));
        assert_eq!(tau(1, &[1, 1]), rat(1, 24));
        assert_eq!(tau(2, &[4]), rat(1, 1152));
        assert_eq!(tau(2, &[3, 2]), rat(29, 5760));
        assert_eq!(tau(3, &[7]), rat(1, 82944));
    }

    #[test]
    fn psi_squared_top() {
        assert_eq!(psi2_top_intersection(2).unwrap(), rat(7, 240));
        assert!(psi2_top_intersection(1).is_err());
    }

    #[test]
    fn reductions() {
        let r = string_dilaton_reduce(&TauIndex::new(2, &[1, 4])).unwrap();
        assert_eq!(r, vec![(int(3), TauIndex::new(2, &[4]))]);
        let r = string_dilaton_reduce(&TauIndex::new(0, &[0, 1, 1, 0])).unwrap();
        assert_eq!(r, vec![(int(2), TauIndex::new(0, &[0, 0, 1]))]);
        assert!(string_dilaton_reduce(&TauIndex::new(2, &[2, 2, 2])).is_err());
        assert!(string_dilaton_reduce(&TauIndex::new(0, &[0, 0, 0])).is_err());
        assert_eq!(check_reductions(6).unwrap(), 67);
    }

    #[test]
    fn unstable_rejected() {
        assert!(tau_correlator(&TauIndex::new(0, &[0, 0])).is_err());
        assert!(tau_correlator(&TauIndex::new(1, &[])).is_err());
    }
}
