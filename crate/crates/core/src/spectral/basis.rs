//! The recursion written directly on `F`-coefficients.
//!
//! Expanding `W` on products of `Xi_k` turns every residue of the recursion
//! into a fixed rational tensor:
//!
//! * `A[m][k][l]`: `Xi_m(t1)` coefficient of the residue of `K(t1,t) Xi_k(t) Xi_l(sigma(t))`,
//!   serving both the handle-cutting term and the stable splittings;
//! * `B[l][(m, k)]`: coefficient of `Xi_m(t1) Xi_k(t_i)` in the residue of
//!   the two-point factors `W_{0,2}(t, t_i) Xi_l(sigma(t)) + Xi_l(t) W_{0,2}(sigma(t), t_i)`.
//!
//! Tables then cost a handful of dense products per entry instead of an
//! expansion of `W` into monomials, whose size grows combinatorially.

use std::collections::{BTreeMap, HashMap};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, Mutex, OnceLock, RwLock};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::{int, Rational};
use crate::series::{LaurentPoly, TruncatedSeries};
use crate::spectral::curve::CurveParams;
use crate::spectral::ftable::FTable;
use crate::spectral::kernel::{kernel_data, KernelData};
use crate::spectral::monomial::{check_stable, f_table_monomial};
use crate::spectral::xi::{decompose_on_xi, xi_basis};

/// The two rational tensors driving the basis recursion.
#[derive(Debug)]
pub struct BasisData {
    /// Largest `k + l` covered by `a`.
    pub pair_max: usize,
    /// Largest `l` covered by `b`.
    pub single_max: usize,
    /// `a[m][k][l]`, dense, zero outside `k + l <= pair_max`.
    a: Vec<Vec<Vec<Rational>>>,
    /// `(m, k)` to the list of `(l, B[l][(m, k)])`.
    b: HashMap<(usize, usize), Vec<(usize, Rational)>>,
}

fn xi_series(k: usize, order: i64) -> TruncatedSeries {
    xi_basis(k).to_series(order)
}

/// `Xi_l(sigma(t))` as a series in `t`.
fn xi_of_sigma(kd: &KernelData, l: usize) -> Result<TruncatedSeries> {
    let mut acc = TruncatedSeries::zero(kd.order);
    for (p, c) in xi_basis(l).poles() {
        acc = acc.add(&kd.sigma_inv_pow(p as usize)?.scale(c));
    }
    Ok(acc)
}

impl BasisData {
    pub fn build(pair_max: usize, single_max: usize) -> Result<Self> {
        // Residues need K_j up to j = 2(k + l) + 3 and sigma^{-p} with p <= 2 max + 2.
        let reach = (2 * pair_max + 4).max(2 * single_max + 4) as i64;
        let order = reach + 8;
        let kd = kernel_data(&CurveParams::principal(), order)?;
        let kernel_xi: Vec<BTreeMap<usize, Rational>> = (-1..=reach)
            .map(|j| decompose_on_xi(kd.kernel(j)?))
            .collect::<Result<_>>()?;
        let lmax = pair_max.max(single_max);
        let xs: Vec<TruncatedSeries> = (0..=lmax).map(|l| xi_of_sigma(&kd, l)).collect::<Result<_>>()?;

        let mdim = pair_max + 3;
        let mut a = vec![vec![vec![Rational::zero(); pair_max + 1]; pair_max + 1]; mdim];
        for k in 0..=pair_max {
            let xk = xi_series(k, kd.order);
            for l in 0..=(pair_max - k) {
                let prod = xk.mul(&xs[l]);
                let low = prod.valuation().unwrap_or(0).min(0);
                for e in low..=0 {
                    let c = prod.coeff(e)?;
                    if c.is_zero() {
                        continue;
                    }
                    let j = -e - 1;
                    for (m, km) in &kernel_xi[(j + 1) as usize] {
                        if *m >= mdim {
                            return Err(Error::Inconsistency(format!("A tensor index m = {m} out of range")));
                        }
                        a[*m][k][l] += km * &c;
                    }
                }
            }
        }

        let mut b: HashMap<(usize, usize), Vec<(usize, Rational)>> = HashMap::new();
        for l in 0..=single_max {
            let xl = xi_series(l, kd.order);
            // (pole in t1, pole in t_i) -> coefficient
            let mut c2: HashMap<(u32, u32), Rational> = HashMap::new();
            for q in 0..=(2 * l + 2) {
                let s = xs[l].shift(q as i64).add(&xl.mul(kd.sigma_pow(q)?));
                let low = s.valuation().unwrap_or(0).min(0);
                for e in low..=0 {
                    let c = s.coeff(e)?;
                    if c.is_zero() {
                        continue;
                    }
                    let c = c * int(q as i64 + 1);
                    for (r, kc) in kd.kernel(-e - 1)?.poles() {
                        *c2.entry((r, q as u32 + 2)).or_insert_with(Rational::zero) += kc * &c;
                    }
                }
            }
            for (m, k, c) in decompose_two_variable(c2)? {
                b.entry((m, k)).or_default().push((l, c));
            }
        }
        Ok(BasisData { pair_max, single_max, a, b })
    }

    fn a_row(&self, m: usize) -> Option<&Vec<Vec<Rational>>> {
        self.a.get(m)
    }
}

/// Decomposes `sum c[(p, q)] t1^{-p} t2^{-q}` on `Xi_m(t1) Xi_k(t2)`.
fn decompose_two_variable(c2: HashMap<(u32, u32), Rational>) -> Result<Vec<(usize, usize, Rational)>> {
    let mut by_q: BTreeMap<u32, Vec<(i64, Rational)>> = BTreeMap::new();
    for ((p, q), c) in c2 {
        by_q.entry(q).or_default().push((-(p as i64), c));
    }
    let mut by_m: BTreeMap<usize, Vec<(i64, Rational)>> = BTreeMap::new();
    for (q, terms) in by_q {
        for (m, c) in decompose_on_xi(&LaurentPoly::from_terms(terms)?)? {
            by_m.entry(m).or_default().push((-(q as i64), c));
        }
    }
    let mut out = Vec::new();
    for (m, terms) in by_m {
        for (k, c) in decompose_on_xi(&LaurentPoly::from_terms(terms)?)? {
            out.push((m, k, c));
        }
    }
    Ok(out)
}

static BASIS: RwLock<Option<Arc<BasisData>>> = RwLock::new(None);

/// Basis tensors covering at least the requested ranges. Rebuilt larger on demand.
pub fn basis_data(pair_max: usize, single_max: usize) -> Result<Arc<BasisData>> {
    if let Some(b) = BASIS.read().unwrap().as_ref() {
        if b.pair_max >= pair_max && b.single_max >= single_max {
            return Ok(b.clone());
        }
    }
    let mut slot = BASIS.write().unwrap();
    if let Some(b) = slot.as_ref() {
        if b.pair_max >= pair_max && b.single_max >= single_max {
            return Ok(b.clone());
        }
    }
    let (p0, s0) = slot.as_ref().map_or((0, 0), |b| (b.pair_max, b.single_max));
    let built = Arc::new(BasisData::build(pair_max.max(p0), single_max.max(s0))?);
    *slot = Some(built.clone());
    Ok(built)
}

type TableMemo = Mutex<HashMap<(u32, u32), Arc<OnceLock<Arc<FTable>>>>>;

fn table_memo() -> &'static TableMemo {
    static MEMO: OnceLock<TableMemo> = OnceLock::new();
    MEMO.get_or_init(Default::default)
}

/// Seeds the memo with a table obtained elsewhere (for example from a cache file).
/// Returns `false` if a table for the same `(g, n)` was already present.
pub fn preload_f_table(table: FTable) -> bool {
    let cell = table_memo().lock().unwrap().entry((table.g, table.n)).or_default().clone();
    let mut fresh = false;
    cell.get_or_init(|| {
        fresh = true;
        Arc::new(table)
    });
    fresh
}

/// Every table currently held in memory, sorted by `(g, n)`.
pub fn memoized_f_tables() -> Vec<Arc<FTable>> {
    let cells: Vec<_> = table_memo().lock().unwrap().values().cloned().collect();
    let mut out: Vec<Arc<FTable>> = cells.iter().filter_map(|c| c.get().cloned()).collect();
    out.sort_by_key(|t| (t.g, t.n));
    out
}

static COMPUTED: AtomicUsize = AtomicUsize::new(0);

/// Number of F-tables computed (not preloaded) in this process.
pub fn tables_computed() -> usize {
    COMPUTED.load(Ordering::Relaxed)
}

/// `F_{g,n}` of the principal curve, memoized.
pub fn f_table(g: u32, n: u32) -> Result<Arc<FTable>> {
    check_stable(g, n)?;
    if n == 0 {
        return Err(Error::Domain("F-tables need n >= 1; use f_g0 for n = 0".into()));
    }
    let cell = table_memo().lock().unwrap().entry((g, n)).or_default().clone();
    if let Some(t) = cell.get() {
        return Ok(t.clone());
    }
    COMPUTED.fetch_add(1, Ordering::Relaxed);
    let table = Arc::new(if (g, n) == (0, 3) || (g, n) == (1, 1) {
        f_table_monomial(g, n)?
    } else {
        compute_table(g, n)?
    });
    Ok(cell.get_or_init(|| table).clone())
}

fn degree(g: u32, n: usize) -> i64 {
    3 * g as i64 - 3 + n as i64
}

/// All decreasing tuples of length `n` with entries summing to at most `max`.
pub(crate) fn sorted_keys(n: usize, max: i64) -> Vec<Vec<u8>> {
    fn rec(n: usize, cap: i64, budget: i64, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for v in 0..=cap.min(budget) {
            cur.push(v as u8);
            rec(n, v, budget - v, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if max >= 0 {
        rec(n, max, max, &mut Vec::with_capacity(n), &mut out);
    }
    out
}

/// Inserts `v` into a decreasing key.
fn with(key: &[u8], v: usize) -> Vec<u8> {
    let mut out = Vec::with_capacity(key.len() + 1);
    let v = v as u8;
    let pos = key.iter().position(|&x| x < v).unwrap_or(key.len());
    out.extend_from_slice(&key[..pos]);
    out.push(v);
    out.extend_from_slice(&key[pos..]);
    out
}

fn with2(key: &[u8], k: usize, l: usize) -> Vec<u8> {
    with(&with(key, k), l)
}

/// Distinct values of a decreasing key with multiplicities.
fn runs(key: &[u8]) -> Vec<(u8, usize)> {
    let mut out: Vec<(u8, usize)> = Vec::new();
    for &x in key {
        match out.last_mut() {
            Some((v, c)) if *v == x => *c += 1,
            _ => out.push((x, 1)),
        }
    }
    out
}

/// Every sub-multiset of `key` as `(chosen, complement, number of position subsets)`.
fn sub_multisets(key: &[u8]) -> Vec<(Vec<u8>, Vec<u8>, Rational)> {
    let rs = runs(key);
    let mut out = Vec::new();
    let mut counts = vec![0usize; rs.len()];
    loop {
        let mut chosen = Vec::new();
        let mut rest = Vec::new();
        let mut weight = num_bigint::BigInt::from(1);
        for (i, &(v, c)) in rs.iter().enumerate() {
            chosen.extend(std::iter::repeat_n(v, counts[i]));
            rest.extend(std::iter::repeat_n(v, c - counts[i]));
            weight *= crate::exact::binomial(c as i64, counts[i] as i64);
        }
        out.push((chosen, rest, Rational::from_integer(weight)));
        let mut i = 0;
        loop {
            if i == rs.len() {
                return out;
            }
            if counts[i] < rs[i].1 {
                counts[i] += 1;
                break;
            }
            counts[i] = 0;
            i += 1;
        }
    }
}

/// Lower tables needed by `(g, n)`, so they can be built before the entries are.
fn dependencies(g: u32, n: u32) -> Vec<(u32, u32)> {
    let mut deps = Vec::new();
    if g >= 1 {
        deps.push((g - 1, n + 1));
    }
    if n >= 2 && 2 * g as i64 - 2 + n as i64 - 1 > 0 {
        deps.push((g, n - 1));
    }
    for h in 0..=g {
        for j in 0..n {
            let (a, b) = ((h, 1 + j), (g - h, n - j));
            if a.1 >= 1 && b.1 >= 1 && stable_piece(a) && stable_piece(b) {
                deps.push(a);
            }
        }
    }
    deps.sort();
    deps.dedup();
    deps
}

/// A factor of a splitting that is carried by an `F`-table.
fn stable_piece((g, n): (u32, u32)) -> bool {
    !(g == 0 && n <= 2)
}

struct Ctx {
    g: u32,
    n: usize,
    basis: Arc<BasisData>,
    handle: Option<Arc<FTable>>,
    drop_one: Option<Arc<FTable>>,
    pieces: HashMap<(u32, u32), Arc<FTable>>,
}

impl Ctx {
    fn new(g: u32, n: u32) -> Result<Self> {
        Ctx::with_reach(g, n, 0)
    }

    /// Context whose tensors also cover indices `extra` beyond the degree bound.
    fn with_reach(g: u32, n: u32, extra: usize) -> Result<Self> {
        let d = degree(g, n as usize).max(0) as usize + extra;
        let basis = basis_data(d.saturating_sub(2), d.saturating_sub(1))?;
        let handle = if g >= 1 && (g - 1, n + 1) != (0, 2) { Some(f_table(g - 1, n + 1)?) } else { None };
        let drop_one = if n >= 2 && stable_piece((g, n - 1)) && (g, n - 1) != (0, 2) {
            Some(f_table(g, n - 1)?)
        } else {
            None
        };
        let mut pieces = HashMap::new();
        for d in dependencies(g, n) {
            pieces.insert(d, f_table(d.0, d.1)?);
        }
        Ok(Ctx { g, n: n as usize, basis, handle, drop_one, pieces })
    }

    /// `F_{g,n}[m, rest]` by one step of the recursion, with `t1` carrying index `m`.
    fn entry(&self, m: usize, rest: &[u8]) -> Result<Rational> {
        let mut total = Rational::zero();
        let Some(arow) = self.basis.a_row(m) else {
            return Ok(total);
        };
        let pair_max = self.basis.pair_max;

        // Pair coefficients G[k][l] from handle cutting and stable splittings.
        let mut gkl: Vec<Vec<Rational>> = vec![vec![Rational::zero(); pair_max + 1]; pair_max + 1];
        let mut any = false;
        if let Some(h) = &self.handle {
            for k in 0..=pair_max {
                for l in 0..=(pair_max - k) {
                    if let Some(c) = h.get_sorted_ref(&with2(rest, k, l)) {
                        gkl[k][l] += c;
                        any = true;
                    }
                }
            }
        }
        for (chosen, comp, weight) in sub_multisets(rest) {
            for h in 0..=self.g {
                let a = (h, 1 + chosen.len() as u32);
                let b = (self.g - h, 1 + comp.len() as u32);
                if !stable_piece(a) || !stable_piece(b) {
                    continue;
                }
                let (fa, fb) = (&self.pieces[&a], &self.pieces[&b]);
                let va: Vec<(usize, &Rational)> = (0..=pair_max)
                    .filter_map(|k| fa.get_sorted_ref(&with(&chosen, k)).map(|c| (k, c)))
                    .collect();
                if va.is_empty() {
                    continue;
                }
                let vb: Vec<(usize, &Rational)> = (0..=pair_max)
                    .filter_map(|l| fb.get_sorted_ref(&with(&comp, l)).map(|c| (l, c)))
                    .collect();
                for (k, ca) in &va {
                    let wa = *ca * &weight;
                    for (l, cb) in &vb {
                        if k + l <= pair_max {
                            gkl[*k][*l] += &wa * *cb;
                            any = true;
                        }
                    }
                }
            }
        }
        if any {
            for (k, row) in gkl.iter().enumerate() {
                for (l, c) in row.iter().enumerate() {
                    if !c.is_zero() && !arow[k][l].is_zero() {
                        total += &arow[k][l] * c;
                    }
                }
            }
        }

        // Two-point factors attached to each remaining variable.
        if let Some(f1) = &self.drop_one {
            for (v, mult) in runs(rest) {
                let Some(bl) = self.basis.b.get(&(m, v as usize)) else {
                    continue;
                };
                let pos = rest.iter().position(|&x| x == v).unwrap();
                let mut reduced = rest.to_vec();
                reduced.remove(pos);
                let mut acc = Rational::zero();
                for (l, c) in bl {
                    if let Some(f) = f1.get_sorted_ref(&with(&reduced, *l)) {
                        acc += c * f;
                    }
                }
                total += acc * int(mult as i64);
            }
        }
        Ok(total)
    }
}

fn compute_table(g: u32, n: u32) -> Result<FTable> {
    let ctx = Ctx::new(g, n)?;
    let keys = sorted_keys(n as usize, degree(g, n as usize));
    let eval = |key: &Vec<u8>| -> Result<(Vec<u8>, Rational)> {
        Ok((key.clone(), ctx.entry(key[0] as usize, &key[1..])?))
    };
    #[cfg(feature = "parallel")]
    let values: Vec<Result<(Vec<u8>, Rational)>> = {
        use rayon::prelude::*;
        keys.par_iter().map(eval).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let values: Vec<Result<(Vec<u8>, Rational)>> = keys.iter().map(eval).collect();

    let mut table = FTable::new(g, ctx.n as u32);
    for v in values {
        let (k, c) = v?;
        table.insert_sorted(k, c);
    }
    Ok(table)
}

/// Recomputes every entry of `F_{g,n}` with each other variable taking the
/// distinguished role, and reports the first disagreement.
pub fn check_basis_symmetry(g: u32, n: u32) -> Result<()> {
    let table = f_table(g, n)?;
    let ctx = Ctx::new(g, n)?;
    for key in sorted_keys(n as usize, degree(g, n as usize)) {
        for (v, _) in runs(&key) {
            let pos = key.iter().position(|&x| x == v).unwrap();
            let mut rest = key.clone();
            rest.remove(pos);
            let c = ctx.entry(v as usize, &rest)?;
            if c != table.get_sorted(&key) {
                return Err(Error::Inconsistency(format!(
                    "F_{{{g},{n}}}{key:?} differs when index {v} is distinguished"
                )));
            }
        }
    }
    Ok(())
}

/// Evaluates the recursion at every key with total index in `(3g-3+n, 3g-3+n+extra]`
/// and returns the keys that come out nonzero.
pub fn over_degree_entries(g: u32, n: u32, extra: i64) -> Result<Vec<Vec<usize>>> {
    f_table(g, n)?;
    let d = degree(g, n as usize);
    let ctx = Ctx::with_reach(g, n, extra.max(0) as usize)?;
    let mut bad = Vec::new();
    for key in sorted_keys(n as usize, d + extra) {
        let s: i64 = key.iter().map(|&x| x as i64).sum();
        if s <= d {
            continue;
        }
        if !ctx.entry(key[0] as usize, &key[1..])?.is_zero() {
            bad.push(key.iter().map(|&x| x as usize).collect());
        }
    }
    Ok(bad)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multiset_weights() {
        let subs = sub_multisets(&[2, 2, 0]);
        assert_eq!(subs.len(), 6);
        let total: Rational = subs.iter().map(|s| s.2.clone()).sum();
        assert_eq!(total, int(8));
    }

    #[test]
    fn key_enumeration() {
        assert_eq!(sorted_keys(2, 2).len(), 4);
        assert_eq!(with(&[3, 1, 0], 2), vec![3, 2, 1, 0]);
    }

    #[test]
    fn basis_route_matches_monomial_route() {
        for (g, n) in [(0, 4), (0, 5), (1, 2), (1, 3), (2, 1), (2, 2), (0, 6)] {
            assert_eq!(*f_table(g, n).unwrap(), f_table_monomial(g, n).unwrap(), "(g, n) = ({g}, {n})");
        }
    }
}
