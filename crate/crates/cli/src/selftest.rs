//! Built-in acceptance checks, shared by `qdvol selftest` and the acceptance test target.
//!
//! Each criterion reports PASS or FAIL against exact reference values or pinned
//! tolerances. A failure that matches a documented discrepancy in the reference
//! data is still reported as FAIL, but is marked as documented and does not fail
//! the run. Any other failure does.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use num_traits::{Signed, Zero};
use qdvol_core::analytics::{
    asymptotics, carea_lplus_g1_closed, carea_principal, hodge_constants, lplus_principal, lplus_via_rs,
    pq_polynomials, rs_polynomials, v_norm, volume_g1_closed, volume_principal, AsymptoticMode,
    RationalPolynomial,
};
use qdvol_core::exact::{gamma_k, int, pow, rat, sign, to_f64};
use qdvol_core::series::TruncatedSeries;
use qdvol_core::spectral::{
    check_basis_symmetry, f_g0, f_g0_residue, f_table, kernel_on_xi, over_degree_entries, sigma_hat_series,
    tr_amplitude_family, tr_coefficients_closed, tr_coefficients_local, CurveParams,
};
use qdvol_core::wk::{check_reductions, tau_correlator, TauIndex};
use qdvol_core::{PiScalar, Rational};

use crate::args::Level;
use crate::query::strata_up_to;

pub const TABLE_BUDGET: Duration = Duration::from_secs(60);
pub const KERNEL_BUDGET: Duration = Duration::from_secs(5);
pub const ASYM_VOLUME_TOL: f64 = 0.15;
pub const ASYM_LPLUS_TOL: f64 = 0.10;
pub const COLD_BUDGET: Duration = Duration::from_secs(600);
pub const WARM_BUDGET: Duration = Duration::from_secs(1);
/// Largest `2g - 2 + n` covered by the structural and performance checks.
pub const DESK_CHI: u32 = 7;

pub const QUICK: &[u8] = &[1, 2, 3, 4, 5, 6, 8, 9, 10];
pub const FULL: &[u8] = &[1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13];

pub struct SelftestContext {
    /// The `qdvol` binary, needed by the performance check.
    pub qdvol: Option<PathBuf>,
}

#[derive(Debug, Clone)]
pub struct CriterionResult {
    pub id: u8,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
    /// Set when the failure is exactly a documented discrepancy.
    pub documented: Option<&'static str>,
}

impl CriterionResult {
    pub fn acceptable(&self) -> bool {
        self.passed || self.documented.is_some()
    }

    pub fn line(&self) -> String {
        let status = if self.passed { "PASS" } else { "FAIL" };
        let mut s = format!(
            "{status} {:>2} {}: {} [{:.2} s]",
            self.id,
            self.title,
            self.detail,
            self.elapsed.as_secs_f64()
        );
        if let (false, Some(why)) = (self.passed, self.documented) {
            s += &format!(" (documented: {why})");
        }
        s
    }
}

struct Outcome {
    passed: bool,
    detail: String,
    documented: Option<&'static str>,
}

impl Outcome {
    fn pass(detail: impl Into<String>) -> Self {
        Outcome { passed: true, detail: detail.into(), documented: None }
    }

    fn check(passed: bool, detail: impl Into<String>) -> Self {
        Outcome { passed, detail: detail.into(), documented: None }
    }
}

type Check = qdvol_core::Result<Outcome>;

pub fn title(id: u8) -> &'static str {
    match id {
        1 => "table reproduction",
        2 => "kernel conformance",
        3 => "involution series",
        4 => "genus-one volume routes",
        5 => "n = 0 consistency",
        6 => "fixed-genus volume polynomials",
        7 => "Siegel-Veech and Lyapunov loop",
        8 => "Hodge constants against psi intersections",
        9 => "T/R coefficient routes",
        10 => "family scaling law",
        11 => "structural properties",
        12 => "asymptotics",
        13 => "performance",
        _ => "unknown",
    }
}

pub fn criteria(level: Level) -> &'static [u8] {
    match level {
        Level::Quick => QUICK,
        Level::Full => FULL,
    }
}

pub fn run(level: Level, ctx: &SelftestContext) -> Vec<CriterionResult> {
    criteria(level).iter().map(|&id| run_criterion(id, ctx)).collect()
}

pub fn run_criterion(id: u8, ctx: &SelftestContext) -> CriterionResult {
    let start = Instant::now();
    let out = std::panic::catch_unwind(|| dispatch(id, ctx)).unwrap_or_else(|p| {
        let msg = p
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_default();
        Ok(Outcome::check(false, format!("panicked: {msg}")))
    });
    finish(id, out, start.elapsed())
}

fn dispatch(id: u8, ctx: &SelftestContext) -> Check {
    match id {
        1 => table_reproduction(),
        2 => kernel_conformance(),
        3 => involution_series(),
        4 => genus_one_volumes(),
        5 => n_zero_routes(),
        6 => volume_polynomials(),
        7 => siegel_veech_loop(),
        8 => hodge_cross_check(),
        9 => tr_coefficient_routes(),
        10 => family_scaling(),
        11 => structural(),
        12 => asymptotic_trend(),
        13 => performance(ctx.qdvol.as_deref()),
        _ => Ok(Outcome::check(false, format!("no criterion {id}"))),
    }
}

fn finish(id: u8, out: Check, elapsed: Duration) -> CriterionResult {
    let mut out = out.unwrap_or_else(|e| Outcome::check(false, format!("error: {e}")));
    let budget = match id {
        1 => Some(TABLE_BUDGET),
        2 => Some(KERNEL_BUDGET),
        _ => None,
    };
    if let Some(b) = budget {
        if elapsed > b {
            out.passed = false;
            out.documented = None;
            out.detail += &format!("; over the {} s budget", b.as_secs());
        }
    }
    CriterionResult { id, title: title(id), passed: out.passed, detail: out.detail, elapsed, documented: out.documented }
}

/// Collects mismatches as text.
#[derive(Default)]
struct Mismatches(Vec<String>);

impl Mismatches {
    fn eq<T: PartialEq + std::fmt::Display>(&mut self, what: impl std::fmt::Display, got: &T, want: &T) {
        if got != want {
            self.0.push(format!("{what}: got {got}, want {want}"));
        }
    }

    fn that(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.0.push(what.into());
        }
    }

    fn outcome(self, checked: usize, noun: &str) -> Outcome {
        if self.0.is_empty() {
            Outcome::pass(format!("{checked} {noun} checked"))
        } else {
            Outcome::check(false, format!("{} of {checked} {noun} differ: {}", self.0.len(), self.0.join("; ")))
        }
    }
}

type PrintedRow = ((u32, u32), &'static [usize], (i64, i64));

/// The printed table of nonzero `F_{g,n}[k]`, decreasing indices, `n >= 1`.
const PRINTED_TABLE: &[PrintedRow] = &[
    ((0, 3), &[0, 0, 0], (1, 2)),
    ((0, 4), &[0, 0, 0, 0], (-1, 4)),
    ((0, 4), &[1, 0, 0, 0], (1, 4)),
    ((0, 5), &[0, 0, 0, 0, 0], (3, 8)),
    ((0, 5), &[1, 0, 0, 0, 0], (-3, 8)),
    ((0, 5), &[2, 0, 0, 0, 0], (1, 8)),
    ((0, 5), &[1, 1, 0, 0, 0], (1, 4)),
    ((2, 1), &[0], (29, 5120)),
    ((2, 1), &[1], (-29, 5120)),
    ((2, 1), &[2], (47, 15360)),
    ((2, 1), &[3], (-41, 46080)),
    ((2, 1), &[4], (1, 9216)),
    ((1, 1), &[0], (-1, 24)),
    ((1, 1), &[1], (1, 48)),
    ((1, 2), &[0, 0], (1, 32)),
    ((1, 2), &[1, 0], (-1, 32)),
    ((1, 2), &[2, 0], (-1, 96)),
    ((1, 2), &[1, 1], (1, 96)),
    ((1, 3), &[0, 0, 0], (-11, 192)),
    ((1, 3), &[1, 0, 0], (11, 192)),
    ((1, 3), &[2, 0, 0], (-5, 192)),
    ((1, 3), &[1, 1, 0], (-1, 24)),
    ((1, 3), &[3, 0, 0], (1, 192)),
    ((1, 3), &[2, 1, 0], (1, 96)),
    ((1, 3), &[1, 1, 1], (1, 96)),
];
const PRINTED_F20: (i64, i64) = (-1, 384);

const TABLE_DEVIATION: &str = "the printed F_{1,2}[2,0] = -1/96 has the wrong sign; the psi intersection 2^{-2} <tau_2 tau_0>_1 = 1/96 agrees with the computed value";

fn table_reproduction() -> Check {
    let mut m = Mismatches::default();
    let mut by_table: BTreeMap<(u32, u32), Vec<&PrintedRow>> = BTreeMap::new();
    for row in PRINTED_TABLE {
        by_table.entry(row.0).or_default().push(row);
    }
    let mut checked = 0;
    for (&(g, n), rows) in &by_table {
        let t = f_table(g, n)?;
        for (_, k, (p, q)) in rows {
            m.eq(format!("F_{{{g},{n}}}{k:?}"), &t.get(k), &rat(*p, *q));
            checked += 1;
        }
        for (k, v) in t.entries() {
            if !rows.iter().any(|r| r.1 == k.as_slice()) {
                m.0.push(format!("F_{{{g},{n}}}{k:?} = {v} is missing from the printed table"));
            }
        }
    }
    m.eq("F_{2,0}", &f_g0(2)?, &rat(PRINTED_F20.0, PRINTED_F20.1));
    checked += 1;
    let only_erratum = m.0.len() == 1 && m.0[0] == "F_{1,2}[2, 0]: got 1/96, want -1/96";
    // Accept the known discrepancy only while the independent oracle still backs the computed value.
    let oracle = pow(&int(2), -2)? * tau_correlator(&TauIndex::new(1, &[2, 0]))?;
    let mut out = m.outcome(checked, "printed rows");
    if only_erratum && oracle == rat(1, 96) {
        out.documented = Some(TABLE_DEVIATION);
    }
    Ok(out)
}

fn kernel_conformance() -> Check {
    let printed: [&[(i64, i64)]; 8] = [
        &[(1, 4)],
        &[(1, 12)],
        &[(-1, 12), (1, 12)],
        &[(-49, 540), (1, 12)],
        &[(-59, 1620), (17, 540), (1, 60)],
        &[(-1, 2268), (-1, 324), (1, 36)],
        &[(1021, 170100), (-11, 1260), (97, 3780), (1, 420)],
        &[(17, 72900), (-59, 24300), (149, 8100), (1, 180)],
    ];
    let computed = kernel_on_xi(6)?;
    let mut m = Mismatches::default();
    m.that(computed.len() == printed.len(), "wrong number of kernel rows");
    for ((j, row), want) in computed.iter().zip(printed) {
        let want: BTreeMap<usize, Rational> =
            want.iter().enumerate().map(|(k, &(p, q))| (k, rat(p, q))).filter(|(_, v)| !v.is_zero()).collect();
        let got: BTreeMap<usize, Rational> = row.iter().filter(|(_, v)| !v.is_zero()).map(|(k, v)| (*k, v.clone())).collect();
        m.that(got == want, format!("K_{j}: got {got:?}, want {want:?}"));
    }
    Ok(m.outcome(printed.len(), "kernel rows"))
}

fn involution_series() -> Check {
    let printed = [
        (-1, 1),
        (-2, 3),
        (-4, 9),
        (-44, 135),
        (-104, 405),
        (-40, 189),
        (-7648, 42525),
        (-2848, 18225),
        (-31712, 229635),
    ];
    let s = sigma_hat_series(33)?;
    let mut m = Mismatches::default();
    for (i, (p, q)) in printed.iter().enumerate() {
        m.eq(format!("t^{}", i + 1), &s.coeff(i as i64 + 1)?, &rat(*p, *q));
    }
    let id = s.compose(&s)?.truncate(31);
    m.that(id == TruncatedSeries::var(31), "sigma_hat(sigma_hat(t)) differs from t below t^31");
    let mut out = m.outcome(printed.len() + 1, "coefficients and identities");
    if out.passed {
        out.detail += "; involution holds through t^30";
    }
    Ok(out)
}

fn genus_one_volumes() -> Check {
    let mut m = Mismatches::default();
    for n in 2..=10 {
        m.eq(format!("vol(1, {n})"), &volume_principal(1, n)?, &volume_g1_closed(n)?);
    }
    m.eq("vol(1, 2)", &volume_principal(1, 2)?, &PiScalar::new(rat(1, 3), 4));
    Ok(m.outcome(10, "volumes"))
}

fn n_zero_routes() -> Check {
    let mut m = Mismatches::default();
    m.eq("F_{2,0}", &f_g0(2)?, &rat(-1, 384));
    m.eq("F_{2,0} residue route", &f_g0_residue(2)?, &rat(-1, 384));
    m.eq("F_{3,0} residue against combination", &f_g0_residue(3)?, &f_g0(3)?);
    let mut out = m.outcome(3, "values");
    if out.passed {
        out.detail += &format!("; F_{{3,0}} = {}", f_g0(3)?);
    }
    Ok(out)
}

fn poly(c: &[(i64, i64)]) -> RationalPolynomial {
    RationalPolynomial::new(c.iter().map(|&(p, q)| rat(p, q)).collect())
}

fn degree_of(p: &RationalPolynomial) -> i64 {
    p.degree().map_or(-1, |d| d as i64)
}

fn volume_polynomials() -> Check {
    let mut m = Mismatches::default();
    let pq2 = pq_polynomials(2)?;
    m.eq("p_2", &pq2.p, &poly(&[(5, 36)]));
    m.eq("q_2", &pq2.q, &poly(&[(105, 270), (56, 270)]));
    for (n, want) in [(0, rat(1, 3)), (1, rat(29, 80))] {
        let x = int(n);
        let fit = pq2.p.eval(&x) + gamma_k(1 + n)? * pq2.q.eval(&x);
        m.eq(format!("p_2 + gamma q_2 at n = {n}"), &fit, &want);
        m.eq(format!("v(2, {n})"), &v_norm(2, n as u32)?, &want);
    }
    let mut checked = 6;
    for g in 2..=3u32 {
        let pq = pq_polynomials(g)?;
        m.eq(format!("deg p_{g}"), &degree_of(&pq.p), &(((g - 1) / 2) as i64));
        m.eq(format!("deg q_{g}"), &degree_of(&pq.q), &((g / 2) as i64));
        for n in g + 1..=g + 4 {
            let x = int(n as i64);
            let fit = pq.p.eval(&x) + gamma_k(2 * g as i64 - 3 + n as i64)? * pq.q.eval(&x);
            m.eq(format!("v({g}, {n})"), &v_norm(g, n)?, &fit);
            checked += 1;
        }
        checked += 2;
    }
    let pq1 = pq_polynomials(1)?;
    m.eq("p_1", &pq1.p, &poly(&[(1, 6)]));
    m.eq("q_1", &pq1.q, &poly(&[(1, 6)]));
    Ok(m.outcome(checked + 2, "identities"))
}

fn siegel_veech_loop() -> Check {
    let mut m = Mismatches::default();
    let mut checked = 0;
    for n in 2..=8 {
        let (c, l) = carea_lplus_g1_closed(n)?;
        m.eq(format!("c_area(1, {n})"), &carea_principal(1, n)?, &c);
        m.eq(format!("L+(1, {n})"), &lplus_principal(1, n)?, &l);
        checked += 2;
    }
    m.eq("c_area(1, 2)", &carea_principal(1, 2)?, &PiScalar::new(rat(7, 3), -2));
    m.eq("L+(1, 2)", &lplus_principal(1, 2)?, &rat(2, 3));
    m.eq("L+(1, 3)", &lplus_principal(1, 3)?, &rat(6, 11));
    m.eq("c_area(2, 0)", &carea_principal(2, 0)?, &PiScalar::new(rat(19, 6), -2));
    m.eq("L+(2, 0)", &lplus_principal(2, 0)?, &rat(4, 3));
    checked += 5;
    for g in 2..=3u32 {
        let rs = rs_polynomials(g)?;
        m.eq(format!("deg r_{g}"), &degree_of(&rs.r), &((g / 2) as i64));
        m.eq(format!("deg s_{g}"), &degree_of(&rs.s), &(g.div_ceil(2) as i64));
        checked += 2;
        for n in 0..=g + 2 {
            m.eq(format!("L+({g}, {n}) from r, s"), &lplus_via_rs(g, n)?, &lplus_principal(g, n)?);
            checked += 1;
        }
    }
    Ok(m.outcome(checked, "identities"))
}

fn hodge_cross_check() -> Check {
    let mut m = Mismatches::default();
    let k2 = hodge_constants(2)?.kappa[2].clone();
    let k3 = hodge_constants(3)?.kappa[3].clone();
    m.eq("kappa(2, 2)", &k2, &tau_correlator(&TauIndex::new(2, &[2, 2, 2]))?);
    m.eq("kappa(3, 3)", &k3, &tau_correlator(&TauIndex::new(3, &[2; 6]))?);
    m.eq("<tau_0^3>_0", &tau_correlator(&TauIndex::new(0, &[0, 0, 0]))?, &int(1));
    m.eq("<tau_1>_1", &tau_correlator(&TauIndex::new(1, &[1]))?, &rat(1, 24));
    let reductions = check_reductions(6)?;
    let mut out = m.outcome(4, "values");
    if out.passed {
        out.detail += &format!("; kappa(2,2) = {k2}, kappa(3,3) = {k3}; {reductions} string/dilaton reductions agree");
    }
    Ok(out)
}

const PARITY_DEVIATION: &str = "the closed form -B_{d+1}/(d(d+1)a^d) vanishes for even d >= 2, not odd d >= 3; both routes give r_3 = -1/360 at (a, b) = (-1, 2)";

fn tr_coefficient_routes() -> Check {
    const D: usize = 10;
    let mut m = Mismatches::default();
    let mut odd_nonzero = Vec::new();
    let mut even_vanish = true;
    for (a, b) in [(int(-1), 2), (int(-4), 3)] {
        let p = CurveParams::new(a.clone(), b)?;
        let closed = tr_coefficients_closed(&p, D)?;
        let local = tr_coefficients_local(&p, D)?;
        m.that(closed == local, format!("closed and local routes differ at (a, b) = ({a}, {b})"));
        for d in 1..=D {
            let r = &closed.r[d - 1];
            if d % 2 == 1 && d >= 3 && !r.is_zero() {
                odd_nonzero.push(format!("r_{d} = {r} at ({a}, {b}), want 0"));
            }
            if d % 2 == 0 && !r.is_zero() {
                even_vanish = false;
            }
        }
    }
    let routes_agree = m.0.is_empty();
    let odd_count = odd_nonzero.len();
    m.0.extend(odd_nonzero);
    let mut out = m.outcome(2 * (2 * D + 1), "coefficients");
    let r3 = tr_coefficients_closed(&CurveParams::principal(), 3)?.r[2].clone();
    if !out.passed && routes_agree && even_vanish && odd_count == 8 && r3 == rat(-1, 360) {
        out.documented = Some(PARITY_DEVIATION);
    }
    Ok(out)
}

fn family_scaling() -> Check {
    let mut m = Mismatches::default();
    let mut checked = 0;
    let a = int(-4);
    let b = 2i64;
    for (g, n) in strata_up_to(3) {
        let base = tr_amplitude_family(&CurveParams::principal(), g, n)?;
        let fam = tr_amplitude_family(&CurveParams::new(a.clone(), b)?, g, n)?;
        m.that(base.len() == fam.len(), format!("W_{{{g},{n}}}: term counts differ"));
        for (key, c) in base.terms() {
            let e = (b + 1) * (2 - 2 * g as i64 - n as i64) - n as i64 + key.iter().map(|&p| p as i64).sum::<i64>();
            let exps: Vec<i64> = key.iter().map(|&p| -(p as i64)).collect();
            m.eq(format!("W_{{{g},{n}}} at {key:?}"), &fam.coefficient(&exps)?, &(c * pow(&-a.clone(), e)?));
            checked += 1;
        }
    }
    Ok(m.outcome(checked, "amplitude coefficients"))
}

fn structural() -> Check {
    let mut m = Mismatches::default();
    let mut checked = 0;
    for (g, n) in strata_up_to(DESK_CHI) {
        let table = f_table(g, n)?;
        if (g, n) == (0, 3) || (g, n) == (1, 1) {
            // Base cases come from the full monomial decomposition, which would show any
            // entry beyond the total degree; symmetry holds trivially for one entry or one point.
            let top = (3 * g as i64 - 3 + n as i64) as usize;
            m.that(table.entries().all(|(k, _)| k.iter().sum::<usize>() <= top), format!("F_{{{g},{n}}} exceeds total degree"));
        } else {
            if let Err(e) = check_basis_symmetry(g, n) {
                m.0.push(e.to_string());
            }
            let over = over_degree_entries(g, n, 2)?;
            m.that(over.is_empty(), format!("F_{{{g},{n}}} nonzero beyond total degree at {over:?}"));
        }
        if (g, n) != (1, 1) {
            let f0 = table.zero_entry();
            m.that((sign(3 * g as i64 - 3 + n as i64) * &f0).is_positive(), format!("sign of F_{{{g},{n}}}[0] = {f0}"));
        }
        checked += 1;
    }
    for g in 2..=(DESK_CHI + 2) / 2 {
        let f = f_g0(g)?;
        m.that((sign(3 * g as i64 - 3) * &f).is_positive(), format!("sign of F_{{{g},0}} = {f}"));
        checked += 1;
    }
    Ok(m.outcome(checked, "tables"))
}

fn asymptotic_trend() -> Check {
    let mut m = Mismatches::default();
    let mut notes = Vec::new();
    for g in 1..=2 {
        let r100 = asymptotics(g, 100, AsymptoticMode::Volume)?.ratio();
        let r300 = asymptotics(g, 300, AsymptoticMode::Volume)?.ratio();
        m.that((r300 - 1.0).abs() < ASYM_VOLUME_TOL, format!("g = {g}: ratio {r300:.4} at n = 300"));
        m.that((r300 - 1.0).abs() < (r100 - 1.0).abs(), format!("g = {g}: no improvement from n = 100 to 300"));
        notes.push(format!("g = {g}: {r100:.4} -> {r300:.4}"));
    }
    let l = to_f64(&carea_lplus_g1_closed(300)?.1) * 300f64.sqrt();
    let target = 2.0 / std::f64::consts::PI.sqrt();
    m.that((l / target - 1.0).abs() < ASYM_LPLUS_TOL, format!("L+(1, 300) sqrt(300) = {l:.4}"));
    notes.push(format!("L+(1,300) sqrt(300) / (2/sqrt(pi)) = {:.4}", l / target));
    let mut out = m.outcome(5, "bounds");
    out.detail += &format!(" ({})", notes.join(", "));
    Ok(out)
}

/// Queries timed against a warm cache; together they touch every command.
pub const WARM_QUERIES: &[&[&str]] = &[
    &["volume", "--genus", "4", "--poles", "1"],
    &["volume", "--genus", "3", "--poles", "3"],
    &["volume", "--genus", "0", "--poles", "9"],
    &["fcoeff", "--genus", "4", "--npoints", "1", "--indices", "9"],
    &["fcoeff", "--genus", "2", "--npoints", "5", "--indices", "3,2,1,0,0"],
    &["constants", "--genus", "3", "--poles", "1"],
    &["constants", "--genus", "1", "--poles", "7"],
    &["table", "--genus", "2", "--poles-from", "0", "--poles-to", "5", "--quantity", "volume"],
    &["table", "--genus", "1", "--poles-from", "0", "--poles-to", "7", "--quantity", "lplus", "--format", "csv"],
    &["table", "--genus", "0", "--poles-from", "4", "--poles-to", "9", "--quantity", "carea", "--format", "json"],
    &["poly", "--genus", "2"],
    &["poly", "--genus", "3"],
    &["asym", "--genus", "2", "--poles", "300"],
];

struct Run {
    elapsed: Duration,
    computed: Option<usize>,
}

fn run_qdvol(bin: &Path, cache: &Path, args: &[&str]) -> Result<Run, String> {
    let start = Instant::now();
    let out = Command::new(bin)
        .arg("--cache-dir")
        .arg(cache)
        .arg("--stats")
        .args(args)
        .output()
        .map_err(|e| format!("cannot run {}: {e}", bin.display()))?;
    let elapsed = start.elapsed();
    let stderr = String::from_utf8_lossy(&out.stderr);
    if !out.status.success() {
        return Err(format!("`{}` failed: {}", args.join(" "), stderr.trim()));
    }
    let computed = stderr
        .lines()
        .find_map(|l| l.strip_prefix("qdvol: tables computed: "))
        .and_then(|v| v.trim().parse().ok());
    Ok(Run { elapsed, computed })
}

fn performance(bin: Option<&Path>) -> Check {
    let Some(bin) = bin else {
        return Ok(Outcome::check(false, "no qdvol binary available"));
    };
    let dir = tempfile::tempdir().map_err(|e| qdvol_core::Error::Domain(e.to_string()))?;
    let max_chi = DESK_CHI.to_string();
    let cold = match run_qdvol(bin, dir.path(), &["precompute", "--max-chi", &max_chi]) {
        Ok(r) => r,
        Err(e) => return Ok(Outcome::check(false, e)),
    };
    let mut m = Mismatches::default();
    m.that(cold.elapsed < COLD_BUDGET, format!("cold build took {:.1} s", cold.elapsed.as_secs_f64()));
    let expected = strata_up_to(DESK_CHI).len();
    m.that(
        cold.computed.is_some_and(|c| c >= expected),
        format!("cold build computed {:?} tables, expected at least {expected}", cold.computed),
    );
    let mut slowest = (Duration::ZERO, String::new());
    let mut recomputed = 0;
    for q in WARM_QUERIES {
        match run_qdvol(bin, dir.path(), q) {
            Ok(r) => {
                if r.elapsed > slowest.0 {
                    slowest = (r.elapsed, q.join(" "));
                }
                recomputed += r.computed.unwrap_or(0);
                m.that(r.elapsed < WARM_BUDGET, format!("`{}` took {:.3} s", q.join(" "), r.elapsed.as_secs_f64()));
            }
            Err(e) => m.0.push(e),
        }
    }
    let mut out = m.outcome(WARM_QUERIES.len() + 1, "timings");
    out.detail += &format!(
        " (cold build of {expected} tables {:.2} s; slowest warm query {:.3} s: {}; {recomputed} tables recomputed while warm)",
        cold.elapsed.as_secs_f64(),
        slowest.0.as_secs_f64(),
        slowest.1
    );
    Ok(out)
}

/// Summary line and overall verdict.
pub fn summarize(results: &[CriterionResult]) -> (String, bool) {
    let passed = results.iter().filter(|r| r.passed).count();
    let documented = results.iter().filter(|r| !r.passed && r.documented.is_some()).count();
    let failed = results.len() - passed - documented;
    let ok = failed == 0;
    (
        format!("{passed} passed, {documented} failed as documented, {failed} failed unexpectedly"),
        ok,
    )
}
