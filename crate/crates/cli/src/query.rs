//! Dispatch of computational commands and output rendering.

use qdvol_core::analytics::{
    asymptotics, carea_principal, check_stratum, lplus_principal, pq_polynomials, rs_polynomials, volume_principal,
    Asymptotic, AsymptoticMode, RationalPolynomial,
};
use qdvol_core::exact::rat;
use qdvol_core::spectral::{f_g0, f_table};
use qdvol_core::{PiScalar, Rational};
use serde::Serialize;

use crate::args::{Command, OutputFormat, Quantity};
use crate::error::{CliError, CliResult};
use crate::format::{float, rational, ExactJson};
use crate::request::QueryRequest;

/// Renders the answer to a computational command. `selftest` is handled elsewhere.
pub fn run_query(req: &QueryRequest) -> CliResult<String> {
    let f = req.format;
    match &req.command {
        Command::Volume { genus, poles } => {
            let v = volume_principal(*genus, *poles)?;
            single(f, Row::value(Quantity::Volume, *genus, *poles, &v, None))
        }
        Command::Fcoeff { genus, npoints, indices } => fcoeff(f, *genus, *npoints, indices.as_deref()),
        Command::Constants { genus, poles } => constants(f, *genus, *poles),
        Command::Poly { genus } => poly(f, *genus),
        Command::Table { genus, poles_from, poles_to, quantity, approx } => {
            emit_table(f, *quantity, *genus, *poles_from..=*poles_to, *approx)
        }
        Command::Asym { genus, poles } => asym(f, *genus, *poles),
        Command::Precompute { max_chi } => precompute(f, *max_chi),
        Command::Selftest { .. } => Err(CliError::InvalidRequest("selftest is not a query".into())),
    }
}

fn quantity_value(q: Quantity, g: u32, n: u32) -> CliResult<PiScalar> {
    Ok(match q {
        Quantity::Volume => volume_principal(g, n)?,
        Quantity::Carea => carea_principal(g, n)?,
        Quantity::Lplus => PiScalar::new(lplus_principal(g, n)?, 0),
    })
}

#[derive(Debug, Clone, Serialize)]
struct ValueRow {
    quantity: &'static str,
    genus: u32,
    poles: u32,
    coefficient: ExactJson,
    pi_power: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    approx: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
struct SkippedRow {
    quantity: &'static str,
    genus: u32,
    poles: u32,
    skipped: String,
}

#[derive(Debug, Clone, Serialize)]
#[serde(untagged)]
enum Row {
    Value(ValueRow),
    Skipped(SkippedRow),
}

impl Row {
    fn value(q: Quantity, g: u32, n: u32, v: &PiScalar, approx: Option<f64>) -> Row {
        Row::Value(ValueRow {
            quantity: q.name(),
            genus: g,
            poles: n,
            coefficient: v.coefficient().into(),
            pi_power: v.pi_power(),
            approx,
        })
    }

    fn plain(&self) -> String {
        match self {
            Row::Value(r) => {
                let c = format!("{}/{}", r.coefficient.num, r.coefficient.den);
                // L+ carries no power of pi and prints as a bare rational.
                let text = if r.quantity == Quantity::Lplus.name() { c } else { format!("{c} * pi^{}", r.pi_power) };
                match r.approx {
                    Some(x) => format!("{text}\t{}", float(x)),
                    None => text,
                }
            }
            Row::Skipped(r) => format!("skipped: {}", r.skipped),
        }
    }

    fn csv_record(&self, approx: bool) -> Vec<String> {
        let mut rec = match self {
            Row::Value(r) => vec![
                r.quantity.to_string(),
                r.genus.to_string(),
                r.poles.to_string(),
                r.coefficient.num.clone(),
                r.coefficient.den.clone(),
                r.pi_power.to_string(),
            ],
            Row::Skipped(r) => {
                vec![r.quantity.to_string(), r.genus.to_string(), r.poles.to_string(), String::new(), String::new(), String::new()]
            }
        };
        if approx {
            rec.push(match self {
                Row::Value(r) => r.approx.map(float).unwrap_or_default(),
                Row::Skipped(_) => String::new(),
            });
        }
        rec.push(match self {
            Row::Value(_) => "ok".into(),
            Row::Skipped(r) => format!("skipped: {}", r.skipped),
        });
        rec
    }
}

fn csv_text(header: &[&str], records: impl IntoIterator<Item = Vec<String>>) -> CliResult<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for r in records {
        w.write_record(&r)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Serialize(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::Serialize(e.to_string()))
}

fn json_text(v: &impl Serialize) -> CliResult<String> {
    Ok(serde_json::to_string_pretty(v)? + "\n")
}

fn row_header(approx: bool) -> Vec<&'static str> {
    let mut h = vec!["quantity", "genus", "poles", "num", "den", "pi_power"];
    if approx {
        h.push("approx");
    }
    h.push("status");
    h
}

fn single(f: OutputFormat, row: Row) -> CliResult<String> {
    match f {
        OutputFormat::Plain => Ok(row.plain() + "\n"),
        OutputFormat::Json => json_text(&row),
        OutputFormat::Csv => csv_text(&row_header(false), [row.csv_record(false)]),
    }
}

fn rows(f: OutputFormat, rows: &[Row], plain_label: impl Fn(&Row) -> String, approx: bool) -> CliResult<String> {
    match f {
        OutputFormat::Plain => Ok(rows.iter().map(|r| format!("{}\t{}\n", plain_label(r), r.plain())).collect()),
        OutputFormat::Json => json_text(&rows),
        OutputFormat::Csv => csv_text(&row_header(approx), rows.iter().map(|r| r.csv_record(approx))),
    }
}

/// One row per `n` in the range. Invalid strata inside the range become flagged
/// rows; a range with no valid stratum is an error.
pub fn emit_table(
    f: OutputFormat,
    q: Quantity,
    g: u32,
    range: std::ops::RangeInclusive<u32>,
    approx: bool,
) -> CliResult<String> {
    let mut out = Vec::new();
    let mut any = false;
    for n in range.clone() {
        match check_stratum(g, n) {
            Ok(()) => {
                let v = quantity_value(q, g, n)?;
                let a = approx.then(|| v.to_f64());
                out.push(Row::value(q, g, n, &v, a));
                any = true;
            }
            Err(e) => out.push(Row::Skipped(SkippedRow { quantity: q.name(), genus: g, poles: n, skipped: e.to_string() })),
        }
    }
    if !any {
        return Err(CliError::InvalidRequest(format!(
            "no {} is defined for genus {g} and poles {}..={}",
            q.name(),
            range.start(),
            range.end()
        )));
    }
    rows(
        f,
        &out,
        |r| match r {
            Row::Value(v) => v.poles.to_string(),
            Row::Skipped(s) => s.poles.to_string(),
        },
        approx,
    )
}

fn constants(f: OutputFormat, g: u32, n: u32) -> CliResult<String> {
    let list = [
        Row::value(Quantity::Carea, g, n, &carea_principal(g, n)?, None),
        Row::value(Quantity::Lplus, g, n, &PiScalar::new(lplus_principal(g, n)?, 0), None),
    ];
    rows(
        f,
        &list,
        |r| match r {
            Row::Value(v) => v.quantity.to_string(),
            Row::Skipped(s) => s.quantity.to_string(),
        },
        false,
    )
}

#[derive(Serialize)]
struct FcoeffJson {
    quantity: &'static str,
    genus: u32,
    npoints: u32,
    indices: Vec<u32>,
    coefficient: ExactJson,
}

fn fcoeff(f: OutputFormat, g: u32, n: u32, indices: Option<&[u32]>) -> CliResult<String> {
    let idx: Vec<u32> = indices.map_or_else(|| vec![0; n as usize], <[u32]>::to_vec);
    let v: Rational = if n == 0 {
        f_g0(g)?
    } else {
        f_table(g, n)?.get(&idx.iter().map(|&k| k as usize).collect::<Vec<_>>())
    };
    match f {
        OutputFormat::Plain => Ok(rational(&v) + "\n"),
        OutputFormat::Json => {
            json_text(&FcoeffJson { quantity: "fcoeff", genus: g, npoints: n, indices: idx, coefficient: (&v).into() })
        }
        OutputFormat::Csv => {
            let joined = idx.iter().map(u32::to_string).collect::<Vec<_>>().join(" ");
            csv_text(
                &["quantity", "genus", "npoints", "indices", "num", "den"],
                [vec![
                    "fcoeff".into(),
                    g.to_string(),
                    n.to_string(),
                    joined,
                    v.numer().to_string(),
                    v.denom().to_string(),
                ]],
            )
        }
    }
}

#[derive(Serialize)]
struct PolyJson {
    genus: u32,
    p: Vec<ExactJson>,
    q: Vec<ExactJson>,
    r: Vec<ExactJson>,
    s: Vec<ExactJson>,
    m_g: ExactJson,
    n_g: ExactJson,
}

fn coeffs(p: &RationalPolynomial) -> Vec<ExactJson> {
    p.coefficients().iter().map(ExactJson::from).collect()
}

fn poly(f: OutputFormat, g: u32) -> CliResult<String> {
    let pq = pq_polynomials(g)?;
    let rs = rs_polynomials(g)?;
    let named = [("p", &pq.p), ("q", &pq.q), ("r", &rs.r), ("s", &rs.s)];
    match f {
        OutputFormat::Plain => {
            let mut out: String = named.iter().map(|(k, p)| format!("{k}(n) = {p}\n")).collect();
            out += &format!("m_g = {}\nn_g = {}\n", rational(&pq.m_g), rational(&rs.n_g));
            Ok(out)
        }
        OutputFormat::Json => json_text(&PolyJson {
            genus: g,
            p: coeffs(&pq.p),
            q: coeffs(&pq.q),
            r: coeffs(&rs.r),
            s: coeffs(&rs.s),
            m_g: (&pq.m_g).into(),
            n_g: (&rs.n_g).into(),
        }),
        OutputFormat::Csv => {
            let mut recs = Vec::new();
            for (k, p) in named {
                for (d, c) in p.coefficients().iter().enumerate() {
                    recs.push(vec![k.into(), d.to_string(), c.numer().to_string(), c.denom().to_string()]);
                }
            }
            for (k, c) in [("m_g", &pq.m_g), ("n_g", &rs.n_g)] {
                recs.push(vec![k.into(), String::new(), c.numer().to_string(), c.denom().to_string()]);
            }
            csv_text(&["name", "degree", "num", "den"], recs)
        }
    }
}

#[derive(Serialize)]
struct AsymJson {
    mode: &'static str,
    constant: ExactJson,
    two_power: i64,
    pi_power: ExactJson,
    n_power: ExactJson,
    ln_value: f64,
    ln_estimate: f64,
    ratio: f64,
}

impl From<&Asymptotic> for AsymJson {
    fn from(a: &Asymptotic) -> Self {
        AsymJson {
            mode: match a.mode {
                AsymptoticMode::Volume => "volume",
                AsymptoticMode::Lplus => "lplus",
            },
            constant: (&a.constant).into(),
            two_power: a.two_power,
            pi_power: (&rat(a.pi_power_x2, 2)).into(),
            n_power: (&rat(a.n_power_x2, 2)).into(),
            ln_value: a.ln_value,
            ln_estimate: a.ln_estimate,
            ratio: a.ratio(),
        }
    }
}

fn asym(f: OutputFormat, g: u32, n: u32) -> CliResult<String> {
    let both = [asymptotics(g, n, AsymptoticMode::Volume)?, asymptotics(g, n, AsymptoticMode::Lplus)?];
    let rows: Vec<AsymJson> = both.iter().map(AsymJson::from).collect();
    match f {
        OutputFormat::Plain => Ok(rows
            .iter()
            .map(|r| {
                format!(
                    "{}: constant={}/{} two_power={} pi_power={}/{} n_power={}/{} ln_value={} ln_estimate={} ratio={}\n",
                    r.mode,
                    r.constant.num,
                    r.constant.den,
                    r.two_power,
                    r.pi_power.num,
                    r.pi_power.den,
                    r.n_power.num,
                    r.n_power.den,
                    float(r.ln_value),
                    float(r.ln_estimate),
                    float(r.ratio)
                )
            })
            .collect()),
        OutputFormat::Json => {
            #[derive(Serialize)]
            struct Out<'a> {
                genus: u32,
                poles: u32,
                rows: &'a [AsymJson],
            }
            json_text(&Out { genus: g, poles: n, rows: &rows })
        }
        OutputFormat::Csv => csv_text(
            &["mode", "genus", "poles", "constant_num", "constant_den", "two_power", "pi_power", "n_power", "ln_value", "ln_estimate", "ratio"],
            rows.iter().map(|r| {
                vec![
                    r.mode.into(),
                    g.to_string(),
                    n.to_string(),
                    r.constant.num.clone(),
                    r.constant.den.clone(),
                    r.two_power.to_string(),
                    format!("{}/{}", r.pi_power.num, r.pi_power.den),
                    format!("{}/{}", r.n_power.num, r.n_power.den),
                    float(r.ln_value),
                    float(r.ln_estimate),
                    float(r.ratio),
                ]
            }),
        ),
    }
}

/// Every stable `(g, n)` with `n >= 1` and `2g - 2 + n <= max_chi`, by increasing `2g - 2 + n`.
pub fn strata_up_to(max_chi: u32) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    for chi in 1..=max_chi as i64 {
        for g in 0..=(chi as u32).div_ceil(2) {
            let n = chi + 2 - 2 * g as i64;
            if n >= 1 {
                out.push((g, n as u32));
            }
        }
    }
    out
}

#[derive(Serialize)]
struct PrecomputeRow {
    genus: u32,
    npoints: u32,
    entries: usize,
    zero_entry: ExactJson,
}

fn precompute(f: OutputFormat, max_chi: u32) -> CliResult<String> {
    let mut out = Vec::new();
    for (g, n) in strata_up_to(max_chi) {
        let t = f_table(g, n)?;
        out.push(PrecomputeRow { genus: g, npoints: n, entries: t.len(), zero_entry: (&t.zero_entry()).into() });
    }
    match f {
        OutputFormat::Plain => Ok(out
            .iter()
            .map(|r| format!("F_{{{},{}}}\t{} entries\tF[0] = {}/{}\n", r.genus, r.npoints, r.entries, r.zero_entry.num, r.zero_entry.den))
            .collect()),
        OutputFormat::Json => json_text(&out),
        OutputFormat::Csv => csv_text(
            &["genus", "npoints", "entries", "zero_num", "zero_den"],
            out.iter().map(|r| {
                vec![
                    r.genus.to_string(),
                    r.npoints.to_string(),
                    r.entries.to_string(),
                    r.zero_entry.num.clone(),
                    r.zero_entry.den.clone(),
                ]
            }),
        ),
    }
}
