//! Machine and human renderings of sweep records, single reports and the
//! small-`n` tables. Rationals are always written as `"num/den"`.

use std::fmt::Write as _;
use std::io::Write;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::rat_string;
use crate::identities::{verify, EvaluationReport, IdentityId, IdentityInstance, Summary, SweepRecord};
use crate::sequences::HoradamParams;
use crate::Rational;

#[derive(Serialize)]
struct ParamsOut {
    a: String,
    b: String,
    p: String,
    q: String,
}

impl From<&HoradamParams<Rational>> for ParamsOut {
    fn from(h: &HoradamParams<Rational>) -> Self {
        Self { a: rat_string(&h.a), b: rat_string(&h.b), p: rat_string(&h.p), q: rat_string(&h.q) }
    }
}

/// One JSON line. Field order is part of the format.
#[derive(Serialize)]
struct RecordOut<'a> {
    identity: &'a str,
    params: ParamsOut,
    n: u32,
    a_n: i64,
    c: i64,
    r: i64,
    s: i64,
    d: i64,
    lhs: Option<String>,
    rhs: Option<String>,
    equal: Option<bool>,
    class: &'a str,
}

#[derive(Serialize)]
struct FooterOut<'a> {
    summary: &'a Summary,
}

/// Header of the sweep CSV.
pub const SWEEP_CSV_HEADER: &str = "identity,a,b,p,q,n,a_n,c,r,s,d,lhs,rhs,equal,class";

fn record_out(rec: &SweepRecord) -> RecordOut<'_> {
    let p = &rec.point;
    RecordOut {
        identity: rec.identity.name(),
        params: (&p.params).into(),
        n: p.n,
        a_n: p.an,
        c: p.c,
        r: p.r,
        s: p.s,
        d: p.d,
        lhs: rec.lhs.as_ref().map(rat_string),
        rhs: rec.rhs.as_ref().map(rat_string),
        equal: rec.equal(),
        class: rec.class.as_str(),
    }
}

pub fn json_line(rec: &SweepRecord) -> String {
    serde_json::to_string(&record_out(rec)).expect("plain data serializes")
}

pub fn json_footer(summary: &Summary) -> String {
    serde_json::to_string(&FooterOut { summary }).expect("plain data serializes")
}

pub fn csv_row(rec: &SweepRecord) -> String {
    csv_fields(record_out(rec))
}

fn csv_fields(r: RecordOut<'_>) -> String {
    let opt = |s: Option<String>| s.unwrap_or_default();
    let fields = [
        r.identity.to_string(),
        r.params.a,
        r.params.b,
        r.params.p,
        r.params.q,
        r.n.to_string(),
        r.a_n.to_string(),
        r.c.to_string(),
        r.r.to_string(),
        r.s.to_string(),
        r.d.to_string(),
        opt(r.lhs),
        opt(r.rhs),
        r.equal.map(|e| e.to_string()).unwrap_or_default(),
        r.class.to_string(),
    ];
    fields.join(",")
}

pub fn human_line(rec: &SweepRecord) -> String {
    let p = &rec.point;
    let mut line = format!(
        "{:<10} {:<10} n={} a_n={} c={} r={} s={} d={}  {}",
        rec.identity.name(),
        p.family,
        p.n,
        p.an,
        p.c,
        p.r,
        p.s,
        p.d,
        rec.class.as_str()
    );
    match (&rec.lhs, &rec.rhs, &rec.message) {
        (Some(l), Some(r), _) if l == r => write!(line, "  {}", rat_string(l)).unwrap(),
        (Some(l), Some(r), _) => write!(line, "  lhs={} rhs={}", rat_string(l), rat_string(r)).unwrap(),
        (_, _, Some(m)) => write!(line, "  {m}").unwrap(),
        _ => {}
    }
    line
}

pub fn human_summary(summary: &Summary) -> String {
    format!(
        "total {}: equal {}, mismatch {}, outside_equal {}, outside_mismatch {}, skipped {}, error {}",
        summary.total,
        summary.equal,
        summary.mismatch,
        summary.outside_equal,
        summary.outside_mismatch,
        summary.skipped,
        summary.error
    )
}

/// Multi-line description of one verification.
pub fn human_report(rep: &EvaluationReport) -> String {
    let inst = &rep.instance;
    let h = &inst.params;
    let mut out = String::new();
    writeln!(out, "identity: {}", inst.id).unwrap();
    writeln!(
        out,
        "params: a={} b={} p={} q={}",
        rat_string(&h.a),
        rat_string(&h.b),
        rat_string(&h.p),
        rat_string(&h.q)
    )
    .unwrap();
    writeln!(out, "n={} a_n={} c={} r={} s={} d={}", inst.n, inst.an, inst.c, inst.r, inst.s, inst.d).unwrap();
    if rep.equal {
        writeln!(out, "equal: true, value {}", rat_string(&rep.lhs)).unwrap();
    } else {
        writeln!(out, "equal: false, lhs {} rhs {}", rat_string(&rep.lhs), rat_string(&rep.rhs)).unwrap();
    }
    writeln!(out, "class: {}", rep.class().as_str()).unwrap();
    writeln!(out, "oracle: {} terms in {:?}", rep.oracle_terms, rep.oracle_time).unwrap();
    write!(out, "closed form: {} terms in {:?}", rep.closed_terms, rep.closed_time).unwrap();
    out
}

fn report_out(rep: &EvaluationReport) -> RecordOut<'_> {
    let inst = &rep.instance;
    RecordOut {
        identity: inst.id.name(),
        params: (&inst.params).into(),
        n: inst.n,
        a_n: inst.an,
        c: inst.c,
        r: inst.r,
        s: inst.s,
        d: inst.d,
        lhs: Some(rat_string(&rep.lhs)),
        rhs: Some(rat_string(&rep.rhs)),
        equal: Some(rep.equal),
        class: rep.class().as_str(),
    }
}

/// A single report in the sweep JSON-lines schema.
pub fn report_json(rep: &EvaluationReport) -> String {
    serde_json::to_string(&report_out(rep)).expect("plain data serializes")
}

/// A single report as one sweep CSV row.
pub fn report_csv(rep: &EvaluationReport) -> String {
    csv_fields(report_out(rep))
}

/// One row of a small-depth table: the nested sum of `W_{a_0} / p^{a_0}`
/// from 1 to `a_n`, by oracle and by closed form.
#[derive(Debug, Clone, PartialEq)]
pub struct TableRow {
    pub an: i64,
    pub lhs: Rational,
    pub rhs: Rational,
}

/// Rows for `a_n` in `ans` at depth `n`. Fibonacci uses its own closed form,
/// other sequences the general one at `r = 1, s = 0, c = 1`.
pub fn table(params: &HoradamParams<Rational>, n: u32, ans: &[i64]) -> Result<Vec<TableRow>> {
    let id = if *params == HoradamParams::fibonacci() { IdentityId::H } else { IdentityId::F3 };
    ans.iter()
        .map(|&an| {
            let rep = verify(&IdentityInstance::new(id, params.clone(), n, an, 1, 1, 0, 0)?)?;
            Ok(TableRow { an, lhs: rep.lhs, rhs: rep.rhs })
        })
        .collect()
}

pub fn write_table<W: Write>(rows: &[TableRow], csv: bool, mut out: W) -> Result<()> {
    let io = |e: std::io::Error| Error::Invariant(format!("write failed: {e}"));
    if csv {
        writeln!(out, "a_n,lhs,rhs").map_err(io)?;
        for r in rows {
            writeln!(out, "{},{},{}", r.an, rat_string(&r.lhs), rat_string(&r.rhs)).map_err(io)?;
        }
    } else {
        writeln!(out, "{:>6}  {:>16}  {:>16}", "a_n", "oracle", "closed form").map_err(io)?;
        for r in rows {
            writeln!(out, "{:>6}  {:>16}  {:>16}", r.an, rat_string(&r.lhs), rat_string(&r.rhs)).map_err(io)?;
        }
    }
    Ok(())
}
