//! Work counts and timings for closed form, prefix-sum oracle and literal
//! enumeration.
//!
//! `summand_evals` counts what each method actually does: binomials and
//! sequence terms for a closed form, prefix-sum updates for the DP oracle
//! and summand evaluations for the enumerator.

use std::io::Write;
use std::time::Instant;

use serde::Serialize;

use crate::combinatorics::nested_ones;
use crate::error::{Error, Result};
use crate::identities::{closed_form, lhs_spec, IdentityInstance};
use crate::nested::{nested_sum_dp, nested_sum_naive, oracle_nested, oracle_nested_naive, Limits};
use crate::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Closed,
    Dp,
    Naive,
}

/// One CSV row: `instance_id, method, n, range, summand_evals, wall_ns`,
/// where `range = a_n - c`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRow {
    pub instance_id: String,
    pub method: Method,
    pub n: u32,
    pub range: i64,
    pub summand_evals: u64,
    pub wall_ns: u128,
}

impl BenchRow {
    /// The row without its timing, which is the reproducible part.
    pub fn counts(&self) -> (String, Method, u32, i64, u64) {
        (self.instance_id.clone(), self.method, self.n, self.range, self.summand_evals)
    }
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, u128) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed().as_nanos())
}

/// The all-ones nested sum for each `n` and `a_n - c` in `ranges`. The
/// enumerator is skipped where it would exceed `cap` tuples.
pub fn bench_ones(ns: &[u32], ranges: &[i64], c: i64, cap: u64) -> Result<Vec<BenchRow>> {
    let one = || Rational::from_integer(1.into());
    let mut rows = Vec::new();
    for &n in ns {
        for &range in ranges {
            let an = c + range;
            let row = |method, summand_evals, wall_ns| BenchRow {
                instance_id: "ones".into(),
                method,
                n,
                range,
                summand_evals,
                wall_ns,
            };
            let (_, ns_closed) = timed(|| nested_ones(n, an, c));
            rows.push(row(Method::Closed, 1, ns_closed));
            let (dp, ns_dp) = timed(|| nested_sum_dp(n, an, &Limits::Uniform(c), |_| one()));
            rows.push(row(Method::Dp, dp?.additions, ns_dp));
            match timed(|| nested_sum_naive(n, an, &Limits::Uniform(c), |_| one(), cap)) {
                (Ok(v), t) => rows.push(row(Method::Naive, v.summand_evals, t)),
                (Err(Error::CapExceeded { .. }), _) => {}
                (Err(e), _) => return Err(e),
            }
        }
    }
    Ok(rows)
}

/// All three methods on one identity instance.
pub fn bench_instance(inst: &IdentityInstance, cap: u64) -> Result<Vec<BenchRow>> {
    let id = format!("{}", inst.id);
    let range = inst.an - inst.c;
    let row = |method, summand_evals, wall_ns| BenchRow {
        instance_id: id.clone(),
        method,
        n: inst.n,
        range,
        summand_evals,
        wall_ns,
    };
    let spec = lhs_spec(inst)?;
    let mut rows = Vec::new();
    let (closed, t) = timed(|| closed_form(inst));
    rows.push(row(Method::Closed, closed?.terms, t));
    let (dp, t) = timed(|| oracle_nested(&spec));
    rows.push(row(Method::Dp, dp?.additions, t));
    match timed(|| oracle_nested_naive(&spec, cap)) {
        (Ok(v), t) => rows.push(row(Method::Naive, v.summand_evals, t)),
        (Err(Error::CapExceeded { .. }), _) => {}
        (Err(e), _) => return Err(e),
    }
    Ok(rows)
}

pub const CSV_HEADER: &str = "instance_id,method,n,range,summand_evals,wall_ns";

pub fn write_csv<W: Write>(rows: &[BenchRow], out: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    let io = |e: csv::Error| Error::Invariant(format!("csv write failed: {e}"));
    w.write_record(CSV_HEADER.split(',')).map_err(io)?;
    for r in rows {
        w.serialize(r).map_err(io)?;
    }
    w.flush().map_err(|e| Error::Invariant(format!("csv write failed: {e}")))?;
    Ok(())
}
