//! Closed form against oracle, for one instance or a whole grid.

use std::time::{Duration, Instant};

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{closed_form, lhs_spec, Family, IdentityId, IdentityInstance, SequenceConstraint};
use crate::error::{Error, Result};
use crate::nested::oracle_nested;
use crate::sequences::HoradamParams;
use crate::Rational;

/// Oracle and closed-form values for one instance.
#[derive(Debug, Clone)]
pub struct EvaluationReport {
    pub instance: IdentityInstance,
    pub lhs: Rational,
    pub rhs: Rational,
    pub equal: bool,
    pub in_domain: bool,
    pub oracle_terms: u64,
    pub closed_terms: u64,
    pub oracle_time: Duration,
    pub closed_time: Duration,
}

impl EvaluationReport {
    pub fn class(&self) -> Class {
        match (self.in_domain, self.equal) {
            (true, true) => Class::Equal,
            (true, false) => Class::Mismatch,
            (false, true) => Class::OutsideEqual,
            (false, false) => Class::OutsideMismatch,
        }
    }
}

pub fn verify(inst: &IdentityInstance) -> Result<EvaluationReport> {
    let spec = lhs_spec(inst)?;
    let start = Instant::now();
    let lhs = oracle_nested(&spec)?;
    let oracle_time = start.elapsed();
    let start = Instant::now();
    let rhs = closed_form(inst)?;
    let closed_time = start.elapsed();
    Ok(EvaluationReport {
        instance: inst.clone(),
        equal: lhs.value == rhs.value,
        lhs: lhs.value,
        rhs: rhs.value,
        in_domain: inst.in_domain(),
        oracle_terms: lhs.summand_evals,
        closed_terms: rhs.terms,
        oracle_time,
        closed_time,
    })
}

/// Outcome of one grid point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Class {
    Equal,
    Mismatch,
    /// `a_n < c - 1` and the values still agree
    OutsideEqual,
    OutsideMismatch,
    /// a precondition of the identity fails
    Skipped,
    Error,
}

impl Class {
    pub fn as_str(self) -> &'static str {
        match self {
            Class::Equal => "equal",
            Class::Mismatch => "mismatch",
            Class::OutsideEqual => "outside_equal",
            Class::OutsideMismatch => "outside_mismatch",
            Class::Skipped => "skipped",
            Class::Error => "error",
        }
    }
}

/// How the outermost upper limit is chosen at a grid point.
#[derive(Debug, Clone, PartialEq)]
pub enum AnAxis {
    /// `a_n = c + offset`
    Offsets(Vec<i64>),
    Absolute(Vec<i64>),
}

impl AnAxis {
    fn values(&self, c: i64) -> Vec<i64> {
        match self {
            AnAxis::Offsets(v) => v.iter().map(|o| c + o).collect(),
            AnAxis::Absolute(v) => v.clone(),
        }
    }
}

/// A product grid. Axes an identity does not use collapse to one value.
#[derive(Debug, Clone)]
pub struct Grid {
    pub families: Vec<Family>,
    pub ns: Vec<u32>,
    pub cs: Vec<i64>,
    pub an: AnAxis,
    pub rs: Vec<i64>,
    pub ss: Vec<i64>,
    pub ds: Vec<i64>,
}

impl Default for Grid {
    fn default() -> Self {
        Self {
            families: Family::builtins(),
            ns: (1..=4).collect(),
            cs: vec![-2, 0, 1],
            an: AnAxis::Offsets((-1..=6).collect()),
            rs: vec![-2, -1, 1, 2, 3],
            ss: vec![-3, 0, 2],
            ds: vec![-1, 0, 2],
        }
    }
}

impl Grid {
    pub fn empty() -> Self {
        Self {
            families: Vec::new(),
            ns: Vec::new(),
            cs: Vec::new(),
            an: AnAxis::Absolute(Vec::new()),
            rs: Vec::new(),
            ss: Vec::new(),
            ds: Vec::new(),
        }
    }

    /// Families `id` can run on. Identities tied to one sequence use it
    /// even when the grid does not list it.
    fn families_for(&self, id: IdentityId) -> Vec<Family> {
        let constraint = id.constraint();
        let fixed = match constraint {
            SequenceConstraint::Fibonacci => Family::by_name("fibonacci"),
            SequenceConstraint::Lucas => Family::by_name("lucas"),
            _ => None,
        };
        match fixed {
            Some(f) if !self.families.is_empty() => vec![f],
            Some(_) => Vec::new(),
            None => self.families.iter().filter(|f| constraint.admits(&f.params)).cloned().collect(),
        }
    }

    /// Grid points for `id`, in grid order.
    pub fn points(&self, id: IdentityId) -> Vec<GridPoint> {
        let axis = |used: bool, values: &[i64], fixed: i64| if used { values.to_vec() } else { vec![fixed] };
        let rs = axis(id.uses_r(), &self.rs, id.fixed_r());
        let ss = axis(id.uses_s(), &self.ss, 0);
        let ds = axis(id.uses_d(), &self.ds, 0);
        let cs = if id == IdentityId::H { vec![1] } else { self.cs.clone() };
        let mut out = Vec::new();
        for family in self.families_for(id) {
            for &n in &self.ns {
                for &c in &cs {
                    for an in self.an.values(c) {
                        for &r in &rs {
                            for &s in &ss {
                                for &d in &ds {
                                    out.push(GridPoint {
                                        family: family.name.to_string(),
                                        params: family.params.clone(),
                                        n,
                                        an,
                                        c,
                                        r,
                                        s,
                                        d,
                                    });
                                }
                            }
                        }
                    }
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GridPoint {
    pub family: String,
    pub params: HoradamParams<Rational>,
    pub n: u32,
    pub an: i64,
    pub c: i64,
    pub r: i64,
    pub s: i64,
    pub d: i64,
}

/// One sweep row. Values are absent for skipped and failed points.
#[derive(Debug, Clone)]
pub struct SweepRecord {
    pub identity: IdentityId,
    pub point: GridPoint,
    pub lhs: Option<Rational>,
    pub rhs: Option<Rational>,
    pub class: Class,
    pub message: Option<String>,
}

impl SweepRecord {
    pub fn equal(&self) -> Option<bool> {
        Some(self.lhs.as_ref()? == self.rhs.as_ref()?)
    }
}

/// Evaluates one point, turning every failure into a record.
pub fn evaluate_point(id: IdentityId, point: &GridPoint) -> SweepRecord {
    let p = point;
    let record = |lhs, rhs, class, message| SweepRecord { identity: id, point: p.clone(), lhs, rhs, class, message };
    let inst = match IdentityInstance::new(id, p.params.clone(), p.n, p.an, p.c, p.r, p.s, p.d) {
        Ok(inst) => inst,
        Err(e @ (Error::Precondition(_) | Error::InvalidParams(_))) => {
            return record(None, None, Class::Skipped, Some(e.to_string()))
        }
        Err(e) => return record(None, None, Class::Error, Some(e.to_string())),
    };
    match verify(&inst) {
        Ok(rep) => {
            let class = rep.class();
            record(Some(rep.lhs), Some(rep.rhs), class, None)
        }
        Err(e) => record(None, None, Class::Error, Some(e.to_string())),
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub equal: usize,
    pub mismatch: usize,
    pub outside_equal: usize,
    pub outside_mismatch: usize,
    pub skipped: usize,
    pub error: usize,
}

impl Summary {
    pub fn add(&mut self, class: Class) {
        self.total += 1;
        match class {
            Class::Equal => self.equal += 1,
            Class::Mismatch => self.mismatch += 1,
            Class::OutsideEqual => self.outside_equal += 1,
            Class::OutsideMismatch => self.outside_mismatch += 1,
            Class::Skipped => self.skipped += 1,
            Class::Error => self.error += 1,
        }
    }

    pub fn merge(&mut self, other: &Summary) {
        self.total += other.total;
        self.equal += other.equal;
        self.mismatch += other.mismatch;
        self.outside_equal += other.outside_equal;
        self.outside_mismatch += other.outside_mismatch;
        self.skipped += other.skipped;
        self.error += other.error;
    }

    /// No mismatch inside the verified domain and no evaluation error.
    pub fn passed(&self) -> bool {
        self.mismatch == 0 && self.error == 0
    }
}

#[derive(Debug, Clone)]
pub struct SweepOutput {
    pub records: Vec<SweepRecord>,
    pub summary: Summary,
}

fn run(id: IdentityId, points: Vec<GridPoint>) -> SweepOutput {
    // indexed parallel collect keeps grid order
    let records: Vec<SweepRecord> = points.par_iter().map(|p| evaluate_point(id, p)).collect();
    let mut summary = Summary::default();
    for r in &records {
        summary.add(r.class);
    }
    SweepOutput { records, summary }
}

/// Every point of `grid` for `id`.
pub fn sweep(id: IdentityId, grid: &Grid) -> SweepOutput {
    run(id, grid.points(id))
}

/// `k` points drawn without replacement, reported in grid order.
pub fn sweep_sampled(id: IdentityId, grid: &Grid, k: usize, seed: u64) -> SweepOutput {
    let points = grid.points(id);
    if k >= points.len() {
        return run(id, points);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut picked = sample(&mut rng, points.len(), k).into_vec();
    picked.sort_unstable();
    run(id, picked.into_iter().map(|i| points[i].clone()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat_int;

    fn fib() -> HoradamParams<Rational> {
        HoradamParams::fibonacci()
    }

    #[test]
    fn verify_examples() {
        let inst = IdentityInstance::new(IdentityId::F3, fib(), 2, 3, 1, 1, 0, 0).unwrap();
        let rep = verify(&inst).unwrap();
        assert!(rep.equal);
        assert_eq!(rep.lhs, rat_int(7));
        assert_eq!(rep.class(), Class::Equal);

        let inst = IdentityInstance::new(IdentityId::F1a, fib(), 1, 2, 1, 0, 0, 0).unwrap();
        assert_eq!(verify(&inst).unwrap().rhs, rat_int(10));
    }

    #[test]
    fn invalid_point_is_a_skip_record() {
        let point = GridPoint { family: "fibonacci".into(), params: fib(), n: 3, an: 2, c: 1, r: 1, s: 0, d: 0 };
        let rec = evaluate_point(IdentityId::F6a, &point);
        assert_eq!(rec.class, Class::Skipped);
        assert!(rec.message.as_deref().unwrap().contains("even"));
        assert_eq!(rec.equal(), None);
    }

    #[test]
    fn empty_grid() {
        let out = sweep(IdentityId::F3, &Grid::empty());
        assert!(out.records.is_empty());
        assert_eq!(out.summary, Summary::default());
        assert!(out.summary.passed());
    }

    #[test]
    fn only_invalid_points() {
        let grid = Grid { ns: vec![1, 3], rs: vec![1], ss: vec![0], ds: vec![0], ..Grid::default() };
        let out = sweep(IdentityId::F6a, &grid);
        assert!(out.summary.total > 0);
        assert_eq!(out.summary.skipped, out.summary.total);
    }

    #[test]
    fn unused_axes_collapse() {
        let grid = Grid {
            families: Family::builtins(),
            ns: vec![1],
            cs: vec![1],
            an: AnAxis::Absolute(vec![3]),
            rs: vec![1, 2],
            ss: vec![0, 1],
            ds: vec![0, 1, 2],
        };
        assert_eq!(grid.points(IdentityId::F1a).len(), 2);
        assert_eq!(grid.points(IdentityId::H).len(), 1);
        assert_eq!(grid.points(IdentityId::F3).len(), 9 * 2 * 2);
        assert_eq!(grid.points(IdentityId::F3G).len(), 4 * 2 * 2);
        assert_eq!(grid.points(IdentityId::F5).len(), 9 * 2 * 2 * 3);
    }

    #[test]
    fn sampled_sweep_is_deterministic_and_ordered() {
        let grid = Grid::default();
        let a = sweep_sampled(IdentityId::F4, &grid, 40, 7);
        let b = sweep_sampled(IdentityId::F4, &grid, 40, 7);
        assert_eq!(a.records.len(), 40);
        let key = |o: &SweepOutput| o.records.iter().map(|r| r.point.clone()).collect::<Vec<_>>();
        assert_eq!(key(&a), key(&b));
        let all = grid.points(IdentityId::F4);
        let pos: Vec<usize> = a.records.iter().map(|r| all.iter().position(|p| *p == r.point).unwrap()).collect();
        assert!(pos.windows(2).all(|w| w[0] < w[1]));
    }
}
