//! Residual suites for the auxiliary lemmas: binomial column sums and
//! nested-ones counts, the `U`/`V` shift identities, and the restricted
//! Binet difference.

use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::combinatorics::{binom, binom_column_sum, nested_ones};
use crate::exactnum::{rat, rat_int};
use crate::identities::Family;
use crate::nested::{count_tuples, Limits};
use crate::sequences::{lemma3_residual, lemma4_residual, HoradamParams, Lemma3};
use crate::Rational;

/// Outcome of one suite.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct LemmaSuite {
    pub name: String,
    pub checks: usize,
    pub failures: Vec<String>,
    pub skipped: Vec<String>,
}

impl LemmaSuite {
    fn new(name: &str) -> Self {
        Self { name: name.into(), ..Self::default() }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Pascal's rule, the column sums from 1 and from `c`, and the nested-ones
/// counts from 1 and from `c`, each against direct summation.
pub fn binomial_suite() -> LemmaSuite {
    let mut suite = LemmaSuite::new("binomial");
    for m in -50..=50 {
        for k in 0..=50u32 {
            suite.check(binom(m, k + 1) + binom(m, k) == binom(m + 1, k + 1), || format!("pascal m={m} k={k}"));
        }
    }
    for k in 0..=20u32 {
        let mut direct = BigInt::zero();
        for m in 0..=30 {
            if m >= 1 {
                direct += binom(m + k as i64 - 1, k);
            }
            suite.check(binom(k as i64 + m, k + 1) == direct, || format!("column k={k} m={m}"));
        }
    }
    for k in 0..=12u32 {
        for c in -5..=5 {
            let mut direct = BigInt::zero();
            for m in c - 1..=c + 20 {
                if m >= c {
                    direct += binom(m - c + k as i64, k);
                }
                suite.check(binom_column_sum(k, m, c) == direct, || format!("shifted column k={k} m={m} c={c}"));
            }
        }
    }
    for (cs, s_max, b_span) in [(1..=1, 8u32, 20), (-5..=5, 7, 15)] {
        for c in cs {
            for s in 1..=s_max {
                for b in c - 1..=c + b_span {
                    let counted = count_tuples(s, b, &Limits::Uniform(c)).expect("valid limits");
                    suite.check(nested_ones(s, b, c) == counted, || format!("nested ones s={s} b={b} c={c}"));
                }
            }
        }
    }
    suite
}

/// `(p, q)` pairs used by the shift-identity suites: the built-in families
/// plus `extra` seeded random pairs, and one degenerate pair that is
/// reported as skipped.
pub fn lemma_pq(extra: usize, seed: u64) -> Vec<(Rational, Rational)> {
    let mut out: Vec<(Rational, Rational)> = Vec::new();
    for f in Family::builtins() {
        let pq = (f.params.p.clone(), f.params.q.clone());
        if !out.contains(&pq) {
            out.push(pq);
        }
    }
    out.push((rat_int(2), rat_int(1)));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let target = out.len() + extra;
    while out.len() < target {
        let pick = |rng: &mut ChaCha8Rng| {
            let n: i64 = rng.gen_range(-6..=6);
            let d: i64 = rng.gen_range(1..=3);
            rat(n, d)
        };
        let (p, q) = (pick(&mut rng), pick(&mut rng));
        if p.is_zero() || q.is_zero() || out.contains(&(p.clone(), q.clone())) {
            continue;
        }
        out.push((p, q));
    }
    out
}

fn degenerate(p: &Rational, q: &Rational) -> bool {
    (p.clone() * p.clone() - rat_int(4) * q.clone()).is_zero()
}

/// L1 to L4 at every `(p, q)` and `r, d` in `-span..=span`.
pub fn lemma3_suite(pq: &[(Rational, Rational)], span: i64) -> LemmaSuite {
    let mut suite = LemmaSuite::new("lemma3");
    for (p, q) in pq {
        if degenerate(p, q) {
            suite.skipped.push(format!("(p, q) = ({p}, {q}): p^2 - 4q = 0"));
            continue;
        }
        for r in -span..=span {
            for d in -span..=span {
                for which in Lemma3::ALL {
                    let ok = matches!(lemma3_residual(p, q, r, d, which), Ok(res) if res.is_zero());
                    suite.check(ok, || format!("{which:?} p={p} q={q} r={r} d={d}"));
                }
            }
        }
    }
    suite
}

/// The restricted Binet difference for seeds `(a, b)` in `seeds`, every
/// `q` with `p = 1`, and `j` in `-span..=span`.
pub fn lemma4_suite(pq: &[(Rational, Rational)], seeds: &[(i64, i64)], span: i64) -> LemmaSuite {
    let mut suite = LemmaSuite::new("lemma4");
    let one = rat_int(1);
    for (p, q) in pq.iter().filter(|(p, _)| *p == one) {
        if degenerate(p, q) {
            suite.skipped.push(format!("(p, q) = ({p}, {q}): p^2 - 4q = 0"));
            continue;
        }
        for &(a, b) in seeds {
            let params = HoradamParams::new(rat_int(a), rat_int(b), p.clone(), q.clone()).expect("nonzero p, q");
            for j in -span..=span {
                let ok = matches!(lemma4_residual(&params, j), Ok(res) if res.is_zero());
                suite.check(ok, || format!("w({a},{b};{q}) j={j}"));
            }
        }
    }
    suite
}

/// The default run used by the command line and the acceptance tests.
pub fn run_all(seed: u64) -> Vec<LemmaSuite> {
    let pq = lemma_pq(8, seed);
    vec![binomial_suite(), lemma3_suite(&pq, 3), lemma4_suite(&pq, &[(0, 1), (2, 1), (3, 1), (-1, 2), (2, 5)], 10)]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lemma3_skips_degenerate_pair() {
        let suite = lemma3_suite(&[(rat_int(2), rat_int(1)), (rat_int(1), rat_int(-1))], 1);
        assert_eq!(suite.skipped.len(), 1);
        assert_eq!(suite.checks, 9 * 4);
        assert!(suite.passed());
    }

    #[test]
    fn lemma4_only_uses_restricted_pairs() {
        let suite = lemma4_suite(&[(rat_int(3), rat_int(2)), (rat_int(1), rat_int(-1))], &[(3, 1)], 2);
        assert_eq!(suite.checks, 5);
        assert!(suite.passed());
    }

    #[test]
    fn pq_list_is_seeded() {
        assert_eq!(lemma_pq(5, 1), lemma_pq(5, 1));
        assert_ne!(lemma_pq(5, 1), lemma_pq(5, 2));
    }

    #[test]
    fn failures_are_recorded() {
        let mut suite = LemmaSuite::new("t");
        suite.check(true, || unreachable!());
        suite.check(false, || "bad".into());
        assert_eq!(suite.checks, 2);
        assert_eq!(suite.failures, vec!["bad".to_string()]);
    }
}
