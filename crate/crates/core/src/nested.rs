//! Nested sums `sum_{a_{n-1}=c}^{a_n} ... sum_{a_0=c}^{a_1} t(a_0)`.
//!
//! Two evaluation routes live here:
//!
//! * closed forms for geometric summands ([`master_e`], [`f_closed`],
//!   [`g_closed`], [`f_closed_parity_split`], [`varied_limit_reduction`]);
//! * exact oracles for arbitrary summands: a prefix-sum dynamic program
//!   ([`nested_sum_dp`]) that is linear in `depth * range`, and a literal
//!   recursive enumerator ([`nested_sum_naive`]) used as a second witness.
//!
//! Sums whose upper limit is below the lower limit are empty and contribute 0.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::combinatorics::binom;
use crate::error::{Error, Result};
use crate::scalar::{checked_div, pow, sign, Scalar};
use crate::sequences::{Horadam, SequenceKind};

/// Lower summation limits, indexed from the innermost sum (`c_0`) outwards.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Limits {
    Uniform(i64),
    PerLevel(Vec<i64>),
}

impl Limits {
    pub fn lower(&self, level: usize) -> i64 {
        match self {
            Limits::Uniform(c) => *c,
            Limits::PerLevel(cs) => cs[level],
        }
    }

    fn min(&self, depth: usize) -> i64 {
        (0..depth).map(|k| self.lower(k)).min().unwrap_or(0)
    }

    fn check(&self, depth: u32) -> Result<()> {
        if depth == 0 {
            return Err(Error::InvalidSpec("depth must be at least 1".into()));
        }
        if let Limits::PerLevel(cs) = self {
            if cs.len() != depth as usize {
                return Err(Error::InvalidSpec(format!("{} lower limits given for depth {depth}", cs.len())));
            }
        }
        Ok(())
    }
}

/// The value of a nested sum together with how much work the oracle did.
#[derive(Clone, Debug, PartialEq)]
pub struct OracleValue<T> {
    pub value: T,
    pub summand_evals: u64,
    pub additions: u64,
}

/// Exact nested sum by iterated prefix sums.
///
/// `S_0(m) = sum_{a=c_0}^{m} t(a)`, `S_k(m) = sum_{j=c_k}^{m} S_{k-1}(j)`,
/// result `S_{n-1}(upper)`. Each summand is evaluated once.
pub fn nested_sum_dp<T, F>(depth: u32, upper: i64, limits: &Limits, mut term: F) -> Result<OracleValue<T>>
where
    T: Scalar,
    F: FnMut(i64) -> T,
{
    limits.check(depth)?;
    let depth = depth as usize;
    let lo = limits.min(depth);
    let mut out = OracleValue { value: T::zero(), summand_evals: 0, additions: 0 };
    if upper < lo {
        return Ok(out);
    }
    let width = (upper - lo + 1) as usize;
    let idx = |m: i64| (m - lo) as usize;

    let mut prev = vec![T::zero(); width];
    let c0 = limits.lower(0);
    let mut run = T::zero();
    for m in lo..=upper {
        if m >= c0 {
            run = run + term(m);
            out.summand_evals += 1;
            out.additions += 1;
        }
        prev[idx(m)] = run.clone();
    }
    for level in 1..depth {
        let ck = limits.lower(level);
        let mut run = T::zero();
        let mut cur = vec![T::zero(); width];
        for m in lo..=upper {
            if m >= ck {
                run = run + prev[idx(m)].clone();
                out.additions += 1;
            }
            cur[idx(m)] = run.clone();
        }
        prev = cur;
    }
    out.value = prev[idx(upper)].clone();
    Ok(out)
}

/// Number of index tuples a literal enumeration visits.
pub fn count_tuples(depth: u32, upper: i64, limits: &Limits) -> Result<BigInt> {
    let counted = nested_sum_dp(depth, upper, limits, |_| num_rational::BigRational::from_integer(1.into()))?;
    Ok(counted.value.to_integer())
}

/// Literal recursive enumeration of every index tuple. Refuses instances
/// with more than `cap` tuples.
pub fn nested_sum_naive<T, F>(depth: u32, upper: i64, limits: &Limits, mut term: F, cap: u64) -> Result<OracleValue<T>>
where
    T: Scalar,
    F: FnMut(i64) -> T,
{
    limits.check(depth)?;
    let estimate = count_tuples(depth, upper, limits)?;
    if estimate.to_u64().is_none_or(|e| e > cap) {
        return Err(Error::CapExceeded { estimate: estimate.to_string(), cap });
    }

    fn walk<T: Scalar, F: FnMut(i64) -> T>(
        level: usize,
        upper: i64,
        limits: &Limits,
        term: &mut F,
        out: &mut OracleValue<T>,
    ) -> T {
        let mut acc = T::zero();
        for a in limits.lower(level)..=upper {
            let v = if level == 0 {
                out.summand_evals += 1;
                term(a)
            } else {
                walk(level - 1, a, limits, term, out)
            };
            acc = acc + v;
            out.additions += 1;
        }
        acc
    }

    let mut out = OracleValue { value: T::zero(), summand_evals: 0, additions: 0 };
    out.value = walk(depth as usize - 1, upper, limits, &mut term, &mut out);
    Ok(out)
}

/// Innermost summand `(±1)^{a} w^{a} X_{r a + s}`; every factor is optional.
#[derive(Clone, Debug, PartialEq)]
pub struct Summand<T> {
    pub sequence: Option<SequenceKind<T>>,
    pub scale: i64,
    pub shift: i64,
    pub weight: Option<T>,
    pub alternating: bool,
}

impl<T: Scalar> Summand<T> {
    pub fn ones() -> Self {
        Self { sequence: None, scale: 1, shift: 0, weight: None, alternating: false }
    }

    /// `x^{a}`.
    pub fn power(x: T) -> Self {
        Self { weight: Some(x), ..Self::ones() }
    }

    /// `X_{scale * a + shift}`.
    pub fn sequence(kind: SequenceKind<T>, scale: i64, shift: i64) -> Self {
        Self { sequence: Some(kind), scale, shift, ..Self::ones() }
    }

    pub fn weighted(mut self, w: T) -> Self {
        self.weight = Some(w);
        self
    }

    pub fn alternating(mut self) -> Self {
        self.alternating = true;
        self
    }

    fn evaluator(&self) -> Result<SummandEval<'_, T>> {
        if let Some(w) = &self.weight {
            if w.is_zero() {
                return Err(Error::InvalidSpec("summand weight base must be nonzero".into()));
            }
        }
        let seq = self.sequence.as_ref().map(Horadam::from_kind).transpose()?;
        Ok(SummandEval { summand: self, seq })
    }
}

struct SummandEval<'a, T> {
    summand: &'a Summand<T>,
    seq: Option<Horadam<T>>,
}

impl<T: Scalar> SummandEval<'_, T> {
    fn eval(&self, a: i64) -> T {
        let s = self.summand;
        let mut v = match &self.seq {
            Some(seq) => seq.term(s.scale * a + s.shift),
            None => T::one(),
        };
        if let Some(w) = &s.weight {
            v = v * pow(w, a).expect("nonzero weight");
        }
        if s.alternating {
            v = v * sign::<T>(a);
        }
        v
    }
}

/// A fully described nested sum, ready for either oracle.
#[derive(Clone, Debug, PartialEq)]
pub struct NestedSumSpec<T> {
    pub depth: u32,
    pub upper: i64,
    pub limits: Limits,
    pub summand: Summand<T>,
}

impl<T: Scalar> NestedSumSpec<T> {
    pub fn new(depth: u32, upper: i64, limits: Limits, summand: Summand<T>) -> Result<Self> {
        limits.check(depth)?;
        summand.evaluator()?;
        Ok(Self { depth, upper, limits, summand })
    }

    pub fn uniform(depth: u32, upper: i64, c: i64, summand: Summand<T>) -> Result<Self> {
        Self::new(depth, upper, Limits::Uniform(c), summand)
    }
}

pub fn oracle_nested<T: Scalar>(spec: &NestedSumSpec<T>) -> Result<OracleValue<T>> {
    let ev = spec.summand.evaluator()?;
    nested_sum_dp(spec.depth, spec.upper, &spec.limits, |a| ev.eval(a))
}

pub fn oracle_nested_naive<T: Scalar>(spec: &NestedSumSpec<T>, cap: u64) -> Result<OracleValue<T>> {
    let ev = spec.summand.evaluator()?;
    nested_sum_naive(spec.depth, spec.upper, &spec.limits, |a| ev.eval(a), cap)
}

fn reject_pole<T: Scalar>(x: &T, what: &str) -> Result<()> {
    if x.is_zero() {
        Err(Error::Pole(what.into()))
    } else {
        Ok(())
    }
}

fn binom_as<T: Scalar>(top: i64, k: u32) -> T {
    T::from_bigint(&binom(top, k))
}

/// `sum_{k=1}^{m} x^k = (x^{m+1} - x) / (x - 1)`; 0 when `m < 1`.
pub fn geom_sum<T: Scalar>(x: &T, m: i64) -> Result<T> {
    reject_pole(x, "x = 0")?;
    let x_minus_1 = x.clone() - T::one();
    reject_pole(&x_minus_1, "x = 1")?;
    if m < 1 {
        return Ok(T::zero());
    }
    checked_div(&(pow(x, m + 1)? - x.clone()), &x_minus_1)
}

/// `x^{a_n} - x^{c-1} sum_{j=0}^{n-1} ((x-1)/x)^j binom(a_n + j - c, j)`,
/// which equals `((x-1)/x)^n` times the nested sum of `x^{a_0}`.
pub fn master_e<T: Scalar>(x: &T, n: u32, an: i64, c: i64) -> Result<T> {
    reject_pole(x, "x = 0")?;
    let x_minus_1 = x.clone() - T::one();
    reject_pole(&x_minus_1, "x = 1")?;
    let t = checked_div(&x_minus_1, x)?;
    let mut sum = T::zero();
    let mut t_pow = T::one();
    for j in 0..n {
        sum = sum + t_pow.clone() * binom_as::<T>(an + j as i64 - c, j);
        t_pow = t_pow * t.clone();
    }
    Ok(pow(x, an)? - pow(x, c - 1)? * sum)
}

/// Arguments of the two-variable geometric forms `f` and `g`.
#[derive(Clone, Debug, PartialEq)]
pub struct GeometricArgs<T> {
    pub x: T,
    pub y: T,
    pub n: u32,
    pub an: i64,
    pub c: i64,
}

impl<T: Scalar> GeometricArgs<T> {
    pub fn new(x: T, y: T, n: u32, an: i64, c: i64) -> Self {
        Self { x, y, n, an, c }
    }

    fn ratio(&self) -> Result<T> {
        reject_pole(&self.x, "x = 0")?;
        reject_pole(&self.y, "y = 0")?;
        checked_div(&self.x, &self.y)
    }

    /// `x / (x - y)`
    fn f_lead(&self) -> Result<T> {
        let gap = self.x.clone() - self.y.clone();
        reject_pole(&gap, "x = y")?;
        checked_div(&self.x, &gap)
    }

    /// `x / (x + y)`
    fn g_lead(&self) -> Result<T> {
        let gap = self.x.clone() + self.y.clone();
        reject_pole(&gap, "x = -y")?;
        checked_div(&self.x, &gap)
    }

    /// The nested sum of `(x/y)^{a_0}` this form evaluates, as an oracle spec.
    pub fn f_spec(&self) -> Result<NestedSumSpec<T>> {
        NestedSumSpec::uniform(self.n, self.an, self.c, Summand::power(self.ratio()?))
    }

    /// The nested sum of `(-1)^{a_0} (x/y)^{a_0}`.
    pub fn g_spec(&self) -> Result<NestedSumSpec<T>> {
        NestedSumSpec::uniform(self.n, self.an, self.c, Summand::power(self.ratio()?).alternating())
    }
}

/// Closed form of `sum ... sum (x/y)^{a_0}`:
/// `(x/(x-y))^n (x/y)^{a_n} - sum_{j=0}^{n-1} (x/(x-y))^{n-j} (x/y)^{c-1} binom(a_n+j-c, j)`.
pub fn f_closed<T: Scalar>(args: &GeometricArgs<T>) -> Result<T> {
    let ratio = args.ratio()?;
    let lead = args.f_lead()?;
    let n = args.n as i64;
    let tail = pow(&ratio, args.c - 1)?;
    let mut sum = T::zero();
    for j in 0..args.n {
        let jj = j as i64;
        sum = sum + pow(&lead, n - jj)? * tail.clone() * binom_as::<T>(args.an + jj - args.c, j);
    }
    Ok(pow(&lead, n)? * pow(&ratio, args.an)? - sum)
}

/// Closed form of `sum ... sum (-1)^{a_0} (x/y)^{a_0}`:
/// `(-1)^{a_n} (x/(x+y))^n (x/y)^{a_n} + (-1)^c sum_{j=0}^{n-1} (x/(x+y))^{n-j} (x/y)^{c-1} binom(a_n+j-c, j)`.
pub fn g_closed<T: Scalar>(args: &GeometricArgs<T>) -> Result<T> {
    let ratio = args.ratio()?;
    let lead = args.g_lead()?;
    let n = args.n as i64;
    let tail = pow(&ratio, args.c - 1)?;
    let mut sum = T::zero();
    for j in 0..args.n {
        let jj = j as i64;
        sum = sum + pow(&lead, n - jj)? * tail.clone() * binom_as::<T>(args.an + jj - args.c, j);
    }
    Ok(sign::<T>(args.an) * pow(&lead, n)? * pow(&ratio, args.an)? + sign::<T>(args.c) * sum)
}

/// [`f_closed`] with the correction sum split into even and odd `j`.
pub fn f_closed_parity_split<T: Scalar>(args: &GeometricArgs<T>) -> Result<T> {
    let ratio = args.ratio()?;
    let lead = args.f_lead()?;
    let (n, an, c) = (args.n as i64, args.an, args.c);
    let tail = pow(&ratio, c - 1)?;
    let mut even = T::zero();
    for j in 0..=(n - 1).div_euclid(2) {
        even = even + pow(&lead, n - 2 * j)? * tail.clone() * binom_as::<T>(an + 2 * j - c, (2 * j) as u32);
    }
    let mut odd = T::zero();
    // ceil((n-1)/2)
    for j in 1..=n / 2 {
        odd = odd + pow(&lead, n - 2 * j + 1)? * tail.clone() * binom_as::<T>(an + 2 * j - 1 - c, (2 * j - 1) as u32);
    }
    Ok(pow(&lead, n)? * pow(&ratio, an)? - even - odd)
}

/// Right-hand side of the reduction for per-level lower limits
/// `c_0, ..., c_{n-1}` (innermost first):
///
/// `x^{a_n} - x^{c_{n-1}-1} - sum_{j=1}^{n-1} ((x-1)/x)^j x^{c_{n-j-1}-1} N_j`
///
/// where `N_j` is the `j`-fold nested count of ones over the outer `j` limits,
/// evaluated by the DP oracle. Equals `((x-1)/x)^n` times the nested sum of
/// `x^{a_0}` whenever no inner range is forced below its lower limit minus
/// one, e.g. when `c_{k+1} >= c_k - 1` and `a_n >= c_{n-1} - 1`.
pub fn varied_limit_reduction<T: Scalar>(x: &T, an: i64, limits: &[i64]) -> Result<T> {
    if limits.is_empty() {
        return Err(Error::InvalidSpec("need at least one lower limit".into()));
    }
    reject_pole(x, "x = 0")?;
    let x_minus_1 = x.clone() - T::one();
    reject_pole(&x_minus_1, "x = 1")?;
    let t = checked_div(&x_minus_1, x)?;
    let n = limits.len();
    let mut acc = pow(x, an)? - pow(x, limits[n - 1] - 1)?;
    for j in 1..n {
        let outer = Limits::PerLevel(limits[n - j..].to_vec());
        let count = nested_sum_dp(j as u32, an, &outer, |_| T::one())?.value;
        acc = acc - pow(&t, j as i64)? * pow(x, limits[n - j - 1] - 1)? * count;
    }
    Ok(acc)
}

/// `((x-1)/x)^n`, the factor relating [`master_e`] to the nested sum.
pub fn master_scale<T: Scalar>(x: &T, n: u32) -> Result<T> {
    let t = checked_div(&(x.clone() - T::one()), x)?;
    pow(&t, n as i64)
}

#[cfg(test)]
mod tests {
    use num_rational::BigRational;

    use super::*;
    use crate::combinatorics::nested_ones;
    use crate::exactnum::{rat, rat_int};

    type R = BigRational;

    /// Independent oracle: literal loops, no shared code with the evaluators.
    fn brute(depth: u32, upper: i64, lows: &[i64], f: &dyn Fn(i64) -> R) -> R {
        let level = depth as usize - 1;
        let mut acc = rat_int(0);
        for a in lows[level]..=upper {
            acc += if level == 0 { f(a) } else { brute(depth - 1, a, lows, f) };
        }
        acc
    }

    fn powr(x: &R, e: i64) -> R {
        if e >= 0 {
            num_traits::pow(x.clone(), e as usize)
        } else {
            num_traits::pow(x.recip(), (-e) as usize)
        }
    }

    #[test]
    fn geom_sum_examples() {
        assert_eq!(geom_sum(&rat_int(2), 3).unwrap(), rat_int(14));
        assert_eq!(geom_sum(&rat_int(2), 0).unwrap(), rat_int(0));
        assert_eq!(geom_sum(&rat(1, 2), 2).unwrap(), rat(3, 4));
        assert!(matches!(geom_sum(&rat_int(1), 3), Err(Error::Pole(_))));
    }

    #[test]
    fn master_e_examples() {
        assert_eq!(master_e(&rat_int(2), 1, 3, 1).unwrap(), rat_int(7));
        assert_eq!(master_e(&rat_int(3), 2, 2, 1).unwrap(), rat(20, 3));
        let x = rat(5, 3);
        let c = 4;
        let lhs = master_scale(&x, 1).unwrap() * powr(&x, c);
        assert_eq!(master_e(&x, 1, c, c).unwrap(), lhs);
        assert!(matches!(master_e(&rat_int(0), 2, 2, 1), Err(Error::Pole(_))));
        assert!(matches!(master_e(&rat_int(1), 2, 2, 1), Err(Error::Pole(_))));
    }

    #[test]
    fn f_and_g_examples() {
        let a = GeometricArgs::new(rat_int(2), rat_int(1), 1, 3, 1);
        assert_eq!(f_closed(&a).unwrap(), rat_int(14));
        let a = GeometricArgs::new(rat_int(1), rat_int(2), 1, 1, 1);
        assert_eq!(f_closed(&a).unwrap(), rat(1, 2));
        // frozen from an independent enumeration
        let a = GeometricArgs::new(rat_int(3), rat_int(2), 2, 2, 0);
        assert_eq!(f_closed(&a).unwrap(), rat(33, 4));

        let a = GeometricArgs::new(rat_int(2), rat_int(1), 1, 2, 1);
        assert_eq!(g_closed(&a).unwrap(), rat_int(2));
        let a = GeometricArgs::new(rat(7, 2), rat_int(3), 1, 5, 5);
        assert_eq!(g_closed(&a).unwrap(), -powr(&rat(7, 6), 5));
        let a = GeometricArgs::new(rat_int(1), rat_int(3), 2, 3, 1);
        assert_eq!(g_closed(&a).unwrap(), rat(-22, 27));
    }

    #[test]
    fn poles_rejected() {
        let a = GeometricArgs::new(rat_int(2), rat_int(2), 2, 3, 1);
        assert!(matches!(f_closed(&a), Err(Error::Pole(_))));
        assert!(g_closed(&a).is_ok());
        let a = GeometricArgs::new(rat_int(2), rat_int(-2), 2, 3, 1);
        assert!(matches!(g_closed(&a), Err(Error::Pole(_))));
        let a = GeometricArgs::new(rat_int(0), rat_int(1), 2, 3, 1);
        assert!(matches!(f_closed(&a), Err(Error::Pole(_))));
    }

    #[test]
    fn parity_split_matches_f() {
        let a = GeometricArgs::new(rat_int(3), rat_int(2), 3, 4, 1);
        assert_eq!(f_closed_parity_split(&a).unwrap(), f_closed(&a).unwrap());
        for n in 1..=7 {
            for an in -3..8 {
                let a = GeometricArgs::new(rat(5, 3), rat(-2, 7), n, an, -1);
                assert_eq!(f_closed_parity_split(&a).unwrap(), f_closed(&a).unwrap(), "n={n} an={an}");
            }
        }
    }

    #[test]
    fn dp_examples() {
        let fib = Summand::sequence(SequenceKind::<R>::Fibonacci, 1, 0);
        let spec = NestedSumSpec::uniform(2, 3, 1, fib.clone()).unwrap();
        assert_eq!(oracle_nested(&spec).unwrap().value, rat_int(7));
        let empty = NestedSumSpec::uniform(3, 4, 5, fib).unwrap();
        assert_eq!(oracle_nested(&empty).unwrap().value, rat_int(0));
        for c in [-2, 0, 3] {
            for an in c - 1..c + 6 {
                let spec = NestedSumSpec::uniform(3, an, c, Summand::<R>::ones()).unwrap();
                let got = oracle_nested(&spec).unwrap().value;
                assert_eq!(got, R::from_integer(nested_ones(3, an, c)));
            }
        }
    }

    #[test]
    fn naive_examples() {
        let spec = NestedSumSpec::uniform(3, 6, 1, Summand::<R>::ones()).unwrap();
        let out = oracle_nested_naive(&spec, 1_000).unwrap();
        assert_eq!(out.value, rat_int(56));
        assert_eq!(out.summand_evals, 56);
        let empty = NestedSumSpec::uniform(2, -1, 0, Summand::<R>::ones()).unwrap();
        assert_eq!(oracle_nested_naive(&empty, 10).unwrap().value, rat_int(0));
        assert!(matches!(oracle_nested_naive(&spec, 55), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn dp_counts_linear_work() {
        let spec = NestedSumSpec::uniform(4, 20, 3, Summand::<R>::power(rat_int(2))).unwrap();
        let out = oracle_nested(&spec).unwrap();
        assert_eq!(out.summand_evals, 18);
        assert!(out.additions <= 4 * 18);
    }

    #[test]
    fn spec_validation() {
        assert!(NestedSumSpec::uniform(0, 3, 1, Summand::<R>::ones()).is_err());
        assert!(NestedSumSpec::new(2, 3, Limits::PerLevel(vec![1]), Summand::<R>::ones()).is_err());
        assert!(NestedSumSpec::uniform(2, 3, 1, Summand::power(rat_int(0))).is_err());
    }

    #[test]
    fn varied_limits_examples() {
        let x = rat_int(2);
        let reduced = varied_limit_reduction(&x, 3, &[1, 2]).unwrap();
        let direct = brute(2, 3, &[1, 2], &|a| powr(&x, a));
        assert_eq!(direct, rat_int(20));
        assert_eq!(reduced, master_scale(&x, 2).unwrap() * direct);

        let x = rat(3, 2);
        let reduced = varied_limit_reduction(&x, 4, &[0, 1, 2]).unwrap();
        let direct = brute(3, 4, &[0, 1, 2], &|a| powr(&x, a));
        assert_eq!(direct, rat(819, 16));
        assert_eq!(reduced, master_scale(&x, 3).unwrap() * direct);
    }

    #[test]
    fn varied_limits_degenerate_to_master() {
        let x = rat(5, 3);
        for n in 1..=4u32 {
            for an in 0..6 {
                let uniform = vec![0i64; n as usize];
                assert_eq!(varied_limit_reduction(&x, an, &uniform).unwrap(), master_e(&x, n, an, 0).unwrap());
            }
        }
    }

    #[test]
    fn per_level_dp_matches_brute() {
        let f = |a: i64| rat(a * a - 3, 2);
        for lows in [vec![0, 1, 2], vec![2, 0, 1], vec![-1, -3, 4], vec![3, 3, 3]] {
            for an in -2..8 {
                let dp = nested_sum_dp(3, an, &Limits::PerLevel(lows.clone()), f).unwrap().value;
                assert_eq!(dp, brute(3, an, &lows, &f), "lows={lows:?} an={an}");
            }
        }
    }

    #[test]
    fn float_master_identity() {
        let x = 1.25f64;
        for n in 1..=4 {
            for an in 0..8 {
                let spec = NestedSumSpec::uniform(n, an, 0, Summand::power(x)).unwrap();
                let lhs = master_scale(&x, n).unwrap() * oracle_nested(&spec).unwrap().value;
                let rhs = master_e(&x, n, an, 0).unwrap();
                approx::assert_relative_eq!(lhs, rhs, epsilon = 1e-9, max_relative = 1e-9);
            }
        }
    }
}
