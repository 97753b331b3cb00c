//! Horadam sequences `W(a, b; p, q)` and their named special cases.
//!
//! Terms are produced by the recurrence `W_j = p W_{j-1} - q W_{j-2}` forwards
//! and `W_{-n} = (p W_{-n+1} - W_{-n+2}) / q` backwards, memoized per
//! sequence. [`BinetView`] provides the independent closed-form route
//! `W_j = A τ^j + B σ^j` computed in `Q(√D)`.

use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::exactnum::QuadExt;
use crate::scalar::{pow, Scalar};

/// Seeds and recurrence coefficients of a Horadam sequence.
#[derive(Clone, Debug, PartialEq)]
pub struct HoradamParams<T> {
    pub a: T,
    pub b: T,
    pub p: T,
    pub q: T,
}

impl<T: Scalar> HoradamParams<T> {
    pub fn new(a: T, b: T, p: T, q: T) -> Result<Self> {
        if p.is_zero() {
            return Err(Error::InvalidParams("p must be nonzero".into()));
        }
        if q.is_zero() {
            return Err(Error::InvalidParams("q must be nonzero".into()));
        }
        Ok(Self { a, b, p, q })
    }

    /// `p^2 - 4q`.
    pub fn discriminant(&self) -> T {
        self.p.clone() * self.p.clone() - T::from_i64(4) * self.q.clone()
    }

    /// `U(p, q)` for the same recurrence.
    pub fn lucas_u(&self) -> Self {
        Self { a: T::zero(), b: T::one(), p: self.p.clone(), q: self.q.clone() }
    }

    /// `V(p, q)` for the same recurrence.
    pub fn lucas_v(&self) -> Self {
        Self { a: T::from_i64(2), b: self.p.clone(), p: self.p.clone(), q: self.q.clone() }
    }

    pub fn fibonacci() -> Self {
        Self { a: T::zero(), b: T::one(), p: T::one(), q: -T::one() }
    }

    pub fn lucas() -> Self {
        Self { a: T::from_i64(2), b: T::one(), p: T::one(), q: -T::one() }
    }

    /// True for `p = 1` (restricted sequences `w`).
    pub fn is_restricted(&self) -> bool {
        self.p == T::one()
    }

    /// True for `(p, q) = (1, -1)` (gibonacci sequences `G`).
    pub fn is_gibonacci(&self) -> bool {
        self.is_restricted() && self.q == -T::one()
    }
}

/// The named members of the Horadam family.
#[derive(Clone, Debug, PartialEq)]
pub enum SequenceKind<T> {
    Horadam(HoradamParams<T>),
    /// Lucas sequence of the first kind `U(p, q)`.
    U {
        p: T,
        q: T,
    },
    /// Lucas sequence of the second kind `V(p, q)`.
    V {
        p: T,
        q: T,
    },
    /// Restricted Horadam `w(a, b; q) = W(a, b; 1, q)`.
    Restricted {
        a: T,
        b: T,
        q: T,
    },
    /// Gibonacci `G(a, b) = W(a, b; 1, -1)`.
    Gibonacci {
        a: T,
        b: T,
    },
    Fibonacci,
    Lucas,
}

impl<T: Scalar> SequenceKind<T> {
    /// Every kind is a particular `W(a, b; p, q)`.
    pub fn normalize(&self) -> Result<HoradamParams<T>> {
        let one = T::one;
        match self {
            Self::Horadam(h) => HoradamParams::new(h.a.clone(), h.b.clone(), h.p.clone(), h.q.clone()),
            Self::U { p, q } => HoradamParams::new(T::zero(), one(), p.clone(), q.clone()),
            Self::V { p, q } => HoradamParams::new(T::from_i64(2), p.clone(), p.clone(), q.clone()),
            Self::Restricted { a, b, q } => HoradamParams::new(a.clone(), b.clone(), one(), q.clone()),
            Self::Gibonacci { a, b } => HoradamParams::new(a.clone(), b.clone(), one(), -one()),
            Self::Fibonacci => Ok(HoradamParams::fibonacci()),
            Self::Lucas => Ok(HoradamParams::lucas()),
        }
    }
}

#[derive(Debug)]
struct Memo<T> {
    /// `forward[j] = W_j`
    forward: Vec<T>,
    /// `backward[k] = W_{-(k+1)}`
    backward: Vec<T>,
}

/// A memoized Horadam sequence, evaluable at any integer index.
///
/// The cache sits behind a mutex, so a shared `Horadam` can be read from
/// several threads; the cache never changes an observable value.
#[derive(Debug)]
pub struct Horadam<T> {
    params: HoradamParams<T>,
    memo: Mutex<Memo<T>>,
}

impl<T: Scalar> Horadam<T> {
    pub fn new(params: HoradamParams<T>) -> Self {
        let memo = Memo { forward: vec![params.a.clone(), params.b.clone()], backward: Vec::new() };
        Self { params, memo: Mutex::new(memo) }
    }

    pub fn from_kind(kind: &SequenceKind<T>) -> Result<Self> {
        Ok(Self::new(kind.normalize()?))
    }

    pub fn params(&self) -> &HoradamParams<T> {
        &self.params
    }

    pub fn term(&self, j: i64) -> T {
        let HoradamParams { p, q, .. } = &self.params;
        let mut memo = self.memo.lock().unwrap_or_else(|e| e.into_inner());
        if j >= 0 {
            let j = j as usize;
            while memo.forward.len() <= j {
                let n = memo.forward.len();
                let next = p.clone() * memo.forward[n - 1].clone() - q.clone() * memo.forward[n - 2].clone();
                memo.forward.push(next);
            }
            memo.forward[j].clone()
        } else {
            let k = (-(j + 1)) as usize;
            while memo.backward.len() <= k {
                let n = memo.backward.len();
                // W_{-m} from W_{-m+1} and W_{-m+2}, m = n + 1
                let at = |memo: &Memo<T>, idx: isize| -> T {
                    if idx >= 0 {
                        memo.forward[idx as usize].clone()
                    } else {
                        memo.backward[(-idx - 1) as usize].clone()
                    }
                };
                let m = n as isize + 1;
                let w1 = at(&memo, -m + 1);
                let w2 = at(&memo, -m + 2);
                let next = (p.clone() * w1 - w2) / q.clone();
                memo.backward.push(next);
            }
            memo.backward[k].clone()
        }
    }
}

/// Shares one memoized sequence between all kinds that normalize to the same
/// parameters, e.g. `Fibonacci` and `U { p: 1, q: -1 }`.
#[derive(Debug)]
pub struct SequenceRegistry<T> {
    entries: Mutex<Vec<Arc<Horadam<T>>>>,
}

impl<T: Scalar> Default for SequenceRegistry<T> {
    fn default() -> Self {
        Self { entries: Mutex::new(Vec::new()) }
    }
}

impl<T: Scalar> SequenceRegistry<T> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, kind: &SequenceKind<T>) -> Result<Arc<Horadam<T>>> {
        let params = kind.normalize()?;
        Ok(self.get_params(&params))
    }

    pub fn get_params(&self, params: &HoradamParams<T>) -> Arc<Horadam<T>> {
        let mut entries = self.entries.lock().unwrap_or_else(|e| e.into_inner());
        if let Some(seq) = entries.iter().find(|s| s.params() == params) {
            return Arc::clone(seq);
        }
        let seq = Arc::new(Horadam::new(params.clone()));
        entries.push(Arc::clone(&seq));
        seq
    }

    pub fn len(&self) -> usize {
        self.entries.lock().unwrap_or_else(|e| e.into_inner()).len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Evaluate one term of any kind without keeping a cache around.
pub fn term<T: Scalar>(kind: &SequenceKind<T>, j: i64) -> Result<T> {
    Ok(Horadam::from_kind(kind)?.term(j))
}

/// The Binet form `W_j = A τ^j + B σ^j` of a sequence, over `Q(√D)`.
#[derive(Clone, Debug)]
pub struct BinetView<T> {
    pub params: HoradamParams<T>,
    pub a_coef: QuadExt<T>,
    pub b_coef: QuadExt<T>,
    pub tau: QuadExt<T>,
    pub sigma: QuadExt<T>,
    /// `τ - σ = √D`
    pub delta: QuadExt<T>,
}

impl<T: Scalar> BinetView<T> {
    pub fn new(params: &HoradamParams<T>) -> Result<Self> {
        let disc = params.discriminant();
        if disc.is_zero() {
            return Err(Error::DegenerateDiscriminant);
        }
        let half = QuadExt::from_base(T::one() / T::from_i64(2));
        let root = QuadExt::sqrt_of(disc)?;
        let p = QuadExt::from_base(params.p.clone());
        let a = QuadExt::from_base(params.a.clone());
        let b = QuadExt::from_base(params.b.clone());
        let tau = (p.clone() + root.clone()) * half.clone();
        let sigma = (p - root.clone()) * half;
        let delta = root;
        let a_coef = (b.clone() - a.clone() * sigma.clone()).checked_div(&delta)?;
        let b_coef = (a * tau.clone() - b).checked_div(&delta)?;
        Ok(Self { params: params.clone(), a_coef, b_coef, tau, sigma, delta })
    }

    /// `τ^j`; τ is a unit because `τσ = q ≠ 0`.
    pub fn tau_pow(&self, j: i64) -> QuadExt<T> {
        pow(&self.tau, j).expect("tau is a unit")
    }

    pub fn sigma_pow(&self, j: i64) -> QuadExt<T> {
        pow(&self.sigma, j).expect("sigma is a unit")
    }

    pub fn term(&self, j: i64) -> QuadExt<T> {
        self.a_coef.clone() * self.tau_pow(j) + self.b_coef.clone() * self.sigma_pow(j)
    }

    pub fn disc(&self) -> T {
        self.params.discriminant()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Lemma3 {
    /// `U_{r+d} - τ^r U_d = σ^d U_r`
    L1,
    /// `U_{r+d} - σ^r U_d = τ^d U_r`
    L2,
    /// `V_{r+d} - τ^r V_d = -σ^d U_r Δ`
    L3,
    /// `V_{r+d} - σ^r V_d = τ^d U_r Δ`
    L4,
}

impl Lemma3 {
    pub const ALL: [Lemma3; 4] = [Lemma3::L1, Lemma3::L2, Lemma3::L3, Lemma3::L4];
}

/// Left side minus right side of one of the `U`/`V` shift identities; zero
/// whenever the identity holds.
pub fn lemma3_residual<T: Scalar>(p: &T, q: &T, r: i64, d: i64, which: Lemma3) -> Result<QuadExt<T>> {
    let params = HoradamParams::new(T::zero(), T::one(), p.clone(), q.clone())?;
    let binet = BinetView::new(&params)?;
    let u = Horadam::new(params.lucas_u());
    let v = Horadam::new(params.lucas_v());
    let base = |x: T| QuadExt::from_base(x);
    let (ur, ud, urd) = (base(u.term(r)), base(u.term(d)), base(u.term(r + d)));
    let (vd, vrd) = (base(v.term(d)), base(v.term(r + d)));
    let delta = binet.delta.clone();
    let residual = match which {
        Lemma3::L1 => urd - binet.tau_pow(r) * ud - binet.sigma_pow(d) * ur,
        Lemma3::L2 => urd - binet.sigma_pow(r) * ud - binet.tau_pow(d) * ur,
        Lemma3::L3 => vrd - binet.tau_pow(r) * vd + binet.sigma_pow(d) * ur * delta,
        Lemma3::L4 => vrd - binet.sigma_pow(r) * vd - binet.tau_pow(d) * ur * delta,
    };
    Ok(residual)
}

/// `A τ^j - B σ^j - (w_{j+1} - q w_{j-1}) / Δ` for a restricted (`p = 1`)
/// sequence.
pub fn lemma4_residual<T: Scalar>(params: &HoradamParams<T>, j: i64) -> Result<QuadExt<T>> {
    if !params.is_restricted() {
        return Err(Error::Precondition("requires p = 1".into()));
    }
    let binet = BinetView::new(params)?;
    let w = Horadam::new(params.clone());
    let lhs = binet.a_coef.clone() * binet.tau_pow(j) - binet.b_coef.clone() * binet.sigma_pow(j);
    let numer = QuadExt::from_base(w.term(j + 1) - params.q.clone() * w.term(j - 1));
    Ok(lhs - numer.checked_div(&binet.delta)?)
}

#[cfg(test)]
mod tests {
    use num_rational::BigRational;
    use num_traits::Zero;

    use super::*;
    use crate::exactnum::{rat, rat_int};

    type R = BigRational;

    fn kind_w(a: i64, b: i64, p: i64, q: i64) -> SequenceKind<R> {
        SequenceKind::Horadam(HoradamParams::new(rat_int(a), rat_int(b), rat_int(p), rat_int(q)).unwrap())
    }

    #[test]
    fn term_examples() {
        assert_eq!(term(&SequenceKind::<R>::Fibonacci, 7).unwrap(), rat_int(13));
        assert_eq!(term(&kind_w(3, 8, 2, 5), 0).unwrap(), rat_int(3));
        assert_eq!(term(&SequenceKind::<R>::Lucas, 4).unwrap(), rat_int(7));
    }

    #[test]
    fn negative_indices_follow_backward_recurrence() {
        // oracle: F_{-n} = F_{-n+2} - F_{-n+1}, from F_1 = 1, F_0 = 0
        let mut f = vec![(1i64, rat_int(1)), (0, rat_int(0))];
        for j in (-12..0).rev() {
            let next = f[f.len() - 2].1.clone() - f[f.len() - 1].1.clone();
            f.push((j, next));
        }
        let fib = Horadam::<R>::from_kind(&SequenceKind::Fibonacci).unwrap();
        for (j, v) in f {
            assert_eq!(fib.term(j), v, "F_{j}");
        }
        assert_eq!(fib.term(-3), rat_int(2));
    }

    #[test]
    fn rational_q_backward() {
        let h = Horadam::new(HoradamParams::new(rat_int(1), rat(1, 3), rat(1, 2), rat(-3, 4)).unwrap());
        for j in -10..10 {
            let lhs = h.term(j);
            let rhs = rat(1, 2) * h.term(j - 1) + rat(3, 4) * h.term(j - 2);
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn specializations_share_values_and_cache() {
        let reg = SequenceRegistry::<R>::new();
        let f = reg.get(&SequenceKind::Fibonacci).unwrap();
        let u = reg.get(&SequenceKind::U { p: rat_int(1), q: rat_int(-1) }).unwrap();
        assert!(Arc::ptr_eq(&f, &u));
        let l = reg.get(&SequenceKind::Lucas).unwrap();
        let v = reg.get(&SequenceKind::V { p: rat_int(1), q: rat_int(-1) }).unwrap();
        assert!(Arc::ptr_eq(&l, &v));
        let g = reg.get(&SequenceKind::Gibonacci { a: rat_int(0), b: rat_int(1) }).unwrap();
        assert!(Arc::ptr_eq(&f, &g));
        assert_eq!(reg.len(), 2);
        for j in -20..20 {
            assert_eq!(f.term(j), u.term(j));
        }
    }

    #[test]
    fn restricted_kind_normalizes() {
        let w = SequenceKind::Restricted { a: rat_int(3), b: rat_int(1), q: rat_int(-1) };
        assert_eq!(
            w.normalize().unwrap(),
            SequenceKind::Gibonacci { a: rat_int(3), b: rat_int(1) }.normalize().unwrap()
        );
    }

    #[test]
    fn zero_coefficients_rejected() {
        assert!(HoradamParams::new(rat_int(0), rat_int(1), rat_int(0), rat_int(1)).is_err());
        assert!(SequenceKind::U { p: rat_int(1), q: rat_int(0) }.normalize().is_err());
    }

    #[test]
    fn binet_examples() {
        let fib = BinetView::<R>::new(&HoradamParams::fibonacci()).unwrap();
        assert_eq!(fib.term(5), QuadExt::from_base(rat_int(5)));
        let luc = BinetView::<R>::new(&HoradamParams::lucas()).unwrap();
        assert_eq!(luc.term(3), QuadExt::from_base(rat_int(4)));
        let w = HoradamParams::new(rat(7, 2), rat_int(-1), rat_int(1), rat_int(3)).unwrap();
        let view = BinetView::new(&w).unwrap();
        assert_eq!(view.term(0), QuadExt::from_base(rat(7, 2)));
        assert_eq!(view.tau.clone() + view.sigma.clone(), QuadExt::from_base(rat_int(1)));
        assert_eq!(view.tau.clone() * view.sigma.clone(), QuadExt::from_base(rat_int(3)));
    }

    #[test]
    fn degenerate_discriminant_rejected() {
        let p = HoradamParams::new(rat_int(1), rat_int(1), rat_int(2), rat_int(1)).unwrap();
        assert_eq!(BinetView::new(&p).unwrap_err(), Error::DegenerateDiscriminant);
    }

    #[test]
    fn lemma3_examples() {
        let z = |x: QuadExt<R>| x.is_zero();
        assert!(z(lemma3_residual(&rat_int(1), &rat_int(-1), 2, 3, Lemma3::L1).unwrap()));
        for d in -4..4 {
            assert!(z(lemma3_residual(&rat_int(1), &rat_int(-1), 0, d, Lemma3::L1).unwrap()));
        }
        assert!(z(lemma3_residual(&rat_int(3), &rat_int(2), 1, 1, Lemma3::L4).unwrap()));
    }

    #[test]
    fn lemma4_examples() {
        let fib = HoradamParams::<R>::fibonacci();
        assert!(lemma4_residual(&fib, 2).unwrap().is_zero());
        assert!(lemma4_residual(&fib, 0).unwrap().is_zero());
        let w = HoradamParams::new(rat_int(3), rat_int(1), rat_int(1), rat_int(-1)).unwrap();
        assert!(lemma4_residual(&w, 5).unwrap().is_zero());
        let general = HoradamParams::new(rat_int(0), rat_int(1), rat_int(3), rat_int(2)).unwrap();
        assert!(matches!(lemma4_residual(&general, 1), Err(Error::Precondition(_))));
    }

    #[test]
    fn float_sequences_track_exact_ones() {
        let fib = Horadam::<f64>::new(HoradamParams::fibonacci());
        assert_eq!(fib.term(30), 832040.0);
        assert_eq!(fib.term(-5), 5.0);
    }
}
