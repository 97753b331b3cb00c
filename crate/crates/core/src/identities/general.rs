//! Right-hand sides of the general theorems, each written out in full. None
//! of them calls another evaluator or the oracle.

use num_traits::Zero;

use super::{EvalContext, IdentityInstance};
use crate::error::{Error, Result};
use crate::exactnum::{rat_int, QuadExt};
use crate::scalar::{pow, sign};
use crate::Rational;

type Q = QuadExt<Rational>;

fn pw(x: &Rational, e: i64) -> Result<Rational> {
    pow(x, e)
}

/// `sum ... sum X_{3 a_0 + s}` for `X` = Fibonacci (F1a) or Lucas (F1b):
/// `X_{2n+3a_n+s} / 2^n - sum_j X_{2(n-j)+3(c-1)+s} / 2^{n-j} binom(a_n+j-c, j)`.
pub fn rhs_f1(inst: &IdentityInstance, ctx: &EvalContext) -> Result<Rational> {
    let IdentityInstance { an, c, s, .. } = *inst;
    let n = inst.n as i64;
    let two = rat_int(2);
    let mut value = ctx.w(2 * n + 3 * an + s) / pw(&two, n)?;
    for j in 0..n {
        value -= ctx.w(2 * (n - j) + 3 * (c - 1) + s) / pw(&two, n - j)? * ctx.binom(an + j - c, j);
    }
    Ok(value)
}

/// `sum ... sum (-1)^{a_0} X_{3 a_0 + s}`:
/// `(-1)^{a_n} X_{n+3a_n+s} / 2^n + (-1)^c sum_j X_{n-j+3(c-1)+s} / 2^{n-j} binom(a_n+j-c, j)`.
pub fn rhs_f2(inst: &IdentityInstance, ctx: &EvalContext) -> Result<Rational> {
    let IdentityInstance { an, c, s, .. } = *inst;
    let n = inst.n as i64;
    let two = rat_int(2);
    let lead = sign::<Rational>(an) * ctx.w(n + 3 * an + s) / pw(&two, n)?;
    let mut tail = Rational::zero();
    for j in 0..n {
        tail += ctx.w(n - j + 3 * (c - 1) + s) / pw(&two, n - j)? * ctx.binom(an + j - c, j);
    }
    Ok(lead + sign::<Rational>(c) * tail)
}

/// `sum ... sum W_{r a_0 + s} / V_r^{a_0}`.
pub fn rhs_f3(inst: &IdentityInstance, ctx: &EvalContext) -> Result<Rational> {
    let IdentityInstance { an, c, r, s, .. } = *inst;
    let n = inst.n as i64;
    let q = ctx.q();
    let vr = ctx.v(r);
    let lead = sign::<Rational>(n) * ctx.w(r * (an + 2 * n) + s) / (pw(&q, r * n)? * pw(&vr, an)?);
    let mut tail = Rational::zero();
    for j in 0..n {
        tail += sign::<Rational>(n - j) * ctx.w(r * (2 * n - 2 * j + c - 1) + s) / pw(&q, r * (n - j))?
            * ctx.binom(an + j - c, j);
    }
    Ok(lead - tail / pw(&vr, c - 1)?)
}

/// `sum ... sum (-1)^{a_0} W_{2 r a_0 + s} / q^{r a_0}`.
pub fn rhs_f4(inst: &IdentityInstance, ctx: &EvalContext) -> Result<Rational> {
    let IdentityInstance { an, c, r, s, .. } = *inst;
    let n = inst.n as i64;
    let q = ctx.q();
    let vr = ctx.v(r);
    let lead = sign::<Rational>(an) * ctx.w(r * (2 * an + n) + s) / (pw(&q, r * an)? * pw(&vr, n)?);
    let mut tail = Rational::zero();
    for j in 0..n {
        tail += ctx.w(r * (n - j + 2 * c - 2) + s) / pw(&vr, n - j)? * ctx.binom(an + j - c, j);
    }
    Ok(lead + sign::<Rational>(c) / pw(&q, r * (c - 1))? * tail)
}

/// `sum ... sum (U_d / U_{r+d})^{a_0} W_{r a_0 + s}`.
pub fn rhs_f5(inst: &IdentityInstance, ctx: &EvalContext) -> Result<Rational> {
    let IdentityInstance { an, c, r, s, d, .. } = *inst;
    let n = inst.n as i64;
    let q = ctx.q();
    let (ud, ur, urd) = (ctx.u(d), ctx.u(r), ctx.u(r + d));
    let lead = sign::<Rational>(n) * pw(&ud, n + an)? / (pw(&q, d * n)? * pw(&ur, n)? * pw(&urd, an)?)
        * ctx.w((r + d) * n + r * an + s);
    let mut tail = Rational::zero();
    for j in 0..n {
        let k = n - j;
        tail += sign::<Rational>(k) / pw(&q, d * k)?
            * pw(&(ud.clone() / ur.clone()), k)?
            * ctx.w(r * (k + c - 1) + d * k + s)
            * ctx.binom(an + j - c, j);
    }
    Ok(lead - pw(&(ud / urd), c - 1)? * tail)
}

/// `sum ... sum (V_d / V_{r+d})^{a_0} W_{r a_0 + s}`, dispatching on the
/// parity of `n`. Fails if the `Q(√D)` evaluation is not rational.
pub fn rhs_f6(inst: &IdentityInstance, ctx: &EvalContext) -> Result<Rational> {
    let value = rhs_f6_quad(inst, ctx)?;
    value
        .to_base()
        .ok_or_else(|| Error::Invariant(format!("{} closed form left a surd part {:?}", inst.id, value.surd_part())))
}

/// The F6 closed form evaluated with `Δ = √D` kept symbolic.
pub fn rhs_f6_quad(inst: &IdentityInstance, ctx: &EvalContext) -> Result<Q> {
    let IdentityInstance { an, c, r, s, d, .. } = *inst;
    let n = inst.n as i64;
    let base = Q::from_base;
    let q = ctx.q();
    let delta = Q::sqrt_of(ctx.params.discriminant())?;
    let dp = |e: i64| pow(&delta, e);
    let rho = ctx.v(d) / ctx.v(r + d);
    let kappa = ctx.v(d) / ctx.u(r);
    let rho_c = base(pw(&rho, c - 1)?);
    // W_{k+1} - q W_{k-1}
    let shifted = |k: i64| ctx.w(k + 1) - q.clone() * ctx.w(k - 1);

    if n % 2 == 0 {
        let lead = base(pw(&kappa, n)? * pw(&rho, an)? * ctx.w(r * (n + an) + d * n + s) / pw(&q, d * n)?)
            .checked_div(&dp(n)?)?;
        let mut even = Q::zero();
        for j in 0..=(n - 2) / 2 {
            let k = n - 2 * j;
            let coef = pw(&kappa, k)? / pw(&q, d * k)?
                * ctx.w((r + d) * k + r * (c - 1) + s)
                * ctx.binom(an + 2 * j - c, 2 * j);
            even = even + dp(2 * j)? * base(coef);
        }
        let mut odd = Q::zero();
        for j in 1..=n / 2 {
            let k = n - 2 * j + 1;
            let coef = pw(&kappa, k)? / pw(&q, d * k)?
                * shifted((r + d) * k + r * (c - 1) + s)
                * ctx.binom(an + 2 * j - 1 - c, 2 * j - 1);
            odd = odd + dp(2 * j)? * base(coef);
        }
        let even = rho_c.clone() * even.checked_div(&dp(n)?)?;
        let odd = rho_c * odd.checked_div(&dp(n + 2)?)?;
        Ok(lead - even - odd)
    } else {
        let big_k = r * (n + an) + d * n + s;
        let lead = base(pw(&kappa, n)? * pw(&rho, an)? * shifted(big_k) / pw(&q, d * n)?).checked_div(&dp(n + 1)?)?;
        let mut even = Q::zero();
        for j in 0..=(n - 1) / 2 {
            let k = n - 2 * j;
            let coef = pw(&kappa, k)? / pw(&q, d * k)?
                * shifted((r + d) * k + r * (c - 1) + s)
                * ctx.binom(an + 2 * j - c, 2 * j);
            even = even + dp(2 * j)? * base(coef);
        }
        let mut odd = Q::zero();
        for j in 1..=(n - 1) / 2 {
            let k = n - 2 * j + 1;
            let coef = pw(&kappa, k)? / pw(&q, d * k)?
                * ctx.w((r + d) * k + r * (c - 1) + s)
                * ctx.binom(an + 2 * j - 1 - c, 2 * j - 1);
            odd = odd + dp(2 * j)? * base(coef);
        }
        let rest = rho_c * (even + odd).checked_div(&dp(n + 1)?)?;
        Ok(lead - rest)
    }
}

/// `sum ... sum q^{a_0} (U_{r-d} / U_{r-d+1})^{a_0} (W_{s+d-1} / W_{s+d})^{a_0}`.
pub fn rhs_f7(inst: &IdentityInstance, ctx: &EvalContext) -> Result<Rational> {
    let IdentityInstance { an, c, r, s, d, .. } = *inst;
    let n = inst.n as i64;
    let q = ctx.q();
    let (u_top, u_bot) = (ctx.u(r - d), ctx.u(r - d + 1));
    let (w_lo, w_mid, w_rs) = (ctx.w(s + d - 1), ctx.w(s + d), ctx.w(r + s));
    let u_ratio = u_top.clone() / u_bot;
    let w_ratio = w_lo.clone() / w_mid;
    let w_cross = w_lo / w_rs;
    let lead = sign::<Rational>(n)
        * pw(&q, n + an)?
        * pw(&u_top, n)?
        * pw(&u_ratio, an)?
        * pw(&w_ratio, an)?
        * pw(&w_cross, n)?;
    let mut tail = Rational::zero();
    for j in 0..n {
        let k = n - j;
        tail += sign::<Rational>(k) * pw(&q, k)? * pw(&u_top, k)? * pw(&w_cross, k)? * ctx.binom(an + j - c, j);
    }
    let scale = pw(&q, c - 1)? * pw(&u_ratio, c - 1)? * pw(&w_ratio, c - 1)?;
    Ok(lead - scale * tail)
}
