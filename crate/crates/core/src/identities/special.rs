//! Right-hand sides of the specialized closed forms, each written out on its
//! own rather than derived from the general theorem.

use num_traits::Zero;

use super::{EvalContext, IdentityId, IdentityInstance};
use crate::error::{Error, Result};
use crate::exactnum::rat_int;
use crate::scalar::{pow, sign};
use crate::Rational;

fn pw(x: &Rational, e: i64) -> Result<Rational> {
    pow(x, e)
}

fn neg1(e: i64) -> Rational {
    sign::<Rational>(e)
}

/// Dispatches every non-theorem identity.
pub fn rhs_specialization(inst: &IdentityInstance, ctx: &EvalContext) -> Result<Rational> {
    use IdentityId::*;
    match inst.id {
        H => rhs_h(inst, ctx),
        F3w => rhs_f3_w(inst, ctx),
        F3G => rhs_f3_g(inst, ctx),
        F4G => rhs_f4_g(inst, ctx),
        F5G => rhs_f5_g(inst, ctx),
        F6GEven | F6FEven | F6LEven => rhs_f6_even(inst, ctx),
        F6GOdd | F6FOdd | F6LOdd => rhs_f6_odd(inst, ctx),
        F7w => rhs_f7_w(inst, ctx),
        F7G => rhs_f7_g(inst, ctx),
        F7R1D0w => rhs_f7_r1d0_w(inst, ctx),
        F7R1D0G => rhs_f7_r1d0_g(inst, ctx),
        other => Err(Error::InvalidSpec(format!("{other} is not a specialization"))),
    }
}

/// `F_{a_n+2n} - sum_j F_{2(n-j)} binom(a_n+j-1, j)`.
fn rhs_h(inst: &IdentityInstance, ctx: &EvalContext) -> Result<Rational> {
    let n = inst.n as i64;
    let an = inst.an;
    let mut value = ctx.w(an + 2 * n);
    for j in 0..n {
        value -= ctx.w(2 * (n - j)) * ctx.binom(an + j - 1, j);
    }
    Ok(value)
}

fn rhs_f3_w(inst: &IdentityInstance, ctx: &EvalContext) -> Result<Rational> {
    let IdentityInstance { an, c, r, s, .. } = *inst;
    let n = inst.n as i64;
    let q = ctx.q();
    let vr = ctx.v(r);
    let mut tail = Rational::zero();
    for j in 0..n {
        tail += neg1(n - j) * ctx.w(r * (2 * n - 2 * j + c - 1) + s) * ctx.binom(an + j - c, j) / pw(&q, r * (n - j))?;
    }
    Ok(neg1(n) * ctx.w(r * (an + 2 * n) + s) / pw(&q, r * n)? / pw(&vr, an)? - tail / pw(&vr, c - 1)?)
}

fn rhs_f3_g(inst: &IdentityInstance, ctx: &EvalContext) -> Result<Rational> {
    let IdentityInstance { an, c, r, s, .. } = *inst;
    let n = inst.n as i64;
    let lr = ctx.v(r);
    let mut tail = Rational::zero();
    for j in 0..n {
        tail += neg1((n - j) * (r - 1)) * ctx.w(r * (2 * n - 2 * j + c - 1) + s) * ctx.binom(an + j - c, j);
    }
    Ok(neg1(n * (r - 1)) * ctx.w(r * (an + 2 * n) + s) / pw(&lr, an)? - tail / pw(&lr, c - 1)?)
}

fn rhs_f4_g(inst: &IdentityInstance, ctx: &EvalContext) -> Result<Rational> {
    let IdentityInstance { an, c, r, s, .. } = *inst;
    let n = inst.n as i64;
    let lr = ctx.v(r);
    let mut tail = Rational::zero();
    for j in 0..n {
        tail += ctx.w(r * (n - j + 2 * c - 2) + s) / pw(&lr, n - j)? * ctx.binom(an + j - c, j);
    }
    Ok(neg1((r - 1) * an) * ctx.w(r * (2 * an + n) + s) / pw(&lr, n)? + neg1(r * (c - 1) + c) * tail)
}

fn rhs_f5_g(inst: &IdentityInstance, ctx: &EvalContext) -> Result<Rational> {
    let IdentityInstance { an, c, r, s, d, .. } = *inst;
    let n = inst.n as i64;
    let (fd, fr, frd) = (ctx.u(d), ctx.u(r), ctx.u(r + d));
    let lead = neg1(n * (d + 1)) * pw(&fd, n + an)? / (pw(&fr, n)? * pw(&frd, an)?) * ctx.w((r + d) * n + r * an + s);
    let mut tail = Rational::zero();
    for j in 0..n {
        let k = n - j;
        tail += neg1(k * (d + 1))
            * pw(&(fd.clone() / fr.clone()), k)?
            * ctx.w(r * (k + c - 1) + d * k + s)
            * ctx.binom(an + j - c, j);
    }
    Ok(lead - pw(&(fd / frd), c - 1)? * tail)
}

/// Sequence reads for the F6 specializations in `(p, q) = (1, -1)`, where `Δ^2 = 5`.
struct F6Gib<'a> {
    ctx: &'a EvalContext,
}

#[derive(Clone, Copy)]
enum Seq {
    /// the summed gibonacci sequence
    W,
    /// `G_{m+1} + G_{m-1}` written out
    WPair,
    /// Fibonacci
    F,
    /// Lucas
    L,
}

impl F6Gib<'_> {
    fn at(&self, seq: Seq, m: i64) -> Rational {
        match seq {
            Seq::W => self.ctx.w(m),
            Seq::WPair => self.ctx.w(m + 1) + self.ctx.w(m - 1),
            Seq::F => self.ctx.u(m),
            Seq::L => self.ctx.v(m),
        }
    }
}

fn f6_setup(inst: &IdentityInstance, ctx: &EvalContext) -> (Rational, Rational) {
    let IdentityInstance { r, d, .. } = *inst;
    (ctx.v(d) / ctx.u(r), ctx.v(d) / ctx.v(r + d))
}

/// Which sequences feed the three terms of the closed form, and the extra power
/// of 5 pulled out of the odd-index sum.
fn f6_even_shape(id: IdentityId) -> (Seq, Seq, i64) {
    use IdentityId::*;
    match id {
        F6GEven => (Seq::W, Seq::WPair, 1),
        F6FEven => (Seq::W, Seq::L, 1),
        _ => (Seq::W, Seq::F, 0),
    }
}

/// Even `n`:
/// `κ^n ρ^{a_n} X_K / 5^{n/2} - ρ^{c-1} / 5^{n/2} sum 5^j κ^{n-2j} X_k binom(a_n+2j-c, 2j)
///  - ρ^{c-1} (-1)^d / 5^{n/2 + e} sum 5^j κ^{n-2j+1} Y_m binom(a_n+2j-1-c, 2j-1)`.
fn rhs_f6_even(inst: &IdentityInstance, ctx: &EvalContext) -> Result<Rational> {
    let IdentityInstance { an, c, r, s, d, .. } = *inst;
    let n = inst.n as i64;
    let (kappa, rho) = f6_setup(inst, ctx);
    let g = F6Gib { ctx };
    let (single, paired, extra) = f6_even_shape(inst.id);
    let five = rat_int(5);
    let half = n / 2;

    let lead = pw(&kappa, n)? * pw(&rho, an)? * g.at(single, r * (n + an) + d * n + s) / pw(&five, half)?;
    let mut even = Rational::zero();
    for j in 0..half {
        let k = n - 2 * j;
        even += pw(&five, j)?
            * pw(&kappa, k)?
            * g.at(single, (r + d) * k + r * (c - 1) + s)
            * ctx.binom(an + 2 * j - c, 2 * j);
    }
    let mut odd = Rational::zero();
    for j in 1..=half {
        let k = n - 2 * j + 1;
        odd += pw(&five, j)?
            * pw(&kappa, k)?
            * g.at(paired, (r + d) * k + r * (c - 1) + s)
            * ctx.binom(an + 2 * j - 1 - c, 2 * j - 1);
    }
    let rho_c = pw(&rho, c - 1)?;
    Ok(lead - rho_c.clone() * even / pw(&five, half)? - rho_c * neg1(d) * odd / pw(&five, half + extra)?)
}

/// Odd `n`, with `X` read at `K`, `k` and `Y` at `m`:
/// `(-1)^d κ^n ρ^{a_n} X_K / 5^{e1} - ρ^{c-1} (-1)^d / 5^{e1} sum 5^j κ^{n-2j} X_k binom(a_n+2j-c, 2j)
///  - ρ^{c-1} / 5^{(n+1)/2} sum 5^j κ^{n-2j+1} Y_m binom(a_n+2j-1-c, 2j-1)`.
fn rhs_f6_odd(inst: &IdentityInstance, ctx: &EvalContext) -> Result<Rational> {
    use IdentityId::*;
    let IdentityInstance { an, c, r, s, d, .. } = *inst;
    let n = inst.n as i64;
    let (kappa, rho) = f6_setup(inst, ctx);
    let g = F6Gib { ctx };
    let (paired, single, e1) = match inst.id {
        F6GOdd => (Seq::WPair, Seq::W, (n + 1) / 2),
        F6FOdd => (Seq::L, Seq::W, (n + 1) / 2),
        _ => (Seq::F, Seq::W, (n - 1) / 2),
    };
    let five = rat_int(5);

    let lead = neg1(d) * pw(&kappa, n)? * pw(&rho, an)? * g.at(paired, r * (n + an) + d * n + s) / pw(&five, e1)?;
    let mut even = Rational::zero();
    for j in 0..=(n - 1) / 2 {
        let k = n - 2 * j;
        even += pw(&five, j)?
            * pw(&kappa, k)?
            * g.at(paired, (r + d) * k + r * (c - 1) + s)
            * ctx.binom(an + 2 * j - c, 2 * j);
    }
    let mut odd = Rational::zero();
    for j in 1..=(n - 1) / 2 {
        let k = n - 2 * j + 1;
        odd += pw(&five, j)?
            * pw(&kappa, k)?
            * g.at(single, (r + d) * k + r * (c - 1) + s)
            * ctx.binom(an + 2 * j - 1 - c, 2 * j - 1);
    }
    let rho_c = pw(&rho, c - 1)?;
    Ok(lead - rho_c.clone() * neg1(d) * even / pw(&five, e1)? - rho_c * odd / pw(&five, (n + 1) / 2)?)
}

fn rhs_f7_w(inst: &IdentityInstance, ctx: &EvalContext) -> Result<Rational> {
    let IdentityInstance { an, c, r, s, d, .. } = *inst;
    let n = inst.n as i64;
    let q = ctx.q();
    let u = ctx.u(r - d);
    let a = u.clone() / ctx.u(r - d + 1);
    let b = ctx.w(s + d - 1) / ctx.w(s + d);
    let x = ctx.w(s + d - 1) / ctx.w(r + s);
    let mut tail = Rational::zero();
    for j in 0..n {
        tail += neg1(n - j) * pw(&(q.clone() * u.clone() * x.clone()), n - j)? * ctx.binom(an + j - c, j);
    }
    let lead = neg1(n) * pw(&q, n + an)? * pw(&u, n)? * pw(&(a.clone() * b.clone()), an)? * pw(&x, n)?;
    Ok(lead - pw(&(q * a * b), c - 1)? * tail)
}

fn rhs_f7_g(inst: &IdentityInstance, ctx: &EvalContext) -> Result<Rational> {
    let IdentityInstance { an, c, r, s, d, .. } = *inst;
    let n = inst.n as i64;
    let f = ctx.u(r - d);
    let fa = f.clone() / ctx.u(r - d + 1);
    let ga = ctx.w(s + d - 1) / ctx.w(s + d);
    let gx = ctx.w(s + d - 1) / ctx.w(r + s);
    let mut tail = Rational::zero();
    for j in 0..n {
        tail += pw(&f, n - j)? * pw(&gx, n - j)? * ctx.binom(an + j - c, j);
    }
    let lead = neg1(an) * pw(&f, n)? * pw(&fa, an)? * pw(&ga, an)? * pw(&gx, n)?;
    Ok(lead + neg1(c) * pw(&fa, c - 1)? * pw(&ga, c - 1)? * tail)
}

fn rhs_f7_r1d0_w(inst: &IdentityInstance, ctx: &EvalContext) -> Result<Rational> {
    let IdentityInstance { an, c, s, .. } = *inst;
    let n = inst.n as i64;
    let q = ctx.q();
    let a = ctx.w(s - 1) / ctx.w(s);
    let x = ctx.w(s - 1) / ctx.w(s + 1);
    let mut tail = Rational::zero();
    for j in 0..n {
        tail += neg1(n - j) * pw(&q, n - j)? * pw(&x, n - j)? * ctx.binom(an + j - c, j);
    }
    Ok(neg1(n) * pw(&q, n + an)? * pw(&a, an)? * pw(&x, n)? - pw(&q, c - 1)? * pw(&a, c - 1)? * tail)
}

fn rhs_f7_r1d0_g(inst: &IdentityInstance, ctx: &EvalContext) -> Result<Rational> {
    let IdentityInstance { an, c, s, .. } = *inst;
    let n = inst.n as i64;
    let a = ctx.w(s - 1) / ctx.w(s);
    let x = ctx.w(s - 1) / ctx.w(s + 1);
    let mut tail = Rational::zero();
    for j in 0..n {
        tail += pw(&x, n - j)? * ctx.binom(an + j - c, j);
    }
    Ok(neg1(an) * pw(&a, an)? * pw(&x, n)? + neg1(c) * pw(&a, c - 1)? * tail)
}
