//! The nested sum each identity evaluates, as an oracle spec.

use super::{EvalContext, IdentityId, IdentityInstance};
use crate::error::Result;
use crate::nested::{NestedSumSpec, Summand};
use crate::scalar::pow;
use crate::sequences::SequenceKind;
use crate::Rational;

/// Left-hand side of `inst` with lower limit `c` at every level and `a_n`
/// as the outermost upper limit.
pub fn lhs_spec(inst: &IdentityInstance) -> Result<NestedSumSpec<Rational>> {
    use IdentityId::*;
    let IdentityInstance { an, c, r, s, d, .. } = *inst;
    let ctx = EvalContext::new(&inst.params);
    let w = |scale: i64, shift: i64| Summand::sequence(SequenceKind::Horadam(inst.params.clone()), scale, shift);
    let summand = match inst.id {
        H => w(1, 0),
        F1a | F1b => w(3, s),
        F2a | F2b => w(3, s).alternating(),
        F3 | F3w | F3G => w(r, s).weighted(pow(&ctx.v(r), -1)?),
        F4 | F4G => w(2 * r, s).weighted(pow(&ctx.q(), -r)?).alternating(),
        F5 | F5G => w(r, s).weighted(ctx.u(d) / ctx.u(r + d)),
        F6a | F6b | F6GEven | F6GOdd | F6FEven | F6FOdd | F6LEven | F6LOdd => w(r, s).weighted(ctx.v(d) / ctx.v(r + d)),
        F7 | F7w | F7G | F7R1D0w | F7R1D0G => {
            let base = ctx.q() * ctx.u(r - d) * ctx.w(s + d - 1) / (ctx.u(r - d + 1) * ctx.w(s + d));
            Summand::power(base)
        }
    };
    NestedSumSpec::uniform(inst.n, an, c, summand)
}
