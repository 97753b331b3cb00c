//! Closed forms for nested sums of Horadam numbers, and the harness that
//! checks each one against the nested-sum oracle.
//!
//! Every identity is addressed by an [`IdentityId`]. An [`IdentityInstance`]
//! pins down one concrete evaluation and can only be built when the
//! identity's nonvanishing conditions hold. The evaluators in [`general`]
//! and [`special`] assume them.

pub mod families;
pub mod general;
pub mod lhs;
pub mod special;
pub mod verify;

use std::cell::Cell;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_traits::Zero;
use serde::{Serialize, Serializer};

use crate::combinatorics::binom;
use crate::error::{Error, Result};
use crate::sequences::{Horadam, HoradamParams, SequenceRegistry};
use crate::Rational;

pub use families::Family;
pub use general::{rhs_f1, rhs_f2, rhs_f3, rhs_f4, rhs_f5, rhs_f6, rhs_f6_quad, rhs_f7};
pub use lhs::lhs_spec;
pub use special::rhs_specialization;
pub use verify::{
    evaluate_point, sweep, sweep_sampled, verify, AnAxis, Class, EvaluationReport, Grid, GridPoint, Summary,
    SweepOutput, SweepRecord,
};

macro_rules! identity_ids {
    ($($variant:ident => $name:literal),* $(,)?) => {
        /// One closed form: a general theorem or one of its specializations.
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub enum IdentityId { $($variant),* }

        impl IdentityId {
            pub const ALL: &'static [IdentityId] = &[$(IdentityId::$variant),*];

            pub fn name(self) -> &'static str {
                match self { $(IdentityId::$variant => $name),* }
            }
        }
    };
}

identity_ids! {
    H => "H",
    F1a => "F1a",
    F1b => "F1b",
    F2a => "F2a",
    F2b => "F2b",
    F3 => "F3",
    F4 => "F4",
    F5 => "F5",
    F6a => "F6a",
    F6b => "F6b",
    F7 => "F7",
    F3w => "F3_w",
    F3G => "F3_G",
    F4G => "F4_G",
    F5G => "F5_G",
    F6GEven => "F6_G_even",
    F6GOdd => "F6_G_odd",
    F6FEven => "F6_F_even",
    F6FOdd => "F6_F_odd",
    F6LEven => "F6_L_even",
    F6LOdd => "F6_L_odd",
    F7w => "F7_w",
    F7G => "F7_G",
    F7R1D0w => "F7_r1d0_w",
    F7R1D0G => "F7_r1d0_G",
}

/// Which sequences an identity accepts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SequenceConstraint {
    Any,
    /// `p = 1`
    Restricted,
    /// `(p, q) = (1, -1)`
    Gibonacci,
    Fibonacci,
    Lucas,
}

impl SequenceConstraint {
    pub fn admits(self, params: &HoradamParams<Rational>) -> bool {
        match self {
            Self::Any => true,
            Self::Restricted => params.is_restricted(),
            Self::Gibonacci => params.is_gibonacci(),
            Self::Fibonacci => *params == HoradamParams::fibonacci(),
            Self::Lucas => *params == HoradamParams::lucas(),
        }
    }
}

/// Required parity of the nesting depth.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

impl IdentityId {
    pub fn constraint(self) -> SequenceConstraint {
        use IdentityId::*;
        match self {
            H | F1a | F2a | F6FEven | F6FOdd => SequenceConstraint::Fibonacci,
            F1b | F2b | F6LEven | F6LOdd => SequenceConstraint::Lucas,
            F3G | F4G | F5G | F6GEven | F6GOdd | F7G | F7R1D0G => SequenceConstraint::Gibonacci,
            F3w | F7w | F7R1D0w => SequenceConstraint::Restricted,
            F3 | F4 | F5 | F6a | F6b | F7 => SequenceConstraint::Any,
        }
    }

    pub fn parity(self) -> Option<Parity> {
        use IdentityId::*;
        match self {
            F6a | F6GEven | F6FEven | F6LEven => Some(Parity::Even),
            F6b | F6GOdd | F6FOdd | F6LOdd => Some(Parity::Odd),
            _ => None,
        }
    }

    /// The general theorem this identity specializes, if any.
    pub fn parent(self) -> Option<IdentityId> {
        use IdentityId::*;
        match self {
            H | F3w | F3G => Some(F3),
            F4G => Some(F4),
            F5G => Some(F5),
            F6GEven | F6FEven | F6LEven => Some(F6a),
            F6GOdd | F6FOdd | F6LOdd => Some(F6b),
            F7w | F7G | F7R1D0w | F7R1D0G => Some(F7),
            _ => None,
        }
    }

    pub fn uses_r(self) -> bool {
        use IdentityId::*;
        !matches!(self, H | F1a | F1b | F2a | F2b | F7R1D0w | F7R1D0G)
    }

    pub fn uses_s(self) -> bool {
        self != IdentityId::H
    }

    pub fn uses_d(self) -> bool {
        use IdentityId::*;
        matches!(self, F5 | F5G | F6a | F6b | F6GEven | F6GOdd | F6FEven | F6FOdd | F6LEven | F6LOdd | F7 | F7w | F7G)
    }

    /// Value of `r` when the identity does not range over it.
    pub fn fixed_r(self) -> i64 {
        use IdentityId::*;
        match self {
            H | F7R1D0w | F7R1D0G => 1,
            _ => 0,
        }
    }

    /// True for the theorems that go through `Q(√D)`.
    pub fn is_f6_family(self) -> bool {
        self.parity().is_some()
    }

    /// The general theorems.
    pub fn theorems() -> &'static [IdentityId] {
        use IdentityId::*;
        &[F1a, F1b, F2a, F2b, F3, F4, F5, F6a, F6b, F7]
    }

    pub fn specializations() -> impl Iterator<Item = IdentityId> {
        IdentityId::ALL.iter().copied().filter(|id| id.parent().is_some())
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for IdentityId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        IdentityId::ALL
            .iter()
            .copied()
            .find(|id| id.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::Parse(format!("unknown identity {s:?}")))
    }
}

impl Serialize for IdentityId {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.name())
    }
}

/// One concrete evaluation of an identity.
#[derive(Debug, Clone, PartialEq)]
pub struct IdentityInstance {
    pub id: IdentityId,
    pub params: HoradamParams<Rational>,
    pub n: u32,
    pub an: i64,
    pub c: i64,
    pub r: i64,
    pub s: i64,
    pub d: i64,
}

impl IdentityInstance {
    /// Builds the instance, or names the first violated condition.
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        id: IdentityId,
        params: HoradamParams<Rational>,
        n: u32,
        an: i64,
        c: i64,
        r: i64,
        s: i64,
        d: i64,
    ) -> Result<Self> {
        let inst = Self { id, params, n, an, c, r, s, d };
        inst.check()?;
        Ok(inst)
    }

    /// True when the outermost sum has a nonnegative number of terms, the
    /// region where the closed forms are claimed to match the nested sum.
    pub fn in_domain(&self) -> bool {
        self.an >= self.c - 1
    }

    fn check(&self) -> Result<()> {
        use IdentityId::*;
        let fail = |what: &str| Err(Error::Precondition(format!("{}: {what}", self.id)));
        if self.n == 0 {
            return fail("n must be positive");
        }
        HoradamParams::new(self.params.a.clone(), self.params.b.clone(), self.params.p.clone(), self.params.q.clone())?;
        let constraint = self.id.constraint();
        if !constraint.admits(&self.params) {
            return fail(match constraint {
                SequenceConstraint::Restricted => "requires p = 1",
                SequenceConstraint::Gibonacci => "requires (p, q) = (1, -1)",
                SequenceConstraint::Fibonacci => "requires the Fibonacci sequence",
                SequenceConstraint::Lucas => "requires the Lucas sequence",
                SequenceConstraint::Any => unreachable!(),
            });
        }
        match self.id.parity() {
            Some(Parity::Even) if !self.n.is_multiple_of(2) => return fail("n must be even"),
            Some(Parity::Odd) if self.n.is_multiple_of(2) => return fail("n must be odd"),
            _ => {}
        }
        if self.id == H && self.c != 1 {
            return fail("c must be 1");
        }
        if matches!(self.id, F7R1D0w | F7R1D0G) && (self.r != 1 || self.d != 0) {
            return fail("requires r = 1 and d = 0");
        }

        let ctx = EvalContext::new(&self.params);
        let (r, s, d) = (self.r, self.s, self.d);
        let nonzero = |x: Rational, what: &str| if x.is_zero() { fail(&format!("{what} = 0")) } else { Ok(()) };
        match self.id {
            H | F1a | F1b | F2a | F2b => {}
            F3 | F3w | F3G | F4 | F4G => nonzero(ctx.v(r), "V_r")?,
            F5 | F5G => {
                if r == 0 {
                    return fail("r = 0");
                }
                if r + d == 0 {
                    return fail("r + d = 0");
                }
                nonzero(ctx.u(r), "U_r")?;
                nonzero(ctx.u(r + d), "U_{r+d}")?;
                nonzero(ctx.u(d), "U_d")?;
            }
            F6a | F6b | F6GEven | F6GOdd | F6FEven | F6FOdd | F6LEven | F6LOdd => {
                if r == 0 {
                    return fail("r = 0");
                }
                if self.params.discriminant().is_zero() {
                    return fail("p^2 - 4q = 0");
                }
                nonzero(ctx.u(r), "U_r")?;
                nonzero(ctx.v(r + d), "V_{r+d}")?;
                nonzero(ctx.v(d), "V_d")?;
            }
            F7 | F7w | F7G | F7R1D0w | F7R1D0G => {
                if r + 1 == d {
                    return fail("r + 1 = d");
                }
                nonzero(ctx.w(r + s), "W_{r+s}")?;
                nonzero(ctx.w(s + d), "W_{s+d}")?;
                nonzero(ctx.w(s + d - 1), "W_{s+d-1}")?;
                nonzero(ctx.u(r - d + 1), "U_{r-d+1}")?;
                nonzero(ctx.u(r - d), "U_{r-d}")?;
            }
        }
        Ok(())
    }
}

/// Sequences and work counters for one evaluation.
///
/// `w` reads the summed sequence and is counted, as are binomials; `u` and
/// `v` supply constant factors and are not.
pub struct EvalContext {
    pub params: HoradamParams<Rational>,
    w: Arc<Horadam<Rational>>,
    u: Arc<Horadam<Rational>>,
    v: Arc<Horadam<Rational>>,
    w_evals: Cell<u64>,
    binom_evals: Cell<u64>,
}

impl EvalContext {
    pub fn new(params: &HoradamParams<Rational>) -> Self {
        let registry = SequenceRegistry::new();
        Self {
            params: params.clone(),
            w: registry.get_params(params),
            u: registry.get_params(&params.lucas_u()),
            v: registry.get_params(&params.lucas_v()),
            w_evals: Cell::new(0),
            binom_evals: Cell::new(0),
        }
    }

    pub fn w(&self, j: i64) -> Rational {
        self.w_evals.set(self.w_evals.get() + 1);
        self.w.term(j)
    }

    pub fn u(&self, j: i64) -> Rational {
        self.u.term(j)
    }

    pub fn v(&self, j: i64) -> Rational {
        self.v.term(j)
    }

    pub fn q(&self) -> Rational {
        self.params.q.clone()
    }

    pub fn binom(&self, top: i64, k: i64) -> Rational {
        self.binom_evals.set(self.binom_evals.get() + 1);
        Rational::from_integer(binom(top, k as u32))
    }

    /// Sequence terms plus binomials evaluated so far.
    pub fn closed_terms(&self) -> u64 {
        self.w_evals.get() + self.binom_evals.get()
    }

    pub fn reset_counters(&self) {
        self.w_evals.set(0);
        self.binom_evals.set(0);
    }
}

/// A closed-form value with the work it took.
#[derive(Debug, Clone, PartialEq)]
pub struct ClosedValue {
    pub value: Rational,
    pub terms: u64,
}

/// Evaluates the closed form selected by `inst.id`.
pub fn closed_form(inst: &IdentityInstance) -> Result<ClosedValue> {
    let ctx = EvalContext::new(&inst.params);
    let value = rhs_with(inst, &ctx)?;
    Ok(ClosedValue { value, terms: ctx.closed_terms() })
}

pub(crate) fn rhs_with(inst: &IdentityInstance, ctx: &EvalContext) -> Result<Rational> {
    use IdentityId::*;
    match inst.id {
        F1a | F1b => rhs_f1(inst, ctx),
        F2a | F2b => rhs_f2(inst, ctx),
        F3 => rhs_f3(inst, ctx),
        F4 => rhs_f4(inst, ctx),
        F5 => rhs_f5(inst, ctx),
        F6a | F6b => rhs_f6(inst, ctx),
        F7 => rhs_f7(inst, ctx),
        _ => rhs_specialization(inst, ctx),
    }
}
