//! Named parameter families used by sweeps and the command line.

use crate::exactnum::{rat, rat_int};
use crate::sequences::HoradamParams;
use crate::Rational;

/// A Horadam sequence with a short name.
#[derive(Debug, Clone, PartialEq)]
pub struct Family {
    pub name: &'static str,
    pub params: HoradamParams<Rational>,
}

fn int(name: &'static str, a: i64, b: i64, p: i64, q: i64) -> Family {
    Family { name, params: HoradamParams { a: rat_int(a), b: rat_int(b), p: rat_int(p), q: rat_int(q) } }
}

impl Family {
    /// The built-in families, in sweep order.
    ///
    /// | name       | a, b        | p, q     | D      |
    /// |------------|-------------|----------|--------|
    /// | fibonacci  | 0, 1        | 1, -1    | 5      |
    /// | lucas      | 2, 1        | 1, -1    | 5      |
    /// | gib31      | 3, 1        | 1, -1    | 5      |
    /// | gibm12     | -1, 2       | 1, -1    | 5      |
    /// | introot    | 1, 3        | 3, 2     | 1      |
    /// | negdisc    | 1, 2        | 1, 1     | -3     |
    /// | generic    | 2, 5        | 1, 3     | -11    |
    /// | rational   | 1/2, -3/4   | 1, 1/3   | -1/3   |
    /// | pell       | 1, 1        | 2, -1    | 8      |
    pub fn builtins() -> Vec<Family> {
        vec![
            int("fibonacci", 0, 1, 1, -1),
            int("lucas", 2, 1, 1, -1),
            int("gib31", 3, 1, 1, -1),
            int("gibm12", -1, 2, 1, -1),
            int("introot", 1, 3, 3, 2),
            int("negdisc", 1, 2, 1, 1),
            int("generic", 2, 5, 1, 3),
            Family {
                name: "rational",
                params: HoradamParams { a: rat(1, 2), b: rat(-3, 4), p: rat_int(1), q: rat(1, 3) },
            },
            int("pell", 1, 1, 2, -1),
        ]
    }

    pub fn by_name(name: &str) -> Option<Family> {
        Self::builtins().into_iter().find(|f| f.name.eq_ignore_ascii_case(name.trim()))
    }
}
