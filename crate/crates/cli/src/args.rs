//! Flag definitions and value parsers.

use std::fmt;

use clap::{Args, Parser, Subcommand, ValueEnum};
use nestsum::exactnum::parse_rational;
use nestsum::identities::{Family, IdentityId};
use nestsum::sequences::HoradamParams;
use nestsum::Rational;

#[derive(Parser, Debug)]
#[command(name = "nestsum", version, about = "Exact nested sums over Horadam sequences: oracle vs closed form")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check one instance of an identity
    Verify(VerifyArgs),
    /// Check an identity over a parameter grid
    Sweep(SweepArgs),
    /// Tabulate a small-depth nested sum against its closed form
    Table(TableArgs),
    /// Count work and time closed form, DP oracle and enumeration
    Bench(BenchArgs),
    /// Run the lemma residual suites
    Lemmas(LemmasArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Human,
    Jsonl,
    Csv,
}

/// A user error: bad values that clap itself cannot catch.
#[derive(Debug)]
pub struct Usage(pub String);

impl fmt::Display for Usage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

pub fn usage(msg: impl Into<String>) -> anyhow::Error {
    Usage(msg.into()).into()
}

/// Sequence selection: a named family, or explicit `W(a, b; p, q)` with
/// Fibonacci values filling in whatever is omitted.
#[derive(Args, Debug, Clone, Default)]
pub struct SeqArgs {
    /// Built-in family name (comma-separated for sweeps)
    #[arg(long)]
    pub family: Option<String>,
    /// W_0 (default 0)
    #[arg(long, allow_hyphen_values = true, value_name = "RAT")]
    pub a: Option<String>,
    /// W_1 (default 1)
    #[arg(long, allow_hyphen_values = true, value_name = "RAT")]
    pub b: Option<String>,
    /// Coefficient p in W_j = p W_{j-1} - q W_{j-2} (default 1)
    #[arg(long, allow_hyphen_values = true, value_name = "RAT")]
    pub p: Option<String>,
    /// Coefficient q (default -1)
    #[arg(long, allow_hyphen_values = true, value_name = "RAT")]
    pub q: Option<String>,
}

impl SeqArgs {
    fn explicit(&self) -> bool {
        self.a.is_some() || self.b.is_some() || self.p.is_some() || self.q.is_some()
    }

    fn custom(&self) -> anyhow::Result<HoradamParams<Rational>> {
        let get = |v: &Option<String>, default: &str, flag: &str| {
            parse_rational(v.as_deref().unwrap_or(default)).map_err(|e| usage(format!("--{flag}: {e}")))
        };
        let (a, b, p, q) =
            (get(&self.a, "0", "a")?, get(&self.b, "1", "b")?, get(&self.p, "1", "p")?, get(&self.q, "-1", "q")?);
        HoradamParams::new(a, b, p, q).map_err(|e| usage(e.to_string()))
    }

    /// The families to run on; `None` when nothing was selected.
    pub fn families(&self) -> anyhow::Result<Option<Vec<Family>>> {
        if self.explicit() {
            if self.family.is_some() {
                return Err(usage("--family cannot be combined with --a/--b/--p/--q"));
            }
            return Ok(Some(vec![Family { name: "custom", params: self.custom()? }]));
        }
        match &self.family {
            None => Ok(None),
            Some(list) => list
                .split(',')
                .map(|name| Family::by_name(name).ok_or_else(|| usage(format!("unknown family {name:?}"))))
                .collect::<anyhow::Result<Vec<_>>>()
                .map(Some),
        }
    }

    /// Exactly one sequence, Fibonacci by default.
    pub fn single(&self) -> anyhow::Result<HoradamParams<Rational>> {
        match self.families()? {
            None => Ok(HoradamParams::fibonacci()),
            Some(mut v) if v.len() == 1 => Ok(v.remove(0).params),
            Some(_) => Err(usage("expected a single family")),
        }
    }
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long, value_parser = parse_identity)]
    pub identity: IdentityId,
    #[command(flatten)]
    pub seq: SeqArgs,
    #[arg(long)]
    pub n: u32,
    #[arg(long, allow_hyphen_values = true)]
    pub an: i64,
    #[arg(long, allow_hyphen_values = true, default_value_t = 1)]
    pub c: i64,
    #[arg(long, allow_hyphen_values = true)]
    pub r: Option<i64>,
    #[arg(long, allow_hyphen_values = true, default_value_t = 0)]
    pub s: i64,
    #[arg(long, allow_hyphen_values = true, default_value_t = 0)]
    pub d: i64,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<std::path::PathBuf>,
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    /// Identity names, comma-separated, or "all" / "theorems"
    #[arg(long, default_value = "theorems")]
    pub identity: String,
    #[command(flatten)]
    pub seq: SeqArgs,
    /// Depths, as "start..end", "k" or "k1,k2,..."
    #[arg(long, allow_hyphen_values = true)]
    pub n: Option<String>,
    /// Absolute outer limits; by default `c - 1 ..= c + 6`
    #[arg(long, allow_hyphen_values = true)]
    pub an: Option<String>,
    /// Lower limits
    #[arg(long, allow_hyphen_values = true)]
    pub c: Option<String>,
    /// Index multipliers r
    #[arg(long, allow_hyphen_values = true)]
    pub r: Option<String>,
    /// Index shifts s
    #[arg(long, allow_hyphen_values = true)]
    pub s: Option<String>,
    /// Weight shifts d
    #[arg(long, allow_hyphen_values = true)]
    pub d: Option<String>,
    /// Evaluate this many grid points drawn with --seed
    #[arg(long)]
    pub sample: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<std::path::PathBuf>,
}

#[derive(Args, Debug)]
pub struct TableArgs {
    #[command(flatten)]
    pub seq: SeqArgs,
    #[arg(long, default_value_t = 2)]
    pub n: u32,
    #[arg(long, allow_hyphen_values = true, default_value = "1..10")]
    pub an: String,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<std::path::PathBuf>,
}

#[derive(Args, Debug)]
pub struct BenchArgs {
    /// "ones" or an identity name
    #[arg(long, default_value = "ones")]
    pub identity: String,
    #[command(flatten)]
    pub seq: SeqArgs,
    #[arg(long, allow_hyphen_values = true, default_value = "1..4")]
    pub n: String,
    /// Values of `a_n - c`
    #[arg(long, allow_hyphen_values = true, default_value = "0..8")]
    pub range: String,
    #[arg(long, allow_hyphen_values = true, default_value_t = 1)]
    pub c: i64,
    #[arg(long, allow_hyphen_values = true, default_value_t = 1)]
    pub r: i64,
    #[arg(long, allow_hyphen_values = true, default_value_t = 0)]
    pub s: i64,
    #[arg(long, allow_hyphen_values = true, default_value_t = 0)]
    pub d: i64,
    #[arg(long, default_value_t = 100_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub naive_cap: u64,
    #[arg(long)]
    pub out: Option<std::path::PathBuf>,
}

#[derive(Args, Debug)]
pub struct LemmasArgs {
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<std::path::PathBuf>,
}

fn parse_identity(s: &str) -> Result<IdentityId, String> {
    s.parse().map_err(|e: nestsum::Error| e.to_string())
}

/// Identity list for sweeps.
pub fn parse_identities(s: &str) -> anyhow::Result<Vec<IdentityId>> {
    match s.trim() {
        "all" => Ok(IdentityId::ALL.to_vec()),
        "theorems" => Ok(IdentityId::theorems().to_vec()),
        list => list.split(',').map(|t| t.parse::<IdentityId>().map_err(|e| usage(e.to_string()))).collect(),
    }
}

/// `"start..end"` (inclusive; `..=` also accepted), `"k"`, or
/// `"k1,k2,..."`. A range with `end < start` is empty.
pub fn parse_range(s: &str) -> anyhow::Result<Vec<i64>> {
    let bad = || usage(format!("bad range {s:?}: expected start..end, k or k1,k2,..."));
    let int = |t: &str| t.trim().parse::<i64>().map_err(|_| bad());
    let s = s.trim();
    if let Some((lo, hi)) = s.split_once("..") {
        let hi = hi.strip_prefix('=').unwrap_or(hi);
        let (lo, hi) = (int(lo)?, int(hi)?);
        if hi.saturating_sub(lo) > 1_000_000 {
            return Err(usage(format!("range {s:?} is too large")));
        }
        return Ok((lo..=hi).collect());
    }
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(int).collect()
}

pub fn parse_depths(s: &str) -> anyhow::Result<Vec<u32>> {
    parse_range(s)?
        .into_iter()
        .map(|n| u32::try_from(n).ok().filter(|&n| n > 0).ok_or_else(|| usage(format!("depth {n} must be positive"))))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("1..4").unwrap(), vec![1, 2, 3, 4]);
        assert_eq!(parse_range("-2..=0").unwrap(), vec![-2, -1, 0]);
        assert_eq!(parse_range("5").unwrap(), vec![5]);
        assert_eq!(parse_range("3,-1,7").unwrap(), vec![3, -1, 7]);
        assert!(parse_range("4..1").unwrap().is_empty());
        assert!(parse_range("").unwrap().is_empty());
        assert!(parse_range("a..b").is_err());
        assert!(parse_depths("0..2").is_err());
    }

    #[test]
    fn identity_lists() {
        assert_eq!(parse_identities("all").unwrap().len(), IdentityId::ALL.len());
        assert_eq!(parse_identities("F3,f6_g_even").unwrap(), vec![IdentityId::F3, IdentityId::F6GEven]);
        assert!(parse_identities("F9").is_err());
    }

    #[test]
    fn sequence_selection() {
        let none = SeqArgs::default();
        assert!(none.families().unwrap().is_none());
        assert_eq!(none.single().unwrap(), HoradamParams::fibonacci());
        let custom = SeqArgs { q: Some("1/2".into()), ..SeqArgs::default() };
        assert_eq!(custom.single().unwrap().q, nestsum::exactnum::rat(1, 2));
        let both = SeqArgs { family: Some("lucas".into()), p: Some("2".into()), ..SeqArgs::default() };
        assert!(both.families().is_err());
        let listed = SeqArgs { family: Some("lucas,pell".into()), ..SeqArgs::default() };
        assert_eq!(listed.families().unwrap().unwrap().len(), 2);
        assert!(listed.single().is_err());
    }
}
