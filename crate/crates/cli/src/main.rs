mod args;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;
use std::process::ExitCode;

use anyhow::Context;
use args::{parse_depths, parse_identities, parse_range, usage, Cli, Command, Format, Usage};
use clap::Parser;
use nestsum::bench::{bench_instance, bench_ones, write_csv, BenchRow};
use nestsum::identities::{sweep, sweep_sampled, verify, AnAxis, Class, Grid, IdentityId, IdentityInstance, Summary};
use nestsum::lemmas::run_all;
use nestsum::report;
use nestsum::Error;

fn output(path: Option<&Path>) -> anyhow::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p).with_context(|| format!("cannot create {}", p.display()))?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn status(ok: bool) -> ExitCode {
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn cmd_verify(a: args::VerifyArgs) -> anyhow::Result<ExitCode> {
    let params = a.seq.single()?;
    let id = a.identity;
    let r = a.r.unwrap_or(if id.uses_r() { 1 } else { id.fixed_r() });
    let mut out = output(a.out.as_deref())?;
    let inst = match IdentityInstance::new(id, params, a.n, a.an, a.c, r, a.s, a.d) {
        Ok(inst) => inst,
        Err(e @ (Error::Precondition(_) | Error::InvalidParams(_))) => {
            match a.format {
                Format::Human => writeln!(out, "skipped: {e}")?,
                _ => writeln!(
                    out,
                    "{}",
                    serde_json::json!({ "identity": id.name(), "class": "skipped", "message": e.to_string() })
                )?,
            }
            out.flush()?;
            return Ok(ExitCode::SUCCESS);
        }
        Err(e) => return Err(e.into()),
    };
    let rep = verify(&inst)?;
    match a.format {
        Format::Human => writeln!(out, "{}", report::human_report(&rep))?,
        Format::Jsonl => writeln!(out, "{}", report::report_json(&rep))?,
        Format::Csv => {
            writeln!(out, "{}", report::SWEEP_CSV_HEADER)?;
            writeln!(out, "{}", report::report_csv(&rep))?;
        }
    }
    out.flush()?;
    Ok(status(rep.class() != Class::Mismatch))
}

fn axis(value: &Option<String>, default: Vec<i64>) -> anyhow::Result<Vec<i64>> {
    value.as_deref().map_or(Ok(default), parse_range)
}

fn cmd_sweep(a: args::SweepArgs) -> anyhow::Result<ExitCode> {
    let ids = parse_identities(&a.identity)?;
    let mut grid = Grid::default();
    if let Some(families) = a.seq.families()? {
        grid.families = families;
    }
    if let Some(n) = &a.n {
        grid.ns = parse_depths(n)?;
    }
    grid.cs = axis(&a.c, grid.cs)?;
    grid.rs = axis(&a.r, grid.rs)?;
    grid.ss = axis(&a.s, grid.ss)?;
    grid.ds = axis(&a.d, grid.ds)?;
    if let Some(an) = &a.an {
        grid.an = AnAxis::Absolute(parse_range(an)?);
    }

    let mut out = output(a.out.as_deref())?;
    if a.format == Format::Csv {
        writeln!(out, "{}", report::SWEEP_CSV_HEADER)?;
    }
    let mut total = Summary::default();
    for id in ids {
        let result = match a.sample {
            Some(k) => sweep_sampled(id, &grid, k, a.seed),
            None => sweep(id, &grid),
        };
        for rec in &result.records {
            let line = match a.format {
                Format::Human => report::human_line(rec),
                Format::Jsonl => report::json_line(rec),
                Format::Csv => report::csv_row(rec),
            };
            writeln!(out, "{line}")?;
        }
        total.merge(&result.summary);
    }
    match a.format {
        Format::Human => writeln!(out, "{}", report::human_summary(&total))?,
        Format::Jsonl => writeln!(out, "{}", report::json_footer(&total))?,
        // a footer row would break the CSV schema
        Format::Csv => eprintln!("{}", report::human_summary(&total)),
    }
    out.flush()?;
    Ok(status(total.passed()))
}

fn cmd_table(a: args::TableArgs) -> anyhow::Result<ExitCode> {
    let params = a.seq.single()?;
    if a.n == 0 {
        return Err(usage("--n must be positive"));
    }
    let rows = report::table(&params, a.n, &parse_range(&a.an)?)?;
    let mut out = output(a.out.as_deref())?;
    report::write_table(&rows, a.format == Format::Csv, &mut out)?;
    out.flush()?;
    Ok(status(rows.iter().all(|r| r.lhs == r.rhs)))
}

fn cmd_bench(a: args::BenchArgs) -> anyhow::Result<ExitCode> {
    let ns = parse_depths(&a.n)?;
    let ranges = parse_range(&a.range)?;
    let rows: Vec<BenchRow> = if a.identity.eq_ignore_ascii_case("ones") {
        bench_ones(&ns, &ranges, a.c, a.naive_cap)?
    } else {
        let id: IdentityId = a.identity.parse().map_err(|e: Error| usage(e.to_string()))?;
        let params = a.seq.single()?;
        let mut rows = Vec::new();
        for &n in &ns {
            for &range in &ranges {
                let inst = IdentityInstance::new(id, params.clone(), n, a.c + range, a.c, a.r, a.s, a.d)
                    .map_err(|e| usage(e.to_string()))?;
                rows.extend(bench_instance(&inst, a.naive_cap)?);
            }
        }
        rows
    };
    let mut out = output(a.out.as_deref())?;
    write_csv(&rows, &mut out)?;
    out.flush()?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_lemmas(a: args::LemmasArgs) -> anyhow::Result<ExitCode> {
    let suites = run_all(a.seed);
    let mut out = output(a.out.as_deref())?;
    for s in &suites {
        match a.format {
            Format::Human => {
                let verdict = if s.passed() { "pass" } else { "FAIL" };
                writeln!(
                    out,
                    "{:<10} {verdict}: {} checks, {} failures, {} skipped",
                    s.name,
                    s.checks,
                    s.failures.len(),
                    s.skipped.len()
                )?;
                for msg in s
                    .skipped
                    .iter()
                    .map(|m| format!("  skipped {m}"))
                    .chain(s.failures.iter().map(|m| format!("  failed {m}")))
                {
                    writeln!(out, "{msg}")?;
                }
            }
            Format::Jsonl => writeln!(out, "{}", serde_json::to_string(s)?)?,
            Format::Csv => {
                if s.name == suites[0].name {
                    writeln!(out, "suite,checks,failures,skipped")?;
                }
                writeln!(out, "{},{},{},{}", s.name, s.checks, s.failures.len(), s.skipped.len())?;
            }
        }
    }
    out.flush()?;
    Ok(status(suites.iter().all(|s| s.passed())))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Verify(a) => cmd_verify(a),
        Command::Sweep(a) => cmd_sweep(a),
        Command::Table(a) => cmd_table(a),
        Command::Bench(a) => cmd_bench(a),
        Command::Lemmas(a) => cmd_lemmas(a),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.is::<Usage>() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
