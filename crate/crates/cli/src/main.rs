use std::fs;
use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hfverify_core::registry::{export_json, list_identities, select, IdentityDescriptor};
use hfverify_core::verify::{
    check_duality, emit_table, fuzz_bindings, render_reports, verify_exact, verify_interval_bindings,
    verify_interval_grid, Format, FuzzSpec, GridSpec, VerificationReport,
};
use hfverify_core::{Error, Precision, Rational};

/// Verify the harmonic-number binomial identity catalog.
#[derive(Parser, Debug)]
#[command(name = "hfverify", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List catalog entries.
    List(Common),
    /// Check identities over a parameter grid.
    Verify(Common),
    /// Check identities at seeded random rational parameters (interval engine).
    Fuzz(Common),
    /// Emit a table of verified instances; skipped poles are left out.
    Table(Common),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BackendArg {
    Exact,
    Interval,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Human,
    Csv,
    Jsonl,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Format {
        match f {
            FormatArg::Human => Format::Human,
            FormatArg::Csv => Format::Csv,
            FormatArg::Jsonl => Format::Jsonl,
        }
    }
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Identity id or id prefix.
    #[arg(long, conflicts_with = "all")]
    id: Option<String>,
    /// Every identity in the catalog.
    #[arg(long)]
    all: bool,
    /// Largest n in the grid (or drawn by fuzz).
    #[arg(long)]
    n_max: Option<i64>,
    /// Values of b: comma-separated rationals or integer ranges `lo..hi`.
    #[arg(long, value_parser = parse_values, allow_hyphen_values = true)]
    b: Option<Values>,
    /// Values of c, same syntax as --b. Defaults to the b values with c <= b.
    #[arg(long, value_parser = parse_values, allow_hyphen_values = true)]
    c: Option<Values>,
    /// m runs over 1..=m-max.
    #[arg(long, default_value_t = 3)]
    m_max: u32,
    /// Engine for verify and table (default exact); fuzz accepts only interval.
    #[arg(long, value_enum)]
    backend: Option<BackendArg>,
    /// Target enclosure width 2^-prec.
    #[arg(long, default_value_t = 64, value_parser = clap::value_parser!(u32).range(8..))]
    prec: u32,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
    count: u64,
    #[arg(long, value_enum, default_value_t = FormatArg::Human)]
    format: FormatArg,
    /// Write output here instead of stdout.
    #[arg(long)]
    out: Option<std::path::PathBuf>,
}

/// A parsed `--b`/`--c` list.
#[derive(Debug, Clone)]
struct Values(Vec<Rational>);

fn parse_values(s: &str) -> Result<Values, String> {
    let mut out = Vec::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        if let Some((lo, hi)) = part.split_once("..") {
            let lo: i64 = lo.parse().map_err(|_| format!("bad range `{part}`"))?;
            let hi: i64 = hi.trim_start_matches('=').parse().map_err(|_| format!("bad range `{part}`"))?;
            out.extend((lo..=hi).map(hfverify_core::ratcore::int));
        } else {
            out.push(part.parse::<Rational>().map_err(|_| format!("bad rational `{part}`"))?);
        }
    }
    if out.is_empty() {
        return Err("empty value list".into());
    }
    Ok(Values(out))
}

enum Failure {
    Usage(String),
    Io(std::io::Error),
}

fn resolve(c: &Common, required: bool) -> Result<Vec<&'static IdentityDescriptor>, Failure> {
    match (&c.id, c.all) {
        (Some(id), _) => select(id).map_err(|e| match e {
            Error::UnknownId(id) => {
                let valid: Vec<&str> = list_identities().iter().map(|d| d.id).collect();
                Failure::Usage(format!("unknown identity `{id}`; valid ids: {}", valid.join(", ")))
            }
            other => Failure::Usage(other.to_string()),
        }),
        (None, true) => Ok(list_identities().iter().collect()),
        (None, false) if !required => Ok(list_identities().iter().collect()),
        (None, false) => Err(Failure::Usage("pass --id <ID> or --all".into())),
    }
}

fn grid(c: &Common) -> GridSpec {
    let bs = c
        .b
        .as_ref()
        .map(|v| v.0.clone())
        .unwrap_or_else(|| (1..=3).map(hfverify_core::ratcore::int).collect());
    let (cs, at_most_b) = match &c.c {
        Some(v) => (v.0.clone(), false),
        None => (bs.clone(), true),
    };
    GridSpec::new(0, c.n_max.unwrap_or(10))
        .with_b(bs)
        .with_c(cs, at_most_b)
        .with_m((1..=c.m_max).collect())
}

fn run_grid(ids: &[&IdentityDescriptor], c: &Common) -> Vec<VerificationReport> {
    let g = grid(c);
    let prec = Precision::bits(c.prec);
    let mut out = Vec::new();
    for d in ids {
        match c.backend.unwrap_or(BackendArg::Exact) {
            BackendArg::Exact => out.push(verify_exact(d, &g)),
            BackendArg::Interval => out.push(verify_interval_grid(d, &g, &prec)),
            BackendArg::Both => {
                let e = verify_exact(d, &g);
                let mut i = verify_interval_grid(d, &g, &prec);
                check_duality(&e, &mut i);
                out.push(e);
                out.push(i);
            }
        }
    }
    out
}

fn list_text(ids: &[&IdentityDescriptor], format: Format) -> String {
    let records = export_json();
    let records = records.as_array().expect("export is an array");
    let keep = |r: &&serde_json::Value| ids.iter().any(|d| r["id"] == d.id);
    match format {
        Format::Jsonl => records
            .iter()
            .filter(keep)
            .map(|r| format!("{r}\n"))
            .collect(),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["id", "params", "n_min", "backends", "group", "summary"])
                .expect("in-memory write");
            for d in ids {
                let params: Vec<&str> = d.params.iter().map(|p| p.name()).collect();
                let backends: Vec<&str> = d.backends.iter().map(|b| b.name()).collect();
                w.write_record([
                    d.id,
                    &params.join(" "),
                    &d.n_min.to_string(),
                    &backends.join(" "),
                    d.anchor.group,
                    d.anchor.summary,
                ])
                .expect("in-memory write");
            }
            String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
        }
        Format::Human => {
            let w = ids.iter().map(|d| d.id.len()).max().unwrap_or(0);
            let mut s = String::new();
            for d in ids {
                let params: Vec<&str> = d.params.iter().map(|p| p.name()).collect();
                s.push_str(&format!(
                    "{:<w$}  {:<9}  n>={}  {}\n",
                    d.id,
                    params.join(","),
                    d.n_min,
                    d.anchor.summary
                ));
            }
            s
        }
    }
}

fn execute(cli: Cli) -> Result<bool, Failure> {
    let (text, ok) = match &cli.command {
        Command::List(c) => {
            let ids = resolve(c, false)?;
            (list_text(&ids, c.format.into()), true)
        }
        Command::Verify(c) => {
            let ids = resolve(c, true)?;
            let reports = run_grid(&ids, c);
            let ok = reports.iter().all(|r| r.all_ok());
            (render_reports(&reports, c.format.into()), ok)
        }
        Command::Table(c) => {
            let ids = resolve(c, true)?;
            let reports = run_grid(&ids, c);
            let ok = reports.iter().all(|r| r.all_ok());
            (emit_table(&reports, c.format.into()), ok)
        }
        Command::Fuzz(c) => {
            if c.backend.is_some_and(|b| b != BackendArg::Interval) {
                return Err(Failure::Usage("fuzz runs the interval engine only".into()));
            }
            let ids = resolve(c, true)?;
            let prec = Precision::bits(c.prec);
            let mut reports = Vec::new();
            for d in ids {
                let mut spec = FuzzSpec::new(c.seed, c.count as usize);
                if let Some(n) = c.n_max {
                    spec.n_max = n;
                }
                spec.m_max = c.m_max;
                let draw = fuzz_bindings(d, &spec);
                if draw.cap_hits > 0 {
                    eprintln!("{}: redraw cap hit for {} bindings", d.id, draw.cap_hits);
                }
                reports.push(verify_interval_bindings(d, &draw.bindings, &prec));
            }
            let ok = reports.iter().all(|r| r.all_ok());
            (render_reports(&reports, c.format.into()), ok)
        }
    };
    let out = match &cli.command {
        Command::List(c) | Command::Verify(c) | Command::Table(c) | Command::Fuzz(c) => &c.out,
    };
    match out {
        Some(path) => fs::write(path, text).map_err(Failure::Io)?,
        None => std::io::stdout().write_all(text.as_bytes()).map_err(Failure::Io)?,
    }
    Ok(ok)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if let Some(n) = std::env::var("HF_WORKERS").ok().and_then(|v| v.parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
    match execute(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
