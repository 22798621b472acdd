//! Human, CSV and JSON-lines rendering of verification reports.

use std::fmt::Write as _;

use serde::Serialize;

use super::{width_text, Instance, Side, Status, Summary, VerificationReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Human,
    Csv,
    Jsonl,
}

impl std::str::FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "human" => Ok(Format::Human),
            "csv" => Ok(Format::Csv),
            "jsonl" => Ok(Format::Jsonl),
            other => Err(format!("unknown format `{other}` (human, csv, jsonl)")),
        }
    }
}

/// One flat record per instance.
#[derive(Debug, Clone, Serialize)]
pub struct Row {
    pub id: String,
    pub backend: &'static str,
    pub n: i64,
    pub b: Option<String>,
    pub c: Option<String>,
    pub m: Option<u32>,
    pub s: Option<i64>,
    pub lhs: Option<String>,
    pub rhs: Option<String>,
    pub status: &'static str,
    pub lhs_width: Option<String>,
    pub rhs_width: Option<String>,
    pub note: Option<String>,
}

impl Row {
    /// Machine rows render every side exactly; interval sides become
    /// `[lo, hi]` with rational endpoints. Human rows show enclosures as
    /// approximate directed decimals, and failing exact rows gain a decimal
    /// rendering of both sides in the note.
    pub fn new(id: &str, i: &Instance, machine: bool) -> Row {
        let p = &i.binding;
        let text = |s: &Side| match s {
            Side::Interval(_) if !machine => format!("~{}", s.decimal_text()),
            _ => s.exact_text(),
        };
        let mut notes: Vec<String> = i.note.iter().cloned().collect();
        if !i.rules.is_empty() {
            let rules: Vec<String> = i.rules.iter().map(|r| r.to_string()).collect();
            notes.push(format!("rules: {}", rules.join(" ")));
        }
        if !machine && i.status == Status::Fail {
            if let (Some(l @ (Side::Rational(_) | Side::Ring(_))), Some(r)) = (&i.lhs, &i.rhs) {
                notes.push(format!("approx {} vs {}", l.decimal_text(), r.decimal_text()));
            }
        }
        let note = (!notes.is_empty()).then(|| notes.join("; "));
        Row {
            id: id.to_string(),
            backend: i.backend.name(),
            n: p.n,
            b: p.b.as_ref().map(|q| q.to_string()),
            c: p.c.as_ref().map(|q| q.to_string()),
            m: p.m,
            s: p.s,
            lhs: i.lhs.as_ref().map(text),
            rhs: i.rhs.as_ref().map(text),
            status: i.status.name(),
            lhs_width: i.lhs.as_ref().and_then(Side::width).map(|w| width_text(&w)),
            rhs_width: i.rhs.as_ref().and_then(Side::width).map(|w| width_text(&w)),
            note,
        }
    }
}

fn csv_text(rows: impl Iterator<Item = Row>) -> String {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
    w.write_record([
        "id", "backend", "n", "b", "c", "m", "s", "lhs", "rhs", "status", "lhs_width", "rhs_width", "note",
    ])
    .expect("in-memory write");
    for r in rows {
        w.serialize(r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
}

fn rows(reports: &[VerificationReport], machine: bool) -> impl Iterator<Item = Row> + '_ {
    reports
        .iter()
        .flat_map(move |r| r.instances.iter().map(move |i| Row::new(&r.id, i, machine)))
}

fn summary_line(s: &Summary) -> String {
    format!(
        "{} pass, {} fail, {} skipped-pole, {} unsupported, {} inconclusive",
        s.pass, s.fail, s.skipped_pole, s.unsupported, s.inconclusive_precision
    )
}

fn human(reports: &[VerificationReport]) -> String {
    let all: Vec<Row> = rows(reports, false).collect();
    let bind = |r: &Row| {
        let mut s = format!("n={}", r.n);
        for (k, v) in [("b", &r.b), ("c", &r.c)] {
            if let Some(v) = v {
                let _ = write!(s, " {k}={v}");
            }
        }
        if let Some(m) = r.m {
            let _ = write!(s, " m={m}");
        }
        if let Some(v) = r.s {
            let _ = write!(s, " s={v}");
        }
        s
    };
    let w_id = all.iter().map(|r| r.id.len()).max().unwrap_or(0);
    let w_be = all.iter().map(|r| r.backend.len()).max().unwrap_or(0);
    let w_bind = all.iter().map(|r| bind(r).len()).max().unwrap_or(0);
    let w_st = all.iter().map(|r| r.status.len()).max().unwrap_or(0);
    let mut out = String::new();
    for r in &all {
        let _ = write!(
            out,
            "{:<w_id$}  {:<w_be$}  {:<w_bind$}  {:<w_st$}",
            r.id,
            r.backend,
            bind(r),
            r.status
        );
        if let (Some(l), Some(rh)) = (&r.lhs, &r.rhs) {
            let _ = write!(out, "  {l} = {rh}");
        }
        if let Some(n) = &r.note {
            let _ = write!(out, "  ({n})");
        }
        out.push('\n');
    }
    for r in reports {
        let dropped = if r.out_of_domain > 0 {
            format!(" ({} out of domain)", r.out_of_domain)
        } else {
            String::new()
        };
        let _ = writeln!(out, "{} [{}]: {}{dropped}", r.id, r.engine, summary_line(&r.summary));
    }
    let mut total = Summary::default();
    for r in reports {
        total.pass += r.summary.pass;
        total.fail += r.summary.fail;
        total.skipped_pole += r.summary.skipped_pole;
        total.unsupported += r.summary.unsupported;
        total.inconclusive_precision += r.summary.inconclusive_precision;
    }
    let _ = writeln!(out, "total: {}", summary_line(&total));
    out
}

/// Renders every instance of every report.
pub fn render_reports(reports: &[VerificationReport], format: Format) -> String {
    match format {
        Format::Human => human(reports),
        Format::Csv => csv_text(rows(reports, true)),
        Format::Jsonl => {
            let mut out = String::new();
            for r in rows(reports, true) {
                out.push_str(&serde_json::to_string(&r).expect("rows serialize"));
                out.push('\n');
            }
            out
        }
    }
}

/// Table of the verified instances in `format`, without skipped poles.
/// With no rows, CSV output is the header alone.
pub fn emit_table(reports: &[VerificationReport], format: Format) -> String {
    let kept: Vec<VerificationReport> = reports
        .iter()
        .map(|r| {
            let mut r = r.clone();
            r.instances.retain(|i| i.status != Status::SkippedPole);
            r.summary = Summary::tally(&r.instances);
            r
        })
        .collect();
    render_reports(&kept, format)
}
