//! Verification engines: exact grids, interval enclosures, binomial
//! transforms, finite-difference derivative checks and the closed form of
//! the power-sum family.

mod derivative;
mod fuzz;
mod mth;
mod report;
mod transform;

use std::time::{Duration, Instant};

use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;

use crate::constring::ConstExpr;
use crate::error::{Error, Result};
use crate::expr::{BackendKind, ConstBackend, IntervalBackend, RationalBackend};
use crate::psinterval::{IntervalValue, Precision};
use crate::ratcore::{int, BinomialRule, Rational};
use crate::registry::{IdentityDescriptor, Param, ParamBinding};

pub use derivative::{derivative_at_probe, derivative_consistency, DerivativeCheck, SideCheck, DEFAULT_STEPS};
pub use fuzz::{fuzz_bindings, FuzzDraw, FuzzSpec};
pub use mth::{mth_power_sum_closed_form, mth_power_sum_direct};
pub use report::{emit_table, render_reports, Format, Row};
pub use transform::{binomial_transform, binomial_transform_seq, pad_from, transform_crosscheck};

/// Interval widths stop doubling past this many bits.
pub const MAX_BITS: u32 = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    SkippedPole,
    Unsupported,
    InconclusivePrecision,
}

impl Status {
    pub fn name(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::SkippedPole => "skipped-pole",
            Status::Unsupported => "unsupported",
            Status::InconclusivePrecision => "inconclusive-precision",
        }
    }

    /// Whether this status lets a run exit successfully.
    pub fn is_ok(self) -> bool {
        matches!(self, Status::Pass | Status::SkippedPole)
    }
}

/// A rendered side of one instance.
#[derive(Debug, Clone, PartialEq)]
pub enum Side {
    Rational(Rational),
    Ring(ConstExpr),
    Interval(IntervalValue),
}

impl Side {
    /// Exact text: a rational, a ring element, or `[lo, hi]` with rational
    /// endpoints.
    pub fn exact_text(&self) -> String {
        match self {
            Side::Rational(q) => q.to_string(),
            Side::Ring(c) => c.to_string(),
            Side::Interval(iv) => format!("[{}, {}]", iv.lo(), iv.hi()),
        }
    }

    /// Approximate text for people: decimals, 30 digits.
    pub fn decimal_text(&self) -> String {
        match self {
            Side::Rational(q) => crate::psinterval::decimal(q, 30),
            Side::Ring(c) => match c.eval_interval(&Precision::bits(128)) {
                Ok(iv) => iv.to_decimal(30),
                Err(e) => format!("<{e}>"),
            },
            Side::Interval(iv) => iv.to_string(),
        }
    }

    pub fn width(&self) -> Option<Rational> {
        match self {
            Side::Interval(iv) => Some(iv.width()),
            _ => None,
        }
    }
}

/// Short scientific rendering of an enclosure width.
pub fn width_text(w: &Rational) -> String {
    if w == &int(0) {
        return "0".into();
    }
    format!("{:.3e}", w.to_f64().unwrap_or(f64::INFINITY))
}

#[derive(Debug, Clone)]
pub struct Instance {
    pub binding: ParamBinding,
    pub backend: BackendKind,
    pub status: Status,
    pub lhs: Option<Side>,
    pub rhs: Option<Side>,
    pub rules: Vec<BinomialRule>,
    pub note: Option<String>,
}

impl Instance {
    fn errored(binding: ParamBinding, backend: BackendKind, err: &Error) -> Self {
        let status = match err {
            Error::Pole { .. } => Status::SkippedPole,
            Error::Unsupported(_) | Error::BackendUnsupported { .. } => Status::Unsupported,
            Error::Precision(_) => Status::InconclusivePrecision,
            _ => Status::Fail,
        };
        Instance {
            binding,
            backend,
            status,
            lhs: None,
            rhs: None,
            rules: Vec::new(),
            note: Some(err.to_string()),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub skipped_pole: usize,
    pub unsupported: usize,
    pub inconclusive_precision: usize,
}

impl Summary {
    pub fn tally(instances: &[Instance]) -> Self {
        let mut s = Summary::default();
        for i in instances {
            match i.status {
                Status::Pass => s.pass += 1,
                Status::Fail => s.fail += 1,
                Status::SkippedPole => s.skipped_pole += 1,
                Status::Unsupported => s.unsupported += 1,
                Status::InconclusivePrecision => s.inconclusive_precision += 1,
            }
        }
        s
    }

    pub fn total(&self) -> usize {
        self.pass + self.fail + self.skipped_pole + self.unsupported + self.inconclusive_precision
    }

    pub fn all_ok(&self) -> bool {
        self.fail == 0 && self.unsupported == 0 && self.inconclusive_precision == 0
    }
}

#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub id: String,
    /// `exact`, `interval`, `transform` or `derivative`.
    pub engine: &'static str,
    pub instances: Vec<Instance>,
    pub summary: Summary,
    /// Grid points dropped because they lie outside the identity's domain.
    pub out_of_domain: usize,
    pub wall_time: Duration,
}

impl VerificationReport {
    fn new(id: &str, engine: &'static str, instances: Vec<Instance>, out_of_domain: usize, start: Instant) -> Self {
        VerificationReport {
            id: id.to_string(),
            engine,
            summary: Summary::tally(&instances),
            instances,
            out_of_domain,
            wall_time: start.elapsed(),
        }
    }

    pub fn all_ok(&self) -> bool {
        self.summary.all_ok()
    }

    pub fn failures(&self) -> impl Iterator<Item = &Instance> {
        self.instances.iter().filter(|i| !i.status.is_ok())
    }
}

/// Parameter grid. Values for parameters an identity does not take are
/// ignored; the resulting bindings are filtered through its domain.
#[derive(Debug, Clone)]
pub struct GridSpec {
    pub n_min: i64,
    pub n_max: i64,
    pub b_values: Vec<Rational>,
    pub c_values: Vec<Rational>,
    /// Keep only `c <= b`.
    pub c_at_most_b: bool,
    pub m_values: Vec<u32>,
    /// `None` means `0..=n`.
    pub s_values: Option<Vec<i64>>,
}

impl GridSpec {
    pub fn new(n_min: i64, n_max: i64) -> Self {
        GridSpec {
            n_min,
            n_max,
            b_values: Vec::new(),
            c_values: Vec::new(),
            c_at_most_b: false,
            m_values: Vec::new(),
            s_values: None,
        }
    }

    /// `b ∈ {1..=b_max}`, `c ∈ {1..=b}`.
    pub fn integer(n_min: i64, n_max: i64, b_max: i64) -> Self {
        let vals: Vec<Rational> = (1..=b_max).map(int).collect();
        GridSpec {
            b_values: vals.clone(),
            c_values: vals,
            c_at_most_b: true,
            ..GridSpec::new(n_min, n_max)
        }
    }

    pub fn with_b(mut self, b: Vec<Rational>) -> Self {
        self.b_values = b;
        self
    }

    pub fn with_c(mut self, c: Vec<Rational>, at_most_b: bool) -> Self {
        self.c_values = c;
        self.c_at_most_b = at_most_b;
        self
    }

    pub fn with_m(mut self, m: Vec<u32>) -> Self {
        self.m_values = m;
        self
    }

    /// Candidate bindings for `d` before domain filtering.
    pub fn raw_bindings(&self, d: &IdentityDescriptor) -> Vec<ParamBinding> {
        let mut out = Vec::new();
        let one = |v: &[Rational], used: bool| -> Vec<Option<Rational>> {
            if used {
                v.iter().cloned().map(Some).collect()
            } else {
                vec![None]
            }
        };
        let bs = one(&self.b_values, d.has_param(Param::B));
        let cs = one(&self.c_values, d.has_param(Param::C));
        let ms: Vec<Option<u32>> = if d.has_param(Param::M) {
            self.m_values.iter().copied().map(Some).collect()
        } else {
            vec![None]
        };
        for n in self.n_min..=self.n_max {
            let ss: Vec<Option<i64>> = if d.has_param(Param::S) {
                match &self.s_values {
                    Some(v) => v.iter().copied().map(Some).collect(),
                    None => (0..=n.max(0)).map(Some).collect(),
                }
            } else {
                vec![None]
            };
            for b in &bs {
                for c in &cs {
                    if self.c_at_most_b {
                        if let (Some(b), Some(c)) = (b, c) {
                            if c > b {
                                continue;
                            }
                        }
                    }
                    for m in &ms {
                        for s in &ss {
                            out.push(ParamBinding {
                                n,
                                b: b.clone(),
                                c: c.clone(),
                                m: *m,
                                s: *s,
                            });
                        }
                    }
                }
            }
        }
        out
    }

    /// In-domain bindings (poles kept, to be reported as skipped) and the
    /// number of out-of-domain points dropped.
    pub fn bindings(&self, d: &IdentityDescriptor) -> (Vec<ParamBinding>, usize) {
        let mut dropped = 0;
        let kept = self
            .raw_bindings(d)
            .into_iter()
            .filter(|p| match d.check_domain(p) {
                Err(Error::Domain { .. }) => {
                    dropped += 1;
                    false
                }
                _ => true,
            })
            .collect();
        (kept, dropped)
    }
}

/// Which exact backend to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExactMode {
    /// Rationals first, the constant ring when rationals cannot express a value.
    Auto,
    /// Always the constant ring.
    Ring,
}

fn exact_rational(d: &IdentityDescriptor, p: &ParamBinding) -> Result<Instance> {
    let rb = RationalBackend;
    let l = d.lhs_value(p, &rb)?;
    let r = d.rhs_value(p, &rb)?;
    Ok(Instance {
        binding: p.clone(),
        backend: BackendKind::ExactRational,
        status: if l == r { Status::Pass } else { Status::Fail },
        lhs: Some(Side::Rational(l)),
        rhs: Some(Side::Rational(r)),
        rules: Vec::new(),
        note: None,
    })
}

fn exact_ring(d: &IdentityDescriptor, p: &ParamBinding) -> Result<Instance> {
    let cb = ConstBackend::new();
    let l = d.lhs_value(p, &cb)?;
    let r = d.rhs_value(p, &cb)?;
    Ok(Instance {
        binding: p.clone(),
        backend: BackendKind::ExactConstring,
        status: if l == r { Status::Pass } else { Status::Fail },
        lhs: Some(Side::Ring(l)),
        rhs: Some(Side::Ring(r)),
        rules: cb.rules_fired(),
        note: None,
    })
}

/// Exact comparison of both sides at one binding.
pub fn exact_instance(d: &IdentityDescriptor, p: &ParamBinding, mode: ExactMode) -> Instance {
    let ring_ok = d.supports(BackendKind::ExactConstring);
    let try_rational = mode == ExactMode::Auto && d.supports(BackendKind::ExactRational);
    if try_rational {
        match exact_rational(d, p) {
            Ok(i) => return i,
            Err(Error::Unsupported(_)) if ring_ok => {}
            Err(e) => return Instance::errored(p.clone(), BackendKind::ExactRational, &e),
        }
    }
    if !ring_ok {
        let e = Error::BackendUnsupported {
            id: d.id.to_string(),
            backend: BackendKind::ExactConstring.to_string(),
        };
        return Instance::errored(p.clone(), BackendKind::ExactConstring, &e);
    }
    exact_ring(d, p).unwrap_or_else(|e| Instance::errored(p.clone(), BackendKind::ExactConstring, &e))
}

/// Exact verification over a grid with zero tolerance.
pub fn verify_exact(d: &IdentityDescriptor, grid: &GridSpec) -> VerificationReport {
    verify_exact_with(d, grid, ExactMode::Auto)
}

pub fn verify_exact_with(d: &IdentityDescriptor, grid: &GridSpec, mode: ExactMode) -> VerificationReport {
    let start = Instant::now();
    let (bindings, dropped) = grid.bindings(d);
    verify_exact_bindings(d, &bindings, mode, dropped, start)
}

fn verify_exact_bindings(
    d: &IdentityDescriptor,
    bindings: &[ParamBinding],
    mode: ExactMode,
    dropped: usize,
    start: Instant,
) -> VerificationReport {
    let instances: Vec<Instance> = bindings
        .par_iter()
        .map(|p| exact_instance(d, p, mode))
        .collect();
    VerificationReport::new(d.id, "exact", instances, dropped, start)
}

/// Starting precision for a binding: the target plus room for the
/// cancellation in an alternating sum of `n + 1` terms.
fn start_bits(p: &ParamBinding, prec: &Precision) -> u32 {
    prec.bits_needed() + 24 + (p.n.clamp(0, 512) as u32) * 2
}

/// Interval comparison of both sides at one binding. Doubles the working
/// precision until both widths are within `eps` or the sides separate.
pub fn interval_instance(d: &IdentityDescriptor, p: &ParamBinding, prec: &Precision) -> Instance {
    if let Err(e) = d.check_domain(p) {
        return Instance::errored(p.clone(), BackendKind::Interval, &e);
    }
    let mut bits = start_bits(p, prec).min(MAX_BITS);
    loop {
        let ib = IntervalBackend::new(bits);
        let sides = d.lhs_value(p, &ib).and_then(|l| Ok((l, d.rhs_value(p, &ib)?)));
        match sides {
            Ok((l, r)) => {
                let narrow = &l.width() <= prec.eps() && &r.width() <= prec.eps();
                let status = if !l.overlaps(&r) {
                    Some(Status::Fail)
                } else if narrow {
                    Some(Status::Pass)
                } else {
                    None
                };
                if let Some(status) = status {
                    return Instance {
                        binding: p.clone(),
                        backend: BackendKind::Interval,
                        status,
                        lhs: Some(Side::Interval(l)),
                        rhs: Some(Side::Interval(r)),
                        rules: Vec::new(),
                        note: (status == Status::Fail).then(|| "enclosures are disjoint".to_string()),
                    };
                }
                if bits >= MAX_BITS {
                    return Instance {
                        binding: p.clone(),
                        backend: BackendKind::Interval,
                        status: Status::InconclusivePrecision,
                        lhs: Some(Side::Interval(l)),
                        rhs: Some(Side::Interval(r)),
                        rules: Vec::new(),
                        note: Some(format!("widths above eps at {MAX_BITS} bits")),
                    };
                }
            }
            Err(Error::Precision(_)) if bits < MAX_BITS => {}
            Err(e) => return Instance::errored(p.clone(), BackendKind::Interval, &e),
        }
        bits = (bits * 2).min(MAX_BITS);
    }
}

/// Interval verification at a single binding.
pub fn verify_interval(d: &IdentityDescriptor, p: &ParamBinding, prec: &Precision) -> VerificationReport {
    verify_interval_bindings(d, std::slice::from_ref(p), prec)
}

/// Interval verification at many bindings, in parallel, in input order.
pub fn verify_interval_bindings(
    d: &IdentityDescriptor,
    bindings: &[ParamBinding],
    prec: &Precision,
) -> VerificationReport {
    let start = Instant::now();
    let instances: Vec<Instance> = bindings
        .par_iter()
        .map(|p| interval_instance(d, p, prec))
        .collect();
    VerificationReport::new(d.id, "interval", instances, 0, start)
}

pub fn verify_interval_grid(d: &IdentityDescriptor, grid: &GridSpec, prec: &Precision) -> VerificationReport {
    let (bindings, dropped) = grid.bindings(d);
    let mut r = verify_interval_bindings(d, &bindings, prec);
    r.out_of_domain = dropped;
    r
}

/// Checks that exact values lie inside the interval enclosures of the same
/// bindings; a violation turns the interval instance into a failure.
pub fn check_duality(exact: &VerificationReport, interval: &mut VerificationReport) {
    for (e, i) in exact.instances.iter().zip(interval.instances.iter_mut()) {
        debug_assert_eq!(e.binding, i.binding);
        if e.status != Status::Pass || i.status != Status::Pass {
            continue;
        }
        let (Some(ex), Some(Side::Interval(l)), Some(Side::Interval(r))) = (&e.lhs, &i.lhs, &i.rhs) else {
            continue;
        };
        let inside = match ex {
            Side::Rational(q) => l.contains(q) && r.contains(q),
            Side::Ring(c) => match c.eval_interval(&Precision::bits(192)) {
                Ok(iv) => l.overlaps(&iv) && r.overlaps(&iv),
                Err(_) => true,
            },
            Side::Interval(_) => true,
        };
        if !inside {
            i.status = Status::Fail;
            i.note = Some("exact value lies outside the enclosure".into());
        }
    }
    interval.summary = Summary::tally(&interval.instances);
}
