//! The identity catalog: one descriptor per identity, each with a parameter
//! signature, a domain, both sides as [`Expr`] builders, supported backends
//! and typed relations to other identities.

mod general;
mod odd;
mod power;

use std::collections::HashMap;
use std::fmt;
use std::sync::OnceLock;

use num_traits::Zero;
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::expr::{eval, Backend, BackendKind, Expr};
use crate::ratcore::{binomial_int, int, is_negative_integer, Rational};

pub use power::power_sum_rhs;

/// Parameter values for one identity instance. For the binomial forms with
/// parameters `(r, s)` the upper index `r` is carried in `n`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ParamBinding {
    pub n: i64,
    pub b: Option<Rational>,
    pub c: Option<Rational>,
    pub m: Option<u32>,
    pub s: Option<i64>,
}

impl ParamBinding {
    pub fn new(n: i64) -> Self {
        ParamBinding {
            n,
            b: None,
            c: None,
            m: None,
            s: None,
        }
    }

    pub fn with_b(mut self, b: impl Into<Rational>) -> Self {
        self.b = Some(b.into());
        self
    }

    pub fn with_c(mut self, c: impl Into<Rational>) -> Self {
        self.c = Some(c.into());
        self
    }

    pub fn with_m(mut self, m: u32) -> Self {
        self.m = Some(m);
        self
    }

    pub fn with_s(mut self, s: i64) -> Self {
        self.s = Some(s);
        self
    }

    /// `b`; panics if unbound. Descriptors only call this after the domain
    /// check has confirmed the parameter is present.
    pub fn b(&self) -> Rational {
        self.b.clone().expect("binding has no b")
    }

    pub fn c(&self) -> Rational {
        self.c.clone().expect("binding has no c")
    }

    pub fn m(&self) -> u32 {
        self.m.expect("binding has no m")
    }

    pub fn s(&self) -> i64 {
        self.s.expect("binding has no s")
    }

    /// Returns a copy with `param` shifted by `h`.
    pub fn shifted(&self, param: Param, h: &Rational) -> ParamBinding {
        let mut out = self.clone();
        match param {
            Param::B => out.b = Some(self.b() + h),
            Param::C => out.c = Some(self.c() + h),
            _ => panic!("only b and c can be shifted"),
        }
        out
    }

    fn has(&self, p: Param) -> bool {
        match p {
            Param::N => true,
            Param::B => self.b.is_some(),
            Param::C => self.c.is_some(),
            Param::M => self.m.is_some(),
            Param::S => self.s.is_some(),
        }
    }

    fn fields(&self) -> Vec<(&'static str, String)> {
        let mut out = vec![("n", self.n.to_string())];
        if let Some(b) = &self.b {
            out.push(("b", b.to_string()));
        }
        if let Some(c) = &self.c {
            out.push(("c", c.to_string()));
        }
        if let Some(m) = self.m {
            out.push(("m", m.to_string()));
        }
        if let Some(s) = self.s {
            out.push(("s", s.to_string()));
        }
        out
    }
}

impl fmt::Display for ParamBinding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .fields()
            .into_iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect();
        f.write_str(&parts.join(" "))
    }
}

impl Serialize for ParamBinding {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let fields = self.fields();
        let mut map = serializer.serialize_map(Some(fields.len()))?;
        for (k, v) in fields {
            map.serialize_entry(k, &v)?;
        }
        map.end()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Param {
    N,
    B,
    C,
    M,
    S,
}

impl Param {
    pub fn name(self) -> &'static str {
        match self {
            Param::N => "n",
            Param::B => "b",
            Param::C => "c",
            Param::M => "m",
            Param::S => "s",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RelationKind {
    BinomialTransformOf,
    InverseTransformOf,
    DerivativeInBOf,
    DerivativeInCOf,
    Specializes,
    Rediscovers,
}

impl RelationKind {
    pub fn name(self) -> &'static str {
        match self {
            RelationKind::BinomialTransformOf => "binomial-transform-of",
            RelationKind::InverseTransformOf => "inverse-transform-of",
            RelationKind::DerivativeInBOf => "derivative-in-b-of",
            RelationKind::DerivativeInCOf => "derivative-in-c-of",
            RelationKind::Specializes => "specializes",
            RelationKind::Rediscovers => "rediscovers",
        }
    }

    pub fn is_transform(self) -> bool {
        matches!(
            self,
            RelationKind::BinomialTransformOf | RelationKind::InverseTransformOf
        )
    }

    pub fn is_derivative(self) -> bool {
        matches!(
            self,
            RelationKind::DerivativeInBOf | RelationKind::DerivativeInCOf
        )
    }
}

impl fmt::Display for RelationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// How a derived identity arises from differentiating its base:
/// `d/dparam (base side) = derived_coeff * (derived side) + base_coeff * (base side)`.
#[derive(Debug, Clone, Copy)]
pub struct DerivativeMap {
    pub param: Param,
    pub derived_coeff: i64,
    pub base_coeff: Option<fn(&ParamBinding) -> Expr>,
    /// An interior binding used by the finite-difference check.
    pub probe: fn() -> ParamBinding,
}

#[derive(Debug, Clone)]
pub struct Relation {
    pub kind: RelationKind,
    pub target: &'static str,
    pub derivative: Option<DerivativeMap>,
}

impl Serialize for Relation {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(2))?;
        map.serialize_entry("kind", &self.kind)?;
        map.serialize_entry("target", self.target)?;
        map.end()
    }
}

/// Left-hand side shape.
#[derive(Debug, Clone, Copy)]
pub enum Lhs {
    /// `sign * Σ_{k=k_from}^{n} (-1)^k C(n,k) term(k)`
    AltSum {
        sign: i8,
        k_from: i64,
        term: fn(i64, &ParamBinding) -> Expr,
    },
    Closed(fn(&ParamBinding) -> Expr),
}

/// Why a binding is rejected by a descriptor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Exclusion {
    Pole(String),
    Outside(String),
}

pub type Guard = fn(&ParamBinding) -> Option<Exclusion>;

#[derive(Debug, Clone, Copy, Serialize)]
pub struct Anchor {
    pub group: &'static str,
    pub summary: &'static str,
}

#[derive(Debug, Clone)]
pub struct IdentityDescriptor {
    pub id: &'static str,
    pub params: &'static [Param],
    pub n_min: i64,
    pub guard: Guard,
    pub lhs: Lhs,
    pub rhs: fn(&ParamBinding) -> Expr,
    pub backends: &'static [BackendKind],
    pub relations: Vec<Relation>,
    pub anchor: Anchor,
    pub note: Option<&'static str>,
}

pub const ALL_BACKENDS: &[BackendKind] = &[
    BackendKind::ExactRational,
    BackendKind::ExactConstring,
    BackendKind::Interval,
];

pub const RING_BACKENDS: &[BackendKind] = &[BackendKind::ExactConstring, BackendKind::Interval];

impl IdentityDescriptor {
    fn alt(
        id: &'static str,
        params: &'static [Param],
        n_min: i64,
        sign: i8,
        k_from: i64,
        term: fn(i64, &ParamBinding) -> Expr,
        rhs: fn(&ParamBinding) -> Expr,
    ) -> Self {
        IdentityDescriptor {
            id,
            params,
            n_min,
            guard: no_guard,
            lhs: Lhs::AltSum { sign, k_from, term },
            rhs,
            backends: ALL_BACKENDS,
            relations: Vec::new(),
            anchor: Anchor {
                group: "",
                summary: "",
            },
            note: None,
        }
    }

    fn closed(
        id: &'static str,
        params: &'static [Param],
        n_min: i64,
        lhs: fn(&ParamBinding) -> Expr,
        rhs: fn(&ParamBinding) -> Expr,
    ) -> Self {
        IdentityDescriptor {
            lhs: Lhs::Closed(lhs),
            ..IdentityDescriptor::alt(id, params, n_min, 1, 0, |_, _| Expr::Rat(int(0)), rhs)
        }
    }

    fn guard(mut self, g: Guard) -> Self {
        self.guard = g;
        self
    }

    fn backends(mut self, b: &'static [BackendKind]) -> Self {
        self.backends = b;
        self
    }

    fn rel(mut self, kind: RelationKind, target: &'static str) -> Self {
        self.relations.push(Relation {
            kind,
            target,
            derivative: None,
        });
        self
    }

    fn deriv(mut self, target: &'static str, map: DerivativeMap) -> Self {
        let kind = match map.param {
            Param::B => RelationKind::DerivativeInBOf,
            Param::C => RelationKind::DerivativeInCOf,
            p => panic!("derivative in {p:?} is not supported"),
        };
        self.relations.push(Relation {
            kind,
            target,
            derivative: Some(map),
        });
        self
    }

    fn anchor(mut self, group: &'static str, summary: &'static str) -> Self {
        self.anchor = Anchor { group, summary };
        self
    }

    fn note(mut self, note: &'static str) -> Self {
        self.note = Some(note);
        self
    }

    pub fn supports(&self, kind: BackendKind) -> bool {
        self.backends.contains(&kind)
    }

    pub fn has_param(&self, p: Param) -> bool {
        self.params.contains(&p)
    }

    /// Checks parameter presence, the lower bound on `n`, and the guard.
    /// Pole exclusions come back as [`Error::Pole`], everything else as
    /// [`Error::Domain`].
    pub fn check_domain(&self, p: &ParamBinding) -> Result<()> {
        let outside = |reason: String| Error::Domain {
            id: self.id.to_string(),
            binding: p.to_string(),
            reason,
        };
        for param in [Param::B, Param::C, Param::M, Param::S] {
            if self.has_param(param) != p.has(param) {
                let state = if self.has_param(param) { "missing" } else { "unexpected" };
                return Err(outside(format!("{state} parameter {}", param.name())));
            }
        }
        if p.n < self.n_min {
            return Err(outside(format!("requires n >= {}", self.n_min)));
        }
        match (self.guard)(p) {
            None => Ok(()),
            Some(Exclusion::Pole(arg)) => Err(Error::Pole { arg }),
            Some(Exclusion::Outside(reason)) => Err(outside(reason)),
        }
    }

    fn check_backend(&self, kind: BackendKind) -> Result<()> {
        if self.supports(kind) {
            Ok(())
        } else {
            Err(Error::BackendUnsupported {
                id: self.id.to_string(),
                backend: kind.to_string(),
            })
        }
    }

    /// The left side by direct summation.
    pub fn lhs_value<B: Backend>(&self, p: &ParamBinding, backend: &B) -> Result<B::Value> {
        self.check_backend(backend.kind())?;
        self.check_domain(p)?;
        self.lhs_unchecked(p, backend)
    }

    /// The right side by its closed form.
    pub fn rhs_value<B: Backend>(&self, p: &ParamBinding, backend: &B) -> Result<B::Value> {
        self.check_backend(backend.kind())?;
        self.check_domain(p)?;
        eval(backend, &(self.rhs)(p))
    }

    /// The left side without domain checks. Used by the finite-difference
    /// and transform machinery, which evaluate sides as functions.
    pub fn lhs_unchecked<B: Backend>(&self, p: &ParamBinding, backend: &B) -> Result<B::Value> {
        match self.lhs {
            Lhs::Closed(f) => eval(backend, &f(p)),
            Lhs::AltSum { sign, k_from, term } => {
                let mut acc = backend.rational(&Rational::zero())?;
                for k in k_from..=p.n {
                    let mut coeff = binomial_int(p.n, k);
                    if (k % 2 != 0) != (sign < 0) {
                        coeff = -coeff;
                    }
                    let t = eval(backend, &term(k, p))?;
                    let t = backend.mul(&backend.rational(&coeff)?, &t)?;
                    acc = backend.add(&acc, &t)?;
                }
                Ok(acc)
            }
        }
    }

    pub fn rhs_unchecked<B: Backend>(&self, p: &ParamBinding, backend: &B) -> Result<B::Value> {
        eval(backend, &(self.rhs)(p))
    }

    pub fn relations_of(&self, kind: RelationKind) -> impl Iterator<Item = &Relation> {
        self.relations.iter().filter(move |r| r.kind == kind)
    }

    pub fn relation_to(&self, target: &str) -> Option<&Relation> {
        self.relations.iter().find(|r| r.target == target)
    }
}

pub(crate) fn no_guard(_: &ParamBinding) -> Option<Exclusion> {
    None
}

fn pole_if_negative_integer(name: &str, q: &Rational) -> Option<Exclusion> {
    is_negative_integer(q).then(|| Exclusion::Pole(format!("{name} = {q}")))
}

pub(crate) fn guard_b(p: &ParamBinding) -> Option<Exclusion> {
    pole_if_negative_integer("b", &p.b())
}

pub(crate) fn guard_b_nonzero(p: &ParamBinding) -> Option<Exclusion> {
    let b = p.b();
    if b.is_zero() {
        return Some(Exclusion::Pole("b = 0".into()));
    }
    guard_b(p)
}

pub(crate) fn guard_bc(p: &ParamBinding) -> Option<Exclusion> {
    let (b, c) = (p.b(), p.c());
    pole_if_negative_integer("b", &b)
        .or_else(|| pole_if_negative_integer("c", &c))
        .or_else(|| pole_if_negative_integer("b-c", &(&b - &c)))
}

pub(crate) fn guard_bc_c_nonzero(p: &ParamBinding) -> Option<Exclusion> {
    if p.c().is_zero() {
        return Some(Exclusion::Pole("c = 0".into()));
    }
    guard_bc(p)
}

pub(crate) fn guard_s_in_range(p: &ParamBinding) -> Option<Exclusion> {
    let s = p.s();
    (s < 0 || s > p.n).then(|| Exclusion::Outside(format!("requires 0 <= s <= {}", p.n)))
}

pub(crate) fn guard_b_nonzero_m(p: &ParamBinding) -> Option<Exclusion> {
    if p.m() == 0 {
        return Some(Exclusion::Outside("requires m >= 1".into()));
    }
    guard_b_nonzero(p)
}

/// `q + k`
pub(crate) fn sh(q: &Rational, k: i64) -> Rational {
    q + int(k)
}

pub struct Registry {
    list: Vec<IdentityDescriptor>,
    index: HashMap<&'static str, usize>,
}

impl Registry {
    fn build() -> Self {
        let mut list = Vec::new();
        list.extend(general::descriptors());
        list.extend(odd::descriptors());
        list.extend(power::descriptors());
        close_transform_relations(&mut list);
        let mut index = HashMap::new();
        for (i, d) in list.iter().enumerate() {
            let prev = index.insert(d.id, i);
            assert!(prev.is_none(), "duplicate identity id {}", d.id);
        }
        Registry { list, index }
    }
}

fn close_transform_relations(list: &mut [IdentityDescriptor]) {
    let mut missing = Vec::new();
    for d in list.iter() {
        for r in d.relations.iter().filter(|r| r.kind.is_transform()) {
            let reverse = match r.kind {
                RelationKind::BinomialTransformOf => RelationKind::InverseTransformOf,
                _ => RelationKind::BinomialTransformOf,
            };
            missing.push((r.target, reverse, d.id));
        }
    }
    for (holder, kind, target) in missing {
        let d = list
            .iter_mut()
            .find(|d| d.id == holder)
            .unwrap_or_else(|| panic!("transform target {holder} is not registered"));
        if !d.relations.iter().any(|r| r.target == target && r.kind.is_transform()) {
            d.relations.push(Relation {
                kind,
                target,
                derivative: None,
            });
        }
    }
}

fn registry() -> &'static Registry {
    static REGISTRY: OnceLock<Registry> = OnceLock::new();
    REGISTRY.get_or_init(Registry::build)
}

/// All descriptors in catalog order.
pub fn list_identities() -> &'static [IdentityDescriptor] {
    &registry().list
}

pub fn get_identity(id: &str) -> Result<&'static IdentityDescriptor> {
    let r = registry();
    r.index
        .get(id)
        .map(|&i| &r.list[i])
        .ok_or_else(|| Error::UnknownId(id.to_string()))
}

/// Resolves an exact id, or failing that every id starting with `prefix`.
pub fn select(selector: &str) -> Result<Vec<&'static IdentityDescriptor>> {
    if let Ok(d) = get_identity(selector) {
        return Ok(vec![d]);
    }
    let hits: Vec<_> = list_identities()
        .iter()
        .filter(|d| d.id.starts_with(selector))
        .collect();
    if hits.is_empty() {
        Err(Error::UnknownId(selector.to_string()))
    } else {
        Ok(hits)
    }
}

pub fn evaluate_lhs<B: Backend>(id: &str, p: &ParamBinding, backend: &B) -> Result<B::Value> {
    get_identity(id)?.lhs_value(p, backend)
}

pub fn evaluate_rhs<B: Backend>(id: &str, p: &ParamBinding, backend: &B) -> Result<B::Value> {
    get_identity(id)?.rhs_value(p, backend)
}

#[derive(Serialize)]
struct ExportRecord<'a> {
    id: &'a str,
    group: &'a str,
    summary: &'a str,
    params: Vec<&'static str>,
    n_min: i64,
    backends: Vec<&'static str>,
    relations: &'a [Relation],
    #[serde(skip_serializing_if = "Option::is_none")]
    note: Option<&'a str>,
}

/// One JSON object per descriptor, in catalog order.
pub fn export_json() -> serde_json::Value {
    let records: Vec<ExportRecord> = list_identities()
        .iter()
        .map(|d| ExportRecord {
            id: d.id,
            group: d.anchor.group,
            summary: d.anchor.summary,
            params: d.params.iter().map(|p| p.name()).collect(),
            n_min: d.n_min,
            backends: d.backends.iter().map(|b| b.name()).collect(),
            relations: &d.relations,
            note: d.note,
        })
        .collect();
    serde_json::to_value(records).expect("registry export is plain data")
}
