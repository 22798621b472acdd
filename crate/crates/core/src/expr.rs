//! A small expression language for identity sides, evaluated by any
//! [`Backend`]: exact rationals, the constant ring, or intervals.
//!
//! Arguments of harmonic numbers and binomials are exact rationals fixed at
//! construction time; only the combination of values is backend-specific.

use std::cell::RefCell;
use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::constring::ConstExpr;
use crate::error::{Error, Result};
use crate::halfint::{gen_binomial_exact, harmonic_exact};
use crate::psinterval::{gen_binomial_raw, harmonic_raw, ln2_raw, pi_raw, IntervalValue};
use crate::ratcore::{
    binomial_rational_shape, gen_harmonic, int, is_integer, odd_gen_harmonic2, odd_harmonic,
    BinomialRule, Rational,
};

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Rat(Rational),
    Ln2,
    Pi,
    /// `H_arg^(order)`
    Harm { order: u32, arg: Rational },
    /// `O_n` (order 1) or `O_n^(2)` (order 2)
    Odd { order: u32, n: i64 },
    /// `C(r, s)` under the Γ-ratio definition
    Binom(Rational, Rational),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Pow(Box<Expr>, i32),
}

/// Values usable as exact literals.
pub trait ToRational {
    fn to_rational(&self) -> Rational;
}

impl ToRational for i64 {
    fn to_rational(&self) -> Rational {
        int(*self)
    }
}

impl ToRational for i32 {
    fn to_rational(&self) -> Rational {
        int(*self as i64)
    }
}

impl ToRational for Rational {
    fn to_rational(&self) -> Rational {
        self.clone()
    }
}

impl<T: ToRational> ToRational for &T {
    fn to_rational(&self) -> Rational {
        (*self).to_rational()
    }
}

pub fn lit(q: impl ToRational) -> Expr {
    Expr::Rat(q.to_rational())
}

pub fn frac(num: i64, den: i64) -> Expr {
    Expr::Rat(crate::ratcore::frac(num, den))
}

pub fn h(x: impl ToRational) -> Expr {
    hr(1, x)
}

pub fn h2(x: impl ToRational) -> Expr {
    hr(2, x)
}

pub fn hr(order: u32, x: impl ToRational) -> Expr {
    Expr::Harm {
        order,
        arg: x.to_rational(),
    }
}

pub fn odd(n: i64) -> Expr {
    Expr::Odd { order: 1, n }
}

pub fn odd2(n: i64) -> Expr {
    Expr::Odd { order: 2, n }
}

pub fn binom(r: impl ToRational, s: impl ToRational) -> Expr {
    Expr::Binom(r.to_rational(), s.to_rational())
}

/// `2^e` as an exact literal.
pub fn pow2(e: i64) -> Expr {
    Expr::Rat(crate::ratcore::pow2(e))
}

impl Expr {
    pub fn pow(self, e: i32) -> Expr {
        Expr::Pow(Box::new(self), e)
    }

    pub fn recip(self) -> Expr {
        lit(1) / self
    }

    pub fn square(self) -> Expr {
        self.pow(2)
    }
}

impl From<i64> for Expr {
    fn from(v: i64) -> Self {
        lit(v)
    }
}

impl From<Rational> for Expr {
    fn from(q: Rational) -> Self {
        Expr::Rat(q)
    }
}

impl From<&Rational> for Expr {
    fn from(q: &Rational) -> Self {
        Expr::Rat(q.clone())
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $variant:ident) => {
        impl<T: Into<Expr>> $tr<T> for Expr {
            type Output = Expr;
            fn $method(self, rhs: T) -> Expr {
                Expr::$variant(Box::new(self), Box::new(rhs.into()))
            }
        }
    };
}

binop!(Add, add, Add);
binop!(Sub, sub, Sub);
binop!(Mul, mul, Mul);
binop!(Div, div, Div);

impl Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Expr::Neg(Box::new(self))
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Rat(q) if q.is_negative() => write!(f, "({q})"),
            Expr::Rat(q) => write!(f, "{q}"),
            Expr::Ln2 => write!(f, "ln2"),
            Expr::Pi => write!(f, "pi"),
            Expr::Harm { order: 1, arg } => write!(f, "H[{arg}]"),
            Expr::Harm { order, arg } => write!(f, "H^({order})[{arg}]"),
            Expr::Odd { order: 1, n } => write!(f, "O[{n}]"),
            Expr::Odd { order, n } => write!(f, "O^({order})[{n}]"),
            Expr::Binom(r, s) => write!(f, "C({r}, {s})"),
            Expr::Add(a, b) => write!(f, "({a} + {b})"),
            Expr::Sub(a, b) => write!(f, "({a} - {b})"),
            Expr::Mul(a, b) => write!(f, "{a}*{b}"),
            Expr::Div(a, b) => write!(f, "{a}/{b}"),
            Expr::Neg(a) => write!(f, "-{a}"),
            Expr::Pow(a, e) => write!(f, "{a}^{e}"),
        }
    }
}

/// The three evaluation backends.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BackendKind {
    ExactRational,
    ExactConstring,
    Interval,
}

impl BackendKind {
    pub fn name(self) -> &'static str {
        match self {
            BackendKind::ExactRational => "exact-rational",
            BackendKind::ExactConstring => "exact-constring",
            BackendKind::Interval => "interval",
        }
    }
}

impl fmt::Display for BackendKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub trait Backend {
    type Value: Clone;

    fn kind(&self) -> BackendKind;
    fn rational(&self, q: &Rational) -> Result<Self::Value>;
    fn ln2(&self) -> Result<Self::Value>;
    fn pi(&self) -> Result<Self::Value>;
    fn add(&self, a: &Self::Value, b: &Self::Value) -> Result<Self::Value>;
    fn sub(&self, a: &Self::Value, b: &Self::Value) -> Result<Self::Value>;
    fn mul(&self, a: &Self::Value, b: &Self::Value) -> Result<Self::Value>;
    fn div(&self, a: &Self::Value, b: &Self::Value) -> Result<Self::Value>;
    fn neg(&self, a: &Self::Value) -> Result<Self::Value>;
    fn powi(&self, a: &Self::Value, e: i32) -> Result<Self::Value>;
    fn harmonic(&self, order: u32, x: &Rational) -> Result<Self::Value>;
    fn odd_harmonic(&self, order: u32, n: i64) -> Result<Self::Value>;
    fn binomial(&self, r: &Rational, s: &Rational) -> Result<Self::Value>;
}

pub fn eval<B: Backend>(backend: &B, e: &Expr) -> Result<B::Value> {
    match e {
        Expr::Rat(q) => backend.rational(q),
        Expr::Ln2 => backend.ln2(),
        Expr::Pi => backend.pi(),
        Expr::Harm { order, arg } => backend.harmonic(*order, arg),
        Expr::Odd { order, n } => backend.odd_harmonic(*order, *n),
        Expr::Binom(r, s) => backend.binomial(r, s),
        Expr::Add(a, b) => backend.add(&eval(backend, a)?, &eval(backend, b)?),
        Expr::Sub(a, b) => backend.sub(&eval(backend, a)?, &eval(backend, b)?),
        Expr::Mul(a, b) => backend.mul(&eval(backend, a)?, &eval(backend, b)?),
        Expr::Div(a, b) => backend.div(&eval(backend, a)?, &eval(backend, b)?),
        Expr::Neg(a) => backend.neg(&eval(backend, a)?),
        Expr::Pow(a, k) => backend.powi(&eval(backend, a)?, *k),
    }
}

fn odd_value(order: u32, n: i64) -> Result<Rational> {
    if n < 0 {
        return Err(Error::InvalidArgument(format!("odd harmonic index {n} is negative")));
    }
    match order {
        1 => Ok(odd_harmonic(n as u64)),
        2 => Ok(odd_gen_harmonic2(n as u64)),
        _ => Err(Error::Unsupported(format!("odd harmonic order {order}"))),
    }
}

/// Exact rationals. Only integer harmonic indices and rational binomial
/// shapes are available.
#[derive(Debug, Default)]
pub struct RationalBackend;

impl Backend for RationalBackend {
    type Value = Rational;

    fn kind(&self) -> BackendKind {
        BackendKind::ExactRational
    }

    fn rational(&self, q: &Rational) -> Result<Rational> {
        Ok(q.clone())
    }

    fn ln2(&self) -> Result<Rational> {
        Err(Error::Unsupported("ln2 is not rational".into()))
    }

    fn pi(&self) -> Result<Rational> {
        Err(Error::Unsupported("pi is not rational".into()))
    }

    fn add(&self, a: &Rational, b: &Rational) -> Result<Rational> {
        Ok(a + b)
    }

    fn sub(&self, a: &Rational, b: &Rational) -> Result<Rational> {
        Ok(a - b)
    }

    fn mul(&self, a: &Rational, b: &Rational) -> Result<Rational> {
        Ok(a * b)
    }

    fn div(&self, a: &Rational, b: &Rational) -> Result<Rational> {
        if b.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(a / b)
    }

    fn neg(&self, a: &Rational) -> Result<Rational> {
        Ok(-a)
    }

    fn powi(&self, a: &Rational, e: i32) -> Result<Rational> {
        if e < 0 && a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(crate::ratcore::powi(a, e))
    }

    fn harmonic(&self, order: u32, x: &Rational) -> Result<Rational> {
        if !is_integer(x) {
            return Err(Error::Unsupported(format!("H^({order}) at non-integer {x}")));
        }
        if x.is_negative() {
            return Err(Error::Pole {
                arg: (x + Rational::one()).to_string(),
            });
        }
        let n = x
            .to_integer()
            .to_u64()
            .ok_or_else(|| Error::Unsupported(format!("harmonic index {x} too large")))?;
        Ok(gen_harmonic(n, order))
    }

    fn odd_harmonic(&self, order: u32, n: i64) -> Result<Rational> {
        odd_value(order, n)
    }

    fn binomial(&self, r: &Rational, s: &Rational) -> Result<Rational> {
        binomial_rational_shape(r, s)?
            .map(|(v, _)| v)
            .ok_or_else(|| Error::Unsupported(format!("C({r}, {s}) is not rational")))
    }
}

/// Exact values in the constant ring. Records every binomial rule used.
#[derive(Debug, Default)]
pub struct ConstBackend {
    rules: RefCell<BTreeSet<BinomialRule>>,
}

impl ConstBackend {
    pub fn new() -> Self {
        ConstBackend::default()
    }

    pub fn rules_fired(&self) -> Vec<BinomialRule> {
        self.rules.borrow().iter().copied().collect()
    }
}

impl Backend for ConstBackend {
    type Value = ConstExpr;

    fn kind(&self) -> BackendKind {
        BackendKind::ExactConstring
    }

    fn rational(&self, q: &Rational) -> Result<ConstExpr> {
        Ok(ConstExpr::from(q.clone()))
    }

    fn ln2(&self) -> Result<ConstExpr> {
        Ok(ConstExpr::ln2())
    }

    fn pi(&self) -> Result<ConstExpr> {
        Ok(ConstExpr::pi())
    }

    fn add(&self, a: &ConstExpr, b: &ConstExpr) -> Result<ConstExpr> {
        Ok(a + b)
    }

    fn sub(&self, a: &ConstExpr, b: &ConstExpr) -> Result<ConstExpr> {
        Ok(a - b)
    }

    fn mul(&self, a: &ConstExpr, b: &ConstExpr) -> Result<ConstExpr> {
        a.mul(b)
    }

    fn div(&self, a: &ConstExpr, b: &ConstExpr) -> Result<ConstExpr> {
        a.div_monomial(b)
    }

    fn neg(&self, a: &ConstExpr) -> Result<ConstExpr> {
        Ok(-a)
    }

    fn powi(&self, a: &ConstExpr, e: i32) -> Result<ConstExpr> {
        a.powi(e)
    }

    fn harmonic(&self, order: u32, x: &Rational) -> Result<ConstExpr> {
        harmonic_exact(order, x)
    }

    fn odd_harmonic(&self, order: u32, n: i64) -> Result<ConstExpr> {
        odd_value(order, n).map(ConstExpr::from)
    }

    fn binomial(&self, r: &Rational, s: &Rational) -> Result<ConstExpr> {
        let (v, rule) = gen_binomial_exact(r, s)?;
        self.rules.borrow_mut().insert(rule);
        Ok(v)
    }
}

/// Interval enclosures at a fixed working precision. Harmonic and binomial
/// enclosures are cached per instance.
#[derive(Debug)]
pub struct IntervalBackend {
    bits: u32,
    harmonics: RefCell<HashMap<(u32, Rational), IntervalValue>>,
    binomials: RefCell<HashMap<(Rational, Rational), IntervalValue>>,
}

impl IntervalBackend {
    pub fn new(bits: u32) -> Self {
        IntervalBackend {
            bits,
            harmonics: RefCell::new(HashMap::new()),
            binomials: RefCell::new(HashMap::new()),
        }
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    fn tidy(&self, v: IntervalValue) -> IntervalValue {
        v.round_out(self.bits + 32)
    }
}

impl Backend for IntervalBackend {
    type Value = IntervalValue;

    fn kind(&self) -> BackendKind {
        BackendKind::Interval
    }

    fn rational(&self, q: &Rational) -> Result<IntervalValue> {
        Ok(IntervalValue::point(q.clone()))
    }

    fn ln2(&self) -> Result<IntervalValue> {
        Ok(ln2_raw(self.bits + 32))
    }

    fn pi(&self) -> Result<IntervalValue> {
        Ok(pi_raw(self.bits + 32))
    }

    fn add(&self, a: &IntervalValue, b: &IntervalValue) -> Result<IntervalValue> {
        Ok(self.tidy(a + b))
    }

    fn sub(&self, a: &IntervalValue, b: &IntervalValue) -> Result<IntervalValue> {
        Ok(self.tidy(a - b))
    }

    fn mul(&self, a: &IntervalValue, b: &IntervalValue) -> Result<IntervalValue> {
        Ok(self.tidy(a * b))
    }

    fn div(&self, a: &IntervalValue, b: &IntervalValue) -> Result<IntervalValue> {
        Ok(self.tidy(a.div(b)?))
    }

    fn neg(&self, a: &IntervalValue) -> Result<IntervalValue> {
        Ok(-a)
    }

    fn powi(&self, a: &IntervalValue, e: i32) -> Result<IntervalValue> {
        Ok(self.tidy(a.powi(e)?))
    }

    fn harmonic(&self, order: u32, x: &Rational) -> Result<IntervalValue> {
        let key = (order, x.clone());
        if let Some(v) = self.harmonics.borrow().get(&key) {
            return Ok(v.clone());
        }
        let v = harmonic_raw(order, x, self.bits + 16)?;
        self.harmonics.borrow_mut().insert(key, v.clone());
        Ok(v)
    }

    fn odd_harmonic(&self, order: u32, n: i64) -> Result<IntervalValue> {
        odd_value(order, n).map(IntervalValue::point)
    }

    fn binomial(&self, r: &Rational, s: &Rational) -> Result<IntervalValue> {
        let key = (r.clone(), s.clone());
        if let Some(v) = self.binomials.borrow().get(&key) {
            return Ok(v.clone());
        }
        let v = gen_binomial_raw(r, s, self.bits + 16)?;
        self.binomials.borrow_mut().insert(key, v.clone());
        Ok(v)
    }
}

/// `Σ_{k=lo}^{hi} term(k)` in any backend.
pub fn sum<B: Backend>(
    backend: &B,
    lo: i64,
    hi: i64,
    mut term: impl FnMut(i64) -> Result<B::Value>,
) -> Result<B::Value> {
    let mut acc = backend.rational(&Rational::zero())?;
    for k in lo..=hi {
        acc = backend.add(&acc, &term(k)?)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::psinterval::Precision;
    use crate::ratcore::frac as q;

    #[test]
    fn operators_build_trees() {
        let e = lit(1) + h(2) * 3 - frac(1, 2);
        assert_eq!(eval(&RationalBackend, &e).unwrap(), q(5, 1));
        let e = -(binom(5, 2) / lit(4)).pow(2);
        assert_eq!(eval(&RationalBackend, &e).unwrap(), q(-25, 4));
    }

    #[test]
    fn rational_backend_rejects_transcendental_values() {
        assert!(matches!(
            eval(&RationalBackend, &h(q(1, 2))),
            Err(Error::Unsupported(_))
        ));
        assert!(matches!(eval(&RationalBackend, &h(-1)), Err(Error::Pole { .. })));
        assert_eq!(
            eval(&RationalBackend, &(lit(1) / lit(0))),
            Err(Error::DivisionByZero)
        );
    }

    #[test]
    fn const_backend_tracks_rules() {
        let b = ConstBackend::new();
        let e = binom(3, q(-1, 2)) * Expr::Pi;
        assert_eq!(eval(&b, &e).unwrap(), ConstExpr::from(q(32, 35)));
        assert_eq!(b.rules_fired(), vec![BinomialRule::LowerMinusHalf]);
        let v = eval(&b, &(h(q(1, 2)) - h(q(-1, 2)))).unwrap();
        assert_eq!(v, ConstExpr::from(2));
    }

    #[test]
    fn backends_agree_on_a_mixed_expression() {
        let e = h(q(7, 2)) * binom(4, q(1, 2)) - h2(q(-1, 2)) / Expr::Pi;
        let exact = eval(&ConstBackend::new(), &e).unwrap();
        let iv = eval(&IntervalBackend::new(96), &e).unwrap();
        let reference = exact.eval_interval(&Precision::bits(100)).unwrap();
        assert!(iv.overlaps(&reference), "{iv} vs {reference}");
        assert!(iv.width() < crate::ratcore::pow2(-80));
    }
}
