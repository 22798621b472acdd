//! Exact constant-extension ring: finite rational-linear combinations of
//! `ln2^a * pi^b` with `a ∈ 0..=2`, `b ∈ -2..=2`.
//!
//! `ζ(2)` never appears as a symbol; callers write it as `pi^2/6`, so
//! equality is coefficient-wise.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::psinterval::{ln2_raw, pi_raw, refine, IntervalValue, Precision};
use crate::ratcore::{int, Rational};

pub const LN2_MAX: i32 = 2;
pub const PI_MIN: i32 = -2;
pub const PI_MAX: i32 = 2;

/// `ln2^ln2 * pi^pi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    ln2: i32,
    pi: i32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { ln2: 0, pi: 0 };

    pub fn new(ln2: i32, pi: i32) -> Result<Self> {
        if !(0..=LN2_MAX).contains(&ln2) || !(PI_MIN..=PI_MAX).contains(&pi) {
            return Err(Error::ExponentOverflow { ln2, pi });
        }
        Ok(Monomial { ln2, pi })
    }

    pub fn ln2_exp(&self) -> i32 {
        self.ln2
    }

    pub fn pi_exp(&self) -> i32 {
        self.pi
    }

    pub fn mul(self, other: Monomial) -> Result<Monomial> {
        Monomial::new(self.ln2 + other.ln2, self.pi + other.pi)
    }

    fn is_one(&self) -> bool {
        *self == Monomial::ONE
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.ln2 {
            0 => {}
            1 => parts.push("ln2".to_string()),
            a => parts.push(format!("ln2^{a}")),
        }
        match self.pi {
            0 => {}
            1 => parts.push("pi".to_string()),
            b => parts.push(format!("pi^{b}")),
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

/// Element of the ring. The empty map is zero; stored coefficients are
/// never zero, so structural equality is value equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct ConstExpr {
    terms: BTreeMap<Monomial, Rational>,
}

impl ConstExpr {
    pub fn zero() -> Self {
        ConstExpr::default()
    }

    pub fn one() -> Self {
        ConstExpr::from_rational(Rational::one())
    }

    pub fn from_rational(q: Rational) -> Self {
        ConstExpr::monomial(q, Monomial::ONE)
    }

    pub fn monomial(coeff: Rational, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(m, coeff);
        }
        ConstExpr { terms }
    }

    pub fn ln2() -> Self {
        ConstExpr::monomial(Rational::one(), Monomial { ln2: 1, pi: 0 })
    }

    pub fn pi() -> Self {
        ConstExpr::monomial(Rational::one(), Monomial { ln2: 0, pi: 1 })
    }

    /// `ζ(2) = pi^2/6`.
    pub fn zeta2() -> Self {
        ConstExpr::monomial(Rational::new(1.into(), 6.into()), Monomial { ln2: 0, pi: 2 })
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: Monomial) -> Rational {
        self.terms.get(&m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The value when it has no transcendental part.
    pub fn as_rational(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Monomial::ONE).cloned(),
            _ => None,
        }
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(m).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn scale(&self, q: &Rational) -> ConstExpr {
        if q.is_zero() {
            return ConstExpr::zero();
        }
        ConstExpr {
            terms: self.terms.iter().map(|(m, c)| (*m, c * q)).collect(),
        }
    }

    pub fn mul(&self, other: &ConstExpr) -> Result<ConstExpr> {
        let mut out = ConstExpr::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(*mb)?, ca * cb);
            }
        }
        Ok(out)
    }

    /// Exact division by a single nonzero term.
    pub fn div_monomial(&self, d: &ConstExpr) -> Result<ConstExpr> {
        let (m, c) = match d.terms.len() {
            0 => return Err(Error::DivisionByZero),
            1 => d.terms.iter().next().expect("one term"),
            n => return Err(Error::NotMonomial { terms: n }),
        };
        let inv = Monomial::new(-m.ln2, -m.pi)?;
        let cinv = c.recip();
        let mut out = ConstExpr::zero();
        for (mx, cx) in &self.terms {
            out.add_term(mx.mul(inv)?, cx * &cinv);
        }
        Ok(out)
    }

    pub fn powi(&self, e: i32) -> Result<ConstExpr> {
        if e < 0 {
            let base = ConstExpr::one().div_monomial(self)?;
            return base.powi(-e);
        }
        let mut acc = ConstExpr::one();
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Enclosure at working precision `bits`.
    pub fn eval_raw(&self, bits: u32) -> Result<IntervalValue> {
        let mut acc = IntervalValue::zero();
        if self.is_zero() {
            return Ok(acc);
        }
        let w = bits + 8;
        let ln2 = ln2_raw(w);
        let pi = pi_raw(w);
        for (m, c) in &self.terms {
            let mut v = IntervalValue::point(c.clone());
            if m.ln2 > 0 {
                v = &v * &ln2.powi(m.ln2)?;
            }
            if m.pi != 0 {
                v = &v * &pi.powi(m.pi)?;
            }
            acc = (&acc + &v).round_out(w);
        }
        Ok(acc)
    }

    /// Enclosure no wider than `p.eps()`.
    pub fn eval_interval(&self, p: &Precision) -> Result<IntervalValue> {
        if let Some(q) = self.as_rational() {
            return Ok(IntervalValue::point(q));
        }
        refine(p.eps(), |bits| self.eval_raw(bits))
    }
}

pub fn ce_from_rational(q: Rational) -> ConstExpr {
    ConstExpr::from_rational(q)
}

pub fn ce_add(x: &ConstExpr, y: &ConstExpr) -> ConstExpr {
    x + y
}

pub fn ce_mul(x: &ConstExpr, y: &ConstExpr) -> Result<ConstExpr> {
    x.mul(y)
}

pub fn ce_div_monomial(x: &ConstExpr, d: &ConstExpr) -> Result<ConstExpr> {
    x.div_monomial(d)
}

pub fn ce_eval_interval(x: &ConstExpr, eps: &Rational) -> Result<IntervalValue> {
    x.eval_interval(&Precision::new(eps.clone())?)
}

impl From<Rational> for ConstExpr {
    fn from(q: Rational) -> Self {
        ConstExpr::from_rational(q)
    }
}

impl From<i64> for ConstExpr {
    fn from(v: i64) -> Self {
        ConstExpr::from_rational(int(v))
    }
}

impl Add for &ConstExpr {
    type Output = ConstExpr;
    fn add(self, rhs: &ConstExpr) -> ConstExpr {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl Sub for &ConstExpr {
    type Output = ConstExpr;
    fn sub(self, rhs: &ConstExpr) -> ConstExpr {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c);
        }
        out
    }
}

impl Neg for &ConstExpr {
    type Output = ConstExpr;
    fn neg(self) -> ConstExpr {
        ConstExpr {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

impl fmt::Display for ConstExpr {
    /// `5/6 - 2*ln2 + 1/3*pi^2`, terms ordered by `(ln2, pi)` exponents.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{mag}*{m}")?;
            }
        }
        Ok(())
    }
}

impl Serialize for ConstExpr {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}
