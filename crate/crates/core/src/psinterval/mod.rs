//! Rigorous interval arithmetic over rational endpoints.
//!
//! Endpoints are exact rationals. Operations are exact; callers bound
//! endpoint growth with [`IntervalValue::round_out`], which moves each
//! endpoint outward to a dyadic rational with a fixed number of significant
//! bits. Containment is therefore preserved by construction.
//!
//! Transcendental enclosures are computed at a *working precision* (bits)
//! and refined along a fixed doubling ladder; the enclosure returned for a
//! target width is the intersection of every ladder level up to the first
//! one that meets it. Tighter targets therefore always return nested
//! intervals.

mod elementary;
mod fixed;
mod gamma;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ratcore::{approx_log2, pow2, Rational};

pub use elementary::{exp_raw, ln2_enclosure, ln2_raw, ln_raw, pi_enclosure, pi_raw};
pub use gamma::{
    digamma_enclosure, digamma_raw, gen_binomial_enclosure, gen_binomial_raw,
    harmonic2_enclosure, harmonic_enclosure, harmonic_raw, lgamma_enclosure, lgamma_raw,
    polygamma_enclosure, polygamma_raw,
};

/// First rung of the precision ladder, in bits.
pub const START_BITS: u32 = 32;
/// Last rung; asking for more is reported as a precision failure.
pub const MAX_BITS: u32 = 4096;

/// Closed interval `[lo, hi]` with rational endpoints.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntervalValue {
    lo: Rational,
    hi: Rational,
}

impl IntervalValue {
    pub fn new(lo: Rational, hi: Rational) -> Result<Self> {
        if lo > hi {
            return Err(Error::InvalidArgument(format!(
                "interval endpoints out of order: [{lo}, {hi}]"
            )));
        }
        Ok(IntervalValue { lo, hi })
    }

    pub fn point(q: Rational) -> Self {
        IntervalValue {
            lo: q.clone(),
            hi: q,
        }
    }

    pub fn zero() -> Self {
        Self::point(Rational::zero())
    }

    /// `[center - radius, center + radius]`; `radius` must be non-negative.
    pub fn ball(center: Rational, radius: Rational) -> Self {
        let radius = radius.abs();
        IntervalValue {
            lo: &center - &radius,
            hi: center + radius,
        }
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / Rational::from_integer(BigInt::from(2))
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    /// `max(|lo|, |hi|)`
    pub fn magnitude(&self) -> Rational {
        let a = self.lo.abs();
        let b = self.hi.abs();
        if a > b {
            a
        } else {
            b
        }
    }

    pub fn contains(&self, q: &Rational) -> bool {
        &self.lo <= q && q <= &self.hi
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn contains_interval(&self, other: &IntervalValue) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn overlaps(&self, other: &IntervalValue) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn intersect(&self, other: &IntervalValue) -> Option<IntervalValue> {
        let lo = if self.lo > other.lo {
            &self.lo
        } else {
            &other.lo
        };
        let hi = if self.hi < other.hi {
            &self.hi
        } else {
            &other.hi
        };
        (lo <= hi).then(|| IntervalValue {
            lo: lo.clone(),
            hi: hi.clone(),
        })
    }

    pub fn hull(&self, other: &IntervalValue) -> IntervalValue {
        IntervalValue {
            lo: self.lo.clone().min(other.lo.clone()),
            hi: self.hi.clone().max(other.hi.clone()),
        }
    }

    pub fn scale(&self, q: &Rational) -> IntervalValue {
        let a = &self.lo * q;
        let b = &self.hi * q;
        if q.is_negative() {
            IntervalValue { lo: b, hi: a }
        } else {
            IntervalValue { lo: a, hi: b }
        }
    }

    pub fn recip(&self) -> Result<IntervalValue> {
        if self.lo.is_zero() && self.hi.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.contains_zero() {
            return Err(Error::Precision(
                "divisor enclosure contains zero".to_string(),
            ));
        }
        Ok(IntervalValue {
            lo: self.hi.recip(),
            hi: self.lo.recip(),
        })
    }

    pub fn div(&self, other: &IntervalValue) -> Result<IntervalValue> {
        if other.is_point() {
            if other.lo.is_zero() {
                return Err(Error::DivisionByZero);
            }
            return Ok(self.scale(&other.lo.recip()));
        }
        Ok(self * &other.recip()?)
    }

    pub fn powi(&self, e: i32) -> Result<IntervalValue> {
        if e < 0 {
            return self.recip()?.powi(-e);
        }
        let e = e as usize;
        if e == 0 {
            return Ok(Self::point(Rational::one()));
        }
        let pl = num_traits::pow(self.lo.clone(), e);
        let ph = num_traits::pow(self.hi.clone(), e);
        if e % 2 == 1 || !self.lo.is_negative() {
            return Ok(IntervalValue { lo: pl, hi: ph });
        }
        if !self.hi.is_positive() {
            return Ok(IntervalValue { lo: ph, hi: pl });
        }
        Ok(IntervalValue {
            lo: Rational::zero(),
            hi: pl.max(ph),
        })
    }

    /// Move both endpoints outward to dyadic rationals carrying `bits`
    /// significant bits.
    pub fn round_out(&self, bits: u32) -> IntervalValue {
        IntervalValue {
            lo: round_rational(&self.lo, bits, Direction::Down),
            hi: round_rational(&self.hi, bits, Direction::Up),
        }
    }

    /// Decimal rendering of the midpoint, marked approximate.
    pub fn to_decimal(&self, digits: usize) -> String {
        format!("~{}", decimal(&self.midpoint(), digits))
    }
}

impl fmt::Display for IntervalValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_point() {
            write!(f, "[{}]", self.lo)
        } else {
            write!(
                f,
                "[{}, {}]",
                decimal_directed(&self.lo, 30, Direction::Down),
                decimal_directed(&self.hi, 30, Direction::Up)
            )
        }
    }
}

impl Serialize for IntervalValue {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("IntervalValue", 2)?;
        st.serialize_field("lo", &self.lo.to_string())?;
        st.serialize_field("hi", &self.hi.to_string())?;
        st.end()
    }
}

impl Add for &IntervalValue {
    type Output = IntervalValue;
    fn add(self, o: &IntervalValue) -> IntervalValue {
        IntervalValue {
            lo: &self.lo + &o.lo,
            hi: &self.hi + &o.hi,
        }
    }
}

impl Sub for &IntervalValue {
    type Output = IntervalValue;
    fn sub(self, o: &IntervalValue) -> IntervalValue {
        IntervalValue {
            lo: &self.lo - &o.hi,
            hi: &self.hi - &o.lo,
        }
    }
}

impl Neg for &IntervalValue {
    type Output = IntervalValue;
    fn neg(self) -> IntervalValue {
        IntervalValue {
            lo: -&self.hi,
            hi: -&self.lo,
        }
    }
}

impl Mul for &IntervalValue {
    type Output = IntervalValue;
    fn mul(self, o: &IntervalValue) -> IntervalValue {
        if o.is_point() {
            return self.scale(&o.lo);
        }
        if self.is_point() {
            return o.scale(&self.lo);
        }
        let cands = [
            &self.lo * &o.lo,
            &self.lo * &o.hi,
            &self.hi * &o.lo,
            &self.hi * &o.hi,
        ];
        let mut lo = cands[0].clone();
        let mut hi = cands[0].clone();
        for c in &cands[1..] {
            if c < &lo {
                lo = c.clone();
            }
            if c > &hi {
                hi = c.clone();
            }
        }
        IntervalValue { lo, hi }
    }
}

/// Target width for an enclosure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Precision {
    eps: Rational,
}

impl Precision {
    pub fn new(eps: Rational) -> Result<Self> {
        if !eps.is_positive() {
            return Err(Error::InvalidArgument(
                "precision eps must be positive".to_string(),
            ));
        }
        Ok(Precision { eps })
    }

    /// `eps = 2^-bits`
    pub fn bits(bits: u32) -> Self {
        Precision {
            eps: pow2(-(bits as i64)),
        }
    }

    pub fn eps(&self) -> &Rational {
        &self.eps
    }

    /// Number of bits `b` with `2^-b <= eps`.
    pub fn bits_needed(&self) -> u32 {
        let mut b = (-approx_log2(&self.eps)).max(1) as u32;
        while pow2(-(b as i64)) > self.eps {
            b += 1;
        }
        b
    }
}

/// Run `raw` along the precision ladder, intersecting as it goes, until the
/// enclosure is no wider than `eps`.
pub fn refine<F>(eps: &Rational, mut raw: F) -> Result<IntervalValue>
where
    F: FnMut(u32) -> Result<IntervalValue>,
{
    let mut bits = START_BITS;
    let mut acc = raw(bits)?;
    loop {
        if &acc.width() <= eps {
            return Ok(acc);
        }
        bits *= 2;
        if bits > MAX_BITS {
            return Err(Error::Precision(format!(
                "width {} still above target after {MAX_BITS} bits",
                decimal(&acc.width(), 6)
            )));
        }
        let next = raw(bits)?;
        acc = acc.intersect(&next).ok_or_else(|| {
            Error::Precision("enclosures at successive precisions are disjoint".to_string())
        })?;
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Direction {
    Down,
    Up,
}

pub(crate) fn round_rational(q: &Rational, bits: u32, dir: Direction) -> Rational {
    if q.is_zero() {
        return q.clone();
    }
    let (n, d) = (q.numer(), q.denom());
    let dyadic_den = d.trailing_zeros() == Some(d.bits() - 1);
    if dyadic_den && n.bits() <= bits as u64 + 1 {
        return q.clone();
    }
    let shift = bits as i64 - approx_log2(q);
    let round = |num: BigInt, den: &BigInt| match dir {
        Direction::Down => num.div_floor(den),
        Direction::Up => -((-num).div_floor(den)),
    };
    if shift >= 0 {
        fixed::dyadic(round(n << shift as u64, d), shift as u32)
    } else {
        Rational::from_integer(round(n.clone(), &(d << (-shift) as u64)) << (-shift) as u64)
    }
}

/// Round an exact rational outward to a small enclosing interval.
pub fn enclose_rational(q: &Rational, bits: u32) -> IntervalValue {
    IntervalValue {
        lo: round_rational(q, bits, Direction::Down),
        hi: round_rational(q, bits, Direction::Up),
    }
}

/// Fixed-point decimal rendering, truncated toward zero.
pub fn decimal(q: &Rational, digits: usize) -> String {
    let neg = q.is_negative();
    let a = q.abs();
    let scale = num_traits::pow(BigInt::from(10), digits);
    let scaled = (a.numer() * &scale).div_floor(a.denom());
    let (int_part, frac_part) = scaled.div_rem(&scale);
    let mut s = String::new();
    if neg && !scaled.is_zero() {
        s.push('-');
    }
    s.push_str(&int_part.to_string());
    if digits > 0 {
        s.push('.');
        let f = frac_part.to_string();
        for _ in f.len()..digits {
            s.push('0');
        }
        s.push_str(&f);
    }
    s
}

fn decimal_directed(q: &Rational, digits: usize, dir: Direction) -> String {
    let scale = Rational::from_integer(num_traits::pow(BigInt::from(10), digits));
    let scaled = q * &scale;
    let n = match dir {
        Direction::Down => scaled.floor(),
        Direction::Up => scaled.ceil(),
    };
    decimal(&(n / scale), digits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratcore::{frac, int};

    fn iv(lo: Rational, hi: Rational) -> IntervalValue {
        IntervalValue::new(lo, hi).unwrap()
    }

    #[test]
    fn rejects_reversed_endpoints() {
        assert!(IntervalValue::new(int(1), int(0)).is_err());
    }

    #[test]
    fn multiplication_covers_sign_cases() {
        let a = iv(int(-2), int(3));
        let b = iv(int(-1), int(4));
        assert_eq!(&a * &b, iv(int(-8), int(12)));
        assert_eq!(a.powi(2).unwrap(), iv(int(0), int(9)));
        assert_eq!(iv(int(-3), int(-2)).powi(2).unwrap(), iv(int(4), int(9)));
    }

    #[test]
    fn division_by_straddling_interval_fails() {
        let a = iv(int(1), int(2));
        assert!(matches!(
            a.div(&iv(int(-1), int(1))),
            Err(Error::Precision(_))
        ));
        assert_eq!(
            a.div(&IntervalValue::zero()),
            Err(Error::DivisionByZero)
        );
    }

    #[test]
    fn rounding_is_outward() {
        let q = frac(1, 3);
        let r = enclose_rational(&q, 20);
        assert!(r.contains(&q));
        assert!(r.width() < pow2(-20));
        let n = frac(-7, 3);
        let r = enclose_rational(&n, 40);
        assert!(r.contains(&n));
        assert!(r.lo() < &n && &n < r.hi());
    }

    #[test]
    fn precision_bits() {
        assert_eq!(Precision::bits(64).bits_needed(), 64);
        assert_eq!(Precision::new(frac(1, 1000)).unwrap().bits_needed(), 10);
        assert!(Precision::new(int(0)).is_err());
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(decimal(&frac(25, 12), 5), "2.08333");
        assert_eq!(decimal(&frac(-1, 8), 3), "-0.125");
        assert_eq!(decimal(&int(0), 2), "0.00");
    }
}
