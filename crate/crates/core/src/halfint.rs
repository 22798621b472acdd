//! Exact values at half-integer arguments, as elements of the constant ring.
//!
//! `H_{n-1/2} = 2 O_n - 2 ln2` and `H^(2)_{n-1/2} = 4 O^(2)_n - pi^2/3`; the
//! binomial shapes below are the closed forms for `C(r ± 1/2, s)`,
//! `C(r, ±1/2)` and `C(r - 1/2, r + 1)`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::constring::{ConstExpr, Monomial};
use crate::error::{Error, Result};
use crate::ratcore::{
    as_i64, binomial_int, binomial_rational_shape, factorial, frac, gen_harmonic, int,
    is_integer, odd_gen_harmonic2, odd_harmonic, pow2, BinomialRule, Rational,
};

/// The three half-integer offsets used by the catalog.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HalfOffset {
    MinusHalf,
    PlusHalf,
    MinusThreeHalves,
}

impl HalfOffset {
    fn value(self) -> Rational {
        match self {
            HalfOffset::MinusHalf => frac(-1, 2),
            HalfOffset::PlusHalf => frac(1, 2),
            HalfOffset::MinusThreeHalves => frac(-3, 2),
        }
    }
}

/// The argument `n + offset`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct HalfArg {
    pub n: i64,
    pub offset: HalfOffset,
}

impl HalfArg {
    pub fn new(n: i64, offset: HalfOffset) -> Self {
        HalfArg { n, offset }
    }

    pub fn value(&self) -> Rational {
        int(self.n) + self.offset.value()
    }

    /// `m` with `value = m - 1/2`.
    fn upper_index(&self) -> i64 {
        match self.offset {
            HalfOffset::MinusHalf => self.n,
            HalfOffset::PlusHalf => self.n + 1,
            HalfOffset::MinusThreeHalves => self.n - 1,
        }
    }

    /// Recognises `x = m - 1/2`; the offset chosen is always `-1/2`.
    pub fn from_rational(x: &Rational) -> Option<HalfArg> {
        let twice = x * int(2);
        if is_integer(x) || !is_integer(&twice) {
            return None;
        }
        let m = (x + frac(1, 2)).to_integer().to_i64()?;
        Some(HalfArg::new(m, HalfOffset::MinusHalf))
    }
}

impl fmt::Display for HalfArg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value())
    }
}

fn unsupported_arg(order: u32, x: &Rational) -> Error {
    Error::Unsupported(format!("H^({order}) at {x} has no closed form in the ring"))
}

/// `H_x` for a half-integer `x >= -3/2`.
pub fn harmonic_half(x: HalfArg) -> Result<ConstExpr> {
    let m = x.upper_index();
    let ln2_part = ConstExpr::ln2().scale(&int(-2));
    match m {
        m if m >= 0 => Ok(&ConstExpr::from(odd_harmonic(m as u64) * int(2)) + &ln2_part),
        // H_{-3/2} = H_{-1/2} - 1/(-1/2)
        -1 => Ok(&ConstExpr::from(2) + &ln2_part),
        _ => Err(unsupported_arg(1, &x.value())),
    }
}

/// `H^(2)_{n-1/2}` for `n >= 0`.
pub fn harmonic2_half(n: i64) -> Result<ConstExpr> {
    if n < 0 {
        return harmonic2_at(&(int(n) - frac(1, 2)));
    }
    let pi2 = ConstExpr::monomial(frac(-1, 3), Monomial::new(0, 2)?);
    Ok(&pi2 + &ConstExpr::from(odd_gen_harmonic2(n as u64) * int(4)))
}

fn harmonic2_at(x: &Rational) -> Result<ConstExpr> {
    let h = HalfArg::from_rational(x).ok_or_else(|| unsupported_arg(2, x))?;
    match h.upper_index() {
        m if m >= 0 => harmonic2_half(m),
        // H^(2)_{-3/2} = H^(2)_{-1/2} - 1/(1/4)
        -1 => Ok(&harmonic2_half(0)? - &ConstExpr::from(4)),
        _ => Err(unsupported_arg(2, x)),
    }
}

/// `H_x^(order)` in the ring: non-negative integers give rationals,
/// half-integers `>= -3/2` are supported for orders 1 and 2.
pub fn harmonic_exact(order: u32, x: &Rational) -> Result<ConstExpr> {
    if order == 0 {
        return Err(Error::InvalidArgument("harmonic order must be positive".into()));
    }
    if is_integer(x) {
        if x.is_negative() {
            return Err(Error::Pole {
                arg: (x + Rational::one()).to_string(),
            });
        }
        let n = x
            .to_integer()
            .to_u64()
            .ok_or_else(|| Error::Unsupported(format!("harmonic index {x} too large")))?;
        return Ok(ConstExpr::from(gen_harmonic(n, order)));
    }
    match order {
        1 => harmonic_half(HalfArg::from_rational(x).ok_or_else(|| unsupported_arg(1, x))?),
        2 => harmonic2_at(x),
        _ => Err(unsupported_arg(order, x)),
    }
}

/// The named closed forms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BinomialShape {
    /// `C(r + 1/2, s) = C(2r+1, 2s) C(2s, s) / (4^s C(r, s))`, `0 <= s <= r`
    UpperPlusHalf,
    /// `C(r - 1/2, s) = C(r, s) C(2r, r) / (4^s C(2r-2s, r-s))`, `0 <= s <= r`
    UpperMinusHalf,
    /// `C(r, 1/2) = 2^(2r+1) / (pi C(2r, r))`, `r >= 0`
    LowerHalf,
    /// `C(r, -1/2) = 2^(2r+1) / (pi (2r+1) C(2r, r))`, `r >= 0`
    LowerMinusHalf,
    /// `C(r - 1/2, r + 1) = -C(2r, r) / ((r+1) 2^(2r+1))`, `r >= 0`
    UpperMinusHalfNext,
}

fn central(r: i64) -> Rational {
    binomial_int(2 * r, r)
}

fn over_pi(q: Rational) -> Result<ConstExpr> {
    Ok(ConstExpr::monomial(q, Monomial::new(0, -1)?))
}

pub fn binomial_half(shape: BinomialShape, r: i64, s: i64) -> Result<ConstExpr> {
    let domain = |ok: bool| {
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidArgument(format!(
                "{shape:?} is not defined at r={r}, s={s}"
            )))
        }
    };
    match shape {
        BinomialShape::UpperPlusHalf => {
            domain(0 <= s && s <= r)?;
            let v = binomial_int(2 * r + 1, 2 * s) * central(s) * pow2(-2 * s)
                / binomial_int(r, s);
            Ok(ConstExpr::from(v))
        }
        BinomialShape::UpperMinusHalf => {
            domain(0 <= s && s <= r)?;
            let v = binomial_int(r, s) * central(r) * pow2(-2 * s)
                / binomial_int(2 * r - 2 * s, r - s);
            Ok(ConstExpr::from(v))
        }
        BinomialShape::LowerHalf => {
            domain(r >= 0)?;
            over_pi(pow2(2 * r + 1) / central(r))
        }
        BinomialShape::LowerMinusHalf => {
            domain(r >= 0)?;
            over_pi(pow2(2 * r + 1) / (central(r) * int(2 * r + 1)))
        }
        BinomialShape::UpperMinusHalfNext => {
            domain(r >= 0)?;
            Ok(ConstExpr::from(-central(r) / (int(r + 1) * pow2(2 * r + 1))))
        }
    }
}

/// `Γ(m + 1/2) / sqrt(pi)` for any integer `m`.
fn gamma_half_ratio(m: i64) -> Rational {
    if m >= 0 {
        let m = m as u64;
        Rational::new(factorial(2 * m), factorial(m) * (BigInt::one() << (2 * m)))
    } else {
        // Γ(1/2 - k) = sqrt(pi) (-4)^k k! / (2k)!
        let k = m.unsigned_abs();
        let mag = Rational::new(factorial(k) * (BigInt::one() << (2 * k)), factorial(2 * k));
        if k % 2 == 1 {
            -mag
        } else {
            mag
        }
    }
}

/// Exact `C(r, s)` in the ring together with the rule that produced it.
pub fn gen_binomial_exact(r: &Rational, s: &Rational) -> Result<(ConstExpr, BinomialRule)> {
    if let Some((v, rule)) = binomial_rational_shape(r, s)? {
        return Ok((ConstExpr::from(v), rule));
    }
    // Remaining exact shape: r an integer, s a half-integer.
    let ri = as_i64(r);
    let sh = HalfArg::from_rational(s);
    let (ri, sh) = match (ri, sh) {
        (Some(ri), Some(sh)) => (ri, sh),
        _ => {
            return Err(Error::Unsupported(format!(
                "C({r}, {s}) has no exact form in the ring"
            )))
        }
    };
    if ri >= 0 && s == &frac(1, 2) {
        return Ok((binomial_half(BinomialShape::LowerHalf, ri, 0)?, BinomialRule::LowerHalf));
    }
    if ri >= 0 && s == &frac(-1, 2) {
        return Ok((
            binomial_half(BinomialShape::LowerMinusHalf, ri, 0)?,
            BinomialRule::LowerMinusHalf,
        ));
    }
    // r! / (Γ(s+1) Γ(r-s+1)) with s + 1 = m1 + 1/2 and r - s + 1 = m2 + 1/2
    let m1 = sh.upper_index();
    let m2 = ri + 1 - m1;
    let denom = gamma_half_ratio(m1) * gamma_half_ratio(m2);
    debug_assert!(!denom.is_zero());
    let v = Rational::from_integer(factorial(ri as u64)) / denom;
    Ok((over_pi(v)?, BinomialRule::HalfIntegerGamma))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratcore::{gen_binomial_rational_lower, harmonic};

    fn rat(q: Rational) -> ConstExpr {
        ConstExpr::from(q)
    }

    fn ln2_times(c: i64) -> ConstExpr {
        ConstExpr::ln2().scale(&int(c))
    }

    #[test]
    fn harmonic_half_examples() {
        use HalfOffset::*;
        assert_eq!(harmonic_half(HalfArg::new(0, MinusHalf)).unwrap(), ln2_times(-2));
        assert_eq!(
            harmonic_half(HalfArg::new(1, MinusHalf)).unwrap(),
            &rat(int(2)) + &ln2_times(-2)
        );
        assert_eq!(
            harmonic_half(HalfArg::new(2, PlusHalf)).unwrap(),
            &rat(frac(46, 15)) + &ln2_times(-2)
        );
        assert_eq!(
            harmonic_half(HalfArg::new(0, MinusThreeHalves)).unwrap(),
            &rat(int(2)) + &ln2_times(-2)
        );
        assert!(harmonic_half(HalfArg::new(-1, MinusThreeHalves)).is_err());
    }

    #[test]
    fn harmonic2_half_examples() {
        let pi2 = ConstExpr::monomial(frac(-1, 3), Monomial::new(0, 2).unwrap());
        assert_eq!(harmonic2_half(0).unwrap(), pi2);
        assert_eq!(harmonic2_half(1).unwrap(), &pi2 + &rat(int(4)));
        assert_eq!(harmonic2_half(2).unwrap(), &pi2 + &rat(frac(40, 9)));
        // -2 ζ(2) at -1/2
        assert_eq!(harmonic2_half(0).unwrap(), ConstExpr::zeta2().scale(&int(-2)));
    }

    #[test]
    fn binomial_half_examples() {
        use BinomialShape::*;
        assert_eq!(binomial_half(UpperPlusHalf, 2, 1).unwrap(), rat(frac(5, 2)));
        assert_eq!(binomial_half(UpperMinusHalf, 2, 1).unwrap(), rat(frac(3, 2)));
        assert_eq!(binomial_half(LowerHalf, 1, 0).unwrap(), over_pi(int(4)).unwrap());
        assert_eq!(binomial_half(UpperMinusHalfNext, 1, 0).unwrap(), rat(frac(-1, 8)));
        assert!(binomial_half(UpperPlusHalf, 2, 3).is_err());
        assert!(binomial_half(LowerHalf, -1, 0).is_err());
    }

    #[test]
    fn dispatcher_examples() {
        let (v, rule) = gen_binomial_exact(&frac(5, 2), &int(1)).unwrap();
        assert_eq!((v, rule), (rat(frac(5, 2)), BinomialRule::FallingFactorial));
        assert_eq!(gen_binomial_exact(&int(4), &int(2)).unwrap().0, rat(int(6)));
        let (v, rule) = gen_binomial_exact(&int(3), &frac(-1, 2)).unwrap();
        assert_eq!(v, over_pi(frac(32, 35)).unwrap());
        assert_eq!(rule, BinomialRule::LowerMinusHalf);
        let (v, rule) = gen_binomial_exact(&int(3), &frac(1, 2)).unwrap();
        assert_eq!(v, over_pi(frac(32, 5)).unwrap());
        assert_eq!(rule, BinomialRule::LowerHalf);
        assert!(matches!(
            gen_binomial_exact(&frac(1, 3), &frac(1, 4)),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn half_integer_gamma_rule_matches_named_shapes() {
        for r in 0..=12i64 {
            let half = frac(1, 2);
            let lower = binomial_half(BinomialShape::LowerHalf, r, 0).unwrap();
            // route through the general rule by asking for C(r, r - 1/2) = C(r, 1/2)
            let (v, rule) = gen_binomial_exact(&int(r), &(int(r) - &half)).unwrap();
            if r >= 2 {
                assert_eq!(rule, BinomialRule::HalfIntegerGamma);
            }
            assert_eq!(v, lower, "r={r}");
        }
    }

    #[test]
    fn routes_agree() {
        for r in 0..=20i64 {
            for s in 0..=r {
                let plus = gen_binomial_rational_lower(&(int(r) + frac(1, 2)), s as u64);
                let minus = gen_binomial_rational_lower(&(int(r) - frac(1, 2)), s as u64);
                assert_eq!(binomial_half(BinomialShape::UpperPlusHalf, r, s).unwrap(), rat(plus));
                assert_eq!(
                    binomial_half(BinomialShape::UpperMinusHalf, r, s).unwrap(),
                    rat(minus)
                );
            }
            let next = gen_binomial_rational_lower(&(int(r) - frac(1, 2)), r as u64 + 1);
            assert_eq!(
                binomial_half(BinomialShape::UpperMinusHalfNext, r, 0).unwrap(),
                rat(next)
            );
        }
    }

    #[test]
    fn adjacent_half_arguments() {
        for n in 0..=100i64 {
            let a = harmonic_half(HalfArg::new(n, HalfOffset::PlusHalf)).unwrap();
            let b = harmonic_half(HalfArg::new(n, HalfOffset::MinusHalf)).unwrap();
            assert_eq!(&a - &b, rat(frac(2, 2 * n + 1)));
        }
    }

    #[test]
    fn integer_arguments_are_rational() {
        assert_eq!(harmonic_exact(1, &int(4)).unwrap(), rat(harmonic(4)));
        assert_eq!(harmonic_exact(3, &int(2)).unwrap(), rat(frac(9, 8)));
        assert!(matches!(harmonic_exact(1, &int(-1)), Err(Error::Pole { .. })));
        assert!(harmonic_exact(3, &frac(1, 2)).is_err());
        assert_eq!(
            harmonic_exact(2, &frac(-3, 2)).unwrap(),
            &harmonic2_half(0).unwrap() - &rat(int(4))
        );
    }
}
