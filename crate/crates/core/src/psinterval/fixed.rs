//! Integers at scale `2^-w` with a running error count in ulps. The series
//! kernels accumulate here instead of in normalized rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::IntervalValue;
use crate::ratcore::Rational;

/// `m / 2^w` in lowest terms without a gcd.
pub(crate) fn dyadic(m: BigInt, w: u32) -> Rational {
    if m.is_zero() {
        return Rational::zero();
    }
    let tz = m.trailing_zeros().unwrap_or(0).min(w as u64);
    Rational::new_raw(m >> tz, BigInt::one() << (w as u64 - tz))
}

/// `floor(num * 2^w / den)` for `den > 0`.
pub(crate) fn floor_scaled(num: &BigInt, den: &BigInt, w: u32) -> BigInt {
    (num << w).div_floor(den)
}

/// A sum at scale `2^-w`; every truncated term adds its ulp bound.
pub(crate) struct FixedSum {
    w: u32,
    sum: BigInt,
    ulps: BigInt,
}

impl FixedSum {
    pub(crate) fn new(w: u32) -> Self {
        FixedSum {
            w,
            sum: BigInt::zero(),
            ulps: BigInt::zero(),
        }
    }

    /// Adds an already scaled value carrying `err` ulps of error.
    pub(crate) fn add_scaled(&mut self, v: &BigInt, err: u64) {
        self.sum += v;
        self.ulps += err;
    }

    /// Adds `num / den` (`den > 0`), truncated to the grid.
    pub(crate) fn add_ratio(&mut self, num: &BigInt, den: &BigInt) {
        self.sum += floor_scaled(num, den, self.w);
        self.ulps += 1;
    }

    /// Widens by `bound` ulps (a remainder, tail, or propagated error).
    pub(crate) fn widen(&mut self, bound: &BigInt) {
        self.ulps += bound.abs();
    }

    pub(crate) fn into_interval(self) -> IntervalValue {
        let lo = dyadic(&self.sum - &self.ulps, self.w);
        let hi = dyadic(&self.sum + &self.ulps, self.w);
        IntervalValue::new(lo, hi).expect("non-negative error")
    }
}

/// `Σ_{j>=0} s^j t^(2j+1) / (2j+1)` with `t = a/b`, `|t| <= 1/3`, `s = ±1`,
/// i.e. `atanh t` or `atan t`.
pub(crate) fn odd_series(a: &BigInt, b: &BigInt, alternating: bool, w: u32) -> IntervalValue {
    let (a, b) = if b.is_negative() { (-a, -b) } else { (a.clone(), b.clone()) };
    let a2 = &a * &a;
    let b2 = &b * &b;
    let mut acc = FixedSum::new(w);
    // p = t^(2j+1) on the grid; its error stays below j + 1 ulps because
    // each step multiplies the old error by t^2 < 1 and truncates once.
    let mut p = floor_scaled(&a, &b, w);
    let mut p_err: u64 = 1;
    let mut j: u64 = 0;
    loop {
        let d = BigInt::from(2 * j + 1);
        let mut term = p.div_floor(&d);
        if alternating && j % 2 == 1 {
            term = -term;
        }
        acc.add_scaled(&term, 2);
        p = (&p * &a2).div_floor(&b2);
        p_err += 1;
        j += 1;
        if p.abs() <= BigInt::one() {
            break;
        }
    }
    // Tail: |Σ_{i>=j} ...| <= |t^(2j+1)| / (1 - t^2) <= 9/8 |t^(2j+1)|.
    acc.widen(&(BigInt::from(2) * (p.abs() + p_err)));
    acc.into_interval()
}

/// `Σ_{j>=0} r^j / j!` for `r = a/b`, `|r| <= 1/2`.
pub(crate) fn exp_series(a: &BigInt, b: &BigInt, w: u32) -> IntervalValue {
    let (a, b) = if b.is_negative() { (-a, -b) } else { (a.clone(), b.clone()) };
    let mut acc = FixedSum::new(w);
    let mut p = BigInt::one() << w;
    acc.add_scaled(&p, 0);
    let mut j: u64 = 1;
    loop {
        // error of p stays below 2 ulps: old error times |r|/j <= 1/2, plus one
        p = (&p * &a).div_floor(&(&b * BigInt::from(j)));
        acc.add_scaled(&p, 2);
        j += 1;
        if p.abs() <= BigInt::one() {
            break;
        }
    }
    // Σ_{i>j} |r|^i/i! <= |r^j/j!|
    acc.widen(&(p.abs() + 2));
    acc.into_interval()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratcore::{frac, Rational};

    #[test]
    fn dyadic_is_normalized() {
        assert_eq!(dyadic(BigInt::from(12), 4), frac(3, 4));
        assert_eq!(dyadic(BigInt::from(-5), 1), frac(-5, 2));
        assert_eq!(dyadic(BigInt::from(8), 2), frac(2, 1));
        assert_eq!(dyadic(BigInt::zero(), 9), frac(0, 1));
    }

    #[test]
    fn series_contain_their_sums() {
        // atanh(1/3) = ln 2 / 2
        let ulp = frac(1, 1_000_000_000_000_000_000);
        let window = |lo: Rational| IntervalValue::new(lo.clone(), lo + &ulp).unwrap();
        let v = odd_series(&BigInt::from(1), &BigInt::from(3), false, 80);
        assert!(v.overlaps(&window(frac(346573590279972654, 1_000_000_000_000_000_000))));
        assert!(v.width() < frac(1, 1 << 60));
        // atan(1/5) = 0.19739555984988075837...
        let v = odd_series(&BigInt::from(1), &BigInt::from(5), true, 80);
        assert!(v.overlaps(&window(frac(197395559849880758, 1_000_000_000_000_000_000))));
        // exp(-1/2) = 0.60653065971263342360...
        let e = exp_series(&BigInt::from(-1), &BigInt::from(2), 80);
        assert!(e.overlaps(&window(frac(606530659712633423, 1_000_000_000_000_000_000))));
    }
}
