//! Enclosures of `ln 2`, `π`, `ln x` and `exp x`.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_traits::{One, Signed, Zero};

use num_bigint::BigInt;

use super::fixed::{exp_series, odd_series};
use super::{refine, IntervalValue, Precision};
use crate::error::{Error, Result};
use crate::ratcore::{approx_log2, frac, int, pow2, Rational};

const GUARD: u32 = 16;

type ConstCache = Mutex<HashMap<u32, IntervalValue>>;

static LN2: OnceLock<ConstCache> = OnceLock::new();
static PI: OnceLock<ConstCache> = OnceLock::new();

fn cached(cell: &'static OnceLock<ConstCache>, bits: u32, f: fn(u32) -> IntervalValue) -> IntervalValue {
    let cache = cell.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = cache.lock().expect("constant cache poisoned").get(&bits) {
        return v.clone();
    }
    let v = f(bits);
    cache
        .lock()
        .expect("constant cache poisoned")
        .insert(bits, v.clone());
    v
}

fn ln2_uncached(bits: u32) -> IntervalValue {
    let w = bits + GUARD;
    odd_series(&BigInt::from(1), &BigInt::from(3), false, w).scale(&int(2))
}

fn pi_uncached(bits: u32) -> IntervalValue {
    let w = bits + GUARD;
    let a = odd_series(&BigInt::from(1), &BigInt::from(5), true, w).scale(&int(16));
    let b = odd_series(&BigInt::from(1), &BigInt::from(239), true, w).scale(&int(4));
    &a - &b
}

/// `ln 2` at working precision `bits`.
pub fn ln2_raw(bits: u32) -> IntervalValue {
    cached(&LN2, bits, ln2_uncached)
}

/// `π` at working precision `bits`.
pub fn pi_raw(bits: u32) -> IntervalValue {
    cached(&PI, bits, pi_uncached)
}

pub fn ln2_enclosure(p: &Precision) -> Result<IntervalValue> {
    refine(p.eps(), |bits| Ok(ln2_raw(bits)))
}

pub fn pi_enclosure(p: &Precision) -> Result<IntervalValue> {
    refine(p.eps(), |bits| Ok(pi_raw(bits)))
}

/// `ln q` for a positive rational. Writes `q = 2^e y` with
/// `y ∈ [2/3, 4/3]` and uses `ln y = 2 atanh((y-1)/(y+1))`.
pub fn ln_raw(q: &Rational, bits: u32) -> Result<IntervalValue> {
    if !q.is_positive() {
        return Err(Error::InvalidArgument(format!("ln of non-positive {q}")));
    }
    if q.is_one() {
        return Ok(IntervalValue::zero());
    }
    let w = bits + GUARD;
    let mut e = approx_log2(q);
    let mut y = q * pow2(-e);
    let upper = frac(4, 3);
    let lower = frac(2, 3);
    while y > upper {
        y /= int(2);
        e += 1;
    }
    while y < lower {
        y *= int(2);
        e -= 1;
    }
    let (yn, yd) = (y.numer(), y.denom());
    let series = odd_series(&(yn - yd), &(yn + yd), false, w).scale(&int(2));
    let scaled_ln2 = ln2_raw(bits + 8).scale(&int(e));
    Ok((&series + &scaled_ln2).round_out(w))
}

/// `ln` of a positive interval, by monotonicity.
pub fn ln_interval(x: &IntervalValue, bits: u32) -> Result<IntervalValue> {
    if !x.lo().is_positive() {
        return Err(Error::Precision(
            "ln argument enclosure reaches zero".to_string(),
        ));
    }
    let lo = ln_raw(x.lo(), bits)?;
    if x.is_point() {
        return Ok(lo);
    }
    let hi = ln_raw(x.hi(), bits)?;
    IntervalValue::new(lo.lo().clone(), hi.hi().clone())
}

/// `exp q` via `exp(q / 2^k)^(2^k)` with a Taylor core on `|r| <= 1/2`.
pub fn exp_raw(q: &Rational, bits: u32) -> IntervalValue {
    if q.is_zero() {
        return IntervalValue::point(Rational::one());
    }
    let k = (approx_log2(q) + 2).max(0) as u32;
    let w = bits + k + GUARD + 4;
    let (a, b) = (q.numer(), q.denom() << k);
    let mut acc = exp_series(a, &b, w);
    for _ in 0..k {
        acc = (&acc * &acc).round_out(w);
    }
    acc.round_out(bits + GUARD)
}

/// `exp` of an interval, by monotonicity.
pub fn exp_interval(x: &IntervalValue, bits: u32) -> IntervalValue {
    let lo = exp_raw(x.lo(), bits);
    if x.is_point() {
        return lo;
    }
    let hi = exp_raw(x.hi(), bits);
    IntervalValue::new(lo.lo().clone(), hi.hi().clone())
        .expect("exp is increasing")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::psinterval::decimal;

    fn dec(s: &str) -> Rational {
        let (int_part, frac_part) = s.split_once('.').unwrap();
        let digits = frac_part.len();
        let n: num_bigint::BigInt = format!("{int_part}{frac_part}").parse().unwrap();
        Rational::new(n, num_traits::pow(num_bigint::BigInt::from(10), digits))
    }

    // 40-digit references; the enclosures must contain the truncation
    // interval [ref, ref + 1e-40].
    const LN2: &str = "0.6931471805599453094172321214581765680755";
    const PI: &str = "3.1415926535897932384626433832795028841971";

    fn contains_ref(iv: &IntervalValue, s: &str) -> bool {
        let lo = dec(s);
        let hi = &lo + Rational::new(1.into(), num_traits::pow(10.into(), 40));
        iv.lo() <= &hi && &lo <= iv.hi()
    }

    #[test]
    fn ln2_and_pi_contain_references() {
        let p = Precision::bits(120);
        let l = ln2_enclosure(&p).unwrap();
        assert!(contains_ref(&l, LN2), "{l}");
        assert!(l.width() <= pow2(-120));
        let pi = pi_enclosure(&p).unwrap();
        assert!(contains_ref(&pi, PI), "{pi}");
    }

    #[test]
    fn coarse_enclosure_contains_fine_one() {
        let fine = ln2_enclosure(&Precision::new(dec("0.000000000001")).unwrap()).unwrap();
        let coarse = ln2_enclosure(&Precision::new(int(1)).unwrap()).unwrap();
        assert!(coarse.width() <= int(1));
        assert!(coarse.contains_interval(&fine));
    }

    #[test]
    fn ln_matches_known_values() {
        let l = ln_raw(&int(120), 100).unwrap();
        assert_eq!(decimal(&l.midpoint(), 25), "4.7874917427820459942477009");
        assert!(ln_raw(&int(0), 64).is_err());
        let small = ln_raw(&frac(1, 1000), 80).unwrap();
        assert_eq!(decimal(&small.midpoint(), 12), "-6.907755278982");
    }

    #[test]
    fn exp_inverts_ln() {
        for q in [frac(7, 3), frac(-5, 2), int(40), frac(1, 1000)] {
            let e = exp_raw(&q, 100);
            let back = ln_interval(&e, 100).unwrap();
            assert!(back.contains(&q), "{q}: {back}");
            assert!(back.width() < pow2(-80));
        }
    }
}
