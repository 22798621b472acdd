//! `ln Γ`, `ψ`, `ψ^(j)`, harmonic numbers and binomials at rational
//! arguments.
//!
//! All three functions use the same scheme: shift the argument upward with
//! the recurrence until it exceeds a threshold, then sum the asymptotic
//! Bernoulli series. For real arguments above zero these series envelop the
//! function, so the first omitted term bounds the remainder.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_traits::{One, Signed, ToPrimitive, Zero};

use super::elementary::{exp_interval, ln_interval, ln2_raw, ln_raw, pi_raw};
use num_bigint::BigInt;

use super::fixed::{floor_scaled, FixedSum};
use super::{enclose_rational, refine, IntervalValue, Precision};
use crate::error::{Error, Result};
use crate::ratcore::{
    approx_log2, bernoulli, frac, binomial_rational_shape, factorial, gen_harmonic, harmonic, int,
    is_integer, is_nonpositive_integer, Rational,
};

const GUARD: u32 = 24;
/// Largest Bernoulli index used is `2 * MAX_TERMS`.
const MAX_TERMS: u32 = 50;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Series {
    LnGamma,
    /// `ψ^(j)`; `j = 0` is the digamma function.
    Polygamma(u32),
}

fn log2_factorial(n: u32) -> f64 {
    (2..=n).map(|i| (i as f64).log2()).sum()
}

/// Estimated `log2` of the remainder bound after `k - 1` terms at argument
/// `x`. Only used for planning; the bound actually applied is exact.
fn remainder_log2(series: Series, k: u32, x: f64) -> f64 {
    let b = approx_log2(&bernoulli(2 * k as u64)) as f64 + 1.0;
    let lx = x.log2();
    let k2 = 2 * k;
    match series {
        Series::LnGamma => b - ((k2 * (k2 - 1)) as f64).log2() - (k2 - 1) as f64 * lx,
        Series::Polygamma(0) => b - (k2 as f64).log2() - k2 as f64 * lx,
        Series::Polygamma(j) => {
            b + log2_factorial(k2 + j - 1) - log2_factorial(k2) - (k2 + j) as f64 * lx
        }
    }
}

/// Shift threshold and number of asymptotic terms for a working precision.
fn plan(series: Series, bits: u32) -> (i64, u32) {
    static PLANS: OnceLock<Mutex<HashMap<(Series, u32), (i64, u32)>>> = OnceLock::new();
    let cache = PLANS.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().expect("plan cache poisoned").get(&(series, bits)) {
        return *p;
    }
    let target = -(bits as f64) - 8.0;
    let mut threshold = (bits as i64 / 4).max(10);
    let found = loop {
        if let Some(k) =
            (1..=MAX_TERMS).find(|&k| remainder_log2(series, k, threshold as f64) < target)
        {
            break (threshold, k);
        }
        threshold = threshold * 3 / 2 + 1;
    };
    cache
        .lock()
        .expect("plan cache poisoned")
        .insert((series, bits), found);
    found
}

/// Smallest `n >= 0` with `x + n >= threshold`.
fn shift_count(x: &Rational, threshold: i64) -> i64 {
    let gap = int(threshold) - x;
    if gap.is_positive() {
        gap.ceil().to_integer().to_i64().expect("shift fits in i64")
    } else {
        0
    }
}

fn check_pole(x: &Rational) -> Result<()> {
    if is_nonpositive_integer(x) {
        return Err(Error::Pole { arg: x.to_string() });
    }
    Ok(())
}

/// `Σ_{i<count} 1/(x+i)^power`, enclosed at `w` bits.
fn shifted_power_sum(x: &Rational, count: i64, power: u32, w: u32) -> IntervalValue {
    let (xn, xd) = (x.numer(), x.denom());
    let num = num_traits::pow(xd.clone(), power as usize);
    let mut acc = FixedSum::new(w);
    for i in 0..count {
        let base = xn + xd * BigInt::from(i);
        let mut den = num_traits::pow(base, power as usize);
        let mut n = num.clone();
        if den.is_negative() {
            den = -den;
            n = -n;
        }
        acc.add_ratio(&n, &den);
    }
    acc.into_interval()
}

/// `Σ_{k=1}^{terms-1} coeff(k) / X^(e0 + 2k)` on the grid, plus the
/// absolute value of the `k = terms` term as the remainder bound. `X > 0`.
fn asymptotic_sum(
    big: &Rational,
    e0: i32,
    terms: u32,
    coeff: impl Fn(u32) -> Rational,
    w: u32,
) -> IntervalValue {
    let (xn, xd) = (big.numer(), big.denom());
    let (mut pn, mut pd) = if e0 >= 0 {
        (num_traits::pow(xd.clone(), e0 as usize), num_traits::pow(xn.clone(), e0 as usize))
    } else {
        (num_traits::pow(xn.clone(), -e0 as usize), num_traits::pow(xd.clone(), -e0 as usize))
    };
    let xn2 = xn * xn;
    let xd2 = xd * xd;
    let mut acc = FixedSum::new(w);
    for k in 1..=terms {
        pn *= &xd2;
        pd *= &xn2;
        let c = coeff(k);
        let num = c.numer() * &pn;
        let den = c.denom() * &pd;
        if k < terms {
            acc.add_ratio(&num, &den);
        } else {
            acc.widen(&(floor_scaled(&num.abs(), &den, w) + 1));
        }
    }
    acc.into_interval()
}

/// `ψ(x)` at working precision `bits`.
pub fn digamma_raw(x: &Rational, bits: u32) -> Result<IntervalValue> {
    check_pole(x)?;
    let w = bits + GUARD;
    let (threshold, terms) = plan(Series::Polygamma(0), bits);
    let n = shift_count(x, threshold);
    let big = x + int(n);

    // ψ(X) = ln X - 1/(2X) - Σ B_2k / (2k X^2k) + R
    let mut acc = ln_raw(&big, w)?;
    acc = (&acc - &enclose_rational(&(big.recip() / int(2)), w)).round_out(w);
    let series = asymptotic_sum(&big, 0, terms, |k| bernoulli(2 * k as u64) / int(2 * k as i64), w);
    acc = &acc - &series;

    // ψ(x) = ψ(x+n) - Σ_{i<n} 1/(x+i)
    let shift = shifted_power_sum(x, n, 1, w);
    Ok((&acc - &shift).round_out(w))
}

/// `ψ^(j)(x)`, `j >= 1`, at working precision `bits`.
pub fn polygamma_raw(j: u32, x: &Rational, bits: u32) -> Result<IntervalValue> {
    if j == 0 {
        return digamma_raw(x, bits);
    }
    check_pole(x)?;
    let w = bits + GUARD;
    let (threshold, terms) = plan(Series::Polygamma(j), bits);
    let n = shift_count(x, threshold);
    let big = x + int(n);
    let inv = big.recip();

    // (-1)^(j+1) [ (j-1)!/X^j + j!/(2X^(j+1)) + Σ B_2k (2k+j-1)!/((2k)! X^(2k+j)) ] + R
    let fact = |m: u32| Rational::from_integer(factorial(m as u64));
    let inv_j = crate::ratcore::powi(&inv, j as i32);
    let mut acc = enclose_rational(&(fact(j - 1) * &inv_j), w);
    acc = (&acc + &enclose_rational(&(fact(j) * &inv_j * &inv / int(2)), w)).round_out(w);
    let series = asymptotic_sum(
        &big,
        j as i32,
        terms,
        |k| bernoulli(2 * k as u64) * fact(2 * k + j - 1) / fact(2 * k),
        w,
    );
    acc = &acc + &series;
    if j % 2 == 0 {
        acc = -&acc;
    }

    // ψ^(j)(x) = ψ^(j)(x+n) - (-1)^j j! Σ_{i<n} 1/(x+i)^(j+1)
    let mut shift = shifted_power_sum(x, n, j + 1, w).scale(&fact(j));
    if j % 2 == 1 {
        shift = -&shift;
    }
    Ok((&acc - &shift).round_out(w))
}

/// `ln(2π)/2`, cached per precision.
fn half_ln_2pi(w: u32) -> Result<IntervalValue> {
    static CACHE: OnceLock<Mutex<HashMap<u32, IntervalValue>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = cache.lock().expect("cache poisoned").get(&w) {
        return Ok(v.clone());
    }
    let v = (&ln2_raw(w) + &ln_interval(&pi_raw(w), w)?).scale(&frac(1, 2));
    cache.lock().expect("cache poisoned").insert(w, v.clone());
    Ok(v)
}

/// `ln Γ(x)` for `x > 0` at working precision `bits`.
pub fn lgamma_raw(x: &Rational, bits: u32) -> Result<IntervalValue> {
    if !x.is_positive() {
        return Err(Error::InvalidArgument(format!(
            "ln Gamma needs a positive argument, got {x}"
        )));
    }
    let w = bits + GUARD + 8;
    let (threshold, terms) = plan(Series::LnGamma, w);
    let n = shift_count(x, threshold);
    let big = x + int(n);

    // (X - 1/2) ln X - X + ln(2π)/2 + Σ B_2k / (2k(2k-1) X^(2k-1)) + R
    let ln_big = ln_raw(&big, w)?;
    let half = Rational::new(1.into(), 2.into());
    let mut acc = ln_big.scale(&(&big - &half));
    acc = (&acc - &IntervalValue::point(big.clone())).round_out(w);
    acc = (&acc + &half_ln_2pi(w)?).round_out(w);
    let series = asymptotic_sum(
        &big,
        -1,
        terms,
        |k| {
            let k2 = 2 * k as i64;
            bernoulli(k2 as u64) / int(k2 * (k2 - 1))
        },
        w,
    );
    acc = &acc + &series;

    if n > 0 {
        let mut prod = Rational::one();
        let mut xi = x.clone();
        for _ in 0..n {
            prod *= &xi;
            xi += Rational::one();
        }
        acc = &acc - &ln_raw(&prod, w)?;
    }
    Ok(acc.round_out(w))
}

static POLYGAMMA_AT_ONE: OnceLock<Mutex<HashMap<(u32, u32), IntervalValue>>> = OnceLock::new();

fn polygamma_at_one(j: u32, bits: u32) -> Result<IntervalValue> {
    let cache = POLYGAMMA_AT_ONE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = cache.lock().expect("cache poisoned").get(&(j, bits)) {
        return Ok(v.clone());
    }
    let v = polygamma_raw(j, &Rational::one(), bits)?;
    cache
        .lock()
        .expect("cache poisoned")
        .insert((j, bits), v.clone());
    Ok(v)
}

/// `H_x^(r)` at working precision `bits`. Integer arguments are exact;
/// otherwise `H_x = ψ(x+1) - ψ(1)` and
/// `H_x^(r) = (-1)^(r-1)/(r-1)! (ψ^(r-1)(x+1) - ψ^(r-1)(1))`.
pub fn harmonic_raw(order: u32, x: &Rational, bits: u32) -> Result<IntervalValue> {
    if order == 0 {
        return Err(Error::InvalidArgument("harmonic order must be positive".into()));
    }
    let x1 = x + Rational::one();
    check_pole(&x1)?;
    if is_integer(x) && !x.is_negative() {
        let n = x.to_integer().to_u64().ok_or_else(|| {
            Error::Unsupported(format!("harmonic index {x} too large"))
        })?;
        let v = if order == 1 {
            harmonic(n)
        } else {
            gen_harmonic(n, order)
        };
        return Ok(IntervalValue::point(v));
    }
    let j = order - 1;
    let diff = &polygamma_raw(j, &x1, bits)? - &polygamma_at_one(j, bits)?;
    let scale = Rational::new(
        if j % 2 == 0 { 1.into() } else { (-1).into() },
        factorial(j as u64),
    );
    Ok(diff.scale(&scale))
}

/// `Γ(z) = Γ(z + m) / factor` with `z + m > 0`.
fn shift_positive(z: &Rational) -> (Rational, Rational) {
    let mut factor = Rational::one();
    let mut zz = z.clone();
    while !zz.is_positive() {
        factor *= &zz;
        zz += Rational::one();
    }
    (factor, zz)
}

/// `C(r, s) = Γ(r+1) / (Γ(s+1) Γ(r-s+1))` at working precision `bits`.
/// Shapes with an exact rational value are returned as points.
pub fn gen_binomial_raw(r: &Rational, s: &Rational, bits: u32) -> Result<IntervalValue> {
    if let Some((v, _)) = binomial_rational_shape(r, s)? {
        return Ok(IntervalValue::point(v));
    }
    let one = Rational::one();
    let (f1, z1) = shift_positive(&(r + &one));
    let (f2, z2) = shift_positive(&(s + &one));
    let (f3, z3) = shift_positive(&(r - s + &one));
    let w = bits + GUARD;
    let l = &(&lgamma_raw(&z1, w)? - &lgamma_raw(&z2, w)?) - &lgamma_raw(&z3, w)?;
    let e = exp_interval(&l.round_out(w + 16), w);
    if f1.is_zero() {
        return Err(Error::Pole { arg: r.to_string() });
    }
    Ok(e.scale(&(f2 * f3 / f1)).round_out(w))
}

pub fn lgamma_enclosure(x: &Rational, p: &Precision) -> Result<IntervalValue> {
    refine(p.eps(), |bits| lgamma_raw(x, bits))
}

pub fn digamma_enclosure(x: &Rational, p: &Precision) -> Result<IntervalValue> {
    check_pole(x)?;
    refine(p.eps(), |bits| digamma_raw(x, bits))
}

pub fn polygamma_enclosure(j: u32, x: &Rational, p: &Precision) -> Result<IntervalValue> {
    if j == 0 {
        return Err(Error::InvalidArgument("polygamma order must be positive".into()));
    }
    check_pole(x)?;
    refine(p.eps(), |bits| polygamma_raw(j, x, bits))
}

pub fn harmonic_enclosure(x: &Rational, p: &Precision) -> Result<IntervalValue> {
    check_pole(&(x + Rational::one()))?;
    refine(p.eps(), |bits| harmonic_raw(1, x, bits))
}

pub fn harmonic2_enclosure(x: &Rational, p: &Precision) -> Result<IntervalValue> {
    check_pole(&(x + Rational::one()))?;
    refine(p.eps(), |bits| harmonic_raw(2, x, bits))
}

pub fn gen_binomial_enclosure(r: &Rational, s: &Rational, p: &Precision) -> Result<IntervalValue> {
    refine(p.eps(), |bits| gen_binomial_raw(r, s, bits))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::psinterval::{ln2_enclosure, pi_enclosure};
    use crate::ratcore::{frac, pow2};

    fn dec(s: &str) -> Rational {
        let neg = s.starts_with('-');
        let s = s.trim_start_matches('-');
        let (a, b) = s.split_once('.').unwrap();
        let n: num_bigint::BigInt = format!("{a}{b}").parse().unwrap();
        let q = Rational::new(n, num_traits::pow(num_bigint::BigInt::from(10), b.len()));
        if neg {
            -q
        } else {
            q
        }
    }

    /// True when the enclosure meets the decimal reference truncated to its
    /// printed digits, i.e. `[ref - ulp, ref + ulp]`.
    fn near(iv: &IntervalValue, reference: &str) -> bool {
        let digits = reference.split_once('.').unwrap().1.len();
        let ulp = Rational::new(1.into(), num_traits::pow(num_bigint::BigInt::from(10), digits));
        let r = dec(reference);
        let window = IntervalValue::ball(r, ulp);
        iv.overlaps(&window)
    }

    #[test]
    fn lgamma_values() {
        let p = Precision::bits(64);
        assert!(lgamma_enclosure(&int(1), &p).unwrap().contains(&int(0)));
        assert!(near(
            &lgamma_enclosure(&frac(1, 2), &p).unwrap(),
            "0.5723649429247000870717136756"
        ));
        assert!(near(
            &lgamma_enclosure(&int(6), &p).unwrap(),
            "4.7874917427820459942477009345"
        ));
    }

    #[test]
    fn digamma_values() {
        let p = Precision::bits(64);
        let half = digamma_enclosure(&frac(1, 2), &p).unwrap();
        let one = digamma_enclosure(&int(1), &p).unwrap();
        let ln2 = ln2_enclosure(&p).unwrap();
        let expected = &one - &ln2.scale(&int(2));
        assert!(half.overlaps(&expected));
        let diff = &digamma_enclosure(&int(2), &p).unwrap() - &one;
        assert!(diff.contains(&int(1)));
        assert!(near(
            &digamma_enclosure(&frac(7, 3), &p).unwrap(),
            "0.6179662199791936770035809257"
        ));
        let neg = digamma_enclosure(&frac(-5, 2), &p).unwrap();
        assert!(near(&neg, "1.1031566406452431872256903336"));
        assert!(matches!(
            digamma_enclosure(&int(-3), &p),
            Err(Error::Pole { .. })
        ));
        assert!(matches!(
            digamma_enclosure(&int(0), &p),
            Err(Error::Pole { .. })
        ));
    }

    #[test]
    fn polygamma_values() {
        let p = Precision::bits(64);
        let t1 = polygamma_enclosure(1, &int(1), &p).unwrap();
        let pi = pi_enclosure(&p).unwrap();
        let zeta2 = (&pi * &pi).scale(&frac(1, 6));
        assert!(t1.overlaps(&zeta2));
        assert!(near(&t1, "1.6449340668"));
        let t2 = polygamma_enclosure(1, &int(2), &p).unwrap();
        assert!(t2.overlaps(&(&zeta2 - &IntervalValue::point(int(1)))));
        assert!(near(
            &polygamma_enclosure(2, &int(1), &p).unwrap(),
            "-2.4041138063"
        ));
        assert!(near(
            &polygamma_enclosure(3, &frac(1, 3), &p).unwrap(),
            "488.1838165438142417557707623"
        ));
    }

    #[test]
    fn harmonic_values() {
        let p = Precision::bits(64);
        assert!(harmonic_enclosure(&int(4), &p).unwrap().contains(&frac(25, 12)));
        assert_eq!(
            harmonic_enclosure(&int(0), &p).unwrap(),
            IntervalValue::point(int(0))
        );
        let h = harmonic_enclosure(&frac(-1, 2), &p).unwrap();
        let ln2 = ln2_enclosure(&Precision::bits(80)).unwrap().scale(&int(-2));
        assert!(h.overlaps(&ln2));
        assert!(h.width() <= pow2(-64));
        assert!(matches!(
            harmonic_enclosure(&int(-1), &p),
            Err(Error::Pole { .. })
        ));
    }

    #[test]
    fn binomial_values() {
        let p = Precision::bits(64);
        assert!(gen_binomial_enclosure(&frac(5, 2), &int(1), &p)
            .unwrap()
            .contains(&frac(5, 2)));
        assert!(gen_binomial_enclosure(&int(4), &int(2), &p)
            .unwrap()
            .contains(&int(6)));
        let c = gen_binomial_enclosure(&int(3), &frac(1, 2), &p).unwrap();
        assert!(near(&c, "2.0371832715762602978"), "{c}");
        // C(-3/2, 1/3) shifts two of the three Gamma arguments upward
        let c = gen_binomial_enclosure(&frac(-3, 2), &frac(1, 3), &p).unwrap();
        assert!(near(&c, "0.5943117731772165458396909160"), "{c}");
    }

    #[test]
    fn monotone_precision() {
        let x = frac(7, 3);
        let coarse = digamma_enclosure(&x, &Precision::bits(20)).unwrap();
        let fine = digamma_enclosure(&x, &Precision::bits(90)).unwrap();
        assert!(coarse.contains_interval(&fine));
    }
}
