//! Exact rationals and the integer-indexed sequences the identities are
//! built from: factorials, binomials, Bernoulli numbers and the harmonic
//! families `H_n`, `H_n^(r)`, `O_n`, `O_n^(2)`.
//!
//! Every sequence is memoized up to the largest index requested so far. The
//! caches sit behind `RwLock`s and may be shared by concurrent workers.

use std::collections::HashMap;
use std::fmt;
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Arbitrary precision rational, always in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// `num/den`, reduced. Panics if `den == 0`.
pub fn frac(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn is_integer(q: &Rational) -> bool {
    q.denom().is_one()
}

/// The value as an `i64` when it is an integer that fits.
pub fn as_i64(q: &Rational) -> Option<i64> {
    if is_integer(q) {
        q.numer().to_i64()
    } else {
        None
    }
}

/// True for `q ∈ {-1, -2, ...}`.
pub fn is_negative_integer(q: &Rational) -> bool {
    is_integer(q) && q.is_negative()
}

/// True for `q ∈ {0, -1, -2, ...}` (the poles of `Γ`).
pub fn is_nonpositive_integer(q: &Rational) -> bool {
    is_integer(q) && !q.is_positive()
}

/// Exact `2^e` for any integer `e`.
pub fn pow2(e: i64) -> Rational {
    let p = BigInt::one() << e.unsigned_abs();
    if e >= 0 {
        Rational::from_integer(p)
    } else {
        Rational::new(BigInt::one(), p)
    }
}

/// Exact integer power; negative exponents require a nonzero base.
pub fn powi(q: &Rational, e: i32) -> Rational {
    if e >= 0 {
        num_traits::pow(q.clone(), e as usize)
    } else {
        num_traits::pow(q.recip(), e.unsigned_abs() as usize)
    }
}

/// Which harmonic family a value belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum HarmonicKind {
    /// `H_n`
    H,
    /// `H_n^(r)`, `r >= 1`
    Gen(u32),
    /// `O_n`
    Odd,
    /// `O_n^(2)`
    Odd2,
}

impl HarmonicKind {
    pub fn order(self) -> u32 {
        match self {
            HarmonicKind::H | HarmonicKind::Odd => 1,
            HarmonicKind::Odd2 => 2,
            HarmonicKind::Gen(r) => r,
        }
    }

    /// Value at a non-negative integer index.
    pub fn value(self, n: u64) -> Rational {
        match self {
            HarmonicKind::H => harmonic(n),
            HarmonicKind::Gen(r) => gen_harmonic(n, r),
            HarmonicKind::Odd => odd_harmonic(n),
            HarmonicKind::Odd2 => odd_gen_harmonic2(n),
        }
    }
}

impl fmt::Display for HarmonicKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HarmonicKind::H => write!(f, "H"),
            HarmonicKind::Gen(r) => write!(f, "H^({r})"),
            HarmonicKind::Odd => write!(f, "O"),
            HarmonicKind::Odd2 => write!(f, "O^(2)"),
        }
    }
}

/// Prefix sums `Σ_{j=1}^{n} term(j)`, grown on demand.
struct PrefixCache {
    values: RwLock<Vec<Rational>>,
    term: fn(u64) -> Rational,
}

impl PrefixCache {
    fn new(term: fn(u64) -> Rational) -> Self {
        PrefixCache {
            values: RwLock::new(vec![Rational::zero()]),
            term,
        }
    }

    fn get(&self, n: u64) -> Rational {
        let idx = n as usize;
        {
            let values = self.values.read().expect("sequence cache poisoned");
            if let Some(v) = values.get(idx) {
                return v.clone();
            }
        }
        let mut values = self.values.write().expect("sequence cache poisoned");
        while values.len() <= idx {
            let j = values.len() as u64;
            let next = values[values.len() - 1].clone() + (self.term)(j);
            values.push(next);
        }
        values[idx].clone()
    }
}

fn recip_u64(j: u64) -> Rational {
    Rational::new(BigInt::one(), BigInt::from(j))
}

fn recip_odd(j: u64) -> Rational {
    Rational::new(BigInt::one(), BigInt::from(2 * j - 1))
}

fn recip_odd_sq(j: u64) -> Rational {
    let d = BigInt::from(2 * j - 1);
    Rational::new(BigInt::one(), &d * &d)
}

static HARMONIC: OnceLock<PrefixCache> = OnceLock::new();
static ODD: OnceLock<PrefixCache> = OnceLock::new();
static ODD2: OnceLock<PrefixCache> = OnceLock::new();
static GEN: OnceLock<RwLock<HashMap<u32, Vec<Rational>>>> = OnceLock::new();

/// `H_n = Σ_{k=1}^{n} 1/k`.
pub fn harmonic(n: u64) -> Rational {
    HARMONIC.get_or_init(|| PrefixCache::new(recip_u64)).get(n)
}

/// `H_n^(r) = Σ_{j=1}^{n} 1/j^r`.
pub fn gen_harmonic(n: u64, r: u32) -> Rational {
    assert!(r >= 1, "harmonic order must be positive");
    if r == 1 {
        return harmonic(n);
    }
    let cache = GEN.get_or_init(|| RwLock::new(HashMap::new()));
    let idx = n as usize;
    if let Some(v) = cache
        .read()
        .expect("sequence cache poisoned")
        .get(&r)
        .and_then(|vals| vals.get(idx))
    {
        return v.clone();
    }
    let mut guard = cache.write().expect("sequence cache poisoned");
    let values = guard.entry(r).or_insert_with(|| vec![Rational::zero()]);
    while values.len() <= idx {
        let j = BigInt::from(values.len() as u64);
        let term = Rational::new(BigInt::one(), num_traits::pow(j, r as usize));
        let next = values[values.len() - 1].clone() + term;
        values.push(next);
    }
    values[idx].clone()
}

/// `O_n = Σ_{k=1}^{n} 1/(2k-1)`.
pub fn odd_harmonic(n: u64) -> Rational {
    ODD.get_or_init(|| PrefixCache::new(recip_odd)).get(n)
}

/// `O_n^(2) = Σ_{k=1}^{n} 1/(2k-1)^2`.
pub fn odd_gen_harmonic2(n: u64) -> Rational {
    ODD2.get_or_init(|| PrefixCache::new(recip_odd_sq)).get(n)
}

static FACTORIALS: OnceLock<RwLock<Vec<BigInt>>> = OnceLock::new();

pub fn factorial(n: u64) -> BigInt {
    let cache = FACTORIALS.get_or_init(|| RwLock::new(vec![BigInt::one()]));
    let idx = n as usize;
    if let Some(v) = cache.read().expect("factorial cache poisoned").get(idx) {
        return v.clone();
    }
    let mut values = cache.write().expect("factorial cache poisoned");
    while values.len() <= idx {
        let next = &values[values.len() - 1] * BigInt::from(values.len());
        values.push(next);
    }
    values[idx].clone()
}

/// Integer binomial coefficient with the falling-factorial extension to a
/// negative upper index. Zero whenever `k < 0`, or `n >= 0` and `k > n`.
pub fn binomial_int(n: i64, k: i64) -> Rational {
    Rational::from_integer(binomial_bigint(n, k))
}

pub fn binomial_bigint(n: i64, k: i64) -> BigInt {
    if k < 0 || (n >= 0 && k > n) {
        return BigInt::zero();
    }
    if n >= 0 {
        let k = k.min(n - k);
        let mut acc = BigInt::one();
        for i in 0..k {
            acc *= BigInt::from(n - i);
            acc /= BigInt::from(i + 1);
        }
        return acc;
    }
    // C(n, k) = (-1)^k C(k - n - 1, k) for n < 0
    let magnitude = binomial_bigint(k - n - 1, k);
    if k.is_odd() {
        -magnitude
    } else {
        magnitude
    }
}

/// `r (r-1) ... (r-s+1) / s!`, the binomial with integer lower index.
pub fn gen_binomial_rational_lower(r: &Rational, s: u64) -> Rational {
    let mut num = Rational::one();
    let mut factor = r.clone();
    for _ in 0..s {
        num *= &factor;
        factor -= Rational::one();
    }
    num / Rational::from_integer(factorial(s))
}

/// Which exact rule produced a binomial value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BinomialRule {
    Integer,
    FallingFactorial,
    /// `C(r, s) = C(r, r - s)` with `r - s` a non-negative integer.
    Reflected,
    /// A `1/Γ` factor sits at a pole.
    ZeroByReciprocalGamma,
    /// `C(r, 1/2)` for integer `r >= 0`.
    LowerHalf,
    /// `C(r, -1/2)` for integer `r >= 0`.
    LowerMinusHalf,
    /// Every Γ argument is a half-integer, so the value is `q` or `q/π`.
    HalfIntegerGamma,
}

impl fmt::Display for BinomialRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            BinomialRule::Integer => "integer",
            BinomialRule::FallingFactorial => "falling-factorial",
            BinomialRule::Reflected => "reflected",
            BinomialRule::ZeroByReciprocalGamma => "zero-by-reciprocal-gamma",
            BinomialRule::LowerHalf => "lower-half",
            BinomialRule::LowerMinusHalf => "lower-minus-half",
            BinomialRule::HalfIntegerGamma => "half-integer-gamma",
        };
        f.write_str(s)
    }
}

/// `C(r, s)` under the Γ-ratio definition whenever the value is rational
/// for structural reasons. `Ok(None)` means no rational shape applies.
pub fn binomial_rational_shape(
    r: &Rational,
    s: &Rational,
) -> crate::error::Result<Option<(Rational, BinomialRule)>> {
    let diff = r - s;
    if let (Some(ri), Some(si)) = (as_i64(r), as_i64(s)) {
        return Ok(Some((binomial_int(ri, si), BinomialRule::Integer)));
    }
    if let Some(si) = as_i64(s) {
        return Ok(Some(if si >= 0 {
            (gen_binomial_rational_lower(r, si as u64), BinomialRule::FallingFactorial)
        } else {
            (Rational::zero(), BinomialRule::ZeroByReciprocalGamma)
        }));
    }
    if is_negative_integer(r) {
        return Err(crate::error::Error::Pole {
            arg: format!("C({r}, {s})"),
        });
    }
    if let Some(d) = as_i64(&diff) {
        return Ok(Some(if d >= 0 {
            (gen_binomial_rational_lower(r, d as u64), BinomialRule::Reflected)
        } else {
            (Rational::zero(), BinomialRule::ZeroByReciprocalGamma)
        }));
    }
    Ok(None)
}

static BERNOULLI: OnceLock<RwLock<Vec<Rational>>> = OnceLock::new();

/// Bernoulli number `B_n` with `B_1 = -1/2`.
pub fn bernoulli(n: u64) -> Rational {
    let cache = BERNOULLI.get_or_init(|| RwLock::new(vec![Rational::one()]));
    let idx = n as usize;
    if let Some(v) = cache.read().expect("bernoulli cache poisoned").get(idx) {
        return v.clone();
    }
    let mut values = cache.write().expect("bernoulli cache poisoned");
    while values.len() <= idx {
        // B_m = -1/(m+1) Σ_{k<m} C(m+1, k) B_k
        let m = values.len() as i64;
        let value = if m > 1 && m % 2 == 1 {
            Rational::zero()
        } else {
            let mut acc = Rational::zero();
            for (k, bk) in values.iter().enumerate() {
                if !bk.is_zero() {
                    acc += binomial_int(m + 1, k as i64) * bk;
                }
            }
            -acc / int(m + 1)
        };
        values.push(value);
    }
    values[idx].clone()
}

/// Floor of `log2 |q|` up to one unit, used for scaling decisions only.
pub(crate) fn approx_log2(q: &Rational) -> i64 {
    q.numer().bits() as i64 - q.denom().bits() as i64
}
