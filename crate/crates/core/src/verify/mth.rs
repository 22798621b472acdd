//! `Σ_{k=0}^{n} (-1)^k C(n,k) / (b+k)^m` without summing the alternating series.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::ratcore::{binomial_int, factorial, int, powi, Rational};

/// Closed form of `Σ_{k=0}^{n} (-1)^k C(n,k) / (b+k)^m` for `m >= 1`.
///
/// With `f(b) = n! / (b (b+1) ... (b+n))` the sum equals
/// `(-1)^(m-1) f^(m-1)(b) / (m-1)!`. The derivatives come from `f' = f u`,
/// `u = -Σ_j 1/(b+j)`, whose own derivatives are power sums of `1/(b+j)`.
pub fn mth_power_sum_closed_form(n: u64, b: &Rational, m: u32) -> Result<Rational> {
    if m == 0 {
        return Err(Error::InvalidArgument("m must be positive".into()));
    }
    let shifts: Vec<Rational> = (0..=n as i64).map(|j| b + int(j)).collect();
    if let Some(z) = shifts.iter().find(|x| x.is_zero()) {
        return Err(Error::Pole {
            arg: format!("b + {} = {z}", z - b),
        });
    }
    let mut f0 = Rational::from(factorial(n));
    for s in &shifts {
        f0 /= s;
    }
    // u^(i) = (-1)^(i+1) i! Σ_j (b+j)^-(i+1)
    let u: Vec<Rational> = (0..m.saturating_sub(1))
        .map(|i| {
            let p: Rational = shifts.iter().map(|s| powi(s, -(i as i32 + 1))).sum();
            let v = Rational::from(factorial(i as u64)) * p;
            if i % 2 == 0 {
                -v
            } else {
                v
            }
        })
        .collect();
    let mut f = vec![f0];
    for j in 0..(m as usize).saturating_sub(1) {
        let next: Rational = (0..=j)
            .map(|i| binomial_int(j as i64, i as i64) * &f[i] * &u[j - i])
            .sum();
        f.push(next);
    }
    let mut out = f.pop().expect("non-empty") / Rational::from(factorial((m - 1) as u64));
    if m % 2 == 0 {
        out = -out;
    }
    Ok(out)
}

/// The same sum by direct summation.
pub fn mth_power_sum_direct(n: u64, b: &Rational, m: u32) -> Result<Rational> {
    let mut acc = Rational::zero();
    for k in 0..=n as i64 {
        let s = b + int(k);
        if s.is_zero() {
            return Err(Error::Pole { arg: format!("b + {k} = 0") });
        }
        let t = binomial_int(n as i64, k) * powi(&s, -(m as i32));
        if k % 2 == 0 {
            acc += t;
        } else {
            acc -= t;
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratcore::frac;

    #[test]
    fn small_values() {
        assert_eq!(mth_power_sum_closed_form(1, &int(1), 3).unwrap(), frac(7, 8));
        assert_eq!(mth_power_sum_closed_form(3, &int(1), 2).unwrap(), frac(25, 48));
        assert_eq!(mth_power_sum_closed_form(0, &int(2), 1).unwrap(), frac(1, 2));
        assert_eq!(mth_power_sum_closed_form(4, &int(1), 1).unwrap(), frac(1, 5));
    }

    #[test]
    fn matches_direct_sum() {
        for n in 0..8u64 {
            for b in [int(1), int(4), frac(1, 2), frac(-7, 3)] {
                for m in 1..6 {
                    assert_eq!(
                        mth_power_sum_closed_form(n, &b, m).unwrap(),
                        mth_power_sum_direct(n, &b, m).unwrap(),
                        "n={n} b={b} m={m}"
                    );
                }
            }
        }
    }

    #[test]
    fn poles_and_bad_m() {
        assert!(matches!(mth_power_sum_closed_form(3, &int(-2), 2), Err(Error::Pole { .. })));
        assert!(mth_power_sum_closed_form(3, &int(1), 0).is_err());
    }
}
