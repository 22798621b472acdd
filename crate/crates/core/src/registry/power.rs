//! Product and power forms of the reciprocal sum `Σ (-1)^k C(n,k)/(k+b)`.

use num_traits::One;

use super::{guard_b_nonzero, guard_b_nonzero_m, sh, IdentityDescriptor as D, Param, ParamBinding, RelationKind::*};
use crate::expr::{binom, hr, lit, Expr};
use crate::ratcore::{binomial_int, factorial, int, Rational};

const NB: &[Param] = &[Param::N, Param::B];
const NBM: &[Param] = &[Param::N, Param::B, Param::M];

const POW: &str = "power sums";

/// `Π_{k=1}^n k/(b+k)`
fn product(n: i64, b: &Rational) -> Rational {
    (1..=n).fold(Rational::one(), |acc, k| acc * int(k) / sh(b, k))
}

/// Closed form of `Σ_{k=0}^n (-1)^k C(n,k)/(b+k)^m` as an expression:
/// the `(m-1)`-th derivative of `f(b) = 1/(b C(n+b,b))`, built with the
/// Leibniz rule from `f' = f u`, `u(b) = ψ(b) - ψ(n+b+1)`.
pub fn power_sum_rhs(n: i64, b: &Rational, m: u32) -> Expr {
    assert!(m >= 1, "m must be positive");
    let f0 = lit(1) / (lit(b) * binom(sh(b, n), b));
    // u^(i) = (-1)^(i+1) i! (H^(i+1)_{n+b} - H^(i+1)_{b-1})
    let u = |i: u32| {
        let mut coeff = Rational::from(factorial(i as u64));
        if i % 2 == 0 {
            coeff = -coeff;
        }
        lit(coeff) * (hr(i + 1, sh(b, n)) - hr(i + 1, sh(b, -1)))
    };
    let mut f = vec![f0];
    for j in 0..m - 1 {
        let next = (0..=j)
            .map(|i| lit(binomial_int(j as i64, i as i64)) * f[i as usize].clone() * u(j - i))
            .reduce(|a, t| a + t)
            .expect("non-empty");
        f.push(next);
    }
    let mut scale = Rational::one() / Rational::from(factorial((m - 1) as u64));
    if m % 2 == 0 {
        scale = -scale;
    }
    lit(scale) * f.pop().expect("non-empty")
}

pub(super) fn descriptors() -> Vec<D> {
    vec![
        D::alt("binomial_frac_id:product", NB, 0, 1, 0,
            |k, p| lit(p.b()) / lit(sh(&p.b(), k)),
            |p| lit(product(p.n, &p.b())))
            .guard(guard_b_nonzero)
            .rel(Specializes, "binomial_frac_id")
            .anchor(POW, "binomial_frac_id rewritten as a finite product."),

        D::alt("cor_id1:peterson", NB, 0, 1, 0,
            |k, p| (lit(p.b()) / lit(sh(&p.b(), k))).pow(2),
            |p| {
                let b = p.b();
                let tail = (1..=p.n).fold(Rational::one(), |acc, k| acc + &b / sh(&b, k));
                lit(product(p.n, &b) * tail)
            })
            .guard(guard_b_nonzero)
            .rel(Specializes, "cor_id1")
            .anchor(POW, "cor_id1 as a product times one plus a sum of b/(b+k)."),

        D::alt("Peterson", NBM, 0, 1, 0,
            |k, p| (lit(p.b()) / lit(sh(&p.b(), k))).pow(p.m() as i32),
            |p: &ParamBinding| {
                let b = p.b();
                lit(crate::ratcore::powi(&b, p.m() as i32)) * power_sum_rhs(p.n, &b, p.m())
            })
            .guard(guard_b_nonzero_m)
            .rel(Specializes, "binomial_frac_id")
            .anchor(POW, "m-th powers of b/(b+k), via repeated differentiation of binomial_frac_id in b."),
    ]
}
