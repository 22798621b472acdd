//! Odd harmonic numbers and half-integer arguments.

use super::{
    guard_s_in_range, IdentityDescriptor as D, Param, ParamBinding, RelationKind::*,
    RING_BACKENDS,
};
use crate::expr::{binom, frac, h, h2, lit, odd, odd2, pow2, Expr};
use crate::ratcore::frac as q;

const N: &[Param] = &[Param::N];
const NS: &[Param] = &[Param::N, Param::S];

const REL: &str = "half-integer values";
const ODD: &str = "odd harmonic numbers";

/// `C(2k, k)`
fn c2(k: i64) -> Expr {
    binom(2 * k, k)
}

/// `n - 1/2`
fn minus_half(n: i64) -> crate::Rational {
    q(2 * n - 1, 2)
}

/// `n + 1/2`
fn plus_half(n: i64) -> crate::Rational {
    q(2 * n + 1, 2)
}

fn mtof_rhs(p: &ParamBinding) -> Expr {
    let n = p.n;
    lit(2) * odd(n) / lit(2 * n - 1) - lit(4 * n) / lit(2 * n - 1).pow(2)
}

pub(super) fn descriptors() -> Vec<D> {
    vec![
        D::closed("eq.h9wjxs0", N, 0,
            |p| h(2 * p.n),
            |p| h(p.n) / lit(2) + odd(p.n))
            .anchor(REL, "H_{2n} splits into half of H_n plus O_n."),

        D::closed("eq.h9wjxs0:odd-index", N, 1,
            |p| h(2 * p.n - 1),
            |p| h(p.n - 1) / lit(2) + odd(p.n))
            .anchor(REL, "H_{2n-1} splits into half of H_{n-1} plus O_n."),

        D::closed("lem.czxfdu7", N, 0,
            |p| h(minus_half(p.n)),
            |p| lit(2) * odd(p.n) - lit(2) * Expr::Ln2)
            .backends(RING_BACKENDS)
            .anchor(REL, "Harmonic number at n - 1/2 in terms of O_n and ln 2."),

        D::closed("eq.plh634k", N, 0,
            |p| h(minus_half(p.n)) - h(q(-1, 2)),
            |p| lit(2) * odd(p.n))
            .backends(RING_BACKENDS)
            .anchor(REL, "H_{n-1/2} - H_{-1/2} = 2 O_n."),

        D::closed("lem.czxfdu7:from-half", N, 0,
            |p| h(minus_half(p.n)) - h(q(1, 2)),
            |p| lit(2) * (odd(p.n) - 1))
            .backends(RING_BACKENDS)
            .anchor(REL, "H_{n-1/2} - H_{1/2} = 2 (O_n - 1)."),

        D::closed("eq.ivi1ex5", N, 0,
            |p| h(plus_half(p.n)) - h(q(-1, 2)),
            |p| lit(2) * odd(p.n + 1))
            .backends(RING_BACKENDS)
            .anchor(REL, "H_{n+1/2} - H_{-1/2} = 2 O_{n+1}."),

        D::closed("lem.czxfdu7:plus-from-half", N, 0,
            |p| h(plus_half(p.n)) - h(q(1, 2)),
            |p| lit(2) * (odd(p.n + 1) - 1))
            .backends(RING_BACKENDS)
            .anchor(REL, "H_{n+1/2} - H_{1/2} = 2 (O_{n+1} - 1)."),

        D::closed("lem.czxfdu7:step", N, 0,
            |p| h(plus_half(p.n)) - h(minus_half(p.n)),
            |p| lit(2) / lit(2 * p.n + 1))
            .backends(RING_BACKENDS)
            .anchor(REL, "Adjacent half-integer harmonic numbers differ by 2/(2n+1)."),

        D::closed("eq.pobmr6h", N, 0,
            |p| h(minus_half(p.n)) - h(q(-3, 2)),
            |p| lit(2) * (odd(p.n) - 1))
            .backends(RING_BACKENDS)
            .anchor(REL, "H_{n-1/2} - H_{-3/2} = 2 (O_n - 1)."),

        D::closed("lem.czxfdu7:plus-from-minus-three-halves", N, 0,
            |p| h(plus_half(p.n)) - h(q(-3, 2)),
            |p| lit(2) * (odd(p.n + 1) - 1))
            .backends(RING_BACKENDS)
            .anchor(REL, "H_{n+1/2} - H_{-3/2} = 2 (O_{n+1} - 1)."),

        D::closed("eq.cwrdtmu", NS, 0,
            |p| binom(plus_half(p.n), p.s()),
            |p| {
                let (r, s) = (p.n, p.s());
                binom(2 * r + 1, 2 * s) / binom(r, s) * pow2(-2 * s) * c2(s)
            })
            .guard(guard_s_in_range)
            .anchor(REL, "C(r+1/2, s) through integer binomials, 0 <= s <= r (r carried in n).")
            .note("the upper index r is bound to n"),

        D::closed("eq.s0t6h30", NS, 0,
            |p| binom(minus_half(p.n), p.s()),
            |p| {
                let (r, s) = (p.n, p.s());
                binom(r, s) / binom(2 * r - 2 * s, r - s) * pow2(-2 * s) * c2(r)
            })
            .guard(guard_s_in_range)
            .anchor(REL, "C(r-1/2, s) through integer binomials, 0 <= s <= r (r carried in n).")
            .note("the upper index r is bound to n"),

        D::closed("eq.dtwjzd8", N, 0,
            |p| binom(p.n, q(1, 2)),
            |p| pow2(2 * p.n + 1) / (Expr::Pi * c2(p.n)))
            .backends(RING_BACKENDS)
            .anchor(REL, "C(r, 1/2) is a rational multiple of 1/pi (r carried in n)."),

        D::closed("eq.q3uie78", N, 0,
            |p| binom(p.n, q(-1, 2)),
            |p| pow2(2 * p.n + 1) / (Expr::Pi * lit(2 * p.n + 1) * c2(p.n)))
            .backends(RING_BACKENDS)
            .anchor(REL, "C(r, -1/2) is a rational multiple of 1/pi (r carried in n)."),

        D::closed("eq.cm3vohl", N, 0,
            |p| binom(minus_half(p.n), p.n + 1),
            |p| -(c2(p.n) / (lit(p.n + 1) * pow2(2 * p.n + 1))))
            .anchor(REL, "C(r-1/2, r+1) in closed form (r carried in n)."),

        D::alt("eq.main_odd1_1", N, 0, 1, 0,
            |k, _| lit(2 * k + 1).pow(-2),
            |p| {
                let n = p.n;
                pow2(2 * n + 1) / lit(n + 1) * odd(n + 1) / c2(n + 1)
            })
            .rel(Specializes, "cor_id1")
            .anchor(ODD, "cor_id1 at b = 1/2: reciprocal odd squares."),

        D::alt("main_odd1:inverse", N, 0, 1, 0,
            |k, _| pow2(2 * k + 1) / lit(k + 1) * odd(k + 1) / c2(k + 1),
            |p| lit(2 * p.n + 1).pow(-2))
            .rel(InverseTransformOf, "eq.main_odd1_1")
            .anchor(ODD, "Inverse transform of eq.main_odd1_1."),

        D::alt("eq.cqklzqh", N, 0, -1, 0,
            |k, _| lit(2 * k - 1).pow(-2),
            |p| pow2(2 * p.n) * (odd(p.n) - 1) / c2(p.n))
            .anchor(ODD, "Reciprocal squares of 2k-1."),

        D::alt("eq.fhj2wwz", N, 0, -1, 0,
            |k, _| pow2(2 * k) * odd(k) / c2(k),
            |p| lit(2 * p.n) / lit(2 * p.n - 1).pow(2))
            .anchor(ODD, "Inverse transform of eq.cqklzqh combined with eq.xyz1."),

        D::alt("eq.xyz1", N, 0, -1, 0,
            |k, _| pow2(2 * k) / c2(k),
            |p| lit(1) / lit(2 * p.n - 1))
            .anchor(ODD, "Auxiliary: transform of 4^k/C(2k,k)."),

        D::alt("eq.nh1vubi", N, 0, -1, 0,
            |k, _| lit(2 * k - 1) * pow2(-2 * (k - 1)) * binom(2 * (k - 1), k - 1) * odd(k),
            |p| {
                let n = p.n;
                pow2(-2 * (n - 1)) * binom(2 * (n - 1), n - 1)
                    * (lit(2 * n) / lit(2 * n - 1) - odd(n))
            })
            .anchor(ODD, "Central binomial weights times O_k.")
            .note("C(-2, -1) is read as 0, so both sides vanish at n = 0"),

        D::alt("eq.nzxpc5c", N, 0, -1, 0,
            |k, _| lit(2 * k + 1) * pow2(-2 * k) * c2(k) * odd(k + 1),
            |p| {
                let n = p.n;
                c2(n) * pow2(-2 * n) / lit(2 * n - 1) * (lit(4 * n - 1) / lit(2 * n - 1) - odd(n))
            })
            .anchor(ODD, "Central binomial weights times O_{k+1}."),

        D::alt("eq.pj6av0a", N, 0, -1, 0,
            |k, _| pow2(-2 * k - 2) * c2(k + 1) * (odd(k + 1) - 1),
            |p| {
                let n = p.n;
                pow2(-2 * n - 2) / lit(2 * n + 1) * c2(n + 1) * (odd(n + 1) - frac(1, 2 * n + 1))
            })
            .anchor(ODD, "Central binomial weights times O_{k+1} - 1."),

        D::alt("eq.zxdl17v", N, 0, -1, 0,
            |k, _| pow2(-2 * k) * c2(k) * (odd(k) - 1),
            |p| {
                let n = p.n;
                pow2(-2 * n) * c2(n) * (lit(2 * n) / lit(2 * n + 1) + odd(n + 1))
            })
            .anchor(ODD, "Central binomial weights times O_k - 1."),

        D::alt("eq.jm6rck7", N, 1, -1, 1,
            |k, _| odd(k),
            |p| pow2(2 * p.n - 1) / (lit(p.n) * c2(p.n)))
            .anchor(ODD, "Binomial transform of O_n."),

        D::alt("eq.u1t9s6r", N, 1, -1, 1,
            |k, _| pow2(2 * k - 1) / (lit(k) * c2(k)),
            |p| odd(p.n))
            .rel(BinomialTransformOf, "eq.jm6rck7")
            .anchor(ODD, "Transform partner of eq.jm6rck7."),

        D::alt("eq.fqnumdk", N, 1, -1, 0,
            |k, _| odd(k + 1),
            |p| {
                let n = p.n;
                pow2(2 * n - 1) / (lit(n) * lit(2 * n + 1) * c2(n))
            })
            .anchor(ODD, "Binomial transform of O_{n+1}."),

        D::alt("eq.b357dyz", N, 1, -1, 1,
            |k, _| pow2(2 * k - 1) / (lit(k) * lit(2 * k + 1) * c2(k)),
            |p| odd(p.n + 1) - 1)
            .rel(BinomialTransformOf, "eq.fqnumdk")
            .anchor(ODD, "Transform partner of eq.fqnumdk."),

        D::alt("main_odd4:plus-half", N, 0, -1, 1,
            |k, _| lit(k) / lit(2 * k + 1).pow(2),
            |p| {
                let n = p.n;
                pow2(2 * n - 1) * (odd(n + 1) - 1) / (lit(2 * n + 1) * c2(n))
            })
            .anchor(ODD, "k/(2k+1)^2 weights.")
            .note("n = 0 is kept in the domain; both sides vanish there"),

        D::alt("eq.main_odd4_2", N, 0, -1, 1,
            |k, _| lit(k) / lit(2 * k - 1).pow(2),
            |p| pow2(2 * p.n - 1) * odd(p.n) / c2(p.n))
            .anchor(ODD, "k/(2k-1)^2 weights.")
            .note("n = 0 is kept in the domain; both sides vanish there"),

        D::alt("main_odd4:plus-half-inverse", N, 0, -1, 1,
            |k, _| pow2(2 * k - 1) * (odd(k + 1) - 1) / (lit(2 * k + 1) * c2(k)),
            |p| lit(p.n) / lit(2 * p.n + 1).pow(2))
            .rel(InverseTransformOf, "main_odd4:plus-half")
            .anchor(ODD, "Inverse transform of main_odd4:plus-half.")
            .note("n = 0 is kept in the domain; both sides vanish there"),

        D::alt("eq.hc2fi1o", N, 0, -1, 1,
            |k, _| pow2(2 * k - 1) * odd(k) / c2(k),
            |p| lit(p.n) / lit(2 * p.n - 1).pow(2))
            .rel(InverseTransformOf, "eq.main_odd4_2")
            .rel(Rediscovers, "eq.fhj2wwz")
            .anchor(ODD, "Inverse transform of eq.main_odd4_2; half of eq.fhj2wwz.")
            .note("n = 0 is kept in the domain; both sides vanish there"),

        D::alt("eq.zmrbc4e", N, 0, -1, 0,
            |k, _| pow2(2 * k) * h(k) / (lit(2 * k + 1) * c2(k)),
            |p| {
                let n = p.n;
                lit(2) * odd(n + 1) / lit(2 * n + 1) - lit(2) / lit(2 * n + 1).pow(2)
            })
            .anchor(ODD, "Harmonic numbers against 4^k/((2k+1) C(2k,k))."),

        D::alt("eq.mtof7yp", N, 0, 1, 0,
            |k, _| pow2(2 * k) * h(k) / c2(k),
            mtof_rhs)
            .anchor(ODD, "Harmonic numbers against 4^k/C(2k,k)."),

        D::alt("eq.xxyyzz1", N, 0, 1, 0,
            |k, _| odd(k + 1) / lit(2 * k + 1),
            |p| {
                let n = p.n;
                pow2(2 * n + 1) / lit(n + 1) * odd(n + 1) / c2(n + 1)
                    - pow2(2 * n - 1) / lit(2 * n + 1) * h(n) / c2(n)
            })
            .anchor(ODD, "O_{k+1}/(2k+1) weights."),

        D::alt("eq.xxyyzz2", N, 0, 1, 0,
            |k, _| odd(k) / lit(2 * k - 1),
            |p| pow2(2 * p.n - 1) / c2(p.n) * (h(p.n) - lit(2) * odd(p.n)))
            .anchor(ODD, "O_k/(2k-1) weights."),

        D::alt("eq.yq8ibvs", N, 0, -1, 1,
            |k, _| pow2(2 * k) / c2(k) * h(2 * k),
            |p| {
                let n = p.n;
                lit(4 * n) / lit(2 * n - 1).pow(2) - odd(n) / lit(2 * n - 1)
            })
            .anchor(ODD, "H_{2k} against 4^k/C(2k,k)."),

        D::alt("eq.ufus43q:b=-1/2", N, 0, -1, 0,
            |k, _| lit(2 * k - 1).pow(-3),
            |p| {
                let n = p.n;
                pow2(2 * n - 1) / c2(n) * ((odd(n) - 1).square() + odd2(n) + 1)
            })
            .rel(Specializes, "eq.ufus43q")
            .anchor(ODD, "Reciprocal cubes of 2k-1, from eq.ufus43q at b = -1/2."),

        D::closed("eq.cqhkqwq", N, 0,
            |p| h2(minus_half(p.n)),
            |p| -(Expr::Pi.square() / lit(3)) + lit(4) * odd2(p.n))
            .backends(RING_BACKENDS)
            .anchor(REL, "Second-order harmonic number at n - 1/2 via O_n^(2) and zeta(2)."),

        D::alt("eq.awov07j", N, 1, -1, 1,
            |k, _| odd2(k),
            |p| pow2(2 * p.n - 1) / c2(p.n) * odd(p.n) / lit(p.n))
            .rel(Specializes, "eq.soe68bj")
            .anchor(ODD, "Binomial transform of O_n^(2), from eq.soe68bj at b = -1/2."),

        D::alt("eq.y491lmb", N, 1, -1, 1,
            |k, _| pow2(2 * k - 1) / c2(k) * odd(k) / lit(k),
            |p| odd2(p.n))
            .rel(InverseTransformOf, "eq.awov07j")
            .anchor(ODD, "Inverse transform of eq.awov07j."),

        D::alt("eq.iauweap:b=-1/2", N, 0, -1, 0,
            |k, _| pow2(2 * k) / c2(k) * h(k) * odd(k),
            |p| {
                let n = p.n;
                lit(8 * n) / lit(2 * n - 1).pow(3)
                    - lit(4 * n) * odd(n) / lit(2 * n - 1).pow(2)
                    - lit(2) * odd2(n) / lit(2 * n - 1)
            })
            .rel(Specializes, "eq.iauweap")
            .anchor(ODD, "Products H_k O_k, from eq.iauweap at b = -1/2."),

        D::alt("eq.wsi7oju", N, 0, 1, 0,
            |k, _| pow2(2 * k) / c2(k) * h(k),
            mtof_rhs)
            .rel(Rediscovers, "eq.mtof7yp")
            .anchor(ODD, "Rational part of eq.iauweap at b = -1/2; coincides with eq.mtof7yp."),
    ]
}
