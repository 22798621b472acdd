//! The seed identity and the identities with free parameters `b`, `c`.

use super::{
    guard_b, guard_b_nonzero, guard_bc, guard_bc_c_nonzero, sh, DerivativeMap,
    IdentityDescriptor as D, Param, ParamBinding, RelationKind::*,
};
use crate::expr::{binom, h, h2, lit};
use crate::ratcore::{frac, int};

const NBC: &[Param] = &[Param::N, Param::B, Param::C];
const NB: &[Param] = &[Param::N, Param::B];
const N: &[Param] = &[Param::N];

const SEED: &str = "seed identity";
const HARM: &str = "harmonic numbers";

fn bc(p: &ParamBinding) -> (i64, crate::Rational, crate::Rational) {
    (p.n, p.b(), p.c())
}

pub(super) fn descriptors() -> Vec<D> {
    vec![
        D::alt("Id_Frisch", NBC, 1, 1, 0,
            |k, p| lit(1) / binom(sh(&p.b(), k), p.c()),
            |p| {
                let (n, b, c) = bc(p);
                lit(&c) / (lit(&c) + n) / binom(sh(&b, n), &b - &c)
            })
            .guard(guard_bc)
            .anchor(SEED, "Alternating sum of C(n,k)/C(b+k,c) in closed form; every other identity descends from it."),

        D::alt("main_id1", NBC, 1, 1, 0,
            |k, p| {
                let (_, b, c) = bc(p);
                (h(sh(&b, k)) - h(sh(&b, k) - &c)) / binom(sh(&b, k), c)
            },
            |p| {
                let (n, b, c) = bc(p);
                lit(&c) / (lit(&c) + n) * (h(sh(&b, n)) - h(&b - &c)) / binom(sh(&b, n), sh(&c, n))
            })
            .guard(guard_bc)
            .deriv("Id_Frisch", DerivativeMap {
                param: Param::B,
                derived_coeff: -1,
                base_coeff: None,
                probe: || ParamBinding::new(3).with_b(int(2)).with_c(int(1)),
            })
            .anchor(HARM, "Differentiating the seed identity in b brings in harmonic differences."),

        D::alt("main_id1b", NBC, 1, 1, 0,
            |k, p| {
                let (_, b, c) = bc(p);
                lit(&c) / (lit(sh(&c, k))) * (h(sh(&b, k)) - h(&b - &c)) / binom(sh(&b, k), sh(&c, k))
            },
            |p| {
                let (n, b, c) = bc(p);
                (h(sh(&b, n)) - h(sh(&b, n) - &c)) / binom(sh(&b, n), c)
            })
            .guard(guard_bc_c_nonzero)
            .rel(BinomialTransformOf, "main_id1")
            .anchor(HARM, "Binomial transform partner of main_id1.")
            .note("c = 0 is excluded: the k = 0 factor c/(k+c) is 0/0 there."),

        D::alt("main_id11", NB, 1, 1, 0,
            |k, p| {
                let b = p.b();
                (h(sh(&b, k)) - h(k)) / binom(sh(&b, k), k)
            },
            |p| {
                let (n, b) = (p.n, p.b());
                lit(&b) / lit(sh(&b, n)) * h(sh(&b, n))
            })
            .guard(guard_b)
            .rel(Specializes, "main_id1")
            .anchor(HARM, "main_id1 with c = b."),

        D::alt("main_id11b", NB, 1, 1, 0,
            |k, p| h(sh(&p.b(), k)) / lit(sh(&p.b(), k)),
            |p| {
                let (n, b) = (p.n, p.b());
                (h(sh(&b, n)) - h(n)) / (lit(&b) * binom(sh(&b, n), &b))
            })
            .guard(guard_b_nonzero)
            .rel(Specializes, "main_id1b")
            .anchor(HARM, "main_id1b with c = b, divided by b."),

        D::alt("cor_id1", NB, 1, 1, 0,
            |k, p| lit(sh(&p.b(), k)).pow(-2),
            |p| {
                let (n, b) = (p.n, p.b());
                (h(sh(&b, n)) - h(sh(&b, -1))) / (lit(n + 1) * binom(sh(&b, n), n + 1))
            })
            .guard(guard_b_nonzero)
            .rel(Specializes, "main_id1")
            .deriv("binomial_frac_id", DerivativeMap {
                param: Param::B,
                derived_coeff: -1,
                base_coeff: None,
                probe: || ParamBinding::new(3).with_b(int(2)),
            })
            .anchor(HARM, "Alternating sum of C(n,k)/(b+k)^2."),

        D::alt("cor_id1:b=1", N, 1, 1, 0,
            |k, _| lit(k + 1).pow(-2),
            |p| h(p.n + 1) / lit(p.n + 1))
            .rel(Specializes, "cor_id1")
            .anchor(HARM, "The classical b = 1 case: H_{n+1}/(n+1)."),

        D::alt("main_id2", NBC, 1, -1, 0,
            |k, p| {
                let (_, b, c) = bc(p);
                (h(sh(&b, k) - &c) - h(&c)) / binom(sh(&b, k), c)
            },
            |p| {
                let (n, b, c) = bc(p);
                let front = lit(1) / (lit(sh(&c, n)) * binom(sh(&b, n), sh(&c, n)));
                front * (lit(n) / lit(sh(&c, n)) + lit(&c) * (h(sh(&c, n)) - h(&b - &c)))
            })
            .guard(guard_bc)
            .deriv("Id_Frisch", DerivativeMap {
                param: Param::C,
                derived_coeff: 1,
                base_coeff: None,
                probe: || ParamBinding::new(3).with_b(int(2)).with_c(int(1)),
            })
            .anchor(HARM, "Differentiating the seed identity in c."),

        D::alt("main_id22", NB, 1, -1, 0,
            |k, p| h(sh(&p.b(), k)),
            |p| {
                let (n, b) = (p.n, p.b());
                lit(1) / (lit(n) * binom(sh(&b, n), n))
            })
            .guard(guard_b)
            .rel(Specializes, "main_id2")
            .anchor(HARM, "main_id2 with c = 0: alternating sum of shifted harmonic numbers."),

        D::alt("main_id22:b=0", N, 1, 1, 0,
            |k, _| h(k),
            |p| lit(-1) / lit(p.n))
            .rel(Specializes, "main_id22")
            .anchor(HARM, "Binomial transform of H_n equals -1/n."),

        D::alt("eq.auhzvb5", NB, 0, -1, 1,
            |k, p| lit(1) / (lit(k) * binom(sh(&p.b(), k), k)),
            |p| h(sh(&p.b(), p.n)) - h(p.b()))
            .guard(guard_b)
            .anchor(HARM, "Reciprocal binomial sum with 1/k weight gives H_{n+b} - H_b."),

        D::alt("eq.auhzvb5:b=n", N, 0, -1, 1,
            |k, p| lit(1) / (lit(k) * binom(k + p.n, k)),
            |p| h(2 * p.n) - h(p.n))
            .rel(Specializes, "eq.auhzvb5")
            .anchor(HARM, "eq.auhzvb5 with b = n."),

        D::alt("cor_id2", NB, 1, 1, 0,
            |k, p| h(sh(&p.b(), k)) / binom(sh(&p.b(), k), k),
            |p| {
                let (n, b) = (p.n, p.b());
                lit(&b) / lit(sh(&b, n)) * h(&b) - lit(n) / lit(sh(&b, n)).pow(2)
            })
            .guard(guard_b)
            .anchor(HARM, "Weighted alternating sum of H_{k+b}, from main_id2 at c = b."),

        D::alt("eq.twi4acl", NB, 1, 1, 0,
            |k, p| lit(1) / binom(sh(&p.b(), k), k),
            |p| lit(p.b()) / lit(sh(&p.b(), p.n)))
            .guard(guard_b)
            .rel(Specializes, "Id_Frisch")
            .anchor(HARM, "Seed identity with c = b."),

        D::alt("cor_id3", NB, 0, -1, 1,
            |k, p| lit(k) / lit(sh(&p.b(), k)).pow(2),
            |p| {
                let (n, b) = (p.n, p.b());
                (h(sh(&b, n)) - h(&b)) / binom(sh(&b, n), n)
            })
            .guard(guard_b)
            .anchor(HARM, "Alternating sum of k C(n,k)/(k+b)^2."),

        D::alt("cor_id3:b=n", N, 0, -1, 1,
            |k, p| lit(k) / lit(k + p.n).pow(2),
            |p| (h(2 * p.n) - h(p.n)) / binom(2 * p.n, p.n))
            .rel(Specializes, "cor_id3")
            .anchor(HARM, "cor_id3 with b = n."),

        D::alt("binomial_frac_id", NB, 0, 1, 0,
            |k, p| lit(1) / lit(sh(&p.b(), k)),
            |p| {
                let (n, b) = (p.n, p.b());
                lit(1) / (lit(&b) * binom(sh(&b, n), &b))
            })
            .guard(guard_b_nonzero)
            .rel(Specializes, "Id_Frisch")
            .anchor(HARM, "Seed identity with c = 1: alternating sum of C(n,k)/(k+b)."),

        D::alt("cor_id3:split-b", NB, 1, 1, 0,
            |k, p| lit(p.b()) / lit(sh(&p.b(), k)).pow(2),
            |p| {
                let (n, b) = (p.n, p.b());
                (h(sh(&b, n)) - h(sh(&b, -1))) / binom(sh(&b, n), n)
            })
            .guard(guard_b_nonzero)
            .anchor(HARM, "The b/(b+k)^2 half of binomial_frac_id.")
            .note("b = 0 is excluded: the k = 0 summand is 0/0."),

        D::alt("cor_id3:split-k", NB, 1, 1, 0,
            |k, p| lit(k) / lit(sh(&p.b(), k)).pow(2),
            |p| {
                let (n, b) = (p.n, p.b());
                (h(&b) - h(sh(&b, n))) / binom(sh(&b, n), n)
            })
            .guard(guard_b_nonzero)
            .anchor(HARM, "The k/(b+k)^2 half of binomial_frac_id.")
            .note("b = 0 is excluded: the k = 0 summand is 0/0."),

        D::alt("eq.hzbwh6o", NB, 1, -1, 0,
            |k, p| h(k) / binom(sh(&p.b(), k), k),
            |p| {
                let (n, b) = (p.n, p.b());
                lit(&b) / lit(sh(&b, n)) * (h(sh(&b, n)) - h(&b)) + lit(n) / lit(sh(&b, n)).pow(2)
            })
            .guard(guard_b)
            .anchor(HARM, "Alternating sum of H_k/C(b+k,k)."),

        D::alt("eq.ufus43q", NB, 0, 1, 0,
            |k, p| lit(sh(&p.b(), k)).pow(-3),
            |p| {
                let (n, b) = (p.n, p.b());
                let d = h(sh(&b, n)) - h(sh(&b, -1));
                let inner = d.square() - h2(sh(&b, -1)) + h2(sh(&b, n));
                inner / (lit(2 * n + 2) * binom(sh(&b, n), n + 1))
            })
            .guard(guard_b_nonzero)
            .deriv("cor_id1", DerivativeMap {
                param: Param::B,
                derived_coeff: -2,
                base_coeff: None,
                probe: || ParamBinding::new(1).with_b(int(2)),
            })
            .anchor(HARM, "Cubic reciprocal sum; brings in second-order harmonic numbers."),

        D::alt("Bai_id", N, 0, 1, 0,
            |k, _| lit(k + 1).pow(-3),
            |p| (h(p.n + 1).square() + h2(p.n + 1)) / lit(2 * p.n + 2))
            .rel(Specializes, "eq.ufus43q")
            .anchor(HARM, "eq.ufus43q with b = 1."),

        D::alt("eq.soe68bj", NB, 1, -1, 0,
            |k, p| h2(sh(&p.b(), k)),
            |p| {
                let (n, b) = (p.n, p.b());
                (h(sh(&b, n)) - h(&b)) / (lit(n) * binom(sh(&b, n), n))
            })
            .guard(guard_b)
            .deriv("main_id22", DerivativeMap {
                param: Param::B,
                derived_coeff: -1,
                base_coeff: None,
                probe: || ParamBinding::new(2).with_b(frac(3, 2)),
            })
            .anchor(HARM, "Alternating sum of second-order harmonic numbers; requires n >= 1."),

        D::alt("eq.lht3ics", NB, 0, -1, 1,
            |k, p| {
                let b = p.b();
                (h(sh(&b, k)) - h(&b)) / (lit(k) * binom(sh(&b, k), k))
            },
            |p| h2(sh(&p.b(), p.n)) - h2(p.b()))
            .guard(guard_b)
            .rel(InverseTransformOf, "eq.soe68bj")
            .anchor(HARM, "Inverse transform of eq.soe68bj."),

        D::alt("eq.qr5oi89", NB, 0, -1, 1,
            |k, p| h(sh(&p.b(), k)) / (lit(k) * binom(sh(&p.b(), k), k)),
            |p| {
                let (n, b) = (p.n, p.b());
                (h(sh(&b, n)) - h(&b)) * h(&b) + h2(sh(&b, n)) - h2(&b)
            })
            .guard(guard_b)
            .anchor(HARM, "eq.lht3ics combined with eq.auhzvb5."),

        D::alt("eq.iauweap", NB, 1, -1, 0,
            |k, p| h(k) * h(sh(&p.b(), k)) / binom(sh(&p.b(), k), p.b()),
            |p| {
                let (n, b) = (p.n, p.b());
                let nb = lit(sh(&b, n));
                let a = (lit(&b) * h(&b) - lit(n) / nb.clone()) * (h(sh(&b, n)) - h(&b)) / nb.clone();
                let c = lit(&b) / nb.clone() * (h2(sh(&b, n)) - h2(&b));
                let d = lit(n) / nb.clone().pow(2) * (lit(2) / nb + h(&b));
                a + c + d
            })
            .guard(guard_b)
            .deriv("eq.hzbwh6o", DerivativeMap {
                param: Param::B,
                derived_coeff: -1,
                base_coeff: Some(|p| h(p.b())),
                probe: || ParamBinding::new(3).with_b(int(2)),
            })
            .anchor(HARM, "Products H_k H_{k+b} over C(b+k,b)."),

        D::alt("id_Hk_squared", N, 1, 1, 0,
            |k, _| h(k).square(),
            |p| h(p.n) / lit(p.n) - lit(2) / lit(p.n).pow(2))
            .rel(Specializes, "eq.iauweap")
            .anchor(HARM, "Binomial transform of H_n^2."),

        D::alt("eq.iauweap:b=n", N, 1, -1, 0,
            |k, p| h(k) * h(k + p.n) / binom(k + p.n, k),
            |p| {
                let n = p.n;
                let half = frac(1, 2);
                (h2(2 * n) - h2(n)) * lit(&half)
                    + h(2 * n) * (h(n) - lit(frac(1, 2 * n))) * lit(&half)
                    - h(n) * h(n - 1) * lit(&half)
                    + lit(frac(1, 4 * n * n))
            })
            .rel(Specializes, "eq.iauweap")
            .anchor(HARM, "eq.iauweap with b = n, for positive n."),

        D::alt("eq.vsafq0i", N, 1, -1, 1,
            |k, _| h(k) / lit(k),
            |p| h2(p.n))
            .rel(Specializes, "eq.lht3ics")
            .anchor(HARM, "Alternating sum of C(n,k) H_k/k gives H_n^(2)."),

        D::alt("eq.vsafq0i:aux", N, 1, -1, 1,
            |k, _| lit(k).pow(-2),
            |p| (h(p.n).square() + h2(p.n)) / lit(2))
            .anchor(HARM, "Auxiliary sum of C(n,k)/k^2 used to derive eq.vsafq0i."),
    ]
}
