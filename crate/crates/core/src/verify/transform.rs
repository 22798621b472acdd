//! Binomial transforms and the cross-check between transform partners.

use std::time::Instant;

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use super::{Instance, Side, Status, VerificationReport};
use crate::error::{Error, Result};
use crate::expr::{eval, Backend, BackendKind, RationalBackend};
use crate::ratcore::{binomial_int, int, Rational};
use crate::registry::{IdentityDescriptor, Lhs, ParamBinding};

use super::GridSpec;

/// `T(n) = Σ_{k=0}^{n} (-1)^k C(n,k) a_k` for every prefix of `seq`.
pub fn binomial_transform(seq: &[Rational]) -> Vec<Rational> {
    (0..seq.len())
        .map(|n| {
            let mut acc = Rational::zero();
            for (k, a) in seq.iter().enumerate().take(n + 1) {
                let t = binomial_int(n as i64, k as i64) * a;
                if k % 2 == 0 {
                    acc += t;
                } else {
                    acc -= t;
                }
            }
            acc
        })
        .collect()
}

/// [`binomial_transform`] over any backend.
pub fn binomial_transform_seq<B: Backend>(backend: &B, seq: &[B::Value]) -> Result<Vec<B::Value>> {
    let mut out = Vec::with_capacity(seq.len());
    for n in 0..seq.len() {
        let mut acc = backend.rational(&Rational::zero())?;
        for (k, a) in seq.iter().enumerate().take(n + 1) {
            let mut c = binomial_int(n as i64, k as i64);
            if k % 2 == 1 {
                c = -c;
            }
            let t = backend.mul(&backend.rational(&c)?, a)?;
            acc = backend.add(&acc, &t)?;
        }
        out.push(acc);
    }
    Ok(out)
}

fn alt_parts(d: &IdentityDescriptor) -> Result<(i8, i64, fn(i64, &ParamBinding) -> crate::expr::Expr)> {
    match d.lhs {
        Lhs::AltSum { sign, k_from, term } => Ok((sign, k_from, term)),
        Lhs::Closed(_) => Err(Error::InvalidArgument(format!(
            "{} is not an alternating binomial sum",
            d.id
        ))),
    }
}

/// `Σ (-1)^k C(n,k) term(k)` of `d`, i.e. `sign * rhs(n)`.
fn out_value(d: &IdentityDescriptor, p: &ParamBinding) -> Result<Rational> {
    let (sign, _, _) = alt_parts(d)?;
    let r = d.rhs_unchecked(p, &RationalBackend)?;
    Ok(if sign < 0 { -r } else { r })
}

/// Fit `inp = λ out + μ` from the sample pairs. `None` if all `out` agree.
fn affine_fit(pairs: &[(Rational, Rational)]) -> Option<(Rational, Rational)> {
    let (o1, i1) = &pairs[0];
    let (o2, i2) = pairs.iter().find(|(o, _)| o != o1)?;
    let lambda = (i2 - i1) / (o2 - o1);
    let mu = i1 - &lambda * o1;
    Some((lambda, mu))
}

/// One direction: the summand of `consumer` is an affine image of the
/// closed form of `producer`; transforming that closed form must reproduce
/// the consumer's right side.
fn one_direction(
    producer: &IdentityDescriptor,
    consumer: &IdentityDescriptor,
    slice: &ParamBinding,
    n_max: i64,
) -> Vec<Instance> {
    let fail = |note: String| Instance {
        binding: slice.clone(),
        backend: BackendKind::ExactRational,
        status: Status::Fail,
        lhs: None,
        rhs: None,
        rules: Vec::new(),
        note: Some(note),
    };
    let at = |n: i64| ParamBinding { n, ..slice.clone() };
    let (_, k0, term) = match alt_parts(consumer) {
        Ok(x) => x,
        Err(e) => return vec![fail(e.to_string())],
    };
    let rb = RationalBackend;
    let mut pairs = Vec::new();
    for k in k0..=n_max {
        let out = out_value(producer, &at(k));
        let inp = eval(&rb, &term(k, &at(k)));
        match (out, inp) {
            (Ok(o), Ok(i)) => pairs.push((o, i)),
            (Err(e), _) | (_, Err(e)) => {
                return vec![Instance::errored(at(k), BackendKind::ExactRational, &e)]
            }
        }
    }
    let Some((lambda, mu)) = affine_fit(&pairs) else {
        return vec![fail(format!("{} has a constant closed form", producer.id))];
    };
    if lambda.abs() != Rational::one() {
        return vec![fail(format!("summand scale {lambda} is not ±1"))];
    }
    if let Some(k) = pairs.iter().position(|(o, i)| &(&lambda * o + &mu) != i) {
        return vec![fail(format!("summand mismatch at k={}", k0 + k as i64))];
    }
    let fit = format!("{} <- {}: λ={lambda} μ={mu}", consumer.id, producer.id);
    let mapped: Vec<Rational> = pairs.iter().map(|(o, _)| &lambda * o + &mu).collect();
    let padded = pad_from(k0.max(0) as usize, mapped.clone());
    if binomial_transform(&binomial_transform(&padded)) != padded {
        return vec![fail(format!("{fit}: double transform does not return the sequence"))];
    }
    let n_start = k0.max(consumer.n_min);
    (n_start..=n_max)
        .map(|n| {
            let p = at(n);
            let mut t = Rational::zero();
            for k in k0..=n {
                let c = binomial_int(n, k) * &mapped[(k - k0) as usize];
                if k % 2 == 0 {
                    t += c;
                } else {
                    t -= c;
                }
            }
            match out_value(consumer, &p) {
                Ok(expect) => Instance {
                    binding: p,
                    backend: BackendKind::ExactRational,
                    status: if t == expect { Status::Pass } else { Status::Fail },
                    lhs: Some(Side::Rational(t)),
                    rhs: Some(Side::Rational(expect)),
                    rules: Vec::new(),
                    note: Some(fit.clone()),
                },
                Err(e) => Instance::errored(p, BackendKind::ExactRational, &e),
            }
        })
        .collect()
}

/// Checks a declared transform pair in both directions over the non-`n`
/// parameters of `grid`, for `n` up to `grid.n_max`. Instances carry the
/// transformed sum as `lhs`, the partner's signed closed form as `rhs`, and
/// the fitted `λ, μ` in the note.
pub fn transform_crosscheck(
    a: &IdentityDescriptor,
    b: &IdentityDescriptor,
    grid: &GridSpec,
) -> Result<VerificationReport> {
    let start = Instant::now();
    let related = a.relation_to(b.id).or_else(|| b.relation_to(a.id));
    if !related.is_some_and(|r| r.kind.is_transform()) {
        return Err(Error::RelationMissing {
            kind: "binomial-transform".into(),
            from: a.id.to_string(),
            to: b.id.to_string(),
        });
    }
    alt_parts(a)?;
    alt_parts(b)?;
    let slice_grid = GridSpec {
        n_min: grid.n_max,
        n_max: grid.n_max,
        ..grid.clone()
    };
    let slices: Vec<ParamBinding> = slice_grid
        .raw_bindings(a)
        .into_iter()
        .filter(|p| a.check_domain(p).is_ok() && b.check_domain(p).is_ok())
        .collect();
    let instances: Vec<Instance> = slices
        .par_iter()
        .flat_map_iter(|s| {
            let mut v = one_direction(a, b, s, grid.n_max);
            v.extend(one_direction(b, a, s, grid.n_max));
            v
        })
        .collect();
    let id = format!("{}~{}", a.id, b.id);
    Ok(VerificationReport::new(&id, "transform", instances, 0, start))
}

/// Zero-pads `seq` to start at index 0 when its first entry is at `k0`.
pub fn pad_from(k0: usize, seq: Vec<Rational>) -> Vec<Rational> {
    let mut out = vec![int(0); k0];
    out.extend(seq);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratcore::frac;
    use crate::registry::get_identity;

    #[test]
    fn transform_of_small_sequences() {
        let ones = vec![int(1); 5];
        assert_eq!(binomial_transform(&ones), vec![int(1), int(0), int(0), int(0), int(0)]);
        let s = vec![int(3), frac(1, 2), int(-7), frac(2, 9)];
        assert_eq!(binomial_transform(&binomial_transform(&s)), s);
        let g = binomial_transform_seq(&RationalBackend, &s).unwrap();
        assert_eq!(g, binomial_transform(&s));
    }

    #[test]
    fn pairs_cross_check() {
        let grid = GridSpec::integer(0, 8, 3);
        for (a, b) in [
            ("eq.jm6rck7", "eq.u1t9s6r"),
            ("eq.fqnumdk", "eq.b357dyz"),
            ("eq.soe68bj", "eq.lht3ics"),
            ("main_id1", "main_id1b"),
        ] {
            let r = transform_crosscheck(get_identity(a).unwrap(), get_identity(b).unwrap(), &grid).unwrap();
            assert!(r.all_ok(), "{a} {b}: {:?}", r.failures().next());
            assert!(r.summary.pass > 0);
        }
    }

    #[test]
    fn unrelated_pair_is_rejected() {
        let a = get_identity("eq.jm6rck7").unwrap();
        let b = get_identity("eq.awov07j").unwrap();
        assert!(matches!(
            transform_crosscheck(a, b, &GridSpec::new(0, 4)),
            Err(Error::RelationMissing { .. })
        ));
    }
}
