//! Finite-difference check of declared derivative relations.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::expr::{eval, IntervalBackend};
use crate::psinterval::{IntervalValue, Precision};
use crate::ratcore::{frac, int, Rational};
use crate::registry::{IdentityDescriptor, ParamBinding};

/// Step sizes, each half the previous.
pub const DEFAULT_STEPS: [(i64, i64); 4] = [(1, 8), (1, 16), (1, 32), (1, 64)];

/// Error ratios between consecutive steps must fall in this band for a
/// second-order central difference.
const RATIO_BAND: (f64, f64) = (3.5, 4.5);

#[derive(Debug, Clone, Serialize)]
pub struct SideCheck {
    pub side: &'static str,
    /// `|CD(h) - target|` for each step.
    pub errors: Vec<f64>,
    /// `errors[i] / errors[i+1]`.
    pub ratios: Vec<f64>,
    /// `|Richardson(h_min) - target|`.
    pub extrapolated_error: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct DerivativeCheck {
    pub base: String,
    pub derived: String,
    pub param: &'static str,
    pub binding: ParamBinding,
    pub steps: Vec<String>,
    pub sides: Vec<SideCheck>,
}

impl DerivativeCheck {
    pub fn passed(&self) -> bool {
        self.sides.iter().all(|s| s.pass)
    }
}

fn mid_f64(v: &IntervalValue) -> f64 {
    use num_traits::ToPrimitive;
    v.midpoint().to_f64().unwrap_or(f64::NAN)
}

/// Compares central differences of `base` in the relation's parameter with
/// the combination of `derived` and `base` that the relation declares, on
/// both sides, at steps `hs` (decreasing by halves). The differences must
/// converge at second order and the Richardson extrapolation must agree with
/// the target to within an eighth of the smallest-step error.
pub fn derivative_consistency(
    base: &IdentityDescriptor,
    derived: &IdentityDescriptor,
    binding: &ParamBinding,
    hs: &[Rational],
    prec: &Precision,
) -> Result<DerivativeCheck> {
    let map = derived
        .relation_to(base.id)
        .and_then(|r| r.kind.is_derivative().then_some(r.derivative).flatten())
        .ok_or_else(|| Error::RelationMissing {
            kind: "derivative".into(),
            from: derived.id.to_string(),
            to: base.id.to_string(),
        })?;
    if hs.len() < 2 {
        return Err(Error::InvalidArgument("need at least two step sizes".into()));
    }
    derived.check_domain(binding)?;
    base.check_domain(binding)?;
    let ib = IntervalBackend::new(prec.bits_needed() + 96);
    type SideFn = fn(&IdentityDescriptor, &ParamBinding, &IntervalBackend) -> Result<IntervalValue>;
    let sides: [(&'static str, SideFn); 2] = [
        ("lhs", |d, p, b| d.lhs_unchecked(p, b)),
        ("rhs", |d, p, b| d.rhs_unchecked(p, b)),
    ];
    let mut out = Vec::new();
    for (name, f) in sides {
        let mut target = f(derived, binding, &ib)?.scale(&int(map.derived_coeff));
        if let Some(bc) = map.base_coeff {
            let coeff = eval(&ib, &bc(binding))?;
            target = &target + &(&coeff * &f(base, binding, &ib)?);
        }
        let cd = |h: &Rational| -> Result<IntervalValue> {
            let up = f(base, &binding.shifted(map.param, h), &ib)?;
            let down = f(base, &binding.shifted(map.param, &-h), &ib)?;
            Ok((&up - &down).scale(&(int(1) / (int(2) * h))))
        };
        let cds = hs.iter().map(cd).collect::<Result<Vec<_>>>()?;
        let errs: Vec<IntervalValue> = cds.iter().map(|c| c - &target).collect();
        let smallest = errs.last().expect("non-empty");
        if smallest.width() * int(100) > smallest.magnitude() {
            return Err(Error::Precision(format!(
                "{}: enclosures too wide to resolve the step error",
                derived.id
            )));
        }
        let errors: Vec<f64> = errs.iter().map(|e| mid_f64(e).abs()).collect();
        let ratios: Vec<f64> = errors.windows(2).map(|w| w[0] / w[1]).collect();
        let k = cds.len();
        let rich = (&cds[k - 1].scale(&int(4)) - &cds[k - 2]).scale(&frac(1, 3));
        let extrapolated_error = mid_f64(&(&rich - &target)).abs();
        let halving = hs.windows(2).all(|w| w[1] == &w[0] / int(2));
        let pass = halving
            && ratios.iter().all(|r| (RATIO_BAND.0..=RATIO_BAND.1).contains(r))
            && extrapolated_error <= errors[k - 1] / 8.0;
        out.push(SideCheck {
            side: name,
            errors,
            ratios,
            extrapolated_error,
            pass,
        });
    }
    Ok(DerivativeCheck {
        base: base.id.to_string(),
        derived: derived.id.to_string(),
        param: map.param.name(),
        binding: binding.clone(),
        steps: hs.iter().map(|h| h.to_string()).collect(),
        sides: out,
    })
}

/// Runs [`derivative_consistency`] at the relation's own probe binding with
/// the default steps.
pub fn derivative_at_probe(
    base: &IdentityDescriptor,
    derived: &IdentityDescriptor,
    prec: &Precision,
) -> Result<DerivativeCheck> {
    let map = derived
        .relation_to(base.id)
        .and_then(|r| r.derivative)
        .ok_or_else(|| Error::RelationMissing {
            kind: "derivative".into(),
            from: derived.id.to_string(),
            to: base.id.to_string(),
        })?;
    let hs: Vec<Rational> = DEFAULT_STEPS.iter().map(|&(a, b)| frac(a, b)).collect();
    derivative_consistency(base, derived, &(map.probe)(), &hs, prec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::registry::{get_identity, list_identities};

    #[test]
    fn every_declared_derivative_converges() {
        let prec = Precision::bits(64);
        let mut seen = 0;
        for d in list_identities() {
            for r in d.relations.iter().filter(|r| r.kind.is_derivative()) {
                let base = get_identity(r.target).unwrap();
                let c = derivative_at_probe(base, d, &prec).unwrap();
                assert!(c.passed(), "{} -> {}: {:?}", base.id, d.id, c.sides);
                seen += 1;
            }
        }
        assert_eq!(seen, 6);
    }

    #[test]
    fn wrong_pairing_is_missing() {
        let a = get_identity("Id_Frisch").unwrap();
        let b = get_identity("cor_id1").unwrap();
        let hs = [frac(1, 8), frac(1, 16)];
        let e = derivative_consistency(a, b, &ParamBinding::new(2).with_b(int(2)), &hs, &Precision::bits(64));
        assert!(matches!(e, Err(Error::RelationMissing { .. })));
    }
}
