use hfverify_core::expr::{BackendKind, ConstBackend, IntervalBackend, RationalBackend};
use hfverify_core::ratcore::{frac, gen_harmonic, harmonic, int};
use hfverify_core::registry::{export_json, get_identity, list_identities, select, ParamBinding};
use hfverify_core::verify::{fuzz_bindings, FuzzSpec};
use hfverify_core::{ConstExpr, Error, Precision, Rational};

#[test]
fn split_halves_add_up() {
    let whole = get_identity("binomial_frac_id").unwrap();
    let split_b = get_identity("cor_id3:split-b").unwrap();
    let split_k = get_identity("cor_id3:split-k").unwrap();
    for n in 1..=30 {
        for b in 1..=6 {
            let p = ParamBinding::new(n).with_b(int(b));
            for side in [0, 1] {
                let val = |d: &hfverify_core::registry::IdentityDescriptor| -> Rational {
                    if side == 0 {
                        d.lhs_value(&p, &RationalBackend).unwrap()
                    } else {
                        d.rhs_value(&p, &RationalBackend).unwrap()
                    }
                };
                assert_eq!(val(split_b) + val(split_k), val(whole), "n={n} b={b} side {side}");
            }
        }
    }
}

#[test]
fn seed_identity_against_a_direct_sum() {
    // sum_k (-1)^k C(n,k) b/(b+k) = 1/C(n+b, n), summed here without the registry
    let d = get_identity("binomial_frac_id").unwrap();
    for n in 0..=12i64 {
        for b in 1..=5i64 {
            let mut direct = Rational::from_integer(0.into());
            let mut c = int(1);
            for k in 0..=n {
                let sign = if k % 2 == 0 { int(1) } else { int(-1) };
                direct += sign * &c / int(b + k);
                c = c * int(n - k) / int(k + 1);
            }
            let p = ParamBinding::new(n).with_b(int(b));
            assert_eq!(d.lhs_value(&p, &RationalBackend).unwrap(), direct);
            assert_eq!(d.rhs_value(&p, &RationalBackend).unwrap(), direct);
        }
    }
}

#[test]
fn harmonic_helpers() {
    assert_eq!(harmonic(4), frac(25, 12));
    assert_eq!(gen_harmonic(3, 2), frac(49, 36));
}

#[test]
fn exact_and_interval_agree_on_random_bindings() {
    let spec = FuzzSpec {
        n_max: 8,
        ..FuzzSpec::new(11, 5)
    };
    let prec = Precision::bits(96);
    let iv = IntervalBackend::new(160);
    let mut compared = 0;
    for d in list_identities() {
        if !d.supports(BackendKind::Interval) {
            continue;
        }
        for p in fuzz_bindings(d, &spec).bindings {
            let enclosure = match d.rhs_value(&p, &iv) {
                Ok(v) => v,
                Err(Error::Pole { .. }) => continue,
                Err(e) => panic!("{} at {p}: {e}", d.id),
            };
            let exact: Option<ConstExpr> = match d.rhs_value(&p, &RationalBackend) {
                Ok(q) => Some(ConstExpr::from_rational(q)),
                Err(_) => d.rhs_value(&p, &ConstBackend::new()).ok(),
            };
            let Some(exact) = exact else { continue };
            let reference = exact.eval_interval(&prec).unwrap();
            assert!(enclosure.overlaps(&reference), "{} at {p}: {enclosure} vs {exact}", d.id);
            compared += 1;
        }
    }
    assert!(compared > 200, "only {compared} comparisons");
}

#[test]
fn selection_and_export() {
    assert!(matches!(get_identity("nope"), Err(Error::UnknownId(_))));
    let exact: Vec<&str> = select("cor_id3").unwrap().iter().map(|d| d.id).collect();
    assert_eq!(exact, ["cor_id3"]);
    let prefixed: Vec<&str> = select("cor_id3:").unwrap().iter().map(|d| d.id).collect();
    assert!(prefixed.contains(&"cor_id3:split-b") && prefixed.contains(&"cor_id3:b=n"));
    let json = export_json();
    let records = json.as_array().unwrap();
    assert_eq!(records.len(), list_identities().len());
    for (r, d) in records.iter().zip(list_identities()) {
        assert_eq!(r["id"], d.id);
    }
}
