//! The ten acceptance criteria. Each prints one PASS/FAIL line; the process
//! exits non-zero if any criterion fails.

use std::process::{Command, Output};
use std::time::Instant;

use hfverify_core::expr::RationalBackend;
use hfverify_core::halfint::{binomial_half, gen_binomial_exact, harmonic_exact, BinomialShape};
use hfverify_core::psinterval::{gen_binomial_enclosure, harmonic2_enclosure, harmonic_enclosure};
use hfverify_core::ratcore::{frac, int};
use hfverify_core::registry::{get_identity, list_identities, IdentityDescriptor, ParamBinding};
use hfverify_core::verify::{
    binomial_transform, derivative_at_probe, fuzz_bindings, mth_power_sum_closed_form,
    mth_power_sum_direct, transform_crosscheck, verify_exact, verify_exact_with,
    verify_interval_bindings, ExactMode, FuzzSpec, GridSpec, VerificationReport,
};
use hfverify_core::{ConstExpr, IntervalValue, Precision, Rational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Seed for the interval bindings of criterion 6.
const INTERVAL_SEED: u64 = 20_240_601;
/// Seed for the random sequences of criterion 9.
const SEQUENCE_SEED: u64 = 9;
/// Width target of criterion 6.
const EPS_BITS_INTERVAL: u32 = 64;
/// Width target of criterion 7.
const EPS_BITS_CONTAINMENT: u32 = 80;
/// Precision used to enclose exact ring values for containment.
const REFERENCE_BITS: u32 = 200;

type Outcome = Result<String, String>;

fn ids_between(first: &str, last: &str) -> Vec<&'static IdentityDescriptor> {
    let all = list_identities();
    let a = all.iter().position(|d| d.id == first).expect("first id");
    let b = all.iter().position(|d| d.id == last).expect("last id");
    all[a..=b].iter().collect()
}

fn require_all_pass(reports: &[VerificationReport]) -> Outcome {
    let mut pass = 0;
    let mut skipped = 0;
    for r in reports {
        if let Some(bad) = r.failures().next() {
            return Err(format!(
                "{} at {}: {} ({})",
                r.id,
                bad.binding,
                bad.status.name(),
                bad.note.clone().unwrap_or_default()
            ));
        }
        pass += r.summary.pass;
        skipped += r.summary.skipped_pole;
    }
    if pass == 0 {
        return Err("no instances ran".into());
    }
    Ok(format!("{pass} instances pass, {skipped} skipped poles"))
}

fn criterion_1() -> Outcome {
    let d = get_identity("Id_Frisch").unwrap();
    let r = verify_exact(d, &GridSpec::integer(1, 40, 8));
    let out = require_all_pass(std::slice::from_ref(&r))?;
    if r.summary.pass != 40 * 36 {
        return Err(format!("expected 1440 instances, got {}", r.summary.pass));
    }
    Ok(out)
}

fn criterion_2() -> Outcome {
    let grid = GridSpec::integer(1, 30, 6);
    let reports: Vec<_> = ids_between("main_id1", "eq.vsafq0i:aux")
        .into_iter()
        .map(|d| verify_exact(d, &grid))
        .collect();
    let n = reports.len();
    require_all_pass(&reports).map(|s| format!("{n} identities; {s}"))
}

fn criterion_3() -> Outcome {
    let grid = GridSpec::new(0, 40);
    let reports: Vec<_> = ids_between("eq.h9wjxs0", "eq.wsi7oju")
        .into_iter()
        .map(|d| verify_exact_with(d, &grid, ExactMode::Ring))
        .collect();
    let n = reports.len();
    require_all_pass(&reports).map(|s| format!("{n} identities in the ring; {s}"))
}

fn criterion_4() -> Outcome {
    let checks = [
        ("cor_id1:b=1", 3, frac(25, 48)),
        ("Bai_id", 1, frac(7, 8)),
        ("main_id22:b=0", 3, frac(-1, 3)),
    ];
    for (id, n, want) in checks {
        let d = get_identity(id).unwrap();
        let p = ParamBinding::new(n);
        let l = d.lhs_value(&p, &RationalBackend).map_err(|e| e.to_string())?;
        let r = d.rhs_value(&p, &RationalBackend).map_err(|e| e.to_string())?;
        if l != want || r != want {
            return Err(format!("{id} n={n}: {l} / {r}, expected {want}"));
        }
    }
    let direct = int(1) - frac(3, 4) + frac(1, 3) - frac(1, 16);
    if direct != frac(25, 48) {
        return Err("direct sum oracle disagrees".into());
    }
    Ok("25/48, 7/8, -1/3 reproduced".into())
}

fn criterion_5() -> Outcome {
    let mut count = 0;
    for n in 1..=15u64 {
        for b in 1..=5 {
            for m in 1..=6 {
                let closed = mth_power_sum_closed_form(n, &int(b), m).map_err(|e| e.to_string())?;
                let direct = mth_power_sum_direct(n, &int(b), m).map_err(|e| e.to_string())?;
                if closed != direct {
                    return Err(format!("n={n} b={b} m={m}: {closed} != {direct}"));
                }
                count += 1;
            }
        }
    }
    if count != 450 {
        return Err(format!("{count} instances"));
    }
    Ok("450 instances agree".into())
}

fn criterion_6() -> Outcome {
    let prec = Precision::bits(EPS_BITS_INTERVAL);
    let mut total = 0;
    for id in ["Id_Frisch", "main_id1", "main_id2", "eq.ufus43q"] {
        let d = get_identity(id).unwrap();
        let draw = fuzz_bindings(d, &FuzzSpec::new(INTERVAL_SEED, 200));
        if draw.bindings.len() != 200 {
            return Err(format!("{id}: only {} bindings drawn", draw.bindings.len()));
        }
        let r = verify_interval_bindings(d, &draw.bindings, &prec);
        if r.summary.pass != 200 {
            let bad = r.failures().next().unwrap();
            return Err(format!("{id} at {}: {}", bad.binding, bad.status.name()));
        }
        total += r.summary.pass;
    }
    Ok(format!("{total} bindings, all enclosures overlap within 2^-{EPS_BITS_INTERVAL}"))
}

fn contains_exact(enclosure: &IntervalValue, exact: &ConstExpr) -> Result<bool, String> {
    let reference = exact
        .eval_interval(&Precision::bits(REFERENCE_BITS))
        .map_err(|e| e.to_string())?;
    Ok(enclosure.contains_interval(&reference))
}

fn criterion_7() -> Outcome {
    let prec = Precision::bits(EPS_BITS_CONTAINMENT);
    let mut checked = 0;
    for twice in -3..=61i64 {
        if twice % 2 == 0 {
            continue;
        }
        let x = frac(twice, 2);
        for order in [1, 2] {
            let exact = harmonic_exact(order, &x).map_err(|e| format!("H^({order})_{x}: {e}"))?;
            let iv = if order == 1 {
                harmonic_enclosure(&x, &prec)
            } else {
                harmonic2_enclosure(&x, &prec)
            }
            .map_err(|e| e.to_string())?;
            if !contains_exact(&iv, &exact)? {
                return Err(format!("H^({order})_{x}: {iv} misses {exact}"));
            }
            checked += 1;
        }
    }
    let half = frac(1, 2);
    for r in 0..=20i64 {
        let mut cases: Vec<(BinomialShape, i64, Rational, Rational)> = vec![
            (BinomialShape::LowerHalf, 0, int(r), half.clone()),
            (BinomialShape::LowerMinusHalf, 0, int(r), -half.clone()),
            (BinomialShape::UpperMinusHalfNext, 0, int(r) - &half, int(r + 1)),
        ];
        for s in 0..=r {
            cases.push((BinomialShape::UpperPlusHalf, s, int(r) + &half, int(s)));
            cases.push((BinomialShape::UpperMinusHalf, s, int(r) - &half, int(s)));
        }
        for (shape, s, upper, lower) in cases {
            let exact = binomial_half(shape, r, s).map_err(|e| e.to_string())?;
            let (via_dispatch, _) = gen_binomial_exact(&upper, &lower).map_err(|e| e.to_string())?;
            if via_dispatch != exact {
                return Err(format!("C({upper}, {lower}): {via_dispatch} != {exact}"));
            }
            let iv = gen_binomial_enclosure(&upper, &lower, &prec).map_err(|e| e.to_string())?;
            if !contains_exact(&iv, &exact)? {
                return Err(format!("C({upper}, {lower}): {iv} misses {exact}"));
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} exact values inside their 2^-{EPS_BITS_CONTAINMENT} enclosures"))
}

fn criterion_8() -> Outcome {
    let prec = Precision::bits(64);
    let mut lines = Vec::new();
    for d in list_identities() {
        for rel in d.relations.iter().filter(|r| r.kind.is_derivative()) {
            let base = get_identity(rel.target).unwrap();
            let c = derivative_at_probe(base, d, &prec).map_err(|e| format!("{}: {e}", d.id))?;
            let ratios: Vec<String> = c
                .sides
                .iter()
                .flat_map(|s| s.ratios.iter().map(|r| format!("{r:.2}")))
                .collect();
            if !c.passed() {
                return Err(format!("{} from {}: ratios {}", d.id, base.id, ratios.join(" ")));
            }
            lines.push(format!("{}<-{} [{}]", d.id, base.id, ratios.join(" ")));
        }
    }
    if lines.is_empty() {
        return Err("no derivative relations declared".into());
    }
    Ok(format!("{} relations: {}", lines.len(), lines.join("; ")))
}

fn criterion_9() -> Outcome {
    let grid = GridSpec::integer(0, 20, 4);
    let mut pairs: Vec<(&str, &str)> = Vec::new();
    for d in list_identities() {
        for r in d.relations.iter().filter(|r| r.kind.is_transform()) {
            if !pairs.contains(&(r.target, d.id)) {
                pairs.push((d.id, r.target));
            }
        }
    }
    let mut reports = Vec::new();
    for (a, b) in &pairs {
        let r = transform_crosscheck(get_identity(a).unwrap(), get_identity(b).unwrap(), &grid)
            .map_err(|e| e.to_string())?;
        reports.push(r);
    }
    let summary = require_all_pass(&reports)?;
    let mut rng = ChaCha8Rng::seed_from_u64(SEQUENCE_SEED);
    for _ in 0..200 {
        let len = rng.gen_range(0..=25);
        let seq: Vec<Rational> = (0..len)
            .map(|_| frac(rng.gen_range(-1_000_000..=1_000_000), rng.gen_range(1..=1000)))
            .collect();
        if binomial_transform(&binomial_transform(&seq)) != seq {
            return Err(format!("involution fails on {seq:?}"));
        }
    }
    Ok(format!("{} pairs, {summary}; involution on 200 sequences", pairs.len()))
}

fn hfverify(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hfverify"))
        .args(args)
        .output()
        .expect("run hfverify")
}

fn criterion_10() -> Outcome {
    let fuzz = ["fuzz", "--id", "Id_Frisch", "--seed", "7", "--count", "100", "--prec", "64"];
    let a = hfverify(&fuzz);
    let b = Command::new(env!("CARGO_BIN_EXE_hfverify"))
        .args(fuzz)
        .env("HF_WORKERS", "1")
        .output()
        .expect("run hfverify");
    if a.stdout != b.stdout || a.stdout.is_empty() {
        return Err("fuzz --seed 7 output differs between runs".into());
    }
    let codes = [
        (vec!["verify", "--id", "Id_Frisch", "--n-max", "10", "--backend", "exact"], 0),
        (vec!["verify", "--id", "cor_id1", "--n-max", "2", "--b", "1", "--backend", "interval", "--prec", "5000"], 1),
        (vec!["verify", "--id", "no_such_id"], 2),
    ];
    for (args, want) in codes {
        let out = hfverify(&args);
        if out.status.code() != Some(want) {
            return Err(format!("{} exited {:?}, expected {want}", args.join(" "), out.status.code()));
        }
    }
    Ok("fuzz output byte-identical; exit codes 0, 1, 2".into())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("Id_Frisch exact grid", criterion_1),
        ("integer-parameter catalog", criterion_2),
        ("half-integer catalog in the ring", criterion_3),
        ("spot values", criterion_4),
        ("power-sum family", criterion_5),
        ("interval engine at random bindings", criterion_6),
        ("enclosure containment", criterion_7),
        ("derivative consistency", criterion_8),
        ("transform pairs and involution", criterion_9),
        ("cli determinism and exit codes", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = f();
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS {name}: {detail} ({secs:.1}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL {name}: {why} ({secs:.1}s)", i + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} of 10 acceptance criteria failed");
        std::process::exit(1);
    }
    println!("all 10 acceptance criteria pass");
}
