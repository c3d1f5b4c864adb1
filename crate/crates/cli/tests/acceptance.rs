//! Acceptance run: one PASS/FAIL line per criterion, each under its runtime
//! bound. Exits nonzero if any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use diophant_core::constants::{constant, pi, REGISTRY};
use diophant_core::contfrac::{
    cf_series_partial, convergents, expand, from_rational, ContinuedFraction, KHINCHIN_CONSTANT,
};
use diophant_core::diagnostics::approximation_quality;
use diophant_core::lseries::{
    autoconvolution_coefficient, beta_plain, beta_value, chi_mod4, closed_form, conv_partial_exact,
    conv_partial_exact_at, divisor_count, tail_bound, zeta_value, ClosedFormKind,
};
use diophant_core::numerics::{decimal_digits, make_rational, BallReal, Precision, Rational, Truth};
use diophant_core::stats::{coincidence_density, divisor_sieve, hyperbola_sum};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

type Outcome = Result<String, String>;

/// Name, runtime bound in seconds, check.
type Criterion = (&'static str, u64, fn() -> Outcome);

const CATALAN_50: &str = "0.91596559417721901505460351493238411077414937428167";
const BETA3_50: &str = "0.96894614625936938048363484584691860006954026768391";
const QUARTER_PI_50: &str = "0.78539816339744830961566084581987572104929234984378";
const AUDIT_GRID: &str = "99,999,9999,99999";

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn bits(b: u32) -> Precision {
    Precision::new(b).unwrap()
}

fn cli(args: &[&str]) -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_diophant"))
        .args(args)
        .env_remove("DIOPHANT_PRECISION_BITS")
        .output()
        .map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!(
            "diophant {} exited with {:?}: {}",
            args.join(" "),
            out.status.code(),
            String::from_utf8_lossy(&out.stderr)
        ));
    }
    Ok(out.stdout)
}

fn cli_json(args: &[&str]) -> Result<Value, String> {
    serde_json::from_slice(&cli(args)?).map_err(|e| e.to_string())
}

fn schema_errors(instance: &Value, schema_name: &str) -> Vec<String> {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../docs/schema/").to_string() + schema_name + ".schema.json";
    let schema: Value =
        serde_json::from_str(&std::fs::read_to_string(&path).expect("schema file")).expect("schema json");
    let validator = jsonschema::validator_for(&schema).expect("valid schema");
    validator
        .iter_errors(instance)
        .map(|e| format!("{e} at {}", e.instance_path))
        .collect()
}

/// The first `k` digits of both balls agree, where `k` is the number both
/// certify.
fn agree_on_certified(a: &BallReal, b: &BallReal, n: usize) -> Result<usize, String> {
    let ra = decimal_digits(a, n).map_err(|e| e.to_string())?;
    let rb = decimal_digits(b, n).map_err(|e| e.to_string())?;
    let k = ra.certified.min(rb.certified);
    ensure(k > 0, "no common certified digits")?;
    let ta = decimal_digits(a, k).unwrap().text;
    let tb = decimal_digits(b, k).unwrap().text;
    ensure(ta == tb, format!("{ta} != {tb} at {k} digits"))?;
    Ok(k)
}

fn ac1() -> Outcome {
    let out = cli(&["constants", "catalan", "--digits", "9"])?;
    ensure(
        out == b"0.915965594\n",
        format!("got {:?}", String::from_utf8_lossy(&out)),
    )?;

    let p = Precision::for_decimal_digits(50);
    let accelerated = beta_value(2, p).map_err(|e| e.to_string())?;
    let plain = beta_plain(2, 1_000_000, p).map_err(|e| e.to_string())?;
    let acc = decimal_digits(&accelerated, 50).unwrap();
    ensure(
        acc.certified == 50,
        format!("accelerated route certifies {} digits", acc.certified),
    )?;
    ensure(acc.text == CATALAN_50, format!("accelerated route gives {}", acc.text))?;
    let common = agree_on_certified(&accelerated, &plain, 50)?;
    Ok(format!(
        "9 digits exact; routes agree on {common} mutually certified digits, accelerated certifies 50"
    ))
}

fn ac2() -> Outcome {
    let p = Precision::for_decimal_digits(50);
    let guard = bits(p.bits() + 32);
    let beta3 = beta_value(3, p).map_err(|e| e.to_string())?;
    let form3 = closed_form(ClosedFormKind::BetaOdd, 1).unwrap();
    ensure(
        form3.coefficient == make_rational(1, 32).unwrap() && form3.pi_power == 3,
        "beta(3) closed form",
    )?;
    let pi3 = pi(guard).pow(3).mul_rational(&form3.coefficient).with_precision(p);
    for (ball, oracle) in [(&beta3, BETA3_50), (&pi3, BETA3_50)] {
        let r = decimal_digits(ball, 50).unwrap();
        ensure(
            r.certified == 50 && r.text == oracle,
            format!("beta(3) route gives {} ({} certified)", r.text, r.certified),
        )?;
    }

    let beta1 = beta_value(1, p).map_err(|e| e.to_string())?;
    let form1 = closed_form(ClosedFormKind::BetaOdd, 0).unwrap();
    ensure(
        form1.coefficient == make_rational(1, 4).unwrap() && form1.pi_power == 1,
        "beta(1) closed form",
    )?;
    let quarter_pi = pi(guard).mul_rational(&form1.coefficient).with_precision(p);
    for ball in [&beta1, &quarter_pi] {
        let r = decimal_digits(ball, 50).unwrap();
        ensure(
            r.certified == 50 && r.text == QUARTER_PI_50,
            format!("beta(1) route gives {}", r.text),
        )?;
    }

    let zeta2 = zeta_value(2, bits(128)).map_err(|e| e.to_string())?;
    let form2 = closed_form(ClosedFormKind::ZetaEven, 1).unwrap();
    ensure(
        form2.coefficient == make_rational(1, 6).unwrap() && form2.pi_power == 2,
        "zeta(2) closed form",
    )?;
    let sixth = pi(bits(160)).square().mul_rational(&form2.coefficient);
    let diff = zeta2.sub_ball(&sixth).abs();
    let tol = Rational::new(BigInt::from(1), BigInt::from(10).pow(12)).unwrap();
    ensure(
        diff.le_rational(&tol) == Truth::True,
        "zeta(2) series differs from pi^2/6 by more than 1e-12",
    )?;
    Ok("beta(3) = pi^3/32 and beta(1) = pi/4 to 50 digits; |zeta(2) - pi^2/6| <= 1e-12".into())
}

fn ac3() -> Outcome {
    let square = beta_value(2, bits(512)).map_err(|e| e.to_string())?.square();
    for x in [100u64, 1_000, 10_000] {
        let partial = conv_partial_exact(2, x).map_err(|e| e.to_string())?;
        let gap = square.sub_rational(&partial.value).abs();
        let tail = tail_bound(2, x).unwrap();
        ensure(
            gap.le_rational(&tail) == Truth::True,
            format!("gap exceeds tail bound at x = {x}"),
        )?;
    }
    const N: usize = 10_000;
    let mut conv = vec![0i64; N + 1];
    for d in 1..=N {
        let cd = chi_mod4(d as u64) as i64;
        if cd == 0 {
            continue;
        }
        for m in 1..=N / d {
            conv[d * m] += cd * chi_mod4(m as u64) as i64;
        }
    }
    for (n, &value) in conv.iter().enumerate().skip(1) {
        let expected = divisor_count(n as u64) as i64 * chi_mod4(n as u64) as i64;
        ensure(
            value == expected,
            format!("convolution at n = {n}: {value} != {expected}"),
        )?;
        ensure(
            autoconvolution_coefficient(n as u64) == expected,
            format!("coefficient at n = {n}"),
        )?;
    }
    Ok("tail bound sound at 1e2, 1e3, 1e4; a(n) = d(n) chi(n) for n <= 1e4".into())
}

fn check_identities(cf: &ContinuedFraction) -> Result<usize, String> {
    let c = convergents(cf, cf.len()).items;
    let sign = |n: usize| {
        if n.is_multiple_of(2) {
            BigInt::from(1)
        } else {
            BigInt::from(-1)
        }
    };
    for n in 1..c.len() {
        let lhs = &c[n - 1].p * &c[n].q - &c[n].p * &c[n - 1].q;
        ensure(lhs == sign(n), format!("first determinant fails at n = {n} for {cf}"))?;
    }
    for n in 2..c.len() {
        let lhs = &c[n - 2].p * &c[n].q - &c[n].p * &c[n - 2].q;
        let rhs = -sign(n) * cf.term(n).unwrap();
        ensure(lhs == rhs, format!("second determinant fails at n = {n} for {cf}"))?;
    }
    for (n, conv) in c.iter().enumerate() {
        let series = cf_series_partial(cf, n).map_err(|e| e.to_string())?;
        ensure(
            series == conv.value(),
            format!("series differs from p_n/q_n at n = {n} for {cf}"),
        )?;
    }
    Ok(c.len())
}

fn ac4() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut checked = 0;
    for _ in 0..1000 {
        let p: i64 = rng.gen_range(-1_000_000_000_000..=1_000_000_000_000);
        let q: i64 = rng.gen_range(1..=1_000_000_000_000);
        checked += check_identities(&from_rational(&make_rational(p, q).unwrap()))?;
    }
    for name in ["pi", "sqrt2", "golden", "catalan"] {
        let x = constant(name, bits(2048)).map_err(|e| e.to_string())?;
        let cf = expand(&x, 100).map_err(|e| e.to_string())?;
        ensure(cf.len() == 100, format!("{name} certified only {} terms", cf.len()))?;
        checked += check_identities(&cf)?;
    }
    Ok(format!(
        "{checked} convergents checked (1000 rationals, 4 constants at depth 100)"
    ))
}

fn window_holds(flags: &[Truth], width: usize) -> bool {
    flags.windows(width).all(|w| w.iter().any(|t| t.is_true()))
}

fn ac5() -> Outcome {
    let p = bits(2048);
    let mut targets: Vec<(String, BallReal)> = Vec::new();
    for name in REGISTRY {
        targets.push((name.to_string(), constant(name, p).map_err(|e| e.to_string())?));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for i in 0..20 {
        let mut bytes = vec![0u8; p.bits() as usize / 8];
        rng.fill(&mut bytes[..]);
        let mid = BigInt::from_bytes_le(num_bigint::Sign::Plus, &bytes);
        targets.push((format!("random #{i}"), BallReal::from_raw(mid, 1u32.into(), p)));
    }
    for (name, x) in &targets {
        let cf = expand(x, 102).map_err(|e| e.to_string())?;
        let list = convergents(&cf, 100).items;
        ensure(list.len() == 100, format!("{name}: only {} convergents", list.len()))?;
        let mut dirichlet = Vec::new();
        let mut hurwitz = Vec::new();
        for c in &list {
            let q = approximation_quality(x, c).map_err(|e| format!("{name}: {e}"))?;
            dirichlet.push(q.dirichlet_ok);
            hurwitz.push(q.hurwitz_ok);
        }
        ensure(
            window_holds(&dirichlet, 2),
            format!("{name}: two consecutive Dirichlet failures"),
        )?;
        ensure(
            window_holds(&hurwitz, 3),
            format!("{name}: three consecutive Hurwitz failures"),
        )?;
    }
    let g = constant("golden", bits(512)).unwrap();
    let cf = expand(&g, 32).unwrap();
    let c30 = &convergents(&cf, 31).items[30];
    let scaled = approximation_quality(&g, c30).unwrap().scaled_gap();
    let limit = 1.0 / 5f64.sqrt();
    let rel = (scaled - limit).abs() / limit;
    ensure(rel < 0.01, format!("golden q^2 gap {scaled} at depth 30"))?;
    Ok(format!(
        "{} targets x 100 convergents; golden q^2 gap at depth 30 within {:.2e} of 1/sqrt 5",
        targets.len(),
        rel
    ))
}

fn ac6() -> Outcome {
    let xs: Vec<u64> = (1..=1000).collect();
    let sums = conv_partial_exact_at(2, &xs, 1000).map_err(|e| e.to_string())?;
    let mut odd_product = BigInt::from(1);
    for sum in &sums {
        if sum.x % 2 == 1 {
            odd_product *= sum.x;
        }
        let bound = &odd_product * &odd_product;
        ensure(
            (&bound % sum.value.denom()) == BigInt::from(0),
            format!("denominator at x = {} does not divide the odd product squared", sum.x),
        )?;
    }
    Ok("q_x | (1*3*...*x')^2 for every x <= 1000".into())
}

fn ac7() -> Outcome {
    let report = cli_json(&["audit", "--s", "2", "--grid", AUDIT_GRID])?;
    let errors = schema_errors(&report, "audit");
    ensure(errors.is_empty(), format!("schema: {}", errors.join("; ")))?;
    let exponent = report["fitted_exponent"].as_f64().ok_or("no fitted_exponent")?;
    let r2 = report["r2"].as_f64().ok_or("no r2")?;
    let flags = &report["hypothesis_flags"];
    let claim1 = flags["lemma15_claim1"].as_bool().ok_or("no claim-1 flag")?;
    let linear = flags["eq22_qx_le_cx"].as_bool().ok_or("no linear-growth flag")?;
    ensure(report["rows"].as_array().map(|r| r.len()) == Some(4), "expected 4 rows")?;
    Ok(format!(
        "schema-valid; fitted_exponent {exponent:.1}, r2 {r2:.4}, claim1 {claim1}, q_x <= c x {linear}"
    ))
}

fn ac8() -> Outcome {
    let report = coincidence_density(1_000_000, &[1_000, 10_000, 100_000]).map_err(|e| e.to_string())?;
    let limits: Vec<u64> = report.points.iter().map(|p| p.limit).collect();
    ensure(
        limits == [1_000, 10_000, 100_000, 1_000_000],
        format!("checkpoints {limits:?}"),
    )?;
    ensure(report.first_members.first() == Some(&1), "1 is not the first member")?;
    ensure(divisor_count(5) == 2 && divisor_count(7) == 2, "d(5) = d(7) = 2")?;

    let table = divisor_sieve(1_000_000).map_err(|e| e.to_string())?;
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..1000 {
        let n: u64 = rng.gen_range(1..=1_000_000);
        ensure(
            table.get(n as usize) as u64 == divisor_count(n),
            format!("sieve differs at n = {n}"),
        )?;
    }
    let small = divisor_sieve(10_000).unwrap();
    ensure(small.divisor_sum() == hyperbola_sum(10_000), "hyperbola checksum")?;
    let densities: Vec<String> = report
        .points
        .iter()
        .map(|p| format!("{:.4}", p.density.to_f64()))
        .collect();
    Ok(format!(
        "densities {} at 1e3..1e6; checksum {}",
        densities.join(", "),
        small.divisor_sum()
    ))
}

fn ac9() -> Outcome {
    let mut levy = 0.0;
    let mut khinchin = 0.0;
    for seed in 0..20u64 {
        let seed = seed.to_string();
        let report = cli_json(&[
            "cf",
            "stats",
            "random",
            "--terms",
            "500",
            "--precision",
            "4096",
            "--seed",
            &seed,
        ])?;
        levy += report["levy_slope"].as_f64().ok_or("no levy_slope")?;
        khinchin += report["khinchine_mean"].as_f64().ok_or("no khinchine_mean")?;
    }
    levy /= 20.0;
    khinchin /= 20.0;
    let levy_limit = std::f64::consts::PI.powi(2) / (12.0 * std::f64::consts::LN_2);
    ensure((KHINCHIN_CONSTANT - 2.685_452_00).abs() < 1e-8, "Khinchin constant")?;
    let levy_rel = (levy - levy_limit).abs() / levy_limit;
    let khinchin_rel = (khinchin - 2.685_452_00).abs() / 2.685_452_00;
    ensure(levy_rel < 0.05, format!("mean levy slope {levy}"))?;
    ensure(khinchin_rel < 0.05, format!("mean khinchin {khinchin}"))?;
    Ok(format!(
        "mean levy {levy:.4} ({levy_rel:.2e} off), mean khinchin {khinchin:.4} ({khinchin_rel:.2e} off)"
    ))
}

fn ac10() -> Outcome {
    let commands: [&[&str]; 6] = [
        &["constants", "catalan", "--digits", "9"],
        &["constants", "catalan", "--digits", "50", "--format", "json"],
        &["audit", "--s", "2", "--grid", AUDIT_GRID],
        &["audit", "--s", "2", "--grid", AUDIT_GRID, "--format", "csv"],
        &[
            "cf",
            "stats",
            "random",
            "--terms",
            "500",
            "--precision",
            "4096",
            "--seed",
            "3",
        ],
        &["stats", "density", "--limit", "100000", "--format", "csv"],
    ];
    for args in commands {
        let first = cli(args)?;
        let second = cli(args)?;
        ensure(
            first == second,
            format!("output of `{}` differs between runs", args.join(" ")),
        )?;
    }
    Ok(format!("{} commands byte-identical across two runs", commands.len()))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("AC1 catalan value", 10, ac1),
        ("AC2 closed forms", 10, ac2),
        ("AC3 autoconvolution", 60, ac3),
        ("AC4 continued-fraction identities", 30, ac4),
        ("AC5 approximation criteria", 30, ac5),
        ("AC6 denominator shape", 60, ac6),
        ("AC7 audit deliverable", 300, ac7),
        ("AC8 divisor statistics", 60, ac8),
        ("AC9 levy/khinchin statistics", 60, ac9),
        ("AC10 determinism", 600, ac10),
    ];
    let mut failures = 0;
    for (name, limit, run) in criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let outcome = outcome.and_then(|detail| {
            if elapsed > Duration::from_secs(limit) {
                Err(format!("took {:.1}s, bound {limit}s ({detail})", elapsed.as_secs_f64()))
            } else {
                Ok(detail)
            }
        });
        match outcome {
            Ok(detail) => println!("PASS {name} [{:.2}s] {detail}", elapsed.as_secs_f64()),
            Err(why) => {
                failures += 1;
                println!("FAIL {name} [{:.2}s] {why}", elapsed.as_secs_f64());
            }
        }
    }
    if failures > 0 {
        std::process::exit(1);
    }
}
