//! Acceptance criteria 1-12. Each criterion prints one PASS/FAIL line; the
//! test fails if any criterion fails.

use pvarlab::grid::{gen_staircase, gen_tent_scaled, Exponent};
use pvarlab::harness::{run_suite, CheckReport, Section, SuiteConfig};
use pvarlab::mixednorm::w_p;
use pvarlab::pvar1d::pvar;
use std::process::Command;
use std::time::{Duration, Instant};

const SEED: u64 = 7;

struct Outcome {
    pass: bool,
    detail: String,
}

fn run(sections: &[Section], tweak: impl FnOnce(&mut SuiteConfig)) -> (CheckReport, Duration) {
    let mut cfg = SuiteConfig {
        seed: SEED,
        sections: sections.to_vec(),
        ..SuiteConfig::default()
    };
    tweak(&mut cfg);
    let t = Instant::now();
    let report = run_suite(&cfg).expect("valid configuration");
    (report, t.elapsed())
}

/// All checks whose id starts with one of `prefixes` must pass, and at least
/// one must exist for every prefix. Section-level errors count as failures.
fn checks(report: &CheckReport, prefixes: &[&str]) -> Outcome {
    let mut failed = Vec::new();
    let mut total = 0;
    for prefix in prefixes {
        let matching: Vec<_> = report
            .checks
            .iter()
            .filter(|c| c.id.starts_with(prefix))
            .collect();
        if matching.is_empty() {
            failed.push(format!("{prefix}: no checks"));
        }
        total += matching.len();
        for c in matching.into_iter().filter(|c| !c.pass) {
            failed.push(format!(
                "{} [{}] lhs={:e} rhs={:e}",
                c.id, c.inputs, c.lhs, c.rhs
            ));
        }
    }
    for c in report
        .checks
        .iter()
        .filter(|c| c.id.ends_with(".completed"))
    {
        failed.push(format!("{} [{}]", c.id, c.inputs));
    }
    Outcome {
        pass: failed.is_empty(),
        detail: if failed.is_empty() {
            format!("{total} checks")
        } else {
            failed.join("; ")
        },
    }
}

fn within(mut o: Outcome, elapsed: Duration, budget: Duration) -> Outcome {
    o.detail = format!("{}; {:.1?} (budget {:?})", o.detail, elapsed, budget);
    if elapsed >= budget {
        o.pass = false;
    }
    o
}

fn c1() -> Outcome {
    let (r, t) = run(&[Section::PvarOracle], |c| {
        c.pvar_oracle_count = 1000;
        c.pvar_oracle_max_len = 12;
    });
    within(checks(&r, &["pvar-oracle.dp"]), t, Duration::from_secs(10))
}

fn c2() -> Outcome {
    let mut worst = 0.0f64;
    for p in [1.0, 1.5, 2.0, 3.0] {
        let e = Exponent::new(p).unwrap();
        for n in [1usize, 2, 4, 8] {
            for per in [4usize, 8, 16] {
                let v = pvar(&gen_tent_scaled(n, per * n).unwrap(), e);
                let expect = 2f64.powf(1.0 / p - 1.0) * (n as f64).powf(1.0 / p);
                worst = worst.max((v - expect).abs());
            }
        }
    }
    Outcome {
        pass: worst <= 1e-12,
        detail: format!("max |error| = {worst:e} (tolerance 1e-12)"),
    }
}

fn c3_c4() -> (Outcome, Outcome) {
    let (r, t) = run(&[Section::VitaliOracle], |c| {
        c.vitali_oracle_count = 500;
        c.vitali_oracle_size = 6;
    });
    let c3 = checks(
        &r,
        &[
            "vitali-oracle.ascent-is-lower-bound",
            "vitali-oracle.ascent-hit-rate",
            "vitali-oracle.product-ascent",
            "vitali-oracle.finest-at-p1",
        ],
    );
    (
        within(c3, t, Duration::from_secs(60)),
        checks(&r, &["vitali-oracle.product-identity"]),
    )
}

fn c10(report: &CheckReport) -> Outcome {
    let mut o = checks(
        report,
        &[
            "mixed-norm.staircase-net",
            "mixed-norm.series-profile",
            "mixed-norm.series-vitali-monotone",
            "mixed-norm.series-vitali-growth",
        ],
    );
    // The staircase itself (not a derived function) must have W_p = 0.
    let mut worst = 0.0f64;
    for size in [16usize, 32, 64] {
        let stair = gen_staircase(size).unwrap();
        for p in [1.0, 1.5, 2.0, 3.0] {
            worst = worst.max(w_p(&stair, Exponent::new(p).unwrap()));
        }
    }
    if worst != 0.0 {
        o.pass = false;
        o.detail = format!("{}; staircase W_p = {worst} (expected 0)", o.detail);
    } else {
        o.detail = format!("{}; staircase W_p = 0", o.detail);
    }
    o
}

fn c12() -> Outcome {
    let verify = || {
        let out = Command::new(env!("CARGO_BIN_EXE_pvarlab"))
            .args(["verify", "--suite", "all", "--seed", "7"])
            .env("SOURCE_DATE_EPOCH", "0")
            .output()
            .expect("binary runs");
        (out.status.code(), out.stdout)
    };
    let (a, b) = (verify(), verify());
    let pass = a == b && !a.1.is_empty();
    Outcome {
        pass,
        detail: format!(
            "exit codes {:?}/{:?}; {} vs {} bytes",
            a.0,
            b.0,
            a.1.len(),
            b.1.len()
        ),
    }
}

#[test]
fn acceptance() {
    let mut results: Vec<(usize, Outcome)> = Vec::new();
    results.push((1, c1()));
    results.push((2, c2()));
    let (c3, c4) = c3_c4();
    results.push((3, c3));
    results.push((4, c4));
    let (rest, _) = run(
        &[
            Section::Golubov,
            Section::Modulus,
            Section::Lemmas,
            Section::Chain,
            Section::HardyLittlewood,
            Section::MixedNorm,
            Section::Sharpness,
        ],
        |_| {},
    );
    results.push((5, checks(&rest, &["golubov.identity"])));
    results.push((
        6,
        checks(
            &rest,
            &[
                "hardy-littlewood.relative-gap",
                "hardy-littlewood.pointwise",
            ],
        ),
    ));
    results.push((
        7,
        checks(
            &rest,
            &[
                "modulus.vitali-bound",
                "chain.k-vs-i",
                "chain.omega-vs-i",
                "chain.j-vs-k",
            ],
        ),
    ));
    results.push((
        8,
        checks(
            &rest,
            &[
                "modulus.table-1d",
                "modulus.table-mixed",
                "modulus.table-isotropic",
                "modulus.averaged",
                "modulus.omega-sandwich",
                "lemmas.difference-modulus",
            ],
        ),
    ));
    results.push((9, checks(&rest, &["sharpness."])));
    results.push((10, c10(&rest)));
    results.push((11, checks(&rest, &["chain.refinement-"])));
    results.push((12, c12()));

    for (n, o) in &results {
        println!(
            "criterion {n:>2}: {} — {}",
            if o.pass { "PASS" } else { "FAIL" },
            o.detail
        );
    }
    let failed: Vec<usize> = results
        .iter()
        .filter(|(_, o)| !o.pass)
        .map(|(n, _)| *n)
        .collect();
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
