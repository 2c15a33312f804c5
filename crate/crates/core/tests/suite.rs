//! Verification suite configuration, report structure and closed forms.

use pvarlab::grid::{gen_sine, gen_staircase, gen_tent_scaled, Exponent};
use pvarlab::harness::{run_suite, CheckEntry, CheckReport, Section, SuiteConfig};
use pvarlab::mixednorm::w_p;
use pvarlab::pvar1d::pvar;
use pvarlab::vitali2d::staircase_net_bound;
use pvarlab::Error;

#[test]
fn empty_suite_passes() {
    let r = run_suite(&SuiteConfig {
        sections: vec![],
        ..SuiteConfig::default()
    })
    .unwrap();
    assert!(r.checks.is_empty() && r.sweeps.is_empty());
    assert_eq!(r.exit_code(), 0);
}

#[test]
fn oversize_oracles_are_rejected() {
    let err = run_suite(&SuiteConfig {
        vitali_oracle_size: 9,
        ..SuiteConfig::default()
    })
    .unwrap_err();
    assert!(matches!(err, Error::OracleLimit { size: 9, .. }), "{err}");
    let err = run_suite(&SuiteConfig {
        pvar_oracle_max_len: 40,
        ..SuiteConfig::default()
    })
    .unwrap_err();
    assert!(matches!(err, Error::OracleLimit { .. }), "{err}");
    let err = run_suite(&SuiteConfig {
        oracle_limit: Some(13),
        ..SuiteConfig::default()
    })
    .unwrap_err();
    assert!(matches!(err, Error::Config(_)), "{err}");
}

#[test]
fn section_names_round_trip() {
    assert_eq!(Section::parse_list("all").unwrap(), Section::ALL.to_vec());
    for s in Section::ALL {
        assert_eq!(s.name().parse::<Section>().unwrap(), s);
    }
    assert!(Section::parse_list("generators,bogus").is_err());
}

#[test]
fn fast_sections_pass() {
    let r = run_suite(&SuiteConfig {
        seed: 5,
        sections: vec![
            Section::Generators,
            Section::PvarOracle,
            Section::VitaliOracle,
            Section::Golubov,
            Section::HardyLittlewood,
            Section::MixedNorm,
        ],
        pvar_oracle_count: 50,
        vitali_oracle_count: 30,
        ..SuiteConfig::default()
    })
    .unwrap();
    let failures: Vec<_> = r
        .failures()
        .map(|c| format!("{} {}", c.id, c.inputs))
        .collect();
    assert!(failures.is_empty(), "{failures:#?}");
    assert!(r.checks.len() > 50);
}

#[test]
fn injected_failure_sets_exit_code() {
    let r = run_suite(&SuiteConfig {
        sections: vec![],
        inject_failure: true,
        ..SuiteConfig::default()
    })
    .unwrap();
    assert_eq!(r.exit_code(), 1);
    assert_eq!(r.failures().count(), 1);
}

#[test]
fn check_entries() {
    let c = CheckEntry::inequality("x", "a <= b", "", 1.0, 1.0 - 1e-14);
    assert!(c.pass, "within relative tolerance");
    let c = CheckEntry::exact("x", "a <= b", "", 1.0, 1.0 - 1e-14);
    assert!(!c.pass);
    let c = CheckEntry::count("x", "count", "", 0, 10);
    assert!(c.pass);
    let c = CheckEntry::failure("x", "ran", "boom");
    assert!(!c.pass);
    let mut r = CheckReport::new(1);
    r.checks.push(c);
    let json: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
    assert_eq!(json["checks"][0]["pass"], false);
    assert!(json["checks"][0]["lhs"].is_null());
    assert!(json["sweeps"].as_array().unwrap().is_empty());
}

#[test]
fn closed_forms() {
    for p in [1.0, 1.5, 2.0, 3.0] {
        let e = Exponent::new(p).unwrap();
        for n in [1usize, 2, 4, 8] {
            let v = pvar(&gen_tent_scaled(n, 32 * n).unwrap(), e);
            assert!((v - 2f64.powf(1.0 / p - 1.0) * (n as f64).powf(1.0 / p)).abs() < 1e-12);
            // Two alternations per period of amplitude 2.
            let s = pvar(&gen_sine(n, 16 * n).unwrap(), e);
            assert!(
                (s - 2.0 * (2.0 * n as f64).powf(1.0 / p)).abs() < 1e-12,
                "p={p} n={n} {s}"
            );
            let b = staircase_net_bound(n.max(2), e, 32).unwrap();
            assert!(b >= (n.max(2) as f64).powf(1.0 / p));
        }
        // On a grid one row and one column section of the staircase are
        // constant, which leaves W_p = 2 * 4^{1/p}.
        let w = w_p(&gen_staircase(32).unwrap(), e);
        assert!((w - 2.0 * 4f64.powf(1.0 / p)).abs() < 1e-12, "{w}");
    }
}

#[test]
fn large_p_integrals_are_bounded_uniformly() {
    use pvarlab::harness::{sharpness_sweep, Family, SweepConfig};
    let pi2 = std::f64::consts::PI.powi(2);
    let ps = [Exponent::new(10.0).unwrap(), Exponent::new(50.0).unwrap()];
    for r in sharpness_sweep(Family::T1xT1, &ps, &[1], &SweepConfig::default()).unwrap() {
        let (k, i) = (r.values["k_hi"], r.values["i_hi"]);
        assert!(k <= 16.0 * pi2, "p={} K.hi={k}", r.p);
        assert!(i <= 16.0 * pi2, "p={} I.hi={i}", r.p);
    }
}
