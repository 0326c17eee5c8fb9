mod common;

use common::*;
use kahan_core::verify::{self, DEFAULT_SEED};
use kahan_core::{InvariantConstants, Point2, Region, SampleSpec, SystemSpec};

fn quartic_samples() -> SampleSpec {
    SampleSpec::new(
        Region::new(0.2, 2.0, -2.0, 2.0).unwrap(),
        1000,
        DEFAULT_SEED,
    )
    .unwrap()
}

fn sextic_samples() -> SampleSpec {
    SampleSpec::new(
        Region::new(-2.0, 2.0, -2.0, 2.0).unwrap(),
        1000,
        DEFAULT_SEED,
    )
    .unwrap()
}

fn canonical_cases() -> [(SystemSpec, SampleSpec); 2] {
    [
        (quartic_canonical(), quartic_samples()),
        (sextic_canonical(), sextic_samples()),
    ]
}

#[test]
fn canonical_reports_pass() {
    for (sys, samples) in canonical_cases() {
        let c = verify::conservation_report(&sys, 0.05, &samples).unwrap();
        let m = verify::measure_report(&sys, 0.05, &samples).unwrap();
        let r = verify::reversibility_report(sys.field(), 0.05, &samples).unwrap();
        for report in [&c, &m, &r] {
            eprintln!("{} {}: {report}", sys.family(), report.suite);
            assert!(report.passed);
            assert_eq!(report.samples_used, 1000);
        }
    }
}

#[test]
fn random_parameter_reports_pass() {
    let mut rng = rng(41);
    let samples = SampleSpec::new(Region::new(-2.0, 2.0, -2.0, 2.0).unwrap(), 300, 9).unwrap();
    for k in 0..20 {
        let sys = if k % 2 == 0 {
            random_quartic(&mut rng)
        } else {
            random_sextic(&mut rng)
        };
        let c = verify::conservation_report(&sys, 0.05, &samples).unwrap();
        let m = verify::measure_report(&sys, 0.05, &samples).unwrap();
        assert!(c.passed, "{:?}: {c}", sys.params());
        assert!(m.passed, "{:?}: {m}", sys.params());
    }
}

#[test]
fn tiny_step_measure_violation() {
    for (sys, samples) in canonical_cases() {
        let m = verify::measure_report(&sys, 1e-8, &samples).unwrap();
        assert!(m.max_violation <= 1e-12, "{m}");
    }
}

#[test]
fn reports_are_deterministic() {
    let (sys, samples) = canonical_cases()[1].clone();
    let a = verify::conservation_report(&sys, 0.05, &samples).unwrap();
    let b = verify::conservation_report(&sys, 0.05, &samples).unwrap();
    assert_eq!(a, b);
    assert_eq!(a.max_violation.to_bits(), b.max_violation.to_bits());
    assert_eq!(a.mean_violation.to_bits(), b.mean_violation.to_bits());
    let other =
        verify::conservation_report(&sys, 0.05, &SampleSpec { seed: 1, ..samples }).unwrap();
    assert_ne!(a.mean_violation, other.mean_violation);
}

#[test]
fn rejected_samples_have_reasons() {
    let sys = sextic_canonical();
    let samples = SampleSpec::new(Region::new(-2.0, 2.0, -2.0, 2.0).unwrap(), 500, 5).unwrap();
    for report in [
        verify::conservation_report(&sys, 0.05, &samples).unwrap(),
        verify::measure_report(&sys, 0.05, &samples).unwrap(),
    ] {
        assert!(report.rejections.total() > 0);
        assert_eq!(
            report.samples_attempted,
            report.samples_used + report.rejections.total()
        );
    }
}

fn perturbed(constants: InvariantConstants, index: usize, factor: f64) -> InvariantConstants {
    match constants {
        InvariantConstants::Quartic(mut k) => {
            match index {
                0 => k.big_d *= factor,
                _ => k.big_e *= factor,
            }
            InvariantConstants::Quartic(k)
        }
        InvariantConstants::Sextic(mut k) => {
            match index {
                0 => k.a3 *= factor,
                1 => k.a4 *= factor,
                2 => k.a5 *= factor,
                3 => k.a6 *= factor,
                _ => k.a7 *= factor,
            }
            InvariantConstants::Sextic(k)
        }
    }
}

#[test]
fn perturbed_constants_fail_conservation() {
    let h = 0.05;
    for (sys, samples) in canonical_cases() {
        let base = sys.invariant_constants(h);
        for index in 0..base
            .labeled()
            .len()
            .min(if sys.family() == kahan_core::Family::Quartic {
                2
            } else {
                5
            })
        {
            let k = perturbed(base, index, 1.1);
            let r = verify::conservation_report_with_constants(&sys, h, &samples, &k).unwrap();
            eprintln!("{} #{index}: max {:e}", sys.family(), r.max_violation);
            assert!(r.max_violation > 1e-6 && !r.passed);
        }
    }
}

#[test]
fn dropping_jacobian_factor_fails_measure() {
    for (sys, samples) in canonical_cases() {
        let r = verify::measure_report_with(&sys, 0.05, &samples, |_, _, _| Ok(1.0)).unwrap();
        assert!(!r.passed && r.max_violation > 1e-6);
    }
}

#[test]
fn drift_scan_separates_exact_and_corrupted() {
    let sys = quartic_canonical();
    let p0 = Point2::new(1.0, 1.0);
    let hs = [0.04, 0.02, 0.01, 0.005];
    let exact = verify::h_drift_scan(&sys, p0, 50, &hs).unwrap();
    eprintln!("{exact}");
    assert!(exact.passed && exact.max_violation <= 1e-9);

    // H / P₁: the P₂ factor dropped
    let corrupted = verify::h_drift_scan_with(&sys, p0, 5, &hs, |s, h, p| {
        let InvariantConstants::Quartic(k) = s.invariant_constants(h) else {
            unreachable!()
        };
        let (l, q) = (p.x, p.x * p.x + p.y * p.y);
        Ok(s.hamiltonian(p)? / (1.0 + h * h * k.big_d * l * l + h * h * k.big_e * q))
    })
    .unwrap();
    eprintln!("{corrupted}");
    assert!(!corrupted.passed);
    let k = corrupted.fitted_exponent.unwrap();
    assert!(k >= 1.8, "exponent {k}");
}
