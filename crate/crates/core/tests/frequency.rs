use std::f64::consts::PI;

use halfplane::frequency::{Deriv, FrequencyDomain, Ray};
use halfplane::{Component, FieldPoint, Profile, QuadratureSpec, ScenarioConfig};
use num_complex::Complex64;

fn fd() -> FrequencyDomain {
    FrequencyDomain::new(&ScenarioConfig::reference(), &Profile::heaviside(), QuadratureSpec::default())
}

#[test]
fn scattered_boundary_data() {
    let fd = fd();
    let omega = Complex64::new(1.0, 0.6);
    let g = fd.gain(omega).unwrap();
    let n1 = (PI + fd.scenario.alpha).cos();
    for x1 in [0.2, 1.0, 3.0] {
        let want = -g * (Complex64::new(0.0, 1.0) * omega * n1 * x1).exp();
        for phi in [0.0, 2.0 * PI] {
            let v = fd.hat_scattered(FieldPoint::new(x1, phi).unwrap(), omega).unwrap();
            assert!((v - want).norm() < 1e-9 * want.norm().max(1.0), "x1={x1} phi={phi}: {v} vs {want}");
        }
    }
}

#[test]
fn reflected_jump_matches_closed_form() {
    let fd = fd();
    let omega = Complex64::new(1.0, 1.0);
    let rho = 1.0;
    let want = fd.gain(omega).unwrap() * (Complex64::new(0.0, 1.0) * omega * rho).exp();
    let j = fd.jump(Component::Reflected, Deriv::Value, rho, omega, Ray::PhiMinus, 1e-2, 6).unwrap();
    assert!((j.value - want).norm() < 1e-8, "{} vs {want}", j.value);
    let d = fd.jump_direct(Component::Reflected, Deriv::Value, rho, omega, Ray::PhiMinus).unwrap();
    assert!((d - want).norm() < 1e-14);
}

#[test]
fn diffracted_jump_cancels_reflected() {
    let fd = fd();
    let omega = Complex64::new(1.0, 0.5);
    for rho in [0.5, 2.0] {
        let jr = fd.jump_direct(Component::Reflected, Deriv::Value, rho, omega, Ray::PhiMinus).unwrap();
        let jd = fd.jump(Component::Diffracted, Deriv::Value, rho, omega, Ray::PhiMinus, 1e-2, 6).unwrap();
        assert!((jr + jd.value).norm() < 1e-6, "rho={rho}: {jr} + {}", jd.value);
        let jdd = fd.jump_direct(Component::Diffracted, Deriv::Value, rho, omega, Ray::PhiMinus).unwrap();
        assert!((jr + jdd).norm() < 1e-9);
    }
}

#[test]
fn scattered_has_no_jumps() {
    let fd = fd();
    let omega = Complex64::new(0.8, 0.5);
    for ray in [Ray::PhiMinus, Ray::PhiPlus] {
        for d in [Deriv::Value, Deriv::DPhi, Deriv::DPhiPhi] {
            let j = fd.jump(Component::Scattered, d, 1.0, omega, ray, 1e-2, 6).unwrap();
            assert!(j.value.norm() < 1e-5, "{ray:?} {d:?}: {}", j.value);
            let jd = fd.jump_direct(Component::Scattered, d, 1.0, omega, ray).unwrap();
            assert!(jd.norm() < 1e-8, "{ray:?} {d:?} direct: {jd}");
        }
    }
}

#[test]
fn helmholtz_residual_is_second_order() {
    let fd = fd();
    let omega = Complex64::new(1.0, 0.5);
    let p = FieldPoint::new(2.0, PI).unwrap();
    let r1 = fd.helmholtz_residual(Component::Diffracted, p, omega, 4e-2).unwrap();
    let r2 = fd.helmholtz_residual(Component::Diffracted, p, omega, 2e-2).unwrap();
    let r3 = fd.helmholtz_residual(Component::Diffracted, p, omega, 1e-2).unwrap();
    for (a, b) in [(r1, r2), (r2, r3)] {
        let order = (a / b).log2();
        assert!((1.7..2.3).contains(&order), "order {order} ({a}, {b})");
    }
    let across = FieldPoint::new(1.5, fd.scenario.phi_minus + 5e-3).unwrap();
    assert!(fd.helmholtz_residual(Component::Scattered, across, omega, 1e-2).unwrap() < 1e-3);
    assert!(fd.helmholtz_residual(Component::Reflected, across, omega, 1e-2).is_err());
}

#[test]
fn decay_fit_rate_is_positive() {
    let fd = fd();
    let omega = Complex64::new(1.0, 0.5);
    let rhos: Vec<f64> = (0..16).map(|k| 0.5 * (60f64).powf(k as f64 / 15.0)).collect();
    for phi in [0.3, PI, 1.9 * PI] {
        let fit = fd.decay_fit(Component::Scattered, Deriv::Value, phi, omega, &rhos).unwrap();
        assert!(fit.rate > 0.9 * fit.expected_rate, "phi={phi}: {} vs {}", fit.rate, fit.expected_rate);
    }
}

#[test]
fn transform_of_time_domain_matches() {
    let fd = fd();
    let omega = Complex64::new(1.0, 0.5);
    let p = FieldPoint::new(1.0, PI).unwrap();
    let want = fd.hat_diffracted(p, omega).unwrap();
    let got = fd.numeric_transform(Component::Diffracted, p, omega, 1e-9).unwrap();
    assert!((got - want).norm() < 1e-6 * want.norm(), "{got} vs {want}");
    let q = FieldPoint::new(1.0, PI / 4.0).unwrap();
    let want = fd.hat_reflected(q, omega).unwrap();
    let got = fd.numeric_transform(Component::Reflected, q, omega, 1e-10).unwrap();
    assert!((got - want).norm() < 1e-7 * want.norm(), "{got} vs {want}");
}
