use std::f64::consts::PI;

use num_complex::Complex64;
use proptest::prelude::*;

use halfplane::config::RunConfig;
use halfplane::frequency::richardson;
use halfplane::scenario::{FieldPoint, ScenarioConfig};
use halfplane::sommerfeld::{fresnel, fresnel_total};
use halfplane::{Component, Kernel};

fn alpha() -> impl Strategy<Value = f64> {
    (PI / 2.0 + 0.05)..(PI - 0.05)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn fresnel_reflection(a in -12.0f64..12.0) {
        let s = fresnel(a) + fresnel(-a);
        prop_assert!((s - 1.0).norm() < 1e-12, "a = {a}: {s}");
    }

    #[test]
    fn stationary_total_vanishes_on_faces(al in alpha(), rho in 0.01f64..20.0, w in 0.2f64..5.0) {
        let sc = ScenarioConfig::new(al, w).unwrap();
        for phi in [0.0, 2.0 * PI - 1e-15] {
            let p = FieldPoint::new(rho, phi).unwrap();
            prop_assert!(fresnel_total(&sc, p).norm() < 1e-9);
        }
    }

    #[test]
    fn kernel_decomposition_reconstructs(
        al in alpha(),
        re in -6.0f64..6.0,
        im in -1.0f64..1.0,
        phi in 0.05f64..(2.0 * PI - 0.05),
    ) {
        let k = Kernel::new(&ScenarioConfig::new(al, 1.0).unwrap());
        let beta = Complex64::new(re, im);
        if let Ok(v) = k.eval_calz(beta, phi) {
            let r = k.decompose(phi).reconstruct(beta);
            prop_assert!((r - v).norm() <= 1e-9 * (1.0 + v.norm()), "{v} vs {r}");
        }
    }

    #[test]
    fn kernel_is_odd_in_beta_conjugate_on_real_axis(
        al in alpha(),
        b in 0.3f64..8.0,
        phi in 0.05f64..(2.0 * PI - 0.05),
    ) {
        // the kernel is real-analytic in β with 𝒵(−β̄) = −conj 𝒵(β) on the real line
        let k = Kernel::new(&ScenarioConfig::new(al, 1.0).unwrap());
        let (Ok(a), Ok(c)) = (k.eval_calz(Complex64::new(b, 0.0), phi), k.eval_calz(Complex64::new(-b, 0.0), phi)) else {
            return Ok(());
        };
        prop_assert!((a + c.conj()).norm() <= 1e-10 * (1.0 + a.norm()), "{a} vs {c}");
    }

    #[test]
    fn richardson_removes_quadratic_error(
        jr in -5.0f64..5.0, ji in -5.0f64..5.0, c1 in -10.0f64..10.0, c2 in -10.0f64..10.0,
    ) {
        let j = Complex64::new(jr, ji);
        let raw: Vec<Complex64> = (0..7)
            .map(|k| {
                let d = 1e-2 * 0.5f64.powi(k);
                j + c1 * d + Complex64::new(0.0, c2) * d * d
            })
            .collect();
        let (v, err) = richardson(&raw);
        prop_assert!((v - j).norm() < 1e-12);
        prop_assert!(err < 1e-12);
    }

    #[test]
    fn config_round_trips(
        al in alpha(),
        w in 0.1f64..10.0,
        lo in 0.01f64..1.0,
        span in 0.5f64..10.0,
        n in 2usize..50,
        pick in proptest::sample::subsequence(Component::ALL.to_vec(), 1..8),
    ) {
        let names: Vec<&str> = pick.iter().map(|c| c.name()).collect();
        let text = format!(
            "alpha = {al:?}\nomega0 = {w:?}\ngrid.rho = {lo:?}, {:?}, {n}\ncomponents = {}\n",
            lo + span,
            names.join(", ")
        );
        let c = RunConfig::parse(&text, None).unwrap();
        prop_assert_eq!(c.scenario.alpha, al);
        prop_assert_eq!(c.scenario.omega0, w);
        let pts = c.rho.points();
        prop_assert_eq!(pts.len(), n);
        prop_assert_eq!(pts[0], lo);
        prop_assert!((pts[n - 1] - (lo + span)).abs() < 1e-12 * (lo + span));
        prop_assert_eq!(c.components, pick);
    }
}
