use std::f64::consts::PI;

use halfplane::sommerfeld::{fresnel_total, Route, StationaryAmplitude};
use halfplane::{FieldPoint, QuadratureSpec, ScenarioConfig};
use num_complex::Complex64;

// 30-digit values of A(ρ,φ) for α = 2π/3, ω₀ = 1 from an independent multiprecision evaluation
// of the Fresnel form
const ORACLE: [(f64, f64, f64, f64); 4] = [
    (1.0, PI, 0.874_011_890_720_259_2, -0.891_795_342_887_762_9),
    (2.0, 0.5, 1.067_556_735_477_243_6, -0.803_528_634_354_491_3),
    (0.5, 5.9, 0.099_170_393_197_137_92, 0.022_246_116_495_827_38),
    (3.0, 4.0, 0.813_478_259_607_500_4, 0.976_212_491_646_157_9),
];

#[test]
fn both_routes_match_multiprecision_values() {
    let sc = ScenarioConfig::reference();
    let amp = StationaryAmplitude::new(&sc, QuadratureSpec::default());
    for (rho, phi, re, im) in ORACLE {
        let p = FieldPoint::new(rho, phi).unwrap();
        let expect = Complex64::new(re, im);
        let f = fresnel_total(&sc, p);
        assert!((f - expect).norm() < 1e-13, "fresnel {rho} {phi}: {f}");
        let k = amp.amplitude_total(p, Route::Kernel).unwrap();
        assert!((k - expect).norm() < 1e-10, "kernel {rho} {phi}: {k} vs {expect}");
    }
}
