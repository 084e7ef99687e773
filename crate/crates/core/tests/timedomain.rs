use std::f64::consts::PI;

use halfplane::quadrature::{QuadratureSpec, Side};
use halfplane::timedomain::TimeDomain;
use halfplane::{Component, FieldPoint, Profile, ScenarioConfig};

fn setup(profile: Profile) -> TimeDomain {
    TimeDomain::new(&ScenarioConfig::reference(), &profile, QuadratureSpec::default())
}

#[test]
fn total_vanishes_on_both_faces() {
    let td = setup(Profile::smooth_ramp(0.7).unwrap());
    for rho in [0.3, 1.0, 2.5] {
        for t in [0.5, 2.0, 4.0, 7.0] {
            for phi in [0.0, 2.0 * PI] {
                let p = FieldPoint::new(rho, phi).unwrap();
                let u = td.total(p, t).unwrap();
                assert!(u.norm() < 1e-8, "rho={rho} phi={phi} t={t} u={u}");
            }
        }
    }
}

#[test]
fn total_is_continuous_across_rays() {
    let td = setup(Profile::heaviside());
    let sc = td.scenario;
    for ray in [sc.phi_plus, sc.phi_minus] {
        for (rho, t) in [(1.0, 3.0), (2.0, 5.5)] {
            let p = FieldPoint::new(rho, ray).unwrap();
            let lo = td.component_sided(Component::Total, p, t, Some(Side::Below)).unwrap();
            let hi = td.component_sided(Component::Total, p, t, Some(Side::Above)).unwrap();
            assert!((lo - hi).norm() < 1e-8, "ray {ray}: {lo} vs {hi}");
        }
    }
}

#[test]
fn one_sided_limits_match_nearby_values() {
    let td = setup(Profile::smooth_ramp(0.5).unwrap());
    let ray = td.scenario.phi_plus;
    let (rho, t) = (1.5, 4.0);
    let on = FieldPoint::new(rho, ray).unwrap();
    let lo = td.component_sided(Component::Diffracted, on, t, Some(Side::Below)).unwrap();
    let hi = td.component_sided(Component::Diffracted, on, t, Some(Side::Above)).unwrap();
    let near_lo = td.diffracted(FieldPoint::new(rho, ray - 1e-7).unwrap(), t).unwrap();
    let near_hi = td.diffracted(FieldPoint::new(rho, ray + 1e-7).unwrap(), t).unwrap();
    assert!((lo - near_lo).norm() < 1e-5);
    assert!((hi - near_hi).norm() < 1e-5);
    assert!((hi - lo).norm() > 1e-2);
}

#[test]
fn dalembert_residual_is_small_away_from_fronts() {
    let td = setup(Profile::smooth_ramp(1.0).unwrap());
    for (rho, phi, t) in [(1.0, 1.0, 4.0), (1.3, 3.5, 5.0), (2.0, 5.5, 6.5)] {
        let p = FieldPoint::new(rho, phi).unwrap();
        let h = 1e-3;
        let r = td.dalembert_residual(p, t, h).unwrap();
        let scale = td.total(p, t).unwrap().norm().max(1.0);
        assert!(r.norm() < 1e-3 * scale, "({rho},{phi},{t}) residual {r}");
    }
}

#[test]
fn dalembert_stencil_rejects_screen_crossing() {
    let td = setup(Profile::heaviside());
    let p = FieldPoint::new(1.0, 1e-4).unwrap();
    assert!(td.dalembert_residual(p, 3.0, 1e-3).is_err());
}
