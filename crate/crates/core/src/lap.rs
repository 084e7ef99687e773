//! Limiting amplitudes: how fast `e^{iω₀t} u(ρ,φ,t)` settles onto the stationary amplitude.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quadrature::QuadratureSpec;
use crate::scenario::{FieldPoint, Profile, ScenarioConfig};
use crate::sommerfeld::{fresnel_total, StationaryAmplitude};
use crate::timedomain::TimeDomain;
use crate::Component;

/// Errors `|e^{iω₀t}v(t) − V|` at each time, for the assembled fields and each component.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LapReport {
    pub point: FieldPoint,
    pub times: Vec<f64>,
    pub amplitude: Complex64,
    pub amplitude_scattered: Complex64,
    pub errors_total: Vec<f64>,
    pub errors_scattered: Vec<f64>,
    pub errors_incident0: Vec<f64>,
    pub errors_reflected: Vec<f64>,
    pub errors_diffracted: Vec<f64>,
    /// Slope of `log err_total` against `log t` over the tail; informational.
    pub fitted_rate: f64,
    /// First time that counts as tail: `2ρ + S₁` with `S₁` the profile horizon.
    pub cushion: f64,
}

impl LapReport {
    fn tail(&self, errs: &[f64]) -> Vec<f64> {
        self.times
            .iter()
            .zip(errs)
            .filter(|(t, _)| **t >= self.cushion)
            .map(|(_, e)| *e)
            .collect()
    }

    /// Strict decrease of the total-field error over the tail.
    pub fn total_decreasing(&self) -> bool {
        strictly_decreasing(&self.tail(&self.errors_total))
    }

    pub fn scattered_decreasing(&self) -> bool {
        strictly_decreasing(&self.tail(&self.errors_scattered))
    }

    pub fn final_total(&self) -> f64 {
        *self.errors_total.last().expect("times are non-empty")
    }

    pub fn final_scattered(&self) -> f64 {
        *self.errors_scattered.last().expect("times are non-empty")
    }
}

fn strictly_decreasing(v: &[f64]) -> bool {
    v.windows(2).all(|w| w[1] < w[0])
}

/// Runs the time-domain fields at `point` for each of `times` and compares with the stationary
/// amplitude (Fresnel closed form for the total, kernel route for the diffracted part).
pub fn lap_study(
    scenario: &ScenarioConfig,
    profile: &Profile,
    point: FieldPoint,
    times: &[f64],
    spec: &QuadratureSpec,
) -> Result<LapReport> {
    if point.phi == scenario.phi_plus || point.phi == scenario.phi_minus {
        return Err(Error::Domain(format!(
            "phi = {} lies on a jump ray; the limit holds for phi != phi_plus, phi_minus",
            point.phi
        )));
    }
    if point.rho <= 0.0 {
        return Err(Error::Domain("lap study needs rho > 0".into()));
    }
    if times.is_empty() || times.iter().any(|&t| t <= point.rho) || times.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::Domain(format!("times must be increasing and exceed rho = {}", point.rho)));
    }
    let td = TimeDomain::new(scenario, profile, *spec);
    let st = StationaryAmplitude::new(scenario, *spec);
    let a = fresnel_total(scenario, point);
    let a_i = st.amplitude_incident(point);
    let a_i0 = st.amplitude_incident0(point).value;
    let a_r = st.amplitude_reflected(point).value;
    let a_d = st.amplitude_diffracted(point, None)?;

    let rows = crate::par::try_map(times, |&t| {
        let phase = Complex64::from_polar(1.0, scenario.omega0 * t);
        let i0 = td.incident0(point, t)?;
        let r = td.reflected(point, t)?;
        let d = td.diffracted(point, t)?;
        let inc = td.incident(point, t);
        let total = i0 + r + d;
        Ok::<_, Error>([
            (phase * total - a).norm(),
            (phase * (total - inc) - (a - a_i)).norm(),
            (phase * i0 - a_i0).norm(),
            (phase * r - a_r).norm(),
            (phase * d - a_d).norm(),
        ])
    })?;
    let col = |k: usize| rows.iter().map(|r| r[k]).collect::<Vec<f64>>();
    let cushion = 2.0 * point.rho + profile.horizon();
    let mut report = LapReport {
        point,
        times: times.to_vec(),
        amplitude: a,
        amplitude_scattered: a - a_i,
        errors_total: col(0),
        errors_scattered: col(1),
        errors_incident0: col(2),
        errors_reflected: col(3),
        errors_diffracted: col(4),
        fitted_rate: f64::NAN,
        cushion,
    };
    let pts: Vec<(f64, f64)> = report
        .times
        .iter()
        .zip(&report.errors_total)
        .filter(|(t, e)| **t >= cushion && **e > 0.0)
        .map(|(t, e)| (t.ln(), e.ln()))
        .collect();
    if pts.len() >= 2 {
        let n = pts.len() as f64;
        let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
        let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
        let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
        let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
        report.fitted_rate = sxy / sxx;
    }
    Ok(report)
}

/// `|e^{iω₀t}v(t) − V|` for one component over a grid of angles at fixed `ρ` and `t`.
/// Angles on the jump rays are skipped.
pub fn lap_phi_scan(
    scenario: &ScenarioConfig,
    profile: &Profile,
    component: Component,
    rho: f64,
    phis: &[f64],
    t: f64,
    spec: &QuadratureSpec,
) -> Result<Vec<(f64, f64)>> {
    let td = TimeDomain::new(scenario, profile, *spec);
    let st = StationaryAmplitude::new(scenario, *spec);
    let keep: Vec<f64> = phis
        .iter()
        .copied()
        .filter(|&p| p != scenario.phi_plus && p != scenario.phi_minus)
        .collect();
    crate::par::try_map(&keep, |&phi| {
        let p = FieldPoint::new(rho, phi)?;
        let limit = match component {
            Component::Incident => st.amplitude_incident(p),
            Component::Incident0 => st.amplitude_incident0(p).value,
            Component::Incident1 => st.amplitude_incident1(p).value,
            Component::Reflected => st.amplitude_reflected(p).value,
            Component::Diffracted => st.amplitude_diffracted(p, None)?,
            Component::Total => fresnel_total(scenario, p),
            Component::Scattered => fresnel_total(scenario, p) - st.amplitude_incident(p),
            Component::Scattered0 => st.amplitude_reflected(p).value + st.amplitude_diffracted(p, None)?,
        };
        let v = td.component(component, p, t)?;
        Ok((phi, (Complex64::from_polar(1.0, scenario.omega0 * t) * v - limit).norm()))
    })
}
