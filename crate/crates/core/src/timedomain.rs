//! Time-dependent waves: incident `u_i`, its lit part `u_i⁰` and shadow part `u_i¹`, the
//! reflected wave `u_r`, the diffracted wave `u_d`, and the assembled total and scattered fields.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::kernel::Kernel;
use crate::quadrature::{self, QuadratureSpec, Side, TimeTerm};
use crate::scenario::{FieldPoint, Profile, ScenarioConfig};
use crate::{Component, Coordinate, FieldSample};

const I: Complex64 = Complex64::new(0.0, 1.0);
const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Whether `φ` lies in the sector below `line`, with the ray itself assigned by `side`.
pub(crate) fn below_line(phi: f64, line: f64, side: Option<Side>) -> Result<bool> {
    if phi < line {
        Ok(true)
    } else if phi > line {
        Ok(false)
    } else {
        match side {
            Some(Side::Below) => Ok(true),
            Some(Side::Above) => Ok(false),
            None => Err(Error::JumpLine { phi }),
        }
    }
}

/// Polar point of a Cartesian position, with `φ ∈ [0, 2π)`.
pub(crate) fn polar(x: [f64; 2]) -> FieldPoint {
    let rho = x[0].hypot(x[1]);
    let mut phi = x[1].atan2(x[0]);
    if phi < 0.0 {
        phi += 2.0 * PI;
    }
    FieldPoint { rho, phi }
}

/// Time-domain field evaluator for one scenario and profile.
#[derive(Debug, Clone)]
pub struct TimeDomain {
    pub scenario: ScenarioConfig,
    pub profile: Profile,
    pub kernel: Kernel,
    pub spec: QuadratureSpec,
}

impl TimeDomain {
    pub fn new(scenario: &ScenarioConfig, profile: &Profile, spec: QuadratureSpec) -> Self {
        TimeDomain {
            scenario: *scenario,
            profile: profile.clone(),
            kernel: Kernel::new(scenario),
            spec,
        }
    }

    fn modulated(&self, s: f64) -> Complex64 {
        self.profile.eval_modulated(self.scenario.omega0, s)
    }

    /// `u_i = e^{−iω₀(t−n·x)} f(t−n·x)`.
    pub fn incident(&self, p: FieldPoint, t: f64) -> Complex64 {
        self.modulated(t - self.scenario.n_dot(p))
    }

    /// `u_i` for `φ < φ₊`, zero in the shadow.
    pub fn incident0(&self, p: FieldPoint, t: f64) -> Result<Complex64> {
        self.incident0_sided(p, t, None)
    }

    /// `u_i¹ = u_i − u_i⁰`: zero on the lit side, `u_i` in the shadow.
    pub fn incident1(&self, p: FieldPoint, t: f64) -> Result<Complex64> {
        self.incident1_sided(p, t, None)
    }

    /// `u_r = −e^{−iω₀(t−n̄·x)} f(t−n̄·x)` for `φ < φ₋`, zero beyond.
    pub fn reflected(&self, p: FieldPoint, t: f64) -> Result<Complex64> {
        self.reflected_sided(p, t, None)
    }

    /// `u_d = (i/8π) ∫ 𝒵(β,φ) F(t − ρ cosh β) dβ`; exactly zero for `t ≤ ρ`.
    pub fn diffracted(&self, p: FieldPoint, t: f64) -> Result<Complex64> {
        self.diffracted_sided(p, t, None)
    }

    fn incident0_sided(&self, p: FieldPoint, t: f64, side: Option<Side>) -> Result<Complex64> {
        Ok(if below_line(p.phi, self.scenario.phi_plus, side)? {
            self.incident(p, t)
        } else {
            ZERO
        })
    }

    fn incident1_sided(&self, p: FieldPoint, t: f64, side: Option<Side>) -> Result<Complex64> {
        Ok(if below_line(p.phi, self.scenario.phi_plus, side)? {
            ZERO
        } else {
            self.incident(p, t)
        })
    }

    fn reflected_sided(&self, p: FieldPoint, t: f64, side: Option<Side>) -> Result<Complex64> {
        Ok(if below_line(p.phi, self.scenario.phi_minus, side)? {
            -self.modulated(t - self.scenario.n_bar_dot(p))
        } else {
            ZERO
        })
    }

    fn diffracted_sided(&self, p: FieldPoint, t: f64, side: Option<Side>) -> Result<Complex64> {
        if t <= p.rho {
            return Ok(ZERO);
        }
        let term = TimeTerm {
            rho: p.rho,
            phi: p.phi,
            t,
            side,
            coeff: Complex64::new(1.0, 0.0),
        };
        let e = quadrature::integrate_timedomain_functional(&self.kernel, &self.profile, self.scenario.omega0, &[term], &self.spec)?;
        Ok(I / (8.0 * PI) * e.value)
    }

    fn on_ray(&self, phi: f64) -> bool {
        phi == self.scenario.phi_plus || phi == self.scenario.phi_minus
    }

    /// Component value, taking the limit from `side` when `φ` is on a jump ray.
    pub fn component_sided(&self, c: Component, p: FieldPoint, t: f64, side: Option<Side>) -> Result<Complex64> {
        match c {
            Component::Incident => Ok(self.incident(p, t)),
            Component::Incident0 => self.incident0_sided(p, t, side),
            Component::Incident1 => self.incident1_sided(p, t, side),
            Component::Reflected => self.reflected_sided(p, t, side),
            Component::Diffracted => self.diffracted_sided(p, t, side),
            Component::Total => Ok(self.incident0_sided(p, t, side)?
                + self.reflected_sided(p, t, side)?
                + self.diffracted_sided(p, t, side)?),
            Component::Scattered => Ok(self.component_sided(Component::Total, p, t, side)? - self.incident(p, t)),
            Component::Scattered0 => {
                Ok(self.reflected_sided(p, t, side)? + self.diffracted_sided(p, t, side)?)
            }
        }
    }

    /// Component value. Components that jump on a ray are an error there; total and scattered
    /// are continuous across both rays, scattered0 across `φ₋`, and return the mean of the
    /// one-sided limits.
    pub fn component(&self, c: Component, p: FieldPoint, t: f64) -> Result<Complex64> {
        let assembled = matches!(c, Component::Total | Component::Scattered);
        if assembled && self.on_ray(p.phi) {
            let lo = self.component_sided(c, p, t, Some(Side::Below))?;
            let hi = self.component_sided(c, p, t, Some(Side::Above))?;
            return Ok(0.5 * (lo + hi));
        }
        if c == Component::Scattered0 && p.phi == self.scenario.phi_minus {
            let lo = self.component_sided(c, p, t, Some(Side::Below))?;
            let hi = self.component_sided(c, p, t, Some(Side::Above))?;
            return Ok(0.5 * (lo + hi));
        }
        self.component_sided(c, p, t, None)
    }

    /// Mean of the one-sided limits; equals [`Self::component`] off the rays.
    pub fn component_averaged(&self, c: Component, p: FieldPoint, t: f64) -> Result<Complex64> {
        if self.on_ray(p.phi) {
            let lo = self.component_sided(c, p, t, Some(Side::Below))?;
            let hi = self.component_sided(c, p, t, Some(Side::Above))?;
            return Ok(0.5 * (lo + hi));
        }
        self.component_sided(c, p, t, None)
    }

    pub fn total(&self, p: FieldPoint, t: f64) -> Result<Complex64> {
        self.component(Component::Total, p, t)
    }

    pub fn scattered(&self, p: FieldPoint, t: f64) -> Result<Complex64> {
        self.component(Component::Scattered, p, t)
    }

    pub fn scattered0(&self, p: FieldPoint, t: f64) -> Result<Complex64> {
        self.component(Component::Scattered0, p, t)
    }

    /// All components at one point, in [`Component::ALL`] order.
    pub fn samples(&self, p: FieldPoint, t: f64) -> Result<Vec<FieldSample>> {
        Component::ALL
            .iter()
            .map(|&c| {
                Ok(FieldSample {
                    point: p,
                    at: Coordinate::Time(t),
                    value: self.component_averaged(c, p, t)?,
                    component: c,
                })
            })
            .collect()
    }

    /// `u_tt − Δu` for the total field by second-order central differences in `(t, x₁, x₂)`.
    /// The diffracted part is differenced inside one fixed quadrature rule.
    pub fn dalembert_residual(&self, p: FieldPoint, t: f64, h: f64) -> Result<Complex64> {
        let x = p.cartesian();
        if x[1].abs() <= h && x[0] + h > 0.0 {
            return Err(Error::Geometry(format!("stencil of width {h} at {x:?} crosses the screen")));
        }
        let hh = 1.0 / (h * h);
        let stencil = [
            (x, t + h, hh),
            (x, t - h, hh),
            ([x[0] + h, x[1]], t, -hh),
            ([x[0] - h, x[1]], t, -hh),
            ([x[0], x[1] + h], t, -hh),
            ([x[0], x[1] - h], t, -hh),
            (x, t, 2.0 * hh),
        ];
        let mut plane = ZERO;
        let mut terms = Vec::with_capacity(stencil.len());
        for (xk, tk, ck) in stencil {
            let q = polar(xk);
            if self.on_ray(q.phi) {
                return Err(Error::Geometry("stencil node on a jump ray".into()));
            }
            plane += ck * (self.incident0(q, tk)? + self.reflected(q, tk)?);
            terms.push(TimeTerm {
                rho: q.rho,
                phi: q.phi,
                t: tk,
                side: None,
                coeff: Complex64::new(ck, 0.0),
            });
        }
        let d = quadrature::integrate_timedomain_stencil(&self.kernel, &self.profile, self.scenario.omega0, &terms, &self.spec)?;
        Ok(plane + I / (8.0 * PI) * d.value)
    }
}
