//! Frequency-domain family for `Im ω > 0`: `û_i`, `û_i⁰`, `û_i¹`, `û_r`, `û_d` and the scattered
//! field `û_s = û_r + û_d − û_i¹`, with the checks that are stated in terms of them (jumps across
//! the rays, Helmholtz residual, decay fits, Green identity, agreement with the numerical
//! transform of the time-domain fields).

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernel::Kernel;
use crate::quadrature::{self, FreqTerm, QuadratureSpec, Side, Weight};
use crate::scenario::{check_upper, oscillation_breaks, FieldPoint, Profile, ScenarioConfig};
use crate::timedomain::{below_line, TimeDomain};
use crate::{Component, Coordinate, FieldSample};

const I: Complex64 = Complex64::new(0.0, 1.0);
const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Which derivative of a field to evaluate. Angular derivatives are taken at fixed `ρ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Deriv {
    Value,
    DRho,
    DRhoRho,
    DPhi,
    DPhiPhi,
}

impl Deriv {
    fn weight(self) -> Weight {
        match self {
            Deriv::Value => Weight::Value,
            Deriv::DRho => Weight::DRho,
            Deriv::DRhoRho => Weight::DRhoRho,
            Deriv::DPhi => Weight::DPhi,
            Deriv::DPhiPhi => Weight::DPhiPhi,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Deriv::Value => "value",
            Deriv::DRho => "d_rho",
            Deriv::DRhoRho => "d_rho_rho",
            Deriv::DPhi => "d_phi",
            Deriv::DPhiPhi => "d_phi_phi",
        }
    }
}

/// The two rays across which components jump.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Ray {
    PhiPlus,
    PhiMinus,
}

impl Ray {
    pub fn name(self) -> &'static str {
        match self {
            Ray::PhiPlus => "phi_plus",
            Ray::PhiMinus => "phi_minus",
        }
    }
}

/// Extrapolated jump `lim_{δ→0} h(φ*+δ) − h(φ*−δ)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JumpEstimate {
    pub value: Complex64,
    /// Size of the last correction in the extrapolation table.
    pub error: f64,
    /// Raw differences at `δ_k = δ₀ 2^{−k}`.
    pub raw: Vec<Complex64>,
    pub deltas: Vec<f64>,
}

/// Fitted envelope `|v(ρ)| ≤ C e^{−cρ}(1 + ρ^{−1/2})`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecayFit {
    /// Least-squares slope of `−log(|v|/(1+ρ^{−1/2}))` against `ρ`.
    pub rate: f64,
    /// Smallest `C` for which the envelope with the fitted rate holds on the samples.
    pub constant: f64,
    /// `Im ω` times the slowest directional decay expected at this angle.
    pub expected_rate: f64,
    pub rhos: Vec<f64>,
    pub magnitudes: Vec<f64>,
}

/// Zero-Dirichlet test field `w = ρ² e^{iωρ} sin(mφ/2)` for the Green identity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Manufactured {
    pub m: u32,
}

/// Both sides of `∫_{Q_R} (|∇w|² + w̄Δw) dx = ∮_{|x|=R} w̄ ∂_ρw ds`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GreenCheck {
    pub radius: f64,
    pub cells: usize,
    pub volume: Complex64,
    pub ring: Complex64,
    pub mismatch: f64,
}

/// Frequency-domain evaluator for one scenario and profile.
#[derive(Debug, Clone)]
pub struct FrequencyDomain {
    pub scenario: ScenarioConfig,
    pub profile: Profile,
    pub kernel: Kernel,
    pub spec: QuadratureSpec,
}

impl FrequencyDomain {
    pub fn new(scenario: &ScenarioConfig, profile: &Profile, spec: QuadratureSpec) -> Self {
        FrequencyDomain {
            scenario: *scenario,
            profile: profile.clone(),
            kernel: Kernel::new(scenario),
            spec,
        }
    }

    /// `f̂(ω − ω₀)`.
    pub fn gain(&self, omega: Complex64) -> Result<Complex64> {
        check_upper(omega)?;
        self.profile.eval_fhat(omega - self.scenario.omega0, &self.spec)
    }

    // e^{iωρc(φ)} with c(φ) = −cos(φ + shift), and its derivatives
    fn plane(&self, p: FieldPoint, omega: Complex64, shift: f64, d: Deriv) -> Complex64 {
        let a = p.phi + shift;
        let e = (-I * omega * p.rho * a.cos()).exp();
        let k = I * omega;
        match d {
            Deriv::Value => e,
            Deriv::DRho => -k * a.cos() * e,
            Deriv::DRhoRho => k * k * a.cos() * a.cos() * e,
            Deriv::DPhi => k * p.rho * a.sin() * e,
            Deriv::DPhiPhi => {
                let s = k * p.rho * a.sin();
                (k * p.rho * a.cos() + s * s) * e
            }
        }
    }

    /// `û_i = f̂(ω−ω₀) e^{iω n·x}` on the whole plane.
    pub fn hat_incident(&self, p: FieldPoint, omega: Complex64) -> Result<Complex64> {
        self.incident_deriv(p, omega, Deriv::Value)
    }

    fn incident_deriv(&self, p: FieldPoint, omega: Complex64, d: Deriv) -> Result<Complex64> {
        Ok(self.gain(omega)? * self.plane(p, omega, -self.scenario.alpha, d))
    }

    /// `û_i` on `φ < φ₊`, zero in the shadow.
    pub fn hat_incident0(&self, p: FieldPoint, omega: Complex64) -> Result<Complex64> {
        self.component_deriv(Component::Incident0, p, omega, Deriv::Value, None)
    }

    /// `û_i¹ = û_i − û_i⁰`.
    pub fn hat_incident1(&self, p: FieldPoint, omega: Complex64) -> Result<Complex64> {
        self.component_deriv(Component::Incident1, p, omega, Deriv::Value, None)
    }

    /// `û_r = −f̂(ω−ω₀) e^{−iωρ cos(φ+α)}` on `φ < φ₋`, zero beyond.
    pub fn hat_reflected(&self, p: FieldPoint, omega: Complex64) -> Result<Complex64> {
        self.component_deriv(Component::Reflected, p, omega, Deriv::Value, None)
    }

    /// `û_d = (i/8π) f̂(ω−ω₀) ∫ 𝒵(β,φ) e^{iωρ cosh β} dβ`.
    pub fn hat_diffracted(&self, p: FieldPoint, omega: Complex64) -> Result<Complex64> {
        self.component_deriv(Component::Diffracted, p, omega, Deriv::Value, None)
    }

    /// `û_s = û_r + û_d − û_i¹`.
    pub fn hat_scattered(&self, p: FieldPoint, omega: Complex64) -> Result<Complex64> {
        self.component(Component::Scattered, p, omega, Deriv::Value)
    }

    fn diffracted_deriv(&self, p: FieldPoint, omega: Complex64, d: Deriv, side: Option<Side>) -> Result<Complex64> {
        let g = self.gain(omega)?;
        let term = FreqTerm {
            rho: p.rho,
            phi: p.phi,
            side,
            weight: d.weight(),
            coeff: Complex64::new(1.0, 0.0),
        };
        let e = quadrature::integrate_frequency_functional(&self.kernel, &[term], omega, None, &self.spec)?;
        Ok(I / (8.0 * PI) * g * e.value)
    }

    /// Component or derivative, with the one-sided limit from `side` on a jump ray.
    pub fn component_deriv(
        &self,
        c: Component,
        p: FieldPoint,
        omega: Complex64,
        d: Deriv,
        side: Option<Side>,
    ) -> Result<Complex64> {
        check_upper(omega)?;
        let sc = &self.scenario;
        match c {
            Component::Incident => self.incident_deriv(p, omega, d),
            Component::Incident0 => Ok(if below_line(p.phi, sc.phi_plus, side)? {
                self.incident_deriv(p, omega, d)?
            } else {
                ZERO
            }),
            Component::Incident1 => Ok(if below_line(p.phi, sc.phi_plus, side)? {
                ZERO
            } else {
                self.incident_deriv(p, omega, d)?
            }),
            Component::Reflected => Ok(if below_line(p.phi, sc.phi_minus, side)? {
                -self.gain(omega)? * self.plane(p, omega, sc.alpha, d)
            } else {
                ZERO
            }),
            Component::Diffracted => self.diffracted_deriv(p, omega, d, side),
            Component::Total => Ok(self.component_deriv(Component::Incident0, p, omega, d, side)?
                + self.component_deriv(Component::Reflected, p, omega, d, side)?
                + self.diffracted_deriv(p, omega, d, side)?),
            Component::Scattered => Ok(self.component_deriv(Component::Reflected, p, omega, d, side)?
                + self.diffracted_deriv(p, omega, d, side)?
                - self.component_deriv(Component::Incident1, p, omega, d, side)?),
            Component::Scattered0 => Ok(self.component_deriv(Component::Reflected, p, omega, d, side)?
                + self.diffracted_deriv(p, omega, d, side)?),
        }
    }

    fn on_ray(&self, phi: f64) -> bool {
        phi == self.scenario.phi_plus || phi == self.scenario.phi_minus
    }

    /// Component value or derivative; on a jump ray, the mean of the one-sided limits.
    pub fn component(&self, c: Component, p: FieldPoint, omega: Complex64, d: Deriv) -> Result<Complex64> {
        if self.on_ray(p.phi) {
            let lo = self.component_deriv(c, p, omega, d, Some(Side::Below))?;
            let hi = self.component_deriv(c, p, omega, d, Some(Side::Above))?;
            return Ok(0.5 * (lo + hi));
        }
        self.component_deriv(c, p, omega, d, None)
    }

    /// All components at one point, in [`Component::ALL`] order.
    pub fn samples(&self, p: FieldPoint, omega: Complex64) -> Result<Vec<FieldSample>> {
        Component::ALL
            .iter()
            .map(|&c| {
                Ok(FieldSample {
                    point: p,
                    at: Coordinate::Frequency(omega),
                    value: self.component(c, p, omega, Deriv::Value)?,
                    component: c,
                })
            })
            .collect()
    }

    pub fn ray_angle(&self, ray: Ray) -> f64 {
        match ray {
            Ray::PhiPlus => self.scenario.phi_plus,
            Ray::PhiMinus => self.scenario.phi_minus,
        }
    }

    /// Jump across `ray` by second-order Richardson extrapolation of symmetric differences at
    /// `δ_k = δ₀ 2^{−k}`, `k = 0..levels`.
    pub fn jump(
        &self,
        c: Component,
        d: Deriv,
        rho: f64,
        omega: Complex64,
        ray: Ray,
        delta0: f64,
        levels: usize,
    ) -> Result<JumpEstimate> {
        if !(delta0 > 0.0) || levels < 2 {
            return Err(Error::Domain("jump needs delta0 > 0 and at least 3 levels".into()));
        }
        let phi = self.ray_angle(ray);
        let deltas: Vec<f64> = (0..=levels).map(|k| delta0 * 0.5f64.powi(k as i32)).collect();
        if phi - delta0 <= 0.0 || phi + delta0 >= 2.0 * PI {
            return Err(Error::Geometry(format!("jump stencil of width {delta0} leaves (0, 2pi)")));
        }
        let raw = deltas
            .iter()
            .map(|&dl| {
                let hi = self.component_deriv(c, FieldPoint { rho, phi: phi + dl }, omega, d, None)?;
                let lo = self.component_deriv(c, FieldPoint { rho, phi: phi - dl }, omega, d, None)?;
                Ok(hi - lo)
            })
            .collect::<Result<Vec<_>>>()?;
        let (value, error) = richardson(&raw);
        let scale = value.norm().max(1.0);
        if error > 1e-3 * scale {
            return Err(Error::Extrapolation { raw });
        }
        Ok(JumpEstimate {
            value,
            error,
            raw,
            deltas,
        })
    }

    /// Jump from the one-sided limits evaluated on the ray itself.
    pub fn jump_direct(&self, c: Component, d: Deriv, rho: f64, omega: Complex64, ray: Ray) -> Result<Complex64> {
        let p = FieldPoint {
            rho,
            phi: self.ray_angle(ray),
        };
        Ok(self.component_deriv(c, p, omega, d, Some(Side::Above))?
            - self.component_deriv(c, p, omega, d, Some(Side::Below))?)
    }

    /// `|(Δ_h + ω²) v|` with the 5-point polar stencil of spacing `h` in both `ρ` and `φ`.
    /// Component fields must not straddle the rays where they jump; total and scattered fields
    /// may.
    pub fn helmholtz_residual(&self, c: Component, p: FieldPoint, omega: Complex64, h: f64) -> Result<f64> {
        check_upper(omega)?;
        if p.rho - h <= 0.0 || p.phi - h <= 0.0 || p.phi + h >= 2.0 * PI {
            return Err(Error::Geometry(format!("stencil of width {h} at {p:?} crosses the screen or the edge")));
        }
        let sc = &self.scenario;
        let straddles = |line: f64| (p.phi - h..=p.phi + h).contains(&line);
        let bad = match c {
            Component::Incident0 | Component::Incident1 => straddles(sc.phi_plus),
            Component::Reflected => straddles(sc.phi_minus),
            Component::Diffracted => straddles(sc.phi_plus) || straddles(sc.phi_minus),
            Component::Scattered0 => straddles(sc.phi_plus),
            Component::Total | Component::Scattered | Component::Incident => false,
        };
        if bad {
            return Err(Error::Geometry(format!("stencil at {p:?} straddles a jump ray of {}", c.name())));
        }
        let r = p.rho;
        let hh = 1.0 / (h * h);
        let nodes = [
            (r, p.phi, -2.0 * hh - 2.0 * hh / (r * r) + omega * omega),
            (r + h, p.phi, Complex64::new(hh + 0.5 / (h * r), 0.0)),
            (r - h, p.phi, Complex64::new(hh - 0.5 / (h * r), 0.0)),
            (r, p.phi + h, Complex64::new(hh / (r * r), 0.0)),
            (r, p.phi - h, Complex64::new(hh / (r * r), 0.0)),
        ];
        let g = self.gain(omega)?;
        let mut plane = ZERO;
        let mut terms = Vec::with_capacity(nodes.len());
        for (rho, phi, coeff) in nodes {
            let q = FieldPoint { rho, phi };
            // geometric part of the component, diffracted part handled as one stencil integral
            let (geo, with_d) = match c {
                Component::Diffracted => (ZERO, true),
                Component::Total => (self.geometric(Component::Incident0, q, omega)? + self.geometric(Component::Reflected, q, omega)?, true),
                Component::Scattered => (self.geometric(Component::Reflected, q, omega)? - self.geometric(Component::Incident1, q, omega)?, true),
                Component::Scattered0 => (self.geometric(Component::Reflected, q, omega)?, true),
                other => (self.geometric(other, q, omega)?, false),
            };
            plane += coeff * geo;
            if with_d {
                terms.push(FreqTerm {
                    rho,
                    phi,
                    side: None,
                    weight: Weight::Value,
                    coeff,
                });
            }
        }
        let mut total = plane;
        if !terms.is_empty() {
            if terms.iter().any(|t| self.on_ray(t.phi)) {
                return Err(Error::Geometry("stencil node on a jump ray".into()));
            }
            let e = quadrature::integrate_frequency_stencil(&self.kernel, &terms, omega, &self.spec)?;
            total += I / (8.0 * PI) * g * e.value;
        }
        Ok(total.norm())
    }

    // plane-wave components; the value on a ray is the mean of the one-sided limits
    fn geometric(&self, c: Component, q: FieldPoint, omega: Complex64) -> Result<Complex64> {
        self.component(c, q, omega, Deriv::Value)
    }

    /// Fits `|v(ρ)| ≤ C e^{−cρ}(1+ρ^{−1/2})` along the ray `φ` for `v = ` the component or its
    /// analytic `∂ρ` derivative.
    pub fn decay_fit(&self, c: Component, d: Deriv, phi: f64, omega: Complex64, rhos: &[f64]) -> Result<DecayFit> {
        if rhos.len() < 2 {
            return Err(Error::Domain("decay fit needs at least two radii".into()));
        }
        let mags = crate::par::try_map(rhos, |&rho| {
            self.component(c, FieldPoint { rho, phi }, omega, d).map(|v| v.norm())
        })?;
        let ys: Vec<f64> = rhos
            .iter()
            .zip(&mags)
            .map(|(&r, &m)| (m / (1.0 + r.powf(-0.5))).max(f64::MIN_POSITIVE).ln())
            .collect();
        let n = rhos.len() as f64;
        let mx = rhos.iter().sum::<f64>() / n;
        let my = ys.iter().sum::<f64>() / n;
        let sxy: f64 = rhos.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
        let sxx: f64 = rhos.iter().map(|x| (x - mx) * (x - mx)).sum();
        let rate = -sxy / sxx;
        let constant = rhos
            .iter()
            .zip(&ys)
            .map(|(&r, &y)| (y + rate * r).exp())
            .fold(0.0, f64::max);
        Ok(DecayFit {
            rate,
            constant,
            expected_rate: self.expected_decay_rate(phi, omega),
            rhos: rhos.to_vec(),
            magnitudes: mags,
        })
    }

    /// `Im ω · min(1, |cos(φ+α)| on φ < φ₋, |cos(φ−α)| on φ > φ₊)`: the slowest of the
    /// exponential rates of the waves present at angle `φ`.
    pub fn expected_decay_rate(&self, phi: f64, omega: Complex64) -> f64 {
        let sc = &self.scenario;
        let mut m: f64 = 1.0;
        if phi < sc.phi_minus {
            m = m.min((phi + sc.alpha).cos().abs());
        }
        if phi > sc.phi_plus {
            m = m.min((phi - sc.alpha).cos().abs());
        }
        omega.im * m
    }

    /// Green identity on the disk of radius `R` for a manufactured zero-boundary field,
    /// volume integral by the midpoint rule on `cells × cells` polar cells.
    pub fn green_identity_check(&self, w: Manufactured, omega: Complex64, radius: f64, cells: usize) -> Result<GreenCheck> {
        check_upper(omega)?;
        if !(radius > 0.0) || cells < 2 || w.m == 0 {
            return Err(Error::Domain("green identity needs R > 0, cells >= 2, m >= 1".into()));
        }
        let m = w.m as f64;
        let radial = |r: f64| {
            let e = (I * omega * r).exp();
            let g = r * r * e;
            let g1 = (2.0 * r + I * omega * r * r) * e;
            let g2 = (2.0 + 4.0 * I * omega * r - omega * omega * r * r) * e;
            (g, g1, g2)
        };
        let hr = radius / cells as f64;
        let hp = 2.0 * PI / cells as f64;
        let rows: Vec<usize> = (0..cells).collect();
        let volume: Complex64 = crate::par::map(&rows, |&i| {
            let r = (i as f64 + 0.5) * hr;
            let (g, g1, g2) = radial(r);
            let mut acc = ZERO;
            for j in 0..cells {
                let phi = (j as f64 + 0.5) * hp;
                let (s, c) = (0.5 * m * phi).sin_cos();
                let wv = g * s;
                let wr = g1 * s;
                let wp = g * 0.5 * m * c;
                let lap = (g2 + g1 / r) * s - g * s * m * m / (4.0 * r * r);
                acc += wr.norm_sqr() + wp.norm_sqr() / (r * r) + wv.conj() * lap;
            }
            acc * r * hr * hp
        })
        .into_iter()
        .sum();
        let (g, g1, _) = radial(radius);
        // ∫₀^{2π} sin²(mφ/2) dφ = π
        let ring = g.conj() * g1 * radius * PI;
        Ok(GreenCheck {
            radius,
            cells,
            volume,
            ring,
            mismatch: (volume - ring).norm(),
        })
    }

    /// `∮_{|x|=R} conj(û_s) ∂ρ û_s ds` by the midpoint rule in `φ`.
    pub fn scattered_ring_term(&self, omega: Complex64, radius: f64, nodes: usize) -> Result<Complex64> {
        let hp = 2.0 * PI / nodes as f64;
        let phis: Vec<f64> = (0..nodes).map(|j| (j as f64 + 0.5) * hp).collect();
        let vals = crate::par::try_map(&phis, |&phi| {
            let p = FieldPoint { rho: radius, phi };
            let v = self.component(Component::Scattered, p, omega, Deriv::Value)?;
            let dv = self.component(Component::Scattered, p, omega, Deriv::DRho)?;
            Ok::<_, Error>(v.conj() * dv)
        })?;
        Ok(vals.into_iter().sum::<Complex64>() * radius * hp)
    }

    /// Numerical `∫₀^∞ e^{iωt} u(ρ,φ,t) dt` of a time-domain component, truncated where the
    /// remaining tail is below `tol` relative to the bound `sup|u| ≤ 2` (`4` for the assembled
    /// fields).
    pub fn numeric_transform(&self, c: Component, p: FieldPoint, omega: Complex64, tol: f64) -> Result<Complex64> {
        check_upper(omega)?;
        let td = TimeDomain::new(&self.scenario, &self.profile, self.spec);
        let parts: Vec<(Component, f64)> = match c {
            Component::Scattered => vec![(Component::Reflected, 1.0), (Component::Diffracted, 1.0), (Component::Incident1, -1.0)],
            Component::Scattered0 => vec![(Component::Reflected, 1.0), (Component::Diffracted, 1.0)],
            Component::Total => vec![(Component::Incident0, 1.0), (Component::Reflected, 1.0), (Component::Diffracted, 1.0)],
            other => vec![(other, 1.0)],
        };
        let mut acc = ZERO;
        for (part, sign) in parts {
            acc += sign * self.transform_part(&td, part, p, omega, tol)?;
        }
        Ok(acc)
    }

    fn transform_part(&self, td: &TimeDomain, c: Component, p: FieldPoint, omega: Complex64, tol: f64) -> Result<Complex64> {
        let sc = &self.scenario;
        let start = match c {
            Component::Incident | Component::Incident0 | Component::Incident1 => sc.n_dot(p),
            Component::Reflected => sc.n_bar_dot(p),
            Component::Diffracted => p.rho,
            _ => unreachable!("assembled fields are split before transforming"),
        };
        // region-gated parts vanish identically; skip them rather than integrate zeros
        let probe = td.component_sided(c, p, start.max(0.0) + 1.0 + self.profile.horizon(), None)?;
        if probe == ZERO && c != Component::Diffracted {
            return Ok(ZERO);
        }
        if start < 0.0 {
            return Err(Error::Domain(format!("{} starts at t = {start} < 0; its transform over t > 0 is not the frequency field", c.name())));
        }
        let bound = 2.0f64.max(4.0 * self.profile.eval_f(1e6).norm());
        let span = (bound / (tol * omega.im)).ln().max(1.0) / omega.im;
        let t_max = start + span;
        let spec = QuadratureSpec {
            rel_tol: tol.min(self.spec.rel_tol.max(1e-12)),
            abs_tol: 1e-15,
            ..self.spec
        };
        let eval = |t: f64| td.component_sided(c, p, t, None).unwrap_or(Complex64::new(f64::NAN, f64::NAN));
        let mut kinks: Vec<f64> = self.profile.kinks().into_iter().map(|k| k + start).collect();
        let mut total = ZERO;
        let mut from = start;
        if c == Component::Diffracted {
            // u_d grows like √(t−ρ) from the front; t = ρ + s² on the first unit of time
            let head = quadrature::integrate(|s: f64| 2.0 * s * (I * omega * (start + s * s)).exp() * eval(start + s * s), &[0.0, 0.5, 1.0], &spec)?;
            total += head.value;
            from = start + 1.0;
            kinks.retain(|&k| k > from);
        }
        kinks.push(from);
        let breaks = oscillation_breaks(from, t_max, omega.norm().max(sc.omega0 + omega.re.abs()), &kinks);
        let body = quadrature::integrate(|t| (I * omega * t).exp() * eval(t), &breaks, &spec)?;
        total += body.value;
        if !total.re.is_finite() || !total.im.is_finite() {
            return Err(Error::Precision {
                achieved: f64::INFINITY,
                requested: tol,
                value: total,
            });
        }
        Ok(total)
    }
}

/// Second-order Richardson table on halving steps; returns the last entry and the size of its
/// last correction.
pub fn richardson(raw: &[Complex64]) -> (Complex64, f64) {
    let r1: Vec<Complex64> = raw.windows(2).map(|w| 2.0 * w[1] - w[0]).collect();
    let r2: Vec<Complex64> = r1.windows(2).map(|w| (4.0 * w[1] - w[0]) / 3.0).collect();
    match r2.len() {
        0 => (r1.last().copied().unwrap_or(raw[raw.len() - 1]), f64::INFINITY),
        1 => (r2[0], (r2[0] - r1[r1.len() - 1]).norm()),
        n => (r2[n - 1], (r2[n - 1] - r2[n - 2]).norm()),
    }
}
