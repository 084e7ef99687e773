//! Stationary Sommerfeld amplitude: geometric parts, the diffracted part as a kernel integral at
//! the real carrier frequency, and the classical Fresnel-integral closed form used as an
//! independent oracle.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernel::Kernel;
use crate::quadrature::{self, FreqTerm, QuadratureSpec, Side, Weight};
use crate::scenario::{FieldPoint, ScenarioConfig};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// A region-gated value: `in_region` is false where the component is identically zero.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RegionValue {
    pub value: Complex64,
    pub in_region: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Route {
    /// `A_i⁰ + A_r + A_d` with `A_d` from the kernel integral.
    Kernel,
    /// Fresnel-integral closed form.
    Fresnel,
}

/// Stationary amplitudes for one scenario.
#[derive(Debug, Clone, Copy)]
pub struct StationaryAmplitude {
    pub scenario: ScenarioConfig,
    pub kernel: Kernel,
    pub spec: QuadratureSpec,
}

impl StationaryAmplitude {
    pub fn new(scenario: &ScenarioConfig, spec: QuadratureSpec) -> Self {
        StationaryAmplitude {
            scenario: *scenario,
            kernel: Kernel::new(scenario),
            spec,
        }
    }

    fn plane(&self, rho: f64, angle: f64) -> Complex64 {
        Complex64::from_polar(1.0, -self.scenario.omega0 * rho * angle.cos())
    }

    /// `A_i = e^{−iω₀ρ cos(φ−α)}` on the whole plane.
    pub fn amplitude_incident(&self, p: FieldPoint) -> Complex64 {
        self.plane(p.rho, p.phi - self.scenario.alpha)
    }

    /// `A_i⁰`: the incident amplitude on `[0, φ₊]`, zero beyond.
    pub fn amplitude_incident0(&self, p: FieldPoint) -> RegionValue {
        let in_region = p.phi <= self.scenario.phi_plus;
        RegionValue {
            value: if in_region { self.amplitude_incident(p) } else { Complex64::new(0.0, 0.0) },
            in_region,
        }
    }

    /// `A_i¹ = A_i − A_i⁰`: the incident amplitude in the shadow `(φ₊, 2π]`.
    pub fn amplitude_incident1(&self, p: FieldPoint) -> RegionValue {
        let in_region = p.phi > self.scenario.phi_plus;
        RegionValue {
            value: if in_region { self.amplitude_incident(p) } else { Complex64::new(0.0, 0.0) },
            in_region,
        }
    }

    /// `A_r = −e^{−iω₀ρ cos(φ+α)}` on `[0, φ₋)`, zero beyond.
    pub fn amplitude_reflected(&self, p: FieldPoint) -> RegionValue {
        let in_region = p.phi < self.scenario.phi_minus;
        RegionValue {
            value: if in_region {
                -self.plane(p.rho, p.phi + self.scenario.alpha)
            } else {
                Complex64::new(0.0, 0.0)
            },
            in_region,
        }
    }

    /// `A_d = (i/8π) ∫ 𝒵(β,φ) e^{iω₀ρ cosh β} dβ`; on a jump ray a side must be given.
    pub fn amplitude_diffracted(&self, p: FieldPoint, side: Option<Side>) -> Result<Complex64> {
        self.diffracted_weighted(p, side, Weight::Value)
    }

    pub(crate) fn diffracted_weighted(&self, p: FieldPoint, side: Option<Side>, weight: Weight) -> Result<Complex64> {
        let term = FreqTerm {
            rho: p.rho,
            phi: p.phi,
            side,
            weight,
            coeff: Complex64::new(1.0, 0.0),
        };
        let omega = Complex64::new(self.scenario.omega0, 0.0);
        let e = quadrature::integrate_frequency_functional(&self.kernel, &[term], omega, None, &self.spec)?;
        Ok(I / (8.0 * PI) * e.value)
    }

    /// Total amplitude by either route. On a jump ray the kernel route averages the two
    /// one-sided limits (which coincide).
    pub fn amplitude_total(&self, p: FieldPoint, route: Route) -> Result<Complex64> {
        match route {
            Route::Fresnel => Ok(fresnel_total(&self.scenario, p)),
            Route::Kernel => {
                if p.rho == 0.0 {
                    return Ok(fresnel_total(&self.scenario, p));
                }
                if self.on_ray(p.phi) {
                    let lo = self.total_one_sided(p, Side::Below)?;
                    let hi = self.total_one_sided(p, Side::Above)?;
                    return Ok(0.5 * (lo + hi));
                }
                Ok(self.amplitude_incident0(p).value
                    + self.amplitude_reflected(p).value
                    + self.amplitude_diffracted(p, None)?)
            }
        }
    }

    fn on_ray(&self, phi: f64) -> bool {
        phi == self.scenario.phi_plus || phi == self.scenario.phi_minus
    }

    fn total_one_sided(&self, p: FieldPoint, side: Side) -> Result<Complex64> {
        let (i0, r) = self.geometric_one_sided(p, side);
        Ok(i0 + r + self.amplitude_diffracted(p, Some(side))?)
    }

    /// Geometric parts `(A_i⁰, A_r)` as limits from one side of `φ`.
    pub fn geometric_one_sided(&self, p: FieldPoint, side: Side) -> (Complex64, Complex64) {
        let sc = &self.scenario;
        let lit = match side {
            Side::Below => p.phi <= sc.phi_plus,
            Side::Above => p.phi < sc.phi_plus,
        };
        let refl = match side {
            Side::Below => p.phi <= sc.phi_minus,
            Side::Above => p.phi < sc.phi_minus,
        };
        let zero = Complex64::new(0.0, 0.0);
        (
            if lit { self.amplitude_incident(p) } else { zero },
            if refl { -self.plane(p.rho, p.phi + sc.alpha) } else { zero },
        )
    }

    /// `A_s = A − A_i`.
    pub fn amplitude_scattered(&self, p: FieldPoint, route: Route) -> Result<Complex64> {
        Ok(self.amplitude_total(p, route)? - self.amplitude_incident(p))
    }

    /// Stationary limit of a component. Values on a jump ray are the mean of the one-sided
    /// limits; the diffracted and assembled amplitudes need `ρ > 0` on the kernel route.
    pub fn component(&self, c: crate::Component, p: FieldPoint) -> Result<Complex64> {
        use crate::Component as C;
        let mean = |f: &dyn Fn(Side) -> Result<Complex64>| -> Result<Complex64> {
            Ok(0.5 * (f(Side::Below)? + f(Side::Above)?))
        };
        let ray = self.on_ray(p.phi);
        match c {
            C::Incident => Ok(self.amplitude_incident(p)),
            C::Incident0 | C::Incident1 | C::Reflected if ray => mean(&|s| {
                let (i0, r) = self.geometric_one_sided(p, s);
                Ok(match c {
                    C::Incident0 => i0,
                    C::Incident1 => self.amplitude_incident(p) - i0,
                    _ => r,
                })
            }),
            C::Incident0 => Ok(self.amplitude_incident0(p).value),
            C::Incident1 => Ok(self.amplitude_incident1(p).value),
            C::Reflected => Ok(self.amplitude_reflected(p).value),
            C::Diffracted if ray => mean(&|s| self.amplitude_diffracted(p, Some(s))),
            C::Diffracted => self.amplitude_diffracted(p, None),
            C::Total => self.amplitude_total(p, Route::Kernel),
            C::Scattered => self.amplitude_scattered(p, Route::Kernel),
            C::Scattered0 if ray => mean(&|s| {
                let (_, r) = self.geometric_one_sided(p, s);
                Ok(r + self.amplitude_diffracted(p, Some(s))?)
            }),
            C::Scattered0 => Ok(self.amplitude_reflected(p).value + self.amplitude_diffracted(p, None)?),
        }
    }

    /// Both routes at one point; a disagreement above `tol` is reported as a precision error.
    pub fn cross_validate(&self, p: FieldPoint, tol: f64) -> Result<(Complex64, Complex64)> {
        let k = self.amplitude_total(p, Route::Kernel)?;
        let f = self.amplitude_total(p, Route::Fresnel)?;
        let d = (k - f).norm();
        if d > tol {
            return Err(Error::Precision {
                achieved: d,
                requested: tol,
                value: k,
            });
        }
        Ok((k, f))
    }
}

/// `A = e^{−iω₀ρcos(φ−α)} 𝔉(√(2ω₀ρ) cos((φ−α)/2)) − e^{−iω₀ρcos(φ+α)} 𝔉(√(2ω₀ρ) cos((φ+α)/2))`.
pub fn fresnel_total(sc: &ScenarioConfig, p: FieldPoint) -> Complex64 {
    let k = sc.omega0;
    let s = (2.0 * k * p.rho).sqrt();
    let a = p.phi - sc.alpha;
    let b = p.phi + sc.alpha;
    Complex64::from_polar(1.0, -k * p.rho * a.cos()) * fresnel(s * (a / 2.0).cos())
        - Complex64::from_polar(1.0, -k * p.rho * b.cos()) * fresnel(s * (b / 2.0).cos())
}

/// Switch point between quadrature and the asymptotic series.
pub const FRESNEL_SWITCH: f64 = 6.0;

/// `𝔉(a) = e^{−iπ/4} π^{−1/2} ∫_{−∞}^{a} e^{is²} ds`.
pub fn fresnel(a: f64) -> Complex64 {
    let c = Complex64::from_polar(1.0 / PI.sqrt(), -PI / 4.0);
    if a.abs() <= FRESNEL_SWITCH {
        // 𝔉(a) = 1/2 + c ∫₀^a e^{is²} ds
        0.5 + c * fresnel_core(a)
    } else {
        let tail = fresnel_tail(a.abs());
        if a > 0.0 {
            1.0 - c * tail
        } else {
            c * tail
        }
    }
}

/// `∫₀^a e^{is²} ds` by adaptive quadrature, split so each panel spans at most π of phase.
fn fresnel_core(a: f64) -> Complex64 {
    if a == 0.0 {
        return Complex64::new(0.0, 0.0);
    }
    let x = a.abs();
    let n = ((x * x / PI).ceil() as usize).max(1);
    let breaks: Vec<f64> = (0..=n).map(|k| x * (k as f64 / n as f64).sqrt()).collect();
    let spec = QuadratureSpec {
        rel_tol: 1e-14,
        abs_tol: 1e-16,
        ..QuadratureSpec::default()
    };
    let v = quadrature::integrate(|s| Complex64::from_polar(1.0, s * s), &breaks, &spec)
        .map(|e| e.value)
        .unwrap_or_else(|e| match e {
            Error::Precision { value, .. } => value,
            _ => Complex64::new(f64::NAN, f64::NAN),
        });
    if a < 0.0 {
        -v
    } else {
        v
    }
}

/// `∫_x^∞ e^{is²} ds ~ −e^{ix²}/(2ix) Σ (2n−1)!!/(2ix²)ⁿ`, summed to the smallest term.
fn fresnel_tail(x: f64) -> Complex64 {
    let z = 1.0 / (2.0 * I * x * x);
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    let mut last = 1.0;
    for n in 1..200 {
        term *= z * (2 * n - 1) as f64;
        let m = term.norm();
        if m > last || m < 1e-18 {
            if m < 1e-18 {
                sum += term;
            }
            break;
        }
        sum += term;
        last = m;
    }
    -Complex64::from_polar(1.0, x * x) / (2.0 * I * x) * sum
}

#[cfg(test)]
mod tests {
    use super::*;

    fn amp() -> StationaryAmplitude {
        StationaryAmplitude::new(&ScenarioConfig::reference(), QuadratureSpec::default())
    }

    #[test]
    fn fresnel_limits_and_continuity() {
        assert!((fresnel(0.0) - 0.5).norm() < 1e-15);
        assert!((fresnel(60.0) - 1.0).norm() < 1e-2);
        assert!(fresnel(-60.0).norm() < 1e-2);
        let lo = fresnel(FRESNEL_SWITCH - 1e-14);
        let hi = fresnel(FRESNEL_SWITCH + 1e-14);
        assert!((lo - hi).norm() < 1e-13, "{lo} {hi}");
        let lo = fresnel(-FRESNEL_SWITCH + 1e-14);
        let hi = fresnel(-FRESNEL_SWITCH - 1e-14);
        assert!((lo - hi).norm() < 1e-13);
    }

    #[test]
    fn fresnel_reflection_identity() {
        for a in [0.3, 2.0, 5.5, 7.0, 12.0] {
            assert!((fresnel(a) + fresnel(-a) - 1.0).norm() < 1e-14);
        }
    }

    #[test]
    fn fresnel_against_high_precision_values() {
        // ∫₀^1 e^{is²} ds = C(1) + iS(1) in the unnormalized convention
        let v = fresnel_core(1.0);
        assert!((v.re - 0.904_524_237_900_272_1).abs() < 1e-14);
        assert!((v.im - 0.310_268_301_723_381_1).abs() < 1e-14);
    }

    #[test]
    fn geometric_parts_cancel_on_upper_face() {
        let a = amp();
        for rho in [0.5, 3.0, 17.0] {
            let p = FieldPoint::new(rho, 0.0).unwrap();
            let s = a.amplitude_incident0(p).value + a.amplitude_reflected(p).value;
            assert!(s.norm() < 1e-15);
        }
    }

    #[test]
    fn regions() {
        let a = amp();
        let p = FieldPoint::new(2.0, a.scenario.alpha).unwrap();
        assert!((a.amplitude_incident0(p).value - Complex64::from_polar(1.0, -2.0)).norm() < 1e-15);
        let p = FieldPoint::new(2.0, a.scenario.phi_minus + 0.1).unwrap();
        assert!(!a.amplitude_reflected(p).in_region);
        assert_eq!(a.amplitude_reflected(p).value, Complex64::new(0.0, 0.0));
    }
}
