//! Diffraction kernels `U`, `Z`, `𝒵`, the singular split of `𝒵` near the shadow and
//! reflection rays, and the stationary Sommerfeld kernel `ζ`.
//!
//! With `ε± = φ± − φ` the kernel expands into four quarter-argument coth terms,
//!
//! ```text
//! 𝒵(β,φ) = −coth((β+iε₊)/4) + coth((β+iε₋)/4) + coth((β−i(φ₋+φ))/4) − coth((β−i(φ₊+φ))/4)
//! ```
//!
//! and all evaluation goes through that form. The signs sum to zero, so for large `|Re β|`
//! each coth is replaced by `coth − sgn` and the exponentially small result stays accurate.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scenario::ScenarioConfig;
use crate::special::{coth, coth_minus_inv, coth_pole_distance, coth_tail};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Raw kernel evaluation refuses arguments closer than this to a pole.
pub const POLE_RADIUS: f64 = 1e-12;

const SIGNS: [f64; 4] = [-1.0, 1.0, 1.0, -1.0];

/// Kernel handle; cheap to copy and share.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Kernel {
    pub alpha: f64,
    pub phi_plus: f64,
    pub phi_minus: f64,
}

// (coth(w) − σ, σ) with σ the sign of Re w; the tail form is used away from the poles.
fn split(w: Complex64) -> (Complex64, f64) {
    let s = if w.re >= 0.0 { 1.0 } else { -1.0 };
    if w.re.abs() > 0.5 {
        (coth_tail(w), s)
    } else {
        (coth(w) - s, s)
    }
}

// d/dw coth = −(coth−σ)(coth+σ)
fn dcoth(w: Complex64) -> Complex64 {
    let (t, s) = split(w);
    -t * (t + 2.0 * s)
}

fn d2coth(w: Complex64) -> Complex64 {
    let (t, s) = split(w);
    -2.0 * (t + s) * (-t * (t + 2.0 * s))
}

impl Kernel {
    pub fn new(sc: &ScenarioConfig) -> Self {
        Kernel {
            alpha: sc.alpha,
            phi_plus: sc.phi_plus,
            phi_minus: sc.phi_minus,
        }
    }

    fn args(&self, beta: Complex64, phi: f64) -> [Complex64; 4] {
        [
            (beta + I * (self.phi_plus - phi)) / 4.0,
            (beta + I * (self.phi_minus - phi)) / 4.0,
            (beta - I * (self.phi_minus + phi)) / 4.0,
            (beta - I * (self.phi_plus + phi)) / 4.0,
        ]
    }

    /// `U(ζ) = coth((ζ − iπ/2 + iα)/4) − coth((ζ − iπ/2 − iα)/4)`.
    pub fn eval_u(&self, zeta: Complex64) -> Result<Complex64> {
        let a = (zeta - I * (PI / 2.0) + I * self.alpha) / 4.0;
        let b = (zeta - I * (PI / 2.0) - I * self.alpha) / 4.0;
        for (w, shift) in [(a, -I * (PI / 2.0) + I * self.alpha), (b, -I * (PI / 2.0) - I * self.alpha)] {
            let (d, p) = coth_pole_distance(w);
            if 4.0 * d < POLE_RADIUS {
                return Err(Error::PoleProximity {
                    location: 4.0 * p - shift,
                    distance: 4.0 * d,
                });
            }
        }
        Ok(coth(a) - coth(b))
    }

    /// `Z(z) = −U(z − iπ/2) + U(z − 5iπ/2)`.
    pub fn eval_z(&self, z: Complex64) -> Result<Complex64> {
        let u1 = self.eval_u(z - I * (PI / 2.0)).map_err(|e| shift_pole(e, I * (PI / 2.0)))?;
        let u2 = self.eval_u(z - I * (2.5 * PI)).map_err(|e| shift_pole(e, I * (2.5 * PI)))?;
        Ok(u2 - u1)
    }

    /// `𝒵(β,φ) = Z(β + 2πi − iφ)` with pole checks.
    pub fn eval_calz(&self, beta: Complex64, phi: f64) -> Result<Complex64> {
        self.check_poles(beta, phi)?;
        Ok(self.calz(beta, phi))
    }

    fn check_poles(&self, beta: Complex64, phi: f64) -> Result<()> {
        for line in [self.phi_plus, self.phi_minus] {
            if (phi - line).abs() < POLE_RADIUS && beta.norm() < 1e-6 {
                return Err(Error::PoleProximity {
                    location: Complex64::new(0.0, phi - line),
                    distance: beta.norm(),
                });
            }
        }
        let w = self.args(beta, phi);
        for wk in w {
            let (d, p) = coth_pole_distance(wk);
            if 4.0 * d < POLE_RADIUS {
                return Err(Error::PoleProximity {
                    location: beta - 4.0 * (wk - p),
                    distance: 4.0 * d,
                });
            }
        }
        Ok(())
    }

    /// Unchecked `𝒵(β,φ)`; infinite or NaN exactly at a pole.
    pub fn calz(&self, beta: Complex64, phi: f64) -> Complex64 {
        let w = self.args(beta, phi);
        let mut acc = Complex64::new(0.0, 0.0);
        if beta.re.abs() >= 4.0 {
            for k in 0..4 {
                acc += SIGNS[k] * coth_tail(w[k]);
            }
        } else {
            for k in 0..4 {
                acc += SIGNS[k] * coth(w[k]);
            }
        }
        acc
    }

    /// `∂β𝒵(β,φ)`.
    pub fn dbeta_calz(&self, beta: Complex64, phi: f64) -> Complex64 {
        let w = self.args(beta, phi);
        let mut acc = Complex64::new(0.0, 0.0);
        for k in 0..4 {
            acc += SIGNS[k] * dcoth(w[k]);
        }
        acc / 4.0
    }

    /// `∂φ𝒵 = −i ∂β𝒵`, since every argument depends on `β − iφ`.
    pub fn dphi_calz(&self, beta: Complex64, phi: f64) -> Complex64 {
        -I * self.dbeta_calz(beta, phi)
    }

    pub fn eval_dphi_calz(&self, beta: Complex64, phi: f64) -> Result<Complex64> {
        self.check_poles(beta, phi)?;
        Ok(self.dphi_calz(beta, phi))
    }

    /// `∂φφ𝒵 = −∂ββ𝒵`.
    pub fn dphiphi_calz(&self, beta: Complex64, phi: f64) -> Complex64 {
        let w = self.args(beta, phi);
        let mut acc = Complex64::new(0.0, 0.0);
        for k in 0..4 {
            acc += SIGNS[k] * d2coth(w[k]);
        }
        -acc / 16.0
    }

    /// Singular split at angle `φ`.
    pub fn decompose(&self, phi: f64) -> KernelDecomposition {
        KernelDecomposition {
            kernel: *self,
            phi,
            eps_plus: self.phi_plus - phi,
            eps_minus: self.phi_minus - phi,
            singular_coeff_plus: Complex64::new(-4.0, 0.0),
            singular_coeff_minus: Complex64::new(4.0, 0.0),
        }
    }

    /// Stationary kernel `ζ(γ,φ) = (1 − e^{i(−γ+φ−α)/2})^{−1} − (1 − e^{i(−γ+φ+α)/2})^{−1}`.
    pub fn sommerfeld(&self, gamma: Complex64, phi: f64) -> Result<Complex64> {
        for sign in [-1.0, 1.0] {
            let pole_base = phi + sign * self.alpha;
            let k = ((pole_base - gamma.re) / (4.0 * PI)).round();
            let pole = Complex64::new(pole_base - 4.0 * PI * k, 0.0);
            let d = (gamma - pole).norm();
            if d < POLE_RADIUS {
                return Err(Error::PoleProximity { location: pole, distance: d });
            }
        }
        // 1/(1 − e^u) = (1 − coth(u/2))/2
        let x1 = (-gamma + phi - self.alpha) / 2.0;
        let x2 = (-gamma + phi + self.alpha) / 2.0;
        Ok((coth(I * x2 / 2.0) - coth(I * x1 / 2.0)) / 2.0)
    }
}

fn shift_pole(e: Error, by: Complex64) -> Error {
    match e {
        Error::PoleProximity { location, distance } => Error::PoleProximity {
            location: location + by,
            distance,
        },
        other => other,
    }
}

/// `𝒵(β,φ) = −4/(β+iε₊) + 4/(β+iε₋) + Ž(β,φ)` at a fixed angle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KernelDecomposition {
    pub kernel: Kernel,
    pub phi: f64,
    pub eps_plus: f64,
    pub eps_minus: f64,
    pub singular_coeff_plus: Complex64,
    pub singular_coeff_minus: Complex64,
}

impl KernelDecomposition {
    pub fn singular(&self, beta: Complex64) -> Complex64 {
        self.singular_coeff_plus / (beta + I * self.eps_plus)
            + self.singular_coeff_minus / (beta + I * self.eps_minus)
    }

    /// Bounded remainder `Ž`, evaluated without cancellation near `β = −iε±`.
    pub fn remainder(&self, beta: Complex64) -> Complex64 {
        let w = self.kernel.args(beta, self.phi);
        -coth_minus_inv(w[0]) + coth_minus_inv(w[1]) + coth(w[2]) - coth(w[3])
    }

    /// Remainder with only the `ε₊` (or only the `ε₋`) pole removed.
    pub fn remainder_one(&self, beta: Complex64, plus: bool) -> Complex64 {
        let w = self.kernel.args(beta, self.phi);
        if plus {
            -coth_minus_inv(w[0]) + coth(w[1]) + coth(w[2]) - coth(w[3])
        } else {
            -coth(w[0]) + coth_minus_inv(w[1]) + coth(w[2]) - coth(w[3])
        }
    }

    pub fn reconstruct(&self, beta: Complex64) -> Complex64 {
        self.singular(beta) + self.remainder(beta)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k() -> Kernel {
        Kernel::new(&ScenarioConfig::reference())
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn u_at_half_pi() {
        let k = k();
        let v = k.eval_u(c(0.0, PI / 2.0)).unwrap();
        let expect = 2.0 * coth(c(0.0, k.alpha / 4.0));
        assert!((v - expect).norm() < 1e-14);
    }

    #[test]
    fn u_pole_reported() {
        let k = k();
        match k.eval_u(c(0.0, PI / 2.0 - k.alpha)) {
            Err(Error::PoleProximity { location, .. }) => {
                assert!((location - c(0.0, PI / 2.0 - k.alpha)).norm() < 1e-12)
            }
            r => panic!("{r:?}"),
        }
    }

    #[test]
    fn expanded_form_matches_composition() {
        let k = k();
        for &(b, phi) in &[(0.3, 1.0), (-2.0, 4.0), (7.5, 0.2), (-12.0, 6.0), (0.0, PI)] {
            let beta = c(b, 0.0);
            let z = k.eval_z(beta + I * (2.0 * PI) - I * phi).unwrap();
            let v = k.calz(beta, phi);
            assert!((z - v).norm() < 1e-13 * z.norm().max(1e-300) + 1e-300, "{b} {phi}: {z} {v}");
        }
    }

    #[test]
    fn z_has_pole_on_reflection_ray() {
        let k = k();
        let z = c(0.0, 2.0 * PI - k.phi_minus);
        assert!(matches!(k.eval_z(z), Err(Error::PoleProximity { .. })));
        assert!(matches!(k.eval_calz(c(0.0, 0.0), k.phi_minus), Err(Error::PoleProximity { .. })));
        assert!(matches!(k.eval_calz(c(1e-7, 0.0), k.phi_plus), Err(Error::PoleProximity { .. })));
    }

    #[test]
    fn screen_faces_are_odd() {
        let k = k();
        for b in [0.1, 0.7, 2.5, 9.0] {
            for phi in [0.0, 2.0 * PI] {
                let s = k.calz(c(b, 0.0), phi) + k.calz(c(-b, 0.0), phi);
                assert!(s.norm() < 1e-13, "{b} {phi} {s}");
            }
        }
    }

    #[test]
    fn derivative_matches_finite_difference() {
        let k = k();
        let h = 1e-5;
        for &(b, phi) in &[(0.4, 2.0), (-1.3, 5.0), (3.0, 0.5)] {
            let beta = c(b, 0.0);
            let fd = (k.calz(beta, phi + h) - k.calz(beta, phi - h)) / (2.0 * h);
            assert!((fd - k.dphi_calz(beta, phi)).norm() < 1e-7);
            let fd2 = (k.calz(beta, phi + h) - 2.0 * k.calz(beta, phi) + k.calz(beta, phi - h)) / (h * h);
            assert!((fd2 - k.dphiphi_calz(beta, phi)).norm() < 1e-3);
        }
    }

    #[test]
    fn decomposition_reconstructs() {
        let k = k();
        let d = k.decompose(k.phi_minus + 1e-3);
        for b in [-0.9, -1e-4, 1e-4, 0.5] {
            let beta = c(b, 0.0);
            let z = k.calz(beta, d.phi);
            assert!((d.reconstruct(beta) - z).norm() < 1e-10 * z.norm().max(1.0));
        }
    }

    #[test]
    fn sommerfeld_poles_and_decay() {
        let k = k();
        let phi = 2.0;
        assert!(k.sommerfeld(c(phi - k.alpha, 0.0), phi).is_err());
        assert!(k.sommerfeld(c(phi + k.alpha, 0.0), phi).is_err());
        assert!(k.sommerfeld(c(phi + k.alpha - 4.0 * PI, 0.0), phi).is_err());
        let v = k.sommerfeld(c(0.3, -20.0), phi).unwrap();
        assert!(v.norm() < 2.0 * (-10.0f64).exp());
    }

    #[test]
    fn sommerfeld_matches_direct_formula() {
        let k = k();
        let g = c(0.7, 0.4);
        let phi = 1.1;
        let e1 = (I * (-g + phi - k.alpha) / 2.0).exp();
        let e2 = (I * (-g + phi + k.alpha) / 2.0).exp();
        let direct = 1.0 / (1.0 - e1) - 1.0 / (1.0 - e2);
        assert!((k.sommerfeld(g, phi).unwrap() - direct).norm() < 1e-14);
    }
}
