//! Singular integrals over `[−1, 1]` with a pole at `β = −iε` near the real axis.
//!
//! For `|ε|` below half the deformation radius `r` the segment `[−r, r]` is replaced by the
//! lower semicircle `γ_r = {r e^{iθ}, −π < θ < 0}`; the closed loop formed with `[−r, r]` is
//! clockwise, so a pole inside (`ε > 0`) contributes `−2πi Res`. Otherwise the real line is
//! integrated directly with a break point at the pole's projection.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::gk::Runner;
use super::{Estimate, QuadratureSpec};
use crate::error::{Error, Result};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Direction from which an angle on a jump ray is approached.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Side {
    /// From smaller φ; the pole offset `ε = φ* − φ` tends to `0⁺`.
    Below,
    /// From larger φ; `ε → 0⁻`.
    Above,
}

/// Whether the pole `−iε` counts as lying in the lower half plane.
pub(crate) fn pole_below(eps: f64, side: Option<Side>) -> Result<bool> {
    if eps > 0.0 {
        Ok(true)
    } else if eps < 0.0 {
        Ok(false)
    } else {
        match side {
            Some(Side::Below) => Ok(true),
            Some(Side::Above) => Ok(false),
            None => Err(Error::Domain("pole on the integration path; a one-sided limit is required".into())),
        }
    }
}

/// Largest `r ≤ 1/2` with `cosh r − 1 < 1/4` and `|ω₁|(cosh r − 1) ≤ ω₂/4`, found by bisection,
/// further capped by `√(2/(|ω|ρ))` so that `|e^{iωρ cosh β}|` grows by at most `e` on `γ_r`.
pub fn deformation_radius(omega: Complex64, rho: f64) -> f64 {
    let cap = (2.0 / (omega.norm() * rho).max(1e-300)).sqrt().min(0.5);
    if !(omega.im > 0.0) {
        // real ω: the second condition forces r = 0, keep the growth cap alone
        return cap;
    }
    let ok = |r: f64| {
        let h = r.cosh() - 1.0;
        h < 0.25 && omega.re.abs() * h <= omega.im / 4.0
    };
    if ok(cap) {
        return cap;
    }
    let (mut lo, mut hi) = (0.0, cap);
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if ok(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

/// `∫` over `[−1, −r] ∪ γ_r ∪ [r, 1]` of an analytic `f`.
pub(crate) fn deformed_path<F: Fn(Complex64) -> Complex64>(
    runner: &mut Runner,
    f: &F,
    r: f64,
    splits: usize,
    spec: &QuadratureSpec,
) -> Result<Estimate> {
    let mut right = vec![r];
    for k in 1..splits {
        right.push(r + (1.0 - r) * k as f64 / splits as f64);
    }
    right.push(1.0);
    let left: Vec<f64> = right.iter().rev().map(|x| -x).collect();
    let real = |x: f64| f(Complex64::new(x, 0.0));
    let a = runner.run(real, &left, spec)?;
    let b = runner.run(real, &right, spec)?;
    let arc = |th: f64| {
        let e = Complex64::from_polar(1.0, th);
        f(r * e) * (I * r * e)
    };
    let c = runner.run(arc, &[-PI, -PI / 2.0, 0.0], spec)?;
    Ok(a + b + c)
}

/// `∫_{−1}^{1}` along the real axis with break points at `0`, `±r` and oscillation splits.
pub(crate) fn real_segment<F: Fn(Complex64) -> Complex64>(
    runner: &mut Runner,
    f: &F,
    extra: &[f64],
    splits: usize,
    spec: &QuadratureSpec,
) -> Result<Estimate> {
    let mut breaks = vec![-1.0, 0.0, 1.0];
    for k in 1..splits {
        let x = k as f64 / splits as f64;
        breaks.push(x);
        breaks.push(-x);
    }
    breaks.extend(extra.iter().copied().filter(|x| x.abs() < 1.0));
    breaks.sort_by(f64::total_cmp);
    breaks.dedup();
    runner.run(|x| f(Complex64::new(x, 0.0)), &breaks, spec)
}

/// Number of sub-panels that keeps `ωρ(cosh β − 1)` to about π per panel on `[0, 1]`.
pub(crate) fn oscillation_splits(omega: Complex64, rho: f64) -> usize {
    let phase = omega.norm() * rho * (1f64.cosh() - 1.0);
    ((phase / PI).ceil() as usize).clamp(1, 64)
}

/// `∫_{−1}^{1} f(β) dβ` for `f` with a single pole at `−iε`, residue `res`.
pub fn singular_piece<F: Fn(Complex64) -> Complex64>(
    f: F,
    res: Complex64,
    eps: f64,
    side: Option<Side>,
    r: f64,
    splits: usize,
    spec: &QuadratureSpec,
) -> Result<Estimate> {
    let below = pole_below(eps, side)?;
    if eps.abs() < 0.5 * r {
        let mut e = deformed_path(&mut Runner::adaptive(), &f, r, splits, spec)?;
        if below {
            e.value -= 2.0 * PI * I * res;
        }
        Ok(e)
    } else {
        real_segment(&mut Runner::adaptive(), &f, &[-eps.abs(), eps.abs()], splits, spec)
    }
}

/// The three model integrals over `[−1, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum KKind {
    /// `e^{iωρ cosh β}/(β+iε)`
    K0,
    /// `cosh β · e^{iωρ cosh β}` (no pole)
    K1,
    /// `e^{iωρ cosh β}/(β+iε)²`
    K2,
}

/// `𝒦_kind(ρ, ω, ε) = ∫_{−1}^{1} K_kind(β) dβ`, through the deformed path when `|ε| < r/2`.
pub fn integrate_k(kind: KKind, rho: f64, omega: Complex64, eps: f64, spec: &QuadratureSpec) -> Result<Estimate> {
    crate::scenario::check_upper(omega)?;
    if !(rho > 0.0) {
        return Err(Error::Domain(format!("rho = {rho} must be positive")));
    }
    if eps == 0.0 {
        return Err(Error::Domain("eps must be nonzero".into()));
    }
    let r = spec.deformation_radius.unwrap_or_else(|| deformation_radius(omega, rho));
    let splits = oscillation_splits(omega, rho);
    let iwr = I * omega * rho;
    let pole = Complex64::new(0.0, -eps);
    let e0 = (iwr * eps.cos()).exp();
    match kind {
        KKind::K0 => singular_piece(|b| (iwr * b.cosh()).exp() / (b + I * eps), e0, eps, None, r, splits, spec),
        KKind::K1 => singular_piece(|b| b.cosh() * (iwr * b.cosh()).exp(), Complex64::new(0.0, 0.0), eps, None, r, splits, spec),
        KKind::K2 => {
            // residue of g/(β−β₀)² is g'(β₀)
            let res = iwr * pole.sinh() * e0;
            singular_piece(|b| (iwr * b.cosh()).exp() / ((b + I * eps) * (b + I * eps)), res, eps, None, r, splits, spec)
        }
    }
}
