//! Kernel integrals `∫ 𝒵(β,φ) F(t − ρ cosh β) dβ` and `∫ 𝒵(β,φ) w(β) e^{iωρ cosh β} dβ`.
//!
//! Both are evaluated as linear functionals: a list of terms (each with its own `ρ`, `φ`, time or
//! weight, and coefficient) is integrated as one integrand on one set of panels. Finite-difference
//! stencils built this way see the quadrature error of the combination rather than the
//! independent errors of each term, which would otherwise be amplified by `1/h²`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::contour::{deformation_radius, deformed_path, oscillation_splits, pole_below, real_segment, Side};
use super::gk::Runner;
use super::{Estimate, QuadratureSpec};
use crate::error::{Error, Result};
use crate::kernel::Kernel;
use crate::scenario::Profile;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Factor multiplying `e^{iωρ cosh β}` in the frequency-domain integrand. The angular
/// derivatives are moved onto the exponential by parts (`∂φ𝒵 = −i∂β𝒵`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Weight {
    Value,
    DRho,
    DRhoRho,
    DPhi,
    DPhiPhi,
}

impl Weight {
    fn eval(self, beta: Complex64, omega: Complex64, rho: f64) -> Complex64 {
        match self {
            Weight::Value => Complex64::new(1.0, 0.0),
            Weight::DRho => I * omega * beta.cosh(),
            Weight::DRhoRho => {
                let c = omega * beta.cosh();
                -c * c
            }
            Weight::DPhi => -omega * rho * beta.sinh(),
            Weight::DPhiPhi => {
                let s = beta.sinh();
                -I * omega * rho * (beta.cosh() + I * omega * rho * s * s)
            }
        }
    }
}

/// One term `coeff · ∫ 𝒵(β,φ) w(β) e^{iωρ cosh β} dβ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FreqTerm {
    pub rho: f64,
    pub phi: f64,
    /// Needed only when `φ` lies exactly on a jump ray.
    pub side: Option<Side>,
    pub weight: Weight,
    pub coeff: Complex64,
}

impl FreqTerm {
    pub fn value(rho: f64, phi: f64) -> Self {
        FreqTerm {
            rho,
            phi,
            side: None,
            weight: Weight::Value,
            coeff: Complex64::new(1.0, 0.0),
        }
    }
}

/// One term `coeff · ∫ 𝒵(β,φ) F(t − ρ cosh β) dβ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TimeTerm {
    pub rho: f64,
    pub phi: f64,
    pub t: f64,
    pub side: Option<Side>,
    pub coeff: Complex64,
}

#[derive(Debug, Clone, Copy)]
struct Pole {
    eps: f64,
    coeff: f64,
    plus: bool,
    below: bool,
}

// pole of 𝒵(·,φ) within `radius` of the real axis, if any (at most one can be that close)
fn near_pole(kernel: &Kernel, phi: f64, side: Option<Side>, radius: f64) -> Result<Option<Pole>> {
    for (line, coeff, plus) in [(kernel.phi_plus, -4.0, true), (kernel.phi_minus, 4.0, false)] {
        let eps = line - phi;
        if eps.abs() < radius {
            let below = pole_below(eps, side).map_err(|_| Error::JumpLine { phi })?;
            return Ok(Some(Pole { eps, coeff, plus, below }));
        }
    }
    Ok(None)
}

fn check_term(rho: f64, phi: f64) -> Result<()> {
    if !(rho > 0.0) || !rho.is_finite() {
        return Err(Error::Domain(format!("rho = {rho} must be positive")));
    }
    if !(0.0..=2.0 * PI).contains(&phi) {
        return Err(Error::Domain(format!("phi = {phi} outside [0, 2pi]")));
    }
    Ok(())
}

/// `∫_ℝ 𝒵(β,φ) e^{iωρ cosh β} dβ` (without the `i/8π` prefactor), `Im ω > 0`.
pub fn integrate_frequency_kernel(
    kernel: &Kernel,
    rho: f64,
    phi: f64,
    omega: Complex64,
    spec: &QuadratureSpec,
) -> Result<Estimate> {
    crate::scenario::check_upper(omega)?;
    integrate_frequency_functional(kernel, &[FreqTerm::value(rho, phi)], omega, None, spec)
}

/// Sum of [`FreqTerm`]s for `Im ω ≥ 0`, `ω ≠ 0`. `cutoff` overrides the truncation point of the
/// tails (in `Re β`).
pub fn integrate_frequency_functional(
    kernel: &Kernel,
    terms: &[FreqTerm],
    omega: Complex64,
    cutoff: Option<f64>,
    spec: &QuadratureSpec,
) -> Result<Estimate> {
    frequency_run(&mut Runner::adaptive(), kernel, terms, omega, cutoff, spec)
}

/// Finite-difference stencil of frequency-domain integrals: the panels are chosen adaptively for
/// the sum of the terms with unit coefficients and then reused for the actual coefficients, so
/// the result is the exact stencil of one fixed quadrature rule.
pub fn integrate_frequency_stencil(
    kernel: &Kernel,
    terms: &[FreqTerm],
    omega: Complex64,
    spec: &QuadratureSpec,
) -> Result<Estimate> {
    let reference: Vec<FreqTerm> = terms
        .iter()
        .map(|t| FreqTerm {
            coeff: Complex64::new(1.0, 0.0),
            ..*t
        })
        .collect();
    let mut runner = Runner::adaptive();
    frequency_run(&mut runner, kernel, &reference, omega, None, spec)?;
    frequency_run(&mut runner.into_replay(), kernel, terms, omega, None, spec)
}

fn frequency_run(
    runner: &mut Runner,
    kernel: &Kernel,
    terms: &[FreqTerm],
    omega: Complex64,
    cutoff: Option<f64>,
    spec: &QuadratureSpec,
) -> Result<Estimate> {
    spec.validate()?;
    if omega.im < 0.0 || omega.norm() == 0.0 || !omega.re.is_finite() || !omega.im.is_finite() {
        return Err(Error::Domain(format!("omega = {omega} must be nonzero with Im omega >= 0")));
    }
    if terms.is_empty() {
        return Ok(Estimate::zero());
    }
    for t in terms {
        check_term(t.rho, t.phi)?;
    }
    let rho_max = terms.iter().map(|t| t.rho).fold(0.0, f64::max);
    let rho_min = terms.iter().map(|t| t.rho).fold(f64::INFINITY, f64::min);
    let r = spec.deformation_radius.unwrap_or_else(|| deformation_radius(omega, rho_max));
    let splits = oscillation_splits(omega, rho_max);

    let mut poles = Vec::with_capacity(terms.len());
    let mut extra = vec![-r, r];
    for t in terms {
        let p = near_pole(kernel, t.phi, t.side, 0.5 * r)?;
        poles.push(p);
        if p.is_none() {
            if let Some(far) = near_pole(kernel, t.phi, t.side, 1.0)? {
                extra.push(far.eps.abs());
                extra.push(-far.eps.abs());
            }
        }
    }
    let decs: Vec<_> = terms.iter().map(|t| kernel.decompose(t.phi)).collect();
    let g = |t: &FreqTerm, b: Complex64| t.weight.eval(b, omega, t.rho) * (I * omega * t.rho * b.cosh()).exp();

    // real segment with the near poles subtracted
    let central = |b: Complex64| {
        let mut acc = Complex64::new(0.0, 0.0);
        for (k, t) in terms.iter().enumerate() {
            let z = match poles[k] {
                Some(p) => decs[k].remainder_one(b, p.plus),
                None => kernel.calz(b, t.phi),
            };
            acc += t.coeff * z * g(t, b);
        }
        acc
    };
    let mut est = real_segment(runner, &central, &extra, splits, spec)?;

    // the subtracted poles, on the deformed path
    if poles.iter().any(Option::is_some) {
        let sing = |b: Complex64| {
            let mut acc = Complex64::new(0.0, 0.0);
            for (k, t) in terms.iter().enumerate() {
                if let Some(p) = poles[k] {
                    acc += t.coeff * p.coeff * g(t, b) / (b + I * p.eps);
                }
            }
            acc
        };
        let mut e = deformed_path(runner, &sing, r, splits, spec)?;
        for (k, t) in terms.iter().enumerate() {
            if let Some(p) = poles[k] {
                if p.below {
                    e.value -= 2.0 * PI * I * t.coeff * p.coeff * g(t, Complex64::new(0.0, -p.eps));
                }
            }
        }
        est = est + e;
    }

    // tails on β = s + iθ sgn(s) tanh(|s| − 1), θ = π/2 − arg ω
    let theta = PI / 2.0 - omega.arg();
    let s_max = cutoff.unwrap_or_else(|| 4f64.max(2.0 + (100.0 / (omega.norm() * rho_min)).ln()));
    let mut breaks = vec![1.0];
    let mut s = 1.25;
    while s < s_max {
        breaks.push(s);
        s += if s < 2.0 { 0.25 } else { 0.5 };
    }
    breaks.push(s_max);
    for sign in [1.0, -1.0] {
        let tail = |s: f64| {
            let th = (s - 1.0).tanh();
            let b = Complex64::new(sign * s, sign * theta * th);
            let db = Complex64::new(1.0, theta * (1.0 - th * th));
            let mut acc = Complex64::new(0.0, 0.0);
            for t in terms {
                acc += t.coeff * kernel.calz(b, t.phi) * g(t, b);
            }
            acc * db
        };
        let e = runner.run(tail, &breaks, spec)?;
        // on the left tail the reversed orientation cancels the sign of dβ/ds
        est = est + e;
    }
    Ok(est)
}

/// `∫ 𝒵(β,φ) F(t − ρ cosh β) dβ` over `|β| ≤ arccosh(t/ρ)` (without the `i/8π` prefactor).
pub fn integrate_timedomain_kernel(
    kernel: &Kernel,
    profile: &Profile,
    omega0: f64,
    rho: f64,
    phi: f64,
    t: f64,
    spec: &QuadratureSpec,
) -> Result<Estimate> {
    let term = TimeTerm {
        rho,
        phi,
        t,
        side: None,
        coeff: Complex64::new(1.0, 0.0),
    };
    integrate_timedomain_functional(kernel, profile, omega0, &[term], spec)
}

/// `∫_{−B}^{B} dβ / (β + iε)`, with the one-sided limit at `ε = 0`.
fn log_term(eps: f64, b: f64, below: bool) -> Complex64 {
    if eps == 0.0 {
        return if below { -I * PI } else { I * PI };
    }
    Complex64::new(b, eps).ln() - Complex64::new(-b, eps).ln()
}

/// Sum of [`TimeTerm`]s; terms with `t ≤ ρ` contribute exactly zero.
pub fn integrate_timedomain_functional(
    kernel: &Kernel,
    profile: &Profile,
    omega0: f64,
    terms: &[TimeTerm],
    spec: &QuadratureSpec,
) -> Result<Estimate> {
    timedomain_run(&mut Runner::adaptive(), kernel, profile, omega0, terms, spec)
}

/// Time-domain counterpart of [`integrate_frequency_stencil`].
pub fn integrate_timedomain_stencil(
    kernel: &Kernel,
    profile: &Profile,
    omega0: f64,
    terms: &[TimeTerm],
    spec: &QuadratureSpec,
) -> Result<Estimate> {
    let reference: Vec<TimeTerm> = terms
        .iter()
        .map(|t| TimeTerm {
            coeff: Complex64::new(1.0, 0.0),
            ..*t
        })
        .collect();
    let mut runner = Runner::adaptive();
    timedomain_run(&mut runner, kernel, profile, omega0, &reference, spec)?;
    timedomain_run(&mut runner.into_replay(), kernel, profile, omega0, terms, spec)
}

fn timedomain_run(
    runner: &mut Runner,
    kernel: &Kernel,
    profile: &Profile,
    omega0: f64,
    terms: &[TimeTerm],
    spec: &QuadratureSpec,
) -> Result<Estimate> {
    spec.validate()?;
    for t in terms {
        check_term(t.rho, t.phi)?;
    }
    let live: Vec<TimeTerm> = terms.iter().copied().filter(|t| t.t > t.rho).collect();
    if live.is_empty() {
        return Ok(Estimate::zero());
    }
    let bs: Vec<f64> = live.iter().map(|t| (t.t / t.rho).acosh()).collect();
    let mut poles = Vec::with_capacity(live.len());
    for t in &live {
        poles.push(near_pole(kernel, t.phi, t.side, 1.0)?);
    }
    let decs: Vec<_> = live.iter().map(|t| kernel.decompose(t.phi)).collect();
    let f0: Vec<Complex64> = live.iter().map(|t| profile.eval_modulated(omega0, t.t - t.rho)).collect();

    let mut closed = Complex64::new(0.0, 0.0);
    for (k, t) in live.iter().enumerate() {
        if let Some(p) = poles[k] {
            closed += t.coeff * p.coeff * f0[k] * log_term(p.eps, bs[k], p.below);
        }
    }

    let integrand = |x: f64| {
        let b = Complex64::new(x, 0.0);
        let mut acc = Complex64::new(0.0, 0.0);
        for (k, t) in live.iter().enumerate() {
            if x.abs() >= bs[k] {
                continue;
            }
            let f = profile.eval_modulated(omega0, t.t - t.rho * x.cosh());
            let v = match poles[k] {
                Some(p) => decs[k].remainder_one(b, p.plus) * f + p.coeff * (f - f0[k]) / (b + I * p.eps),
                None => kernel.calz(b, t.phi) * f,
            };
            acc += t.coeff * v;
        }
        acc
    };

    let mut breaks = vec![0.0];
    for &b in &bs {
        breaks.push(b);
        breaks.push(-b);
    }
    // equal-phase splits of the widest term: ρ cosh β advances by π/ω₀ per panel
    let (kmax, &bmax) = bs
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .expect("live terms are non-empty");
    let tm = live[kmax];
    let span = tm.t / tm.rho - 1.0;
    let n = ((omega0 * (tm.t - tm.rho) / PI).ceil() as usize).clamp(1, 4000);
    for j in 1..n {
        let x = (1.0 + span * j as f64 / n as f64).acosh();
        if x < bmax {
            breaks.push(x);
            breaks.push(-x);
        }
    }
    for t in &live {
        for s in profile.kinks() {
            let arg = (t.t - s) / t.rho;
            if s > 0.0 && arg > 1.0 {
                let x = arg.acosh();
                breaks.push(x);
                breaks.push(-x);
            }
        }
    }
    breaks.sort_by(f64::total_cmp);
    breaks.dedup();
    let mut est = runner.run(integrand, &breaks, spec)?;
    est.value += closed;
    Ok(est)
}
