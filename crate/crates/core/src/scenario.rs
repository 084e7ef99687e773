//! Physical configuration (incidence angle, carrier frequency, derived rays) and the
//! admissible profile functions with their Fourier-Laplace transforms.

use std::f64::consts::PI;
use std::path::Path;
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quadrature::{self, QuadratureSpec};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Incidence angle α, carrier frequency ω₀ and the quantities derived from them.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScenarioConfig {
    pub alpha: f64,
    pub omega0: f64,
    /// Shadow boundary π + α.
    pub phi_plus: f64,
    /// Reflection boundary π − α.
    pub phi_minus: f64,
    /// Propagation direction of the incident wave, `(cos(π+α), sin(π+α))`.
    pub n: [f64; 2],
    /// Mirror direction `(n₁, −n₂)`.
    pub n_bar: [f64; 2],
}

pub fn make_scenario(alpha: f64, omega0: f64) -> Result<ScenarioConfig> {
    ScenarioConfig::new(alpha, omega0)
}

impl ScenarioConfig {
    pub fn new(alpha: f64, omega0: f64) -> Result<Self> {
        if !(alpha > PI / 2.0 && alpha < PI) {
            return Err(Error::Config(format!(
                "alpha = {alpha} violates pi/2 < alpha < pi"
            )));
        }
        if !(omega0 > 0.0) || !omega0.is_finite() {
            return Err(Error::Config(format!(
                "omega0 = {omega0} violates omega0 > 0"
            )));
        }
        let n = [(PI + alpha).cos(), (PI + alpha).sin()];
        Ok(ScenarioConfig {
            alpha,
            omega0,
            phi_plus: PI + alpha,
            phi_minus: PI - alpha,
            n,
            n_bar: [n[0], -n[1]],
        })
    }

    /// α = 2π/3, ω₀ = 1.
    pub fn reference() -> Self {
        Self::new(2.0 * PI / 3.0, 1.0).expect("reference scenario is valid")
    }

    pub fn eps_plus(&self, phi: f64) -> f64 {
        self.phi_plus - phi
    }

    pub fn eps_minus(&self, phi: f64) -> f64 {
        self.phi_minus - phi
    }

    /// `n·x = −ρ cos(φ − α)`.
    pub fn n_dot(&self, p: FieldPoint) -> f64 {
        -p.rho * (p.phi - self.alpha).cos()
    }

    /// `n̄·x = −ρ cos(φ + α)`.
    pub fn n_bar_dot(&self, p: FieldPoint) -> f64 {
        -p.rho * (p.phi + self.alpha).cos()
    }
}

/// Polar point with `ρ ≥ 0` and `φ ∈ [0, 2π]`; the screen is `φ = 0` (upper face) and `φ = 2π`
/// (lower face).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FieldPoint {
    pub rho: f64,
    pub phi: f64,
}

impl FieldPoint {
    pub fn new(rho: f64, phi: f64) -> Result<Self> {
        if !(rho >= 0.0) || !rho.is_finite() {
            return Err(Error::Domain(format!("rho = {rho} must be finite and >= 0")));
        }
        if !(0.0..=2.0 * PI).contains(&phi) {
            return Err(Error::Domain(format!("phi = {phi} outside [0, 2pi]")));
        }
        Ok(FieldPoint { rho, phi })
    }

    pub fn cartesian(&self) -> [f64; 2] {
        [self.rho * self.phi.cos(), self.rho * self.phi.sin()]
    }

    pub fn on_screen(&self) -> bool {
        self.phi == 0.0 || self.phi == 2.0 * PI
    }
}

/// Piecewise-linear profile read from a table of `(s, f(s))` samples.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampledTable {
    pub s: Vec<f64>,
    pub f: Vec<Complex64>,
}

impl SampledTable {
    pub fn new(s: Vec<f64>, f: Vec<Complex64>) -> Result<Self> {
        if s.len() != f.len() || s.len() < 2 {
            return Err(Error::Config("sampled profile needs at least two (s, f) rows".into()));
        }
        if s[0] < 0.0 {
            return Err(Error::Config("sampled profile must start at s >= 0".into()));
        }
        if s.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::Config("sampled profile abscissae must be strictly increasing".into()));
        }
        let last = f[f.len() - 1];
        if (last - 1.0).norm() >= 0.01 {
            return Err(Error::Config(format!(
                "sampled profile does not settle to 1 (last value {last})"
            )));
        }
        Ok(SampledTable { s, f })
    }

    /// Reads `s, f_re[, f_im]` rows; `#` lines and a non-numeric header row are skipped.
    pub fn from_csv(path: &Path) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new()
            .has_headers(false)
            .comment(Some(b'#'))
            .trim(csv::Trim::All)
            .flexible(true)
            .from_path(path)
            .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        let mut s = Vec::new();
        let mut f = Vec::new();
        for (row, rec) in rdr.records().enumerate() {
            let rec = rec.map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
            let nums: std::result::Result<Vec<f64>, _> = rec.iter().map(str::parse::<f64>).collect();
            let nums = match nums {
                Ok(v) => v,
                Err(_) if row == 0 => continue,
                Err(_) => {
                    return Err(Error::Config(format!(
                        "{}: row {} is not numeric",
                        path.display(),
                        row + 1
                    )))
                }
            };
            match nums.as_slice() {
                [a, b] => {
                    s.push(*a);
                    f.push(Complex64::new(*b, 0.0));
                }
                [a, b, c] => {
                    s.push(*a);
                    f.push(Complex64::new(*b, *c));
                }
                _ => {
                    return Err(Error::Config(format!(
                        "{}: row {} needs 2 or 3 columns",
                        path.display(),
                        row + 1
                    )))
                }
            }
        }
        Self::new(s, f)
    }

    fn eval(&self, x: f64) -> Complex64 {
        if x < self.s[0] {
            return Complex64::new(0.0, 0.0);
        }
        let n = self.s.len();
        if x >= self.s[n - 1] {
            return self.f[n - 1];
        }
        let k = self.s.partition_point(|&v| v <= x) - 1;
        let t = (x - self.s[k]) / (self.s[k + 1] - self.s[k]);
        self.f[k] * (1.0 - t) + self.f[k + 1] * t
    }

    fn sup(&self) -> f64 {
        self.f.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum ProfileKind {
    Heaviside,
    /// `f(s) = 1 − e^{−λs}` for `s ≥ 0`.
    SmoothRamp { lambda: f64 },
    Sampled(Arc<SampledTable>),
}

/// Causal envelope `f` of the incident wave.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Profile {
    pub kind: ProfileKind,
    /// Growth exponent `p` in `sup (1+|s|)^p |f(s)| < ∞`; every shipped profile is bounded, so 0.
    pub p: f64,
}

impl Profile {
    pub fn heaviside() -> Self {
        Profile {
            kind: ProfileKind::Heaviside,
            p: 0.0,
        }
    }

    pub fn smooth_ramp(lambda: f64) -> Result<Self> {
        if !(lambda > 0.0) || !lambda.is_finite() {
            return Err(Error::Config(format!("ramp rate lambda = {lambda} must be positive")));
        }
        Ok(Profile {
            kind: ProfileKind::SmoothRamp { lambda },
            p: 0.0,
        })
    }

    pub fn sampled(table: SampledTable) -> Self {
        Profile {
            kind: ProfileKind::Sampled(Arc::new(table)),
            p: 0.0,
        }
    }

    pub fn name(&self) -> &'static str {
        match self.kind {
            ProfileKind::Heaviside => "heaviside",
            ProfileKind::SmoothRamp { .. } => "smooth-ramp",
            ProfileKind::Sampled(_) => "sampled",
        }
    }

    pub fn eval_f(&self, s: f64) -> Complex64 {
        if !(s >= 0.0) {
            return Complex64::new(0.0, 0.0);
        }
        match &self.kind {
            ProfileKind::Heaviside => Complex64::new(1.0, 0.0),
            ProfileKind::SmoothRamp { lambda } => Complex64::new(-(-lambda * s).exp_m1(), 0.0),
            ProfileKind::Sampled(t) => t.eval(s),
        }
    }

    /// `F(s) = f(s) e^{−iω₀s}`.
    pub fn eval_modulated(&self, omega0: f64, s: f64) -> Complex64 {
        if !(s >= 0.0) {
            return Complex64::new(0.0, 0.0);
        }
        self.eval_f(s) * Complex64::from_polar(1.0, -omega0 * s)
    }

    /// Horizon `S₁` beyond which `|f(s) − 1| < 0.01`.
    pub fn horizon(&self) -> f64 {
        match &self.kind {
            ProfileKind::Heaviside => 0.0,
            ProfileKind::SmoothRamp { lambda } => 100f64.ln() / lambda,
            ProfileKind::Sampled(t) => {
                let mut h = t.s[t.s.len() - 1];
                for k in (0..t.s.len()).rev() {
                    if (t.f[k] - 1.0).norm() >= 0.01 {
                        break;
                    }
                    h = t.s[k];
                }
                h
            }
        }
    }

    /// Points where `f` is not smooth (kinks of the sampled table, the jump at 0).
    pub fn kinks(&self) -> Vec<f64> {
        match &self.kind {
            ProfileKind::Sampled(t) => {
                let mut k = vec![0.0];
                k.extend(t.s.iter().copied().filter(|&s| s > 0.0));
                k
            }
            _ => vec![0.0],
        }
    }

    fn sup(&self) -> f64 {
        match &self.kind {
            ProfileKind::Sampled(t) => t.sup().max(1.0),
            _ => 1.0,
        }
    }

    /// Closed-form transform where one exists (`None` for sampled profiles).
    pub fn fhat_closed(&self, omega: Complex64) -> Option<Complex64> {
        match self.kind {
            ProfileKind::Heaviside => Some(I / omega),
            ProfileKind::SmoothRamp { lambda } => Some(I / omega - I / (omega + I * lambda)),
            ProfileKind::Sampled(_) => None,
        }
    }

    /// `f̂(ω)`, closed form when available and numeric quadrature otherwise.
    pub fn eval_fhat(&self, omega: Complex64, spec: &QuadratureSpec) -> Result<Complex64> {
        check_upper(omega)?;
        match self.fhat_closed(omega) {
            Some(v) => Ok(v),
            None => fourier_laplace(self, omega, 50.0 / omega.im, spec.abs_tol.max(1e-14), spec),
        }
    }
}

pub(crate) fn check_upper(omega: Complex64) -> Result<()> {
    if !(omega.im > 0.0) || !omega.re.is_finite() {
        return Err(Error::Domain(format!("omega = {omega} must satisfy Im omega > 0")));
    }
    Ok(())
}

/// `f̂(ω) = ∫₀^∞ e^{iωt} f(t) dt`. Closed-form profiles return the analytic value; sampled
/// profiles are integrated numerically on `[0, T_max]` with the tail bounded by
/// `sup|f| e^{−Im(ω)T_max} / Im ω`.
pub fn fourier_laplace(
    profile: &Profile,
    omega: Complex64,
    t_max: f64,
    tol: f64,
    spec: &QuadratureSpec,
) -> Result<Complex64> {
    check_upper(omega)?;
    if let Some(v) = profile.fhat_closed(omega) {
        return Ok(v);
    }
    fourier_laplace_numeric(|t| profile.eval_f(t), &profile.kinks(), profile.sup(), omega, 0.0, t_max, tol, spec)
}

/// Numeric `∫_{start}^{∞} e^{iωt} h(t) dt` for `h` supported in `[start, ∞)` with `|h| ≤ sup_h`,
/// truncated at `t_max`. `kinks` lists points where `h` is not smooth.
#[allow(clippy::too_many_arguments)]
pub fn fourier_laplace_numeric<H: Fn(f64) -> Complex64>(
    h: H,
    kinks: &[f64],
    sup_h: f64,
    omega: Complex64,
    start: f64,
    t_max: f64,
    tol: f64,
    spec: &QuadratureSpec,
) -> Result<Complex64> {
    check_upper(omega)?;
    if !(t_max > start) {
        return Err(Error::Domain(format!("T_max = {t_max} must exceed the support start {start}")));
    }
    let tail = sup_h * (-omega.im * t_max).exp() / omega.im;
    if tail > tol {
        return Err(Error::Precision {
            achieved: tail,
            requested: tol,
            value: Complex64::new(f64::NAN, f64::NAN),
        });
    }
    let breaks = oscillation_breaks(start, t_max, omega.norm(), kinks);
    let est = quadrature::integrate(|t| (I * omega * t).exp() * h(t), &breaks, spec)?;
    Ok(est.value)
}

/// Break points on `[a, b]`: the kinks inside, plus a split every couple of periods.
pub(crate) fn oscillation_breaks(a: f64, b: f64, freq: f64, kinks: &[f64]) -> Vec<f64> {
    let mut v = vec![a, b];
    v.extend(kinks.iter().copied().filter(|&k| k > a && k < b));
    let period = 2.0 * PI / freq.max(1e-3);
    let n = (((b - a) / (2.0 * period)).ceil() as usize).min(400);
    for k in 1..n {
        v.push(a + (b - a) * k as f64 / n as f64);
    }
    v.sort_by(f64::total_cmp);
    v.dedup();
    v
}
