//! Run configuration read from `key = value` files.
//!
//! ```text
//! # comment
//! alpha = 2.0943951023931957
//! omega0 = 1
//! profile.kind = smooth-ramp
//! profile.lambda = 0.5
//! grid.rho = 0.1, 10, 40, log
//! grid.phi = 0, 6.283185307179586, 64
//! mode = frequency
//! omega = 1.0, 0.5
//! ```
//!
//! Unknown keys are errors, so a typo never silently falls back to a default.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quadrature::QuadratureSpec;
use crate::scenario::{FieldPoint, Profile, SampledTable, ScenarioConfig};
use crate::Component;

/// One axis of a field-map grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Axis {
    pub min: f64,
    pub max: f64,
    pub count: usize,
    pub log: bool,
}

impl Axis {
    pub fn points(&self) -> Vec<f64> {
        let n = self.count;
        (0..n)
            .map(|k| {
                let u = k as f64 / (n - 1) as f64;
                if self.log {
                    self.min * (self.max / self.min).powf(u)
                } else {
                    self.min + (self.max - self.min) * u
                }
            })
            .collect()
    }

    fn validate(&self, name: &str) -> Result<()> {
        if self.count < 2 {
            return Err(Error::Config(format!("{name}: grid count must be at least 2")));
        }
        if !(self.min < self.max) || !self.min.is_finite() || !self.max.is_finite() {
            return Err(Error::Config(format!("{name}: range [{}, {}] is not ordered", self.min, self.max)));
        }
        if self.log && !(self.min > 0.0) {
            return Err(Error::Config(format!("{name}: log spacing needs a positive lower end")));
        }
        Ok(())
    }
}

/// What a field map evaluates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Mode {
    Time(f64),
    Frequency(Complex64),
    Stationary,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub scenario: ScenarioConfig,
    pub profile: Profile,
    pub rho: Axis,
    pub phi: Axis,
    pub mode: Mode,
    pub components: Vec<Component>,
    pub spec: QuadratureSpec,
    /// Point and times of the limiting-amplitude study.
    pub lap_point: FieldPoint,
    pub lap_times: Vec<f64>,
    /// Radii and frequency of the jump study.
    pub jump_rhos: Vec<f64>,
    pub jump_omega: Complex64,
    /// Kernel dump: `β` axis and angles.
    pub beta: Axis,
    pub dump_phis: Vec<f64>,
    /// Tolerance of quadrature-backed diagnostics (relative).
    pub tol_quadrature: f64,
    /// Tolerance of extrapolation-backed diagnostics.
    pub tol_extrapolation: f64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            scenario: ScenarioConfig::reference(),
            profile: Profile::heaviside(),
            rho: Axis {
                min: 0.1,
                max: 10.0,
                count: 20,
                log: false,
            },
            phi: Axis {
                min: 0.0,
                max: 2.0 * PI,
                count: 37,
                log: false,
            },
            mode: Mode::Stationary,
            components: vec![Component::Total],
            spec: QuadratureSpec::default(),
            lap_point: FieldPoint { rho: 1.0, phi: PI },
            lap_times: vec![10.0, 100.0, 1000.0],
            jump_rhos: vec![0.25, 0.5, 1.0, 2.0, 4.0],
            jump_omega: Complex64::new(1.0, 1.0),
            beta: Axis {
                min: -10.0,
                max: 10.0,
                count: 201,
                log: false,
            },
            dump_phis: vec![PI / 2.0, PI, 3.0 * PI / 2.0],
            tol_quadrature: 1e-6,
            tol_extrapolation: 1e-5,
        }
    }
}

fn num(key: &str, v: &str) -> Result<f64> {
    v.trim()
        .parse::<f64>()
        .map_err(|_| Error::Config(format!("{key}: '{v}' is not a number")))
}

fn list(key: &str, v: &str) -> Result<Vec<f64>> {
    v.split(',').map(|s| num(key, s)).collect()
}

fn axis(key: &str, v: &str) -> Result<Axis> {
    let parts: Vec<&str> = v.split(',').map(str::trim).collect();
    if parts.len() < 3 || parts.len() > 4 {
        return Err(Error::Config(format!("{key}: expected 'min, max, count[, log|linear]'")));
    }
    let count = parts[2]
        .parse::<usize>()
        .map_err(|_| Error::Config(format!("{key}: count '{}' is not an integer", parts[2])))?;
    let log = match parts.get(3) {
        None | Some(&"linear") => false,
        Some(&"log") => true,
        Some(other) => return Err(Error::Config(format!("{key}: spacing '{other}' is not log or linear"))),
    };
    Ok(Axis {
        min: num(key, parts[0])?,
        max: num(key, parts[1])?,
        count,
        log,
    })
}

fn complex(key: &str, v: &str) -> Result<Complex64> {
    let xs = list(key, v)?;
    match xs.as_slice() {
        [re, im] => Ok(Complex64::new(*re, *im)),
        _ => Err(Error::Config(format!("{key}: expected 're, im'"))),
    }
}

/// Splits `key = value` lines; `#` starts a comment.
pub fn parse_pairs(text: &str) -> Result<BTreeMap<String, String>> {
    let mut out = BTreeMap::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| Error::Config(format!("line {}: expected key = value", n + 1)))?;
        if out.insert(k.trim().to_string(), v.trim().to_string()).is_some() {
            return Err(Error::Config(format!("line {}: duplicate key '{}'", n + 1, k.trim())));
        }
    }
    Ok(out)
}

impl RunConfig {
    /// Parses a configuration; relative `profile.table_path` values resolve against `base`.
    pub fn parse(text: &str, base: Option<&Path>) -> Result<Self> {
        let pairs = parse_pairs(text)?;
        let mut c = RunConfig::default();
        let mut alpha = c.scenario.alpha;
        let mut omega0 = c.scenario.omega0;
        let mut kind = "heaviside".to_string();
        let mut lambda = None;
        let mut table = None;
        let mut mode = "stationary".to_string();
        let mut t = None;
        let mut omega = None;
        let mut lap_rho = c.lap_point.rho;
        let mut lap_phi = c.lap_point.phi;
        for (k, v) in &pairs {
            let k = k.as_str();
            match k {
                "alpha" => alpha = num(k, v)?,
                "omega0" => omega0 = num(k, v)?,
                "profile.kind" => kind = v.clone(),
                "profile.lambda" => lambda = Some(num(k, v)?),
                "profile.table_path" => table = Some(v.clone()),
                "grid.rho" => c.rho = axis(k, v)?,
                "grid.phi" => c.phi = axis(k, v)?,
                "mode" => mode = v.clone(),
                "t" => t = Some(num(k, v)?),
                "omega" => omega = Some(complex(k, v)?),
                "components" => {
                    c.components = v.split(',').map(|s| Component::parse(s.trim())).collect::<Result<_>>()?;
                }
                "rel_tol" => c.spec.rel_tol = num(k, v)?,
                "abs_tol" => c.spec.abs_tol = num(k, v)?,
                "max_subdivisions" => {
                    c.spec.max_subdivisions = v
                        .parse()
                        .map_err(|_| Error::Config(format!("{k}: '{v}' is not an integer")))?;
                }
                "lap.rho" => lap_rho = num(k, v)?,
                "lap.phi" => lap_phi = num(k, v)?,
                "lap.times" => c.lap_times = list(k, v)?,
                "jump.rho" => c.jump_rhos = list(k, v)?,
                "jump.omega" => c.jump_omega = complex(k, v)?,
                "dump.beta" => c.beta = axis(k, v)?,
                "dump.phi" => c.dump_phis = list(k, v)?,
                "tol.quadrature" => c.tol_quadrature = num(k, v)?,
                "tol.extrapolation" => c.tol_extrapolation = num(k, v)?,
                other => return Err(Error::Config(format!("unknown key '{other}'"))),
            }
        }
        c.scenario = ScenarioConfig::new(alpha, omega0)?;
        c.profile = match kind.as_str() {
            "heaviside" => Profile::heaviside(),
            "smooth-ramp" => Profile::smooth_ramp(lambda.unwrap_or(1.0))?,
            "sampled" => {
                let p = table.ok_or_else(|| Error::Config("profile.kind = sampled needs profile.table_path".into()))?;
                let path = match base {
                    Some(b) if Path::new(&p).is_relative() => b.join(&p),
                    _ => Path::new(&p).to_path_buf(),
                };
                Profile::sampled(SampledTable::from_csv(&path)?)
            }
            other => return Err(Error::Config(format!("unknown profile kind '{other}'"))),
        };
        c.mode = match mode.as_str() {
            "stationary" => Mode::Stationary,
            "time" => Mode::Time(t.ok_or_else(|| Error::Config("mode = time needs t".into()))?),
            "frequency" => Mode::Frequency(omega.ok_or_else(|| Error::Config("mode = frequency needs omega".into()))?),
            other => return Err(Error::Config(format!("unknown mode '{other}'"))),
        };
        c.lap_point = FieldPoint::new(lap_rho, lap_phi).map_err(|e| Error::Config(e.to_string()))?;
        c.validate()?;
        Ok(c)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        RunConfig::parse(&text, path.parent())
    }

    pub fn validate(&self) -> Result<()> {
        self.rho.validate("grid.rho")?;
        self.phi.validate("grid.phi")?;
        self.beta.validate("dump.beta")?;
        if self.rho.min < 0.0 {
            return Err(Error::Config("grid.rho must be non-negative".into()));
        }
        if self.phi.min < 0.0 || self.phi.max > 2.0 * PI {
            return Err(Error::Config("grid.phi must lie in [0, 2pi]".into()));
        }
        if let Mode::Frequency(w) = self.mode {
            if !(w.im > 0.0) {
                return Err(Error::Config(format!("omega = {w} must have Im omega > 0")));
            }
        }
        if !(self.jump_omega.im > 0.0) {
            return Err(Error::Config("jump.omega must have Im omega > 0".into()));
        }
        if self.components.is_empty() {
            return Err(Error::Config("components must not be empty".into()));
        }
        if !(self.tol_quadrature > 0.0) || !(self.tol_extrapolation > 0.0) {
            return Err(Error::Config("diagnostic tolerances must be positive".into()));
        }
        self.spec.validate().map_err(|e| Error::Config(e.to_string()))
    }
}
