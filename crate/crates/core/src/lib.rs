//! Time-dependent diffraction of a modulated plane wave by a Dirichlet half-plane.
//!
//! The crate builds the incident, reflected and diffracted waves in the time domain, their
//! Fourier-Laplace transforms for `Im ω > 0`, and the stationary Sommerfeld amplitude, together
//! with the numerical checks (boundary traces, jump cancellation, Helmholtz residuals, decay fits,
//! limiting amplitudes) collected in [`diagnostics`].

pub mod config;
pub mod diagnostics;
pub mod error;
pub mod frequency;
pub mod kernel;
pub mod lap;
pub mod par;
pub mod quadrature;
pub mod scenario;
pub mod sommerfeld;
pub mod special;
pub mod timedomain;

pub use error::{Error, Result};
pub use kernel::{Kernel, KernelDecomposition};
pub use quadrature::{QuadratureSpec, Side};
pub use scenario::{make_scenario, FieldPoint, Profile, ProfileKind, ScenarioConfig};

/// Field components shared by the time-domain, frequency-domain and stationary evaluators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
pub enum Component {
    Incident,
    Incident0,
    Incident1,
    Reflected,
    Diffracted,
    Total,
    Scattered,
    Scattered0,
}

impl Component {
    pub const ALL: [Component; 8] = [
        Component::Incident,
        Component::Incident0,
        Component::Incident1,
        Component::Reflected,
        Component::Diffracted,
        Component::Total,
        Component::Scattered,
        Component::Scattered0,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Component::Incident => "incident",
            Component::Incident0 => "incident0",
            Component::Incident1 => "incident1",
            Component::Reflected => "reflected",
            Component::Diffracted => "diffracted",
            Component::Total => "total",
            Component::Scattered => "scattered",
            Component::Scattered0 => "scattered0",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Component::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown component '{s}'")))
    }
}

/// Where a field value was taken: a time, a complex frequency, or the stationary limit.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub enum Coordinate {
    Time(f64),
    Frequency(num_complex::Complex64),
    Stationary,
}

/// One component value at one point.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct FieldSample {
    pub point: FieldPoint,
    pub at: Coordinate,
    pub value: num_complex::Complex64,
    pub component: Component,
}
