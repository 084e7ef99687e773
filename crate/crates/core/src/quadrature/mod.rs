//! Integration engine: adaptive Gauss–Kronrod base rule, the contour machinery for the
//! singular frequency-domain integrals, and the kernel integrals built on both.

mod contour;
mod gk;
mod kernel_integrals;

use serde::{Deserialize, Serialize};

pub use contour::{deformation_radius, integrate_k, singular_piece, KKind, Side};
pub use gk::{apply_panels, integrate, integrate_recording, kronrod15, Estimate};
pub use kernel_integrals::{
    integrate_frequency_functional, integrate_frequency_kernel, integrate_frequency_stencil,
    integrate_timedomain_functional, integrate_timedomain_kernel, integrate_timedomain_stencil, FreqTerm,
    TimeTerm, Weight,
};

/// Tolerances and limits shared by every quadrature in the crate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureSpec {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_subdivisions: usize,
    /// Semicircle radius for the deformed frequency-domain path. `None` derives it from ω and ρ.
    pub deformation_radius: Option<f64>,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            rel_tol: 1e-10,
            abs_tol: 1e-14,
            max_subdivisions: 4000,
            deformation_radius: None,
        }
    }
}

impl QuadratureSpec {
    pub fn with_tolerances(rel_tol: f64, abs_tol: f64) -> Self {
        QuadratureSpec {
            rel_tol,
            abs_tol,
            ..Self::default()
        }
    }

    pub(crate) fn validate(&self) -> crate::Result<()> {
        if !(self.rel_tol > 0.0) || !(self.abs_tol > 0.0) {
            return Err(crate::Error::Config("tolerances must be positive".into()));
        }
        if self.max_subdivisions < 2 {
            return Err(crate::Error::Config("max_subdivisions must be at least 2".into()));
        }
        if let Some(r) = self.deformation_radius {
            if !(r > 0.0 && r < 1.0) {
                return Err(crate::Error::Config(format!("deformation radius {r} outside (0, 1)")));
            }
        }
        Ok(())
    }
}
