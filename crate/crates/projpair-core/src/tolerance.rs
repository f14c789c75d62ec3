//! Tolerance policy shared by validation, spectral binning and quadrature.

use crate::error::{Error, Result};

/// Numerical tolerances. All strictly positive; `tol_spec < 0.5` so the
/// eigenvalue bins at -1, 0, +1 and 2 cannot overlap.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ToleranceConfig {
    /// Hermiticity residual bound for validation.
    pub tol_herm: f64,
    /// Idempotency residual bound for validation.
    pub tol_idem: f64,
    /// Half-width for eigenvalue classification bins.
    pub tol_spec: f64,
    /// Residual bound asserted on constructed operators.
    pub tol_resid: f64,
    /// Convergence target for contour quadrature and power series.
    pub quad_tol: f64,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        Self {
            tol_herm: 1e-10,
            tol_idem: 1e-10,
            tol_spec: 1e-8,
            tol_resid: 1e-8,
            quad_tol: 1e-10,
        }
    }
}

impl ToleranceConfig {
    pub fn validated(self) -> Result<Self> {
        let fields = [
            self.tol_herm,
            self.tol_idem,
            self.tol_spec,
            self.tol_resid,
            self.quad_tol,
        ];
        if fields.iter().any(|&t| !(t > 0.0) || !t.is_finite()) {
            return Err(Error::InvalidTolerance {
                reason: "all tolerances must be finite and strictly positive",
            });
        }
        if self.tol_spec >= 0.5 {
            return Err(Error::InvalidTolerance {
                reason: "tol_spec must be below 0.5 so spectral bins stay disjoint",
            });
        }
        Ok(self)
    }
}
