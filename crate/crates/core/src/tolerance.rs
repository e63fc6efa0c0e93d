//! Default thresholds shared by the checks and suites.

use serde::{Deserialize, Serialize};

/// Relative singular-value cutoff when building spans.
pub const RANK: f64 = 1e-10;

/// Cutoff on sines/cosines of principal angles when deciding that a
/// direction belongs to an intersection or an orthogonal complement.
pub const SPAN: f64 = 1e-9;

/// Operator-norm residuals (commutators, orthogonality, invariance).
pub const RESIDUAL: f64 = 1e-10;

/// Largest principal angle for subspace equality.
pub const ANGLE: f64 = 1e-8;

/// Allowed negative slack on the minimum eigenvalue of a PSD certificate.
pub const PSD: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    pub residual: f64,
    pub angle: f64,
    pub psd: f64,
    pub rank: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self { residual: RESIDUAL, angle: ANGLE, psd: PSD, rank: RANK }
    }
}

impl Tolerances {
    /// Every threshold set to the same value (rank cutoff untouched).
    pub fn uniform(tol: f64) -> Self {
        Self { residual: tol, angle: tol, psd: tol, rank: RANK }
    }
}
