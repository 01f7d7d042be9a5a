use serde::{Deserialize, Serialize};

/// Numerical thresholds shared by every operation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Tolerances {
    /// Trace classification band around 2, and the identity test.
    pub classify: f64,
    /// Surface relation residual accepted by Euler class and parity.
    pub relation: f64,
    /// Residual and angle tolerance for realized Fuchsian groups.
    pub realization: f64,
    /// Maximum distance of the lifted product from an integer multiple of 2π (in turns).
    pub rounding: f64,
    /// Smallest determinant accepted by canonicalization.
    pub determinant: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            classify: 1e-9,
            relation: 1e-8,
            realization: 1e-8,
            rounding: 0.01,
            determinant: 1e-12,
        }
    }
}

impl Tolerances {
    pub fn is_valid(&self) -> bool {
        [
            self.classify,
            self.relation,
            self.realization,
            self.rounding,
            self.determinant,
        ]
        .iter()
        .all(|t| t.is_finite() && *t > 0.0)
    }
}
