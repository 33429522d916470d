use serde::{Deserialize, Serialize};

/// Every numerical threshold used by the crate, in one place.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Tolerances {
    /// Absolute tolerance for identities on unit-scale quantities.
    pub atol: f64,
    /// Relative tolerance for identities and reconstructions.
    pub rtol: f64,
    /// Eigenvalues or singular values at or below `zero_rel * max` are treated as zero.
    pub zero_rel: f64,
    /// Inequality reports are satisfied iff `margin >= -margin`.
    pub margin: f64,
    /// Relative Hermiticity / positivity slack for matrix inputs.
    pub hermitian: f64,
    /// Residual threshold for unitary-orbit feasibility certificates.
    pub feasibility: f64,
    /// Slack for midpoint log-convexity of a grid-estimated `M(x)`.
    pub scan: f64,
}

impl Tolerances {
    pub const DEFAULT: Tolerances = Tolerances {
        atol: 1e-10,
        rtol: 1e-8,
        zero_rel: 1e-12,
        margin: 1e-9,
        hermitian: 1e-8,
        feasibility: 1e-7,
        scan: 1e-6,
    };
}

impl Default for Tolerances {
    fn default() -> Self {
        Self::DEFAULT
    }
}
