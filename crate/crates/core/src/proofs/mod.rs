//! Numerical replay of the proof of the Audenaert-Kittaneh inequality.
//!
//! * [`witness`]: dual witnesses `Y = ‖B‖_p^{q-p}|B|^{p-1}U*` and the
//!   end-to-end cancellation argument.
//! * [`interpolation`]: the analytic family `f(z)` on the strip
//!   `1/2 <= Re z <= 1`, its boundary bounds and the three-lines estimate.
//! * [`duality`]: norming functionals and the transfer from `p <= 2` to the
//!   dual range `q >= 2`.

pub mod duality;
pub mod interpolation;
pub mod witness;

pub use duality::{ak_via_duality, duality_images, norming_functional, DualityReplay};
pub use interpolation::{
    analytic_family_eval, boundary_bound, convexity_scan, default_x_grid, default_y_grid, lemma22_check,
    scan_family, three_lines_bound, AnalyticFamily, Boundary, InterpolationSample, ScanResult, StripPoint,
};
pub use witness::{ak_from_witness, dual_witness, witness_defects, witness_set, WitnessReplay, WitnessSet};

use crate::error::{domain, Result};

/// Checks `1 < p <= 2` and returns the dual exponent.
pub(crate) fn proof_exponent(p: f64) -> Result<f64> {
    if !(p > 1.0 && p <= 2.0) {
        return domain(format!("proof replay needs 1 < p <= 2, got {p}"));
    }
    crate::schatten::dual_exponent(p)
}
