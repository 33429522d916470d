use serde::{Deserialize, Serialize};

use crate::config::Tolerances;

/// Which inequality a report belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Tag {
    Holder,
    ClarksonLower,
    ClarksonUpper,
    Parallelogram,
    HirzallahKittaneh,
    BallCarlenLieb,
    BclDominatesClarkson,
    McCarthy,
    AudenaertKittaneh,
    CondeMoslehian,
    InterpolatedPairing,
    StripBoundary,
    ThreeLines,
    LogConvexity,
    DualAudenaertKittaneh,
    DualityChain,
    DualityNormalization,
    WitnessReplay,
    ConjectureTrace,
}

impl Tag {
    pub fn name(self) -> &'static str {
        match self {
            Tag::Holder => "holder",
            Tag::ClarksonLower => "clarkson_lower",
            Tag::ClarksonUpper => "clarkson_upper",
            Tag::Parallelogram => "parallelogram",
            Tag::HirzallahKittaneh => "hirzallah_kittaneh",
            Tag::BallCarlenLieb => "ball_carlen_lieb",
            Tag::BclDominatesClarkson => "bcl_dominates_clarkson",
            Tag::McCarthy => "mccarthy",
            Tag::AudenaertKittaneh => "audenaert_kittaneh",
            Tag::CondeMoslehian => "conde_moslehian",
            Tag::InterpolatedPairing => "interpolated_pairing",
            Tag::StripBoundary => "strip_boundary",
            Tag::ThreeLines => "three_lines",
            Tag::LogConvexity => "log_convexity",
            Tag::DualAudenaertKittaneh => "dual_audenaert_kittaneh",
            Tag::DualityChain => "duality_chain",
            Tag::DualityNormalization => "duality_normalization",
            Tag::WitnessReplay => "witness_replay",
            Tag::ConjectureTrace => "conjecture_trace",
        }
    }
}

/// Outcome of one inequality evaluation. `lhs` is always the side claimed to
/// be smaller, so a checker that flips direction with `p` swaps what lands here.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InequalityReport {
    pub tag: Tag,
    pub lhs: f64,
    pub rhs: f64,
    /// `(rhs - lhs) / max(1, rhs)`.
    pub margin: f64,
    pub satisfied: bool,
    pub p: f64,
    pub n: usize,
    pub d: usize,
}

impl InequalityReport {
    pub fn new(tag: Tag, lhs: f64, rhs: f64, p: f64, n: usize, d: usize) -> Self {
        let margin = (rhs - lhs) / rhs.max(1.0);
        Self::with_margin(tag, lhs, rhs, margin, p, n, d)
    }

    /// Report for an identity: the margin is minus the normalized defect.
    pub fn equality(tag: Tag, lhs: f64, rhs: f64, p: f64, n: usize, d: usize) -> Self {
        let margin = -(rhs - lhs).abs() / rhs.max(lhs).max(1.0);
        Self::with_margin(tag, lhs, rhs, margin, p, n, d)
    }

    fn with_margin(tag: Tag, lhs: f64, rhs: f64, margin: f64, p: f64, n: usize, d: usize) -> Self {
        let satisfied = lhs.is_finite() && rhs.is_finite() && margin >= -Tolerances::DEFAULT.margin;
        Self { tag, lhs, rhs, margin, satisfied, p, n, d }
    }

    /// Re-judge against a different margin tolerance.
    pub fn satisfied_at(&self, tol_margin: f64) -> bool {
        self.lhs.is_finite() && self.rhs.is_finite() && self.margin >= -tol_margin
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn margin_is_normalized_by_rhs_above_one() {
        let r = InequalityReport::new(Tag::McCarthy, 3.0, 4.0, 1.5, 2, 2);
        assert_eq!(r.margin, 0.25);
        assert!(r.satisfied);
        let r = InequalityReport::new(Tag::McCarthy, 0.3, 0.2, 1.5, 2, 2);
        assert!((r.margin + 0.1).abs() < 1e-15);
        assert!(!r.satisfied);
    }

    #[test]
    fn tiny_violation_within_tolerance_passes() {
        let r = InequalityReport::new(Tag::AudenaertKittaneh, 1.0 + 1e-12, 1.0, 1.5, 2, 2);
        assert!(r.satisfied);
        assert!(!r.satisfied_at(0.0));
    }

    #[test]
    fn tags_serialize_as_snake_case() {
        let s = serde_json::to_string(&Tag::BclDominatesClarkson).unwrap();
        assert_eq!(s, format!("\"{}\"", Tag::BclDominatesClarkson.name()));
    }
}
