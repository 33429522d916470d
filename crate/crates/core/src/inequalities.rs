//! Margin-reporting checkers for the Clarkson-McCarthy inequality family.
//!
//! Every checker picks its direction from `p`: the small-exponent form for
//! `p <= 2` and the reversed form for `p > 2`. At `p = 2` both forms coincide
//! with the parallelogram identity. Reports always put the side that is
//! claimed to be smaller in `lhs`.

use crate::error::{domain, Result};
use crate::matcore::{check_same_dims, ComplexMatrix};
use crate::report::{InequalityReport, Tag};
use crate::schatten::{dual_exponent, norm, norm_pow_p};
use crate::tuple::OperatorTuple;

fn require_positive(p: f64) -> Result<()> {
    if p.is_nan() || p <= 0.0 || p.is_infinite() {
        return domain(format!("exponent must be finite and positive, got {p}"));
    }
    Ok(())
}

fn require_above_one(p: f64) -> Result<()> {
    if p.is_nan() || p <= 1.0 || p.is_infinite() {
        return domain(format!("exponent must be finite and exceed 1, got {p}"));
    }
    Ok(())
}

/// Orders `(small, large)` for the small-exponent regime and swaps otherwise.
fn oriented(p: f64, small_p_lhs: f64, small_p_rhs: f64) -> (f64, f64) {
    if p <= 2.0 {
        (small_p_lhs, small_p_rhs)
    } else {
        (small_p_rhs, small_p_lhs)
    }
}

/// `‖A+B‖_p^p + ‖A-B‖_p^p` bracketed between multiples of `‖A‖_p^p + ‖B‖_p^p`.
/// Returns the lower and the upper bracket reports, in that order.
pub fn clarkson_pair(a: &ComplexMatrix, b: &ComplexMatrix, p: f64) -> Result<[InequalityReport; 2]> {
    require_positive(p)?;
    let d = check_same_dims(a, b)?;
    let sides = norm_pow_p(a, p)? + norm_pow_p(b, p)?;
    let middle = norm_pow_p(&(a + b), p)? + norm_pow_p(&(a - b), p)?;
    let outer = 2f64.powf(p - 1.0) * sides;
    let (lower, upper) = if p <= 2.0 {
        ((outer, middle), (middle, 2.0 * sides))
    } else {
        ((2.0 * sides, middle), (middle, outer))
    };
    Ok([
        InequalityReport::new(Tag::ClarksonLower, lower.0, lower.1, p, 2, d),
        InequalityReport::new(Tag::ClarksonUpper, upper.0, upper.1, p, 2, d),
    ])
}

/// `‖A-B‖_2^2 + ‖A+B‖_2^2 = 2(‖A‖_2^2 + ‖B‖_2^2)`, reported as an equality.
pub fn parallelogram(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<InequalityReport> {
    let d = check_same_dims(a, b)?;
    let lhs = norm_pow_p(&(a - b), 2.0)? + norm_pow_p(&(a + b), 2.0)?;
    let rhs = 2.0 * (norm_pow_p(a, 2.0)? + norm_pow_p(b, 2.0)?);
    Ok(InequalityReport::equality(Tag::Parallelogram, lhs, rhs, 2.0, 2, d))
}

/// Sums shared by the n-tuple checkers.
struct TupleSums {
    /// `Σ_k ‖A_k‖_p^p`.
    parts: f64,
    /// `‖Σ A_k‖_p^r + Σ_{i<j} ‖A_i - A_j‖_p^r` for the requested outer power `r`.
    combos: f64,
}

fn tuple_sums(t: &OperatorTuple, p: f64, outer_power: f64) -> Result<TupleSums> {
    let mut parts = 0.0;
    for a in t.matrices() {
        parts += norm_pow_p(a, p)?;
    }
    let mut combos = norm(&t.sum(), p)?.powf(outer_power);
    for diff in t.differences() {
        combos += norm(&diff, p)?.powf(outer_power);
    }
    Ok(TupleSums { parts, combos })
}

/// n-tuple Clarkson inequality of Hirzallah and Kittaneh:
/// `n^{p-1} Σ‖A_i‖_p^p` against `‖ΣA_i‖_p^p + Σ_{i<j}‖A_i-A_j‖_p^p`.
pub fn hk_ntuple(t: &OperatorTuple, p: f64) -> Result<InequalityReport> {
    require_positive(p)?;
    t.require_pairs()?;
    let n = t.n();
    let s = tuple_sums(t, p, p)?;
    let scaled = (n as f64).powf(p - 1.0) * s.parts;
    let (lhs, rhs) = oriented(p, scaled, s.combos);
    Ok(InequalityReport::new(Tag::HirzallahKittaneh, lhs, rhs, p, n, t.d()))
}

/// Optimal 2-uniform convexity of Ball, Carlen and Lieb:
/// `((‖A+B‖_p^p + ‖A-B‖_p^p)/2)^{2/p}` against `‖A‖_p^2 + (p-1)‖B‖_p^2`.
pub fn bcl(a: &ComplexMatrix, b: &ComplexMatrix, p: f64) -> Result<InequalityReport> {
    if p.is_nan() || p < 1.0 || p.is_infinite() {
        return domain(format!("uniform convexity check needs finite p >= 1, got {p}"));
    }
    let d = check_same_dims(a, b)?;
    let middle = (norm_pow_p(&(a + b), p)? + norm_pow_p(&(a - b), p)?) / 2.0;
    let convexity = middle.powf(2.0 / p);
    let modulus = norm(a, p)?.powi(2) + (p - 1.0) * norm(b, p)?.powi(2);
    let (lhs, rhs) = oriented(p, modulus, convexity);
    Ok(InequalityReport::new(Tag::BallCarlenLieb, lhs, rhs, p, 2, d))
}

/// `(‖A‖_p^2 + (p-1)‖B‖_p^2)^{p/2} >= 2^{p/2-1}(‖A‖_p^p + ‖B‖_p^p)` for `1 <= p <= 2`.
///
/// This is the two-step concavity chain comparing the uniform convexity
/// bound with the lower Clarkson bound. Only the first step (concavity of
/// `t^{p/2}`) holds in general; the second needs `(p-1)^{p/2} >= 1`, which
/// fails for `p < 2`, so the chain is expected to report violations.
/// [`bcl_concavity_step`] checks the first step alone.
pub fn bcl_dominates_clarkson(a: &ComplexMatrix, b: &ComplexMatrix, p: f64) -> Result<InequalityReport> {
    let (na, nb, d) = bcl_chain_inputs(a, b, p)?;
    let lhs = 2f64.powf(p / 2.0 - 1.0) * (na.powf(p) + nb.powf(p));
    let rhs = (na * na + (p - 1.0) * nb * nb).powf(p / 2.0);
    Ok(InequalityReport::new(Tag::BclDominatesClarkson, lhs, rhs, p, 2, d))
}

/// First link of the chain: `(x + y)^{p/2} >= 2^{p/2-1}(x^{p/2} + y^{p/2})`
/// with `x = ‖A‖_p^2`, `y = (p-1)‖B‖_p^2`.
pub fn bcl_concavity_step(a: &ComplexMatrix, b: &ComplexMatrix, p: f64) -> Result<InequalityReport> {
    let (na, nb, d) = bcl_chain_inputs(a, b, p)?;
    let x = na * na;
    let y = (p - 1.0) * nb * nb;
    let lhs = 2f64.powf(p / 2.0 - 1.0) * (x.powf(p / 2.0) + y.powf(p / 2.0));
    let rhs = (x + y).powf(p / 2.0);
    Ok(InequalityReport::new(Tag::BclDominatesClarkson, lhs, rhs, p, 2, d))
}

fn bcl_chain_inputs(a: &ComplexMatrix, b: &ComplexMatrix, p: f64) -> Result<(f64, f64, usize)> {
    if !(1.0..=2.0).contains(&p) {
        return domain(format!("concavity chain needs 1 <= p <= 2, got {p}"));
    }
    let d = check_same_dims(a, b)?;
    Ok((norm(a, p)?, norm(b, p)?, d))
}

/// McCarthy's inequality: `‖A+B‖_p^q + ‖A-B‖_p^q` against `2(‖A‖_p^p + ‖B‖_p^p)^{q/p}`.
pub fn mccarthy(a: &ComplexMatrix, b: &ComplexMatrix, p: f64) -> Result<InequalityReport> {
    require_above_one(p)?;
    let d = check_same_dims(a, b)?;
    let q = dual_exponent(p)?;
    let combos = norm(&(a + b), p)?.powf(q) + norm(&(a - b), p)?.powf(q);
    let parts = norm_pow_p(a, p)? + norm_pow_p(b, p)?;
    let bound = 2.0 * parts.powf(q / p);
    let (lhs, rhs) = oriented(p, combos, bound);
    Ok(InequalityReport::new(Tag::McCarthy, lhs, rhs, p, 2, d))
}

fn ak_with_coefficient(t: &OperatorTuple, p: f64, tag: Tag, coefficient: impl Fn(f64, f64) -> f64) -> Result<InequalityReport> {
    require_above_one(p)?;
    t.require_pairs()?;
    let n = t.n();
    let q = dual_exponent(p)?;
    let s = tuple_sums(t, p, q)?;
    let bound = coefficient(n as f64, q) * s.parts.powf(q / p);
    let (lhs, rhs) = oriented(p, s.combos, bound);
    Ok(InequalityReport::new(tag, lhs, rhs, p, n, t.d()))
}

/// Audenaert-Kittaneh n-tuple inequality:
/// `‖ΣA_i‖_p^q + Σ_{i<j}‖A_i-A_j‖_p^q` against `n(Σ‖A_i‖_p^p)^{q/p}`.
pub fn ak(t: &OperatorTuple, p: f64) -> Result<InequalityReport> {
    ak_with_coefficient(t, p, Tag::AudenaertKittaneh, |n, _| n)
}

/// Conde-Moslehian variant: `ak` with the coefficient `n^{q/2}` in place of `n`.
pub fn cm(t: &OperatorTuple, p: f64) -> Result<InequalityReport> {
    ak_with_coefficient(t, p, Tag::CondeMoslehian, |n, q| n.powf(q / 2.0))
}
