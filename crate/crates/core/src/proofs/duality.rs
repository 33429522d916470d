use num_complex::Complex64;
use serde::Serialize;

use crate::error::{domain, input, Result};
use crate::inequalities::ak;
use crate::matcore::{c, check_square, polar, ComplexMatrix, PolarSide, PsdSpectrum};
use crate::report::{InequalityReport, Tag};
use crate::schatten::{dual_exponent, norm, norm_pow_p, trace_pairing};
use crate::tuple::OperatorTuple;

/// `μ = |φ|^{q-1} V† / ‖φ‖_q^{q-1}` for `φ = V|φ|`, so `‖μ‖_p = 1` and `tr(μφ) = ‖φ‖_q`.
pub fn norming_functional(phi: &ComplexMatrix, q: f64) -> Result<ComplexMatrix> {
    if q.is_nan() || q <= 1.0 || q.is_infinite() {
        return domain(format!("norming functional needs finite q > 1, got {q}"));
    }
    check_square(phi)?;
    let size = norm(phi, q)?;
    if size == 0.0 {
        return domain("the zero operator has no norming functional");
    }
    let parts = polar(phi, PolarSide::Left)?;
    let lifted = PsdSpectrum::new(&parts.modulus)?.power(c(q - 1.0, 0.0))?;
    Ok(lifted * parts.isometry.adjoint() * c(size.powf(1.0 - q), 0.0))
}

/// `x_i = (Σ‖φ_k‖_q^q)^{-1/p} ‖φ_i‖_q^{q-1} μ_i`; zero `φ_i` map to zero.
pub fn duality_images(phis: &OperatorTuple, q: f64) -> Result<OperatorTuple> {
    if q.is_nan() || q < 2.0 || q.is_infinite() {
        return domain(format!("duality transfer needs finite q >= 2, got {q}"));
    }
    let p = dual_exponent(q)?;
    let mut mass = 0.0;
    for phi in phis.matrices() {
        mass += norm_pow_p(phi, q)?;
    }
    if mass == 0.0 {
        return input("duality transfer needs at least one nonzero operator");
    }
    let normalizer = mass.powf(-1.0 / p);
    let images = phis
        .matrices()
        .iter()
        .map(|phi| {
            let size = norm(phi, q)?;
            if size == 0.0 {
                return Ok(ComplexMatrix::zeros(phi.nrows(), phi.ncols()));
            }
            Ok(norming_functional(phi, q)? * c(normalizer * size.powf(q - 1.0), 0.0))
        })
        .collect::<Result<Vec<_>>>()?;
    OperatorTuple::new(images)
}

/// Each quantity in the transfer argument, from the images `x_i` to the
/// dual-range inequality for the `φ_i`.
#[derive(Debug, Clone, Serialize)]
pub struct DualityReplay {
    pub p: f64,
    pub q: f64,
    /// `Σ‖x_i‖_p^p`; one by construction.
    pub normalization: f64,
    /// `(Σ‖φ_i‖_q^q)^{1/q}`.
    pub target: f64,
    /// `Σ tr(x_i φ_i)`; equals `target`.
    pub pairing_sum: f64,
    /// `[tr(Σx Σφ) + Σ_{i<j} tr((x_i - x_j)(φ_i - φ_j))] / n`; equals `pairing_sum`.
    pub polarized: f64,
    /// Triangle step: bound by products of norms.
    pub triangle: f64,
    /// Hölder step over the `n(n-1)/2 + 1` terms.
    pub holder: f64,
    /// The small-exponent inequality applied to the images.
    pub images_report: InequalityReport,
    /// `n(Σ‖φ_i‖_q^q)^{p/q} <= ‖Σφ_i‖_q^p + Σ_{i<j}‖φ_i - φ_j‖_q^p`.
    pub report: InequalityReport,
    /// The same inequality from [`ak`] at exponent `q`.
    pub direct: InequalityReport,
}

impl DualityReplay {
    /// `target <= triangle <= holder` within a relative tolerance, after the
    /// pairing identities.
    pub fn chain_holds(&self, rtol: f64) -> bool {
        let scale = self.target.abs().max(1.0);
        (self.pairing_sum - self.target).abs() <= rtol * scale
            && (self.polarized - self.pairing_sum).abs() <= rtol * scale
            && self.polarized <= self.triangle + rtol * scale
            && self.triangle <= self.holder + rtol * scale
    }
}

/// Transfers the small-exponent inequality to `q >= 2` and checks the result.
pub fn ak_via_duality(phis: &OperatorTuple, q: f64) -> Result<DualityReplay> {
    if q.is_nan() || q < 2.0 || q.is_infinite() {
        return domain(format!("duality transfer needs finite q >= 2, got {q}"));
    }
    phis.require_pairs()?;
    let p = dual_exponent(q)?;
    let n = phis.n();
    let d = phis.d();

    let mut mass = 0.0;
    for phi in phis.matrices() {
        mass += norm_pow_p(phi, q)?;
    }
    let phi_sum = phis.sum();
    let phi_diffs = phis.differences();
    let mut dual_combos = norm(&phi_sum, q)?.powf(p);
    for diff in &phi_diffs {
        dual_combos += norm(diff, q)?.powf(p);
    }
    let report = InequalityReport::new(Tag::DualAudenaertKittaneh, n as f64 * mass.powf(p / q), dual_combos, q, n, d);
    let direct = ak(phis, q)?;

    if mass == 0.0 {
        let zero = InequalityReport::new(Tag::AudenaertKittaneh, 0.0, 0.0, p, n, d);
        return Ok(DualityReplay {
            p,
            q,
            normalization: 0.0,
            target: 0.0,
            pairing_sum: 0.0,
            polarized: 0.0,
            triangle: 0.0,
            holder: 0.0,
            images_report: zero,
            report,
            direct,
        });
    }

    let xs = duality_images(phis, q)?;
    let mut normalization = 0.0;
    let mut pairing_sum = Complex64::new(0.0, 0.0);
    for (x, phi) in xs.matrices().iter().zip(phis.matrices()) {
        normalization += norm_pow_p(x, p)?;
        pairing_sum += trace_pairing(x, phi)?;
    }

    let x_sum = xs.sum();
    let x_diffs = xs.differences();
    let mut polarized = trace_pairing(&x_sum, &phi_sum)?;
    let mut triangle = norm(&x_sum, p)? * norm(&phi_sum, q)?;
    let mut image_combos = norm(&x_sum, p)?.powf(q);
    for (xd, pd) in x_diffs.iter().zip(&phi_diffs) {
        polarized += trace_pairing(xd, pd)?;
        triangle += norm(xd, p)? * norm(pd, q)?;
        image_combos += norm(xd, p)?.powf(q);
    }
    polarized /= n as f64;
    triangle /= n as f64;
    let holder = image_combos.powf(1.0 / q) * dual_combos.powf(1.0 / p) / n as f64;

    Ok(DualityReplay {
        p,
        q,
        normalization,
        target: mass.powf(1.0 / q),
        pairing_sum: pairing_sum.re,
        polarized: polarized.re,
        triangle,
        holder,
        images_report: ak(&xs, p)?,
        report,
        direct,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matcore::{diag_real, frobenius, from_real_rows, identity, zeros};

    #[test]
    fn scalar_functional() {
        let mu = norming_functional(&diag_real(&[5.0]), 3.0).unwrap();
        assert!((mu[(0, 0)] - c(1.0, 0.0)).norm() < 1e-14);
        assert!((trace_pairing(&mu, &diag_real(&[5.0])).unwrap().re - 5.0).abs() < 1e-13);
    }

    #[test]
    fn unitary_functional_at_q2() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let u = from_real_rows(2, &[s, -s, s, s]);
        let mu = norming_functional(&u, 2.0).unwrap();
        let expected = u.adjoint() * c(1.0 / 2f64.sqrt(), 0.0);
        assert!(frobenius(&(mu - expected)) < 1e-14);
    }

    #[test]
    fn functional_errors() {
        assert!(matches!(norming_functional(&zeros(2), 2.0), Err(crate::Error::Domain(_))));
        assert!(norming_functional(&identity(2), 1.0).is_err());
    }

    #[test]
    fn scalar_image_is_normalized() {
        // (125)^{-2/3} * 25 * 1 = 1
        let xs = duality_images(&OperatorTuple::new(vec![diag_real(&[5.0])]).unwrap(), 3.0).unwrap();
        assert!((xs.get(0)[(0, 0)] - c(1.0, 0.0)).norm() < 1e-13);
    }

    #[test]
    fn zero_entries_map_to_zero() {
        let phis = OperatorTuple::new(vec![diag_real(&[2.0, 1.0]), zeros(2)]).unwrap();
        let xs = duality_images(&phis, 2.5).unwrap();
        assert_eq!(xs.get(1), &zeros(2));
        let p = dual_exponent(2.5).unwrap();
        assert!((norm(xs.get(0), p).unwrap() - 1.0).abs() < 1e-12);
        let all_zero = OperatorTuple::new(vec![zeros(2); 2]).unwrap();
        assert!(matches!(duality_images(&all_zero, 3.0), Err(crate::Error::Input(_))));
        assert!(duality_images(&phis, 1.5).is_err());
    }

    #[test]
    fn equal_tuple_is_equality() {
        let a = from_real_rows(2, &[1.0, 2.0, -0.5, 3.0]);
        let r = ak_via_duality(&OperatorTuple::new(vec![a; 3]).unwrap(), 3.0).unwrap();
        assert!(r.report.margin.abs() < 1e-10, "{:?}", r.report);
        assert!(r.chain_holds(1e-10));
        assert!((r.normalization - 1.0).abs() < 1e-10);
    }

    #[test]
    fn pair_matches_mccarthy_large_exponent() {
        let a = diag_real(&[2.0, 0.5]);
        let b = diag_real(&[-1.0, 1.5]);
        let r = ak_via_duality(&OperatorTuple::new(vec![a.clone(), b.clone()]).unwrap(), 3.0).unwrap();
        let m = crate::inequalities::mccarthy(&a, &b, 3.0).unwrap();
        assert!((r.report.lhs - m.lhs).abs() < 1e-10 && (r.report.rhs - m.rhs).abs() < 1e-10);
        assert!(r.report.satisfied);
    }
}
