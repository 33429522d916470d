use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::Serialize;

use super::interpolation::lemma22_check;
use super::proof_exponent;
use crate::error::Result;
use crate::inequalities::ak;
use crate::matcore::{c, check_square, polar, zeros, ComplexMatrix, PolarSide, PsdSpectrum};
use crate::report::{InequalityReport, Tag};
use crate::schatten::{norm, norm_pow_p, trace_pairing};
use crate::tuple::OperatorTuple;

/// Dual witnesses `Y` for `B = ΣA_i` and `Y_{i,j}` for each `B_{i,j} = A_i - A_j`.
#[derive(Debug, Clone)]
pub struct WitnessSet {
    pub y: ComplexMatrix,
    pub pairs: BTreeMap<(usize, usize), ComplexMatrix>,
}

impl WitnessSet {
    /// `Y` followed by the pair witnesses in lexicographic order.
    pub fn all(&self) -> impl Iterator<Item = &ComplexMatrix> {
        std::iter::once(&self.y).chain(self.pairs.values())
    }

    /// `‖Y‖_q^p + Σ ‖Y_{i,j}‖_q^p`.
    pub fn dual_mass(&self, p: f64, q: f64) -> Result<f64> {
        let mut acc = 0.0;
        for w in self.all() {
            acc += norm(w, q)?.powf(p);
        }
        Ok(acc)
    }
}

/// `Y = ‖B‖_p^{q-p} |B|^{p-1} U†` from the left polar decomposition `B = U|B|`,
/// so that `tr(YB) = ‖B‖_p^q = ‖Y‖_q^p`. The zero matrix maps to zero.
pub fn dual_witness(b: &ComplexMatrix, p: f64) -> Result<ComplexMatrix> {
    let q = proof_exponent(p)?;
    let d = check_square(b)?;
    let size = norm(b, p)?;
    if size == 0.0 {
        return Ok(zeros(d));
    }
    let parts = polar(b, PolarSide::Left)?;
    let modulus_power = PsdSpectrum::new(&parts.modulus)?.power(c(p - 1.0, 0.0))?;
    Ok(modulus_power * parts.isometry.adjoint() * c(size.powf(q - p), 0.0))
}

pub fn witness_set(t: &OperatorTuple, p: f64) -> Result<WitnessSet> {
    let y = dual_witness(&t.sum(), p)?;
    let mut pairs = BTreeMap::new();
    for ((i, j), diff) in t.pairs().zip(t.differences()) {
        pairs.insert((i, j), dual_witness(&diff, p)?);
    }
    Ok(WitnessSet { y, pairs })
}

/// Relative defects of `tr(YB) = ‖B‖_p^q` and `‖Y‖_q^p = ‖B‖_p^q`.
pub fn witness_defects(b: &ComplexMatrix, y: &ComplexMatrix, p: f64) -> Result<(f64, f64)> {
    let q = proof_exponent(p)?;
    let target = norm(b, p)?.powf(q);
    let scale = target.max(f64::MIN_POSITIVE);
    let pairing = trace_pairing(y, b)?;
    let dual = norm(y, q)?.powf(p);
    Ok(((pairing - Complex64::new(target, 0.0)).norm() / scale, (dual - target).abs() / scale))
}

/// Every intermediate quantity of the witness argument.
#[derive(Debug, Clone, Serialize)]
pub struct WitnessReplay {
    pub p: f64,
    pub q: f64,
    /// `‖B‖_p^q + Σ‖B_{i,j}‖_p^q` from the norms directly.
    pub combo_mass: f64,
    /// `tr(YB + Σ Y_{i,j}B_{i,j})`; equals `combo_mass` by the witness identities.
    pub pairing_re: f64,
    pub pairing_im: f64,
    /// `‖Y‖_q^p + Σ‖Y_{i,j}‖_q^p`; also equals `combo_mass`.
    pub dual_mass: f64,
    /// `Σ‖A_k‖_p^p`.
    pub parts: f64,
    /// Bilinear bound evaluated at the witnesses.
    pub pairing_bound: InequalityReport,
    /// The bound after cancelling `dual_mass^{1/p}` and raising to the power `q`.
    pub cancelled: InequalityReport,
    /// The same inequality evaluated directly from norms.
    pub direct: InequalityReport,
    pub worst_pair_defect: f64,
}

impl WitnessReplay {
    /// Largest relative disagreement between the cancelled and direct sides.
    pub fn disagreement(&self) -> f64 {
        let rel = |a: f64, b: f64| (a - b).abs() / a.abs().max(b.abs()).max(f64::MIN_POSITIVE);
        let l = if self.cancelled.lhs == 0.0 && self.direct.lhs == 0.0 { 0.0 } else { rel(self.cancelled.lhs, self.direct.lhs) };
        l.max(rel(self.cancelled.rhs, self.direct.rhs))
    }
}

/// Replays the witness argument for `1 < p <= 2`: bound the witness pairing,
/// cancel the common factor, and compare with [`ak`].
pub fn ak_from_witness(t: &OperatorTuple, p: f64) -> Result<WitnessReplay> {
    let q = proof_exponent(p)?;
    t.require_pairs()?;
    let n = t.n();
    let sum = t.sum();
    let diffs = t.differences();
    let witnesses = witness_set(t, p)?;

    let mut combo_mass = norm(&sum, p)?.powf(q);
    let mut pairing = trace_pairing(&witnesses.y, &sum)?;
    for (diff, w) in diffs.iter().zip(witnesses.pairs.values()) {
        combo_mass += norm(diff, p)?.powf(q);
        pairing += trace_pairing(w, diff)?;
    }
    let mut worst_pair_defect = 0.0f64;
    for (target, w) in std::iter::once(&sum).chain(diffs.iter()).zip(witnesses.all()) {
        if norm(target, p)? > 0.0 {
            let (a, b) = witness_defects(target, w, p)?;
            worst_pair_defect = worst_pair_defect.max(a).max(b);
        }
    }
    let dual_mass = witnesses.dual_mass(p, q)?;
    let mut parts = 0.0;
    for a in t.matrices() {
        parts += norm_pow_p(a, p)?;
    }

    let pairing_bound = lemma22_check(t, &witnesses.y, &witnesses.pairs, p)?;
    let direct = ak(t, p)?;
    let d = t.d();
    let cancelled = if dual_mass > 0.0 {
        let shrink = dual_mass.powf(1.0 / p);
        let lhs = (pairing_bound.lhs / shrink).powf(q);
        let rhs = (pairing_bound.rhs / shrink).powf(q);
        InequalityReport::new(Tag::WitnessReplay, lhs, rhs, p, n, d)
    } else {
        InequalityReport::new(Tag::WitnessReplay, 0.0, n as f64 * parts.powf(q / p), p, n, d)
    };

    Ok(WitnessReplay {
        p,
        q,
        combo_mass,
        pairing_re: pairing.re,
        pairing_im: pairing.im,
        dual_mass,
        parts,
        pairing_bound,
        cancelled,
        direct,
        worst_pair_defect,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matcore::{diag_real, frobenius, from_real_rows, identity};

    #[test]
    fn scalar_witness() {
        // B = 4, p = 3/2, q = 3: Y = 4^{3/2} * 4^{1/2} = 16, tr YB = 64 = 4^3
        let y = dual_witness(&diag_real(&[4.0]), 1.5).unwrap();
        assert!((y[(0, 0)].re - 16.0).abs() < 1e-12);
        assert!(y[(0, 0)].im.abs() < 1e-14);
        let (a, b) = witness_defects(&diag_real(&[4.0]), &y, 1.5).unwrap();
        assert!(a < 1e-14 && b < 1e-14);
    }

    #[test]
    fn unitary_witness_at_p2_is_adjoint() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let u = ComplexMatrix::from_fn(2, 2, |i, j| match (i, j) {
            (0, 0) => c(s, 0.0),
            (0, 1) => c(0.0, s),
            (1, 0) => c(0.0, s),
            _ => c(s, 0.0),
        });
        let y = dual_witness(&u, 2.0).unwrap();
        assert!(frobenius(&(y - u.adjoint())) < 1e-13);
    }

    #[test]
    fn diagonal_witness_identities() {
        let b = diag_real(&[2.0, 1.0]);
        let y = dual_witness(&b, 1.5).unwrap();
        let (a, c2) = witness_defects(&b, &y, 1.5).unwrap();
        assert!(a < 1e-13 && c2 < 1e-13);
        let b = from_real_rows(2, &[0.0, 3.0, 0.0, 0.0]);
        let y = dual_witness(&b, 1.7).unwrap();
        let (a, c2) = witness_defects(&b, &y, 1.7).unwrap();
        assert!(a < 1e-13 && c2 < 1e-13);
    }

    #[test]
    fn zero_and_out_of_range() {
        assert_eq!(dual_witness(&zeros(2), 1.5).unwrap(), zeros(2));
        assert!(dual_witness(&identity(2), 1.0).is_err());
        assert!(dual_witness(&identity(2), 2.5).is_err());
    }

    #[test]
    fn equal_pair_gives_zero_pair_witness() {
        let a = from_real_rows(2, &[1.0, 2.0, -0.5, 3.0]);
        let w = witness_set(&OperatorTuple::new(vec![a.clone(), a]).unwrap(), 1.5).unwrap();
        assert_eq!(w.pairs[&(0, 1)], zeros(2));
        // scalars 1, 1: B = 2, Y = 2^{3/2} * 2^{1/2} = 4
        let w = witness_set(&OperatorTuple::new(vec![diag_real(&[1.0]); 2]).unwrap(), 1.5).unwrap();
        assert!((w.y[(0, 0)].re - 4.0).abs() < 1e-12);
        assert_eq!(w.pairs[&(0, 1)], zeros(1));
    }

    #[test]
    fn replay_equal_tuple_is_tight() {
        let a = from_real_rows(2, &[1.0, 2.0, -0.5, 3.0]);
        let r = ak_from_witness(&OperatorTuple::new(vec![a; 3]).unwrap(), 1.5).unwrap();
        assert!(r.pairing_bound.margin.abs() < 1e-8);
        assert!(r.cancelled.margin.abs() < 1e-8);
        assert!(r.direct.margin.abs() < 1e-8);
        assert!(r.disagreement() < 1e-8);
    }

    #[test]
    fn replay_all_zero_tuple() {
        let r = ak_from_witness(&OperatorTuple::new(vec![zeros(2); 3]).unwrap(), 1.5).unwrap();
        assert_eq!(r.cancelled.lhs, 0.0);
        assert!(r.cancelled.satisfied);
    }
}
