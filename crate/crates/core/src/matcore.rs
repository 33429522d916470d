//! Dense complex matrix primitives.
//!
//! Matrices are `nalgebra` values; the SVD and the Hermitian eigensolver come
//! from `faer`, whose complex SVD stays accurate on rank-deficient input.
//! This module adds the conventions the rest of the crate relies on: spectra sorted decreasingly,
//! full unitary polar factors, and powers of positive semidefinite matrices
//! with `0^t = 0` on the kernel.

use faer::{Mat, MatRef, Side};
use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::config::Tolerances;
use crate::error::{domain, input, Result};

pub type ComplexMatrix = DMatrix<Complex64>;

fn to_faer(x: &ComplexMatrix) -> Mat<Complex64> {
    Mat::from_fn(x.nrows(), x.ncols(), |i, j| x[(i, j)])
}

fn from_faer(m: MatRef<'_, Complex64>) -> ComplexMatrix {
    ComplexMatrix::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)])
}

fn no_convergence<E>(_: E) -> crate::Error {
    crate::Error::Input("decomposition did not converge".into())
}

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn identity(d: usize) -> ComplexMatrix {
    ComplexMatrix::identity(d, d)
}

pub fn zeros(d: usize) -> ComplexMatrix {
    ComplexMatrix::zeros(d, d)
}

/// Square matrix from real row-major entries.
pub fn from_real_rows(d: usize, rows: &[f64]) -> ComplexMatrix {
    assert_eq!(rows.len(), d * d, "expected {} entries", d * d);
    ComplexMatrix::from_fn(d, d, |i, j| c(rows[i * d + j], 0.0))
}

pub fn diag_real(values: &[f64]) -> ComplexMatrix {
    let d = values.len();
    ComplexMatrix::from_fn(d, d, |i, j| if i == j { c(values[i], 0.0) } else { c(0.0, 0.0) })
}

pub fn diag_complex(values: &[Complex64]) -> ComplexMatrix {
    let d = values.len();
    ComplexMatrix::from_fn(d, d, |i, j| if i == j { values[i] } else { c(0.0, 0.0) })
}

pub fn frobenius(x: &ComplexMatrix) -> f64 {
    x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

fn max_abs(x: &ComplexMatrix) -> f64 {
    x.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Rejects non-square matrices and non-finite entries.
pub fn check_square(x: &ComplexMatrix) -> Result<usize> {
    if x.nrows() != x.ncols() {
        return input(format!("matrix is {}x{}, expected square", x.nrows(), x.ncols()));
    }
    if x.nrows() == 0 {
        return input("empty matrix");
    }
    if x.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return input("matrix has non-finite entries");
    }
    Ok(x.nrows())
}

pub fn check_same_dims(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<usize> {
    let d = check_square(a)?;
    check_square(b)?;
    if a.shape() != b.shape() {
        return input(format!(
            "dimension mismatch: {}x{} vs {}x{}",
            a.nrows(),
            a.ncols(),
            b.nrows(),
            b.ncols()
        ));
    }
    Ok(d)
}

pub fn is_hermitian(h: &ComplexMatrix, rel_tol: f64) -> bool {
    let scale = max_abs(h).max(1.0);
    let d = h.nrows();
    (0..d).all(|i| (i..d).all(|j| (h[(i, j)] - h[(j, i)].conj()).norm() <= rel_tol * scale))
}

/// `(H + H†) / 2`.
pub fn hermitian_part(h: &ComplexMatrix) -> ComplexMatrix {
    (h + h.adjoint()) * c(0.5, 0.0)
}

/// Decreasingly ordered singular values.
#[derive(Debug, Clone, PartialEq)]
pub struct SingularSpectrum(Vec<f64>);

impl SingularSpectrum {
    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn largest(&self) -> f64 {
        self.0.first().copied().unwrap_or(0.0)
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.0
    }
}

/// `X = left * diag(spectrum) * right†`.
#[derive(Debug, Clone)]
pub struct Svd {
    pub left: ComplexMatrix,
    pub spectrum: SingularSpectrum,
    pub right: ComplexMatrix,
}

impl Svd {
    pub fn reconstruct(&self) -> ComplexMatrix {
        let s: Vec<Complex64> = self.spectrum.values().iter().map(|&v| c(v, 0.0)).collect();
        &self.left * diag_complex(&s) * self.right.adjoint()
    }
}

pub fn svd(x: &ComplexMatrix) -> Result<Svd> {
    let d = check_square(x)?;
    let raw = to_faer(x).svd().map_err(no_convergence)?;
    let values = (0..d).map(|k| raw.S()[k].re.max(0.0)).collect();
    Ok(Svd { left: from_faer(raw.U()), spectrum: SingularSpectrum(values), right: from_faer(raw.V()) })
}

pub fn singular_values(x: &ComplexMatrix) -> Result<SingularSpectrum> {
    check_square(x)?;
    let mut values: Vec<f64> = to_faer(x).singular_values().map_err(no_convergence)?;
    values.iter_mut().for_each(|v| *v = v.max(0.0));
    values.sort_by(|a, b| b.total_cmp(a));
    Ok(SingularSpectrum(values))
}

/// Eigenvalues (decreasing) and matching orthonormal eigenvectors of a Hermitian matrix.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    pub vectors: ComplexMatrix,
}

impl HermitianEigen {
    /// `Q diag(g(λ)) Q†`.
    pub fn apply(&self, g: impl Fn(f64) -> Complex64) -> ComplexMatrix {
        let d = self.values.len();
        let mut scaled = self.vectors.clone();
        for j in 0..d {
            let w = g(self.values[j]);
            for i in 0..d {
                scaled[(i, j)] *= w;
            }
        }
        scaled * self.vectors.adjoint()
    }
}

pub fn herm_eigh(h: &ComplexMatrix) -> Result<HermitianEigen> {
    herm_eigh_with(h, &Tolerances::DEFAULT)
}

pub fn herm_eigh_with(h: &ComplexMatrix, tol: &Tolerances) -> Result<HermitianEigen> {
    let d = check_square(h)?;
    if !is_hermitian(h, tol.hermitian) {
        return domain("matrix is not Hermitian");
    }
    let eig = to_faer(&hermitian_part(h)).self_adjoint_eigen(Side::Lower).map_err(no_convergence)?;
    // faer returns ascending eigenvalues
    let values = (0..d).rev().map(|k| eig.S()[k].re).collect();
    let vectors = ComplexMatrix::from_fn(d, d, |i, j| eig.U()[(i, d - 1 - j)]);
    Ok(HermitianEigen { values, vectors })
}

/// Real eigenvalues of a Hermitian matrix, sorted decreasingly.
pub fn herm_eigvals(h: &ComplexMatrix) -> Result<Vec<f64>> {
    Ok(herm_eigh(h)?.values)
}

pub fn lambda_max(h: &ComplexMatrix) -> Result<f64> {
    Ok(herm_eigvals(h)?[0])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PolarSide {
    /// `X = U |X|` with `|X| = (X†X)^{1/2}`.
    Left,
    /// `X = |X| W` with `|X| = (XX†)^{1/2}`.
    Right,
}

#[derive(Debug, Clone)]
pub struct PolarParts {
    pub isometry: ComplexMatrix,
    pub modulus: ComplexMatrix,
    pub side: PolarSide,
}

impl PolarParts {
    pub fn reconstruct(&self) -> ComplexMatrix {
        match self.side {
            PolarSide::Left => &self.isometry * &self.modulus,
            PolarSide::Right => &self.modulus * &self.isometry,
        }
    }
}

/// Polar decomposition with a full unitary factor `L R†` taken from the SVD.
/// The zero matrix gets the identity as its unitary factor.
pub fn polar(x: &ComplexMatrix, side: PolarSide) -> Result<PolarParts> {
    let d = check_square(x)?;
    let f = svd(x)?;
    if f.spectrum.largest() == 0.0 {
        return Ok(PolarParts { isometry: identity(d), modulus: zeros(d), side });
    }
    let isometry = &f.left * f.right.adjoint();
    let s: Vec<Complex64> = f.spectrum.values().iter().map(|&v| c(v, 0.0)).collect();
    let sigma = diag_complex(&s);
    let modulus = match side {
        PolarSide::Left => &f.right * sigma * f.right.adjoint(),
        PolarSide::Right => &f.left * sigma * f.left.adjoint(),
    };
    Ok(PolarParts { isometry, modulus: hermitian_part(&modulus), side })
}

/// `|X|^t = (X†X)^{t/2}` computed from the SVD, with `0^t = 0`.
pub fn abs_power(x: &ComplexMatrix, t: f64) -> Result<ComplexMatrix> {
    let f = svd(x)?;
    let cutoff = Tolerances::DEFAULT.zero_rel * f.spectrum.largest();
    let w: Vec<Complex64> = f
        .spectrum
        .values()
        .iter()
        .map(|&s| if s > cutoff { c(s.powf(t), 0.0) } else { c(0.0, 0.0) })
        .collect();
    Ok(hermitian_part(&(&f.right * diag_complex(&w) * f.right.adjoint())))
}

/// Eigendecomposition of a PSD matrix, clamping tiny negative eigenvalues to zero.
#[derive(Debug, Clone)]
pub struct PsdSpectrum {
    eig: HermitianEigen,
    cutoff: f64,
}

impl PsdSpectrum {
    pub fn new(p: &ComplexMatrix) -> Result<Self> {
        Self::with_tolerances(p, &Tolerances::DEFAULT)
    }

    pub fn with_tolerances(p: &ComplexMatrix, tol: &Tolerances) -> Result<Self> {
        let eig = herm_eigh_with(p, tol)?;
        let top = eig.values[0].max(0.0);
        let floor = eig.values[eig.values.len() - 1];
        if floor < -tol.hermitian * top.max(1.0) {
            return domain(format!("matrix is not positive semidefinite (eigenvalue {floor:e})"));
        }
        Ok(Self { eig, cutoff: tol.zero_rel * top })
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eig.values
    }

    pub fn has_kernel(&self) -> bool {
        self.eig.values.iter().any(|&s| s <= self.cutoff)
    }

    /// `P^t` for complex `t`. Requires `Re(t) >= 0` when `P` is singular; on the
    /// kernel the value is the limit from `Re(t) > 0`, namely zero.
    pub fn power(&self, t: Complex64) -> Result<ComplexMatrix> {
        if t.re < 0.0 && self.has_kernel() {
            return domain("negative real power of a singular matrix");
        }
        let cutoff = self.cutoff;
        Ok(self.eig.apply(|s| if s > cutoff { (t * s.ln()).exp() } else { c(0.0, 0.0) }))
    }
}

/// `P^t` for Hermitian positive semidefinite `P`.
pub fn psd_power(p: &ComplexMatrix, t: Complex64) -> Result<ComplexMatrix> {
    PsdSpectrum::new(p)?.power(t)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LoewnerWitness {
    pub holds: bool,
    /// `λ_min(Z - X)`.
    pub min_eigenvalue: f64,
}

/// Tests `X <= Z` in the Loewner order.
pub fn loewner_leq(x: &ComplexMatrix, z: &ComplexMatrix, tol: f64) -> Result<LoewnerWitness> {
    check_same_dims(x, z)?;
    if !is_hermitian(x, Tolerances::DEFAULT.hermitian) || !is_hermitian(z, Tolerances::DEFAULT.hermitian) {
        return domain("Loewner comparison needs Hermitian matrices");
    }
    let gap = herm_eigvals(&(z - x))?;
    let min_eigenvalue = gap[gap.len() - 1];
    Ok(LoewnerWitness { holds: min_eigenvalue >= -tol, min_eigenvalue })
}

/// `exp(K)` for skew-Hermitian `K`, evaluated through the Hermitian matrix `iK`.
pub fn expm_skew(k: &ComplexMatrix) -> Result<ComplexMatrix> {
    let h = k * c(0.0, 1.0);
    let eig = herm_eigh(&hermitian_part(&h))?;
    Ok(eig.apply(|lambda| c(0.0, -lambda).exp()))
}

/// Largest entry of `U†U - I` in absolute value.
pub fn unitarity_defect(u: &ComplexMatrix) -> f64 {
    let d = u.nrows();
    max_abs(&(u.adjoint() * u - identity(d)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn svd_of_diagonal_sorts_absolute_values() {
        let f = svd(&diag_real(&[3.0, 4.0])).unwrap();
        assert_eq!(f.spectrum.values(), &[4.0, 3.0]);
        let f = svd(&diag_real(&[-3.0, 1.0, -7.0])).unwrap();
        assert_eq!(f.spectrum.values(), &[7.0, 3.0, 1.0]);
    }

    #[test]
    fn svd_of_nilpotent_and_rank_one() {
        let f = svd(&from_real_rows(2, &[0.0, 2.0, 0.0, 0.0])).unwrap();
        assert!(close(f.spectrum.values()[0], 2.0, 1e-14));
        assert!(close(f.spectrum.values()[1], 0.0, 1e-14));
        // all-ones: rank one with s_1 = ||J||_F = 2
        let j = from_real_rows(2, &[1.0; 4]);
        let f = svd(&j).unwrap();
        assert!(close(f.spectrum.values()[0], 2.0, 1e-14));
        assert!(f.spectrum.values()[1].abs() < 1e-14);
        assert!(frobenius(&(f.reconstruct() - &j)) < 1e-13);
    }

    #[test]
    fn svd_rejects_non_finite() {
        let mut x = identity(2);
        x[(0, 1)] = c(f64::NAN, 0.0);
        assert!(matches!(svd(&x), Err(crate::Error::Input(_))));
        let rect = ComplexMatrix::zeros(2, 3);
        assert!(svd(&rect).is_err());
    }

    #[test]
    fn polar_real_diagonal_signs() {
        let p = polar(&diag_real(&[-2.0, 1.0]), PolarSide::Left).unwrap();
        assert!(frobenius(&(&p.isometry - diag_real(&[-1.0, 1.0]))) < 1e-14);
        assert!(frobenius(&(&p.modulus - diag_real(&[2.0, 1.0]))) < 1e-14);
    }

    #[test]
    fn polar_of_zero_is_identity_and_zero() {
        for side in [PolarSide::Left, PolarSide::Right] {
            let p = polar(&zeros(3), side).unwrap();
            assert_eq!(p.isometry, identity(3));
            assert_eq!(p.modulus, zeros(3));
        }
    }

    #[test]
    fn polar_of_nilpotent_reconstructs() {
        let x = from_real_rows(2, &[0.0, 1.0, 0.0, 0.0]);
        let p = polar(&x, PolarSide::Left).unwrap();
        assert!(frobenius(&(&p.modulus - diag_real(&[0.0, 1.0]))) < 1e-14);
        assert!(unitarity_defect(&p.isometry) < 1e-14);
        assert!(frobenius(&(p.reconstruct() - &x)) < 1e-14);

        let r = polar(&x, PolarSide::Right).unwrap();
        assert!(frobenius(&(&r.modulus - diag_real(&[1.0, 0.0]))) < 1e-14);
        assert!(frobenius(&(r.reconstruct() - &x)) < 1e-14);
    }

    #[test]
    fn psd_power_scalar_cases() {
        let r = psd_power(&diag_real(&[4.0]), c(0.5, 0.0)).unwrap();
        assert!(close(r[(0, 0)].re, 2.0, 1e-15));

        // e^i = cos 1 + i sin 1
        let r = psd_power(&diag_real(&[std::f64::consts::E]), c(0.0, 1.0)).unwrap();
        assert!((r[(0, 0)] - c(1f64.cos(), 1f64.sin())).norm() < 1e-15);

        let r = psd_power(&diag_real(&[0.0, 1.0]), c(0.7, 0.0)).unwrap();
        assert!(frobenius(&(r - diag_real(&[0.0, 1.0]))) < 1e-15);
    }

    #[test]
    fn psd_power_domain_errors() {
        let not_psd = diag_real(&[1.0, -1.0]);
        assert!(matches!(psd_power(&not_psd, c(0.5, 0.0)), Err(crate::Error::Domain(_))));
        let not_herm = from_real_rows(2, &[1.0, 1.0, 0.0, 1.0]);
        assert!(matches!(psd_power(&not_herm, c(0.5, 0.0)), Err(crate::Error::Domain(_))));
        let singular = diag_real(&[0.0, 2.0]);
        assert!(matches!(psd_power(&singular, c(-0.5, 0.0)), Err(crate::Error::Domain(_))));
        // invertible matrices accept negative powers
        let r = psd_power(&diag_real(&[4.0, 1.0]), c(-0.5, 0.0)).unwrap();
        assert!(close(r[(0, 0)].re, 0.5, 1e-15));
    }

    #[test]
    fn rank_one_complex_svd_reconstructs() {
        let u: Vec<Complex64> = (0..8).map(|i| c(i as f64 - 3.0, 0.5 * i as f64)).collect();
        let v: Vec<Complex64> = (0..8).map(|i| c(1.0 / (i as f64 + 1.0), -0.25)).collect();
        let x = ComplexMatrix::from_fn(8, 8, |i, j| u[i] * v[j].conj());
        let f = svd(&x).unwrap();
        assert!(frobenius(&(f.reconstruct() - &x)) < 1e-12 * frobenius(&x));
        assert!(close(f.spectrum.largest(), frobenius(&x), 1e-12));
        assert!(f.spectrum.values()[1] < 1e-12 * frobenius(&x));
        let tr: f64 = (0..8).map(|i| abs_power(&x, 2.0).unwrap()[(i, i)].re).sum();
        assert!(close(tr, frobenius(&x).powi(2), 1e-10));
    }

    #[test]
    fn herm_eigvals_examples() {
        let ev = herm_eigvals(&diag_real(&[1.0, 5.0, 3.0])).unwrap();
        assert!(ev.iter().zip([5.0, 3.0, 1.0]).all(|(a, b)| close(*a, b, 1e-15)));
        let swap = from_real_rows(2, &[0.0, 1.0, 1.0, 0.0]);
        let ev = herm_eigvals(&swap).unwrap();
        // characteristic polynomial λ² - 1
        assert!(close(ev[0], 1.0, 1e-15) && close(ev[1], -1.0, 1e-15));
        assert!(herm_eigvals(&identity(3)).unwrap().iter().all(|v| close(*v, 1.0, 1e-15)));
        let skew = from_real_rows(2, &[0.0, 1.0, -1.0, 0.0]);
        assert!(matches!(herm_eigvals(&skew), Err(crate::Error::Domain(_))));
    }

    #[test]
    fn loewner_examples() {
        let w = loewner_leq(&zeros(2), &identity(2), 1e-12).unwrap();
        assert!(w.holds && close(w.min_eigenvalue, 1.0, 1e-15));
        let w = loewner_leq(&diag_real(&[2.0, 0.0]), &diag_real(&[1.0, 1.0]), 1e-12).unwrap();
        assert!(!w.holds && close(w.min_eigenvalue, -1.0, 1e-15));
        let x = diag_real(&[3.0, -2.0]);
        let w = loewner_leq(&x, &x, 1e-12).unwrap();
        assert!(w.holds && w.min_eigenvalue == 0.0);
    }

    #[test]
    fn expm_skew_is_unitary() {
        let k = ComplexMatrix::from_fn(3, 3, |i, j| c(i as f64 - j as f64, (i + j) as f64 * 0.3));
        let k = &k - k.adjoint();
        let u = expm_skew(&k).unwrap();
        assert!(unitarity_defect(&u) < 1e-13);
        // exp(0) = I
        assert!(frobenius(&(expm_skew(&zeros(3)).unwrap() - identity(3))) < 1e-15);
    }
}
