//! Schatten p-norms, quasi-norms, dual exponents and the trace pairing.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::config::Tolerances;
use crate::error::{domain, Result};
use crate::matcore::{check_same_dims, singular_values, ComplexMatrix};
use crate::report::{InequalityReport, Tag};

/// An exponent `p` in `(0, ∞]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct SchattenExponent(f64);

impl SchattenExponent {
    pub fn new(p: f64) -> Result<Self> {
        if p.is_nan() || p <= 0.0 {
            return domain(format!("Schatten exponent must be positive, got {p}"));
        }
        Ok(Self(p))
    }

    pub fn infinity() -> Self {
        Self(f64::INFINITY)
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn is_infinite(self) -> bool {
        self.0.is_infinite()
    }

    pub fn is_quasi(self) -> bool {
        self.0 < 1.0
    }

    /// The conjugate exponent. `p = 1` maps to `∞`; `p < 1` has none.
    pub fn dual(self) -> Option<Self> {
        if self.0 > 1.0 && self.0.is_finite() {
            Some(Self(self.0 / (self.0 - 1.0)))
        } else if self.0 == 1.0 {
            Some(Self::infinity())
        } else if self.0.is_infinite() {
            Some(Self(1.0))
        } else {
            None
        }
    }
}

impl TryFrom<f64> for SchattenExponent {
    type Error = crate::Error;
    fn try_from(p: f64) -> Result<Self> {
        Self::new(p)
    }
}

impl From<SchattenExponent> for f64 {
    fn from(p: SchattenExponent) -> f64 {
        p.0
    }
}

/// A norm value that remembers its exponent.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NormValue {
    pub value: f64,
    pub p: SchattenExponent,
    pub is_quasi: bool,
}

/// `Σ_j s_j^p` (finite `p`) over a decreasing spectrum. For quasi-norms,
/// singular values below the relative zero threshold are dropped, since
/// `s^p` with `p < 1` inflates rounding noise on a zero singular value.
fn power_sum(spectrum: &[f64], p: f64) -> f64 {
    let top = spectrum.first().copied().unwrap_or(0.0);
    let cutoff = if p < 1.0 { Tolerances::DEFAULT.zero_rel * top } else { 0.0 };
    spectrum.iter().filter(|&&s| s > cutoff).map(|&s| s.powf(p)).sum()
}

/// `(Σ s^p)^{1/p}` as `s_max (Σ (s/s_max)^p)^{1/p}`, which stays finite when `s_max^p` overflows.
fn scaled_root(spectrum: &[f64], p: f64) -> f64 {
    let top = spectrum.first().copied().unwrap_or(0.0);
    if top == 0.0 || !top.is_finite() {
        return top;
    }
    let scaled: Vec<f64> = spectrum.iter().map(|s| s / top).collect();
    top * power_sum(&scaled, p).powf(1.0 / p)
}

pub fn schatten_norm(x: &ComplexMatrix, p: SchattenExponent) -> Result<NormValue> {
    let s = singular_values(x)?;
    let value = if p.is_infinite() {
        s.largest()
    } else {
        scaled_root(s.values(), p.value())
    };
    Ok(NormValue { value, p, is_quasi: p.is_quasi() })
}

/// `‖X‖_p` for finite or infinite `p > 0`.
pub fn norm(x: &ComplexMatrix, p: f64) -> Result<f64> {
    Ok(schatten_norm(x, SchattenExponent::new(p)?)?.value)
}

/// `‖X‖_p^p = tr |X|^p`, computed without the round trip through the root.
pub fn norm_pow_p(x: &ComplexMatrix, p: f64) -> Result<f64> {
    let p = SchattenExponent::new(p)?;
    if p.is_infinite() {
        return domain("p-th power of the operator norm is undefined for p = ∞");
    }
    Ok(power_sum(singular_values(x)?.values(), p.value()))
}

/// `q = p / (p - 1)`.
pub fn dual_exponent(p: f64) -> Result<f64> {
    if p.is_nan() || p <= 1.0 {
        return domain(format!("dual exponent needs p > 1, got {p}"));
    }
    if p.is_infinite() {
        return Ok(1.0);
    }
    Ok(p / (p - 1.0))
}

/// `tr(Y B)`.
pub fn trace_pairing(y: &ComplexMatrix, b: &ComplexMatrix) -> Result<Complex64> {
    let d = check_same_dims(y, b)?;
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..d {
        for k in 0..d {
            acc += y[(i, k)] * b[(k, i)];
        }
    }
    Ok(acc)
}

/// `|tr(XY)| <= ‖X‖_p ‖Y‖_q`.
pub fn holder_check(x: &ComplexMatrix, y: &ComplexMatrix, p: f64) -> Result<InequalityReport> {
    let q = dual_exponent(p)?;
    let lhs = trace_pairing(x, y)?.norm();
    let rhs = norm(x, p)? * norm(y, q)?;
    Ok(InequalityReport::new(Tag::Holder, lhs, rhs, p, 2, x.nrows()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matcore::{diag_real, from_real_rows, identity, zeros};

    #[test]
    fn large_entries_do_not_overflow() {
        let x = diag_real(&[1e200, 1e200]);
        let v = norm(&x, 21.0).unwrap();
        assert!((v / 1e200 - 2f64.powf(1.0 / 21.0)).abs() < 1e-14, "{v}");
        assert_eq!(norm(&x, 0.5).unwrap(), 4e200);
    }

    #[test]
    fn norm_examples() {
        assert!((norm(&diag_real(&[3.0, 4.0]), 2.0).unwrap() - 5.0).abs() < 1e-14);
        let nil = from_real_rows(2, &[0.0, 2.0, 0.0, 0.0]);
        assert!((norm(&nil, 1.0).unwrap() - 2.0).abs() < 1e-14);
        // (3 * 1^{1/2})^2
        assert!((norm(&identity(3), 0.5).unwrap() - 9.0).abs() < 1e-13);
        assert_eq!(norm(&diag_real(&[3.0, -4.0]), f64::INFINITY).unwrap(), 4.0);
    }

    #[test]
    fn quasi_flag_and_exponent_domain() {
        let v = schatten_norm(&identity(2), SchattenExponent::new(0.5).unwrap()).unwrap();
        assert!(v.is_quasi);
        assert!(SchattenExponent::new(0.0).is_err());
        assert!(SchattenExponent::new(-1.0).is_err());
        assert!(norm(&identity(2), -2.0).is_err());
        assert!(serde_json::from_str::<SchattenExponent>("-1.0").is_err());
    }

    #[test]
    fn dual_exponent_examples() {
        assert_eq!(dual_exponent(2.0).unwrap(), 2.0);
        assert!((dual_exponent(1.5).unwrap() - 3.0).abs() < 1e-15);
        assert!((dual_exponent(4.0).unwrap() - 4.0 / 3.0).abs() < 1e-15);
        assert!(dual_exponent(1.0).is_err());
        assert!(dual_exponent(0.5).is_err());
        assert_eq!(SchattenExponent::new(1.0).unwrap().dual(), Some(SchattenExponent::infinity()));
        assert_eq!(SchattenExponent::new(0.5).unwrap().dual(), None);
    }

    #[test]
    fn trace_pairing_examples() {
        let t = trace_pairing(&identity(2), &diag_real(&[2.0, 3.0])).unwrap();
        assert_eq!(t, Complex64::new(5.0, 0.0));
        assert_eq!(trace_pairing(&zeros(2), &diag_real(&[2.0, 3.0])).unwrap(), Complex64::new(0.0, 0.0));
        let y = from_real_rows(2, &[0.0, 1.0, 0.0, 0.0]);
        let b = from_real_rows(2, &[0.0, 0.0, 1.0, 0.0]);
        assert_eq!(trace_pairing(&y, &b).unwrap(), Complex64::new(1.0, 0.0));
        assert!(trace_pairing(&identity(2), &identity(3)).is_err());
    }

    #[test]
    fn holder_examples() {
        let r = holder_check(&identity(2), &identity(2), 2.0).unwrap();
        assert!((r.lhs - 2.0).abs() < 1e-14 && (r.rhs - 2.0).abs() < 1e-14 && r.satisfied);
        let r = holder_check(&diag_real(&[1.0, 0.0]), &diag_real(&[0.0, 1.0]), 1.5).unwrap();
        assert_eq!(r.lhs, 0.0);
        assert!((r.rhs - 1.0).abs() < 1e-14);
        assert!(holder_check(&identity(2), &identity(2), 1.0).is_err());
    }
}
