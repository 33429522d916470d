use std::collections::BTreeMap;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use super::proof_exponent;
use super::witness::WitnessSet;
use crate::config::Tolerances;
use crate::error::{domain, input, Result};
use crate::matcore::{c, polar, ComplexMatrix, PolarSide, PsdSpectrum};
use crate::report::{InequalityReport, Tag};
use crate::schatten::{norm, norm_pow_p, trace_pairing};
use crate::tuple::OperatorTuple;

/// A point `z = x + iy` of the strip `1/2 <= x <= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StripPoint {
    pub x: f64,
    pub y: f64,
}

impl StripPoint {
    pub fn new(x: f64, y: f64) -> Result<Self> {
        if !(0.5..=1.0).contains(&x) || !y.is_finite() {
            return domain(format!("strip point needs 1/2 <= x <= 1 and finite y, got ({x}, {y})"));
        }
        Ok(Self { x, y })
    }

    pub fn z(self) -> Complex64 {
        c(self.x, self.y)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Boundary {
    /// `x = 1/2`, where every factor is Hilbert-Schmidt.
    Half,
    /// `x = 1`, where the witness factors are partial isometries.
    One,
}

impl Boundary {
    pub fn from_x(x: f64) -> Result<Self> {
        if x == 0.5 {
            Ok(Boundary::Half)
        } else if x == 1.0 {
            Ok(Boundary::One)
        } else {
            domain(format!("boundary bounds exist only at x = 1/2 and x = 1, got {x}"))
        }
    }
}

struct RightFactor {
    modulus: PsdSpectrum,
    unitary: ComplexMatrix,
}

struct DualFactor {
    norm_q: f64,
    unitary: ComplexMatrix,
    modulus: PsdSpectrum,
}

/// Precomputed decompositions for evaluating
/// `f(z) = tr(Y(z)B(z) + Σ_{i<j} Y_{i,j}(z)B_{i,j}(z))` with
/// `A_k(z) = |A_k|^{pz} W_k` and `Y(z) = ‖Y‖_q^{pz - q(1-z)} V |Y|^{q(1-z)}`.
pub struct AnalyticFamily {
    p: f64,
    q: f64,
    n: usize,
    parts: Vec<RightFactor>,
    /// `Y` first, then the pair witnesses; `None` marks a zero witness.
    duals: Vec<Option<DualFactor>>,
    pairs: Vec<(usize, usize)>,
    /// `Σ‖A_k‖_p^p`.
    part_mass: f64,
    /// `‖Y‖_q^p + Σ‖Y_{i,j}‖_q^p`.
    dual_mass: f64,
}

impl AnalyticFamily {
    pub fn new(t: &OperatorTuple, w: &WitnessSet, p: f64) -> Result<Self> {
        Self::from_parts(t, &w.y, &w.pairs, p)
    }

    pub fn from_parts(
        t: &OperatorTuple,
        y: &ComplexMatrix,
        pairs: &BTreeMap<(usize, usize), ComplexMatrix>,
        p: f64,
    ) -> Result<Self> {
        let q = proof_exponent(p)?;
        let pair_keys = checked_pair_keys(t, y, pairs)?;
        let mut parts = Vec::with_capacity(t.n());
        let mut part_mass = 0.0;
        for a in t.matrices() {
            let pp = polar(a, PolarSide::Right)?;
            parts.push(RightFactor { modulus: PsdSpectrum::new(&pp.modulus)?, unitary: pp.isometry });
            part_mass += norm_pow_p(a, p)?;
        }
        let mut duals = Vec::with_capacity(pairs.len() + 1);
        let mut dual_mass = 0.0;
        for w in std::iter::once(y).chain(pair_keys.iter().map(|k| &pairs[k])) {
            let norm_q = norm(w, q)?;
            dual_mass += norm_q.powf(p);
            if norm_q == 0.0 {
                duals.push(None);
                continue;
            }
            let pp = polar(w, PolarSide::Left)?;
            duals.push(Some(DualFactor { norm_q, unitary: pp.isometry, modulus: PsdSpectrum::new(&pp.modulus)? }));
        }
        Ok(Self { p, q, n: t.n(), parts, duals, pairs: pair_keys, part_mass, dual_mass })
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    /// `M1`, the bound on `|f|` along `x = 1`.
    pub fn bound_at_one(&self) -> f64 {
        self.dual_mass * self.part_mass
    }

    /// `M2`, the bound on `|f|` along `x = 1/2`.
    pub fn bound_at_half(&self) -> f64 {
        (self.n as f64).sqrt() * self.dual_mass.sqrt() * self.part_mass.sqrt()
    }

    /// Log-linear interpolation `M2^{2(1-x)} M1^{2x-1}` of the boundary bounds.
    pub fn bound_at(&self, x: f64) -> f64 {
        self.bound_at_half().powf(2.0 * (1.0 - x)) * self.bound_at_one().powf(2.0 * x - 1.0)
    }

    pub fn eval(&self, z: StripPoint) -> Result<Complex64> {
        let z = z.z();
        let p = self.p;
        let q = self.q;
        let moved: Vec<ComplexMatrix> = self
            .parts
            .iter()
            .map(|f| Ok(f.modulus.power(z * p)? * &f.unitary))
            .collect::<Result<_>>()?;
        let dual_at = |k: usize| -> Result<Option<ComplexMatrix>> {
            let Some(f) = &self.duals[k] else { return Ok(None) };
            let one = c(1.0, 0.0);
            let scale = (c(f.norm_q.ln(), 0.0) * (z * p - (one - z) * q)).exp();
            Ok(Some(&f.unitary * f.modulus.power((one - z) * q)? * scale))
        };

        let mut total = c(0.0, 0.0);
        if let Some(yz) = dual_at(0)? {
            let mut b = moved[0].clone();
            for m in &moved[1..] {
                b += m;
            }
            total += trace_pairing(&yz, &b)?;
        }
        for (slot, &(i, j)) in self.pairs.iter().enumerate() {
            if let Some(yz) = dual_at(slot + 1)? {
                total += trace_pairing(&yz, &(&moved[i] - &moved[j]))?;
            }
        }
        Ok(total)
    }
}

fn checked_pair_keys(
    t: &OperatorTuple,
    y: &ComplexMatrix,
    pairs: &BTreeMap<(usize, usize), ComplexMatrix>,
) -> Result<Vec<(usize, usize)>> {
    let keys: Vec<(usize, usize)> = t.pairs().collect();
    if pairs.len() != keys.len() || keys.iter().any(|k| !pairs.contains_key(k)) {
        return input(format!("expected dual operators for all {} index pairs", keys.len()));
    }
    if y.shape() != (t.d(), t.d()) || pairs.values().any(|w| w.shape() != (t.d(), t.d())) {
        return input("dual operators must match the tuple dimension");
    }
    Ok(keys)
}

/// `f(z)` for the tuple and its witnesses.
pub fn analytic_family_eval(t: &OperatorTuple, w: &WitnessSet, p: f64, z: StripPoint) -> Result<Complex64> {
    AnalyticFamily::new(t, w, p)?.eval(z)
}

/// `M1` at `x = 1` or `M2` at `x = 1/2`.
pub fn boundary_bound(t: &OperatorTuple, w: &WitnessSet, p: f64, x: f64) -> Result<f64> {
    let boundary = Boundary::from_x(x)?;
    let family = AnalyticFamily::new(t, w, p)?;
    Ok(match boundary {
        Boundary::Half => family.bound_at_half(),
        Boundary::One => family.bound_at_one(),
    })
}

/// `M1^{2(1/p - 1/2)} M2^{2(1 - 1/p)}`.
pub fn three_lines_bound(m1: f64, m2: f64, p: f64) -> f64 {
    m1.powf(2.0 * (1.0 / p - 0.5)) * m2.powf(2.0 * (1.0 - 1.0 / p))
}

/// `|tr(YB + Σ Y_{i,j}B_{i,j})| <= n^{1/q} (Σ‖A_k‖_p^p)^{1/p} (‖Y‖_q^p + Σ‖Y_{i,j}‖_q^p)^{1/p}`
/// for arbitrary dual operators.
pub fn lemma22_check(
    t: &OperatorTuple,
    y: &ComplexMatrix,
    pairs: &BTreeMap<(usize, usize), ComplexMatrix>,
    p: f64,
) -> Result<InequalityReport> {
    let q = proof_exponent(p)?;
    let keys = checked_pair_keys(t, y, pairs)?;
    let mut pairing = trace_pairing(y, &t.sum())?;
    let mut dual_mass = norm(y, q)?.powf(p);
    for (key, diff) in keys.iter().zip(t.differences()) {
        let w = &pairs[key];
        pairing += trace_pairing(w, &diff)?;
        dual_mass += norm(w, q)?.powf(p);
    }
    let mut part_mass = 0.0;
    for a in t.matrices() {
        part_mass += norm_pow_p(a, p)?;
    }
    let n = t.n();
    let rhs = (n as f64).powf(1.0 / q) * part_mass.powf(1.0 / p) * dual_mass.powf(1.0 / p);
    Ok(InequalityReport::new(Tag::InterpolatedPairing, pairing.norm(), rhs, p, n, t.d()))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct InterpolationSample {
    pub z: StripPoint,
    pub f_re: f64,
    pub f_im: f64,
    pub abs_f: f64,
    /// Interpolated boundary bound at this `x`; equals `M2` or `M1` on the edges.
    pub bound: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ScanResult {
    pub samples: Vec<InterpolationSample>,
    /// `(x, max_y |f(x + iy)|)` per grid abscissa.
    pub envelope: Vec<(f64, f64)>,
    pub m1: f64,
    pub m2: f64,
    /// Largest `log M(x_mid) - interpolated log M` over consecutive triples.
    pub worst_convexity_excess: f64,
    pub convexity_violations: usize,
    /// Largest `|f| - bound` over samples on the two boundary lines.
    pub worst_boundary_excess: f64,
    pub f_at_inverse_p: f64,
    pub three_lines: f64,
}

impl ScanResult {
    pub fn boundary_ok(&self, tol: f64) -> bool {
        self.worst_boundary_excess <= tol
    }

    pub fn interpolation_ok(&self, tol: f64) -> bool {
        self.f_at_inverse_p <= self.three_lines + tol
    }
}

pub fn default_x_grid() -> Vec<f64> {
    (0..9).map(|k| 0.5 + k as f64 / 16.0).collect()
}

pub fn default_y_grid() -> Vec<f64> {
    (0..41).map(|k| -5.0 + k as f64 * 0.25).collect()
}

/// Samples `f` over `x_grid × y_grid`, estimates `M(x)` by the grid maximum
/// and tests midpoint log-convexity on consecutive abscissae.
pub fn convexity_scan(t: &OperatorTuple, w: &WitnessSet, p: f64, x_grid: &[f64], y_grid: &[f64]) -> Result<ScanResult> {
    let family = AnalyticFamily::new(t, w, p)?;
    scan_family(&family, x_grid, y_grid, Tolerances::DEFAULT.scan)
}

pub fn scan_family(family: &AnalyticFamily, x_grid: &[f64], y_grid: &[f64], tol_scan: f64) -> Result<ScanResult> {
    if x_grid.is_empty() || y_grid.is_empty() {
        return input("scan grids must be non-empty");
    }
    let points: Vec<StripPoint> = x_grid
        .iter()
        .flat_map(|&x| y_grid.iter().map(move |&y| (x, y)))
        .map(|(x, y)| StripPoint::new(x, y))
        .collect::<Result<_>>()?;
    let values: Vec<Complex64> = points.par_iter().map(|&z| family.eval(z)).collect::<Result<_>>()?;

    let m1 = family.bound_at_one();
    let m2 = family.bound_at_half();
    let samples: Vec<InterpolationSample> = points
        .iter()
        .zip(&values)
        .map(|(&z, f)| InterpolationSample { z, f_re: f.re, f_im: f.im, abs_f: f.norm(), bound: family.bound_at(z.x) })
        .collect();

    let envelope: Vec<(f64, f64)> = x_grid
        .iter()
        .enumerate()
        .map(|(k, &x)| {
            let row = &samples[k * y_grid.len()..(k + 1) * y_grid.len()];
            (x, row.iter().map(|s| s.abs_f).fold(0.0, f64::max))
        })
        .collect();

    let mut worst_convexity_excess = f64::NEG_INFINITY;
    let mut convexity_violations = 0;
    for win in envelope.windows(3) {
        let [(xa, ma), (xm, mm), (xb, mb)] = [win[0], win[1], win[2]];
        if mm == 0.0 {
            continue;
        }
        let s = (xm - xa) / (xb - xa);
        let excess = if ma == 0.0 || mb == 0.0 {
            f64::INFINITY
        } else {
            mm.ln() - ((1.0 - s) * ma.ln() + s * mb.ln())
        };
        worst_convexity_excess = worst_convexity_excess.max(excess);
        if excess > tol_scan {
            convexity_violations += 1;
        }
    }

    let worst_boundary_excess = samples
        .iter()
        .filter(|s| s.z.x == 0.5 || s.z.x == 1.0)
        .map(|s| s.abs_f - s.bound)
        .fold(f64::NEG_INFINITY, f64::max);

    let f_at_inverse_p = family.eval(StripPoint::new(1.0 / family.p, 0.0)?)?.norm();
    Ok(ScanResult {
        samples,
        envelope,
        m1,
        m2,
        worst_convexity_excess,
        convexity_violations,
        worst_boundary_excess,
        f_at_inverse_p,
        three_lines: three_lines_bound(m1, m2, family.p),
    })
}
