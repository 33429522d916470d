//! Unitary-orbit Clarkson inequalities.
//!
//! For an n-tuple and `p > 2` the question is whether unitaries `U`, `U_{i,j}`
//! exist with
//!
//! ```text
//! U|ΣA_i|^p U* + Σ_{i<j} U_{i,j}|A_i - A_j|^p U_{i,j}* <= n^{p-1} Σ|A_i|^p
//! ```
//!
//! in the Loewner order, and the reverse for `0 < p <= 2`. For `n = 2` such
//! unitaries always exist; for larger `n` this is open. The search here only
//! ever certifies feasibility. Failing to find unitaries yields
//! [`Status::Unresolved`], never a counterexample.

use nalgebra::QR;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::Tolerances;
use crate::ensembles::ginibre;
use crate::error::{domain, input, Result};
use crate::io::MatrixJson;
use crate::matcore::{
    abs_power, c, expm_skew, herm_eigh, herm_eigvals, hermitian_part, identity, loewner_leq, polar, unitarity_defect,
    ComplexMatrix, LoewnerWitness, PolarSide,
};
use crate::tuple::OperatorTuple;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    /// `p > 2`: the orbit sum lies below the right-hand side.
    Upper,
    /// `0 < p <= 2`: the orbit sum lies above the right-hand side.
    Reversed,
}

impl Direction {
    pub fn for_exponent(p: f64) -> Self {
        if p > 2.0 {
            Direction::Upper
        } else {
            Direction::Reversed
        }
    }
}

#[derive(Debug, Clone)]
pub struct ConjectureInstance {
    pub tuple: OperatorTuple,
    pub p: f64,
    pub direction: Direction,
}

impl ConjectureInstance {
    pub fn new(tuple: OperatorTuple, p: f64) -> Result<Self> {
        if !(p > 0.0 && p.is_finite()) {
            return domain(format!("exponent must be finite and positive, got {p}"));
        }
        tuple.require_pairs()?;
        Ok(Self { tuple, p, direction: Direction::for_exponent(p) })
    }

    /// `n(n-1)/2 + 1`.
    pub fn unitary_count(&self) -> usize {
        let n = self.tuple.n();
        n * (n - 1) / 2 + 1
    }

    /// `|ΣA_i|^p` followed by `|A_i - A_j|^p` in lexicographic pair order.
    pub fn terms(&self) -> Result<Vec<ComplexMatrix>> {
        std::iter::once(self.tuple.sum())
            .chain(self.tuple.differences())
            .map(|m| abs_power(&m, self.p))
            .collect()
    }

    /// `n^{p-1} Σ|A_i|^p`.
    pub fn rhs(&self) -> Result<ComplexMatrix> {
        let d = self.tuple.d();
        let mut acc = ComplexMatrix::zeros(d, d);
        for a in self.tuple.matrices() {
            acc += abs_power(a, self.p)?;
        }
        Ok(acc * c((self.tuple.n() as f64).powf(self.p - 1.0), 0.0))
    }
}

fn conjugate(u: &ComplexMatrix, x: &ComplexMatrix) -> ComplexMatrix {
    hermitian_part(&(u * x * u.adjoint()))
}

/// The two sides of the orbit inequality for the given unitaries.
pub fn conjecture_sides(inst: &ConjectureInstance, unitaries: &[ComplexMatrix]) -> Result<(ComplexMatrix, ComplexMatrix)> {
    if unitaries.len() != inst.unitary_count() {
        return input(format!("expected {} unitaries, got {}", inst.unitary_count(), unitaries.len()));
    }
    let d = inst.tuple.d();
    if unitaries.iter().any(|u| u.shape() != (d, d)) {
        return input(format!("unitaries must be {d}x{d}"));
    }
    let mut lhs = ComplexMatrix::zeros(d, d);
    for (u, x) in unitaries.iter().zip(inst.terms()?) {
        lhs += conjugate(u, &x);
    }
    Ok((lhs, inst.rhs()?))
}

#[derive(Debug, Clone, Serialize)]
pub struct NecessaryReport {
    pub direction: Direction,
    /// Trace of the orbit sum (independent of the unitaries).
    pub trace_lhs: f64,
    pub trace_rhs: f64,
    /// The trace inequality; a failure contradicts the n-tuple Clarkson inequality.
    pub trace_holds: bool,
    /// Worst spectral gap: per-term Weyl comparison for `Upper`,
    /// Ky Fan partial sums for `Reversed`. Negative means violated.
    pub spectral_gap: f64,
    pub spectral_holds: bool,
}

impl NecessaryReport {
    pub fn passed(&self) -> bool {
        self.trace_holds && self.spectral_holds
    }
}

/// Unitary-invariant consequences of feasibility.
///
/// `Upper`: `Σ tr X_t <= tr R` and `λ_k(X_t) <= λ_k(R)` for each term `X_t`.
/// `Reversed`: `tr R <= Σ tr X_t` and `Σ_{k<=m} λ_k(R) <= Σ_t Σ_{k<=m} λ_k(X_t)`.
pub fn necessary_conditions(inst: &ConjectureInstance) -> Result<NecessaryReport> {
    let terms = inst.terms()?;
    let rhs = inst.rhs()?;
    let rhs_eigs = herm_eigvals(&rhs)?;
    let term_eigs: Vec<Vec<f64>> = terms.iter().map(herm_eigvals).collect::<Result<_>>()?;
    let trace_lhs: f64 = term_eigs.iter().flatten().sum();
    let trace_rhs: f64 = rhs_eigs.iter().sum();
    let slack = Tolerances::DEFAULT.margin * trace_lhs.max(trace_rhs).max(1.0);

    let (trace_holds, spectral_gap) = match inst.direction {
        Direction::Upper => {
            let gap = term_eigs
                .iter()
                .flat_map(|ev| ev.iter().zip(&rhs_eigs).map(|(x, r)| r - x))
                .fold(f64::INFINITY, f64::min);
            (trace_lhs <= trace_rhs + slack, gap)
        }
        Direction::Reversed => {
            let d = rhs_eigs.len();
            let mut gap = f64::INFINITY;
            let (mut acc_r, mut acc_terms) = (0.0, 0.0);
            for k in 0..d {
                acc_r += rhs_eigs[k];
                acc_terms += term_eigs.iter().map(|ev| ev[k]).sum::<f64>();
                gap = gap.min(acc_terms - acc_r);
            }
            (trace_rhs <= trace_lhs + slack, gap)
        }
    };
    Ok(NecessaryReport {
        direction: inst.direction,
        trace_lhs,
        trace_rhs,
        trace_holds,
        spectral_gap,
        spectral_holds: spectral_gap >= -slack,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Feasible,
    Unresolved,
    NecessaryConditionViolated,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchBudget {
    /// Descent iterations per restart.
    pub iterations: usize,
    /// Starting points: the identity first, then Haar-random draws.
    pub restarts: usize,
}

impl Default for SearchBudget {
    fn default() -> Self {
        Self { iterations: 2_000, restarts: 8 }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FeasibilityCertificate {
    pub unitaries: Vec<MatrixJson>,
    /// `λ_max(LHS - RHS)` for `Upper`, `λ_max(RHS - LHS)` for `Reversed`.
    pub residual: f64,
    pub status: Status,
    pub iterations: usize,
    pub restart: usize,
    pub seed: u64,
}

impl FeasibilityCertificate {
    pub fn unitary_matrices(&self) -> Vec<ComplexMatrix> {
        self.unitaries.iter().map(MatrixJson::to_matrix).collect()
    }
}

/// `λ_max` of the signed gap for the given unitaries.
pub fn residual(inst: &ConjectureInstance, unitaries: &[ComplexMatrix]) -> Result<f64> {
    let (lhs, rhs) = conjecture_sides(inst, unitaries)?;
    let gap = match inst.direction {
        Direction::Upper => lhs - rhs,
        Direction::Reversed => rhs - lhs,
    };
    Ok(herm_eigvals(&hermitian_part(&gap))?[0])
}

/// Loewner check of a certificate, recomputed from its stored unitaries.
pub fn verify_certificate(inst: &ConjectureInstance, cert: &FeasibilityCertificate, tol: f64) -> Result<LoewnerWitness> {
    let (lhs, rhs) = conjecture_sides(inst, &cert.unitary_matrices())?;
    match inst.direction {
        Direction::Upper => loewner_leq(&lhs, &rhs, tol),
        Direction::Reversed => loewner_leq(&rhs, &lhs, tol),
    }
}

/// Haar-distributed unitary from the QR factorisation of a Ginibre matrix.
pub fn haar_unitary(rng: &mut ChaCha8Rng, d: usize) -> ComplexMatrix {
    let qr = QR::new(ginibre(rng, d));
    let (q, r) = (qr.q(), qr.r());
    let mut u = q;
    for j in 0..d {
        let rjj = r[(j, j)];
        let phase = if rjj.norm() > 0.0 { rjj / rjj.norm() } else { c(1.0, 0.0) };
        for i in 0..d {
            u[(i, j)] *= phase;
        }
    }
    u
}

/// The descent problem in normalised units: `gap(U) = sign (Σ U_t X_t U_t† - R)`.
struct Descent {
    terms: Vec<ComplexMatrix>,
    rhs: ComplexMatrix,
    sign: f64,
    /// Target margin below zero for the penalty.
    shift: f64,
    /// Descent stops once the top eigenvalue of the gap is at or below this.
    stop: f64,
}

struct Evaluation {
    conjugated: Vec<ComplexMatrix>,
    penalty: f64,
    top: f64,
    /// `Q diag(2 max(λ + shift, 0)) Q†`, the derivative of the penalty in the gap.
    weight: ComplexMatrix,
}

impl Descent {
    fn evaluate(&self, unitaries: &[ComplexMatrix]) -> Result<Evaluation> {
        let d = self.rhs.nrows();
        let conjugated: Vec<ComplexMatrix> =
            unitaries.iter().zip(&self.terms).map(|(u, x)| conjugate(u, x)).collect();
        let mut gap = -&self.rhs;
        for m in &conjugated {
            gap += m;
        }
        if self.sign < 0.0 {
            gap = -gap;
        }
        let eig = herm_eigh(&hermitian_part(&gap))?;
        let shift = self.shift;
        let penalty = eig.values.iter().map(|&l| (l + shift).max(0.0).powi(2)).sum();
        let weight = eig.apply(|l| c(2.0 * (l + shift).max(0.0), 0.0));
        debug_assert_eq!(weight.nrows(), d);
        Ok(Evaluation { conjugated, penalty, top: eig.values[0], weight })
    }

    /// Skew-Hermitian descent directions `sign [M_t, F]`, one per unitary.
    fn directions(&self, eval: &Evaluation) -> Vec<ComplexMatrix> {
        eval.conjugated
            .iter()
            .map(|m| (m * &eval.weight - &eval.weight * m) * c(self.sign, 0.0))
            .collect()
    }

    fn step(unitaries: &[ComplexMatrix], directions: &[ComplexMatrix], eta: f64) -> Result<Vec<ComplexMatrix>> {
        unitaries
            .iter()
            .zip(directions)
            .map(|(u, k)| Ok(expm_skew(&(k * c(eta, 0.0)))? * u))
            .collect()
    }

    /// Armijo-backtracked steepest descent from `start`.
    /// Returns the best iterate, its top eigenvalue, and the iterations used.
    fn run(&self, start: Vec<ComplexMatrix>, iterations: usize) -> Result<(Vec<ComplexMatrix>, f64, usize)> {
        let mut current = start;
        let mut eval = self.evaluate(&current)?;
        let mut eta = 1.0;
        let mut used = 0;
        while used < iterations && eval.top > self.stop {
            used += 1;
            let dirs = self.directions(&eval);
            let slope: f64 = dirs.iter().map(|k| k.iter().map(|z| z.norm_sqr()).sum::<f64>()).sum();
            if slope <= f64::EPSILON * eval.penalty.max(f64::MIN_POSITIVE) {
                break;
            }
            let mut accepted = false;
            for _ in 0..40 {
                let trial = Self::step(&current, &dirs, eta)?;
                let trial_eval = self.evaluate(&trial)?;
                if trial_eval.penalty <= eval.penalty - 1e-4 * eta * slope {
                    current = trial;
                    eval = trial_eval;
                    accepted = true;
                    eta = (eta * 2.0).min(1e6);
                    break;
                }
                eta *= 0.5;
            }
            if !accepted {
                break;
            }
        }
        Ok((current, eval.top, used))
    }
}

fn orthonormalize(u: &ComplexMatrix) -> Result<ComplexMatrix> {
    if unitarity_defect(u) <= 1e-13 {
        return Ok(u.clone());
    }
    Ok(polar(u, PolarSide::Left)?.isometry)
}

/// Local search for unitaries certifying the orbit inequality.
///
/// Minimises `Σ max(λ_k + δ, 0)^2` over the eigenvalues of the signed gap by
/// steepest descent along `U_t <- exp(η K_t) U_t`. Restart 0 starts from
/// identities; if it does not certify feasibility, the remaining restarts
/// start from Haar-random unitaries and the lowest residual wins, ties going
/// to the lower restart index.
pub fn unitary_search(inst: &ConjectureInstance, budget: SearchBudget, seed: u64) -> Result<FeasibilityCertificate> {
    unitary_search_with(inst, budget, seed, &Tolerances::DEFAULT)
}

pub fn unitary_search_with(
    inst: &ConjectureInstance,
    budget: SearchBudget,
    seed: u64,
    tol: &Tolerances,
) -> Result<FeasibilityCertificate> {
    if budget.iterations == 0 || budget.restarts == 0 {
        return input("search budget needs at least one iteration and one restart");
    }
    let d = inst.tuple.d();
    let count = inst.unitary_count();
    let identities = vec![identity(d); count];

    let necessary = necessary_conditions(inst)?;
    if !necessary.passed() {
        return Ok(FeasibilityCertificate {
            unitaries: identities.iter().map(MatrixJson::from_matrix).collect(),
            residual: residual(inst, &identities)?,
            status: Status::NecessaryConditionViolated,
            iterations: 0,
            restart: 0,
            seed,
        });
    }

    let terms = inst.terms()?;
    let rhs = inst.rhs()?;
    let scale = terms
        .iter()
        .chain(std::iter::once(&rhs))
        .map(|m| herm_eigvals(m).map(|ev| ev[0].abs()))
        .collect::<Result<Vec<f64>>>()?
        .into_iter()
        .fold(0.0, f64::max)
        .max(f64::MIN_POSITIVE);
    let inv = c(1.0 / scale, 0.0);
    let problem = Descent {
        terms: terms.iter().map(|m| m * inv).collect(),
        rhs: &rhs * inv,
        sign: if inst.direction == Direction::Upper { 1.0 } else { -1.0 },
        shift: 1e-6,
        stop: (0.1 * tol.feasibility / scale).min(1e-12),
    };

    let finish = |restart: usize, found: Vec<ComplexMatrix>, used: usize| -> Result<FeasibilityCertificate> {
        let unitaries: Vec<ComplexMatrix> = found.iter().map(orthonormalize).collect::<Result<_>>()?;
        let res = residual(inst, &unitaries)?;
        let status = if res <= tol.feasibility { Status::Feasible } else { Status::Unresolved };
        Ok(FeasibilityCertificate {
            unitaries: unitaries.iter().map(MatrixJson::from_matrix).collect(),
            residual: res,
            status,
            iterations: used,
            restart,
            seed,
        })
    };

    let (found, _, used) = problem.run(identities, budget.iterations)?;
    let first = finish(0, found, used)?;
    if first.status == Status::Feasible || budget.restarts == 1 {
        return Ok(first);
    }

    let others: Vec<FeasibilityCertificate> = (1..budget.restarts)
        .into_par_iter()
        .map(|restart| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(restart as u64);
            let start: Vec<ComplexMatrix> = (0..count).map(|_| haar_unitary(&mut rng, d)).collect();
            let (found, _, used) = problem.run(start, budget.iterations)?;
            finish(restart, found, used)
        })
        .collect::<Result<_>>()?;

    Ok(std::iter::once(first)
        .chain(others)
        .reduce(|best, next| if next.residual < best.residual { next } else { best })
        .expect("at least one restart"))
}

/// Two-variable orbit inequality: unitaries `U, V` with
/// `U|A+B|^p U* + V|A-B|^p V* <= 2^{p-1}(|A|^p + |B|^p)` for `p > 2`, reversed for `p <= 2`.
pub fn bl_two_check(
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    p: f64,
    budget: SearchBudget,
    seed: u64,
) -> Result<FeasibilityCertificate> {
    let inst = ConjectureInstance::new(OperatorTuple::new(vec![a.clone(), b.clone()])?, p)?;
    unitary_search(&inst, budget, seed)
}
