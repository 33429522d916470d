//! Seeded generators for operator tuples.
//!
//! Randomness comes from ChaCha8. The 32-byte key of trial `t` is
//! `seed ‖ kind code ‖ n ‖ d ‖ t ‖ 0` (little endian, 8+4+4+4+8+4 bytes) and
//! matrix `k` of the tuple reads from stream `k` of that key, so any trial
//! can be regenerated in isolation and in any order. Entries are drawn
//! row-major, real part before imaginary part.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{input, Result};
use crate::matcore::{c, ComplexMatrix};
use crate::tuple::OperatorTuple;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum EnsembleKind {
    /// i.i.d. standard complex Gaussian entries, `E|a_ij|^2 = 1`.
    Ginibre,
    /// `(G + G†)/2`.
    Hermitian,
    /// `G†G`.
    Psd,
    /// `G_1 G_2†` with `d × rank` Ginibre factors.
    LowRank { rank: usize },
    /// Real Gaussian diagonal.
    DiagonalReal,
    /// One Ginibre draw repeated `n` times.
    EqualTuple,
    /// `A + eps * E_k` with common `A` and independent Ginibre `E_k`.
    NearEqual { eps: f64 },
    /// Strictly upper triangular Ginibre.
    Nilpotent,
}

impl EnsembleKind {
    fn code(self) -> u32 {
        match self {
            EnsembleKind::Ginibre => 1,
            EnsembleKind::Hermitian => 2,
            EnsembleKind::Psd => 3,
            EnsembleKind::LowRank { .. } => 4,
            EnsembleKind::DiagonalReal => 5,
            EnsembleKind::EqualTuple => 6,
            EnsembleKind::NearEqual { .. } => 7,
            EnsembleKind::Nilpotent => 8,
        }
    }

    pub fn label(self) -> String {
        match self {
            EnsembleKind::LowRank { rank } => format!("low_rank({rank})"),
            EnsembleKind::NearEqual { eps } => format!("near_equal({eps:e})"),
            EnsembleKind::Ginibre => "ginibre".into(),
            EnsembleKind::Hermitian => "hermitian".into(),
            EnsembleKind::Psd => "psd".into(),
            EnsembleKind::DiagonalReal => "diagonal_real".into(),
            EnsembleKind::EqualTuple => "equal_tuple".into(),
            EnsembleKind::Nilpotent => "nilpotent".into(),
        }
    }

    /// Every kind, with `low_rank` at half the dimension and `near_equal` at `eps = 1e-2`.
    pub fn preset(d: usize) -> Vec<EnsembleKind> {
        vec![
            EnsembleKind::Ginibre,
            EnsembleKind::Hermitian,
            EnsembleKind::Psd,
            EnsembleKind::LowRank { rank: (d / 2).max(1) },
            EnsembleKind::DiagonalReal,
            EnsembleKind::EqualTuple,
            EnsembleKind::NearEqual { eps: 1e-2 },
            EnsembleKind::Nilpotent,
        ]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnsembleSpec {
    #[serde(flatten)]
    pub kind: EnsembleKind,
    pub n: usize,
    pub d: usize,
    pub seed: u64,
}

impl EnsembleSpec {
    pub fn new(kind: EnsembleKind, n: usize, d: usize, seed: u64) -> Self {
        Self { kind, n, d, seed }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 || self.d == 0 {
            return input(format!("ensemble needs n >= 1 and d >= 1, got n={} d={}", self.n, self.d));
        }
        match self.kind {
            EnsembleKind::LowRank { rank } if rank == 0 || rank > self.d => {
                input(format!("low_rank needs 1 <= rank <= d, got rank={rank} d={}", self.d))
            }
            EnsembleKind::NearEqual { eps } if !(eps >= 0.0 && eps.is_finite()) => {
                input(format!("near_equal needs finite eps >= 0, got {eps}"))
            }
            _ => Ok(()),
        }
    }

    /// Generator for matrix stream `stream` of trial `trial`.
    pub fn rng(&self, trial: u64, stream: u64) -> ChaCha8Rng {
        let mut key = [0u8; 32];
        key[0..8].copy_from_slice(&self.seed.to_le_bytes());
        key[8..12].copy_from_slice(&self.kind.code().to_le_bytes());
        key[12..16].copy_from_slice(&(self.n as u32).to_le_bytes());
        key[16..20].copy_from_slice(&(self.d as u32).to_le_bytes());
        key[20..28].copy_from_slice(&trial.to_le_bytes());
        let mut rng = ChaCha8Rng::from_seed(key);
        rng.set_stream(stream);
        rng
    }
}

/// Square Ginibre matrix.
pub fn ginibre(rng: &mut ChaCha8Rng, d: usize) -> ComplexMatrix {
    ginibre_rect(rng, d, d)
}

fn ginibre_rect(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> ComplexMatrix {
    let scale = std::f64::consts::FRAC_1_SQRT_2;
    let mut entries = Vec::with_capacity(rows * cols);
    for _ in 0..rows * cols {
        let re: f64 = StandardNormal.sample(rng);
        let im: f64 = StandardNormal.sample(rng);
        entries.push(c(scale * re, scale * im));
    }
    ComplexMatrix::from_row_slice(rows, cols, &entries)
}

fn draw(kind: EnsembleKind, rng: &mut ChaCha8Rng, d: usize) -> ComplexMatrix {
    match kind {
        EnsembleKind::Ginibre | EnsembleKind::EqualTuple | EnsembleKind::NearEqual { .. } => ginibre(rng, d),
        EnsembleKind::Hermitian => {
            let g = ginibre(rng, d);
            (&g + g.adjoint()) * c(0.5, 0.0)
        }
        EnsembleKind::Psd => {
            let g = ginibre(rng, d);
            g.adjoint() * g
        }
        EnsembleKind::LowRank { rank } => {
            let left = ginibre_rect(rng, d, rank);
            let right = ginibre_rect(rng, d, rank);
            left * right.adjoint()
        }
        EnsembleKind::DiagonalReal => {
            let mut m = ComplexMatrix::zeros(d, d);
            for i in 0..d {
                let v: f64 = StandardNormal.sample(rng);
                m[(i, i)] = c(v, 0.0);
            }
            m
        }
        EnsembleKind::Nilpotent => {
            let g = ginibre(rng, d);
            ComplexMatrix::from_fn(d, d, |i, j| if j > i { g[(i, j)] } else { c(0.0, 0.0) })
        }
    }
}

/// Trial `trial` of the ensemble.
pub fn generate_trial(spec: &EnsembleSpec, trial: u64) -> Result<OperatorTuple> {
    spec.validate()?;
    let d = spec.d;
    let matrices = match spec.kind {
        EnsembleKind::EqualTuple => {
            let base = draw(spec.kind, &mut spec.rng(trial, 0), d);
            vec![base; spec.n]
        }
        EnsembleKind::NearEqual { eps } => {
            let base = draw(spec.kind, &mut spec.rng(trial, 0), d);
            (0..spec.n)
                .map(|k| &base + ginibre(&mut spec.rng(trial, k as u64 + 1), d) * c(eps, 0.0))
                .collect()
        }
        kind => (0..spec.n).map(|k| draw(kind, &mut spec.rng(trial, k as u64), d)).collect(),
    };
    OperatorTuple::new(matrices)
}

/// Trial zero of the ensemble.
pub fn generate(spec: &EnsembleSpec) -> Result<OperatorTuple> {
    generate_trial(spec, 0)
}
