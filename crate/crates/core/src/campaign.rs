//! Verification campaigns and the four command-line workflows.
//!
//! A campaign evaluates every `(suite, ensemble, p, n, d, trial)` cell of a
//! [`CampaignConfig`] and collects the margins into a [`VerifyReport`]:
//!
//! ```json
//! {
//!   "meta": {"seed": 0, "config_hash": "<sha256 hex>", "version": "0.1.0"},
//!   "results": [{"suite": "ak", "tag": "audenaert_kittaneh", "p": 1.5, "n": 3, "d": 4,
//!                "kind": "ginibre", "trial": 0, "lhs": 1.0, "rhs": 2.0,
//!                "margin": 0.5, "satisfied": true}],
//!   "summary": {"suites": [{"suite": "ak", "rows": 1, "worst_margin": 0.5, "violations": 0}],
//!               "cells": 1, "violation_count": 0}
//! }
//! ```
//!
//! Each cell regenerates its tuple from the master seed (see
//! [`crate::ensembles`]), so cells run in parallel and the result array does
//! not depend on scheduling. Exit codes: [`EXIT_OK`] when nothing is
//! violated, [`EXIT_VIOLATION`] otherwise, [`EXIT_INVALID`] for bad input.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::config::Tolerances;
use crate::conjecture::{
    necessary_conditions, unitary_search_with, ConjectureInstance, Direction, FeasibilityCertificate, NecessaryReport,
    SearchBudget, Status,
};
use crate::ensembles::{generate_trial, EnsembleKind, EnsembleSpec};
use crate::error::{input, Error, Result};
use crate::inequalities::{ak, bcl, bcl_dominates_clarkson, clarkson_pair, cm, hk_ntuple, mccarthy, parallelogram};
use crate::io::read_tuple;
use crate::proofs::{
    ak_from_witness, ak_via_duality, default_x_grid, default_y_grid, scan_family, witness_defects, witness_set,
    AnalyticFamily, ScanResult, WitnessReplay,
};
use crate::report::{InequalityReport, Tag};
use crate::tuple::OperatorTuple;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_INVALID: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Clarkson,
    Parallelogram,
    Hk,
    Bcl,
    BclDominatesClarkson,
    Mccarthy,
    Ak,
    Cm,
    /// Transfer to `q >= 2`; the grid value is used as `q`.
    Duality,
    /// Witness pairing bound and its cancellation.
    Lemma22,
    /// Strip scan of the analytic family.
    Interpolation,
    /// Trace condition of the unitary-orbit inequality.
    Conjecture,
}

impl Suite {
    pub const ALL: [Suite; 12] = [
        Suite::Clarkson,
        Suite::Parallelogram,
        Suite::Hk,
        Suite::Bcl,
        Suite::BclDominatesClarkson,
        Suite::Mccarthy,
        Suite::Ak,
        Suite::Cm,
        Suite::Duality,
        Suite::Lemma22,
        Suite::Interpolation,
        Suite::Conjecture,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Clarkson => "clarkson",
            Suite::Parallelogram => "parallelogram",
            Suite::Hk => "hk",
            Suite::Bcl => "bcl",
            Suite::BclDominatesClarkson => "bcl_dominates_clarkson",
            Suite::Mccarthy => "mccarthy",
            Suite::Ak => "ak",
            Suite::Cm => "cm",
            Suite::Duality => "duality",
            Suite::Lemma22 => "lemma22",
            Suite::Interpolation => "interpolation",
            Suite::Conjecture => "conjecture",
        }
    }

    /// Whether `p` lies in the suite's domain.
    pub fn admits(self, p: f64) -> bool {
        if !(p > 0.0 && p.is_finite()) {
            return false;
        }
        match self {
            Suite::Clarkson | Suite::Hk | Suite::Conjecture => true,
            Suite::Parallelogram => p == 2.0,
            Suite::Bcl => p >= 1.0,
            Suite::BclDominatesClarkson => p <= 2.0 && p >= 1.0,
            Suite::Mccarthy | Suite::Ak | Suite::Cm => p > 1.0,
            Suite::Lemma22 | Suite::Interpolation => p > 1.0 && p <= 2.0,
            Suite::Duality => p >= 2.0,
        }
    }

    /// Pairwise suites always run with `n = 2`.
    pub fn is_pairwise(self) -> bool {
        matches!(
            self,
            Suite::Clarkson | Suite::Parallelogram | Suite::Bcl | Suite::BclDominatesClarkson | Suite::Mccarthy
        )
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::Input(format!("unknown suite {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CampaignConfig {
    pub suites: Vec<Suite>,
    /// `low_rank` ranks above a cell's dimension are capped at the dimension.
    pub ensembles: Vec<EnsembleKind>,
    /// Each suite runs on the grid values inside its domain.
    pub p_grid: Vec<f64>,
    /// Tuple sizes for n-tuple suites.
    pub n_values: Vec<usize>,
    pub dims: Vec<usize>,
    /// Trials per cell.
    pub trials: u64,
    pub seed: u64,
    /// Report destination; nothing is written when absent.
    pub output: Option<PathBuf>,
    pub tolerances: Tolerances,
    /// Used by [`run_conjecture`].
    pub budget: SearchBudget,
}

impl Default for CampaignConfig {
    fn default() -> Self {
        Self::full_preset(0)
    }
}

pub const PRESET_P_GRID: [f64; 8] = [0.5, 1.0, 1.3, 1.5, 2.0, 2.5, 3.0, 4.0];

impl CampaignConfig {
    /// Every inequality suite over every ensemble kind, `p` in [`PRESET_P_GRID`],
    /// `n` in 2..=5, `d` in {1, 2, 3, 4, 8}, three trials per cell.
    pub fn full_preset(seed: u64) -> Self {
        Self {
            suites: vec![
                Suite::Clarkson,
                Suite::Parallelogram,
                Suite::Hk,
                Suite::Bcl,
                Suite::BclDominatesClarkson,
                Suite::Mccarthy,
                Suite::Ak,
                Suite::Cm,
                Suite::Conjecture,
            ],
            ensembles: preset_kinds(),
            p_grid: PRESET_P_GRID.to_vec(),
            n_values: vec![2, 3, 4, 5],
            dims: vec![1, 2, 3, 4, 8],
            trials: 3,
            seed,
            output: None,
            tolerances: Tolerances::DEFAULT,
            budget: SearchBudget::default(),
        }
    }

    /// The proof replays: duality, witness pairing and strip scans.
    pub fn proof_preset(seed: u64) -> Self {
        Self {
            suites: vec![Suite::Duality, Suite::Lemma22, Suite::Interpolation],
            p_grid: vec![1.3, 1.5, 1.8, 2.0, 2.5, 3.0, 4.0],
            dims: vec![1, 2, 3, 4],
            trials: 2,
            ..Self::full_preset(seed)
        }
    }

    /// Unitary-orbit searches in both directions at desk scale.
    pub fn conjecture_preset(seed: u64) -> Self {
        Self {
            suites: vec![Suite::Conjecture],
            p_grid: vec![0.5, 1.5, 2.5, 3.0, 4.0],
            n_values: vec![2, 3],
            dims: vec![2, 3, 4],
            trials: 2,
            ..Self::full_preset(seed)
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.suites.is_empty() {
            return input("campaign needs at least one suite");
        }
        if self.ensembles.is_empty() || self.dims.is_empty() || self.p_grid.is_empty() {
            return input("campaign needs ensembles, dims and a p-grid");
        }
        if self.trials == 0 {
            return input("campaign needs at least one trial per cell");
        }
        if let Some(p) = self.p_grid.iter().find(|p| !(**p > 0.0 && p.is_finite())) {
            return input(format!("p-grid values must be finite and positive, got {p}"));
        }
        if self.dims.contains(&0) {
            return input("dimensions must be at least 1");
        }
        if self.suites.iter().any(|s| !s.is_pairwise()) && (self.n_values.is_empty() || self.n_values.contains(&0)) {
            return input("n-tuple suites need tuple sizes n >= 2");
        }
        if let Some(n) = self.n_values.iter().find(|n| **n < 2) {
            return input(format!("tuple sizes must be at least 2, got {n}"));
        }
        for kind in &self.ensembles {
            EnsembleSpec::new(resolve_kind(*kind, 1), 2, 1, 0).validate()?;
        }
        for suite in &self.suites {
            if !self.p_grid.iter().any(|&p| suite.admits(p)) {
                return input(format!("p-grid has no value in the domain of suite {suite}"));
            }
        }
        Ok(())
    }

    /// Every cell in report order: suite, ensemble, p, n, d, trial.
    pub fn cells(&self) -> Vec<Cell> {
        let mut cells = Vec::new();
        for &suite in &self.suites {
            let sizes: &[usize] = if suite.is_pairwise() { &[2] } else { &self.n_values };
            for &kind in &self.ensembles {
                for &p in self.p_grid.iter().filter(|&&p| suite.admits(p)) {
                    for &n in sizes {
                        for &d in &self.dims {
                            for trial in 0..self.trials {
                                cells.push(Cell { suite, kind: resolve_kind(kind, d), p, n, d, trial });
                            }
                        }
                    }
                }
            }
        }
        cells
    }

    /// SHA-256 of the configuration without its output path.
    pub fn hash(&self) -> String {
        let canonical = Self { output: None, ..self.clone() };
        let text = serde_json::to_string(&canonical).expect("configuration serializes");
        Sha256::digest(text.as_bytes()).iter().map(|b| format!("{b:02x}")).collect()
    }
}

fn preset_kinds() -> Vec<EnsembleKind> {
    let mut kinds = EnsembleKind::preset(2);
    for kind in &mut kinds {
        if let EnsembleKind::LowRank { rank } = kind {
            *rank = 1;
        }
    }
    kinds
}

fn resolve_kind(kind: EnsembleKind, d: usize) -> EnsembleKind {
    match kind {
        EnsembleKind::LowRank { rank } => EnsembleKind::LowRank { rank: rank.min(d) },
        other => other,
    }
}

/// Applies the keys of a JSON object on top of `base`. Keys absent from the
/// object keep their value from `base`.
pub fn merge_config(base: &CampaignConfig, overrides: &str) -> Result<CampaignConfig> {
    let mut merged = serde_json::to_value(base)?;
    let serde_json::Value::Object(patch) = serde_json::from_str(overrides)? else {
        return input("configuration file must hold a JSON object");
    };
    let target = merged.as_object_mut().expect("configuration serializes to an object");
    for (key, value) in patch {
        target.insert(key, value);
    }
    Ok(serde_json::from_value(merged)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Cell {
    pub suite: Suite,
    pub kind: EnsembleKind,
    pub p: f64,
    pub n: usize,
    pub d: usize,
    pub trial: u64,
}

impl Cell {
    pub fn tuple(&self, seed: u64) -> Result<OperatorTuple> {
        generate_trial(&EnsembleSpec::new(self.kind, self.n, self.d, seed), self.trial)
    }
}

/// The reports one suite produces for one tuple.
pub fn evaluate_suite(suite: Suite, t: &OperatorTuple, p: f64, tol: &Tolerances) -> Result<Vec<InequalityReport>> {
    let pair = || {
        if t.n() != 2 {
            return input(format!("suite {suite} needs a pair, got {} operators", t.n()));
        }
        Ok((t.get(0), t.get(1)))
    };
    Ok(match suite {
        Suite::Clarkson => {
            let (a, b) = pair()?;
            clarkson_pair(a, b, p)?.to_vec()
        }
        Suite::Parallelogram => {
            let (a, b) = pair()?;
            vec![parallelogram(a, b)?]
        }
        Suite::Bcl => {
            let (a, b) = pair()?;
            vec![bcl(a, b, p)?]
        }
        Suite::BclDominatesClarkson => {
            let (a, b) = pair()?;
            vec![bcl_dominates_clarkson(a, b, p)?]
        }
        Suite::Mccarthy => {
            let (a, b) = pair()?;
            vec![mccarthy(a, b, p)?]
        }
        Suite::Hk => vec![hk_ntuple(t, p)?],
        Suite::Ak => vec![ak(t, p)?],
        Suite::Cm => vec![cm(t, p)?],
        Suite::Duality => {
            let r = ak_via_duality(t, p)?;
            let (n, d) = (t.n(), t.d());
            let mut rows = vec![r.report.clone(), InequalityReport::new(Tag::DualityChain, r.target, r.holder, p, n, d)];
            if r.target > 0.0 {
                rows.push(InequalityReport::equality(Tag::DualityNormalization, r.normalization, 1.0, r.p, n, d));
            }
            rows
        }
        Suite::Lemma22 => {
            let r = ak_from_witness(t, p)?;
            vec![r.pairing_bound, r.cancelled]
        }
        Suite::Interpolation => {
            let scan = scan_tuple(t, p, &default_x_grid(), &default_y_grid(), tol)?;
            scan_reports(&scan, p, t.n(), t.d())
        }
        Suite::Conjecture => {
            let inst = ConjectureInstance::new(t.clone(), p)?;
            vec![trace_report(&inst, &necessary_conditions(&inst)?)]
        }
    })
}

fn trace_report(inst: &ConjectureInstance, nec: &NecessaryReport) -> InequalityReport {
    let (lhs, rhs) = match inst.direction {
        Direction::Upper => (nec.trace_lhs, nec.trace_rhs),
        Direction::Reversed => (nec.trace_rhs, nec.trace_lhs),
    };
    InequalityReport::new(Tag::ConjectureTrace, lhs, rhs, inst.p, inst.tuple.n(), inst.tuple.d())
}

fn scan_tuple(t: &OperatorTuple, p: f64, x_grid: &[f64], y_grid: &[f64], tol: &Tolerances) -> Result<ScanResult> {
    let family = AnalyticFamily::new(t, &witness_set(t, p)?, p)?;
    scan_family(&family, x_grid, y_grid, tol.scan)
}

/// Boundary bound at the worst boundary sample, the three-lines bound at
/// `x = 1/p`, and the number of midpoint log-convexity violations.
fn scan_reports(scan: &ScanResult, p: f64, n: usize, d: usize) -> Vec<InequalityReport> {
    let worst = scan
        .samples
        .iter()
        .filter(|s| s.z.x == 0.5 || s.z.x == 1.0)
        .map(|s| InequalityReport::new(Tag::StripBoundary, s.abs_f, s.bound, p, n, d))
        .min_by(|a, b| a.margin.total_cmp(&b.margin));
    let mut rows: Vec<InequalityReport> = worst.into_iter().collect();
    rows.push(InequalityReport::new(Tag::ThreeLines, scan.f_at_inverse_p, scan.three_lines, p, n, d));
    rows.push(InequalityReport::new(Tag::LogConvexity, scan.convexity_violations as f64, 0.0, p, n, d));
    rows
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultRow {
    pub suite: Suite,
    pub tag: Tag,
    pub p: f64,
    pub n: usize,
    pub d: usize,
    pub kind: String,
    pub trial: u64,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
    pub satisfied: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Meta {
    pub seed: u64,
    pub config_hash: String,
    pub version: String,
}

impl Meta {
    fn new(config: &CampaignConfig) -> Self {
        Self { seed: config.seed, config_hash: config.hash(), version: env!("CARGO_PKG_VERSION").to_string() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteSummary {
    pub suite: Suite,
    pub rows: usize,
    pub worst_margin: f64,
    pub violations: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub suites: Vec<SuiteSummary>,
    /// Evaluated `(suite, ensemble, p, n, d, trial)` cells.
    pub cells: usize,
    pub violation_count: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub meta: Meta,
    pub results: Vec<ResultRow>,
    pub summary: Summary,
}

impl VerifyReport {
    pub fn suite(&self, suite: Suite) -> Option<&SuiteSummary> {
        self.summary.suites.iter().find(|s| s.suite == suite)
    }

    pub fn summary_lines(&self) -> Vec<String> {
        let mut lines: Vec<String> = self
            .summary
            .suites
            .iter()
            .map(|s| format!("{:<24} rows {:>6}  worst margin {:>+.3e}  violations {}", s.suite.name(), s.rows, s.worst_margin, s.violations))
            .collect();
        lines.push(format!("{} cells, {} violations", self.summary.cells, self.summary.violation_count));
        lines
    }
}

/// Exit status of a completed workflow.
pub trait Outcome {
    fn exit_code(&self) -> i32;
}

impl Outcome for VerifyReport {
    fn exit_code(&self) -> i32 {
        if self.summary.violation_count == 0 {
            EXIT_OK
        } else {
            EXIT_VIOLATION
        }
    }
}

/// [`EXIT_INVALID`] for errors, otherwise the outcome's own code.
pub fn exit_code<T: Outcome>(result: &Result<T>) -> i32 {
    match result {
        Ok(outcome) => outcome.exit_code(),
        Err(_) => EXIT_INVALID,
    }
}

pub fn run_verify(config: &CampaignConfig) -> Result<VerifyReport> {
    run_verify_with(config, evaluate_suite)
}

/// [`run_verify`] with a replaceable checker; the harness self-test feeds it
/// a deliberately broken one.
pub fn run_verify_with<F>(config: &CampaignConfig, checker: F) -> Result<VerifyReport>
where
    F: Fn(Suite, &OperatorTuple, f64, &Tolerances) -> Result<Vec<InequalityReport>> + Sync,
{
    config.validate()?;
    let tol = &config.tolerances;
    let per_cell: Vec<Vec<ResultRow>> = config
        .cells()
        .par_iter()
        .map(|cell| {
            let t = cell.tuple(config.seed)?;
            let label = cell.kind.label();
            Ok(checker(cell.suite, &t, cell.p, tol)?
                .into_iter()
                .map(|r| ResultRow {
                    suite: cell.suite,
                    tag: r.tag,
                    p: cell.p,
                    n: cell.n,
                    d: cell.d,
                    kind: label.clone(),
                    trial: cell.trial,
                    lhs: r.lhs,
                    rhs: r.rhs,
                    margin: r.margin,
                    satisfied: r.satisfied_at(tol.margin),
                })
                .collect())
        })
        .collect::<Result<_>>()?;
    let cells = per_cell.len();
    let results: Vec<ResultRow> = per_cell.into_iter().flatten().collect();

    let suites = config
        .suites
        .iter()
        .map(|&suite| {
            let rows = results.iter().filter(|r| r.suite == suite);
            SuiteSummary {
                suite,
                rows: rows.clone().count(),
                worst_margin: rows.clone().map(|r| r.margin).fold(f64::INFINITY, f64::min),
                violations: rows.filter(|r| !r.satisfied).count(),
            }
        })
        .collect();
    let violation_count = results.iter().filter(|r| !r.satisfied).count();
    let report = VerifyReport { meta: Meta::new(config), results, summary: Summary { suites, cells, violation_count } };
    if let Some(path) = &config.output {
        write_json(path, &report)?;
    }
    Ok(report)
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    std::fs::write(path, serde_json::to_string_pretty(value)?)?;
    Ok(())
}

#[derive(Debug, Clone, Serialize)]
pub struct WitnessDefect {
    /// `"sum"` or `"i-j"`.
    pub target: String,
    pub norm_p: f64,
    pub pairing_defect: f64,
    pub norm_defect: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct WitnessRun {
    pub p: f64,
    pub n: usize,
    pub d: usize,
    pub defects: Vec<WitnessDefect>,
    pub replay: WitnessReplay,
    pub ok: bool,
}

impl Outcome for WitnessRun {
    fn exit_code(&self) -> i32 {
        if self.ok {
            EXIT_OK
        } else {
            EXIT_VIOLATION
        }
    }
}

pub fn run_witness(path: &Path, p: f64, tol: &Tolerances) -> Result<WitnessRun> {
    witness_tuple(&read_tuple(path)?, p, tol)
}

/// Witness identities for every combination, the pairing bound and the
/// cancelled inequality next to its direct evaluation.
pub fn witness_tuple(t: &OperatorTuple, p: f64, tol: &Tolerances) -> Result<WitnessRun> {
    let replay = ak_from_witness(t, p)?;
    let witnesses = witness_set(t, p)?;
    let targets = std::iter::once(("sum".to_string(), t.sum()))
        .chain(t.pairs().zip(t.differences()).map(|((i, j), m)| (format!("{i}-{j}"), m)));
    let mut defects = Vec::new();
    for ((target, b), y) in targets.zip(witnesses.all()) {
        let norm_p = crate::schatten::norm(&b, p)?;
        let (pairing_defect, norm_defect) = if norm_p > 0.0 { witness_defects(&b, y, p)? } else { (0.0, 0.0) };
        defects.push(WitnessDefect { target, norm_p, pairing_defect, norm_defect });
    }
    let ok = defects.iter().all(|d| d.pairing_defect <= tol.rtol && d.norm_defect <= tol.rtol)
        && replay.pairing_bound.satisfied_at(tol.margin)
        && replay.cancelled.satisfied_at(tol.margin)
        && replay.disagreement() <= tol.rtol;
    Ok(WitnessRun { p, n: t.n(), d: t.d(), defects, replay, ok })
}

#[derive(Debug, Clone)]
pub struct InterpolationRun {
    pub scan: ScanResult,
    /// Columns `x,y,re_f,im_f,abs_f,bound`.
    pub csv: String,
    pub summary: String,
    pub ok: bool,
}

impl Outcome for InterpolationRun {
    fn exit_code(&self) -> i32 {
        if self.ok {
            EXIT_OK
        } else {
            EXIT_VIOLATION
        }
    }
}

pub fn run_interpolate(path: &Path, p: f64, x_grid: &[f64], y_grid: &[f64], tol: &Tolerances) -> Result<InterpolationRun> {
    interpolate_tuple(&read_tuple(path)?, p, x_grid, y_grid, tol)
}

pub fn interpolate_tuple(t: &OperatorTuple, p: f64, x_grid: &[f64], y_grid: &[f64], tol: &Tolerances) -> Result<InterpolationRun> {
    let scan = scan_tuple(t, p, x_grid, y_grid, tol)?;
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer.write_record(["x", "y", "re_f", "im_f", "abs_f", "bound"])?;
    for s in &scan.samples {
        writer.serialize((s.z.x, s.z.y, s.f_re, s.f_im, s.abs_f, s.bound))?;
    }
    let bytes = writer.into_inner().map_err(|e| Error::Io(e.into_error()))?;
    let csv = String::from_utf8(bytes).expect("csv output is utf-8");
    let scale = scan.three_lines.max(1.0);
    let ok = scan.boundary_ok(tol.atol * scale.max(scan.m1).max(scan.m2))
        && scan.interpolation_ok(tol.atol * scale)
        && scan.convexity_violations == 0;
    let summary = format!(
        "x=1/p={:.6} |f|={:.6e} three_lines={:.6e} M1={:.6e} M2={:.6e} boundary_excess={:.3e} convexity_violations={} ok={}",
        1.0 / p,
        scan.f_at_inverse_p,
        scan.three_lines,
        scan.m1,
        scan.m2,
        scan.worst_boundary_excess,
        scan.convexity_violations,
        ok
    );
    Ok(InterpolationRun { scan, csv, summary, ok })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConjectureRecord {
    pub kind: String,
    pub p: f64,
    pub n: usize,
    pub d: usize,
    pub trial: u64,
    pub trace_lhs: f64,
    pub trace_rhs: f64,
    pub trace_holds: bool,
    pub spectral_holds: bool,
    pub certificate: FeasibilityCertificate,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Unresolved {
    pub index: usize,
    pub residual: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConjectureSummary {
    pub instances: usize,
    pub feasible: usize,
    pub unresolved: usize,
    pub necessary_violations: usize,
    /// Failures of the trace condition; each one contradicts a theorem.
    pub trace_violations: usize,
    pub unresolved_instances: Vec<Unresolved>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConjectureReport {
    pub meta: Meta,
    pub records: Vec<ConjectureRecord>,
    pub summary: ConjectureSummary,
}

impl Outcome for ConjectureReport {
    fn exit_code(&self) -> i32 {
        if self.summary.trace_violations == 0 {
            EXIT_OK
        } else {
            EXIT_VIOLATION
        }
    }
}

impl ConjectureReport {
    pub fn summary_lines(&self) -> Vec<String> {
        let s = &self.summary;
        let mut lines = vec![format!(
            "{} instances: {} feasible, {} unresolved, {} necessary-condition violations ({} trace)",
            s.instances, s.feasible, s.unresolved, s.necessary_violations, s.trace_violations
        )];
        for u in &s.unresolved_instances {
            let r = &self.records[u.index];
            lines.push(format!("unresolved: {} p={} n={} d={} trial={} residual={:.3e}", r.kind, r.p, r.n, r.d, r.trial, u.residual));
        }
        lines
    }
}

/// Unitary searches over `ensembles × p_grid × n_values × dims × trials`.
/// The suite list is ignored. The search seed of instance `k` is `seed + k`.
pub fn run_conjecture(config: &CampaignConfig) -> Result<ConjectureReport> {
    let probe = CampaignConfig { suites: vec![Suite::Conjecture], ..config.clone() };
    probe.validate()?;
    let cells = probe.cells();
    let records: Vec<ConjectureRecord> = cells
        .par_iter()
        .enumerate()
        .map(|(k, cell)| {
            let inst = ConjectureInstance::new(cell.tuple(config.seed)?, cell.p)?;
            let nec = necessary_conditions(&inst)?;
            let certificate = unitary_search_with(&inst, config.budget, config.seed.wrapping_add(k as u64), &config.tolerances)?;
            Ok(ConjectureRecord {
                kind: cell.kind.label(),
                p: cell.p,
                n: cell.n,
                d: cell.d,
                trial: cell.trial,
                trace_lhs: nec.trace_lhs,
                trace_rhs: nec.trace_rhs,
                trace_holds: nec.trace_holds,
                spectral_holds: nec.spectral_holds,
                certificate,
            })
        })
        .collect::<Result<_>>()?;

    let count = |status: Status| records.iter().filter(|r| r.certificate.status == status).count();
    let unresolved_instances = records
        .iter()
        .enumerate()
        .filter(|(_, r)| r.certificate.status == Status::Unresolved)
        .map(|(index, r)| Unresolved { index, residual: r.certificate.residual })
        .collect();
    let summary = ConjectureSummary {
        instances: records.len(),
        feasible: count(Status::Feasible),
        unresolved: count(Status::Unresolved),
        necessary_violations: count(Status::NecessaryConditionViolated),
        trace_violations: records.iter().filter(|r| !r.trace_holds).count(),
        unresolved_instances,
    };
    let report = ConjectureReport { meta: Meta::new(config), records, summary };
    if let Some(path) = &config.output {
        write_json(path, &report)?;
    }
    Ok(report)
}
