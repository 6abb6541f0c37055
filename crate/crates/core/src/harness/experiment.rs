//! Experiment driver: generates problems, runs the verifier per approach and
//! writes `results.csv`, `timings.csv` and `manifest.json`.

use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::interval::{CMatrix, IMatrix};
use crate::moments::{Approach, ProblemSpec};
use crate::verifier::{max_entry_radius, verify, PairStatus, RunReport, VerifiedEigenpair, VerifyOptions};

use super::generators::{gen_pentadiag, gen_probe, gen_tridiag, Generated, RadiusRule, DEFAULT_DELTA};
use super::mm::load_matrix_market;
use super::reference::{contains_direction, BandPencil};

pub const SCHEMA_VERSION: u32 = 1;
/// Relative slack granted to reference eigenvectors in containment checks.
const VECTOR_TOL: f64 = 1e-10;

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Family {
    Tridiag { ell: u32 },
    Pentadiag { b100: f64 },
    File { a: PathBuf, b: Option<PathBuf>, lo: f64, hi: f64, m: usize, l: usize, mm: usize },
}

#[derive(Clone, Debug, Serialize)]
pub struct ExperimentConfig {
    pub problems: Vec<Family>,
    pub approaches: Vec<Approach>,
    pub want_vectors: bool,
    pub seed: u64,
    pub delta: f64,
    pub out: PathBuf,
    /// Run problems concurrently.
    pub parallel: bool,
}

impl ExperimentConfig {
    pub fn new(problems: Vec<Family>, approaches: Vec<Approach>, out: impl Into<PathBuf>) -> Self {
        ExperimentConfig {
            problems,
            approaches,
            want_vectors: false,
            seed: 0,
            delta: DEFAULT_DELTA,
            out: out.into(),
            parallel: false,
        }
    }
}

/// Overall result of a run, mapped to the process exit code.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    AllVerified,
    Partial,
    Failure,
}

impl Outcome {
    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::AllVerified => 0,
            Outcome::Partial => 2,
            Outcome::Failure => 4,
        }
    }
}

/// One eigenpair row of `results.csv`.
#[derive(Clone, Debug, Serialize)]
pub struct ResultRow {
    pub problem: String,
    pub n: usize,
    pub approach: String,
    pub n_used: Option<usize>,
    pub index: Option<usize>,
    pub status: String,
    pub lambda_inf: Option<String>,
    pub lambda_sup: Option<String>,
    pub lambda_rad: Option<f64>,
    pub vec_max_rad: Option<f64>,
    pub reference: Option<String>,
    pub contains_reference: Option<bool>,
    pub vector_contains_reference: Option<bool>,
    pub cluster: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
struct TimingRow {
    problem: String,
    approach: String,
    gap: f64,
    select: f64,
    nodes: f64,
    assemble: f64,
    reduced: f64,
    vectors: f64,
    total: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ProblemRecord {
    pub name: String,
    pub n: usize,
    pub lo: f64,
    pub hi: f64,
    pub m: usize,
    pub block_size: usize,
    pub num_moments: usize,
    pub radius_rule: Option<RadiusRule>,
    pub runs: Vec<RunRecord>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RunRecord {
    pub approach: Approach,
    pub error: Option<String>,
    pub report: Option<RunReport>,
}

#[derive(Clone, Debug, Serialize)]
struct Manifest<'a> {
    schema_version: u32,
    tool: &'static str,
    version: &'static str,
    config: &'a ExperimentConfig,
    outcome: Outcome,
    problems: &'a [ProblemRecord],
}

#[derive(Clone, Debug)]
pub struct ExperimentSummary {
    pub rows: Vec<ResultRow>,
    pub problems: Vec<ProblemRecord>,
    pub outcome: Outcome,
}

pub fn load_problem(family: &Family, seed: u64, delta: f64) -> Result<Generated> {
    let mut g = match family {
        Family::Tridiag { ell } => gen_tridiag(*ell, seed)?,
        Family::Pentadiag { b100 } => gen_pentadiag(*b100, seed)?,
        Family::File { a, b, lo, hi, m, l, mm } => {
            let am = load_matrix_market(a)?;
            let n = am.rows();
            if am.cols() != n {
                return Err(Error::MatrixMarket("A must be square".into()));
            }
            let bm = match b {
                Some(p) => load_matrix_market(p)?,
                None => CMatrix::identity(n),
            };
            if bm.rows() != n || bm.cols() != n {
                return Err(Error::MatrixMarket("B must be square of the size of A".into()));
            }
            let spec = ProblemSpec {
                a: IMatrix::from_point(&am),
                b: IMatrix::from_point(&bm),
                lo: *lo,
                hi: *hi,
                m: *m,
                block_size: *l,
                num_moments: *mm,
                v: gen_probe(n, *l, seed),
                delta,
                r_bound: n,
            };
            let name = a.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "file".into());
            Generated { spec, name, radius_rule: None }
        }
    };
    g.spec.delta = delta;
    Ok(g)
}

struct ProblemOutput {
    rows: Vec<ResultRow>,
    timings: Vec<TimingRow>,
    record: ProblemRecord,
}

fn fmt_interval(p: &VerifiedEigenpair) -> (Option<String>, Option<String>, Option<f64>) {
    if p.status.eigenvalue_verified() {
        (Some(format!("{}", p.lambda.inf())), Some(format!("{}", p.lambda.sup())), Some(p.lambda.rad()))
    } else {
        (None, None, None)
    }
}

fn run_problem(family: &Family, cfg: &ExperimentConfig) -> Result<ProblemOutput> {
    let g = load_problem(family, cfg.seed, cfg.delta)?;
    let spec = &g.spec;
    let n = spec.n();
    let reference = BandPencil::from_intervals(&spec.a, &spec.b).ok();
    let ref_vals = reference.as_ref().map(|p| p.eigenvalues_in(spec.lo, spec.hi));
    let mut rows = Vec::new();
    let mut timings = Vec::new();
    let mut runs = Vec::new();
    for &approach in &cfg.approaches {
        let opts = VerifyOptions { want_vectors: cfg.want_vectors, ..Default::default() };
        match verify(spec, approach, &opts) {
            Ok((pairs, report)) => {
                // reference values pair up with enclosures only when every
                // eigenvalue is enclosed, since order is by midpoint
                let all_enclosed = pairs.iter().all(|p| p.status.eigenvalue_verified());
                for p in &pairs {
                    let (lambda_inf, lambda_sup, lambda_rad) = fmt_interval(p);
                    let rv = ref_vals.as_ref().filter(|v| all_enclosed && v.len() == pairs.len()).map(|v| v[p.index]);
                    let contains = match (rv, p.status.eigenvalue_verified()) {
                        (Some(r), true) => Some(p.lambda.contains(r)),
                        _ => None,
                    };
                    let vec_contains = match (&p.x, rv, &reference) {
                        (Some(x), Some(r), Some(pencil)) => {
                            Some(pencil.eigenvector(r).map(|v| contains_direction(x, &v, VECTOR_TOL)).unwrap_or(false))
                        }
                        _ => None,
                    };
                    rows.push(ResultRow {
                        problem: g.name.clone(),
                        n,
                        approach: approach.name().into(),
                        n_used: Some(report.n_used),
                        index: Some(p.index),
                        status: p.status.to_string(),
                        lambda_inf,
                        lambda_sup,
                        lambda_rad,
                        vec_max_rad: p.x.as_ref().map(max_entry_radius),
                        reference: rv.map(|r| format!("{r}")),
                        contains_reference: contains,
                        vector_contains_reference: vec_contains,
                        cluster: p.cluster,
                    });
                }
                let t = &report.timings;
                timings.push(TimingRow {
                    problem: g.name.clone(),
                    approach: approach.name().into(),
                    gap: t.gap,
                    select: t.select,
                    nodes: t.nodes,
                    assemble: t.assemble,
                    reduced: t.reduced,
                    vectors: t.vectors,
                    total: t.total,
                });
                runs.push(RunRecord { approach, error: None, report: Some(report) });
            }
            Err(e) => {
                rows.push(ResultRow {
                    problem: g.name.clone(),
                    n,
                    approach: approach.name().into(),
                    n_used: None,
                    index: None,
                    status: format!("error:{e}"),
                    lambda_inf: None,
                    lambda_sup: None,
                    lambda_rad: None,
                    vec_max_rad: None,
                    reference: None,
                    contains_reference: None,
                    vector_contains_reference: None,
                    cluster: None,
                });
                runs.push(RunRecord { approach, error: Some(e.to_string()), report: None });
            }
        }
    }
    let record = ProblemRecord {
        name: g.name.clone(),
        n,
        lo: spec.lo,
        hi: spec.hi,
        m: spec.m,
        block_size: spec.block_size,
        num_moments: spec.num_moments,
        radius_rule: g.radius_rule,
        runs,
    };
    Ok(ProblemOutput { rows, timings, record })
}

fn outcome_of(rows: &[ResultRow]) -> Outcome {
    let good = |r: &ResultRow| {
        r.status == PairStatus::Verified.to_string()
            && r.contains_reference != Some(false)
            && r.vector_contains_reference != Some(false)
    };
    let partial = |r: &ResultRow| r.lambda_inf.is_some() && r.contains_reference != Some(false);
    if !rows.is_empty() && rows.iter().all(good) {
        Outcome::AllVerified
    } else if rows.iter().any(partial) {
        Outcome::Partial
    } else {
        Outcome::Failure
    }
}

fn write_csv<T: Serialize>(path: &Path, rows: &[T]) -> Result<()> {
    let mut w = csv::Writer::from_path(path).map_err(|e| Error::Io(e.into()))?;
    for r in rows {
        w.serialize(r).map_err(|e| Error::Io(e.into()))?;
    }
    w.flush()?;
    Ok(())
}

/// Runs every problem and approach of `cfg` and writes the report files into
/// `cfg.out`. Configuration errors (bad family parameters, unreadable files)
/// abort; verifier errors become rows with an `error:` status.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentSummary> {
    if cfg.approaches.is_empty() {
        return Err(Error::InvalidSpec("no approach selected".into()));
    }
    let outputs: Vec<Result<ProblemOutput>> = if cfg.parallel {
        cfg.problems.par_iter().map(|f| run_problem(f, cfg)).collect()
    } else {
        cfg.problems.iter().map(|f| run_problem(f, cfg)).collect()
    };
    let outputs: Vec<ProblemOutput> = outputs.into_iter().collect::<Result<_>>()?;
    let mut rows = Vec::new();
    let mut timings = Vec::new();
    let mut problems = Vec::new();
    for o in outputs {
        rows.extend(o.rows);
        timings.extend(o.timings);
        problems.push(o.record);
    }
    let outcome = outcome_of(&rows);
    fs::create_dir_all(&cfg.out)?;
    write_csv(&cfg.out.join("results.csv"), &rows)?;
    write_csv(&cfg.out.join("timings.csv"), &timings)?;
    let manifest = Manifest {
        schema_version: SCHEMA_VERSION,
        tool: env!("CARGO_PKG_NAME"),
        version: env!("CARGO_PKG_VERSION"),
        config: cfg,
        outcome,
        problems: &problems,
    };
    let json = serde_json::to_string_pretty(&manifest).map_err(|e| Error::Io(e.into()))?;
    fs::write(cfg.out.join("manifest.json"), json)?;
    Ok(ExperimentSummary { rows, problems, outcome })
}
