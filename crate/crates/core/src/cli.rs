//! Experiment harness behind the `duality` binary.
//!
//! Exit codes: 0 all relations satisfied, 1 violation, 2 input or
//! validation error, 3 solver failure.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::discrimination::{
    asymmetric_coherence, outcome_from_solution, random_config, symmetric_coherence, AsymmetricConfig,
    DiscriminationOutcome, SymmetricConfig,
};
use crate::duality::{self, entropic_lhs, DualityReport, Relation};
use crate::matlin::{ComplexScalar, HermitianMatrix, Matrix};
use crate::quantum::{
    coherence_rel_ent, mutual_information, path_density_matrix, von_neumann_entropy, InterferometerConfig,
    ProbabilityVector,
};
use crate::sdp::{self, BlockSdpSolution, SolveStatus, SolverOptions};

pub const SCHEMA_VERSION: u32 = 1;
pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_SOLVER: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid arguments: {0}")]
    Usage(String),
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: io::Error },
    #[error("{}: {source}", path.display())]
    Parse { path: PathBuf, source: serde_json::Error },
    #[error("invalid instance: {0}")]
    Validation(String),
    #[error("solver failure: {0}")]
    Solver(String),
    #[error("writing output: {0}")]
    Output(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Solver(_) => EXIT_SOLVER,
            _ => EXIT_INPUT,
        }
    }
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;

#[derive(Parser, Debug)]
#[command(name = "duality", version, about = "Coherence/path-distinguishability duality experiments")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// (N, c, D, C) curves for symmetric detector states.
    Figure1(CurveArgs),
    /// SDP points (P_e, P_f, C) for random configurations and the entropic bound surface.
    Figure2(Figure2Args),
    /// (N, p, D, C) curves for the asymmetric family.
    Figure3(CurveArgs),
    /// Solve one instance file and check every relation.
    Solve(SolveArgs),
    /// Random-ensemble scan of all relations.
    Scan(ScanArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Args, Debug, Clone)]
pub struct OutputArgs {
    /// Output file; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Args, Debug, Clone)]
pub struct SolverArgs {
    #[arg(long, default_value_t = 1e-7)]
    pub tol: f64,
    #[arg(long, default_value_t = 200)]
    pub max_iter: usize,
}

impl SolverArgs {
    fn options(&self) -> Result<SolverOptions> {
        if !(self.tol > 0.0 && self.tol < 1.0) {
            return Err(CliError::Usage(format!("--tol must lie in (0, 1), got {}", self.tol)));
        }
        if self.max_iter == 0 {
            return Err(CliError::Usage("--max-iter must be positive".into()));
        }
        Ok(SolverOptions {
            tolerance: self.tol,
            max_iterations: self.max_iter,
            verbose: false,
        })
    }
}

#[derive(Args, Debug, Clone)]
pub struct CurveArgs {
    #[arg(long, value_delimiter = ',', default_values_t = [2usize, 4, 16, 256])]
    pub n_paths: Vec<usize>,
    /// Grid points per curve.
    #[arg(long, default_value_t = 201)]
    pub grid: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug, Clone)]
pub struct Figure2Args {
    #[arg(long, value_delimiter = ',', default_values_t = [2usize, 3])]
    pub n_paths: Vec<usize>,
    #[arg(long, value_delimiter = ',', default_values_t = [0.01, 0.1, 0.2, 0.3, 0.4, 0.5])]
    pub error_budget: Vec<f64>,
    /// Random configurations per N.
    #[arg(long, default_value_t = 500)]
    pub ensemble: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// P_f grid points of the bound surface.
    #[arg(long, default_value_t = 51)]
    pub grid: usize,
    #[command(flatten)]
    pub solver: SolverArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug, Clone)]
pub struct SolveArgs {
    /// Instance JSON with `priors`, `gram_re`, `gram_im` and optional `error_budget`.
    pub instance: PathBuf,
    /// Overrides the instance budget.
    #[arg(long)]
    pub error_budget: Option<f64>,
    #[command(flatten)]
    pub solver: SolverArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug, Clone)]
pub struct ScanArgs {
    #[arg(long, value_delimiter = ',', default_values_t = [3usize])]
    pub n_paths: Vec<usize>,
    #[arg(long, value_delimiter = ',', default_values_t = [0.0, 0.01, 0.1, 0.3])]
    pub error_budget: Vec<f64>,
    #[arg(long, default_value_t = 500)]
    pub ensemble: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub solver: SolverArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

/// One table cell.
#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Int(i64),
    Real(f64),
    Text(String),
    Bool(bool),
    Empty,
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Real(v) => sig12(*v),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
            Cell::Empty => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Int(v) => json!(v),
            Cell::Real(v) => json!(v),
            Cell::Text(s) => json!(s),
            Cell::Bool(b) => json!(b),
            Cell::Empty => Value::Null,
        }
    }
}

/// `x` rounded to 12 significant digits, shortest decimal form.
pub fn sig12(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    let r: f64 = format!("{x:.11e}").parse().expect("formatted float parses");
    if r == 0.0 {
        "0".to_string()
    } else {
        r.to_string()
    }
}

/// Column-stable tabular output.
#[derive(Clone, Debug, PartialEq)]
pub struct Table {
    pub schema: &'static str,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    fn new(schema: &'static str, columns: &[&'static str]) -> Self {
        Self {
            schema,
            columns: columns.to_vec(),
            rows: Vec::new(),
        }
    }

    fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| *c == name)
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let err = |e: csv::Error| CliError::Output(e.to_string());
        w.write_record(&self.columns).map_err(err)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::csv)).map_err(err)?;
        }
        let bytes = w.into_inner().map_err(|e| CliError::Output(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "schema": self.schema,
            "version": SCHEMA_VERSION,
            "columns": self.columns,
            "rows": self.rows.iter().map(|r| r.iter().map(Cell::json).collect::<Vec<_>>()).collect::<Vec<_>>(),
        })
    }

    pub fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => pretty(&self.to_json()),
        }
    }
}

fn pretty<T: Serialize>(v: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(v).map_err(|e| CliError::Output(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

fn check_paths(n_paths: &[usize]) -> Result<()> {
    if n_paths.is_empty() {
        return Err(CliError::Usage("--n-paths must not be empty".into()));
    }
    if let Some(n) = n_paths.iter().find(|&&n| n < 2) {
        return Err(CliError::Usage(format!("--n-paths entries must be at least 2, got {n}")));
    }
    Ok(())
}

fn check_grid(grid: usize) -> Result<()> {
    if grid < 2 {
        return Err(CliError::Usage(format!("--grid must be at least 2, got {grid}")));
    }
    Ok(())
}

fn check_budgets(budgets: &[f64]) -> Result<()> {
    if budgets.is_empty() {
        return Err(CliError::Usage("--error-budget must not be empty".into()));
    }
    if let Some(b) = budgets.iter().find(|b| !(0.0..=1.0).contains(*b)) {
        return Err(CliError::Usage(format!("--error-budget values must lie in [0, 1], got {b}")));
    }
    Ok(())
}

fn check_ensemble(ensemble: usize) -> Result<()> {
    if ensemble == 0 {
        return Err(CliError::Usage("--ensemble must be at least 1".into()));
    }
    Ok(())
}

fn linspace(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    (0..points)
        .map(|i| {
            if i + 1 == points {
                hi
            } else {
                lo + (hi - lo) * i as f64 / (points - 1) as f64
            }
        })
        .collect()
}

/// Seed of configuration `index` in stream `stream`, independent of evaluation order.
pub fn derive_seed(master: u64, stream: u64, index: u64) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(master);
    rng.set_stream(stream);
    rng.set_word_pos(u128::from(index) * 2);
    rng.next_u64()
}

/// Symmetric curves: rows `(n_paths, c, d, coherence, slack)` with `D = 1 - c`.
pub fn figure1_table(n_paths: &[usize], grid: usize) -> Result<Table> {
    check_paths(n_paths)?;
    check_grid(grid)?;
    let mut t = Table::new("figure1", &["n_paths", "c", "d", "coherence", "slack"]);
    for &n in n_paths {
        let log_n = (n as f64).log2();
        for c in linspace(0.0, 1.0, grid) {
            let cfg = SymmetricConfig::new(n, c).expect("c in [0, 1]");
            let coherence = (symmetric_coherence(&cfg) / log_n).clamp(0.0, 1.0);
            let d = 1.0 - c;
            t.push(vec![
                Cell::Int(n as i64),
                Cell::Real(c),
                Cell::Real(d),
                Cell::Real(coherence),
                Cell::Real(1.0 - d - coherence),
            ]);
        }
    }
    Ok(t)
}

/// Asymmetric curves: rows `(n_paths, p, p_failure, d, coherence, slack)` for `p ∈ [1/N, 1]`.
pub fn figure3_table(n_paths: &[usize], grid: usize) -> Result<Table> {
    check_paths(n_paths)?;
    check_grid(grid)?;
    let mut t = Table::new("figure3", &["n_paths", "p", "p_failure", "d", "coherence", "slack"]);
    for &n in n_paths {
        let log_n = (n as f64).log2();
        for p in linspace(1.0 / n as f64, 1.0, grid) {
            let cfg = AsymmetricConfig::new(n, p).expect("p in [1/N, 1]");
            let pf = cfg.failure_probability();
            let coherence = (asymmetric_coherence(&cfg) / log_n).clamp(0.0, 1.0);
            let d = 1.0 - pf;
            t.push(vec![
                Cell::Int(n as i64),
                Cell::Real(p),
                Cell::Real(pf),
                Cell::Real(d),
                Cell::Real(coherence),
                Cell::Real(1.0 - d - coherence),
            ]);
        }
    }
    Ok(t)
}

/// Normalized entropic bound `[(1-P_f) H2(P_e/(1-P_f)) + P_e log(N-1) + P_f log N] / log N`.
pub fn bound_surface(n_paths: usize, p_error: f64, p_failure: f64) -> f64 {
    let rest = 1.0 - p_failure;
    let h = if rest > 0.0 {
        rest * duality::h2((p_error / rest).min(1.0))
    } else {
        0.0
    };
    let n = n_paths as f64;
    (h + p_error * (n - 1.0).log2() + p_failure * n.log2()) / n.log2()
}

/// Result of one SDP solve with its relation checks.
#[derive(Clone, Debug)]
pub struct SolvedPoint {
    pub status: SolveStatus,
    pub iterations: usize,
    pub outcome: Option<DiscriminationOutcome>,
    pub reports: Vec<DualityReport>,
    pub failure: Option<String>,
}

impl SolvedPoint {
    pub fn flagged(&self) -> bool {
        self.failure.is_some() || self.status != SolveStatus::Optimal
    }
}

/// Solves the SDP at one budget and checks all relations on the result.
pub fn solve_point(cfg: &InterferometerConfig, budget: f64, options: &SolverOptions) -> SolvedPoint {
    let failed = |status, iterations, msg: String| SolvedPoint {
        status,
        iterations,
        outcome: None,
        reports: Vec::new(),
        failure: Some(msg),
    };
    let sol = match sdp::build_problem(cfg, budget).and_then(|p| sdp::solve(&p, options)) {
        Ok(sol) => sol,
        Err(e) => return failed(SolveStatus::Infeasible, 0, e.to_string()),
    };
    let outcome = match outcome_from_solution(&sol) {
        Ok(o) => o,
        Err(e) => return failed(sol.status, sol.iterations, e.to_string()),
    };
    match duality::check_all(cfg, &outcome) {
        Ok(reports) => SolvedPoint {
            status: sol.status,
            iterations: sol.iterations,
            outcome: Some(outcome),
            reports,
            failure: (sol.status != SolveStatus::Optimal).then(|| format!("status {:?}", sol.status)),
        },
        Err(e) => failed(sol.status, sol.iterations, e.to_string()),
    }
}

fn status_name(status: SolveStatus) -> &'static str {
    match status {
        SolveStatus::Optimal => "optimal",
        SolveStatus::MaxIterations => "max-iterations",
        SolveStatus::Infeasible => "infeasible",
    }
}

/// Detector dimension of the random ensembles: one per path.
fn ensemble_config(n: usize, master: u64, index: usize) -> InterferometerConfig {
    random_config(n, n, derive_seed(master, n as u64, index as u64)).expect("n >= 2 and dim >= 1")
}

/// Figure-2 data plus the number of flagged and violating rows.
pub struct Figure2Data {
    pub table: Table,
    pub flagged: usize,
    pub violations: usize,
}

pub fn figure2_table(args: &Figure2Args) -> Result<Figure2Data> {
    check_paths(&args.n_paths)?;
    check_budgets(&args.error_budget)?;
    check_ensemble(args.ensemble)?;
    check_grid(args.grid)?;
    let options = args.solver.options()?;
    let mut t = Table::new(
        "figure2",
        &[
            "kind",
            "n_paths",
            "sample",
            "error_budget",
            "p_error",
            "p_failure",
            "coherence",
            "bound",
            "slack",
            "status",
            "flagged",
        ],
    );
    let (mut flagged, mut violations) = (0, 0);
    for &n in &args.n_paths {
        let log_n = (n as f64).log2();
        let samples: Vec<Vec<Vec<Cell>>> = (0..args.ensemble)
            .into_par_iter()
            .map(|i| {
                let cfg = ensemble_config(n, args.seed, i);
                let coherence = (coherence_rel_ent(&cfg).expect("valid config") / log_n).clamp(0.0, 1.0);
                args.error_budget
                    .iter()
                    .map(|&budget| {
                        let pt = solve_point(&cfg, budget, &options);
                        let (pe, pf, bound, slack) = match &pt.outcome {
                            Some(o) => {
                                let bound = entropic_lhs(&cfg, o) / log_n;
                                (Cell::Real(o.p_error), Cell::Real(o.p_failure), Cell::Real(bound), Cell::Real(bound - coherence))
                            }
                            None => (Cell::Empty, Cell::Empty, Cell::Empty, Cell::Empty),
                        };
                        vec![
                            Cell::Text("sample".into()),
                            Cell::Int(n as i64),
                            Cell::Int(i as i64),
                            Cell::Real(budget),
                            pe,
                            pf,
                            Cell::Real(coherence),
                            bound,
                            slack,
                            Cell::Text(status_name(pt.status).into()),
                            Cell::Bool(pt.flagged()),
                        ]
                    })
                    .collect()
            })
            .collect();
        for row in samples.into_iter().flatten() {
            if row[10] == Cell::Bool(true) {
                flagged += 1;
            } else if let Cell::Real(s) = row[8] {
                if s < -duality::SATISFIED_TOL {
                    violations += 1;
                }
            }
            t.push(row);
        }
        for &pe in &args.error_budget {
            for pf in linspace(0.0, 1.0 - pe, args.grid) {
                t.push(vec![
                    Cell::Text("surface".into()),
                    Cell::Int(n as i64),
                    Cell::Empty,
                    Cell::Real(pe),
                    Cell::Real(pe),
                    Cell::Real(pf),
                    Cell::Empty,
                    Cell::Real(bound_surface(n, pe, pf)),
                    Cell::Empty,
                    Cell::Empty,
                    Cell::Bool(false),
                ]);
            }
        }
    }
    Ok(Figure2Data {
        table: t,
        flagged,
        violations,
    })
}

/// Instance file contents.
#[derive(Clone, Debug, Deserialize, Serialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct Instance {
    pub priors: Vec<f64>,
    pub gram_re: Vec<Vec<f64>>,
    /// Zero when absent.
    #[serde(default)]
    pub gram_im: Option<Vec<Vec<f64>>>,
    #[serde(default)]
    pub error_budget: Option<f64>,
}

impl Instance {
    pub fn from_path(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        serde_json::from_str(&text).map_err(|source| CliError::Parse {
            path: path.to_path_buf(),
            source,
        })
    }

    pub fn to_config(&self) -> Result<InterferometerConfig> {
        let n = self.priors.len();
        let square = |m: &[Vec<f64>], name: &str| -> Result<()> {
            if m.len() != n || m.iter().any(|r| r.len() != n) {
                return Err(CliError::Validation(format!("{name} must be {n}x{n} to match priors")));
            }
            Ok(())
        };
        square(&self.gram_re, "gram_re")?;
        if let Some(im) = &self.gram_im {
            square(im, "gram_im")?;
        }
        let m = Matrix::from_fn(n, n, |i, j| {
            let im = self.gram_im.as_ref().map_or(0.0, |m| m[i][j]);
            ComplexScalar::new(self.gram_re[i][j], im)
        });
        let gram = HermitianMatrix::new(m).map_err(|e| CliError::Validation(format!("gram: {e}")))?;
        let priors = ProbabilityVector::new(self.priors.clone()).map_err(|e| CliError::Validation(format!("priors: {e}")))?;
        InterferometerConfig::new(priors, gram).map_err(|e| CliError::Validation(e.to_string()))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SolverSummary {
    pub status: SolveStatus,
    pub iterations: usize,
    pub primal_objective: f64,
    pub dual_objective: f64,
    pub gap: f64,
    pub primal_infeasibility: f64,
    pub dual_infeasibility: f64,
    pub support_rank: usize,
}

impl From<&BlockSdpSolution> for SolverSummary {
    fn from(s: &BlockSdpSolution) -> Self {
        Self {
            status: s.status,
            iterations: s.iterations,
            primal_objective: s.objective,
            dual_objective: s.dual_objective,
            gap: s.gap(),
            primal_infeasibility: s.primal_infeasibility,
            dual_infeasibility: s.dual_infeasibility,
            support_rank: s.support_rank,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Entropies {
    /// `H({p_x})`.
    pub prior_entropy: f64,
    /// `S(ρ_p) = S(ρ_d)`.
    pub state_entropy: f64,
    pub coherence_rel_ent: f64,
    pub coherence: f64,
    /// `I(X:Y)` of the optimal measurement.
    pub mutual_information: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct SolveReport {
    pub schema: &'static str,
    pub version: u32,
    pub n_paths: usize,
    pub error_budget: f64,
    pub outcome: DiscriminationOutcome,
    pub solver: SolverSummary,
    pub entropies: Entropies,
    pub reports: Vec<DualityReport>,
    pub all_satisfied: bool,
}

impl SolveReport {
    pub fn exit_code(&self) -> i32 {
        if self.solver.status != SolveStatus::Optimal {
            EXIT_SOLVER
        } else if self.all_satisfied {
            EXIT_OK
        } else {
            EXIT_VIOLATION
        }
    }

    pub fn table(&self) -> Table {
        let mut t = Table::new(
            "solve",
            &["relation", "coherence", "distinguishability", "bound_lhs", "bound_rhs", "slack", "satisfied"],
        );
        for r in &self.reports {
            t.push(vec![
                Cell::Text(r.relation.name().into()),
                Cell::Real(r.coherence_c),
                Cell::Real(r.distinguishability_d),
                Cell::Real(r.bound_lhs),
                Cell::Real(r.bound_rhs),
                Cell::Real(r.slack),
                Cell::Bool(r.satisfied),
            ]);
        }
        t
    }
}

pub fn solve_instance(cfg: &InterferometerConfig, budget: f64, options: &SolverOptions) -> Result<SolveReport> {
    if !(0.0..=1.0).contains(&budget) {
        return Err(CliError::Validation(format!("error_budget must lie in [0, 1], got {budget}")));
    }
    let problem = sdp::build_problem(cfg, budget).map_err(|e| CliError::Validation(e.to_string()))?;
    let sol = sdp::solve(&problem, options).map_err(|e| CliError::Solver(e.to_string()))?;
    let outcome = outcome_from_solution(&sol).map_err(|e| CliError::Solver(e.to_string()))?;
    let reports = duality::check_all(cfg, &outcome).map_err(|e| CliError::Solver(e.to_string()))?;
    let c_rel = coherence_rel_ent(cfg).map_err(|e| CliError::Validation(e.to_string()))?;
    let state_entropy =
        von_neumann_entropy(&path_density_matrix(cfg)).map_err(|e| CliError::Validation(e.to_string()))?;
    let info = sol
        .channel_statistics()
        .map(|s| mutual_information(&s))
        .map_err(|e| CliError::Solver(e.to_string()))?;
    let all_satisfied = reports.iter().all(|r| r.satisfied);
    Ok(SolveReport {
        schema: "solve",
        version: SCHEMA_VERSION,
        n_paths: cfg.n_paths(),
        error_budget: budget,
        outcome,
        solver: SolverSummary::from(&sol),
        entropies: Entropies {
            prior_entropy: cfg.priors().entropy(),
            state_entropy,
            coherence_rel_ent: c_rel,
            coherence: (c_rel / (cfg.n_paths() as f64).log2()).clamp(0.0, 1.0),
            mutual_information: info,
        },
        reports,
        all_satisfied,
    })
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct RelationSummary {
    pub relation: Relation,
    pub checks: usize,
    pub violations: usize,
    /// `None` when the relation was never evaluated.
    pub min_slack: Option<f64>,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct IterationStats {
    pub min: usize,
    pub mean: f64,
    pub max: usize,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct ScanSummary {
    pub schema: &'static str,
    pub version: u32,
    pub n_paths: Vec<usize>,
    pub error_budgets: Vec<f64>,
    pub ensemble: usize,
    pub seed: u64,
    pub solves: usize,
    pub solver_failures: usize,
    pub violations: usize,
    pub relations: Vec<RelationSummary>,
    pub iterations: Option<IterationStats>,
}

impl ScanSummary {
    pub fn exit_code(&self) -> i32 {
        if self.violations > 0 {
            EXIT_VIOLATION
        } else if self.solver_failures > 0 {
            EXIT_SOLVER
        } else {
            EXIT_OK
        }
    }

    pub fn table(&self) -> Table {
        let mut t = Table::new("scan", &["relation", "checks", "violations", "min_slack"]);
        for r in &self.relations {
            t.push(vec![
                Cell::Text(r.relation.name().into()),
                Cell::Int(r.checks as i64),
                Cell::Int(r.violations as i64),
                r.min_slack.map_or(Cell::Empty, Cell::Real),
            ]);
        }
        t
    }
}

pub fn scan(
    n_paths: &[usize],
    budgets: &[f64],
    ensemble: usize,
    seed: u64,
    options: &SolverOptions,
) -> Result<ScanSummary> {
    check_paths(n_paths)?;
    check_budgets(budgets)?;
    check_ensemble(ensemble)?;
    let jobs: Vec<(usize, usize)> = n_paths.iter().flat_map(|&n| (0..ensemble).map(move |i| (n, i))).collect();
    let points: Vec<SolvedPoint> = jobs
        .par_iter()
        .flat_map_iter(|&(n, i)| {
            let cfg = ensemble_config(n, seed, i);
            budgets
                .iter()
                .map(|&b| solve_point(&cfg, b, options))
                .collect::<Vec<_>>()
        })
        .collect();

    let mut relations: Vec<RelationSummary> = Relation::ALL
        .iter()
        .map(|&relation| RelationSummary {
            relation,
            checks: 0,
            violations: 0,
            min_slack: None,
        })
        .collect();
    let mut failures = 0;
    let mut iters = Vec::with_capacity(points.len());
    for pt in &points {
        iters.push(pt.iterations);
        if pt.flagged() {
            failures += 1;
            log::warn!("solver failure: {}", pt.failure.as_deref().unwrap_or("unknown"));
            continue;
        }
        for r in &pt.reports {
            let s = relations.iter_mut().find(|s| s.relation == r.relation).expect("all relations listed");
            s.checks += 1;
            if !r.satisfied {
                s.violations += 1;
            }
            s.min_slack = Some(s.min_slack.map_or(r.slack, |m: f64| m.min(r.slack)));
        }
    }
    let iterations = (!iters.is_empty()).then(|| IterationStats {
        min: *iters.iter().min().expect("non-empty"),
        mean: iters.iter().sum::<usize>() as f64 / iters.len() as f64,
        max: *iters.iter().max().expect("non-empty"),
    });
    Ok(ScanSummary {
        schema: "scan",
        version: SCHEMA_VERSION,
        n_paths: n_paths.to_vec(),
        error_budgets: budgets.to_vec(),
        ensemble,
        seed,
        solves: points.len(),
        solver_failures: failures,
        violations: relations.iter().map(|r| r.violations).sum(),
        relations,
        iterations,
    })
}

fn emit(output: &OutputArgs, text: &str) -> Result<()> {
    match &output.out {
        Some(path) => fs::write(path, text).map_err(|source| CliError::Io {
            path: path.clone(),
            source,
        }),
        None => io::stdout()
            .lock()
            .write_all(text.as_bytes())
            .map_err(|e| CliError::Output(e.to_string())),
    }
}

fn curve_exit(t: &Table) -> i32 {
    let col = t.column("slack").expect("curve tables carry slack");
    let violated = t.rows.iter().any(|r| matches!(r[col], Cell::Real(s) if s < -duality::SATISFIED_TOL));
    if violated {
        EXIT_VIOLATION
    } else {
        EXIT_OK
    }
}

/// Runs one command and returns its exit code.
pub fn run(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Figure1(a) => {
            let t = figure1_table(&a.n_paths, a.grid)?;
            emit(&a.output, &t.render(a.output.format.unwrap_or(Format::Csv))?)?;
            Ok(curve_exit(&t))
        }
        Command::Figure3(a) => {
            let t = figure3_table(&a.n_paths, a.grid)?;
            emit(&a.output, &t.render(a.output.format.unwrap_or(Format::Csv))?)?;
            Ok(curve_exit(&t))
        }
        Command::Figure2(a) => {
            let data = figure2_table(&a)?;
            emit(&a.output, &data.table.render(a.output.format.unwrap_or(Format::Csv))?)?;
            if data.flagged > 0 {
                log::warn!("{} rows flagged for solver non-convergence", data.flagged);
            }
            Ok(if data.violations > 0 {
                EXIT_VIOLATION
            } else if data.flagged > 0 {
                EXIT_SOLVER
            } else {
                EXIT_OK
            })
        }
        Command::Solve(a) => {
            let options = a.solver.options()?;
            let instance = Instance::from_path(&a.instance)?;
            let cfg = instance.to_config()?;
            let budget = a.error_budget.or(instance.error_budget).unwrap_or(0.0);
            let report = solve_instance(&cfg, budget, &options)?;
            let text = match a.output.format.unwrap_or(Format::Json) {
                Format::Json => pretty(&report)?,
                Format::Csv => report.table().to_csv()?,
            };
            emit(&a.output, &text)?;
            Ok(report.exit_code())
        }
        Command::Scan(a) => {
            let options = a.solver.options()?;
            let summary = scan(&a.n_paths, &a.error_budget, a.ensemble, a.seed, &options)?;
            let text = match a.output.format.unwrap_or(Format::Json) {
                Format::Json => pretty(&summary)?,
                Format::Csv => summary.table().to_csv()?,
            };
            emit(&a.output, &text)?;
            Ok(summary.exit_code())
        }
    }
}

/// Parses `args`, runs, reports errors on stderr and returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sig12_rounding() {
        assert_eq!(sig12(0.1), "0.1");
        assert_eq!(sig12(1.0), "1");
        assert_eq!(sig12(-0.0), "0");
        assert_eq!(sig12(1.0 / 3.0), "0.333333333333");
        assert_eq!(sig12(2.0 / 3.0 * 1e-9), "0.000000000666666666667");
        assert_eq!(sig12(123456789.123456789), "123456789.123");
    }

    #[test]
    fn figure1_endpoints() {
        let t = figure1_table(&[2], 201).unwrap();
        assert_eq!(t.rows.len(), 201);
        assert_eq!(t.rows[0][2..4], [Cell::Real(1.0), Cell::Real(0.0)]);
        assert_eq!(t.rows[200][2], Cell::Real(0.0));
        assert!(matches!(t.rows[200][3], Cell::Real(c) if (c - 1.0).abs() < 1e-12));
        assert_eq!(curve_exit(&t), EXIT_OK);
    }

    #[test]
    fn figure3_endpoints() {
        let t = figure3_table(&[4], 11).unwrap();
        let first = &t.rows[0];
        let last = &t.rows[10];
        assert!(matches!(first[3], Cell::Real(d) if d.abs() < 1e-12));
        assert!(matches!(first[4], Cell::Real(c) if (c - 1.0).abs() < 1e-9));
        assert_eq!(last[3], Cell::Real(1.0));
        assert_eq!(last[4], Cell::Real(0.0));
    }

    #[test]
    fn argument_validation() {
        assert!(figure1_table(&[1], 10).is_err());
        assert!(figure1_table(&[2], 1).is_err());
        assert!(scan(&[3], &[1.5], 1, 0, &SolverOptions::default()).is_err());
        assert!(scan(&[3], &[0.0], 0, 0, &SolverOptions::default()).is_err());
    }

    #[test]
    fn derived_seeds_differ_and_repeat() {
        assert_eq!(derive_seed(7, 3, 11), derive_seed(7, 3, 11));
        assert_ne!(derive_seed(7, 3, 11), derive_seed(7, 3, 12));
        assert_ne!(derive_seed(7, 3, 11), derive_seed(7, 4, 11));
        assert_ne!(derive_seed(7, 3, 11), derive_seed(8, 3, 11));
    }

    #[test]
    fn instance_validation() {
        let ok = Instance {
            priors: vec![0.5, 0.5],
            gram_re: vec![vec![1.0, 0.3], vec![0.3, 1.0]],
            gram_im: None,
            error_budget: None,
        };
        assert!(ok.to_config().is_ok());
        let mut bad = ok.clone();
        bad.gram_re = vec![vec![1.0, 1.001], vec![1.001, 1.0]];
        assert!(matches!(bad.to_config(), Err(CliError::Validation(_))));
        let mut shape = ok.clone();
        shape.gram_re.pop();
        assert!(matches!(shape.to_config(), Err(CliError::Validation(_))));
        let err = serde_json::from_str::<Instance>(r#"{"priors": [0.5, 0.5],}"#).unwrap_err();
        assert!(err.to_string().contains("line 1"));
    }

    #[test]
    fn identity_instance_is_fully_distinguishable() {
        let cfg =
            InterferometerConfig::new(ProbabilityVector::uniform(3), HermitianMatrix::identity(3)).unwrap();
        let r = solve_instance(&cfg, 0.0, &SolverOptions::default()).unwrap();
        assert!((r.outcome.p_success - 1.0).abs() < 1e-7);
        assert!(r.entropies.coherence.abs() < 1e-12);
        assert!(r.all_satisfied);
        assert_eq!(r.exit_code(), EXIT_OK);
    }

    #[test]
    fn small_scan_is_reproducible() {
        let opts = SolverOptions::default();
        let a = scan(&[2, 3], &[0.0, 0.1], 4, 9, &opts).unwrap();
        let b = scan(&[2, 3], &[0.0, 0.1], 4, 9, &opts).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.solves, 16);
        assert_eq!(a.violations, 0);
        assert_eq!(a.exit_code(), EXIT_OK);
    }
}
