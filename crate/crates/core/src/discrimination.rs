//! Discrimination strategies for the which-way detector states.
//!
//! Closed forms cover two families: symmetric states (uniform priors, equal
//! pairwise overlap `c`) and the asymmetric family where paths `1..N-1`
//! share one detector state and path `N` carries weight `p`. Everything else
//! goes through the SDP in [`crate::sdp`].

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp1, StandardNormal};
use serde::Serialize;
use thiserror::Error;

use crate::matlin::{min_eigenvalue, ComplexScalar, HermitianMatrix, LinalgError, Matrix, RANK_CUTOFF};
use crate::quantum::{shannon_entropy, InterferometerConfig, ProbabilityVector, QuantumError};
use crate::sdp::{self, SdpError, SolveStatus, SolverOptions};

/// Simplex tolerance on `P_s + P_e + P_f`.
pub const SIMPLEX_TOL: f64 = 1e-8;
const PRIOR_UNIFORM_TOL: f64 = 1e-10;

#[derive(Debug, Error)]
pub enum DiscriminationError {
    #[error("need at least 2 paths, got {0}")]
    TooFewPaths(usize),
    #[error("overlap {overlap} outside [{min}, {max}] for {n_paths} paths")]
    InvalidOverlap { n_paths: usize, overlap: f64, min: f64, max: f64 },
    #[error("asymmetric weight {p} outside [1/{n_paths}, 1]")]
    InvalidWeight { n_paths: usize, p: f64 },
    #[error("the minimum-eigenvalue rule needs uniform priors")]
    NonUniformPriors,
    #[error("detector states are linearly dependent (min Gram eigenvalue {0:e})")]
    RankDeficient(f64),
    #[error("probabilities ({p_success}, {p_error}, {p_failure}) do not form a distribution")]
    NotADistribution { p_success: f64, p_error: f64, p_failure: f64 },
    #[error("error budget {0} outside [0, 1]")]
    InvalidBudget(f64),
    #[error("detector dimension must be at least 1")]
    ZeroDimension,
    #[error("SDP did not reach optimality (status {0:?})")]
    SolverFailed(SolveStatus),
    #[error(transparent)]
    Sdp(#[from] SdpError),
    #[error(transparent)]
    Quantum(#[from] QuantumError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

pub type Result<T, E = DiscriminationError> = std::result::Result<T, E>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    AnalyticSymmetric,
    AnalyticAsymmetric,
    LambdaMin,
    Sdp,
}

/// Success, error and failure probabilities of one strategy.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DiscriminationOutcome {
    pub p_success: f64,
    pub p_error: f64,
    pub p_failure: f64,
    pub method: Method,
    /// The error budget exceeded the minimum-error probability, so it was not used up.
    pub budget_exceeded: bool,
}

impl DiscriminationOutcome {
    pub fn new(p_success: f64, p_error: f64, p_failure: f64, method: Method) -> Result<Self> {
        let bad = || DiscriminationError::NotADistribution {
            p_success,
            p_error,
            p_failure,
        };
        let in_unit = |v: f64| v.is_finite() && (-SIMPLEX_TOL..=1.0 + SIMPLEX_TOL).contains(&v);
        if !(in_unit(p_success) && in_unit(p_error) && in_unit(p_failure)) {
            return Err(bad());
        }
        if (p_success + p_error + p_failure - 1.0).abs() > SIMPLEX_TOL {
            return Err(bad());
        }
        Ok(Self {
            p_success: p_success.clamp(0.0, 1.0),
            p_error: p_error.clamp(0.0, 1.0),
            p_failure: p_failure.clamp(0.0, 1.0),
            method,
            budget_exceeded: false,
        })
    }

    /// Distinguishability `D = P_s`.
    pub fn distinguishability(&self) -> f64 {
        self.p_success
    }
}

/// `N` equiprobable detector states with common real overlap `c`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SymmetricConfig {
    n_paths: usize,
    overlap: f64,
}

impl SymmetricConfig {
    pub fn new(n_paths: usize, overlap: f64) -> Result<Self> {
        if n_paths < 2 {
            return Err(DiscriminationError::TooFewPaths(n_paths));
        }
        let min = -1.0 / (n_paths as f64 - 1.0);
        if !overlap.is_finite() || overlap < min - 1e-12 || overlap > 1.0 + 1e-12 {
            return Err(DiscriminationError::InvalidOverlap {
                n_paths,
                overlap,
                min,
                max: 1.0,
            });
        }
        Ok(Self {
            n_paths,
            overlap: overlap.clamp(min, 1.0),
        })
    }

    pub fn n_paths(&self) -> usize {
        self.n_paths
    }

    pub fn overlap(&self) -> f64 {
        self.overlap
    }

    pub fn gram(&self) -> HermitianMatrix {
        let c = self.overlap;
        HermitianMatrix::symmetrized(&Matrix::from_fn(self.n_paths, self.n_paths, |i, j| {
            ComplexScalar::new(if i == j { 1.0 } else { c }, 0.0)
        }))
    }

    pub fn to_config(&self) -> InterferometerConfig {
        InterferometerConfig::new(ProbabilityVector::uniform(self.n_paths), self.gram())
            .expect("overlap range guarantees a valid configuration")
    }

    /// Minimum-error probability when no failure outcome is allowed.
    pub fn min_error_probability(&self) -> f64 {
        let n = self.n_paths as f64;
        let c = self.overlap;
        let top = ((1.0 + (n - 1.0) * c) / n).max(0.0).sqrt();
        let rest = ((1.0 - c) / n).max(0.0).sqrt();
        (1.0 - (top + (n - 1.0) * rest).powi(2) / n).clamp(0.0, 1.0)
    }
}

/// Paths `1..N-1` share one detector state; path `N` has prior `p`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AsymmetricConfig {
    n_paths: usize,
    p: f64,
}

impl AsymmetricConfig {
    pub fn new(n_paths: usize, p: f64) -> Result<Self> {
        if n_paths < 2 {
            return Err(DiscriminationError::TooFewPaths(n_paths));
        }
        let lo = 1.0 / n_paths as f64;
        if !p.is_finite() || p < lo - 1e-12 || p > 1.0 + 1e-12 {
            return Err(DiscriminationError::InvalidWeight { n_paths, p });
        }
        Ok(Self {
            n_paths,
            p: p.clamp(lo, 1.0),
        })
    }

    pub fn n_paths(&self) -> usize {
        self.n_paths
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    /// Prior of each of the indistinguishable paths.
    pub fn q(&self) -> f64 {
        (1.0 - self.p) / (self.n_paths as f64 - 1.0)
    }

    pub fn priors(&self) -> ProbabilityVector {
        let mut v = vec![self.q(); self.n_paths - 1];
        v.push(self.p);
        let sum: f64 = v.iter().sum();
        ProbabilityVector::new(v.into_iter().map(|x| x / sum).collect()).expect("valid by construction")
    }

    /// `<η_j|η_N> = sqrt((1-p) / (p (N-1)))`, all other overlaps 1.
    pub fn gram(&self) -> HermitianMatrix {
        let n = self.n_paths;
        let s = (self.q() / self.p).sqrt().min(1.0);
        HermitianMatrix::symmetrized(&Matrix::from_fn(n, n, |i, j| {
            let v = if i == j {
                1.0
            } else if i == n - 1 || j == n - 1 {
                s
            } else {
                1.0
            };
            ComplexScalar::new(v, 0.0)
        }))
    }

    pub fn to_config(&self) -> InterferometerConfig {
        InterferometerConfig::new(self.priors(), self.gram()).expect("valid by construction")
    }

    pub fn failure_probability(&self) -> f64 {
        let n = self.n_paths as f64;
        (n * (1.0 - self.p) / (n - 1.0)).clamp(0.0, 1.0)
    }
}

fn xlog2x(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        x * x.log2()
    }
}

/// Zero-error failure probability `1 - λ_min(G)`.
///
/// Exact for symmetric states. For general states with uniform priors it is
/// the failure rate of the feasible strategy `z_j ∝ |j><j|` and therefore an
/// upper bound on the optimum.
pub fn usd_failure_lambda_min(cfg: &InterferometerConfig) -> Result<DiscriminationOutcome> {
    if !cfg.priors().is_uniform(PRIOR_UNIFORM_TOL) {
        return Err(DiscriminationError::NonUniformPriors);
    }
    let lmin = min_eigenvalue(cfg.gram())?;
    if lmin <= RANK_CUTOFF {
        return Err(DiscriminationError::RankDeficient(lmin));
    }
    let lmin = lmin.min(1.0);
    DiscriminationOutcome::new(lmin, 0.0, 1.0 - lmin, Method::LambdaMin)
}

/// Optimal error-margin measurement for symmetric states with `c ∈ [0, 1]`.
///
/// `P_f = c - 2 sqrt((1-c) P_e / (N-1)) - N P_e / (N-1)` for
/// `P_e ≤ P_e^min`; above that the minimum-error measurement is optimal,
/// `P_f = 0` and the outcome is flagged with `budget_exceeded`.
pub fn symmetric_error_margin(cfg: &SymmetricConfig, error_budget: f64) -> Result<DiscriminationOutcome> {
    if !(0.0..=1.0).contains(&error_budget) {
        return Err(DiscriminationError::InvalidBudget(error_budget));
    }
    let c = cfg.overlap;
    if c < 0.0 {
        return Err(DiscriminationError::InvalidOverlap {
            n_paths: cfg.n_paths,
            overlap: c,
            min: 0.0,
            max: 1.0,
        });
    }
    let n = cfg.n_paths as f64;
    let pe_min = cfg.min_error_probability();
    if error_budget > pe_min {
        let mut out = DiscriminationOutcome::new(1.0 - pe_min, pe_min, 0.0, Method::AnalyticSymmetric)?;
        out.budget_exceeded = true;
        return Ok(out);
    }
    let pf = (c - 2.0 * ((1.0 - c) * error_budget / (n - 1.0)).sqrt() - n * error_budget / (n - 1.0)).clamp(0.0, 1.0);
    DiscriminationOutcome::new(1.0 - pf - error_budget, error_budget, pf, Method::AnalyticSymmetric)
}

/// Optimal zero-error measurement `{|φ⊥><φ⊥|, |φ><φ|}` for the asymmetric family.
pub fn asymmetric_usd(cfg: &AsymmetricConfig) -> Result<DiscriminationOutcome> {
    let pf = cfg.failure_probability();
    DiscriminationOutcome::new(1.0 - pf, 0.0, pf, Method::AnalyticAsymmetric)
}

/// Eigenvalues `λ±` of `ρ_p` for the asymmetric family, in terms of its failure probability.
pub fn asymmetric_eigenvalues(cfg: &AsymmetricConfig) -> (f64, f64) {
    let n = cfg.n_paths as f64;
    let pf = cfg.failure_probability();
    let disc = (1.0 - 4.0 * (n - 1.0) / n * pf * (1.0 - pf)).max(0.0);
    let plus = (1.0 + disc.sqrt()) / 2.0;
    (plus, 1.0 - plus)
}

/// Relative entropy of coherence (bits) for the asymmetric family.
pub fn asymmetric_coherence(cfg: &AsymmetricConfig) -> f64 {
    let (plus, minus) = asymmetric_eigenvalues(cfg);
    let p = cfg.p;
    let n = cfg.n_paths as f64;
    let h_priors = -xlog2x(p) - (1.0 - p) * if p < 1.0 { ((1.0 - p) / (n - 1.0)).log2() } else { 0.0 };
    let h_rho = shannon_entropy(&[plus, minus]).expect("non-negative eigenvalues");
    (h_priors - h_rho).clamp(0.0, n.log2())
}

/// Relative entropy of coherence (bits) for symmetric states.
pub fn symmetric_coherence(cfg: &SymmetricConfig) -> f64 {
    let n = cfg.n_paths as f64;
    let c = cfg.overlap;
    let top = 1.0 + (n - 1.0) * c;
    ((n - 1.0) / n * xlog2x(1.0 - c) + xlog2x(top) / n).clamp(0.0, n.log2())
}

/// Random configuration: complex Gaussian detector kets in `detector_dim`
/// dimensions and flat-Dirichlet priors, reproducible from `seed`.
pub fn random_config(n_paths: usize, detector_dim: usize, seed: u64) -> Result<InterferometerConfig> {
    if n_paths < 2 {
        return Err(DiscriminationError::TooFewPaths(n_paths));
    }
    if detector_dim == 0 {
        return Err(DiscriminationError::ZeroDimension);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let states: Vec<Vec<ComplexScalar>> = (0..n_paths)
        .map(|_| {
            (0..detector_dim)
                .map(|_| ComplexScalar::new(StandardNormal.sample(&mut rng), StandardNormal.sample(&mut rng)))
                .collect()
        })
        .collect();
    let weights: Vec<f64> = (0..n_paths).map(|_| Exp1.sample(&mut rng)).collect();
    let total: f64 = weights.iter().sum();
    let priors = ProbabilityVector::new(weights.iter().map(|w| w / total).collect())?;
    Ok(InterferometerConfig::from_states(priors, &states)?)
}

/// Optimal strategy for the given error budget, solved by the SDP.
pub fn sdp_outcome(cfg: &InterferometerConfig, error_budget: f64, options: &SolverOptions) -> Result<DiscriminationOutcome> {
    let problem = sdp::build_problem(cfg, error_budget)?;
    let sol = sdp::solve(&problem, options)?;
    if sol.status != SolveStatus::Optimal {
        return Err(DiscriminationError::SolverFailed(sol.status));
    }
    outcome_from_solution(&sol)
}

pub fn outcome_from_solution(sol: &sdp::BlockSdpSolution) -> Result<DiscriminationOutcome> {
    let pf = sol.objective;
    let pe = sol.error_used.min(1.0 - pf).max(0.0);
    DiscriminationOutcome::new((1.0 - pf - pe).max(0.0), pe, pf, Method::Sdp)
}

/// Recognizes a symmetric family member (uniform priors, equal real overlap).
pub fn as_symmetric(cfg: &InterferometerConfig) -> Option<SymmetricConfig> {
    if !cfg.priors().is_uniform(PRIOR_UNIFORM_TOL) {
        return None;
    }
    let g = cfg.gram();
    let n = g.dim();
    let c = g[(0, 1)];
    for i in 0..n {
        for j in 0..n {
            if i != j && (g[(i, j)] - c).norm() > 1e-12 {
                return None;
            }
        }
    }
    if c.im.abs() > 1e-12 {
        return None;
    }
    SymmetricConfig::new(n, c.re).ok()
}

/// Recognizes the asymmetric family (paths `1..N-1` indistinguishable).
pub fn as_asymmetric(cfg: &InterferometerConfig) -> Option<AsymmetricConfig> {
    let n = cfg.n_paths();
    let p = *cfg.priors().values().last()?;
    let cand = AsymmetricConfig::new(n, p).ok()?;
    let close = |a: &[f64], b: &[f64]| a.iter().zip(b).all(|(x, y)| (x - y).abs() <= 1e-12);
    if !close(cfg.priors().values(), cand.priors().values()) {
        return None;
    }
    if (cfg.gram().as_matrix() - cand.gram().as_matrix()).max_abs() > 1e-12 {
        return None;
    }
    Some(cand)
}

/// Best available strategy: closed forms where they are exact, the SDP otherwise.
pub fn discriminate(cfg: &InterferometerConfig, error_budget: f64, options: &SolverOptions) -> Result<DiscriminationOutcome> {
    if let Some(sym) = as_symmetric(cfg) {
        if sym.overlap() >= 0.0 {
            return symmetric_error_margin(&sym, error_budget);
        }
    }
    if error_budget == 0.0 {
        if let Some(asym) = as_asymmetric(cfg) {
            return asymmetric_usd(&asym);
        }
    }
    sdp_outcome(cfg, error_budget, options)
}
