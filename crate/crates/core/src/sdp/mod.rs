//! Error-margin state discrimination as a block-diagonal SDP.
//!
//! For states `|ψ̃_j> = sqrt(p_j)|ψ_j>` with Gram matrix `G`, the minimum
//! failure probability under an error budget `P_e` is
//!
//! ```text
//!   min_{z_j ⪰ 0}  1 - Σ_j tr z_j
//!   s.t.           G - Σ_j z_j ⪰ 0
//!                  Σ_j (tr z_j - <j|z_j|j>) ≤ P_e
//! ```
//!
//! where `z_j = Γ^H Π_j Γ` and `Γ^H Γ = G`. The solver works on the support
//! of `G`: with `G = V Λ V^H` restricted to its nonzero eigenvalues, every
//! feasible `z_j` has the form `V y_j V^H`, so the blocks shrink to
//! `rank(G)` and the coupling constraint has a strictly feasible point.
//!
//! At `P_e = 0` the error constraint forces `z_j = a_j |j><j|` and has no
//! interior; that case is solved in this reduced form directly.

mod engine;

use serde::Serialize;
use thiserror::Error;

use crate::matlin::{
    eig_hermitian, gram_factor_matrix, ComplexScalar, HermitianMatrix, LinalgError, Matrix, RANK_CUTOFF,
};
use crate::quantum::{ChannelStatistics, InterferometerConfig, QuantumError};
use engine::{BlockTerm, Constraint, Engine, EngineStatus, Iterate, StandardForm};

/// Feasibility tolerance used when checking solver output.
pub const FEASIBILITY_TOL: f64 = 1e-7;

#[derive(Debug, Error)]
pub enum SdpError {
    #[error("error budget {0} outside [0, 1]")]
    InvalidBudget(f64),
    #[error("Gram matrix is not positive semidefinite (min eigenvalue {0:e})")]
    GramNotPsd(f64),
    #[error("numerical breakdown at iteration {iteration}: {cause}")]
    NumericalBreakdown { iteration: usize, cause: LinalgError },
    #[error("solution status is {0:?}, expected optimal")]
    NotOptimal(SolveStatus),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Quantum(#[from] QuantumError),
}

pub type Result<T, E = SdpError> = std::result::Result<T, E>;

#[derive(Clone, Debug, PartialEq)]
pub struct SolverOptions {
    pub tolerance: f64,
    pub max_iterations: usize,
    pub verbose: bool,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self {
            tolerance: 1e-7,
            max_iterations: 200,
            verbose: false,
        }
    }
}

/// The discrimination SDP for one Gram matrix and error budget.
#[derive(Clone, Debug)]
pub struct BlockSdpProblem {
    gram: HermitianMatrix,
    error_budget: f64,
}

impl BlockSdpProblem {
    /// Problem for an explicit prior-weighted Gram matrix.
    pub fn new(gram: HermitianMatrix, error_budget: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&error_budget) {
            return Err(SdpError::InvalidBudget(error_budget));
        }
        let lmin = eig_hermitian(&gram)?.min_eigenvalue();
        if lmin < -1e-9 {
            return Err(SdpError::GramNotPsd(lmin));
        }
        Ok(Self { gram, error_budget })
    }

    pub fn gram(&self) -> &HermitianMatrix {
        &self.gram
    }

    pub fn error_budget(&self) -> f64 {
        self.error_budget
    }

    pub fn block_count(&self) -> usize {
        self.gram.dim()
    }
}

/// Prior-weighted Gram matrix `G_jk = sqrt(p_j p_k) <η_j|η_k>` of a configuration.
pub fn weighted_gram(cfg: &InterferometerConfig) -> HermitianMatrix {
    let p = cfg.priors().values();
    let g = cfg.gram().as_matrix();
    HermitianMatrix::symmetrized(&Matrix::from_fn(p.len(), p.len(), |j, k| g[(j, k)] * (p[j] * p[k]).sqrt()))
}

pub fn build_problem(cfg: &InterferometerConfig, error_budget: f64) -> Result<BlockSdpProblem> {
    BlockSdpProblem::new(weighted_gram(cfg), error_budget)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SolveStatus {
    Optimal,
    MaxIterations,
    Infeasible,
}

#[derive(Clone, Debug)]
pub struct BlockSdpSolution {
    /// Optimal `z_j`, one `N x N` block per state.
    pub blocks: Vec<HermitianMatrix>,
    /// Minimum failure probability `1 - tr Z`, clamped to `[0, 1]`.
    pub objective: f64,
    pub dual_objective: f64,
    /// `G - Σ z_j`.
    pub slack_psd: HermitianMatrix,
    /// `tr(Z B)`, the error probability of the optimal measurement.
    pub error_used: f64,
    pub status: SolveStatus,
    pub iterations: usize,
    pub primal_infeasibility: f64,
    pub dual_infeasibility: f64,
    /// Rank of `G` the problem was reduced to.
    pub support_rank: usize,
}

impl BlockSdpSolution {
    pub fn gap(&self) -> f64 {
        (self.objective - self.dual_objective).abs()
    }

    /// `Σ_j <j|z_j|j>`, the success probability.
    pub fn success(&self) -> f64 {
        self.blocks.iter().enumerate().map(|(j, z)| z[(j, j)].re).sum()
    }

    /// Joint statistics `p(x, y) = <x|z_y|x>`, failure column last.
    pub fn channel_statistics(&self) -> Result<ChannelStatistics> {
        let n = self.blocks.len();
        let diag = self.slack_psd.add(&self.blocks.iter().fold(HermitianMatrix::zeros(n), |acc, z| acc.add(z)));
        let joint = (0..n)
            .map(|x| {
                let mut row: Vec<f64> = self.blocks.iter().map(|z| z[(x, x)].re.max(0.0)).collect();
                let clicked: f64 = row.iter().sum();
                row.push((diag[(x, x)].re - clicked).max(0.0));
                row
            })
            .collect();
        Ok(ChannelStatistics::from_joint(joint)?)
    }
}

/// Orthonormal basis of Hermitian `r x r` matrices under `Re tr(A^H B)`.
fn hermitian_basis(r: usize) -> Vec<Vec<(usize, usize, ComplexScalar)>> {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let mut basis = Vec::with_capacity(r * r);
    for i in 0..r {
        basis.push(vec![(i, i, ComplexScalar::new(1.0, 0.0))]);
        for j in i + 1..r {
            basis.push(vec![(i, j, ComplexScalar::new(h, 0.0)), (j, i, ComplexScalar::new(h, 0.0))]);
            basis.push(vec![(i, j, ComplexScalar::new(0.0, h)), (j, i, ComplexScalar::new(0.0, -h))]);
        }
    }
    basis
}

fn basis_coefficient(entries: &[(usize, usize, ComplexScalar)], m: &Matrix) -> f64 {
    entries.iter().map(|&(r, s, v)| (v.conj() * m[(r, s)]).re).sum()
}

fn dense_entries(m: &Matrix) -> Vec<(usize, usize, ComplexScalar)> {
    let mut out = Vec::new();
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            let v = m[(i, j)];
            if v.norm() > 0.0 {
                out.push((i, j, v));
            }
        }
    }
    out
}

/// Support of the problem Gram matrix: `G ≈ V diag(λ) V^H`.
struct Support {
    /// `N x r`
    v: Matrix,
    lambda: Vec<f64>,
}

impl Support {
    fn of(g: &HermitianMatrix) -> Result<Self> {
        let eig = eig_hermitian(g)?;
        let kept: Vec<usize> = (0..eig.dim()).filter(|&i| eig.eigenvalues[i] > RANK_CUTOFF).collect();
        let v = Matrix::from_fn(g.dim(), kept.len(), |i, k| eig.eigenvectors[(i, kept[k])]);
        let lambda = kept.iter().map(|&i| eig.eigenvalues[i]).collect();
        Ok(Self { v, lambda })
    }

    fn rank(&self) -> usize {
        self.lambda.len()
    }

    /// `V^H e_j`
    fn coordinate(&self, j: usize) -> Vec<ComplexScalar> {
        (0..self.rank()).map(|k| self.v[(j, k)].conj()).collect()
    }

    fn lift(&self, y: &HermitianMatrix) -> HermitianMatrix {
        y.congruence(&self.v)
    }
}

/// Minimum failure probability for the given error budget.
pub fn solve(problem: &BlockSdpProblem, options: &SolverOptions) -> Result<BlockSdpSolution> {
    let n = problem.block_count();
    let support = Support::of(&problem.gram)?;
    let r = support.rank();
    if r == 0 {
        return Ok(assemble(problem, vec![HermitianMatrix::zeros(n); n], 1.0, SolveStatus::Optimal, 0, 0.0, 0.0, 0));
    }
    if problem.error_budget == 0.0 {
        solve_unambiguous(problem, &support, options)
    } else {
        solve_error_margin(problem, &support, options)
    }
}

fn lambda_constraints(support: &Support) -> (Vec<Vec<(usize, usize, ComplexScalar)>>, Vec<f64>) {
    let basis = hermitian_basis(support.rank());
    let lam = Matrix::from_diagonal(&support.lambda);
    let rhs = basis.iter().map(|e| basis_coefficient(e, &lam)).collect();
    (basis, rhs)
}

fn initial_epsilon(support: &Support, n: usize, error_budget: f64) -> f64 {
    let lmin = support.lambda.iter().cloned().fold(f64::INFINITY, f64::min);
    let nf = n as f64;
    let eps = lmin / (2.0 * nf);
    if error_budget > 0.0 {
        eps.min(error_budget / (2.0 * nf * (nf - 1.0).max(1.0)))
    } else {
        eps
    }
}

/// `P_e = 0`: `z_j = a_j |j><j|`, maximize `Σ a_j` subject to `G - diag(a) ⪰ 0`.
fn solve_unambiguous(problem: &BlockSdpProblem, support: &Support, options: &SolverOptions) -> Result<BlockSdpSolution> {
    let n = problem.block_count();
    let r = support.rank();
    // a_j can be nonzero only if |j> lies in the support of G.
    let active: Vec<usize> = (0..n)
        .filter(|&j| support.coordinate(j).iter().map(|z| z.norm_sqr()).sum::<f64>() > 1.0 - 1e-8)
        .collect();
    if active.is_empty() {
        return Ok(assemble(problem, vec![HermitianMatrix::zeros(n); n], 1.0, SolveStatus::Optimal, 0, 0.0, 0.0, r));
    }
    let (basis, rhs) = lambda_constraints(support);
    let s_block = active.len();
    let projectors: Vec<Matrix> = active
        .iter()
        .map(|&j| {
            let u = support.coordinate(j);
            Matrix::outer(&u, &u)
        })
        .collect();
    let constraints = basis
        .iter()
        .map(|e| {
            let mut terms: Vec<BlockTerm> = projectors
                .iter()
                .enumerate()
                .filter_map(|(b, proj)| {
                    let coef = basis_coefficient(e, proj);
                    (coef != 0.0).then(|| BlockTerm {
                        block: b,
                        entries: vec![(0, 0, ComplexScalar::new(coef, 0.0))],
                    })
                })
                .collect();
            terms.push(BlockTerm {
                block: s_block,
                entries: e.clone(),
            });
            Constraint { terms }
        })
        .collect();
    let mut dims = vec![1; s_block];
    dims.push(r);
    let mut cost = vec![HermitianMatrix::from_diagonal(&[-1.0]); s_block];
    cost.push(HermitianMatrix::zeros(r));
    let form = StandardForm {
        dims,
        cost,
        constraints,
        rhs,
    };

    let eps = initial_epsilon(support, n, 0.0);
    let beta = 2.0;
    let coupled = projectors
        .iter()
        .fold(HermitianMatrix::zeros(r), |acc, p| acc.add(&HermitianMatrix::symmetrized(p)));
    let mut x = vec![HermitianMatrix::from_diagonal(&[eps]); s_block];
    x.push(HermitianMatrix::from_diagonal(&support.lambda).sub(&coupled.scale(eps)));
    let y: Vec<f64> = basis.iter().map(|e| if e.len() == 1 { -beta } else { 0.0 }).collect();
    let mut z = vec![HermitianMatrix::from_diagonal(&[beta - 1.0]); s_block];
    z.push(HermitianMatrix::identity(r).scale(beta));

    let result = run_engine(&form, Iterate { x, y, z }, options)?;
    let mut blocks = vec![HermitianMatrix::zeros(n); n];
    for (b, &j) in active.iter().enumerate() {
        let a = result.iterate.x[b][(0, 0)].re.max(0.0);
        let mut e = vec![ComplexScalar::new(0.0, 0.0); n];
        e[j] = ComplexScalar::new(1.0, 0.0);
        blocks[j] = HermitianMatrix::projector(&e, a);
    }
    Ok(finish(problem, blocks, &result, r))
}

/// `P_e > 0`: full blocks on the support plus the error-budget slack.
fn solve_error_margin(problem: &BlockSdpProblem, support: &Support, options: &SolverOptions) -> Result<BlockSdpSolution> {
    let n = problem.block_count();
    let r = support.rank();
    let (basis, mut rhs) = lambda_constraints(support);
    let s_block = n;
    let e_block = n + 1;

    // b̃_j = V^H (I - |j><j|) V = I - u_j u_j^H
    let error_terms: Vec<Matrix> = (0..n)
        .map(|j| {
            let u = support.coordinate(j);
            &Matrix::identity(r) - &Matrix::outer(&u, &u)
        })
        .collect();

    let mut constraints: Vec<Constraint> = basis
        .iter()
        .map(|e| {
            let mut terms: Vec<BlockTerm> = (0..n)
                .map(|b| BlockTerm {
                    block: b,
                    entries: e.clone(),
                })
                .collect();
            terms.push(BlockTerm {
                block: s_block,
                entries: e.clone(),
            });
            Constraint { terms }
        })
        .collect();
    let mut error_row: Vec<BlockTerm> = error_terms
        .iter()
        .enumerate()
        .map(|(b, m)| BlockTerm {
            block: b,
            entries: dense_entries(m),
        })
        .filter(|t| !t.entries.is_empty())
        .collect();
    error_row.push(BlockTerm {
        block: e_block,
        entries: vec![(0, 0, ComplexScalar::new(1.0, 0.0))],
    });
    constraints.push(Constraint { terms: error_row });
    rhs.push(problem.error_budget);

    let mut dims = vec![r; n];
    dims.push(r);
    dims.push(1);
    let mut cost = vec![HermitianMatrix::identity(r).scale(-1.0); n];
    cost.push(HermitianMatrix::zeros(r));
    cost.push(HermitianMatrix::zeros(1));
    let form = StandardForm {
        dims,
        cost,
        constraints,
        rhs,
    };

    let eps = initial_epsilon(support, n, problem.error_budget);
    let mut x = vec![HermitianMatrix::identity(r).scale(eps); n];
    let s0: Vec<f64> = support.lambda.iter().map(|l| l - eps * n as f64).collect();
    x.push(HermitianMatrix::from_diagonal(&s0));
    let used: f64 = error_terms.iter().map(|b| b.trace().re * eps).sum();
    x.push(HermitianMatrix::from_diagonal(&[problem.error_budget - used]));

    let (beta, tau) = (2.0, 1.0);
    let mut y: Vec<f64> = basis.iter().map(|e| if e.len() == 1 { -beta } else { 0.0 }).collect();
    y.push(-tau);
    let mut z: Vec<HermitianMatrix> = error_terms
        .iter()
        .map(|b| HermitianMatrix::identity(r).scale(beta - 1.0).add(&HermitianMatrix::symmetrized(b).scale(tau)))
        .collect();
    z.push(HermitianMatrix::identity(r).scale(beta));
    z.push(HermitianMatrix::from_diagonal(&[tau]));

    let result = run_engine(&form, Iterate { x, y, z }, options)?;
    let blocks = result.iterate.x[..n].iter().map(|yj| support.lift(yj)).collect();
    Ok(finish(problem, blocks, &result, r))
}

fn run_engine(form: &StandardForm, start: Iterate, options: &SolverOptions) -> Result<engine::EngineResult> {
    Engine::new(form, options.tolerance, options.max_iterations, options.verbose)
        .run(start)
        .map_err(|b| SdpError::NumericalBreakdown {
            iteration: b.iteration,
            cause: b.cause,
        })
}

fn finish(
    problem: &BlockSdpProblem,
    blocks: Vec<HermitianMatrix>,
    result: &engine::EngineResult,
    rank: usize,
) -> BlockSdpSolution {
    let status = match result.status {
        EngineStatus::Converged => SolveStatus::Optimal,
        EngineStatus::MaxIterations => SolveStatus::MaxIterations,
        EngineStatus::DualDiverged => SolveStatus::Infeasible,
    };
    let dual = 1.0 + result.dual_objective;
    log::debug!(
        "SDP finished: {} iterations, engine objectives {:e}/{:e}, <X,Z> = {:e}",
        result.iterations,
        result.primal_objective,
        result.dual_objective,
        result.complementarity
    );
    let mut sol = assemble(
        problem,
        blocks,
        dual,
        status,
        result.iterations,
        result.primal_infeasibility,
        result.dual_infeasibility,
        rank,
    );
    if status != SolveStatus::Optimal {
        log::warn!("SDP stopped with status {status:?} after {} iterations", result.iterations);
    }
    sol.dual_objective = dual;
    sol
}

#[allow(clippy::too_many_arguments)]
fn assemble(
    problem: &BlockSdpProblem,
    blocks: Vec<HermitianMatrix>,
    dual_objective: f64,
    status: SolveStatus,
    iterations: usize,
    primal_infeasibility: f64,
    dual_infeasibility: f64,
    support_rank: usize,
) -> BlockSdpSolution {
    let n = problem.block_count();
    let total = blocks.iter().fold(HermitianMatrix::zeros(n), |acc, z| acc.add(z));
    let slack_psd = problem.gram.sub(&total);
    let error_used = blocks
        .iter()
        .enumerate()
        .map(|(j, z)| z.trace() - z[(j, j)].re)
        .sum::<f64>()
        .max(0.0);
    let objective = (1.0 - total.trace()).clamp(0.0, 1.0);
    BlockSdpSolution {
        blocks,
        objective,
        dual_objective,
        slack_psd,
        error_used,
        status,
        iterations,
        primal_infeasibility,
        dual_infeasibility,
        support_rank,
    }
}

/// Measurement recovered from an SDP solution, on the support of `G`.
#[derive(Clone, Debug)]
pub struct Povm {
    /// `Π_j` identifying state `j`.
    pub elements: Vec<HermitianMatrix>,
    /// `Π_0 = 1 - Σ Π_j`.
    pub failure: HermitianMatrix,
    /// Columns are the embedded states `|ψ̃_k>`.
    pub states: Matrix,
    /// `G` was singular and the measurement lives on its support only.
    pub rank_deficient: bool,
}

impl Povm {
    /// `p(x, y) = <ψ̃_x|Π_y|ψ̃_x>`, failure column last.
    pub fn channel_statistics(&self) -> Result<ChannelStatistics> {
        let n = self.states.cols();
        let joint = (0..n)
            .map(|x| {
                let psi = self.states.column(x);
                let mut row: Vec<f64> = self.elements.iter().map(|p| p.expectation(&psi)).collect();
                row.push(self.failure.expectation(&psi));
                row
            })
            .collect();
        Ok(ChannelStatistics::from_joint(joint)?)
    }
}

/// `Π_j = (Γ^+)^H z_j Γ^+` with `Γ` the Gram factor of the configuration.
pub fn extract_povm(solution: &BlockSdpSolution, cfg: &InterferometerConfig) -> Result<Povm> {
    if solution.status != SolveStatus::Optimal {
        return Err(SdpError::NotOptimal(solution.status));
    }
    let g = weighted_gram(cfg);
    if solution.blocks.len() != g.dim() {
        return Err(SdpError::DimensionMismatch {
            expected: g.dim(),
            got: solution.blocks.len(),
        });
    }
    let gamma = gram_factor_matrix(&g)?;
    let r = gamma.rows();
    // Γ Γ^H = diag(λ), so Γ^+ = Γ^H diag(1/λ).
    let lambda: Vec<f64> = (0..r).map(|i| (0..gamma.cols()).map(|k| gamma[(i, k)].norm_sqr()).sum()).collect();
    let pinv_h = Matrix::from_fn(r, gamma.cols(), |i, k| gamma[(i, k)] / lambda[i]);
    let elements: Vec<HermitianMatrix> = solution.blocks.iter().map(|z| z.congruence(&pinv_h)).collect();
    let failure = elements.iter().fold(HermitianMatrix::identity(r), |acc, p| acc.sub(p));
    Ok(Povm {
        elements,
        failure,
        states: gamma,
        rank_deficient: r < g.dim(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matlin::{is_psd, min_eigenvalue};
    use crate::quantum::ProbabilityVector;
    use approx::assert_abs_diff_eq;

    fn symmetric(n: usize, c: f64) -> InterferometerConfig {
        let g = Matrix::from_fn(n, n, |i, j| ComplexScalar::new(if i == j { 1.0 } else { c }, 0.0));
        InterferometerConfig::new(ProbabilityVector::uniform(n), HermitianMatrix::new(g).unwrap()).unwrap()
    }

    fn solve_cfg(cfg: &InterferometerConfig, pe: f64) -> BlockSdpSolution {
        let sol = solve(&build_problem(cfg, pe).unwrap(), &SolverOptions::default()).unwrap();
        assert_eq!(sol.status, SolveStatus::Optimal);
        sol
    }

    #[test]
    fn build_problem_examples() {
        let d = symmetric(3, 0.3);
        let p = build_problem(&d, 0.0).unwrap();
        assert!(p.gram().sub(&d.gram().scale(1.0 / 3.0)).max_abs() < 1e-15);

        let priors = ProbabilityVector::new(vec![1.0, 0.0, 0.0]).unwrap();
        let cfg = InterferometerConfig::new(priors, d.gram().clone()).unwrap();
        let g = build_problem(&cfg, 0.1).unwrap().gram().clone();
        assert_eq!(g[(0, 0)].re, 1.0);
        assert_eq!(g[(1, 1)].re, 0.0);
        assert_eq!(g[(0, 1)].re, 0.0);

        let priors = ProbabilityVector::new(vec![0.3, 0.7]).unwrap();
        let gram = HermitianMatrix::from_real(2, &[1.0, 0.5, 0.5, 1.0]).unwrap();
        let g = build_problem(&InterferometerConfig::new(priors, gram).unwrap(), 0.0).unwrap().gram().clone();
        assert_abs_diff_eq!(g[(0, 0)].re, 0.3);
        assert_abs_diff_eq!(g[(1, 1)].re, 0.7);
        assert_abs_diff_eq!(g[(0, 1)].re, 0.5 * 0.21f64.sqrt(), epsilon = 1e-15);

        assert!(matches!(build_problem(&d, 1.5), Err(SdpError::InvalidBudget(_))));
    }

    #[test]
    fn orthogonal_states_never_fail() {
        let cfg = InterferometerConfig::new(ProbabilityVector::uniform(3), HermitianMatrix::identity(3)).unwrap();
        let sol = solve_cfg(&cfg, 0.0);
        assert_abs_diff_eq!(sol.objective, 0.0, epsilon = 1e-7);
        let povm = extract_povm(&sol, &cfg).unwrap();
        // Π_j projects onto the j-th state.
        for (j, pi) in povm.elements.iter().enumerate() {
            let psi = povm.states.column(j);
            assert_abs_diff_eq!(pi.expectation(&psi) * 3.0, 1.0, epsilon = 1e-6);
            assert_abs_diff_eq!(pi.trace(), 1.0, epsilon = 1e-6);
        }
    }

    #[test]
    fn symmetric_usd_fails_with_probability_c() {
        let sol = solve_cfg(&symmetric(4, 0.5), 0.0);
        assert_abs_diff_eq!(sol.objective, 0.5, epsilon = 1e-6);
        assert!(sol.gap() <= 1e-7);
        assert!(sol.error_used <= 1e-12);
    }

    #[test]
    fn symmetric_error_margin_point() {
        // c - 2 sqrt((1-c) P_e / (N-1)) - N P_e / (N-1) at N=3, c=0.4, P_e=0.05.
        let want = 0.4 - 2.0 * (0.6f64 * 0.05 / 2.0).sqrt() - 3.0 * 0.05 / 2.0;
        let sol = solve_cfg(&symmetric(3, 0.4), 0.05);
        assert_abs_diff_eq!(sol.objective, want, epsilon = 1e-6);
        assert_abs_diff_eq!(sol.objective, 0.0800510257, epsilon = 1e-6);
        assert!(sol.error_used <= 0.05 + FEASIBILITY_TOL);
        for z in &sol.blocks {
            assert!(is_psd(z, FEASIBILITY_TOL));
        }
        assert!(is_psd(&sol.slack_psd, FEASIBILITY_TOL));
    }

    #[test]
    fn large_budget_gives_zero_failure() {
        let sol = solve_cfg(&symmetric(3, 0.4), 0.5);
        assert_abs_diff_eq!(sol.objective, 0.0, epsilon = 1e-6);
    }

    #[test]
    fn identical_states_are_never_identified() {
        let ones = HermitianMatrix::from_real(2, &[1.0; 4]).unwrap();
        let cfg = InterferometerConfig::new(ProbabilityVector::uniform(2), ones).unwrap();
        let sol = solve_cfg(&cfg, 0.0);
        assert_abs_diff_eq!(sol.objective, 1.0, epsilon = 1e-9);
        let povm = extract_povm(&sol, &cfg).unwrap();
        assert!(povm.rank_deficient);
        for pi in &povm.elements {
            assert!(pi.max_abs() < 1e-9);
        }
        assert_abs_diff_eq!(povm.failure.trace(), 1.0, epsilon = 1e-9);
    }

    #[test]
    fn symmetric_povm_is_uniform() {
        let cfg = symmetric(3, 0.3);
        let sol = solve_cfg(&cfg, 0.0);
        let povm = extract_povm(&sol, &cfg).unwrap();
        let stats = povm.channel_statistics().unwrap();
        for x in 0..3 {
            assert_abs_diff_eq!(stats.joint[x][x] * 3.0, 0.7, epsilon = 1e-6);
        }
        assert_abs_diff_eq!(stats.failure_prob, sol.objective, epsilon = 1e-6);
        assert!(min_eigenvalue(&povm.failure).unwrap() >= -1e-6);
    }

    #[test]
    fn degenerate_priors() {
        let priors = ProbabilityVector::new(vec![1.0, 0.0, 0.0]).unwrap();
        let cfg = InterferometerConfig::new(priors, symmetric(3, 0.3).gram().clone()).unwrap();
        for pe in [0.0, 0.1] {
            let sol = solve_cfg(&cfg, pe);
            assert_abs_diff_eq!(sol.objective, 0.0, epsilon = 1e-6);
        }
    }

    #[test]
    fn rejects_unfinished_solution() {
        let cfg = symmetric(3, 0.3);
        let opts = SolverOptions {
            max_iterations: 1,
            ..SolverOptions::default()
        };
        let sol = solve(&build_problem(&cfg, 0.1).unwrap(), &opts).unwrap();
        assert_eq!(sol.status, SolveStatus::MaxIterations);
        assert!(matches!(extract_povm(&sol, &cfg), Err(SdpError::NotOptimal(_))));
    }
}
