//! Quantum-information primitives for an N-path interferometer.
//!
//! A configuration is a prior distribution over paths plus the Gram matrix of
//! the which-way detector states, `gram[(j, k)] = <η_j|η_k>`. Detector kets
//! are never stored; when an explicit representation is needed it is rebuilt
//! from the Gram matrix with [`factor_gram`].
//!
//! All entropies are in bits and use `0 log 0 = 0`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::matlin::{
    eig_hermitian, factor_gram, is_psd, ComplexScalar, HermitianMatrix, LinalgError, Matrix,
};

/// Probabilities below this are dropped from entropy sums.
pub const PROB_FLOOR: f64 = 1e-14;
/// Accepted deviation of a distribution's total from one.
pub const SUM_TOL: f64 = 1e-10;
/// Entries this far below zero are clamped; anything lower is an error.
pub const NEGATIVE_TOL: f64 = 1e-12;
/// Required accuracy of the unit diagonal of a detector Gram matrix.
pub const UNIT_DIAG_TOL: f64 = 1e-10;
/// PSD tolerance for detector Gram matrices.
pub const GRAM_PSD_TOL: f64 = 1e-9;
/// Trace tolerance for density matrices.
pub const TRACE_TOL: f64 = 1e-8;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum QuantumError {
    #[error("probability {value} at index {index} is negative")]
    NegativeProbability { index: usize, value: f64 },
    #[error("probability {value} at index {index} exceeds 1")]
    ProbabilityAboveOne { index: usize, value: f64 },
    #[error("probabilities sum to {sum}, expected 1")]
    NotNormalized { sum: f64 },
    #[error("binary entropy argument {0} outside [0, 1]")]
    OutOfRange(f64),
    #[error("need at least {min} entries, got {got}")]
    TooFewEntries { min: usize, got: usize },
    #[error("dimension mismatch: {what} has {got} entries, expected {expected}")]
    DimensionMismatch {
        what: &'static str,
        expected: usize,
        got: usize,
    },
    #[error("detector Gram diagonal entry {index} is {value}, expected 1")]
    NonUnitDiagonal { index: usize, value: f64 },
    #[error("detector Gram matrix is not positive semidefinite")]
    GramNotPsd,
    #[error("not a density matrix: {0}")]
    NotDensityMatrix(String),
    #[error("joint distribution entry ({row}, {col}) = {value} is invalid")]
    InvalidJoint { row: usize, col: usize, value: f64 },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

pub type Result<T, E = QuantumError> = std::result::Result<T, E>;

/// A validated probability distribution.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct ProbabilityVector(Vec<f64>);

impl ProbabilityVector {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(QuantumError::TooFewEntries { min: 1, got: 0 });
        }
        let mut clean = Vec::with_capacity(values.len());
        for (index, &v) in values.iter().enumerate() {
            if !v.is_finite() || v < -NEGATIVE_TOL {
                return Err(QuantumError::NegativeProbability { index, value: v });
            }
            if v > 1.0 + SUM_TOL {
                return Err(QuantumError::ProbabilityAboveOne { index, value: v });
            }
            clean.push(v.clamp(0.0, 1.0));
        }
        let sum: f64 = clean.iter().sum();
        if (sum - 1.0).abs() > SUM_TOL {
            return Err(QuantumError::NotNormalized { sum });
        }
        Ok(Self(clean))
    }

    pub fn uniform(n: usize) -> Self {
        Self(vec![1.0 / n as f64; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn entropy(&self) -> f64 {
        shannon_entropy(&self.0).expect("validated distribution")
    }

    pub fn is_uniform(&self, tol: f64) -> bool {
        let u = 1.0 / self.len() as f64;
        self.0.iter().all(|p| (p - u).abs() <= tol)
    }
}

impl TryFrom<Vec<f64>> for ProbabilityVector {
    type Error = QuantumError;
    fn try_from(v: Vec<f64>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<ProbabilityVector> for Vec<f64> {
    fn from(p: ProbabilityVector) -> Self {
        p.0
    }
}

/// Path priors together with the detector-state overlaps.
#[derive(Clone, Debug, PartialEq)]
pub struct InterferometerConfig {
    priors: ProbabilityVector,
    gram: HermitianMatrix,
}

impl InterferometerConfig {
    pub fn new(priors: ProbabilityVector, gram: HermitianMatrix) -> Result<Self> {
        let n = priors.len();
        if n < 2 {
            return Err(QuantumError::TooFewEntries { min: 2, got: n });
        }
        if gram.dim() != n {
            return Err(QuantumError::DimensionMismatch {
                what: "gram",
                expected: n,
                got: gram.dim(),
            });
        }
        for (index, value) in gram.diagonal().into_iter().enumerate() {
            if (value - 1.0).abs() > UNIT_DIAG_TOL {
                return Err(QuantumError::NonUnitDiagonal { index, value });
            }
        }
        if !is_psd(&gram, GRAM_PSD_TOL) {
            return Err(QuantumError::GramNotPsd);
        }
        Ok(Self { priors, gram })
    }

    /// Configuration from explicit detector kets (normalized internally).
    pub fn from_states(priors: ProbabilityVector, states: &[Vec<ComplexScalar>]) -> Result<Self> {
        let normalized: Vec<Vec<ComplexScalar>> = states
            .iter()
            .map(|s| {
                let norm = s.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
                s.iter().map(|z| z / norm).collect()
            })
            .collect();
        let mut gram = crate::matlin::gram_of(&normalized).into_matrix();
        for i in 0..gram.rows() {
            gram[(i, i)] = ComplexScalar::new(1.0, 0.0);
        }
        Self::new(priors, HermitianMatrix::symmetrized(&gram))
    }

    pub fn n_paths(&self) -> usize {
        self.priors.len()
    }

    pub fn priors(&self) -> &ProbabilityVector {
        &self.priors
    }

    pub fn gram(&self) -> &HermitianMatrix {
        &self.gram
    }
}

/// Shannon entropy in bits of non-negative weights (which need not sum to one).
pub fn shannon_entropy(p: &[f64]) -> Result<f64> {
    let mut terms = Vec::with_capacity(p.len());
    for (index, &v) in p.iter().enumerate() {
        if !v.is_finite() || v < -NEGATIVE_TOL {
            return Err(QuantumError::NegativeProbability { index, value: v });
        }
        if v > PROB_FLOOR {
            terms.push(v);
        }
    }
    // Summing in sorted order makes the result a function of the multiset only.
    terms.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
    let h: f64 = terms.iter().map(|&v| -v * v.log2()).sum();
    Ok(h.max(0.0))
}

/// `H2(q) = -q log q - (1-q) log(1-q)`.
pub fn binary_entropy(q: f64) -> Result<f64> {
    if !q.is_finite() || !(-NEGATIVE_TOL..=1.0 + NEGATIVE_TOL).contains(&q) {
        return Err(QuantumError::OutOfRange(q));
    }
    let q = q.clamp(0.0, 1.0);
    Ok(shannon_entropy(&[q, 1.0 - q])?.min(1.0))
}

pub fn von_neumann_entropy(rho: &HermitianMatrix) -> Result<f64> {
    let tr = rho.trace();
    if (tr - 1.0).abs() > TRACE_TOL {
        return Err(QuantumError::NotDensityMatrix(format!("trace {tr}")));
    }
    let eig = eig_hermitian(rho)?;
    let lmin = eig.min_eigenvalue();
    if lmin < -GRAM_PSD_TOL {
        return Err(QuantumError::NotDensityMatrix(format!("eigenvalue {lmin:e}")));
    }
    let spectrum: Vec<f64> = eig.clamped_eigenvalues().into_iter().map(|l| l.max(0.0)).collect();
    shannon_entropy(&spectrum)
}

/// `(ρ_p)_jk = sqrt(p_j p_k) <η_k|η_j>`.
pub fn path_density_matrix(cfg: &InterferometerConfig) -> HermitianMatrix {
    let p = cfg.priors.values();
    let g = cfg.gram.as_matrix();
    let m = Matrix::from_fn(p.len(), p.len(), |j, k| g[(k, j)] * (p[j] * p[k]).sqrt());
    HermitianMatrix::symmetrized(&m)
}

/// `ρ_d = Σ p_j |η_j><η_j|` with the kets reconstructed from the Gram matrix.
pub fn detector_density_matrix(cfg: &InterferometerConfig) -> Result<HermitianMatrix> {
    let kets = factor_gram(&cfg.gram)?;
    let dim = kets.first().map_or(0, Vec::len);
    if dim == 0 {
        return Err(QuantumError::GramNotPsd);
    }
    let mut rho = HermitianMatrix::zeros(dim);
    for (ket, &p) in kets.iter().zip(cfg.priors.values()) {
        rho = rho.add(&HermitianMatrix::projector(ket, p));
    }
    Ok(rho)
}

/// Relative entropy of coherence of `ρ_p` in the path basis, `H({p_j}) - S(ρ_p)`.
pub fn coherence_rel_ent(cfg: &InterferometerConfig) -> Result<f64> {
    let s = von_neumann_entropy(&path_density_matrix(cfg))?;
    let h = cfg.priors.entropy();
    let max = (cfg.n_paths() as f64).log2();
    Ok((h - s).clamp(0.0, max))
}

/// Coherence normalized by `log2 N`.
pub fn normalized_coherence(cfg: &InterferometerConfig) -> Result<f64> {
    Ok((coherence_rel_ent(cfg)? / (cfg.n_paths() as f64).log2()).clamp(0.0, 1.0))
}

/// Joint statistics of the channel from sent state `x` to outcome `y`.
///
/// Outcome columns `0..N` identify a state; the last column is failure.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ChannelStatistics {
    pub joint: Vec<Vec<f64>>,
    pub marginal_y: Vec<f64>,
    pub failure_prob: f64,
    pub error_prob: f64,
}

impl ChannelStatistics {
    /// Validates an `N x (N+1)` joint distribution and derives the marginals.
    pub fn from_joint(joint: Vec<Vec<f64>>) -> Result<Self> {
        let n = joint.len();
        let mut total = 0.0;
        let mut joint = joint;
        for (row, r) in joint.iter_mut().enumerate() {
            if r.len() != n + 1 {
                return Err(QuantumError::DimensionMismatch {
                    what: "joint row",
                    expected: n + 1,
                    got: r.len(),
                });
            }
            for (col, v) in r.iter_mut().enumerate() {
                if !v.is_finite() || *v < -NEGATIVE_TOL.max(1e-9) {
                    return Err(QuantumError::InvalidJoint { row, col, value: *v });
                }
                *v = v.max(0.0);
                total += *v;
            }
        }
        if (total - 1.0).abs() > SUM_TOL.max(1e-8) {
            return Err(QuantumError::NotNormalized { sum: total });
        }
        let marginal_y: Vec<f64> = (0..=n).map(|y| joint.iter().map(|r| r[y]).sum()).collect();
        let failure_prob = marginal_y[n];
        let error_prob = joint
            .iter()
            .enumerate()
            .map(|(x, r)| r[..n].iter().enumerate().filter(|&(y, _)| y != x).map(|(_, v)| v).sum::<f64>())
            .sum();
        Ok(Self {
            joint,
            marginal_y,
            failure_prob,
            error_prob,
        })
    }

    pub fn n_inputs(&self) -> usize {
        self.joint.len()
    }

    pub fn marginal_x(&self) -> Vec<f64> {
        self.joint.iter().map(|r| r.iter().sum()).collect()
    }

    /// Success probability `Σ_x p(x, x)`.
    pub fn success_prob(&self) -> f64 {
        self.joint.iter().enumerate().map(|(x, r)| r[x]).sum()
    }
}

/// `I(X:Y) = Σ p(x,y) log[p(y|x) / p_Y(y)]`, skipping zero-probability terms.
pub fn mutual_information(stats: &ChannelStatistics) -> f64 {
    let px = stats.marginal_x();
    let mut info = 0.0;
    for (x, row) in stats.joint.iter().enumerate() {
        if px[x] <= PROB_FLOOR {
            continue;
        }
        for (y, &pxy) in row.iter().enumerate() {
            let py = stats.marginal_y[y];
            if pxy <= PROB_FLOOR || py <= PROB_FLOOR {
                continue;
            }
            info += pxy * (pxy / (px[x] * py)).log2();
        }
    }
    info.max(0.0)
}

/// Channel of a zero-error measurement that identifies state `x` with probability `p_xx`.
pub fn usd_channel_statistics(priors: &ProbabilityVector, success_probs: &[f64]) -> Result<ChannelStatistics> {
    let n = priors.len();
    if success_probs.len() != n {
        return Err(QuantumError::DimensionMismatch {
            what: "success_probs",
            expected: n,
            got: success_probs.len(),
        });
    }
    let mut joint = vec![vec![0.0; n + 1]; n];
    for (x, (&px, &pxx)) in priors.values().iter().zip(success_probs).enumerate() {
        if !(-NEGATIVE_TOL..=1.0 + NEGATIVE_TOL).contains(&pxx) {
            return Err(QuantumError::OutOfRange(pxx));
        }
        let pxx = pxx.clamp(0.0, 1.0);
        joint[x][x] = px * pxx;
        joint[x][n] = px * (1.0 - pxx);
    }
    ChannelStatistics::from_joint(joint)
}

/// Conditional distribution `q_x = p_x (1 - p_xx) / P_f` of the sent state given failure.
///
/// Returns `None` when the failure probability vanishes.
pub fn failure_conditional(stats: &ChannelStatistics) -> Option<Vec<f64>> {
    let n = stats.n_inputs();
    let pf = stats.failure_prob;
    if pf <= PROB_FLOOR {
        return None;
    }
    Some(stats.joint.iter().map(|r| r[n] / pf).collect())
}

/// `H({p_x}) - P_f H({q_x})`, the zero-error closed form of the mutual information.
pub fn usd_mutual_information(priors: &ProbabilityVector, stats: &ChannelStatistics) -> f64 {
    let h = priors.entropy();
    match failure_conditional(stats) {
        Some(q) => h - stats.failure_prob * shannon_entropy(&q).expect("non-negative"),
        None => h,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn symmetric(n: usize, c: f64) -> InterferometerConfig {
        let g = Matrix::from_fn(n, n, |i, j| ComplexScalar::new(if i == j { 1.0 } else { c }, 0.0));
        InterferometerConfig::new(ProbabilityVector::uniform(n), HermitianMatrix::new(g).unwrap()).unwrap()
    }

    #[test]
    fn shannon_examples() {
        assert_eq!(shannon_entropy(&[1.0]).unwrap(), 0.0);
        assert_abs_diff_eq!(shannon_entropy(&[0.25; 4]).unwrap(), 2.0, epsilon = 1e-15);
        assert_abs_diff_eq!(shannon_entropy(&[0.9, 0.1]).unwrap(), 0.468996, epsilon = 1e-6);
        assert_abs_diff_eq!(
            shannon_entropy(&[0.9, 0.1]).unwrap(),
            binary_entropy(0.1).unwrap(),
            epsilon = 1e-15
        );
        assert!(shannon_entropy(&[0.5, -0.1]).is_err());
        assert_eq!(shannon_entropy(&[1.0, -1e-13]).unwrap(), 0.0);
    }

    #[test]
    fn binary_entropy_examples() {
        assert_eq!(binary_entropy(0.0).unwrap(), 0.0);
        assert_eq!(binary_entropy(1.0).unwrap(), 0.0);
        assert_abs_diff_eq!(binary_entropy(0.5).unwrap(), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(binary_entropy(0.11).unwrap(), 0.499916, epsilon = 1e-6);
        assert!(binary_entropy(0.10).unwrap() < binary_entropy(0.11).unwrap());
        assert!(binary_entropy(1.1).is_err());
    }

    #[test]
    fn von_neumann_examples() {
        let mixed = HermitianMatrix::identity(8).scale(1.0 / 8.0);
        assert_abs_diff_eq!(von_neumann_entropy(&mixed).unwrap(), 3.0, epsilon = 1e-12);
        let v = [ComplexScalar::new(0.6, 0.0), ComplexScalar::new(0.0, 0.8)];
        let pure = HermitianMatrix::projector(&v, 1.0);
        assert_abs_diff_eq!(von_neumann_entropy(&pure).unwrap(), 0.0, epsilon = 1e-9);
        let rho = path_density_matrix(&symmetric(4, 0.5));
        let h = shannon_entropy(&[5.0 / 8.0, 1.0 / 8.0, 1.0 / 8.0, 1.0 / 8.0]).unwrap();
        assert_abs_diff_eq!(h, 1.548795, epsilon = 1e-6);
        assert_abs_diff_eq!(von_neumann_entropy(&rho).unwrap(), h, epsilon = 1e-12);
        assert!(von_neumann_entropy(&HermitianMatrix::identity(2)).is_err());
    }

    #[test]
    fn path_density_examples() {
        let priors = ProbabilityVector::new(vec![0.2, 0.3, 0.5]).unwrap();
        let cfg = InterferometerConfig::new(priors, HermitianMatrix::identity(3)).unwrap();
        let rho = path_density_matrix(&cfg);
        assert_eq!(rho.diagonal(), vec![0.2, 0.3, 0.5]);
        assert_eq!(rho[(0, 1)], ComplexScalar::new(0.0, 0.0));

        let g = HermitianMatrix::from_real(2, &[1.0, 0.6, 0.6, 1.0]).unwrap();
        let cfg = InterferometerConfig::new(ProbabilityVector::uniform(2), g).unwrap();
        assert_abs_diff_eq!(path_density_matrix(&cfg)[(0, 1)].re, 0.3, epsilon = 1e-15);

        // (1-c)/N I + c |f0><f0|, with |f0> the uniform superposition.
        let (n, c) = (5, 0.35);
        let rho = path_density_matrix(&symmetric(n, c));
        for j in 0..n {
            for k in 0..n {
                let want = c / n as f64 + if j == k { (1.0 - c) / n as f64 } else { 0.0 };
                assert_abs_diff_eq!(rho[(j, k)].re, want, epsilon = 1e-15);
            }
        }
    }

    #[test]
    fn path_density_uses_conjugated_overlap() {
        let g = Matrix::from_rows(
            2,
            2,
            vec![
                ComplexScalar::new(1.0, 0.0),
                ComplexScalar::new(0.0, 0.5),
                ComplexScalar::new(0.0, -0.5),
                ComplexScalar::new(1.0, 0.0),
            ],
        )
        .unwrap();
        let cfg = InterferometerConfig::new(ProbabilityVector::uniform(2), HermitianMatrix::new(g).unwrap()).unwrap();
        // (ρ_p)_{01} = 1/2 <η_1|η_0> = 1/2 conj(<η_0|η_1>)
        assert_abs_diff_eq!(path_density_matrix(&cfg)[(0, 1)].im, -0.25, epsilon = 1e-15);
    }

    #[test]
    fn detector_density_examples() {
        let cfg = InterferometerConfig::new(ProbabilityVector::uniform(4), HermitianMatrix::identity(4)).unwrap();
        let eig = eig_hermitian(&detector_density_matrix(&cfg).unwrap()).unwrap();
        for l in eig.eigenvalues {
            assert_abs_diff_eq!(l, 0.25, epsilon = 1e-12);
        }
        let eig = eig_hermitian(&detector_density_matrix(&symmetric(3, 0.2)).unwrap()).unwrap();
        let want = [1.4 / 3.0, 0.8 / 3.0, 0.8 / 3.0];
        for (l, w) in eig.eigenvalues.iter().zip(want) {
            assert_abs_diff_eq!(*l, w, epsilon = 1e-12);
        }
    }

    #[test]
    fn coherence_examples() {
        let priors = ProbabilityVector::new(vec![0.1, 0.2, 0.3, 0.4]).unwrap();
        let cfg = InterferometerConfig::new(priors, HermitianMatrix::identity(4)).unwrap();
        assert_eq!(coherence_rel_ent(&cfg).unwrap(), 0.0);
        assert_eq!(normalized_coherence(&cfg).unwrap(), 0.0);

        let ones = HermitianMatrix::from_real(3, &[1.0; 9]).unwrap();
        let cfg = InterferometerConfig::new(ProbabilityVector::uniform(3), ones).unwrap();
        assert_abs_diff_eq!(coherence_rel_ent(&cfg).unwrap(), 3f64.log2(), epsilon = 1e-9);
        assert_abs_diff_eq!(normalized_coherence(&cfg).unwrap(), 1.0, epsilon = 1e-9);

        for &(n, c) in &[(2usize, 0.5), (3, 0.2), (8, 0.7)] {
            let nf = n as f64;
            let closed = (nf - 1.0) * (1.0 - c) / nf * (1.0 - c).log2()
                + (1.0 + (nf - 1.0) * c) / nf * (1.0 + (nf - 1.0) * c).log2();
            assert_abs_diff_eq!(coherence_rel_ent(&symmetric(n, c)).unwrap(), closed, epsilon = 1e-10);
        }
        assert_abs_diff_eq!(normalized_coherence(&symmetric(2, 0.5)).unwrap(), 0.188722, epsilon = 1e-6);
    }

    #[test]
    fn usd_channel_examples() {
        let u3 = ProbabilityVector::uniform(3);
        let all = usd_channel_statistics(&u3, &[1.0; 3]).unwrap();
        assert_eq!(all.failure_prob, 0.0);
        assert_abs_diff_eq!(mutual_information(&all), 3f64.log2(), epsilon = 1e-12);

        let none = usd_channel_statistics(&u3, &[0.0; 3]).unwrap();
        assert_abs_diff_eq!(none.failure_prob, 1.0, epsilon = 1e-15);
        assert_eq!(mutual_information(&none), 0.0);

        let s = usd_channel_statistics(&u3, &[1.0, 0.5, 0.5]).unwrap();
        assert_abs_diff_eq!(s.failure_prob, 1.0 / 3.0, epsilon = 1e-15);
        assert_eq!(s.error_prob, 0.0);
        let q = failure_conditional(&s).unwrap();
        assert_abs_diff_eq!(q[0], 0.0);
        assert_abs_diff_eq!(q[1], 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(q[2], 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(mutual_information(&s), usd_mutual_information(&u3, &s), epsilon = 1e-12);
    }

    #[test]
    fn independent_channel_has_no_information() {
        // p(y|x) identical for all x.
        let joint = vec![vec![0.1, 0.2, 0.2], vec![0.1, 0.2, 0.2]];
        let s = ChannelStatistics::from_joint(joint).unwrap();
        assert_abs_diff_eq!(mutual_information(&s), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(s.error_prob, 0.3, epsilon = 1e-15);
        assert_abs_diff_eq!(s.failure_prob, 0.4, epsilon = 1e-15);
    }

    #[test]
    fn config_validation() {
        let bad_diag = HermitianMatrix::from_real(2, &[1.0, 0.2, 0.2, 0.9]).unwrap();
        assert!(matches!(
            InterferometerConfig::new(ProbabilityVector::uniform(2), bad_diag),
            Err(QuantumError::NonUnitDiagonal { .. })
        ));
        let not_psd = HermitianMatrix::from_real(3, &[1.0, -0.9, -0.9, -0.9, 1.0, -0.9, -0.9, -0.9, 1.0]).unwrap();
        assert!(matches!(
            InterferometerConfig::new(ProbabilityVector::uniform(3), not_psd),
            Err(QuantumError::GramNotPsd)
        ));
        assert!(ProbabilityVector::new(vec![0.5, 0.6]).is_err());
        assert!(ProbabilityVector::new(vec![1.1, -0.1]).is_err());
        assert!(InterferometerConfig::new(ProbabilityVector::uniform(1), HermitianMatrix::identity(1)).is_err());
    }

    #[test]
    fn priors_deserialize_with_validation() {
        let p: ProbabilityVector = serde_json::from_str("[0.25, 0.75]").unwrap();
        assert_eq!(p.values(), &[0.25, 0.75]);
        assert!(serde_json::from_str::<ProbabilityVector>("[0.25, 0.5]").is_err());
    }
}
