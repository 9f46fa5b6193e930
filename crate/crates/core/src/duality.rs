//! Coherence/distinguishability duality relations.
//!
//! Every check produces a [`DualityReport`] whose `slack` is oriented so
//! that `slack >= -SATISFIED_TOL` exactly when the relation holds.

use serde::Serialize;
use thiserror::Error;

use crate::discrimination::DiscriminationOutcome;
use crate::quantum::{coherence_rel_ent, InterferometerConfig, QuantumError};

pub const SATISFIED_TOL: f64 = 1e-8;
/// Largest error probability still treated as a zero-error outcome.
pub const ZERO_ERROR_TOL: f64 = 1e-8;

#[derive(Debug, Error)]
pub enum DualityError {
    #[error("zero-error relation applied to an outcome with error probability {0:e}")]
    NonZeroError(f64),
    #[error(transparent)]
    Quantum(#[from] QuantumError),
}

pub type Result<T, E = DualityError> = std::result::Result<T, E>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Relation {
    /// `C + D <= 1` for zero-error strategies.
    Usd,
    /// `(1-P_f) H2(P_e/(1-P_f)) + P_e log(N-1) + P_f log N >= C_rel`.
    ErrorMarginEntropic,
    /// The entropic relation divided by `log N`, compared against `C`.
    ErrorMarginDuality,
    /// `C + D <= 1 + (1-P_f)/log N * H2(P_e/(1-P_f))`.
    Simplified,
}

impl Relation {
    pub const ALL: [Relation; 4] = [
        Relation::Usd,
        Relation::ErrorMarginEntropic,
        Relation::ErrorMarginDuality,
        Relation::Simplified,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Relation::Usd => "usd",
            Relation::ErrorMarginEntropic => "error-margin-entropic",
            Relation::ErrorMarginDuality => "error-margin-duality",
            Relation::Simplified => "simplified",
        }
    }
}

impl std::fmt::Display for Relation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DualityReport {
    pub coherence_c: f64,
    pub distinguishability_d: f64,
    pub bound_lhs: f64,
    pub bound_rhs: f64,
    pub slack: f64,
    pub relation: Relation,
    pub satisfied: bool,
}

impl DualityReport {
    fn new(relation: Relation, c: f64, d: f64, lhs: f64, rhs: f64, slack: f64) -> Self {
        Self {
            coherence_c: c.clamp(0.0, 1.0),
            distinguishability_d: d.clamp(0.0, 1.0),
            bound_lhs: lhs,
            bound_rhs: rhs,
            slack,
            relation,
            satisfied: slack >= -SATISFIED_TOL,
        }
    }
}

/// Binary entropy in bits with `H2(0) = H2(1) = 0`.
pub fn h2(x: f64) -> f64 {
    if x <= 0.0 || x >= 1.0 {
        return 0.0;
    }
    -x * x.log2() - (1.0 - x) * (1.0 - x).log2()
}

/// `(1-P_f) H2(P_e/(1-P_f))`, zero in the `P_f -> 1` limit.
fn error_term(outcome: &DiscriminationOutcome) -> f64 {
    let rest = 1.0 - outcome.p_failure;
    if rest <= 0.0 {
        return 0.0;
    }
    rest * h2((outcome.p_error / rest).min(1.0))
}

fn log2_n(cfg: &InterferometerConfig) -> f64 {
    (cfg.n_paths() as f64).log2()
}

fn normalized(cfg: &InterferometerConfig, c_rel: f64) -> f64 {
    (c_rel / log2_n(cfg)).clamp(0.0, 1.0)
}

/// `C + D <= 1` for a zero-error outcome; slack `1 - C - D`.
pub fn check_usd_duality(cfg: &InterferometerConfig, outcome: &DiscriminationOutcome) -> Result<DualityReport> {
    if outcome.p_error.abs() > ZERO_ERROR_TOL {
        return Err(DualityError::NonZeroError(outcome.p_error));
    }
    let c = normalized(cfg, coherence_rel_ent(cfg)?);
    let d = outcome.p_success;
    Ok(DualityReport::new(Relation::Usd, c, d, c + d, 1.0, 1.0 - c - d))
}

/// Entropic error-margin bound in bits; slack `lhs - C_rel`.
pub fn check_error_margin_bound(cfg: &InterferometerConfig, outcome: &DiscriminationOutcome) -> Result<DualityReport> {
    let c_rel = coherence_rel_ent(cfg)?;
    let lhs = entropic_lhs(cfg, outcome);
    Ok(DualityReport::new(
        Relation::ErrorMarginEntropic,
        normalized(cfg, c_rel),
        outcome.p_success,
        lhs,
        c_rel,
        lhs - c_rel,
    ))
}

/// Entropic bound divided by `log N`; slack `lhs / log N - C`.
pub fn check_error_margin_duality(cfg: &InterferometerConfig, outcome: &DiscriminationOutcome) -> Result<DualityReport> {
    let c = normalized(cfg, coherence_rel_ent(cfg)?);
    let lhs = entropic_lhs(cfg, outcome) / log2_n(cfg);
    Ok(DualityReport::new(Relation::ErrorMarginDuality, c, outcome.p_success, lhs, c, lhs - c))
}

/// `C + D <= 1 + (1-P_f)/log N * H2(P_e/(1-P_f))`; slack `rhs - lhs`.
pub fn check_simplified_bound(cfg: &InterferometerConfig, outcome: &DiscriminationOutcome) -> Result<DualityReport> {
    let c = normalized(cfg, coherence_rel_ent(cfg)?);
    let d = outcome.p_success;
    let rhs = 1.0 + error_term(outcome) / log2_n(cfg);
    Ok(DualityReport::new(Relation::Simplified, c, d, c + d, rhs, rhs - c - d))
}

/// Left-hand side of the entropic error-margin bound, in bits.
pub fn entropic_lhs(cfg: &InterferometerConfig, outcome: &DiscriminationOutcome) -> f64 {
    let n = cfg.n_paths() as f64;
    error_term(outcome) + outcome.p_error * (n - 1.0).log2() + outcome.p_failure * n.log2()
}

/// Every applicable relation; the zero-error one only when `P_e` is zero.
pub fn check_all(cfg: &InterferometerConfig, outcome: &DiscriminationOutcome) -> Result<Vec<DualityReport>> {
    let mut out = Vec::with_capacity(4);
    if outcome.p_error.abs() <= ZERO_ERROR_TOL {
        out.push(check_usd_duality(cfg, outcome)?);
    }
    out.push(check_error_margin_bound(cfg, outcome)?);
    out.push(check_error_margin_duality(cfg, outcome)?);
    out.push(check_simplified_bound(cfg, outcome)?);
    Ok(out)
}
