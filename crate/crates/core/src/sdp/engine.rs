//! Primal-dual interior-point core for block-diagonal Hermitian SDPs in standard form
//!
//! ```text
//!   min  Σ_k <C_k, X_k>   s.t.  Σ_k <A_ik, X_k> = b_i,   X_k ⪰ 0
//!   max  b·y              s.t.  C_k - Σ_i y_i A_ik = Z_k ⪰ 0
//! ```
//!
//! Search directions use Nesterov-Todd scaling with a Mehrotra
//! predictor-corrector. Per block the scaling `T` satisfies
//! `T^-1 X T^-H = T^H Z T = Λ` (diagonal), obtained from Cholesky factors of
//! `X` and `Z` plus one eigendecomposition. Constraint matrices are sparse,
//! which keeps the Schur complement assembly at `O(m^2)` per block.

use num_complex::Complex64;

use crate::matlin::{
    cholesky, eig_hermitian, lower_triangular_inverse, HermitianMatrix, LinalgError, Matrix,
};

/// Sparse Hermitian matrix restricted to one block; both triangles are listed.
#[derive(Clone, Debug)]
pub(crate) struct BlockTerm {
    pub block: usize,
    pub entries: Vec<(usize, usize, Complex64)>,
}

#[derive(Clone, Debug, Default)]
pub(crate) struct Constraint {
    pub terms: Vec<BlockTerm>,
}

#[derive(Clone, Debug)]
pub(crate) struct StandardForm {
    pub dims: Vec<usize>,
    pub cost: Vec<HermitianMatrix>,
    pub constraints: Vec<Constraint>,
    pub rhs: Vec<f64>,
}

#[derive(Clone, Debug)]
pub(crate) struct Iterate {
    pub x: Vec<HermitianMatrix>,
    pub y: Vec<f64>,
    pub z: Vec<HermitianMatrix>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum EngineStatus {
    Converged,
    MaxIterations,
    DualDiverged,
}

#[derive(Clone, Debug)]
pub(crate) struct EngineResult {
    pub iterate: Iterate,
    pub status: EngineStatus,
    pub iterations: usize,
    pub primal_objective: f64,
    pub dual_objective: f64,
    pub primal_infeasibility: f64,
    pub dual_infeasibility: f64,
    pub complementarity: f64,
}

#[derive(Debug)]
pub(crate) struct Breakdown {
    pub iteration: usize,
    pub cause: LinalgError,
}

const STEP_FRACTION: f64 = 0.98;
const DIVERGENCE_LIMIT: f64 = 1e12;

struct Scaling {
    /// `W = T T^H`.
    w: Matrix,
    t: Matrix,
    t_inv: Matrix,
    lambda: Vec<f64>,
}

impl StandardForm {
    pub fn n_constraints(&self) -> usize {
        self.constraints.len()
    }

    /// Barrier parameter normalizer: total block order.
    fn order(&self) -> f64 {
        self.dims.iter().sum::<usize>() as f64
    }

    fn apply_a(&self, x: &[HermitianMatrix]) -> Vec<f64> {
        self.constraints
            .iter()
            .map(|c| {
                c.terms
                    .iter()
                    .map(|t| {
                        let xb = &x[t.block];
                        t.entries.iter().map(|&(r, s, v)| (v.conj() * xb[(r, s)]).re).sum::<f64>()
                    })
                    .sum()
            })
            .collect()
    }

    fn apply_a_adjoint(&self, y: &[f64]) -> Vec<Matrix> {
        let mut out: Vec<Matrix> = self.dims.iter().map(|&d| Matrix::zeros(d, d)).collect();
        for (c, &yi) in self.constraints.iter().zip(y) {
            if yi == 0.0 {
                continue;
            }
            for t in &c.terms {
                let m = &mut out[t.block];
                for &(r, s, v) in &t.entries {
                    m[(r, s)] += v * yi;
                }
            }
        }
        out
    }

    fn objective(&self, x: &[HermitianMatrix]) -> f64 {
        self.cost.iter().zip(x).map(|(c, x)| c.inner(x)).sum()
    }

    /// `M_ij = Σ_k <A_ik, W_k A_jk W_k>`.
    fn schur(&self, scalings: &[Scaling]) -> Vec<f64> {
        let m = self.n_constraints();
        let mut out = vec![0.0; m * m];
        let mut by_block: Vec<Vec<(usize, &[(usize, usize, Complex64)])>> = vec![Vec::new(); self.dims.len()];
        for (i, c) in self.constraints.iter().enumerate() {
            for t in &c.terms {
                by_block[t.block].push((i, &t.entries));
            }
        }
        for (k, terms) in by_block.iter().enumerate() {
            let w = &scalings[k].w;
            for (a, &(i, ei)) in terms.iter().enumerate() {
                for &(j, ej) in &terms[a..] {
                    let mut acc = Complex64::new(0.0, 0.0);
                    for &(p, q, va) in ei {
                        let cva = va.conj();
                        for &(r, s, vb) in ej {
                            acc += cva * w[(p, r)] * vb * w[(s, q)];
                        }
                    }
                    let (lo, hi) = if i <= j { (i, j) } else { (j, i) };
                    out[lo * m + hi] += acc.re;
                }
            }
        }
        for i in 0..m {
            for j in 0..i {
                out[i * m + j] = out[j * m + i];
            }
        }
        out
    }
}

fn nt_scaling(x: &HermitianMatrix, z: &HermitianMatrix) -> Result<Scaling, LinalgError> {
    let lx = cholesky(x)?;
    let lz = cholesky(z)?;
    // L_x^H Z L_x = (L_z^H L_x)^H (L_z^H L_x) = Q diag(σ²) Q^H
    let b = &lz.adjoint() * &lx;
    let eig = eig_hermitian(&HermitianMatrix::symmetrized(&(&b.adjoint() * &b)))?;
    let n = x.dim();
    let mut lambda = Vec::with_capacity(n);
    for &l in &eig.eigenvalues {
        if !(l > 0.0) {
            return Err(LinalgError::NotPositiveDefinite { pivot: 0, value: l });
        }
        lambda.push(l.sqrt());
    }
    let q = &eig.eigenvectors;
    // T = L_x Q Σ^{-1/2},  T^{-1} = Σ^{1/2} Q^H L_x^{-1}
    let lq = &lx * q;
    let t = Matrix::from_fn(n, n, |i, j| lq[(i, j)] / lambda[j].sqrt());
    let qh_linv = &q.adjoint() * &lower_triangular_inverse(&lx);
    let t_inv = Matrix::from_fn(n, n, |i, j| qh_linv[(i, j)] * lambda[i].sqrt());
    let w = &t * &t.adjoint();
    Ok(Scaling { w, t, t_inv, lambda })
}

/// Largest `α` keeping `Λ + α D ⪰ 0` for a diagonal `Λ` (infinite if unbounded).
fn max_step(lambda: &[f64], d: &Matrix) -> Result<f64, LinalgError> {
    let n = lambda.len();
    let scaled = Matrix::from_fn(n, n, |i, j| d[(i, j)] / (lambda[i] * lambda[j]).sqrt());
    let lmin = eig_hermitian(&HermitianMatrix::symmetrized(&scaled))?.min_eigenvalue();
    Ok(if lmin >= 0.0 { f64::INFINITY } else { -1.0 / lmin })
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// In-place real Cholesky of a dense symmetric matrix; returns `false` if not PD.
fn cholesky_real(a: &mut [f64], n: usize) -> bool {
    for j in 0..n {
        let mut d = a[j * n + j];
        for k in 0..j {
            d -= a[j * n + k] * a[j * n + k];
        }
        if !(d > 0.0) {
            return false;
        }
        let d = d.sqrt();
        a[j * n + j] = d;
        for i in j + 1..n {
            let mut s = a[i * n + j];
            for k in 0..j {
                s -= a[i * n + k] * a[j * n + k];
            }
            a[i * n + j] = s / d;
        }
    }
    true
}

fn cholesky_solve(l: &[f64], n: usize, b: &[f64]) -> Vec<f64> {
    let mut y = b.to_vec();
    for i in 0..n {
        let mut s = y[i];
        for k in 0..i {
            s -= l[i * n + k] * y[k];
        }
        y[i] = s / l[i * n + i];
    }
    for i in (0..n).rev() {
        let mut s = y[i];
        for k in i + 1..n {
            s -= l[k * n + i] * y[k];
        }
        y[i] = s / l[i * n + i];
    }
    y
}

struct Direction {
    dx: Vec<Matrix>,
    dy: Vec<f64>,
    dz: Vec<Matrix>,
}

pub(crate) struct Engine<'a> {
    problem: &'a StandardForm,
    tol: f64,
    max_iter: usize,
    verbose: bool,
}

impl<'a> Engine<'a> {
    pub fn new(problem: &'a StandardForm, tol: f64, max_iter: usize, verbose: bool) -> Self {
        Self {
            problem,
            tol,
            max_iter,
            verbose,
        }
    }

    pub fn run(&self, start: Iterate) -> Result<EngineResult, Breakdown> {
        let p = self.problem;
        let m = p.n_constraints();
        let nu = p.order();
        let b_norm = norm(&p.rhs);
        let c_norm = p.cost.iter().map(|c| c.as_matrix().frobenius_norm().powi(2)).sum::<f64>().sqrt();

        let mut it = start;
        let mut iterations = 0;
        loop {
            let ax = p.apply_a(&it.x);
            let rp: Vec<f64> = p.rhs.iter().zip(&ax).map(|(b, a)| b - a).collect();
            let aty = p.apply_a_adjoint(&it.y);
            let rd: Vec<Matrix> = (0..p.dims.len())
                .map(|k| &(p.cost[k].as_matrix() - it.z[k].as_matrix()) - &aty[k])
                .collect();
            let pobj = p.objective(&it.x);
            let dobj = dot(&p.rhs, &it.y);
            let xz: f64 = it.x.iter().zip(&it.z).map(|(x, z)| x.inner(z)).sum();
            let mu = xz / nu;
            let pinf = norm(&rp) / (1.0 + b_norm);
            let dinf = rd.iter().map(|r| r.frobenius_norm().powi(2)).sum::<f64>().sqrt() / (1.0 + c_norm);
            let gap = (pobj - dobj).abs();

            let status = if pinf <= self.tol && dinf <= self.tol && gap <= self.tol && xz <= self.tol {
                Some(EngineStatus::Converged)
            } else if norm(&it.y) > DIVERGENCE_LIMIT {
                Some(EngineStatus::DualDiverged)
            } else if iterations >= self.max_iter {
                Some(EngineStatus::MaxIterations)
            } else {
                None
            };
            if self.verbose {
                log::info!(
                    "iter {iterations:3} pobj {pobj:+.10e} dobj {dobj:+.10e} pinf {pinf:.2e} dinf {dinf:.2e} mu {mu:.2e}"
                );
            } else {
                log::trace!("iter {iterations:3} pobj {pobj:+.10e} dobj {dobj:+.10e} pinf {pinf:.2e} dinf {dinf:.2e}");
            }
            if let Some(status) = status {
                return Ok(EngineResult {
                    iterate: it,
                    status,
                    iterations,
                    primal_objective: pobj,
                    dual_objective: dobj,
                    primal_infeasibility: pinf,
                    dual_infeasibility: dinf,
                    complementarity: xz,
                });
            }

            let breakdown = |cause| Breakdown {
                iteration: iterations,
                cause,
            };
            let scalings: Vec<Scaling> = it
                .x
                .iter()
                .zip(&it.z)
                .map(|(x, z)| nt_scaling(x, z))
                .collect::<Result<_, _>>()
                .map_err(breakdown)?;
            let mut schur = p.schur(&scalings);
            let diag_max = (0..m).map(|i| schur[i * m + i]).fold(0.0, f64::max);
            let mut factored = schur.clone();
            let mut ok = cholesky_real(&mut factored, m);
            let mut shift = 1e-14 * diag_max.max(1e-300);
            while !ok && shift < 1e-6 * diag_max.max(1.0) {
                factored.copy_from_slice(&schur);
                for i in 0..m {
                    factored[i * m + i] += shift;
                }
                ok = cholesky_real(&mut factored, m);
                shift *= 100.0;
            }
            if !ok {
                return Err(breakdown(LinalgError::NotPositiveDefinite { pivot: 0, value: 0.0 }));
            }
            schur.clear();

            let solve_dir = |rx: &[Matrix]| -> Direction {
                // ΔX + W ΔZ W = R_x,  ΔZ = R_d - A*(Δy),  A(ΔX) = r_p
                let v: Vec<HermitianMatrix> = (0..p.dims.len())
                    .map(|k| {
                        let w = &scalings[k].w;
                        HermitianMatrix::symmetrized(&(&rx[k] - &(&(w * &rd[k]) * w)))
                    })
                    .collect();
                let av = p.apply_a(&v);
                let rhs: Vec<f64> = rp.iter().zip(&av).map(|(r, a)| r - a).collect();
                let dy = cholesky_solve(&factored, m, &rhs);
                let atdy = p.apply_a_adjoint(&dy);
                let dz: Vec<Matrix> = (0..p.dims.len())
                    .map(|k| HermitianMatrix::symmetrized(&(&rd[k] - &atdy[k])).into_matrix())
                    .collect();
                let dx: Vec<Matrix> = (0..p.dims.len())
                    .map(|k| {
                        let w = &scalings[k].w;
                        HermitianMatrix::symmetrized(&(&rx[k] - &(&(w * &dz[k]) * w))).into_matrix()
                    })
                    .collect();
                Direction { dx, dy, dz }
            };
            let scaled = |dir: &Direction| -> (Vec<Matrix>, Vec<Matrix>) {
                let dxt = (0..p.dims.len())
                    .map(|k| {
                        let s = &scalings[k];
                        &(&s.t_inv * &dir.dx[k]) * &s.t_inv.adjoint()
                    })
                    .collect();
                let dzt = (0..p.dims.len())
                    .map(|k| {
                        let s = &scalings[k];
                        &(&s.t.adjoint() * &dir.dz[k]) * &s.t
                    })
                    .collect();
                (dxt, dzt)
            };
            let steps = |dxt: &[Matrix], dzt: &[Matrix]| -> Result<(f64, f64), LinalgError> {
                let mut ap = f64::INFINITY;
                let mut ad = f64::INFINITY;
                for k in 0..p.dims.len() {
                    ap = ap.min(max_step(&scalings[k].lambda, &dxt[k])?);
                    ad = ad.min(max_step(&scalings[k].lambda, &dzt[k])?);
                }
                Ok((ap, ad))
            };

            // predictor
            let rx_aff: Vec<Matrix> = it.x.iter().map(|x| x.as_matrix().scale(-1.0)).collect();
            let aff = solve_dir(&rx_aff);
            let (dxt_aff, dzt_aff) = scaled(&aff);
            let (ap, ad) = steps(&dxt_aff, &dzt_aff).map_err(breakdown)?;
            let (ap, ad) = (ap.min(1.0), ad.min(1.0));
            let mut xz_aff = 0.0;
            for k in 0..p.dims.len() {
                let lam = &scalings[k].lambda;
                let n = lam.len();
                let xa = Matrix::from_fn(n, n, |i, j| {
                    let d = if i == j { Complex64::new(lam[i], 0.0) } else { Complex64::new(0.0, 0.0) };
                    d + dxt_aff[k][(i, j)] * ap
                });
                let za = Matrix::from_fn(n, n, |i, j| {
                    let d = if i == j { Complex64::new(lam[i], 0.0) } else { Complex64::new(0.0, 0.0) };
                    d + dzt_aff[k][(i, j)] * ad
                });
                xz_aff += xa.inner(&za);
            }
            let sigma = ((xz_aff.max(0.0) / xz).powi(3)).clamp(0.0, 1.0);

            // corrector
            let rx_cc: Vec<Matrix> = (0..p.dims.len())
                .map(|k| {
                    let s = &scalings[k];
                    let n = s.lambda.len();
                    let dx = &dxt_aff[k];
                    let dz = &dzt_aff[k];
                    let prod = &(dx * dz) + &(dz * dx);
                    let u = Matrix::from_fn(n, n, |i, j| {
                        let mut r = prod[(i, j)] * -0.5;
                        if i == j {
                            r += sigma * mu - s.lambda[i] * s.lambda[i];
                        }
                        r * (2.0 / (s.lambda[i] + s.lambda[j]))
                    });
                    &(&s.t * &u) * &s.t.adjoint()
                })
                .collect();
            let dir = solve_dir(&rx_cc);
            let (dxt, dzt) = scaled(&dir);
            let (ap, ad) = steps(&dxt, &dzt).map_err(breakdown)?;
            let ap = (STEP_FRACTION * ap).min(1.0);
            let ad = (STEP_FRACTION * ad).min(1.0);

            for k in 0..p.dims.len() {
                it.x[k] = HermitianMatrix::symmetrized(&(it.x[k].as_matrix() + &dir.dx[k].scale(ap)));
                it.z[k] = HermitianMatrix::symmetrized(&(it.z[k].as_matrix() + &dir.dz[k].scale(ad)));
            }
            for (y, d) in it.y.iter_mut().zip(&dir.dy) {
                *y += ad * d;
            }
            iterations += 1;
        }
    }
}
