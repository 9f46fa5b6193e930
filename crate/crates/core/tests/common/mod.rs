//! Oracles that share no code with the library kernels.
#![allow(dead_code)]

use entropic_duality::matlin::{ComplexScalar, HermitianMatrix, Matrix};

/// Number of eigenvalues of the real symmetric `a` below `shift`, by Sylvester inertia of `LDL^T`.
fn count_below(a: &[Vec<f64>], shift: f64) -> usize {
    let n = a.len();
    let mut l = vec![vec![0.0; n]; n];
    let mut d = vec![0.0; n];
    let mut negatives = 0;
    for j in 0..n {
        let mut v = a[j][j] - shift;
        for k in 0..j {
            v -= l[j][k] * l[j][k] * d[k];
        }
        if v == 0.0 {
            v = -f64::EPSILON * (1.0 + shift.abs());
        }
        d[j] = v;
        if v < 0.0 {
            negatives += 1;
        }
        for i in j + 1..n {
            let mut w = a[i][j];
            for k in 0..j {
                w -= l[i][k] * l[j][k] * d[k];
            }
            l[i][j] = w / v;
        }
    }
    negatives
}

/// Ascending eigenvalues of a real symmetric matrix by bisection.
pub fn symmetric_eigenvalues(a: &[Vec<f64>]) -> Vec<f64> {
    let n = a.len();
    let radius = a
        .iter()
        .map(|r| r.iter().map(|v| v.abs()).sum::<f64>())
        .fold(0.0, f64::max)
        + 1.0;
    (0..n)
        .map(|k| {
            let (mut lo, mut hi) = (-radius, radius);
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if count_below(a, mid) > k {
                    hi = mid;
                } else {
                    lo = mid;
                }
                if hi - lo < 1e-15 * radius {
                    break;
                }
            }
            0.5 * (lo + hi)
        })
        .collect()
}

/// Descending eigenvalues of a Hermitian matrix via its real `2n x 2n` embedding.
pub fn hermitian_eigenvalues(h: &HermitianMatrix) -> Vec<f64> {
    let n = h.dim();
    let mut big = vec![vec![0.0; 2 * n]; 2 * n];
    for i in 0..n {
        for j in 0..n {
            let z = h[(i, j)];
            big[i][j] = z.re;
            big[i + n][j + n] = z.re;
            big[i][j + n] = -z.im;
            big[i + n][j] = z.im;
        }
    }
    // Each eigenvalue of the embedding appears twice.
    let mut all = symmetric_eigenvalues(&big);
    all.reverse();
    all.into_iter().step_by(2).collect()
}

/// Shannon entropy in bits, plain left-to-right sum.
pub fn entropy_bits(p: &[f64]) -> f64 {
    p.iter().filter(|&&x| x > 0.0).map(|&x| -x * x.log2()).sum()
}

/// Optimal two-state zero-error failure probability by direct search over
/// `Π1 = α|η2⊥><η2⊥|`, `Π2 = β|η1⊥><η1⊥|` with `1 - Π1 - Π2 ⪰ 0`.
pub fn two_state_usd_search(p1: f64, p2: f64, s: f64) -> f64 {
    let t = (1.0 - s * s).sqrt();
    let e2perp = [t, -s];
    let e1perp = [0.0, 1.0];
    let feasible = |a: f64, b: f64| {
        let m = |i: usize, j: usize| {
            let id = if i == j { 1.0 } else { 0.0 };
            id - a * e2perp[i] * e2perp[j] - b * e1perp[i] * e1perp[j]
        };
        let tr = m(0, 0) + m(1, 1);
        let det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
        tr >= -1e-15 && det >= -1e-15
    };
    let beta_max = |a: f64| {
        if !feasible(a, 0.0) {
            return None;
        }
        let (mut lo, mut hi) = (0.0, 1.0);
        for _ in 0..100 {
            let mid = 0.5 * (lo + hi);
            if feasible(a, mid) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Some(lo)
    };
    let success = |a: f64| beta_max(a).map_or(f64::NEG_INFINITY, |b| (p1 * a + p2 * b) * t * t);
    // Success is concave in α on the convex feasible set.
    let (mut lo, mut hi) = (0.0, 1.0);
    for _ in 0..200 {
        let m1 = lo + (hi - lo) / 3.0;
        let m2 = hi - (hi - lo) / 3.0;
        if success(m1) < success(m2) {
            lo = m1;
        } else {
            hi = m2;
        }
    }
    let best = success(0.5 * (lo + hi)).max(success(0.0)).max(success(1.0));
    1.0 - best
}

/// Minimum-error probability of symmetric states from the square-root measurement,
/// `1 - (Σ_k sqrt(λ_k))² / N²` with `λ_k` the Gram eigenvalues.
pub fn symmetric_min_error(n: usize, c: f64) -> f64 {
    let g = HermitianMatrix::symmetrized(&Matrix::from_fn(n, n, |i, j| {
        ComplexScalar::new(if i == j { 1.0 } else { c }, 0.0)
    }));
    let s: f64 = hermitian_eigenvalues(&g).iter().map(|l| l.max(0.0).sqrt()).sum();
    1.0 - s * s / (n * n) as f64
}

/// Relative entropy of coherence (bits) of symmetric states via oracle eigenvalues of `G/N`.
pub fn symmetric_coherence_oracle(n: usize, c: f64) -> f64 {
    let g = HermitianMatrix::symmetrized(&Matrix::from_fn(n, n, |i, j| {
        ComplexScalar::new(if i == j { 1.0 } else { c }, 0.0)
    }));
    let ev: Vec<f64> = hermitian_eigenvalues(&g).iter().map(|l| (l / n as f64).max(0.0)).collect();
    (n as f64).log2() - entropy_bits(&ev)
}

/// Random Hermitian matrix with entries in `[-1, 1]` from a tiny LCG.
pub fn lcg_hermitian(n: usize, seed: u64) -> HermitianMatrix {
    let mut state = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
    let mut next = move || {
        state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        ((state >> 11) as f64 / (1u64 << 53) as f64) * 2.0 - 1.0
    };
    let mut m = Matrix::zeros(n, n);
    for i in 0..n {
        m[(i, i)] = ComplexScalar::new(next(), 0.0);
        for j in i + 1..n {
            let z = ComplexScalar::new(next(), next());
            m[(i, j)] = z;
            m[(j, i)] = z.conj();
        }
    }
    HermitianMatrix::new(m).expect("Hermitian by construction")
}
