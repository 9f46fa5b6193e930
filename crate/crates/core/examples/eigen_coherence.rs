//! Hermitian eigendecomposition and the entropies of a which-way configuration.
//!
//! Builds three detector states with complex overlaps, diagonalizes the path
//! density matrix with the cyclic Jacobi solver and reports `H(p)`, `S(ρ)` and
//! the relative entropy of coherence `C = H(p) - S(ρ)`.
//!
//! Run with `cargo run --example eigen_coherence`.

use entropic_duality::matlin::{eig_hermitian, ComplexScalar};
use entropic_duality::quantum::{
    coherence_rel_ent, normalized_coherence, path_density_matrix, von_neumann_entropy, InterferometerConfig,
    ProbabilityVector,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let states = vec![
        vec![ComplexScalar::new(1.0, 0.0), ComplexScalar::new(0.0, 0.0)],
        vec![ComplexScalar::new(s, 0.0), ComplexScalar::new(0.0, s)],
        vec![ComplexScalar::new(0.6, 0.0), ComplexScalar::new(-0.8, 0.0)],
    ];
    let priors = ProbabilityVector::new(vec![0.5, 0.3, 0.2])?;
    let cfg = InterferometerConfig::from_states(priors, &states)?;

    println!("Gram matrix <η_j|η_k>:");
    for i in 0..3 {
        let row: Vec<String> = (0..3).map(|j| format!("{:>16.4}", cfg.gram()[(i, j)])).collect();
        println!("  {}", row.join(" "));
    }

    let rho = path_density_matrix(&cfg);
    let eig = eig_hermitian(&rho)?;
    println!("eigenvalues of ρ_p: {:?}", eig.eigenvalues);
    let recon = (eig.reconstruct().as_matrix() - rho.as_matrix()).max_abs();
    println!("reconstruction error: {recon:.2e}");

    println!("H(p)          = {:.6} bits", cfg.priors().entropy());
    println!("S(ρ_p)        = {:.6} bits", von_neumann_entropy(&rho)?);
    println!("C_rel-ent     = {:.6} bits", coherence_rel_ent(&cfg)?);
    println!("C (normalized) = {:.6}", normalized_coherence(&cfg)?);
    Ok(())
}
