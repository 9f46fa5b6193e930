//! Mutual information of the optimal measurement against the Holevo bound.
//!
//! For zero-error strategies `I(X:Y) = H(p) - P_f H(q)`, where `q` is the
//! distribution of the sent state given an inconclusive outcome.
//!
//! Run with `cargo run --release --example holevo`.

use entropic_duality::discrimination::random_config;
use entropic_duality::quantum::{
    detector_density_matrix, mutual_information, usd_mutual_information, von_neumann_entropy,
};
use entropic_duality::sdp::{build_problem, extract_povm, solve, SolverOptions};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    println!("{:>4} {:>3} {:>8} {:>10} {:>10} {:>10}", "seed", "N", "P_e", "I(X:Y)", "closed", "S(ρ_d)");
    for seed in 0..6u64 {
        let n = 2 + (seed as usize) % 3;
        let cfg = random_config(n, n, seed)?;
        let holevo = von_neumann_entropy(&detector_density_matrix(&cfg)?)?;
        for budget in [0.0, 0.1] {
            let sol = solve(&build_problem(&cfg, budget)?, &SolverOptions::default())?;
            let stats = extract_povm(&sol, &cfg)?.channel_statistics()?;
            let info = mutual_information(&stats);
            let closed = if budget == 0.0 {
                format!("{:10.6}", usd_mutual_information(cfg.priors(), &stats))
            } else {
                format!("{:>10}", "-")
            };
            println!("{seed:>4} {n:>3} {budget:>8.2} {info:>10.6} {closed} {holevo:>10.6}");
        }
    }
    Ok(())
}
