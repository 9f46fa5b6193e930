//! Unambiguous discrimination of detector states with the SDP.
//!
//! Compares the numerical optimum with the closed forms for symmetric and
//! asymmetric families, then extracts the optimal measurement and prints its
//! joint outcome statistics.
//!
//! Run with `cargo run --release --example usd_sdp`.

use entropic_duality::discrimination::{asymmetric_usd, sdp_outcome, AsymmetricConfig, SymmetricConfig};
use entropic_duality::sdp::{build_problem, extract_povm, solve, SolverOptions};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let opts = SolverOptions::default();

    println!("symmetric states, P_f = c:");
    for (n, c) in [(2, 0.3), (4, 0.5), (8, 0.7), (16, 0.9)] {
        let cfg = SymmetricConfig::new(n, c)?.to_config();
        let out = sdp_outcome(&cfg, 0.0, &opts)?;
        println!("  N={n:>2} c={c:.1}  SDP P_f={:.8}", out.p_failure);
    }

    println!("asymmetric family, P_f = N(1-p)/(N-1):");
    for (n, p) in [(3, 0.5), (5, 0.6), (8, 0.9)] {
        let a = AsymmetricConfig::new(n, p)?;
        let numeric = sdp_outcome(&a.to_config(), 0.0, &opts)?;
        let exact = asymmetric_usd(&a)?;
        println!("  N={n} p={p:.1}  SDP {:.8}  closed form {:.8}", numeric.p_failure, exact.p_failure);
    }

    let cfg = SymmetricConfig::new(3, 0.4)?.to_config();
    let sol = solve(&build_problem(&cfg, 0.0)?, &opts)?;
    println!(
        "N=3 c=0.4: status {:?}, {} iterations, gap {:.1e}",
        sol.status,
        sol.iterations,
        sol.gap()
    );
    let povm = extract_povm(&sol, &cfg)?;
    let stats = povm.channel_statistics()?;
    println!("joint p(x, y) (last column = inconclusive):");
    for row in &stats.joint {
        let cells: Vec<String> = row.iter().map(|v| format!("{v:8.5}")).collect();
        println!("  {}", cells.join(" "));
    }
    Ok(())
}
