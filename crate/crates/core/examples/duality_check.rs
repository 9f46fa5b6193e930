//! Every duality relation for one random configuration across error budgets.
//!
//! Run with `cargo run --release --example duality_check -- [seed]`.

use entropic_duality::discrimination::{random_config, sdp_outcome};
use entropic_duality::duality::check_all;
use entropic_duality::sdp::SolverOptions;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let seed = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(2024u64);
    let cfg = random_config(4, 4, seed)?;
    println!("seed {seed}, priors {:?}", cfg.priors().values());
    for budget in [0.0, 0.01, 0.1, 0.3] {
        let out = sdp_outcome(&cfg, budget, &SolverOptions::default())?;
        println!(
            "P_e budget {budget:<4}  P_s={:.5} P_e={:.5} P_f={:.5}",
            out.p_success, out.p_error, out.p_failure
        );
        for r in check_all(&cfg, &out)? {
            println!(
                "    {:<22} C={:.4} D={:.4} lhs={:.5} rhs={:.5} slack={:+.5} {}",
                r.relation.name(),
                r.coherence_c,
                r.distinguishability_d,
                r.bound_lhs,
                r.bound_rhs,
                r.slack,
                if r.satisfied { "ok" } else { "VIOLATED" }
            );
        }
    }
    Ok(())
}
