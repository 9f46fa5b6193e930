//! Trading errors for failures: the error-margin curve of symmetric states.
//!
//! Sweeps the error budget from 0 to the minimum-error probability and
//! prints the optimal failure probability from the SDP next to the closed
//! form `c - 2 sqrt((1-c) P_e/(N-1)) - N P_e/(N-1)`.
//!
//! Run with `cargo run --release --example error_margin`.

use entropic_duality::discrimination::{sdp_outcome, symmetric_error_margin, SymmetricConfig};
use entropic_duality::sdp::SolverOptions;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let (n, c) = (3, 0.4);
    let cfg = SymmetricConfig::new(n, c)?;
    let pe_min = cfg.min_error_probability();
    println!("N={n} c={c}: minimum-error probability {pe_min:.6}");
    println!("{:>10} {:>12} {:>12} {:>10}", "P_e", "P_f (SDP)", "P_f (exact)", "P_s");
    let opts = SolverOptions::default();
    for k in 0..=10 {
        let pe = pe_min * k as f64 / 10.0;
        let numeric = sdp_outcome(&cfg.to_config(), pe, &opts)?;
        let exact = symmetric_error_margin(&cfg, pe)?;
        println!(
            "{pe:>10.6} {:>12.8} {:>12.8} {:>10.6}",
            numeric.p_failure, exact.p_failure, numeric.p_success
        );
    }
    let over = symmetric_error_margin(&cfg, 0.2)?;
    println!(
        "budget 0.2 > P_e^min: P_f={} P_e={:.6} budget_exceeded={}",
        over.p_failure, over.p_error, over.budget_exceeded
    );
    Ok(())
}
