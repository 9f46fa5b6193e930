//! Seeded parallel scan of all relations over a random ensemble.
//!
//! Each configuration draws its own seed from the master seed and its index,
//! so the summary does not depend on how rayon schedules the work.
//!
//! Run with `cargo run --release --example random_scan -- [ensemble] [seed]`.

use entropic_duality::cli::scan;
use entropic_duality::sdp::SolverOptions;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let ensemble: usize = args.next().map(|s| s.parse()).transpose()?.unwrap_or(200);
    let seed: u64 = args.next().map(|s| s.parse()).transpose()?.unwrap_or(7);
    let summary = scan(&[2, 3, 4], &[0.0, 0.01, 0.1, 0.3], ensemble, seed, &SolverOptions::default())?;
    println!(
        "{} solves, {} solver failures, {} violations",
        summary.solves, summary.solver_failures, summary.violations
    );
    for r in &summary.relations {
        println!(
            "  {:<22} checks {:>5}  violations {}  min slack {:.3e}",
            r.relation.name(),
            r.checks,
            r.violations,
            r.min_slack.unwrap_or(f64::NAN)
        );
    }
    if let Some(it) = &summary.iterations {
        println!("interior-point iterations: min {} mean {:.1} max {}", it.min, it.mean, it.max);
    }
    Ok(())
}
