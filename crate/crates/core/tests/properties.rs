mod common;

use entropic_duality::discrimination::{
    asymmetric_usd, random_config, sdp_outcome, symmetric_error_margin, usd_failure_lambda_min, AsymmetricConfig,
    SymmetricConfig,
};
use entropic_duality::duality::check_all;
use entropic_duality::matlin::{eig_hermitian, factor_gram, gram_of, min_eigenvalue, ComplexScalar, HermitianMatrix, Matrix};
use entropic_duality::quantum::{
    coherence_rel_ent, detector_density_matrix, mutual_information, normalized_coherence, path_density_matrix,
    usd_channel_statistics, usd_mutual_information, von_neumann_entropy, InterferometerConfig, ProbabilityVector,
};
use entropic_duality::sdp::SolverOptions;
use proptest::prelude::*;

fn hermitian(max_n: usize) -> impl Strategy<Value = HermitianMatrix> {
    (2..=max_n).prop_flat_map(|n| {
        prop::collection::vec(-1.0f64..1.0, n * n * 2).prop_map(move |v| {
            let m = Matrix::from_fn(n, n, |i, j| ComplexScalar::new(v[2 * (i * n + j)], v[2 * (i * n + j) + 1]));
            HermitianMatrix::symmetrized(&m)
        })
    })
}

fn config(max_n: usize) -> impl Strategy<Value = InterferometerConfig> {
    (2..=max_n, 1..=4usize, any::<u64>()).prop_map(|(n, extra, seed)| random_config(n, n + extra - 1, seed).unwrap())
}

fn priors(n: usize) -> impl Strategy<Value = ProbabilityVector> {
    prop::collection::vec(0.01f64..1.0, n).prop_map(|w| {
        let s: f64 = w.iter().sum();
        ProbabilityVector::new(w.iter().map(|x| x / s).collect()).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn eigendecomposition_reconstructs(a in hermitian(16)) {
        let eig = eig_hermitian(&a).unwrap();
        let err = (eig.reconstruct().as_matrix() - a.as_matrix()).max_abs();
        prop_assert!(err <= 1e-9 * a.max_abs().max(1.0), "reconstruction error {err:e}");
        let sum: f64 = eig.eigenvalues.iter().sum();
        prop_assert!((sum - a.trace()).abs() <= 1e-10 * (a.dim() as f64));
        prop_assert!(eig.eigenvalues.windows(2).all(|w| w[0] >= w[1]));
        let v = &eig.eigenvectors;
        let gram = &v.adjoint() * v;
        prop_assert!((&gram - &Matrix::identity(a.dim())).max_abs() < 1e-10);
    }

    #[test]
    fn eigenvalues_match_bisection(a in hermitian(9)) {
        let jacobi = eig_hermitian(&a).unwrap().eigenvalues;
        let oracle = common::hermitian_eigenvalues(&a);
        for (x, y) in jacobi.iter().zip(&oracle) {
            prop_assert!((x - y).abs() < 1e-9, "{x} vs {y}");
        }
    }

    #[test]
    fn gram_factorization_round_trips(cfg in config(8)) {
        let vecs = factor_gram(cfg.gram()).unwrap();
        let back = gram_of(&vecs);
        prop_assert!((back.as_matrix() - cfg.gram().as_matrix()).max_abs() < 1e-10);
    }

    #[test]
    fn purification_entropies_agree(cfg in config(6)) {
        let sp = von_neumann_entropy(&path_density_matrix(&cfg)).unwrap();
        let sd = von_neumann_entropy(&detector_density_matrix(&cfg).unwrap()).unwrap();
        prop_assert!((sp - sd).abs() < 1e-9, "{sp} vs {sd}");
    }

    #[test]
    fn coherence_is_bounded(cfg in config(8)) {
        let c = normalized_coherence(&cfg).unwrap();
        prop_assert!((0.0..=1.0).contains(&c));
        prop_assert!(coherence_rel_ent(&cfg).unwrap() <= cfg.priors().entropy() + 1e-12);
    }

    #[test]
    fn usd_information_identity(
        (p, success) in (2..7usize).prop_flat_map(|n| (priors(n), prop::collection::vec(0.0f64..=1.0, n)))
    ) {
        let stats = usd_channel_statistics(&p, &success).unwrap();
        let direct = mutual_information(&stats);
        let closed = usd_mutual_information(&p, &stats);
        prop_assert!((direct - closed).abs() < 1e-10, "{direct} vs {closed}");
    }

    #[test]
    fn random_configs_are_reproducible(n in 2..8usize, d in 1..8usize, seed in any::<u64>()) {
        prop_assert_eq!(random_config(n, d, seed).unwrap(), random_config(n, d, seed).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn failure_decreases_with_budget(cfg in config(5), mut budgets in prop::collection::vec(0.0f64..0.5, 3)) {
        budgets.insert(0, 0.0);
        budgets.sort_by(f64::total_cmp);
        let opts = SolverOptions::default();
        let pf: Vec<f64> = budgets.iter().map(|&b| sdp_outcome(&cfg, b, &opts).unwrap().p_failure).collect();
        prop_assert!(pf.windows(2).all(|w| w[1] <= w[0] + 1e-6), "{budgets:?} -> {pf:?}");
    }

    #[test]
    fn symmetric_closed_form_matches_sdp(n in 2..7usize, c in 0.0f64..0.95, frac in 0.0f64..=1.0) {
        let cfg = SymmetricConfig::new(n, c).unwrap();
        let pe = frac * cfg.min_error_probability();
        let analytic = symmetric_error_margin(&cfg, pe).unwrap();
        let numeric = sdp_outcome(&cfg.to_config(), pe, &SolverOptions::default()).unwrap();
        prop_assert!((analytic.p_failure - numeric.p_failure).abs() < 1e-5,
            "N={n} c={c} Pe={pe}: {} vs {}", analytic.p_failure, numeric.p_failure);
    }

    #[test]
    fn asymmetric_closed_form_matches_sdp(n in 2..9usize, frac in 0.0f64..=1.0) {
        let p = 1.0 / n as f64 + frac * (1.0 - 1.0 / n as f64);
        let cfg = AsymmetricConfig::new(n, p).unwrap();
        let numeric = sdp_outcome(&cfg.to_config(), 0.0, &SolverOptions::default()).unwrap();
        prop_assert!((asymmetric_usd(&cfg).unwrap().p_failure - numeric.p_failure).abs() < 1e-5);
    }

    #[test]
    fn two_state_sdp_matches_direct_search(p1 in 0.05f64..0.95, s in 0.0f64..0.99) {
        let g = Matrix::from_fn(2, 2, |i, j| ComplexScalar::new(if i == j { 1.0 } else { s }, 0.0));
        let cfg = InterferometerConfig::new(
            ProbabilityVector::new(vec![p1, 1.0 - p1]).unwrap(),
            HermitianMatrix::new(g).unwrap(),
        ).unwrap();
        let numeric = sdp_outcome(&cfg, 0.0, &SolverOptions::default()).unwrap();
        let searched = common::two_state_usd_search(p1, 1.0 - p1, s);
        prop_assert!((numeric.p_failure - searched).abs() < 1e-5, "{} vs {searched}", numeric.p_failure);
    }

    #[test]
    fn lambda_min_is_an_upper_bound(n in 2..6usize, seed in any::<u64>()) {
        let states = random_config(n, n, seed).unwrap();
        let cfg = InterferometerConfig::new(ProbabilityVector::uniform(n), states.gram().clone()).unwrap();
        prop_assume!(min_eigenvalue(cfg.gram()).unwrap() > 1e-6);
        let bound = usd_failure_lambda_min(&cfg).unwrap().p_failure;
        let optimum = sdp_outcome(&cfg, 0.0, &SolverOptions::default()).unwrap().p_failure;
        prop_assert!(optimum <= bound + 1e-6, "{optimum} > {bound}");
    }

    #[test]
    fn duality_relations_hold(cfg in config(5), budget in prop::sample::select(vec![0.0, 0.01, 0.05, 0.1, 0.3, 0.6])) {
        let out = sdp_outcome(&cfg, budget, &SolverOptions::default()).unwrap();
        for r in check_all(&cfg, &out).unwrap() {
            prop_assert!(r.satisfied, "{:?}", r);
        }
        let lm = InterferometerConfig::new(ProbabilityVector::uniform(cfg.n_paths()), cfg.gram().clone()).unwrap();
        if let Ok(out) = usd_failure_lambda_min(&lm) {
            for r in check_all(&lm, &out).unwrap() {
                prop_assert!(r.satisfied, "{:?}", r);
            }
        }
    }
}
