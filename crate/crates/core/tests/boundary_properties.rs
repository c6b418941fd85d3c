use g2calib::boundary::{
    check_antilinear, perturbed_config, random_coassociative_config, split_coassociative, split_psi_positive, TOL,
};
use g2calib::sampling::{trial_rng, unit_vector};
use g2calib::symbol::{cross_matrix, v_cross_canonical, w_cross_canonical};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1_000))]

    #[test]
    fn coassociative_split_invariants(seed in any::<u64>(), s in -1.0f64..1.0, t in -1.0f64..1.0) {
        let mut rng = trial_rng(seed, 0);
        let cfg = random_coassociative_config(&mut rng);
        let split = split_coassociative(&cfg).unwrap();
        let inv = split.invariants();
        prop_assert!(inv.hold(TOL), "{inv:?}");

        let (a, b) = (cfg.project_nu(&unit_vector(&mut rng)), cfg.project_nu(&unit_vector(&mut rng)));
        prop_assert!((split.j(&split.j(&a)) + a).max_abs() <= 1e-9);
        prop_assert!((split.j(&a).dot(&split.j(&b)) - a.dot(&b)).abs() <= 1e-9);

        for m in &split.mux_frame {
            for n in cfg.f.frame() {
                prop_assert!(m.dot(n).abs() <= 1e-9);
            }
        }
        prop_assert!(check_antilinear(&split, &(cfg.v * s + cfg.w * t)).unwrap());
    }

    #[test]
    fn split_frame_reproduces_the_canonical_cross_matrices(seed in any::<u64>()) {
        let cfg = random_coassociative_config(&mut trial_rng(seed, 1));
        let split = split_coassociative(&cfg).unwrap();
        prop_assert!(cross_matrix(&cfg.v, &split).unwrap().max_abs_diff(&v_cross_canonical()) <= 1e-9);
        prop_assert!(cross_matrix(&cfg.w, &split).unwrap().max_abs_diff(&w_cross_canonical()) <= 1e-9);
    }

    #[test]
    fn psi_positive_split_invariants(seed in any::<u64>(), eps in 1e-4f64..0.2) {
        let mut rng = trial_rng(seed, 2);
        let base = random_coassociative_config(&mut rng);
        let cfg = perturbed_config(&mut rng, &base, eps);
        let (split, report) = split_psi_positive(&cfg, cfg.nx.as_ref().unwrap()).unwrap();
        prop_assert!(split.invariants().orthonormality <= TOL);
        prop_assert!(split.invariants().j_squared_plus_one <= TOL);
        prop_assert!(report.min_singular_value > 0.0);
        prop_assert!(report.mu_component_of_jb > 0.0);
    }

    #[test]
    fn coassociative_data_gives_z_zero(seed in any::<u64>()) {
        let mut rng = trial_rng(seed, 3);
        let cfg = random_coassociative_config(&mut rng);
        let split = split_coassociative(&cfg).unwrap();
        let (_, report) = split_psi_positive(&cfg, &split.nux_frame).unwrap();
        prop_assert!(report.z[0].abs() <= 1e-9 && report.z[1].abs() <= 1e-9, "{:?}", report.z);
    }
}
