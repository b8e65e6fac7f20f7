use proptest::prelude::*;

use simnitm::analysis::{bvp_residual, solve_noniterative, solve_with_policy, EtaPolicy};
use simnitm::ode::{integrate_ivp, IntegratorConfig, IvpState, OdeField};
use simnitm::problems::{Family, Sign, SimilarityProblem};
use simnitm::scaling::GroupExponents;

fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(f64::MIN_POSITIVE)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn group_action_round_trips(
        lambda in 1e-3f64..1e3,
        eta in 0.0f64..50.0,
        f in -10.0f64..10.0,
        df in -10.0f64..10.0,
        d2f in -10.0f64..10.0,
        gasification in any::<bool>(),
    ) {
        let g = if gasification { GroupExponents::GASIFICATION } else { GroupExponents::MOVING_WALL };
        let s = IvpState::new(eta, f, df, d2f);
        let back = g.to_star(&g.to_physical(&s, lambda), lambda);
        for (a, b) in [(back.eta, s.eta), (back.f, s.f), (back.df, s.df), (back.d2f, s.d2f)] {
            prop_assert!(rel_close(a, b, 1e-12), "{a} vs {b}");
        }
        let p = g.parameter_to_physical(g.parameter_to_physical(f, lambda), 1.0 / lambda);
        prop_assert!(rel_close(p, f, 1e-12));
    }

    #[test]
    fn gasification_wall_condition_holds(p_star in 0.0f64..3.0) {
        let p = SimilarityProblem::gasification(p_star);
        let sol = solve_with_policy(&p, &IntegratorConfig::default(), EtaPolicy::Auto).unwrap();
        prop_assert!((sol.f0 + sol.p_physical * sol.d2f0).abs() < 1e-9);
        prop_assert_eq!(sol.df0, 0.0);
        prop_assert!(bvp_residual(&sol, &p).passes(1e-5));
    }

    #[test]
    fn moving_wall_recovers_its_parameter(p_star in -3.0f64..20.0) {
        let p = SimilarityProblem::moving_wall(p_star, Sign::Plus);
        let sol = solve_with_policy(&p, &IntegratorConfig::default(), EtaPolicy::Auto).unwrap();
        prop_assert_eq!(sol.df0, sol.p_physical);
        prop_assert_eq!(sol.f0, 0.0);
        prop_assert!((sol.trajectory.df_terminal - (1.0 - sol.p_physical)).abs() < 1e-10);
        prop_assert!(sol.p_physical < 0.5);
        prop_assert!(bvp_residual(&sol, &p).passes(1e-5));
    }

    #[test]
    fn blasius_branch_curvature_decreases(p_star in 0.0f64..10.0) {
        let cfg = IntegratorConfig::with_tolerances(1e-10, 1e-300);
        let sol = solve_noniterative(&SimilarityProblem::moving_wall(p_star, Sign::Plus), &cfg, 10.0).unwrap();
        let s = &sol.star.samples;
        prop_assert!(s.iter().all(|x| x.d2f > 0.0));
        prop_assert!(s.windows(2).all(|w| w[1].d2f < w[0].d2f));
        prop_assert!(s.last().unwrap().d2f < 1e-6);
    }

    #[test]
    fn refinement_converges(d2f0 in 0.2f64..3.0, df0 in -0.5f64..2.0) {
        let y0 = IvpState::new(0.0, 0.0, df0, d2f0);
        for tol in [1e-7, 1e-9] {
            let run = |t: f64| {
                integrate_ivp(&OdeField::blasius(0.5), y0, 10.0, &IntegratorConfig::with_tolerances(t, t))
                    .unwrap()
                    .df_terminal
            };
            prop_assert!((run(tol) - run(tol / 2.0)).abs() < 10.0 * tol);
        }
    }
}

#[test]
fn truncation_boundary_does_not_matter_once_flat() {
    let cfg = IntegratorConfig::default();
    let field = OdeField::blasius(0.5);
    let y0 = IvpState::new(0.0, 0.0, 0.0, 1.0);
    let a = integrate_ivp(&field, y0, 10.0, &cfg).unwrap();
    let b = integrate_ivp(&field, y0, 15.0, &cfg).unwrap();
    assert!((a.df_terminal - b.df_terminal).abs() < cfg.plateau_tol);
}

#[test]
fn wall_suction_grows_with_transfer_number() {
    let cfg = IntegratorConfig::default();
    let f0: Vec<f64> = [0.0, 0.5, 1.0, 2.0, 4.0]
        .iter()
        .map(|&x| {
            solve_with_policy(&SimilarityProblem::gasification(x), &cfg, EtaPolicy::Auto)
                .unwrap()
                .f0
        })
        .collect();
    assert!(f0.windows(2).all(|w| w[1] < w[0]), "{f0:?}");
    assert!(f0.iter().all(|&v| v > -0.876));
}

#[test]
fn explicit_solution_is_a_fixed_target() {
    let sol = simnitm::analysis::solve_for_target_p(
        Family::MovingWall,
        0.5,
        Sign::Plus,
        (0.0, 1.0),
        &IntegratorConfig::default(),
        EtaPolicy::Auto,
    )
    .unwrap();
    assert_eq!((sol.f0, sol.df0, sol.d2f0), (0.0, 0.5, 0.0));
    assert!(sol
        .trajectory
        .samples
        .iter()
        .all(|s| (s.f - s.eta / 2.0).abs() < 1e-15));
}
