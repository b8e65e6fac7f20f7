//! The non-iterative solve and the parameter studies built on top of it.

mod residual;
mod search;
mod sweep;

pub use residual::{
    bvp_residual, bvp_residual_with, perturb_skin_friction, BcError, ResidualReport,
};
pub use search::{
    default_target_bracket, dual_solutions, find_critical_parameter, solve_for_target_p,
    CriticalResult, FOLD_BRACKET,
};
pub use sweep::{resolve_sign, sweep, SignPolicy, SweepRow, TABLE1_MINUS, TABLE1_PLUS, TABLE2};

use crate::error::{NitmError, Result};
use crate::ode::{estimate_truncated_boundary, integrate_ivp, IntegratorConfig};
use crate::problems::{star_initial_conditions, Family, SimilarityProblem};
use crate::scaling::{
    lambda_gasification, lambda_moving_wall, rescale_gasification, rescale_moving_wall,
    ScaledSolution,
};

/// How the star truncated boundary is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum EtaPolicy {
    Fixed(f64),
    /// Smallest of the family's candidate boundaries on which `f'` has flattened.
    #[default]
    Auto,
}

/// Candidate star truncated boundaries tried by [`EtaPolicy::Auto`].
pub fn eta_candidates(family: Family) -> &'static [f64] {
    match family {
        Family::Gasification => &[5.0, 10.0, 15.0, 20.0, 30.0],
        _ => &[10.0, 15.0, 20.0, 30.0, 40.0],
    }
}

/// Resolves the truncated boundary for one star problem.
pub fn resolve_eta(p: &SimilarityProblem, cfg: &IntegratorConfig, eta: EtaPolicy) -> Result<f64> {
    match eta {
        EtaPolicy::Fixed(v) => Ok(v),
        EtaPolicy::Auto => {
            let y0 = star_initial_conditions(p)?;
            let choice =
                estimate_truncated_boundary(&p.field(), y0, cfg, eta_candidates(p.family))?;
            Ok(choice.eta_inf)
        }
    }
}

/// Solves the BVP of `p` by one star IVP integration and a rescale.
///
/// The physical parameter is an output: it follows from `P*` and the
/// group parameter.
pub fn solve_noniterative(
    p: &SimilarityProblem,
    cfg: &IntegratorConfig,
    eta_inf: f64,
) -> Result<ScaledSolution> {
    if !p.family.is_solvable() {
        return Err(NitmError::Unsupported(p.family));
    }
    let y0 = star_initial_conditions(p)?;
    let star = integrate_ivp(&p.field(), y0, eta_inf, cfg)?;
    match p.family {
        Family::MovingWall | Family::ClassicBlasius => {
            let lambda = lambda_moving_wall(star.df_terminal, y0.df)?;
            let mut sol = rescale_moving_wall(&star, y0.df, p.sign, lambda)?;
            sol.family = p.family;
            Ok(sol)
        }
        Family::Gasification => {
            let lambda = lambda_gasification(star.df_terminal)?;
            rescale_gasification(&star, p.p_star, lambda)
        }
        Family::FalknerSkan => unreachable!(),
    }
}

/// [`solve_noniterative`] with the truncated boundary picked by `eta`.
pub fn solve_with_policy(
    p: &SimilarityProblem,
    cfg: &IntegratorConfig,
    eta: EtaPolicy,
) -> Result<ScaledSolution> {
    if !p.family.is_solvable() {
        return Err(NitmError::Unsupported(p.family));
    }
    let eta_inf = resolve_eta(p, cfg, eta)?;
    solve_noniterative(p, cfg, eta_inf)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problems::Sign;
    use approx::assert_abs_diff_eq;

    #[test]
    fn moving_wall_fold_row() {
        let sol = solve_with_policy(
            &SimilarityProblem::moving_wall(-1.25, Sign::Plus),
            &IntegratorConfig::default(),
            EtaPolicy::Auto,
        )
        .unwrap();
        assert_abs_diff_eq!(sol.p_physical, -0.548447, epsilon = 5e-4);
        assert_abs_diff_eq!(sol.d2f0, 0.290627, epsilon = 5e-4);
        // Independent high-accuracy reference (DOP853, rtol 1e-13).
        assert_abs_diff_eq!(sol.p_physical, -0.548_109_655_945, epsilon = 1e-8);
    }

    #[test]
    fn gasification_half_row() {
        let sol = solve_with_policy(
            &SimilarityProblem::gasification(0.5),
            &IntegratorConfig::default(),
            EtaPolicy::Auto,
        )
        .unwrap();
        assert_abs_diff_eq!(sol.p_physical, 1.242904, epsilon = 5e-4);
        assert_abs_diff_eq!(sol.f0, -0.317129, epsilon = 5e-4);
        assert_abs_diff_eq!(sol.d2f0, 0.255152, epsilon = 5e-4);
        assert_abs_diff_eq!(sol.p_physical, 1.243_212_070_6, epsilon = 1e-7);
    }

    #[test]
    fn blasius_row() {
        let sol = solve_noniterative(
            &SimilarityProblem::moving_wall(0.0, Sign::Plus),
            &IntegratorConfig::default(),
            10.0,
        )
        .unwrap();
        assert_eq!(sol.p_physical, 0.0);
        assert_abs_diff_eq!(sol.d2f0, 0.332061, epsilon = 5e-6);
        assert_abs_diff_eq!(sol.d2f0, 0.332_057_336_215_196_3, epsilon = 1e-9);
    }

    #[test]
    fn classic_blasius_keeps_its_tag() {
        let sol = solve_noniterative(
            &SimilarityProblem::classic_blasius(),
            &IntegratorConfig::default(),
            10.0,
        )
        .unwrap();
        assert_eq!(sol.family, Family::ClassicBlasius);
        assert_abs_diff_eq!(sol.d2f0, 0.332057, epsilon = 1e-5);
    }

    #[test]
    fn falkner_skan_rejected() {
        let err = solve_noniterative(
            &SimilarityProblem::falkner_skan(1.0),
            &IntegratorConfig::default(),
            10.0,
        )
        .unwrap_err();
        assert_eq!(err, NitmError::Unsupported(Family::FalknerSkan));
    }

    #[test]
    fn minus_branch_below_sakiadis_has_no_solution() {
        let res = solve_with_policy(
            &SimilarityProblem::moving_wall(0.5, Sign::Minus),
            &IntegratorConfig::default(),
            EtaPolicy::Fixed(15.0),
        );
        assert!(res.is_err());
    }
}
