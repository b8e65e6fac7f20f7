//! Extended scaling groups and the star-to-physical rescaling.
//!
//! A group acts as `eta* = l^a_eta eta`, `f* = l^a_f f`, `P* = l^a_P P`.
//! Derivatives follow from the chain rule: `f*' = l^(a_f - a_eta) f'` and
//! `f*'' = l^(a_f - 2 a_eta) f''`.

use crate::error::{NitmError, Result};
use crate::ode::{IvpState, Trajectory};
use crate::problems::{Family, Sign};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GroupExponents {
    pub alpha_eta: f64,
    pub alpha_f: f64,
    pub alpha_p: f64,
}

impl GroupExponents {
    /// `f* = l f`, `eta* = eta / l`, `P* = l^2 P`.
    pub const MOVING_WALL: GroupExponents = GroupExponents {
        alpha_eta: -1.0,
        alpha_f: 1.0,
        alpha_p: 2.0,
    };

    /// `f* = l f`, `eta* = eta / l`, `P* = P / l^2`.
    pub const GASIFICATION: GroupExponents = GroupExponents {
        alpha_eta: -1.0,
        alpha_f: 1.0,
        alpha_p: -2.0,
    };

    pub fn as_array(&self) -> [f64; 3] {
        [self.alpha_eta, self.alpha_f, self.alpha_p]
    }

    /// Maps a star state to physical variables.
    pub fn to_physical(&self, star: &IvpState, lambda: f64) -> IvpState {
        IvpState {
            eta: lambda.powf(-self.alpha_eta) * star.eta,
            f: lambda.powf(-self.alpha_f) * star.f,
            df: lambda.powf(-(self.alpha_f - self.alpha_eta)) * star.df,
            d2f: lambda.powf(-(self.alpha_f - 2.0 * self.alpha_eta)) * star.d2f,
        }
    }

    /// Inverse of [`GroupExponents::to_physical`].
    pub fn to_star(&self, physical: &IvpState, lambda: f64) -> IvpState {
        self.to_physical(physical, 1.0 / lambda)
    }

    pub fn parameter_to_physical(&self, p_star: f64, lambda: f64) -> f64 {
        lambda.powf(-self.alpha_p) * p_star
    }

    /// Maps every sample of a trajectory. Plateau status is carried over
    /// unchanged since it certifies the star integration.
    pub fn map_trajectory(&self, traj: &Trajectory, lambda: f64) -> Trajectory {
        let samples: Vec<IvpState> = traj
            .samples
            .iter()
            .map(|s| self.to_physical(s, lambda))
            .collect();
        let last = *samples.last().expect("trajectory is never empty");
        Trajectory {
            eta_inf: last.eta,
            df_terminal: last.df,
            plateau_ok: traj.plateau_ok,
            samples,
        }
    }
}

/// A solution of the physical BVP recovered from a star integration.
#[derive(Debug, Clone, PartialEq)]
pub struct ScaledSolution {
    pub family: Family,
    pub sign: Sign,
    pub p_star: f64,
    pub lambda: f64,
    pub p_physical: f64,
    pub f0: f64,
    pub df0: f64,
    /// Skin-friction coefficient `f''(0)`.
    pub d2f0: f64,
    /// `f*'(eta*_inf)` of the star integration.
    pub df_star_inf: f64,
    /// Physical trajectory, `eta = lambda eta*`.
    pub trajectory: Trajectory,
    pub star: Trajectory,
}

fn positive_root(radicand: f64) -> Result<f64> {
    if radicand > 0.0 && radicand.is_finite() {
        Ok(radicand.sqrt())
    } else {
        Err(NitmError::NonPositiveRadicand { radicand })
    }
}

/// `lambda = sqrt(f*'(inf) + P*)`, from `f'(inf) = 1 - P` in physical variables.
pub fn lambda_moving_wall(df_star_inf: f64, p_star: f64) -> Result<f64> {
    positive_root(df_star_inf + p_star)
}

/// `lambda = sqrt(f*'(inf))`, from `f'(inf) = 1` in physical variables.
pub fn lambda_gasification(df_star_inf: f64) -> Result<f64> {
    positive_root(df_star_inf)
}

fn check_lambda(lambda: f64) -> Result<()> {
    if lambda > 0.0 && lambda.is_finite() {
        Ok(())
    } else {
        Err(NitmError::InvalidInput(format!(
            "lambda must be positive, got {lambda}"
        )))
    }
}

/// Rescales a moving-wall star solution.
///
/// Recovers `f'(0) = P*/l^2` and `f''(0) = f*''(0)/l^3`; the physical
/// parameter is `P = P*/l^2`.
pub fn rescale_moving_wall(
    star: &Trajectory,
    p_star: f64,
    sign: Sign,
    lambda: f64,
) -> Result<ScaledSolution> {
    check_lambda(lambda)?;
    let g = GroupExponents::MOVING_WALL;
    let trajectory = g.map_trajectory(star, lambda);
    let p_physical = g.parameter_to_physical(p_star, lambda);
    let wall = *trajectory.first();
    Ok(ScaledSolution {
        family: Family::MovingWall,
        sign,
        p_star,
        lambda,
        p_physical,
        f0: 0.0,
        df0: p_physical,
        d2f0: wall.d2f,
        df_star_inf: star.df_terminal,
        trajectory,
        star: star.clone(),
    })
}

/// Rescales a gasification star solution.
///
/// `P = l^2 P*`, `f(0) = -P*/l`, `f''(0) = 1/l^3`. The wall condition
/// `f(0) = -P f''(0)` then holds identically.
pub fn rescale_gasification(star: &Trajectory, p_star: f64, lambda: f64) -> Result<ScaledSolution> {
    check_lambda(lambda)?;
    let g = GroupExponents::GASIFICATION;
    let trajectory = g.map_trajectory(star, lambda);
    let p_physical = g.parameter_to_physical(p_star, lambda);
    let wall = *trajectory.first();
    Ok(ScaledSolution {
        family: Family::Gasification,
        sign: Sign::Plus,
        p_star,
        lambda,
        p_physical,
        // `+ 0.0` keeps P* = 0 from producing a negative zero.
        f0: -p_star / lambda + 0.0,
        df0: 0.0,
        d2f0: wall.d2f,
        df_star_inf: star.df_terminal,
        trajectory,
        star: star.clone(),
    })
}
