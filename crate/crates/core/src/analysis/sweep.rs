use crate::error::NitmError;
use crate::ode::IntegratorConfig;
use crate::problems::{recommended_sign, Family, Sign, SignChoice, SimilarityProblem};

use super::{resolve_eta, solve_noniterative, EtaPolicy};

/// Star parameters of the upper (`f*''(0) = 1`) block of the moving-wall table.
pub const TABLE1_PLUS: [f64; 13] = [
    -500.0, -100.0, -5.0, -1.5, -1.25, -1.0, -0.75, -0.5, 0.0, 1.0, 5.0, 100.0, 500.0,
];
/// Star parameters of the lower (`f*''(0) = -1`) block of the moving-wall table.
pub const TABLE1_MINUS: [f64; 5] = [100.0, 10.0, 5.0, 2.0, 1.719];
/// Star parameters of the gasification table.
pub const TABLE2: [f64; 11] = [0.0, 0.1, 0.25, 0.5, 0.75, 1.0, 1.25, 1.5, 1.75, 2.0, 2.2];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignPolicy {
    Fixed(Sign),
    /// Pilot solve on the `+1` branch, then [`recommended_sign`] of its `P`;
    /// falls back to `-1` when the pilot fails.
    Auto,
}

/// One line of a parameter table. Numeric fields are NaN on failed rows.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub family: Family,
    pub p_star: f64,
    pub sign: Sign,
    pub df_star_inf: f64,
    pub lambda: f64,
    pub p_physical: f64,
    pub f0: f64,
    pub d2f0: f64,
    pub eta_inf_used: f64,
    pub plateau_ok: bool,
    pub error: Option<NitmError>,
}

impl SweepRow {
    pub fn is_ok(&self) -> bool {
        self.error.is_none()
    }

    pub fn status(&self) -> &'static str {
        self.error.as_ref().map_or("ok", NitmError::kind)
    }

    fn failed(family: Family, p_star: f64, sign: Sign, eta_inf_used: f64, err: NitmError) -> Self {
        SweepRow {
            family,
            p_star,
            sign,
            df_star_inf: f64::NAN,
            lambda: f64::NAN,
            p_physical: f64::NAN,
            f0: f64::NAN,
            d2f0: f64::NAN,
            eta_inf_used,
            plateau_ok: false,
            error: Some(err),
        }
    }
}

/// The star normalization used for `p_star` under `policy`.
pub fn resolve_sign(
    family: Family,
    p_star: f64,
    policy: SignPolicy,
    cfg: &IntegratorConfig,
    eta: EtaPolicy,
) -> Sign {
    match policy {
        SignPolicy::Fixed(s) => s,
        SignPolicy::Auto => {
            if family != Family::MovingWall {
                return Sign::Plus;
            }
            let pilot = SimilarityProblem::moving_wall(p_star, Sign::Plus);
            let estimate = resolve_eta(&pilot, cfg, eta)
                .and_then(|e| solve_noniterative(&pilot, cfg, e))
                .map(|s| s.p_physical);
            match estimate.map(recommended_sign) {
                Ok(SignChoice::Sign(s)) => s,
                _ => Sign::Minus,
            }
        }
    }
}

fn sweep_row(
    family: Family,
    p_star: f64,
    sign: SignPolicy,
    cfg: &IntegratorConfig,
    eta: EtaPolicy,
) -> SweepRow {
    let sign = resolve_sign(family, p_star, sign, cfg, eta);
    let problem = SimilarityProblem::new(family, p_star, sign);
    let eta_inf = match resolve_eta(&problem, cfg, eta) {
        Ok(e) => e,
        Err(err) => {
            let fallback = match eta {
                EtaPolicy::Fixed(v) => v,
                EtaPolicy::Auto => f64::NAN,
            };
            return SweepRow::failed(family, p_star, sign, fallback, err);
        }
    };
    match solve_noniterative(&problem, cfg, eta_inf) {
        Ok(sol) => SweepRow {
            family,
            p_star,
            sign,
            df_star_inf: sol.df_star_inf,
            lambda: sol.lambda,
            p_physical: sol.p_physical,
            f0: sol.f0,
            d2f0: sol.d2f0,
            eta_inf_used: eta_inf,
            plateau_ok: sol.star.plateau_ok,
            error: None,
        },
        Err(err) => SweepRow::failed(family, p_star, sign, eta_inf, err),
    }
}

/// Solves one problem per star parameter, keeping input order.
///
/// Failed solves become rows carrying the error instead of aborting the sweep.
pub fn sweep(
    family: Family,
    p_star_values: &[f64],
    sign: SignPolicy,
    cfg: &IntegratorConfig,
    eta: EtaPolicy,
) -> Vec<SweepRow> {
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        p_star_values
            .par_iter()
            .map(|&p| sweep_row(family, p, sign, cfg, eta))
            .collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        p_star_values
            .iter()
            .map(|&p| sweep_row(family, p, sign, cfg, eta))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_sweep() {
        let rows = sweep(
            Family::MovingWall,
            &[],
            SignPolicy::Fixed(Sign::Plus),
            &IntegratorConfig::default(),
            EtaPolicy::Auto,
        );
        assert!(rows.is_empty());
    }

    #[test]
    fn failures_are_rows() {
        let rows = sweep(
            Family::MovingWall,
            &[0.0, 0.5, 1.0],
            SignPolicy::Fixed(Sign::Minus),
            &IntegratorConfig::default(),
            EtaPolicy::Fixed(15.0),
        );
        assert_eq!(rows.len(), 3);
        assert_eq!(rows[1].p_star, 0.5);
        assert!(rows.iter().all(|r| !r.is_ok()));
        assert!(rows
            .iter()
            .all(|r| r.p_physical.is_nan() && r.status() != "ok"));
    }

    #[test]
    fn auto_sign_prefers_plus_branch() {
        let rows = sweep(
            Family::MovingWall,
            &[0.0, 5.0],
            SignPolicy::Auto,
            &IntegratorConfig::default(),
            EtaPolicy::Auto,
        );
        assert!(rows.iter().all(|r| r.sign == Sign::Plus && r.is_ok()));
    }

    #[test]
    fn order_is_preserved() {
        let input = [1.0, -1.0, 0.0, 5.0];
        let rows = sweep(
            Family::MovingWall,
            &input,
            SignPolicy::Fixed(Sign::Plus),
            &IntegratorConfig::default(),
            EtaPolicy::Auto,
        );
        let got: Vec<f64> = rows.iter().map(|r| r.p_star).collect();
        assert_eq!(got, input);
    }
}
