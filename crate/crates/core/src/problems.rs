//! Problem families and their star initial value problems.

use std::fmt;
use std::str::FromStr;

use crate::error::{NitmError, Result};
use crate::ode::{IvpState, OdeField, Trajectory};
use crate::scaling::GroupExponents;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    /// `f''' + f f''/2 = 0`, `f(0) = 0`, `f'(0) = 0`, `f' -> 1`.
    ClassicBlasius,
    /// `f''' + f f''/2 = 0`, `f(0) = 0`, `f'(0) = P`, `f' -> 1 - P`.
    MovingWall,
    /// `f''' + f f'' = 0`, `f(0) = -P f''(0)`, `f'(0) = 0`, `f' -> 1`.
    Gasification,
    /// `f''' + f f'' + P (1 - f'^2) = 0`. Only used by the invariance analysis.
    FalknerSkan,
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::ClassicBlasius => "classic-blasius",
            Family::MovingWall => "moving-wall",
            Family::Gasification => "gasification",
            Family::FalknerSkan => "falkner-skan",
        }
    }

    pub fn is_solvable(&self) -> bool {
        !matches!(self, Family::FalknerSkan)
    }

    /// Coefficient `c` of the `f f''` term.
    pub fn coefficient(&self) -> f64 {
        match self {
            Family::ClassicBlasius | Family::MovingWall => 0.5,
            Family::Gasification | Family::FalknerSkan => 1.0,
        }
    }

    pub fn group(&self) -> Option<GroupExponents> {
        match self {
            Family::ClassicBlasius | Family::MovingWall => Some(GroupExponents::MOVING_WALL),
            Family::Gasification => Some(GroupExponents::GASIFICATION),
            Family::FalknerSkan => None,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = NitmError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('_', "-").as_str() {
            "classic-blasius" | "blasius" => Ok(Family::ClassicBlasius),
            "moving-wall" | "mwall" => Ok(Family::MovingWall),
            "gasification" | "gas" => Ok(Family::Gasification),
            "falkner-skan" | "fs" => Ok(Family::FalknerSkan),
            other => Err(NitmError::InvalidInput(format!("unknown family '{other}'"))),
        }
    }
}

/// Normalization `f*''(0) = ±1` of the moving-wall star problem.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(&self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+1",
            Sign::Minus => "-1",
        })
    }
}

impl FromStr for Sign {
    type Err = NitmError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "+1" | "1" | "+" | "plus" => Ok(Sign::Plus),
            "-1" | "-" | "minus" => Ok(Sign::Minus),
            other => Err(NitmError::InvalidInput(format!("unknown sign '{other}'"))),
        }
    }
}

/// Result of [`recommended_sign`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignChoice {
    Sign(Sign),
    /// `P = 1/2`: the explicit solution has `f'' = 0` and no star normalization exists.
    Degenerate,
}

/// Star normalization for a moving-wall problem with the given physical `P`.
///
/// The skin friction is positive for `P < 1/2` and negative above it.
pub fn recommended_sign(p_physical_estimate: f64) -> SignChoice {
    if p_physical_estimate < 0.5 {
        SignChoice::Sign(Sign::Plus)
    } else if p_physical_estimate > 0.5 {
        SignChoice::Sign(Sign::Minus)
    } else {
        SignChoice::Degenerate
    }
}

/// A member of one of the problem families, parameterized in star variables.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimilarityProblem {
    pub family: Family,
    pub c: f64,
    pub p_star: f64,
    /// Only meaningful for [`Family::MovingWall`].
    pub sign: Sign,
}

impl SimilarityProblem {
    pub fn new(family: Family, p_star: f64, sign: Sign) -> Self {
        SimilarityProblem {
            family,
            c: family.coefficient(),
            p_star,
            sign,
        }
    }

    pub fn moving_wall(p_star: f64, sign: Sign) -> Self {
        Self::new(Family::MovingWall, p_star, sign)
    }

    pub fn gasification(p_star: f64) -> Self {
        Self::new(Family::Gasification, p_star, Sign::Plus)
    }

    pub fn classic_blasius() -> Self {
        Self::new(Family::ClassicBlasius, 0.0, Sign::Plus)
    }

    pub fn falkner_skan(p: f64) -> Self {
        Self::new(Family::FalknerSkan, p, Sign::Plus)
    }

    pub fn field(&self) -> OdeField {
        match self.family {
            Family::FalknerSkan => OdeField::falkner_skan(self.p_star),
            _ => OdeField::blasius(self.c),
        }
    }

    pub fn group(&self) -> Result<GroupExponents> {
        self.family
            .group()
            .ok_or(NitmError::Unsupported(self.family))
    }

    pub fn star_initial_conditions(&self) -> Result<IvpState> {
        star_initial_conditions(self)
    }
}

/// Initial state of the star IVP for a solvable problem.
pub fn star_initial_conditions(p: &SimilarityProblem) -> Result<IvpState> {
    match p.family {
        Family::MovingWall => Ok(IvpState::new(0.0, 0.0, p.p_star, p.sign.value())),
        Family::Gasification => Ok(IvpState::new(0.0, -p.p_star, 0.0, 1.0)),
        Family::ClassicBlasius => Ok(IvpState::new(0.0, 0.0, 0.0, 1.0)),
        Family::FalknerSkan => Err(NitmError::Unsupported(p.family)),
    }
}

/// The closed-form moving-wall solution at `P = 1/2`: `f = eta/2`.
pub fn explicit_half_solution(eta_inf: f64, points: usize) -> Trajectory {
    let n = points.max(2);
    let samples = (0..n)
        .map(|i| {
            let eta = eta_inf * i as f64 / (n - 1) as f64;
            IvpState::new(eta, 0.5 * eta, 0.5, 0.0)
        })
        .collect();
    Trajectory::from_samples(samples, f64::MIN_POSITIVE)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn star_ics_per_family() {
        assert_eq!(
            star_initial_conditions(&SimilarityProblem::moving_wall(0.0, Sign::Plus)).unwrap(),
            IvpState::new(0.0, 0.0, 0.0, 1.0)
        );
        assert_eq!(
            star_initial_conditions(&SimilarityProblem::moving_wall(1.719, Sign::Minus)).unwrap(),
            IvpState::new(0.0, 0.0, 1.719, -1.0)
        );
        assert_eq!(
            star_initial_conditions(&SimilarityProblem::gasification(2.2)).unwrap(),
            IvpState::new(0.0, -2.2, 0.0, 1.0)
        );
        assert_eq!(
            star_initial_conditions(&SimilarityProblem::classic_blasius()).unwrap(),
            IvpState::new(0.0, 0.0, 0.0, 1.0)
        );
    }

    #[test]
    fn falkner_skan_is_not_solvable() {
        let err = star_initial_conditions(&SimilarityProblem::falkner_skan(1.0)).unwrap_err();
        assert_eq!(err, NitmError::Unsupported(Family::FalknerSkan));
        assert!(err.to_string().contains("family not solvable by non-ITM"));
        assert!(SimilarityProblem::falkner_skan(1.0).group().is_err());
    }

    #[test]
    fn sign_rule() {
        assert_eq!(recommended_sign(0.0), SignChoice::Sign(Sign::Plus));
        assert_eq!(recommended_sign(1.0), SignChoice::Sign(Sign::Minus));
        assert_eq!(recommended_sign(0.5), SignChoice::Degenerate);
        assert_eq!(recommended_sign(-0.54), SignChoice::Sign(Sign::Plus));
    }

    #[test]
    fn family_coefficients() {
        assert_eq!(SimilarityProblem::moving_wall(1.0, Sign::Plus).c, 0.5);
        assert_eq!(SimilarityProblem::gasification(1.0).c, 1.0);
        assert_eq!(SimilarityProblem::classic_blasius().c, 0.5);
    }

    #[test]
    fn parse_round_trip() {
        for fam in [
            Family::ClassicBlasius,
            Family::MovingWall,
            Family::Gasification,
            Family::FalknerSkan,
        ] {
            assert_eq!(fam.name().parse::<Family>().unwrap(), fam);
        }
        assert_eq!("-1".parse::<Sign>().unwrap(), Sign::Minus);
        assert_eq!("+1".parse::<Sign>().unwrap(), Sign::Plus);
        assert!("0".parse::<Sign>().is_err());
        assert!("wedge".parse::<Family>().is_err());
    }

    #[test]
    fn half_solution_is_linear() {
        let t = explicit_half_solution(10.0, 11);
        assert_eq!(t.len(), 11);
        assert_eq!(t.last().f, 5.0);
        assert!(t.samples.iter().all(|s| s.df == 0.5 && s.d2f == 0.0));
    }
}
