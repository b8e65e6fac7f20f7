//! One-dimensional searches over the star parameter: the fold of the
//! moving-wall branch and solves for a prescribed physical parameter.

use crate::error::{NitmError, Result};
use crate::ode::IntegratorConfig;
use crate::problems::{explicit_half_solution, Family, Sign, SimilarityProblem};
use crate::scaling::ScaledSolution;

use super::{solve_with_policy, EtaPolicy};

/// Star-parameter bracket containing the fold of the moving-wall `+1` branch.
pub const FOLD_BRACKET: (f64, f64) = (-1.5, -1.0);

const GOLDEN_TOL: f64 = 1e-6;
const TARGET_TOL: f64 = 1e-6;
const BISECTION_WIDTH: f64 = 1e-3;
const MAX_ITERATIONS: usize = 100;
const INV_PHI: f64 = 0.618_033_988_749_894_9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CriticalResult {
    /// Extremal physical parameter on the scanned branch.
    pub p_c: f64,
    pub p_star_at_pc: f64,
    /// Final golden-section interval.
    pub bracket: (f64, f64),
    pub iterations: usize,
}

fn physical_p(
    family: Family,
    p_star: f64,
    sign: Sign,
    cfg: &IntegratorConfig,
    eta: EtaPolicy,
) -> Result<ScaledSolution> {
    solve_with_policy(&SimilarityProblem::new(family, p_star, sign), cfg, eta)
}

fn ordered(bracket: (f64, f64)) -> Result<(f64, f64)> {
    let (a, b) = bracket;
    if !a.is_finite() || !b.is_finite() || a == b {
        return Err(NitmError::InvalidInput(format!(
            "degenerate bracket [{a}, {b}]"
        )));
    }
    Ok((a.min(b), a.max(b)))
}

/// Minimizes `P(P*)` by golden-section search.
///
/// Fails with [`NitmError::NoExtremum`] when the minimizer runs into a
/// bracket end, i.e. `P` is monotone there.
pub fn find_critical_parameter(
    family: Family,
    sign: Sign,
    p_star_bracket: (f64, f64),
    cfg: &IntegratorConfig,
    eta: EtaPolicy,
) -> Result<CriticalResult> {
    let (lo, hi) = ordered(p_star_bracket)?;
    let eval = |x: f64| physical_p(family, x, sign, cfg, eta).map(|s| s.p_physical);

    let (mut a, mut b) = (lo, hi);
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = eval(x1)?;
    let mut f2 = eval(x2)?;
    let mut iterations = 0;
    while b - a > GOLDEN_TOL {
        iterations += 1;
        if f1 < f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = eval(x1)?;
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = eval(x2)?;
        }
    }
    let (x, p_c) = if f1 < f2 { (x1, f1) } else { (x2, f2) };
    let edge = 10.0 * GOLDEN_TOL;
    if x - lo < edge || hi - x < edge {
        return Err(NitmError::NoExtremum { lo, hi });
    }
    Ok(CriticalResult {
        p_c,
        p_star_at_pc: x,
        bracket: (a, b),
        iterations,
    })
}

/// Finds the star parameter whose physical parameter equals `p_target`.
///
/// Bisects until the bracket is narrower than `1e-3`, then switches to a
/// bracketed secant (Illinois) iteration. Converged when
/// `|P - p_target| < 1e-6`.
pub fn solve_for_target_p(
    family: Family,
    p_target: f64,
    sign: Sign,
    p_star_bracket: (f64, f64),
    cfg: &IntegratorConfig,
    eta: EtaPolicy,
) -> Result<ScaledSolution> {
    if !family.is_solvable() {
        return Err(NitmError::Unsupported(family));
    }
    if matches!(family, Family::MovingWall | Family::ClassicBlasius) && p_target == 0.5 {
        return Ok(half_solution(eta));
    }
    let (lo, hi) = ordered(p_star_bracket)?;
    let eval = |x: f64| -> Result<(f64, ScaledSolution)> {
        let s = physical_p(family, x, sign, cfg, eta)?;
        Ok((s.p_physical - p_target, s))
    };

    let (mut a, mut b) = (lo, hi);
    let (mut ga, mut gb) = match (eval(a), eval(b)) {
        (Ok((ga, sa)), _) if ga.abs() < TARGET_TOL => return Ok(sa),
        (_, Ok((gb, sb))) if gb.abs() < TARGET_TOL => return Ok(sb),
        (Ok((ga, _)), Ok((gb, _))) => (ga, gb),
        (Err(_), Ok((gb, _))) => {
            let (x, gx) = trim_failed_end(&eval, a, b, gb)?;
            a = x;
            (gx, gb)
        }
        (Ok((ga, _)), Err(_)) => {
            let (x, gx) = trim_failed_end(&eval, b, a, ga)?;
            b = x;
            (ga, gx)
        }
        (Err(e), Err(_)) => return Err(e),
    };
    if ga.signum() == gb.signum() {
        return Err(NitmError::NoSignChange { lo, hi });
    }

    // Illinois weights for the secant phase.
    let mut side = 0i8;
    for _ in 0..MAX_ITERATIONS {
        let x = if b - a > BISECTION_WIDTH {
            0.5 * (a + b)
        } else {
            let x = (a * gb - b * ga) / (gb - ga);
            if x > a && x < b {
                x
            } else {
                0.5 * (a + b)
            }
        };
        let (gx, sx) = eval(x)?;
        if gx.abs() < TARGET_TOL {
            return Ok(sx);
        }
        let secant = b - a <= BISECTION_WIDTH;
        if gx.signum() == ga.signum() {
            a = x;
            ga = gx;
            if secant && side == -1 {
                gb *= 0.5;
            }
            side = -1;
        } else {
            b = x;
            gb = gx;
            if secant && side == 1 {
                ga *= 0.5;
            }
            side = 1;
        }
        if b - a < f64::EPSILON * a.abs().max(b.abs()).max(1.0) {
            break;
        }
    }
    Err(NitmError::MaxIterations(MAX_ITERATIONS))
}

/// Moves a bracket end that has no solution toward the solvable end.
///
/// Bisects between the failed point and the good one until a solvable point
/// with the opposite residual sign is found. Branch ends (e.g. the `-1`
/// moving-wall branch below the Sakiadis point) make this necessary.
fn trim_failed_end<F>(eval: &F, failed: f64, good: f64, g_good: f64) -> Result<(f64, f64)>
where
    F: Fn(f64) -> Result<(f64, ScaledSolution)>,
{
    let (mut bad, mut ok) = (failed, good);
    for _ in 0..60 {
        let mid = 0.5 * (bad + ok);
        match eval(mid) {
            Err(_) => bad = mid,
            Ok((g, _)) if g.signum() != g_good.signum() => return Ok((mid, g)),
            Ok(_) => ok = mid,
        }
        if (ok - bad).abs() < 1e-12 * ok.abs().max(1.0) {
            break;
        }
    }
    Err(NitmError::NoSignChange {
        lo: failed.min(good),
        hi: failed.max(good),
    })
}

fn half_solution(eta: EtaPolicy) -> ScaledSolution {
    let eta_inf = match eta {
        EtaPolicy::Fixed(v) => v,
        EtaPolicy::Auto => 10.0,
    };
    let trajectory = explicit_half_solution(eta_inf, 101);
    ScaledSolution {
        family: Family::MovingWall,
        sign: Sign::Plus,
        p_star: 0.5,
        lambda: 1.0,
        p_physical: 0.5,
        f0: 0.0,
        df0: 0.5,
        d2f0: 0.0,
        df_star_inf: 0.5,
        star: trajectory.clone(),
        trajectory,
    }
}

/// A star bracket for [`solve_for_target_p`] on the monotone part of a
/// branch, widened by doubling until the target is crossed. Returns `None`
/// when no crossing is found.
pub fn default_target_bracket(
    family: Family,
    p_target: f64,
    sign: Sign,
    cfg: &IntegratorConfig,
    eta: EtaPolicy,
) -> Option<(f64, f64)> {
    let p_at = |x: f64| {
        physical_p(family, x, sign, cfg, eta)
            .ok()
            .map(|s| s.p_physical)
    };
    // Double `start` until `beyond(P(x))` holds.
    let widen = |start: f64, beyond: &dyn Fn(f64) -> bool| -> Option<f64> {
        let mut x = start;
        for _ in 0..40 {
            if beyond(p_at(x)?) {
                return Some(x);
            }
            x *= 2.0;
        }
        None
    };
    match (family, sign) {
        (Family::Gasification, _) if p_target >= 0.0 => {
            widen(1.0, &|p| p >= p_target).map(|b| (0.0, b))
        }
        (Family::Gasification, _) => widen(-0.1, &|p| p <= p_target).map(|b| (b, 0.0)),
        (_, Sign::Plus) if p_target >= 0.0 => {
            if p_target >= 0.5 {
                return None;
            }
            widen(1.0, &|p| p >= p_target).map(|b| (0.0, b))
        }
        // Inner half of the fold, where P rises back to 0 at P* = 0.
        (_, Sign::Plus) => Some((-1.25, 0.0)),
        (_, Sign::Minus) => {
            if !(p_target > 0.5 && p_target <= 1.0) {
                return None;
            }
            widen(2.0, &|p| p <= p_target).map(|b| (1.5, b))
        }
    }
}

/// The two moving-wall solutions for `P_c < p_target < 0`, one on each side
/// of the fold. Returned as (outer branch, inner branch).
pub fn dual_solutions(
    p_target: f64,
    cfg: &IntegratorConfig,
    eta: EtaPolicy,
) -> Result<(ScaledSolution, ScaledSolution)> {
    let fold = find_critical_parameter(Family::MovingWall, Sign::Plus, FOLD_BRACKET, cfg, eta)?;
    if !(p_target > fold.p_c && p_target < 0.0) {
        return Err(NitmError::NoSignChange {
            lo: fold.p_c,
            hi: 0.0,
        });
    }
    let family = Family::MovingWall;
    let x_c = fold.p_star_at_pc;

    // P tends to 0 from below as P* -> -inf; widen the outer bracket until it crosses.
    let mut outer = x_c - 1.0;
    loop {
        let p = physical_p(family, outer, Sign::Plus, cfg, eta)?.p_physical;
        if p > p_target {
            break;
        }
        outer *= 2.0;
        if outer < -1e7 {
            return Err(NitmError::NoSignChange { lo: outer, hi: x_c });
        }
    }
    let left = solve_for_target_p(family, p_target, Sign::Plus, (outer, x_c), cfg, eta)?;
    let right = solve_for_target_p(family, p_target, Sign::Plus, (x_c, 0.0), cfg, eta)?;
    Ok((left, right))
}
