//! Independent validation of physical solutions.
//!
//! The ODE residual is evaluated with `f'''` reconstructed by five-point
//! finite differences of the stored `f''` samples, so it does not reuse the
//! integrator's stage derivatives. The asymptotic condition is checked both
//! on the stored trajectory and by re-integrating the physical IVP from the
//! recovered wall values.

use crate::ode::{integrate_ivp, IntegratorConfig, IvpState, OdeField, Trajectory};
use crate::problems::{Family, SimilarityProblem};
use crate::scaling::ScaledSolution;

#[derive(Debug, Clone, PartialEq)]
pub struct BcError {
    pub label: &'static str,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ResidualReport {
    /// Max of `|f''' + c f f''|` over interior grid points.
    pub ode_max: f64,
    pub bc_errors: Vec<BcError>,
}

impl ResidualReport {
    pub fn bc_max(&self) -> f64 {
        self.bc_errors.iter().map(|e| e.value).fold(0.0, f64::max)
    }

    pub fn passes(&self, tol: f64) -> bool {
        self.ode_max < tol && self.bc_errors.iter().all(|e| e.value < tol)
    }

    pub fn get(&self, label: &str) -> Option<f64> {
        self.bc_errors
            .iter()
            .find(|e| e.label == label)
            .map(|e| e.value)
    }
}

/// Finite-difference weights for the first derivative at `x0` on arbitrary
/// nodes (Fornberg's recursion).
fn derivative_weights(x0: f64, nodes: &[f64]) -> Vec<f64> {
    let n = nodes.len();
    // c[j][k]: weight of node j for the k-th derivative, k = 0, 1.
    let mut c = vec![[0.0f64; 2]; n];
    c[0][0] = 1.0;
    let mut c1 = 1.0;
    let mut c4 = nodes[0] - x0;
    for i in 1..n {
        let mut c2 = 1.0;
        let c5 = c4;
        c4 = nodes[i] - x0;
        for j in 0..i {
            let c3 = nodes[i] - nodes[j];
            c2 *= c3;
            if j == i - 1 {
                c[i][1] = c1 * (c[i - 1][0] - c5 * c[i - 1][1]) / c2;
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            c[j][1] = (c4 * c[j][1] - c[j][0]) / c3;
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    c.into_iter().map(|w| w[1]).collect()
}

/// Five-point stencil, centered where the grid allows it.
const STENCIL: usize = 5;

fn ode_residual(traj: &Trajectory, c: f64) -> f64 {
    let s = &traj.samples;
    let n = s.len();
    if n < STENCIL {
        return if n < 3 {
            0.0
        } else {
            three_point_residual(traj, c)
        };
    }
    (1..n - 1)
        .map(|i| {
            let start = i.saturating_sub(STENCIL / 2).min(n - STENCIL);
            let window = &s[start..start + STENCIL];
            let nodes: Vec<f64> = window.iter().map(|p| p.eta).collect();
            let w = derivative_weights(s[i].eta, &nodes);
            let d3f: f64 = w.iter().zip(window).map(|(w, p)| w * p.d2f).sum();
            (d3f + c * s[i].f * s[i].d2f).abs()
        })
        .fold(0.0, f64::max)
}

fn three_point_residual(traj: &Trajectory, c: f64) -> f64 {
    traj.samples
        .windows(3)
        .map(|w| {
            let nodes = [w[0].eta, w[1].eta, w[2].eta];
            let wt = derivative_weights(w[1].eta, &nodes);
            let d3f = wt[0] * w[0].d2f + wt[1] * w[1].d2f + wt[2] * w[2].d2f;
            (d3f + c * w[1].f * w[1].d2f).abs()
        })
        .fold(0.0, f64::max)
}

/// Configuration used to re-integrate the physical IVP.
///
/// The absolute tolerance is tied to the size of the wall data so that tiny
/// skin frictions (far ends of the moving-wall table) are resolved.
fn reintegration_config(sol: &ScaledSolution, cfg: &IntegratorConfig) -> IntegratorConfig {
    let scale = [sol.f0.abs(), sol.df0.abs(), sol.d2f0.abs()]
        .into_iter()
        .filter(|v| *v > 0.0)
        .fold(1.0, f64::min);
    IntegratorConfig {
        abs_tol: (cfg.abs_tol * scale).max(1e-300),
        initial_step: cfg.initial_step * sol.lambda,
        ..*cfg
    }
}

/// Validates a physical solution against its boundary value problem using
/// the default integrator settings for the re-integration check.
pub fn bvp_residual(sol: &ScaledSolution, p: &SimilarityProblem) -> ResidualReport {
    bvp_residual_with(sol, p, &IntegratorConfig::default())
}

pub fn bvp_residual_with(
    sol: &ScaledSolution,
    p: &SimilarityProblem,
    cfg: &IntegratorConfig,
) -> ResidualReport {
    let traj = &sol.trajectory;
    let c = p.family.coefficient();
    let ode_max = ode_residual(traj, c);
    let wall = *traj.first();
    let end = *traj.last();
    let big_p = sol.p_physical;

    let (asymptote, mut bc_errors) = match p.family {
        Family::Gasification => (
            1.0,
            vec![
                BcError {
                    label: "f(0)+P*f''(0)",
                    value: (sol.f0 + big_p * sol.d2f0).abs(),
                },
                BcError {
                    label: "f'(0)",
                    value: sol.df0.abs(),
                },
            ],
        ),
        _ => (
            1.0 - big_p,
            vec![
                BcError {
                    label: "f(0)",
                    value: sol.f0.abs(),
                },
                BcError {
                    label: "f'(0)-P",
                    value: (sol.df0 - big_p).abs(),
                },
            ],
        ),
    };
    bc_errors.push(BcError {
        label: "wall samples",
        value: (wall.f - sol.f0)
            .abs()
            .max((wall.df - sol.df0).abs())
            .max((wall.d2f - sol.d2f0).abs()),
    });
    bc_errors.push(BcError {
        label: "f'(inf)",
        value: (end.df - asymptote).abs(),
    });

    let reintegrated = integrate_ivp(
        &OdeField::blasius(c),
        IvpState::new(0.0, sol.f0, sol.df0, sol.d2f0),
        traj.eta_inf,
        &reintegration_config(sol, cfg),
    )
    .map(|t| (t.df_terminal - asymptote).abs())
    .unwrap_or(f64::INFINITY);
    bc_errors.push(BcError {
        label: "f'(inf) reintegrated",
        value: reintegrated,
    });

    ResidualReport { ode_max, bc_errors }
}

/// A copy of `sol` whose skin friction is shifted by `delta`, with the
/// trajectory re-integrated from the corrupted wall values.
pub fn perturb_skin_friction(
    sol: &ScaledSolution,
    delta: f64,
    cfg: &IntegratorConfig,
) -> ScaledSolution {
    let mut out = sol.clone();
    out.d2f0 += delta;
    let c = sol.family.coefficient();
    if let Ok(t) = integrate_ivp(
        &OdeField::blasius(c),
        IvpState::new(0.0, out.f0, out.df0, out.d2f0),
        sol.trajectory.eta_inf,
        cfg,
    ) {
        out.trajectory = t;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problems::{explicit_half_solution, Sign};

    #[test]
    fn weights_are_exact_for_quartics() {
        let g = |x: f64| x.powi(4) - 3.0 * x * x + x;
        let dg = |x: f64| 4.0 * x.powi(3) - 6.0 * x + 1.0;
        let nodes = [0.0, 0.1, 0.35, 0.4, 1.0];
        for x0 in [0.1, 0.35, 0.4] {
            let w = derivative_weights(x0, &nodes);
            let d: f64 = w.iter().zip(nodes).map(|(w, x)| w * g(x)).sum();
            assert!((d - dg(x0)).abs() < 1e-11, "{d} vs {}", dg(x0));
        }
        let w = derivative_weights(0.4, &[0.1, 0.4, 1.0]);
        let d = w[0] * (0.1f64).powi(2) + w[1] * 0.16 + w[2];
        assert!((d - 0.8).abs() < 1e-12);
    }

    #[test]
    fn explicit_half_solution_is_exact() {
        let traj = explicit_half_solution(20.0, 201);
        let sol = ScaledSolution {
            family: Family::MovingWall,
            sign: Sign::Plus,
            p_star: 0.5,
            lambda: 1.0,
            p_physical: 0.5,
            f0: 0.0,
            df0: 0.5,
            d2f0: 0.0,
            df_star_inf: 0.5,
            star: traj.clone(),
            trajectory: traj,
        };
        let report = bvp_residual(&sol, &SimilarityProblem::moving_wall(0.5, Sign::Plus));
        assert_eq!(report.ode_max, 0.0);
        assert!(report.bc_max() < 1e-15, "{report:?}");
    }
}
