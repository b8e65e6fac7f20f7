//! Browser bindings for the demo page in `www/`.
//!
//! Three operations are exposed: a single solve with its profiles, a scan of
//! the moving-wall branches with the fold located, and the invariance check.

use wasm_bindgen::prelude::*;

use simnitm::analysis::{
    find_critical_parameter, solve_with_policy, sweep, EtaPolicy, SignPolicy, FOLD_BRACKET,
};
use simnitm::invariance::analyze_family;
use simnitm::ode::IntegratorConfig;
use simnitm::problems::{Family, Sign, SimilarityProblem};
use simnitm::scaling::ScaledSolution;

fn js_err(e: impl std::fmt::Display) -> JsError {
    JsError::new(&e.to_string())
}

fn parse_sign(sign: i32) -> Result<Sign, JsError> {
    match sign {
        1 => Ok(Sign::Plus),
        -1 => Ok(Sign::Minus),
        s => Err(JsError::new(&format!("sign must be +1 or -1, got {s}"))),
    }
}

/// A physical solution with its profiles as flat arrays.
#[wasm_bindgen]
pub struct Solution {
    sol: ScaledSolution,
}

#[wasm_bindgen]
impl Solution {
    #[wasm_bindgen(getter)]
    pub fn p(&self) -> f64 {
        self.sol.p_physical
    }

    #[wasm_bindgen(getter)]
    pub fn lambda(&self) -> f64 {
        self.sol.lambda
    }

    #[wasm_bindgen(getter)]
    pub fn f0(&self) -> f64 {
        self.sol.f0
    }

    #[wasm_bindgen(getter)]
    pub fn d2f0(&self) -> f64 {
        self.sol.d2f0
    }

    #[wasm_bindgen(getter)]
    pub fn eta_inf(&self) -> f64 {
        self.sol.trajectory.eta_inf
    }

    pub fn eta(&self) -> Vec<f64> {
        self.sol.trajectory.samples.iter().map(|s| s.eta).collect()
    }

    pub fn f(&self) -> Vec<f64> {
        self.sol.trajectory.samples.iter().map(|s| s.f).collect()
    }

    pub fn df(&self) -> Vec<f64> {
        self.sol.trajectory.samples.iter().map(|s| s.df).collect()
    }

    pub fn d2f(&self) -> Vec<f64> {
        self.sol.trajectory.samples.iter().map(|s| s.d2f).collect()
    }
}

/// Solves one problem. `family` is `moving-wall` or `gasification`.
#[wasm_bindgen]
pub fn solve(family: &str, p_star: f64, sign: i32) -> Result<Solution, JsError> {
    let family: Family = family.parse().map_err(js_err)?;
    let problem = SimilarityProblem::new(family, p_star, parse_sign(sign)?);
    let sol = solve_with_policy(&problem, &IntegratorConfig::default(), EtaPolicy::Auto)
        .map_err(js_err)?;
    Ok(Solution { sol })
}

/// `(P, f''(0))` pairs, interleaved, for `n` star parameters spread over
/// `[lo, hi]` on a sinh scale. Failed solves are skipped.
#[wasm_bindgen]
pub fn branch(sign: i32, lo: f64, hi: f64, n: usize) -> Result<Vec<f64>, JsError> {
    let sign = parse_sign(sign)?;
    let n = n.max(2);
    let (a, b) = (lo.asinh(), hi.asinh());
    let grid: Vec<f64> = (0..n)
        .map(|i| (a + (b - a) * i as f64 / (n - 1) as f64).sinh())
        .collect();
    let rows = sweep(
        Family::MovingWall,
        &grid,
        SignPolicy::Fixed(sign),
        &IntegratorConfig::default(),
        EtaPolicy::Auto,
    );
    Ok(rows
        .iter()
        .filter(|r| r.is_ok())
        .flat_map(|r| [r.p_physical, r.d2f0])
        .collect())
}

/// `[P_c, P*, f''(0)]` at the fold of the upper moving-wall branch.
#[wasm_bindgen]
pub fn critical() -> Result<Vec<f64>, JsError> {
    let cfg = IntegratorConfig::default();
    let c = find_critical_parameter(
        Family::MovingWall,
        Sign::Plus,
        FOLD_BRACKET,
        &cfg,
        EtaPolicy::Auto,
    )
    .map_err(js_err)?;
    let at_fold = solve_with_policy(
        &SimilarityProblem::moving_wall(c.p_star_at_pc, Sign::Plus),
        &cfg,
        EtaPolicy::Auto,
    )
    .map_err(js_err)?;
    Ok(vec![c.p_c, c.p_star_at_pc, at_fold.d2f0])
}

/// Plain-text invariance report for a family.
#[wasm_bindgen]
pub fn invariance(family: &str) -> Result<String, JsError> {
    let family: Family = family.parse().map_err(js_err)?;
    Ok(analyze_family(family).to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    // Only success paths: building a `JsError` needs a JS host.
    #[test]
    fn solve_blasius() {
        let s = solve("moving-wall", 0.0, 1).ok().unwrap();
        assert!((s.d2f0() - 0.332057).abs() < 1e-6);
        assert_eq!(s.eta().len(), s.d2f().len());
    }

    #[test]
    fn branch_pairs_and_fold() {
        let pts = branch(1, -2.0, 2.0, 9).ok().unwrap();
        assert_eq!(pts.len(), 18);
        let c = critical().ok().unwrap();
        assert!((c[0] + 0.5483).abs() < 1e-3);
        assert!(pts.chunks(2).all(|p| p[0] >= c[0]));
    }

    #[test]
    fn invariance_text() {
        assert!(invariance("falkner-skan")
            .ok()
            .unwrap()
            .contains("nullspace is trivial"));
    }
}
