//! Two-column plot data for the profile and branch figures.

use std::fs::File;
use std::io::{BufWriter, Write};

use simnitm::analysis::{
    default_target_bracket, solve_for_target_p, solve_with_policy, sweep, EtaPolicy, SignPolicy,
};
use simnitm::ode::{IntegratorConfig, Trajectory};
use simnitm::output::write_series;
use simnitm::problems::{Family, Sign, SimilarityProblem};

use crate::{CliError, Common};

fn series(
    common: &Common,
    stem: &str,
    x: &str,
    y: &str,
    points: Vec<(f64, f64)>,
) -> Result<(), CliError> {
    let path = common.path(stem)?;
    let mut w = BufWriter::new(File::create(&path)?);
    write_series(&mut w, x, y, points, common.delimiter())?;
    w.flush()?;
    println!("{}", path.display());
    Ok(())
}

/// `f`, `f'` and `f''` profiles of one trajectory, one file each.
fn profiles(
    common: &Common,
    prefix: &str,
    traj: &Trajectory,
    star: bool,
    resample: Option<usize>,
) -> Result<(), CliError> {
    let resampled;
    let traj = match resample {
        Some(n) => {
            resampled = traj.resample_uniform(n);
            &resampled
        }
        None => traj,
    };
    let (eta, suffix) = if star {
        ("eta_star", "_star")
    } else {
        ("eta", "")
    };
    for (name, k) in [("f", 0), ("df", 1), ("d2f", 2)] {
        let points = traj
            .samples
            .iter()
            .map(|s| (s.eta, [s.f, s.df, s.d2f][k]))
            .collect();
        series(
            common,
            &format!("{prefix}_{name}{suffix}"),
            eta,
            &format!("{name}{suffix}"),
            points,
        )?;
    }
    Ok(())
}

/// Star parameters dense around zero and the fold, sparse in the tails.
fn sinh_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let (a, b) = (lo.asinh(), hi.asinh());
    (0..n)
        .map(|i| (a + (b - a) * i as f64 / (n - 1) as f64).sinh())
        .collect()
}

fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let (a, b) = (lo.ln(), hi.ln());
    (0..n)
        .map(|i| (a + (b - a) * i as f64 / (n - 1) as f64).exp())
        .collect()
}

pub fn write_all(
    cfg: &IntegratorConfig,
    eta: EtaPolicy,
    resample: Option<usize>,
    common: &Common,
) -> Result<(), CliError> {
    // Sakiadis problem: star IVP and rescaled solution.
    let bracket = default_target_bracket(Family::MovingWall, 1.0, Sign::Minus, cfg, eta)
        .unwrap_or((1.5, 2.0));
    let sakiadis = solve_for_target_p(Family::MovingWall, 1.0, Sign::Minus, bracket, cfg, eta)?;
    profiles(common, "fig1", &sakiadis.star, true, resample)?;
    profiles(common, "fig1", &sakiadis.trajectory, false, resample)?;

    // Skin friction against P on both moving-wall branches.
    let ok = |rows: Vec<simnitm::analysis::SweepRow>| -> Vec<(f64, f64)> {
        rows.into_iter()
            .filter(|r| r.is_ok())
            .map(|r| (r.p_physical, r.d2f0))
            .collect()
    };
    let upper = sweep(
        Family::MovingWall,
        &sinh_grid(-500.0, 500.0, 301),
        SignPolicy::Fixed(Sign::Plus),
        cfg,
        eta,
    );
    series(common, "fig2_plus", "P", "d2f0", ok(upper))?;
    let lower = sweep(
        Family::MovingWall,
        &log_grid(sakiadis.p_star, 500.0, 101),
        SignPolicy::Fixed(Sign::Minus),
        cfg,
        eta,
    );
    series(common, "fig2_minus", "P", "d2f0", ok(lower))?;

    // Gasification at P* = 1.
    let gas = solve_with_policy(&SimilarityProblem::gasification(1.0), cfg, eta)?;
    profiles(common, "fig3", &gas.star, true, resample)?;
    profiles(common, "fig3", &gas.trajectory, false, resample)?;

    // Wall values against the transfer number.
    let grid: Vec<f64> = (0..=80).map(|i| i as f64 * 0.05).collect();
    let rows: Vec<_> = sweep(
        Family::Gasification,
        &grid,
        SignPolicy::Fixed(Sign::Plus),
        cfg,
        eta,
    )
    .into_iter()
    .filter(|r| r.is_ok())
    .collect();
    series(
        common,
        "fig4_f0",
        "P",
        "f0",
        rows.iter().map(|r| (r.p_physical, r.f0)).collect(),
    )?;
    series(
        common,
        "fig4_d2f0",
        "P",
        "d2f0",
        rows.iter().map(|r| (r.p_physical, r.d2f0)).collect(),
    )?;
    Ok(())
}
