//! Third-order similarity ODEs and their initial value integration.
//!
//! Every problem handled by the crate reduces to the scalar equation
//!
//! ```text
//! f''' + c f f'' + P (1 - f'^2) [fs_term] = 0
//! ```
//!
//! written as a first-order system in `(f, f', f'')` and integrated with an
//! embedded Dormand-Prince 5(4) pair and PI step-size control.

use crate::error::{NitmError, Result};

/// Right-hand side descriptor of the similarity equation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OdeField {
    /// Coefficient of the `f f''` term.
    pub c: f64,
    /// Enables the Falkner-Skan pressure-gradient term `P (1 - f'^2)`.
    pub fs_term: bool,
    /// Parameter multiplying the Falkner-Skan term. Ignored when `fs_term` is off.
    pub p: f64,
}

impl OdeField {
    pub fn blasius(c: f64) -> Self {
        OdeField {
            c,
            fs_term: false,
            p: 0.0,
        }
    }

    pub fn falkner_skan(p: f64) -> Self {
        OdeField {
            c: 1.0,
            fs_term: true,
            p,
        }
    }

    /// Third derivative `f'''` at the given state.
    #[inline]
    pub fn third_derivative(&self, f: f64, df: f64, d2f: f64) -> f64 {
        let mut d3f = -self.c * f * d2f;
        if self.fs_term {
            d3f -= self.p * (1.0 - df * df);
        }
        d3f
    }

    #[inline]
    fn rhs(&self, y: &[f64; 3]) -> [f64; 3] {
        [y[1], y[2], self.third_derivative(y[0], y[1], y[2])]
    }
}

/// A point `(eta, f, f', f'')` of a trajectory.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IvpState {
    pub eta: f64,
    pub f: f64,
    pub df: f64,
    pub d2f: f64,
}

impl IvpState {
    pub fn new(eta: f64, f: f64, df: f64, d2f: f64) -> Self {
        IvpState { eta, f, df, d2f }
    }

    pub fn is_finite(&self) -> bool {
        self.eta.is_finite() && self.f.is_finite() && self.df.is_finite() && self.d2f.is_finite()
    }

    fn vector(&self) -> [f64; 3] {
        [self.f, self.df, self.d2f]
    }
}

/// Integration record on `[0, eta_inf]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    /// Accepted steps, strictly increasing in `eta`, from `0` to `eta_inf`.
    pub samples: Vec<IvpState>,
    pub eta_inf: f64,
    /// Estimate of `f'(inf)`, the `f'` of the last sample.
    pub df_terminal: f64,
    /// Whether `|f''(eta_inf)|` fell below the plateau tolerance.
    pub plateau_ok: bool,
}

impl Trajectory {
    /// Builds a trajectory from samples, recomputing the terminal fields.
    pub fn from_samples(samples: Vec<IvpState>, plateau_tol: f64) -> Self {
        let last = *samples
            .last()
            .expect("trajectory needs at least one sample");
        Trajectory {
            eta_inf: last.eta,
            df_terminal: last.df,
            plateau_ok: last.d2f.abs() < plateau_tol,
            samples,
        }
    }

    pub fn first(&self) -> &IvpState {
        &self.samples[0]
    }

    pub fn last(&self) -> &IvpState {
        self.samples.last().expect("trajectory is never empty")
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// `n` equally spaced samples on `[eta_0, eta_inf]` for plotting.
    ///
    /// `f` and `f'` use cubic Hermite interpolation with the stored next
    /// derivative as slope; `f''` is interpolated linearly.
    pub fn resample_uniform(&self, n: usize) -> Trajectory {
        let n = n.max(2);
        let (a, b) = (self.first().eta, self.eta_inf);
        let mut k = 0;
        let samples = (0..n)
            .map(|i| {
                let eta = if i + 1 == n {
                    b
                } else {
                    a + (b - a) * i as f64 / (n - 1) as f64
                };
                while k + 2 < self.samples.len() && self.samples[k + 1].eta < eta {
                    k += 1;
                }
                let (p, q) = match self.samples.get(k + 1) {
                    Some(q) => (self.samples[k], *q),
                    None => return self.samples[k],
                };
                let h = q.eta - p.eta;
                let t = ((eta - p.eta) / h).clamp(0.0, 1.0);
                let hermite = |y0: f64, y1: f64, d0: f64, d1: f64| {
                    let (t2, t3) = (t * t, t * t * t);
                    (2.0 * t3 - 3.0 * t2 + 1.0) * y0
                        + (t3 - 2.0 * t2 + t) * h * d0
                        + (-2.0 * t3 + 3.0 * t2) * y1
                        + (t3 - t2) * h * d1
                };
                IvpState {
                    eta,
                    f: hermite(p.f, q.f, p.df, q.df),
                    df: hermite(p.df, q.df, p.d2f, q.d2f),
                    d2f: p.d2f + t * (q.d2f - p.d2f),
                }
            })
            .collect();
        Trajectory {
            samples,
            ..self.clone()
        }
    }
}

/// Error-control and work limits for [`integrate_ivp`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegratorConfig {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub initial_step: f64,
    pub max_steps: usize,
    /// Threshold on `|f''(eta_inf)|` certifying that `f'` has flattened.
    pub plateau_tol: f64,
    /// Upper bound on the step size.
    pub max_step: f64,
}

impl Default for IntegratorConfig {
    fn default() -> Self {
        IntegratorConfig {
            rel_tol: 1e-10,
            abs_tol: 1e-10,
            initial_step: 1e-3,
            max_steps: 1_000_000,
            plateau_tol: 1e-6,
            max_step: f64::INFINITY,
        }
    }
}

impl IntegratorConfig {
    pub fn with_tolerances(rel_tol: f64, abs_tol: f64) -> Self {
        IntegratorConfig {
            rel_tol,
            abs_tol,
            ..Default::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("rel_tol", self.rel_tol),
            ("abs_tol", self.abs_tol),
            ("initial_step", self.initial_step),
            ("plateau_tol", self.plateau_tol),
            ("max_step", self.max_step),
        ];
        for (name, v) in positive {
            if v.is_nan() || v <= 0.0 {
                return Err(NitmError::InvalidInput(format!(
                    "{name} must be positive, got {v}"
                )));
            }
        }
        if self.max_steps == 0 {
            return Err(NitmError::InvalidInput("max_steps must be positive".into()));
        }
        Ok(())
    }
}

// Dormand-Prince 5(4) tableau. The equation is autonomous, so the nodes are not needed.
const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const A71: f64 = 35.0 / 384.0;
const A73: f64 = 500.0 / 1113.0;
const A74: f64 = 125.0 / 192.0;
const A75: f64 = -2187.0 / 6784.0;
const A76: f64 = 11.0 / 84.0;

// Difference between the 5th and 4th order weights.
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

const SAFETY: f64 = 0.9;
const FAC_MIN: f64 = 0.2;
const FAC_MAX: f64 = 10.0;
const BETA: f64 = 0.04;
const ALPHA: f64 = 0.2 - BETA * 0.75;

#[inline]
fn axpy(y: &[f64; 3], h: f64, terms: &[(f64, &[f64; 3])]) -> [f64; 3] {
    let mut out = *y;
    for (coef, k) in terms {
        for i in 0..3 {
            out[i] += h * coef * k[i];
        }
    }
    out
}

/// Integrates the similarity IVP from `y0` (at `eta = 0`) to `eta_inf`.
///
/// Samples are recorded at every accepted step; the final step is clipped so
/// that the last sample sits exactly on `eta_inf`.
pub fn integrate_ivp(
    field: &OdeField,
    y0: IvpState,
    eta_inf: f64,
    cfg: &IntegratorConfig,
) -> Result<Trajectory> {
    cfg.validate()?;
    if y0.eta != 0.0 {
        return Err(NitmError::InvalidInput(format!(
            "initial state must sit at eta = 0, got {}",
            y0.eta
        )));
    }
    if eta_inf <= 0.0 || !eta_inf.is_finite() {
        return Err(NitmError::InvalidInput(format!(
            "eta_inf must be positive and finite, got {eta_inf}"
        )));
    }
    if !y0.is_finite() {
        return Err(NitmError::NonFinite { eta: 0.0 });
    }

    let mut samples = vec![y0];
    let mut t = 0.0;
    let mut y = y0.vector();
    let mut k1 = field.rhs(&y);
    let mut h = cfg.initial_step.min(cfg.max_step).min(eta_inf);
    let mut err_prev: f64 = 1e-4;
    let mut rejected = false;
    let mut steps = 0usize;

    while t < eta_inf {
        steps += 1;
        if steps > cfg.max_steps {
            return Err(NitmError::StepLimit {
                max_steps: cfg.max_steps,
                eta: t,
            });
        }
        let last = t + h >= eta_inf;
        if last {
            h = eta_inf - t;
        }

        let k2 = field.rhs(&axpy(&y, h, &[(A21, &k1)]));
        let k3 = field.rhs(&axpy(&y, h, &[(A31, &k1), (A32, &k2)]));
        let k4 = field.rhs(&axpy(&y, h, &[(A41, &k1), (A42, &k2), (A43, &k3)]));
        let k5 = field.rhs(&axpy(
            &y,
            h,
            &[(A51, &k1), (A52, &k2), (A53, &k3), (A54, &k4)],
        ));
        let k6 = field.rhs(&axpy(
            &y,
            h,
            &[(A61, &k1), (A62, &k2), (A63, &k3), (A64, &k4), (A65, &k5)],
        ));
        let y_new = axpy(
            &y,
            h,
            &[(A71, &k1), (A73, &k3), (A74, &k4), (A75, &k5), (A76, &k6)],
        );
        let k7 = field.rhs(&y_new);

        let mut err_sq = 0.0;
        for i in 0..3 {
            let e =
                h * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] + E7 * k7[i]);
            let scale = cfg.abs_tol + cfg.rel_tol * y[i].abs().max(y_new[i].abs());
            err_sq += (e / scale).powi(2);
        }
        let err = (err_sq / 3.0).sqrt();

        if !err.is_finite() || !y_new.iter().all(|v| v.is_finite()) {
            // A non-finite trial step may just be too long; shrink before giving up.
            h *= FAC_MIN;
            if h < f64::EPSILON * t.max(1.0) {
                return Err(NitmError::NonFinite { eta: t });
            }
            rejected = true;
            continue;
        }

        if err <= 1.0 {
            let fac = if err == 0.0 {
                FAC_MAX
            } else {
                SAFETY * err.powf(-ALPHA) * err_prev.powf(BETA)
            };
            let mut fac = fac.clamp(FAC_MIN, FAC_MAX);
            if rejected {
                fac = fac.min(1.0);
            }
            err_prev = err.max(1e-4);
            t = if last { eta_inf } else { t + h };
            y = y_new;
            k1 = k7;
            samples.push(IvpState::new(t, y[0], y[1], y[2]));
            h = (h * fac).min(cfg.max_step);
            rejected = false;
        } else {
            let fac = (SAFETY * err.powf(-ALPHA)).clamp(FAC_MIN, 1.0);
            h *= fac;
            rejected = true;
            if h < f64::EPSILON * t.max(1.0) {
                return Err(NitmError::NonFinite { eta: t });
            }
        }
    }

    Ok(Trajectory::from_samples(samples, cfg.plateau_tol))
}

/// Outcome of [`estimate_truncated_boundary`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncationChoice {
    pub eta_inf: f64,
    /// False when no candidate met the plateau criterion and the largest
    /// candidate was returned as a fallback.
    pub converged: bool,
}

/// Picks the smallest truncated boundary whose solution has flattened.
///
/// A candidate qualifies when its trajectory passes the plateau check and
/// `f'(eta_inf)` moves by less than `plateau_tol` at the next candidate.
/// The last candidate can only qualify through a previous one, so it is
/// returned unconverged when nothing else does.
pub fn estimate_truncated_boundary(
    field: &OdeField,
    y0: IvpState,
    cfg: &IntegratorConfig,
    eta_candidates: &[f64],
) -> Result<TruncationChoice> {
    if eta_candidates.is_empty() {
        return Err(NitmError::InvalidInput("no truncation candidates".into()));
    }
    if eta_candidates.windows(2).any(|w| w[1] <= w[0]) {
        return Err(NitmError::InvalidInput(
            "truncation candidates must be increasing".into(),
        ));
    }

    let mut prev: Option<(f64, Trajectory)> = None;
    for &eta in eta_candidates {
        let traj = integrate_ivp(field, y0, eta, cfg)?;
        if let Some((prev_eta, prev_traj)) = &prev {
            if prev_traj.plateau_ok
                && (traj.df_terminal - prev_traj.df_terminal).abs() < cfg.plateau_tol
            {
                return Ok(TruncationChoice {
                    eta_inf: *prev_eta,
                    converged: true,
                });
            }
        }
        prev = Some((eta, traj));
    }
    Ok(TruncationChoice {
        eta_inf: *eta_candidates.last().unwrap(),
        converged: false,
    })
}
