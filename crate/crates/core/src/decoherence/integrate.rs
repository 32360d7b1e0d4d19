//! Fixed-step RK4 integration of dρ/dt = i[ρ,H] − σ(t)[[ρ,H],H].
//!
//! The integrator never uses the closed-form damping; it builds H as a
//! dense matrix and evaluates both commutators by matrix products, so it
//! serves as an independent check of [`propagate_analytic`].
//!
//! In paper-exponent mode the effective rate σ_eff(t) = (2/3) t_p^{4/3}
//! t^{−1/3} diverges at t = 0. Uniform RK4 steps in t then converge only
//! as h^{2/3}. The default grid instead steps uniformly in the clock
//! variable s = t^{1/3}: with t = s³ the equation becomes
//!
//! ```text
//! dρ/ds = 3s² i[ρ,H] − 2 t_p^{4/3} s [[ρ,H],H]
//! ```
//!
//! whose coefficients are polynomial in s, so RK4 keeps its fourth order.

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::dephasing::{sigma_of_t, DecoherenceParams, ExponentMode};
use super::propagate::propagate_analytic;
use super::state::{DensityMatrix, PureState, Spectrum};
use crate::error::{Error, Result};

type Mat = DMatrix<Complex64>;

/// Spacing of the RK4 steps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TimeGrid {
    /// h = t_end / steps. In paper-exponent mode σ_eff(0) is evaluated
    /// at t = h/100.
    Uniform,
    /// Uniform in s = t^{1/3}; samples at t_k = t_end (k/steps)³.
    CubeRoot,
}

impl TimeGrid {
    /// The grid on which `mode` integrates to fourth order.
    pub fn natural_for(mode: ExponentMode) -> Self {
        match mode {
            ExponentMode::PaperExponent => TimeGrid::CubeRoot,
            ExponentMode::IntegratedSigma => TimeGrid::Uniform,
        }
    }

    fn clock_end(self, t_end: f64) -> f64 {
        match self {
            TimeGrid::Uniform => t_end,
            TimeGrid::CubeRoot => t_end.cbrt(),
        }
    }

    fn time_at(self, s: f64) -> f64 {
        match self {
            TimeGrid::Uniform => s,
            TimeGrid::CubeRoot => s * s * s,
        }
    }

    /// Sample times for `steps` steps ending exactly at `t_end`.
    pub fn sample_times(self, t_end: f64, steps: usize) -> Vec<f64> {
        let s_end = self.clock_end(t_end);
        let mut times: Vec<f64> = (0..=steps)
            .map(|k| self.time_at(s_end * k as f64 / steps as f64))
            .collect();
        if let Some(last) = times.last_mut() {
            *last = t_end;
        }
        times
    }
}

/// Coefficients of the transformed right-hand side at clock value s:
/// dρ/ds = a(s)·i[ρ,H] − b(s)·[[ρ,H],H].
struct Schedule {
    grid: TimeGrid,
    params: DecoherenceParams,
    /// Regularization point for σ_eff on the uniform grid.
    t_floor: f64,
}

impl Schedule {
    fn weights(&self, s: f64) -> Result<(f64, f64)> {
        let p = &self.params;
        if p.t_p_eff == 0.0 {
            let a = match self.grid {
                TimeGrid::Uniform => 1.0,
                TimeGrid::CubeRoot => 3.0 * s * s,
            };
            return Ok((a, 0.0));
        }
        Ok(match (self.grid, p.mode) {
            (TimeGrid::Uniform, ExponentMode::PaperExponent) => {
                let t = s.max(self.t_floor);
                (1.0, 2.0 / 3.0 * p.tp43() / t.cbrt())
            }
            (TimeGrid::Uniform, ExponentMode::IntegratedSigma) => (1.0, sigma_of_t(s, p)?),
            (TimeGrid::CubeRoot, ExponentMode::PaperExponent) => (3.0 * s * s, 2.0 * p.tp43() * s),
            (TimeGrid::CubeRoot, ExponentMode::IntegratedSigma) => {
                let jac = 3.0 * s * s;
                (jac, jac * sigma_of_t(s * s * s, p)?)
            }
        })
    }
}

/// One sample of a trajectory.
#[derive(Debug, Clone, PartialEq)]
pub struct Sample {
    pub t: f64,
    pub rho: DensityMatrix,
}

pub type Trajectory = Vec<Sample>;

fn rhs(rho: &Mat, h: &Mat, a: f64, b: f64) -> Mat {
    let comm = rho * h - h * rho;
    let double = &comm * h - h * &comm;
    comm * Complex64::new(0.0, a) - double * Complex64::new(b, 0.0)
}

/// Integrates on the grid natural to `params.mode`.
pub fn evolve_numeric(
    rho0: &DensityMatrix,
    spectrum: &Spectrum,
    t_end: f64,
    steps: usize,
    params: &DecoherenceParams,
) -> Result<Trajectory> {
    evolve_numeric_on(
        rho0,
        spectrum,
        t_end,
        steps,
        params,
        TimeGrid::natural_for(params.mode),
    )
}

pub fn evolve_numeric_on(
    rho0: &DensityMatrix,
    spectrum: &Spectrum,
    t_end: f64,
    steps: usize,
    params: &DecoherenceParams,
    grid: TimeGrid,
) -> Result<Trajectory> {
    if rho0.dim() != spectrum.dim() {
        return Err(Error::Shape {
            expected: spectrum.dim(),
            actual: rho0.dim(),
        });
    }
    if !(t_end >= 0.0 && t_end.is_finite()) {
        return Err(Error::domain(format!(
            "t_end must be finite and >= 0, got {t_end}"
        )));
    }
    if steps == 0 {
        return Err(Error::domain("steps must be >= 1"));
    }
    if params.mode == ExponentMode::IntegratedSigma {
        let t_max = params.require_t_max()?;
        if t_end >= t_max {
            return Err(Error::Horizon { t_end, t_max });
        }
    }
    if t_end == 0.0 {
        return Ok(vec![Sample {
            t: 0.0,
            rho: rho0.clone(),
        }]);
    }

    let times = grid.sample_times(t_end, steps);
    let s_end = grid.clock_end(t_end);
    let hs = s_end / steps as f64;
    let schedule = Schedule {
        grid,
        params: *params,
        t_floor: hs / 100.0,
    };
    let ham = spectrum.hamiltonian();

    let mut out = Vec::with_capacity(steps + 1);
    let mut rho = rho0.entries().clone();
    out.push(Sample {
        t: 0.0,
        rho: rho0.clone(),
    });
    for k in 0..steps {
        let s = s_end * k as f64 / steps as f64;
        let (a0, b0) = schedule.weights(s)?;
        let (am, bm) = schedule.weights(s + hs / 2.0)?;
        let (a1, b1) = schedule.weights(s + hs)?;
        let half = Complex64::new(hs / 2.0, 0.0);
        let k1 = rhs(&rho, &ham, a0, b0);
        let k2 = rhs(&(&rho + &k1 * half), &ham, am, bm);
        let k3 = rhs(&(&rho + &k2 * half), &ham, am, bm);
        let k4 = rhs(&(&rho + &k3 * Complex64::new(hs, 0.0)), &ham, a1, b1);
        rho += (k1 + (k2 + k3) * Complex64::new(2.0, 0.0) + k4) * Complex64::new(hs / 6.0, 0.0);
        if rho.iter().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
            return Err(Error::Instability { step: k + 1 });
        }
        out.push(Sample {
            t: times[k + 1],
            rho: DensityMatrix::from_raw(rho.clone()),
        });
    }
    Ok(out)
}

/// Largest entrywise gap between a trajectory and the closed form at the
/// same sample times.
pub fn max_discrepancy(
    trajectory: &[Sample],
    state: &PureState,
    spectrum: &Spectrum,
    params: &DecoherenceParams,
) -> Result<f64> {
    trajectory.iter().try_fold(0.0f64, |worst, s| {
        let exact = propagate_analytic(state, spectrum, s.t, params)?;
        Ok(worst.max(s.rho.max_abs_diff(&exact)))
    })
}

/// Residuals of the integrator against the closed form at `steps` and
/// `2 * steps`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergenceCheck {
    pub residual: f64,
    pub residual_half_step: f64,
}

impl ConvergenceCheck {
    /// Shrink factor when the step is halved (16 for a fourth-order method).
    pub fn ratio(&self) -> f64 {
        self.residual / self.residual_half_step
    }
}

/// Compares the endpoint of the integrated trajectory with the closed form,
/// at the given step count and at twice as many steps.
pub fn convergence_check(
    state: &PureState,
    spectrum: &Spectrum,
    t_end: f64,
    steps: usize,
    params: &DecoherenceParams,
) -> Result<ConvergenceCheck> {
    let rho0 = state.projector();
    let exact = propagate_analytic(state, spectrum, t_end, params)?;
    let endpoint_error = |n: usize| -> Result<f64> {
        let traj = evolve_numeric(&rho0, spectrum, t_end, n, params)?;
        Ok(traj
            .last()
            .expect("nonempty trajectory")
            .rho
            .max_abs_diff(&exact))
    };
    Ok(ConvergenceCheck {
        residual: endpoint_error(steps)?,
        residual_half_step: endpoint_error(2 * steps)?,
    })
}
