//! Clock-noise rate σ(t) and the off-diagonal damping exponent it produces.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::LogScalar;

/// How the damping exponent Γ depends on time.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExponentMode {
    /// Γ = Δω² t_p^{4/3} t^{2/3}, unit coefficient.
    #[default]
    PaperExponent,
    /// Γ = Δω² ∫₀ᵗ σ(s) ds with σ(s) = (t_p/36)(t_p/(T_max − s))^{1/3}.
    IntegratedSigma,
}

impl ExponentMode {
    pub fn name(self) -> &'static str {
        match self {
            ExponentMode::PaperExponent => "paper-exponent",
            ExponentMode::IntegratedSigma => "integrated-sigma",
        }
    }
}

impl fmt::Display for ExponentMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ExponentMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "paper-exponent" => Ok(ExponentMode::PaperExponent),
            "integrated-sigma" => Ok(ExponentMode::IntegratedSigma),
            other => Err(Error::invalid("mode", format!("unknown mode '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecoherenceParams {
    /// Effective Planck time in simulation units. Zero switches the
    /// clock noise off.
    pub t_p_eff: f64,
    pub mode: ExponentMode,
    /// Horizon T_max of the clock-noise schedule.
    pub t_max: Option<f64>,
}

impl DecoherenceParams {
    pub fn new(t_p_eff: f64, mode: ExponentMode, t_max: Option<f64>) -> Result<Self> {
        if !(t_p_eff.is_finite() && t_p_eff >= 0.0) {
            return Err(Error::invalid(
                "tp_eff",
                format!("must be finite and >= 0, got {t_p_eff}"),
            ));
        }
        if let Some(t) = t_max {
            if !(t.is_finite() && t > 0.0) {
                return Err(Error::invalid(
                    "t_max",
                    format!("must be finite and > 0, got {t}"),
                ));
            }
        }
        if mode == ExponentMode::IntegratedSigma && t_max.is_none() {
            return Err(Error::invalid("t_max", "required by integrated-sigma mode"));
        }
        Ok(DecoherenceParams {
            t_p_eff,
            mode,
            t_max,
        })
    }

    pub fn paper(t_p_eff: f64) -> Result<Self> {
        Self::new(t_p_eff, ExponentMode::PaperExponent, None)
    }

    pub fn integrated(t_p_eff: f64, t_max: f64) -> Result<Self> {
        Self::new(t_p_eff, ExponentMode::IntegratedSigma, Some(t_max))
    }

    pub(crate) fn require_t_max(&self) -> Result<f64> {
        self.t_max
            .ok_or_else(|| Error::invalid("t_max", "the clock-noise schedule needs a horizon"))
    }

    /// t_p^{4/3}
    pub(crate) fn tp43(&self) -> f64 {
        self.t_p_eff.powf(4.0 / 3.0)
    }
}

/// σ(t) = (t_p/36)·(t_p/(T_max − t))^{1/3}.
pub fn sigma_of_t(t: f64, params: &DecoherenceParams) -> Result<f64> {
    let t_max = params.require_t_max()?;
    if t.is_nan() || t < 0.0 {
        return Err(Error::domain(format!("t must be >= 0, got {t}")));
    }
    if t >= t_max {
        return Err(Error::Singularity { t, t_max });
    }
    let tp = params.t_p_eff;
    Ok(tp / 36.0 * (tp / (t_max - t)).cbrt())
}

/// ∫₀ᵗ σ(s) ds = (t_p^{4/3}/24)(T_max^{2/3} − (T_max − t)^{2/3}), for t ≤ T_max.
pub(crate) fn integrated_sigma(t: f64, t_p_eff: f64, t_max: f64) -> f64 {
    // T^{2/3}(1 − (1 − t/T)^{2/3}) without cancellation at small t.
    let bracket = -t_max.powf(2.0 / 3.0) * ((2.0 / 3.0) * (-t / t_max).ln_1p()).exp_m1();
    t_p_eff.powf(4.0 / 3.0) / 24.0 * bracket
}

/// Damping exponent Γ(Δω, t) of the coherence ρ_{mn}, as a log scalar.
pub fn decoherence_exponent(
    delta_omega: f64,
    t: f64,
    params: &DecoherenceParams,
) -> Result<LogScalar> {
    if !t.is_finite() || t < 0.0 {
        return Err(Error::domain(format!("t must be >= 0, got {t}")));
    }
    if !delta_omega.is_finite() {
        return Err(Error::domain("delta_omega must be finite"));
    }
    let gap2 = LogScalar::from_real(delta_omega).powr(2, 1)?;
    let tp = LogScalar::from_real(params.t_p_eff);
    match params.mode {
        ExponentMode::PaperExponent => {
            Ok(gap2 * tp.powr(4, 3)? * LogScalar::from_real(t).powr(2, 3)?)
        }
        ExponentMode::IntegratedSigma => {
            let t_max = params.require_t_max()?;
            if t > t_max {
                return Err(Error::domain(format!("t = {t} exceeds t_max = {t_max}")));
            }
            Ok(gap2 * LogScalar::from_real(integrated_sigma(t, params.t_p_eff, t_max)))
        }
    }
}

/// e^{−Γ} as a native factor; an overflowing Γ damps to exactly zero.
pub(crate) fn damping_factor(gamma: LogScalar) -> f64 {
    match gamma.to_real() {
        (g, crate::numerics::RangeFlag::ExactRange) => (-g).exp(),
        (_, crate::numerics::RangeFlag::UnderflowClampedToZero) => 1.0,
        (_, crate::numerics::RangeFlag::OverflowClampedToInf) => 0.0,
    }
}
