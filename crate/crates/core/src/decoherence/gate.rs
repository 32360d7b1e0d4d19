//! NOT-gate error from clock-induced dephasing.
//!
//! The gate rotates (|E₀⟩+|E₁⟩)/√2 into (|E₀⟩−|E₁⟩)/√2 in the
//! Margolus–Levitin time t = πħ/(2E), with E₀ = 0 and E₁ = 2E so the mean
//! energy is E. The coherence shrinks by D = exp(−Δω² t_P^{4/3} t^{2/3}),
//! Δω = 2E/ħ.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::{LogScalar, RangeFlag};
use crate::physics::PhysConstants;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GateVariant {
    /// 4 t_P^{4/3} t^{2/3} (E/ħ)², the first-order expansion of 1 − D.
    PaperLinearized,
    ExactOneMinusD,
    /// (1 − D)/2 = 1 − ⟨ψ₁|ρ(t)|ψ₁⟩.
    FidelityError,
}

impl GateVariant {
    pub const ALL: [GateVariant; 3] = [
        GateVariant::PaperLinearized,
        GateVariant::ExactOneMinusD,
        GateVariant::FidelityError,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GateVariant::PaperLinearized => "paper-linearized",
            GateVariant::ExactOneMinusD => "exact-one-minus-d",
            GateVariant::FidelityError => "fidelity-error",
        }
    }
}

impl fmt::Display for GateVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GateVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        GateVariant::ALL
            .into_iter()
            .find(|v| v.name() == s)
            .ok_or_else(|| Error::invalid("variant", format!("unknown variant '{s}'")))
    }
}

/// Intermediate quantities of the gate-error computation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GateAnalysis {
    pub energy_j: f64,
    /// πħ/(2E), seconds.
    pub t_op: LogScalar,
    /// 2E/ħ, s⁻¹.
    pub delta_omega: LogScalar,
    /// Δω² t_P^{4/3} t^{2/3}.
    pub gamma: LogScalar,
    /// e^{−Γ}.
    pub coherence: LogScalar,
}

impl GateAnalysis {
    pub fn new(energy_j: f64, k: &PhysConstants) -> Result<Self> {
        if !(energy_j > 0.0 && energy_j.is_finite()) {
            return Err(Error::domain(format!("energy must be > 0, got {energy_j}")));
        }
        let e = LogScalar::from_real(energy_j);
        let hbar = LogScalar::from_real(k.hbar);
        let t_op = LogScalar::from_real(PI / 2.0) * hbar / e;
        let delta_omega = LogScalar::from_real(2.0) * e / hbar;
        let gamma =
            delta_omega.powr(2, 1)? * LogScalar::from_real(k.t_p).powr(4, 3)? * t_op.powr(2, 3)?;
        // log10 e^{−Γ} = −Γ / ln 10
        let coherence = match gamma.to_real() {
            (g, RangeFlag::ExactRange) => LogScalar::pow10(-g / std::f64::consts::LN_10),
            (_, RangeFlag::UnderflowClampedToZero) => LogScalar::ONE,
            (_, RangeFlag::OverflowClampedToInf) => LogScalar::ZERO,
        };
        Ok(GateAnalysis {
            energy_j,
            t_op,
            delta_omega,
            gamma,
            coherence,
        })
    }

    /// 1 − D, accurate for both tiny and huge Γ.
    pub fn one_minus_d(&self) -> LogScalar {
        match self.gamma.to_real() {
            // 1 − e^{−Γ} = Γ to within Γ² when Γ is below f64 range
            (_, RangeFlag::UnderflowClampedToZero) => self.gamma,
            (_, RangeFlag::OverflowClampedToInf) => LogScalar::ONE,
            (g, RangeFlag::ExactRange) => LogScalar::from_real(-(-g).exp_m1()),
        }
    }

    pub fn error(&self, variant: GateVariant) -> LogScalar {
        match variant {
            // 4 t_P^{4/3} t^{2/3} (E/ħ)² is Γ itself, since Δω² = 4 (E/ħ)².
            GateVariant::PaperLinearized => self.gamma,
            GateVariant::ExactOneMinusD => self.one_minus_d(),
            GateVariant::FidelityError => self.one_minus_d() * LogScalar::from_real(0.5),
        }
    }
}

/// Error probability per NOT gate at energy `energy_j`.
pub fn not_gate_error(energy_j: f64, variant: GateVariant, k: &PhysConstants) -> Result<LogScalar> {
    Ok(GateAnalysis::new(energy_j, k)?.error(variant))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn paper_linearized_at_1e16_joules() {
        let k = PhysConstants::codata();
        let eps = not_gate_error(1e16, GateVariant::PaperLinearized, &k).unwrap();
        // oracle: 4 * (π/2)^{2/3} * t_P^{4/3} * (E/ħ)^{4/3}, term by term in log10
        let bare = (4.0 / 3.0) * (5.391247e-44f64.log10() + (1e16f64 / 1.054571817e-34).log10());
        assert!((bare - 8.945).abs() < 1e-3);
        let expected = 4f64.log10() + (2.0 / 3.0) * (PI / 2.0).log10() + bare;
        assert!((eps.log10() - expected).abs() < 1e-12);
        assert!((eps.log10() - 9.678).abs() < 1e-3);
        // far beyond 1: the coherence is gone
        let a = GateAnalysis::new(1e16, &k).unwrap();
        assert_eq!(a.error(GateVariant::ExactOneMinusD), LogScalar::ONE);
        assert!((a.error(GateVariant::FidelityError).to_f64().unwrap() - 0.5).abs() < 1e-15);
        assert!(a.coherence.log10() < -1e9);
    }

    #[test]
    fn vanishing_energy() {
        let k = PhysConstants::codata();
        for v in GateVariant::ALL {
            let eps = not_gate_error(1e-200, v, &k).unwrap();
            assert!(eps.log10() < -100.0, "{v}: {}", eps.log10());
            assert!(eps.is_positive());
        }
        assert!(not_gate_error(0.0, GateVariant::PaperLinearized, &k).is_err());
        assert!(not_gate_error(-1.0, GateVariant::FidelityError, &k).is_err());
    }

    #[test]
    fn small_gamma_series() {
        let k = PhysConstants::codata();
        // Γ ∝ E^{4/3}; choose E so that Γ = 1e-6
        let g1 = GateAnalysis::new(1.0, &k).unwrap().gamma.log10();
        let energy = 10f64.powf((-6.0 - g1) * 0.75);
        let a = GateAnalysis::new(energy, &k).unwrap();
        assert!((a.gamma.log10() + 6.0).abs() < 1e-9);
        let ratio = (a.one_minus_d() / a.gamma).to_f64().unwrap();
        // 1 − e^{−Γ} = Γ(1 − Γ/2 + ...)
        assert!((ratio - (1.0 - 0.5e-6)).abs() < 1e-12);
    }

    #[test]
    fn low_energy_variants_agree() {
        let k = PhysConstants::codata();
        let a = GateAnalysis::new(1e-10, &k).unwrap();
        assert!(a.gamma.log10() < -20.0);
        assert!(a.coherence.to_f64().is_some());
        let lin = a.error(GateVariant::PaperLinearized).to_f64().unwrap();
        let exact = a.error(GateVariant::ExactOneMinusD).to_f64().unwrap();
        let fid = a.error(GateVariant::FidelityError).to_f64().unwrap();
        assert!(((lin - exact) / exact).abs() < 0.01);
        assert!(((2.0 * fid - exact) / exact).abs() < 1e-12);
    }

    #[test]
    fn variant_names() {
        for v in GateVariant::ALL {
            assert_eq!(v.name().parse::<GateVariant>().unwrap(), v);
        }
        assert!("bogus".parse::<GateVariant>().is_err());
    }
}
