//! Closed-form limits on operations per second: the Margolus–Levitin rate,
//! the gravitational clock-accuracy limit, the error-correction bandwidth,
//! and the resulting parallel and black-hole bounds.
//!
//! Everything is evaluated in log space. Formulas follow the published
//! order-of-magnitude estimates exactly, O(1) prefactors included or
//! omitted as printed there; [`BoundReport::notes`] says so.

use std::f64::consts::PI;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::decoherence::{ExponentMode, GateVariant};
use crate::error::{Error, Result};
use crate::numerics::LogScalar;
use crate::physics::{ComputerSpec, PhysConstants, Preset};

/// Quoted Margolus–Levitin rate for the Avogadro computer, op/s (log10).
/// It implies an energy budget of ~1e6 J that is never stated.
pub const AVOGADRO_ML_REFERENCE_LOG10: f64 = 40.0;

pub const O1_NOTE: &str = "order-of-magnitude bound; O(1) factors (pi/2 gate time, 4 from the gate error, 2/pi in n <= 2E/pi) dropped";

fn positive(name: &str, x: f64) -> Result<LogScalar> {
    if x > 0.0 && x.is_finite() {
        Ok(LogScalar::from_real(x))
    } else {
        Err(Error::domain(format!(
            "{name} must be finite and > 0, got {x}"
        )))
    }
}

/// 2E/(πħ), the maximum rate of orthogonal transitions at mean energy E.
pub fn margolus_levitin_ops(energy_j: f64, k: &PhysConstants) -> Result<LogScalar> {
    let e = positive("energy", energy_j)?;
    Ok(LogScalar::from_real(2.0 / PI) * e / LogScalar::from_real(k.hbar))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ClockLimit {
    /// Elapsed time measured, s.
    pub t: f64,
    /// t_P^{2/3} t^{1/3}, s.
    pub delta_t_min: LogScalar,
}

pub fn clock_limit(t: f64, k: &PhysConstants) -> Result<ClockLimit> {
    let lt = positive("t", t)?;
    Ok(ClockLimit {
        t,
        delta_t_min: LogScalar::from_real(k.t_p).powr(2, 3)? * lt.powr(1, 3)?,
    })
}

/// ε_max = Lc/(nR): errors per operation that light-speed correction can
/// keep up with.
pub fn max_error_rate(
    bits: f64,
    radius_m: f64,
    ops_per_s: f64,
    k: &PhysConstants,
) -> Result<LogScalar> {
    max_error_rate_log(bits, radius_m, positive("n", ops_per_s)?, k)
}

fn max_error_rate_log(
    bits: f64,
    radius_m: f64,
    n: LogScalar,
    k: &PhysConstants,
) -> Result<LogScalar> {
    if !n.is_positive() {
        return Err(Error::domain("n must be > 0"));
    }
    let l = positive("bits", bits)?;
    let r = positive("radius", radius_m)?;
    Ok(l * LogScalar::from_real(k.c) / (n * r))
}

/// d_p ~ 1/ε_max = nR/(Lc).
pub fn degree_of_parallelization(
    bits: f64,
    radius_m: f64,
    ops_per_s: f64,
    k: &PhysConstants,
) -> Result<LogScalar> {
    max_error_rate(bits, radius_m, ops_per_s, k)?.recip()
}

/// Decoherence error with all of E in one gate: t_P^{4/3}(ħ/E)^{2/3}(E/ħ)².
pub fn serial_decoherence_error(energy_j: f64, k: &PhysConstants) -> Result<LogScalar> {
    let omega = positive("energy", energy_j)? / LogScalar::from_real(k.hbar);
    Ok(LogScalar::from_real(k.t_p).powr(4, 3)? * omega.recip()?.powr(2, 3)? * omega.powr(2, 1)?)
}

/// Left side of the parallel error constraint,
/// t_P^{4/3}(d_p/E_eff)^{2/3}(E_eff/d_p)², with E_eff a frequency (ħ = 1).
pub fn parallel_error_constraint(
    effective_energy: LogScalar,
    parallelism: f64,
    k: &PhysConstants,
) -> Result<LogScalar> {
    if !effective_energy.is_positive() {
        return Err(Error::domain("effective energy must be > 0"));
    }
    let per_gate = effective_energy / positive("parallelism", parallelism)?;
    Ok(LogScalar::from_real(k.t_p).powr(4, 3)?
        * per_gate.recip()?.powr(2, 3)?
        * per_gate.powr(2, 1)?)
}

/// n ≤ (1/t_P)^{4/7} (cL/R)^{3/7} d_p^{4/7}.
pub fn gravitational_ops_bound(
    bits: f64,
    radius_m: f64,
    parallelism: f64,
    k: &PhysConstants,
) -> Result<LogScalar> {
    let l = positive("bits", bits)?;
    let r = positive("radius", radius_m)?;
    let dp = positive("parallelism", parallelism)?;
    if parallelism < 1.0 {
        return Err(Error::domain(format!(
            "parallelism must be >= 1, got {parallelism}"
        )));
    }
    let bandwidth = LogScalar::from_real(k.c) * l / r;
    Ok(LogScalar::from_real(k.t_p).powr(-4, 7)? * bandwidth.powr(3, 7)? * dp.powr(4, 7)?)
}

/// n ≤ (M/M_P)^{3/7} / t_P for a black-hole computer of mass M.
pub fn black_hole_ops_bound(mass_kg: f64, k: &PhysConstants) -> Result<LogScalar> {
    let m = positive("mass", mass_kg)?;
    Ok((m / LogScalar::from_real(k.m_p)).powr(3, 7)? / LogScalar::from_real(k.t_p))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BindingBound {
    Gravitational,
    MargolusLevitin,
}

impl fmt::Display for BindingBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BindingBound::Gravitational => "gravitational",
            BindingBound::MargolusLevitin => "margolus-levitin",
        })
    }
}

/// All bounds for one computer.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub spec: ComputerSpec,
    pub ml_ops_per_s: LogScalar,
    pub grav_ops_per_s: LogScalar,
    pub serial_error: LogScalar,
    /// ε_max evaluated at n = ml_ops_per_s.
    pub eps_max: LogScalar,
    pub implied_dp: LogScalar,
    pub binding_bound: BindingBound,
    pub notes: Vec<String>,
}

pub fn bound_report(spec: &ComputerSpec, k: &PhysConstants) -> Result<BoundReport> {
    spec.validate()?;
    let energy = spec.energy(k);
    let ml = margolus_levitin_ops(energy, k)?;
    let grav = gravitational_ops_bound(spec.bits, spec.radius_m, spec.parallelism, k)?;
    let eps_max = max_error_rate_log(spec.bits, spec.radius_m, ml, k)?;
    let binding = if grav <= ml {
        BindingBound::Gravitational
    } else {
        BindingBound::MargolusLevitin
    };
    let energy_note = match spec.energy_j {
        Some(e) => format!("energy: explicit budget E = {e:e} J"),
        None => format!("energy: E = m c^2 = {energy:e} J"),
    };
    Ok(BoundReport {
        spec: *spec,
        ml_ops_per_s: ml,
        grav_ops_per_s: grav,
        serial_error: serial_decoherence_error(energy, k)?,
        eps_max,
        implied_dp: eps_max.recip()?,
        binding_bound: binding,
        notes: vec![
            O1_NOTE.to_string(),
            energy_note,
            format!(
                "decoherence exponent mode: {} (unit coefficient, t_P^(4/3) t^(2/3))",
                ExponentMode::PaperExponent
            ),
            format!(
                "serial_error: t_P^(4/3) (E/hbar)^(4/3) with gate time 1/E; the {} gate error adds 4 (pi/2)^(2/3)",
                GateVariant::PaperLinearized
            ),
        ],
    })
}

/// [`bound_report`] for a named preset, with the preset's assumptions
/// appended to the notes.
pub fn bound_report_for_preset(preset: Preset, k: &PhysConstants) -> Result<BoundReport> {
    let mut report = bound_report(&preset.spec(k), k)?;
    report.notes.extend(preset.notes());
    match preset {
        Preset::Avogadro => {
            let binds = report.grav_ops_per_s.log10() < AVOGADRO_ML_REFERENCE_LOG10;
            report.notes.push(format!(
                "avogadro: quoted Margolus-Levitin reference 10^{AVOGADRO_ML_REFERENCE_LOG10} op/s (implies E ~ 1e6 J, not derived); gravitational bound 10^{:.2} {} it",
                report.grav_ops_per_s.log10(),
                if binds { "is tighter than" } else { "does not undercut" }
            ));
        }
        Preset::BlackHole1Kg => {
            let closed = black_hole_ops_bound(report.spec.mass_kg, k)?;
            report.notes.push(format!(
                "black hole: closed form (M/M_P)^(3/7)/t_P = 10^{:.2} op/s; the general bound with R = 2GM/c^2 is lower by 2^(3/7)",
                closed.log10()
            ));
        }
        Preset::UltimateLaptop => {}
    }
    Ok(report)
}
