//! Physical constants (SI) and the parametric description of a computer.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::LogScalar;

/// Speed of light, m/s.
pub const C: f64 = 2.997_924_58e8;
/// Reduced Planck constant, J·s.
pub const HBAR: f64 = 1.054_571_817e-34;
/// Newtonian gravitational constant, m³·kg⁻¹·s⁻².
pub const G: f64 = 6.674_30e-11;
/// Planck time, s.
pub const PLANCK_TIME: f64 = 5.391_247e-44;
/// Planck mass, kg.
pub const PLANCK_MASS: f64 = 2.176_434e-8;

/// CODATA-2018 constants, or a consistent set derived from overridden
/// `c`, `hbar` and `G`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysConstants {
    pub c: f64,
    pub hbar: f64,
    #[serde(rename = "G")]
    pub g: f64,
    pub t_p: f64,
    pub l_p: f64,
    pub m_p: f64,
}

impl Default for PhysConstants {
    fn default() -> Self {
        Self::codata()
    }
}

impl PhysConstants {
    /// Pinned CODATA-2018 values (Planck time and mass as tabulated, not
    /// recomputed).
    pub fn codata() -> Self {
        PhysConstants {
            c: C,
            hbar: HBAR,
            g: G,
            t_p: PLANCK_TIME,
            l_p: C * PLANCK_TIME,
            m_p: PLANCK_MASS,
        }
    }

    /// Derives the Planck quantities from `c`, `hbar` and `G`.
    pub fn from_fundamental(c: f64, hbar: f64, g: f64) -> Result<Self> {
        for (name, v) in [("c", c), ("hbar", hbar), ("G", g)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::invalid(
                    name,
                    format!("must be finite and > 0, got {v}"),
                ));
            }
        }
        let t_p = (hbar * g / c.powi(5)).sqrt();
        Ok(PhysConstants {
            c,
            hbar,
            g,
            t_p,
            l_p: c * t_p,
            m_p: (hbar * c / g).sqrt(),
        })
    }

    /// Applies an override file's values on top of CODATA.
    pub fn with_overrides(o: &ConstantsOverride) -> Result<Self> {
        let base = Self::codata();
        Self::from_fundamental(
            o.c.unwrap_or(base.c),
            o.hbar.unwrap_or(base.hbar),
            o.g.unwrap_or(base.g),
        )
    }

    /// Planck energy ħ/t_P in joules.
    pub fn planck_energy(&self) -> f64 {
        self.hbar / self.t_p
    }
}

/// Override schema: any of `c`, `hbar`, `G`; absent keys keep CODATA.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConstantsOverride {
    #[serde(default)]
    pub c: Option<f64>,
    #[serde(default)]
    pub hbar: Option<f64>,
    #[serde(default, rename = "G")]
    pub g: Option<f64>,
}

/// Converts an energy to an angular frequency E/ħ (the ħ = 1 convention).
pub fn energy_to_angular_frequency(energy_j: f64, k: &PhysConstants) -> Result<LogScalar> {
    if !energy_j.is_finite() || energy_j < 0.0 {
        return Err(Error::domain(format!(
            "energy must be >= 0, got {energy_j}"
        )));
    }
    Ok(LogScalar::from_real(energy_j) * LogScalar::from_real(k.hbar).recip()?)
}

/// Mass, size, stored bits and parallelization of a computer.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComputerSpec {
    pub mass_kg: f64,
    /// Characteristic size R.
    pub radius_m: f64,
    /// Stored bits L; order-of-magnitude specs may be non-integer.
    pub bits: f64,
    /// Degree of parallelization d_p.
    pub parallelism: f64,
    /// Explicit energy budget; `None` means the full rest energy m c².
    #[serde(default)]
    pub energy_j: Option<f64>,
}

impl ComputerSpec {
    pub fn new(mass_kg: f64, radius_m: f64, bits: f64, parallelism: f64) -> Result<Self> {
        let spec = ComputerSpec {
            mass_kg,
            radius_m,
            bits,
            parallelism,
            energy_j: None,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn with_energy(mut self, energy_j: f64) -> Result<Self> {
        self.energy_j = Some(energy_j);
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        let mut fields = vec![
            ("mass_kg", self.mass_kg),
            ("radius_m", self.radius_m),
            ("bits", self.bits),
            ("parallelism", self.parallelism),
        ];
        if let Some(e) = self.energy_j {
            fields.push(("energy_j", e));
        }
        for (name, v) in fields {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::invalid(
                    name,
                    format!("must be finite and > 0, got {v}"),
                ));
            }
        }
        if self.parallelism < 1.0 {
            return Err(Error::invalid(
                "parallelism",
                format!("must be >= 1, got {}", self.parallelism),
            ));
        }
        if self.parallelism > self.bits {
            return Err(Error::invalid(
                "parallelism",
                format!("{} exceeds bits {}", self.parallelism, self.bits),
            ));
        }
        Ok(())
    }

    /// Energy budget in joules: the explicit value, else m c².
    pub fn energy(&self, k: &PhysConstants) -> f64 {
        self.energy_j.unwrap_or(self.mass_kg * k.c * k.c)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Preset {
    UltimateLaptop,
    Avogadro,
    BlackHole1Kg,
}

impl Preset {
    pub const ALL: [Preset; 3] = [
        Preset::UltimateLaptop,
        Preset::Avogadro,
        Preset::BlackHole1Kg,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Preset::UltimateLaptop => "ultimate-laptop",
            Preset::Avogadro => "avogadro",
            Preset::BlackHole1Kg => "black-hole-1kg",
        }
    }

    pub fn spec(self, k: &PhysConstants) -> ComputerSpec {
        match self {
            Preset::UltimateLaptop => ComputerSpec {
                mass_kg: 1.0,
                radius_m: 0.1,
                bits: 1e31,
                parallelism: 1e10,
                energy_j: None,
            },
            Preset::Avogadro => ComputerSpec {
                mass_kg: 1.0,
                radius_m: 0.1,
                bits: 1e25,
                parallelism: 1.0,
                energy_j: None,
            },
            Preset::BlackHole1Kg => {
                let mass = 1.0;
                ComputerSpec {
                    mass_kg: mass,
                    radius_m: 2.0 * k.g * mass / (k.c * k.c),
                    bits: (mass / k.m_p).powi(2),
                    parallelism: 1.0,
                    energy_j: None,
                }
            }
        }
    }

    /// Assumptions baked into the preset that a report should disclose.
    pub fn notes(self) -> Vec<String> {
        match self {
            Preset::UltimateLaptop => {
                vec!["ultimate laptop: 1 kg, 1 liter (R ~ 0.1 m), L ~ 1e31 bits, d_p ~ 1e10".into()]
            }
            Preset::Avogadro => vec![
                "avogadro: radius R = 0.1 m is an assumption (not stated for this computer)".into(),
                "avogadro: serial mode, d_p = 1; L ~ 1e25 nuclear-spin qubits".into(),
            ],
            Preset::BlackHole1Kg => vec![
                "black hole: bits from the Bekenstein relation L = (M/M_P)^2".into(),
                "black hole: R = 2GM/c^2 (Schwarzschild, factor 2 kept); serial mode d_p = 1"
                    .into(),
            ],
        }
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Preset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Preset::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::UnknownPreset(s.to_string()))
    }
}
