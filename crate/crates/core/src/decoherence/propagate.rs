//! Closed-form dephased evolution and the quantities read off it.

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::dephasing::{damping_factor, decoherence_exponent, DecoherenceParams};
use super::state::{DensityMatrix, PureState, Spectrum};
use crate::error::{Error, Result};

/// Imaginary residue tolerated in Tr(ρ_t ρ_0) before it is discarded.
pub const OVERLAP_IMAG_TOL: f64 = 1e-10;

/// ρ_{mn}(t) = c_m c*_n e^{−i(ω_m−ω_n)t} e^{−Γ(ω_m−ω_n, t)}.
pub fn propagate_analytic(
    state: &PureState,
    spectrum: &Spectrum,
    t: f64,
    params: &DecoherenceParams,
) -> Result<DensityMatrix> {
    let n = spectrum.dim();
    if state.dim() != n {
        return Err(Error::Shape {
            expected: n,
            actual: state.dim(),
        });
    }
    let c = state.amplitudes();
    let mut rho = DMatrix::from_element(n, n, Complex64::new(0.0, 0.0));
    for m in 0..n {
        rho[(m, m)] = Complex64::new(c[m].norm_sqr(), 0.0);
        for k in (m + 1)..n {
            let gap = spectrum.gap(m, k);
            let damping = damping_factor(decoherence_exponent(gap, t, params)?);
            let v = c[m] * c[k].conj() * Complex64::from_polar(damping, -gap * t);
            rho[(m, k)] = v;
            rho[(k, m)] = v.conj();
        }
    }
    Ok(DensityMatrix::from_raw(rho))
}

/// Survival overlap Tr(ρ_t ρ_0).
pub fn overlap(rho_t: &DensityMatrix, rho_0: &DensityMatrix) -> Result<f64> {
    if rho_t.dim() != rho_0.dim() {
        return Err(Error::Shape {
            expected: rho_0.dim(),
            actual: rho_t.dim(),
        });
    }
    let z = overlap_complex(rho_t, rho_0);
    if z.im.abs() > OVERLAP_IMAG_TOL {
        return Err(Error::invalid(
            "rho",
            format!(
                "Tr(rho_t rho_0) has imaginary part {:e}; inputs are not Hermitian",
                z.im
            ),
        ));
    }
    Ok(z.re)
}

/// Tr(ρ_t ρ_0) without discarding the imaginary part.
pub fn overlap_complex(rho_t: &DensityMatrix, rho_0: &DensityMatrix) -> Complex64 {
    let (a, b) = (rho_t.entries(), rho_0.entries());
    let n = a.nrows();
    let mut sum = Complex64::new(0.0, 0.0);
    for m in 0..n {
        for k in 0..n {
            sum += a[(m, k)] * b[(k, m)];
        }
    }
    sum
}

/// Tr(ρ²).
pub fn purity(rho: &DensityMatrix) -> f64 {
    overlap_complex(rho, rho).re
}
