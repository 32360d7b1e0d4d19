use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest dimension handled by the dense propagators.
pub const MAX_DIM: usize = 64;

pub const NORM_TOL: f64 = 1e-10;
pub const HERMITIAN_TOL: f64 = 1e-10;
pub const TRACE_TOL: f64 = 1e-10;
pub const PSD_TOL: f64 = 1e-8;

/// Energy eigenfrequencies (ħ = 1), in nondecreasing order.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    omegas: Vec<f64>,
}

impl Spectrum {
    pub fn new(omegas: Vec<f64>) -> Result<Self> {
        if omegas.is_empty() || omegas.len() > MAX_DIM {
            return Err(Error::invalid(
                "omegas",
                format!("dimension must be in 1..={MAX_DIM}, got {}", omegas.len()),
            ));
        }
        if let Some(i) = omegas.iter().position(|w| !w.is_finite()) {
            return Err(Error::invalid(format!("omegas[{i}]"), "not finite"));
        }
        if omegas[0] < 0.0 {
            return Err(Error::invalid("omegas[0]", "ground frequency must be >= 0"));
        }
        if let Some(i) = omegas.windows(2).position(|w| w[1] < w[0]) {
            return Err(Error::invalid(
                format!("omegas[{}]", i + 1),
                "not in nondecreasing order",
            ));
        }
        Ok(Spectrum { omegas })
    }

    pub fn omegas(&self) -> &[f64] {
        &self.omegas
    }

    pub fn dim(&self) -> usize {
        self.omegas.len()
    }

    /// ω_m − ω_n.
    pub fn gap(&self, m: usize, n: usize) -> f64 {
        self.omegas[m] - self.omegas[n]
    }

    /// Dense diagonal Hamiltonian H_{mn} = ω_m δ_{mn}.
    pub fn hamiltonian(&self) -> DMatrix<Complex64> {
        DMatrix::from_fn(self.dim(), self.dim(), |m, n| {
            if m == n {
                Complex64::new(self.omegas[m], 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
    }
}

/// Normalized amplitudes c_n in the energy eigenbasis.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    amplitudes: Vec<Complex64>,
}

impl PureState {
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(Error::invalid("amplitudes", "empty"));
        }
        if let Some(i) = amplitudes
            .iter()
            .position(|c| !(c.re.is_finite() && c.im.is_finite()))
        {
            return Err(Error::invalid(format!("amplitudes[{i}]"), "not finite"));
        }
        let norm: f64 = amplitudes.iter().map(|c| c.norm_sqr()).sum();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::invalid(
                "amplitudes",
                format!("sum of |c_n|^2 must be 1 within {NORM_TOL}, got {norm}"),
            ));
        }
        Ok(PureState { amplitudes })
    }

    /// Rescales arbitrary nonzero amplitudes to unit norm.
    pub fn normalized(amplitudes: Vec<Complex64>) -> Result<Self> {
        let norm = amplitudes.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        if !(norm > 0.0 && norm.is_finite()) {
            return Err(Error::invalid(
                "amplitudes",
                "cannot normalize a zero vector",
            ));
        }
        Self::new(amplitudes.into_iter().map(|c| c / norm).collect())
    }

    /// Equal superposition of all `n` levels.
    pub fn uniform(n: usize) -> Self {
        let a = Complex64::new(1.0 / (n as f64).sqrt(), 0.0);
        PureState {
            amplitudes: vec![a; n],
        }
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    /// The projector ρ_{mn} = c_m c*_n.
    pub fn projector(&self) -> DensityMatrix {
        let c = &self.amplitudes;
        DensityMatrix::from_raw(DMatrix::from_fn(c.len(), c.len(), |m, n| {
            c[m] * c[n].conj()
        }))
    }
}

/// Hermitian, unit-trace, positive semidefinite matrix in the energy basis.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    entries: DMatrix<Complex64>,
}

impl DensityMatrix {
    /// Validates every density-matrix invariant.
    pub fn new(entries: DMatrix<Complex64>) -> Result<Self> {
        if !entries.is_square() {
            return Err(Error::invalid("rho", "matrix is not square"));
        }
        if entries.nrows() == 0 || entries.nrows() > MAX_DIM {
            return Err(Error::invalid(
                "rho",
                format!("dimension must be in 1..={MAX_DIM}"),
            ));
        }
        if entries
            .iter()
            .any(|z| !(z.re.is_finite() && z.im.is_finite()))
        {
            return Err(Error::invalid("rho", "non-finite entry"));
        }
        let rho = DensityMatrix { entries };
        let herm = rho.hermiticity_error();
        if herm > HERMITIAN_TOL {
            return Err(Error::invalid(
                "rho",
                format!("not Hermitian (max |ρ-ρ†| = {herm:e})"),
            ));
        }
        let tr = rho.trace();
        if (tr - 1.0).abs() > TRACE_TOL {
            return Err(Error::invalid("rho", format!("trace must be 1, got {tr}")));
        }
        let min_eig = rho.min_eigenvalue();
        if min_eig < -PSD_TOL {
            return Err(Error::invalid(
                "rho",
                format!("not positive semidefinite (min eigenvalue {min_eig:e})"),
            ));
        }
        Ok(rho)
    }

    pub(crate) fn from_raw(entries: DMatrix<Complex64>) -> Self {
        DensityMatrix { entries }
    }

    pub fn maximally_mixed(n: usize) -> Self {
        DensityMatrix::from_raw(DMatrix::from_diagonal_element(
            n,
            n,
            Complex64::new(1.0 / n as f64, 0.0),
        ))
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &DMatrix<Complex64> {
        &self.entries
    }

    pub fn get(&self, m: usize, n: usize) -> Complex64 {
        self.entries[(m, n)]
    }

    /// Real part of the trace.
    pub fn trace(&self) -> f64 {
        self.entries.trace().re
    }

    /// max_{mn} |ρ_{mn} − conj(ρ_{nm})|
    pub fn hermiticity_error(&self) -> f64 {
        let n = self.dim();
        let mut worst = 0.0f64;
        for m in 0..n {
            for k in m..n {
                worst = worst.max((self.entries[(m, k)] - self.entries[(k, m)].conj()).norm());
            }
        }
        worst
    }

    /// Smallest eigenvalue of the Hermitian part.
    pub fn min_eigenvalue(&self) -> f64 {
        let h = (&self.entries + self.entries.adjoint()) * Complex64::new(0.5, 0.0);
        h.symmetric_eigenvalues()
            .iter()
            .copied()
            .fold(f64::INFINITY, f64::min)
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &DensityMatrix) -> f64 {
        self.entries
            .iter()
            .zip(other.entries.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn populations(&self) -> Vec<f64> {
        (0..self.dim()).map(|m| self.entries[(m, m)].re).collect()
    }
}

/// JSON input: `{"omegas": [...], "amplitudes": [[re, im], ...]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemInput {
    pub omegas: Vec<f64>,
    pub amplitudes: Vec<[f64; 2]>,
}

impl SystemInput {
    pub fn build(&self) -> Result<(Spectrum, PureState)> {
        let spectrum = Spectrum::new(self.omegas.clone())?;
        let state = PureState::new(
            self.amplitudes
                .iter()
                .map(|[re, im]| Complex64::new(*re, *im))
                .collect(),
        )?;
        if state.dim() != spectrum.dim() {
            return Err(Error::invalid(
                "amplitudes",
                format!(
                    "length {} does not match omegas length {}",
                    state.dim(),
                    spectrum.dim()
                ),
            ));
        }
        Ok((spectrum, state))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spectrum_validation() {
        assert!(Spectrum::new(vec![0.0, 1.0, 1.0, 3.0]).is_ok());
        assert!(Spectrum::new(vec![]).is_err());
        assert!(Spectrum::new(vec![-1.0, 0.0]).is_err());
        let err = Spectrum::new(vec![0.0, 2.0, 1.0]).unwrap_err();
        assert!(err.to_string().contains("omegas[2]"), "{err}");
        assert!(Spectrum::new(vec![0.0; MAX_DIM + 1]).is_err());
    }

    #[test]
    fn state_validation() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!(PureState::new(vec![Complex64::new(h, 0.0), Complex64::new(0.0, h)]).is_ok());
        assert!(PureState::new(vec![Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0)]).is_err());
        let s = PureState::normalized(vec![Complex64::new(3.0, 0.0), Complex64::new(0.0, 4.0)])
            .unwrap();
        assert!((s.amplitudes()[0].re - 0.6).abs() < 1e-15);
        assert!(PureState::normalized(vec![Complex64::new(0.0, 0.0)]).is_err());
    }

    #[test]
    fn density_matrix_validation() {
        let p = PureState::uniform(3).projector();
        let checked = DensityMatrix::new(p.entries().clone()).unwrap();
        assert!((checked.min_eigenvalue()).abs() < 1e-12);
        let mut bad = p.entries().clone();
        bad[(0, 1)] += Complex64::new(0.1, 0.0);
        assert!(DensityMatrix::new(bad).is_err());
        let neg = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![
            Complex64::new(1.5, 0.0),
            Complex64::new(-0.5, 0.0),
        ]));
        let err = DensityMatrix::new(neg).unwrap_err();
        assert!(err.to_string().contains("positive semidefinite"));
        let half = DMatrix::from_diagonal_element(2, 2, Complex64::new(0.25, 0.0));
        assert!(DensityMatrix::new(half).is_err());
        assert!(DensityMatrix::new(DensityMatrix::maximally_mixed(4).entries().clone()).is_ok());
    }

    #[test]
    fn input_json() {
        let inp: SystemInput = serde_json::from_str(
            r#"{"omegas":[0,2],"amplitudes":[[0.7071067811865476,0],[0.7071067811865476,0]]}"#,
        )
        .unwrap();
        let (s, c) = inp.build().unwrap();
        assert_eq!((s.dim(), c.dim()), (2, 2));
        let bad = SystemInput {
            omegas: vec![0.0, 1.0, 2.0],
            amplitudes: vec![[1.0, 0.0]],
        };
        assert!(bad.build().unwrap_err().to_string().contains("amplitudes"));
    }
}
