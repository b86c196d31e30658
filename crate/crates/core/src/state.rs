//! The state model: a complex mean vector together with a real `2n x 2n`
//! covariance matrix, plus the parameter-level actions of displacements,
//! passive unitaries, general symplectic maps, and classical Gaussian
//! averaging.
//!
//! A covariance matrix `S_R` describes a physical state exactly when it is
//! symmetric and satisfies the uncertainty relation `S_R + (i/2) J >= 0`,
//! equivalently when all of its symplectic eigenvalues are at least 1/2.
//! Construction is deliberately permissive (shape checks only) so that
//! invalid matrices can be built for negative tests; operations whose
//! contract needs validity assert it explicitly.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::symplectic::{
    self, embed_complex, embed_complex_vector, is_symplectic, is_unitary,
    standard_symplectic_form, symmetrize, symplectic_residual, unitarity_residual,
    ComplexMatrix, ComplexVector, RealMatrix, RealVector,
};
use crate::tol::Tolerances;
use crate::williamson;

/// An n-mode Gaussian state: mean annihilation vector `m` and quadrature
/// covariance matrix `S_R`.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussianState {
    mean: ComplexVector,
    cov: RealMatrix,
}

/// A classical normal distribution on phase space: mean `mu_R` and PSD
/// covariance `Sigma_R`, both in real `2n` coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassicalNoise {
    pub mu: RealVector,
    pub sigma: RealMatrix,
}

/// Outcome of the validity test, with the certificates a report needs.
#[derive(Debug, Clone)]
pub struct ValidityReport {
    pub symmetric: bool,
    pub uncertainty_ok: bool,
    /// Minimum eigenvalue of `S_R + (i/2) J`.
    pub min_eig: f64,
    /// Symplectic eigenvalues (descending); empty if `S_R` is not positive
    /// definite.
    pub sympl_eigs: Vec<f64>,
    pub symmetry_residual: f64,
}

impl ValidityReport {
    pub fn is_valid(&self) -> bool {
        self.symmetric && self.uncertainty_ok
    }
}

impl GaussianState {
    /// Build a state from its parameters. Only shapes and finiteness are
    /// checked here; see [`GaussianState::validate`].
    pub fn new(mean: ComplexVector, cov: RealMatrix) -> Result<Self> {
        let n = mean.len();
        if n == 0 {
            return Err(Error::Dimension("mode count must be at least 1".into()));
        }
        if cov.nrows() != 2 * n || cov.ncols() != 2 * n {
            return Err(Error::Dimension(format!(
                "covariance must be {}x{} for {} modes, got {}x{}",
                2 * n,
                2 * n,
                n,
                cov.nrows(),
                cov.ncols()
            )));
        }
        if mean.iter().any(|z| !z.re.is_finite() || !z.im.is_finite())
            || cov.iter().any(|x| !x.is_finite())
        {
            return Err(Error::Dimension("state entries must be finite".into()));
        }
        Ok(GaussianState { mean, cov })
    }

    /// The n-mode vacuum: zero mean, covariance `I/2`.
    pub fn vacuum(n: usize) -> Result<Self> {
        GaussianState::new(
            ComplexVector::zeros(n),
            RealMatrix::identity(2 * n, 2 * n) * 0.5,
        )
    }

    /// Mean-zero displaced-thermal-form state with covariance
    /// `diag(d) (+) diag(d)`.
    pub fn thermal(d: &[f64]) -> Result<Self> {
        let n = d.len();
        if n == 0 {
            return Err(Error::Dimension("mode count must be at least 1".into()));
        }
        let mut cov = RealMatrix::zeros(2 * n, 2 * n);
        for (k, &dk) in d.iter().enumerate() {
            cov[(k, k)] = dk;
            cov[(n + k, n + k)] = dk;
        }
        GaussianState::new(ComplexVector::zeros(n), cov)
    }

    pub fn modes(&self) -> usize {
        self.mean.len()
    }

    pub fn mean(&self) -> &ComplexVector {
        &self.mean
    }

    pub fn cov(&self) -> &RealMatrix {
        &self.cov
    }

    /// Real mean vector `(Re m, Im m)`.
    pub fn real_mean(&self) -> RealVector {
        embed_complex_vector(&self.mean)
    }

    /// Symmetry plus uncertainty relation, with symplectic eigenvalues as a
    /// certificate.
    pub fn validate(&self, tol: &Tolerances) -> ValidityReport {
        let sym = (&self.cov + self.cov.transpose()) * 0.5;
        let symmetry_residual = (&self.cov - &sym).norm();
        let symmetric = symmetry_residual <= tol.sym_tol * (1.0 + self.cov.norm());

        let min_eig = uncertainty_min_eig(&sym);
        let uncertainty_ok = symmetric && min_eig >= -tol.psd_tol * (1.0 + self.cov.norm());

        let sympl_eigs = williamson::symplectic_eigenvalues(&sym, tol)
            .map(|d| d.iter().copied().collect())
            .unwrap_or_default();

        ValidityReport {
            symmetric,
            uncertainty_ok,
            min_eig,
            sympl_eigs,
            symmetry_residual,
        }
    }

    /// Error with the offending minimum eigenvalue unless the state is valid.
    pub fn ensure_valid(&self, tol: &Tolerances) -> Result<()> {
        let report = self.validate(tol);
        if report.is_valid() {
            Ok(())
        } else {
            Err(Error::InvalidState(report.min_eig))
        }
    }

    /// Characteristic function
    /// `exp(-2i Im(z^dag m) - Re(z^dag S z))`, evaluated through the real
    /// quadratic form `-2i z_R^T J m_R - z_R^T S_R z_R`.
    pub fn characteristic_function(&self, z: &ComplexVector, tol: &Tolerances) -> Result<Complex64> {
        if z.len() != self.modes() {
            return Err(Error::Dimension(format!(
                "argument has {} modes, state has {}",
                z.len(),
                self.modes()
            )));
        }
        self.ensure_valid(tol)?;
        let j = standard_symplectic_form(self.modes())?;
        let zr = embed_complex_vector(z);
        let phase = -2.0 * (zr.transpose() * &j * self.real_mean())[(0, 0)];
        let decay = -(zr.transpose() * &self.cov * &zr)[(0, 0)];
        Ok(Complex64::new(decay, phase).exp())
    }

    /// Shift the mean by `u`; the covariance is untouched.
    pub fn displace(&self, u: &ComplexVector) -> Result<GaussianState> {
        if u.len() != self.modes() {
            return Err(Error::Dimension(format!(
                "displacement has {} modes, state has {}",
                u.len(),
                self.modes()
            )));
        }
        GaussianState::new(&self.mean + u, self.cov.clone())
    }

    /// Conjugate by the Gaussian unitary of a symplectic map `L`:
    /// mean `L m` (as a real-linear action), covariance `(L^{-1})^T S L^{-1}`.
    ///
    /// `L^{-1}` is applied by solving linear systems rather than forming the
    /// inverse, and the product is re-symmetrized.
    pub fn apply_symplectic(&self, l: &RealMatrix, tol: &Tolerances) -> Result<GaussianState> {
        if l.nrows() != 2 * self.modes() || l.ncols() != 2 * self.modes() {
            return Err(Error::Dimension(format!(
                "symplectic map must be {0}x{0}",
                2 * self.modes()
            )));
        }
        if !is_symplectic(l, tol)? {
            return Err(Error::NotSymplectic(symplectic_residual(l)?));
        }
        let lu = l.clone().lu();
        // columns of L^{-1}: solve L X = I
        let inv = lu
            .solve(&RealMatrix::identity(l.nrows(), l.ncols()))
            .ok_or(Error::SingularMeanMap)?;
        let cov = inv.transpose() * &self.cov * &inv;
        let cov = (&cov + cov.transpose()) * 0.5;
        let mean_r = l * self.real_mean();
        GaussianState::new(symplectic::complex_from_real_vector(&mean_r)?, cov)
    }

    /// Conjugate by the passive unitary of `U`: mean `U m`, covariance
    /// `U_R S_R U_R^T`.
    pub fn apply_passive(&self, u: &ComplexMatrix, tol: &Tolerances) -> Result<GaussianState> {
        if u.nrows() != self.modes() || u.ncols() != self.modes() {
            return Err(Error::Dimension(format!(
                "unitary must be {0}x{0}",
                self.modes()
            )));
        }
        if !is_unitary(u, tol)? {
            return Err(Error::NotUnitary(unitarity_residual(u)));
        }
        let ur = embed_complex(u)?;
        let cov = &ur * &self.cov * ur.transpose();
        let cov = (&cov + cov.transpose()) * 0.5;
        GaussianState::new(u * &self.mean, cov)
    }

    /// Average the displaced state over a classical normal distribution:
    /// mean `m + mu`, covariance `S_R + 2 J^T Sigma_R J`.
    pub fn gaussian_average(&self, noise: &ClassicalNoise, tol: &Tolerances) -> Result<GaussianState> {
        let n = self.modes();
        if noise.mu.len() != 2 * n || noise.sigma.nrows() != 2 * n || noise.sigma.ncols() != 2 * n {
            return Err(Error::Dimension(format!(
                "noise must have mean length {} and covariance {0}x{0}",
                2 * n
            )));
        }
        let sigma = symmetrize(&noise.sigma, tol)?;
        let min = symplectic::hermitian_min_eigenvalue(&to_complex(&sigma), tol)?;
        if min < -tol.psd_tol * (1.0 + sigma.norm()) {
            return Err(Error::NotPsd(min));
        }
        let j = standard_symplectic_form(n)?;
        let cov = &self.cov + (j.transpose() * &sigma * &j) * 2.0;
        let mean = &self.mean + symplectic::complex_from_real_vector(&noise.mu)?;
        GaussianState::new(mean, cov)
    }
}

/// Minimum eigenvalue of the uncertainty matrix `S_R + (i/2) J`.
fn uncertainty_min_eig(cov: &RealMatrix) -> f64 {
    let n = cov.nrows() / 2;
    let j = standard_symplectic_form(n).expect("cov dimension checked by caller");
    let h = ComplexMatrix::from_fn(2 * n, 2 * n, |r, c| {
        Complex64::new(cov[(r, c)], 0.5 * j[(r, c)])
    });
    let eig = nalgebra::SymmetricEigen::new(h);
    eig.eigenvalues.min()
}

fn to_complex(m: &RealMatrix) -> ComplexMatrix {
    DMatrix::from_fn(m.nrows(), m.ncols(), |r, c| Complex64::new(m[(r, c)], 0.0))
}
