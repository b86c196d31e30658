//! Symplectic spectral machinery: symplectic eigenvalues, the full Williamson
//! decomposition `L^T S L = diag(d) (+) diag(d)`, orthosymplectic
//! diagonalization for J-commuting covariances, and the inverse-temperature /
//! photon-number parameters of the resulting thermal normal form.
//!
//! The decomposition is computed the standard way: take `S^{1/2}` from a
//! symmetric eigendecomposition, form the antisymmetric `W = S^{1/2} J
//! S^{1/2}`, bring `W` to its paired-rotation canonical form
//! `O^T W O = [[0, D], [-D, 0]]` through the Hermitian eigensystem of `i W`,
//! and assemble `L = S^{-1/2} O (sqrt(D) (+) sqrt(D))`. The canonical values
//! `D` are the symplectic eigenvalues (they are `|eig(i J S)|`), returned
//! descending. Within a degenerate cluster the orthogonal factor is fixed
//! only up to rotation; eigenvector-dependent output is made deterministic by
//! a phase normalization, and callers should assert residuals, never
//! eigenvector entries.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::symplectic::{
    extract_complex, hermitize, j_commutant_split, j_commutator_residual,
    standard_symplectic_form, sym_eigen_sorted, symmetrize, ComplexMatrix, ComplexVector,
    RealMatrix, RealVector,
};
use crate::tol::Tolerances;

/// Symplectic matrix `L` and symplectic eigenvalues `d` (descending) with
/// `L^T S L = diag(d) (+) diag(d)` and `L^T J L = J`.
#[derive(Debug, Clone)]
pub struct WilliamsonDecomposition {
    pub l: RealMatrix,
    pub d: RealVector,
}

impl WilliamsonDecomposition {
    /// `diag(d) (+) diag(d)`.
    pub fn normal_form(&self) -> RealMatrix {
        let n = self.d.len();
        let mut out = RealMatrix::zeros(2 * n, 2 * n);
        for k in 0..n {
            out[(k, k)] = self.d[k];
            out[(n + k, n + k)] = self.d[k];
        }
        out
    }
}

/// Inverse temperatures (`+inf` for vacuum modes) and mean photon numbers of
/// a thermal normal form.
#[derive(Debug, Clone)]
pub struct ThermalParameters {
    pub s: Vec<f64>,
    pub nbar: Vec<f64>,
}

/// The n symplectic eigenvalues of a symmetric positive definite `S`,
/// descending.
pub fn symplectic_eigenvalues(s: &RealMatrix, tol: &Tolerances) -> Result<RealVector> {
    let (half, _inv_half, _) = sqrt_factors(s, tol)?;
    let d = canonical_values(&half, tol)?;
    Ok(RealVector::from_vec(d.iter().map(|(v, _)| *v).collect()))
}

/// Full Williamson decomposition of a symmetric positive definite `S`.
pub fn williamson_decompose(s: &RealMatrix, tol: &Tolerances) -> Result<WilliamsonDecomposition> {
    let (half, inv_half, sym) = sqrt_factors(s, tol)?;
    let pairs = canonical_values(&half, tol)?;
    let n = pairs.len();

    // O = [y_1 .. y_n | x_1 .. x_n] with x = sqrt(2) Re v, y = sqrt(2) Im v.
    let mut o = RealMatrix::zeros(2 * n, 2 * n);
    for (k, (_, v)) in pairs.iter().enumerate() {
        for r in 0..2 * n {
            o[(r, k)] = 2f64.sqrt() * v[r].im;
            o[(r, n + k)] = 2f64.sqrt() * v[r].re;
        }
    }

    let mut scale = RealMatrix::zeros(2 * n, 2 * n);
    for (k, (d, _)) in pairs.iter().enumerate() {
        scale[(k, k)] = d.sqrt();
        scale[(n + k, n + k)] = d.sqrt();
    }

    let l = inv_half * o * scale;
    let decomposition = WilliamsonDecomposition {
        l,
        d: RealVector::from_vec(pairs.iter().map(|(v, _)| *v).collect()),
    };

    let j = standard_symplectic_form(n)?;
    let diag_residual = (decomposition.l.transpose() * &sym * &decomposition.l
        - decomposition.normal_form())
    .norm();
    let sympl_residual = (decomposition.l.transpose() * &j * &decomposition.l - &j).norm();
    if diag_residual > tol.residual_tol * sym.norm()
        || sympl_residual > tol.residual_tol * (1.0 + decomposition.l.norm_squared())
    {
        return Err(Error::ConvergenceFailure);
    }
    Ok(decomposition)
}

/// Diagonalize a J-commuting symmetric positive definite `S` by a passive
/// unitary: returns `(U, D)` with
/// `embed(U) S embed(U)^T = diag(D) (+) diag(D)` and `D` descending.
///
/// `D` coincides with the symplectic eigenvalues of `S`; it is obtained here
/// as the Hermitian spectrum of the complex witness `X` with `embed(X) = S`.
pub fn orthosymplectic_diagonalize(
    s: &RealMatrix,
    tol: &Tolerances,
) -> Result<(ComplexMatrix, RealVector)> {
    let sym = symmetrize(s, tol)?;
    let commutator = j_commutator_residual(&sym)?;
    if commutator > tol.commutator_tol * (1.0 + sym.norm()) {
        return Err(Error::NotPunCovariance(commutator));
    }
    // Project onto the commutant so the extraction is exact, then pull the
    // Hermitian witness out of the block form.
    let (commuting, _) = j_commutant_split(&sym)?;
    let x = hermitize(&extract_complex(&commuting, tol)?, tol)?;

    let eig = nalgebra::SymmetricEigen::new(x);
    let n = eig.eigenvalues.len();
    let min = eig.eigenvalues.min();
    if min <= tol.psd_tol * (1.0 + sym.norm()) {
        return Err(Error::NotPositiveDefinite(min));
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
    let d = RealVector::from_fn(n, |k, _| eig.eigenvalues[order[k]]);
    // U = V^dag so that U X U^dag = diag(D).
    let mut u = ComplexMatrix::zeros(n, n);
    for (k, &src) in order.iter().enumerate() {
        let col = canonical_phase(&eig.eigenvectors.column(src).clone_owned());
        for r in 0..n {
            u[(k, r)] = col[r].conj();
        }
    }
    Ok((u, d))
}

/// Invert `d_j = (1/2) coth(s_j / 2)` mode by mode:
/// `s_j = ln((2 d_j + 1) / (2 d_j - 1))`, with `s_j = +inf` (vacuum) when
/// `d_j` sits within `eig_floor` of 1/2; `nbar_j = d_j - 1/2` clamped at 0.
pub fn thermal_parameters(d: &RealVector, tol: &Tolerances) -> Result<ThermalParameters> {
    let mut s = Vec::with_capacity(d.len());
    let mut nbar = Vec::with_capacity(d.len());
    for &dj in d.iter() {
        if dj < 0.5 - tol.psd_tol {
            return Err(Error::NotAState(dj));
        }
        if dj <= 0.5 + tol.eig_floor {
            s.push(f64::INFINITY);
            nbar.push(0.0);
        } else {
            s.push(((2.0 * dj + 1.0) / (2.0 * dj - 1.0)).ln());
            nbar.push(dj - 0.5);
        }
    }
    Ok(ThermalParameters { s, nbar })
}

/// `S^{1/2}`, `S^{-1/2}`, and the symmetrized input.
fn sqrt_factors(s: &RealMatrix, tol: &Tolerances) -> Result<(RealMatrix, RealMatrix, RealMatrix)> {
    let sym = symmetrize(s, tol)?;
    let (values, vectors) = sym_eigen_sorted(&sym, tol)?;
    let min = values[0];
    if min <= tol.psd_tol * (1.0 + sym.norm()) {
        return Err(Error::NotPositiveDefinite(min));
    }
    let dim = sym.nrows();
    let mut half = RealMatrix::zeros(dim, dim);
    let mut inv_half = RealMatrix::zeros(dim, dim);
    for c in 0..dim {
        let root = values[c].sqrt();
        for r in 0..dim {
            half[(r, c)] = vectors[(r, c)] * root;
            inv_half[(r, c)] = vectors[(r, c)] / root;
        }
    }
    Ok((half * vectors.transpose(), inv_half * vectors.transpose(), sym))
}

/// Positive canonical values of `W = S^{1/2} J S^{1/2}` with their
/// eigenvectors of `i W`, descending and phase-normalized.
fn canonical_values(half: &RealMatrix, _tol: &Tolerances) -> Result<Vec<(f64, ComplexVector)>> {
    let dim = half.nrows();
    let n = dim / 2;
    let j = standard_symplectic_form(n)?;
    let w = half * &j * half;
    // (iW)^dag = -i W^T = i W for antisymmetric W, so iW is Hermitian.
    let h = DMatrix::from_fn(dim, dim, |r, c| Complex64::new(0.0, w[(r, c)]));
    let eig = nalgebra::SymmetricEigen::new(h);

    let mut order: Vec<usize> = (0..dim).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
    let mut out = Vec::with_capacity(n);
    for &k in order.iter().take(n) {
        let value = eig.eigenvalues[k];
        if !(value > 0.0) {
            // The spectrum of iW is symmetric; a nonpositive value in the top
            // half means the solver failed on a PD input.
            return Err(Error::ConvergenceFailure);
        }
        out.push((value, canonical_phase(&eig.eigenvectors.column(k).clone_owned())));
    }
    Ok(out)
}

/// Rotate a complex vector by a global phase so its largest-modulus entry
/// (first such on ties) is real and positive.
fn canonical_phase(v: &ComplexVector) -> ComplexVector {
    let mut best = 0usize;
    for k in 1..v.len() {
        if v[k].norm_sqr() > v[best].norm_sqr() + 1e-30 {
            best = k;
        }
    }
    let phase = v[best] / Complex64::new(v[best].norm(), 0.0);
    v * phase.conj()
}
