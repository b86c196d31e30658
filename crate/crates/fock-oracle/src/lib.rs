//! Brute-force reference values for single-mode Gaussian states, computed in a
//! truncated number basis with no shared code path with `gstate-core`.
//!
//! States are stored as raw `(cutoff+1) x (cutoff+1)` density matrices. The
//! generating function is the exponential-vector pairing summed term by term;
//! the characteristic function is a trace against a displacement operator
//! built by exponentiating the truncated mode operators. Truncation error is
//! controlled by the caller through `cutoff` (40 is enough for probe points
//! with |u|, |v| <= 2; doubling the cutoff should not move any digit that a
//! comparison depends on).

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

/// Single-mode density matrix in the number basis, truncated at `cutoff`.
///
/// The raw truncated trace is kept as-is (no renormalization) so that the
/// truncation loss itself can be inspected.
#[derive(Debug, Clone)]
pub struct TruncatedState {
    pub cutoff: usize,
    pub rho: DMatrix<Complex64>,
}

impl TruncatedState {
    /// Raw trace of the truncated density matrix.
    pub fn trace(&self) -> f64 {
        (0..=self.cutoff).map(|k| self.rho[(k, k)].re).sum()
    }
}

/// Thermal state with inverse temperature `s > 0`: diagonal entries
/// `(1 - e^{-s}) e^{-s k}`.
pub fn thermal_truncated(s: f64, cutoff: usize) -> TruncatedState {
    assert!(s > 0.0, "inverse temperature must be positive");
    assert!(cutoff >= 1);
    let q = (-s).exp();
    let rho = DMatrix::from_fn(cutoff + 1, cutoff + 1, |j, k| {
        if j == k {
            Complex64::new((1.0 - q) * q.powi(j as i32), 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    TruncatedState { cutoff, rho }
}

/// Coherent state `|alpha><alpha|`: entries
/// `e^{-|alpha|^2} alpha^j conj(alpha)^k / sqrt(j! k!)`.
pub fn coherent_truncated(alpha: Complex64, cutoff: usize) -> TruncatedState {
    let amps = coherent_amplitudes(alpha, cutoff);
    TruncatedState { cutoff, rho: pure_density(&amps) }
}

/// Squeezed vacuum whose even-number amplitudes follow the two-term recurrence
/// `psi_{2m+2} = psi_{2m} * a * sqrt((2m+1)(2m+2)) / (m+1)` seeded with
/// `psi_0 = (1 - 4a^2)^{1/4}`, for a real squeezing parameter `|a| < 1/2`.
///
/// For `a = -1/6` this is the unit-variance-in-q squeezed mode with quadrature
/// covariance `diag(1, 1/4)`.
pub fn squeezed_truncated(a: f64, cutoff: usize) -> TruncatedState {
    assert!(a.abs() < 0.5, "squeezing parameter must satisfy |a| < 1/2");
    let mut amps = DVector::from_element(cutoff + 1, Complex64::new(0.0, 0.0));
    let mut psi = (1.0 - 4.0 * a * a).powf(0.25);
    amps[0] = Complex64::new(psi, 0.0);
    let mut m = 0usize;
    while 2 * m + 2 <= cutoff {
        let two_m = (2 * m) as f64;
        psi *= a * ((two_m + 1.0) * (two_m + 2.0)).sqrt() / (m as f64 + 1.0);
        amps[2 * m + 2] = Complex64::new(psi, 0.0);
        m += 1;
    }
    TruncatedState { cutoff, rho: pure_density(&amps) }
}

/// Exponential-vector pairing `<e(conj(u))| rho |e(v)>` summed in the number
/// basis: `sum_{j,k} u^j v^k rho_{jk} / sqrt(j! k!)`.
pub fn oracle_generating_function(
    state: &TruncatedState,
    u: Complex64,
    v: Complex64,
) -> Complex64 {
    let dim = state.cutoff + 1;
    let upow = scaled_powers(u, dim);
    let vpow = scaled_powers(v, dim);
    let mut acc = Complex64::new(0.0, 0.0);
    for j in 0..dim {
        for k in 0..dim {
            acc += upow[j] * vpow[k] * state.rho[(j, k)];
        }
    }
    acc
}

/// Characteristic function `tr[rho W(z)]` with `W(z)` the truncated
/// displacement operator.
pub fn oracle_characteristic(state: &TruncatedState, z: Complex64) -> Complex64 {
    let w = displacement_matrix(z, state.cutoff);
    let dim = state.cutoff + 1;
    let mut acc = Complex64::new(0.0, 0.0);
    for j in 0..dim {
        for k in 0..dim {
            acc += state.rho[(j, k)] * w[(k, j)];
        }
    }
    acc
}

/// Truncated Weyl displacement operator `W(z) = exp(z a^dag - conj(z) a)`,
/// evaluated by a Hermitian eigendecomposition of `i (z a^dag - conj(z) a)`.
pub fn displacement_matrix(z: Complex64, cutoff: usize) -> DMatrix<Complex64> {
    let dim = cutoff + 1;
    let i = Complex64::new(0.0, 1.0);
    // h = i (z a^dag - conj(z) a) is Hermitian; W = exp(-i h).
    let mut h = DMatrix::from_element(dim, dim, Complex64::new(0.0, 0.0));
    for k in 1..dim {
        let root = (k as f64).sqrt();
        // a^dag entry (k, k-1) = sqrt(k); a entry (k-1, k) = sqrt(k).
        h[(k, k - 1)] = i * z * root;
        h[(k - 1, k)] = -i * z.conj() * root;
    }
    let eig = nalgebra::SymmetricEigen::new(h);
    let phases = DVector::from_fn(dim, |r, _| (-i * eig.eigenvalues[r]).exp());
    let vt = eig.eigenvectors.adjoint();
    let mut scaled = eig.eigenvectors.clone();
    for c in 0..dim {
        for r in 0..dim {
            scaled[(r, c)] *= phases[c];
        }
    }
    scaled * vt
}

fn coherent_amplitudes(alpha: Complex64, cutoff: usize) -> DVector<Complex64> {
    let norm = (-0.5 * alpha.norm_sqr()).exp();
    let mut amps = DVector::from_element(cutoff + 1, Complex64::new(0.0, 0.0));
    let mut term = Complex64::new(norm, 0.0);
    amps[0] = term;
    for k in 1..=cutoff {
        term *= alpha / Complex64::new((k as f64).sqrt(), 0.0);
        amps[k] = term;
    }
    amps
}

fn pure_density(amps: &DVector<Complex64>) -> DMatrix<Complex64> {
    let dim = amps.len();
    DMatrix::from_fn(dim, dim, |j, k| amps[j] * amps[k].conj())
}

/// Powers `x^k / sqrt(k!)` for `k = 0..dim`.
fn scaled_powers(x: Complex64, dim: usize) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(dim);
    let mut cur = Complex64::new(1.0, 0.0);
    out.push(cur);
    for k in 1..dim {
        cur *= x / Complex64::new((k as f64).sqrt(), 0.0);
        out.push(cur);
    }
    out
}
