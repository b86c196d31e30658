//! The `(mu, A, Lambda)` parametrization of a Gaussian state: `A` is complex
//! symmetric (the squeezing content), `Lambda` Hermitian PSD (the thermal
//! content), and `mu` a complex vector tied to the mean through the real
//! linear map `I - Lambda - 2 A C` (`C` = entrywise conjugation).
//!
//! The bridge to the covariance picture is
//! `(I/2 + S_R)^{-1} = M(-A, Lambda)` with
//!
//! ```text
//! M(A, L) = I - [[Re L, -Im L], [Im L, Re L]] - 2 [[Re A, Im A], [Im A, -Re A]]
//! ```
//!
//! The second block is exactly the real matrix of `A C`, so `M(A, Lambda)` is
//! also the matrix of the mean map: `mu_R = M(A, Lambda) m_R`. Its two sign
//! conventions (`-A` in the covariance relation, `-2` in the block form) are
//! pinned by the `S = diag(1, 1/4) -> A = -1/6` unit test below.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::state::GaussianState;
use crate::symplectic::{
    embed_complex, embed_complex_vector, extract_complex, hermitize, is_unitary,
    j_commutant_split, sym_eigen_sorted, unitarity_residual, ComplexMatrix, ComplexVector,
    RealMatrix,
};
use crate::tol::Tolerances;

/// Parameter triple of a Gaussian state.
#[derive(Debug, Clone, PartialEq)]
pub struct ALambdaParams {
    pub mu: ComplexVector,
    pub a: ComplexMatrix,
    pub lambda: ComplexMatrix,
}

impl ALambdaParams {
    pub fn modes(&self) -> usize {
        self.mu.len()
    }
}

/// Shape and positivity report for a candidate `(A, Lambda)` pair.
#[derive(Debug, Clone)]
pub struct ParamReport {
    /// `M(A, Lambda) > 0` with margin `psd_tol`.
    pub m_pd: bool,
    /// Minimum eigenvalue of `M(A, Lambda)`.
    pub m_min_eig: f64,
    /// Operator norm of `A` (must be `< 1/2` for a state).
    pub norm_a: f64,
    /// Operator norm of `Lambda` (must be `< 1` for a state).
    pub norm_lambda: f64,
    /// Minimum eigenvalue of `Lambda`.
    pub lambda_min_eig: f64,
}

impl ParamReport {
    pub fn is_state(&self) -> bool {
        self.m_pd && self.norm_a < 0.5 && self.norm_lambda < 1.0 && self.lambda_min_eig >= 0.0
    }
}

/// Real block matrix of the antilinear map `z -> A conj(z)`:
/// `[[Re A, Im A], [Im A, -Re A]]`.
fn conjugation_block(a: &ComplexMatrix) -> RealMatrix {
    let n = a.nrows();
    let mut out = RealMatrix::zeros(2 * n, 2 * n);
    for r in 0..n {
        for c in 0..n {
            let z = a[(r, c)];
            out[(r, c)] = z.re;
            out[(r, n + c)] = z.im;
            out[(n + r, c)] = z.im;
            out[(n + r, n + c)] = -z.re;
        }
    }
    out
}

/// `M(A, Lambda) = I - embed(Lambda) - 2 [[Re A, Im A], [Im A, -Re A]]`.
pub fn m_matrix(a: &ComplexMatrix, lambda: &ComplexMatrix) -> Result<RealMatrix> {
    if a.nrows() != a.ncols() || a.shape() != lambda.shape() {
        return Err(Error::Dimension(format!(
            "A and Lambda must be square with equal shape, got {:?} and {:?}",
            a.shape(),
            lambda.shape()
        )));
    }
    let n = a.nrows();
    let eye = RealMatrix::identity(2 * n, 2 * n);
    Ok(eye - embed_complex(lambda)? - conjugation_block(a) * 2.0)
}

/// Normalization `c(A, Lambda) = sqrt(det M(A, Lambda))`, defined for
/// positive definite `M`.
pub fn c_normalization(a: &ComplexMatrix, lambda: &ComplexMatrix, tol: &Tolerances) -> Result<f64> {
    let m = m_matrix(a, lambda)?;
    let (values, _) = sym_eigen_sorted(&m, tol)?;
    if values[0] <= tol.psd_tol * (1.0 + m.norm()) {
        return Err(Error::InvalidParams(format!(
            "M(A, Lambda) is not positive definite (min eigenvalue {:.6e})",
            values[0]
        )));
    }
    Ok(values.iter().product::<f64>().sqrt())
}

/// Extract `(mu, A, Lambda)` from a valid state.
///
/// `T = I - (I/2 + S_R)^{-1}` splits into a J-commuting part (which is
/// `embed(Lambda)`) and a J-anticommuting part (which is `-2` times the
/// conjugation block of `A`); `mu` is the forward image of the mean under
/// `M(A, Lambda)`.
pub fn from_covariance(state: &GaussianState, tol: &Tolerances) -> Result<ALambdaParams> {
    state.ensure_valid(tol)?;
    let n = state.modes();
    let eye = RealMatrix::identity(2 * n, 2 * n);
    let shifted = &eye * 0.5 + state.cov();
    let inv = crate::symplectic::symmetric_power(&shifted, -1.0, tol)?;
    let t = &eye - inv;
    let (tc, ta) = j_commutant_split(&t)?;

    let lambda = hermitize(&extract_complex(&tc, tol)?, tol)?;
    let scaled = ta * (-0.5);
    let a_raw = ComplexMatrix::from_fn(n, n, |r, c| {
        Complex64::new(scaled[(r, c)], scaled[(r, n + c)])
    });
    let a = symmetrize_complex(&a_raw, tol)?;

    let m = m_matrix(&a, &lambda)?;
    let mu_r = &m * state.real_mean();
    let mu = crate::symplectic::complex_from_real_vector(&mu_r)?;
    Ok(ALambdaParams { mu, a, lambda })
}

/// Rebuild the state: `S_R = M(-A, Lambda)^{-1} - I/2` and `m` from solving
/// the real-linear mean map.
pub fn to_covariance(params: &ALambdaParams, tol: &Tolerances) -> Result<GaussianState> {
    let n = params.modes();
    if params.a.nrows() != n || params.lambda.nrows() != n {
        return Err(Error::Dimension(
            "mu, A, Lambda must share the mode count".into(),
        ));
    }
    let neg_a = -&params.a;
    let m_neg = m_matrix(&neg_a, &params.lambda)?;
    let (values, _) = sym_eigen_sorted(&m_neg, tol)?;
    if values[0] <= tol.psd_tol * (1.0 + m_neg.norm()) {
        return Err(Error::InvalidParams(format!(
            "M(-A, Lambda) is not positive definite (min eigenvalue {:.6e})",
            values[0]
        )));
    }
    let inv = crate::symplectic::symmetric_power(&m_neg, -1.0, tol)?;
    let cov = inv - RealMatrix::identity(2 * n, 2 * n) * 0.5;

    let mean_map = m_matrix(&params.a, &params.lambda)?;
    let mu_r = embed_complex_vector(&params.mu);
    let m_r = mean_map
        .lu()
        .solve(&mu_r)
        .ok_or(Error::SingularMeanMap)?;
    let mean = crate::symplectic::complex_from_real_vector(&m_r)?;

    let state = GaussianState::new(mean, cov)?;
    state.ensure_valid(tol)?;
    Ok(state)
}

/// Exponential-vector generating function
/// `G(u, v) = c(A, Lambda) e^{-Re(mu^dag m)}
///            exp(u^T mu + conj(mu)^T v + u^T A u + u^T Lambda v + v^T conj(A) v)`
/// with `m` the mean solving the mean map.
///
/// The factor `e^{-Re(mu^dag m)}` is the mean-dependent part of the
/// normalization; it is 1 for mean-zero states (`G(0,0) = <0|rho|0>` must be
/// the vacuum overlap, not the mean-independent constant alone).
pub fn generating_function(
    params: &ALambdaParams,
    u: &ComplexVector,
    v: &ComplexVector,
    tol: &Tolerances,
) -> Result<Complex64> {
    let n = params.modes();
    if u.len() != n || v.len() != n {
        return Err(Error::Dimension(format!(
            "probe vectors must have {n} modes"
        )));
    }
    let c = c_normalization(&params.a, &params.lambda, tol)?;

    let mean_map = m_matrix(&params.a, &params.lambda)?;
    let mu_r = embed_complex_vector(&params.mu);
    let m_r = mean_map.lu().solve(&mu_r).ok_or(Error::SingularMeanMap)?;
    let m = crate::symplectic::complex_from_real_vector(&m_r)?;
    let mean_norm: f64 = (0..n).map(|k| (params.mu[k].conj() * m[k]).re).sum();

    let mut exponent = Complex64::new(-mean_norm, 0.0);
    for k in 0..n {
        exponent += u[k] * params.mu[k] + params.mu[k].conj() * v[k];
    }
    for r in 0..n {
        for c_idx in 0..n {
            exponent += u[r] * params.a[(r, c_idx)] * u[c_idx];
            exponent += u[r] * params.lambda[(r, c_idx)] * v[c_idx];
            exponent += v[r] * params.a[(r, c_idx)].conj() * v[c_idx];
        }
    }
    Ok(Complex64::new(c, 0.0) * exponent.exp())
}

/// Parameters after conjugation by the passive unitary of `U`:
/// `(U mu, U A U^T, U Lambda U^dag)`. The normalization `c` is unchanged.
pub fn passive_transform(
    params: &ALambdaParams,
    u: &ComplexMatrix,
    tol: &Tolerances,
) -> Result<ALambdaParams> {
    let n = params.modes();
    if u.nrows() != n || u.ncols() != n {
        return Err(Error::Dimension(format!("unitary must be {n}x{n}")));
    }
    if !is_unitary(u, tol)? {
        return Err(Error::NotUnitary(unitarity_residual(u)));
    }
    Ok(ALambdaParams {
        mu: u * &params.mu,
        a: u * &params.a * u.transpose(),
        lambda: u * &params.lambda * u.adjoint(),
    })
}

/// Positivity and norm report for a candidate pair.
pub fn validate_params(
    a: &ComplexMatrix,
    lambda: &ComplexMatrix,
    tol: &Tolerances,
) -> Result<ParamReport> {
    let m = m_matrix(a, lambda)?;
    let (values, _) = sym_eigen_sorted(&m, tol)?;
    let m_min_eig = values[0];
    let lambda_min_eig = crate::symplectic::hermitian_min_eigenvalue(lambda, tol)?;
    Ok(ParamReport {
        m_pd: m_min_eig > tol.psd_tol * (1.0 + m.norm()),
        m_min_eig,
        norm_a: operator_norm(a),
        norm_lambda: operator_norm(lambda),
        lambda_min_eig,
    })
}

/// Largest singular value, via the Hermitian spectrum of `A^dag A`.
pub fn operator_norm(a: &ComplexMatrix) -> f64 {
    let gram = a.adjoint() * a;
    let eig = nalgebra::SymmetricEigen::new(gram);
    eig.eigenvalues.max().max(0.0).sqrt()
}

fn symmetrize_complex(a: &ComplexMatrix, tol: &Tolerances) -> Result<ComplexMatrix> {
    let sym = (a + a.transpose()) * Complex64::new(0.5, 0.0);
    let deviation = (a - &sym).norm();
    if deviation > tol.sym_tol * (1.0 + a.norm()) {
        return Err(Error::NotSymmetric(deviation));
    }
    Ok(sym)
}
