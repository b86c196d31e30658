//! Membership tests and certificates for the classification lattice
//!
//! ```text
//! valid Gaussian  >  classical  >  passive-unitary normalizable  >  circularly symmetric
//! ```
//!
//! All class tests are conditions on the covariance matrix alone; the mean is
//! reported separately (`nonzero_mean`). Passive-unitary normalizability
//! (PUN) is decided four ways — commutator with `J`, block-form
//! reconstruction, `A = 0` in the `(A, Lambda)` parametrization, and success
//! of the gauge certificate — and a disagreement between them is a hard
//! error, never silently resolved.

use std::collections::BTreeMap;

use crate::alambda::{self, ALambdaParams};
use crate::classical;
use crate::error::{Error, Result};
use crate::state::GaussianState;
use crate::symplectic::{
    extract_complex, hermitize, j_commutant_split, j_commutator_residual,
    standard_symplectic_form, sym_eigen_sorted, symmetrize, ComplexMatrix, RealMatrix,
};
use crate::tol::Tolerances;
use crate::williamson;

/// Gauge certificate of a PUN state: the classical covariance
/// `Sigma_R = (1/2) J (S_R - I/2) J^T` and its complex witness `K` with
/// `embed(K) = Sigma_R`.
#[derive(Debug, Clone)]
pub struct GaugeCertificate {
    pub sigma: RealMatrix,
    pub k: ComplexMatrix,
    /// Minimum eigenvalue of `K`.
    pub k_min_eig: f64,
    /// `K` is only positive semidefinite (some mode is pure); the classical
    /// normal distribution is degenerate.
    pub degenerate: bool,
    /// `|| (1/2) I + 2 J^T Sigma_R J - S_R ||_F`.
    pub reconstruction_residual: f64,
}

/// Lattice flags, named residuals, and the certificates of every class
/// attained.
#[derive(Debug, Clone)]
pub struct ClassificationReport {
    pub is_gaussian: bool,
    pub is_classical: bool,
    pub is_pun: bool,
    pub is_csgs: bool,
    /// Equal to `is_pun` by the main equivalence; kept as its own field since
    /// it is decided by its own certificate construction.
    pub is_gauge_invariant: bool,
    pub nonzero_mean: bool,
    pub residuals: BTreeMap<String, f64>,
    pub sympl_eigs: Vec<f64>,
    /// `(A, Lambda, mu)` parameters; present for every valid state (`A` is
    /// the witness of squeezing content).
    pub params: Option<ALambdaParams>,
    /// Diagonalizing unitary and thermal spectrum, present for PUN states.
    pub diagonalizer: Option<ComplexMatrix>,
    pub thermal_d: Option<Vec<f64>>,
    /// Inverse temperatures (`+inf` on vacuum modes), present for PUN states.
    pub inverse_temps: Option<Vec<f64>>,
    pub mean_photons: Option<Vec<f64>>,
    /// Classical noise covariance, present for classical states.
    pub sigma: Option<RealMatrix>,
    /// Gauge witness, present for PUN states.
    pub gauge_k: Option<ComplexMatrix>,
    pub gauge_degenerate: bool,
}

/// Frobenius norm of `S_R J - J S_R`.
pub fn pun_residual(state: &GaussianState) -> Result<f64> {
    j_commutator_residual(state.cov())
}

/// Covariance commutes with `J` within `commutator_tol * (1 + ||S||_F)`.
/// The mean is ignored: the class is decided at the covariance level.
pub fn is_pun(state: &GaussianState, tol: &Tolerances) -> Result<bool> {
    state.ensure_valid(tol)?;
    let residual = pun_residual(state)?;
    Ok(residual <= tol.commutator_tol * (1.0 + state.cov().norm()))
}

/// Minimum eigenvalue of `S_R - I/2`.
pub fn classical_min_eig(state: &GaussianState, tol: &Tolerances) -> Result<f64> {
    let sym = symmetrize(state.cov(), tol)?;
    let dim = sym.nrows();
    let shifted = sym - RealMatrix::identity(dim, dim) * 0.5;
    let (values, _) = sym_eigen_sorted(&shifted, tol)?;
    Ok(values[0])
}

/// `S_R >= I/2` within `psd_tol * (1 + ||S||_F)`.
pub fn is_classical(state: &GaussianState, tol: &Tolerances) -> Result<bool> {
    state.ensure_valid(tol)?;
    Ok(classical_min_eig(state, tol)? >= -tol.psd_tol * (1.0 + state.cov().norm()))
}

/// Outcome of the circular-symmetry test
/// `S_R = I/2 + 2 (diag(N) (+) diag(N))` for entrywise-nonnegative `N`.
#[derive(Debug, Clone)]
pub struct CsgsCheck {
    pub ok: bool,
    /// Best-fit per-mode weights, clamped at zero.
    pub n: Vec<f64>,
    /// Norm of the off-diagonal part of `S_R`.
    pub off_diag: f64,
    /// Norm of the mismatch between the two quadrature blocks of the
    /// fitted diagonal.
    pub block_mismatch: f64,
    /// `|| S_R - (I/2 + 2 diag(N) (+) 2 diag(N)) ||_F`.
    pub reconstruction: f64,
}

pub fn csgs_check(state: &GaussianState, tol: &Tolerances) -> Result<CsgsCheck> {
    state.ensure_valid(tol)?;
    let s = symmetrize(state.cov(), tol)?;
    let n = state.modes();

    let mut weights = Vec::with_capacity(n);
    let mut block_mismatch_sq = 0.0;
    for k in 0..n {
        let top = s[(k, k)];
        let bottom = s[(n + k, n + k)];
        block_mismatch_sq += (top - bottom).powi(2);
        weights.push((0.5 * (top + bottom) - 0.5) / 2.0);
    }

    let mut recon = RealMatrix::identity(2 * n, 2 * n) * 0.5;
    for (k, w) in weights.iter().enumerate() {
        recon[(k, k)] += 2.0 * w;
        recon[(n + k, n + k)] += 2.0 * w;
    }
    let reconstruction = (&s - &recon).norm();

    let mut off = s.clone();
    for k in 0..2 * n {
        off[(k, k)] = 0.0;
    }
    let off_diag = off.norm();

    let scale = 1.0 + s.norm();
    let nonnegative = weights.iter().all(|w| *w >= -tol.psd_tol * scale);
    let ok = nonnegative && reconstruction <= tol.residual_tol * scale;
    let n_clamped = weights.into_iter().map(|w| w.max(0.0)).collect();
    Ok(CsgsCheck {
        ok,
        n: n_clamped,
        off_diag,
        block_mismatch: block_mismatch_sq.sqrt(),
        reconstruction,
    })
}

pub fn is_csgs(state: &GaussianState, tol: &Tolerances) -> Result<bool> {
    Ok(csgs_check(state, tol)?.ok)
}

/// Build the gauge certificate of a valid PUN state.
///
/// The classical covariance is chosen as
/// `Sigma_R = (1/2) J (S_R - I/2) J^T`; its complex witness `K` is Hermitian
/// positive semidefinite, and `S_R = I/2 + 2 J^T Sigma_R J` reconstructs the
/// input. `K` may be singular (pure modes); that is reported through the
/// `degenerate` flag rather than rejected.
pub fn gauge_certificate(state: &GaussianState, tol: &Tolerances) -> Result<GaugeCertificate> {
    state.ensure_valid(tol)?;
    let s = symmetrize(state.cov(), tol)?;
    let scale = 1.0 + s.norm();

    let commutator = j_commutator_residual(&s)?;
    if commutator > tol.commutator_tol * scale {
        return Err(Error::NotPun(commutator));
    }
    let min_classical = classical_min_eig(state, tol)?;
    if min_classical < -tol.psd_tol * scale {
        return Err(Error::NotClassical(min_classical));
    }

    let n = state.modes();
    let j = standard_symplectic_form(n)?;
    let sigma = (&j * (&s - RealMatrix::identity(2 * n, 2 * n) * 0.5) * j.transpose()) * 0.5;
    let sigma = (&sigma + sigma.transpose()) * 0.5;

    // Extraction works on the exactly-commuting projection; the commutator
    // slack of the input has already been vetted above.
    let (sigma_c, _) = j_commutant_split(&sigma)?;
    let k = hermitize(&extract_complex(&sigma_c, tol)?, tol)?;
    let k_min_eig = crate::symplectic::hermitian_min_eigenvalue(&k, tol)?;

    let reconstruction =
        (RealMatrix::identity(2 * n, 2 * n) * 0.5 + (j.transpose() * &sigma * &j) * 2.0 - &s)
            .norm();
    Ok(GaugeCertificate {
        sigma,
        k_min_eig,
        degenerate: k_min_eig <= tol.eig_floor * scale,
        k,
        reconstruction_residual: reconstruction,
    })
}

/// Run every lattice test, populate residuals and certificates, and enforce
/// agreement between the four PUN criteria and the implication chain.
pub fn classify(state: &GaussianState, tol: &Tolerances) -> Result<ClassificationReport> {
    let validity = state.validate(tol);
    let mut residuals = BTreeMap::new();
    residuals.insert("uncertainty_min_eig".into(), validity.min_eig);
    residuals.insert("symmetry".into(), validity.symmetry_residual);
    let mean_norm = state.mean().norm();
    residuals.insert("mean_norm".into(), mean_norm);

    let mut report = ClassificationReport {
        is_gaussian: validity.is_valid(),
        is_classical: false,
        is_pun: false,
        is_csgs: false,
        is_gauge_invariant: false,
        nonzero_mean: mean_norm > tol.residual_tol,
        residuals,
        sympl_eigs: validity.sympl_eigs.clone(),
        params: None,
        diagonalizer: None,
        thermal_d: None,
        inverse_temps: None,
        mean_photons: None,
        sigma: None,
        gauge_k: None,
        gauge_degenerate: false,
    };
    if !report.is_gaussian {
        return Ok(report);
    }

    let s = symmetrize(state.cov(), tol)?;
    let scale = 1.0 + s.norm();

    // PUN, four ways.
    let commutator = j_commutator_residual(&s)?;
    report.residuals.insert("commutator".into(), commutator);
    let pun_commutator = commutator <= tol.commutator_tol * scale;

    let (s_commuting, s_anti) = j_commutant_split(&s)?;
    let block_residual = (&s - &s_commuting).norm();
    report
        .residuals
        .insert("block_reconstruction".into(), block_residual);
    let pun_block = block_residual <= tol.commutator_tol * scale;
    debug_assert!((s_anti.norm() - block_residual).abs() <= 1e-12 * scale);

    let params = alambda::from_covariance(state, tol)?;
    let a_norm = alambda::operator_norm(&params.a);
    report.residuals.insert("a_norm".into(), a_norm);
    let pun_a = a_norm <= tol.commutator_tol * scale;
    report.params = Some(params);

    let gauge = gauge_certificate(state, tol);
    let pun_gauge = gauge.is_ok();

    let votes = [pun_commutator, pun_block, pun_a, pun_gauge];
    if votes.iter().any(|&v| v != pun_commutator) {
        return Err(Error::InconsistentClassification(format!(
            "PUN tests disagree: commutator={pun_commutator}, block={pun_block}, \
             a={pun_a}, gauge={pun_gauge} (commutator residual {commutator:.3e}, \
             block residual {block_residual:.3e}, |A| {a_norm:.3e})"
        )));
    }
    report.is_pun = pun_commutator;
    report.is_gauge_invariant = pun_gauge;

    // Classicality.
    let min_classical = classical_min_eig(state, tol)?;
    report
        .residuals
        .insert("classical_min_eig".into(), min_classical);
    report.is_classical = min_classical >= -tol.psd_tol * scale;

    // Circular symmetry.
    let csgs = csgs_check(state, tol)?;
    report.residuals.insert("csgs_offdiag".into(), csgs.off_diag);
    report
        .residuals
        .insert("csgs_block_mismatch".into(), csgs.block_mismatch);
    report
        .residuals
        .insert("csgs_reconstruction".into(), csgs.reconstruction);
    report.is_csgs = csgs.ok;

    // Certificates for the classes attained.
    if report.is_classical {
        let noise = classical::classical_covariance(state, tol)?;
        report.sigma = Some(noise.sigma);
    }
    if report.is_pun {
        let (u, d) = williamson::orthosymplectic_diagonalize(&s, tol)?;
        let thermal = williamson::thermal_parameters(&d, tol)?;
        report.diagonalizer = Some(u);
        report.thermal_d = Some(d.iter().copied().collect());
        report.inverse_temps = Some(thermal.s);
        report.mean_photons = Some(thermal.nbar);
        match gauge {
            Ok(cert) => {
                report
                    .residuals
                    .insert("gauge_reconstruction".into(), cert.reconstruction_residual);
                report.residuals.insert("gauge_k_min_eig".into(), cert.k_min_eig);
                report.gauge_k = Some(cert.k);
                report.gauge_degenerate = cert.degenerate;
            }
            Err(e) => {
                return Err(Error::InconsistentClassification(format!(
                    "gauge certificate failed on a PUN state: {e}"
                )))
            }
        }
    }

    // The lattice must be a chain.
    let chain_ok = (!report.is_csgs || report.is_pun)
        && (!report.is_pun || report.is_classical)
        && (!report.is_classical || report.is_gaussian);
    if !chain_ok {
        return Err(Error::InconsistentClassification(format!(
            "implication chain violated: csgs={}, pun={}, classical={}, gaussian={}",
            report.is_csgs, report.is_pun, report.is_classical, report.is_gaussian
        )));
    }
    Ok(report)
}
