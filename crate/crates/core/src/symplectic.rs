//! Real/complex matrix substrate: the standard symplectic form `J`, the
//! embedding of complex matrices into `M_{2n}(R)`, the splitting of a real
//! matrix into its J-commuting and J-anticommuting parts, and the group /
//! positivity predicates used everywhere else.
//!
//! The embedding sends an `n x n` complex matrix `M` to
//! `[[Re M, -Im M], [Im M, Re M]]`; its image is exactly the set of real
//! matrices commuting with `J = [[0, I], [-I, 0]]`. A complex column vector
//! `x + i y` corresponds to the real column `(x, y)`.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::tol::Tolerances;

pub type RealMatrix = DMatrix<f64>;
pub type ComplexMatrix = DMatrix<Complex64>;
pub type RealVector = DVector<f64>;
pub type ComplexVector = DVector<Complex64>;

/// The standard symplectic form `J = [[0, I_n], [-I_n, 0]]`.
pub fn standard_symplectic_form(n: usize) -> Result<RealMatrix> {
    if n == 0 {
        return Err(Error::Dimension("mode count must be at least 1".into()));
    }
    let mut j = RealMatrix::zeros(2 * n, 2 * n);
    for k in 0..n {
        j[(k, n + k)] = 1.0;
        j[(n + k, k)] = -1.0;
    }
    Ok(j)
}

/// Real matrix of a complex one: `[[Re M, -Im M], [Im M, Re M]]`.
pub fn embed_complex(m: &ComplexMatrix) -> Result<RealMatrix> {
    if m.nrows() != m.ncols() {
        return Err(Error::Dimension(format!(
            "embedding requires a square matrix, got {}x{}",
            m.nrows(),
            m.ncols()
        )));
    }
    let n = m.nrows();
    let mut out = RealMatrix::zeros(2 * n, 2 * n);
    for r in 0..n {
        for c in 0..n {
            let z = m[(r, c)];
            out[(r, c)] = z.re;
            out[(r, n + c)] = -z.im;
            out[(n + r, c)] = z.im;
            out[(n + r, n + c)] = z.re;
        }
    }
    Ok(out)
}

/// Real column `(x, y)` of a complex vector `x + i y`.
pub fn embed_complex_vector(v: &ComplexVector) -> RealVector {
    let n = v.len();
    RealVector::from_fn(2 * n, |k, _| if k < n { v[k].re } else { v[k - n].im })
}

/// Inverse of [`embed_complex_vector`].
pub fn complex_from_real_vector(v: &RealVector) -> Result<ComplexVector> {
    if v.len() % 2 != 0 {
        return Err(Error::Dimension(format!(
            "real vector length {} is odd",
            v.len()
        )));
    }
    let n = v.len() / 2;
    Ok(ComplexVector::from_fn(n, |k, _| Complex64::new(v[k], v[n + k])))
}

/// Frobenius norm of `M J - J M`.
pub fn j_commutator_residual(m: &RealMatrix) -> Result<f64> {
    let j = form_for(m)?;
    Ok((m * &j - &j * m).norm())
}

/// Recover `K` with `embed_complex(K) = M_R` from a J-commuting real matrix.
///
/// Writing `M_R = [[E, F], [G, H]]`, commutation with `J` forces `H = E` and
/// `G = -F`, and the witness is `K = E - i F`. Inputs whose commutator
/// residual exceeds `commutator_tol * (1 + ||M_R||_F)` are rejected with the
/// residual attached.
pub fn extract_complex(m: &RealMatrix, tol: &Tolerances) -> Result<ComplexMatrix> {
    let residual = j_commutator_residual(m)?;
    if residual > tol.commutator_tol * (1.0 + m.norm()) {
        return Err(Error::NotJCommuting(residual));
    }
    let n = m.nrows() / 2;
    Ok(ComplexMatrix::from_fn(n, n, |r, c| {
        Complex64::new(m[(r, c)], -m[(r, n + c)])
    }))
}

/// Split `T = T_c + T_a` with `T_c = (T - J T J) / 2` commuting with `J` and
/// `T_a = (T + J T J) / 2` anticommuting with it (`J^{-1} = -J`).
pub fn j_commutant_split(t: &RealMatrix) -> Result<(RealMatrix, RealMatrix)> {
    let j = form_for(t)?;
    let jtj = &j * t * &j;
    let commuting = (t - &jtj) * 0.5;
    let anticommuting = (t + &jtj) * 0.5;
    Ok((commuting, anticommuting))
}

/// Frobenius norm of `M^T J M - J`.
pub fn symplectic_residual(m: &RealMatrix) -> Result<f64> {
    let j = form_for(m)?;
    Ok((m.transpose() * &j * m - &j).norm())
}

/// `M^T J M = J` up to `commutator_tol * (1 + ||M||_F^2)`; the residual is
/// quadratic in `M`, hence the squared scale.
pub fn is_symplectic(m: &RealMatrix, tol: &Tolerances) -> Result<bool> {
    let residual = symplectic_residual(m)?;
    Ok(residual <= tol.commutator_tol * (1.0 + m.norm_squared()))
}

/// Frobenius norm of `M^T M - I`.
pub fn orthogonality_residual(m: &RealMatrix) -> f64 {
    let eye = RealMatrix::identity(m.ncols(), m.ncols());
    (m.transpose() * m - eye).norm()
}

/// Symplectic and orthogonal.
pub fn is_orthosymplectic(m: &RealMatrix, tol: &Tolerances) -> Result<bool> {
    Ok(is_symplectic(m, tol)?
        && orthogonality_residual(m) <= tol.commutator_tol * (1.0 + m.norm_squared()))
}

/// Frobenius norm of `U^dag U - I`.
pub fn unitarity_residual(u: &ComplexMatrix) -> f64 {
    let eye = ComplexMatrix::identity(u.ncols(), u.ncols());
    (u.adjoint() * u - eye).norm()
}

pub fn is_unitary(u: &ComplexMatrix, tol: &Tolerances) -> Result<bool> {
    if u.nrows() != u.ncols() {
        return Err(Error::Dimension(format!(
            "unitarity test requires a square matrix, got {}x{}",
            u.nrows(),
            u.ncols()
        )));
    }
    Ok(unitarity_residual(u) <= tol.commutator_tol * (1.0 + u.norm_squared()))
}

/// Symmetrize a near-symmetric matrix once at the boundary; reject beyond
/// `sym_tol * (1 + ||M||_F)`.
pub fn symmetrize(m: &RealMatrix, tol: &Tolerances) -> Result<RealMatrix> {
    if m.nrows() != m.ncols() {
        return Err(Error::Dimension(format!(
            "symmetrization requires a square matrix, got {}x{}",
            m.nrows(),
            m.ncols()
        )));
    }
    let sym = (m + m.transpose()) * 0.5;
    let deviation = (m - &sym).norm();
    if deviation > tol.sym_tol * (1.0 + m.norm()) {
        return Err(Error::NotSymmetric(deviation));
    }
    Ok(sym)
}

/// Hermitian counterpart of [`symmetrize`].
pub fn hermitize(m: &ComplexMatrix, tol: &Tolerances) -> Result<ComplexMatrix> {
    if m.nrows() != m.ncols() {
        return Err(Error::Dimension(format!(
            "hermitization requires a square matrix, got {}x{}",
            m.nrows(),
            m.ncols()
        )));
    }
    let herm = (m + m.adjoint()) * Complex64::new(0.5, 0.0);
    let deviation = (m - &herm).norm();
    if deviation > tol.sym_tol * (1.0 + m.norm()) {
        return Err(Error::NotHermitian(deviation));
    }
    Ok(herm)
}

/// Minimum eigenvalue of a (near-)Hermitian matrix, via a full
/// eigendecomposition so the value can be reported as a certificate.
pub fn hermitian_min_eigenvalue(h: &ComplexMatrix, tol: &Tolerances) -> Result<f64> {
    let herm = hermitize(h, tol)?;
    let eig = nalgebra::SymmetricEigen::new(herm);
    Ok(eig.eigenvalues.min())
}

/// PSD test with a reportable minimum eigenvalue: true iff
/// `lambda_min >= -psd_tol * (1 + ||H||_F)`.
pub fn hermitian_psd_check(h: &ComplexMatrix, tol: &Tolerances) -> Result<(bool, f64)> {
    let min_eig = hermitian_min_eigenvalue(h, tol)?;
    Ok((min_eig >= -tol.psd_tol * (1.0 + h.norm()), min_eig))
}

/// Eigendecomposition of a symmetrized real matrix, eigenvalues ascending.
pub fn sym_eigen_sorted(m: &RealMatrix, tol: &Tolerances) -> Result<(RealVector, RealMatrix)> {
    let sym = symmetrize(m, tol)?;
    let eig = nalgebra::SymmetricEigen::new(sym);
    let dim = eig.eigenvalues.len();
    let mut order: Vec<usize> = (0..dim).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = RealVector::from_fn(dim, |k, _| eig.eigenvalues[order[k]]);
    let mut vectors = RealMatrix::zeros(dim, dim);
    for (k, &src) in order.iter().enumerate() {
        vectors.set_column(k, &eig.eigenvectors.column(src));
    }
    Ok((values, vectors))
}

/// `S^{p}` for symmetric positive definite `S` through its eigensystem.
pub fn symmetric_power(s: &RealMatrix, p: f64, tol: &Tolerances) -> Result<RealMatrix> {
    let (values, vectors) = sym_eigen_sorted(s, tol)?;
    let min = values[0];
    if min <= tol.psd_tol * (1.0 + s.norm()) {
        return Err(Error::NotPositiveDefinite(min));
    }
    let scaled = RealMatrix::from_fn(s.nrows(), s.ncols(), |r, c| {
        vectors[(r, c)] * values[c].powf(p)
    });
    Ok(scaled * vectors.transpose())
}

fn form_for(m: &RealMatrix) -> Result<RealMatrix> {
    if m.nrows() != m.ncols() || m.nrows() % 2 != 0 || m.nrows() == 0 {
        return Err(Error::Dimension(format!(
            "expected a square even-dimensional matrix, got {}x{}",
            m.nrows(),
            m.ncols()
        )));
    }
    standard_symplectic_form(m.nrows() / 2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn form_single_mode() {
        let j = standard_symplectic_form(1).unwrap();
        assert_eq!(j, RealMatrix::from_row_slice(2, 2, &[0.0, 1.0, -1.0, 0.0]));
    }

    #[test]
    fn form_two_modes_has_identity_blocks() {
        let j = standard_symplectic_form(2).unwrap();
        assert_eq!(j.view((0, 2), (2, 2)).clone_owned(), RealMatrix::identity(2, 2));
        assert_eq!(
            j.view((2, 0), (2, 2)).clone_owned(),
            -RealMatrix::identity(2, 2)
        );
        assert_eq!(j.view((0, 0), (2, 2)).clone_owned(), RealMatrix::zeros(2, 2));
        assert!((j.transpose() + &j).norm() == 0.0);
        assert!((&j * j.transpose() - RealMatrix::identity(4, 4)).norm() == 0.0);
    }

    #[test]
    fn form_squares_to_minus_identity() {
        let j = standard_symplectic_form(3).unwrap();
        assert!((&j * &j + RealMatrix::identity(6, 6)).norm() == 0.0);
    }

    #[test]
    fn zero_modes_rejected() {
        assert!(matches!(standard_symplectic_form(0), Err(Error::Dimension(_))));
    }

    #[test]
    fn embed_identity() {
        let m = ComplexMatrix::identity(1, 1);
        assert_eq!(embed_complex(&m).unwrap(), RealMatrix::identity(2, 2));
    }

    #[test]
    fn embed_imaginary_unit_is_j_transpose() {
        // multiplication by i maps (x, y) to (-y, x), which is J^T = -J
        let m = ComplexMatrix::from_element(1, 1, c(0.0, 1.0));
        let e = embed_complex(&m).unwrap();
        assert_eq!(e, RealMatrix::from_row_slice(2, 2, &[0.0, -1.0, 1.0, 0.0]));
        assert_eq!(e, standard_symplectic_form(1).unwrap().transpose());
    }

    #[test]
    fn embed_two_mode_hermitian() {
        let x = ComplexMatrix::from_row_slice(
            2,
            2,
            &[c(1.5, 0.0), c(0.0, 0.5), c(0.0, -0.5), c(1.5, 0.0)],
        );
        let e = embed_complex(&x).unwrap();
        let want = RealMatrix::from_row_slice(
            4,
            4,
            &[
                1.5, 0.0, 0.0, -0.5, //
                0.0, 1.5, 0.5, 0.0, //
                0.0, 0.5, 1.5, 0.0, //
                -0.5, 0.0, 0.0, 1.5,
            ],
        );
        assert_eq!(e, want);
    }

    #[test]
    fn embed_rejects_non_square() {
        let m = ComplexMatrix::zeros(2, 3);
        assert!(matches!(embed_complex(&m), Err(Error::Dimension(_))));
    }

    #[test]
    fn extract_identity_and_j() {
        let eye = RealMatrix::identity(2, 2);
        assert_eq!(
            extract_complex(&eye, &tol()).unwrap(),
            ComplexMatrix::identity(1, 1)
        );
        // inverse of the embed example above: J extracts to -i
        let j = standard_symplectic_form(1).unwrap();
        assert_eq!(
            extract_complex(&j, &tol()).unwrap(),
            ComplexMatrix::from_element(1, 1, c(0.0, -1.0))
        );
        let roundtrip = embed_complex(&extract_complex(&j, &tol()).unwrap()).unwrap();
        assert_eq!(roundtrip, j);
    }

    #[test]
    fn extract_rejects_non_commuting_with_residual() {
        let s = RealMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, 0.25]);
        match extract_complex(&s, &tol()) {
            Err(Error::NotJCommuting(r)) => {
                assert_abs_diff_eq!(r, 0.75 * 2f64.sqrt(), epsilon = 1e-14);
            }
            other => panic!("expected NotJCommuting, got {other:?}"),
        }
    }

    #[test]
    fn split_of_embedded_matrix_is_pure_commuting() {
        let k = ComplexMatrix::from_row_slice(
            2,
            2,
            &[c(1.0, 0.2), c(-0.3, 0.4), c(0.5, -0.1), c(2.0, 0.0)],
        );
        let t = embed_complex(&k).unwrap();
        let (tc, ta) = j_commutant_split(&t).unwrap();
        assert!((tc - &t).norm() <= 1e-15);
        assert!(ta.norm() <= 1e-15);
    }

    #[test]
    fn split_of_anticommuting_block() {
        let t = RealMatrix::from_row_slice(2, 2, &[0.7, 0.0, 0.0, -0.7]);
        let (tc, ta) = j_commutant_split(&t).unwrap();
        assert!(tc.norm() <= 1e-15);
        assert_eq!(ta, t);
    }

    #[test]
    fn split_example_values() {
        let t = RealMatrix::from_row_slice(2, 2, &[2.0, 0.0, 0.0, 1.0]);
        let (tc, ta) = j_commutant_split(&t).unwrap();
        assert_eq!(tc, RealMatrix::from_row_slice(2, 2, &[1.5, 0.0, 0.0, 1.5]));
        assert_eq!(ta, RealMatrix::from_row_slice(2, 2, &[0.5, 0.0, 0.0, -0.5]));
    }

    #[test]
    fn split_parts_commute_and_anticommute_exactly() {
        let t = RealMatrix::from_row_slice(
            4,
            4,
            &[
                0.3, 1.2, -0.7, 0.0, //
                2.0, -0.4, 0.9, 1.1, //
                0.5, 0.6, 0.8, -1.3, //
                -0.2, 0.1, 1.7, 0.4,
            ],
        );
        let j = standard_symplectic_form(2).unwrap();
        let (tc, ta) = j_commutant_split(&t).unwrap();
        assert!((&tc + &ta - &t).norm() <= 1e-14 * (1.0 + t.norm()));
        assert!((&tc * &j - &j * &tc).norm() <= 1e-14 * (1.0 + t.norm()));
        assert!((&ta * &j + &j * &ta).norm() <= 1e-14 * (1.0 + t.norm()));
    }

    #[test]
    fn split_rejects_odd_dimension() {
        let t = RealMatrix::zeros(3, 3);
        assert!(matches!(j_commutant_split(&t), Err(Error::Dimension(_))));
    }

    #[test]
    fn symplectic_predicate() {
        let j = standard_symplectic_form(1).unwrap();
        assert!(is_symplectic(&j, &tol()).unwrap());
        let squeeze = RealMatrix::from_row_slice(2, 2, &[2.0, 0.0, 0.0, 0.5]);
        assert!(is_symplectic(&squeeze, &tol()).unwrap());
        let dilation = RealMatrix::from_row_slice(2, 2, &[2.0, 0.0, 0.0, 2.0]);
        assert!(!is_symplectic(&dilation, &tol()).unwrap());
        // M^T J M = 4J, so the residual is ||3J|| = 3 sqrt(2)
        assert_abs_diff_eq!(
            symplectic_residual(&dilation).unwrap(),
            3.0 * 2f64.sqrt(),
            epsilon = 1e-14
        );
    }

    #[test]
    fn orthosymplectic_predicate() {
        let tol = tol();
        assert!(is_orthosymplectic(&RealMatrix::identity(4, 4), &tol).unwrap());
        let j = standard_symplectic_form(2).unwrap();
        assert!(is_orthosymplectic(&j, &tol).unwrap());
        let squeeze = RealMatrix::from_row_slice(2, 2, &[2.0, 0.0, 0.0, 0.5]);
        assert!(!is_orthosymplectic(&squeeze, &tol).unwrap());
    }

    #[test]
    fn psd_check_reports_min_eigenvalue() {
        let tol = tol();
        let eye = ComplexMatrix::identity(3, 3);
        let (ok, min) = hermitian_psd_check(&eye, &tol).unwrap();
        assert!(ok);
        assert_abs_diff_eq!(min, 1.0, epsilon = 1e-14);

        let ind = ComplexMatrix::from_row_slice(
            2,
            2,
            &[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-0.1, 0.0)],
        );
        let (ok, min) = hermitian_psd_check(&ind, &tol).unwrap();
        assert!(!ok);
        assert_abs_diff_eq!(min, -0.1, epsilon = 1e-14);
    }

    #[test]
    fn vacuum_uncertainty_matrix_saturates() {
        // (1/2) I + (i/2) J as a complex 2x2 matrix has eigenvalues {0, 1}.
        let tol = tol();
        let h = ComplexMatrix::from_row_slice(
            2,
            2,
            &[c(0.5, 0.0), c(0.0, 0.5), c(0.0, -0.5), c(0.5, 0.0)],
        );
        let (ok, min) = hermitian_psd_check(&h, &tol).unwrap();
        assert!(ok);
        assert_abs_diff_eq!(min, 0.0, epsilon = 1e-14);
    }

    #[test]
    fn psd_check_rejects_non_hermitian() {
        let tol = tol();
        let bad = ComplexMatrix::from_row_slice(
            2,
            2,
            &[c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)],
        );
        assert!(matches!(
            hermitian_psd_check(&bad, &tol),
            Err(Error::NotHermitian(_))
        ));
    }

    #[test]
    fn vector_embedding_roundtrip() {
        let v = ComplexVector::from_vec(vec![c(1.0, -2.0), c(0.5, 3.0)]);
        let r = embed_complex_vector(&v);
        assert_eq!(r, RealVector::from_vec(vec![1.0, 0.5, -2.0, 3.0]));
        assert_eq!(complex_from_real_vector(&r).unwrap(), v);
    }

    #[test]
    fn symmetric_power_inverts_square() {
        let tol = tol();
        let s = RealMatrix::from_row_slice(2, 2, &[2.0, 0.5, 0.5, 1.0]);
        let half = symmetric_power(&s, 0.5, &tol).unwrap();
        assert!((&half * &half - &s).norm() <= 1e-13);
        let inv_half = symmetric_power(&s, -0.5, &tol).unwrap();
        assert!((&half * &inv_half - RealMatrix::identity(2, 2)).norm() <= 1e-13);
    }
}
