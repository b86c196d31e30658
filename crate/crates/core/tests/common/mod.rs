//! Shared helpers for the integration suites: Gauss-Hermite quadrature
//! (Golub-Welsch) and expectation values against 2D normal distributions.

use gstate_core::{RealMatrix, RealVector};
use num_complex::Complex64;

/// Nodes and weights of m-point Gauss-Hermite quadrature
/// (`integral f(t) e^{-t^2} dt ~= sum w_k f(t_k)`), from the symmetric
/// tridiagonal Jacobi matrix.
pub fn gauss_hermite(m: usize) -> (Vec<f64>, Vec<f64>) {
    let mut jacobi = RealMatrix::zeros(m, m);
    for k in 1..m {
        let off = (k as f64 / 2.0).sqrt();
        jacobi[(k - 1, k)] = off;
        jacobi[(k, k - 1)] = off;
    }
    let eig = nalgebra::SymmetricEigen::new(jacobi);
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let nodes: Vec<f64> = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let weights: Vec<f64> = order
        .iter()
        .map(|&k| std::f64::consts::PI.sqrt() * eig.eigenvectors[(0, k)].powi(2))
        .collect();
    (nodes, weights)
}

/// `E[f(u)]` for `u ~ N(mu, sigma)` on `R^2`, by whitening and a tensor
/// Gauss-Hermite rule of the given order.
pub fn normal_expectation<F>(
    mu: &RealVector,
    sigma: &RealMatrix,
    order: usize,
    mut f: F,
) -> Complex64
where
    F: FnMut(&RealVector) -> Complex64,
{
    assert_eq!(mu.len(), 2);
    assert_eq!(sigma.shape(), (2, 2));
    let eig = nalgebra::SymmetricEigen::new(sigma.clone());
    let (nodes, weights) = gauss_hermite(order);

    let mut acc = Complex64::new(0.0, 0.0);
    for (i, &ti) in nodes.iter().enumerate() {
        for (j, &tj) in nodes.iter().enumerate() {
            let mut point = mu.clone();
            for row in 0..2 {
                point[row] += eig.eigenvectors[(row, 0)] * (2.0 * eig.eigenvalues[0]).sqrt() * ti
                    + eig.eigenvectors[(row, 1)] * (2.0 * eig.eigenvalues[1]).sqrt() * tj;
            }
            acc += f(&point) * (weights[i] * weights[j]);
        }
    }
    acc / Complex64::new(std::f64::consts::PI, 0.0)
}

#[allow(dead_code)]
pub fn assert_close(got: Complex64, want: Complex64, eps: f64, label: &str) {
    assert!(
        (got - want).norm() <= eps,
        "{label}: got {got}, want {want}, |diff| = {:.3e} > {eps:.1e}",
        (got - want).norm()
    );
}
