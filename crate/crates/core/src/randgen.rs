//! Seeded, reproducible generators for Haar unitaries, symplectic matrices,
//! and Gaussian states targeting each class of the lattice.
//!
//! The random stream is a fixed, versioned algorithm; changing any part of it
//! is a breaking change for golden files:
//!
//! - generator: ChaCha20 (counter-based stream cipher), keyed with
//!   `SeedableRng::seed_from_u64(seed)`;
//! - uniforms on `[0, 1)`: top 53 bits of `next_u64`, i.e.
//!   `(x >> 11) * 2^{-53}`;
//! - standard normals: Box-Muller on two fresh uniforms (the first shifted
//!   into `(0, 1]`), no caching of the second value;
//! - complex standard normals: `(N + iN) / sqrt(2)` with the real part drawn
//!   first;
//! - matrices are filled column by column, rows inner.

use num_complex::Complex64;
use rand_chacha::ChaCha20Rng;
use rand_core::{RngCore, SeedableRng};

use crate::error::{Error, Result};
use crate::state::GaussianState;
use crate::symplectic::{embed_complex, ComplexMatrix, ComplexVector, RealMatrix};

/// Target class of a generated state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StateClass {
    /// Any valid Gaussian state (random thermal spectrum, random symplectic).
    Gs,
    /// Classical: `I/2 + 2 J^T Sigma J` with random PSD `Sigma`.
    Cgs,
    /// Passive-unitary normalizable: `embed(X)` with random Hermitian
    /// `X >= I/2`.
    Pun,
    /// Circularly symmetric: `I/2 + 2 (diag(N) (+) diag(N))`.
    Csgs,
    /// Pure: all symplectic eigenvalues exactly 1/2.
    Pure,
}

impl StateClass {
    pub const ALL: [StateClass; 5] = [
        StateClass::Gs,
        StateClass::Cgs,
        StateClass::Pun,
        StateClass::Csgs,
        StateClass::Pure,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            StateClass::Gs => "gs",
            StateClass::Cgs => "cgs",
            StateClass::Pun => "pun",
            StateClass::Csgs => "csgs",
            StateClass::Pure => "pure",
        }
    }

    pub fn parse(name: &str) -> Option<StateClass> {
        match name.to_ascii_lowercase().as_str() {
            "gs" => Some(StateClass::Gs),
            "cgs" => Some(StateClass::Cgs),
            "pun" => Some(StateClass::Pun),
            "csgs" => Some(StateClass::Csgs),
            "pure" => Some(StateClass::Pure),
            _ => None,
        }
    }
}

/// Everything a generator call depends on. Equal specs give bit-identical
/// output.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenSpec {
    pub seed: u64,
    pub n: usize,
    pub class: StateClass,
    /// Bounds the thermal spectrum (`d <= scale`) and the singular-value
    /// spread of random symplectics.
    pub scale: f64,
}

impl GenSpec {
    pub fn new(seed: u64, n: usize, class: StateClass, scale: f64) -> Result<GenSpec> {
        if n == 0 {
            return Err(Error::Dimension("mode count must be at least 1".into()));
        }
        if !(scale >= 1.0) || !scale.is_finite() {
            return Err(Error::Dimension(format!(
                "scale must be finite and >= 1, got {scale}"
            )));
        }
        Ok(GenSpec { seed, n, class, scale })
    }
}

/// The documented stream: ChaCha20 + 53-bit uniforms + Box-Muller.
pub struct Stream(ChaCha20Rng);

impl Stream {
    pub fn new(seed: u64) -> Stream {
        Stream(ChaCha20Rng::seed_from_u64(seed))
    }

    /// Uniform on `[0, 1)`.
    pub fn uniform(&mut self) -> f64 {
        (self.0.next_u64() >> 11) as f64 * 2f64.powi(-53)
    }

    pub fn uniform_in(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.uniform()
    }

    /// Standard normal via Box-Muller; two uniforms consumed per call.
    pub fn normal(&mut self) -> f64 {
        let u1 = ((self.0.next_u64() >> 11) + 1) as f64 * 2f64.powi(-53);
        let u2 = self.uniform();
        (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
    }

    /// Standard complex normal `(N + iN) / sqrt(2)`.
    pub fn complex_normal(&mut self) -> Complex64 {
        let re = self.normal();
        let im = self.normal();
        Complex64::new(re, im) / Complex64::new(2f64.sqrt(), 0.0)
    }

    fn complex_matrix(&mut self, n: usize) -> ComplexMatrix {
        let mut m = ComplexMatrix::zeros(n, n);
        for c in 0..n {
            for r in 0..n {
                m[(r, c)] = self.complex_normal();
            }
        }
        m
    }

    fn real_matrix(&mut self, rows: usize, cols: usize) -> RealMatrix {
        let mut m = RealMatrix::zeros(rows, cols);
        for c in 0..cols {
            for r in 0..rows {
                m[(r, c)] = self.normal();
            }
        }
        m
    }
}

/// Haar-distributed unitary: complex Ginibre followed by QR, with the phases
/// of the `R` diagonal folded into `Q`.
pub fn random_unitary(spec: &GenSpec) -> ComplexMatrix {
    let mut stream = Stream::new(spec.seed);
    unitary_from(&mut stream, spec.n)
}

fn unitary_from(stream: &mut Stream, n: usize) -> ComplexMatrix {
    let g = stream.complex_matrix(n);
    let qr = g.qr();
    let q = qr.q();
    let r = qr.r();
    let mut u = q;
    for c in 0..n {
        let d = r[(c, c)];
        let phase = if d.norm() > 0.0 {
            d / Complex64::new(d.norm(), 0.0)
        } else {
            Complex64::new(1.0, 0.0)
        };
        for row in 0..n {
            u[(row, c)] *= phase;
        }
    }
    u
}

/// Euler assembly `embed(U1) (diag(e^r) (+) diag(e^{-r})) embed(U2)`; the
/// output is symplectic for any unitaries `U1`, `U2` and real `r`.
pub fn assemble_symplectic(
    u1: &ComplexMatrix,
    squeeze: &[f64],
    u2: &ComplexMatrix,
) -> Result<RealMatrix> {
    let n = squeeze.len();
    if u1.nrows() != n || u1.ncols() != n || u2.nrows() != n || u2.ncols() != n {
        return Err(Error::Dimension(
            "Euler factors must share the mode count".into(),
        ));
    }
    let mut middle = RealMatrix::zeros(2 * n, 2 * n);
    for (k, &r) in squeeze.iter().enumerate() {
        middle[(k, k)] = r.exp();
        middle[(n + k, n + k)] = (-r).exp();
    }
    Ok(embed_complex(u1)? * middle * embed_complex(u2)?)
}

/// Random symplectic with singular-value spread bounded by `scale`
/// (`|r_j| <= ln(scale) / 2` in the Euler middle factor).
pub fn random_symplectic(spec: &GenSpec) -> RealMatrix {
    let mut stream = Stream::new(spec.seed);
    symplectic_from(&mut stream, spec.n, spec.scale)
}

fn symplectic_from(stream: &mut Stream, n: usize, scale: f64) -> RealMatrix {
    let u1 = unitary_from(stream, n);
    let half_log = 0.5 * scale.ln();
    let squeeze: Vec<f64> = (0..n)
        .map(|_| stream.uniform_in(-half_log, half_log))
        .collect();
    let u2 = unitary_from(stream, n);
    assemble_symplectic(&u1, &squeeze, &u2).expect("shapes match by construction")
}

/// Random PSD matrix `G^T G` rescaled so its largest eigenvalue is `bound`.
pub fn random_psd(stream: &mut Stream, dim: usize, bound: f64) -> RealMatrix {
    let g = stream.real_matrix(dim, dim);
    let psd = g.transpose() * &g;
    let eig = nalgebra::SymmetricEigen::new(psd.clone());
    let max = eig.eigenvalues.max();
    if max > 0.0 {
        psd * (bound / max)
    } else {
        psd
    }
}

/// Random symmetric positive definite matrix with spectrum in
/// `[1, condition]`, rotated by a Haar orthosymplectic-free orthogonal factor
/// (the real embedding of nothing in particular: plain QR of a Ginibre).
pub fn random_pd_matrix(seed: u64, dim: usize, condition: f64) -> RealMatrix {
    let mut stream = Stream::new(seed);
    let g = stream.real_matrix(dim, dim);
    let qr = g.qr();
    let q = qr.q();
    let r = qr.r();
    let mut orth = q;
    for c in 0..dim {
        if r[(c, c)] < 0.0 {
            for row in 0..dim {
                orth[(row, c)] = -orth[(row, c)];
            }
        }
    }
    // log-uniform spectrum pinned to the requested condition number
    let mut values = vec![0.0; dim];
    values[0] = 1.0;
    if dim > 1 {
        values[dim - 1] = condition;
        for v in values.iter_mut().take(dim - 1).skip(1) {
            *v = condition.powf(stream.uniform());
        }
    }
    let mut scaled = orth.clone();
    for c in 0..dim {
        for row in 0..dim {
            scaled[(row, c)] *= values[c];
        }
    }
    scaled * orth.transpose()
}

/// Random state in the requested class. Every output passes its class
/// predicate by construction.
pub fn random_state(spec: &GenSpec) -> GaussianState {
    let mut stream = Stream::new(spec.seed);
    let n = spec.n;
    match spec.class {
        StateClass::Gs | StateClass::Pure => {
            let l = symplectic_from(&mut stream, n, spec.scale);
            let d: Vec<f64> = (0..n)
                .map(|_| match spec.class {
                    StateClass::Pure => 0.5,
                    _ => stream.uniform_in(0.5, spec.scale.max(0.5)),
                })
                .collect();
            let mut normal_form = RealMatrix::zeros(2 * n, 2 * n);
            for (k, &dk) in d.iter().enumerate() {
                normal_form[(k, k)] = dk;
                normal_form[(n + k, n + k)] = dk;
            }
            let inv = l
                .clone()
                .lu()
                .solve(&RealMatrix::identity(2 * n, 2 * n))
                .expect("symplectic matrices are invertible");
            let cov = inv.transpose() * normal_form * inv;
            let cov = (&cov + cov.transpose()) * 0.5;
            let mean = ComplexVector::from_fn(n, |_, _| stream.complex_normal());
            GaussianState::new(mean, cov).expect("shapes match by construction")
        }
        StateClass::Cgs => {
            let sigma = random_psd(&mut stream, 2 * n, spec.scale);
            let j = crate::symplectic::standard_symplectic_form(n).expect("n >= 1");
            let cov = RealMatrix::identity(2 * n, 2 * n) * 0.5
                + (j.transpose() * sigma * &j) * 2.0;
            GaussianState::new(ComplexVector::zeros(n), cov).expect("shapes match")
        }
        StateClass::Pun => {
            let v = unitary_from(&mut stream, n);
            let values: Vec<f64> = (0..n)
                .map(|_| stream.uniform_in(0.5, spec.scale.max(0.5)))
                .collect();
            let mut x = ComplexMatrix::zeros(n, n);
            for (k, &val) in values.iter().enumerate() {
                x[(k, k)] = Complex64::new(val, 0.0);
            }
            let herm = &v * x * v.adjoint();
            let herm = (&herm + herm.adjoint()) * Complex64::new(0.5, 0.0);
            let cov = embed_complex(&herm).expect("square by construction");
            GaussianState::new(ComplexVector::zeros(n), cov).expect("shapes match")
        }
        StateClass::Csgs => {
            let mut cov = RealMatrix::identity(2 * n, 2 * n) * 0.5;
            for k in 0..n {
                let w = stream.uniform_in(0.0, spec.scale);
                cov[(k, k)] += 2.0 * w;
                cov[(n + k, n + k)] += 2.0 * w;
            }
            GaussianState::new(ComplexVector::zeros(n), cov).expect("shapes match")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify;
    use crate::symplectic::{
        is_symplectic, orthogonality_residual, symplectic_residual, unitarity_residual,
    };
    use crate::tol::Tolerances;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    fn spec(seed: u64, n: usize, class: StateClass) -> GenSpec {
        GenSpec::new(seed, n, class, 4.0).unwrap()
    }

    #[test]
    fn identical_specs_are_bit_identical() {
        let s = spec(42, 3, StateClass::Gs);
        assert_eq!(random_unitary(&s), random_unitary(&s));
        assert_eq!(random_symplectic(&s), random_symplectic(&s));
        let a = random_state(&s);
        let b = random_state(&s);
        assert_eq!(a.cov(), b.cov());
        assert_eq!(a.mean(), b.mean());
    }

    #[test]
    fn unitaries_are_unitary() {
        for seed in 0..100 {
            let u = random_unitary(&spec(seed, 3, StateClass::Gs));
            assert!(unitarity_residual(&u) <= 1e-12, "seed {seed}");
        }
    }

    #[test]
    fn single_mode_unitary_is_a_phase() {
        let u = random_unitary(&spec(7, 1, StateClass::Gs));
        assert!((u[(0, 0)].norm() - 1.0).abs() <= 1e-14);
    }

    #[test]
    fn symplectics_pass_the_predicate() {
        let tol = tol();
        for seed in 0..100 {
            let l = random_symplectic(&spec(seed, 2, StateClass::Gs));
            assert!(symplectic_residual(&l).unwrap() <= 1e-10, "seed {seed}");
            assert!(is_symplectic(&l, &tol).unwrap());
            assert!((l.determinant() - 1.0).abs() <= 1e-10, "seed {seed}");
        }
    }

    #[test]
    fn identity_parts_assemble_to_identity() {
        let eye = ComplexMatrix::identity(2, 2);
        let l = assemble_symplectic(&eye, &[0.0, 0.0], &eye).unwrap();
        assert!((l - RealMatrix::identity(4, 4)).norm() <= 1e-15);
    }

    #[test]
    fn generated_states_hit_their_class() {
        let tol = tol();
        for class in StateClass::ALL {
            for seed in 0..100 {
                let state = random_state(&spec(seed, 2, class));
                let report = state.validate(&tol);
                assert!(report.is_valid(), "{} seed {seed}", class.name());
                match class {
                    StateClass::Cgs => {
                        assert!(classify::is_classical(&state, &tol).unwrap())
                    }
                    StateClass::Pun => assert!(classify::is_pun(&state, &tol).unwrap()),
                    StateClass::Csgs => assert!(classify::is_csgs(&state, &tol).unwrap()),
                    StateClass::Pure => {
                        for d in &report.sympl_eigs {
                            assert!((d - 0.5).abs() <= 1e-9);
                        }
                    }
                    StateClass::Gs => {}
                }
            }
        }
    }

    #[test]
    fn strict_subclass_witnesses_appear() {
        let tol = tol();
        let mut cgs_not_pun = false;
        let mut pun_not_csgs = false;
        let mut gs_not_cgs = false;
        for seed in 0..50 {
            let cgs = random_state(&spec(seed, 2, StateClass::Cgs));
            cgs_not_pun |= !classify::is_pun(&cgs, &tol).unwrap();
            let pun = random_state(&spec(seed, 2, StateClass::Pun));
            pun_not_csgs |= !classify::is_csgs(&pun, &tol).unwrap();
            let gs = random_state(&spec(seed, 2, StateClass::Gs));
            gs_not_cgs |= !classify::is_classical(&gs, &tol).unwrap();
        }
        assert!(cgs_not_pun, "no CGS-not-PUN witness in 50 seeds");
        assert!(pun_not_csgs, "no PUN-not-CSGS witness in 50 seeds");
        assert!(gs_not_cgs, "no GS-not-CGS witness in 50 seeds");
    }

    #[test]
    fn forced_squeezing_leaves_the_classical_set() {
        // a pure state squeezed harder than a factor 2 in some direction
        // must dip below the vacuum variance
        let eye = ComplexMatrix::identity(1, 1);
        let l = assemble_symplectic(&eye, &[0.5 * 2f64.ln()], &eye).unwrap();
        let state = GaussianState::vacuum(1)
            .unwrap()
            .apply_symplectic(&l, &tol())
            .unwrap();
        assert!(!classify::is_classical(&state, &tol()).unwrap());
    }

    #[test]
    fn pd_matrices_have_the_requested_condition() {
        for seed in [1u64, 9, 77] {
            let m = random_pd_matrix(seed, 6, 1e4);
            let eig = nalgebra::SymmetricEigen::new(m.clone());
            let max = eig.eigenvalues.max();
            let min = eig.eigenvalues.min();
            assert!(min > 0.0);
            assert!((max / min - 1e4).abs() / 1e4 <= 1e-10, "seed {seed}");
            assert!(orthogonality_residual(&(m.clone() * m.try_inverse().unwrap())) <= 1e-8);
        }
    }
}
