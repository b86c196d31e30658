/// Numeric policy threaded through every predicate and decomposition.
///
/// All thresholds are applied relative to matrix scale, as
/// `tol * (1 + ||M||_F)` (or `1 + ||M||_F^2` where the residual itself is
/// quadratic in the input). Double-precision symmetric eigensolvers are good
/// to about 1e-13; the defaults keep two orders of margin on top of that.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Accepted symmetry / Hermiticity deviation before an input is rejected.
    pub sym_tol: f64,
    /// Slack below zero allowed for "positive semidefinite".
    pub psd_tol: f64,
    /// Accepted residual for commutation and group-membership tests.
    pub commutator_tol: f64,
    /// Accepted reconstruction residual for decompositions and roundtrips.
    pub residual_tol: f64,
    /// Width of the exact-boundary band (e.g. symplectic eigenvalue == 1/2).
    pub eig_floor: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            sym_tol: 1e-10,
            psd_tol: 1e-10,
            commutator_tol: 1e-9,
            residual_tol: 1e-9,
            eig_floor: 1e-12,
        }
    }
}

impl Tolerances {
    /// Validity of the fields themselves (finite, nonnegative).
    pub fn is_valid(&self) -> bool {
        [
            self.sym_tol,
            self.psd_tol,
            self.commutator_tol,
            self.residual_tol,
            self.eig_floor,
        ]
        .iter()
        .all(|t| t.is_finite() && *t >= 0.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_valid() {
        assert!(Tolerances::default().is_valid());
    }

    #[test]
    fn negative_tolerance_is_invalid() {
        let t = Tolerances { psd_tol: -1.0, ..Default::default() };
        assert!(!t.is_valid());
    }
}
