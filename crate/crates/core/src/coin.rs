//! Coin matrices and their shift decomposition.
//!
//! The walk operator acts as `(U Psi)(x) = P Psi(x+1) + Q Psi(x-1)` where `P`
//! keeps the top row of the coin and `Q` the bottom row.

use std::f64::consts::FRAC_1_SQRT_2;

use crate::error::{Error, Result};
use crate::linalg::{Mat2, C64, ONE, ZERO};

/// Entrywise tolerance on `C C^dagger - I`.
pub const UNITARY_TOL: f64 = 1e-12;

/// A validated 2x2 unitary coin with its determinants cached.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CoinMatrix {
    matrix: Mat2,
    delta: C64,
    delta_tilde: C64,
}

/// `C = P + Q` together with `Delta = c11 c22 - c12 c21` and
/// `Delta~ = c11 c22 + c12 c21`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CoinDecomposition {
    pub p: Mat2,
    pub q: Mat2,
    pub delta: C64,
    pub delta_tilde: C64,
}

/// Accept four entries as a coin iff `C C^dagger = I` entrywise within [`UNITARY_TOL`].
pub fn validate_coin(c11: C64, c12: C64, c21: C64, c22: C64) -> Result<CoinMatrix> {
    CoinMatrix::from_matrix(Mat2::new(c11, c12, c21, c22))
}

pub fn decompose(coin: &CoinMatrix) -> CoinDecomposition {
    let [[c11, c12], [c21, c22]] = coin.matrix.m;
    CoinDecomposition {
        p: Mat2::new(c11, c12, ZERO, ZERO),
        q: Mat2::new(ZERO, ZERO, c21, c22),
        delta: coin.delta,
        delta_tilde: coin.delta_tilde,
    }
}

impl CoinMatrix {
    pub fn from_matrix(matrix: Mat2) -> Result<Self> {
        let entries_finite = matrix.m.iter().flatten().all(|c| c.is_finite());
        let deviation = (matrix * matrix.adjoint()).abs_diff(&Mat2::identity());
        let max_deviation = deviation.iter().flatten().fold(0.0_f64, |a, &b| a.max(b));
        if !entries_finite || !(max_deviation <= UNITARY_TOL) {
            return Err(Error::NotUnitary {
                max_deviation,
                deviation,
            });
        }
        let [[c11, c12], [c21, c22]] = matrix.m;
        Ok(CoinMatrix {
            matrix,
            delta: c11 * c22 - c12 * c21,
            delta_tilde: c11 * c22 + c12 * c21,
        })
    }

    pub fn hadamard() -> Self {
        let s = C64::new(FRAC_1_SQRT_2, 0.0);
        Self::from_matrix(Mat2::new(s, s, s, -s)).expect("Hadamard coin is unitary")
    }

    pub fn identity() -> Self {
        Self::from_matrix(Mat2::new(ONE, ZERO, ZERO, ONE)).expect("identity is unitary")
    }

    /// The real orthogonal coin `[[cos z, sin z], [sin z, -cos z]]`; `z = pi/4`
    /// is the Hadamard coin.
    pub fn rotation(zeta: f64) -> Self {
        let (s, c) = zeta.sin_cos();
        let (c, s) = (C64::new(c, 0.0), C64::new(s, 0.0));
        Self::from_matrix(Mat2::new(c, s, s, -c)).expect("rotation coin is unitary")
    }

    pub fn matrix(&self) -> &Mat2 {
        &self.matrix
    }

    pub fn c11(&self) -> C64 {
        self.matrix.m[0][0]
    }

    pub fn c12(&self) -> C64 {
        self.matrix.m[0][1]
    }

    pub fn c21(&self) -> C64 {
        self.matrix.m[1][0]
    }

    pub fn c22(&self) -> C64 {
        self.matrix.m[1][1]
    }

    pub fn delta(&self) -> C64 {
        self.delta
    }

    pub fn delta_tilde(&self) -> C64 {
        self.delta_tilde
    }

    pub fn decompose(&self) -> CoinDecomposition {
        decompose(self)
    }

    /// True when every entry matches the Hadamard coin to within `tol`.
    pub fn is_hadamard(&self, tol: f64) -> bool {
        self.matrix.max_abs_diff(Self::hadamard().matrix()) <= tol
    }
}

#[cfg(test)]
mod tests {
    use std::f64::consts::PI;

    use proptest::prelude::*;

    use super::*;
    use crate::field::Spinor;

    fn re(x: f64) -> C64 {
        C64::new(x, 0.0)
    }

    #[test]
    fn identity_coin() {
        let c = validate_coin(ONE, ZERO, ZERO, ONE).unwrap();
        assert_eq!(c.delta(), ONE);
        assert_eq!(c.delta_tilde(), ONE);
        let d = c.decompose();
        assert_eq!(d.p, Mat2::new(ONE, ZERO, ZERO, ZERO));
        assert_eq!(d.q, Mat2::new(ZERO, ZERO, ZERO, ONE));
    }

    #[test]
    fn hadamard_coin() {
        let s = re(FRAC_1_SQRT_2);
        let c = validate_coin(s, s, s, -s).unwrap();
        assert!((c.delta() + 1.0).norm() < 1e-15);
        assert!(c.delta_tilde().norm() < 1e-15);
        let d = decompose(&c);
        assert_eq!(d.p, Mat2::new(s, s, ZERO, ZERO));
        assert_eq!(d.q, Mat2::new(ZERO, ZERO, s, -s));
        assert!(c.is_hadamard(0.0));
    }

    #[test]
    fn non_unitary_rejected() {
        let err = validate_coin(ONE, re(0.1), ZERO, ONE).unwrap_err();
        match err {
            Error::NotUnitary {
                max_deviation,
                deviation,
            } => {
                assert!(max_deviation >= 0.1 - 1e-15);
                assert!((deviation[0][1] - 0.1).abs() < 1e-15);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(validate_coin(re(f64::NAN), ZERO, ZERO, ONE).is_err());
    }

    #[test]
    fn rotation_pi_over_3_determinants() {
        // Symbolic expansion: Delta = -c^2 - s^2 = -1, Delta~ = -c^2 + s^2 = -cos(2 zeta).
        let c = CoinMatrix::rotation(PI / 3.0);
        assert!((c.delta() - re(-1.0)).norm() < 1e-15);
        assert!((c.delta_tilde() - re(0.5)).norm() < 1e-15);
        assert!(
            (CoinMatrix::rotation(PI / 4.0)
                .matrix()
                .max_abs_diff(CoinMatrix::hadamard().matrix()))
                < 1e-15
        );
    }

    fn arb_unit_complex() -> impl Strategy<Value = C64> {
        (0.0..2.0 * PI).prop_map(|t| C64::new(t.cos(), t.sin()))
    }

    /// Random U(2) element `e^{i a} [[u, v], [-conj v e^{i b}, conj u e^{i b}]]`.
    fn arb_coin() -> impl Strategy<Value = CoinMatrix> {
        (
            0.0..PI / 2.0,
            arb_unit_complex(),
            arb_unit_complex(),
            arb_unit_complex(),
            arb_unit_complex(),
        )
            .prop_map(|(t, pu, pv, g, b)| {
                let u = pu * t.cos();
                let v = pv * t.sin();
                let m = Mat2::new(u, v, -v.conj() * b, u.conj() * b).scale(g);
                CoinMatrix::from_matrix(m).unwrap()
            })
    }

    fn arb_spinor() -> impl Strategy<Value = Spinor> {
        (-5.0..5.0, -5.0..5.0, -5.0..5.0, -5.0..5.0)
            .prop_map(|(a, b, c, d)| Spinor::new(C64::new(a, b), C64::new(c, d)))
    }

    proptest! {
        #[test]
        fn accepted_coins_preserve_norm(coin in arb_coin(), vs in prop::collection::vec(arb_spinor(), 100)) {
            prop_assert!((coin.delta().norm() - 1.0).abs() < 1e-12);
            for v in vs {
                let w = coin.matrix().apply(v);
                prop_assert!((w.norm() - v.norm()).abs() <= 1e-10);
            }
        }

        #[test]
        fn decomposition_round_trips(coin in arb_coin()) {
            let d = coin.decompose();
            prop_assert_eq!(d.p + d.q, *coin.matrix());
            prop_assert_eq!(d.p.m[1], [ZERO, ZERO]);
            prop_assert_eq!(d.q.m[0], [ZERO, ZERO]);
            let [[c11, c12], [c21, c22]] = coin.matrix().m;
            prop_assert_eq!(d.delta, c11 * c22 - c12 * c21);
            prop_assert_eq!(d.delta_tilde, c11 * c22 + c12 * c21);
        }
    }
}
