//! Fixed-size complex algebra: 2x2 matrices acting on two-component spinors.

use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;

use crate::field::Spinor;

pub type C64 = Complex64;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

/// `e^{i t}`.
pub fn cis(t: f64) -> C64 {
    C64::new(t.cos(), t.sin())
}

/// Row-major 2x2 complex matrix.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Mat2 {
    pub m: [[C64; 2]; 2],
}

impl Mat2 {
    pub const fn new(a: C64, b: C64, c: C64, d: C64) -> Self {
        Mat2 { m: [[a, b], [c, d]] }
    }

    pub const fn identity() -> Self {
        Mat2::new(ONE, ZERO, ZERO, ONE)
    }

    pub const fn zero() -> Self {
        Mat2::new(ZERO, ZERO, ZERO, ZERO)
    }

    pub fn diag(a: C64, d: C64) -> Self {
        Mat2::new(a, ZERO, ZERO, d)
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> C64 {
        self.m[row][col]
    }

    pub fn det(&self) -> C64 {
        self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0]
    }

    pub fn trace(&self) -> C64 {
        self.m[0][0] + self.m[1][1]
    }

    pub fn adjoint(&self) -> Self {
        Mat2::new(
            self.m[0][0].conj(),
            self.m[1][0].conj(),
            self.m[0][1].conj(),
            self.m[1][1].conj(),
        )
    }

    pub fn scale(&self, s: C64) -> Self {
        Mat2::new(self.m[0][0] * s, self.m[0][1] * s, self.m[1][0] * s, self.m[1][1] * s)
    }

    pub fn apply(&self, v: Spinor) -> Spinor {
        Spinor::new(
            self.m[0][0] * v.l + self.m[0][1] * v.r,
            self.m[1][0] * v.l + self.m[1][1] * v.r,
        )
    }

    /// Entrywise absolute deviation `|self - other|`.
    pub fn abs_diff(&self, other: &Mat2) -> [[f64; 2]; 2] {
        let mut out = [[0.0; 2]; 2];
        for (r, row) in out.iter_mut().enumerate() {
            for (c, v) in row.iter_mut().enumerate() {
                *v = (self.m[r][c] - other.m[r][c]).norm();
            }
        }
        out
    }

    /// Max-entry norm of `self - other`.
    pub fn max_abs_diff(&self, other: &Mat2) -> f64 {
        self.abs_diff(other)
            .iter()
            .flatten()
            .fold(0.0_f64, |acc, &v| acc.max(v))
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.max_abs_diff(&Mat2::zero())
    }

    /// `max |(U U^dagger - I)_{ij}|`.
    pub fn unitarity_defect(&self) -> f64 {
        (*self * self.adjoint()).max_abs_diff(&Mat2::identity())
    }

    /// Both eigenvalues from the characteristic quadratic, `+` branch of the
    /// principal square root first.
    pub fn eigenvalues(&self) -> (C64, C64) {
        let tr = self.trace();
        let disc = (tr * tr - 4.0 * self.det()).sqrt();
        ((tr + disc) * 0.5, (tr - disc) * 0.5)
    }

    /// Unit eigenvector for a known eigenvalue. Picks whichever row of
    /// `self - lambda I` gives the better-conditioned null vector.
    pub fn eigenvector(&self, lambda: C64) -> Spinor {
        let [[a, b], [c, d]] = self.m;
        let from_top = Spinor::new(b, lambda - a);
        let from_bottom = Spinor::new(lambda - d, c);
        let v = if from_top.norm_sqr() >= from_bottom.norm_sqr() {
            from_top
        } else {
            from_bottom
        };
        let n = v.norm_sqr().sqrt();
        if n == 0.0 {
            // Scalar matrix: every vector is an eigenvector.
            Spinor::new(ONE, ZERO)
        } else {
            v.scale(C64::new(1.0 / n, 0.0))
        }
    }
}

impl Mul for Mat2 {
    type Output = Mat2;

    fn mul(self, rhs: Mat2) -> Mat2 {
        let a = &self.m;
        let b = &rhs.m;
        Mat2::new(
            a[0][0] * b[0][0] + a[0][1] * b[1][0],
            a[0][0] * b[0][1] + a[0][1] * b[1][1],
            a[1][0] * b[0][0] + a[1][1] * b[1][0],
            a[1][0] * b[0][1] + a[1][1] * b[1][1],
        )
    }
}

impl Mul<Spinor> for Mat2 {
    type Output = Spinor;

    fn mul(self, rhs: Spinor) -> Spinor {
        self.apply(rhs)
    }
}

impl Add for Mat2 {
    type Output = Mat2;

    fn add(self, rhs: Mat2) -> Mat2 {
        Mat2::new(
            self.m[0][0] + rhs.m[0][0],
            self.m[0][1] + rhs.m[0][1],
            self.m[1][0] + rhs.m[1][0],
            self.m[1][1] + rhs.m[1][1],
        )
    }
}

impl Sub for Mat2 {
    type Output = Mat2;

    fn sub(self, rhs: Mat2) -> Mat2 {
        Mat2::new(
            self.m[0][0] - rhs.m[0][0],
            self.m[0][1] - rhs.m[0][1],
            self.m[1][0] - rhs.m[1][0],
            self.m[1][1] - rhs.m[1][1],
        )
    }
}
