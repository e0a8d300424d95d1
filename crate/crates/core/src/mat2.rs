//! Small fixed-size complex linear algebra shared by Möbius maps and local
//! operators.

use num_complex::Complex64;
use std::ops::{Add, Mul};

pub type C64 = Complex64;

pub(crate) const ZERO: C64 = C64::new(0.0, 0.0);
pub(crate) const ONE: C64 = C64::new(1.0, 0.0);

/// A 2×2 complex matrix stored row-major: `m[row][col]`.
#[derive(Debug, Clone, Copy, PartialEq)]
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

    pub fn diag(x: C64, y: C64) -> Self {
        Mat2::new(x, ZERO, ZERO, y)
    }

    /// Matrix whose columns are `u` and `v`.
    pub fn from_columns(u: [C64; 2], v: [C64; 2]) -> Self {
        Mat2::new(u[0], v[0], u[1], v[1])
    }

    pub fn det(&self) -> C64 {
        self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0]
    }

    pub fn trace(&self) -> C64 {
        self.m[0][0] + self.m[1][1]
    }

    pub fn adjugate(&self) -> Self {
        Mat2::new(self.m[1][1], -self.m[0][1], -self.m[1][0], self.m[0][0])
    }

    /// Inverse, or `None` when `|det| <= 1e-300`.
    pub fn inverse(&self) -> Option<Self> {
        let det = self.det();
        if det.norm() <= 1e-300 {
            return None;
        }
        Some(self.adjugate().scale(det.inv()))
    }

    pub fn scale(&self, s: C64) -> Self {
        Mat2::new(
            self.m[0][0] * s,
            self.m[0][1] * s,
            self.m[1][0] * s,
            self.m[1][1] * s,
        )
    }

    pub fn adjoint(&self) -> Self {
        Mat2::new(
            self.m[0][0].conj(),
            self.m[1][0].conj(),
            self.m[0][1].conj(),
            self.m[1][1].conj(),
        )
    }

    pub fn transpose(&self) -> Self {
        Mat2::new(self.m[0][0], self.m[1][0], self.m[0][1], self.m[1][1])
    }

    pub fn apply(&self, v: [C64; 2]) -> [C64; 2] {
        [
            self.m[0][0] * v[0] + self.m[0][1] * v[1],
            self.m[1][0] * v[0] + self.m[1][1] * v[1],
        ]
    }

    /// Rescale to determinant one with the principal square root.
    pub fn normalized_det(&self) -> Option<Self> {
        let det = self.det();
        if det.norm() <= 1e-300 {
            return None;
        }
        Some(self.scale(det.sqrt().inv()))
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Mat2) -> f64 {
        let mut worst: f64 = 0.0;
        for r in 0..2 {
            for c in 0..2 {
                worst = worst.max((self.m[r][c] - other.m[r][c]).norm());
            }
        }
        worst
    }

    pub fn frobenius(&self) -> f64 {
        self.m
            .iter()
            .flatten()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Frobenius norm of the traceless part `self - (tr/2) I`.
    pub fn traceless_norm(&self) -> f64 {
        let half = self.trace() * 0.5;
        let t = Mat2::new(
            self.m[0][0] - half,
            self.m[0][1],
            self.m[1][0],
            self.m[1][1] - half,
        );
        t.frobenius()
    }

    /// Eigenvalues of a Hermitian 2×2 matrix, largest first.
    pub fn hermitian_eigenvalues(&self) -> (f64, f64) {
        let a = self.m[0][0].re;
        let d = self.m[1][1].re;
        let off = self.m[0][1].norm();
        let mean = 0.5 * (a + d);
        let half_gap = (0.25 * (a - d) * (a - d) + off * off).sqrt();
        (mean + half_gap, mean - half_gap)
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

impl Add for Mat2 {
    type Output = Mat2;

    fn add(self, rhs: Mat2) -> Mat2 {
        let (a, b) = (&self.m, &rhs.m);
        Mat2::new(a[0][0] + b[0][0], a[0][1] + b[0][1], a[1][0] + b[1][0], a[1][1] + b[1][1])
    }
}

/// The 2×2 bracket `u_0 v_1 - u_1 v_0`.
pub(crate) fn bracket(u: [C64; 2], v: [C64; 2]) -> C64 {
    u[0] * v[1] - u[1] * v[0]
}

pub(crate) fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // exact: acc * (n - i) is divisible by (i + 1)
        acc = acc * (n - i) as u128 / (i as u128 + 1);
    }
    acc
}

pub(crate) fn sqrt_binomial(n: usize, k: usize) -> f64 {
    (binomial(n, k) as f64).sqrt()
}
