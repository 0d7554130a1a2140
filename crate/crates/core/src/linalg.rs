//! Fixed-size 2×2 complex linear algebra.

use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

pub(crate) const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub(crate) const ONE: Complex64 = Complex64::new(1.0, 0.0);
pub(crate) const I: Complex64 = Complex64::new(0.0, 1.0);

/// A 2×2 complex matrix stored row-major.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Mat2(pub [[Complex64; 2]; 2]);

impl Mat2 {
    pub const fn new(m00: Complex64, m01: Complex64, m10: Complex64, m11: Complex64) -> Self {
        Mat2([[m00, m01], [m10, m11]])
    }

    pub const fn zero() -> Self {
        Mat2([[ZERO, ZERO], [ZERO, ZERO]])
    }

    pub const fn identity() -> Self {
        Mat2([[ONE, ZERO], [ZERO, ONE]])
    }

    pub const fn pauli_x() -> Self {
        Mat2([[ZERO, ONE], [ONE, ZERO]])
    }

    pub const fn pauli_y() -> Self {
        Mat2([[ZERO, Complex64::new(0.0, -1.0)], [I, ZERO]])
    }

    pub const fn pauli_z() -> Self {
        Mat2([[ONE, ZERO], [ZERO, Complex64::new(-1.0, 0.0)]])
    }

    pub fn diag(d0: f64, d1: f64) -> Self {
        Mat2::new(d0.into(), ZERO, ZERO, d1.into())
    }

    /// `|v⟩⟨w|`
    pub fn outer(v: [Complex64; 2], w: [Complex64; 2]) -> Self {
        Mat2([
            [v[0] * w[0].conj(), v[0] * w[1].conj()],
            [v[1] * w[0].conj(), v[1] * w[1].conj()],
        ])
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.0[row][col]
    }

    pub fn scale(&self, s: f64) -> Self {
        let m = &self.0;
        Mat2([[m[0][0] * s, m[0][1] * s], [m[1][0] * s, m[1][1] * s]])
    }

    pub fn dagger(&self) -> Self {
        let m = &self.0;
        Mat2([
            [m[0][0].conj(), m[1][0].conj()],
            [m[0][1].conj(), m[1][1].conj()],
        ])
    }

    pub fn trace(&self) -> Complex64 {
        self.0[0][0] + self.0[1][1]
    }

    pub fn det(&self) -> Complex64 {
        self.0[0][0] * self.0[1][1] - self.0[0][1] * self.0[1][0]
    }

    pub fn apply(&self, v: [Complex64; 2]) -> [Complex64; 2] {
        let m = &self.0;
        [
            m[0][0] * v[0] + m[0][1] * v[1],
            m[1][0] * v[0] + m[1][1] * v[1],
        ]
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Mat2) -> f64 {
        let mut worst: f64 = 0.0;
        for r in 0..2 {
            for c in 0..2 {
                worst = worst.max((self.0[r][c] - other.0[r][c]).norm());
            }
        }
        worst
    }

    /// Largest entrywise deviation from Hermiticity.
    pub fn hermiticity_defect(&self) -> f64 {
        self.max_abs_diff(&self.dagger())
    }

    /// Eigenvalues of the Hermitian part, ascending.
    pub fn hermitian_eigenvalues(&self) -> [f64; 2] {
        let a = self.0[0][0].re;
        let d = self.0[1][1].re;
        let b = (self.0[0][1] + self.0[1][0].conj()) * 0.5;
        let mean = 0.5 * (a + d);
        let radius = (0.5 * (a - d)).hypot(b.norm());
        [mean - radius, mean + radius]
    }

    /// Pauli coefficients `(x, y, z)` such that the traceless Hermitian part
    /// equals `(x σx + y σy + z σz) / 2` when the trace is one.
    pub(crate) fn pauli_components(&self) -> [f64; 3] {
        let m = &self.0;
        let off = (m[1][0] + m[0][1].conj()) * 0.5;
        [2.0 * off.re, 2.0 * off.im, (m[0][0] - m[1][1]).re]
    }

    /// Solves `self · x = rhs` by Cramer's rule.
    ///
    /// Returns `None` when `|det|` is below `min_det`.
    pub fn solve(&self, rhs: [Complex64; 2], min_det: f64) -> Option<[Complex64; 2]> {
        let det = self.det();
        if det.norm() < min_det {
            return None;
        }
        let m = &self.0;
        Some([
            (rhs[0] * m[1][1] - m[0][1] * rhs[1]) / det,
            (m[0][0] * rhs[1] - rhs[0] * m[1][0]) / det,
        ])
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.0
            .iter()
            .flatten()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Spectral condition number `σ_max / σ_min`.
    pub fn condition_number(&self) -> f64 {
        let gram = self.dagger() * *self;
        let [lo, hi] = gram.hermitian_eigenvalues();
        if lo <= 0.0 {
            return f64::INFINITY;
        }
        (hi / lo).sqrt()
    }
}

impl Add for Mat2 {
    type Output = Mat2;

    fn add(self, rhs: Mat2) -> Mat2 {
        let (a, b) = (&self.0, &rhs.0);
        Mat2([
            [a[0][0] + b[0][0], a[0][1] + b[0][1]],
            [a[1][0] + b[1][0], a[1][1] + b[1][1]],
        ])
    }
}

impl Sub for Mat2 {
    type Output = Mat2;

    fn sub(self, rhs: Mat2) -> Mat2 {
        self + rhs.scale(-1.0)
    }
}

impl Mul for Mat2 {
    type Output = Mat2;

    fn mul(self, rhs: Mat2) -> Mat2 {
        let (a, b) = (&self.0, &rhs.0);
        let mut out = [[ZERO; 2]; 2];
        for (r, row) in out.iter_mut().enumerate() {
            for (c, cell) in row.iter_mut().enumerate() {
                *cell = a[r][0] * b[0][c] + a[r][1] * b[1][c];
            }
        }
        Mat2(out)
    }
}

/// `⟨v|w⟩`
#[inline]
pub fn inner(v: [Complex64; 2], w: [Complex64; 2]) -> Complex64 {
    v[0].conj() * w[0] + v[1].conj() * w[1]
}

#[inline]
pub fn norm_sqr(v: [Complex64; 2]) -> f64 {
    v[0].norm_sqr() + v[1].norm_sqr()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn pauli_algebra() {
        let x = Mat2::pauli_x();
        let y = Mat2::pauli_y();
        let z = Mat2::pauli_z();
        assert_eq!(x * x, Mat2::identity());
        assert_eq!(y * y, Mat2::identity());
        // σx σy = i σz
        let xy = x * y;
        let iz = Mat2::new(z.get(0, 0) * I, ZERO, ZERO, z.get(1, 1) * I);
        assert!(xy.max_abs_diff(&iz) < 1e-15);
    }

    #[test]
    fn hermitian_eigenvalues_match_characteristic_polynomial() {
        let m = Mat2::new(c(0.7, 0.0), c(0.1, -0.2), c(0.1, 0.2), c(0.3, 0.0));
        let [lo, hi] = m.hermitian_eigenvalues();
        assert!((lo + hi - 1.0).abs() < 1e-15);
        assert!((lo * hi - m.det().re).abs() < 1e-15);
    }

    #[test]
    fn solve_recovers_rhs() {
        let m = Mat2::new(c(1.0, 0.5), c(-0.3, 0.0), c(0.2, 0.1), c(0.9, -0.4));
        let rhs = [c(0.3, -0.1), c(-1.2, 0.8)];
        let x = m.solve(rhs, 1e-14).unwrap();
        let back = m.apply(x);
        assert!((back[0] - rhs[0]).norm() < 1e-14);
        assert!((back[1] - rhs[1]).norm() < 1e-14);
    }

    #[test]
    fn solve_rejects_singular() {
        let m = Mat2::new(c(1.0, 0.0), c(2.0, 0.0), c(2.0, 0.0), c(4.0, 0.0));
        assert!(m.solve([ONE, ONE], 1e-12).is_none());
        assert!(m.condition_number().is_infinite() || m.condition_number() > 1e12);
    }

    #[test]
    fn condition_number_of_unitary_is_one() {
        let h = Mat2::new(ONE, ONE, ONE, c(-1.0, 0.0)).scale(std::f64::consts::FRAC_1_SQRT_2);
        assert!((h.condition_number() - 1.0).abs() < 1e-12);
    }
}
