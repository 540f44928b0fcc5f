//! 2×2 matrices over real and complex scalars.
//!
//! Single-port three-phase devices in the rotating frame have 2×2 transfer
//! matrices, so these small fixed-size types carry most of the per-frequency
//! arithmetic. Hermitian 2×2 eigenvalues use the closed form to avoid
//! iteration noise in semidefiniteness verdicts near zero.

use crate::scalar::{lit, Scalar};
use num_complex::Complex;
use std::ops::{Add, Mul, Neg, Sub};

pub type C<T> = Complex<T>;

/// Real 2×2 matrix.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct RMat2<T> {
    pub m: [[T; 2]; 2],
}

impl<T: Scalar> RMat2<T> {
    pub const fn new(a: T, b: T, c: T, d: T) -> Self {
        Self { m: [[a, b], [c, d]] }
    }

    pub fn zero() -> Self {
        Self::new(T::zero(), T::zero(), T::zero(), T::zero())
    }

    pub fn identity() -> Self {
        Self::new(T::one(), T::zero(), T::zero(), T::one())
    }

    pub fn diag(a: T, d: T) -> Self {
        Self::new(a, T::zero(), T::zero(), d)
    }

    pub fn det(&self) -> T {
        self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0]
    }

    pub fn transpose(&self) -> Self {
        Self::new(self.m[0][0], self.m[1][0], self.m[0][1], self.m[1][1])
    }

    pub fn trace(&self) -> T {
        self.m[0][0] + self.m[1][1]
    }

    pub fn scale(&self, k: T) -> Self {
        Self::new(self.m[0][0] * k, self.m[0][1] * k, self.m[1][0] * k, self.m[1][1] * k)
    }

    pub fn frobenius(&self) -> T {
        self.m
            .iter()
            .flatten()
            .map(|&x| x * x)
            .fold(T::zero(), |acc, x| acc + x)
            .sqrt()
    }

    pub fn inv(&self) -> Option<Self> {
        let det = self.det();
        // Relative singularity guard against the matrix scale.
        let scale = self.frobenius();
        if det.abs() <= lit::<T>(1e-14) * scale * scale {
            return None;
        }
        Some(Self::new(
            self.m[1][1] / det,
            -self.m[0][1] / det,
            -self.m[1][0] / det,
            self.m[0][0] / det,
        ))
    }

    /// Singular values (σ_max, σ_min), closed form from the Gram matrix.
    pub fn singular_values(&self) -> (T, T) {
        let [[a, b], [c, d]] = self.m;
        let g11 = a * a + c * c;
        let g22 = b * b + d * d;
        let g12 = a * b + c * d;
        let tr = g11 + g22;
        let disc = ((g11 - g22) * (g11 - g22) + lit::<T>(4.0) * g12 * g12).sqrt();
        let two = lit::<T>(2.0);
        let smax = ((tr + disc) / two).max(T::zero()).sqrt();
        let smin = ((tr - disc) / two).max(T::zero()).sqrt();
        (smax, smin)
    }

    pub fn to_complex(&self) -> Mat2<T> {
        Mat2 {
            m: [
                [C::new(self.m[0][0], T::zero()), C::new(self.m[0][1], T::zero())],
                [C::new(self.m[1][0], T::zero()), C::new(self.m[1][1], T::zero())],
            ],
        }
    }
}

impl<T: Scalar> Add for RMat2<T> {
    type Output = Self;
    fn add(self, r: Self) -> Self {
        Self::new(
            self.m[0][0] + r.m[0][0],
            self.m[0][1] + r.m[0][1],
            self.m[1][0] + r.m[1][0],
            self.m[1][1] + r.m[1][1],
        )
    }
}

impl<T: Scalar> Sub for RMat2<T> {
    type Output = Self;
    fn sub(self, r: Self) -> Self {
        Self::new(
            self.m[0][0] - r.m[0][0],
            self.m[0][1] - r.m[0][1],
            self.m[1][0] - r.m[1][0],
            self.m[1][1] - r.m[1][1],
        )
    }
}

impl<T: Scalar> Mul for RMat2<T> {
    type Output = Self;
    fn mul(self, r: Self) -> Self {
        let mut out = Self::zero();
        for i in 0..2 {
            for j in 0..2 {
                out.m[i][j] = self.m[i][0] * r.m[0][j] + self.m[i][1] * r.m[1][j];
            }
        }
        out
    }
}

impl<T: Scalar> Neg for RMat2<T> {
    type Output = Self;
    fn neg(self) -> Self {
        self.scale(-T::one())
    }
}

/// Complex 2×2 matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2<T> {
    pub m: [[C<T>; 2]; 2],
}

impl<T: Scalar> Default for Mat2<T> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<T: Scalar> Mat2<T> {
    pub fn new(a: C<T>, b: C<T>, c: C<T>, d: C<T>) -> Self {
        Self { m: [[a, b], [c, d]] }
    }

    pub fn zero() -> Self {
        let z = C::new(T::zero(), T::zero());
        Self::new(z, z, z, z)
    }

    pub fn identity() -> Self {
        let z = C::new(T::zero(), T::zero());
        let o = C::new(T::one(), T::zero());
        Self::new(o, z, z, o)
    }

    pub fn adjoint(&self) -> Self {
        Self::new(
            self.m[0][0].conj(),
            self.m[1][0].conj(),
            self.m[0][1].conj(),
            self.m[1][1].conj(),
        )
    }

    pub fn conj(&self) -> Self {
        Self::new(
            self.m[0][0].conj(),
            self.m[0][1].conj(),
            self.m[1][0].conj(),
            self.m[1][1].conj(),
        )
    }

    pub fn transpose(&self) -> Self {
        Self::new(self.m[0][0], self.m[1][0], self.m[0][1], self.m[1][1])
    }

    pub fn det(&self) -> C<T> {
        self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0]
    }

    pub fn trace(&self) -> C<T> {
        self.m[0][0] + self.m[1][1]
    }

    pub fn scale(&self, k: C<T>) -> Self {
        Self::new(self.m[0][0] * k, self.m[0][1] * k, self.m[1][0] * k, self.m[1][1] * k)
    }

    pub fn frobenius(&self) -> T {
        self.m
            .iter()
            .flatten()
            .map(|z| z.norm_sqr())
            .fold(T::zero(), |acc, x| acc + x)
            .sqrt()
    }

    pub fn inv(&self) -> Option<Self> {
        let det = self.det();
        let scale = self.frobenius();
        if det.norm() <= lit::<T>(1e-14) * scale * scale {
            return None;
        }
        Some(Self::new(
            self.m[1][1] / det,
            -self.m[0][1] / det,
            -self.m[1][0] / det,
            self.m[0][0] / det,
        ))
    }

    /// G + Gᴴ.
    pub fn hermitian_part(&self) -> Self {
        *self + self.adjoint()
    }

    /// Deviation from Hermitian symmetry, ‖G − Gᴴ‖_F.
    pub fn hermitian_defect(&self) -> T {
        (*self - self.adjoint()).frobenius()
    }

    /// Eigenvalues of a Hermitian 2×2 matrix, ascending, closed form.
    ///
    /// The caller is responsible for Hermitian-ness; only the lower triangle
    /// and real diagonal parts are consulted.
    pub fn hermitian_eigs(&self) -> [T; 2] {
        let a = self.m[0][0].re;
        let d = self.m[1][1].re;
        let b = self.m[1][0];
        let two = lit::<T>(2.0);
        let mid = (a + d) / two;
        let disc = ((a - d) * (a - d) / (two * two) + b.norm_sqr()).sqrt();
        [mid - disc, mid + disc]
    }

    pub fn max_abs(&self) -> T {
        self.m
            .iter()
            .flatten()
            .map(|z| z.norm())
            .fold(T::zero(), |acc, x| acc.max(x))
    }
}

impl<T: Scalar> Add for Mat2<T> {
    type Output = Self;
    fn add(self, r: Self) -> Self {
        Self::new(
            self.m[0][0] + r.m[0][0],
            self.m[0][1] + r.m[0][1],
            self.m[1][0] + r.m[1][0],
            self.m[1][1] + r.m[1][1],
        )
    }
}

impl<T: Scalar> Sub for Mat2<T> {
    type Output = Self;
    fn sub(self, r: Self) -> Self {
        Self::new(
            self.m[0][0] - r.m[0][0],
            self.m[0][1] - r.m[0][1],
            self.m[1][0] - r.m[1][0],
            self.m[1][1] - r.m[1][1],
        )
    }
}

impl<T: Scalar> Mul for Mat2<T> {
    type Output = Self;
    fn mul(self, r: Self) -> Self {
        let mut out = Self::zero();
        for i in 0..2 {
            for j in 0..2 {
                out.m[i][j] = self.m[i][0] * r.m[0][j] + self.m[i][1] * r.m[1][j];
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rmat2_inverse_roundtrip() {
        let m = RMat2::<f64>::new(1.0, 2.0, -0.5, 3.0);
        let inv = m.inv().unwrap();
        let id = m * inv;
        assert!((id.m[0][0] - 1.0).abs() < 1e-12);
        assert!(id.m[0][1].abs() < 1e-12);
        assert!((id.m[1][1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn hermitian_eigs_diagonal() {
        let m = Mat2::<f64>::new(
            C::new(2.0, 0.0),
            C::new(0.0, 0.0),
            C::new(0.0, 0.0),
            C::new(3.0, 0.0),
        );
        assert_eq!(m.hermitian_eigs(), [2.0, 3.0]);
    }

    #[test]
    fn hermitian_eigs_pauli_like() {
        // [[0, j], [-j, 0]] has eigenvalues ±1
        let m = Mat2::<f64>::new(
            C::new(0.0, 0.0),
            C::new(0.0, 1.0),
            C::new(0.0, -1.0),
            C::new(0.0, 0.0),
        );
        let e = m.hermitian_eigs();
        assert!((e[0] + 1.0).abs() < 1e-14);
        assert!((e[1] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn singular_values_match_det_and_norm() {
        let m = RMat2::<f64>::new(3.0, 1.0, -2.0, 0.5);
        let (smax, smin) = m.singular_values();
        assert!((smax * smin - m.det().abs()).abs() < 1e-10);
        assert!((smax * smax + smin * smin - m.frobenius().powi(2)).abs() < 1e-10);
    }
}
