//! Small dense linear algebra used by the model machinery.
//!
//! Everything here targets matrices of at most a few hundred rows, dense
//! storage, no blocking. Row-major `Vec` backing.

mod eig;
mod lu;
mod qr;

pub use eig::{eig_hermitian_embed, eig_real, eig_symmetric};
pub use lu::solve_complex;
pub use qr::{lstsq, nullspace_complex, rank_complex};

use crate::scalar::Scalar;
use num_complex::Complex;

/// Dense real matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Mat<T> {
    nr: usize,
    nc: usize,
    a: Vec<T>,
}

impl<T: Scalar> Mat<T> {
    pub fn zeros(nr: usize, nc: usize) -> Self {
        Self { nr, nc, a: vec![T::zero(); nr * nc] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<T>]) -> Self {
        let nr = rows.len();
        let nc = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == nc), "ragged rows");
        Self { nr, nc, a: rows.iter().flatten().copied().collect() }
    }

    pub fn nrows(&self) -> usize {
        self.nr
    }

    pub fn ncols(&self) -> usize {
        self.nc
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.a[i * self.nc..(i + 1) * self.nc]
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.nr).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.nc, self.nr);
        for i in 0..self.nr {
            for j in 0..self.nc {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn matmul(&self, rhs: &Self) -> Self {
        assert_eq!(self.nc, rhs.nr, "dimension mismatch");
        let mut out = Self::zeros(self.nr, rhs.nc);
        for i in 0..self.nr {
            for k in 0..self.nc {
                let aik = self[(i, k)];
                if aik == T::zero() {
                    continue;
                }
                for j in 0..rhs.nc {
                    out[(i, j)] += aik * rhs[(k, j)];
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!((self.nr, self.nc), (rhs.nr, rhs.nc));
        let mut out = self.clone();
        for (x, y) in out.a.iter_mut().zip(&rhs.a) {
            *x += *y;
        }
        out
    }

    pub fn scale(&self, k: T) -> Self {
        let mut out = self.clone();
        for x in out.a.iter_mut() {
            *x *= k;
        }
        out
    }

    pub fn frobenius(&self) -> T {
        self.a.iter().map(|&x| x * x).fold(T::zero(), |s, x| s + x).sqrt()
    }

    /// Largest absolute entry; cheap scale estimate for tolerances.
    pub fn max_abs(&self) -> T {
        self.a.iter().fold(T::zero(), |s, &x| s.max(x.abs()))
    }

    /// Block-diagonal stacking [self 0; 0 other].
    pub fn block_diag(&self, other: &Self) -> Self {
        let mut out = Self::zeros(self.nr + other.nr, self.nc + other.nc);
        for i in 0..self.nr {
            for j in 0..self.nc {
                out[(i, j)] = self[(i, j)];
            }
        }
        for i in 0..other.nr {
            for j in 0..other.nc {
                out[(self.nr + i, self.nc + j)] = other[(i, j)];
            }
        }
        out
    }

    /// Vertical stacking [self; other].
    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.nc, other.nc);
        let mut a = self.a.clone();
        a.extend_from_slice(&other.a);
        Self { nr: self.nr + other.nr, nc: self.nc, a }
    }

    /// Horizontal stacking [self other].
    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.nr, other.nr);
        let mut out = Self::zeros(self.nr, self.nc + other.nc);
        for i in 0..self.nr {
            for j in 0..self.nc {
                out[(i, j)] = self[(i, j)];
            }
            for j in 0..other.nc {
                out[(i, self.nc + j)] = other[(i, j)];
            }
        }
        out
    }

    pub fn to_complex(&self) -> CMat<T> {
        CMat {
            nr: self.nr,
            nc: self.nc,
            a: self.a.iter().map(|&x| Complex::new(x, T::zero())).collect(),
        }
    }
}

impl<T: Scalar> std::ops::Index<(usize, usize)> for Mat<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.a[i * self.nc + j]
    }
}

impl<T: Scalar> std::ops::IndexMut<(usize, usize)> for Mat<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.a[i * self.nc + j]
    }
}

/// Dense complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct CMat<T> {
    nr: usize,
    nc: usize,
    a: Vec<Complex<T>>,
}

impl<T: Scalar> CMat<T> {
    pub fn zeros(nr: usize, nc: usize) -> Self {
        Self { nr, nc, a: vec![Complex::new(T::zero(), T::zero()); nr * nc] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex::new(T::one(), T::zero());
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.nr
    }

    pub fn ncols(&self) -> usize {
        self.nc
    }

    pub fn matmul(&self, rhs: &Self) -> Self {
        assert_eq!(self.nc, rhs.nr);
        let mut out = Self::zeros(self.nr, rhs.nc);
        for i in 0..self.nr {
            for k in 0..self.nc {
                let aik = self[(i, k)];
                for j in 0..rhs.nc {
                    out[(i, j)] = out[(i, j)] + aik * rhs[(k, j)];
                }
            }
        }
        out
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let mut t = Self::zeros(self.nc, self.nr);
        for i in 0..self.nr {
            for j in 0..self.nc {
                t[(j, i)] = self[(i, j)].conj();
            }
        }
        t
    }

    pub fn max_abs(&self) -> T {
        self.a.iter().fold(T::zero(), |s, z| s.max(z.norm()))
    }
}

impl<T: Scalar> std::ops::Index<(usize, usize)> for CMat<T> {
    type Output = Complex<T>;
    fn index(&self, (i, j): (usize, usize)) -> &Complex<T> {
        &self.a[i * self.nc + j]
    }
}

impl<T: Scalar> std::ops::IndexMut<(usize, usize)> for CMat<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex<T> {
        &mut self.a[i * self.nc + j]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matmul_identity() {
        let m = Mat::from_rows(&[vec![1.0, 2.0], vec![3.0, 4.0]]);
        let id = Mat::identity(2);
        assert_eq!(m.matmul(&id), m);
    }

    #[test]
    fn block_diag_shape() {
        let a = Mat::<f64>::identity(2);
        let b = Mat::<f64>::identity(3);
        let c = a.block_diag(&b);
        assert_eq!((c.nrows(), c.ncols()), (5, 5));
        assert_eq!(c[(4, 4)], 1.0);
        assert_eq!(c[(0, 4)], 0.0);
    }
}
