//! Householder QR: real least squares and complex rank/nullspace with
//! column pivoting.

use super::{CMat, Mat};
use crate::error::{Error, Result};
use crate::scalar::{lit, Scalar};
use num_complex::Complex;

/// Least-squares solution of the tall real system A x ≈ b via Householder QR.
pub fn lstsq<T: Scalar>(a: &Mat<T>, b: &[T]) -> Result<Vec<T>> {
    let m = a.nrows();
    let n = a.ncols();
    assert!(m >= n, "system must be square or overdetermined");
    assert_eq!(m, b.len());

    let mut q = a.clone();
    let mut rhs = b.to_vec();

    for k in 0..n {
        // Householder vector for column k
        let mut norm = T::zero();
        for i in k..m {
            norm = norm + q[(i, k)] * q[(i, k)];
        }
        let norm = norm.sqrt();
        if norm == T::zero() {
            return Err(Error::IllConditioned);
        }
        let alpha = if q[(k, k)] >= T::zero() { -norm } else { norm };
        let mut vk = q[(k, k)] - alpha;
        q[(k, k)] = alpha;
        // store v below the diagonal, scaled so v[k] = 1
        if vk == T::zero() {
            vk = T::min_positive_value();
        }
        for i in k + 1..m {
            let t = q[(i, k)] / vk;
            q[(i, k)] = t;
        }
        let beta = -vk / alpha; // 2 / (vᵀv) with the v[k]=1 scaling

        // apply reflector to remaining columns and rhs
        for j in k + 1..n {
            let mut s = q[(k, j)];
            for i in k + 1..m {
                s = s + q[(i, k)] * q[(i, j)];
            }
            s = s * beta;
            q[(k, j)] = q[(k, j)] - s;
            for i in k + 1..m {
                let t = q[(i, k)] * s;
                q[(i, j)] = q[(i, j)] - t;
            }
        }
        let mut s = rhs[k];
        for i in k + 1..m {
            s = s + q[(i, k)] * rhs[i];
        }
        s = s * beta;
        rhs[k] = rhs[k] - s;
        for i in k + 1..m {
            let t = q[(i, k)] * s;
            rhs[i] = rhs[i] - t;
        }
    }

    // rank check on R diagonal
    let rmax = (0..n).fold(T::zero(), |s, i| s.max(q[(i, i)].abs()));
    let tol = lit::<T>(1e-12) * rmax;
    for i in 0..n {
        if q[(i, i)].abs() <= tol {
            return Err(Error::IllConditioned);
        }
    }

    // back substitution
    let mut x = vec![T::zero(); n];
    for i in (0..n).rev() {
        let mut s = rhs[i];
        for j in i + 1..n {
            s = s - q[(i, j)] * x[j];
        }
        x[i] = s / q[(i, i)];
    }
    Ok(x)
}

/// Complex QR with column pivoting; returns (rank, R, permutation).
fn qr_pivot_complex<T: Scalar>(a: &CMat<T>, rtol: T) -> (usize, CMat<T>, Vec<usize>) {
    let m = a.nrows();
    let n = a.ncols();
    let mut r = a.clone();
    let mut perm: Vec<usize> = (0..n).collect();
    let kmax = m.min(n);
    let mut rank = kmax;
    let mut r00 = T::zero();

    for k in 0..kmax {
        // pivot: column with largest remaining norm
        let mut best = k;
        let mut best_norm = T::zero();
        for j in k..n {
            let mut s = T::zero();
            for i in k..m {
                s = s + r[(i, j)].norm_sqr();
            }
            if s > best_norm {
                best_norm = s;
                best = j;
            }
        }
        if best != k {
            for i in 0..m {
                let t = r[(i, k)];
                r[(i, k)] = r[(i, best)];
                r[(i, best)] = t;
            }
            perm.swap(k, best);
        }
        let col_norm = best_norm.sqrt();
        if k == 0 {
            r00 = col_norm;
        }
        if col_norm <= rtol * r00.max(T::min_positive_value()) {
            rank = k;
            break;
        }

        // complex Householder: zero below diagonal of column k
        let x0 = r[(k, k)];
        let alpha = if x0.norm() == T::zero() {
            Complex::new(-col_norm, T::zero())
        } else {
            -(x0 / x0.norm()) * col_norm
        };
        let mut v: Vec<Complex<T>> = (k..m).map(|i| r[(i, k)]).collect();
        v[0] = v[0] - alpha;
        let vnorm2 = v.iter().map(|z| z.norm_sqr()).fold(T::zero(), |s, x| s + x);
        if vnorm2 > T::zero() {
            for j in k..n {
                // s = vᴴ col_j
                let mut s = Complex::new(T::zero(), T::zero());
                for (idx, i) in (k..m).enumerate() {
                    s = s + v[idx].conj() * r[(i, j)];
                }
                let f = s * lit::<T>(2.0) / vnorm2;
                for (idx, i) in (k..m).enumerate() {
                    r[(i, j)] = r[(i, j)] - v[idx] * f;
                }
            }
        }
        r[(k, k)] = alpha;
        for i in k + 1..m {
            r[(i, k)] = Complex::new(T::zero(), T::zero());
        }
    }

    (rank, r, perm)
}

/// Numerical rank with relative tolerance `rtol`.
pub fn rank_complex<T: Scalar>(a: &CMat<T>, rtol: T) -> usize {
    qr_pivot_complex(a, rtol).0
}

/// Orthonormal-ish nullspace basis of a complex matrix (columns), via
/// pivoted QR back substitution on the free columns.
pub fn nullspace_complex<T: Scalar>(a: &CMat<T>, rtol: T) -> CMat<T> {
    let n = a.ncols();
    let (rank, r, perm) = qr_pivot_complex(a, rtol);
    let nfree = n - rank;
    let mut basis = CMat::zeros(n, nfree);
    for (b, free) in (rank..n).enumerate() {
        // solve R[0..rank,0..rank] y = -R[0..rank, free]
        let mut y = vec![Complex::new(T::zero(), T::zero()); rank];
        for i in (0..rank).rev() {
            let mut s = -r[(i, free)];
            for j in i + 1..rank {
                s = s - r[(i, j)] * y[j];
            }
            y[i] = s / r[(i, i)];
        }
        for i in 0..rank {
            basis[(perm[i], b)] = y[i];
        }
        basis[(perm[free], b)] = Complex::new(T::one(), T::zero());
        // normalize
        let mut nrm = T::zero();
        for i in 0..n {
            nrm = nrm + basis[(i, b)].norm_sqr();
        }
        let nrm = nrm.sqrt();
        for i in 0..n {
            basis[(i, b)] = basis[(i, b)] / nrm;
        }
    }
    basis
}
