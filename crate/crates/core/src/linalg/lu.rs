//! Complex LU factorization with partial pivoting, used for resolvent solves.

use super::CMat;
use crate::error::{Error, Result};
use crate::scalar::{lit, Scalar};

/// Solves A X = B for complex square A. Returns `SingularResolvent`-agnostic
/// singularity via `Error::ImproperInverse`; callers evaluating resolvents
/// rewrap with the offending frequency.
pub fn solve_complex<T: Scalar>(a: &CMat<T>, b: &CMat<T>) -> Result<CMat<T>> {
    let n = a.nrows();
    assert_eq!(n, a.ncols(), "square matrix required");
    assert_eq!(n, b.nrows(), "rhs row mismatch");

    let mut lu = a.clone();
    let mut x = b.clone();
    let scale = a.max_abs().max(T::min_positive_value());
    let tol = lit::<T>(1e-13) * scale;

    for k in 0..n {
        // partial pivot
        let mut p = k;
        let mut pmax = lu[(k, k)].norm();
        for i in k + 1..n {
            let v = lu[(i, k)].norm();
            if v > pmax {
                pmax = v;
                p = i;
            }
        }
        if pmax <= tol {
            return Err(Error::ImproperInverse);
        }
        if p != k {
            for j in 0..n {
                let t = lu[(k, j)];
                lu[(k, j)] = lu[(p, j)];
                lu[(p, j)] = t;
            }
            for j in 0..x.ncols() {
                let t = x[(k, j)];
                x[(k, j)] = x[(p, j)];
                x[(p, j)] = t;
            }
        }
        let piv = lu[(k, k)];
        for i in k + 1..n {
            let f = lu[(i, k)] / piv;
            lu[(i, k)] = f;
            for j in k + 1..n {
                let v = lu[(k, j)];
                lu[(i, j)] = lu[(i, j)] - f * v;
            }
            for j in 0..x.ncols() {
                let v = x[(k, j)];
                x[(i, j)] = x[(i, j)] - f * v;
            }
        }
    }

    // back substitution
    for j in 0..x.ncols() {
        for i in (0..n).rev() {
            let mut s = x[(i, j)];
            for k in i + 1..n {
                s = s - lu[(i, k)] * x[(k, j)];
            }
            x[(i, j)] = s / lu[(i, i)];
        }
    }
    Ok(x)
}
