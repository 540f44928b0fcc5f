//! Dense eigenvalue solvers.
//!
//! `eig_real` is the classical two-stage approach for nonsymmetric real
//! matrices: Householder reduction to upper Hessenberg form, then the
//! implicit double-shift QR iteration (the EISPACK/JAMA lineage, eigenvalues
//! only). `eig_symmetric` is cyclic Jacobi. Complex Hermitian matrices are
//! handled through the real 2n×2n embedding.

use super::{CMat, Mat};
use crate::error::{Error, Result};
use crate::scalar::{lit, Scalar};
use num_complex::Complex;

/// Eigenvalues of a real square matrix. Conjugate-closed by construction:
/// complex eigenvalues are emitted as exact ± pairs.
pub fn eig_real<T: Scalar>(a: &Mat<T>) -> Result<Vec<Complex<T>>> {
    let n = a.nrows();
    assert_eq!(n, a.ncols(), "square matrix required");
    if n == 0 {
        return Ok(Vec::new());
    }
    if n == 1 {
        return Ok(vec![Complex::new(a[(0, 0)], T::zero())]);
    }
    let mut h = a.clone();
    hessenberg(&mut h);
    francis_qr(&mut h)
}

/// Householder similarity reduction to upper Hessenberg form, in place.
fn hessenberg<T: Scalar>(h: &mut Mat<T>) {
    let nn = h.nrows();
    let high = nn - 1;
    let mut ort = vec![T::zero(); nn];

    for m in 1..high {
        let mut scale = T::zero();
        for i in m..=high {
            scale += h[(i, m - 1)].abs();
        }
        if scale == T::zero() {
            continue;
        }
        let mut hh = T::zero();
        for i in (m..=high).rev() {
            ort[i] = h[(i, m - 1)] / scale;
            hh += ort[i] * ort[i];
        }
        let mut g = hh.sqrt();
        if ort[m] > T::zero() {
            g = -g;
        }
        hh -= ort[m] * g;
        ort[m] = ort[m] - g;

        for j in m..nn {
            let mut f = T::zero();
            for i in (m..=high).rev() {
                f += ort[i] * h[(i, j)];
            }
            f = f / hh;
            for i in m..=high {
                let t = f * ort[i];
                h[(i, j)] -= t;
            }
        }
        for i in 0..=high {
            let mut f = T::zero();
            for j in (m..=high).rev() {
                f += ort[j] * h[(i, j)];
            }
            f = f / hh;
            for j in m..=high {
                let t = f * ort[j];
                h[(i, j)] -= t;
            }
        }
        h[(m, m - 1)] = scale * g;
        for i in m + 1..=high {
            h[(i, m - 1)] = T::zero();
        }
    }
}

/// Implicit double-shift QR on an upper Hessenberg matrix; eigenvalues only.
fn francis_qr<T: Scalar>(h: &mut Mat<T>) -> Result<Vec<Complex<T>>> {
    let nn = h.nrows();
    let low: usize = 0;
    let high = nn - 1;
    let eps = T::epsilon();
    let two = lit::<T>(2.0);

    let mut d = vec![T::zero(); nn];
    let mut e = vec![T::zero(); nn];
    let mut exshift = T::zero();
    let (mut p, mut q, mut r) = (T::zero(), T::zero(), T::zero());
    let (mut s, mut z);
    let (mut x, mut y, mut w);

    let mut norm = T::zero();
    for i in 0..nn {
        for j in i.saturating_sub(1)..nn {
            norm += h[(i, j)].abs();
        }
    }

    let mut n = high as isize;
    let mut iter = 0usize;
    let mut budget = 40 * nn.max(8);

    while n >= low as isize {
        let nu = n as usize;

        // look for a single small subdiagonal element
        let mut l = nu;
        while l > low {
            s = h[(l - 1, l - 1)].abs() + h[(l, l)].abs();
            if s == T::zero() {
                s = norm;
            }
            if h[(l, l - 1)].abs() < eps * s {
                break;
            }
            l -= 1;
        }

        if l == nu {
            // one root found
            h[(nu, nu)] = h[(nu, nu)] + exshift;
            d[nu] = h[(nu, nu)];
            e[nu] = T::zero();
            n -= 1;
            iter = 0;
        } else if l == nu - 1 {
            // two roots found
            w = h[(nu, nu - 1)] * h[(nu - 1, nu)];
            p = (h[(nu - 1, nu - 1)] - h[(nu, nu)]) / two;
            q = p * p + w;
            z = q.abs().sqrt();
            h[(nu, nu)] = h[(nu, nu)] + exshift;
            h[(nu - 1, nu - 1)] = h[(nu - 1, nu - 1)] + exshift;
            x = h[(nu, nu)];
            if q >= T::zero() {
                // real pair
                z = if p >= T::zero() { p + z } else { p - z };
                d[nu - 1] = x + z;
                d[nu] = d[nu - 1];
                if z != T::zero() {
                    d[nu] = x - w / z;
                }
                e[nu - 1] = T::zero();
                e[nu] = T::zero();
            } else {
                // complex pair
                d[nu - 1] = x + p;
                d[nu] = x + p;
                e[nu - 1] = z;
                e[nu] = -z;
            }
            n -= 2;
            iter = 0;
        } else {
            // form shift
            x = h[(nu, nu)];
            y = T::zero();
            w = T::zero();
            if l < nu {
                y = h[(nu - 1, nu - 1)];
                w = h[(nu, nu - 1)] * h[(nu - 1, nu)];
            }

            if iter == 10 {
                // exceptional shift
                exshift += x;
                for i in low..=nu {
                    h[(i, i)] -= x;
                }
                s = h[(nu, nu - 1)].abs() + h[(nu - 1, nu - 2)].abs();
                x = lit::<T>(0.75) * s;
                y = x;
                w = lit::<T>(-0.4375) * s * s;
            }
            if iter == 30 {
                s = (y - x) / two;
                s = s * s + w;
                if s > T::zero() {
                    s = s.sqrt();
                    if y < x {
                        s = -s;
                    }
                    s = x - w / ((y - x) / two + s);
                    for i in low..=nu {
                        h[(i, i)] -= s;
                    }
                    exshift += s;
                    x = lit::<T>(0.964);
                    y = x;
                    w = x;
                }
            }
            iter += 1;
            if budget == 0 {
                return Err(Error::NoConvergence);
            }
            budget -= 1;

            // look for two consecutive small subdiagonal elements
            let mut m = (nu - 2) as isize;
            while m >= l as isize {
                let mu = m as usize;
                z = h[(mu, mu)];
                r = x - z;
                s = y - z;
                p = (r * s - w) / h[(mu + 1, mu)] + h[(mu, mu + 1)];
                q = h[(mu + 1, mu + 1)] - z - r - s;
                r = h[(mu + 2, mu + 1)];
                s = p.abs() + q.abs() + r.abs();
                p = p / s;
                q = q / s;
                r = r / s;
                if mu == l {
                    break;
                }
                if h[(mu, mu - 1)].abs() * (q.abs() + r.abs())
                    < eps * (p.abs() * (h[(mu - 1, mu - 1)].abs() + z.abs() + h[(mu + 1, mu + 1)].abs()))
                {
                    break;
                }
                m -= 1;
            }
            let m = m.max(l as isize) as usize;

            for i in m + 2..=nu {
                h[(i, i - 2)] = T::zero();
                if i > m + 2 {
                    h[(i, i - 3)] = T::zero();
                }
            }

            // double QR step on rows l..=nu and columns m..=nu
            for k in m..nu {
                let notlast = k != nu - 1;
                if k != m {
                    p = h[(k, k - 1)];
                    q = h[(k + 1, k - 1)];
                    r = if notlast { h[(k + 2, k - 1)] } else { T::zero() };
                    x = p.abs() + q.abs() + r.abs();
                    if x == T::zero() {
                        continue;
                    }
                    p = p / x;
                    q = q / x;
                    r = r / x;
                }
                s = (p * p + q * q + r * r).sqrt();
                if p < T::zero() {
                    s = -s;
                }
                if s == T::zero() {
                    continue;
                }
                if k != m {
                    h[(k, k - 1)] = -s * x;
                } else if l != m {
                    h[(k, k - 1)] = -h[(k, k - 1)];
                }
                p = p + s;
                x = p / s;
                y = q / s;
                z = r / s;
                q = q / p;
                r = r / p;

                // row modification
                for j in k..nn {
                    p = h[(k, j)] + q * h[(k + 1, j)];
                    if notlast {
                        p = p + r * h[(k + 2, j)];
                        h[(k + 2, j)] = h[(k + 2, j)] - p * z;
                    }
                    h[(k, j)] = h[(k, j)] - p * x;
                    h[(k + 1, j)] = h[(k + 1, j)] - p * y;
                }

                // column modification
                for i in 0..=nu.min(k + 3) {
                    p = x * h[(i, k)] + y * h[(i, k + 1)];
                    if notlast {
                        p = p + z * h[(i, k + 2)];
                        h[(i, k + 2)] = h[(i, k + 2)] - p * r;
                    }
                    h[(i, k)] = h[(i, k)] - p;
                    h[(i, k + 1)] = h[(i, k + 1)] - p * q;
                }
            }
        }
    }

    Ok((0..nn).map(|i| Complex::new(d[i], e[i])).collect())
}

/// Eigenvalues of a real symmetric matrix via cyclic Jacobi, ascending.
/// Only the symmetric part of the input is consulted.
pub fn eig_symmetric<T: Scalar>(a: &Mat<T>) -> Vec<T> {
    let n = a.nrows();
    assert_eq!(n, a.ncols());
    let mut m = Mat::zeros(n, n);
    let half = lit::<T>(0.5);
    for i in 0..n {
        for j in 0..n {
            m[(i, j)] = (a[(i, j)] + a[(j, i)]) * half;
        }
    }
    let scale = m.frobenius().max(T::min_positive_value());
    let stop = T::epsilon() * scale;

    for _sweep in 0..64 {
        let mut off = T::zero();
        for i in 0..n {
            for j in i + 1..n {
                off = off + m[(i, j)] * m[(i, j)];
            }
        }
        if off.sqrt() <= stop {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = m[(p, q)];
                if apq.abs() <= T::epsilon() * scale * lit::<T>(1e-3) {
                    continue;
                }
                let theta = (m[(q, q)] - m[(p, p)]) / (lit::<T>(2.0) * apq);
                let t = {
                    let sign = if theta >= T::zero() { T::one() } else { -T::one() };
                    sign / (theta.abs() + (theta * theta + T::one()).sqrt())
                };
                let c = T::one() / (t * t + T::one()).sqrt();
                let s = t * c;
                for i in 0..n {
                    let aip = m[(i, p)];
                    let aiq = m[(i, q)];
                    m[(i, p)] = c * aip - s * aiq;
                    m[(i, q)] = s * aip + c * aiq;
                }
                for j in 0..n {
                    let apj = m[(p, j)];
                    let aqj = m[(q, j)];
                    m[(p, j)] = c * apj - s * aqj;
                    m[(q, j)] = s * apj + c * aqj;
                }
            }
        }
    }

    let mut eigs: Vec<T> = (0..n).map(|i| m[(i, i)]).collect();
    eigs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    eigs
}

/// Eigenvalues of a complex Hermitian matrix, ascending.
///
/// Uses the real symmetric embedding [[X, -Y],[Y, X]] of H = X + iY whose
/// spectrum is that of H with every eigenvalue doubled.
pub fn eig_hermitian_embed<T: Scalar>(h: &CMat<T>) -> Vec<T> {
    let n = h.nrows();
    assert_eq!(n, h.ncols());
    let mut s = Mat::zeros(2 * n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            let x = h[(i, j)].re;
            let y = h[(i, j)].im;
            s[(i, j)] = x;
            s[(n + i, n + j)] = x;
            s[(i, n + j)] = -y;
            s[(n + i, j)] = y;
        }
    }
    let all = eig_symmetric(&s);
    // pairs are adjacent after sorting; average out any numerical splitting
    (0..n)
        .map(|k| (all[2 * k] + all[2 * k + 1]) * lit::<T>(0.5))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sorted_by_re_im(mut v: Vec<Complex<f64>>) -> Vec<Complex<f64>> {
        v.sort_by(|a, b| (a.re, a.im).partial_cmp(&(b.re, b.im)).unwrap());
        v
    }

    #[test]
    fn diagonal_matrix() {
        let m = Mat::<f64>::from_rows(&[vec![-1.0, 0.0], vec![0.0, -2.0]]);
        let e = sorted_by_re_im(eig_real(&m).unwrap());
        assert!((e[0].re + 2.0).abs() < 1e-12 && e[0].im.abs() < 1e-12);
        assert!((e[1].re + 1.0).abs() < 1e-12);
    }

    #[test]
    fn harmonic_oscillator_pair() {
        // [[0, 1], [-w^2, 0]] has eigenvalues ±jw
        let w = 5.0;
        let m = Mat::<f64>::from_rows(&[vec![0.0, 1.0], vec![-w * w, 0.0]]);
        let e = eig_real(&m).unwrap();
        let mut ims: Vec<f64> = e.iter().map(|z| z.im).collect();
        ims.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert!(e.iter().all(|z| z.re.abs() < 1e-10));
        assert!((ims[0] + w).abs() < 1e-10);
        assert!((ims[1] - w).abs() < 1e-10);
    }

    #[test]
    fn conjugate_closed() {
        let m = Mat::<f64>::from_rows(&[
            vec![0.0, 1.0, 0.0, 0.2],
            vec![-9.0, -0.4, 0.3, 0.0],
            vec![0.0, 0.1, -2.0, 1.0],
            vec![0.5, 0.0, -4.0, -1.0],
        ]);
        let e = eig_real(&m).unwrap();
        for z in &e {
            if z.im.abs() > 1e-12 {
                assert!(
                    e.iter().any(|u| (u.re - z.re).abs() < 1e-9 && (u.im + z.im).abs() < 1e-9),
                    "missing conjugate of {z}"
                );
            }
        }
    }

    #[test]
    fn symmetric_jacobi_known() {
        let m = Mat::<f64>::from_rows(&[vec![2.0, 1.0], vec![1.0, 2.0]]);
        let e = eig_symmetric(&m);
        assert!((e[0] - 1.0).abs() < 1e-12);
        assert!((e[1] - 3.0).abs() < 1e-12);
    }

    #[test]
    fn hermitian_embedding_matches_closed_form() {
        // [[2, 1-j], [1+j, 3]]: eigenvalues 2.5 ± sqrt(0.25 + 2)
        let mut h = CMat::<f64>::zeros(2, 2);
        h[(0, 0)] = Complex::new(2.0, 0.0);
        h[(0, 1)] = Complex::new(1.0, -1.0);
        h[(1, 0)] = Complex::new(1.0, 1.0);
        h[(1, 1)] = Complex::new(3.0, 0.0);
        let e = eig_hermitian_embed(&h);
        let d = (0.25f64 + 2.0).sqrt();
        assert!((e[0] - (2.5 - d)).abs() < 1e-10);
        assert!((e[1] - (2.5 + d)).abs() < 1e-10);
    }

    #[test]
    fn residual_check_larger_matrix() {
        // pseudo-random 12x12 with a fixed pattern; verify det(A - λI) small
        // via product over eigenvalues compared to a trace identity
        let n = 12;
        let mut rows = vec![vec![0.0f64; n]; n];
        let mut state = 1234567u64;
        let mut rnd = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((state >> 33) as f64 / (1u64 << 31) as f64) - 1.0
        };
        for r in rows.iter_mut() {
            for x in r.iter_mut() {
                *x = rnd();
            }
        }
        let m = Mat::from_rows(&rows);
        let e = eig_real(&m).unwrap();
        let tr: f64 = (0..n).map(|i| m[(i, i)]).sum();
        let se: f64 = e.iter().map(|z| z.re).sum();
        assert!((tr - se).abs() < 1e-8 * (1.0 + tr.abs()));
        let ims: f64 = e.iter().map(|z| z.im).sum();
        assert!(ims.abs() < 1e-8);
    }
}
