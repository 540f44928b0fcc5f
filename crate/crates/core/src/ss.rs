//! Real state-space models of 2×2 transfer matrices, their frequency
//! evaluation and spectra.
//!
//! A model holds (A, B, C, D) with real coefficients, so G(-jΩ) is the
//! complex conjugate of G(jΩ) and sweeps only need Ω ≥ 0.

use crate::error::{Error, Result};
use crate::grid::FreqGrid;
use crate::linalg::{self, CMat, Mat};
use crate::mat2::{Mat2, RMat2};
use crate::scalar::{lit, Scalar};
use num_complex::Complex;

/// Interface-variable formulation of a model.
///
/// I: D-Q currents/voltages. II: (P, Q) against (φ, V_n). III: (P, Q)
/// against the filtered derivatives (ω̃, Ṽ_n^d).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModelKind {
    I,
    II,
    III,
}

impl std::fmt::Display for ModelKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ModelKind::I => write!(f, "I"),
            ModelKind::II => write!(f, "II"),
            ModelKind::III => write!(f, "III"),
        }
    }
}

/// Real state-space realization of a 2-input 2-output transfer matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct StateSpace<T> {
    a: Mat<T>,
    b: Mat<T>,
    c: Mat<T>,
    d: RMat2<T>,
    kind: ModelKind,
}

impl<T: Scalar> StateSpace<T> {
    pub fn new(a: Mat<T>, b: Mat<T>, c: Mat<T>, d: RMat2<T>, kind: ModelKind) -> Self {
        let n = a.nrows();
        assert_eq!(n, a.ncols(), "A must be square");
        assert_eq!((b.nrows(), b.ncols()), (n, 2), "B must be n x 2");
        assert_eq!((c.nrows(), c.ncols()), (2, n), "C must be 2 x n");
        Self { a, b, c, d, kind }
    }

    /// Feedthrough-only model.
    pub fn from_feedthrough(d: RMat2<T>, kind: ModelKind) -> Self {
        Self::new(Mat::zeros(0, 0), Mat::zeros(0, 2), Mat::zeros(2, 0), d, kind)
    }

    pub fn order(&self) -> usize {
        self.a.nrows()
    }

    pub fn kind(&self) -> ModelKind {
        self.kind
    }

    pub fn with_kind(mut self, kind: ModelKind) -> Self {
        self.kind = kind;
        self
    }

    pub fn a(&self) -> &Mat<T> {
        &self.a
    }

    pub fn b(&self) -> &Mat<T> {
        &self.b
    }

    pub fn c(&self) -> &Mat<T> {
        &self.c
    }

    pub fn feedthrough(&self) -> RMat2<T> {
        self.d
    }

    pub fn set_feedthrough(&mut self, d: RMat2<T>) {
        self.d = d;
    }

    /// G(jΩ) = C (jΩ I − A)⁻¹ B + D.
    pub fn eval(&self, omega: T) -> Result<Mat2<T>> {
        self.eval_s(Complex::new(T::zero(), omega))
            .map_err(|e| match e {
                Error::ImproperInverse => Error::SingularResolvent {
                    omega: omega.to_f64().unwrap_or(f64::NAN),
                },
                other => other,
            })
    }

    /// G(s) at an arbitrary complex s.
    pub fn eval_s(&self, s: Complex<T>) -> Result<Mat2<T>> {
        let n = self.order();
        if n == 0 {
            return Ok(self.d.to_complex());
        }
        let mut m = CMat::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = Complex::new(-self.a[(i, j)], T::zero());
            }
            m[(i, i)] = m[(i, i)] + s;
        }
        let x = linalg::solve_complex(&m, &self.b.to_complex())?;
        let mut g = self.d.to_complex();
        for i in 0..2 {
            for j in 0..2 {
                let mut acc = Complex::new(T::zero(), T::zero());
                for k in 0..n {
                    acc = acc + Complex::new(self.c[(i, k)], T::zero()) * x[(k, j)];
                }
                g.m[i][j] = g.m[i][j] + acc;
            }
        }
        Ok(g)
    }

    /// Poles as eigenvalues of A.
    pub fn poles(&self) -> Result<Spectrum<T>> {
        eig_general(&self.a)
    }

    /// Parallel connection: G = self + other (shared inputs, summed outputs).
    pub fn parallel_add(&self, other: &Self, kind: ModelKind) -> Self {
        let a = self.a.block_diag(&other.a);
        let b = self.b.vstack(&other.b);
        let c = self.c.hstack(&other.c);
        let d = self.d + other.d;
        Self::new(a, b, c, d, kind)
    }

    /// Constant output transformation L·G.
    pub fn left_mul(&self, l: RMat2<T>) -> Self {
        let lm = Mat::from_rows(&[l.m[0].to_vec(), l.m[1].to_vec()]);
        Self::new(self.a.clone(), self.b.clone(), lm.matmul(&self.c), l * self.d, self.kind)
    }

    /// Constant input transformation G·R.
    pub fn right_mul(&self, r: RMat2<T>) -> Self {
        let rm = Mat::from_rows(&[r.m[0].to_vec(), r.m[1].to_vec()]);
        Self::new(self.a.clone(), self.b.matmul(&rm), self.c.clone(), self.d * r, self.kind)
    }

    /// Adds a constant to the feedthrough.
    pub fn add_feedthrough(&self, k: RMat2<T>) -> Self {
        let mut out = self.clone();
        out.d = out.d + k;
        out
    }

    /// Cascade self ∘ inner: u → inner → self → y.
    pub fn cascade(&self, inner: &Self, kind: ModelKind) -> Self {
        // x = [x_self; x_inner]
        let n1 = self.order();
        let n2 = inner.order();
        let mut a = self.a.block_diag(&inner.a);
        // coupling: self is driven by inner's output
        for i in 0..n1 {
            for j in 0..n2 {
                let mut acc = T::zero();
                for k in 0..2 {
                    acc += self.b[(i, k)] * inner.c[(k, j)];
                }
                a[(i, n1 + j)] = acc;
            }
        }
        let dim = Mat::from_rows(&[inner.d.m[0].to_vec(), inner.d.m[1].to_vec()]);
        let b = self.b.matmul(&dim).vstack(&inner.b);
        let dsm = Mat::from_rows(&[self.d.m[0].to_vec(), self.d.m[1].to_vec()]);
        let c = self.c.hstack(&dsm.matmul(&inner.c));
        let d = self.d * inner.d;
        Self::new(a, b, c, d, kind)
    }
}

/// Eigenvalue multiset of a real matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum<T>(pub Vec<Complex<T>>);

impl<T: Scalar> Spectrum<T> {
    pub fn values(&self) -> &[Complex<T>] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Hausdorff distance between two eigenvalue sets.
    pub fn hausdorff(&self, other: &Self) -> T {
        let d = |from: &[Complex<T>], to: &[Complex<T>]| -> T {
            from.iter()
                .map(|z| {
                    to.iter()
                        .map(|u| (*z - *u).norm())
                        .fold(T::infinity(), |m, v| m.min(v))
                })
                .fold(T::zero(), |m, v| m.max(v))
        };
        if self.0.is_empty() && other.0.is_empty() {
            return T::zero();
        }
        if self.0.is_empty() || other.0.is_empty() {
            return T::infinity();
        }
        d(&self.0, &other.0).max(d(&other.0, &self.0))
    }
}

/// Eigenvalues of a general real square matrix.
pub fn eig_general<T: Scalar>(m: &Mat<T>) -> Result<Spectrum<T>> {
    linalg::eig_real(m).map(Spectrum)
}

/// Eigenvalues of a complex Hermitian matrix, ascending real values.
///
/// Fails with `NotHermitian` when ‖H − Hᴴ‖ > 1e-9·‖H‖. The 2×2 case is
/// closed-form; larger matrices go through the real symmetric embedding.
pub fn eig_hermitian<T: Scalar>(h: &CMat<T>) -> Result<Vec<T>> {
    let n = h.nrows();
    assert_eq!(n, h.ncols());
    let mut norm = T::zero();
    let mut defect = T::zero();
    for i in 0..n {
        for j in 0..n {
            norm = norm + h[(i, j)].norm_sqr();
            let d = h[(i, j)] - h[(j, i)].conj();
            defect = defect + d.norm_sqr();
        }
    }
    let norm = norm.sqrt();
    if defect.sqrt() > lit::<T>(1e-9) * norm.max(T::min_positive_value()) {
        return Err(Error::NotHermitian);
    }
    if n == 1 {
        return Ok(vec![h[(0, 0)].re]);
    }
    if n == 2 {
        let m = Mat2::new(h[(0, 0)], h[(0, 1)], h[(1, 0)], h[(1, 1)]);
        return Ok(m.hermitian_eigs().to_vec());
    }
    Ok(linalg::eig_hermitian_embed(h))
}

/// Hermitian eigenvalues of a 2×2 with the same symmetry check.
pub fn eig_hermitian2<T: Scalar>(h: &Mat2<T>) -> Result<[T; 2]> {
    let norm = h.frobenius();
    if h.hermitian_defect() > lit::<T>(1e-9) * norm.max(T::min_positive_value()) {
        return Err(Error::NotHermitian);
    }
    Ok(h.hermitian_eigs())
}

/// Sampled 2×2 frequency response over a grid.
#[derive(Debug, Clone)]
pub struct FreqResponse<T> {
    pub grid: FreqGrid<T>,
    pub samples: Vec<Mat2<T>>,
    pub kind: ModelKind,
}

impl<T: Scalar> FreqResponse<T> {
    pub fn new(grid: FreqGrid<T>, samples: Vec<Mat2<T>>, kind: ModelKind) -> Result<Self> {
        if samples.len() != grid.len() {
            return Err(Error::BadRange("one sample per grid point required".into()));
        }
        for s in &samples {
            if s.m.iter().flatten().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
                return Err(Error::BadRange("non-finite sample".into()));
            }
        }
        Ok(Self { grid, samples, kind })
    }

    /// Samples a rational model over a grid.
    pub fn sample(model: &StateSpace<T>, grid: &FreqGrid<T>) -> Result<Self> {
        let samples = grid
            .omegas()
            .iter()
            .map(|&w| model.eval(w))
            .collect::<Result<Vec<_>>>()?;
        Self::new(grid.clone(), samples, model.kind())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn feedthrough_only_eval() {
        let m = StateSpace::<f64>::from_feedthrough(RMat2::identity(), ModelKind::I);
        let g = m.eval(3.3).unwrap();
        assert!((g.m[0][0].re - 1.0).abs() < 1e-15);
        assert!(g.m[0][1].norm() < 1e-15);
    }

    #[test]
    fn dc_gain_first_order() {
        // A=[-1], B=[1 0], C=[1;0], D=0 -> G(0) = [[1,0],[0,0]]
        let a = Mat::<f64>::from_rows(&[vec![-1.0]]);
        let b = Mat::from_rows(&[vec![1.0, 0.0]]);
        let c = Mat::from_rows(&[vec![1.0], vec![0.0]]);
        let m = StateSpace::new(a, b, c, RMat2::zero(), ModelKind::I);
        let g = m.eval(0.0).unwrap();
        assert!((g.m[0][0].re - 1.0).abs() < 1e-14);
        assert!(g.m[0][0].im.abs() < 1e-14);
        assert!(g.m[1][1].norm() < 1e-14);
    }

    #[test]
    fn conjugate_symmetry() {
        let a = Mat::from_rows(&[vec![-0.5, 2.0], vec![-2.0, -0.5]]);
        let b = Mat::from_rows(&[vec![1.0, 0.0], vec![0.0, 1.0]]);
        let c = Mat::from_rows(&[vec![1.0, 0.3], vec![-0.2, 1.0]]);
        let m = StateSpace::new(a, b, c, RMat2::diag(0.1, 0.2), ModelKind::I);
        let gp = m.eval(7.7).unwrap();
        let gm = m.eval(-7.7).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                assert!((gp.m[i][j].conj() - gm.m[i][j]).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn resolvent_singular_on_pole() {
        // pure oscillator: pole at ±j2
        let a = Mat::from_rows(&[vec![0.0, 1.0], vec![-4.0, 0.0]]);
        let b = Mat::from_rows(&[vec![1.0, 0.0], vec![0.0, 1.0]]);
        let c = Mat::from_rows(&[vec![1.0, 0.0], vec![0.0, 1.0]]);
        let m = StateSpace::new(a, b, c, RMat2::zero(), ModelKind::I);
        assert!(matches!(m.eval(2.0), Err(Error::SingularResolvent { .. })));
    }

    #[test]
    fn cascade_matches_pointwise_product() {
        let a = Mat::from_rows(&[vec![-1.0]]);
        let b = Mat::from_rows(&[vec![1.0, 0.5]]);
        let c = Mat::from_rows(&[vec![1.0], vec![0.2]]);
        let g1 = StateSpace::new(a, b, c, RMat2::diag(0.3, 1.0), ModelKind::I);
        let a2 = Mat::from_rows(&[vec![-3.0, 0.0], vec![1.0, -4.0]]);
        let b2 = Mat::from_rows(&[vec![1.0, 0.0], vec![0.0, 1.0]]);
        let c2 = Mat::from_rows(&[vec![0.5, 0.1], vec![0.0, 1.0]]);
        let g2 = StateSpace::new(a2, b2, c2, RMat2::new(1.0, 0.1, -0.2, 0.7), ModelKind::I);
        let casc = g1.cascade(&g2, ModelKind::I);
        for &w in &[0.1, 1.0, 10.0] {
            let lhs = casc.eval(w).unwrap();
            let rhs = g1.eval(w).unwrap() * g2.eval(w).unwrap();
            assert!((lhs - rhs).frobenius() < 1e-12, "mismatch at {w}");
        }
    }

    #[test]
    fn hermitian_guard() {
        let mut h = CMat::<f64>::zeros(2, 2);
        h[(0, 0)] = Complex::new(1.0, 0.0);
        h[(0, 1)] = Complex::new(0.5, 0.2);
        h[(1, 0)] = Complex::new(0.9, -0.2); // not the conjugate
        h[(1, 1)] = Complex::new(2.0, 0.0);
        assert!(matches!(eig_hermitian(&h), Err(Error::NotHermitian)));
    }
}
