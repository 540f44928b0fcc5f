//! Conversions among the three interface-variable formulations.
//!
//! Sign conventions, fixed across the crate:
//! - Operating-point currents (i_Do, i_Qo) are the quiescent current the
//!   device injects into the network at the bus.
//! - A Model-I device admittance Y_s maps terminal-voltage deviations to the
//!   current drawn *into* the device, so the device transform uses −𝒞 while
//!   the network transform uses +𝒞.
//! - P and Q are the active/reactive power absorbed by the respective
//!   subsystem (device or network).

use crate::error::{Error, Result};
use crate::grid::FreqGrid;
use crate::linalg::{rank_complex, Mat};
use crate::mat2::RMat2;
use crate::scalar::{lit, Scalar};
use crate::ss::{eig_general, ModelKind, Spectrum, StateSpace};
use num_complex::Complex;

/// Quiescent D-Q terminal voltage and injected current, with the derived
/// interface matrices.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OperatingPoint<T> {
    pub v_d: T,
    pub v_q: T,
    /// D-axis current injected into the network.
    pub i_d: T,
    /// Q-axis current injected into the network.
    pub i_q: T,
    /// Voltage magnitude √(v_D² + v_Q²).
    pub v_o: T,
}

impl<T: Scalar> OperatingPoint<T> {
    pub fn new(v_d: T, v_q: T, i_d: T, i_q: T) -> Result<Self> {
        let v_o = (v_d * v_d + v_q * v_q).sqrt();
        if v_o <= lit::<T>(1e-12) {
            return Err(Error::DegenerateVoltage);
        }
        Ok(Self { v_d, v_q, i_d, i_q, v_o })
    }

    /// Voltage rotation ℰ = [v_Do v_Qo; −v_Qo v_Do].
    pub fn e_mat(&self) -> RMat2<T> {
        RMat2::new(self.v_d, self.v_q, -self.v_q, self.v_d)
    }

    /// Current pattern 𝒞 = [i_Do i_Qo; i_Qo −i_Do].
    pub fn c_mat(&self) -> RMat2<T> {
        RMat2::new(self.i_d, self.i_q, self.i_q, -self.i_d)
    }

    /// Polar-to-rectangular map ℱ = [v_Qo v_Do; −v_Do v_Qo].
    pub fn f_mat(&self) -> RMat2<T> {
        RMat2::new(self.v_q, self.v_d, -self.v_d, self.v_q)
    }

    /// Bus voltage phase φ_o = atan2(v_D, v_Q).
    pub fn phi(&self) -> T {
        self.v_d.atan2(self.v_q)
    }

    /// Same voltages with reversed power flow (negated currents).
    pub fn reversed(&self) -> Self {
        Self { i_d: -self.i_d, i_q: -self.i_q, ..*self }
    }
}

/// Which side of the bus a Model-I admittance describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Device,
    Network,
}

/// Model I → Model II: J = (ℰ Y ∓ 𝒞) ℱ with −𝒞 for devices, +𝒞 for the
/// network. Static pre/post multiplications; the state dimension and poles
/// are unchanged.
pub fn model_i_to_ii<T: Scalar>(
    g: &StateSpace<T>,
    op: &OperatingPoint<T>,
    side: Side,
) -> Result<StateSpace<T>> {
    let e = op.e_mat();
    let f = op.f_mat();
    let c = match side {
        Side::Device => -op.c_mat(),
        Side::Network => op.c_mat(),
    };
    Ok(g
        .left_mul(e)
        .add_feedthrough(c)
        .right_mul(f)
        .with_kind(ModelKind::II))
}

/// Model II → Model III: J_d(s) = J(s)·(1 + sτ)/s per input channel.
///
/// The factor is τ + 1/s, realized with one integrator state per channel,
/// so the state dimension grows by exactly 2.
pub fn model_ii_to_iii<T: Scalar>(g: &StateSpace<T>, tau: T) -> Result<StateSpace<T>> {
    if !(tau > T::zero()) {
        return Err(Error::BadParams("tau must be positive".into()));
    }
    let prefilter = StateSpace::new(
        Mat::zeros(2, 2),
        Mat::identity(2),
        Mat::identity(2),
        RMat2::diag(tau, tau),
        ModelKind::II,
    );
    Ok(g.cascade(&prefilter, ModelKind::III))
}

/// Inverse transfer matrix via the feedthrough-exchange realization
/// (A − B D⁻¹ C, B D⁻¹, −D⁻¹ C, D⁻¹).
pub fn invert_tf<T: Scalar>(g: &StateSpace<T>) -> Result<StateSpace<T>> {
    let d = g.feedthrough();
    let (smax, smin) = d.singular_values();
    if smin <= T::zero() || smax / smin > lit::<T>(1e8) {
        return Err(Error::ImproperInverse);
    }
    let dinv = d.inv().ok_or(Error::ImproperInverse)?;
    let n = g.order();
    let dinv_m = Mat::from_rows(&[dinv.m[0].to_vec(), dinv.m[1].to_vec()]);
    let bdinv = g.b().matmul(&dinv_m);
    let dinvc = dinv_m.matmul(g.c());
    let mut a = g.a().clone();
    for i in 0..n {
        for j in 0..n {
            let mut acc = T::zero();
            for k in 0..2 {
                acc += bdinv[(i, k)] * g.c()[(k, j)];
            }
            a[(i, j)] -= acc;
        }
    }
    Ok(StateSpace::new(a, bdinv, dinvc.scale(-T::one()), dinv, g.kind()))
}

/// Exports a constant Q-V contribution to the network by subtracting
/// k_qv^c from the (2,2) feedthrough entry.
///
/// Fails with the available margin when the device cannot cover the request
/// over the low-frequency grid.
pub fn extract_kqvc<T: Scalar>(
    j_s: &StateSpace<T>,
    kqv_c: T,
    low_grid: &FreqGrid<T>,
) -> Result<StateSpace<T>> {
    if kqv_c < T::zero() {
        return Err(Error::BadParams("k_qv^c must be nonnegative".into()));
    }
    let available = kqv_available(j_s, low_grid)?;
    if available < kqv_c {
        return Err(Error::InsufficientKqv {
            available: available.to_f64().unwrap_or(f64::NAN),
        });
    }
    let mut d = j_s.feedthrough();
    d.m[1][1] = d.m[1][1] - kqv_c;
    let mut out = j_s.clone();
    out.set_feedthrough(d);
    Ok(out)
}

/// min over the grid of Re J_s(2,2)(jΩ) — the exportable Q-V margin.
pub fn kqv_available<T: Scalar>(j_s: &StateSpace<T>, grid: &FreqGrid<T>) -> Result<T> {
    let mut min = T::infinity();
    for &w in grid.omegas() {
        let g = j_s.eval(w)?;
        min = min.min(g.m[1][1].re);
    }
    Ok(min)
}

/// Determinants of (ℰD ± 𝒞)ℱ for a Model-I feedthrough. Both signs are
/// reported; `det_plus` is the network-sign variant, `det_minus` the
/// device-sign one.
pub fn properness_dets<T: Scalar>(d: &RMat2<T>, op: &OperatingPoint<T>) -> (T, T) {
    let e = op.e_mat();
    let f = op.f_mat();
    let plus = (e * *d + op.c_mat()) * f;
    let minus = (e * *d - op.c_mat()) * f;
    (plus.det(), minus.det())
}

/// Non-singularity of (ℰD + 𝒞)ℱ, which the inverse Model-III form needs
/// to stay proper.
pub fn check_properness<T: Scalar>(d: &RMat2<T>, op: &OperatingPoint<T>) -> bool {
    let e = op.e_mat();
    let f = op.f_mat();
    let m = (e * *d + op.c_mat()) * f;
    let norm = m.frobenius();
    m.det().abs() > lit::<T>(1e-10) * norm * norm
}

/// Result of the closed-loop pole comparison across model formulations.
#[derive(Debug, Clone)]
pub struct PoleIdentityReport<T> {
    pub poles_g1: Spectrum<T>,
    pub poles_g2: Spectrum<T>,
    /// Hausdorff distance between the G1 and G2 pole sets.
    pub hausdorff_12: T,
    /// Poles of G3 not present in G2 (set difference, tolerance-based).
    pub g3_extra: Vec<Complex<T>>,
    /// True when the extra G3 pole set is exactly {−1/τ}.
    pub g3_extra_is_tau_pole: bool,
    /// Algebraic and geometric multiplicity of the closed-loop eigenvalue
    /// at the origin (0, 0) when absent.
    pub origin_multiplicity: (usize, usize),
    /// A repeated (non-semisimple) closed-loop pole at s = 0.
    pub origin_nonsimple: bool,
}

/// Verifies that the closed loops of Model I and Model II share their pole
/// sets, and that the Model-III loop adds exactly the filter pole at −1/τ.
pub fn pole_identity_check<T: Scalar>(
    y_n: &StateSpace<T>,
    y_s: &StateSpace<T>,
    op: &OperatingPoint<T>,
    tau: T,
) -> Result<PoleIdentityReport<T>> {
    let sum_i = y_n.parallel_add(y_s, ModelKind::I);
    let g1 = invert_tf(&sum_i)?;
    let poles_g1 = g1.poles()?;

    let j_n = model_i_to_ii(y_n, op, Side::Network)?;
    let j_s = model_i_to_ii(y_s, op, Side::Device)?;
    let sum_ii = j_n.parallel_add(&j_s, ModelKind::II);
    let g2 = invert_tf(&sum_ii)?;
    let poles_g2 = g2.poles()?;

    let hausdorff_12 = poles_g1.hausdorff(&poles_g2);

    let sum_iii = model_ii_to_iii(&sum_ii, tau)?;
    let g3 = invert_tf(&sum_iii)?;
    let poles_g3 = g3.poles()?;

    let scale = poles_g2
        .values()
        .iter()
        .fold(T::one(), |m, z| m.max(z.norm()));
    let tol = lit::<T>(1e-6) * scale;
    let g3_extra: Vec<Complex<T>> = poles_g3
        .values()
        .iter()
        .filter(|z| {
            poles_g2
                .values()
                .iter()
                .all(|u| (**z - *u).norm() > tol)
        })
        .copied()
        .collect();
    let tau_pole = Complex::new(-T::one() / tau, T::zero());
    let g3_extra_is_tau_pole = !g3_extra.is_empty()
        && g3_extra
            .iter()
            .all(|z| (*z - tau_pole).norm() <= lit::<T>(1e-6) * (T::one() / tau));

    // Jordan test at the origin of the Model-I closed loop.
    let axis_tol = lit::<T>(1e-7) * g1.a().max_abs().max(T::one());
    let algebraic = poles_g1
        .values()
        .iter()
        .filter(|z| z.norm() <= axis_tol)
        .count();
    let geometric = if algebraic > 0 {
        let n = g1.order();
        n - rank_complex(&g1.a().to_complex(), lit::<T>(1e-10))
    } else {
        0
    };
    Ok(PoleIdentityReport {
        poles_g1,
        poles_g2,
        hausdorff_12,
        g3_extra,
        g3_extra_is_tau_pole,
        origin_multiplicity: (algebraic, geometric),
        origin_nonsimple: algebraic > 0 && geometric < algebraic,
    })
}

/// Conjugate-pair helper used in tests and fitting: true when the multiset
/// is closed under conjugation at the given tolerance.
pub fn conjugate_closed<T: Scalar>(values: &[Complex<T>], tol: T) -> bool {
    values.iter().all(|z| {
        z.im.abs() <= tol
            || values
                .iter()
                .any(|u| (u.re - z.re).abs() <= tol && (u.im + z.im).abs() <= tol)
    })
}

/// Spectrum of a state matrix (thin wrapper used by pipeline reporting).
pub fn model_spectrum<T: Scalar>(g: &StateSpace<T>) -> Result<Spectrum<T>> {
    eig_general(g.a())
}
