//! Frequency-domain passivity conditions on rational models and raw
//! frequency responses:
//!
//! 1. no poles in the open right half plane,
//! 2. G(jΩ) + Gᴴ(jΩ) positive semidefinite along the swept axis,
//! 3. imaginary-axis poles simple with positive-semidefinite Hermitian
//!    residues.
//!
//! Raw samples can only support condition (2); conditions (1) and (3) need
//! the rational model, so full verdicts are model-based.

use crate::error::{Error, Result};
use crate::grid::{high_edge, low_edge, FreqGrid};
use crate::linalg::{nullspace_complex, solve_complex, CMat};
use crate::mat2::Mat2;
use crate::scalar::{lit, Scalar};
use crate::ss::{FreqResponse, StateSpace};
use num_complex::Complex;

/// Absolute tolerance on Re(λ) for calling a pole an axis pole.
const AXIS_TOL: f64 = 1e-9;
/// Eigenvalues of the Hermitian part below −PSD_TOL count as violations.
const PSD_TOL: f64 = 1e-9;

/// Frequency range a verdict refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckRange {
    Low,
    High,
    Full,
}

/// One sweep sample: both eigenvalues of the Hermitian part, ascending.
#[derive(Debug, Clone, Copy)]
pub struct PsdPoint<T> {
    pub omega: T,
    pub eigs: [T; 2],
}

/// Maximal grid interval on which the minimum eigenvalue stays negative.
#[derive(Debug, Clone, Copy)]
pub struct ViolationBand<T> {
    pub omega_lo: T,
    pub omega_hi: T,
    pub worst: T,
}

/// An imaginary-axis pole with its simplicity and residue verdicts.
#[derive(Debug, Clone)]
pub struct AxisPole<T> {
    pub omega: T,
    pub algebraic: usize,
    pub geometric: usize,
    pub simple: bool,
    pub residue: Mat2<T>,
    pub residue_psd: bool,
}

/// Combined verdict with per-condition diagnostics.
#[derive(Debug, Clone)]
pub struct PassivityVerdict<T> {
    pub range: CheckRange,
    pub rhp_pole_free: bool,
    pub rhp_poles: Vec<Complex<T>>,
    pub psd_curve: Vec<PsdPoint<T>>,
    pub psd_ok_low: bool,
    pub psd_ok_high: bool,
    pub axis_poles: Vec<AxisPole<T>>,
    pub violations: Vec<ViolationBand<T>>,
    pub overall: bool,
}

/// Either a rational model or raw samples.
pub enum PsdInput<'a, T> {
    Model(&'a StateSpace<T>),
    Samples(&'a FreqResponse<T>),
}

/// Condition (1): no eigenvalue of A in the open right half plane.
pub fn check_rhp_poles<T: Scalar>(model: &StateSpace<T>) -> Result<(bool, Vec<Complex<T>>)> {
    let poles = model.poles()?;
    let offenders: Vec<Complex<T>> = poles
        .values()
        .iter()
        .filter(|z| z.re > lit::<T>(AXIS_TOL))
        .copied()
        .collect();
    Ok((offenders.is_empty(), offenders))
}

/// Condition (2): per-point eigenvalues of G(jΩ) + Gᴴ(jΩ).
///
/// For raw samples the response's own grid is used and `grid` is ignored.
/// For models the grid is checked against axis poles first.
pub fn check_psd_spectrum<T: Scalar>(
    input: PsdInput<'_, T>,
    grid: &FreqGrid<T>,
) -> Result<Vec<PsdPoint<T>>> {
    match input {
        PsdInput::Samples(resp) => Ok(resp
            .samples
            .iter()
            .zip(resp.grid.omegas())
            .map(|(g, &w)| PsdPoint { omega: w, eigs: g.hermitian_part().hermitian_eigs() })
            .collect()),
        PsdInput::Model(model) => {
            let axis = axis_pole_frequencies(model)?;
            for &w in grid.omegas() {
                for &wp in &axis {
                    if (w - wp).abs() <= lit::<T>(1e-6) * T::one().max(wp.abs()) {
                        return Err(Error::GridHitsPole {
                            omega: w.to_f64().unwrap_or(f64::NAN),
                        });
                    }
                }
            }
            grid.omegas()
                .iter()
                .map(|&w| {
                    model.eval(w).map(|g| PsdPoint {
                        omega: w,
                        eigs: g.hermitian_part().hermitian_eigs(),
                    })
                })
                .collect()
        }
    }
}

/// Maximal violating intervals of a sweep curve.
pub fn violation_bands<T: Scalar>(curve: &[PsdPoint<T>]) -> Vec<ViolationBand<T>> {
    let tol = -lit::<T>(PSD_TOL);
    let mut bands = Vec::new();
    let mut open: Option<ViolationBand<T>> = None;
    for p in curve {
        if p.eigs[0] < tol {
            match open.as_mut() {
                Some(b) => {
                    b.omega_hi = p.omega;
                    b.worst = b.worst.min(p.eigs[0]);
                }
                None => {
                    open = Some(ViolationBand {
                        omega_lo: p.omega,
                        omega_hi: p.omega,
                        worst: p.eigs[0],
                    })
                }
            }
        } else if let Some(b) = open.take() {
            bands.push(b);
        }
    }
    if let Some(b) = open {
        bands.push(b);
    }
    bands
}

fn axis_pole_frequencies<T: Scalar>(model: &StateSpace<T>) -> Result<Vec<T>> {
    let poles = model.poles()?;
    Ok(poles
        .values()
        .iter()
        .filter(|z| z.re.abs() <= lit::<T>(AXIS_TOL))
        .map(|z| z.im.abs())
        .collect())
}

/// Condition (3): axis poles of the rational model with the Jordan
/// (rank) simplicity test and spectral-projector residues.
///
/// Only poles with Ω_p ≥ 0 are listed; negative-frequency poles are their
/// conjugates.
pub fn check_axis_poles<T: Scalar>(model: &StateSpace<T>) -> Result<Vec<AxisPole<T>>> {
    let n = model.order();
    if n == 0 {
        return Ok(Vec::new());
    }
    let poles = model.poles()?;
    let axis: Vec<Complex<T>> = poles
        .values()
        .iter()
        .filter(|z| z.re.abs() <= lit::<T>(AXIS_TOL) && z.im >= -lit::<T>(AXIS_TOL))
        .copied()
        .collect();
    if axis.is_empty() {
        return Ok(Vec::new());
    }

    // cluster by imaginary part
    let scale = model.a().max_abs().max(T::one());
    let group_tol = lit::<T>(1e-7) * scale;
    let mut centers: Vec<(T, usize)> = Vec::new();
    for z in &axis {
        match centers.iter_mut().find(|(w, _)| (*w - z.im).abs() <= group_tol) {
            Some((_, count)) => *count += 1,
            None => centers.push((z.im.max(T::zero()), 1)),
        }
    }

    let mut out = Vec::new();
    for (omega_p, algebraic) in centers {
        let lambda = Complex::new(T::zero(), omega_p);
        // (A − λI) for the rank / nullspace machinery
        let mut shifted = CMat::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                shifted[(i, j)] = Complex::new(model.a()[(i, j)], T::zero());
            }
            shifted[(i, i)] = shifted[(i, i)] - lambda;
        }
        let v = nullspace_complex(&shifted, lit::<T>(1e-10));
        let geometric = v.ncols();
        let simple = geometric == algebraic;

        let (residue, residue_psd) = if simple {
            let r = residue_from_projector(model, lambda, &v)?;
            let h_ok = r.hermitian_defect()
                <= lit::<T>(1e-9) * r.frobenius().max(T::min_positive_value());
            let eigs = r.hermitian_part().hermitian_eigs();
            // hermitian_part doubles the matrix; halve to test R itself
            let min_eig = eigs[0] * lit::<T>(0.5);
            let psd = h_ok && min_eig >= -lit::<T>(PSD_TOL) * T::one().max(r.frobenius());
            (r, psd)
        } else {
            (Mat2::zero(), false)
        };

        out.push(AxisPole {
            omega: omega_p,
            algebraic,
            geometric,
            simple,
            residue,
            residue_psd,
        });
    }
    out.sort_by(|a, b| a.omega.partial_cmp(&b.omega).unwrap());
    Ok(out)
}

/// lim (s−λ) G(s) = C·P_λ·B for a semisimple eigenvalue, with the oblique
/// spectral projector P = V (WᴴV)⁻¹ Wᴴ built from right/left nullspaces.
fn residue_from_projector<T: Scalar>(
    model: &StateSpace<T>,
    lambda: Complex<T>,
    v: &CMat<T>,
) -> Result<Mat2<T>> {
    let n = model.order();
    let m = v.ncols();
    // left eigenvectors: conjugate of the nullspace of (Aᵀ − λI)
    let mut shifted_t = CMat::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            shifted_t[(i, j)] = Complex::new(model.a()[(j, i)], T::zero());
        }
        shifted_t[(i, i)] = shifted_t[(i, i)] - lambda;
    }
    let u = nullspace_complex(&shifted_t, lit::<T>(1e-10));
    if u.ncols() != m {
        // left/right dimensions disagree: treat as defective
        return Ok(Mat2::zero());
    }
    // W = conj(U); WᴴV = Uᵀ V
    let mut wv = CMat::zeros(m, m);
    for i in 0..m {
        for j in 0..m {
            let mut acc = Complex::new(T::zero(), T::zero());
            for k in 0..n {
                acc = acc + u[(k, i)] * v[(k, j)];
            }
            wv[(i, j)] = acc;
        }
    }
    // CV (2×m) and WᴴB (m×2)
    let mut cv = CMat::zeros(2, m);
    for i in 0..2 {
        for j in 0..m {
            let mut acc = Complex::new(T::zero(), T::zero());
            for k in 0..n {
                acc = acc + Complex::new(model.c()[(i, k)], T::zero()) * v[(k, j)];
            }
            cv[(i, j)] = acc;
        }
    }
    let mut wb = CMat::zeros(m, 2);
    for i in 0..m {
        for j in 0..2 {
            let mut acc = Complex::new(T::zero(), T::zero());
            for k in 0..n {
                acc = acc + u[(k, i)] * Complex::new(model.b()[(k, j)], T::zero());
            }
            wb[(i, j)] = acc;
        }
    }
    let x = solve_complex(&wv, &wb)?; // (WᴴV)⁻¹ WᴴB
    let r = cv.matmul(&x);
    Ok(Mat2::new(r[(0, 0)], r[(0, 1)], r[(1, 0)], r[(1, 1)]))
}

/// Default sweep grid for a range.
pub fn range_grid<T: Scalar>(range: CheckRange, f_max_hz: Option<T>) -> Result<FreqGrid<T>> {
    match range {
        CheckRange::Low => Ok(FreqGrid::default_low()),
        CheckRange::High => FreqGrid::default_high(f_max_hz.unwrap_or_else(|| lit(200.0))),
        CheckRange::Full => Ok(FreqGrid::default_full()),
    }
}

/// Combined verdict over the default grid for `range`.
pub fn passivity_verdict<T: Scalar>(
    model: &StateSpace<T>,
    range: CheckRange,
) -> Result<PassivityVerdict<T>> {
    passivity_verdict_on(model, range, &range_grid(range, None)?)
}

/// Combined verdict over a caller-provided grid.
pub fn passivity_verdict_on<T: Scalar>(
    model: &StateSpace<T>,
    range: CheckRange,
    grid: &FreqGrid<T>,
) -> Result<PassivityVerdict<T>> {
    let (rhp_pole_free, rhp_poles) = check_rhp_poles(model)?;
    let axis_poles = check_axis_poles(model)?;
    let psd_curve = check_psd_spectrum(PsdInput::Model(model), grid)?;
    let violations = violation_bands(&psd_curve);

    let psd_ok_low = psd_curve
        .iter()
        .filter(|p| p.omega <= low_edge::<T>())
        .all(|p| p.eigs[0] >= -lit::<T>(PSD_TOL));
    let psd_ok_high = psd_curve
        .iter()
        .filter(|p| p.omega >= high_edge::<T>())
        .all(|p| p.eigs[0] >= -lit::<T>(PSD_TOL));
    let axis_ok = axis_poles.iter().all(|p| p.simple && p.residue_psd);
    let overall = rhp_pole_free && axis_ok && violations.is_empty();

    Ok(PassivityVerdict {
        range,
        rhp_pole_free,
        rhp_poles,
        psd_curve,
        psd_ok_low,
        psd_ok_high,
        axis_poles,
        violations,
        overall,
    })
}

/// Full verdicts require a rational model; raw samples only support the
/// semidefiniteness sweep.
pub fn passivity_verdict_input<T: Scalar>(
    input: PsdInput<'_, T>,
    range: CheckRange,
) -> Result<PassivityVerdict<T>> {
    match input {
        PsdInput::Model(m) => passivity_verdict(m, range),
        PsdInput::Samples(_) => Err(Error::NotRational),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::devices::{droop_ns, droop_nsd, load_nsd, rl_branch_ys, DroopParams, LoadParams};
    use crate::grid::Spacing;
    use crate::linalg::Mat;
    use crate::mat2::RMat2;
    use crate::ss::ModelKind;

    #[test]
    fn stable_diag_has_no_rhp_poles() {
        let a = Mat::from_rows(&[vec![-1.0, 0.0], vec![0.0, -2.0]]);
        let m = StateSpace::new(a, Mat::zeros(2, 2), Mat::zeros(2, 2), RMat2::zero(), ModelKind::I);
        let (ok, off) = check_rhp_poles(&m).unwrap();
        assert!(ok && off.is_empty());
    }

    #[test]
    fn unstable_pole_listed() {
        let a = Mat::<f64>::from_rows(&[vec![0.5]]);
        let m = StateSpace::new(
            a,
            Mat::zeros(1, 2),
            Mat::zeros(2, 1),
            RMat2::zero(),
            ModelKind::I,
        );
        let (ok, off) = check_rhp_poles(&m).unwrap();
        assert!(!ok);
        assert_eq!(off.len(), 1);
        assert!((off[0].re - 0.5).abs() < 1e-12);
    }

    #[test]
    fn series_rl_passes_full_range() {
        let m = rl_branch_ys(0.1, 0.01, 377.0);
        let v = passivity_verdict(&m, CheckRange::Full).unwrap();
        assert!(v.overall, "violations: {:?}", v.violations);
        assert!(v.psd_ok_low && v.psd_ok_high);
    }

    #[test]
    fn integrator_identity_residue_passes() {
        // G = (1/s) I: two integrator states, semisimple origin pole,
        // residue = I
        let a = Mat::<f64>::zeros(2, 2);
        let m = StateSpace::new(a, Mat::identity(2), Mat::identity(2), RMat2::zero(), ModelKind::II);
        let axis = check_axis_poles(&m).unwrap();
        assert_eq!(axis.len(), 1);
        let p = &axis[0];
        assert_eq!((p.algebraic, p.geometric), (2, 2));
        assert!(p.simple && p.residue_psd);
        assert!((p.residue.m[0][0].re - 1.0).abs() < 1e-9);
        assert!(p.residue.m[0][1].norm() < 1e-9);
    }

    #[test]
    fn double_integrator_fails_condition_three() {
        // 1/s² in the (1,1) entry: Jordan block at the origin
        let a = Mat::from_rows(&[vec![0.0, 1.0], vec![0.0, 0.0]]);
        let b = Mat::from_rows(&[vec![0.0, 0.0], vec![1.0, 0.0]]);
        let c = Mat::from_rows(&[vec![1.0, 0.0], vec![0.0, 0.0]]);
        let m = StateSpace::new(a, b, c, RMat2::zero(), ModelKind::II);
        let axis = check_axis_poles(&m).unwrap();
        assert_eq!(axis.len(), 1);
        assert!(!axis[0].simple);
        assert_eq!((axis[0].algebraic, axis[0].geometric), (2, 1));
    }

    #[test]
    fn droop_ns_residue_diag() {
        let p = DroopParams::<f64>::new(10.0, 5.0, 0.01).unwrap();
        let m = droop_ns(&p);
        let axis = check_axis_poles(&m).unwrap();
        assert_eq!(axis.len(), 1);
        let r = &axis[0];
        assert!(r.simple && r.residue_psd);
        assert!((r.residue.m[0][0].re - 0.1).abs() < 1e-10);
        assert!(r.residue.m[1][1].norm() < 1e-12);
    }

    #[test]
    fn droop_nsd_passes_low_range() {
        let p = DroopParams::new(10.0, 5.0, 0.01).unwrap();
        let v = passivity_verdict(&droop_nsd(&p), CheckRange::Low).unwrap();
        assert!(v.overall);
    }

    #[test]
    fn motor_load_nsd_fails_low_range() {
        let p = LoadParams::new(0.006, 0.07, 0.003, 0.5).unwrap();
        let m = load_nsd(&p, 0.01).unwrap();
        let v = passivity_verdict(&m, CheckRange::Low).unwrap();
        assert!(!v.overall);
        assert!(!v.violations.is_empty());
    }

    #[test]
    fn trace_zero_feedthrough_violates_everywhere() {
        // D + Dᵀ nonzero with zero trace is indefinite at every frequency
        let d = RMat2::new(0.3, 1.1, 0.7, -0.3);
        let m = StateSpace::from_feedthrough(d, ModelKind::II);
        let grid = FreqGrid::new(0.1, 100.0, 50, Spacing::Log).unwrap();
        let curve = check_psd_spectrum(PsdInput::Model(&m), &grid).unwrap();
        assert!(curve.iter().all(|p| p.eigs[0] < 0.0));
    }

    #[test]
    fn grid_hitting_origin_pole_is_rejected() {
        let p = DroopParams::new(10.0, 5.0, 0.01).unwrap();
        let m = droop_ns(&p); // pole at s = 0
        let grid = FreqGrid::from_omegas(vec![0.0, 1.0, 2.0], Spacing::Linear).unwrap();
        assert!(matches!(
            check_psd_spectrum(PsdInput::Model(&m), &grid),
            Err(Error::GridHitsPole { .. })
        ));
    }

    #[test]
    fn samples_only_support_condition_two() {
        let m = rl_branch_ys(0.1, 0.01, 377.0);
        let grid = FreqGrid::new(1.0, 100.0, 30, Spacing::Log).unwrap();
        let resp = FreqResponse::sample(&m, &grid).unwrap();
        let curve = check_psd_spectrum(PsdInput::Samples(&resp), &grid).unwrap();
        assert_eq!(curve.len(), 30);
        assert!(matches!(
            passivity_verdict_input(PsdInput::Samples(&resp), CheckRange::Full),
            Err(Error::NotRational)
        ));
    }

    #[test]
    fn violation_band_extraction() {
        let curve = vec![
            PsdPoint { omega: 1.0, eigs: [0.5, 1.0] },
            PsdPoint { omega: 2.0, eigs: [-0.2, 1.0] },
            PsdPoint { omega: 3.0, eigs: [-0.5, 1.0] },
            PsdPoint { omega: 4.0, eigs: [0.1, 1.0] },
        ];
        let bands = violation_bands(&curve);
        assert_eq!(bands.len(), 1);
        assert_eq!(bands[0].omega_lo, 2.0);
        assert_eq!(bands[0].omega_hi, 3.0);
        assert_eq!(bands[0].worst, -0.5);
    }
}
