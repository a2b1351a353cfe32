//! Adaptive Gauss-Kronrod quadrature and a bounded scalar maximizer.
//!
//! The metric oracles integrate smooth, exponentially decaying densities over
//! the positive quadrant. Semi-infinite axes are mapped through
//! g = scale * t / (1 - t), t in [0, 1), after which a globally adaptive
//! 15-point Gauss-Kronrod scheme (worst-segment bisection) reaches 1e-10-level
//! absolute accuracy in a few dozen panels.

use crate::error::{Error, Result};

// 15-point Kronrod abscissae (positive half), embedded 7-point Gauss weights,
// and the Kronrod weights. QUADPACK qk15 constants.
#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_33,
    0.949_107_912_342_758_524_526_189_684_047_85,
    0.864_864_423_359_769_072_789_712_788_640_93,
    0.741_531_185_599_394_439_863_864_773_280_79,
    0.586_087_235_467_691_130_294_144_838_258_73,
    0.405_845_151_377_397_166_906_606_412_076_96,
    0.207_784_955_007_898_467_600_689_403_773_24,
    0.0,
];
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_08,
    0.279_705_391_489_276_667_901_467_771_423_78,
    0.381_830_050_505_118_944_950_369_775_488_97,
    0.417_959_183_673_469_387_755_102_040_816_33,
];
#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_97,
    0.063_092_092_629_978_553_290_700_663_189_2,
    0.104_790_010_322_250_183_839_876_322_541_52,
    0.140_653_259_715_525_918_745_189_590_510_24,
    0.169_004_726_639_267_902_826_583_426_598_55,
    0.190_350_578_064_785_409_913_256_402_421_01,
    0.204_432_940_075_298_892_414_161_999_234_65,
    0.209_482_141_084_727_828_012_999_174_891_71,
];

/// One Gauss-Kronrod panel: Kronrod value plus a rescaled error estimate.
fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);

    let f_center = f(center);
    let mut kronrod = WGK[7] * f_center;
    let mut gauss = WG[3] * f_center;
    let mut res_abs = kronrod.abs();
    let mut fv = [0.0_f64; 15];
    fv[7] = f_center;

    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fv[j] = f1;
        fv[14 - j] = f2;
        kronrod += WGK[j] * (f1 + f2);
        res_abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            gauss += WG[j / 2] * (f1 + f2);
        }
    }

    let mean = 0.5 * kronrod;
    let mut res_asc = WGK[7] * (f_center - mean).abs();
    for j in 0..7 {
        res_asc += WGK[j] * ((fv[j] - mean).abs() + (fv[14 - j] - mean).abs());
    }

    let value = kronrod * half;
    res_abs *= half.abs();
    res_asc *= half.abs();

    // QUADPACK error rescaling.
    let mut err = ((kronrod - gauss) * half).abs();
    if res_asc != 0.0 && err != 0.0 {
        let scale = (200.0 * err / res_asc).powf(1.5);
        err = if scale < 1.0 { res_asc * scale } else { res_asc };
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * res_abs);
    }
    (value, err)
}

#[derive(Debug, Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    value: f64,
    err: f64,
}

/// Result of an adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    pub abs_error: f64,
}

const MAX_SEGMENTS: usize = 2000;

/// Globally adaptive integral of `f` over the finite interval `[a, b]` to
/// absolute tolerance `abs_tol`.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, abs_tol: f64) -> Result<QuadResult> {
    if abs_tol.is_nan() || abs_tol <= 0.0 {
        return Err(Error::Param(format!("abs_tol must be > 0, got {abs_tol}")));
    }
    if !a.is_finite() || !b.is_finite() {
        return Err(Error::Domain("integration bounds must be finite".into()));
    }
    if a == b {
        return Ok(QuadResult {
            value: 0.0,
            abs_error: 0.0,
        });
    }

    let (v, e) = gk15(&f, a, b);
    let mut segments = vec![Segment {
        a,
        b,
        value: v,
        err: e,
    }];

    loop {
        let total_err: f64 = segments.iter().map(|s| s.err).sum();
        if total_err <= abs_tol {
            break;
        }
        if segments.len() >= MAX_SEGMENTS {
            return Err(Error::ToleranceNotMet {
                requested: abs_tol,
                achieved: total_err,
            });
        }
        // Split the worst segment.
        let (idx, _) = segments
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.err.partial_cmp(&y.1.err).unwrap())
            .unwrap();
        let worst = segments.swap_remove(idx);
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // Interval no longer splittable in f64; accept its estimate.
            segments.push(Segment {
                err: 0.0,
                ..worst
            });
            continue;
        }
        let (v1, e1) = gk15(&f, worst.a, mid);
        let (v2, e2) = gk15(&f, mid, worst.b);
        segments.push(Segment {
            a: worst.a,
            b: mid,
            value: v1,
            err: e1,
        });
        segments.push(Segment {
            a: mid,
            b: worst.b,
            value: v2,
            err: e2,
        });
    }

    let value = segments.iter().map(|s| s.value).sum();
    let abs_error = segments.iter().map(|s| s.err).sum();
    Ok(QuadResult { value, abs_error })
}

/// Integral of `f` over `[lo, inf)` via the map g = lo + scale * t/(1-t).
///
/// `scale` should be of the order of the integrand's decay length so the
/// mapped integrand is well resolved near t = 0.
pub fn integrate_semi_infinite<F: Fn(f64) -> f64>(
    f: F,
    lo: f64,
    scale: f64,
    abs_tol: f64,
) -> Result<QuadResult> {
    if !scale.is_finite() || scale <= 0.0 {
        return Err(Error::Param(format!("scale must be > 0, got {scale}")));
    }
    let mapped = move |t: f64| {
        let one_minus = 1.0 - t;
        if one_minus <= 0.0 {
            return 0.0;
        }
        let g = lo + scale * t / one_minus;
        let jac = scale / (one_minus * one_minus);
        let v = f(g) * jac;
        if v.is_finite() {
            v
        } else {
            0.0
        }
    };
    integrate(mapped, 0.0, 1.0, abs_tol)
}

/// Golden-section maximization of `f` on `[lo, hi]`.
///
/// Returns the abscissa and value of the best point found. A coarse scan first
/// brackets the global maximum so multimodal objectives over a wide interval
/// are handled.
pub fn golden_max<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, x_tol: f64) -> (f64, f64) {
    const SCAN: usize = 200;
    let mut best_i = 0;
    let mut best_v = f64::NEG_INFINITY;
    for i in 0..=SCAN {
        let x = lo + (hi - lo) * i as f64 / SCAN as f64;
        let v = f(x);
        if v > best_v {
            best_v = v;
            best_i = i;
        }
    }
    let mut a = lo + (hi - lo) * best_i.saturating_sub(1) as f64 / SCAN as f64;
    let mut b = lo + (hi - lo) * (best_i + 1).min(SCAN) as f64 / SCAN as f64;

    const INV_PHI: f64 = 0.618_033_988_749_894_8;
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while (b - a) > x_tol {
        if f1 < f2 {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = f(x1);
        }
    }
    let xm = 0.5 * (a + b);
    (xm, f(xm))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_is_exact() {
        let r = integrate(|x| 3.0 * x * x, 0.0, 2.0, 1e-12).unwrap();
        assert!((r.value - 8.0).abs() < 1e-12, "got {}", r.value);
    }

    #[test]
    fn gaussian_bump() {
        // int_-inf^inf e^{-x^2} = sqrt(pi); [-8, 8] captures it to 1e-28
        let r = integrate(|x| (-x * x).exp(), -8.0, 8.0, 1e-13).unwrap();
        assert!((r.value - std::f64::consts::PI.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn exponential_tail_semi_infinite() {
        let r = integrate_semi_infinite(|x| (-x).exp(), 0.0, 1.0, 1e-12).unwrap();
        assert!((r.value - 1.0).abs() < 1e-11, "got {}", r.value);
    }

    #[test]
    fn shifted_lower_bound() {
        // int_2^inf e^{-x} dx = e^{-2}
        let r = integrate_semi_infinite(|x| (-x).exp(), 2.0, 1.0, 1e-13).unwrap();
        assert!((r.value - (-2.0_f64).exp()).abs() < 1e-12);
    }

    #[test]
    fn near_singular_needs_subdivision() {
        // int_0^1 1/sqrt(x) dx = 2, integrable endpoint singularity
        let r = integrate(|x| if x > 0.0 { x.powf(-0.5) } else { 0.0 }, 0.0, 1.0, 1e-9);
        // Endpoint singularities converge slowly; accept either success or an
        // honest refusal, but on success the value must be right.
        if let Ok(r) = r {
            assert!((r.value - 2.0).abs() < 1e-6, "got {}", r.value);
        }
    }

    #[test]
    fn rejects_bad_tolerance() {
        assert!(integrate(|x| x, 0.0, 1.0, 0.0).is_err());
    }

    #[test]
    fn golden_max_finds_quadratic_peak() {
        let (x, v) = golden_max(|x| -(x - 1.3) * (x - 1.3) + 2.0, -10.0, 10.0, 1e-10);
        // Position is limited to ~sqrt(eps) near a smooth peak; the value is
        // what downstream checks consume and is exact to machine precision.
        assert!((x - 1.3).abs() < 1e-7, "x = {x}");
        assert!((v - 2.0).abs() < 1e-12);
    }

    #[test]
    fn golden_max_picks_global_peak_of_bimodal() {
        let f = |x: f64| (-(x + 3.0) * (x + 3.0)).exp() + 2.0 * (-(x - 4.0) * (x - 4.0)).exp();
        let (x, _) = golden_max(f, -10.0, 10.0, 1e-10);
        assert!((x - 4.0).abs() < 1e-6, "found {x}");
    }
}
