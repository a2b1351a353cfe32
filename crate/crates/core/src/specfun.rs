//! Exponential integral E1 and its exponentially scaled form.
//!
//! The average-secrecy-capacity closed forms only ever consume products of the
//! shape e^x * E1(x). Formed naively these overflow as soon as x = 1/snr gets
//! large, so the scaled product is a first-class citizen here:
//!
//!   E1(x)          = int_x^inf e^{-z}/z dz
//!   exp_e1_scaled  = e^x * E1(x)
//!
//! Evaluation splits at x = 1: a power series with the Euler-Mascheroni
//! constant below, a modified Lentz continued fraction above. The continued
//! fraction produces the scaled form directly, without ever forming e^x.

use crate::error::{Error, Result};

/// Euler-Mascheroni constant.
pub const EULER_MASCHERONI: f64 = 0.577_215_664_901_532_9;

/// Series/continued-fraction convergence controls.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrecisionBudget {
    /// Relative tolerance at which iteration stops.
    pub rel_tol: f64,
    /// Hard cap on the number of terms / fraction levels.
    pub max_terms: usize,
}

impl PrecisionBudget {
    pub fn new(rel_tol: f64, max_terms: usize) -> Result<Self> {
        if rel_tol.is_nan() || rel_tol <= 0.0 {
            return Err(Error::Param(format!("rel_tol must be > 0, got {rel_tol}")));
        }
        if max_terms == 0 {
            return Err(Error::Param("max_terms must be >= 1".into()));
        }
        Ok(Self { rel_tol, max_terms })
    }
}

impl Default for PrecisionBudget {
    fn default() -> Self {
        // Well below the 1e-12 accuracy target so iteration error never shows.
        Self {
            rel_tol: 1e-16,
            max_terms: 400,
        }
    }
}

fn check_positive(x: f64) -> Result<()> {
    if !x.is_finite() || x <= 0.0 {
        return Err(Error::Domain(format!(
            "exponential integral requires x > 0 and finite, got {x}"
        )));
    }
    Ok(())
}

/// E1(x) = -gamma - ln x + sum_{k>=1} (-1)^{k+1} x^k / (k * k!), for x <= 1.
fn e1_series(x: f64, budget: &PrecisionBudget) -> f64 {
    let mut sum = 0.0;
    let mut term = 1.0;
    for k in 1..=budget.max_terms {
        let kf = k as f64;
        term *= -x / kf;
        let contribution = -term / kf;
        sum += contribution;
        if contribution.abs() <= budget.rel_tol * sum.abs() {
            break;
        }
    }
    -EULER_MASCHERONI - x.ln() + sum
}

/// e^x * E1(x) via the modified Lentz evaluation of the continued fraction
/// 1/(x+1- 1/(x+3- 4/(x+5- 9/(x+7- ...)))), for x > 1.
fn e1_cf_scaled(x: f64, budget: &PrecisionBudget) -> f64 {
    const TINY: f64 = 1e-300;
    let mut b = x + 1.0;
    let mut c = 1.0 / TINY;
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..=budget.max_terms {
        let a = -((i * i) as f64);
        b += 2.0;
        d = a.mul_add(d, b);
        if d.abs() < TINY {
            d = TINY;
        }
        c = b + a / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let delta = d * c;
        h *= delta;
        if (delta - 1.0).abs() <= budget.rel_tol {
            break;
        }
    }
    h
}

/// Exponential integral E1(x) = int_x^inf e^{-z}/z dz for x > 0.
pub fn exp_integral_e1(x: f64) -> Result<f64> {
    exp_integral_e1_with(x, &PrecisionBudget::default())
}

/// [`exp_integral_e1`] with explicit convergence controls.
pub fn exp_integral_e1_with(x: f64, budget: &PrecisionBudget) -> Result<f64> {
    check_positive(x)?;
    if x <= 1.0 {
        Ok(e1_series(x, budget))
    } else {
        Ok((-x).exp() * e1_cf_scaled(x, budget))
    }
}

/// Overflow-free e^x * E1(x) for x > 0.
///
/// Satisfies the classical bracket x/(x+1) < x * e^x * E1(x) < 1.
pub fn exp_e1_scaled(x: f64) -> Result<f64> {
    exp_e1_scaled_with(x, &PrecisionBudget::default())
}

/// [`exp_e1_scaled`] with explicit convergence controls.
pub fn exp_e1_scaled_with(x: f64, budget: &PrecisionBudget) -> Result<f64> {
    check_positive(x)?;
    if x <= 1.0 {
        Ok(x.exp() * e1_series(x, budget))
    } else {
        Ok(e1_cf_scaled(x, budget))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    // Reference values computed with 40-digit arithmetic from the defining
    // integral (mpmath e1), frozen here.
    const E1_AT_1: f64 = 0.219_383_934_395_520_27;
    const E1_AT_10: f64 = 4.156_968_929_685_324e-6;
    const EXP_E1_AT_1: f64 = 0.596_347_362_323_194;

    fn rel_err(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn e1_matches_reference_at_1() {
        let v = exp_integral_e1(1.0).unwrap();
        assert!(rel_err(v, E1_AT_1) < 1e-14, "E1(1) = {v}");
    }

    #[test]
    fn e1_matches_reference_at_10() {
        let v = exp_integral_e1(10.0).unwrap();
        assert!(rel_err(v, E1_AT_10) < 1e-13, "E1(10) = {v}");
    }

    #[test]
    fn e1_upper_bound_exp_over_x() {
        for &x in &[1.0, 2.0, 5.0, 10.0, 50.0] {
            let v = exp_integral_e1(x).unwrap();
            assert!(
                v < (-x).exp() / x,
                "E1({x}) = {v} violates e^-x/x upper bound"
            );
        }
    }

    #[test]
    fn scaled_matches_reference_at_1() {
        let v = exp_e1_scaled(1.0).unwrap();
        assert!(rel_err(v, EXP_E1_AT_1) < 1e-14, "e*E1(1) = {v}");
    }

    #[test]
    fn scaled_large_argument_bracket() {
        let v = exp_e1_scaled(1000.0).unwrap();
        assert!(v > 1000.0 / 1001.0 * 1e-3 && v < 1e-3, "e^x E1(x) = {v}");
    }

    #[test]
    fn scaled_consistent_with_unscaled_small_x() {
        let x = 0.001_f64;
        let direct = x.exp() * exp_integral_e1(x).unwrap();
        let scaled = exp_e1_scaled(x).unwrap();
        assert!(rel_err(scaled, direct) < 1e-14);
    }

    #[test]
    fn monotone_decreasing_on_increasing_inputs() {
        let mut prev = f64::INFINITY;
        let mut x = 1e-6;
        while x <= 700.0 {
            let v = exp_integral_e1(x).unwrap();
            assert!(v < prev, "E1 not decreasing at x = {x}");
            prev = v;
            x *= 1.9;
        }
    }

    #[test]
    fn derivative_recurrence_by_central_difference() {
        // d/dx E1(x) = -e^{-x}/x
        for &x in &[0.5, 1.0, 2.0, 5.0] {
            let h = 1e-5 * x;
            let num = (exp_integral_e1(x + h).unwrap() - exp_integral_e1(x - h).unwrap())
                / (2.0 * h);
            let exact = -(-x).exp() / x;
            assert!(
                rel_err(num, exact) < 1e-6,
                "derivative mismatch at x = {x}: {num} vs {exact}"
            );
        }
    }

    #[test]
    fn rejects_nonpositive_and_nonfinite() {
        assert!(exp_integral_e1(0.0).is_err());
        assert!(exp_integral_e1(-1.0).is_err());
        assert!(exp_integral_e1(f64::NAN).is_err());
        assert!(exp_e1_scaled(0.0).is_err());
        assert!(exp_e1_scaled(f64::NEG_INFINITY).is_err());
    }

    #[test]
    fn bracket_holds_on_log_grid() {
        // x/(x+1) < x e^x E1(x) < 1 for all x > 0
        let mut x = 1e-6;
        while x <= 1e3 {
            let v = x * exp_e1_scaled(x).unwrap();
            assert!(
                v > x / (x + 1.0) && v < 1.0,
                "bracket violated at x = {x}: {v}"
            );
            x *= 1.6;
        }
    }

    #[test]
    fn budget_validation() {
        assert!(PrecisionBudget::new(0.0, 10).is_err());
        assert!(PrecisionBudget::new(1e-10, 0).is_err());
        assert!(PrecisionBudget::new(1e-10, 10).is_ok());
    }
}
