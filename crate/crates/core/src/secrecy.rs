//! Per-realization secrecy capacity, the alpha-thresholds of the dirty-paper
//! auxiliary variable, and the underlying Gaussian mutual informations.
//!
//! With U = X + alpha*S (generalized dirty-paper coding against the known
//! interference S), the admissible alpha split into two regimes at
//!
//!   alpha_{+-0} = P/(P+N_e) (1 +- sqrt((P+Q+N_e)/N_e)),
//!
//! the roots of I(U;S) = I(U;Y_e). Which regime applies selects between the
//! two capacity formulas
//!
//!   C_s = log2(1 + gamma_m)                                      (regime 1)
//!   C_s = log2((1 + gbar_ms + gamma_m)/(1 + gbar_es + gamma_e))  (regime 2)
//!
//! Regime selection is an explicit caller input: both formulas are evaluated
//! as separate scenarios throughout, and [`classify_alpha`] is provided for
//! callers that want a given alpha checked against the thresholds. Internal
//! rates are in nats; bits appear only at the public capacity boundary.

use crate::channel::SnrPair;
use crate::error::{Error, Result};

/// Which capacity formula applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SecrecyRegime {
    /// C_s = log2(1 + gamma_m); side information fully pre-canceled.
    Corollary1,
    /// C_s = log2((1 + gbar_ms + gamma_m)/(1 + gbar_es + gamma_e)).
    Corollary2,
}

impl SecrecyRegime {
    pub fn label(self) -> &'static str {
        match self {
            SecrecyRegime::Corollary1 => "corollary1",
            SecrecyRegime::Corollary2 => "corollary2",
        }
    }
}

/// The two roots of I(U;S) = I(U;Y_e) in alpha.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlphaThresholds {
    pub alpha_neg0: f64,
    pub alpha_0: f64,
}

/// Where a given alpha lies relative to the thresholds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AlphaRegion {
    /// alpha <= alpha_neg0 or alpha >= alpha_0: I(U;S) >= I(U;Y_e).
    SiDominates,
    /// alpha_neg0 < alpha < alpha_0: I(U;S) < I(U;Y_e).
    EveDominates,
}

fn check_pn(p: f64, n: f64, n_name: &str) -> Result<()> {
    if !p.is_finite() || p <= 0.0 {
        return Err(Error::Domain(format!("P must be > 0, got {p}")));
    }
    if !n.is_finite() || n <= 0.0 {
        return Err(Error::Domain(format!("{n_name} must be > 0, got {n}")));
    }
    Ok(())
}

fn check_q(q: f64) -> Result<()> {
    if !q.is_finite() || q < 0.0 {
        return Err(Error::Domain(format!("Q must be >= 0, got {q}")));
    }
    Ok(())
}

/// alpha_0 and alpha_-0 as functions of (P, Q, N_e): the roots of
/// alpha^2 Q(P+N_e) - 2PQ alpha - P^2 = 0, i.e.
///
///   alpha_{+-0} = P/(P+N_e) (1 +- sqrt((P+Q+N_e)/Q)).
///
/// For Q = 0, I(U;S) vanishes identically while I(U;Y_e) stays positive, so
/// the equation has no finite root and the thresholds are -inf/+inf (every
/// alpha falls in the I(U;S) < I(U;Y_e) region).
pub fn alpha_thresholds(p: f64, q: f64, n_e: f64) -> Result<AlphaThresholds> {
    check_pn(p, n_e, "N_e")?;
    check_q(q)?;
    if q == 0.0 {
        return Ok(AlphaThresholds {
            alpha_neg0: f64::NEG_INFINITY,
            alpha_0: f64::INFINITY,
        });
    }
    let root = ((p + q + n_e) / q).sqrt();
    let scale = p / (p + n_e);
    Ok(AlphaThresholds {
        alpha_neg0: scale * (1.0 - root),
        alpha_0: scale * (1.0 + root),
    })
}

/// Classify alpha against the thresholds.
pub fn classify_alpha(alpha: f64, thresholds: &AlphaThresholds) -> AlphaRegion {
    if alpha > thresholds.alpha_neg0 && alpha < thresholds.alpha_0 {
        AlphaRegion::EveDominates
    } else {
        AlphaRegion::SiDominates
    }
}

/// I(U;S) = ln((P + alpha^2 Q)/P), in nats.
pub fn mi_u_s(alpha: f64, p: f64, q: f64) -> Result<f64> {
    check_pn(p, 1.0, "N")?;
    check_q(q)?;
    Ok(((p + alpha * alpha * q) / p).ln())
}

/// I(U;Y_e) = ln((P+Q+N_e)(P+alpha^2 Q) / (PQ(1-alpha)^2 + N_e(P+alpha^2 Q))),
/// in nats.
pub fn mi_u_ye(alpha: f64, p: f64, q: f64, n_e: f64) -> Result<f64> {
    check_pn(p, n_e, "N_e")?;
    check_q(q)?;
    let pa = p + alpha * alpha * q;
    let den = p * q * (1.0 - alpha) * (1.0 - alpha) + n_e * pa;
    Ok(((p + q + n_e) * pa / den).ln())
}

/// Rate of the legitimate link under dirty-paper coding with parameter alpha:
/// C_m(alpha) = ln(P(|h_m|^2 P + Q + N_m) / (PQ(1-|h_m| alpha)^2 + N_m(P + alpha^2 Q))),
/// in nats. |h_m| is recovered from the SNR as sqrt(gamma_m N_m / P).
pub fn cm_alpha(alpha: f64, gamma_m: f64, p: f64, q: f64, n_m: f64) -> Result<f64> {
    check_pn(p, n_m, "N_m")?;
    check_q(q)?;
    if gamma_m.is_nan() || gamma_m < 0.0 {
        return Err(Error::Domain(format!("gamma_m must be >= 0, got {gamma_m}")));
    }
    let h_m = (gamma_m * n_m / p).sqrt();
    let den = p * q * (1.0 - h_m * alpha) * (1.0 - h_m * alpha)
        + n_m * (p + alpha * alpha * q);
    Ok((p * (h_m * h_m * p + q + n_m) / den).ln())
}

/// Eavesdropper-side rate difference under a common dirty-paper parameter:
/// R_e(alpha) = ln[(|h_m|^2 P + Q + N_m)(PQ(1-|h_e| alpha)^2 + N_e(P+alpha^2 Q))
///              / ((|h_e|^2 P + Q + N_e)(PQ(1-|h_m| alpha)^2 + N_m(P+alpha^2 Q)))],
/// in nats.
#[allow(clippy::too_many_arguments)]
pub fn re_alpha(
    alpha: f64,
    gamma_m: f64,
    gamma_e: f64,
    p: f64,
    q: f64,
    n_m: f64,
    n_e: f64,
) -> Result<f64> {
    check_pn(p, n_m, "N_m")?;
    check_pn(p, n_e, "N_e")?;
    check_q(q)?;
    for (name, g) in [("gamma_m", gamma_m), ("gamma_e", gamma_e)] {
        if g.is_nan() || g < 0.0 {
            return Err(Error::Domain(format!("{name} must be >= 0, got {g}")));
        }
    }
    let h_m = (gamma_m * n_m / p).sqrt();
    let h_e = (gamma_e * n_e / p).sqrt();
    let a_m = h_m * h_m * p + q + n_m;
    let a_e = h_e * h_e * p + q + n_e;
    let d_m = p * q * (1.0 - h_m * alpha) * (1.0 - h_m * alpha)
        + n_m * (p + alpha * alpha * q);
    let d_e = p * q * (1.0 - h_e * alpha) * (1.0 - h_e * alpha)
        + n_e * (p + alpha * alpha * q);
    Ok((a_m * d_e / (a_e * d_m)).ln())
}

/// Instantaneous secrecy capacity in bits.
///
/// Corollary 1 is nonnegative by construction; Corollary 2 may be negative
/// and is left unclamped (the metric layer clamps where its estimator
/// requires the positive part).
pub fn secrecy_capacity(
    regime: SecrecyRegime,
    pair: &SnrPair,
    gbar_ms: f64,
    gbar_es: f64,
) -> Result<f64> {
    for (name, v) in [("gbar_ms", gbar_ms), ("gbar_es", gbar_es)] {
        if !v.is_finite() || v < 0.0 {
            return Err(Error::Domain(format!("{name} must be >= 0, got {v}")));
        }
    }
    Ok(match regime {
        SecrecyRegime::Corollary1 => (1.0 + pair.gamma_m).log2(),
        SecrecyRegime::Corollary2 => {
            ((1.0 + gbar_ms + pair.gamma_m) / (1.0 + gbar_es + pair.gamma_e)).log2()
        }
    })
}
