//! Channel bookkeeping: physical parameters, exponential SNR marginals, the
//! copula-coupled joint SNR density, and correlated SNR sampling.
//!
//! Rayleigh fading makes both instantaneous SNRs exponential,
//! f(g) = (1/gbar) e^{-g/gbar}, and the joint density follows from the copula
//! density via f(g_m, g_e) = f(g_m) f(g_e) c(F(g_m), F(g_e)). The fading
//! coefficients themselves are never materialized: every downstream formula
//! depends on SNR alone. All parameters are stored in linear units; dB enters
//! only at interface boundaries through the explicit converters.

use crate::copula::{self, CopulaFamily, CopulaSpec, UnitPair};
use crate::error::{Error, Result};
use rand::Rng;

/// Decibel to linear power ratio.
pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

/// Linear power ratio to decibel.
pub fn linear_to_db(lin: f64) -> f64 {
    10.0 * lin.log10()
}

/// Physical and normalized parameters of the wiretap link.
///
/// `gbar_m`, `gbar_e` are the average SNRs of the legitimate and eavesdropper
/// channels; `gbar_ms = q / n_m` and `gbar_es = q / n_e` are the
/// side-information-to-noise ratios. Everything is linear.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WiretapParams {
    pub p: f64,
    pub q: f64,
    pub n_m: f64,
    pub n_e: f64,
    pub gbar_m: f64,
    pub gbar_e: f64,
    pub gbar_ms: f64,
    pub gbar_es: f64,
}

impl WiretapParams {
    /// Build from the physical quantities: transmit power, side-information
    /// variance, noise variances, and mean channel power gains.
    pub fn from_physical(
        p: f64,
        q: f64,
        n_m: f64,
        n_e: f64,
        mean_gain_m: f64,
        mean_gain_e: f64,
    ) -> Result<Self> {
        for (name, v) in [
            ("P", p),
            ("N_m", n_m),
            ("N_e", n_e),
            ("mean_gain_m", mean_gain_m),
            ("mean_gain_e", mean_gain_e),
        ] {
            if !v.is_finite() || v <= 0.0 {
                return Err(Error::Domain(format!("{name} must be > 0, got {v}")));
            }
        }
        if !q.is_finite() || q < 0.0 {
            return Err(Error::Domain(format!("Q must be >= 0, got {q}")));
        }
        Ok(Self {
            p,
            q,
            n_m,
            n_e,
            gbar_m: p * mean_gain_m / n_m,
            gbar_e: p * mean_gain_e / n_e,
            gbar_ms: q / n_m,
            gbar_es: q / n_e,
        })
    }

    /// Build from the normalized quantities the metric formulas consume. A
    /// consistent physical parameter set is synthesized with P = N_m = 1.
    pub fn from_average_snrs(gbar_m: f64, gbar_e: f64, gbar_ms: f64, gbar_es: f64) -> Result<Self> {
        for (name, v) in [("gbar_m", gbar_m), ("gbar_e", gbar_e)] {
            if !v.is_finite() || v <= 0.0 {
                return Err(Error::Domain(format!("{name} must be > 0, got {v}")));
            }
        }
        for (name, v) in [("gbar_ms", gbar_ms), ("gbar_es", gbar_es)] {
            if !v.is_finite() || v < 0.0 {
                return Err(Error::Domain(format!("{name} must be >= 0, got {v}")));
            }
        }
        if (gbar_ms == 0.0) != (gbar_es == 0.0) {
            return Err(Error::Domain(
                "gbar_ms and gbar_es must both be zero (Q = 0) or both positive".into(),
            ));
        }
        let (n_m, p) = (1.0, 1.0);
        let q = gbar_ms * n_m;
        let n_e = if gbar_es > 0.0 { q / gbar_es } else { 1.0 };
        Ok(Self {
            p,
            q,
            n_m,
            n_e,
            gbar_m,
            gbar_e,
            gbar_ms,
            gbar_es,
        })
    }

    /// As [`from_average_snrs`](Self::from_average_snrs), with dB inputs.
    pub fn from_average_snrs_db(
        gbar_m_db: f64,
        gbar_e_db: f64,
        gbar_ms_db: f64,
        gbar_es_db: f64,
    ) -> Result<Self> {
        Self::from_average_snrs(
            db_to_linear(gbar_m_db),
            db_to_linear(gbar_e_db),
            db_to_linear(gbar_ms_db),
            db_to_linear(gbar_es_db),
        )
    }
}

/// One realization of the pair of instantaneous SNRs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SnrPair {
    pub gamma_m: f64,
    pub gamma_e: f64,
}

impl SnrPair {
    pub fn new(gamma_m: f64, gamma_e: f64) -> Result<Self> {
        for (name, v) in [("gamma_m", gamma_m), ("gamma_e", gamma_e)] {
            if !v.is_finite() || v < 0.0 {
                return Err(Error::Domain(format!(
                    "{name} must be finite and >= 0, got {v}"
                )));
            }
        }
        Ok(Self { gamma_m, gamma_e })
    }
}

fn check_gbar(gbar: f64) -> Result<()> {
    if !gbar.is_finite() || gbar <= 0.0 {
        return Err(Error::Domain(format!("gbar must be > 0, got {gbar}")));
    }
    Ok(())
}

fn check_gamma(gamma: f64) -> Result<()> {
    if gamma.is_nan() || gamma < 0.0 {
        return Err(Error::Domain(format!("gamma must be >= 0, got {gamma}")));
    }
    Ok(())
}

/// Exponential SNR density (1/gbar) e^{-gamma/gbar}.
pub fn snr_marginal_pdf(gbar: f64, gamma: f64) -> Result<f64> {
    check_gbar(gbar)?;
    check_gamma(gamma)?;
    Ok((-gamma / gbar).exp() / gbar)
}

/// Exponential SNR CDF 1 - e^{-gamma/gbar}.
pub fn snr_marginal_cdf(gbar: f64, gamma: f64) -> Result<f64> {
    check_gbar(gbar)?;
    check_gamma(gamma)?;
    Ok(-f64::exp_m1(-gamma / gbar))
}

/// Joint SNR density of (gamma_m, gamma_e) under the given copula.
///
/// The FGM family uses its explicit product form
/// (e^{-gm/a - ge/b}/(a b)) [1 + theta (1 - 2e^{-gm/a})(1 - 2e^{-ge/b})];
/// every other density-bearing family goes through the generic Sklar
/// construction: marginal product times copula density at the marginal CDFs.
pub fn joint_snr_pdf(params: &WiretapParams, spec: &CopulaSpec, pair: &SnrPair) -> Result<f64> {
    if !spec.has_density() {
        return Err(Error::UnsupportedFamily {
            family: spec.family().label(),
            operation: "joint_snr_pdf",
        });
    }
    let (a, b) = (params.gbar_m, params.gbar_e);
    check_gbar(a)?;
    check_gbar(b)?;
    let (gm, ge) = (pair.gamma_m, pair.gamma_e);
    check_gamma(gm)?;
    check_gamma(ge)?;

    if spec.family() == CopulaFamily::Fgm {
        let theta = spec.param();
        let em = (-gm / a).exp();
        let ee = (-ge / b).exp();
        return Ok(em * ee / (a * b) * (1.0 + theta * (1.0 - 2.0 * em) * (1.0 - 2.0 * ee)));
    }

    let fm = snr_marginal_cdf(a, gm)?;
    let fe = snr_marginal_cdf(b, ge)?;
    let c = copula::copula_density(spec, &UnitPair::new(fm, fe)?)?;
    Ok(snr_marginal_pdf(a, gm)? * snr_marginal_pdf(b, ge)? * c)
}

/// Draw one correlated SNR pair by inverse-CDF transform of a copula sample:
/// gamma = -gbar ln(1 - u). Uses ln(1-u) so a drawn u = 0 stays finite.
pub fn sample_snr_pair<R: Rng + ?Sized>(
    params: &WiretapParams,
    spec: &CopulaSpec,
    rng: &mut R,
) -> Result<SnrPair> {
    let u = copula::sample_pair(spec, rng)?;
    let gamma_m = -params.gbar_m * f64::ln_1p(-u.u1());
    let gamma_e = -params.gbar_e * f64::ln_1p(-u.u2());
    SnrPair::new(gamma_m, gamma_e)
}
