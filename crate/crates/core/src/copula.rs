//! Bivariate copulas: FGM, Frank, independence, and the Frechet-Hoeffding
//! bounds.
//!
//! A copula C(u1, u2) is a CDF on the unit square with uniform margins; by
//! Sklar's theorem it carries the entire dependence structure of a pair of
//! random variables. The FGM family
//!
//!   C(u1, u2) = u1 u2 (1 + theta (1-u1)(1-u2)),   theta in [-1, 1]
//!
//! models weak positive/negative dependence with closed-form everything; the
//! one-parameter Frank family covers strong dependence (zeta in R \ {0}) and
//! is evaluated here through expm1/ln1p-stable formulations, with negative
//! zeta handled by the reflection C_{-z}(u1, u2) = u2 - C_z(1-u1, u2). The
//! Frechet bounds min(u1, u2) and max(u1+u2-1, 0) are exposed as CDF-only,
//! samplable families; their measure is singular so density requests fail.

use crate::error::{Error, Result};
use crate::quad;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha12Rng;

/// Largest admissible |zeta| for the Frank family. Keeps every intermediate
/// of the stable formulation inside normal f64 range.
pub const FRANK_ZETA_MAX: f64 = 700.0;

/// Supported copula families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CopulaFamily {
    Fgm,
    Frank,
    Independence,
    FrechetLower,
    FrechetUpper,
}

impl CopulaFamily {
    pub fn label(self) -> &'static str {
        match self {
            CopulaFamily::Fgm => "fgm",
            CopulaFamily::Frank => "frank",
            CopulaFamily::Independence => "independence",
            CopulaFamily::FrechetLower => "frechet_lower",
            CopulaFamily::FrechetUpper => "frechet_upper",
        }
    }
}

/// A copula family together with its dependence parameter.
///
/// The parameter is theta for FGM, zeta for Frank, and absent (stored as NaN)
/// for the parameter-free families.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CopulaSpec {
    family: CopulaFamily,
    param: f64,
}

impl CopulaSpec {
    /// FGM copula with dependence parameter theta in [-1, 1].
    pub fn fgm(theta: f64) -> Result<Self> {
        if !theta.is_finite() || !(-1.0..=1.0).contains(&theta) {
            return Err(Error::Param(format!(
                "FGM theta must lie in [-1, 1], got {theta}"
            )));
        }
        Ok(Self {
            family: CopulaFamily::Fgm,
            param: theta,
        })
    }

    /// Frank copula with dependence parameter zeta in R \ {0}, |zeta| <= 700.
    pub fn frank(zeta: f64) -> Result<Self> {
        if !zeta.is_finite() || zeta == 0.0 || zeta.abs() > FRANK_ZETA_MAX {
            return Err(Error::Param(format!(
                "Frank zeta must be nonzero with |zeta| <= {FRANK_ZETA_MAX}, got {zeta}"
            )));
        }
        Ok(Self {
            family: CopulaFamily::Frank,
            param: zeta,
        })
    }

    pub fn independence() -> Self {
        Self {
            family: CopulaFamily::Independence,
            param: f64::NAN,
        }
    }

    pub fn frechet_lower() -> Self {
        Self {
            family: CopulaFamily::FrechetLower,
            param: f64::NAN,
        }
    }

    pub fn frechet_upper() -> Self {
        Self {
            family: CopulaFamily::FrechetUpper,
            param: f64::NAN,
        }
    }

    pub fn family(&self) -> CopulaFamily {
        self.family
    }

    /// Dependence parameter; NaN for the parameter-free families.
    pub fn param(&self) -> f64 {
        self.param
    }

    /// Whether the family has an absolutely continuous density.
    pub fn has_density(&self) -> bool {
        !matches!(
            self.family,
            CopulaFamily::FrechetLower | CopulaFamily::FrechetUpper
        )
    }
}

/// A point of the unit square.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitPair {
    u1: f64,
    u2: f64,
}

impl UnitPair {
    pub fn new(u1: f64, u2: f64) -> Result<Self> {
        for (name, v) in [("u1", u1), ("u2", u2)] {
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::Domain(format!("{name} must lie in [0, 1], got {v}")));
            }
        }
        Ok(Self { u1, u2 })
    }

    pub fn u1(&self) -> f64 {
        self.u1
    }

    pub fn u2(&self) -> f64 {
        self.u2
    }
}

// ---------------------------------------------------------------------------
// Frank internals (zeta > 0 throughout; negative zeta enters via reflection)
// ---------------------------------------------------------------------------

/// d - p*q with d = 1-e^{-z}, p = 1-e^{-zu}, q = 1-e^{-zv}, rewritten as a sum
/// of nonnegative terms so the near-comonotone corner keeps full precision:
/// d - pq = e^{-z} d + delta_u q + d delta_v, delta_x = e^{-zx} - e^{-z}.
fn frank_d_minus_pq(z: f64, u: f64, v: f64) -> f64 {
    let d = -f64::exp_m1(-z);
    let q = -f64::exp_m1(-z * v);
    let delta_u = (-z * u).exp() * (-f64::exp_m1(-z * (1.0 - u)));
    let delta_v = (-z * v).exp() * (-f64::exp_m1(-z * (1.0 - v)));
    (-z).exp() * d + delta_u * q + d * delta_v
}

fn frank_cdf_pos(z: f64, u: f64, v: f64) -> f64 {
    if u == 0.0 || v == 0.0 {
        return 0.0;
    }
    let d = -f64::exp_m1(-z);
    (d / frank_d_minus_pq(z, u, v)).ln() / z
}

fn frank_density_pos(z: f64, u: f64, v: f64) -> f64 {
    let d = -f64::exp_m1(-z);
    let t = frank_d_minus_pq(z, u, v);
    // Log-space keeps the large-|zeta| corners finite.
    ((z * d).ln() - z * (u + v) - 2.0 * t.ln()).exp()
}

/// Conditional CDF h(v | u) = dC/du at (u, v).
fn frank_conditional_pos(z: f64, u: f64, v: f64) -> f64 {
    let q = -f64::exp_m1(-z * v);
    ((-z * u) - frank_d_minus_pq(z, u, v).ln() + q.ln()).exp()
}

/// Inverse of h(. | u) at probability p, in closed form:
/// v = (1/z) [ln(e^{-zu} + p(1-e^{-zu})) - ln((1-p)e^{-zu} + p e^{-z})].
fn frank_quantile_pos(z: f64, u: f64, p: f64) -> f64 {
    if p == 0.0 {
        return 0.0;
    }
    if p == 1.0 {
        return 1.0;
    }
    let eu = (-z * u).exp();
    let pu = -f64::exp_m1(-z * u);
    let num = eu + p * pu;
    let den = (1.0 - p) * eu + p * (-z).exp();
    ((num.ln() - den.ln()) / z).clamp(0.0, 1.0)
}

// ---------------------------------------------------------------------------
// Public operations
// ---------------------------------------------------------------------------

/// Copula CDF C(u1, u2).
pub fn copula_cdf(spec: &CopulaSpec, p: &UnitPair) -> Result<f64> {
    let (u, v) = (p.u1, p.u2);
    Ok(match spec.family {
        CopulaFamily::Independence => u * v,
        CopulaFamily::FrechetLower => (u + v - 1.0).max(0.0),
        CopulaFamily::FrechetUpper => u.min(v),
        CopulaFamily::Fgm => u * v * (1.0 + spec.param * (1.0 - u) * (1.0 - v)),
        CopulaFamily::Frank => {
            let z = spec.param;
            if z > 0.0 {
                frank_cdf_pos(z, u, v)
            } else {
                v - frank_cdf_pos(-z, 1.0 - u, v)
            }
        }
    })
}

/// Copula density c(u1, u2) = d^2 C / du1 du2.
///
/// Fails for the Frechet bounds: their probability mass lives on a line, so
/// no density exists.
pub fn copula_density(spec: &CopulaSpec, p: &UnitPair) -> Result<f64> {
    let (u, v) = (p.u1, p.u2);
    match spec.family {
        CopulaFamily::Independence => Ok(1.0),
        CopulaFamily::Fgm => Ok(1.0 + spec.param * (1.0 - 2.0 * u) * (1.0 - 2.0 * v)),
        CopulaFamily::Frank => {
            let z = spec.param;
            Ok(if z > 0.0 {
                frank_density_pos(z, u, v)
            } else {
                frank_density_pos(-z, 1.0 - u, v)
            })
        }
        CopulaFamily::FrechetLower | CopulaFamily::FrechetUpper => Err(Error::UnsupportedFamily {
            family: spec.family.label(),
            operation: "copula_density",
        }),
    }
}

/// Conditional CDF h(u2 | u1) = dC(u1, u2)/du1, used by the sampler and the
/// quantile inversion tests.
pub fn conditional_cdf(spec: &CopulaSpec, u1: f64, u2: f64) -> Result<f64> {
    let p = UnitPair::new(u1, u2)?;
    let (u, v) = (p.u1, p.u2);
    Ok(match spec.family {
        CopulaFamily::Independence => v,
        CopulaFamily::FrechetUpper => {
            if v >= u {
                1.0
            } else {
                0.0
            }
        }
        CopulaFamily::FrechetLower => {
            if v >= 1.0 - u {
                1.0
            } else {
                0.0
            }
        }
        CopulaFamily::Fgm => v + spec.param * (1.0 - 2.0 * u) * v * (1.0 - v),
        CopulaFamily::Frank => {
            let z = spec.param;
            if z > 0.0 {
                frank_conditional_pos(z, u, v)
            } else {
                frank_conditional_pos(-z, 1.0 - u, v)
            }
        }
    })
}

/// Solve dC(u1, u2)/du1 = p for u2 (conditional-inverse sampling step).
///
/// For FGM this is the root in [0, 1] of a*u2^2 - (1+a)*u2 + p = 0 with
/// a = theta(1 - 2 u1), evaluated through the cancellation-free conjugate
/// form 2p / (1 + a + sqrt((1+a)^2 - 4ap)).
pub fn conditional_quantile(spec: &CopulaSpec, u1: f64, p: f64) -> Result<f64> {
    for (name, v) in [("u1", u1), ("p", p)] {
        if !(0.0..=1.0).contains(&v) {
            return Err(Error::Domain(format!("{name} must lie in [0, 1], got {v}")));
        }
    }
    let v = match spec.family {
        CopulaFamily::Independence => p,
        CopulaFamily::FrechetUpper => u1,
        CopulaFamily::FrechetLower => 1.0 - u1,
        CopulaFamily::Fgm => {
            let a = spec.param * (1.0 - 2.0 * u1);
            let disc = (1.0 + a) * (1.0 + a) - 4.0 * a * p;
            if disc < 0.0 {
                return Err(Error::NoRoot(format!(
                    "FGM conditional quantile discriminant {disc} < 0 at u1={u1}, p={p}"
                )));
            }
            let denom = 1.0 + a + disc.sqrt();
            if denom <= 0.0 {
                return Err(Error::NoRoot(format!(
                    "FGM conditional quantile degenerate denominator at u1={u1}, p={p}"
                )));
            }
            2.0 * p / denom
        }
        CopulaFamily::Frank => {
            let z = spec.param;
            if z > 0.0 {
                frank_quantile_pos(z, u1, p)
            } else {
                frank_quantile_pos(-z, 1.0 - u1, p)
            }
        }
    };
    if !(-1e-12..=1.0 + 1e-12).contains(&v) {
        return Err(Error::NoRoot(format!(
            "conditional quantile {v} outside [0, 1] for u1={u1}, p={p}"
        )));
    }
    Ok(v.clamp(0.0, 1.0))
}

/// Draw one dependent pair: u1 ~ U(0,1), then u2 from the conditional
/// quantile at a second independent uniform.
pub fn sample_pair<R: Rng + ?Sized>(spec: &CopulaSpec, rng: &mut R) -> Result<UnitPair> {
    let u1: f64 = rng.random();
    let p: f64 = rng.random();
    let u2 = conditional_quantile(spec, u1, p)?;
    UnitPair::new(u1, u2)
}

/// How to estimate the linear correlation coefficient.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RhoMethod {
    /// Sample-correlation estimate over `n` copula-coupled exponential draws.
    MonteCarlo { n: u64, seed: u64 },
    /// Hoeffding-identity quadrature to the given absolute tolerance.
    Quadrature { tol: f64 },
}

/// Pearson-rho estimate with an uncertainty figure (standard error for
/// Monte-Carlo, quadrature tolerance otherwise).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RhoEstimate {
    pub rho: f64,
    pub std_error: f64,
}

/// Pearson correlation rho = cov(X, Y) / sqrt(var X var Y) of two exponential
/// variates with the given means, coupled by the copula.
///
/// Pearson rho of exponentials is invariant under rescaling of either
/// marginal, so the means only need to be positive.
pub fn pearson_rho(
    spec: &CopulaSpec,
    marginal_mean_1: f64,
    marginal_mean_2: f64,
    method: RhoMethod,
) -> Result<RhoEstimate> {
    for (name, m) in [
        ("marginal_mean_1", marginal_mean_1),
        ("marginal_mean_2", marginal_mean_2),
    ] {
        if !m.is_finite() || m <= 0.0 {
            return Err(Error::Domain(format!("{name} must be > 0, got {m}")));
        }
    }
    match method {
        RhoMethod::Quadrature { tol } => {
            if !spec.has_density() && spec.family != CopulaFamily::Independence {
                return Err(Error::UnsupportedFamily {
                    family: spec.family.label(),
                    operation: "pearson_rho quadrature",
                });
            }
            let rho = rho_by_hoeffding(spec, tol)?;
            Ok(RhoEstimate {
                rho,
                std_error: tol,
            })
        }
        RhoMethod::MonteCarlo { n, seed } => {
            if n == 0 {
                return Err(Error::Param("Monte-Carlo n must be >= 1".into()));
            }
            rho_by_sampling(spec, n, seed)
        }
    }
}

/// Hoeffding's identity in marginal coordinates: for unit-mean exponentials
/// cov = int int [C(F(x), F(y)) - F(x) F(y)] dx dy over the positive
/// quadrant, and var = 1, so rho equals the double integral.
fn rho_by_hoeffding(spec: &CopulaSpec, tol: f64) -> Result<f64> {
    let spec = *spec;
    let inner_tol = tol / 10.0;
    let outer = |x: f64| -> f64 {
        let fx = -f64::exp_m1(-x);
        let inner = |y: f64| -> f64 {
            let fy = -f64::exp_m1(-y);
            let p = UnitPair::new(fx.clamp(0.0, 1.0), fy.clamp(0.0, 1.0)).unwrap();
            copula_cdf(&spec, &p).unwrap() - fx * fy
        };
        quad::integrate_semi_infinite(inner, 0.0, 1.0, inner_tol)
            .map(|r| r.value)
            .unwrap_or(f64::NAN)
    };
    let r = quad::integrate_semi_infinite(outer, 0.0, 1.0, tol)?;
    if !r.value.is_finite() {
        return Err(Error::ToleranceNotMet {
            requested: tol,
            achieved: f64::INFINITY,
        });
    }
    Ok(r.value)
}

fn rho_by_sampling(spec: &CopulaSpec, n: u64, seed: u64) -> Result<RhoEstimate> {
    // Batch means over fixed-size chunks, one ChaCha stream per chunk. The
    // pooled moments give the estimate; the spread of per-chunk correlations
    // gives a standard error that stays honest for the heavy-tailed
    // exponential marginals (the textbook (1-rho^2)/sqrt(n) understates it).
    const CHUNK: u64 = 1 << 16;
    let chunks = n.div_ceil(CHUNK);
    let (mut sx, mut sy, mut sxx, mut syy, mut sxy) = (0.0, 0.0, 0.0, 0.0, 0.0);
    let mut chunk_rhos = Vec::with_capacity(chunks as usize);
    for chunk in 0..chunks {
        let mut rng = ChaCha12Rng::seed_from_u64(seed);
        rng.set_stream(chunk);
        let count = CHUNK.min(n - chunk * CHUNK);
        let (mut cx, mut cy, mut cxx, mut cyy, mut cxy) = (0.0, 0.0, 0.0, 0.0, 0.0);
        for _ in 0..count {
            let p = sample_pair(spec, &mut rng)?;
            // Unit-mean exponential transforms (rho is scale-invariant).
            let x = -f64::ln_1p(-p.u1);
            let y = -f64::ln_1p(-p.u2);
            cx += x;
            cy += y;
            cxx += x * x;
            cyy += y * y;
            cxy += x * y;
        }
        let m = count as f64;
        let (mx, my) = (cx / m, cy / m);
        let vx = cxx / m - mx * mx;
        let vy = cyy / m - my * my;
        if count > 1 && vx > 0.0 && vy > 0.0 {
            chunk_rhos.push((cxy / m - mx * my) / (vx * vy).sqrt());
        }
        sx += cx;
        sy += cy;
        sxx += cxx;
        syy += cyy;
        sxy += cxy;
    }
    let nf = n as f64;
    let mx = sx / nf;
    let my = sy / nf;
    let vx = sxx / nf - mx * mx;
    let vy = syy / nf - my * my;
    let rho = (sxy / nf - mx * my) / (vx * vy).sqrt();
    let k = chunk_rhos.len();
    let std_error = if k >= 2 {
        let mean = chunk_rhos.iter().sum::<f64>() / k as f64;
        let var = chunk_rhos.iter().map(|r| (r - mean) * (r - mean)).sum::<f64>()
            / (k as f64 - 1.0);
        (var / k as f64).sqrt()
    } else {
        (1.0 - rho * rho).abs() / nf.sqrt()
    };
    Ok(RhoEstimate { rho, std_error })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn up(u: f64, v: f64) -> UnitPair {
        UnitPair::new(u, v).unwrap()
    }

    #[test]
    fn spec_validation() {
        assert!(CopulaSpec::fgm(1.0).is_ok());
        assert!(CopulaSpec::fgm(1.5).is_err());
        assert!(CopulaSpec::fgm(f64::NAN).is_err());
        assert!(CopulaSpec::frank(35.0).is_ok());
        assert!(CopulaSpec::frank(0.0).is_err());
        assert!(CopulaSpec::frank(701.0).is_err());
    }

    #[test]
    fn fgm_cdf_values() {
        let ind = CopulaSpec::fgm(0.0).unwrap();
        assert!((copula_cdf(&ind, &up(0.3, 0.5)).unwrap() - 0.15).abs() < 1e-15);
        let c = CopulaSpec::fgm(1.0).unwrap();
        assert!((copula_cdf(&c, &up(0.5, 0.5)).unwrap() - 0.3125).abs() < 1e-15);
    }

    #[test]
    fn uniform_margins_all_families() {
        let specs = [
            CopulaSpec::fgm(0.7).unwrap(),
            CopulaSpec::frank(-5.0).unwrap(),
            CopulaSpec::frank(35.0).unwrap(),
            CopulaSpec::independence(),
            CopulaSpec::frechet_lower(),
            CopulaSpec::frechet_upper(),
        ];
        for spec in &specs {
            for &u in &[0.0, 0.2, 0.7, 1.0] {
                let a = copula_cdf(spec, &up(u, 1.0)).unwrap();
                let b = copula_cdf(spec, &up(1.0, u)).unwrap();
                assert!((a - u).abs() < 1e-12, "{spec:?} C({u},1) = {a}");
                assert!((b - u).abs() < 1e-12, "{spec:?} C(1,{u}) = {b}");
                assert!(copula_cdf(spec, &up(u, 0.0)).unwrap().abs() < 1e-15);
                assert!(copula_cdf(spec, &up(0.0, u)).unwrap().abs() < 1e-15);
            }
        }
    }

    #[test]
    fn fgm_density_corners() {
        let c = CopulaSpec::fgm(1.0).unwrap();
        assert!((copula_density(&c, &up(0.0, 0.0)).unwrap() - 2.0).abs() < 1e-15);
        assert!((copula_density(&c, &up(1.0, 0.0)).unwrap() - 0.0).abs() < 1e-15);
        let ind = CopulaSpec::independence();
        assert!((copula_density(&ind, &up(0.3, 0.9)).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn frechet_density_rejected() {
        for spec in [CopulaSpec::frechet_lower(), CopulaSpec::frechet_upper()] {
            let err = copula_density(&spec, &up(0.5, 0.5)).unwrap_err();
            assert!(matches!(err, Error::UnsupportedFamily { .. }));
        }
    }

    #[test]
    fn conditional_quantile_known_points() {
        let ind = CopulaSpec::independence();
        assert!((conditional_quantile(&ind, 0.42, 0.7).unwrap() - 0.7).abs() < 1e-15);

        // a = 0 at u1 = 0.5, conditional equals marginal
        let c = CopulaSpec::fgm(0.8).unwrap();
        assert!((conditional_quantile(&c, 0.5, 0.3).unwrap() - 0.3).abs() < 1e-15);

        // theta = 1, u1 = 0: root of u2^2 - 2 u2 + 0.5 -> 1 - sqrt(0.5)
        let c1 = CopulaSpec::fgm(1.0).unwrap();
        let v = conditional_quantile(&c1, 0.0, 0.5).unwrap();
        assert!((v - (1.0 - 0.5_f64.sqrt())).abs() < 1e-14, "got {v}");
    }

    #[test]
    fn conditional_quantile_inverts_conditional_cdf() {
        let specs = [
            CopulaSpec::fgm(1.0).unwrap(),
            CopulaSpec::fgm(-0.6).unwrap(),
            CopulaSpec::frank(35.0).unwrap(),
            CopulaSpec::frank(-35.0).unwrap(),
            CopulaSpec::frank(1e-4).unwrap(),
        ];
        for spec in &specs {
            for &u1 in &[0.05, 0.3, 0.5, 0.77, 0.99] {
                for &p in &[0.01, 0.25, 0.5, 0.9, 0.999] {
                    let v = conditional_quantile(spec, u1, p).unwrap();
                    let h = conditional_cdf(spec, u1, v).unwrap();
                    assert!(
                        (h - p).abs() < 1e-9,
                        "{spec:?}: h(q({u1},{p})|{u1}) = {h} != {p}"
                    );
                }
            }
        }
    }

    #[test]
    fn frank_quantile_matches_bisection() {
        for &z in &[7.5, -12.0, 35.0, -35.0] {
            let spec = CopulaSpec::frank(z).unwrap();
            for &u1 in &[0.1, 0.5, 0.9] {
                for &p in &[0.2, 0.5, 0.8] {
                    let closed = conditional_quantile(&spec, u1, p).unwrap();
                    // Bisection on the conditional CDF as an independent check.
                    let (mut lo, mut hi) = (0.0, 1.0);
                    for _ in 0..80 {
                        let mid = 0.5 * (lo + hi);
                        if conditional_cdf(&spec, u1, mid).unwrap() < p {
                            lo = mid;
                        } else {
                            hi = mid;
                        }
                    }
                    let bis = 0.5 * (lo + hi);
                    assert!(
                        (closed - bis).abs() < 1e-10,
                        "zeta={z} u1={u1} p={p}: closed {closed} vs bisection {bis}"
                    );
                }
            }
        }
    }

    #[test]
    fn frank_reflection_consistency() {
        // C_{-z}(u, v) = v - C_z(1-u, v) is the defining reflection; spot
        // check the small-|z| regime where both sides are directly computable.
        for &z in &[0.5, 3.0, 20.0] {
            let neg = CopulaSpec::frank(-z).unwrap();
            for &(u, v) in &[(0.2, 0.7), (0.5, 0.5), (0.9, 0.1)] {
                let direct = {
                    // Textbook formula, safe at moderate |z|.
                    let zz = -z;
                    -((f64::exp_m1(-zz * u) * f64::exp_m1(-zz * v)) / f64::exp_m1(-zz)).ln_1p()
                        / zz
                };
                let ours = copula_cdf(&neg, &up(u, v)).unwrap();
                assert!(
                    (direct - ours).abs() < 1e-12,
                    "zeta=-{z} at ({u},{v}): {ours} vs textbook {direct}"
                );
            }
        }
    }

    #[test]
    fn frank_zeta_to_zero_approaches_independence() {
        let tiny = CopulaSpec::frank(1e-8).unwrap();
        for i in 0..=10 {
            for j in 0..=10 {
                let (u, v) = (i as f64 / 10.0, j as f64 / 10.0);
                let c = copula_cdf(&tiny, &up(u, v)).unwrap();
                assert!((c - u * v).abs() < 1e-6, "C({u},{v}) = {c} vs {}", u * v);
            }
        }
    }

    #[test]
    fn frank_extreme_zeta_stays_finite() {
        for &z in &[700.0, -700.0] {
            let spec = CopulaSpec::frank(z).unwrap();
            for &(u, v) in &[(0.01, 0.01), (0.5, 0.5), (0.99, 0.99), (0.99, 0.01)] {
                let c = copula_cdf(&spec, &up(u, v)).unwrap();
                assert!(c.is_finite() && (0.0..=1.0).contains(&c), "C = {c}");
                let d = copula_density(&spec, &up(u, v)).unwrap();
                assert!(d.is_finite() && d >= 0.0, "c = {d}");
                let q = conditional_quantile(&spec, u, v).unwrap();
                assert!((0.0..=1.0).contains(&q));
            }
        }
    }

    #[test]
    fn frechet_sampling_is_deterministic_transform() {
        let upper = CopulaSpec::frechet_upper();
        let lower = CopulaSpec::frechet_lower();
        let mut rng = ChaCha12Rng::seed_from_u64(9);
        for _ in 0..100 {
            let p = sample_pair(&upper, &mut rng).unwrap();
            assert_eq!(p.u1(), p.u2());
            let q = sample_pair(&lower, &mut rng).unwrap();
            assert!((q.u1() + q.u2() - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn sampling_reproducible_per_seed() {
        let spec = CopulaSpec::fgm(0.9).unwrap();
        let mut a = ChaCha12Rng::seed_from_u64(1234);
        let mut b = ChaCha12Rng::seed_from_u64(1234);
        for _ in 0..50 {
            let pa = sample_pair(&spec, &mut a).unwrap();
            let pb = sample_pair(&spec, &mut b).unwrap();
            assert_eq!(pa, pb);
        }
    }

    #[test]
    fn fgm_rho_is_quarter_theta() {
        for &theta in &[-1.0, -0.5, 0.5, 1.0] {
            let spec = CopulaSpec::fgm(theta).unwrap();
            let est = pearson_rho(&spec, 1.0, 2.0, RhoMethod::Quadrature { tol: 1e-9 }).unwrap();
            assert!(
                (est.rho - theta / 4.0).abs() < 1e-7,
                "theta={theta}: rho={}",
                est.rho
            );
        }
    }

    #[test]
    fn rho_quadrature_rejected_for_frechet() {
        let err = pearson_rho(
            &CopulaSpec::frechet_upper(),
            1.0,
            1.0,
            RhoMethod::Quadrature { tol: 1e-8 },
        )
        .unwrap_err();
        assert!(matches!(err, Error::UnsupportedFamily { .. }));
    }

    #[test]
    fn rho_mc_and_quadrature_agree_for_frank() {
        let spec = CopulaSpec::frank(5.0).unwrap();
        let q = pearson_rho(&spec, 1.0, 1.0, RhoMethod::Quadrature { tol: 1e-8 }).unwrap();
        let mc = pearson_rho(&spec, 1.0, 1.0, RhoMethod::MonteCarlo { n: 200_000, seed: 7 })
            .unwrap();
        assert!(
            (q.rho - mc.rho).abs() < 4.0 * mc.std_error.max(2e-3),
            "quad {} vs mc {} (se {})",
            q.rho,
            mc.rho,
            mc.std_error
        );
    }

    #[test]
    fn independence_rho_is_zero() {
        let est = pearson_rho(
            &CopulaSpec::independence(),
            1.0,
            1.0,
            RhoMethod::Quadrature { tol: 1e-10 },
        )
        .unwrap();
        assert!(est.rho.abs() < 1e-9);
    }
}
