//! Sklar consistency of the joint SNR density: margins, normalization, and
//! sampler/density agreement.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha12Rng;
use secperf_core::channel::{
    joint_snr_pdf, sample_snr_pair, snr_marginal_cdf, snr_marginal_pdf, SnrPair, WiretapParams,
};
use secperf_core::copula::CopulaSpec;
use secperf_core::quad;

fn density_specs() -> Vec<CopulaSpec> {
    vec![
        CopulaSpec::fgm(-1.0).unwrap(),
        CopulaSpec::fgm(1.0).unwrap(),
        CopulaSpec::frank(-35.0).unwrap(),
        CopulaSpec::frank(35.0).unwrap(),
        CopulaSpec::independence(),
    ]
}

#[test]
fn integrating_out_eve_recovers_main_marginal() {
    let params = WiretapParams::from_average_snrs(2.0, 0.8, 0.0, 0.0).unwrap();
    for spec in density_specs() {
        for &gm in &[0.1, 0.5, 1.0, 2.0, 5.0] {
            let marginal = quad::integrate_semi_infinite(
                |ge| {
                    joint_snr_pdf(&params, &spec, &SnrPair { gamma_m: gm, gamma_e: ge }).unwrap()
                },
                0.0,
                params.gbar_e,
                1e-10,
            )
            .unwrap()
            .value;
            let expected = snr_marginal_pdf(params.gbar_m, gm).unwrap();
            assert!(
                (marginal - expected).abs() <= 1e-8,
                "{spec:?} at gm={gm}: {marginal} vs {expected}"
            );
        }
    }
}

#[test]
fn joint_density_normalizes() {
    let params = WiretapParams::from_average_snrs(3.0, 0.5, 0.0, 0.0).unwrap();
    for spec in density_specs() {
        let outer = |gm: f64| {
            quad::integrate_semi_infinite(
                |ge| {
                    joint_snr_pdf(&params, &spec, &SnrPair { gamma_m: gm, gamma_e: ge }).unwrap()
                },
                0.0,
                params.gbar_e,
                1e-11,
            )
            .unwrap()
            .value
        };
        let total = quad::integrate_semi_infinite(outer, 0.0, params.gbar_m, 1e-9)
            .unwrap()
            .value;
        assert!((total - 1.0).abs() <= 1e-8, "{spec:?}: mass {total}");
    }
}

#[test]
fn histogram_agrees_with_density() {
    // 8x8 grid with equal-probability marginal edges; each bin's sample count
    // must sit within 4 standard errors of the density-predicted mass.
    let params = WiretapParams::from_average_snrs(2.0, 1.0, 0.0, 0.0).unwrap();
    let spec = CopulaSpec::fgm(1.0).unwrap();
    let n = 1_000_000_u64;

    let edges = |gbar: f64| -> Vec<f64> {
        let mut e: Vec<f64> = (0..8)
            .map(|i| -gbar * f64::ln_1p(-(i as f64) / 8.0))
            .collect();
        e.push(f64::INFINITY);
        e
    };
    let em = edges(params.gbar_m);
    let ee = edges(params.gbar_e);

    // Predicted bin mass via copula CDF rectangle sums (exact, no quadrature).
    let cdf2 = |gm: f64, ge: f64| -> f64 {
        if gm <= 0.0 || ge <= 0.0 {
            return 0.0;
        }
        let u = if gm.is_finite() {
            snr_marginal_cdf(params.gbar_m, gm).unwrap()
        } else {
            1.0
        };
        let v = if ge.is_finite() {
            snr_marginal_cdf(params.gbar_e, ge).unwrap()
        } else {
            1.0
        };
        secperf_core::copula::copula_cdf(&spec, &secperf_core::copula::UnitPair::new(u, v).unwrap())
            .unwrap()
    };

    let mut counts = [[0_u64; 8]; 8];
    let mut rng = ChaCha12Rng::seed_from_u64(31_337);
    for _ in 0..n {
        let s = sample_snr_pair(&params, &spec, &mut rng).unwrap();
        let i = em.windows(2).position(|w| s.gamma_m >= w[0] && s.gamma_m < w[1]);
        let j = ee.windows(2).position(|w| s.gamma_e >= w[0] && s.gamma_e < w[1]);
        if let (Some(i), Some(j)) = (i, j) {
            counts[i][j] += 1;
        }
    }

    for i in 0..8 {
        for j in 0..8 {
            let p = cdf2(em[i + 1], ee[j + 1]) - cdf2(em[i], ee[j + 1]) - cdf2(em[i + 1], ee[j])
                + cdf2(em[i], ee[j]);
            let mean = n as f64 * p;
            let sd = (n as f64 * p * (1.0 - p)).sqrt();
            let c = counts[i][j] as f64;
            assert!(
                (c - mean).abs() <= 4.0 * sd,
                "bin ({i},{j}): count {c} vs expected {mean} (sd {sd})"
            );
        }
    }
}
