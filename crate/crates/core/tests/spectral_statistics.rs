mod common;

use common::{integrate, ks_statistic, mean};
use dicke_chaos::sampling::{brody_spacings, poisson_levels, wigner_dyson_spacings};
use dicke_chaos::spectral_stats::{
    brody_cdf, brody_pdf, chaos_boundary, eta_indicator, fit_brody, goe_ratio_pdf, mean_ratio, poisson_pdf,
    poisson_ratio_pdf, spacing_ratios, unfold, wigner_dyson_pdf, GridValue, Indicator, MEAN_R_GOE, MEAN_R_POISSON,
};
use dicke_chaos::{BinRange, Error, Histogram};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const BETAS: [f64; 5] = [0.0, 0.25, 0.5, 0.75, 1.0];

#[test]
fn brody_family_is_normalized_with_unit_mean() {
    for beta in BETAS {
        let norm = integrate(&|s| brody_pdf(s, beta), 0.0, 40.0, 1e-10);
        let first = integrate(&|s| s * brody_pdf(s, beta), 0.0, 40.0, 1e-10);
        assert!((norm - 1.0).abs() < 1e-6, "beta {beta}: norm {norm}");
        assert!((first - 1.0).abs() < 1e-6, "beta {beta}: mean {first}");
        for s in [0.3, 1.0, 2.5] {
            let cdf = integrate(&|x| brody_pdf(x, beta), 0.0, s, 1e-12);
            assert!((brody_cdf(s, beta) - cdf).abs() < 1e-9);
        }
    }
}

#[test]
fn brody_endpoints_reduce_to_the_limits() {
    for k in 0..1000 {
        let s = 10.0 * k as f64 / 999.0;
        assert!((brody_pdf(s, 0.0) - poisson_pdf(s)).abs() < 1e-12);
        assert!((brody_pdf(s, 1.0) - wigner_dyson_pdf(s)).abs() < 1e-12);
    }
}

#[test]
fn ratio_densities_normalization_and_means() {
    let goe_norm = integrate(&goe_ratio_pdf, 0.0, 1.0, 1e-13);
    let poi_norm = integrate(&poisson_ratio_pdf, 0.0, 1.0, 1e-13);
    assert!((goe_norm - 1.0).abs() < 1e-10);
    assert!((poi_norm - 1.0).abs() < 1e-10);
    let goe_mean = integrate(&|r| r * goe_ratio_pdf(r), 0.0, 1.0, 1e-13);
    let poi_mean = integrate(&|r| r * poisson_ratio_pdf(r), 0.0, 1.0, 1e-13);
    assert!((poi_mean - (2.0 * 2f64.ln() - 1.0)).abs() < 1e-8);
    assert!((goe_mean - (4.0 - 2.0 * 3f64.sqrt())).abs() < 1e-8);
    assert!((MEAN_R_POISSON - poi_mean).abs() < 1e-8);
    assert!((MEAN_R_GOE - goe_mean).abs() < 1e-8);
    assert_eq!(goe_ratio_pdf(0.0), 0.0);
    assert!((goe_ratio_pdf(1.0) - 0.866_025).abs() < 1e-6);
    assert_eq!(poisson_ratio_pdf(1.0), 0.5);
    assert_eq!(goe_ratio_pdf(1.5), 0.0);
    assert_eq!(poisson_ratio_pdf(-0.1), 0.0);
}

#[test]
fn small_ratio_examples() {
    assert_eq!(spacing_ratios(&[0.0, 1.0, 2.0]).unwrap().ratios, vec![1.0]);
    assert_eq!(spacing_ratios(&[0.0, 1.0, 3.0]).unwrap().ratios, vec![0.5]);
    assert_eq!(mean_ratio(&[1.0; 50]).unwrap(), 1.0);
    assert!(matches!(mean_ratio(&[]), Err(Error::EmptyInput)));
    assert!(spacing_ratios(&[0.0, 1.0]).is_err());
    assert!(matches!(spacing_ratios(&[0.0, 2.0, 1.0]), Err(Error::NotAscending)));
    // a degenerate pair removes both ratios it takes part in
    let s = spacing_ratios(&[0.0, 1.0, 1.0, 2.5, 3.0]).unwrap();
    assert_eq!(s.n_dropped, 2);
    assert_eq!(s.ratios, vec![0.5 / 1.5]);
}

#[test]
fn picket_fence_unfolds_to_unit_spacing() {
    for h in [1e-3, 0.37, 12.0] {
        let levels: Vec<f64> = (0..300).map(|k| 5.0 + h * k as f64).collect();
        let u = unfold(&levels, 10).unwrap();
        assert!(u.spacings.iter().all(|s| (s - 1.0).abs() < 1e-6), "h = {h}");
    }
}

#[test]
fn unfolded_poisson_levels_follow_the_exponential() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let levels = poisson_levels(&mut rng, 10_000);
    let u = unfold(&levels, 10).unwrap();
    let ks = ks_statistic(&u.spacings, |s| 1.0 - (-s).exp());
    assert!(ks < 0.02, "KS = {ks}");
}

#[test]
fn unfolding_errors() {
    assert!(matches!(
        unfold(&[1.0; 5], 10),
        Err(Error::TooFewLevels { needed: 20, got: 5 })
    ));
    let desc: Vec<f64> = (0..40).rev().map(f64::from).collect();
    assert!(matches!(unfold(&desc, 10), Err(Error::NotAscending)));
}

#[test]
fn brody_fit_recovers_the_sampling_exponent() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let b0 = fit_brody(&brody_spacings(&mut rng, 0.0, 10_000)).unwrap().beta;
    let b1 = fit_brody(&brody_spacings(&mut rng, 1.0, 10_000)).unwrap().beta;
    let bh = fit_brody(&brody_spacings(&mut rng, 0.5, 10_000)).unwrap().beta;
    assert!(b0 < 0.05, "beta 0 -> {b0}");
    assert!(b1 > 0.95, "beta 1 -> {b1}");
    assert!((bh - 0.5).abs() < 0.05, "beta 0.5 -> {bh}");
}

#[test]
fn eta_separates_the_limits() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let wd = eta_indicator(&wigner_dyson_spacings(&mut rng, 100_000)).unwrap();
    let poi = eta_indicator(&brody_spacings(&mut rng, 0.0, 100_000)).unwrap();
    assert!(wd.eta < 0.05, "WD eta {}", wd.eta);
    assert!((poi.eta - 1.0).abs() < 0.05, "Poisson eta {}", poi.eta);
}

#[test]
fn eta_is_non_increasing_in_beta() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let etas: Vec<f64> = BETAS
        .iter()
        .map(|&b| eta_indicator(&brody_spacings(&mut rng, b, 100_000)).unwrap().eta)
        .collect();
    for w in etas.windows(2) {
        assert!(w[1] <= w[0] + 0.03, "{etas:?}");
    }
}

#[test]
fn poisson_ratio_histogram_matches_reference() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let levels = poisson_levels(&mut rng, 100_000);
    let ratios = spacing_ratios(&levels).unwrap().ratios;
    let h = Histogram::from_values(&ratios, BinRange::new(0.0, 1.0, 20).unwrap()).unwrap();
    for (i, e) in h.edges.windows(2).enumerate() {
        let expect = integrate(&poisson_ratio_pdf, e[0], e[1], 1e-12) / (e[1] - e[0]);
        assert!(
            (h.densities[i] - expect).abs() < 0.06,
            "bin {i}: {} vs {expect}",
            h.densities[i]
        );
    }
    let fine = Histogram::from_values(&ratios, BinRange::new(0.0, 1.0, 100).unwrap()).unwrap();
    assert!(
        (fine.densities[0] - 2.0).abs() < 0.1,
        "density near 0: {}",
        fine.densities[0]
    );
    assert!((mean(&ratios) - MEAN_R_POISSON).abs() < 0.005);
}

#[test]
fn boundary_examples() {
    let col = |k: f64, values: &[f64]| -> Vec<GridValue> {
        [0.1, 0.3, 0.5, 0.7]
            .iter()
            .zip(values)
            .map(|(&lambda, &value)| GridValue {
                kappa: k,
                lambda,
                value,
            })
            .collect()
    };
    let b = chaos_boundary(&col(0.0, &[0.9, 0.5, 0.2, 0.1]), Indicator::Eta, 0.3).unwrap();
    assert_eq!(b[0].lambda_star, Some(0.5));
    // a chaotic blip followed by a regular point does not count
    let b = chaos_boundary(&col(0.0, &[0.9, 0.2, 0.5, 0.1]), Indicator::Eta, 0.3).unwrap();
    assert_eq!(b[0].lambda_star, Some(0.7));
    let b = chaos_boundary(&col(0.0, &[0.3, 0.4, 0.45, 0.47]), Indicator::MeanR, 0.48).unwrap();
    assert_eq!(b[0].lambda_star, None);
    let b = chaos_boundary(&col(0.0, &[0.1, 0.2, f64::NAN, 0.9]), Indicator::Beta, 0.7).unwrap();
    assert_eq!(b[0].lambda_star, Some(0.7));

    let mut ragged = col(0.0, &[0.1, 0.2, 0.3, 0.4]);
    ragged.extend(col(1.0, &[0.1, 0.2, 0.3]));
    assert!(matches!(
        chaos_boundary(&ragged, Indicator::Eta, 0.3),
        Err(Error::NonRectangularGrid(_))
    ));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn unfolding_is_affine_invariant(seed in any::<u64>(), a in 0.01f64..100.0, b in -1e3f64..1e3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let levels = poisson_levels(&mut rng, 400);
        let moved: Vec<f64> = levels.iter().map(|e| a * e + b).collect();
        let u = unfold(&levels, 10).unwrap();
        let v = unfold(&moved, 10).unwrap();
        for (x, y) in u.spacings.iter().zip(&v.spacings) {
            prop_assert!((x - y).abs() < 1e-8);
        }
    }

    #[test]
    fn ratios_are_exactly_scale_invariant(seed in any::<u64>(), k in -20i32..20) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let levels = poisson_levels(&mut rng, 300);
        let scaled: Vec<f64> = levels.iter().map(|e| e * 2f64.powi(k)).collect();
        prop_assert_eq!(spacing_ratios(&levels).unwrap(), spacing_ratios(&scaled).unwrap());
    }

    #[test]
    fn ratios_are_affine_invariant(seed in any::<u64>(), a in 0.01f64..100.0, b in -100.0f64..100.0) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let levels = poisson_levels(&mut rng, 300);
        let moved: Vec<f64> = levels.iter().map(|e| a * e + b).collect();
        let r = spacing_ratios(&levels).unwrap().ratios;
        let q = spacing_ratios(&moved).unwrap().ratios;
        prop_assert_eq!(r.len(), q.len());
        for (x, y) in r.iter().zip(&q) {
            prop_assert!((x - y).abs() < 1e-9);
        }
    }

    #[test]
    fn indicators_stay_in_range(seed in any::<u64>(), beta in 0.0f64..=1.0) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = brody_spacings(&mut rng, beta, 500);
        let eta = eta_indicator(&s).unwrap();
        let fit = fit_brody(&s).unwrap();
        prop_assert!((0.0..=1.0).contains(&eta.eta));
        prop_assert!((0.0..=1.0).contains(&fit.beta));
        let levels: Vec<f64> = s.iter().scan(0.0, |acc, x| { *acc += x; Some(*acc) }).collect();
        let r = spacing_ratios(&levels).unwrap().ratios;
        prop_assert!(r.iter().all(|x| (0.0..=1.0).contains(x)));
    }
}
