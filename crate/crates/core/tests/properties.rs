#![allow(clippy::excessive_precision)]

use lrd_core::{
    conditional_range_prob, equilibrium_pi, equilibrium_tail, generate, hurst_to_alpha, jump_prob,
    jump_tail, map_generate, map_step, validity_threshold, MapParams, MapSource, MarkovSource,
    ModelParams,
};
use proptest::prelude::*;

fn valid_params() -> impl Strategy<Value = ModelParams> {
    (0.05f64..0.95, 0.01f64..0.99, any::<u64>()).prop_map(|(a, frac, seed)| {
        let t = validity_threshold(a);
        ModelParams::new(t + frac * (1.0 - t), a, seed).unwrap()
    })
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}

// 30-digit evaluations of the closed forms.
#[test]
fn law_matches_high_precision_values() {
    let cases: [(f64, f64, [f64; 5], f64); 3] = [
        (
            0.5,
            0.5,
            [
                std::f64::consts::FRAC_1_SQRT_2,
                0.16313670681653071571,
                0.0018802114561235701608,
                2.3657910568052789285e-8,
                7.4999812500382811749e-16,
            ],
            0.0073582107195371552765,
        ),
        (
            0.3,
            0.25,
            [
                0.62875830225866724745,
                0.18209999533638141925,
                0.0033257409497554161689,
                1.2937501011808229195e-7,
                2.3058222724374929484e-14,
            ],
            0.0092685868899656547624,
        ),
        (
            0.7,
            0.9,
            [
                0.80109431340063420388,
                0.12868611234643216494,
                0.00070530540420325239705,
                1.4580113638296281465e-9,
                2.9175483747321977574e-18,
            ],
            0.0031046273935484538159,
        ),
    ];
    for (pi0, a, f, pi10) in cases {
        let p = ModelParams::new(pi0, a, 0).unwrap();
        for (k, want) in [0u64, 1, 10, 1000, 1_000_000].into_iter().zip(f) {
            let got = jump_prob(k, &p);
            assert!(
                rel(got, want) < 1e-12,
                "f_{k} at ({pi0}, {a}): {got} vs {want}"
            );
        }
        assert!(rel(equilibrium_pi(10, &p), pi10) < 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn jump_law_is_a_distribution(p in valid_params(), k in 1u64..100_000) {
        let head: f64 = (0..k).map(|i| jump_prob(i, &p)).sum();
        prop_assert!((head + jump_tail(k, &p) - 1.0).abs() < 1e-9);
        prop_assert!(jump_prob(k, &p) >= 0.0);
        prop_assert!(jump_tail(k, &p) >= jump_tail(k + 1, &p));
    }

    #[test]
    fn equilibrium_balances(p in valid_params(), k in 1u64..1_000_000) {
        let lhs = equilibrium_pi(k, &p);
        let rhs = equilibrium_pi(k + 1, &p) + p.pi0() * jump_prob(k, &p);
        prop_assert!(rel(lhs, rhs) < 1e-10);
        let tail = equilibrium_tail(k, &p);
        prop_assert!(rel(tail, equilibrium_pi(k, &p) + equilibrium_tail(k + 1, &p)) < 1e-12);
    }

    #[test]
    fn conditional_range_matches_tail_ratio(p in valid_params(), k in 1u64..1000, di in 0u64..1000, dj in 0u64..1000) {
        let (i, j) = (k + di, k + di + dj);
        let got = conditional_range_prob(i, j, k, &p).unwrap();
        let want = (jump_tail(i, &p) - jump_tail(j + 1, &p)) / jump_tail(k, &p);
        prop_assert!((got - want).abs() < 1e-9, "{} vs {}", got, want);
    }

    #[test]
    fn fill_is_split_invariant(p in valid_params(), n in 1usize..5000, cut in 0usize..5000) {
        let cut = cut.min(n);
        let whole = generate(&p, n).unwrap();
        let mut src = MarkovSource::new(p).unwrap();
        let mut parts = vec![0u8; n];
        src.fill(&mut parts[..cut]).unwrap();
        src.fill(&mut parts[cut..]).unwrap();
        prop_assert_eq!(whole.symbols(), &parts[..]);
    }

    #[test]
    fn block_sums_count_the_same_symbols(p in valid_params(), block in 1u64..50, count in 1usize..100) {
        let n = block as usize * count;
        let symbols = generate(&p, n).unwrap();
        let sums = MarkovSource::new(p).unwrap().block_sums(block, count).unwrap();
        for (s, chunk) in sums.iter().zip(symbols.symbols().chunks(block as usize)) {
            prop_assert_eq!(*s, chunk.iter().map(|&b| b as f64).sum::<f64>());
        }
    }

    #[test]
    fn same_seed_same_series(p in valid_params()) {
        let a = generate(&p, 20_000).unwrap();
        let b = generate(&p, 20_000).unwrap();
        prop_assert_eq!(a.symbols(), b.symbols());
        prop_assert!(a.symbols().iter().all(|&x| x <= 1));
    }

    #[test]
    fn map_orbit_stays_inside(d in 0.05f64..0.95, h in 0.51f64..0.99, x in 0.0001f64..0.9999) {
        let p = MapParams::for_hurst(d, h, 0).unwrap();
        let mut y = x;
        for _ in 0..1000 {
            y = map_step(y, &p);
            prop_assert!(y > 0.0 && y < 1.0);
        }
    }

    #[test]
    fn map_source_is_split_invariant(h in 0.55f64..0.95, seed in any::<u64>(), cut in 0usize..2000) {
        let p = MapParams::for_hurst(0.5, h, seed).unwrap();
        let whole = map_generate(&p, 2000).unwrap();
        let mut src = MapSource::new(p);
        let mut parts = vec![0u8; 2000];
        src.fill(&mut parts[..cut]);
        src.fill(&mut parts[cut..]);
        prop_assert_eq!(whole.symbols(), &parts[..]);
    }
}

#[test]
fn substreams_give_different_series() {
    let p = ModelParams::from_mean_hurst(0.5, 0.75, 3).unwrap();
    let mut a = MarkovSource::with_stream(p, 0).unwrap();
    let mut b = MarkovSource::with_stream(p, 1).unwrap();
    let (mut x, mut y) = (vec![0u8; 4096], vec![0u8; 4096]);
    a.fill(&mut x).unwrap();
    b.fill(&mut y).unwrap();
    assert_ne!(x, y);
}

#[test]
fn hurst_and_alpha_round_trip() {
    for h in [0.51, 0.625, 0.75, 0.875, 0.99] {
        let a = hurst_to_alpha(h).unwrap();
        let p = ModelParams::new(0.5, a, 0).unwrap();
        assert!((p.hurst() - h).abs() < 1e-15);
    }
    assert!(hurst_to_alpha(0.5).is_err());
    assert!(hurst_to_alpha(1.0).is_err());
}

#[test]
fn invalid_region_is_rejected() {
    let t = validity_threshold(0.5);
    assert!(ModelParams::new(t * 0.999, 0.5, 0).is_err());
    assert!(ModelParams::new(t * 1.001, 0.5, 0).is_ok());
    assert!(ModelParams::from_mean_hurst(0.9, 0.55, 0).is_err());
    assert!(ModelParams::from_mean_hurst(0.9, 0.99, 0).is_ok());
}
