use lrd::estimators::{acf, aggregate, EstimateError, Method};
use lrd::fgn::fgn_generate;

fn fgn(h: f64, n: usize, seed: u64) -> Vec<f64> {
    fgn_generate(h, n, seed).unwrap().into_values()
}

/// Local Whittle locates a minimum of a smooth objective, which pins the
/// argument only to about the square root of machine precision.
fn tolerance(m: Method) -> f64 {
    if m == Method::LocalWhittle {
        1e-7
    } else {
        1e-9
    }
}

#[test]
fn estimates_ignore_affine_rescaling() {
    let x = fgn(0.7, 1 << 15, 5);
    let y: Vec<f64> = x.iter().map(|v| 3.5 * v - 12.0).collect();
    for m in Method::ALL {
        let a = m.estimate(&x).unwrap().h;
        let b = m.estimate(&y).unwrap().h;
        assert!((a - b).abs() < tolerance(m), "{m}: {a} vs {b}");
    }
}

#[test]
fn estimates_ignore_time_reversal() {
    // 2^15 + 37 so that no block size divides the length.
    let x = fgn(0.8, (1 << 15) + 37, 6);
    let r: Vec<f64> = x.iter().rev().copied().collect();
    for m in [
        Method::AggVar,
        Method::Periodogram,
        Method::LocalWhittle,
        Method::Wavelet,
    ] {
        let a = m.estimate(&x).unwrap().h;
        let b = m.estimate(&r).unwrap().h;
        assert!((a - b).abs() < tolerance(m), "{m}: {a} vs {b}");
    }
}

#[test]
fn estimates_increase_with_hurst() {
    let hs = [0.55, 0.7, 0.85];
    let series: Vec<Vec<f64>> = hs.iter().map(|&h| fgn(h, 1 << 16, 11)).collect();
    for m in Method::ALL {
        let est: Vec<f64> = series.iter().map(|x| m.estimate(x).unwrap().h).collect();
        assert!(est[0] < est[1] && est[1] < est[2], "{m}: {est:?}");
    }
}

#[test]
fn constant_and_short_input_are_rejected() {
    for m in Method::ALL {
        assert!(matches!(
            m.estimate(&vec![2.0; 5000]),
            Err(EstimateError::ConstantSeries)
        ));
        assert!(matches!(
            m.estimate(&[1.0, 2.0, 0.5]),
            Err(EstimateError::TooShort { .. })
        ));
    }
}

#[test]
fn fits_carry_diagnostics() {
    let x = fgn(0.75, 1 << 16, 2);
    for m in Method::ALL {
        let e = m.estimate(&x).unwrap();
        assert_eq!(e.method, m);
        assert!(e.n_used > 0);
        if let Some((lo, hi)) = e.ci {
            assert!(lo < e.h && e.h < hi, "{m}");
        }
        if let Some(r2) = e.r2() {
            assert!((0.0..=1.0).contains(&r2), "{m}");
        }
    }
}

#[test]
fn aggregation_preserves_totals() {
    let x = fgn(0.7, 10_000, 3);
    let a = aggregate(&x, 100).unwrap();
    assert_eq!(a.len(), 100);
    let total: f64 = x.iter().sum();
    assert!((a.iter().sum::<f64>() - total).abs() < 1e-9);
}

#[test]
fn acf_of_fgn_follows_the_model() {
    let h = 0.8;
    let x = fgn(h, 1 << 20, 4);
    let r = acf(&x, 10).unwrap();
    assert_eq!(r[0], 1.0);
    for k in 1..=10u64 {
        let want = lrd::fgn::fgn_autocovariance(k, h);
        assert!((r[k as usize] - want).abs() < 0.02, "lag {k}");
    }
}
