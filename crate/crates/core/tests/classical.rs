use num_bigint::BigUint;
use qwmeet::classical::{
    binomial, cl_meet_at, cl_meet_total, cl_meet_total_exact, cl_meet_total_gauss, cl_meet_total_long_time,
    cl_meet_total_sum_exact, cl_monte_carlo, cl_overall, cl_overall_estimate, cl_overall_sum_estimate, cl_peak_estimate,
    classical_distribution,
};

#[test]
fn site_sum_equals_closed_form_exactly() {
    for t in 0..=30u64 {
        for d in 0..=t {
            assert_eq!(cl_meet_total_sum_exact(t, d), cl_meet_total_exact(t, d), "t={t} d={d}");
        }
    }
}

#[test]
fn binomials() {
    assert_eq!(binomial(10, 3), BigUint::from(120u32));
    assert_eq!(binomial(5, 7), BigUint::from(0u32));
    assert_eq!(binomial(60, 30), BigUint::from(118264581564861424u64));
}

#[test]
fn meeting_sites_from_distributions() {
    // both walkers are independent binomial walkers
    let t = 25u64;
    let d = 3u64;
    let p = classical_distribution::<f64>(t);
    for m in -30..=30 {
        let want = p.get(m) * p.get(m - 2 * d as i64);
        assert!((cl_meet_at::<f64>(t, m, d) - want).abs() < 1e-16);
    }
}

#[test]
fn peak_location_and_tail() {
    for d in 3..=15u64 {
        let horizon = 6 * d * d;
        let values: Vec<f64> = (0..=horizon).map(|t| cl_meet_total(t, d)).collect();
        let (arg, _) = values
            .iter()
            .enumerate()
            .fold((0, 0.0), |best, (t, &v)| if v > best.1 { (t, v) } else { best });
        let centre = 2 * d * d;
        assert!(arg as u64 + 2 * d >= centre && arg as u64 <= centre + 2 * d, "d={d}: argmax {arg}");
        for t in (4 * d * d) as usize..horizon as usize {
            assert!(values[t + 1] < values[t]);
        }
    }
}

#[test]
fn peak_value_estimate() {
    for d in 5..=20u64 {
        let peak = (0..=8 * d * d).map(|t| cl_meet_total::<f64>(t, d)).fold(0.0, f64::max);
        let est: f64 = cl_peak_estimate(d).unwrap();
        assert!((peak / est - 1.0).abs() < 0.05, "d={d}");
    }
    let v: f64 = cl_peak_estimate(10).unwrap();
    assert!((v - 0.02420).abs() < 1e-5);
}

#[test]
fn gaussian_estimate_accuracy() {
    for d in 0..=12u64 {
        let lo = (2 * d * d).max(25);
        for t in (lo..lo + 400).step_by(7) {
            let exact: f64 = cl_meet_total(t, d);
            let g: f64 = cl_meet_total_gauss(t, d).unwrap();
            assert!((g / exact - 1.0).abs() < 0.05, "t={t} d={d}");
        }
    }
    let lt: f64 = cl_meet_total_long_time(10_000, 3).unwrap();
    let g: f64 = cl_meet_total_gauss(10_000, 3).unwrap();
    assert!((lt / g - 1.0).abs() < 1e-6);
}

#[test]
fn overall_forms() {
    let exact: f64 = cl_overall(100, 10);
    let est: f64 = cl_overall_estimate(100, 10).unwrap();
    assert!((exact - est).abs() < 0.05, "{exact} vs {est}");
    let first: f64 = cl_overall_sum_estimate(100, 10);
    assert!(exact >= first);
    assert_eq!(cl_overall::<f64>(9, 10), 0.0);
    let mut last = 0.0;
    for horizon in 10..200 {
        let v: f64 = cl_overall(horizon, 10);
        assert!(v >= last);
        last = v;
    }
}

#[test]
fn monte_carlo_agrees_with_exact() {
    let e = cl_monte_carlo(200, 10, 1_000_000, 2024).unwrap();
    let exact: f64 = cl_meet_total(200, 10);
    assert!((e.probability - exact).abs() <= 3.0 * e.std_error, "{} vs {exact}", e.probability);

    let e = cl_monte_carlo(1, 0, 1_000_000, 7).unwrap();
    assert!((e.probability - 0.5).abs() < 0.002);

    let mut inside = 0;
    let mut total = 0;
    for t in (10..=100u64).step_by(10) {
        for d in 0..10u64 {
            let trials = 10_000;
            let e = cl_monte_carlo(t, d, trials, 31 * t + d).unwrap();
            let p: f64 = cl_meet_total(t, d);
            let sigma = (p * (1.0 - p) / trials as f64).sqrt();
            inside += usize::from((e.probability - p).abs() <= 3.0 * sigma);
            total += 1;
        }
    }
    assert!(inside * 100 >= total * 99, "{inside}/{total}");
}
