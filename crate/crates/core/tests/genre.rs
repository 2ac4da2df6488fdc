use proptest::prelude::*;
use wordlen::genre::{
    alpha_summary, completion_coefficient, fit_linear, fit_shifted_power, lambda1_from_completion,
    parse_records, predict, summarize, write_records, Curve, GenreError, RegressionFit,
    ReportOptions, TextRecord, LAMBDA1_MIN, REFERENCE_LINEAR, REFERENCE_SHIFTED_POWER,
};

fn reference(curve: Curve) -> RegressionFit {
    RegressionFit {
        curve,
        r_squared: 1.0,
        ss_res: 0.0,
        points: 0,
    }
}

fn record(label: &str, genre: &str, lambda0: f64, lambda1: f64) -> TextRecord {
    TextRecord {
        label: label.into(),
        language: "Xx".into(),
        genre: genre.into(),
        lambda0,
        lambda1,
        lambda2: 2.0 * lambda0 - lambda1,
        c: 0.001,
        n: 10_000,
    }
}

#[test]
fn completion_examples() {
    let a = completion_coefficient(1.45, 1.33, LAMBDA1_MIN)
        .unwrap()
        .alpha;
    assert!((a - 0.12 / 0.95).abs() < 1e-12 && (0.12..=0.13).contains(&a));
    let a = completion_coefficient(2.13, 0.81, LAMBDA1_MIN)
        .unwrap()
        .alpha;
    assert!((a - 0.8098).abs() < 1e-4);
    assert_eq!(
        completion_coefficient(1.7, 1.7, LAMBDA1_MIN).unwrap().alpha,
        0.0
    );
    assert_eq!(
        completion_coefficient(1.7, 0.5, LAMBDA1_MIN).unwrap().alpha,
        1.0
    );

    let luther = completion_coefficient(1.6, 1.8, LAMBDA1_MIN).unwrap();
    assert!(luther.alpha < 0.0 && !luther.in_range);
    assert!(matches!(
        completion_coefficient(0.5, 0.4, LAMBDA1_MIN),
        Err(GenreError::LambdaBelowMinimum { .. })
    ));
}

#[test]
fn linear_examples() {
    let pts: Vec<(f64, f64)> = [1.3, 1.5, 1.9, 2.2]
        .iter()
        .map(|&x| (x, 0.18 + 0.45 * x))
        .collect();
    let f = fit_linear(&pts).unwrap();
    let Curve::Linear { intercept, slope } = f.curve else {
        panic!()
    };
    assert!((intercept - 0.18).abs() < 1e-12 && (slope - 0.45).abs() < 1e-12);
    assert!((f.r_squared - 1.0).abs() < 1e-12);

    let flat = fit_linear(&[(1.2, 0.9), (1.6, 0.9), (2.0, 0.9)]).unwrap();
    let Curve::Linear { slope, .. } = flat.curve else {
        panic!()
    };
    assert_eq!((slope, flat.r_squared), (0.0, 0.0));

    assert!(matches!(
        fit_linear(&[(1.0, 1.0), (1.0, 2.0), (1.0, 3.0)]),
        Err(GenreError::DegenerateAbscissae)
    ));
    assert!(matches!(
        fit_linear(&[(1.0, 1.0), (2.0, 2.0)]),
        Err(GenreError::TooFewPoints { .. })
    ));
}

#[test]
fn shifted_power_examples() {
    let pts: Vec<(f64, f64)> = (0..6)
        .map(|i| {
            let x = 1.2 + 0.2 * i as f64;
            (x, REFERENCE_SHIFTED_POWER.evaluate(x).unwrap())
        })
        .collect();
    let f = fit_shifted_power(&pts, 0.5, 1.0).unwrap();
    let Curve::ShiftedPower { c, p, .. } = f.curve else {
        panic!()
    };
    assert!((c - 0.34).abs() <= 0.005 && (p - 1.01).abs() <= 0.01);
    assert!(f.r_squared >= 0.999);

    assert!(matches!(
        fit_shifted_power(&[(1.5, 1.0), (0.9, 1.0), (2.0, 0.8)], 0.5, 1.0),
        Err(GenreError::ShiftViolation { index: 1, .. })
    ));
}

#[test]
fn prediction_examples() {
    let power = reference(REFERENCE_SHIFTED_POWER);
    assert!((predict(&power, 2.13).unwrap() - 0.8005).abs() < 1e-4);
    assert!((predict(&power, 1.45).unwrap() - 1.2616).abs() < 1e-4);
    assert!((predict(&power, 2.0).unwrap() - 0.84).abs() < 1e-12);
    assert!(matches!(
        predict(&power, 1.0),
        Err(GenreError::OutsideDomain { .. })
    ));
    assert!((predict(&reference(REFERENCE_LINEAR), 2.0).unwrap() - 1.08).abs() < 1e-12);
}

#[test]
fn alpha_summary_examples() {
    let one = alpha_summary(&[record("a", "letters", 1.5, 1.2)], LAMBDA1_MIN).unwrap();
    assert_eq!(one.std_dev, None);

    let six: Vec<_> = (0..6)
        .map(|i| {
            let l0 = 1.4 + 0.1 * i as f64;
            record(
                "x",
                "letters",
                l0,
                lambda1_from_completion(l0, 0.63, LAMBDA1_MIN),
            )
        })
        .collect();
    let s = alpha_summary(&six, LAMBDA1_MIN).unwrap();
    assert!((s.mean - 0.63).abs() < 1e-12);
    assert!(s.std_dev.unwrap() < 1e-12 && s.std_dev_population < 1e-12);

    let two = [record("a", "g", 1.5, 1.0), record("b", "g", 1.5, 0.5)];
    let s = alpha_summary(&two, LAMBDA1_MIN).unwrap();
    assert!((s.std_dev.unwrap() - 0.5f64.sqrt() * 0.5).abs() < 1e-12);
    assert!((s.std_dev_population - 0.25).abs() < 1e-12);
}

#[test]
fn report_structure() {
    let empty = summarize(&[], &ReportOptions::default());
    assert!(empty.dots.is_empty() && empty.linear.is_none() && empty.alpha_mean.is_none());
    for (_, body) in empty.files() {
        assert!(!body.contains("NaN"));
    }

    let recs: Vec<_> = (0..12)
        .map(|i| {
            let l0 = 1.45 + 0.06 * i as f64;
            let genre = if i < 6 { "letters" } else { "news" };
            record(
                &format!("t{i}"),
                genre,
                l0,
                REFERENCE_SHIFTED_POWER.evaluate(l0).unwrap(),
            )
        })
        .collect();
    let opts = ReportOptions {
        alpha_genre: Some("letters".into()),
        ..ReportOptions::default()
    };
    let r = summarize(&recs, &opts);
    assert_eq!(r.dots.len(), 12);
    assert!(r.linear.is_some() && r.shifted_power.is_some());
    let svg = r.lambda_svg();
    assert_eq!(svg.matches("<!-- point ").count(), 12);
    assert!(svg.contains("<!-- curve linear ") && svg.contains("<!-- curve shifted-power "));
    let alpha_svg = r.alpha_svg();
    assert_eq!(alpha_svg.matches("<!-- point ").count(), 6);
    assert_eq!(alpha_svg.matches("<!-- hline ").count(), 1);

    let again = summarize(&parse_records(&write_records(&recs)).unwrap(), &opts);
    assert_eq!(again.files(), r.files());
}

#[test]
fn records_reject_inconsistent_midpoint() {
    let text = "a\tEn\tnews\t1.5\t1.0\t2.5\t0.01\t100\n";
    assert!(matches!(
        parse_records(text),
        Err(GenreError::Table { line: 1, .. })
    ));
}

fn points() -> impl Strategy<Value = Vec<(f64, f64)>> {
    prop::collection::vec((1.05..3.0f64, 0.0..1.0f64), 3..15)
}

proptest! {
    #[test]
    fn alpha_decreases_in_lambda1(l0 in 0.6..4.0f64, a in 0.0..4.0f64, b in 0.0..4.0f64) {
        prop_assume!(a < b);
        let fa = completion_coefficient(l0, a, LAMBDA1_MIN).unwrap().alpha;
        let fb = completion_coefficient(l0, b, LAMBDA1_MIN).unwrap().alpha;
        prop_assert!(fa > fb);
    }

    #[test]
    fn alpha_round_trip(l0 in 0.6..4.0f64, alpha in 0.0..=1.0f64) {
        let l1 = lambda1_from_completion(l0, alpha, LAMBDA1_MIN);
        let back = completion_coefficient(l0, l1, LAMBDA1_MIN).unwrap().alpha;
        prop_assert!((back - alpha).abs() < 1e-12);
    }

    #[test]
    fn linear_recovery(a in -2.0..2.0f64, b in -2.0..2.0f64, xs in prop::collection::btree_set(0u32..400, 3..20)) {
        let pts: Vec<(f64, f64)> = xs.iter().map(|&x| { let x = x as f64 / 100.0; (x, a + b * x) }).collect();
        let f = fit_linear(&pts).unwrap();
        let Curve::Linear { intercept, slope } = f.curve else { unreachable!() };
        prop_assert!((intercept - a).abs() < 1e-12 && (slope - b).abs() < 1e-12);
        if b != 0.0 {
            prop_assert!((f.r_squared - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn linear_prediction_ignores_order(mut pts in points(), x in 0.0..3.0f64) {
        prop_assume!(pts.iter().any(|p| p.0 != pts[0].0));
        let a = predict(&fit_linear(&pts).unwrap(), x).unwrap();
        pts.reverse();
        let b = predict(&fit_linear(&pts).unwrap(), x).unwrap();
        prop_assert!((a - b).abs() < 1e-9);
    }

    #[test]
    fn power_refinement_never_worse(pts in points()) {
        let pts: Vec<(f64, f64)> = pts.into_iter().map(|(x, y)| (x, 0.5 + 0.05 + y)).collect();
        prop_assume!(pts.iter().any(|p| p.0 != pts[0].0));
        let f = fit_shifted_power(&pts, 0.5, 1.0).unwrap();
        let us: Vec<f64> = pts.iter().map(|p| (p.0 - 1.0).ln()).collect();
        let vs: Vec<f64> = pts.iter().map(|p| (p.1 - 0.5).ln()).collect();
        let n = us.len() as f64;
        let (mu, mv) = (us.iter().sum::<f64>() / n, vs.iter().sum::<f64>() / n);
        let sxy: f64 = us.iter().zip(&vs).map(|(u, v)| (u - mu) * (v - mv)).sum();
        let sxx: f64 = us.iter().map(|u| (u - mu).powi(2)).sum();
        let slope = sxy / sxx;
        let (c0, p0) = ((mv - slope * mu).exp(), -slope);
        let start: f64 = pts.iter().map(|&(x, y)| (y - 0.5 - c0 / (x - 1.0).powf(p0)).powi(2)).sum();
        prop_assert!(f.ss_res <= start * (1.0 + 1e-12));
    }

    #[test]
    fn records_round_trip(rows in prop::collection::vec(("[a-zA-Z0-9_]{1,8}", 0.6..3.0f64, 0.0..1.0f64, 0u64..1_000_000), 0..10)) {
        let recs: Vec<TextRecord> = rows
            .iter()
            .map(|(label, l0, frac, n)| TextRecord { n: *n, ..record(label, "letters", *l0, l0 * frac) })
            .collect();
        let back = parse_records(&write_records(&recs)).unwrap();
        prop_assert_eq!(back, recs);
    }
}
