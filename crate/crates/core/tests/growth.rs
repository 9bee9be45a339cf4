use knot_detect_core::growth::{rt_series, rtp_series, solve_at};

#[test]
fn order_200_solution_is_a_counting_series_with_the_expected_ratio() {
    let at = solve_at(200).unwrap();
    assert_eq!(at.order(), 200);
    assert!(at.is_counting_series());
    let ratio = at.ratio_estimate(150).unwrap();
    assert!((ratio - 6.1479).abs() / 6.1479 < 0.02, "ratio {ratio}");
}

#[test]
fn truncations_are_stable() {
    let long = solve_at(60).unwrap();
    let short = solve_at(30).unwrap();
    assert_eq!(long.truncate(30), short);
}

#[test]
fn restricted_series_is_dominated() {
    let rt = rt_series((6, 6));
    let rtp = rtp_series((6, 6)).unwrap();
    assert!(rt.is_counting_up_to(12));
    assert!(rtp.is_counting_up_to(12));
    for m in 0..=6 {
        for n in 0..=6 {
            assert!(rtp.coeff(m, n) <= rt.coeff(m, n), "({m},{n})");
        }
    }
}
