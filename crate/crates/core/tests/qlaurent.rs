use chirality_core::qlaurent::positivity::{check, prove_univariate};
use chirality_core::qlaurent::sturm::count_roots_above;
use chirality_core::qlaurent::{quantum_integer, rat, LaurentPoly};

/// `3 [n]^2 - [n+2]^2` as a Laurent polynomial in q.
fn gap(n: i64) -> LaurentPoly {
    let (a, b) = (quantum_integer(n), quantum_integer(n + 2));
    let three = LaurentPoly::from_ints(0, &[3]);
    &(&three * &(&a * &a)) - &(&b * &b)
}

fn gap_f64(n: i32, q: f64) -> f64 {
    let qi = |k: i32| (q.powi(k) - q.powi(-k)) / (q - 1.0 / q);
    3.0 * qi(n).powi(2) - qi(n + 2).powi(2)
}

#[test]
fn three_n_squared_never_meets_n_plus_two_squared_for_n_at_most_two() {
    for n in [1, 2] {
        let cert = prove_univariate(&-&gap(n), &rat(1, 1), true).expect("negative on q > 1");
        check(&cert).unwrap();
    }
}

#[test]
fn from_n_three_there_is_exactly_one_crossing_above_q_one() {
    // [n+2]/[n] falls from above sqrt 3 towards q^2, so for each n >= 3 the
    // equation 3 [n]^2 = [n+2]^2 has one root with 1 < q < 3^(1/4)
    let quarter = 3f64.powf(0.25);
    for n in 3..=10 {
        let (_, p) = gap(n).to_upoly();
        assert_eq!(count_roots_above(&p, &rat(1, 1)), 1, "n = {n}");
        assert!(gap_f64(n as i32, 1.0 + 1e-9) > 0.0 && gap_f64(n as i32, quarter) < 0.0, "n = {n}");
    }
    // the n = 3 crossing by bisection
    let (mut lo, mut hi) = (1.0001, quarter);
    for _ in 0..100 {
        let mid = 0.5 * (lo + hi);
        if gap_f64(3, mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    // in x = [2]^2 the n = 3 equation is x^2 - (3 + sqrt 3) x + 1 + sqrt 3 = 0
    let r3 = 3f64.sqrt();
    let x = (3.0 + r3 + ((3.0 + r3).powi(2) - 4.0 * (1.0 + r3)).sqrt()) / 2.0;
    let d = x.sqrt();
    let q = (d + (x - 4.0).sqrt()) / 2.0;
    assert!((lo - q).abs() < 1e-9, "bisection {lo}, closed form {q}");
}
