//! Whether `omega = sigma^2` can be the rotational eigenvalue at depth n.

use num_integer::Integer;
use serde_json::{json, Value};

use super::Unit;
use crate::real::Real;

/// Matching tolerance on the unit circle.
pub const ROOT_TOL: f64 = 1e-9;
/// Distances between `tol` and `BOUNDARY * tol` are inconclusive.
pub const BOUNDARY: f64 = 1e3;

/// Extra constraint on `omega` beyond being an n-th root of unity.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    None,
    /// `omega^(n/2) = 1`
    Plus,
    /// `omega^(n/2) = -1`
    Minus,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RootVerdict {
    Consistent,
    Inconsistent,
    Inconclusive,
}

impl RootVerdict {
    pub fn as_str(self) -> &'static str {
        match self {
            RootVerdict::Consistent => "consistent",
            RootVerdict::Inconsistent => "inconsistent",
            RootVerdict::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Clone, Debug)]
pub struct RootCheck {
    pub verdict: RootVerdict,
    /// Order of the nearest admissible root.
    pub matched_order: Option<u32>,
    /// The nearest admissible root as `exp(2 pi i num / den)`.
    pub matched: Option<(u64, u64)>,
    pub distance: f64,
    pub reason: String,
}

impl RootCheck {
    pub fn to_json(&self) -> Value {
        json!({
            "verdict": self.verdict.as_str(),
            "matchedRootOrder": self.matched_order,
            "matchedRoot": self.matched.map(|(a, b)| format!("exp(2 pi i {a}/{b})")),
            "distance": self.distance,
            "reason": self.reason,
        })
    }
}

fn grade(distance: f64, tol: f64) -> RootVerdict {
    if distance < tol {
        RootVerdict::Consistent
    } else if distance < BOUNDARY * tol {
        RootVerdict::Inconclusive
    } else {
        RootVerdict::Inconsistent
    }
}

/// Nearest admissible root to `exp(i theta)`; returns (num, den, distance).
fn nearest(theta: &Real, n: usize, parity: Parity) -> (u64, u64, f64) {
    let prec = theta.precision();
    let (big_n, off) = match parity {
        Parity::None => (n as u64, 0u64),
        Parity::Plus => ((n / 2) as u64, 0),
        Parity::Minus => ((n / 2) as u64, 1),
    };
    let two_pi = Real::pi(prec) * Real::from_i64(2, prec);
    // admissible angles are 2 pi (2j + off) / (2N)
    let den = 2 * big_n;
    let x = (theta * Real::from_i64(den as i64, prec) / &two_pi).to_f64();
    let j = ((x - off as f64) / 2.0).round();
    let num = (2.0 * j) as i64 + off as i64;
    let target = &two_pi * Real::from_i64(num, prec) / Real::from_i64(den as i64, prec);
    let half_gap = (theta - &target) / Real::from_i64(2, prec);
    let distance = 2.0 * half_gap.sin().abs().to_f64();
    (num.rem_euclid(den as i64) as u64, den, distance)
}

/// Checks `omega = exp(2 i acos(s/2))` against the n-th roots of unity that
/// satisfy `parity`.
pub fn root_of_unity_consistency(s: &Real, n: usize, parity: Parity, tol: f64) -> RootCheck {
    let prec = s.precision();
    let two = Real::from_i64(2, prec);
    let excess = (s.abs() - &two).to_f64();
    if n == 0 || (parity != Parity::None && n % 2 == 1) {
        return RootCheck {
            verdict: RootVerdict::Inconsistent,
            matched_order: None,
            matched: None,
            distance: f64::INFINITY,
            reason: format!("no parity-constrained roots at n = {n}"),
        };
    }
    if excess >= tol {
        return RootCheck {
            verdict: grade(excess, tol),
            matched_order: None,
            matched: None,
            distance: excess,
            reason: format!("|s| = {} exceeds 2, so sigma is not on the unit circle", s.abs().to_string_digits(15)),
        };
    }
    let clamped = if excess > 0.0 { if s.is_negative() { -&two } else { two.clone() } } else { s.clone() };
    let theta = (&clamped / &two).acos() * &two;
    let (num, den, distance) = nearest(&theta, n, parity);
    let g = num.gcd(&den);
    let order = (den / g) as u32;
    let verdict = grade(distance, tol);
    let constraint = match parity {
        Parity::None => format!("omega^{n} = 1"),
        Parity::Plus => format!("omega^{} = 1", n / 2),
        Parity::Minus => format!("omega^{} = -1", n / 2),
    };
    let reason = match verdict {
        RootVerdict::Consistent => format!("omega is a primitive root of unity of order {order} satisfying {constraint}"),
        _ => format!("omega is {distance:.3e} away from the nearest root satisfying {constraint}"),
    };
    RootCheck { verdict, matched_order: Some(order), matched: Some((num / g, den / g)), distance, reason }
}

/// `|w^k - target| < tol` for `target` = +1 or -1.
pub(super) fn power_close(w: &Unit, k: usize, target: i32, tol: f64) -> bool {
    let prec = w.re.precision();
    let theta = Real::atan2(&w.im, &w.re) * Real::from_i64(k as i64, prec);
    let goal = if target < 0 { Real::pi(prec) } else { Real::zero(prec) };
    let half = (theta - goal) / Real::from_i64(2, prec);
    2.0 * half.sin().abs().to_f64() < tol
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::real::Precision;

    fn s_of(x: f64) -> Real {
        Real::from_f64(x, Precision::default())
    }

    #[test]
    fn two_is_always_consistent() {
        for n in 1..8 {
            let c = root_of_unity_consistency(&s_of(2.0), n, Parity::None, ROOT_TOL);
            assert_eq!(c.verdict, RootVerdict::Consistent);
            assert_eq!(c.matched_order, Some(1));
        }
    }

    #[test]
    fn minus_one_needs_even_n() {
        // s = 0 gives omega = -1
        assert_eq!(root_of_unity_consistency(&s_of(0.0), 3, Parity::None, ROOT_TOL).verdict, RootVerdict::Inconsistent);
        let c = root_of_unity_consistency(&s_of(0.0), 4, Parity::None, ROOT_TOL);
        assert_eq!(c.verdict, RootVerdict::Consistent);
        assert_eq!(c.matched_order, Some(2));
        assert_eq!(root_of_unity_consistency(&s_of(0.0), 2, Parity::Minus, ROOT_TOL).verdict, RootVerdict::Consistent);
        assert_eq!(root_of_unity_consistency(&s_of(0.0), 2, Parity::Plus, ROOT_TOL).verdict, RootVerdict::Inconsistent);
    }

    #[test]
    fn large_s_is_inconsistent() {
        let c = root_of_unity_consistency(&s_of(2.5), 6, Parity::None, ROOT_TOL);
        assert_eq!(c.verdict, RootVerdict::Inconsistent);
        assert!(c.matched_order.is_none());
    }

    #[test]
    fn near_boundary_is_inconclusive() {
        let p = Precision::default();
        // s = 1 + 1e-8 sits a few 1e-9 off the cube root of unity
        let s = Real::one(p) + Real::from_f64(1e-8, p);
        assert_eq!(root_of_unity_consistency(&s, 3, Parity::None, ROOT_TOL).verdict, RootVerdict::Inconclusive);
    }
}
