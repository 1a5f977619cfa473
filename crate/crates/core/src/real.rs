//! Arbitrary precision reals for the numeric layer.
//!
//! Thin value wrapper over `astro_float::BigFloat`. Every value carries its
//! own working precision and binary operations run at the larger of the two.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use astro_float::{BigFloat, Consts, Radix, RoundingMode, Sign};
use num_bigint::BigInt;
use num_rational::BigRational;

const RM: RoundingMode = RoundingMode::ToEven;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("astro-float constant cache"));
}

fn with_cc<T>(f: impl FnOnce(&mut Consts) -> T) -> T {
    CONSTS.with(|c| f(&mut c.borrow_mut()))
}

/// Working precision in bits, always a whole number of 64-bit words.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Precision(usize);

impl Precision {
    /// Precision able to hold `digits` decimal digits plus a guard word.
    pub fn digits(digits: u32) -> Self {
        let bits = (f64::from(digits) * std::f64::consts::LOG2_10).ceil() as usize + 64;
        Precision(bits.div_ceil(64) * 64)
    }

    pub fn bits(self) -> usize {
        self.0
    }

    /// Approximate number of reliable decimal digits.
    pub fn decimal_digits(self) -> u32 {
        ((self.0.saturating_sub(64)) as f64 / std::f64::consts::LOG2_10).floor() as u32
    }
}

impl Default for Precision {
    fn default() -> Self {
        Precision::digits(64)
    }
}

#[derive(Clone)]
pub struct Real {
    v: BigFloat,
    p: usize,
}

impl Real {
    fn wrap(v: BigFloat, p: usize) -> Self {
        debug_assert!(!v.is_nan(), "NaN produced in real arithmetic");
        Real { v, p }
    }

    pub fn zero(prec: Precision) -> Self {
        Real::from_i64(0, prec)
    }

    pub fn one(prec: Precision) -> Self {
        Real::from_i64(1, prec)
    }

    pub fn from_i64(i: i64, prec: Precision) -> Self {
        Real::wrap(BigFloat::from_i64(i, prec.0), prec.0)
    }

    pub fn from_f64(f: f64, prec: Precision) -> Self {
        Real::wrap(BigFloat::from_f64(f, prec.0), prec.0)
    }

    pub fn from_bigint(i: &BigInt, prec: Precision) -> Self {
        let v = with_cc(|cc| BigFloat::parse(&i.to_string(), Radix::Dec, prec.0, RM, cc));
        Real::wrap(v, prec.0)
    }

    pub fn from_rat(x: &BigRational, prec: Precision) -> Self {
        Real::from_bigint(x.numer(), prec) / Real::from_bigint(x.denom(), prec)
    }

    /// Parses a decimal literal such as `1.6789` or `-2.5e-3`.
    pub fn parse(s: &str, prec: Precision) -> Option<Self> {
        let v = with_cc(|cc| BigFloat::parse(s, Radix::Dec, prec.0, RM, cc));
        if v.is_nan() {
            None
        } else {
            Some(Real::wrap(v, prec.0))
        }
    }

    /// The dyadic rational `m / 2^k`.
    pub fn from_dyadic(m: &BigInt, k: u32, prec: Precision) -> Self {
        let two_k = BigInt::from(1) << k;
        Real::from_bigint(m, prec) / Real::from_bigint(&two_k, prec)
    }

    pub fn pi(prec: Precision) -> Self {
        Real::wrap(with_cc(|cc| cc.pi(prec.0, RM)), prec.0)
    }

    pub fn precision(&self) -> Precision {
        Precision(self.p)
    }

    /// Same value carried at a different precision.
    pub fn with_precision(&self, prec: Precision) -> Self {
        let mut v = self.v.clone();
        // set_precision only fails for invalid sizes, which Precision rules out
        let _ = v.set_precision(prec.0, RM);
        Real::wrap(v, prec.0)
    }

    pub fn to_f64(&self) -> f64 {
        if self.v.is_zero() {
            return 0.0;
        }
        let Some((words, _, sign, exp, _)) = self.v.as_raw_parts() else {
            return f64::NAN;
        };
        let top = *words.last().unwrap_or(&0) as f64;
        let e = i64::from(exp) - 64;
        let mag = if e > 1100 {
            f64::INFINITY
        } else if e < -1200 {
            0.0
        } else {
            // split the scaling so neither factor overflows
            let half = (e / 2) as i32;
            top * 2f64.powi(half) * 2f64.powi(e as i32 - half)
        };
        if sign == Sign::Neg {
            -mag
        } else {
            mag
        }
    }

    pub fn is_zero(&self) -> bool {
        self.v.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        !self.v.is_zero() && self.v.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        !self.v.is_zero() && self.v.is_negative()
    }

    pub fn abs(&self) -> Self {
        Real::wrap(self.v.abs(), self.p)
    }

    pub fn sqrt(&self) -> Self {
        Real::wrap(self.v.sqrt(self.p, RM), self.p)
    }

    pub fn recip(&self) -> Self {
        Real::wrap(self.v.reciprocal(self.p, RM), self.p)
    }

    pub fn powi(&self, n: u32) -> Self {
        Real::wrap(self.v.powi(n as usize, self.p, RM), self.p)
    }

    pub fn cos(&self) -> Self {
        Real::wrap(with_cc(|cc| self.v.cos(self.p, RM, cc)), self.p)
    }

    pub fn sin(&self) -> Self {
        Real::wrap(with_cc(|cc| self.v.sin(self.p, RM, cc)), self.p)
    }

    /// Arc cosine; the argument is clamped to [-1, 1] first.
    pub fn acos(&self) -> Self {
        let one = Real::one(self.precision());
        let x = if *self > one {
            one
        } else if *self < -one.clone() {
            -one
        } else {
            self.clone()
        };
        Real::wrap(with_cc(|cc| x.v.acos(self.p, RM, cc)), self.p)
    }

    pub fn atan(&self) -> Self {
        Real::wrap(with_cc(|cc| self.v.atan(self.p, RM, cc)), self.p)
    }

    /// Angle of the point (x, y) in (-pi, pi].
    pub fn atan2(y: &Real, x: &Real) -> Real {
        let prec = Precision(y.p.max(x.p));
        let pi = Real::pi(prec);
        if x.is_zero() {
            return if y.is_negative() {
                -(pi / Real::from_i64(2, prec))
            } else if y.is_zero() {
                Real::zero(prec)
            } else {
                pi / Real::from_i64(2, prec)
            };
        }
        let base = (y / x).atan();
        if x.is_positive() {
            base
        } else if y.is_negative() {
            base - pi
        } else {
            base + pi
        }
    }

    /// `|self - other| < tol`.
    pub fn close_to(&self, other: &Real, tol: f64) -> bool {
        (self - other).abs() < Real::from_f64(tol, Precision(self.p))
    }

    pub fn min(self, other: Real) -> Real {
        if other < self {
            other
        } else {
            self
        }
    }

    pub fn max(self, other: Real) -> Real {
        if other > self {
            other
        } else {
            self
        }
    }

    /// Scientific notation with `digits` significant digits.
    pub fn to_string_digits(&self, digits: usize) -> String {
        if self.v.is_zero() {
            return "0".to_string();
        }
        let full = with_cc(|cc| self.v.format(Radix::Dec, RM, cc)).unwrap_or_else(|_| "NaN".into());
        shorten_sci(&full, digits)
    }
}

/// Rounds a `d.ddddde±x` string to `digits` significant digits.
fn shorten_sci(s: &str, digits: usize) -> String {
    let (mant, exp) = match s.find('e') {
        Some(i) => (&s[..i], &s[i + 1..]),
        None => (s, "0"),
    };
    let neg = mant.starts_with('-');
    let body: String = mant.trim_start_matches('-').chars().filter(|c| c.is_ascii_digit()).collect();
    let mut exp: i64 = exp.parse().unwrap_or(0);
    let digits = digits.max(1);
    let mut kept: Vec<u8> = body.bytes().map(|b| b - b'0').collect();
    if kept.len() > digits {
        let round_up = kept[digits] >= 5;
        kept.truncate(digits);
        if round_up {
            let mut i = digits;
            loop {
                if i == 0 {
                    kept.insert(0, 1);
                    kept.pop();
                    exp += 1;
                    break;
                }
                i -= 1;
                if kept[i] == 9 {
                    kept[i] = 0;
                } else {
                    kept[i] += 1;
                    break;
                }
            }
        }
    }
    while kept.len() > 1 && *kept.last().unwrap() == 0 {
        kept.pop();
    }
    let mut out = String::new();
    if neg {
        out.push('-');
    }
    out.push((b'0' + kept[0]) as char);
    if kept.len() > 1 {
        out.push('.');
        for d in &kept[1..] {
            out.push((b'0' + d) as char);
        }
    }
    if exp != 0 {
        out.push_str(&format!("e{exp}"));
    }
    out
}

impl fmt::Debug for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_digits(30))
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_digits(f.precision().unwrap_or(20)))
    }
}

impl PartialEq for Real {
    fn eq(&self, other: &Self) -> bool {
        self.partial_cmp(other) == Some(Ordering::Equal)
    }
}

impl PartialOrd for Real {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.v.cmp(&other.v).map(|c| c.cmp(&0))
    }
}

macro_rules! real_binop {
    ($tr:ident, $m:ident, $op:ident) => {
        impl $tr<&Real> for &Real {
            type Output = Real;
            fn $m(self, rhs: &Real) -> Real {
                let p = self.p.max(rhs.p);
                Real::wrap(self.v.$op(&rhs.v, p, RM), p)
            }
        }
        impl $tr<Real> for Real {
            type Output = Real;
            fn $m(self, rhs: Real) -> Real {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Real> for Real {
            type Output = Real;
            fn $m(self, rhs: &Real) -> Real {
                (&self).$m(rhs)
            }
        }
        impl $tr<Real> for &Real {
            type Output = Real;
            fn $m(self, rhs: Real) -> Real {
                self.$m(&rhs)
            }
        }
    };
}

real_binop!(Add, add, add);
real_binop!(Sub, sub, sub);
real_binop!(Mul, mul, mul);
real_binop!(Div, div, div);

impl Neg for Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real::wrap(self.v.neg(), self.p)
    }
}

impl Neg for &Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real::wrap(self.v.clone().neg(), self.p)
    }
}
