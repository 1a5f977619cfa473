use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{BivarPoly, LaurentPoly, QError, QFrac, Rat, UPoly};
use crate::real::Real;

/// Quotient of two bivariate Laurent polynomials in (a, q).
///
/// Normal form: no common monomial, no common factor depending on q alone or
/// on a alone, nonnegative exponents, denominator with leading coefficient 1.
/// Mixed common factors are not cancelled, so equality is decided by cross
/// multiplication rather than by comparing fields.
#[derive(Clone, Serialize, Deserialize)]
pub struct RatFunc {
    num: BivarPoly,
    den: BivarPoly,
}

impl RatFunc {
    pub fn new(num: BivarPoly, den: BivarPoly) -> Result<Self, QError> {
        if den.is_zero() {
            return Err(QError::DivisionByZero);
        }
        Ok(RatFunc::normalized(num, den))
    }

    /// Wraps a pair without normalizing; used when replaying stored data.
    pub fn raw(num: BivarPoly, den: BivarPoly) -> Self {
        RatFunc { num, den }
    }

    pub fn from_poly(p: BivarPoly) -> Self {
        RatFunc::normalized(p, BivarPoly::one())
    }

    pub fn constant(c: Rat) -> Self {
        RatFunc { num: BivarPoly::constant(c), den: BivarPoly::one() }
    }

    pub fn int(c: i64) -> Self {
        RatFunc { num: BivarPoly::int(c), den: BivarPoly::one() }
    }

    pub fn zero() -> Self {
        RatFunc::int(0)
    }

    pub fn one() -> Self {
        RatFunc::int(1)
    }

    pub fn a() -> Self {
        RatFunc::from_poly(BivarPoly::a())
    }

    pub fn q() -> Self {
        RatFunc::from_poly(BivarPoly::q())
    }

    pub fn from_laurent(p: &LaurentPoly) -> Self {
        RatFunc::from_poly(BivarPoly::from_laurent(p, 0))
    }

    pub fn from_qfrac(f: &QFrac) -> Self {
        RatFunc::normalized(
            BivarPoly::from_laurent(&LaurentPoly::from_upoly(f.num()), 0),
            BivarPoly::from_laurent(&LaurentPoly::from_upoly(f.den()), 0),
        )
    }

    pub fn num(&self) -> &BivarPoly {
        &self.num
    }

    pub fn den(&self) -> &BivarPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn normalized(num: BivarPoly, den: BivarPoly) -> Self {
        if num.is_zero() {
            return RatFunc::zero();
        }
        // common monomial: bring every exponent to >= 0 with a zero minimum
        let (na, nq) = num.min_exps().expect("nonzero");
        let (da, dq) = den.min_exps().expect("nonzero");
        let (ma, mq) = (na.min(da), nq.min(dq));
        let mut num = num.shift(-ma, -mq);
        let mut den = den.shift(-ma, -mq);
        // content depending on q alone
        let g = q_content(&num).gcd(&q_content(&den));
        if g.degree().unwrap_or(0) > 0 {
            num = divide_q_content(&num, &g);
            den = divide_q_content(&den, &g);
        }
        // content depending on a alone
        let sn = num.swap_vars();
        let sd = den.swap_vars();
        let g = q_content(&sn).gcd(&q_content(&sd));
        if g.degree().unwrap_or(0) > 0 {
            num = divide_q_content(&sn, &g).swap_vars();
            den = divide_q_content(&sd, &g).swap_vars();
        }
        let (_, lc) = den.leading().expect("nonzero denominator");
        let inv = Rat::one() / lc;
        RatFunc { num: num.scale(&inv), den: den.scale(&inv) }
    }

    pub fn inv(&self) -> Result<Self, QError> {
        RatFunc::new(self.den.clone(), self.num.clone())
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = RatFunc::one();
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Substitutes `a = q^t`, giving an element of Q(q).
    pub fn subs_a_qpow(&self, t: i64) -> Result<QFrac, QError> {
        let n = QFrac::from_laurent(&self.num.subs_a_qpow(t));
        let d = QFrac::from_laurent(&self.den.subs_a_qpow(t));
        if d.is_zero() {
            return Err(QError::DivisionByZero);
        }
        Ok(&n / &d)
    }

    pub fn eval_real(&self, a: &Real, q: &Real) -> Result<Real, QError> {
        let d = self.den.eval_real(a, q);
        if d.is_zero() {
            return Err(QError::DivisionByZero);
        }
        Ok(self.num.eval_real(a, q) / d)
    }

    pub fn eval_rat(&self, a: &Rat, q: &Rat) -> Result<Rat, QError> {
        let d = self.den.eval_rat(a, q);
        if d.is_zero() {
            return Err(QError::DivisionByZero);
        }
        Ok(self.num.eval_rat(a, q) / d)
    }

    /// Exact equality as rational functions.
    pub fn equals(&self, other: &RatFunc) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }
}

/// Monic gcd of the q-polynomials multiplying each power of a.
fn q_content(p: &BivarPoly) -> UPoly {
    let mut g = UPoly::zero();
    for (_, c) in p.a_coeffs() {
        let (_, u) = c.to_upoly();
        g = g.gcd(&u);
        if g.degree() == Some(0) {
            break;
        }
    }
    g
}

fn divide_q_content(p: &BivarPoly, g: &UPoly) -> BivarPoly {
    let mut coeffs = p.a_coeffs();
    for c in coeffs.values_mut() {
        let (s, u) = c.to_upoly();
        let quot = u.div_exact(g).expect("content divides every coefficient");
        *c = LaurentPoly::from_upoly(&quot).shift(s);
    }
    BivarPoly::from_a_coeffs(&coeffs)
}

impl PartialEq for RatFunc {
    fn eq(&self, other: &Self) -> bool {
        self.equals(other)
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == BivarPoly::one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, o: &RatFunc) -> RatFunc {
        if self.den == o.den {
            return RatFunc::normalized(&self.num + &o.num, self.den.clone());
        }
        RatFunc::normalized(&(&self.num * &o.den) + &(&o.num * &self.den), &self.den * &o.den)
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, o: &RatFunc) -> RatFunc {
        self + &(-o)
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, o: &RatFunc) -> RatFunc {
        RatFunc::normalized(&self.num * &o.num, &self.den * &o.den)
    }
}

/// Panics on division by the zero function; use [`RatFunc::inv`] to handle it.
impl Div for &RatFunc {
    type Output = RatFunc;
    fn div(self, o: &RatFunc) -> RatFunc {
        assert!(!o.is_zero(), "division by the zero rational function");
        RatFunc::normalized(&self.num * &o.den, &self.den * &o.num)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl $tr for RatFunc {
            type Output = RatFunc;
            fn $m(self, o: RatFunc) -> RatFunc {
                (&self).$m(&o)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);
owned_ops!(Div, div);

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

impl Zero for RatFunc {
    fn zero() -> Self {
        RatFunc::zero()
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}
