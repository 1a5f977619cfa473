use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{LaurentPoly, Rat, UPoly};

/// Element of Q(q): reduced quotient of polynomials with monic denominator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QFrac {
    num: UPoly,
    den: UPoly,
}

impl QFrac {
    /// Panics on a zero denominator; callers check first.
    pub fn new(num: UPoly, den: UPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator in Q(q)");
        if num.is_zero() {
            return QFrac::zero();
        }
        let g = num.gcd(&den);
        let num = num.div_exact(&g).expect("gcd divides numerator");
        let den = den.div_exact(&g).expect("gcd divides denominator");
        let l = den.leading();
        let inv = Rat::one() / l;
        QFrac { num: num.scale(&inv), den: den.scale(&inv) }
    }

    pub fn zero() -> Self {
        QFrac { num: UPoly::zero(), den: UPoly::one() }
    }

    pub fn one() -> Self {
        QFrac { num: UPoly::one(), den: UPoly::one() }
    }

    pub fn from_poly(p: UPoly) -> Self {
        QFrac { num: p, den: UPoly::one() }
    }

    pub fn from_rat(c: Rat) -> Self {
        QFrac::from_poly(UPoly::constant(c))
    }

    /// Laurent polynomials embed as `u(q) / q^k`.
    pub fn from_laurent(p: &LaurentPoly) -> Self {
        let (s, u) = p.to_upoly();
        if s >= 0 {
            QFrac::from_poly(u.shift_up(s as usize))
        } else {
            QFrac::new(u, UPoly::monomial(Rat::one(), (-s) as usize))
        }
    }

    pub fn num(&self) -> &UPoly {
        &self.num
    }

    pub fn den(&self) -> &UPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn inv(&self) -> Option<Self> {
        (!self.is_zero()).then(|| QFrac::new(self.den.clone(), self.num.clone()))
    }

    pub fn eval(&self, q: &Rat) -> Option<Rat> {
        let d = self.den.eval(q);
        (!d.is_zero()).then(|| self.num.eval(q) / d)
    }
}

impl fmt::Debug for QFrac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}) / ({:?})", self.num, self.den)
    }
}

impl Add for &QFrac {
    type Output = QFrac;
    fn add(self, o: &QFrac) -> QFrac {
        if self.den == o.den {
            return QFrac::new(&self.num + &o.num, self.den.clone());
        }
        QFrac::new(&(&self.num * &o.den) + &(&o.num * &self.den), &self.den * &o.den)
    }
}

impl Sub for &QFrac {
    type Output = QFrac;
    fn sub(self, o: &QFrac) -> QFrac {
        self + &(-o)
    }
}

impl Mul for &QFrac {
    type Output = QFrac;
    fn mul(self, o: &QFrac) -> QFrac {
        if self.is_zero() || o.is_zero() {
            return QFrac::zero();
        }
        QFrac::new(&self.num * &o.num, &self.den * &o.den)
    }
}

impl Div for &QFrac {
    type Output = QFrac;
    fn div(self, o: &QFrac) -> QFrac {
        let inv = o.inv().expect("division by zero in Q(q)");
        self * &inv
    }
}

impl Neg for &QFrac {
    type Output = QFrac;
    fn neg(self) -> QFrac {
        QFrac { num: -&self.num, den: self.den.clone() }
    }
}

impl Zero for QFrac {
    fn zero() -> Self {
        QFrac::zero()
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl Add for QFrac {
    type Output = QFrac;
    fn add(self, o: QFrac) -> QFrac {
        &self + &o
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qlaurent::rat;

    #[test]
    fn field_ops_reduce() {
        let x = QFrac::from_poly(UPoly::x());
        let one = QFrac::one();
        // (x^2 - 1)/(x - 1) reduces to x + 1
        let a = QFrac::new(UPoly::from_ints(&[-1, 0, 1]), UPoly::from_ints(&[-1, 1]));
        assert_eq!(a, &x + &one);
        let b = &(&a / &a) - &one;
        assert!(b.is_zero());
        assert_eq!(a.eval(&rat(3, 1)), Some(rat(4, 1)));
    }

    #[test]
    fn laurent_embedding() {
        let p = LaurentPoly::from_ints(-1, &[1, 0, 1]);
        let f = QFrac::from_laurent(&p);
        assert_eq!(f.eval(&rat(2, 1)), Some(rat(5, 2)));
    }
}
