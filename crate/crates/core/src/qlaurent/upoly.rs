use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{QError, Rat};
use crate::real::Real;

/// Dense univariate polynomial with rational coefficients, lowest degree first.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct UPoly {
    c: Vec<Rat>,
}

impl UPoly {
    pub fn new(mut c: Vec<Rat>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        UPoly { c }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        UPoly::new(c.iter().map(|&x| Rat::from_integer(BigInt::from(x))).collect())
    }

    pub fn zero() -> Self {
        UPoly { c: Vec::new() }
    }

    pub fn constant(x: Rat) -> Self {
        UPoly::new(vec![x])
    }

    pub fn one() -> Self {
        UPoly::constant(Rat::one())
    }

    /// The monomial `coef * x^k`.
    pub fn monomial(coef: Rat, k: usize) -> Self {
        let mut c = vec![Rat::zero(); k + 1];
        c[k] = coef;
        UPoly::new(c)
    }

    pub fn x() -> Self {
        UPoly::monomial(Rat::one(), 1)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.c
    }

    pub fn coeff(&self, k: usize) -> Rat {
        self.c.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn leading(&self) -> Rat {
        self.c.last().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn scale(&self, k: &Rat) -> Self {
        UPoly::new(self.c.iter().map(|x| x * k).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let l = self.leading();
        self.scale(&(Rat::one() / l))
    }

    /// Multiply by `x^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = vec![Rat::zero(); k];
        c.extend(self.c.iter().cloned());
        UPoly { c }
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for a in self.c.iter().rev() {
            acc = acc * x + a;
        }
        acc
    }

    pub fn eval_real(&self, x: &Real) -> Real {
        let prec = x.precision();
        let mut acc = Real::zero(prec);
        for a in self.c.iter().rev() {
            acc = acc * x + Real::from_rat(a, prec);
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        UPoly::new(
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, a)| a * Rat::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    /// Euclidean division: returns (quotient, remainder).
    pub fn div_rem(&self, d: &UPoly) -> Result<(UPoly, UPoly), QError> {
        let dd = d.degree().ok_or(QError::DivisionByZero)?;
        let Some(nd) = self.degree() else {
            return Ok((UPoly::zero(), UPoly::zero()));
        };
        if nd < dd {
            return Ok((UPoly::zero(), self.clone()));
        }
        let lead_inv = Rat::one() / d.leading();
        let mut r = self.c.clone();
        let mut q = vec![Rat::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let coef = &r[k + dd] * &lead_inv;
            if coef.is_zero() {
                continue;
            }
            for (i, di) in d.c.iter().enumerate() {
                let t = &coef * di;
                r[k + i] -= t;
            }
            q[k] = coef;
        }
        r.truncate(dd);
        Ok((UPoly::new(q), UPoly::new(r)))
    }

    /// Exact quotient, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &UPoly) -> Option<UPoly> {
        let (q, r) = self.div_rem(d).ok()?;
        r.is_zero().then_some(q)
    }

    /// Monic greatest common divisor (zero only when both inputs are zero).
    pub fn gcd(&self, other: &UPoly) -> UPoly {
        let mut a = self.primitive();
        let mut b = other.primitive();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            a = b;
            b = r.primitive();
        }
        a.monic()
    }

    /// Integer content scaled away: coprime integer coefficients, positive leading term.
    pub fn primitive(&self) -> UPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut den = BigInt::one();
        for a in &self.c {
            den = den.lcm(a.denom());
        }
        let ints: Vec<BigInt> = self.c.iter().map(|a| (a * Rat::from_integer(den.clone())).to_integer()).collect();
        let mut g = BigInt::zero();
        for i in &ints {
            g = g.gcd(i);
        }
        if self.leading().is_negative() {
            g = -g;
        }
        UPoly::new(ints.into_iter().map(|i| Rat::new(i, g.clone())).collect())
    }

    /// Taylor shift: the polynomial `s -> self(s + c)`.
    pub fn taylor_shift(&self, c: &Rat) -> UPoly {
        // Horner in the ring of polynomials in s
        let mut acc = UPoly::zero();
        let lin = UPoly::new(vec![c.clone(), Rat::one()]);
        for a in self.c.iter().rev() {
            acc = &(&acc * &lin) + &UPoly::constant(a.clone());
        }
        acc
    }

    /// Sign of the polynomial as x goes to +infinity.
    pub fn sign_at_infinity(&self) -> i32 {
        if self.is_zero() {
            0
        } else if self.leading().is_positive() {
            1
        } else {
            -1
        }
    }

    pub fn pow(&self, k: u32) -> UPoly {
        let mut out = UPoly::one();
        for _ in 0..k {
            out = &out * self;
        }
        out
    }
}

impl fmt::Debug for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, a) in self.c.iter().enumerate().rev() {
            if a.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({a})x^{i}")?;
        }
        Ok(())
    }
}

impl Add for &UPoly {
    type Output = UPoly;
    fn add(self, o: &UPoly) -> UPoly {
        let n = self.c.len().max(o.c.len());
        UPoly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }
}

impl Sub for &UPoly {
    type Output = UPoly;
    fn sub(self, o: &UPoly) -> UPoly {
        let n = self.c.len().max(o.c.len());
        UPoly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }
}

impl Mul for &UPoly {
    type Output = UPoly;
    fn mul(self, o: &UPoly) -> UPoly {
        if self.is_zero() || o.is_zero() {
            return UPoly::zero();
        }
        let mut c = vec![Rat::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        UPoly::new(c)
    }
}

impl Neg for &UPoly {
    type Output = UPoly;
    fn neg(self) -> UPoly {
        UPoly::new(self.c.iter().map(|a| -a).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qlaurent::rat;

    #[test]
    fn division_identity() {
        let a = UPoly::from_ints(&[1, 2, 3, 4, 5]);
        let b = UPoly::from_ints(&[-1, 0, 2]);
        let (q, r) = a.div_rem(&b).unwrap();
        assert_eq!(&(&q * &b) + &r, a);
        assert!(r.degree().unwrap() < 2);
    }

    #[test]
    fn gcd_recovers_common_factor() {
        let f = UPoly::from_ints(&[-1, 1]);
        let g = UPoly::from_ints(&[1, 0, 1]);
        let h = UPoly::from_ints(&[2, 1]);
        let a = &f * &g;
        let b = &(&f * &h) * &h;
        assert_eq!(a.gcd(&b), f.monic());
    }

    #[test]
    fn taylor_shift_matches_evaluation() {
        let p = UPoly::from_ints(&[3, -2, 0, 1]);
        let c = rat(16789, 10000);
        let s = p.taylor_shift(&c);
        for t in 0..5 {
            let t = rat(t, 3);
            assert_eq!(s.eval(&t), p.eval(&(&t + &c)));
        }
    }
}
