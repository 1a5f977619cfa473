use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{parse_rat, rat_to_string, QError, Rat, UPoly};
use crate::real::Real;

/// Laurent polynomial in q. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, Rat>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        LaurentPoly::monomial(Rat::one(), 0)
    }

    pub fn constant(c: Rat) -> Self {
        LaurentPoly::monomial(c, 0)
    }

    pub fn monomial(c: Rat, e: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        LaurentPoly { terms }
    }

    pub fn q() -> Self {
        LaurentPoly::monomial(Rat::one(), 1)
    }

    /// Builds `sum c_i q^(lowest + i)` from integer coefficients.
    pub fn from_ints(lowest: i64, coeffs: &[i64]) -> Self {
        let mut p = LaurentPoly::zero();
        for (i, &c) in coeffs.iter().enumerate() {
            p.add_term(lowest + i as i64, Rat::from_integer(BigInt::from(c)));
        }
        p
    }

    /// Builds from (exponent, coefficient) pairs, summing repeats.
    pub fn from_terms(it: impl IntoIterator<Item = (i64, Rat)>) -> Self {
        let mut p = LaurentPoly::zero();
        for (e, c) in it {
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, e: i64, c: Rat) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(Rat::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rat)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn coeff(&self, e: i64) -> Rat {
        self.terms.get(&e).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn scale(&self, k: &Rat) -> Self {
        LaurentPoly::from_terms(self.terms.iter().map(|(e, c)| (*e, c * k)))
    }

    /// Multiply by `q^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentPoly { terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect() }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = LaurentPoly::one();
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Writes `self = q^s * u(q)` with `u` an ordinary polynomial, `u(0) != 0`.
    pub fn to_upoly(&self) -> (i64, UPoly) {
        let Some(lo) = self.min_exp() else {
            return (0, UPoly::zero());
        };
        let hi = self.max_exp().unwrap_or(lo);
        let mut c = vec![Rat::zero(); (hi - lo + 1) as usize];
        for (e, v) in &self.terms {
            c[(e - lo) as usize] = v.clone();
        }
        (lo, UPoly::new(c))
    }

    pub fn from_upoly(p: &UPoly) -> Self {
        LaurentPoly::from_terms(p.coeffs().iter().enumerate().map(|(i, c)| (i as i64, c.clone())))
    }

    pub fn eval_rat(&self, q: &Rat) -> Result<Rat, QError> {
        if q.is_zero() && self.min_exp().is_some_and(|e| e < 0) {
            return Err(QError::DivisionByZero);
        }
        let mut acc = Rat::zero();
        for (e, c) in &self.terms {
            let pw = if *e >= 0 { num_traits::pow(q.clone(), *e as usize) } else { Rat::one() / num_traits::pow(q.clone(), (-e) as usize) };
            acc += c * pw;
        }
        Ok(acc)
    }

    /// Numeric value at a positive real q.
    pub fn eval_real(&self, q: &Real) -> Result<Real, QError> {
        if !q.is_positive() {
            return Err(QError::NonPositivePoint(q.to_string_digits(12)));
        }
        let (s, u) = self.to_upoly();
        let base = u.eval_real(q);
        let factor = if s >= 0 { q.powi(s as u32) } else { q.powi((-s) as u32).recip() };
        Ok(base * factor)
    }

    /// Sign of the leading coefficient (behaviour as q goes to infinity).
    pub fn sign_at_infinity(&self) -> i32 {
        match self.terms.values().next_back() {
            None => 0,
            Some(c) if c.is_positive() => 1,
            Some(_) => -1,
        }
    }

    /// `q -> 1/q`.
    pub fn bar(&self) -> Self {
        LaurentPoly { terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect() }
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            let cs = rat_to_string(&mag);
            match (*e, mag.is_one()) {
                (0, _) => write!(f, "{cs}")?,
                (1, true) => write!(f, "q")?,
                (1, false) => write!(f, "{cs}*q")?,
                (e, true) => write!(f, "q^{e}")?,
                (e, false) => write!(f, "{cs}*q^{e}")?,
            }
        }
        Ok(())
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, o: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, o: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(*e, -c.clone());
        }
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, o: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect() }
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.terms.iter().map(|(e, c)| (*e, rat_to_string(c))))
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = Vec::<(i64, String)>::deserialize(d)?;
        let mut p = LaurentPoly::zero();
        for (e, c) in v {
            p.add_term(e, parse_rat(&c).map_err(serde::de::Error::custom)?);
        }
        Ok(p)
    }
}
