use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{parse_rat, rat_to_string, LaurentPoly, Rat};
use crate::real::Real;

/// Laurent polynomial in (a, q); keys are `(exponent of a, exponent of q)`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BivarPoly {
    terms: BTreeMap<(i64, i64), Rat>,
}

impl BivarPoly {
    pub fn zero() -> Self {
        BivarPoly::default()
    }

    pub fn one() -> Self {
        BivarPoly::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        BivarPoly::monomial(c, 0, 0)
    }

    pub fn int(c: i64) -> Self {
        BivarPoly::constant(Rat::from_integer(BigInt::from(c)))
    }

    pub fn monomial(c: Rat, ea: i64, eq: i64) -> Self {
        let mut p = BivarPoly::zero();
        p.add_term(ea, eq, c);
        p
    }

    pub fn a() -> Self {
        BivarPoly::monomial(Rat::one(), 1, 0)
    }

    pub fn q() -> Self {
        BivarPoly::monomial(Rat::one(), 0, 1)
    }

    /// Embeds a Laurent polynomial in q as `a^ea * p(q)`.
    pub fn from_laurent(p: &LaurentPoly, ea: i64) -> Self {
        let mut out = BivarPoly::zero();
        for (e, c) in p.terms() {
            out.add_term(ea, e, c.clone());
        }
        out
    }

    /// Reassembles `sum_j a^j p_j(q)`.
    pub fn from_a_coeffs(coeffs: &BTreeMap<i64, LaurentPoly>) -> Self {
        let mut out = BivarPoly::zero();
        for (ea, p) in coeffs {
            for (eq, c) in p.terms() {
                out.add_term(*ea, eq, c.clone());
            }
        }
        out
    }

    pub fn add_term(&mut self, ea: i64, eq: i64, c: Rat) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry((ea, eq)).or_insert_with(Rat::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&(ea, eq));
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = ((i64, i64), &Rat)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, ea: i64, eq: i64) -> Rat {
        self.terms.get(&(ea, eq)).cloned().unwrap_or_else(Rat::zero)
    }

    /// Leading term in lex order (a first, then q).
    pub fn leading(&self) -> Option<((i64, i64), Rat)> {
        self.terms.iter().next_back().map(|(k, c)| (*k, c.clone()))
    }

    pub fn scale(&self, k: &Rat) -> Self {
        let mut out = BivarPoly::zero();
        for (&(ea, eq), c) in &self.terms {
            out.add_term(ea, eq, c * k);
        }
        out
    }

    /// Multiply by `a^da q^dq`.
    pub fn shift(&self, da: i64, dq: i64) -> Self {
        BivarPoly { terms: self.terms.iter().map(|(&(ea, eq), c)| ((ea + da, eq + dq), c.clone())).collect() }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = BivarPoly::one();
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Smallest exponents of a and of q, taken independently.
    pub fn min_exps(&self) -> Option<(i64, i64)> {
        let ma = self.terms.keys().map(|k| k.0).min()?;
        let mq = self.terms.keys().map(|k| k.1).min()?;
        Some((ma, mq))
    }

    pub fn max_exps(&self) -> Option<(i64, i64)> {
        let ma = self.terms.keys().map(|k| k.0).max()?;
        let mq = self.terms.keys().map(|k| k.1).max()?;
        Some((ma, mq))
    }

    /// Coefficients as polynomials in q, grouped by power of a.
    pub fn a_coeffs(&self) -> BTreeMap<i64, LaurentPoly> {
        let mut out: BTreeMap<i64, LaurentPoly> = BTreeMap::new();
        for (&(ea, eq), c) in &self.terms {
            out.entry(ea).or_default().add_term(eq, c.clone());
        }
        out
    }

    /// Coefficients as polynomials in a (written in the variable q of
    /// [`LaurentPoly`]), grouped by power of q.
    pub fn q_coeffs(&self) -> BTreeMap<i64, LaurentPoly> {
        let mut out: BTreeMap<i64, LaurentPoly> = BTreeMap::new();
        for (&(ea, eq), c) in &self.terms {
            out.entry(eq).or_default().add_term(ea, c.clone());
        }
        out
    }

    /// Exchanges the roles of a and q.
    pub fn swap_vars(&self) -> Self {
        BivarPoly { terms: self.terms.iter().map(|(&(ea, eq), c)| ((eq, ea), c.clone())).collect() }
    }

    /// Substitutes `a = q^t`.
    pub fn subs_a_qpow(&self, t: i64) -> LaurentPoly {
        LaurentPoly::from_terms(self.terms.iter().map(|(&(ea, eq), c)| (eq + t * ea, c.clone())))
    }

    /// Substitutes `a -> scale * q^shift * a`.
    pub fn subs_a_scaled(&self, shift: i64, scale: &Rat) -> Self {
        let mut out = BivarPoly::zero();
        for (&(ea, eq), c) in &self.terms {
            let k = if ea >= 0 {
                num_traits::pow(scale.clone(), ea as usize)
            } else {
                Rat::one() / num_traits::pow(scale.clone(), (-ea) as usize)
            };
            out.add_term(ea, eq + shift * ea, c * k);
        }
        out
    }

    pub fn eval_rat(&self, a: &Rat, q: &Rat) -> Rat {
        let pw = |x: &Rat, e: i64| {
            if e >= 0 {
                num_traits::pow(x.clone(), e as usize)
            } else {
                Rat::one() / num_traits::pow(x.clone(), (-e) as usize)
            }
        };
        self.terms.iter().map(|(&(ea, eq), c)| c * pw(a, ea) * pw(q, eq)).fold(Rat::zero(), |s, t| s + t)
    }

    pub fn eval_real(&self, a: &Real, q: &Real) -> Real {
        let prec = a.precision();
        let pw = |x: &Real, e: i64| if e >= 0 { x.powi(e as u32) } else { x.powi((-e) as u32).recip() };
        let mut acc = Real::zero(prec);
        for (&(ea, eq), c) in &self.terms {
            acc = acc + Real::from_rat(c, prec) * pw(a, ea) * pw(q, eq);
        }
        acc
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &BivarPoly) -> Option<BivarPoly> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(BivarPoly::zero());
        }
        // Move both to genuine polynomials with zero minimal exponents, then
        // run lex division; the quotient is a polynomial in that normal form.
        let (pa, pq) = self.min_exps()?;
        let (da, dq) = d.min_exps()?;
        let p0 = self.shift(-pa, -pq);
        let d0 = d.shift(-da, -dq);
        let ((la, lq), lc) = d0.leading()?;
        let lc_inv = Rat::one() / lc;
        let mut rem = p0;
        let mut quot = BivarPoly::zero();
        while let Some(((ra, rq), rc)) = rem.leading() {
            if ra < la || rq < lq {
                return None;
            }
            let t = BivarPoly::monomial(&rc * &lc_inv, ra - la, rq - lq);
            rem = &rem - &(&t * &d0);
            quot = &quot + &t;
        }
        Some(quot.shift(pa - da, pq - dq))
    }

    /// Integer-coefficient rescaling: returns `(k, p)` with `self = k * p`,
    /// `p` having coprime integer coefficients.
    pub fn primitive_scale(&self) -> (Rat, BivarPoly) {
        use num_integer::Integer;
        if self.is_zero() {
            return (Rat::one(), self.clone());
        }
        let mut den = BigInt::one();
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            den = den.lcm(c.denom());
        }
        for c in self.terms.values() {
            g = g.gcd(&(c * Rat::from_integer(den.clone())).to_integer());
        }
        let k = Rat::new(g, den);
        (k.clone(), self.scale(&(Rat::one() / k)))
    }
}

impl fmt::Debug for BivarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for BivarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(ea, eq), c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            let mag = c.abs();
            let mut parts = Vec::new();
            if !mag.is_one() || (ea == 0 && eq == 0) {
                parts.push(rat_to_string(&mag));
            }
            match ea {
                0 => {}
                1 => parts.push("a".into()),
                e => parts.push(format!("a^{e}")),
            }
            match eq {
                0 => {}
                1 => parts.push("q".into()),
                e => parts.push(format!("q^{e}")),
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

impl Add for &BivarPoly {
    type Output = BivarPoly;
    fn add(self, o: &BivarPoly) -> BivarPoly {
        let mut out = self.clone();
        for (&(ea, eq), c) in &o.terms {
            out.add_term(ea, eq, c.clone());
        }
        out
    }
}

impl Sub for &BivarPoly {
    type Output = BivarPoly;
    fn sub(self, o: &BivarPoly) -> BivarPoly {
        let mut out = self.clone();
        for (&(ea, eq), c) in &o.terms {
            out.add_term(ea, eq, -c.clone());
        }
        out
    }
}

impl Mul for &BivarPoly {
    type Output = BivarPoly;
    fn mul(self, o: &BivarPoly) -> BivarPoly {
        let mut out = BivarPoly::zero();
        for (&(a1, q1), c1) in &self.terms {
            for (&(a2, q2), c2) in &o.terms {
                out.add_term(a1 + a2, q1 + q2, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &BivarPoly {
    type Output = BivarPoly;
    fn neg(self) -> BivarPoly {
        BivarPoly { terms: self.terms.iter().map(|(k, c)| (*k, -c.clone())).collect() }
    }
}

impl Serialize for BivarPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.terms.iter().map(|(&(ea, eq), c)| (ea, eq, rat_to_string(c))))
    }
}

impl<'de> Deserialize<'de> for BivarPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = Vec::<(i64, i64, String)>::deserialize(d)?;
        let mut p = BivarPoly::zero();
        for (ea, eq, c) in v {
            p.add_term(ea, eq, parse_rat(&c).map_err(serde::de::Error::custom)?);
        }
        Ok(p)
    }
}
