//! Exact arithmetic in q and a = q^n.
//!
//! The tower runs from dense univariate polynomials ([`UPoly`]) through
//! Laurent polynomials in q ([`LaurentPoly`]) and univariate rational
//! functions ([`QFrac`]) up to bivariate Laurent polynomials in (a, q)
//! ([`BivarPoly`]) and their quotients ([`RatFunc`]). Sign claims about these
//! objects are settled by [`positivity`] certificates that can be replayed
//! without trusting the code that produced them.

mod bivar;
mod laurent;
pub mod positivity;
mod qfrac;
mod quantum;
mod ratfunc;
pub mod sturm;
mod upoly;

pub use bivar::BivarPoly;
pub use laurent::LaurentPoly;
pub use qfrac::QFrac;
pub use quantum::{quantum_integer, quantum_integer_shifted};
pub use ratfunc::RatFunc;
pub use upoly::UPoly;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

/// Exact rational number.
pub type Rat = BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QError {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("evaluation point must be positive, got {0}")]
    NonPositivePoint(String),
    #[error("malformed rational literal {0:?}")]
    BadRational(String),
}

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Parses `p`, `p/q` or a finite decimal such as `1.6789` into an exact rational.
pub fn parse_rat(s: &str) -> Result<Rat, QError> {
    let t = s.trim();
    let bad = || QError::BadRational(s.to_string());
    if let Some((n, d)) = t.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(Rat::new(n, d));
    }
    if let Some((ip, fp)) = t.split_once('.') {
        if fp.is_empty() || !fp.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let neg = ip.starts_with('-');
        let ip = ip.trim_start_matches(['-', '+']);
        let whole: BigInt = if ip.is_empty() { BigInt::zero() } else { ip.parse().map_err(|_| bad())? };
        let frac: BigInt = fp.parse().map_err(|_| bad())?;
        let scale = num_traits::pow(BigInt::from(10), fp.len());
        let v = Rat::new(whole * &scale + frac, scale);
        return Ok(if neg { -v } else { v });
    }
    let n: BigInt = t.parse().map_err(|_| bad())?;
    Ok(Rat::from_integer(n))
}

/// Canonical text form used in JSON: `n` or `n/d`.
pub fn rat_to_string(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub(crate) mod rat_serde {
    use super::{parse_rat, rat_to_string, Rat};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rat, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&rat_to_string(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rat, D::Error> {
        let s = String::deserialize(d)?;
        parse_rat(&s).map_err(serde::de::Error::custom)
    }
}

pub(crate) mod rat_vec_serde {
    use super::{parse_rat, rat_to_string, Rat};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[Rat], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(rat_to_string))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rat>, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        v.iter().map(|s| parse_rat(s).map_err(serde::de::Error::custom)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_decimal_bound_exactly() {
        assert_eq!(parse_rat("1.6789").unwrap(), rat(16789, 10000));
        assert_eq!(parse_rat("16789/10000").unwrap(), rat(16789, 10000));
        assert_eq!(parse_rat("-0.5").unwrap(), rat(-1, 2));
        assert_eq!(parse_rat("7").unwrap(), rat_int(7));
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("1.").is_err());
        assert_eq!(rat_to_string(&rat(6, 4)), "3/2");
    }
}
