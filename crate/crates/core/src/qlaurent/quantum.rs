use num_traits::One;

use super::{BivarPoly, LaurentPoly, Rat, RatFunc};

/// Quantum integer `[k] = (q^k - q^-k) / (q - q^-1)` as a Laurent polynomial.
///
/// Negative `k` follows `[-k] = -[k]`.
pub fn quantum_integer(k: i64) -> LaurentPoly {
    if k < 0 {
        return -&quantum_integer(-k);
    }
    LaurentPoly::from_terms((0..k).map(|i| (k - 1 - 2 * i, Rat::one())))
}

/// `[n + j]` as a rational function of `a = q^n` and q.
pub fn quantum_integer_shifted(j: i64) -> RatFunc {
    let num = &BivarPoly::monomial(Rat::one(), 1, j) - &BivarPoly::monomial(Rat::one(), -1, -j);
    let den = &BivarPoly::q() - &BivarPoly::monomial(Rat::one(), 0, -1);
    RatFunc::new(num, den).expect("q - 1/q is nonzero")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qlaurent::{rat, QFrac};

    #[test]
    fn small_values() {
        assert_eq!(quantum_integer(1), LaurentPoly::one());
        assert_eq!(quantum_integer(2), LaurentPoly::from_ints(-1, &[1, 0, 1]));
        assert_eq!(quantum_integer(3).eval_rat(&rat(2, 1)).unwrap(), rat(21, 4));
        assert!(quantum_integer(0).is_zero());
    }

    #[test]
    fn shifted_matches_plain_after_substitution() {
        let s = quantum_integer_shifted(0).subs_a_qpow(3).unwrap();
        assert_eq!(s, QFrac::from_laurent(&quantum_integer(3)));
        let one = quantum_integer_shifted(1).subs_a_qpow(0).unwrap();
        assert_eq!(one, QFrac::one());
    }

    #[test]
    fn shifted_chebyshev_identity() {
        let two = RatFunc::from_laurent(&quantum_integer(2));
        let lhs = &(&quantum_integer_shifted(2) + &quantum_integer_shifted(0)) - &(&two * &quantum_integer_shifted(1));
        assert!(lhs.is_zero());
    }
}
