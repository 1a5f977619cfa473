//! Replayable positivity certificates.
//!
//! A [`Certificate`] pairs a [`Claim`] with a method and a witness. The
//! prover functions search for a witness; [`check`] replays one using only
//! exact rational arithmetic and never calls back into the provers.
//!
//! Methods:
//! * `shift_expansion`: the coefficients of `p(q0 + s)` are nonnegative.
//! * `root_isolation`: a Sturm chain shows `p` has no root above `q0`.
//! * `partial_sum`: after `a = amin q^t b` with `b >= 1`, every tail sum
//!   `S_t = sum_{j >= t} p_j(q)` is positive, so Abel summation gives
//!   `P = S_0 + sum_{j >= 1} (b^j - b^(j-1)) S_j > 0`. Since
//!   `S_0 = p_0 + S_1`, this also covers the form `p_0 > 0` used by hand.
//! * `quadrant_shift`: the coefficients of `P(amin + x, q0 + y)` are
//!   nonnegative.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::sturm::{sign_changes_at, sign_changes_at_infinity, sturm_chain, SturmChain, UPolyData};
use super::{rat_serde, rat_to_string, BivarPoly, LaurentPoly, Rat, UPoly};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Claim {
    /// `poly(q) > 0` for `q >= q0`, or for `q > q0` when `q_strict`.
    Univariate {
        poly: LaurentPoly,
        #[serde(with = "rat_serde")]
        q0: Rat,
        q_strict: bool,
    },
    /// `poly(a, q) > 0` whenever `a >= amin * q^a_qshift` and q is in the
    /// range described by `q0` and `q_strict`.
    Bivariate {
        poly: BivarPoly,
        #[serde(with = "rat_serde")]
        amin: Rat,
        a_qshift: i64,
        #[serde(with = "rat_serde")]
        q0: Rat,
        q_strict: bool,
    },
}

impl Claim {
    pub fn q0(&self) -> &Rat {
        match self {
            Claim::Univariate { q0, .. } | Claim::Bivariate { q0, .. } => q0,
        }
    }

    pub fn q_strict(&self) -> bool {
        match self {
            Claim::Univariate { q_strict, .. } | Claim::Bivariate { q_strict, .. } => *q_strict,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    ShiftExpansion,
    RootIsolation,
    PartialSum,
    QuadrantShift,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// Coefficients of `p(q0 + s)` in s, lowest first.
    Shift { coeffs: UPolyData },
    /// Chain plus the quotient for the final exact division.
    Sturm { chain: SturmChain, last_quotient: UPolyData },
    /// Tail sums are proved in the subcertificates, highest index first.
    PartialSum,
    /// Terms `(i, j, c)` of `P(amin + x, q0 + y) = sum c x^i y^j`.
    Quadrant { terms: Vec<(u32, u32, String)> },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Certificate {
    pub claim: Claim,
    pub method: Method,
    pub witness: Witness,
    pub subcertificates: Vec<Certificate>,
}

impl Certificate {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificates serialize")
    }

    pub fn from_json(s: &str) -> Result<Self, CertError> {
        serde_json::from_str(s).map_err(|e| CertError::Malformed(e.to_string()))
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CertError {
    #[error("malformed certificate: {0}")]
    Malformed(String),
    #[error("method {0:?} does not apply to this claim")]
    WrongMethod(Method),
    #[error("q0 must be positive")]
    NonPositiveQ0,
    #[error("amin must be positive")]
    NonPositiveAmin,
    #[error("witness identity fails: {0}")]
    Identity(String),
    #[error("negative coefficient in witness: {0}")]
    NegativeCoefficient(String),
    #[error("sign condition fails: {0}")]
    Sign(String),
    #[error("subcertificate {index} does not match the expected claim")]
    SubclaimMismatch { index: usize },
}

/// Multiplies by a positive monomial so all exponents are nonnegative.
fn laurent_to_poly(p: &LaurentPoly) -> UPoly {
    let (s, u) = p.to_upoly();
    if s >= 0 {
        u.shift_up(s as usize)
    } else {
        u
    }
}

fn bivar_normalized(p: &BivarPoly) -> BivarPoly {
    match p.min_exps() {
        Some((a, q)) => p.shift(-a, -q),
        None => p.clone(),
    }
}

fn int(k: i64) -> Rat {
    Rat::from_integer(BigInt::from(k))
}

// ---------------------------------------------------------------- provers

/// Tries a shift expansion first, then a Sturm chain.
pub fn prove_univariate(p: &LaurentPoly, q0: &Rat, q_strict: bool) -> Option<Certificate> {
    if !q0.is_positive() {
        return None;
    }
    let claim = Claim::Univariate { poly: p.clone(), q0: q0.clone(), q_strict };
    let u = laurent_to_poly(p);
    if u.is_zero() {
        return None;
    }
    let shifted = u.taylor_shift(q0);
    if shift_conditions_hold(shifted.coeffs(), q_strict) {
        return Some(Certificate {
            claim,
            method: Method::ShiftExpansion,
            witness: Witness::Shift { coeffs: UPolyData::from(&shifted) },
            subcertificates: vec![],
        });
    }
    if !u.eval(q0).is_positive() || u.sign_at_infinity() <= 0 {
        return None;
    }
    let chain = sturm_chain(&u);
    let polys: Vec<UPoly> = chain.polys.iter().map(UPoly::from).collect();
    if sign_changes_at(&polys, q0) != sign_changes_at_infinity(&polys) {
        return None;
    }
    let n = polys.len();
    let last_quotient = if n >= 2 {
        polys[n - 2].div_exact(&polys[n - 1]).expect("chain ends in an exact division")
    } else {
        UPoly::zero()
    };
    Some(Certificate {
        claim,
        method: Method::RootIsolation,
        witness: Witness::Sturm { chain, last_quotient: UPolyData::from(&last_quotient) },
        subcertificates: vec![],
    })
}

fn shift_conditions_hold(c: &[Rat], q_strict: bool) -> bool {
    if c.iter().any(|x| x.is_negative()) {
        return false;
    }
    match c.first() {
        Some(c0) if c0.is_positive() => true,
        // zero at q0 itself, positive just above it
        _ => q_strict && c.iter().any(|x| x.is_positive()),
    }
}

/// Tail sums `S_t` of the b-coefficients after `a = amin q^t b`, indexed by t.
fn tail_sums(p: &BivarPoly, amin: &Rat, a_qshift: i64) -> Vec<LaurentPoly> {
    let sub = bivar_normalized(&p.subs_a_scaled(a_qshift, amin));
    let coeffs = sub.a_coeffs();
    let deg = coeffs.keys().next_back().copied().unwrap_or(0).max(0) as usize;
    let mut sums = vec![LaurentPoly::zero(); deg + 1];
    let mut acc = LaurentPoly::zero();
    for t in (0..=deg).rev() {
        if let Some(c) = coeffs.get(&(t as i64)) {
            acc = &acc + c;
        }
        sums[t] = acc.clone();
    }
    sums
}

pub fn prove_partial_sum(p: &BivarPoly, amin: &Rat, a_qshift: i64, q0: &Rat, q_strict: bool) -> Option<Certificate> {
    if !amin.is_positive() || !q0.is_positive() {
        return None;
    }
    let sums = tail_sums(p, amin, a_qshift);
    let mut subs = Vec::with_capacity(sums.len());
    for s in sums.iter().rev() {
        subs.push(prove_univariate(s, q0, q_strict)?);
    }
    Some(Certificate {
        claim: Claim::Bivariate { poly: p.clone(), amin: amin.clone(), a_qshift, q0: q0.clone(), q_strict },
        method: Method::PartialSum,
        witness: Witness::PartialSum,
        subcertificates: subs,
    })
}

/// Coefficients of `P(amin + x, q0 + y)` for a polynomial P.
fn quadrant_expand(p: &BivarPoly, amin: &Rat, q0: &Rat) -> Vec<(u32, u32, Rat)> {
    let mut out = std::collections::BTreeMap::<(u32, u32), Rat>::new();
    // shift in q for each power of a, then expand (amin + x)^i binomially
    for (ea, c) in p.a_coeffs() {
        let u = laurent_to_poly(&c).taylor_shift(q0);
        let ea = ea as u32;
        let mut binom = BigInt::one();
        for i in 0..=ea {
            let w = Rat::from_integer(binom.clone()) * num_traits::pow(amin.clone(), (ea - i) as usize);
            for (j, cj) in u.coeffs().iter().enumerate() {
                if !cj.is_zero() {
                    *out.entry((i, j as u32)).or_insert_with(Rat::zero) += &w * cj;
                }
            }
            binom = binom * BigInt::from(ea - i) / BigInt::from(i + 1);
        }
    }
    out.into_iter().filter(|(_, c)| !c.is_zero()).map(|((i, j), c)| (i, j, c)).collect()
}

fn quadrant_conditions_hold(terms: &[(u32, u32, Rat)], q_strict: bool) -> bool {
    if terms.iter().any(|t| t.2.is_negative()) {
        return false;
    }
    let constant = terms.iter().any(|t| t.0 == 0 && t.1 == 0 && t.2.is_positive());
    constant || (q_strict && terms.iter().any(|t| t.0 == 0 && t.1 > 0 && t.2.is_positive()))
}

pub fn prove_quadrant(p: &BivarPoly, amin: &Rat, q0: &Rat, q_strict: bool) -> Option<Certificate> {
    if !amin.is_positive() || !q0.is_positive() {
        return None;
    }
    let terms = quadrant_expand(&bivar_normalized(p), amin, q0);
    if !quadrant_conditions_hold(&terms, q_strict) {
        return None;
    }
    Some(Certificate {
        claim: Claim::Bivariate { poly: p.clone(), amin: amin.clone(), a_qshift: 0, q0: q0.clone(), q_strict },
        method: Method::QuadrantShift,
        witness: Witness::Quadrant { terms: terms.iter().map(|(i, j, c)| (*i, *j, rat_to_string(c))).collect() },
        subcertificates: vec![],
    })
}

/// Quadrant shift when the region allows it, otherwise partial sums.
pub fn prove_bivariate(p: &BivarPoly, amin: &Rat, a_qshift: i64, q0: &Rat, q_strict: bool) -> Option<Certificate> {
    if a_qshift == 0 {
        if let Some(c) = prove_quadrant(p, amin, q0, q_strict) {
            return Some(c);
        }
    }
    prove_partial_sum(p, amin, a_qshift, q0, q_strict)
}

// ---------------------------------------------------------------- checker

/// Replays a certificate from scratch.
pub fn check(cert: &Certificate) -> Result<(), CertError> {
    if !cert.claim.q0().is_positive() {
        return Err(CertError::NonPositiveQ0);
    }
    match (&cert.claim, cert.method, &cert.witness) {
        (Claim::Univariate { poly, q0, q_strict }, Method::ShiftExpansion, Witness::Shift { coeffs }) => {
            check_shift(&laurent_to_poly(poly), q0, *q_strict, &coeffs.0)
        }
        (Claim::Univariate { poly, q0, q_strict }, Method::RootIsolation, Witness::Sturm { chain, last_quotient }) => {
            check_sturm(&laurent_to_poly(poly), q0, *q_strict, chain, &UPoly::from(last_quotient))
        }
        (Claim::Bivariate { poly, amin, a_qshift, q0, q_strict }, Method::PartialSum, Witness::PartialSum) => {
            if !amin.is_positive() {
                return Err(CertError::NonPositiveAmin);
            }
            check_partial_sum(poly, amin, *a_qshift, q0, *q_strict, &cert.subcertificates)
        }
        (Claim::Bivariate { poly, amin, a_qshift: 0, q0, q_strict }, Method::QuadrantShift, Witness::Quadrant { terms }) => {
            if !amin.is_positive() {
                return Err(CertError::NonPositiveAmin);
            }
            let parsed = terms
                .iter()
                .map(|(i, j, c)| super::parse_rat(c).map(|c| (*i, *j, c)).map_err(|e| CertError::Malformed(e.to_string())))
                .collect::<Result<Vec<_>, _>>()?;
            check_quadrant(&bivar_normalized(poly), amin, q0, *q_strict, &parsed)
        }
        (_, m, _) => Err(CertError::WrongMethod(m)),
    }
}

fn eval_coeffs(c: &[Rat], x: &Rat) -> Rat {
    c.iter().rev().fold(Rat::zero(), |acc, ci| acc * x + ci)
}

fn check_shift(p: &UPoly, q0: &Rat, q_strict: bool, w: &[Rat]) -> Result<(), CertError> {
    let deg = p.degree().ok_or_else(|| CertError::Sign("zero polynomial".into()))?;
    if w.len() > deg + 1 {
        return Err(CertError::Identity("witness degree exceeds claim degree".into()));
    }
    // two polynomials of degree <= deg agreeing at deg + 1 points are equal
    for s in 0..=deg as i64 {
        let s = int(s);
        if p.eval(&(q0 + &s)) != eval_coeffs(w, &s) {
            return Err(CertError::Identity(format!("p(q0 + {s}) differs from the expansion")));
        }
    }
    if let Some(c) = w.iter().find(|c| c.is_negative()) {
        return Err(CertError::NegativeCoefficient(rat_to_string(c)));
    }
    if !shift_conditions_hold(w, q_strict) {
        return Err(CertError::Sign("expansion vanishes identically near q0".into()));
    }
    Ok(())
}

fn check_sturm(p: &UPoly, q0: &Rat, _q_strict: bool, chain: &SturmChain, last_q: &UPoly) -> Result<(), CertError> {
    let polys: Vec<UPoly> = chain.polys.iter().map(UPoly::from).collect();
    let quots: Vec<UPoly> = chain.quotients.iter().map(UPoly::from).collect();
    let scales = chain
        .scales
        .iter()
        .map(|s| super::parse_rat(s).map_err(|e| CertError::Malformed(e.to_string())))
        .collect::<Result<Vec<_>, _>>()?;
    let n = polys.len();
    if n < 2 || quots.len() != n - 2 || scales.len() != n - 2 {
        return Err(CertError::Malformed("chain lengths disagree".into()));
    }
    if polys[0] != *p {
        return Err(CertError::Identity("chain does not start at the claimed polynomial".into()));
    }
    // p_1 is a positive multiple of p'
    let d = p.derivative();
    if d.is_zero() || polys[1].is_zero() {
        return Err(CertError::Identity("derivative vanishes".into()));
    }
    let ratio = polys[1].leading() / d.leading();
    if !ratio.is_positive() || polys[1] != d.scale(&ratio) {
        return Err(CertError::Identity("second entry is not a positive multiple of p'".into()));
    }
    for i in 0..n - 2 {
        if !scales[i].is_positive() {
            return Err(CertError::Sign(format!("scale {i} is not positive")));
        }
        let rhs = &(&quots[i] * &polys[i + 1]) - &polys[i + 2].scale(&scales[i]);
        if rhs != polys[i] {
            return Err(CertError::Identity(format!("division step {i}")));
        }
    }
    if &(last_q * &polys[n - 1]) != &polys[n - 2] {
        return Err(CertError::Identity("final division is not exact".into()));
    }
    if p.eval(q0).is_zero() {
        return Err(CertError::Sign("q0 is a root; use a shift expansion".into()));
    }
    if !p.eval(q0).is_positive() {
        return Err(CertError::Sign("p(q0) is not positive".into()));
    }
    let v0 = sign_changes_at(&polys, q0);
    let vinf = sign_changes_at_infinity(&polys);
    if v0 != vinf {
        return Err(CertError::Sign(format!("{} roots above q0", v0 as i64 - vinf as i64)));
    }
    Ok(())
}

fn check_partial_sum(
    p: &BivarPoly,
    amin: &Rat,
    a_qshift: i64,
    q0: &Rat,
    q_strict: bool,
    subs: &[Certificate],
) -> Result<(), CertError> {
    let sums = tail_sums(p, amin, a_qshift);
    if subs.len() != sums.len() {
        return Err(CertError::Malformed(format!("expected {} tail sums, got {}", sums.len(), subs.len())));
    }
    for (idx, (sub, s)) in subs.iter().zip(sums.iter().rev()).enumerate() {
        let expect = Claim::Univariate { poly: s.clone(), q0: q0.clone(), q_strict };
        if sub.claim != expect {
            return Err(CertError::SubclaimMismatch { index: idx });
        }
        check(sub)?;
    }
    Ok(())
}

fn check_quadrant(p: &BivarPoly, amin: &Rat, q0: &Rat, q_strict: bool, terms: &[(u32, u32, Rat)]) -> Result<(), CertError> {
    let (da, dq) = p.max_exps().unwrap_or((0, 0));
    let in_range = |i: u32, j: u32| i as i64 <= da && j as i64 <= dq;
    if terms.iter().any(|t| !in_range(t.0, t.1)) {
        return Err(CertError::Identity("witness degree exceeds claim degree".into()));
    }
    // agreement on a (da + 1) x (dq + 1) grid pins down the expansion
    for x in 0..=da {
        for y in 0..=dq {
            let (xr, yr) = (int(x), int(y));
            let lhs = p.eval_rat(&(amin + &xr), &(q0 + &yr));
            let rhs = terms.iter().fold(Rat::zero(), |acc, (i, j, c)| {
                acc + c * num_traits::pow(xr.clone(), *i as usize) * num_traits::pow(yr.clone(), *j as usize)
            });
            if lhs != rhs {
                return Err(CertError::Identity(format!("grid point ({x}, {y})")));
            }
        }
    }
    if let Some(t) = terms.iter().find(|t| t.2.is_negative()) {
        return Err(CertError::NegativeCoefficient(rat_to_string(&t.2)));
    }
    if !quadrant_conditions_hold(terms, q_strict) {
        return Err(CertError::Sign("expansion has no positive term controlling the corner".into()));
    }
    Ok(())
}
