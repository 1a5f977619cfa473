//! Chirality equations at a triple or quadruple point.
//!
//! Each equation relates `s = sigma + 1/sigma` to the branch factors and to
//! the coefficient of the low weight vector `A_0` (or `B_0`) in the capped
//! `P'`. The equations are linear in s, so s is solved in closed form and
//! the result is substituted back into the displayed form as a check.

mod coeff;
mod roots;

pub use coeff::{capped_terms, coeff_in_capped, coeff_with_traces, BaseVertex, CapTerm, CoeffResult, CoeffTerm, Target};
pub use roots::{root_of_unity_consistency, Parity, RootCheck, RootVerdict, ROOT_TOL};

use serde_json::{json, Value};
use thiserror::Error;

use crate::bigraph::{BigraphPair, VertexId};
use crate::qlaurent::RatFunc;
use crate::real::Real;
use crate::spectra::{branch_data, qint, BranchData, Designation, QuadBranch, SpectraError, SpectralProfile, TripleBranch, TripleDual};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ChiralityError {
    #[error("coefficient formula inapplicable: {0}")]
    Inapplicable(String),
    #[error("equation prerequisite fails: {0}")]
    Prerequisite(String),
    #[error(transparent)]
    Spectra(#[from] SpectraError),
}

/// Field operations shared by the numeric and symbolic evaluation of the
/// solved equations.
pub trait Scalar: Clone {
    fn int_like(&self, k: i64) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn div(&self, o: &Self) -> Self;
}

impl Scalar for Real {
    fn int_like(&self, k: i64) -> Self {
        Real::from_i64(k, self.precision())
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
}

impl Scalar for RatFunc {
    fn int_like(&self, k: i64) -> Self {
        RatFunc::int(k)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
}

/// Quantities entering the triple point equations. `sqrt_rc_over_r` is
/// `sqrt(r_check / r)` and `sqrt_rc` is `sqrt(r_check)`; they are passed in
/// so symbolic callers can supply exact square roots.
#[derive(Clone, Debug)]
pub struct TripleInputs<S> {
    pub qn: S,
    pub qn1: S,
    pub r: S,
    pub r_check: S,
    pub sqrt_rc_over_r: S,
    pub sqrt_rc: S,
    pub c: S,
}

/// Equation (E): n even, P self-dual.
pub fn solve_e<S: Scalar>(x: &TripleInputs<S>) -> S {
    let one = x.r.int_like(1);
    let t1 = x.r_check.sub(&one).mul(&x.r).div(&x.r_check);
    let t2 = one.add(&x.r).mul(&x.qn1).div(&x.qn).mul(&x.c);
    x.qn.mul(&x.sqrt_rc_over_r).mul(&t1.add(&t2))
}

/// Equation (E-bar): n even, P dual to Q, r = 1.
pub fn solve_e_bar<S: Scalar>(x: &TripleInputs<S>) -> S {
    let one = x.r.int_like(1);
    let two = x.r.int_like(2);
    let t1 = x.r_check.sub(&one).mul(&x.qn).div(&x.r_check);
    let t2 = two.mul(&x.qn1).mul(&x.c);
    x.sqrt_rc.mul(&t1.add(&t2)).mul(&x.r.int_like(-1))
}

/// Equation (O): n odd, r = r_check.
pub fn solve_o<S: Scalar>(x: &TripleInputs<S>) -> S {
    let one = x.r.int_like(1);
    x.r.sub(&one).mul(&x.qn).add(&one.add(&x.r).mul(&x.qn1).mul(&x.c))
}

/// Left minus right side of the displayed equation for the given s.
pub fn residual_triple<S: Scalar>(eq: Equation, x: &TripleInputs<S>, s: &S) -> S {
    let one = x.r.int_like(1);
    let two = x.r.int_like(2);
    match eq {
        Equation::E => {
            let lhs = x.r_check.sub(&one).mul(&x.r).div(&x.r_check).sub(&s.div(&x.qn).div(&x.sqrt_rc_over_r));
            let rhs = one.add(&x.r).mul(&x.qn1).div(&x.qn).mul(&x.c).mul(&x.r.int_like(-1));
            lhs.sub(&rhs)
        }
        Equation::EBar => {
            let lhs = x.r_check.sub(&one).div(&x.r_check).add(&s.div(&x.qn.mul(&x.sqrt_rc)));
            let rhs = two.mul(&x.qn1).div(&x.qn).mul(&x.c).mul(&x.r.int_like(-1));
            lhs.sub(&rhs)
        }
        _ => {
            let lhs = x.r.sub(&one).sub(&s.div(&x.qn));
            let rhs = one.add(&x.r).mul(&x.qn1).div(&x.qn).mul(&x.c).mul(&x.r.int_like(-1));
            lhs.sub(&rhs)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Equation {
    E,
    EBar,
    O,
    QA1,
    QA2,
    QB,
}

impl Equation {
    pub fn name(self) -> &'static str {
        match self {
            Equation::E => "E",
            Equation::EBar => "E_bar",
            Equation::O => "O",
            Equation::QA1 => "QA1",
            Equation::QA2 => "QA2",
            Equation::QB => "QB",
        }
    }
}

/// Unit complex number as (cos, sin).
#[derive(Clone, Debug)]
pub struct Unit {
    pub re: Real,
    pub im: Real,
}

impl Unit {
    pub fn from_angle(t: &Real) -> Unit {
        Unit { re: t.cos(), im: t.sin() }
    }

    pub fn close_to(&self, o: &Unit, tol: f64) -> bool {
        self.re.close_to(&o.re, tol) && self.im.close_to(&o.im, tol)
    }

    pub fn to_json(&self, digits: usize) -> Value {
        // components below the working noise floor print as 0
        let f = |x: &Real| if x.abs() < Real::from_f64(1e-40, x.precision()) { "0".to_string() } else { x.to_string_digits(digits) };
        json!([f(&self.re), f(&self.im)])
    }
}

#[derive(Clone, Debug)]
pub struct ChiralityResult {
    pub equation: Equation,
    pub p: VertexId,
    pub p_check: VertexId,
    pub s: Real,
    /// `sigma` with nonnegative imaginary part; its conjugate is the other candidate.
    pub sigma: Option<Unit>,
    pub omega: Option<Unit>,
    pub check: RootCheck,
    pub residual: Real,
    pub coeff: CoeffResult,
}

impl ChiralityResult {
    pub fn to_json(&self, digits: usize) -> Value {
        let conj = |u: &Unit| Unit { re: u.re.clone(), im: -&u.im };
        json!({
            "equationUsed": self.equation.name(),
            "P": self.p.to_string(),
            "P_check": self.p_check.to_string(),
            "s": self.s.to_string_digits(digits),
            "sigmaCandidates": self.sigma.as_ref().map(|u| vec![u.to_json(digits), conj(u).to_json(digits)]).unwrap_or_default(),
            "omega": self.omega.as_ref().map(|u| u.to_json(digits)),
            "consistent": self.check.verdict.as_str(),
            "matchedRootOrder": self.check.matched_order,
            "residual": self.residual.to_string_digits(3),
            "coefficient": self.coeff.to_json(digits),
        })
    }
}

/// `sigma = exp(i acos(s / 2))` and `omega = sigma^2`, when `|s| <= 2`.
pub fn sigma_from_s(s: &Real, tol: f64) -> Option<(Unit, Unit)> {
    let prec = s.precision();
    let two = Real::from_i64(2, prec);
    if s.abs() > &two + &Real::from_f64(tol, prec) {
        return None;
    }
    let alpha = (s / &two).acos();
    Some((Unit::from_angle(&alpha), Unit::from_angle(&(&alpha * &two))))
}

fn triple_inputs(b: &TripleBranch, d: &Real, c: &Real) -> TripleInputs<Real> {
    let n = b.n as i64;
    TripleInputs {
        qn: qint(d, n),
        qn1: qint(d, n + 1),
        r: b.r.clone(),
        r_check: b.r_check.clone(),
        sqrt_rc_over_r: (&b.r_check / &b.r).sqrt(),
        sqrt_rc: b.r_check.sqrt(),
        c: c.clone(),
    }
}

/// Solves the triple point equation selected by parity and duality, with
/// the coefficient taken from the profile's traces.
pub fn solve_triple(pair: &BigraphPair, prof: &SpectralProfile, b: &TripleBranch, tol: f64) -> Result<ChiralityResult, ChiralityError> {
    let coeff = coeff_in_capped(pair, prof, &BranchData::Triple(b.clone()), BaseVertex::P, Target::A)?;
    solve_triple_from(b, &prof.norm, coeff, tol)
}

/// Solves the triple point equation from branch data, the graph norm `d`
/// and an evaluated coefficient.
pub fn solve_triple_from(b: &TripleBranch, d: &Real, coeff: CoeffResult, tol: f64) -> Result<ChiralityResult, ChiralityError> {
    let one = Real::one(d.precision());
    let eq = match b.dual {
        TripleDual::SelfDual => Equation::E,
        TripleDual::Swapped => {
            if !b.r.close_to(&one, tol) {
                return Err(ChiralityError::Prerequisite(format!("P is dual to Q but r = {} is not 1", b.r.to_string_digits(15))));
            }
            Equation::EBar
        }
        TripleDual::Odd => {
            if !b.r.close_to(&b.r_check, tol) {
                return Err(ChiralityError::Prerequisite("n is odd but r differs from r_check".into()));
            }
            Equation::O
        }
    };
    let x = triple_inputs(b, d, &coeff.value);
    let s = match eq {
        Equation::E => solve_e(&x),
        Equation::EBar => solve_e_bar(&x),
        _ => solve_o(&x),
    };
    let residual = residual_triple(eq, &x, &s).abs();
    Ok(finish(eq, b.p, b.p_check, s, residual, coeff, b.n, Parity::None, tol))
}

#[allow(clippy::too_many_arguments)]
fn finish(eq: Equation, p: VertexId, p_check: VertexId, s: Real, residual: Real, coeff: CoeffResult, n: usize, parity: Parity, tol: f64) -> ChiralityResult {
    let check = root_of_unity_consistency(&s, n, parity, roots::ROOT_TOL);
    let (sigma, omega) = match sigma_from_s(&s, tol) {
        Some((a, b)) => (Some(a), Some(b)),
        None => (None, None),
    };
    ChiralityResult { equation: eq, p, p_check, s, sigma, omega, check, residual, coeff }
}

/// Every designation of P worth reporting: the given one, or both vertices
/// when r = 1 makes the default ambiguous.
pub fn solve_triple_all(pair: &BigraphPair, prof: &SpectralProfile, des: Designation, tol: f64) -> Result<Vec<ChiralityResult>, ChiralityError> {
    let BranchData::Triple(b) = branch_data(pair, prof, des)? else {
        return Err(ChiralityError::Prerequisite("not a triple point".into()));
    };
    let mut out = vec![solve_triple(pair, prof, &b, tol)?];
    if des.p.is_none() && b.r.close_to(&Real::one(b.r.precision()), tol) {
        let flipped = Designation { p: Some(b.q), p_check: des.p_check };
        if let BranchData::Triple(b2) = branch_data(pair, prof, flipped)? {
            out.push(solve_triple(pair, prof, &b2, tol)?);
        }
    }
    Ok(out)
}

/// Quadruple point solution: s_A from (QA1) and (QA2), sigma_B from (QB).
#[derive(Clone, Debug)]
pub struct QuadResult {
    pub s_a_qa1: Real,
    pub s_a_qa2: Real,
    pub qa_disagreement: Real,
    pub a: ChiralityResult,
    /// Admissible `(sigma_A, sigma_B)` pairs after the parity filter.
    pub b_candidates: Vec<(Unit, Unit)>,
    /// True when (QB) leaves sigma_B unconstrained.
    pub b_undetermined: bool,
    pub s_b: Option<Real>,
    pub qb_residual: Real,
    pub coeff_q_a: CoeffResult,
    pub coeff_q_b: CoeffResult,
}

impl QuadResult {
    pub fn to_json(&self, digits: usize) -> Value {
        json!({
            "s_A_QA1": self.s_a_qa1.to_string_digits(digits),
            "s_A_QA2": self.s_a_qa2.to_string_digits(digits),
            "QA_disagreement": self.qa_disagreement.to_string_digits(3),
            "A": self.a.to_json(digits),
            "s_B": self.s_b.as_ref().map(|x| x.to_string_digits(digits)),
            "sigmaB_undetermined": self.b_undetermined,
            "QB_residual": self.qb_residual.to_string_digits(3),
            "sigmaCandidates_AB": self.b_candidates.iter().map(|(a, b)| json!([a.to_json(digits), b.to_json(digits)])).collect::<Vec<_>>(),
            "coefficient_Q_A": self.coeff_q_a.to_json(digits),
            "coefficient_Q_B": self.coeff_q_b.to_json(digits),
        })
    }
}

/// Solves (QA1), (QA2) and (QB). The two values of s_A must agree; a
/// disagreement is evidence against the pair and is reported, not hidden.
pub fn solve_quadruple(pair: &BigraphPair, prof: &SpectralProfile, b: &QuadBranch, tol: f64) -> Result<QuadResult, ChiralityError> {
    let prec = prof.norm.precision();
    let d = &prof.norm;
    let n = b.n as i64;
    let (qn, qn1) = (qint(d, n), qint(d, n + 1));
    let one = Real::one(prec);
    let two = Real::from_i64(2, prec);
    let bd = BranchData::Quadruple(b.clone());
    let c_p = coeff_in_capped(pair, prof, &bd, BaseVertex::P, Target::A)?;
    let c_qa = coeff_in_capped(pair, prof, &bd, BaseVertex::Q, Target::A)?;
    let c_qb = coeff_in_capped(pair, prof, &bd, BaseVertex::Q, Target::B)?;
    let (r, rc) = (&b.r, &b.r_check);
    // (QA1) is (E) verbatim
    let x = TripleInputs {
        qn: qn.clone(),
        qn1: qn1.clone(),
        r: r.clone(),
        r_check: rc.clone(),
        sqrt_rc_over_r: (rc / r).sqrt(),
        sqrt_rc: rc.sqrt(),
        c: c_p.value.clone(),
    };
    let s1 = solve_e(&x);
    let res1 = residual_triple(Equation::E, &x, &s1).abs();
    // (QA2): ((rc - r - 2) + s sqrt(r rc)/[n]) r/rc = -2 r (1+r) [n+1]/[n] c_Q
    let srr = (r * rc).sqrt();
    let inner = -(&two * rc * (&one + r) * &qn1 / &qn * &c_qa.value) - rc + r + &two;
    let s2 = &qn / &srr * inner;
    let lhs2 = ((rc - r - &two) + &s2 * &srr / &qn) * r / rc;
    let rhs2 = -(&two * r * (&one + r) * &qn1 / &qn * &c_qa.value);
    let res2 = (lhs2 - rhs2).abs();
    let disagreement = (&s1 - &s2).abs();
    let a = finish(Equation::QA1, b.p, b.p_check, s1.clone(), res1.max(res2), c_p, b.n, Parity::Plus, tol);

    // (QB): u cos(beta) + v sin(beta) = K
    let k_rhs = -(&two * r * (&one + r) * &qn1 / &qn * &c_qb.value);
    let k = &k_rhs / ((r / rc) * (&one + rc).sqrt() * (&one + r).sqrt());
    let mut b_candidates = Vec::new();
    let mut b_undetermined = false;
    let mut s_b = None;
    let mut qb_residual = Real::zero(prec);
    if let Some((sig_a, _)) = sigma_from_s(&s1, tol) {
        let alpha0 = Real::atan2(&sig_a.im, &sig_a.re);
        for alpha in [alpha0.clone(), -&alpha0] {
            let u = &two * alpha.cos() - &two * &srr / &qn;
            let v = &two * alpha.sin();
            let rad = (&u * &u + &v * &v).sqrt();
            if rad < Real::from_f64(tol, prec) {
                b_undetermined = true;
                continue;
            }
            let ratio = &k / &rad;
            if ratio.abs() > &one + &Real::from_f64(tol, prec) {
                continue;
            }
            let phi = Real::atan2(&v, &u);
            let delta = ratio.acos();
            for beta in [&phi + &delta, &phi - &delta] {
                let wb = Unit::from_angle(&(&beta * &two));
                let wa = Unit::from_angle(&(&alpha * &two));
                let ok_a = roots::power_close(&wa, b.n / 2, 1, roots::ROOT_TOL);
                let ok_b = roots::power_close(&wb, b.n / 2, -1, roots::ROOT_TOL);
                let cand = (Unit::from_angle(&alpha), Unit::from_angle(&beta));
                let seen = b_candidates.iter().any(|(a, b): &(Unit, Unit)| a.close_to(&cand.0, tol) && b.close_to(&cand.1, tol));
                if ok_a && ok_b && !seen {
                    // the displayed (QB) with sigma_A sigma_B^-1 + its inverse = 2 cos(alpha - beta)
                    let cross = &two * (&alpha - &beta).cos();
                    let lhs = (cross - &two * beta.cos() * &srr / &qn) * (r / rc) * (&one + rc).sqrt() * (&one + r).sqrt();
                    qb_residual = qb_residual.max((lhs - &k_rhs).abs());
                    s_b.get_or_insert_with(|| &two * beta.cos());
                    b_candidates.push(cand);
                }
            }
        }
    }
    Ok(QuadResult { s_a_qa1: s1, s_a_qa2: s2, qa_disagreement: disagreement, a, b_candidates, b_undetermined, s_b, qb_residual, coeff_q_a: c_qa, coeff_q_b: c_qb })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::real::Precision;
    use proptest::prelude::*;

    fn re(x: f64) -> Real {
        Real::from_f64(x, Precision::default())
    }

    fn qn(q: &Real, k: i64) -> Real {
        qint(&(q + &q.recip()), k)
    }

    /// Trace data satisfying the Ocneanu hypotheses: every R-bar hangs off
    /// P-check, r = r_check, and Tr(P-check) = Tr(P).
    fn ocneanu_inputs(q: f64, n: i64, r: f64) -> TripleInputs<Real> {
        let (q, r) = (re(q), re(r));
        let one = Real::one(r.precision());
        let d = &q + &q.recip();
        let tr_p = qn(&q, n + 1) / (&one + &r);
        let tr_p_prime = &d * &tr_p - qn(&q, n);
        let c = &tr_p_prime / &tr_p / (&one + &r);
        TripleInputs { qn: qn(&q, n), qn1: qn(&q, n + 1), r: r.clone(), r_check: r.clone(), sqrt_rc_over_r: one.clone(), sqrt_rc: r.sqrt(), c }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(20))]

        #[test]
        fn ocneanu_identity(q in 1.01f64..3.0, half in 1i64..5, r in 0.2f64..5.0, odd in any::<bool>()) {
            let n = 2 * half + odd as i64;
            let x = ocneanu_inputs(q, n, r);
            let s = if odd { solve_o(&x) } else { solve_e(&x) };
            let qr = re(q);
            let expect = qn(&qr, n + 2) - qn(&qr, n);
            prop_assert!(s.close_to(&expect, 1e-40));
            // and the closed form q^(n+1) + q^(-n-1)
            let alt = qr.powi(n as u32 + 1) + qr.powi(n as u32 + 1).recip();
            prop_assert!(s.close_to(&alt, 1e-40));
        }

        #[test]
        fn solved_forms_have_zero_residual(q in 1.01f64..3.0, n in 2i64..8, r in 0.2f64..5.0, rc in 0.2f64..5.0, c in -2.0f64..2.0) {
            let (rr, rcr) = (re(r), re(rc));
            let x = TripleInputs {
                qn: qn(&re(q), n),
                qn1: qn(&re(q), n + 1),
                sqrt_rc_over_r: (&rcr / &rr).sqrt(),
                sqrt_rc: rcr.sqrt(),
                r: rr,
                r_check: rcr,
                c: re(c),
            };
            for (eq, s) in [(Equation::E, solve_e(&x)), (Equation::EBar, solve_e_bar(&x)), (Equation::O, solve_o(&x))] {
                prop_assert!(residual_triple(eq, &x, &s).abs() < re(1e-12));
            }
        }

        #[test]
        fn singly_valent_relation(q in 1.01f64..3.0, half in 1i64..5, rc in 0.2f64..5.0) {
            // coefficient zero and r = [n+2]/[n]
            let n = 2 * half;
            let qr = re(q);
            let r = qn(&qr, n + 2) / qn(&qr, n);
            let rcr = re(rc);
            let x = TripleInputs {
                qn: qn(&qr, n),
                qn1: qn(&qr, n + 1),
                sqrt_rc_over_r: (&rcr / &r).sqrt(),
                sqrt_rc: rcr.sqrt(),
                r,
                r_check: rcr.clone(),
                c: re(0.0),
            };
            let s = solve_e(&x);
            // omega + 1/omega = s^2 - 2
            let two = re(2.0);
            let lhs = &rcr + rcr.recip();
            let rhs = &two + (&s * &s - &two + &two) / (qn(&qr, n) * qn(&qr, n + 2));
            prop_assert!(lhs.close_to(&rhs, 1e-10));
        }
    }

    #[test]
    fn fuss_catalan_symbolic() {
        // RatFunc variables stand for (a, b) here
        let a = RatFunc::a();
        let b = RatFunc::q();
        let one = RatFunc::one();
        let a2 = &a * &a;
        let b2 = &b * &b;
        let tr_p = &a2 - &one;
        let tr_q = &a2 * &(&b2 - &one);
        let tr_pc = &b2 * &(&a2 - &one);
        let tr_qc = &b2 - &one;
        let tr_pp = &b * &(&(&a2 * &a) - &(&RatFunc::int(2) * &a));
        let r = &tr_q / &tr_p;
        let rc = &tr_qc / &tr_pc;
        assert_eq!(&r / &rc, &a2 * &b2);
        let qn = &a * &b;
        let qn1 = &(&a2 * &b2) - &one;
        // the single summand: R-bar hangs off P-check with coefficient 1/(1 + r_check)
        let c = &(&tr_pp / &tr_pc) / &(&one + &rc);
        let x = TripleInputs { qn, qn1, r, r_check: rc, sqrt_rc_over_r: inv_ab(&a, &b), sqrt_rc: RatFunc::zero(), c };
        assert_eq!(solve_e(&x), RatFunc::int(-2));
        assert!(residual_triple(Equation::E, &x, &RatFunc::int(-2)).is_zero());
    }

    fn inv_ab(a: &RatFunc, b: &RatFunc) -> RatFunc {
        &RatFunc::one() / &(a * b)
    }

    #[test]
    fn index_six_qb_expectations() {
        // s_A = -2, [2] = sqrt 6, r = 4, r_check = 2/3: u = -10/3, v = 0
        let p = Precision::default();
        let d = Real::from_i64(6, p).sqrt();
        let srr = (Real::from_i64(4, p) * Real::from_i64(2, p) / Real::from_i64(3, p)).sqrt();
        let u = Real::from_i64(-2, p) - Real::from_i64(2, p) * srr / qint(&d, 2);
        assert!(u.close_to(&(Real::from_i64(-10, p) / Real::from_i64(3, p)), 1e-40));
    }
}
