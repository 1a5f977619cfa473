//! Coefficient of the low weight vector in a capped `P'`.
//!
//! For each vertex R one depth past the branch point and adjacent to the
//! base vertex, the dual R-bar has a single neighbour E(R-bar) at the branch
//! depth, and the capped R-bar is a multiple of E(R-bar):
//!
//! `coeff = sum_R m_R * Tr(R) / Tr(E(R-bar)) * coeff_{E(R-bar)}(A_0)`.

use serde_json::{json, Value};

use super::ChiralityError;
use crate::bigraph::{BigraphPair, Side, VertexId};
use crate::real::Real;
use crate::spectra::{BranchData, SpectralProfile};

/// Vertex whose `'` is capped: P, or Q in the second quadruple equation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BaseVertex {
    P,
    Q,
}

/// Low weight vector whose coefficient is taken.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    A,
    B,
}

#[derive(Clone, Debug)]
pub struct CoeffTerm {
    pub r: VertexId,
    pub mult: u32,
    pub r_bar: (Side, VertexId),
    pub e: VertexId,
    pub tr_r: Real,
    pub tr_e: Real,
    pub coeff_e: Real,
}

#[derive(Clone, Debug)]
pub struct CoeffResult {
    pub value: Real,
    pub terms: Vec<CoeffTerm>,
}

impl CoeffResult {
    pub fn to_json(&self, digits: usize) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|t| {
                json!({
                    "R": t.r.to_string(),
                    "multiplicity": t.mult,
                    "R_bar": format!("{}{}", if t.r_bar.0 == Side::Plus { "+" } else { "-" }, t.r_bar.1),
                    "E": t.e.to_string(),
                    "tr_R": t.tr_r.to_string_digits(digits),
                    "tr_E": t.tr_e.to_string_digits(digits),
                    "coeff_E": t.coeff_e.to_string_digits(digits),
                })
            })
            .collect();
        json!({ "value": self.value.to_string_digits(digits), "terms": terms })
    }
}

/// Coefficient of branch vertex `e` (on `side`) in the low weight vector
/// living on that side.
fn role_coeff(b: &BranchData, side: Side, e: VertexId, target: Target) -> Result<Real, ChiralityError> {
    let bad = || ChiralityError::Inapplicable(format!("E(R-bar) = {e} is not a branch vertex"));
    match b {
        BranchData::Triple(t) => {
            if target == Target::B {
                return Err(ChiralityError::Inapplicable("a triple point has no B vector".into()));
            }
            let (p, q, r) = match side {
                Side::Plus => (t.p, t.q, &t.r),
                Side::Minus => (t.p_check, t.q_check, &t.r_check),
            };
            let c = (Real::one(r.precision()) + r).recip();
            if e == p {
                Ok(c)
            } else if e == q {
                Ok(-c)
            } else {
                Err(bad())
            }
        }
        BranchData::Quadruple(t) => {
            let (p, q, rv, r) = match side {
                Side::Plus => (t.p, t.q, t.r_vertex, &t.r),
                Side::Minus => (t.p_check, t.q_check, t.r_check_vertex, &t.r_check),
            };
            let prec = r.precision();
            let one = Real::one(prec);
            let half = Real::from_f64(0.5, prec);
            let role = if e == p {
                0
            } else if e == q {
                1
            } else if e == rv {
                2
            } else {
                return Err(bad());
            };
            Ok(match (target, role) {
                (Target::A, 0) => (&one + r).recip(),
                (Target::A, _) => -(&half / (&one + r)),
                (Target::B, 0) => Real::zero(prec),
                (Target::B, 1) => -half,
                (Target::B, _) => half,
            })
        }
    }
}

/// Combinatorial part of one summand: R, m_R, R-bar and E(R-bar).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CapTerm {
    pub r: VertexId,
    pub mult: u32,
    pub r_bar: (Side, VertexId),
    pub e: VertexId,
}

/// Lists the summands for the `'` of `base` (a plus-side vertex at depth n),
/// checking that each R-bar has a single neighbour at depth n.
pub fn capped_terms(pair: &BigraphPair, base: VertexId) -> Result<Vec<CapTerm>, ChiralityError> {
    let n = base.depth;
    let mut out = Vec::new();
    for (r, mult) in pair.plus().up(base) {
        let (side, r_bar) = pair
            .dual_vertex(Side::Plus, r)
            .ok_or_else(|| ChiralityError::Inapplicable(format!("the dual of {r} lies beyond the given graphs")))?;
        let below = pair.graph(side).down(r_bar);
        let [(e, _)] = below.as_slice() else {
            return Err(ChiralityError::Inapplicable(format!("{r_bar} has {} neighbours at depth {n}", below.len())));
        };
        out.push(CapTerm { r, mult, r_bar: (side, r_bar), e: *e });
    }
    Ok(out)
}

fn base_vertex(b: &BranchData, base: BaseVertex) -> VertexId {
    match (b, base) {
        (BranchData::Triple(t), BaseVertex::P) => t.p,
        (BranchData::Triple(t), BaseVertex::Q) => t.q,
        (BranchData::Quadruple(t), BaseVertex::P) => t.p,
        (BranchData::Quadruple(t), BaseVertex::Q) => t.q,
    }
}

/// The coefficient functional with traces supplied by `tr`.
pub fn coeff_with_traces(
    pair: &BigraphPair,
    b: &BranchData,
    base: BaseVertex,
    target: Target,
    tr: &dyn Fn(Side, VertexId) -> Real,
) -> Result<CoeffResult, ChiralityError> {
    let mut value: Option<Real> = None;
    let mut terms = Vec::new();
    for t in capped_terms(pair, base_vertex(b, base))? {
        let coeff_e = role_coeff(b, t.r_bar.0, t.e, target)?;
        let tr_r = tr(Side::Plus, t.r);
        let tr_e = tr(t.r_bar.0, t.e);
        let term = Real::from_i64(t.mult as i64, tr_r.precision()) * &tr_r / &tr_e * &coeff_e;
        value = Some(match value {
            None => term,
            Some(v) => v + term,
        });
        terms.push(CoeffTerm { r: t.r, mult: t.mult, r_bar: t.r_bar, e: t.e, tr_r, tr_e, coeff_e });
    }
    let zero = || match b {
        BranchData::Triple(t) => Real::zero(t.r.precision()),
        BranchData::Quadruple(t) => Real::zero(t.r.precision()),
    };
    Ok(CoeffResult { value: value.unwrap_or_else(zero), terms })
}

/// Evaluates the coefficient functional with the profile's traces.
pub fn coeff_in_capped(pair: &BigraphPair, prof: &SpectralProfile, b: &BranchData, base: BaseVertex, target: Target) -> Result<CoeffResult, ChiralityError> {
    coeff_with_traces(pair, b, base, target, &|side, v| prof.dim(side, v).clone())
}
