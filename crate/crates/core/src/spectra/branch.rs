//! Branch projections at the first branch depth and their branch factors.

use serde_json::{json, Value};

use super::{recognize_rational, SpectraError, SpectralProfile};
use crate::bigraph::{BigraphPair, Side, VertexId};
use crate::qlaurent::{rat_to_string, Rat};
use crate::real::Real;

/// Largest denominator tried when recognizing exact branch factors.
const MAX_DEN: u32 = 1000;
/// Agreement required before a branch factor is reported as rational.
const RATIONAL_TOL: f64 = 1e-40;

/// Overrides for the default choice of P (plus side) and P-check (minus side).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Designation {
    pub p: Option<VertexId>,
    pub p_check: Option<VertexId>,
}

/// Duality at a triple point.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TripleDual {
    /// n even, P self-dual.
    SelfDual,
    /// n even, P dual to Q.
    Swapped,
    /// n odd: P pairs with the vertex in the same position on the other graph.
    Odd,
}

#[derive(Clone, Debug)]
pub struct TripleBranch {
    pub n: usize,
    pub p: VertexId,
    pub q: VertexId,
    pub p_check: VertexId,
    pub q_check: VertexId,
    pub tr_p: Real,
    pub tr_q: Real,
    pub tr_p_check: Real,
    pub tr_q_check: Real,
    pub r: Real,
    pub r_check: Real,
    pub r_exact: Option<Rat>,
    pub r_check_exact: Option<Rat>,
    pub dual: TripleDual,
}

/// Quadruple point: P is self-dual and Q, R are dual to each other, on
/// both graphs.
#[derive(Clone, Debug)]
pub struct QuadBranch {
    pub n: usize,
    pub p: VertexId,
    pub q: VertexId,
    pub r_vertex: VertexId,
    pub p_check: VertexId,
    pub q_check: VertexId,
    pub r_check_vertex: VertexId,
    pub tr_p: Real,
    pub tr_q: Real,
    pub tr_r: Real,
    pub tr_p_check: Real,
    pub tr_q_check: Real,
    pub tr_r_check: Real,
    pub r: Real,
    pub r_check: Real,
    pub r_exact: Option<Rat>,
    pub r_check_exact: Option<Rat>,
}

#[derive(Clone, Debug)]
pub enum BranchData {
    Triple(TripleBranch),
    Quadruple(QuadBranch),
}

impl BranchData {
    pub fn n(&self) -> usize {
        match self {
            BranchData::Triple(t) => t.n,
            BranchData::Quadruple(q) => q.n,
        }
    }

    pub fn to_json(&self, digits: usize) -> Value {
        let f = |x: &Real| x.to_string_digits(digits);
        let ex = |x: &Option<Rat>| x.as_ref().map(rat_to_string);
        match self {
            BranchData::Triple(t) => json!({
                "kind": "triple",
                "n": t.n,
                "P": t.p.to_string(), "Q": t.q.to_string(),
                "P_check": t.p_check.to_string(), "Q_check": t.q_check.to_string(),
                "tr_P": f(&t.tr_p), "tr_Q": f(&t.tr_q),
                "tr_P_check": f(&t.tr_p_check), "tr_Q_check": f(&t.tr_q_check),
                "r": f(&t.r), "r_check": f(&t.r_check),
                "r_exact": ex(&t.r_exact), "r_check_exact": ex(&t.r_check_exact),
                "duality": format!("{:?}", t.dual).to_lowercase(),
            }),
            BranchData::Quadruple(b) => json!({
                "kind": "quadruple",
                "n": b.n,
                "P": b.p.to_string(), "Q": b.q.to_string(), "R": b.r_vertex.to_string(),
                "tr_P": f(&b.tr_p), "tr_Q": f(&b.tr_q), "tr_R": f(&b.tr_r),
                "tr_P_check": f(&b.tr_p_check), "tr_Q_check": f(&b.tr_q_check), "tr_R_check": f(&b.tr_r_check),
                "r": f(&b.r), "r_check": f(&b.r_check),
                "r_exact": ex(&b.r_exact), "r_check_exact": ex(&b.r_check_exact),
            }),
        }
    }
}

fn exact(x: &Real) -> Option<Rat> {
    recognize_rational(x, MAX_DEN, &Real::from_f64(RATIONAL_TOL, x.precision()))
}

fn designated(v: Option<VertexId>, n: usize, count: usize) -> Result<VertexId, SpectraError> {
    match v {
        None => Ok(VertexId::new(n, 0)),
        Some(v) if v.depth == n && v.index < count => Ok(v),
        Some(v) => Err(SpectraError::BadDesignation(v)),
    }
}

/// Self-dual vertex and the dual pair (in listed order) at a quadruple point.
fn quad_roles(pair: &BigraphPair, side: Side, n: usize) -> Result<(VertexId, VertexId, VertexId), SpectraError> {
    let perm = &pair.duals(side).perms()[n / 2];
    let fixed: Vec<usize> = (0..3).filter(|&i| perm[i] == i).collect();
    if fixed.len() != 1 {
        return Err(SpectraError::QuadrupleDuals);
    }
    let others: Vec<usize> = (0..3).filter(|&i| i != fixed[0]).collect();
    Ok((VertexId::new(n, fixed[0]), VertexId::new(n, others[0]), VertexId::new(n, others[1])))
}

/// Reads the branch projections at the first branch depth.
pub fn branch_data(pair: &BigraphPair, prof: &SpectralProfile, des: Designation) -> Result<BranchData, SpectraError> {
    let bp = pair.plus().supertransitivity().branch.ok_or(SpectraError::NoBranch)?;
    let bm = pair.minus().supertransitivity().branch.ok_or(SpectraError::NoBranch)?;
    if bp.n != bm.n || bp.valence != bm.valence {
        return Err(SpectraError::BranchMismatch { plus: bp.n, minus: bm.n });
    }
    let n = bp.n;
    let tr = |side: Side, v: VertexId| prof.dim(side, v).clone();
    match bp.valence {
        2 => {
            let p = designated(des.p, n, 2)?;
            let q = VertexId::new(n, 1 - p.index);
            let (p_check, dual) = if n % 2 == 1 {
                (p, TripleDual::Odd)
            } else {
                let pc = designated(des.p_check, n, 2)?;
                let d = pair.duals(Side::Plus).dual(p).expect("even depth has duals");
                (pc, if d == p { TripleDual::SelfDual } else { TripleDual::Swapped })
            };
            let q_check = VertexId::new(n, 1 - p_check.index);
            let (tr_p, tr_q) = (tr(Side::Plus, p), tr(Side::Plus, q));
            let (tr_p_check, tr_q_check) = (tr(Side::Minus, p_check), tr(Side::Minus, q_check));
            let r = &tr_q / &tr_p;
            let r_check = &tr_q_check / &tr_p_check;
            Ok(BranchData::Triple(TripleBranch {
                n,
                p,
                q,
                p_check,
                q_check,
                r_exact: exact(&r),
                r_check_exact: exact(&r_check),
                tr_p,
                tr_q,
                tr_p_check,
                tr_q_check,
                r,
                r_check,
                dual,
            }))
        }
        3 => {
            if n % 2 == 1 {
                return Err(SpectraError::QuadrupleOddDepth(n));
            }
            let (p, q, rv) = quad_roles(pair, Side::Plus, n)?;
            let (pc, qc, rc) = quad_roles(pair, Side::Minus, n)?;
            let two = Real::from_i64(2, prof.norm.precision());
            let (tr_p, tr_q, tr_r) = (tr(Side::Plus, p), tr(Side::Plus, q), tr(Side::Plus, rv));
            let (tr_pc, tr_qc, tr_rc) = (tr(Side::Minus, pc), tr(Side::Minus, qc), tr(Side::Minus, rc));
            let r = &two * &tr_q / &tr_p;
            let r_check = &two * &tr_qc / &tr_pc;
            Ok(BranchData::Quadruple(QuadBranch {
                n,
                p,
                q,
                r_vertex: rv,
                p_check: pc,
                q_check: qc,
                r_check_vertex: rc,
                r_exact: exact(&r),
                r_check_exact: exact(&r_check),
                tr_p,
                tr_q,
                tr_r,
                tr_p_check: tr_pc,
                tr_q_check: tr_qc,
                tr_r_check: tr_rc,
                r,
                r_check,
            }))
        }
        v => Err(SpectraError::UnsupportedValence(v)),
    }
}
