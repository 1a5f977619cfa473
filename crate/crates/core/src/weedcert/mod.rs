//! Symbolic elimination of translated weed families.
//!
//! A weed stands for all of its translated extensions at once. With
//! `a = q^n` for the branch depth n, dimensions, branch factors and the
//! chirality value `F = s + 2` become rational functions of (a, q), and a
//! weed is eliminated by certifying that F leaves `[0, 4]` everywhere on the
//! region `q >= q0`, `n >= n0`.

mod dims;

pub use dims::{d_symbolic, solve_dimensions, SymbolicDims};

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::bigraph::{parse_pair, BigraphError, BigraphPair, Side, VertexId};
use crate::catalog::{WEED_Q, WEED_W};
use crate::chirality::{capped_terms, solve_e, solve_o, TripleInputs};
use crate::qlaurent::positivity::{check, prove_bivariate, CertError, Certificate, Claim};
use crate::qlaurent::{parse_rat, quantum_integer_shifted, rat_serde, rat_to_string, BivarPoly, QError, Rat, RatFunc};

#[derive(Debug, Error)]
pub enum WeedError {
    #[error(transparent)]
    Bigraph(#[from] BigraphError),
    #[error("invalid weed: {0}")]
    Spec(String),
    #[error("{0} dimension parameters are not determined by the weed")]
    Underdetermined(usize),
    #[error("the eigen-equations force {0} = 0")]
    Forced(RatFunc),
    #[error("equation not applicable: {0}")]
    Inapplicable(String),
    #[error(transparent)]
    Q(#[from] QError),
    #[error("certificate rejected: {0}")]
    Certificate(#[from] CertError),
    #[error("certificate does not match its expression: {0}")]
    Mismatch(String),
}

/// Which clause produces s.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WeedEquation {
    OddStar11,
    EvenStar11,
    Quadruple,
}

/// Constraint on the translation t.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TranslationParity {
    #[default]
    Any,
    Even,
    Odd,
}

#[derive(Clone, Debug)]
pub struct WeedSpec {
    pub name: String,
    pub pair: BigraphPair,
    /// P on the plus graph at the branch depth, in weed coordinates.
    pub p_vertex: Option<VertexId>,
    pub p_check: Option<VertexId>,
    pub equation: WeedEquation,
    pub parity: TranslationParity,
    pub q0: Rat,
    pub n0: i64,
    /// Vertices whose neighbourhood may still grow; by default every vertex
    /// at the largest depth of its graph.
    pub open: Option<[Vec<VertexId>; 2]>,
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
struct WeedSpecJson {
    #[serde(default)]
    name: String,
    plus: String,
    minus: String,
    #[serde(default)]
    p_vertex: Option<String>,
    #[serde(default)]
    p_check: Option<String>,
    equation: WeedEquation,
    #[serde(default)]
    parity: TranslationParity,
    #[serde(with = "rat_serde")]
    q0: Rat,
    n0: i64,
    #[serde(default)]
    open: Option<OpenJson>,
}

#[derive(Serialize, Deserialize)]
struct OpenJson {
    plus: Vec<String>,
    minus: Vec<String>,
}

/// Parses `"d:i"` with a 1-based index.
pub fn parse_vertex(s: &str) -> Result<VertexId, WeedError> {
    let bad = || WeedError::Spec(format!("vertex {s:?} is not of the form depth:index"));
    let (d, i) = s.split_once(':').ok_or_else(bad)?;
    let d: usize = d.trim().parse().map_err(|_| bad())?;
    let i: usize = i.trim().parse().map_err(|_| bad())?;
    if i == 0 {
        return Err(bad());
    }
    Ok(VertexId::new(d, i - 1))
}

impl WeedSpec {
    pub fn from_json(s: &str) -> Result<WeedSpec, WeedError> {
        let j: WeedSpecJson = serde_json::from_str(s).map_err(|e| WeedError::Spec(e.to_string()))?;
        let pair = parse_pair(&j.plus, &j.minus)?;
        let vs = |v: &[String]| v.iter().map(|x| parse_vertex(x)).collect::<Result<Vec<_>, _>>();
        let open = match &j.open {
            None => None,
            Some(o) => Some([vs(&o.plus)?, vs(&o.minus)?]),
        };
        let spec = WeedSpec {
            name: j.name,
            pair,
            p_vertex: j.p_vertex.as_deref().map(parse_vertex).transpose()?,
            p_check: j.p_check.as_deref().map(parse_vertex).transpose()?,
            equation: j.equation,
            parity: j.parity,
            q0: j.q0,
            n0: j.n0,
            open,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn to_json(&self) -> Value {
        let (plus, minus) = self.pair.strings();
        let show = |v: &[VertexId]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
        json!({
            "name": self.name,
            "plus": plus,
            "minus": minus,
            "pVertex": self.p_vertex.map(|v| v.to_string()),
            "pCheck": self.p_check.map(|v| v.to_string()),
            "equation": self.equation,
            "parity": self.parity,
            "q0": rat_to_string(&self.q0),
            "n0": self.n0,
            "open": self.open.as_ref().map(|[p, m]| json!({ "plus": show(p), "minus": show(m) })),
        })
    }

    /// Branch depth in weed coordinates.
    pub fn branch_depth(&self) -> usize {
        self.pair.plus().supertransitivity().k + 1
    }

    fn validate(&self) -> Result<(), WeedError> {
        let nb = self.branch_depth();
        let count = |side: Side| if self.pair.graph(side).max_depth() >= nb { self.pair.graph(side).count(nb) } else { 0 };
        let want = if self.equation == WeedEquation::Quadruple { 3 } else { 2 };
        if count(Side::Plus) != want || count(Side::Minus) != want {
            return Err(WeedError::Spec(format!("expected {want} vertices at the branch depth {nb} on both graphs")));
        }
        let parity_ok = match self.equation {
            WeedEquation::OddStar11 => nb % 2 == 1,
            _ => nb % 2 == 0,
        };
        if !parity_ok {
            return Err(WeedError::Spec(format!("branch depth {nb} has the wrong parity for {:?}", self.equation)));
        }
        if self.equation == WeedEquation::Quadruple && self.parity != TranslationParity::Even {
            return Err(WeedError::Spec("quadruple weeds are taken with even translations".into()));
        }
        for v in [self.p_vertex, self.p_check].into_iter().flatten() {
            if v.depth != nb || v.index >= want {
                return Err(WeedError::Spec(format!("{v} is not a branch vertex")));
            }
        }
        if let Some([p, m]) = &self.open {
            for (side, list) in [(Side::Plus, p), (Side::Minus, m)] {
                if let Some(v) = list.iter().find(|v| !self.pair.graph(side).contains(**v)) {
                    return Err(WeedError::Spec(format!("open vertex {v} does not exist")));
                }
            }
        }
        Ok(())
    }

    /// Whether the weed already shows every neighbour of `v`.
    pub fn is_closed(&self, side: Side, v: VertexId) -> bool {
        !self.is_open(side, v)
    }

    fn is_open(&self, side: Side, v: VertexId) -> bool {
        match &self.open {
            Some([p, m]) => match side {
                Side::Plus => p.contains(&v),
                Side::Minus => m.contains(&v),
            },
            None => v.depth == self.pair.graph(side).max_depth(),
        }
    }

    /// The odd `*11` weed eliminated above index 5.
    pub fn w() -> WeedSpec {
        WeedSpec {
            name: WEED_W.name.into(),
            pair: WEED_W.pair(),
            p_vertex: None,
            p_check: None,
            equation: WeedEquation::OddStar11,
            parity: TranslationParity::Any,
            q0: Rat::new(16789.into(), 10000.into()),
            n0: 3,
            open: None,
        }
    }

    fn quadruple(name: &str, open: [usize; 3]) -> WeedSpec {
        let pair = WEED_Q.pair();
        let list: Vec<VertexId> = (0..3).filter(|i| open[*i] == 1).map(|i| VertexId::new(2, i)).collect();
        WeedSpec {
            name: name.into(),
            pair,
            p_vertex: None,
            p_check: None,
            equation: WeedEquation::Quadruple,
            parity: TranslationParity::Even,
            q0: Rat::from_integer(1.into()),
            n0: 2,
            open: Some([list.clone(), list]),
        }
    }

    /// Quadruple weed where only the self-dual vertex may grow.
    pub fn q1() -> WeedSpec {
        WeedSpec::quadruple("Q1", [1, 0, 0])
    }

    /// Quadruple weed where only the dual pair may grow.
    pub fn q2() -> WeedSpec {
        WeedSpec::quadruple("Q2", [0, 1, 1])
    }

    pub fn symbolic_dimensions(&self) -> Result<SymbolicDims, WeedError> {
        solve_dimensions(&self.pair, &|side, v| !self.is_open(side, v))
    }

    fn roles(&self) -> Result<Roles, WeedError> {
        let nb = self.branch_depth();
        let v = |i| VertexId::new(nb, i);
        match self.equation {
            WeedEquation::Quadruple => {
                let fixed = |side: Side| -> Result<(VertexId, VertexId, VertexId), WeedError> {
                    let perm = &self.pair.duals(side).perms()[nb / 2];
                    let f: Vec<usize> = (0..3).filter(|&i| perm[i] == i).collect();
                    let [p] = f.as_slice() else {
                        return Err(WeedError::Spec("the quadruple point needs one self-dual vertex".into()));
                    };
                    let o: Vec<usize> = (0..3).filter(|i| i != p).collect();
                    Ok((v(*p), v(o[0]), v(o[1])))
                };
                let (p, q, _) = fixed(Side::Plus)?;
                let (pc, qc, _) = fixed(Side::Minus)?;
                Ok(Roles { p, q, p_check: pc, q_check: qc })
            }
            _ => {
                let p = match self.p_vertex {
                    Some(p) => p,
                    None => self.default_p()?,
                };
                let p_check = match (self.equation, self.p_check) {
                    (WeedEquation::OddStar11, _) => p,
                    (_, Some(pc)) => pc,
                    (_, None) => v(0),
                };
                Ok(Roles { p, q: v(1 - p.index), p_check, q_check: v(1 - p_check.index) })
            }
        }
    }

    /// The branch vertex with a single neighbour above it.
    fn default_p(&self) -> Result<VertexId, WeedError> {
        let nb = self.branch_depth();
        let g = self.pair.plus();
        let c: Vec<VertexId> = (0..2).map(|i| VertexId::new(nb, i)).filter(|&v| g.up(v).len() == 1 && g.up(v)[0].1 == 1).collect();
        match c.as_slice() {
            [p] => Ok(*p),
            _ => Err(WeedError::Spec("P is not determined: give pVertex".into())),
        }
    }

    /// `r` and `r-check` as rational functions.
    pub fn symbolic_branch_factor(&self, dims: &SymbolicDims) -> Result<(RatFunc, RatFunc), WeedError> {
        let roles = self.roles()?;
        let k = if self.equation == WeedEquation::Quadruple { RatFunc::int(2) } else { RatFunc::one() };
        let ratio = |side, q, p| -> Result<RatFunc, WeedError> { Ok(&(&k * dims.dim(side, q)) * &dims.dim(side, p).inv()?) };
        Ok((ratio(Side::Plus, roles.q, roles.p)?, ratio(Side::Minus, roles.q_check, roles.p_check)?))
    }

    /// Everything up to `F = s + 2`.
    pub fn chirality_expression(&self) -> Result<WeedExpression, WeedError> {
        let dims = self.symbolic_dimensions()?;
        let (r, r_check) = self.symbolic_branch_factor(&dims)?;
        let roles = self.roles()?;
        let same = r.equals(&r_check);
        let qn = quantum_integer_shifted(0);
        let qn1 = quantum_integer_shifted(1);
        let qn2 = quantum_integer_shifted(2);
        let (s, coefficient) = match self.equation {
            WeedEquation::Quadruple => {
                if !same {
                    return Err(WeedError::Inapplicable("r and r-check differ".into()));
                }
                self.check_quadruple_capping(&roles)?;
                (&qn2 - &qn, None)
            }
            eq => {
                if !same {
                    return Err(WeedError::Inapplicable("r and r-check differ, so the square root in the equation is not rational".into()));
                }
                let c = self.symbolic_coefficient(&dims, &roles, &r, &r_check)?;
                let x = TripleInputs {
                    qn: qn.clone(),
                    qn1,
                    r: r.clone(),
                    r_check: r_check.clone(),
                    sqrt_rc_over_r: RatFunc::one(),
                    // unused by the two equations taken here
                    sqrt_rc: RatFunc::one(),
                    c: c.clone(),
                };
                let s = if eq == WeedEquation::OddStar11 { solve_o(&x) } else { solve_e(&x) };
                (s, Some(c))
            }
        };
        let f = &s + &RatFunc::int(2);
        Ok(WeedExpression { dims, r, r_check, coefficient, s, f })
    }

    /// Ocneanu's hypothesis at the quadruple point: every capped summand
    /// of `P'`, present or added by an extension, lands on P-check.
    fn check_quadruple_capping(&self, roles: &Roles) -> Result<(), WeedError> {
        let nb = self.branch_depth();
        let terms = capped_terms(&self.pair, roles.p).map_err(|e| WeedError::Inapplicable(e.to_string()))?;
        if let Some(t) = terms.iter().find(|t| t.r_bar.0 != Side::Minus || t.e != roles.p_check) {
            return Err(WeedError::Inapplicable(format!("{} caps onto {}", t.r, t.e)));
        }
        if self.is_open(Side::Plus, roles.p) {
            let stray = (0..3).map(|i| VertexId::new(nb, i)).find(|&v| v != roles.p_check && self.is_open(Side::Minus, v));
            if let Some(v) = stray {
                return Err(WeedError::Inapplicable(format!("an extension may connect a dual of a neighbour of P to {v}")));
            }
        }
        Ok(())
    }

    /// Coefficient of the capped `P'` from the weed's own edges.
    fn symbolic_coefficient(&self, dims: &SymbolicDims, roles: &Roles, r: &RatFunc, r_check: &RatFunc) -> Result<RatFunc, WeedError> {
        if self.is_open(Side::Plus, roles.p) {
            return Err(WeedError::Inapplicable("P may gain neighbours in an extension".into()));
        }
        let mut c = RatFunc::zero();
        for t in capped_terms(&self.pair, roles.p).map_err(|e| WeedError::Inapplicable(e.to_string()))? {
            let (side, bar) = t.r_bar;
            if self.is_open(side, bar) {
                return Err(WeedError::Inapplicable(format!("{bar} may gain neighbours at the branch depth")));
            }
            let (p, q, rr) = match side {
                Side::Plus => (roles.p, roles.q, r),
                Side::Minus => (roles.p_check, roles.q_check, r_check),
            };
            let base = (&RatFunc::one() + rr).inv()?;
            let role = if t.e == p {
                base
            } else if t.e == q {
                -&base
            } else {
                return Err(WeedError::Inapplicable(format!("{} is not a branch vertex", t.e)));
            };
            let term = &(&(&RatFunc::int(t.mult as i64) * dims.dim(Side::Plus, t.r)) * &dims.dim(side, t.e).inv()?) * &role;
            c = &c + &term;
        }
        Ok(c)
    }

    /// Certifies that F leaves `[0, 4]` on the region, or reports why not.
    pub fn eliminate(&self) -> Result<WeedOutcome, WeedError> {
        match self.chirality_expression() {
            Ok(expr) => eliminate_expression(&self.name, &expr, &self.q0, self.equation == WeedEquation::Quadruple, self.n0),
            Err(WeedError::Forced(g)) => Ok(eliminate_forced(&self.name, &g, &self.q0, self.n0)),
            Err(e) => Err(e),
        }
    }
}

struct Roles {
    p: VertexId,
    q: VertexId,
    p_check: VertexId,
    q_check: VertexId,
}

#[derive(Clone, Debug)]
pub struct WeedExpression {
    pub dims: SymbolicDims,
    pub r: RatFunc,
    pub r_check: RatFunc,
    pub coefficient: Option<RatFunc>,
    pub s: RatFunc,
    pub f: RatFunc,
}

/// Which end of `[0, 4]` F is shown to leave.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Bound {
    /// `F < 0`
    BelowZero,
    /// `F > 4`
    AboveFour,
    /// The weed forces `F = 0` for an F that never vanishes, so no
    /// dimension vector exists.
    NonZero,
}

/// Sign certificate for one side of a fraction: `sign * poly > 0`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SignedCert {
    pub sign: i32,
    pub certificate: Certificate,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct EliminationCertificate {
    pub weed: String,
    /// r as a rational function, for the record.
    pub r: Option<RatFunc>,
    /// `s + 2`, or with [`Bound::NonZero`] the expression the
    /// eigen-equations force to vanish.
    pub f: Option<RatFunc>,
    pub bound: Option<Bound>,
    /// Certificates for the numerator and denominator of `F` (or `F - 4`).
    pub numerator: Option<SignedCert>,
    pub denominator: Option<SignedCert>,
    #[serde(with = "rat_serde")]
    pub q0: Rat,
    pub q_strict: bool,
    /// Region `a >= q^a_qshift` in the certificates; looser than `n >= n0`
    /// when `a_qshift < n0`.
    pub a_qshift: i64,
    pub n0: i64,
    pub conclusion: String,
    pub boundary_note: Option<String>,
}

impl EliminationCertificate {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificates serialize")
    }

    pub fn from_json(s: &str) -> Result<Self, WeedError> {
        serde_json::from_str(s).map_err(|e| WeedError::Spec(e.to_string()))
    }

    /// Replays the sub-certificates and checks that they are about the
    /// stored F, without recomputing F from the weed.
    pub fn verify(&self) -> Result<(), WeedError> {
        let (Some(f), Some(bound), Some(num), Some(den)) = (&self.f, self.bound, &self.numerator, &self.denominator) else {
            return Err(WeedError::Mismatch("only elimination by sign certificates can be replayed".into()));
        };
        let target = target_fraction(f, bound);
        for (part, sc, what) in [(target.num(), num, "numerator"), (target.den(), den, "denominator")] {
            check(&sc.certificate)?;
            let Claim::Bivariate { poly, amin, a_qshift, q0, q_strict } = &sc.certificate.claim else {
                return Err(WeedError::Mismatch(format!("{what} claim is not bivariate")));
            };
            if sc.sign.abs() != 1 || *poly != part.scale(&Rat::from_integer(sc.sign.into())) {
                return Err(WeedError::Mismatch(format!("{what} claim is not about the stored expression")));
            }
            if *amin != Rat::from_integer(1.into()) || *a_qshift > self.n0 || *q0 > self.q0 || (*q_strict && !self.q_strict) {
                return Err(WeedError::Mismatch(format!("{what} claim does not cover the region")));
            }
        }
        if bound != Bound::NonZero && num.sign != den.sign {
            return Err(WeedError::Mismatch("numerator and denominator signs differ".into()));
        }
        Ok(())
    }
}

/// The fraction shown positive: `-F` below zero, `F - 4` above four.
fn target_fraction(f: &RatFunc, bound: Bound) -> RatFunc {
    match bound {
        Bound::BelowZero => -f,
        Bound::AboveFour => f - &RatFunc::int(4),
        Bound::NonZero => f.clone(),
    }
}

#[derive(Clone, Debug)]
pub enum WeedOutcome {
    Eliminated(Box<EliminationCertificate>),
    Survives { reason: String },
    Inconclusive { reason: String },
}

impl WeedOutcome {
    pub fn verdict(&self) -> &'static str {
        match self {
            WeedOutcome::Eliminated(_) => "eliminated",
            WeedOutcome::Survives { .. } => "survives",
            WeedOutcome::Inconclusive { .. } => "inconclusive",
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            WeedOutcome::Eliminated(c) => json!({ "verdict": self.verdict(), "certificate": serde_json::to_value(c.as_ref()).expect("serializes") }),
            WeedOutcome::Survives { reason } | WeedOutcome::Inconclusive { reason } => json!({ "verdict": self.verdict(), "reason": reason }),
        }
    }
}

fn prove_sign(p: &BivarPoly, q0: &Rat, q_strict: bool, n0: i64) -> Option<(SignedCert, i64)> {
    let one = Rat::from_integer(1.into());
    for sign in [1, -1] {
        let sp = p.scale(&Rat::from_integer(sign.into()));
        // a >= 1 covers every n >= 0; fall back to the stated region
        for shift in [0, n0] {
            if let Some(c) = prove_bivariate(&sp, &one, shift, q0, q_strict) {
                return Some((SignedCert { sign, certificate: c }, shift));
            }
        }
    }
    None
}

/// Tries to certify that `F` leaves `[0, 4]` for `a >= q^n0`, `q >= q0`.
/// The quadruple route only ever shows `F > 4`, strictly above q0.
pub fn eliminate_expression(name: &str, expr: &WeedExpression, q0: &Rat, quadruple: bool, n0: i64) -> Result<WeedOutcome, WeedError> {
    let f = &expr.f;
    if f.is_zero() {
        return Ok(WeedOutcome::Survives { reason: "F = s + 2 vanishes identically, so s = -2 is always admissible".into() });
    }
    let bounds: &[Bound] = if quadruple { &[Bound::AboveFour] } else { &[Bound::BelowZero, Bound::AboveFour] };
    let q_strict = quadruple;
    for &bound in bounds {
        let t = target_fraction(f, bound);
        let Some((num, s1)) = prove_sign(t.num(), q0, q_strict, n0) else { continue };
        let Some((den, s2)) = prove_sign(t.den(), q0, q_strict, n0) else { continue };
        if num.sign != den.sign {
            continue;
        }
        let what = match bound {
            Bound::BelowZero => "F = s + 2 < 0",
            Bound::AboveFour => "F = s + 2 > 4",
            Bound::NonZero => unreachable!(),
        };
        let region = if q_strict { format!("q > {}", rat_to_string(q0)) } else { format!("q >= {}", rat_to_string(q0)) };
        let cert = EliminationCertificate {
            weed: name.into(),
            r: Some(expr.r.clone()),
            f: Some(f.clone()),
            bound: Some(bound),
            numerator: Some(num),
            denominator: Some(den),
            q0: q0.clone(),
            q_strict,
            a_qshift: s1.max(s2),
            n0,
            conclusion: format!("{what} for {region} and n >= {}, contradicting 0 <= s + 2 <= 4", s1.max(s2)),
            boundary_note: quadruple.then(|| format!("q = {} ([2] = 2) is excluded; there the only translated extension is the Z/4 pair", rat_to_string(q0))),
        };
        return Ok(WeedOutcome::Eliminated(Box::new(cert)));
    }
    Ok(WeedOutcome::Inconclusive { reason: "could not certify the sign of the numerator and denominator of F on the region".into() })
}

/// The eigen-equations leave no solution unless `g = 0`; that is only an
/// elimination if g is certified nonzero on the region.
pub fn eliminate_forced(name: &str, g: &RatFunc, q0: &Rat, n0: i64) -> WeedOutcome {
    let certs = prove_sign(g.num(), q0, false, n0).zip(prove_sign(g.den(), q0, false, n0));
    let Some(((num, s1), (den, s2))) = certs else {
        return WeedOutcome::Inconclusive { reason: format!("the dimensions exist only where {g} = 0, which was not excluded on the region") };
    };
    let shift = s1.max(s2);
    WeedOutcome::Eliminated(Box::new(EliminationCertificate {
        weed: name.into(),
        r: None,
        f: Some(g.clone()),
        bound: Some(Bound::NonZero),
        numerator: Some(num),
        denominator: Some(den),
        q0: q0.clone(),
        q_strict: false,
        a_qshift: shift,
        n0,
        conclusion: format!("the eigen-equations force an expression that is nonzero for q >= {} and n >= {shift}, so no dimension vector exists", rat_to_string(q0)),
        boundary_note: None,
    }))
}

/// Parses a rational such as `16789/10000` or `1.6789`.
pub fn parse_q0(s: &str) -> Result<Rat, WeedError> {
    parse_rat(s).map_err(WeedError::Q)
}
