//! The individual obstructions.

use serde_json::{json, Value};

use super::{Analysis, Entry, Verdict};
use crate::bigraph::{Bigraph, BigraphPair, Embedding, Side, VertexId};
use crate::catalog::{STAR11_EVEN, STAR11_ODD, WEED_Q, Z4};
use crate::chirality::{
    capped_terms, coeff_in_capped, root_of_unity_consistency, solve_quadruple, solve_triple, solve_triple_from, BaseVertex, CoeffResult, Parity, RootCheck,
    RootVerdict, Target,
};
use crate::real::Real;
use crate::spectra::{branch_data, qint, BranchData, Designation, SpectralProfile, TripleBranch};

fn triple_at(a: &Analysis, des: Designation) -> Result<TripleBranch, String> {
    match branch_data(a.pair, a.prof, des) {
        Ok(BranchData::Triple(b)) => Ok(b),
        Ok(BranchData::Quadruple(_)) => Err("the first branch is a quadruple point".into()),
        Err(e) => Err(e.to_string()),
    }
}

fn root_verdict(c: &RootCheck) -> Option<Verdict> {
    match c.verdict {
        RootVerdict::Consistent => None,
        RootVerdict::Inconsistent => Some(Verdict::Eliminated),
        RootVerdict::Inconclusive => Some(Verdict::Inconclusive),
    }
}

fn applied(name: &'static str, verdict: Verdict, reason: impl Into<String>, evidence: Value) -> Entry {
    Entry { name, applicable: true, reason: reason.into(), verdict, evidence }
}

/// `[n+2] - [n]`, the value of `s` forced once the capped `P'` is a
/// multiple of the low weight vector's dual.
fn ocneanu_s(d: &Real, n: usize) -> Real {
    qint(d, n as i64 + 2) - qint(d, n as i64)
}

fn all_simple(g: &Bigraph) -> bool {
    g.depths().iter().flatten().flatten().all(|&m| m <= 1)
}

/// The combinatorial hypotheses of Ocneanu's triple point obstruction for
/// a labelling: every capped summand of `P'` lands on `P-check` when P is
/// self-dual, on `Q-check` when P is dual to Q, and on P itself for odd n.
/// Only depths n and n + 1 are inspected.
pub fn ocneanu_hypotheses(pair: &BigraphPair, p: VertexId, p_check: VertexId) -> Result<(), String> {
    let n = p.depth;
    let terms = capped_terms(pair, p).map_err(|e| e.to_string())?;
    let (side, target) = if n % 2 == 1 {
        (Side::Plus, p)
    } else {
        let dual = pair.duals(Side::Plus).dual(p).ok_or("no duality at the branch depth")?;
        let q_check = VertexId::new(n, 1 - p_check.index);
        (Side::Minus, if dual == p { p_check } else { q_check })
    };
    match terms.iter().find(|t| t.r_bar.0 != side || t.e != target) {
        None => Ok(()),
        Some(t) => Err(format!("{} caps onto {} rather than {}", t.r, t.e, target)),
    }
}

/// Ocneanu's triple point obstruction.
pub fn ocneanu_triple(a: &Analysis) -> Entry {
    const NAME: &str = "ocneanu_triple";
    let b0 = match triple_at(a, Designation::default()) {
        Ok(b) => b,
        Err(e) => return Entry::inapplicable(NAME, e),
    };
    let n = b0.n;
    let checks = if n % 2 == 1 { vec![(0, 0), (1, 1)] } else { vec![(0, 0), (0, 1), (1, 0), (1, 1)] };
    let mut failures = Vec::new();
    let mut found = None;
    for (i, j) in checks {
        let des = Designation { p: Some(VertexId::new(n, i)), p_check: Some(VertexId::new(n, j)) };
        let b = match triple_at(a, des) {
            Ok(b) => b,
            Err(e) => return Entry::inapplicable(NAME, e),
        };
        let label = format!("P = {}, P_check = {}", b.p, b.p_check);
        if n % 2 == 0 && !b.r.close_to(&b.r_check, a.cfg.tol) {
            failures.push(format!("{label}: r = {} differs from r_check = {}", a.fmt(&b.r), a.fmt(&b.r_check)));
            continue;
        }
        match ocneanu_hypotheses(a.pair, b.p, b.p_check) {
            Ok(()) => {
                found = Some(b);
                break;
            }
            Err(e) => failures.push(format!("{label}: {e}")),
        }
    }
    let Some(b) = found else {
        return Entry::inapplicable(NAME, failures.join("; "));
    };
    let d = &a.prof.norm;
    let s = ocneanu_s(d, n);
    let from_equation = solve_triple(a.pair, a.prof, &b, a.cfg.tol).map(|r| a.fmt(&r.s)).map_err(|e| e.to_string());
    let mut evidence = json!({
        "n": n,
        "P": b.p.to_string(),
        "P_check": b.p_check.to_string(),
        "norm": a.fmt(d),
        "s": a.fmt(&s),
        "s_from_equation": match &from_equation { Ok(x) => Value::from(x.clone()), Err(e) => Value::from(format!("unavailable: {e}")) },
    });
    let over = d - Real::from_i64(2, d.precision());
    if let Some(v) = a.positive(&over) {
        return applied(NAME, v, format!("the norm {} exceeds 2, so s = [n+2] - [n] = {} is not 2 cos of a real angle", a.fmt(d), a.fmt(&s)), evidence);
    }
    let check = root_of_unity_consistency(&s, n, Parity::None, a.cfg.root_tol);
    evidence["omega"] = check.to_json();
    match root_verdict(&check) {
        Some(v) => applied(NAME, v, format!("s = {}: {}", a.fmt(&s), check.reason), evidence),
        None => applied(NAME, Verdict::Survives, format!("s = {}: {}", a.fmt(&s), check.reason), evidence),
    }
}

fn swapped(pair: &BigraphPair) -> Option<BigraphPair> {
    BigraphPair::new(pair.minus().clone(), pair.plus().clone(), pair.duals(Side::Minus).clone(), pair.duals(Side::Plus).clone()).ok()
}

fn singly_valent_vertex(g: &Bigraph, n: usize) -> Option<VertexId> {
    (0..g.count(n)).map(|i| VertexId::new(n, i)).find(|&v| g.valence(v) == 1)
}

/// The singly valent obstruction: a valence-one vertex at a triple point
/// above index 4 forces n even, r = [n+2]/[n], and `omega^(n/2) = 1`.
pub fn singly_valent(a: &Analysis) -> Entry {
    const NAME: &str = "singly_valent";
    let b0 = match triple_at(a, Designation::default()) {
        Ok(b) => b,
        Err(e) => return Entry::inapplicable(NAME, e),
    };
    let n = b0.n;
    let d = &a.prof.norm;
    let two = Real::from_i64(2, d.precision());
    if (d - &two).to_f64() <= a.cfg.tol {
        return Entry::inapplicable(NAME, "the index is at most 4");
    }
    if !all_simple(a.pair.plus()) || !all_simple(a.pair.minus()) {
        return Entry::inapplicable(NAME, "some edge has multiplicity above 1");
    }
    // P is taken on the plus graph; a valence-one vertex on the minus graph
    // is handled by passing to the dual pair.
    let (pair_owned, side, p) = if let Some(p) = singly_valent_vertex(a.pair.plus(), n) {
        (None, Side::Plus, p)
    } else if let Some(p) = singly_valent_vertex(a.pair.minus(), n) {
        match swapped(a.pair) {
            Some(sw) => (Some(sw), Side::Minus, p),
            None => return Entry::inapplicable(NAME, "the dual pair is not well formed"),
        }
    } else {
        return Entry::inapplicable(NAME, "no vertex at the branch depth has valence 1");
    };
    let mut evidence = json!({ "n": n, "P": p.to_string(), "side": if side == Side::Plus { "plus" } else { "minus" } });
    if n % 2 == 1 {
        return applied(NAME, Verdict::Eliminated, format!("{p} has valence 1 but the branch depth n = {n} is odd"), evidence);
    }
    let prof_owned;
    let (pair, prof): (&BigraphPair, &SpectralProfile) = match &pair_owned {
        None => (a.pair, a.prof),
        Some(sw) => {
            let mut pr = a.prof.clone();
            std::mem::swap(&mut pr.dims_plus, &mut pr.dims_minus);
            std::mem::swap(&mut pr.norm, &mut pr.norm_minus);
            prof_owned = pr;
            (sw, &prof_owned)
        }
    };
    let b = match branch_data(pair, prof, Designation { p: Some(p), p_check: None }) {
        Ok(BranchData::Triple(b)) => b,
        Ok(_) => return Entry::inapplicable(NAME, "not a triple point on the dual pair"),
        Err(e) => return Entry::inapplicable(NAME, e.to_string()),
    };
    singly_valent_from(a, &b, &prof.norm, evidence.take())
}

/// Shared tail of the singly valent check, given branch data with P the
/// valence-one vertex. Traces come from `b`, so perturbed data can be fed in.
pub fn singly_valent_from(a: &Analysis, b: &TripleBranch, d: &Real, mut evidence: Value) -> Entry {
    const NAME: &str = "singly_valent";
    let n = b.n as i64;
    let expected = qint(d, n + 2) / qint(d, n);
    evidence["r"] = a.fmt(&b.r).into();
    evidence["r_expected"] = a.fmt(&expected).into();
    let gap = (&b.r - &expected).abs();
    if let Some(v) = a.positive(&gap) {
        return applied(NAME, v, format!("r = {} but a valence-one P forces r = [n+2]/[n] = {}", a.fmt(&b.r), a.fmt(&expected)), evidence);
    }
    let prec = d.precision();
    let zero = CoeffResult { value: Real::zero(prec), terms: vec![] };
    let res = match solve_triple_from(b, d, zero, a.cfg.tol) {
        Ok(r) => r,
        Err(e) => return applied(NAME, Verdict::Eliminated, e.to_string(), evidence),
    };
    evidence["s"] = a.fmt(&res.s).into();
    // r_check + 1/r_check = 2 + s^2 / ([n][n+2]) when P' = 0
    let lhs = &b.r_check + b.r_check.recip();
    let rhs = Real::from_i64(2, prec) + &res.s * &res.s / (qint(d, n) * qint(d, n + 2));
    evidence["relation_residual"] = (lhs - rhs).abs().to_string_digits(3).into();
    let check = root_of_unity_consistency(&res.s, b.n, Parity::Plus, a.cfg.root_tol);
    evidence["omega"] = check.to_json();
    match root_verdict(&check) {
        Some(v) => applied(NAME, v, format!("s = {}: {}", a.fmt(&res.s), check.reason), evidence),
        None => applied(NAME, Verdict::Survives, format!("s = {}: {}", a.fmt(&res.s), check.reason), evidence),
    }
}

fn has_singly_valent(pair: &BigraphPair, n: usize) -> bool {
    singly_valent_vertex(pair.plus(), n).is_some() || singly_valent_vertex(pair.minus(), n).is_some()
}

/// The `*11` obstruction: after the chain, annular multiplicities `*11`,
/// no valence-one vertex at the branch, and the branch begins as one of the
/// two `*11` weeds. Then s is fixed by the coefficient of the capped `P'`.
pub fn star11(a: &Analysis) -> Entry {
    const NAME: &str = "star11";
    let b0 = match triple_at(a, Designation::default()) {
        Ok(b) => b,
        Err(e) => return Entry::inapplicable(NAME, e),
    };
    let n = b0.n;
    let ann = a.prof.annular_compressed();
    if ann != "*11" {
        return Entry::inapplicable(NAME, format!("annular multiplicities are {ann}, not *11"));
    }
    if has_singly_valent(a.pair, n) {
        return Entry::inapplicable(NAME, "a vertex at the branch depth has valence 1");
    }
    let weed = if n % 2 == 0 { STAR11_EVEN } else { STAR11_ODD };
    let wp = weed.pair();
    let Some(emb) = a.pair.find_translated_extension(&wp, true) else {
        return Entry::inapplicable(NAME, format!("the branch does not begin as an even translate of the {} weed", weed.name));
    };
    let wk = wp.plus().supertransitivity().k;
    let wn = wk + 1;
    let p = emb.image(Side::Plus, wk, VertexId::new(wn, 0));
    let des = if n % 2 == 0 {
        Designation { p: Some(p), p_check: Some(emb.image(Side::Minus, wk, VertexId::new(wn, 0))) }
    } else {
        Designation { p: Some(p), p_check: None }
    };
    let b = match triple_at(a, des) {
        Ok(b) => b,
        Err(e) => return Entry::inapplicable(NAME, e),
    };
    let res = match solve_triple(a.pair, a.prof, &b, a.cfg.tol) {
        Ok(r) => r,
        Err(e) => return Entry::inapplicable(NAME, e.to_string()),
    };
    let d = &a.prof.norm;
    let (qn, qn2) = (qint(d, n as i64), qint(d, n as i64 + 2));
    // the value both sides of the *11 clause must share
    let clause = if n % 2 == 0 { (&b.r * &qn - &qn2) / &qn } else { (&qn2 - &b.r * &qn) / (&b.r * &qn) };
    let mut evidence = json!({
        "n": n,
        "translation": emb.t,
        "weed": weed.name,
        "P": b.p.to_string(),
        "P_check": b.p_check.to_string(),
        "clause_value": a.fmt(&clause),
        "solution": res.to_json(a.cfg.digits),
    });
    let excess = res.s.abs() - Real::from_i64(2, d.precision());
    if let Some(v) = a.positive(&excess) {
        return applied(NAME, v, format!("|s| = {} exceeds 2", a.fmt(&res.s.abs())), evidence);
    }
    let check = root_of_unity_consistency(&res.s, n, Parity::None, a.cfg.root_tol);
    evidence["omega"] = check.to_json();
    match root_verdict(&check) {
        Some(v) => applied(NAME, v, format!("s = {}: {}", a.fmt(&res.s), check.reason), evidence),
        None => applied(NAME, Verdict::Survives, format!("s = {}: {}", a.fmt(&res.s), check.reason), evidence),
    }
}

/// Checks shared by the two quadruple point obstructions: an even
/// translated extension of the quadruple weed.
fn quadruple_setup(a: &Analysis) -> Result<(crate::spectra::QuadBranch, Embedding), String> {
    let b = match branch_data(a.pair, a.prof, Designation::default()) {
        Ok(BranchData::Quadruple(b)) => b,
        Ok(BranchData::Triple(_)) => return Err("the first branch is a triple point".into()),
        Err(e) => return Err(e.to_string()),
    };
    let emb = a.pair.find_translated_extension(&WEED_Q.pair(), true).ok_or("the branch does not begin as an even translate of the quadruple weed")?;
    Ok((b, emb))
}

fn is_z4(pair: &BigraphPair) -> bool {
    let z = Z4.pair();
    pair.plus().max_depth() == z.plus().max_depth()
        && pair.minus().max_depth() == z.minus().max_depth()
        && pair.find_translated_extension(&z, true).is_some_and(|e| e.t == 0)
}

/// Analogue of Ocneanu's obstruction at a quadruple point: if every capped
/// summand of `P'` lands on `P-check` and r = r-check, then s_A = [n+2] - [n],
/// which exceeds 2 above index 4.
pub fn ocneanu_quadruple(a: &Analysis) -> Entry {
    const NAME: &str = "ocneanu_quadruple";
    let (b, emb) = match quadruple_setup(a) {
        Ok(x) => x,
        Err(e) => return Entry::inapplicable(NAME, e),
    };
    if !b.r.close_to(&b.r_check, a.cfg.tol) {
        return Entry::inapplicable(NAME, format!("r = {} differs from r_check = {}", a.fmt(&b.r), a.fmt(&b.r_check)));
    }
    let terms = match capped_terms(a.pair, b.p) {
        Ok(t) => t,
        Err(e) => return Entry::inapplicable(NAME, e.to_string()),
    };
    if let Some(t) = terms.iter().find(|t| t.r_bar.0 != Side::Minus || t.e != b.p_check) {
        return Entry::inapplicable(NAME, format!("{} caps onto {} rather than {}", t.r, t.e, b.p_check));
    }
    let d = &a.prof.norm;
    let s = ocneanu_s(d, b.n);
    let mut evidence = json!({
        "n": b.n,
        "translation": emb.t,
        "P": b.p.to_string(),
        "P_check": b.p_check.to_string(),
        "norm": a.fmt(d),
        "s_A": a.fmt(&s),
    });
    if let Ok(q) = solve_quadruple(a.pair, a.prof, &b, a.cfg.tol) {
        evidence["quadruple_solution"] = q.to_json(a.cfg.digits);
    }
    let over = d - Real::from_i64(2, d.precision());
    if let Some(v) = a.positive(&over) {
        return applied(NAME, v, format!("s_A = [n+2] - [n] = {} exceeds 2", a.fmt(&s)), evidence);
    }
    let z4 = is_z4(a.pair);
    evidence["boundary_case"] = Value::from(if z4 { "Z/4" } else { "index 4" });
    applied(NAME, Verdict::Survives, format!("s_A = {} at index 4; the boundary case survives", a.fmt(&s)), evidence)
}

/// The full quadruple point equations: s_A from the two A equations must
/// agree and be admissible, and the B equation must have an admissible
/// solution.
pub fn quadruple_equations(a: &Analysis) -> Entry {
    const NAME: &str = "quadruple_equations";
    let (b, emb) = match quadruple_setup(a) {
        Ok(x) => x,
        Err(e) => return Entry::inapplicable(NAME, e),
    };
    for base in [BaseVertex::P, BaseVertex::Q] {
        if let Err(e) = coeff_in_capped(a.pair, a.prof, &BranchData::Quadruple(b.clone()), base, Target::A) {
            return Entry::inapplicable(NAME, e.to_string());
        }
    }
    let q = match solve_quadruple(a.pair, a.prof, &b, a.cfg.tol) {
        Ok(q) => q,
        Err(e) => return Entry::inapplicable(NAME, e.to_string()),
    };
    let evidence = json!({ "n": b.n, "translation": emb.t, "solution": q.to_json(a.cfg.digits) });
    if let Some(v) = a.positive(&q.qa_disagreement) {
        return applied(NAME, v, format!("the two A equations give s_A = {} and {}", a.fmt(&q.s_a_qa1), a.fmt(&q.s_a_qa2)), evidence);
    }
    if let Some(v) = root_verdict(&q.a.check) {
        return applied(NAME, v, format!("s_A = {}: {}", a.fmt(&q.a.s), q.a.check.reason), evidence);
    }
    if q.b_candidates.is_empty() && !q.b_undetermined {
        return applied(NAME, Verdict::Eliminated, "the B equation has no solution with omega_B^(n/2) = -1", evidence);
    }
    let reason = match &q.s_b {
        Some(sb) => format!("s_A = {}, s_B = {}", a.fmt(&q.a.s), a.fmt(sb)),
        None => format!("s_A = {}, sigma_B undetermined", a.fmt(&q.a.s)),
    };
    applied(NAME, Verdict::Survives, reason, evidence)
}
