//! Relative dimensions of a weed as rational functions of `a = q^n` and q.
//!
//! The top chain vertex has dimension `[n]` and the one below it `[n-1]`.
//! Walking up from the chain, each closed vertex's eigen-equation fixes one
//! unassigned neighbour above it; any further unassigned neighbours become
//! free parameters. Duality and the identification of odd depths between
//! the two graphs then pin the parameters down.

use std::collections::{BTreeMap, HashMap};

use serde_json::{json, Value};

use super::WeedError;
use crate::bigraph::{BigraphPair, Side, VertexId};
use crate::qlaurent::{quantum_integer, quantum_integer_shifted, RatFunc};

/// Affine combination `c + sum_i p[i] x_i` of free parameters.
#[derive(Clone, Debug)]
struct Lin {
    c: RatFunc,
    p: BTreeMap<usize, RatFunc>,
}

impl Lin {
    fn konst(c: RatFunc) -> Lin {
        Lin { c, p: BTreeMap::new() }
    }

    fn param(i: usize) -> Lin {
        Lin { c: RatFunc::zero(), p: BTreeMap::from([(i, RatFunc::one())]) }
    }

    fn axpy(&self, k: &RatFunc, o: &Lin) -> Lin {
        let mut out = self.clone();
        out.c = &out.c + &(k * &o.c);
        for (i, x) in &o.p {
            let v = match out.p.get(i) {
                Some(y) => y + &(k * x),
                None => k * x,
            };
            if v.is_zero() {
                out.p.remove(i);
            } else {
                out.p.insert(*i, v);
            }
        }
        out
    }

    fn scale(&self, k: &RatFunc) -> Lin {
        Lin::konst(RatFunc::zero()).axpy(k, self)
    }

    fn subst(&self, i: usize, sol: &Lin) -> Lin {
        match self.p.get(&i) {
            None => self.clone(),
            Some(k) => {
                let k = k.clone();
                let mut out = self.clone();
                out.p.remove(&i);
                out.axpy(&k, sol)
            }
        }
    }
}

/// Dimensions of every weed vertex; chain vertices are included, read as
/// the vertex at the same distance below the branch.
#[derive(Clone, Debug)]
pub struct SymbolicDims {
    /// Weed depth of the first branch.
    pub branch_depth: usize,
    pub plus: Vec<Vec<RatFunc>>,
    pub minus: Vec<Vec<RatFunc>>,
}

impl SymbolicDims {
    pub fn dim(&self, side: Side, v: VertexId) -> &RatFunc {
        match side {
            Side::Plus => &self.plus[v.depth][v.index],
            Side::Minus => &self.minus[v.depth][v.index],
        }
    }

    pub fn to_json(&self) -> Value {
        let show = |d: &Vec<Vec<RatFunc>>| -> Vec<Vec<String>> { d.iter().map(|l| l.iter().map(|x| x.to_string()).collect()).collect() };
        json!({ "branchDepth": self.branch_depth, "plus": show(&self.plus), "minus": show(&self.minus) })
    }
}

/// `[2] = q + 1/q`.
pub fn d_symbolic() -> RatFunc {
    RatFunc::from_laurent(&quantum_integer(2))
}

/// Solves for the weed's dimensions. `closed(side, v)` says whether the
/// vertex's neighbourhood is complete in the weed.
pub fn solve_dimensions(pair: &BigraphPair, closed: &dyn Fn(Side, VertexId) -> bool) -> Result<SymbolicDims, WeedError> {
    let kw = pair.plus().supertransitivity().k;
    if pair.minus().supertransitivity().k != kw {
        return Err(WeedError::Spec("the two graphs leave the chain at different depths".into()));
    }
    let nb = kw + 1;
    let d = d_symbolic();
    let top = Lin::konst(quantum_integer_shifted(0));
    let below = Lin::konst(quantum_integer_shifted(-1));
    let mut assign: HashMap<(Side, VertexId), Lin> = HashMap::new();
    let mut nparams = 0;
    let mut constraints: Vec<Lin> = Vec::new();
    let fresh = |n: &mut usize| {
        *n += 1;
        Lin::param(*n - 1)
    };
    for side in [Side::Plus, Side::Minus] {
        let g = pair.graph(side);
        assign.insert((side, VertexId::new(kw, 0)), top.clone());
        for j in kw..=g.max_depth() {
            for i in 0..g.count(j) {
                let v = VertexId::new(j, i);
                if !assign.contains_key(&(side, v)) {
                    let p = fresh(&mut nparams);
                    assign.insert((side, v), p);
                }
                if !closed(side, v) {
                    continue;
                }
                // d x_v - sum_down m x_u = sum_up m x_w
                let mut lhs = assign[&(side, v)].scale(&d);
                if j == kw {
                    lhs = lhs.axpy(&RatFunc::int(-1), &below);
                } else {
                    for (u, m) in g.down(v) {
                        lhs = lhs.axpy(&RatFunc::int(-(m as i64)), &assign[&(side, u)]);
                    }
                }
                let ups = g.up(v);
                let open: Vec<(VertexId, u32)> = ups.iter().copied().filter(|(w, _)| !assign.contains_key(&(side, *w))).collect();
                for (w, m) in &ups {
                    if let Some(x) = assign.get(&(side, *w)) {
                        lhs = lhs.axpy(&RatFunc::int(-(*m as i64)), x);
                    }
                }
                match open.split_last() {
                    None => constraints.push(lhs),
                    Some(((last, m), rest)) => {
                        for (w, mw) in rest {
                            let p = fresh(&mut nparams);
                            lhs = lhs.axpy(&RatFunc::int(-(*mw as i64)), &p);
                            assign.insert((side, *w), p);
                        }
                        assign.insert((side, *last), lhs.scale(&RatFunc::constant(crate::qlaurent::rat(1, *m as i64))));
                    }
                }
            }
        }
    }
    // duality preserves dimension; odd depths pair positionally across graphs
    for side in [Side::Plus, Side::Minus] {
        let g = pair.graph(side);
        for j in (nb..=g.max_depth()).filter(|j| j % 2 == 0) {
            for i in 0..g.count(j) {
                let v = VertexId::new(j, i);
                let w = pair.duals(side).dual(v).expect("even depth");
                if w.index > i {
                    constraints.push(assign[&(side, v)].axpy(&RatFunc::int(-1), &assign[&(side, w)]));
                }
            }
        }
    }
    let shared = pair.plus().max_depth().min(pair.minus().max_depth());
    for j in (nb..=shared).filter(|j| j % 2 == 1) {
        for i in 0..pair.plus().count(j) {
            let v = VertexId::new(j, i);
            constraints.push(assign[&(Side::Plus, v)].axpy(&RatFunc::int(-1), &assign[&(Side::Minus, v)]));
        }
    }
    let solved = eliminate(constraints)?;
    let mut out = SymbolicDims { branch_depth: nb, plus: vec![], minus: vec![] };
    for side in [Side::Plus, Side::Minus] {
        let g = pair.graph(side);
        let mut layers = Vec::new();
        for j in 0..=g.max_depth() {
            let mut layer = Vec::new();
            for i in 0..g.count(j) {
                let v = VertexId::new(j, i);
                let x = if j < kw {
                    quantum_integer_shifted(j as i64 - kw as i64)
                } else {
                    let mut x = assign[&(side, v)].clone();
                    for (k, sol) in &solved {
                        x = x.subst(*k, sol);
                    }
                    if !x.p.is_empty() {
                        return Err(WeedError::Underdetermined(x.p.len()));
                    }
                    x.c
                };
                layer.push(x);
            }
            layers.push(layer);
        }
        match side {
            Side::Plus => out.plus = layers,
            Side::Minus => out.minus = layers,
        }
    }
    Ok(out)
}

/// Gaussian elimination on `row = 0` constraints; returns each eliminated
/// parameter as a combination of the ones left free, in elimination order.
fn eliminate(rows: Vec<Lin>) -> Result<Vec<(usize, Lin)>, WeedError> {
    let mut solved: Vec<(usize, Lin)> = Vec::new();
    for row in rows {
        let mut row = row;
        for (k, sol) in &solved {
            row = row.subst(*k, sol);
        }
        // pivot on the simplest coefficient to limit growth
        let pivot = row.p.iter().min_by_key(|(_, c)| c.num().len() + c.den().len()).map(|(k, c)| (*k, c.clone()));
        let Some((k, c)) = pivot else {
            if row.c.is_zero() {
                continue;
            }
            return Err(WeedError::Forced(row.c));
        };
        // x_k = -(row - c x_k) / c
        let mut rest = row.clone();
        rest.p.remove(&k);
        let inv = c.inv().map_err(WeedError::Q)?;
        let sol = rest.scale(&(-&inv));
        for (_, s) in solved.iter_mut() {
            *s = s.subst(k, &sol);
        }
        solved.push((k, sol));
    }
    Ok(solved)
}
