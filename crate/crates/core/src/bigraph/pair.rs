use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::{parse::serialize_bigraph, Bigraph, BigraphError, DualData, VertexId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Plus,
    Minus,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::Plus => Side::Minus,
            Side::Minus => Side::Plus,
        }
    }
}

/// Principal graph pair. Odd-depth vertices of the two graphs are dual to
/// each other by listed position.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BigraphPair {
    plus: Bigraph,
    minus: Bigraph,
    plus_duals: DualData,
    minus_duals: DualData,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TranslationMatch {
    pub t: usize,
}

impl BigraphPair {
    pub fn new(plus: Bigraph, minus: Bigraph, plus_duals: DualData, minus_duals: DualData) -> Result<Self, BigraphError> {
        let common = plus.max_depth().min(minus.max_depth());
        for depth in (1..=common).step_by(2) {
            let (p, m) = (plus.count(depth), minus.count(depth));
            if p != m {
                return Err(BigraphError::OddCountMismatch { depth, plus: p, minus: m });
            }
        }
        DualData::new(&plus, plus_duals.perms().to_vec())?;
        DualData::new(&minus, minus_duals.perms().to_vec())?;
        Ok(BigraphPair { plus, minus, plus_duals, minus_duals })
    }

    /// Pair with both graphs equal and every even-depth vertex self-dual.
    pub fn self_dual(g: Bigraph) -> Self {
        let d = DualData::identity(&g);
        BigraphPair { plus: g.clone(), minus: g, plus_duals: d.clone(), minus_duals: d }
    }

    pub fn graph(&self, side: Side) -> &Bigraph {
        match side {
            Side::Plus => &self.plus,
            Side::Minus => &self.minus,
        }
    }

    pub fn duals(&self, side: Side) -> &DualData {
        match side {
            Side::Plus => &self.plus_duals,
            Side::Minus => &self.minus_duals,
        }
    }

    pub fn plus(&self) -> &Bigraph {
        &self.plus
    }

    pub fn minus(&self) -> &Bigraph {
        &self.minus
    }

    /// Dual of a vertex: the involution at even depth, the vertex in the
    /// same position on the other graph at odd depth.
    pub fn dual_vertex(&self, side: Side, v: VertexId) -> Option<(Side, VertexId)> {
        if !self.graph(side).contains(v) {
            return None;
        }
        if v.depth % 2 == 0 {
            self.duals(side).dual(v).map(|w| (side, w))
        } else {
            let other = side.other();
            self.graph(other).contains(v).then_some((other, v))
        }
    }

    /// Advisory notes that do not make the pair invalid.
    pub fn warnings(&self) -> Vec<String> {
        let mut w = Vec::new();
        if self.plus.max_depth() != self.minus.max_depth() {
            w.push(format!(
                "graphs have different depths ({} on the plus side, {} on the minus side)",
                self.plus.max_depth(),
                self.minus.max_depth()
            ));
        }
        w
    }

    pub fn strings(&self) -> (String, String) {
        (serialize_bigraph(&self.plus, Some(&self.plus_duals)), serialize_bigraph(&self.minus, Some(&self.minus_duals)))
    }

    pub fn truncate(&self, k: usize) -> Result<BigraphPair, BigraphError> {
        let p = self.plus.truncate(k.min(self.plus.max_depth()))?;
        let m = self.minus.truncate(k.min(self.minus.max_depth()))?;
        let (dp, dm) = (self.plus_duals.truncate(p.max_depth()), self.minus_duals.truncate(m.max_depth()));
        BigraphPair::new(p, m, dp, dm)
    }

    /// Even translation by `t`; odd `t` has no consistent duality data.
    pub fn translate(&self, t: usize) -> Option<BigraphPair> {
        if t % 2 != 0 {
            return None;
        }
        let kp = self.plus.supertransitivity().k;
        let km = self.minus.supertransitivity().k;
        Some(BigraphPair {
            plus: self.plus.translate(t),
            minus: self.minus.translate(t),
            plus_duals: self.plus_duals.translate(kp, t),
            minus_duals: self.minus_duals.translate(km, t),
        })
    }

    /// Whether `self` is `weed` translated by some `t` and then extended by
    /// vertices at depths beyond the translated weed. With `even_only`
    /// (or whenever duality data must line up) `t` has to be even.
    pub fn is_translated_extension(&self, weed: &BigraphPair, even_only: bool) -> Option<TranslationMatch> {
        let (kc, kw) = (self.plus.supertransitivity().k, weed.plus.supertransitivity().k);
        if kc < kw {
            return None;
        }
        let t = kc - kw;
        let graphs_match = |c: &Bigraph, w: &Bigraph| {
            let wt = w.translate(t);
            c.max_depth() >= wt.max_depth() && c.truncate(wt.max_depth()).ok().as_ref() == Some(&wt)
        };
        if !graphs_match(&self.plus, &weed.plus) || !graphs_match(&self.minus, &weed.minus) {
            return None;
        }
        if t % 2 == 1 {
            return (!even_only).then_some(TranslationMatch { t });
        }
        let wt = weed.translate(t)?;
        let duals_match = |side: Side| {
            let d = wt.graph(side).max_depth();
            self.duals(side).truncate(d) == *wt.duals(side)
        };
        (duals_match(Side::Plus) && duals_match(Side::Minus)).then_some(TranslationMatch { t })
    }

    /// JSON view: per graph, the string, multiplicity matrices and 1-based duals.
    pub fn to_json(&self) -> Value {
        let side = |g: &Bigraph, d: &DualData| {
            let duals: Vec<Vec<usize>> = d.perms().iter().map(|p| p.iter().map(|i| i + 1).collect()).collect();
            json!({ "string": serialize_bigraph(g, Some(d)), "depths": g.depths(), "duals": duals })
        };
        json!({ "plus": side(&self.plus, &self.plus_duals), "minus": side(&self.minus, &self.minus_duals) })
    }
}
