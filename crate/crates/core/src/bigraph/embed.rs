//! Relabeling within depths and label-independent matching of translated
//! extensions.

use super::{Bigraph, BigraphError, BigraphPair, DualData, Side, VertexId};

/// Where a (translated) weed sits inside a candidate pair:
/// `plus[d][i]` is the candidate index of weed vertex `i` at translated depth `d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Embedding {
    pub t: usize,
    pub plus: Vec<Vec<usize>>,
    pub minus: Vec<Vec<usize>>,
}

impl Embedding {
    /// Candidate vertex for a weed vertex given at its untranslated depth.
    /// Depths past the weed's chain shift by `t`.
    pub fn image(&self, side: Side, weed_chain: usize, v: VertexId) -> VertexId {
        let depth = if v.depth <= weed_chain { v.depth } else { v.depth + self.t };
        let maps = match side {
            Side::Plus => &self.plus,
            Side::Minus => &self.minus,
        };
        VertexId::new(depth, maps[depth][v.index])
    }
}

fn relabel_graph(g: &Bigraph, perm: &[Vec<usize>]) -> Result<Bigraph, BigraphError> {
    let mut depths = g.depths().to_vec();
    for (d0, layer) in g.depths().iter().enumerate() {
        let d = d0 + 1;
        for (i, row) in layer.iter().enumerate() {
            let mut new_row = vec![0; row.len()];
            for (j, &m) in row.iter().enumerate() {
                new_row[perm[d - 1][j]] = m;
            }
            depths[d0][perm[d][i]] = new_row;
        }
    }
    Bigraph::new(depths)
}

fn relabel_duals(g: &Bigraph, d: &DualData, perm: &[Vec<usize>]) -> Result<DualData, BigraphError> {
    let perms = d
        .perms()
        .iter()
        .enumerate()
        .map(|(b, p)| {
            let s = &perm[2 * b];
            let mut out = vec![0; p.len()];
            for (i, &x) in p.iter().enumerate() {
                out[s[i]] = s[x];
            }
            out
        })
        .collect();
    DualData::new(g, perms)
}

impl BigraphPair {
    /// Renumbers vertices within each depth: vertex `i` at depth `d` becomes
    /// `perm[d][i]`. Odd-depth permutations must agree on the two sides to
    /// keep the positional duality.
    pub fn relabel(&self, plus: &[Vec<usize>], minus: &[Vec<usize>]) -> Result<BigraphPair, BigraphError> {
        let gp = relabel_graph(self.plus(), plus)?;
        let gm = relabel_graph(self.minus(), minus)?;
        let dp = relabel_duals(&gp, self.duals(Side::Plus), plus)?;
        let dm = relabel_duals(&gm, self.duals(Side::Minus), minus)?;
        BigraphPair::new(gp, gm, dp, dm)
    }

    /// Like `is_translated_extension`, but up to renumbering within depths.
    pub fn find_translated_extension(&self, weed: &BigraphPair, even_only: bool) -> Option<Embedding> {
        let (kc, kw) = (self.plus().supertransitivity().k, weed.plus().supertransitivity().k);
        if kc < kw {
            return None;
        }
        let t = kc - kw;
        if even_only && t % 2 == 1 {
            return None;
        }
        let wt = weed.translate(t);
        let wp = weed.plus().translate(t);
        let wm = weed.minus().translate(t);
        for (c, w) in [(self.plus(), &wp), (self.minus(), &wm)] {
            if c.max_depth() < w.max_depth() || (1..=w.max_depth()).any(|d| c.count(d) != w.count(d)) {
                return None;
            }
        }
        let ctx = Matcher { cand: self, wp: &wp, wm: &wm, wduals: wt.as_ref() };
        let mut plus = vec![vec![0]];
        let mut minus = vec![vec![0]];
        ctx.search(1, &mut plus, &mut minus).then_some(Embedding { t, plus, minus })
    }
}

struct Matcher<'a> {
    cand: &'a BigraphPair,
    wp: &'a Bigraph,
    wm: &'a Bigraph,
    wduals: Option<&'a BigraphPair>,
}

impl Matcher<'_> {
    fn weed(&self, side: Side) -> &Bigraph {
        match side {
            Side::Plus => self.wp,
            Side::Minus => self.wm,
        }
    }

    /// Every assignment of weed vertices at depth `d` to candidate vertices
    /// compatible with the edges down to depth `d - 1` on the given sides.
    fn assignments(&self, d: usize, sides: &[Side], below: &[&Vec<usize>]) -> Vec<Vec<usize>> {
        let n = self.weed(sides[0]).count(d);
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(n);
        let mut used = vec![false; n];
        self.extend(d, sides, below, &mut cur, &mut used, &mut out);
        out
    }

    fn extend(&self, d: usize, sides: &[Side], below: &[&Vec<usize>], cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        let i = cur.len();
        if i == used.len() {
            out.push(cur.clone());
            return;
        }
        for c in 0..used.len() {
            if used[c] {
                continue;
            }
            let fits = sides.iter().zip(below).all(|(&side, f)| {
                let w = &self.weed(side).depths()[d - 1][i];
                let g = &self.cand.graph(side).depths()[d - 1][c];
                w.iter().enumerate().all(|(j, &m)| g[f[j]] == m)
            });
            if fits {
                used[c] = true;
                cur.push(c);
                self.extend(d, sides, below, cur, used, out);
                cur.pop();
                used[c] = false;
            }
        }
    }

    fn duals_ok(&self, side: Side, d: usize, f: &[usize]) -> bool {
        let Some(wt) = self.wduals else { return true };
        let wp = &wt.duals(side).perms()[d / 2];
        let cp = &self.cand.duals(side).perms()[d / 2];
        (0..f.len()).all(|i| cp[f[i]] == f[wp[i]])
    }

    fn search(&self, d: usize, plus: &mut Vec<Vec<usize>>, minus: &mut Vec<Vec<usize>>) -> bool {
        let ap = d <= self.wp.max_depth();
        let am = d <= self.wm.max_depth();
        if !ap && !am {
            return true;
        }
        if d % 2 == 1 && ap && am {
            for f in self.assignments(d, &[Side::Plus, Side::Minus], &[&plus[d - 1], &minus[d - 1]]) {
                plus.push(f.clone());
                minus.push(f);
                if self.search(d + 1, plus, minus) {
                    return true;
                }
                plus.pop();
                minus.pop();
            }
            return false;
        }
        let fps = if ap { self.assignments(d, &[Side::Plus], &[&plus[d - 1]]) } else { vec![vec![]] };
        let fms = if am { self.assignments(d, &[Side::Minus], &[&minus[d - 1]]) } else { vec![vec![]] };
        let even = d % 2 == 0;
        for fp in &fps {
            if ap && even && !self.duals_ok(Side::Plus, d, fp) {
                continue;
            }
            for fm in &fms {
                if am && even && !self.duals_ok(Side::Minus, d, fm) {
                    continue;
                }
                if ap {
                    plus.push(fp.clone());
                }
                if am {
                    minus.push(fm.clone());
                }
                if self.search(d + 1, plus, minus) {
                    return true;
                }
                if ap {
                    plus.pop();
                }
                if am {
                    minus.pop();
                }
            }
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::super::parse_pair;

    const FC_WEED: (&str, &str) = ("bwd1v1p1v1x0p0x1p0x1duals1v1x2", "bwd1v1p1v1x0p1x0p0x1duals1v1x2");

    #[test]
    fn relabel_round_trip() {
        let pair = parse_pair(FC_WEED.0, FC_WEED.1).unwrap();
        let perm = vec![vec![0], vec![0], vec![1, 0], vec![2, 0, 1]];
        let moved = pair.relabel(&perm, &perm).unwrap();
        assert_ne!(moved, pair);
        let weed = parse_pair(FC_WEED.0, FC_WEED.1).unwrap();
        let e = moved.find_translated_extension(&weed, true).unwrap();
        assert_eq!(e.t, 0);
        assert_eq!(e.plus[2], vec![1, 0]);
        assert_eq!(e.plus[3], vec![2, 0, 1]);
        assert!(pair.is_translated_extension(&weed, true).is_some());
        assert!(moved.is_translated_extension(&weed, true).is_none());
    }

    #[test]
    fn translated_quadruple_weed() {
        let q = parse_pair("bwd1v1p1p1duals1v1x3x2", "bwd1v1p1p1duals1v1x3x2").unwrap();
        let q3 = parse_pair("bwd1v1v1v1p1p1v1x0x0duals1v1v1x3x2", "bwd1v1v1v1p1p1v1x0x0duals1v1v1x3x2").unwrap();
        let e = q3.find_translated_extension(&q, true).unwrap();
        assert_eq!(e.t, 2);
        // different duality data at the branch does not embed
        let other = parse_pair("bwd1v1p1p1duals1v1x2x3", "bwd1v1p1p1duals1v1x2x3").unwrap();
        assert!(q3.find_translated_extension(&other, true).is_none());
    }
}
