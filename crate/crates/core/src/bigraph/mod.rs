//! Principal graph pairs: depth-stratified bipartite multigraphs with duality.
//!
//! Vertex identity is `(depth, index)` with `index` counted in listed order
//! within the depth block, starting at 0. Depth 0 holds only the star.
//! Listed order runs bottom to top in the usual drawings.

mod embed;
mod pair;
mod parse;

pub use embed::Embedding;
pub use pair::{BigraphPair, Side, TranslationMatch};
pub use parse::{parse_bigraph, parse_pair, serialize_bigraph};

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BigraphError {
    #[error("graph string must start with `bwd` or `gbg`")]
    BadPrefix,
    #[error("unexpected character {ch:?} at position {pos}")]
    BadToken { pos: usize, ch: char },
    #[error("empty entry at position {pos}")]
    Empty { pos: usize },
    #[error("multiplicity at position {pos} has more than one digit")]
    MultiDigit { pos: usize },
    #[error("depth {depth} vertex {vertex}: expected {expected} multiplicities, found {found}")]
    LengthMismatch { depth: usize, vertex: usize, expected: usize, found: usize },
    #[error("depth {depth} vertex {vertex} has no edge to depth {}", depth - 1)]
    Disconnected { depth: usize, vertex: usize },
    #[error("`bwd` string has no duals section")]
    MissingDuals,
    #[error("`gbg` string cannot carry a duals section")]
    UnexpectedDuals,
    #[error("{found} dual blocks given but the graph has {expected} even depths")]
    DualBlockCount { expected: usize, found: usize },
    #[error("dual permutation at depth {depth} has {found} entries for {expected} vertices")]
    DualLength { depth: usize, expected: usize, found: usize },
    #[error("dual permutation at depth {depth} is not a permutation")]
    NotPermutation { depth: usize },
    #[error("dual permutation at depth {depth} is not an involution")]
    NotInvolution { depth: usize },
    #[error("depth {depth} out of range 0..={max}")]
    DepthOutOfRange { depth: usize, max: usize },
    #[error("odd depth {depth}: {plus} vertices on the plus side but {minus} on the minus side")]
    OddCountMismatch { depth: usize, plus: usize, minus: usize },
    #[error("edge list is not a connected bipartite graph")]
    NotBipartite,
    #[error("vertex ({depth}, {index}) does not exist")]
    NoSuchVertex { depth: usize, index: usize },
    #[error("a pair needs two graph strings")]
    PairArity,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct VertexId {
    pub depth: usize,
    pub index: usize,
}

impl VertexId {
    pub fn new(depth: usize, index: usize) -> Self {
        VertexId { depth, index }
    }

    pub const STAR: VertexId = VertexId { depth: 0, index: 0 };
}

impl std::fmt::Display for VertexId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}:{}", self.depth, self.index + 1)
    }
}

/// Bipartite graph by depth. `depths[d - 1][i][j]` is the number of edges
/// between vertex i at depth d and vertex j at depth d - 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Bigraph {
    depths: Vec<Vec<Vec<u32>>>,
}

/// Supertransitivity and the first branch, if any.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Supertransitivity {
    /// Largest k with the truncation to depth k a chain.
    pub k: usize,
    /// Branch depth `n = k + 1` and its vertex count, when that depth has
    /// more than one vertex.
    pub branch: Option<Branch>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Branch {
    pub n: usize,
    pub valence: usize,
}

impl Bigraph {
    pub fn new(depths: Vec<Vec<Vec<u32>>>) -> Result<Self, BigraphError> {
        let mut prev = 1;
        for (i, layer) in depths.iter().enumerate() {
            let depth = i + 1;
            for (v, m) in layer.iter().enumerate() {
                if m.len() != prev {
                    return Err(BigraphError::LengthMismatch { depth, vertex: v, expected: prev, found: m.len() });
                }
                if m.iter().all(|&x| x == 0) {
                    return Err(BigraphError::Disconnected { depth, vertex: v });
                }
            }
            if layer.is_empty() {
                return Err(BigraphError::Empty { pos: 0 });
            }
            prev = layer.len();
        }
        Ok(Bigraph { depths })
    }

    /// Builds the graph from an undirected edge list, with depth measured
    /// from `root`. Within a depth, vertices keep the order of their labels.
    pub fn from_edges(vertices: usize, edges: &[(usize, usize)], root: usize) -> Result<Self, BigraphError> {
        let mut adj = vec![Vec::new(); vertices];
        for &(a, b) in edges {
            if a >= vertices || b >= vertices || a == b {
                return Err(BigraphError::NotBipartite);
            }
            adj[a].push(b);
            adj[b].push(a);
        }
        let mut depth = vec![usize::MAX; vertices];
        depth[root] = 0;
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if depth[w] == usize::MAX {
                    depth[w] = depth[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        if depth.contains(&usize::MAX) || edges.iter().any(|&(a, b)| depth[a].abs_diff(depth[b]) != 1) {
            return Err(BigraphError::NotBipartite);
        }
        let max = depth.iter().copied().max().unwrap_or(0);
        let layers: Vec<Vec<usize>> = (0..=max).map(|d| (0..vertices).filter(|&v| depth[v] == d).collect()).collect();
        let pos = |v: usize| layers[depth[v]].iter().position(|&x| x == v).unwrap();
        let mut depths: Vec<Vec<Vec<u32>>> = (1..=max).map(|d| vec![vec![0; layers[d - 1].len()]; layers[d].len()]).collect();
        for &(a, b) in edges {
            let (lo, hi) = if depth[a] < depth[b] { (a, b) } else { (b, a) };
            depths[depth[hi] - 1][pos(hi)][pos(lo)] += 1;
        }
        Bigraph::new(depths)
    }

    /// The chain with `edges` edges (the star plus `edges` vertices).
    pub fn chain(edges: usize) -> Self {
        Bigraph { depths: vec![vec![vec![1]]; edges] }
    }

    pub fn depths(&self) -> &[Vec<Vec<u32>>] {
        &self.depths
    }

    pub fn max_depth(&self) -> usize {
        self.depths.len()
    }

    pub fn count(&self, depth: usize) -> usize {
        if depth == 0 {
            1
        } else {
            self.depths.get(depth - 1).map_or(0, Vec::len)
        }
    }

    pub fn num_vertices(&self) -> usize {
        1 + self.depths.iter().map(Vec::len).sum::<usize>()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        v.depth <= self.max_depth() && v.index < self.count(v.depth)
    }

    pub fn check_vertex(&self, v: VertexId) -> Result<(), BigraphError> {
        if self.contains(v) {
            Ok(())
        } else {
            Err(BigraphError::NoSuchVertex { depth: v.depth, index: v.index })
        }
    }

    /// Edge multiplicity between `v` and a vertex one depth shallower.
    pub fn mult_down(&self, v: VertexId, parent: usize) -> u32 {
        if v.depth == 0 {
            return 0;
        }
        self.depths[v.depth - 1][v.index].get(parent).copied().unwrap_or(0)
    }

    /// Neighbours one depth shallower with multiplicities.
    pub fn down(&self, v: VertexId) -> Vec<(VertexId, u32)> {
        if v.depth == 0 {
            return vec![];
        }
        self.depths[v.depth - 1][v.index]
            .iter()
            .enumerate()
            .filter(|(_, &m)| m > 0)
            .map(|(j, &m)| (VertexId::new(v.depth - 1, j), m))
            .collect()
    }

    /// Neighbours one depth deeper with multiplicities.
    pub fn up(&self, v: VertexId) -> Vec<(VertexId, u32)> {
        match self.depths.get(v.depth) {
            None => vec![],
            Some(layer) => layer
                .iter()
                .enumerate()
                .filter_map(|(i, m)| {
                    let k = m[v.index];
                    (k > 0).then_some((VertexId::new(v.depth + 1, i), k))
                })
                .collect(),
        }
    }

    pub fn neighbors(&self, v: VertexId) -> Vec<(VertexId, u32)> {
        let mut out = self.down(v);
        out.extend(self.up(v));
        out
    }

    pub fn valence(&self, v: VertexId) -> u32 {
        self.neighbors(v).iter().map(|(_, m)| m).sum()
    }

    /// All vertices, depth by depth in listed order.
    pub fn vertices(&self) -> Vec<VertexId> {
        (0..=self.max_depth()).flat_map(|d| (0..self.count(d)).map(move |i| VertexId::new(d, i))).collect()
    }

    /// Position of `v` in [`Bigraph::vertices`].
    pub fn global_index(&self, v: VertexId) -> usize {
        (0..v.depth).map(|d| self.count(d)).sum::<usize>() + v.index
    }

    /// Symmetric adjacency matrix over [`Bigraph::vertices`].
    pub fn adjacency(&self) -> Vec<Vec<u32>> {
        let n = self.num_vertices();
        let mut a = vec![vec![0u32; n]; n];
        for v in self.vertices() {
            for (w, m) in self.down(v) {
                let (i, j) = (self.global_index(v), self.global_index(w));
                a[i][j] = m;
                a[j][i] = m;
            }
        }
        a
    }

    pub fn truncate(&self, k: usize) -> Result<Bigraph, BigraphError> {
        if k > self.max_depth() {
            return Err(BigraphError::DepthOutOfRange { depth: k, max: self.max_depth() });
        }
        Ok(Bigraph { depths: self.depths[..k].to_vec() })
    }

    pub fn is_chain(&self) -> bool {
        self.depths.iter().all(|l| l.len() == 1 && l[0] == [1])
    }

    pub fn supertransitivity(&self) -> Supertransitivity {
        let k = self.depths.iter().take_while(|l| l.len() == 1 && l[0] == [1]).count();
        let branch = self.depths.get(k).filter(|l| l.len() > 1).map(|l| Branch { n: k + 1, valence: l.len() });
        Supertransitivity { k, branch }
    }

    /// Inserts `t` chain depths right after the initial chain.
    pub fn translate(&self, t: usize) -> Bigraph {
        let k = self.supertransitivity().k;
        let mut depths = self.depths[..k].to_vec();
        depths.extend(std::iter::repeat(vec![vec![1]]).take(t));
        depths.extend_from_slice(&self.depths[k..]);
        Bigraph { depths }
    }

    /// Based loop counts `L_j` = closed walks of length 2j at the star,
    /// with multiplicity, for `j = 0..=jmax`.
    pub fn loops_at_star(&self, jmax: usize) -> Vec<BigInt> {
        let adj = self.adjacency();
        let n = adj.len();
        let mut v = vec![BigInt::zero(); n];
        v[0] = BigInt::from(1);
        let mut out = Vec::with_capacity(jmax + 1);
        for j in 0..=jmax {
            // L_j = |A^j e_star|^2 by symmetry of A
            out.push(v.iter().map(|x| x * x).sum());
            if j < jmax {
                v = (0..n)
                    .map(|i| adj[i].iter().zip(&v).filter(|(m, _)| **m > 0).map(|(m, x)| x * BigInt::from(*m)).sum())
                    .collect();
            }
        }
        out
    }

    /// Annular multiplicities `a_0..=a_kmax` from the based loop counts.
    pub fn annular_multiplicities(&self, kmax: usize) -> Vec<BigInt> {
        annular_from_loops(&self.loops_at_star(kmax))
    }
}

/// `a_k = sum_j (-1)^(k-j) 2k/(k+j) C(k+j, k-j) L_j` for `k >= 2`, with
/// `a_0 = L_0` and `a_1 = L_1 - L_0`.
///
/// The weight-zero module has Catalan dimensions, so its contribution must
/// be removed before inverting `L_j = sum_k a_k C(2j, j-k)`. For `k >= 2` the
/// Catalan terms cancel and the sum above is exact; at `k = 1` the sum would
/// give `L_1 - 2 L_0`.
pub fn annular_from_loops(loops: &[BigInt]) -> Vec<BigInt> {
    use num_integer::Integer;
    let binom = |n: usize, r: usize| -> BigInt {
        let mut b = BigInt::from(1);
        for i in 0..r {
            b = b * BigInt::from(n - i) / BigInt::from(i + 1);
        }
        b
    };
    (0..loops.len())
        .map(|k| {
            if k == 0 {
                return loops[0].clone();
            }
            if k == 1 {
                return &loops[1] - &loops[0];
            }
            let mut num = BigInt::zero();
            // common denominator: lcm of k + j over j
            let mut den = BigInt::from(1);
            for j in 0..=k {
                den = den.lcm(&BigInt::from(k + j));
            }
            for (j, l) in loops.iter().enumerate().take(k + 1) {
                let t = BigInt::from(2 * k) * binom(k + j, k - j) * l * (&den / BigInt::from(k + j));
                if (k - j) % 2 == 0 {
                    num += t;
                } else {
                    num -= t;
                }
            }
            let (q, r) = num.div_rem(&den);
            debug_assert!(r.is_zero(), "annular multiplicity is an integer");
            q
        })
        .collect()
}

/// Presents annular multiplicities with the supertransitive prefix as `*`
/// followed by `shown` entries from the first nonzero one, e.g. `*11`.
pub fn compress_annular(a: &[BigInt], shown: usize) -> String {
    let first = a.iter().skip(1).position(|x| !x.is_zero()).map(|p| p + 1);
    match first {
        None => "*".to_string(),
        Some(f) => {
            let tail: Vec<String> = a[f..(f + shown).min(a.len())].iter().map(|x| x.to_string()).collect();
            format!("*{}", tail.concat())
        }
    }
}

/// Involutions on the vertices at each even depth, 0-based images.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DualData {
    perms: Vec<Vec<usize>>,
}

impl DualData {
    pub fn new(g: &Bigraph, perms: Vec<Vec<usize>>) -> Result<Self, BigraphError> {
        let expected = g.max_depth() / 2 + 1;
        if perms.len() != expected {
            return Err(BigraphError::DualBlockCount { expected, found: perms.len() });
        }
        for (b, p) in perms.iter().enumerate() {
            let depth = 2 * b;
            let n = g.count(depth);
            if p.len() != n {
                return Err(BigraphError::DualLength { depth, expected: n, found: p.len() });
            }
            let mut seen = vec![false; n];
            for &x in p {
                if x >= n || seen[x] {
                    return Err(BigraphError::NotPermutation { depth });
                }
                seen[x] = true;
            }
            if p.iter().enumerate().any(|(i, &x)| p[x] != i) {
                return Err(BigraphError::NotInvolution { depth });
            }
        }
        Ok(DualData { perms })
    }

    pub fn identity(g: &Bigraph) -> Self {
        DualData { perms: (0..=g.max_depth()).step_by(2).map(|d| (0..g.count(d)).collect()).collect() }
    }

    pub fn perms(&self) -> &[Vec<usize>] {
        &self.perms
    }

    /// Dual of an even-depth vertex.
    pub fn dual(&self, v: VertexId) -> Option<VertexId> {
        if v.depth % 2 != 0 {
            return None;
        }
        self.perms.get(v.depth / 2).and_then(|p| p.get(v.index)).map(|&i| VertexId::new(v.depth, i))
    }

    pub fn truncate(&self, k: usize) -> DualData {
        DualData { perms: self.perms[..k / 2 + 1].to_vec() }
    }

    /// Inserts `t / 2` trivial blocks after the chain; `t` must be even.
    pub fn translate(&self, chain_len: usize, t: usize) -> DualData {
        debug_assert!(t % 2 == 0);
        let keep = chain_len / 2 + 1;
        let mut perms = self.perms[..keep.min(self.perms.len())].to_vec();
        perms.extend(std::iter::repeat(vec![0]).take(t / 2));
        perms.extend_from_slice(&self.perms[keep.min(self.perms.len())..]);
        DualData { perms }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chain_supertransitivity() {
        let g = Bigraph::chain(5);
        assert_eq!(g.supertransitivity(), Supertransitivity { k: 5, branch: None });
        assert_eq!(g.truncate(2).unwrap(), Bigraph::chain(2));
        assert!(g.truncate(6).is_err());
    }

    #[test]
    fn chain_loops_are_catalan() {
        let l = Bigraph::chain(6).loops_at_star(6);
        let cat: Vec<BigInt> = [1, 1, 2, 5, 14, 42, 132].iter().map(|&x| BigInt::from(x)).collect();
        assert_eq!(l, cat);
    }

    #[test]
    fn single_edge_loops() {
        assert!(Bigraph::chain(1).loops_at_star(5).iter().all(|x| *x == BigInt::from(1)));
    }

    #[test]
    fn rejects_disconnected_vertex() {
        assert_eq!(
            Bigraph::new(vec![vec![vec![1]], vec![vec![1], vec![0]]]),
            Err(BigraphError::Disconnected { depth: 2, vertex: 1 })
        );
    }

    #[test]
    fn compression() {
        let a: Vec<BigInt> = [1, 0, 0, 1, 1, 0].iter().map(|&x| BigInt::from(x)).collect();
        assert_eq!(compress_annular(&a, 2), "*11");
        assert_eq!(compress_annular(&a, 3), "*110");
    }
}
