//! Named graph pairs: realized subfactors, weeds, and the Dynkin diagrams of
//! index at most 4.

use crate::bigraph::{parse_pair, Bigraph, BigraphPair};

/// A graph pair given by its two strings.
#[derive(Clone, Copy, Debug)]
pub struct Named {
    pub name: &'static str,
    pub plus: &'static str,
    pub minus: &'static str,
}

impl Named {
    pub fn pair(&self) -> BigraphPair {
        parse_pair(self.plus, self.minus).expect("catalog strings are valid")
    }
}

const fn named(name: &'static str, plus: &'static str, minus: &'static str) -> Named {
    Named { name, plus, minus }
}

pub const HAAGERUP: Named = named(
    "Haagerup",
    "bwd1v1v1v1p1v1x0p0x1v1x0p0x1duals1v1v1x2v2x1",
    "bwd1v1v1v1p1v1x0p1x0duals1v1v1x2",
);

pub const TWO_D_TWO: Named = named("2D2", "bwd1v1v1p1v1x0p1x0p0x1p0x1v0x1x1x0duals1v1v1x3x2x4", "bwd1v1v1p1v1x1v1v1duals1v1v1v1");
pub const TWO_D_TWO_DUAL: Named = named("2D2 dual", "bwd1v1v1p1v1x1v1v1duals1v1v1v1", "bwd1v1v1p1v1x0p1x0p0x1p0x1v0x1x1x0duals1v1v1x3x2x4");

pub const SU3_Q1: Named = named(
    "su(3) Q1",
    "bwd1v1v1p1v1x0p1x0p0x1v1x0x0p0x1x1duals1v1v3x2x1",
    "bwd1v1v1p1v1x0p1x0p0x1v1x0x0p0x1x1duals1v1v3x2x1",
);
pub const SU3_Q2: Named = named(
    "su(3) Q2",
    "bwd1v1v1p1v1x0p0x1p0x1v0x1x0p1x0x1p0x0x1v0x1x0p1x0x1v1x0duals1v1v2x1x3v2x1",
    "bwd1v1v1p1v1x0p0x1p0x1v0x1x0p1x0x1p0x0x1v0x1x0p1x0x1v1x0duals1v1v2x1x3v2x1",
);

pub const GHJ_3311: Named = named(
    "GHJ 3311",
    "bwd1v1v1v1p1p1v1x0x0v1duals1v1v1x2x3v1",
    "bwd1v1v1v1p1p1v1x0x0v1duals1v1v1x2x3v1",
);

pub const Z4: Named = named("Z/4", "bwd1v1p1p1duals1v1x3x2", "bwd1v1p1p1duals1v1x3x2");

/// Group and Bisch-Haagerup subfactors at index 6.
pub const INDEX_SIX: [Named; 6] = [
    named("A4a", "bwd1v1p1p1v0x0x2duals1v2x1x3", "bwd1v1p1p1v0x1x1v1p1duals1v1x3x2v1x2"),
    named(
        "S3x3a",
        "bwd1v1p1p1v0x1x0p0x0x1v1x0p1x0p1x1p0x1p0x1duals1v1x3x2v4x5x3x1x2",
        "bwd1v1p1p1v0x0x1p0x0x1v1x0p1x0p1x0p0x1p0x1p0x1duals1v2x1x3v4x5x6x1x2x3",
    ),
    named(
        "A4x2a",
        "bwd1v1p1p1v0x0x1p0x0x1v1x1v1v1p1p1duals1v2x1x3v1v1x3x2",
        "bwd1v1p1p1v0x1x0p0x0x1v1x0p1x0p1x0p0x1p0x1p0x1v0x0x1x0x0x1v1p1duals1v1x3x2v1x2x6x4x5x3v1x2",
    ),
    named("BH A4", "bwd1v1p1p1v0x1x1v1p1duals1v1x3x2v1x2", "bwd1v1p1p1v0x0x2duals1v2x1x3"),
    named(
        "BH S4",
        "bwd1v1p1p1v0x1x0p0x0x1v1x0p0x1p1x1v1x1x0v1p1duals1v1x3x2v1x2x3v1x2",
        "bwd1v1p1p1v0x0x1p0x0x1v1x1v1v1p1p1duals1v2x1x3v1v1x2x3",
    ),
    named(
        "BH A5",
        "bwd1v1p1p1v0x1x0p0x0x1v1x0p1x0p0x1p0x1v0x1x0x0p1x0x0x1p0x0x1x0v1x0x0p0x1x0p1x0x1p0x0x1v0x1x0x0p1x0x0x0p0x0x0x1v1x1x0p0x1x0p1x0x1p0x0x1v0x1x0x1v1p1duals1v1x3x2v4x2x3x1v4x3x2x1v1x2x3x4v1x2",
        "bwd1v1p1p1v0x0x1p0x0x1v1x0p0x1v1x0p1x1p0x1v1x0x0p0x0x1v1x0p1x1p0x1v1x0x1v1v1p1p1duals1v2x1x3v2x1v1x2v1v1x2x3",
    ),
];

/// The base index 6 pair, with P the univalent self-dual vertex at depth 2.
pub const INDEX_SIX_BASE: Named = INDEX_SIX[3];

/// The other possible start of an index 6 pair with a univalent self-dual P.
pub const INDEX_SIX_START: Named = named("index 6 start", "bwd1v1p1p1v0x1x0p0x0x1duals1v1x3x2", "bwd1v1p1p1v0x0x1p0x0x1duals1v2x1x3");

/// Weed eliminated through the odd `*11` equation.
pub const WEED_W: Named = named(
    "W",
    "bwd1v1v1p1v0x1p1x0p1x0v1x0x0p1x0x0p0x1x0p0x0x1v1x0x0x0p0x1x0x0p0x0x1x0p0x0x1x0p0x0x0x1v1x0x0x0x0p0x1x0x0x0p0x0x0x1x0p0x0x0x0x1p0x0x0x0x1duals1v1v2x1x3v1x3x2x5x4",
    "bwd1v1v1p1v1x0p1x0p0x1v1x0x0p0x0x1p0x1x0p0x0x1v1x0x0x0p0x1x0x0p0x0x1x0p0x0x1x0p0x0x0x1v0x0x1x0x0p1x0x0x0x0p0x0x0x0x1p1x0x0x0x0p0x1x0x0x0duals1v1v1x3x2v3x4x1x2x5",
);

/// Initial quadruple point with P self-dual and Q, R dual to each other.
pub const WEED_Q: Named = named("Q", "bwd1v1p1p1duals1v1x3x2", "bwd1v1p1p1duals1v1x3x2");
pub const WEED_Q3: Named = named("Q3", "bwd1v1v1v1p1p1v1x0x0duals1v1v1x3x2", "bwd1v1v1v1p1p1v1x0x0duals1v1v1x3x2");
pub const WEED_Q4: Named = named("Q4", "bwd1v1p1p1v1x0x0duals1v1x2x3", "bwd1v1p1p1v1x0x0duals1v1x2x3");
/// Quadruple point with every depth-2 vertex self-dual.
pub const WEED_Q_SELF_DUAL: Named = named("Q self-dual", "bwd1v1p1p1duals1v1x2x3", "bwd1v1p1p1duals1v1x2x3");

/// Start of every even `*11` pair without a singly valent branch vertex.
pub const STAR11_EVEN: Named = named("*11 even", "bwd1v1p1v1x0p0x1p0x1duals1v1x2", "bwd1v1p1v1x0p1x0p0x1duals1v1x2");
/// Start of every odd `*11` pair without a singly valent branch vertex.
pub const STAR11_ODD: Named = named("*11 odd", "bwd1v1v1p1v1x0p0x1p0x1duals1v1v2x1x3", "bwd1v1v1p1v1x0p0x1p0x1duals1v1v2x1x3");

/// Single graphs given without duality data.
pub const GBG: [&str; 5] = [
    "gbg1v1p1v1x0p0x1",
    "gbg1v1p1v1x0p1x0",
    "gbg1v1p1v1x0p1x0p0x1",
    "gbg1v1p1v1x0p1x0p1x0",
    "gbg1v1p1v1x0p0x1p0x1",
];

/// Pairs of subfactors known to exist.
pub fn realized() -> Vec<Named> {
    let mut v = vec![HAAGERUP, TWO_D_TWO, TWO_D_TWO_DUAL, SU3_Q1, SU3_Q2, GHJ_3311, Z4];
    v.extend(INDEX_SIX);
    v
}

/// Every named pair.
pub fn all_named() -> Vec<Named> {
    let mut v = realized();
    v.extend([INDEX_SIX_START, WEED_W, WEED_Q, WEED_Q3, WEED_Q4, WEED_Q_SELF_DUAL, STAR11_EVEN, STAR11_ODD]);
    v
}

/// Every distinct graph string in the catalog, `bwd` and `gbg`.
pub fn all_strings() -> Vec<&'static str> {
    let mut out: Vec<&'static str> = Vec::new();
    for n in all_named() {
        for s in [n.plus, n.minus] {
            if !out.contains(&s) {
                out.push(s);
            }
        }
    }
    out.extend(GBG);
    out
}

/// Tree with a center and legs of the given lengths, rooted at the end of
/// leg `root_leg`.
pub fn star_tree(legs: &[usize], root_leg: usize) -> Bigraph {
    let mut edges = Vec::new();
    let mut next = 1;
    let mut root = 0;
    for (i, &len) in legs.iter().enumerate() {
        let mut prev = 0;
        for _ in 0..len {
            edges.push((prev, next));
            prev = next;
            next += 1;
        }
        if i == root_leg {
            root = prev;
        }
    }
    Bigraph::from_edges(next, &edges, root).expect("trees are bipartite")
}

/// `D_k`, rooted at the end of the long leg.
pub fn dynkin_d(k: usize) -> Bigraph {
    star_tree(&[k - 3, 1, 1], 0)
}

/// `E_6`, `E_7`, `E_8`, rooted at the end of the long leg.
pub fn dynkin_e(k: usize) -> Bigraph {
    star_tree(&[k - 4, 1, 2], 0)
}

/// Affine `D_m` (m + 1 vertices), rooted at a leaf.
pub fn affine_d(m: usize) -> Bigraph {
    // path 0..=m-4, leaves m-3, m-2 on vertex 0 and m-1, m on vertex m-4
    let mut edges: Vec<(usize, usize)> = (0..m - 4).map(|i| (i, i + 1)).collect();
    edges.extend([(0, m - 3), (0, m - 2), (m - 4, m - 1), (m - 4, m)]);
    Bigraph::from_edges(m + 1, &edges, m - 3).expect("trees are bipartite")
}

/// Affine `E_6`, `E_7`, `E_8`, rooted at the end of the longest leg.
pub fn affine_e(k: usize) -> Bigraph {
    match k {
        6 => star_tree(&[2, 2, 2], 0),
        7 => star_tree(&[3, 1, 3], 0),
        8 => star_tree(&[5, 1, 2], 0),
        _ => panic!("affine E_{k} does not exist"),
    }
}

/// A graph of index at most 4 with an initial triple point.
#[derive(Clone, Debug)]
pub struct SmallIndex {
    pub name: String,
    pub pair: BigraphPair,
}

/// D_k (k = 4..=12), E_6, E_7, E_8, affine D_{j+2} (j = 3..=8), affine E_6,
/// E_7, E_8, each as a self-dual pair.
pub fn index_at_most_four() -> Vec<SmallIndex> {
    let mut out = Vec::new();
    let mut push = |name: String, g: Bigraph| out.push(SmallIndex { name, pair: BigraphPair::self_dual(g) });
    for k in 4..=12 {
        push(format!("D{k}"), dynkin_d(k));
    }
    for k in 6..=8 {
        push(format!("E{k}"), dynkin_e(k));
    }
    for j in 3..=8 {
        push(format!("D{}^(1)", j + 2), affine_d(j + 2));
    }
    for k in 6..=8 {
        push(format!("E{k}^(1)"), affine_e(k));
    }
    out
}
