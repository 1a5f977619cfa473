//! Norm, quantum parameter, Perron-Frobenius dimensions, branch data.
//!
//! The norm is the largest root of the exact characteristic polynomial,
//! isolated with a Sturm chain and refined by bisection to the working
//! precision. Quantum integers are evaluated from the norm by the
//! recurrence `[k + 1] = [2][k] - [k - 1]`, which is valid in every regime.

mod branch;

pub use branch::{branch_data, BranchData, Designation, QuadBranch, TripleBranch, TripleDual};

use num_bigint::BigInt;
use num_traits::Zero;
use serde_json::{json, Value};
use thiserror::Error;

use crate::bigraph::{compress_annular, Bigraph, BigraphError, BigraphPair, Side, Supertransitivity, VertexId};
use crate::qlaurent::{sturm, Rat, UPoly};
use crate::real::{Precision, Real};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpectraError {
    #[error("norm must be nonnegative")]
    NegativeNorm,
    #[error("Perron-Frobenius vector is not strictly positive at vertex {0}")]
    NotPositive(VertexId),
    #[error("graph has no branch point")]
    NoBranch,
    #[error("branch of valence {0} is not supported (only triple and quadruple points)")]
    UnsupportedValence(usize),
    #[error("plus graph branches at depth {plus}, minus graph at depth {minus}")]
    BranchMismatch { plus: usize, minus: usize },
    #[error("quadruple point at odd depth {0}")]
    QuadrupleOddDepth(usize),
    #[error("duality at the quadruple point is not one self-dual vertex plus a dual pair")]
    QuadrupleDuals,
    #[error("norm {0} is below 2 but not of the form 2 cos(pi / m)")]
    NotQuantized(String),
    #[error("designated vertex {0} is not at the branch depth")]
    BadDesignation(VertexId),
    #[error(transparent)]
    Graph(#[from] BigraphError),
}

/// Characteristic polynomial `det(x I - A)` by Faddeev-LeVerrier over the integers.
pub fn charpoly(adj: &[Vec<u32>]) -> UPoly {
    let n = adj.len();
    let a: Vec<Vec<BigInt>> = adj.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::from(1);
    // M_1 = I, c_{n-k} = -tr(A M_k) / k, M_{k+1} = A M_k + c_{n-k} I
    let mut m: Vec<Vec<BigInt>> = (0..n).map(|i| (0..n).map(|j| BigInt::from((i == j) as u8)).collect()).collect();
    for k in 1..=n {
        let am: Vec<Vec<BigInt>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| a[i].iter().zip(&m).filter(|(x, _)| !x.is_zero()).map(|(x, row)| x * &row[j]).sum())
                    .collect()
            })
            .collect();
        let tr: BigInt = (0..n).map(|i| am[i][i].clone()).sum();
        let c = -tr / BigInt::from(k);
        coeffs[n - k] = c.clone();
        m = am;
        for (i, row) in m.iter_mut().enumerate() {
            row[i] += &c;
        }
    }
    UPoly::new(coeffs.into_iter().map(Rat::from_integer).collect())
}

/// Largest adjacency eigenvalue.
pub fn graph_norm(g: &Bigraph, prec: Precision) -> Real {
    let p = charpoly(&g.adjacency());
    let iv = sturm::largest_real_root(&p, prec.bits() as u32 + 8).expect("symmetric matrices have real spectrum");
    Real::from_dyadic(&iv.m, iv.k, prec)
}

/// How q relates to the norm `d = q + 1/q`.
#[derive(Clone, Debug, PartialEq)]
pub enum QRegime {
    /// `d > 2`, q real and greater than 1.
    Generic(Real),
    /// `d = 2`, q = 1.
    Two,
    /// `d = 2 cos(pi / m)`, q = exp(i pi / m).
    RootOfUnity(u32),
}

impl QRegime {
    pub fn to_json(&self, digits: usize) -> Value {
        match self {
            QRegime::Generic(q) => json!({ "regime": "generic", "q": q.to_string_digits(digits) }),
            QRegime::Two => json!({ "regime": "two", "q": "1" }),
            QRegime::RootOfUnity(m) => json!({ "regime": "root_of_unity", "q": "1", "m": m }),
        }
    }
}

/// Largest m tried when matching `d = 2 cos(pi / m)`.
pub const MAX_ROOT_ORDER: u32 = 100_000;

pub fn q_from_norm(d: &Real, tol: f64) -> Result<QRegime, SpectraError> {
    let prec = d.precision();
    let two = Real::from_i64(2, prec);
    if d.is_negative() {
        return Err(SpectraError::NegativeNorm);
    }
    if d.close_to(&two, tol) {
        return Ok(QRegime::Two);
    }
    if *d > two {
        let disc = (d * d - Real::from_i64(4, prec)).sqrt();
        return Ok(QRegime::Generic((d + &disc) / two));
    }
    // d = 2 cos(pi / m) means m = pi / acos(d / 2); round and confirm
    let pi = Real::pi(prec);
    let m = (&pi / (d / &two).acos()).to_f64().round();
    if m >= 2.0 && m <= f64::from(MAX_ROOT_ORDER) {
        let v = &two * (&pi / Real::from_i64(m as i64, prec)).cos();
        if d.close_to(&v, tol) {
            return Ok(QRegime::RootOfUnity(m as u32));
        }
    }
    Err(SpectraError::NotQuantized(d.to_string_digits(20)))
}

/// `[k]` at `[2] = d`.
pub fn qint(d: &Real, k: i64) -> Real {
    let prec = d.precision();
    if k < 0 {
        return -qint(d, -k);
    }
    let (mut a, mut b) = (Real::zero(prec), Real::one(prec));
    if k == 0 {
        return a;
    }
    for _ in 1..k {
        let c = d * &b - &a;
        a = b;
        b = c;
    }
    b
}

/// Perron-Frobenius vector with the star normalized to 1, indexed by depth.
pub type Dims = Vec<Vec<Real>>;

/// Solves `(A - d I) x = 0` with `x_star = 1`. The system without the star's
/// row and column is nonsingular because d exceeds every eigenvalue of the
/// graph with the star removed.
pub fn dimension_vector(g: &Bigraph, norm: &Real) -> Result<Dims, SpectraError> {
    let prec = norm.precision();
    let adj = g.adjacency();
    let n = adj.len();
    let verts = g.vertices();
    if n == 1 {
        return Ok(vec![vec![Real::one(prec)]]);
    }
    let m = n - 1;
    let mut rows: Vec<Vec<Real>> = (1..n)
        .map(|i| {
            let mut row: Vec<Real> = (1..n)
                .map(|j| {
                    let a = Real::from_i64(adj[i][j] as i64, prec);
                    if i == j {
                        a - norm
                    } else {
                        a
                    }
                })
                .collect();
            row.push(Real::from_i64(-(adj[i][0] as i64), prec));
            row
        })
        .collect();
    for col in 0..m {
        let piv = (col..m).max_by(|&a, &b| rows[a][col].abs().partial_cmp(&rows[b][col].abs()).expect("finite")).expect("rows");
        rows.swap(col, piv);
        let p = rows[col][col].clone();
        for r in 0..m {
            if r != col && !rows[r][col].is_zero() {
                let f = &rows[r][col] / &p;
                for c in col..=m {
                    let t = &f * &rows[col][c];
                    rows[r][c] = &rows[r][c] - &t;
                }
            }
        }
    }
    let mut x = vec![Real::one(prec)];
    x.extend((0..m).map(|i| &rows[i][m] / &rows[i][i]));
    let mut dims: Dims = (0..=g.max_depth()).map(|d| Vec::with_capacity(g.count(d))).collect();
    for (v, val) in verts.iter().zip(x) {
        if !val.is_positive() {
            return Err(SpectraError::NotPositive(*v));
        }
        dims[v.depth].push(val);
    }
    Ok(dims)
}

/// `max_v |sum_w m(v, w) dim(w) - d dim(v)|`.
pub fn eigen_residual(g: &Bigraph, norm: &Real, dims: &Dims) -> Real {
    let prec = norm.precision();
    let mut worst = Real::zero(prec);
    for v in g.vertices() {
        let mut s = Real::zero(prec);
        for (w, m) in g.neighbors(v) {
            s = s + Real::from_i64(m as i64, prec) * &dims[w.depth][w.index];
        }
        let r = (s - norm * &dims[v.depth][v.index]).abs();
        worst = worst.max(r);
    }
    worst
}

/// Recognizes `x` as a rational with denominator at most `max_den`, when it
/// agrees to within `tol`.
pub fn recognize_rational(x: &Real, max_den: u32, tol: &Real) -> Option<Rat> {
    let prec = x.precision();
    for den in 1..=max_den {
        let scaled = x * Real::from_i64(den as i64, prec);
        let num = scaled.to_f64().round();
        if !num.is_finite() || num.abs() > 1e15 {
            continue;
        }
        let cand = Real::from_i64(num as i64, prec) / Real::from_i64(den as i64, prec);
        if (&cand - x).abs() < *tol {
            return Some(Rat::new(BigInt::from(num as i64), BigInt::from(den)));
        }
    }
    None
}

/// Numeric invariants of a pair.
#[derive(Clone, Debug)]
pub struct SpectralProfile {
    pub norm: Real,
    pub norm_minus: Real,
    pub index: Real,
    pub q: QRegime,
    pub supertransitivity: Supertransitivity,
    pub annular: Vec<BigInt>,
    pub dims_plus: Dims,
    pub dims_minus: Dims,
    pub residual: Real,
    pub warnings: Vec<String>,
}

/// Number of annular multiplicities reported beyond the branch depth.
const ANNULAR_EXTRA: usize = 3;

impl SpectralProfile {
    pub fn compute(pair: &BigraphPair, prec: Precision, tol: f64) -> Result<Self, SpectraError> {
        let norm = graph_norm(pair.plus(), prec);
        let norm_minus = graph_norm(pair.minus(), prec);
        let mut warnings = pair.warnings();
        if !norm.close_to(&norm_minus, tol) {
            warnings.push(format!(
                "graph norms differ: {} vs {}",
                norm.to_string_digits(20),
                norm_minus.to_string_digits(20)
            ));
        }
        let dims_plus = dimension_vector(pair.plus(), &norm)?;
        let dims_minus = dimension_vector(pair.minus(), &norm_minus)?;
        let residual = eigen_residual(pair.plus(), &norm, &dims_plus).max(eigen_residual(pair.minus(), &norm_minus, &dims_minus));
        let st = pair.plus().supertransitivity();
        let kmax = st.k + ANNULAR_EXTRA;
        Ok(SpectralProfile {
            index: &norm * &norm,
            q: q_from_norm(&norm, tol)?,
            norm,
            norm_minus,
            supertransitivity: st,
            annular: pair.plus().annular_multiplicities(kmax),
            dims_plus,
            dims_minus,
            residual,
            warnings,
        })
    }

    pub fn dims(&self, side: Side) -> &Dims {
        match side {
            Side::Plus => &self.dims_plus,
            Side::Minus => &self.dims_minus,
        }
    }

    pub fn dim(&self, side: Side, v: VertexId) -> &Real {
        &self.dims(side)[v.depth][v.index]
    }

    /// Annular multiplicities in the `*` notation, two entries past the chain.
    pub fn annular_compressed(&self) -> String {
        compress_annular(&self.annular, 2)
    }

    pub fn to_json(&self, digits: usize) -> Value {
        let dims = |d: &Dims| -> Vec<Vec<String>> { d.iter().map(|l| l.iter().map(|x| x.to_string_digits(digits)).collect()).collect() };
        json!({
            "norm": self.norm.to_string_digits(digits),
            "index": self.index.to_string_digits(digits),
            "q": self.q.to_json(digits),
            "supertransitivity": self.supertransitivity.k,
            "branch": self.supertransitivity.branch.map(|b| json!({ "n": b.n, "valence": b.valence })),
            "annular_multiplicities": self.annular.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
            "annular_compressed": self.annular_compressed(),
            "dims_plus": dims(&self.dims_plus),
            "dims_minus": dims(&self.dims_minus),
            "eigen_residual": self.residual.to_string_digits(3),
            "warnings": self.warnings,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn charpoly_of_path() {
        // path on 3 vertices: x^3 - 2x
        let p = charpoly(&Bigraph::chain(2).adjacency());
        assert_eq!(p, UPoly::from_ints(&[0, -2, 0, 1]));
    }

    #[test]
    fn chain_norm_and_dims() {
        let prec = Precision::default();
        let g = Bigraph::chain(2);
        let d = graph_norm(&g, prec);
        assert!(d.close_to(&Real::from_i64(2, prec).sqrt(), 1e-40));
        let g = Bigraph::chain(3);
        let d = graph_norm(&g, prec);
        let dims = dimension_vector(&g, &d).unwrap();
        for k in 0..=3 {
            assert!(dims[k][0].close_to(&qint(&d, k as i64 + 1), 1e-40));
        }
        assert!(eigen_residual(&g, &d, &dims) < Real::from_f64(1e-40, prec));
    }

    #[test]
    fn q_regimes() {
        let prec = Precision::default();
        assert_eq!(q_from_norm(&Real::from_i64(2, prec), 1e-10).unwrap(), QRegime::Two);
        let golden = (Real::one(prec) + Real::from_i64(5, prec).sqrt()) / Real::from_i64(2, prec);
        assert_eq!(q_from_norm(&golden, 1e-10).unwrap(), QRegime::RootOfUnity(5));
        match q_from_norm(&Real::from_i64(3, prec), 1e-10).unwrap() {
            QRegime::Generic(q) => assert!((&q + &q.recip()).close_to(&Real::from_i64(3, prec), 1e-40)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn rational_recognition() {
        let prec = Precision::default();
        let x = Real::from_i64(2, prec) / Real::from_i64(3, prec);
        let tol = Real::from_f64(1e-40, prec);
        assert_eq!(recognize_rational(&x, 100, &tol), Some(Rat::new(2.into(), 3.into())));
        assert_eq!(recognize_rational(&Real::from_i64(2, prec).sqrt(), 1000, &tol), None);
    }
}
