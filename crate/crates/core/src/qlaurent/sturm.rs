//! Sturm chains, real root counting and exact root isolation.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{Rat, UPoly};

/// Sturm chain `p_0, p_1, ...` with the division witnesses
/// `p_{i-1} = quot_i * p_i - scale_i * p_{i+1}` (every `scale_i > 0`).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SturmChain {
    pub polys: Vec<UPolyData>,
    pub quotients: Vec<UPolyData>,
    pub scales: Vec<String>,
}

/// Serializable coefficient list, lowest degree first, as `n` or `n/d` strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UPolyData(#[serde(with = "super::rat_vec_serde")] pub Vec<Rat>);

impl From<&UPoly> for UPolyData {
    fn from(p: &UPoly) -> Self {
        UPolyData(p.coeffs().to_vec())
    }
}

impl From<&UPolyData> for UPoly {
    fn from(d: &UPolyData) -> Self {
        UPoly::new(d.0.clone())
    }
}

/// Rescales by a positive rational so the coefficients are coprime integers.
fn positive_primitive(p: &UPoly) -> (Rat, UPoly) {
    if p.is_zero() {
        return (Rat::one(), p.clone());
    }
    let prim = p.primitive();
    // primitive() forces a positive leading coefficient; undo that sign flip
    let ratio = p.leading() / prim.leading();
    if ratio.is_negative() {
        (-ratio, -&prim)
    } else {
        (ratio, prim)
    }
}

pub fn sturm_chain(p: &UPoly) -> SturmChain {
    let mut polys = vec![p.clone()];
    let mut quotients = Vec::new();
    let mut scales = Vec::new();
    if p.degree().unwrap_or(0) == 0 {
        return SturmChain { polys: polys.iter().map(UPolyData::from).collect(), quotients: vec![], scales: vec![] };
    }
    let (_, d) = positive_primitive(&p.derivative());
    polys.push(d);
    loop {
        let n = polys.len();
        let (q, r) = polys[n - 2].div_rem(&polys[n - 1]).expect("chain entries are nonzero");
        if r.is_zero() {
            break;
        }
        // p_{i-1} = q p_i + r, and the next entry is -r / k for k > 0
        let (k, next) = positive_primitive(&-&r);
        quotients.push(q);
        scales.push(k);
        polys.push(next);
    }
    SturmChain {
        polys: polys.iter().map(UPolyData::from).collect(),
        quotients: quotients.iter().map(UPolyData::from).collect(),
        scales: scales.iter().map(super::rat_to_string).collect(),
    }
}

fn sign(x: &Rat) -> i32 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

fn count_changes(signs: impl Iterator<Item = i32>) -> usize {
    let mut last = 0;
    let mut n = 0;
    for s in signs.filter(|s| *s != 0) {
        if last != 0 && s != last {
            n += 1;
        }
        last = s;
    }
    n
}

pub fn sign_changes_at(chain: &[UPoly], x: &Rat) -> usize {
    count_changes(chain.iter().map(|p| sign(&p.eval(x))))
}

pub fn sign_changes_at_infinity(chain: &[UPoly]) -> usize {
    count_changes(chain.iter().map(UPoly::sign_at_infinity))
}

/// Number of distinct real roots in `(x0, +inf)`.
pub fn count_roots_above(p: &UPoly, x0: &Rat) -> usize {
    let chain = sturm_chain(p);
    let polys: Vec<UPoly> = chain.polys.iter().map(UPoly::from).collect();
    sign_changes_at(&polys, x0) - sign_changes_at_infinity(&polys)
}

/// Integer coefficients of a positive multiple of `p`.
fn integer_coeffs(p: &UPoly) -> Vec<BigInt> {
    let (_, prim) = positive_primitive(p);
    prim.coeffs().iter().map(|c| c.to_integer()).collect()
}

/// Sign of `p(m / 2^k)` using integer arithmetic only.
fn sign_at_dyadic(c: &[BigInt], m: &BigInt, k: u32) -> i32 {
    // Horner on 2^(k d) p(m / 2^k) = sum c_i m^i 2^(k (d - i))
    let mut acc = BigInt::zero();
    let mut scale = BigInt::one();
    for ci in c.iter().rev() {
        acc = acc * m + ci * &scale;
        scale <<= k;
    }
    match acc.sign() {
        num_bigint::Sign::Plus => 1,
        num_bigint::Sign::Minus => -1,
        num_bigint::Sign::NoSign => 0,
    }
}

/// Cauchy bound: every real root has absolute value below the returned power of two.
pub fn root_bound_log2(p: &UPoly) -> u32 {
    let lead = p.leading().abs();
    let mut maxr = Rat::zero();
    for c in &p.coeffs()[..p.coeffs().len().saturating_sub(1)] {
        let r = c.abs() / &lead;
        if r > maxr {
            maxr = r;
        }
    }
    let bound = maxr + Rat::one();
    let mut k = 0u32;
    let mut pw = Rat::one();
    while pw <= bound {
        pw *= Rat::from_integer(BigInt::from(2));
        k += 1;
    }
    k
}

/// Squarefree part `p / gcd(p, p')`.
pub fn squarefree(p: &UPoly) -> UPoly {
    let g = p.gcd(&p.derivative());
    if g.degree().unwrap_or(0) == 0 {
        return p.clone();
    }
    p.div_exact(&g).expect("gcd divides p")
}

/// Dyadic interval `[lo, hi] = [m / 2^k, (m + 1) / 2^k]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DyadicInterval {
    pub m: BigInt,
    pub k: u32,
}

impl DyadicInterval {
    pub fn lo(&self) -> Rat {
        Rat::new(self.m.clone(), BigInt::one() << self.k)
    }
    pub fn hi(&self) -> Rat {
        Rat::new(&self.m + 1, BigInt::one() << self.k)
    }
}

fn dyadic(m: &BigInt, k: u32) -> Rat {
    Rat::new(m.clone(), BigInt::one() << k)
}

/// Largest real root of `p`, isolated and refined to width `2^-bits`.
/// Returns `None` when `p` has no real root.
pub fn largest_real_root(p: &UPoly, bits: u32) -> Option<DyadicInterval> {
    let sf = squarefree(p);
    if sf.degree().unwrap_or(0) == 0 {
        return None;
    }
    let chain: Vec<UPoly> = sturm_chain(&sf).polys.iter().map(UPoly::from).collect();
    let at_inf = sign_changes_at_infinity(&chain);
    let above = |m: &BigInt, k: u32| sign_changes_at(&chain, &dyadic(m, k)) - at_inf;
    let e = root_bound_log2(&sf);
    // bracket lo / 2^k < root <= hi / 2^k with exactly one root above lo
    let mut k = 0u32;
    let mut lo = -(BigInt::one() << e);
    let mut hi = BigInt::one() << e;
    if above(&lo, k) == 0 {
        return None;
    }
    while above(&lo, k) > 1 {
        lo <<= 1;
        hi <<= 1;
        k += 1;
        let mid: BigInt = (&lo + &hi) >> 1;
        if above(&mid, k) >= 1 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    // the root is simple in sf, so sf changes sign across it
    let coeffs = integer_coeffs(&sf);
    let s_hi = sign_at_dyadic(&coeffs, &hi, k);
    if s_hi == 0 {
        return Some(DyadicInterval { m: hi, k });
    }
    while &hi - &lo > BigInt::one() || k < bits {
        if &hi - &lo <= BigInt::one() {
            lo <<= 1;
            hi <<= 1;
            k += 1;
        }
        let mid: BigInt = (&lo + &hi) >> 1;
        match sign_at_dyadic(&coeffs, &mid, k) {
            0 => return Some(DyadicInterval { m: mid, k }),
            s if s == s_hi => hi = mid,
            _ => lo = mid,
        }
    }
    Some(DyadicInterval { m: lo, k })
}
