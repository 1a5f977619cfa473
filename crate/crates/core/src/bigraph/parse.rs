//! The `bwd...duals...` / `gbg...` string format.
//!
//! Body: depth blocks separated by `v`, vertices by `p`, and a vertex's
//! edge multiplicities to the previous depth by `x`. Multiplicities are
//! single digits. The duals section lists one 1-based involution per even
//! depth 0, 2, 4, ..., with blocks separated by `v` and entries by `x`.

use super::{BigraphError, BigraphPair, Bigraph, DualData};

/// Splits `s` on `sep`, returning each piece with its absolute offset.
fn split_at<'a>(s: &'a str, base: usize, sep: char) -> Vec<(usize, &'a str)> {
    let mut out = Vec::new();
    let mut start = 0;
    for (i, c) in s.char_indices() {
        if c == sep {
            out.push((base + start, &s[start..i]));
            start = i + 1;
        }
    }
    out.push((base + start, &s[start..]));
    out
}

fn check_chars(s: &str, base: usize, allowed: &[char]) -> Result<(), BigraphError> {
    for (i, c) in s.char_indices() {
        if !(c.is_ascii_digit() || allowed.contains(&c)) {
            return Err(BigraphError::BadToken { pos: base + i, ch: c });
        }
    }
    Ok(())
}

fn digit(pos: usize, s: &str) -> Result<u32, BigraphError> {
    match s.len() {
        0 => Err(BigraphError::Empty { pos }),
        1 => Ok(s.as_bytes()[0] as u32 - b'0' as u32),
        _ => Err(BigraphError::MultiDigit { pos: pos + 1 }),
    }
}

fn parse_body(body: &str, base: usize) -> Result<Bigraph, BigraphError> {
    check_chars(body, base, &['v', 'p', 'x'])?;
    if body.is_empty() {
        return Bigraph::new(vec![]);
    }
    let mut depths = Vec::new();
    for (bpos, block) in split_at(body, base, 'v') {
        if block.is_empty() {
            return Err(BigraphError::Empty { pos: bpos });
        }
        let mut layer = Vec::new();
        for (vpos, vertex) in split_at(block, bpos, 'p') {
            if vertex.is_empty() {
                return Err(BigraphError::Empty { pos: vpos });
            }
            let mults = split_at(vertex, vpos, 'x')
                .into_iter()
                .map(|(p, d)| digit(p, d))
                .collect::<Result<Vec<_>, _>>()?;
            layer.push(mults);
        }
        depths.push(layer);
    }
    Bigraph::new(depths)
}

fn parse_duals(spec: &str, base: usize, g: &Bigraph) -> Result<DualData, BigraphError> {
    check_chars(spec, base, &['v', 'x'])?;
    let mut perms = Vec::new();
    for (bpos, block) in split_at(spec, base, 'v') {
        let mut perm = Vec::new();
        for (p, e) in split_at(block, bpos, 'x') {
            if e.is_empty() {
                return Err(BigraphError::Empty { pos: p });
            }
            let k: usize = e.parse().map_err(|_| BigraphError::Empty { pos: p })?;
            if k == 0 {
                return Err(BigraphError::NotPermutation { depth: 2 * perms.len() });
            }
            perm.push(k - 1);
        }
        perms.push(perm);
    }
    DualData::new(g, perms)
}

/// Parses a graph string; `bwd` strings carry duals, `gbg` strings do not.
pub fn parse_bigraph(s: &str) -> Result<(Bigraph, Option<DualData>), BigraphError> {
    let s = s.trim();
    if let Some(rest) = s.strip_prefix("bwd") {
        let Some(at) = rest.find("duals") else {
            return Err(BigraphError::MissingDuals);
        };
        let g = parse_body(&rest[..at], 3)?;
        let d = parse_duals(&rest[at + 5..], 3 + at + 5, &g)?;
        Ok((g, Some(d)))
    } else if let Some(rest) = s.strip_prefix("gbg") {
        if rest.contains("duals") {
            return Err(BigraphError::UnexpectedDuals);
        }
        Ok((parse_body(rest, 3)?, None))
    } else {
        Err(BigraphError::BadPrefix)
    }
}

fn body_string(g: &Bigraph) -> String {
    g.depths()
        .iter()
        .map(|layer| {
            layer
                .iter()
                .map(|m| m.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("x"))
                .collect::<Vec<_>>()
                .join("p")
        })
        .collect::<Vec<_>>()
        .join("v")
}

/// Canonical string: `gbg<body>` without duals, `bwd<body>duals<spec>` with.
pub fn serialize_bigraph(g: &Bigraph, d: Option<&DualData>) -> String {
    match d {
        None => format!("gbg{}", body_string(g)),
        Some(d) => {
            let spec = d
                .perms()
                .iter()
                .map(|p| p.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join("x"))
                .collect::<Vec<_>>()
                .join("v");
            format!("bwd{}duals{}", body_string(g), spec)
        }
    }
}

/// Parses a pair from its two `bwd` strings.
pub fn parse_pair(plus: &str, minus: &str) -> Result<BigraphPair, BigraphError> {
    let (gp, dp) = parse_bigraph(plus)?;
    let (gm, dm) = parse_bigraph(minus)?;
    let (Some(dp), Some(dm)) = (dp, dm) else {
        return Err(BigraphError::MissingDuals);
    };
    BigraphPair::new(gp, gm, dp, dm)
}
