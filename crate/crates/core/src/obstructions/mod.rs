//! Named obstructions applied to a graph pair, each with an auditable verdict.
//!
//! Obstructions run in a fixed order: the singly valent check (mostly
//! parity and valence), Ocneanu's triple point obstruction, the `*11`
//! obstruction, the quadruple point analogue of Ocneanu's obstruction, and
//! finally the full quadruple point equations.

mod checks;

pub use checks::{ocneanu_hypotheses, ocneanu_quadruple, ocneanu_triple, quadruple_equations, singly_valent, singly_valent_from, star11};

use serde_json::{json, Value};

use crate::bigraph::BigraphPair;
use crate::real::{Precision, Real};
use crate::spectra::SpectralProfile;

/// Widths of the inconclusive band, as a multiple of the tolerance.
pub const BOUNDARY: f64 = 1e3;

#[derive(Clone, Copy, Debug)]
pub struct Config {
    pub precision: Precision,
    /// Equality tolerance between computed reals.
    pub tol: f64,
    /// Matching tolerance for roots of unity.
    pub root_tol: f64,
    /// Significant digits in JSON output.
    pub digits: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config { precision: Precision::default(), tol: 1e-10, root_tol: crate::chirality::ROOT_TOL, digits: 20 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Eliminated,
    Survives,
    Inconclusive,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Eliminated => "eliminated",
            Verdict::Survives => "survives",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Entry {
    pub name: &'static str,
    pub applicable: bool,
    pub reason: String,
    pub verdict: Verdict,
    pub evidence: Value,
}

impl Entry {
    pub fn inapplicable(name: &'static str, reason: impl Into<String>) -> Entry {
        Entry { name, applicable: false, reason: reason.into(), verdict: Verdict::Survives, evidence: Value::Null }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "name": self.name,
            "applicable": self.applicable,
            "reason": self.reason,
            "verdict": self.verdict.as_str(),
            "evidence": self.evidence,
        })
    }
}

/// Everything the obstructions need about one pair.
pub struct Analysis<'a> {
    pub pair: &'a BigraphPair,
    pub prof: &'a SpectralProfile,
    pub cfg: &'a Config,
}

impl Analysis<'_> {
    pub fn fmt(&self, x: &Real) -> String {
        x.to_string_digits(self.cfg.digits)
    }

    /// Grades `x > 0` as a reason to eliminate: clearly positive eliminates,
    /// positive within the boundary band is inconclusive.
    pub fn positive(&self, x: &Real) -> Option<Verdict> {
        let v = x.to_f64();
        if v > BOUNDARY * self.cfg.tol {
            Some(Verdict::Eliminated)
        } else if v > self.cfg.tol {
            Some(Verdict::Inconclusive)
        } else {
            None
        }
    }
}

#[derive(Clone, Debug)]
pub struct ObstructionReport {
    pub plus: String,
    pub minus: String,
    pub entries: Vec<Entry>,
    pub overall: Verdict,
    pub error: Option<String>,
}

impl ObstructionReport {
    pub fn to_json(&self) -> Value {
        json!({
            "plus": self.plus,
            "minus": self.minus,
            "overall": self.overall.as_str(),
            "error": self.error,
            "entries": self.entries.iter().map(Entry::to_json).collect::<Vec<_>>(),
        })
    }

    /// One tab-separated line: strings, overall verdict, then `name=verdict`
    /// for each applicable obstruction.
    pub fn to_tsv(&self) -> String {
        let applied: Vec<String> = self.entries.iter().filter(|e| e.applicable).map(|e| format!("{}={}", e.name, e.verdict.as_str())).collect();
        let detail = match &self.error {
            Some(e) => format!("error: {e}"),
            None if applied.is_empty() => "-".to_string(),
            None => applied.join(","),
        };
        format!("{}\t{}\t{}\t{}", self.plus, self.minus, self.overall.as_str(), detail)
    }
}

fn aggregate(entries: &[Entry]) -> Verdict {
    let applied = || entries.iter().filter(|e| e.applicable);
    if applied().any(|e| e.verdict == Verdict::Eliminated) {
        Verdict::Eliminated
    } else if applied().any(|e| e.verdict == Verdict::Inconclusive) {
        Verdict::Inconclusive
    } else {
        Verdict::Survives
    }
}

/// Runs every obstruction in the documented order.
pub fn run_all(pair: &BigraphPair, cfg: &Config) -> ObstructionReport {
    let (plus, minus) = pair.strings();
    let prof = match SpectralProfile::compute(pair, cfg.precision, cfg.tol) {
        Ok(p) => p,
        Err(e) => return ObstructionReport { plus, minus, entries: vec![], overall: Verdict::Inconclusive, error: Some(e.to_string()) },
    };
    let a = Analysis { pair, prof: &prof, cfg };
    let entries = vec![singly_valent(&a), ocneanu_triple(&a), star11(&a), ocneanu_quadruple(&a), quadruple_equations(&a)];
    let overall = aggregate(&entries);
    ObstructionReport { plus, minus, entries, overall, error: None }
}
