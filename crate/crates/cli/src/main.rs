//! `chirality`: graph pair invariants, obstruction reports and weed
//! certificates from the command line.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};
use thiserror::Error;

use chirality_core::bigraph::{parse_pair, BigraphPair, VertexId};
use chirality_core::obstructions::{run_all, Config};
use chirality_core::real::Precision;
use chirality_core::spectra::{branch_data, Designation, SpectralProfile};
use chirality_core::weedcert::{parse_vertex, EliminationCertificate, WeedOutcome, WeedSpec};

/// Exit code for unreadable or malformed input.
const EXIT_INPUT: u8 = 2;
/// Exit code when a weed could be neither eliminated nor shown to survive.
const EXIT_INCONCLUSIVE: u8 = 3;
/// Exit code when `weed --check` rejects a certificate.
const EXIT_REJECTED: u8 = 1;

#[derive(Parser)]
#[command(name = "chirality", version, about = "Principal graph pairs and chirality obstructions")]
struct Cli {
    /// Working precision in decimal digits.
    #[arg(long, global = true, default_value_t = 64)]
    precision: u32,
    /// Equality tolerance between computed reals.
    #[arg(long, global = true, default_value_t = 1e-10)]
    tol: f64,
    /// Vertex to use as P, as `depth:index` with a 1-based index.
    #[arg(long, global = true, value_parser = parse_designation)]
    designate_p: Option<VertexId>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Spectral profile of one pair.
    Info {
        /// The plus graph, or both graphs separated by whitespace.
        plus: String,
        minus: Option<String>,
    },
    /// Obstruction reports for pairs given inline or in a catalog file.
    Obstruct {
        /// Pairs as `"PLUS MINUS"`.
        pairs: Vec<String>,
        /// File with one pair per line; `#` starts a comment.
        #[arg(long)]
        catalog: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Eliminate a weed family, or re-check a certificate.
    Weed {
        /// Weed description in JSON.
        spec: Option<PathBuf>,
        /// One of the built-in weeds: w, q1, q2.
        #[arg(long, conflicts_with = "spec")]
        builtin: Option<String>,
        /// Where to write the certificate.
        #[arg(long, short)]
        out: Option<PathBuf>,
        /// Validate an existing certificate without recomputing it.
        #[arg(long, conflicts_with_all = ["spec", "builtin"])]
        check: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Tsv,
}

#[derive(Debug, Error)]
enum InputError {
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    Usage(String),
}

fn parse_designation(s: &str) -> Result<VertexId, String> {
    parse_vertex(s).map_err(|e| e.to_string())
}

fn read(path: &Path) -> Result<String, InputError> {
    fs::read_to_string(path).map_err(|source| InputError::Io { path: path.display().to_string(), source })
}

/// Splits `"PLUS MINUS"`, or takes the two halves given separately.
fn pair_from(plus: &str, minus: Option<&str>) -> Result<BigraphPair, InputError> {
    let parts: Vec<&str> = match minus {
        Some(m) => vec![plus.trim(), m.trim()],
        None => plus.split_whitespace().collect(),
    };
    match parts.as_slice() {
        [p, m] => parse_pair(p, m).map_err(|e| InputError::Parse(e.to_string())),
        [single] => parse_pair(single, single).map_err(|e| InputError::Parse(e.to_string())),
        _ => Err(InputError::Parse(format!("expected two graph strings, found {}", parts.len()))),
    }
}

/// A catalog line: 1-based line number and its pair text.
fn catalog_lines(text: &str) -> Vec<(usize, String)> {
    text.lines()
        .enumerate()
        .filter_map(|(i, line)| {
            let body = line.split('#').next().unwrap_or("").trim();
            (!body.is_empty()).then(|| (i + 1, body.to_string()))
        })
        .collect()
}

fn config(cli: &Cli) -> Config {
    Config { precision: Precision::digits(cli.precision), tol: cli.tol, ..Config::default() }
}

fn info(cli: &Cli, plus: &str, minus: Option<&str>) -> Result<Value, InputError> {
    let cfg = config(cli);
    let pair = pair_from(plus, minus)?;
    let prof = SpectralProfile::compute(&pair, cfg.precision, cfg.tol).map_err(|e| InputError::Parse(e.to_string()))?;
    let des = Designation { p: cli.designate_p, p_check: None };
    let branch = match branch_data(&pair, &prof, des) {
        Ok(b) => b.to_json(cfg.digits),
        Err(e) => json!({ "error": e.to_string() }),
    };
    Ok(json!({ "pair": pair.to_json(), "profile": prof.to_json(cfg.digits), "branch": branch }))
}

fn obstruct(cli: &Cli, pairs: &[String], catalog: Option<&Path>, format: Format) -> Result<Vec<String>, InputError> {
    let cfg = config(cli);
    let mut items: Vec<(Option<usize>, String)> = pairs.iter().map(|p| (None, p.clone())).collect();
    if let Some(path) = catalog {
        items.extend(catalog_lines(&read(path)?).into_iter().map(|(n, s)| (Some(n), s)));
    }
    if items.is_empty() {
        return Err(InputError::Usage("no pairs given".into()));
    }
    // parallel, but emitted in input order
    let lines = items
        .par_iter()
        .map(|(line, text)| {
            let at = line.map(|n| format!("line {n}: ")).unwrap_or_default();
            match pair_from(text, None) {
                Ok(pair) => {
                    let r = run_all(&pair, &cfg);
                    match format {
                        Format::Json => r.to_json().to_string(),
                        Format::Tsv => r.to_tsv(),
                    }
                }
                Err(e) => match format {
                    Format::Json => json!({ "input": text, "line": line, "error": e.to_string() }).to_string(),
                    Format::Tsv => format!("{text}\t-\terror\t{at}{e}"),
                },
            }
        })
        .collect();
    Ok(lines)
}

fn load_spec(cli: &Cli, spec: Option<&Path>, builtin: Option<&str>) -> Result<WeedSpec, InputError> {
    let mut w = match (spec, builtin) {
        (Some(p), None) => WeedSpec::from_json(&read(p)?).map_err(|e| InputError::Parse(e.to_string()))?,
        (None, Some("w")) => WeedSpec::w(),
        (None, Some("q1")) => WeedSpec::q1(),
        (None, Some("q2")) => WeedSpec::q2(),
        (None, Some(other)) => return Err(InputError::Usage(format!("unknown built-in weed {other:?}; expected w, q1 or q2"))),
        _ => return Err(InputError::Usage("give a weed spec file, --builtin or --check".into())),
    };
    if let Some(p) = cli.designate_p {
        w.p_vertex = Some(p);
    }
    Ok(w)
}

/// Accepts a bare certificate or the `{verdict, certificate}` wrapper.
fn check_certificate(text: &str) -> Result<EliminationCertificate, String> {
    let v: Value = serde_json::from_str(text).map_err(|e| e.to_string())?;
    let inner = v.get("certificate").cloned().unwrap_or(v);
    let cert = EliminationCertificate::from_json(&inner.to_string()).map_err(|e| e.to_string())?;
    cert.verify().map_err(|e| e.to_string())?;
    Ok(cert)
}

fn emit(out: &mut impl Write, text: &str) -> io::Result<()> {
    writeln!(out, "{text}")
}

fn run(cli: &Cli) -> Result<ExitCode, InputError> {
    let mut stdout = io::stdout().lock();
    let io_err = |source| InputError::Io { path: "<stdout>".into(), source };
    match &cli.command {
        Command::Info { plus, minus } => {
            let v = info(cli, plus, minus.as_deref())?;
            emit(&mut stdout, &serde_json::to_string_pretty(&v).expect("json")).map_err(io_err)?;
        }
        Command::Obstruct { pairs, catalog, format } => {
            for line in obstruct(cli, pairs, catalog.as_deref(), *format)? {
                emit(&mut stdout, &line).map_err(io_err)?;
            }
        }
        Command::Weed { check: Some(path), .. } => {
            let text = read(path)?;
            return match check_certificate(&text) {
                Ok(cert) => {
                    emit(&mut stdout, &json!({ "valid": true, "weed": cert.weed, "conclusion": cert.conclusion }).to_string()).map_err(io_err)?;
                    Ok(ExitCode::SUCCESS)
                }
                Err(e) => {
                    emit(&mut stdout, &json!({ "valid": false, "error": e }).to_string()).map_err(io_err)?;
                    Ok(ExitCode::from(EXIT_REJECTED))
                }
            };
        }
        Command::Weed { spec, builtin, out, .. } => {
            let w = load_spec(cli, spec.as_deref(), builtin.as_deref())?;
            let outcome = w.eliminate().map_err(|e| InputError::Parse(e.to_string()))?;
            let text = serde_json::to_string_pretty(&outcome.to_json()).expect("json");
            match (out, &outcome) {
                (Some(path), WeedOutcome::Eliminated(cert)) => {
                    fs::write(path, cert.to_json()).map_err(|source| InputError::Io { path: path.display().to_string(), source })?;
                }
                (Some(_), _) => eprintln!("no certificate written: the weed was not eliminated"),
                _ => {}
            }
            emit(&mut stdout, &text).map_err(io_err)?;
            if matches!(outcome, WeedOutcome::Inconclusive { .. }) {
                return Ok(ExitCode::from(EXIT_INCONCLUSIVE));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_INPUT) } else { ExitCode::SUCCESS };
        }
    };
    match run(&cli) {
        Ok(code) => code,
        // output cut short by a closed pipe is not an input error
        Err(InputError::Io { source, .. }) if source.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}
