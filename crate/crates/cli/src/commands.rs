//! Subcommand bodies. Each returns the text to emit.

use std::fs;
use std::io::Read;
use std::path::Path;

use log::{info, warn};
use modcanon::construction::{a_k, MAX_K};
use modcanon::cover::{lift_to_pattern, noncompact_size};
use modcanon::pattern::forbidden_form;
use modcanon::{
    brute_all_tilings, brute_minimal_complement, flatten_t, greedy_tile, predicted_counts, verify_tk_equals_vk,
    CanonReport, FpPoly, GreedyStatus, Modulus, PrimeModulus, RhythmicPattern, SearchBudget,
};
use serde::Serialize;

use crate::args::{Command, Format, OracleCommand, Style};
use crate::document::{CanonDocument, Provenance};
use crate::error::{CliError, CliResult};
use crate::render;

/// Comma or whitespace separated onsets; `@path` reads them from a file.
pub fn parse_pattern(arg: &str) -> CliResult<RhythmicPattern> {
    let text = match arg.strip_prefix('@') {
        Some(path) => {
            fs::read_to_string(path).map_err(|e| CliError::Io { context: format!("reading {path}"), source: e })?
        }
        None => arg.to_string(),
    };
    let normalized =
        text.split(|c: char| c == ',' || c.is_whitespace()).filter(|t| !t.is_empty()).collect::<Vec<_>>().join(",");
    normalized.parse().map_err(|e: modcanon::Error| CliError::Parse(format!("pattern `{}`: {e}", arg.trim())))
}

pub fn parse_prime(arg: &str) -> CliResult<PrimeModulus> {
    let p: u32 = arg.trim().parse().map_err(|_| CliError::Parse(format!("modulus `{arg}` is not an integer")))?;
    PrimeModulus::new(p).map_err(|e| CliError::Parse(e.to_string()))
}

/// A prime, or `1` / `exact` for exact tiling.
pub fn parse_modulus(arg: &str) -> CliResult<Modulus> {
    if arg.trim().eq_ignore_ascii_case("exact") {
        return Ok(Modulus::Exact);
    }
    let code: u32 = arg.trim().parse().map_err(|_| CliError::Parse(format!("modulus `{arg}` is not an integer")))?;
    Modulus::from_code(code).map_err(|e| CliError::Parse(e.to_string()))
}

fn read_document(path: &Path) -> CliResult<CanonDocument> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| CliError::Io { context: "reading stdin".into(), source: e })?;
        s
    } else {
        fs::read_to_string(path)
            .map_err(|e| CliError::Io { context: format!("reading {}", path.display()), source: e })?
    };
    CanonDocument::parse(&text)
}

fn canon_text(doc: &CanonDocument) -> String {
    let donsets = doc.donsets.iter().map(|d| format!("{}:{}", d.time, d.excess)).collect::<Vec<_>>().join(" ");
    format!(
        "tile     {}\nentries  {}\nN        {}\nmodulus  {}\ncompact  {}\ndonsets  {}\n",
        doc.tile,
        doc.entries,
        doc.n,
        doc.modulus.code(),
        doc.compact,
        if donsets.is_empty() { "-".into() } else { donsets }
    )
}

fn emit_canon(doc: &CanonDocument, format: Format) -> String {
    match format {
        Format::Json => doc.to_json(),
        Format::Text => canon_text(doc),
    }
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn provenance(command: &str, raw_args: &[String]) -> Provenance {
    Provenance { command: command.to_string(), arguments: raw_args.to_vec() }
}

/// The greedy canon, or the lifted non-compact one when `fallback` is set.
pub fn tile(a: &RhythmicPattern, p: PrimeModulus, max_n: usize, fallback: bool) -> CliResult<CanonReport> {
    let out = greedy_tile(a, p, max_n);
    if let GreedyStatus::Stuck(reason) = out.status {
        if !fallback {
            return Err(CliError::Stuck(format!("greedy tiler stuck on {a} mod {p}: {reason}")));
        }
        info!("greedy tiler stuck ({reason}); falling back to order finding");
        let x_minus_one = FpPoly::x_pow_minus_one(p, 1);
        let divisor = a.to_poly(p).mul(&x_minus_one)?;
        let n = divisor
            .order_of_divisor(max_n)?
            .ok_or_else(|| CliError::Stuck(format!("no N <= {max_n} with A(X)(X-1) | X^N - 1 mod {p}")))?;
        let (q, r) = FpPoly::x_pow_minus_one(p, n).divrem(&divisor)?;
        debug_assert!(r.is_zero());
        let entries = lift_to_pattern(&q, n)?;
        info!("non-compact canon of Z_{n}; the tile alone needs N = {:?}", noncompact_size(a, p, max_n));
        return Ok(CanonReport::new(a.clone(), entries, n, Modulus::Prime(p))?);
    }
    let entries = out.entries_pattern().expect("a compact tiling has entries");
    Ok(CanonReport::new(a.clone(), entries, out.n, Modulus::Prime(p))?)
}

/// `({0,1,2^k}, B_k)` straight from `T(k)`.
pub fn construct(k: u32) -> CliResult<CanonReport> {
    if !(1..=MAX_K).contains(&k) {
        return Err(CliError::Parse(format!("k must lie in 1..={MAX_K}, got {k}")));
    }
    let counts = predicted_counts(k)?;
    Ok(CanonReport::new(a_k(k), flatten_t(k)?, counts.n as usize, Modulus::Prime(PrimeModulus::TWO))?)
}

fn construct_checks(k: u32, report: &CanonReport) -> CliResult<Vec<(String, bool)>> {
    let counts = predicted_counts(k)?;
    Ok(vec![
        ("greedy walks T(k) row by row".into(), verify_tk_equals_vk(k)?),
        (format!("N = 4^k - 1 = {}", counts.n), report.n as u64 == counts.n),
        (format!("#B = 4^k - 3^k = {}", counts.entries), report.entries.len() as u64 == counts.entries),
        (
            format!("#D = 4^k - (3^(k+1) - 1)/2 = {}", counts.donsets),
            report.donsets.support_len() as u64 == counts.donsets,
        ),
    ])
}

#[derive(Serialize)]
struct TableRow {
    n: usize,
    size: usize,
    entries: usize,
}

#[derive(Serialize)]
struct VuzaAnswer {
    n: u64,
    factorization: Vec<(u64, u32)>,
    admissible: bool,
    form: Option<String>,
}

#[derive(Serialize)]
struct CensusPair {
    tile: Vec<usize>,
    entries: Vec<usize>,
}

fn factorization_text(n: u64) -> String {
    let f = modcanon::arith::factorize(n);
    if f.is_empty() {
        return "1".into();
    }
    f.iter().map(|&(p, e)| if e == 1 { p.to_string() } else { format!("{p}^{e}") }).collect::<Vec<_>>().join(" * ")
}

/// Runs a subcommand. `raw_args` are the arguments following the
/// subcommand name, recorded as provenance.
pub fn run(command: &Command, raw_args: &[String]) -> CliResult<String> {
    match command {
        Command::Tile { pattern, modulus, max_n, fallback, out } => {
            let a = parse_pattern(pattern)?;
            let p = parse_prime(modulus)?;
            let report = tile(&a, p, *max_n, *fallback)?;
            Ok(emit_canon(&CanonDocument::from_report(&report, provenance("tile", raw_args)), out.format))
        }
        Command::Construct { k, verify, out } => {
            let report = construct(*k)?;
            let doc = CanonDocument::from_report(&report, provenance("construct", raw_args));
            if *verify {
                let checks = construct_checks(*k, &report)?;
                let failed: Vec<String> = checks.iter().filter(|c| !c.1).map(|c| format!("FAIL  {}", c.0)).collect();
                if !failed.is_empty() {
                    return Err(CliError::Verification { report: failed.join("\n") + "\n" });
                }
                for (what, _) in &checks {
                    info!("ok {what}");
                }
            }
            Ok(emit_canon(&doc, out.format))
        }
        Command::Table1 { max, out } => {
            if *max < 2 {
                return Err(CliError::Parse("--max must be at least 2".into()));
            }
            if *max > 16 {
                warn!("n > 16 may take a long time");
            }
            let mut rows = Vec::new();
            for n in 2..=*max {
                let a = RhythmicPattern::new(vec![0, 1, n])?;
                let g = greedy_tile(&a, PrimeModulus::TWO, usize::MAX);
                if !g.is_compact() {
                    return Err(CliError::Stuck(format!("greedy tiler stuck on {a}")));
                }
                rows.push(TableRow { n, size: g.n, entries: g.entries.len() });
            }
            Ok(match out.format {
                Format::Json => json(&rows),
                Format::Text => {
                    let mut s = String::from("n\tN\t#B\n");
                    for r in rows {
                        s.push_str(&format!("{}\t{}\t{}\n", r.n, r.size, r.entries));
                    }
                    s
                }
            })
        }
        Command::Verify { document, modulus, out } => {
            let doc = read_document(document)?;
            let m = match modulus {
                Some(m) => parse_modulus(m)?,
                None => doc.modulus,
            };
            let v = doc.verify(m);
            let body = match out.format {
                Format::Text => v.report(),
                Format::Json => json(&serde_json::json!({ "valid": v.passed(), "checks": v.lines })),
            };
            if v.passed() {
                Ok(body)
            } else {
                Err(CliError::Verification { report: body })
            }
        }
        Command::Render { document, style, .. } => {
            let doc = read_document(document)?;
            let v = doc.verify(doc.modulus);
            if !v.passed() {
                return Err(CliError::Verification { report: v.report() });
            }
            Ok(match style {
                Style::Text => render::text(&doc),
                Style::Svg => render::svg(&doc),
            })
        }
        Command::VuzaN { n, out } => {
            if *n == 0 || *n > 1 << 32 {
                return Err(CliError::Parse(format!("N must lie in 1..=2^32, got {n}")));
            }
            let form = forbidden_form(*n);
            Ok(match out.format {
                Format::Json => json(&VuzaAnswer {
                    n: *n,
                    factorization: modcanon::arith::factorize(*n),
                    admissible: form.is_none(),
                    form: form.map(|f| f.to_string()),
                }),
                Format::Text => match form {
                    None => format!("{n} = {}: admissible\n", factorization_text(*n)),
                    Some(f) => format!("{n} = {}: forbidden, form {f}\n", factorization_text(*n)),
                },
            })
        }
        Command::Oracle(OracleCommand::Complement { pattern, modulus, max_n, max_entries, node_limit, out }) => {
            let a = parse_pattern(pattern)?;
            let p = parse_prime(modulus)?;
            let budget = SearchBudget { max_n: *max_n, max_entries: *max_entries, node_limit: *node_limit };
            let result = brute_minimal_complement(&a, p, budget);
            let (b, n) = result.best.ok_or_else(|| {
                let why = if result.complete { "no compact complement within the caps" } else { "node limit reached" };
                CliError::Stuck(format!("{a} mod {p}: {why} ({} nodes)", result.nodes))
            })?;
            let report = CanonReport::new(a, b, n, Modulus::Prime(p))?;
            Ok(emit_canon(&CanonDocument::from_report(&report, provenance("oracle complement", raw_args)), out.format))
        }
        Command::Oracle(OracleCommand::Census { n, out }) => {
            let pairs = brute_all_tilings(*n)?;
            Ok(match out.format {
                Format::Json => json(
                    &pairs
                        .iter()
                        .map(|(a, b)| CensusPair { tile: a.onsets().to_vec(), entries: b.onsets().to_vec() })
                        .collect::<Vec<_>>(),
                ),
                Format::Text => pairs.iter().map(|(a, b)| format!("{a} | {b}\n")).collect(),
            })
        }
    }
}
