//! The canon document: a fixed-layout JSON text. See `docs/document-format.md`.

use std::fmt::Write as _;

use modcanon::pattern::{donsets, is_compact, is_tiling};
use modcanon::{check_t1, check_t2, CanonReport, Modulus, RhythmicPattern};
use serde::Deserialize;

use crate::error::{CliError, CliResult};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Default, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Provenance {
    pub command: String,
    pub arguments: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Donset {
    pub time: usize,
    pub excess: u32,
}

/// A canon together with its claimed properties.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonDocument {
    pub tile: RhythmicPattern,
    pub entries: RhythmicPattern,
    pub n: usize,
    pub modulus: Modulus,
    pub compact: bool,
    pub donsets: Vec<Donset>,
    pub provenance: Provenance,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Raw {
    schema: u32,
    tile: Vec<usize>,
    entries: Vec<usize>,
    n: usize,
    modulus: u32,
    compact: bool,
    donsets: Vec<Donset>,
    provenance: Provenance,
}

impl CanonDocument {
    pub fn from_report(report: &CanonReport, provenance: Provenance) -> Self {
        CanonDocument {
            tile: report.tile.clone(),
            entries: report.entries.clone(),
            n: report.n,
            modulus: report.modulus,
            compact: report.compact,
            donsets: report.donsets.iter().map(|(time, excess)| Donset { time, excess }).collect(),
            provenance,
        }
    }

    pub fn to_json(&self) -> String {
        fn list(xs: impl Iterator<Item = usize>) -> String {
            xs.map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
        }
        let mut s = String::new();
        s.push_str("{\n");
        let _ = writeln!(s, "  \"schema\": {SCHEMA_VERSION},");
        let _ = writeln!(s, "  \"tile\": [{}],", list(self.tile.iter()));
        let _ = writeln!(s, "  \"entries\": [{}],", list(self.entries.iter()));
        let _ = writeln!(s, "  \"n\": {},", self.n);
        let _ = writeln!(s, "  \"modulus\": {},", self.modulus.code());
        let _ = writeln!(s, "  \"compact\": {},", self.compact);
        if self.donsets.is_empty() {
            s.push_str("  \"donsets\": [],\n");
        } else {
            s.push_str("  \"donsets\": [\n");
            for (i, d) in self.donsets.iter().enumerate() {
                let sep = if i + 1 < self.donsets.len() { "," } else { "" };
                let _ = writeln!(s, "    {{\"time\": {}, \"excess\": {}}}{sep}", d.time, d.excess);
            }
            s.push_str("  ],\n");
        }
        s.push_str("  \"provenance\": {\n");
        let _ = writeln!(s, "    \"command\": {},", serde_json::to_string(&self.provenance.command).unwrap());
        let args: Vec<String> = self.provenance.arguments.iter().map(|a| serde_json::to_string(a).unwrap()).collect();
        let _ = writeln!(s, "    \"arguments\": [{}]", args.join(", "));
        s.push_str("  }\n}\n");
        s
    }

    /// Parses and checks the structure; the canon itself is checked by
    /// [`CanonDocument::verify`].
    pub fn parse(text: &str) -> CliResult<Self> {
        let raw: Raw = serde_json::from_str(text).map_err(|e| CliError::Parse(format!("malformed document: {e}")))?;
        if raw.schema != SCHEMA_VERSION {
            return Err(CliError::Parse(format!("unsupported schema version {}", raw.schema)));
        }
        let pattern = |field: &str, v: Vec<usize>| {
            let sorted = v.windows(2).all(|w| w[0] < w[1]);
            if !sorted {
                return Err(CliError::Parse(format!("`{field}` must be strictly increasing")));
            }
            RhythmicPattern::new(v).map_err(|e| CliError::Parse(format!("`{field}`: {e}")))
        };
        if raw.n == 0 {
            return Err(CliError::Parse("`n` must be positive".into()));
        }
        Ok(CanonDocument {
            tile: pattern("tile", raw.tile)?,
            entries: pattern("entries", raw.entries)?,
            n: raw.n,
            modulus: Modulus::from_code(raw.modulus).map_err(|e| CliError::Parse(format!("`modulus`: {e}")))?,
            compact: raw.compact,
            donsets: raw.donsets,
            provenance: raw.provenance,
        })
    }

    /// Recomputes everything the document claims.
    pub fn verify(&self, modulus: Modulus) -> Verification {
        let mut v = Verification::default();
        let label = match modulus {
            Modulus::Exact => format!("exact tiling of Z_{}", self.n),
            Modulus::Prime(p) => format!("tiling of Z_{} modulo {p}", self.n),
        };
        if !is_tiling(&self.tile, &self.entries, self.n, modulus) {
            v.fail(format!("not a {label}"));
            return v;
        }
        v.pass(label);
        if modulus != self.modulus {
            v.note(format!(
                "checked under modulus {} instead of the document's {}",
                modulus.code(),
                self.modulus.code()
            ));
        }
        let compact = is_compact(&self.tile, &self.entries, modulus) == Some(self.n);
        if compact == self.compact {
            v.pass(format!("compact: {compact}"));
        } else {
            v.fail(format!("document claims compact = {}, actual {compact}", self.compact));
        }
        let actual: Vec<Donset> = donsets(&self.tile, &self.entries, self.n, modulus)
            .expect("tiling checked above")
            .iter()
            .map(|(time, excess)| Donset { time, excess })
            .collect();
        if actual == self.donsets {
            v.pass(format!("donsets: {}", actual.len()));
        } else {
            v.fail(format!("document lists {} donsets, actual {}", self.donsets.len(), actual.len()));
        }
        match modcanon::pattern::is_vuza(&self.tile, &self.entries, self.n, modulus) {
            Ok(vuza) => v.note(format!("vuza: {vuza}")),
            Err(e) => v.fail(e.to_string()),
        }
        // The conditions are theorems for exact tiles; T2 only when the tile
        // size has at most two prime factors.
        let exact = modulus == Modulus::Exact;
        let two_primes = modcanon::arith::factorize(self.tile.len() as u64).len() <= 2;
        let t1 = check_t1(&self.tile);
        let t2 = check_t2(&self.tile);
        match (t1, exact) {
            (true, _) => v.pass("T1 holds for the tile".into()),
            (false, true) => v.fail("T1 fails for an exact tile".into()),
            (false, false) => v.note("T1 fails (not required modulo p)".into()),
        }
        match (t2, exact && two_primes) {
            (true, _) => v.pass("T2 holds for the tile".into()),
            (false, true) => v.fail("T2 fails for an exact tile".into()),
            (false, false) => v.note("T2 fails (not required here)".into()),
        }
        v
    }
}

/// Line-by-line outcome of [`CanonDocument::verify`].
#[derive(Debug, Default, Clone)]
pub struct Verification {
    pub lines: Vec<String>,
    pub failures: usize,
}

impl Verification {
    fn pass(&mut self, s: String) {
        self.lines.push(format!("ok    {s}"));
    }

    fn fail(&mut self, s: String) {
        self.failures += 1;
        self.lines.push(format!("FAIL  {s}"));
    }

    fn note(&mut self, s: String) {
        self.lines.push(format!("info  {s}"));
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    pub fn report(&self) -> String {
        let mut s = self.lines.join("\n");
        s.push('\n');
        s.push_str(if self.passed() { "valid\n" } else { "invalid\n" });
        s
    }
}
