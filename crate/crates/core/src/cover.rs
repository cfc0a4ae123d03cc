//! Under-covers, filling, and the greedy compact tiler.

use std::fmt;

use log::{debug, warn};

use crate::error::{Error, Result};
use crate::fp_poly::{FpPoly, PrimeModulus};
use crate::pattern::{RhythmicPattern, Word};

/// A slice `(A + B)_{0-p}[start .. start + len)`.
#[derive(Debug, Clone)]
pub struct UnderCover {
    pub start: usize,
    pub word: Word,
    pub modulus: PrimeModulus,
}

impl UnderCover {
    pub fn new(start: usize, word: Word, modulus: PrimeModulus) -> Self {
        UnderCover { start, word, modulus }
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }
}

/// Trailing zeros are padding, so they are ignored.
impl PartialEq for UnderCover {
    fn eq(&self, other: &Self) -> bool {
        self.start == other.start && self.modulus == other.modulus && self.word.trimmed() == other.word.trimmed()
    }
}

impl Eq for UnderCover {}

impl fmt::Display for UnderCover {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UC_{}({}) = {}", self.modulus, self.start, self.word)
    }
}

/// Running residues of `A + B` modulo `p` while entries are added.
#[derive(Debug, Clone)]
pub struct CoverContext {
    tile: RhythmicPattern,
    modulus: PrimeModulus,
    residues: Vec<u8>,
    entries: Vec<usize>,
}

impl CoverContext {
    pub fn new(tile: RhythmicPattern, modulus: PrimeModulus) -> Self {
        CoverContext { tile, modulus, residues: Vec::new(), entries: Vec::new() }
    }

    pub fn with_entries(tile: RhythmicPattern, modulus: PrimeModulus, entries: &[usize]) -> Self {
        let mut ctx = Self::new(tile, modulus);
        for &b in entries {
            ctx.add_entry(b);
        }
        ctx
    }

    pub fn tile(&self) -> &RhythmicPattern {
        &self.tile
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    /// Adds the translate `A + {b}`; entries are kept sorted.
    pub fn add_entry(&mut self, b: usize) {
        let need = b + self.tile.max_onset() + 1;
        if self.residues.len() < need {
            self.residues.resize(need, 0);
        }
        let p = self.modulus.get() as u8;
        for a in self.tile.iter() {
            let r = &mut self.residues[b + a];
            *r = if *r + 1 == p { 0 } else { *r + 1 };
        }
        match self.entries.binary_search(&b) {
            Ok(_) => self.entries.push(b),
            Err(pos) => self.entries.insert(pos, b),
        }
    }

    pub fn residue(&self, t: usize) -> u8 {
        self.residues.get(t).copied().unwrap_or(0)
    }

    /// First index `>= from` whose residue is not 1.
    pub fn first_defect_from(&self, from: usize) -> usize {
        (from..self.residues.len()).find(|&t| self.residues[t] != 1).unwrap_or(self.residues.len().max(from))
    }

    /// Last index with a nonzero residue.
    pub fn last_nonzero(&self) -> Option<usize> {
        self.residues.iter().rposition(|&r| r != 0)
    }

    /// The slice `[start, start + len)`, zero padded.
    pub fn window(&self, start: usize, len: usize) -> Word {
        Word((start..start + len).map(|t| self.residue(t)).collect())
    }

    pub fn under_cover(&self, start: usize, len: usize) -> UnderCover {
        UnderCover::new(start, self.window(start, len), self.modulus)
    }
}

/// Extracts the under-cover of `(A, B)` at `start`.
///
/// `start` may not lie past the first defect `m`, and the slice must reach
/// the last nonzero position `M`.
pub fn extract_under_cover(
    a: &RhythmicPattern,
    b: &[usize],
    p: PrimeModulus,
    start: usize,
    length: usize,
) -> Result<UnderCover> {
    let ctx = CoverContext::with_entries(a.clone(), p, b);
    let m = ctx.first_defect_from(0);
    if start > m {
        return Err(Error::UnderCoverBounds(format!("start {start} lies past the first defect {m}")));
    }
    if let Some(big_m) = ctx.last_nonzero() {
        if big_m >= start && length < big_m - start + 1 {
            return Err(Error::UnderCoverBounds(format!(
                "length {length} does not reach the last onset {big_m} from {start}"
            )));
        }
    }
    Ok(ctx.under_cover(start, length))
}

/// Greedy left-to-right repair of an under-cover: at each position still
/// differing from 1, add a translate of `a` there (only onsets landing in
/// the window count). Returns the entry word `B'_{0-1}` of length `|uc|`.
pub fn fill(a: &RhythmicPattern, uc: &UnderCover) -> Result<Word> {
    let p = uc.modulus.get() as u8;
    let n = uc.len();
    let mut w: Vec<u8> = uc.word.iter().map(|&c| c % p).collect();
    let mut entries = vec![0u8; n];
    for j in 0..n {
        if w[j] == 1 {
            continue;
        }
        entries[j] = 1;
        for x in a.iter().map(|x| j + x).take_while(|&x| x < n) {
            w[x] = (w[x] + 1) % p;
        }
        if w[j] != 1 {
            return Err(Error::FillStuck(uc.start + j));
        }
    }
    Ok(Word(entries))
}

/// The window of `uc` once the entries of `fill` are applied.
pub fn apply_fill(a: &RhythmicPattern, uc: &UnderCover, fill: &Word) -> Word {
    let p = uc.modulus.get() as u8;
    let n = uc.len();
    let mut w: Vec<u8> = uc.word.iter().map(|&c| c % p).collect();
    for j in (0..n.min(fill.len())).filter(|&j| fill.0[j] != 0) {
        for x in a.iter().map(|x| j + x).take_while(|&x| x < n) {
            w[x] = (w[x] + 1) % p;
        }
    }
    Word(w)
}

/// The under-cover of `(A, B ∪ (B' + i))` starting at `i + |uc|`, long
/// enough to cover every remaining onset and at least `|uc|`.
pub fn following_under_cover(a: &RhythmicPattern, b: &[usize], uc: &UnderCover, fill: &Word) -> Result<UnderCover> {
    if fill.len() > uc.len() {
        return Err(Error::UnderCoverBounds(format!(
            "fill of length {} exceeds the under-cover length {}",
            fill.len(),
            uc.len()
        )));
    }
    let mut ctx = CoverContext::with_entries(a.clone(), uc.modulus, b);
    for j in (0..fill.len()).filter(|&j| fill.0[j] != 0) {
        ctx.add_entry(uc.start + j);
    }
    let start = uc.start + uc.len();
    let reach = ctx.last_nonzero().map_or(0, |big_m| (big_m + 1).saturating_sub(start));
    Ok(ctx.under_cover(start, uc.len().max(reach)))
}

/// Why the greedy tiler gave up.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StuckReason {
    /// The first defect equals `max B + max A + 1` without the word being
    /// all ones. Never observed; kept as a guard.
    Break { index: usize },
    /// The first defect is already an entry; its residue cannot be fixed by
    /// adding the same translate twice (only for `p > 2`).
    Repeated { index: usize, residue: u8 },
    /// The next entry would push `N` beyond the cap.
    MaxN { index: usize, max_n: usize },
}

impl fmt::Display for StuckReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StuckReason::Break { index } => write!(f, "break condition reached at index {index}"),
            StuckReason::Repeated { index, residue } => {
                write!(f, "defect at entry {index} has residue {residue} and cannot be repaired")
            }
            StuckReason::MaxN { index, max_n } => write!(f, "entry {index} would exceed the cap N <= {max_n}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GreedyStatus {
    CompactTiling,
    Stuck(StuckReason),
}

/// Result of [`greedy_tile`]. `n` is meaningful only for a compact tiling.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GreedyOutcome {
    pub status: GreedyStatus,
    pub entries: Vec<usize>,
    pub n: usize,
}

impl GreedyOutcome {
    pub fn is_compact(&self) -> bool {
        self.status == GreedyStatus::CompactTiling
    }

    /// The entries as a pattern; `None` if nothing was placed.
    pub fn entries_pattern(&self) -> Option<RhythmicPattern> {
        RhythmicPattern::new(self.entries.clone()).ok()
    }
}

/// Adds entries at successive first defects until `A + B` reads `1^N`
/// modulo `p`.
pub fn greedy_tile(a: &RhythmicPattern, p: PrimeModulus, max_n: usize) -> GreedyOutcome {
    let mut ctx = CoverContext::new(a.clone(), p);
    let max_a = a.max_onset();
    let mut cursor = 0;
    loop {
        let i = ctx.first_defect_from(cursor);
        let last = ctx.entries().last().copied();
        let stuck = |reason| {
            debug!("greedy on {a} mod {p} stuck: {reason}");
            GreedyOutcome { status: GreedyStatus::Stuck(reason), entries: ctx.entries().to_vec(), n: 0 }
        };
        if let Some(max_b) = last {
            let n = max_b + max_a + 1;
            if i >= n && ctx.last_nonzero().map_or(true, |m| m < n) {
                return GreedyOutcome { status: GreedyStatus::CompactTiling, entries: ctx.entries().to_vec(), n };
            }
            if i == n {
                warn!("greedy on {a} mod {p}: break condition fired at {i}");
                return stuck(StuckReason::Break { index: i });
            }
            if max_b == i {
                return stuck(StuckReason::Repeated { index: i, residue: ctx.residue(i) });
            }
        }
        if i + max_a + 1 > max_n {
            return stuck(StuckReason::MaxN { index: i, max_n });
        }
        ctx.add_entry(i);
        cursor = i;
    }
}

/// Smallest `N <= max_n` with `A(X) | X^N - 1` over `Z_p`.
pub fn noncompact_size(a: &RhythmicPattern, p: PrimeModulus, max_n: usize) -> Option<usize> {
    a.to_poly(p).order_of_divisor(max_n).expect("a pattern has constant term 1")
}

/// Rewrites each coefficient `α X^k` of `Q mod (X^N - 1)` as the onsets
/// `k, k + N, ..., k + (α - 1) N`. Fails if the result lacks 0.
pub fn lift_to_pattern(q: &FpPoly, n: usize) -> Result<RhythmicPattern> {
    if n == 0 {
        return Err(Error::ZeroPeriod);
    }
    let folded = q.mod_cyclic(n);
    let mut onsets: Vec<usize> = folded
        .coeffs()
        .iter()
        .enumerate()
        .flat_map(|(k, &alpha)| (0..alpha as usize).map(move |j| k + j * n))
        .collect();
    onsets.sort_unstable();
    RhythmicPattern::new(onsets)
}
