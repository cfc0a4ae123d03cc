//! Rhythmic patterns, onset multisets and the tiling predicates.

use std::fmt;
use std::str::FromStr;

use crate::arith;
use crate::error::{Error, Result};
use crate::fp_poly::{FpPoly, IntPoly, PrimeModulus};

/// Either classical tiling (every residue hit exactly once) or tiling
/// modulo a prime (every residue hit `1 mod p` times).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Modulus {
    Exact,
    Prime(PrimeModulus),
}

impl Modulus {
    /// `1` encodes exact tiling, anything else must be prime.
    pub fn from_code(code: u32) -> Result<Self> {
        if code == 1 {
            Ok(Modulus::Exact)
        } else {
            PrimeModulus::new(code).map(Modulus::Prime)
        }
    }

    pub fn code(self) -> u32 {
        match self {
            Modulus::Exact => 1,
            Modulus::Prime(p) => p.get(),
        }
    }

    /// Whether a multiplicity is acceptable at a covered position.
    #[inline]
    pub fn accepts(self, multiplicity: u32) -> bool {
        match self {
            Modulus::Exact => multiplicity == 1,
            Modulus::Prime(p) => multiplicity % p.get() == 1,
        }
    }
}

impl From<PrimeModulus> for Modulus {
    fn from(p: PrimeModulus) -> Self {
        Modulus::Prime(p)
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Modulus::Exact => write!(f, "exactly"),
            Modulus::Prime(p) => write!(f, "modulo {p}"),
        }
    }
}

/// A finite set of non-negative integers containing 0, kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RhythmicPattern {
    onsets: Vec<usize>,
}

impl RhythmicPattern {
    /// Sorts the onsets; rejects duplicates and sets without 0.
    pub fn new(mut onsets: Vec<usize>) -> Result<Self> {
        onsets.sort_unstable();
        if let Some(w) = onsets.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidPattern(format!("onset {} repeated", w[0])));
        }
        if onsets.first() != Some(&0) {
            return Err(Error::InvalidPattern("a rhythmic pattern must contain 0".into()));
        }
        Ok(RhythmicPattern { onsets })
    }

    /// Caller guarantees strictly increasing onsets starting at 0.
    pub(crate) fn from_sorted(onsets: Vec<usize>) -> Self {
        debug_assert!(onsets.first() == Some(&0));
        debug_assert!(onsets.windows(2).all(|w| w[0] < w[1]));
        RhythmicPattern { onsets }
    }

    /// The single-onset pattern `{0}`.
    pub fn unit() -> Self {
        RhythmicPattern { onsets: vec![0] }
    }

    /// Onsets at the positions of the `1`s of a binary word.
    pub fn from_word(word: &Word) -> Result<Self> {
        let onsets = word.iter().enumerate().filter(|(_, &c)| c != 0).map(|(i, _)| i).collect();
        Self::new(onsets)
    }

    pub fn onsets(&self) -> &[usize] {
        &self.onsets
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.onsets.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.onsets.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn max_onset(&self) -> usize {
        *self.onsets.last().expect("pattern is non-empty")
    }

    pub fn contains(&self, t: usize) -> bool {
        self.onsets.binary_search(&t).is_ok()
    }

    /// `A(X) = sum X^a` over `Z_p`.
    pub fn to_poly(&self, p: PrimeModulus) -> FpPoly {
        FpPoly::from_exponents(p, self.iter())
    }

    /// `A(X)` over the integers.
    pub fn to_int_poly(&self) -> IntPoly {
        IntPoly::from_exponents(self.iter())
    }

    /// Characteristic word of the given length.
    pub fn to_word(&self, length: usize) -> Result<Word> {
        let required = self.max_onset() + 1;
        if length < required {
            return Err(Error::WordTooShort { length, required });
        }
        let mut w = vec![0u8; length];
        for a in self.iter() {
            w[a] = 1;
        }
        Ok(Word(w))
    }

    /// `A ⊕ {0, N, ..., (k-1)N}`, failing if the sum is not direct.
    pub fn concatenate(&self, k: usize, n: usize) -> Result<RhythmicPattern> {
        if n == 0 {
            return Err(Error::ZeroPeriod);
        }
        let mut out: Vec<usize> = (0..k.max(1)).flat_map(|j| self.iter().map(move |a| a + j * n)).collect();
        out.sort_unstable();
        if let Some(w) = out.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::ConcatenationCollision(w[0]));
        }
        Ok(RhythmicPattern::from_sorted(out))
    }

    /// Residues modulo `n`, rejecting collisions.
    pub fn residues(&self, n: usize) -> Result<Vec<usize>> {
        if n == 0 {
            return Err(Error::ZeroPeriod);
        }
        let mut seen: Vec<Option<usize>> = vec![None; n];
        let mut out = Vec::with_capacity(self.len());
        for a in self.iter() {
            let r = a % n;
            if let Some(first) = seen[r] {
                return Err(Error::ResidueCollision { first, second: a, n });
            }
            seen[r] = Some(a);
            out.push(r);
        }
        out.sort_unstable();
        Ok(out)
    }
}

impl fmt::Display for RhythmicPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.onsets.iter().map(|a| a.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FromStr for RhythmicPattern {
    type Err = Error;

    /// Comma-separated non-negative integers, e.g. `0,1,4`.
    fn from_str(s: &str) -> Result<Self> {
        let onsets = s
            .split(',')
            .map(|t| t.trim())
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<usize>().map_err(|_| Error::InvalidPattern(format!("`{t}` is not a non-negative integer")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(onsets)
    }
}

/// A finite word over `{0, .., p-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(pub Vec<u8>);

impl Word {
    pub fn zeros(len: usize) -> Self {
        Word(vec![0; len])
    }

    pub fn ones(len: usize) -> Self {
        Word(vec![1; len])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, u8> {
        self.0.iter()
    }

    pub fn as_slice(&self) -> &[u8] {
        &self.0
    }

    /// Drops trailing zeros.
    pub fn trimmed(&self) -> &[u8] {
        let end = self.0.iter().rposition(|&c| c != 0).map_or(0, |i| i + 1);
        &self.0[..end]
    }

    /// Concatenation of `self` repeated `n` times.
    pub fn repeat(&self, n: usize) -> Word {
        Word(self.0.repeat(n))
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &c in &self.0 {
            write!(f, "{}", char::from_digit(c as u32, 36).unwrap_or('?'))?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| {
                c.to_digit(10).map(|d| d as u8).ok_or_else(|| Error::InvalidPattern(format!("`{c}` is not a digit")))
            })
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }
}

/// Multiplicities of onset times, stored densely.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct OnsetMultiset {
    counts: Vec<u32>,
}

impl OnsetMultiset {
    pub fn from_counts(mut counts: Vec<u32>) -> Self {
        while counts.last() == Some(&0) {
            counts.pop();
        }
        OnsetMultiset { counts }
    }

    /// Builds a multiset from `(time, multiplicity)` pairs; repeats add up.
    pub fn from_pairs<I: IntoIterator<Item = (usize, u32)>>(pairs: I) -> Self {
        let mut counts = Vec::new();
        for (t, m) in pairs {
            if t >= counts.len() {
                counts.resize(t + 1, 0);
            }
            counts[t] += m;
        }
        Self::from_counts(counts)
    }

    pub fn multiplicity(&self, t: usize) -> u32 {
        self.counts.get(t).copied().unwrap_or(0)
    }

    /// `(time, multiplicity)` for every time present, ascending.
    pub fn iter(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.counts.iter().enumerate().filter(|(_, &c)| c > 0).map(|(t, &c)| (t, c))
    }

    /// Number of distinct times.
    pub fn support_len(&self) -> usize {
        self.counts.iter().filter(|&&c| c > 0).count()
    }

    /// Sum of multiplicities.
    pub fn total(&self) -> u64 {
        self.counts.iter().map(|&c| c as u64).sum()
    }

    pub fn max_time(&self) -> Option<usize> {
        self.counts.len().checked_sub(1)
    }

    pub fn max_multiplicity(&self) -> u32 {
        self.counts.iter().copied().max().unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn counts(&self) -> &[u32] {
        &self.counts
    }
}

/// The multiset `A + B`, or `A +_N B` when a period is given.
pub fn multiset_sum(a: &RhythmicPattern, b: &RhythmicPattern, n: Option<usize>) -> OnsetMultiset {
    let len = match n {
        Some(n) => n.max(1),
        None => a.max_onset() + b.max_onset() + 1,
    };
    let mut counts = vec![0u32; len];
    let (small, large) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    for x in small.iter() {
        match n {
            Some(n) => {
                for y in large.iter() {
                    counts[(x + y) % n] += 1;
                }
            }
            None => {
                for y in large.iter() {
                    counts[x + y] += 1;
                }
            }
        }
    }
    OnsetMultiset::from_counts(counts)
}

/// `C_{0-p}`: multiplicities reduced modulo `p`, written out to `length`.
pub fn char_word(c: &OnsetMultiset, p: PrimeModulus, length: usize) -> Result<Word> {
    let required = c.max_time().map_or(0, |m| m + 1);
    if length < required {
        return Err(Error::WordTooShort { length, required });
    }
    Ok(Word((0..length).map(|t| (c.multiplicity(t) % p.get()) as u8).collect()))
}

/// Does `(a, b)` tile `Z_n` (exactly or modulo `p`)?
pub fn is_tiling(a: &RhythmicPattern, b: &RhythmicPattern, n: usize, modulus: Modulus) -> bool {
    if n == 0 {
        return false;
    }
    let c = multiset_sum(a, b, Some(n));
    (0..n).all(|t| modulus.accepts(c.multiplicity(t)))
}

/// If the unreduced product `A(X) B(X)` equals `1 + X + ... + X^(N-1)`
/// (exactly or modulo `p`), returns that `N = max A + max B + 1`.
pub fn is_compact(a: &RhythmicPattern, b: &RhythmicPattern, modulus: Modulus) -> Option<usize> {
    let c = multiset_sum(a, b, None);
    let n = a.max_onset() + b.max_onset() + 1;
    (0..n).all(|t| modulus.accepts(c.multiplicity(t))).then_some(n)
}

/// Smallest shift `0 < k < n` with `x[(t + k) mod n] == x[t]` for all `t`.
/// Only proper divisors of `n` need testing.
fn has_cyclic_symmetry<T: PartialEq>(x: &[T]) -> bool {
    let n = x.len();
    arith::divisors(n as u64)
        .into_iter()
        .map(|d| d as usize)
        .filter(|&d| d < n)
        .any(|k| (0..n).all(|t| x[(t + k) % n] == x[t]))
}

/// Is there `0 < k < n` with `A +_n {k} = A`?
pub fn is_periodic(a: &RhythmicPattern, n: usize) -> Result<bool> {
    let residues = a.residues(n)?;
    let mut ind = vec![false; n];
    for r in residues {
        ind[r] = true;
    }
    Ok(has_cyclic_symmetry(&ind))
}

/// Translation symmetry of the pattern's residue multiset; coincides with
/// [`is_periodic`] when residues are distinct.
fn is_periodic_multiset(a: &RhythmicPattern, n: usize) -> bool {
    let mut counts = vec![0u32; n];
    for x in a.iter() {
        counts[x % n] += 1;
    }
    has_cyclic_symmetry(&counts)
}

/// A tiling canon in which neither factor is periodic. The trivial canon of
/// `Z_1` is not counted as Vuza.
pub fn is_vuza(a: &RhythmicPattern, b: &RhythmicPattern, n: usize, modulus: Modulus) -> Result<bool> {
    if !is_tiling(a, b, n, modulus) {
        return Err(Error::NotATiling { n, modulus: modulus.to_string() });
    }
    if n == 1 {
        return Ok(false);
    }
    Ok(!is_periodic_multiset(a, n) && !is_periodic_multiset(b, n))
}

/// The orders `N` for which no Vuza canon of `Z_N` exists.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ForbiddenForm {
    /// `N = 1`
    Trivial,
    /// `p^a`
    PrimePower,
    /// `p^a q`
    PrimePowerTimesPrime,
    /// `p^2 q^2`
    TwoSquares,
    /// `p q r`
    ThreePrimes,
    /// `p^2 q r`
    SquareTimesTwoPrimes,
    /// `p q r s`
    FourPrimes,
}

impl fmt::Display for ForbiddenForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ForbiddenForm::Trivial => "1",
            ForbiddenForm::PrimePower => "p^a",
            ForbiddenForm::PrimePowerTimesPrime => "p^a q",
            ForbiddenForm::TwoSquares => "p^2 q^2",
            ForbiddenForm::ThreePrimes => "p q r",
            ForbiddenForm::SquareTimesTwoPrimes => "p^2 q r",
            ForbiddenForm::FourPrimes => "p q r s",
        })
    }
}

/// Which excluded form `N` matches, if any.
pub fn forbidden_form(n: u64) -> Option<ForbiddenForm> {
    let mut exps: Vec<u32> = arith::factorize(n).into_iter().map(|(_, e)| e).collect();
    exps.sort_unstable_by(|a, b| b.cmp(a));
    match exps.as_slice() {
        [] => Some(ForbiddenForm::Trivial),
        [_] => Some(ForbiddenForm::PrimePower),
        [_, 1] => Some(ForbiddenForm::PrimePowerTimesPrime),
        [2, 2] => Some(ForbiddenForm::TwoSquares),
        [1, 1, 1] => Some(ForbiddenForm::ThreePrimes),
        [2, 1, 1] => Some(ForbiddenForm::SquareTimesTwoPrimes),
        [1, 1, 1, 1] => Some(ForbiddenForm::FourPrimes),
        _ => None,
    }
}

/// True iff Vuza canons of `Z_N` exist, i.e. `N` avoids every excluded form.
pub fn vuza_admissible(n: u64) -> bool {
    forbidden_form(n).is_none()
}

/// The donset multiset: a time hit `kp + 1` times (`k >= 1`) contributes `kp`.
/// Empty for exact tilings.
pub fn donsets(a: &RhythmicPattern, b: &RhythmicPattern, n: usize, modulus: Modulus) -> Result<OnsetMultiset> {
    if !is_tiling(a, b, n, modulus) {
        return Err(Error::NotATiling { n, modulus: modulus.to_string() });
    }
    let c = multiset_sum(a, b, Some(n));
    Ok(OnsetMultiset::from_counts(c.counts().iter().map(|&m| m - 1).collect()))
}

/// A verified canon with its derived properties.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonReport {
    pub tile: RhythmicPattern,
    pub entries: RhythmicPattern,
    pub n: usize,
    pub modulus: Modulus,
    pub compact: bool,
    pub donsets: OnsetMultiset,
    pub vuza: bool,
}

impl CanonReport {
    /// Checks the tiling condition and derives compactness, donsets and
    /// the Vuza flag.
    pub fn new(tile: RhythmicPattern, entries: RhythmicPattern, n: usize, modulus: Modulus) -> Result<Self> {
        let donsets = donsets(&tile, &entries, n, modulus)?;
        let vuza = is_vuza(&tile, &entries, n, modulus)?;
        let compact = is_compact(&tile, &entries, modulus) == Some(n);
        Ok(CanonReport { tile, entries, n, modulus, compact, donsets, vuza })
    }
}
