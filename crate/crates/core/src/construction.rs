//! The recursive array `T(k)` whose row-major reading gives the minimal
//! compact mod-2 complement of `A_k = {0, 1, 2^k}`.

use std::fmt;

use crate::cover::{fill, greedy_tile, CoverContext};
use crate::error::{Error, Result};
use crate::fp_poly::PrimeModulus;
use crate::pattern::{RhythmicPattern, Word};

pub const MAX_K: u32 = 12;

/// A dense bit matrix, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct BinaryArray {
    rows: usize,
    cols: usize,
    bits: Vec<u64>,
}

impl BinaryArray {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        BinaryArray { rows, cols, bits: vec![0; (rows * cols).div_ceil(64)] }
    }

    pub fn from_rows(rows: &[Word]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut out = Self::zeros(rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged rows");
            for (c, &v) in row.iter().enumerate() {
                out.set(r, c, v != 0);
            }
        }
        out
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        let i = r * self.cols + c;
        self.bits[i / 64] >> (i % 64) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: bool) {
        let i = r * self.cols + c;
        if v {
            self.bits[i / 64] |= 1 << (i % 64);
        } else {
            self.bits[i / 64] &= !(1 << (i % 64));
        }
    }

    pub fn row(&self, r: usize) -> Word {
        Word((0..self.cols).map(|c| self.get(r, c) as u8).collect())
    }

    pub fn count_ones(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Positions of the set cells read left to right, top to bottom.
    pub fn ones_row_major(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.count_ones());
        for (w, &word) in self.bits.iter().enumerate() {
            let mut x = word;
            while x != 0 {
                out.push(w * 64 + x.trailing_zeros() as usize);
                x &= x - 1;
            }
        }
        out
    }
}

impl fmt::Debug for BinaryArray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BinaryArray {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "{}", self.row(r))?;
        }
        Ok(())
    }
}

impl fmt::Display for BinaryArray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            if r > 0 {
                writeln!(f)?;
            }
            write!(f, "{}", self.row(r))?;
        }
        Ok(())
    }
}

fn check_k(k: u32) -> Result<()> {
    if (1..=MAX_K).contains(&k) {
        Ok(())
    } else {
        Err(Error::OrderOutOfRange(k))
    }
}

/// `A_k = {0, 1, 2^k}`.
pub fn a_k(k: u32) -> RhythmicPattern {
    RhythmicPattern::from_sorted(vec![0, 1, 1 << k])
}

/// `T(k)`, a `(2^k - 1) x 2^k` array, built from `T(1) = (10)` by
///
/// ```text
/// T(k+1) = | T(k)   T(k)       |
///          | T~(k)  1..10 rows |
/// ```
///
/// where `T~(k)` is the row `0..01` above `T(k)` with its last column set.
pub fn build_t(k: u32) -> Result<BinaryArray> {
    check_k(k)?;
    let mut t = BinaryArray::zeros(1, 2);
    t.set(0, 0, true);
    for j in 1..k {
        let w = 1usize << j;
        let h = w - 1;
        let mut next = BinaryArray::zeros(2 * w - 1, 2 * w);
        for r in 0..h {
            for c in 0..w {
                let v = t.get(r, c);
                next.set(r, c, v);
                next.set(r, c + w, v);
            }
        }
        next.set(h, w - 1, true);
        for c in 0..w - 1 {
            next.set(h, w + c, true);
        }
        for r in 0..h {
            for c in 0..w - 1 {
                next.set(w + r, c, t.get(r, c));
                next.set(w + r, w + c, true);
            }
            next.set(w + r, w - 1, true);
        }
        t = next;
    }
    Ok(t)
}

/// `B_k`: the set cells of `T(k)` in reading order.
pub fn flatten_t(k: u32) -> Result<RhythmicPattern> {
    Ok(RhythmicPattern::from_sorted(build_t(k)?.ones_row_major()))
}

/// Closed forms for the canon `(A_k, B_k)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CountTriple {
    pub n: u64,
    pub entries: u64,
    pub donsets: u64,
}

/// `N = 4^k - 1`, `#B = 4^k - 3^k`, `#D = 4^k - (3^(k+1) - 1) / 2`.
/// Valid for `1 <= k <= 31`.
pub fn predicted_counts(k: u32) -> Result<CountTriple> {
    if !(1..=31).contains(&k) {
        return Err(Error::OrderOutOfRange(k));
    }
    let four = 4u64.pow(k);
    let three = 3u64.pow(k);
    Ok(CountTriple { n: four - 1, entries: four - three, donsets: four - (3 * three - 1) / 2 })
}

/// Checks that the greedy tiler on `A_k` walks through `T(k)` row by row:
/// the under-cover met at row `l` is row `l - 1` (the null word for
/// `l = 0`), filling it yields row `l`, and the final entries are `B_k`
/// with `N = 4^k - 1`.
pub fn verify_tk_equals_vk(k: u32) -> Result<bool> {
    let t = build_t(k)?;
    let a = a_k(k);
    let w = t.cols();
    let mut ctx = CoverContext::new(a.clone(), PrimeModulus::TWO);
    let mut previous = Word::zeros(w);
    for l in 0..t.rows() {
        let uc = ctx.under_cover(l * w, w);
        if uc.word != previous {
            return Ok(false);
        }
        let row = fill(&a, &uc)?;
        if row != t.row(l) {
            return Ok(false);
        }
        for c in (0..w).filter(|&c| row.0[c] == 1) {
            ctx.add_entry(l * w + c);
        }
        previous = row;
    }
    let expected_n = predicted_counts(k)?.n as usize;
    let out = greedy_tile(&a, PrimeModulus::TWO, expected_n);
    Ok(out.is_compact() && out.n == expected_n && out.entries == t.ones_row_major() && ctx.entries() == out.entries)
}
