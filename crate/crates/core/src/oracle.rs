//! Brute-force ground truth: minimal compact complements and a census of
//! exact tilings of small cyclic groups.

use log::debug;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fp_poly::PrimeModulus;
use crate::pattern::RhythmicPattern;

/// Caps on a brute-force search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBudget {
    pub max_n: usize,
    pub max_entries: usize,
    pub node_limit: u64,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { max_n: 1 << 16, max_entries: 1 << 16, node_limit: 1 << 24 }
    }
}

/// Result of [`brute_minimal_complement`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BruteOutcome {
    /// The minimal `(B, N)` by `(#B, N, B)`, if any was found.
    pub best: Option<(RhythmicPattern, usize)>,
    pub nodes: u64,
    /// False if the node limit cut the search short.
    pub complete: bool,
}

enum Step {
    Visit(usize),
    Include(usize),
    Undo(usize),
}

/// Exhaustive include/exclude search over entry positions `0, 1, 2, ...`
/// for `B` with `A(X) B(X) = 1 + ... + X^(N-1)` modulo `p`.
///
/// Once every entry below `t` is decided the multiplicity at `t` only
/// depends on whether `t` itself is an entry, so a branch is cut as soon as
/// position `t` cannot end up `≡ 1`.
pub fn brute_minimal_complement(a: &RhythmicPattern, p: PrimeModulus, budget: SearchBudget) -> BruteOutcome {
    let pm = p.get() as u8;
    let max_a = a.max_onset();
    let mut residues = vec![0u8; budget.max_n + max_a + 2];
    let mut entries: Vec<usize> = Vec::new();
    let mut best: Option<(Vec<usize>, usize)> = None;
    let mut nodes = 0u64;
    let mut complete = true;
    let mut stack = vec![Step::Visit(0)];

    while let Some(step) = stack.pop() {
        match step {
            Step::Visit(t) => {
                nodes += 1;
                if nodes > budget.node_limit {
                    complete = false;
                    break;
                }
                if let Some(&max_b) = entries.last() {
                    if t == max_b + max_a + 1 {
                        let better = match &best {
                            None => true,
                            Some((b, n)) => (entries.len(), t, &entries) < (b.len(), *n, b),
                        };
                        if better {
                            best = Some((entries.clone(), t));
                        }
                    }
                }
                let r = residues[t];
                if r == 1 {
                    stack.push(Step::Visit(t + 1));
                }
                let room = best.as_ref().map_or(budget.max_entries, |(b, _)| b.len().min(budget.max_entries));
                if (r + 1) % pm == 1 && entries.len() < room && t + max_a < budget.max_n {
                    stack.push(Step::Include(t));
                }
            }
            Step::Include(t) => {
                for x in a.iter() {
                    residues[t + x] = (residues[t + x] + 1) % pm;
                }
                entries.push(t);
                stack.push(Step::Undo(t));
                stack.push(Step::Visit(t + 1));
            }
            Step::Undo(t) => {
                for x in a.iter() {
                    residues[t + x] = (residues[t + x] + pm - 1) % pm;
                }
                entries.pop();
            }
        }
    }
    if !complete {
        debug!("brute search for {a} mod {p} hit the node limit {}", budget.node_limit);
    }
    BruteOutcome { best: best.map(|(b, n)| (RhythmicPattern::from_sorted(b), n)), nodes, complete }
}

pub const CENSUS_MAX_N: usize = 40;

fn rotate(mask: u64, b: usize, n: usize, full: u64) -> u64 {
    if b == 0 {
        mask
    } else {
        ((mask << b) | (mask >> (n - b))) & full
    }
}

fn mask_to_pattern(mask: u64) -> RhythmicPattern {
    RhythmicPattern::from_sorted((0..64).filter(|i| mask >> i & 1 == 1).collect())
}

/// All `B ∋ 0` with `A ⊕ B = Z_n`, as bitmasks.
fn complements_u64(a_mask: u64, a_list: &[usize], n: usize, full: u64, covered: u64, b_mask: u64, out: &mut Vec<u64>) {
    if covered == full {
        out.push(b_mask);
        return;
    }
    let x = (!covered).trailing_zeros() as usize;
    for &a in a_list {
        let b = (x + n - a) % n;
        let shifted = rotate(a_mask, b, n, full);
        if shifted & covered == 0 {
            complements_u64(a_mask, a_list, n, full, covered | shifted, b_mask | 1 << b, out);
        }
    }
}

/// Subsets of `[1, n)` of size `k`, as bitmasks.
fn combinations(n: usize, k: usize) -> Vec<u64> {
    fn go(start: usize, n: usize, k: usize, acc: u64, out: &mut Vec<u64>) {
        if k == 0 {
            out.push(acc);
            return;
        }
        for i in start..=n - k {
            go(i + 1, n, k - 1, acc | 1 << i, out);
        }
    }
    let mut out = Vec::new();
    if k < n {
        go(1, n, k, 0, &mut out);
    }
    out
}

/// Every unordered pair `{A, B}` with `0 ∈ A, B ⊆ [0, n)` and
/// `A ⊕ B = Z_n`, listed once with `#A <= #B` (and `A <= B` when the
/// sizes agree). Sorted.
pub fn brute_all_tilings(n: usize) -> Result<Vec<(RhythmicPattern, RhythmicPattern)>> {
    if n == 0 {
        return Err(Error::ZeroPeriod);
    }
    if n > CENSUS_MAX_N {
        return Err(Error::CensusTooLarge(n));
    }
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let sizes: Vec<usize> = (1..=n).filter(|a| n % a == 0 && a * a <= n).collect();
    let mut pairs: Vec<(u64, u64)> = sizes
        .into_iter()
        .flat_map(|size| combinations(n, size - 1).into_iter().map(move |m| (size, m | 1)))
        .collect::<Vec<_>>()
        .into_par_iter()
        .flat_map_iter(|(size, a_mask)| {
            let a_list: Vec<usize> = (0..n).filter(|i| a_mask >> i & 1 == 1).collect();
            let mut found = Vec::new();
            complements_u64(a_mask, &a_list, n, full, a_mask, 1, &mut found);
            found.into_iter().filter_map(move |b_mask| {
                let keep = size * size < n || {
                    let (pa, pb) = (mask_to_pattern(a_mask), mask_to_pattern(b_mask));
                    pa <= pb
                };
                keep.then_some((a_mask, b_mask))
            })
        })
        .collect();
    let mut out: Vec<(RhythmicPattern, RhythmicPattern)> =
        pairs.drain(..).map(|(a, b)| (mask_to_pattern(a), mask_to_pattern(b))).collect();
    out.sort_unstable_by(|x, y| (x.0.len(), &x.0, &x.1).cmp(&(y.0.len(), &y.0, &y.1)));
    Ok(out)
}

/// Result of [`find_exact_complement`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ComplementSearch {
    Found(RhythmicPattern),
    NoneExists,
    BudgetExhausted,
}

/// Searches for `B` with `A ⊕ B = Z_n` exactly, for any `n`.
pub fn find_exact_complement(a: &RhythmicPattern, n: usize, node_limit: u64) -> ComplementSearch {
    if n == 0 || n % a.len() != 0 {
        return ComplementSearch::NoneExists;
    }
    let Ok(residues) = a.residues(n) else {
        return ComplementSearch::NoneExists;
    };
    struct Search<'r> {
        a: &'r [usize],
        n: usize,
        covered: Vec<u64>,
        entries: Vec<usize>,
        nodes: u64,
        limit: u64,
    }
    impl Search<'_> {
        fn is_set(&self, i: usize) -> bool {
            self.covered[i / 64] >> (i % 64) & 1 == 1
        }
        fn toggle(&mut self, b: usize) {
            for k in 0..self.a.len() {
                let i = (self.a[k] + b) % self.n;
                self.covered[i / 64] ^= 1 << (i % 64);
            }
        }
        fn first_uncovered(&self) -> Option<usize> {
            self.covered.iter().enumerate().find_map(|(w, &x)| {
                let i = w * 64 + (!x).trailing_zeros() as usize;
                (x != u64::MAX && i < self.n).then_some(i)
            })
        }
        /// `None` when the node limit is hit.
        fn run(&mut self) -> Option<bool> {
            self.nodes += 1;
            if self.nodes > self.limit {
                return None;
            }
            let Some(x) = self.first_uncovered() else {
                return Some(true);
            };
            for k in 0..self.a.len() {
                let b = (x + self.n - self.a[k]) % self.n;
                if self.a.iter().all(|&y| !self.is_set((y + b) % self.n)) {
                    self.toggle(b);
                    self.entries.push(b);
                    match self.run() {
                        Some(true) => return Some(true),
                        None => return None,
                        Some(false) => {}
                    }
                    self.entries.pop();
                    self.toggle(b);
                }
            }
            Some(false)
        }
    }
    let mut s =
        Search { a: &residues, n, covered: vec![0; n.div_ceil(64)], entries: vec![0], nodes: 0, limit: node_limit };
    s.toggle(0);
    match s.run() {
        Some(true) => {
            let mut b = s.entries;
            b.sort_unstable();
            ComplementSearch::Found(RhythmicPattern::from_sorted(b))
        }
        Some(false) => ComplementSearch::NoneExists,
        None => ComplementSearch::BudgetExhausted,
    }
}
