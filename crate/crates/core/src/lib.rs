//! Rhythmic tiling canons, classical and modulo a prime.
//!
//! A rhythmic pattern `A` (a finite set of non-negative integers containing
//! 0) tiles `Z_N` with entries `B` when every residue class is hit exactly
//! once by `A + B`. Working modulo `p`, the condition relaxes to "hit a
//! number of times congruent to 1 mod p", which turns tiling into
//! divisibility in `F_p[X]`.
//!
//! The crate is organised bottom-up:
//!
//! * [`fp_poly`]: dense polynomials over `Z_p` (bit-packed for `p = 2`) and
//!   over the integers, cyclic reduction, division, order finding,
//!   cyclotomic polynomials.
//! * [`pattern`]: rhythmic patterns, onset multisets, tiling predicates,
//!   duality/concatenation, periodicity, donsets.
//! * [`cover`]: under-covers, filling, and the greedy compact tiler.
//! * [`construction`]: the recursive `T(k)` array for `{0, 1, 2^k}`.
//! * [`cm`]: cyclotomic profiles and the Coven-Meyerowitz conditions.
//! * [`oracle`]: brute-force searches used to cross-check everything else.

pub mod arith;
pub mod cm;
pub mod construction;
pub mod cover;
mod error;
pub mod fp_poly;
pub mod oracle;
pub mod pattern;

pub use cm::{check_t1, check_t2, cyclotomic_profile, CyclotomicProfile};
pub use construction::{a_k, build_t, flatten_t, predicted_counts, verify_tk_equals_vk, BinaryArray, CountTriple};
pub use cover::{apply_fill, fill, greedy_tile, GreedyOutcome, GreedyStatus, StuckReason, UnderCover};
pub use error::{Error, Result};
pub use fp_poly::{cyclotomic, FpPoly, IntPoly, PrimeModulus};
pub use oracle::{
    brute_all_tilings, brute_minimal_complement, find_exact_complement, BruteOutcome, ComplementSearch, SearchBudget,
};
pub use pattern::{CanonReport, Modulus, OnsetMultiset, RhythmicPattern, Word};
