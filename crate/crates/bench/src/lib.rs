//! Inputs shared by the benchmarks.

use modcanon::{FpPoly, PrimeModulus, RhythmicPattern};

pub fn zero_one_n(n: usize) -> RhythmicPattern {
    RhythmicPattern::new(vec![0, 1, n]).expect("distinct onsets")
}

/// A dense pseudo-random polynomial over GF(2) of the given degree.
pub fn dense_gf2(degree: usize, seed: u64) -> FpPoly {
    let mut state = seed | 1;
    let coeffs = (0..=degree).map(|i| {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        if i == 0 || i == degree {
            1
        } else {
            (state & 1) as i64
        }
    });
    FpPoly::from_coeffs(PrimeModulus::TWO, coeffs)
}
