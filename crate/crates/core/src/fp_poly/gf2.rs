//! Bit-packed multiplication in `F_2[X]`.
//!
//! Bit `i` of word `w` holds the coefficient of `X^(64 w + i)`. Products use
//! a software 64x64 carry-less multiply at the leaves and Karatsuba above
//! [`KARATSUBA_WORDS`].

const KARATSUBA_WORDS: usize = 24;

pub fn pack(coeffs: &[u32]) -> Vec<u64> {
    let mut words = vec![0u64; coeffs.len().div_ceil(64)];
    for (i, &c) in coeffs.iter().enumerate() {
        if c & 1 == 1 {
            words[i / 64] |= 1 << (i % 64);
        }
    }
    words
}

pub fn unpack(words: &[u64], len: usize) -> Vec<u32> {
    (0..len).map(|i| words.get(i / 64).map_or(0, |w| (w >> (i % 64) & 1) as u32)).collect()
}

/// Carry-less 64x64 -> 128 product as `(low, high)`.
#[inline]
pub fn clmul64(a: u64, b: u64) -> (u64, u64) {
    // 4-bit windows of `a`, multiplied by b without carries.
    let mut table = [(0u64, 0u64); 16];
    for (i, slot) in table.iter_mut().enumerate().skip(1) {
        let mut lo = 0u64;
        let mut hi = 0u64;
        for bit in 0..4 {
            if i >> bit & 1 == 1 {
                lo ^= b << bit;
                if bit > 0 {
                    hi ^= b >> (64 - bit);
                }
            }
        }
        *slot = (lo, hi);
    }
    let mut lo = 0u64;
    let mut hi = 0u64;
    for nib in (0..16).rev() {
        // shift accumulator left by 4
        hi = hi << 4 | lo >> 60;
        lo <<= 4;
        let (tl, th) = table[(a >> (4 * nib) & 0xf) as usize];
        lo ^= tl;
        hi ^= th;
    }
    (lo, hi)
}

/// Product of two packed polynomials; result has `a.len() + b.len()` words.
pub fn mul(a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut out = vec![0u64; a.len() + b.len()];
    if a.is_empty() || b.is_empty() {
        return out;
    }
    let sparse_a: u32 = a.iter().map(|w| w.count_ones()).sum();
    let sparse_b: u32 = b.iter().map(|w| w.count_ones()).sum();
    // A handful of terms (a rhythmic pattern, typically) is cheaper as
    // shifted XORs than as word products.
    let (s, d, weight) = if sparse_a <= sparse_b { (a, b, sparse_a) } else { (b, a, sparse_b) };
    if (weight as usize) < 8 * s.len().min(d.len()).max(1) && weight < 512 {
        shift_xor(s, d, &mut out);
    } else {
        karatsuba(a, b, &mut out);
    }
    out
}

fn shift_xor(sparse: &[u64], dense: &[u64], out: &mut [u64]) {
    for (wi, &w) in sparse.iter().enumerate() {
        let mut bits = w;
        while bits != 0 {
            let bit = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let word_shift = wi;
            if bit == 0 {
                for (j, &dw) in dense.iter().enumerate() {
                    out[word_shift + j] ^= dw;
                }
            } else {
                for (j, &dw) in dense.iter().enumerate() {
                    out[word_shift + j] ^= dw << bit;
                    out[word_shift + j + 1] ^= dw >> (64 - bit);
                }
            }
        }
    }
}

fn schoolbook(a: &[u64], b: &[u64], out: &mut [u64]) {
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            let (lo, hi) = clmul64(x, y);
            out[i + j] ^= lo;
            out[i + j + 1] ^= hi;
        }
    }
}

/// XORs `a * b` into `out` (which must hold at least `a.len() + b.len()` words).
fn karatsuba(a: &[u64], b: &[u64], out: &mut [u64]) {
    let (a, b) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let (n, m) = (a.len(), b.len());
    if m == 0 {
        return;
    }
    if m < KARATSUBA_WORDS {
        schoolbook(a, b, out);
        return;
    }
    if n > m {
        for (c, chunk) in a.chunks(m).enumerate() {
            karatsuba(chunk, b, &mut out[c * m..]);
        }
        return;
    }
    let h = n / 2;
    let (a0, a1) = a.split_at(h);
    let (b0, b1) = b.split_at(h);
    let hi_len = n - h;

    let mut z0 = vec![0u64; 2 * h];
    karatsuba(a0, b0, &mut z0);
    let mut z2 = vec![0u64; 2 * hi_len];
    karatsuba(a1, b1, &mut z2);

    let mut sa = a1.to_vec();
    let mut sb = b1.to_vec();
    for i in 0..h {
        sa[i] ^= a0[i];
        sb[i] ^= b0[i];
    }
    let mut z1 = vec![0u64; 2 * hi_len];
    karatsuba(&sa, &sb, &mut z1);
    for (i, &w) in z0.iter().enumerate() {
        z1[i] ^= w;
    }
    for (i, &w) in z2.iter().enumerate() {
        z1[i] ^= w;
    }

    for (i, &w) in z0.iter().enumerate() {
        out[i] ^= w;
    }
    for (i, &w) in z1.iter().enumerate() {
        out[h + i] ^= w;
    }
    for (i, &w) in z2.iter().enumerate() {
        out[2 * h + i] ^= w;
    }
}
