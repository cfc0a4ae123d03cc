//! Exact polynomial arithmetic over `Z_p` and over the integers.
//!
//! [`FpPoly`] stores residues densely, lowest exponent first. Products in
//! characteristic 2 are routed through a bit-packed carry-less multiplier
//! (see [`gf2`]); every other modulus uses a sparse-aware schoolbook loop.

pub mod gf2;
mod int;

use std::fmt;

pub use int::{cyclotomic, IntPoly};

use crate::arith;
use crate::error::{Error, Result};

/// A prime modulus `p`, checked by trial division.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimeModulus(u32);

impl PrimeModulus {
    pub const TWO: PrimeModulus = PrimeModulus(2);
    pub const THREE: PrimeModulus = PrimeModulus(3);

    pub fn new(p: u32) -> Result<Self> {
        if arith::is_prime(p as u64) {
            Ok(PrimeModulus(p))
        } else {
            Err(Error::NotPrime(p as u64))
        }
    }

    #[inline]
    pub fn get(self) -> u32 {
        self.0
    }

    #[inline]
    pub(crate) fn reduce(self, v: u64) -> u32 {
        (v % self.0 as u64) as u32
    }

    #[inline]
    pub(crate) fn reduce_signed(self, v: i64) -> u32 {
        v.rem_euclid(self.0 as i64) as u32
    }

    #[inline]
    fn mul(self, a: u32, b: u32) -> u32 {
        self.reduce(a as u64 * b as u64)
    }

    #[inline]
    fn add(self, a: u32, b: u32) -> u32 {
        self.reduce(a as u64 + b as u64)
    }

    #[inline]
    fn sub(self, a: u32, b: u32) -> u32 {
        self.reduce(a as u64 + self.0 as u64 - b as u64)
    }

    /// Multiplicative inverse of a nonzero residue (Fermat).
    fn inv(self, a: u32) -> u32 {
        debug_assert!(a % self.0 != 0);
        let mut base = a % self.0;
        let mut exp = self.0 - 2;
        let mut acc = 1u32;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }
}

impl fmt::Display for PrimeModulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Dense polynomial over `Z_p`.
///
/// Invariant: no trailing zero coefficient; the zero polynomial has no
/// coefficients at all.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FpPoly {
    modulus: PrimeModulus,
    coeffs: Vec<u32>,
}

impl FpPoly {
    pub fn zero(modulus: PrimeModulus) -> Self {
        FpPoly { modulus, coeffs: Vec::new() }
    }

    pub fn one(modulus: PrimeModulus) -> Self {
        Self::monomial(modulus, 0, 1)
    }

    /// `coeff * X^exp`.
    pub fn monomial(modulus: PrimeModulus, exp: usize, coeff: i64) -> Self {
        let c = modulus.reduce_signed(coeff);
        if c == 0 {
            return Self::zero(modulus);
        }
        let mut coeffs = vec![0; exp + 1];
        coeffs[exp] = c;
        FpPoly { modulus, coeffs }
    }

    /// Builds a polynomial from signed integer coefficients, lowest first.
    pub fn from_coeffs<I: IntoIterator<Item = i64>>(modulus: PrimeModulus, coeffs: I) -> Self {
        let coeffs = coeffs.into_iter().map(|c| modulus.reduce_signed(c)).collect();
        Self::from_residues(modulus, coeffs)
    }

    fn from_residues(modulus: PrimeModulus, mut coeffs: Vec<u32>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        FpPoly { modulus, coeffs }
    }

    /// `sum X^e` over the given exponents; repeated exponents accumulate.
    pub fn from_exponents<I: IntoIterator<Item = usize>>(modulus: PrimeModulus, exps: I) -> Self {
        let mut coeffs: Vec<u32> = Vec::new();
        for e in exps {
            if e >= coeffs.len() {
                coeffs.resize(e + 1, 0);
            }
            coeffs[e] = modulus.add(coeffs[e], 1);
        }
        Self::from_residues(modulus, coeffs)
    }

    /// `X^n - 1`.
    pub fn x_pow_minus_one(modulus: PrimeModulus, n: usize) -> Self {
        let mut coeffs = vec![0; n + 1];
        coeffs[0] = modulus.reduce_signed(-1);
        coeffs[n] = modulus.add(coeffs[n], 1);
        Self::from_residues(modulus, coeffs)
    }

    /// `1 + X + ... + X^(n-1)`.
    pub fn all_ones(modulus: PrimeModulus, n: usize) -> Self {
        Self::from_residues(modulus, vec![1; n])
    }

    pub fn modulus(&self) -> PrimeModulus {
        self.modulus
    }

    /// Residues, lowest exponent first.
    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn coeff(&self, exp: usize) -> u32 {
        self.coeffs.get(exp).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Exponents carrying a nonzero coefficient, ascending.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.coeffs.iter().enumerate().filter(|(_, &c)| c != 0).map(|(i, _)| i)
    }

    fn check_same(&self, other: &FpPoly) -> Result<()> {
        if self.modulus == other.modulus {
            Ok(())
        } else {
            Err(Error::ModulusMismatch(self.modulus.get(), other.modulus.get()))
        }
    }

    pub fn add(&self, other: &FpPoly) -> Result<FpPoly> {
        self.check_same(other)?;
        let m = self.modulus;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| m.add(self.coeff(i), other.coeff(i))).collect();
        Ok(Self::from_residues(m, coeffs))
    }

    pub fn sub(&self, other: &FpPoly) -> Result<FpPoly> {
        self.check_same(other)?;
        let m = self.modulus;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| m.sub(self.coeff(i), other.coeff(i))).collect();
        Ok(Self::from_residues(m, coeffs))
    }

    /// Exact product in `Z_p[X]`.
    pub fn mul(&self, other: &FpPoly) -> Result<FpPoly> {
        self.check_same(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.modulus));
        }
        if self.modulus == PrimeModulus::TWO {
            let len = self.coeffs.len() + other.coeffs.len() - 1;
            let words = gf2::mul(&gf2::pack(&self.coeffs), &gf2::pack(&other.coeffs));
            return Ok(Self::from_residues(self.modulus, gf2::unpack(&words, len)));
        }
        Ok(self.mul_schoolbook(other))
    }

    /// Reference product, valid for every modulus. Iterates over the
    /// sparser operand's nonzero terms.
    pub(crate) fn mul_schoolbook(&self, other: &FpPoly) -> FpPoly {
        let m = self.modulus;
        if self.is_zero() || other.is_zero() {
            return Self::zero(m);
        }
        let (sparse, dense) =
            if self.support().count() <= other.support().count() { (self, other) } else { (other, self) };
        let mut out = vec![0u32; self.coeffs.len() + other.coeffs.len() - 1];
        for i in sparse.support() {
            let a = sparse.coeffs[i];
            for (j, &b) in dense.coeffs.iter().enumerate() {
                if b != 0 {
                    out[i + j] = m.add(out[i + j], m.mul(a, b));
                }
            }
        }
        Self::from_residues(m, out)
    }

    /// Folds every exponent modulo `n`, i.e. reduces modulo `X^n - 1`.
    ///
    /// Panics if `n == 0`.
    pub fn mod_cyclic(&self, n: usize) -> FpPoly {
        assert!(n > 0, "cyclic reduction needs a positive period");
        let m = self.modulus;
        let mut out = vec![0u32; n.min(self.coeffs.len())];
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c != 0 {
                out[i % n] = m.add(out[i % n], c);
            }
        }
        Self::from_residues(m, out)
    }

    /// Euclidean division: `self = divisor * q + r` with `deg r < deg divisor`.
    pub fn divrem(&self, divisor: &FpPoly) -> Result<(FpPoly, FpPoly)> {
        self.check_same(divisor)?;
        let m = self.modulus;
        let db = divisor.degree().ok_or(Error::DivisionByZero)?;
        if self.coeffs.len() <= db {
            return Ok((Self::zero(m), self.clone()));
        }
        let lead_inv = m.inv(divisor.coeffs[db]);
        let terms: Vec<(usize, u32)> = divisor.support().filter(|&j| j < db).map(|j| (j, divisor.coeffs[j])).collect();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0u32; rem.len() - db];
        for i in (db..rem.len()).rev() {
            let c = m.mul(rem[i], lead_inv);
            if c == 0 {
                continue;
            }
            quot[i - db] = c;
            rem[i] = 0;
            for &(j, bj) in &terms {
                let k = i - db + j;
                rem[k] = m.sub(rem[k], m.mul(c, bj));
            }
        }
        rem.truncate(db);
        Ok((Self::from_residues(m, quot), Self::from_residues(m, rem)))
    }

    /// Smallest `N <= max_n` such that `self` divides `X^N - 1`, if any.
    ///
    /// Such an `N` always exists when the constant term is nonzero; a zero
    /// constant term is rejected.
    pub fn order_of_divisor(&self, max_n: usize) -> Result<Option<usize>> {
        let m = self.modulus;
        if self.coeff(0) == 0 {
            return Err(Error::ZeroConstantTerm);
        }
        let d = self.degree().expect("nonzero constant term");
        if d == 0 {
            return Ok((max_n >= 1).then_some(1));
        }
        // Track r = X^N mod self; X^d = -(c_0 + ... + c_{d-1} X^{d-1}) / c_d.
        let lead_inv = m.inv(self.coeffs[d]);
        let fold: Vec<u32> = self.coeffs[..d].iter().map(|&c| m.sub(0, m.mul(c, lead_inv))).collect();
        let mut r = vec![0u32; d];
        r[0] = 1;
        for n in 1..=max_n {
            let top = r[d - 1];
            r.copy_within(0..d - 1, 1);
            r[0] = 0;
            if top != 0 {
                for (ri, &f) in r.iter_mut().zip(&fold) {
                    *ri = m.add(*ri, m.mul(top, f));
                }
            }
            if r[0] == 1 && r[1..].iter().all(|&c| c == 0) {
                return Ok(Some(n));
            }
        }
        Ok(None)
    }

    /// Coefficients as digits, lowest exponent first, padded to `len`.
    pub fn coefficient_word(&self, len: usize) -> String {
        (0..len.max(self.coeffs.len())).map(|i| char::from_digit(self.coeff(i), 36).unwrap_or('?')).collect()
    }
}

impl fmt::Display for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for i in self.support() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let c = self.coeffs[i];
            match (i, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "X")?,
                (1, c) => write!(f, "{c}X")?,
                (i, 1) => write!(f, "X^{i}")?,
                (i, c) => write!(f, "{c}X^{i}")?,
            }
        }
        Ok(())
    }
}
