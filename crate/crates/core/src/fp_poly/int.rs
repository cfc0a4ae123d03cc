use std::collections::HashMap;
use std::fmt;
use std::sync::{OnceLock, RwLock};

use crate::arith;

/// Dense polynomial with signed integer coefficients, lowest exponent first.
/// No trailing zero coefficient.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<i64>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    /// `sum X^e` over the exponents, with repeats accumulating.
    pub fn from_exponents<I: IntoIterator<Item = usize>>(exps: I) -> Self {
        let mut coeffs = Vec::new();
        for e in exps {
            if e >= coeffs.len() {
                coeffs.resize(e + 1, 0);
            }
            coeffs[e] += 1;
        }
        Self::new(coeffs)
    }

    /// `X^n - 1`.
    pub fn x_pow_minus_one(n: usize) -> Self {
        let mut c = vec![0i64; n + 1];
        c[0] -= 1;
        c[n] += 1;
        Self::new(c)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Value at `X = 1`.
    pub fn eval_one(&self) -> i64 {
        self.coeffs.iter().sum()
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![0i64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = a
                    .checked_mul(b)
                    .and_then(|t| out[i + j].checked_add(t))
                    .expect("integer polynomial coefficient overflow");
            }
        }
        Self::new(out)
    }

    /// Exact quotient `dividend / self` over the integers, if it exists.
    ///
    /// Long division; each quotient coefficient must be an integer, which for
    /// the monic cyclotomic divisors used throughout is automatic.
    pub fn exact_div(&self, dividend: &IntPoly) -> Option<IntPoly> {
        let db = self.degree().expect("division by the zero polynomial");
        let lead = self.coeffs[db];
        if dividend.is_zero() {
            return Some(Self::zero());
        }
        if dividend.coeffs.len() <= db {
            return None;
        }
        let mut rem = dividend.coeffs.clone();
        let mut quot = vec![0i64; rem.len() - db];
        for i in (db..rem.len()).rev() {
            if rem[i] == 0 {
                continue;
            }
            if rem[i] % lead != 0 {
                return None;
            }
            let c = rem[i] / lead;
            quot[i - db] = c;
            for (j, &b) in self.coeffs.iter().enumerate() {
                if b != 0 {
                    rem[i - db + j] = c
                        .checked_mul(b)
                        .and_then(|t| rem[i - db + j].checked_sub(t))
                        .expect("integer polynomial coefficient overflow");
                }
            }
        }
        rem[..db].iter().all(|&c| c == 0).then(|| Self::new(quot))
    }

    /// True iff `self` divides `other` exactly in `Z[X]`.
    pub fn divides(&self, other: &IntPoly) -> bool {
        self.exact_div(other).is_some()
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else { "+" };
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.unsigned_abs();
            match (i, a) {
                (0, a) => write!(f, "{a}")?,
                (1, 1) => write!(f, "X")?,
                (1, a) => write!(f, "{a}X")?,
                (i, 1) => write!(f, "X^{i}")?,
                (i, a) => write!(f, "{a}X^{i}")?,
            }
        }
        Ok(())
    }
}

fn cache() -> &'static RwLock<HashMap<u64, IntPoly>> {
    static CACHE: OnceLock<RwLock<HashMap<u64, IntPoly>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// The `d`-th cyclotomic polynomial, memoised per process.
///
/// Computed as `X^d - 1` divided successively by `Phi_e` for every proper
/// divisor `e` of `d`.
pub fn cyclotomic(d: u64) -> IntPoly {
    assert!(d >= 1, "cyclotomic index must be positive");
    if let Some(p) = cache().read().expect("cyclotomic cache poisoned").get(&d) {
        return p.clone();
    }
    let mut acc = IntPoly::x_pow_minus_one(d as usize);
    for e in arith::divisors(d) {
        if e == d {
            break;
        }
        acc = cyclotomic(e).exact_div(&acc).expect("Phi_e divides X^d - 1");
    }
    cache().write().expect("cyclotomic cache poisoned").insert(d, acc.clone());
    acc
}
