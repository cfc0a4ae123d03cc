//! Cyclotomic divisors of a pattern and the Coven-Meyerowitz conditions.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use crate::arith;
use crate::fp_poly::cyclotomic;
use crate::pattern::RhythmicPattern;

/// `R_A = { d : Φ_d | A(X) }` and its prime-power part `S_A`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclotomicProfile {
    pub r: Vec<u64>,
    pub s: Vec<u64>,
    /// Largest `d` examined. `φ(d) > sqrt(d / 2)`, so no `d` beyond
    /// `2 deg² + 1` can have `φ(d) <= deg`.
    pub search_bound: u64,
}

impl CyclotomicProfile {
    pub fn contains_r(&self, d: u64) -> bool {
        self.r.binary_search(&d).is_ok()
    }

    /// `(T1)`: `size = ∏ p` over `p^α ∈ S_A`.
    pub fn satisfies_t1(&self, size: usize) -> bool {
        let mut prod: u128 = 1;
        for &s in &self.s {
            prod *= arith::prime_power_base(s).expect("S_A holds prime powers") as u128;
            if prod > size as u128 {
                return false;
            }
        }
        prod == size as u128
    }

    /// `(T2)`: products of prime powers from `S_A` with distinct bases lie
    /// in `R_A`.
    pub fn satisfies_t2(&self) -> bool {
        let mut groups: Vec<(u64, Vec<u64>)> = Vec::new();
        for &s in &self.s {
            let base = arith::prime_power_base(s).expect("S_A holds prime powers");
            match groups.iter_mut().find(|(b, _)| *b == base) {
                Some((_, v)) => v.push(s),
                None => groups.push((base, vec![s])),
            }
        }
        self.products_in_r(&groups, 1, 0)
    }

    fn products_in_r(&self, groups: &[(u64, Vec<u64>)], acc: u64, picked: usize) -> bool {
        let Some(((_, powers), rest)) = groups.split_first() else {
            return picked < 2 || self.contains_r(acc);
        };
        self.products_in_r(rest, acc, picked)
            && powers.iter().all(|&q| match acc.checked_mul(q) {
                Some(next) => self.products_in_r(rest, next, picked + 1),
                None => false,
            })
    }
}

/// Every `d <= 2 deg² + 1` with `φ(d) <= deg`, with the powers of `ζ_d`.
type Candidates = Arc<Vec<(u64, Vec<(f64, f64)>)>>;

fn candidates(deg: u64) -> Candidates {
    static CACHE: OnceLock<RwLock<HashMap<u64, Candidates>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(c) = cache.read().expect("candidate cache poisoned").get(&deg) {
        return Arc::clone(c);
    }
    let bound = 2 * deg * deg + 1;
    let phi = arith::totients_up_to(bound as usize);
    let list: Vec<(u64, Vec<(f64, f64)>)> = (1..=bound)
        .filter(|&d| phi[d as usize] <= deg)
        .map(|d| {
            let roots =
                (0..d).map(|r| (std::f64::consts::TAU * r as f64 / d as f64).sin_cos()).map(|(s, c)| (c, s)).collect();
            (d, roots)
        })
        .collect();
    let list = Arc::new(list);
    cache.write().expect("candidate cache poisoned").insert(deg, Arc::clone(&list));
    list
}

pub fn cyclotomic_profile(a: &RhythmicPattern) -> CyclotomicProfile {
    let deg = a.max_onset() as u64;
    let poly = a.to_int_poly();
    let mut r = Vec::new();
    for (d, roots) in candidates(deg).iter() {
        // |A(ζ_d)| far from zero rules Φ_d out; otherwise divide exactly.
        let (mut re, mut im) = (0.0f64, 0.0f64);
        for x in a.iter() {
            let (c, s) = roots[x % roots.len()];
            re += c;
            im += s;
        }
        if re.hypot(im) < 1e-6 && cyclotomic(*d).divides(&poly) {
            r.push(*d);
        }
    }
    let s = r.iter().copied().filter(|&d| arith::prime_power_base(d).is_some()).collect();
    CyclotomicProfile { r, s, search_bound: 2 * deg * deg + 1 }
}

pub fn check_t1(a: &RhythmicPattern) -> bool {
    cyclotomic_profile(a).satisfies_t1(a.len())
}

pub fn check_t2(a: &RhythmicPattern) -> bool {
    cyclotomic_profile(a).satisfies_t2()
}
