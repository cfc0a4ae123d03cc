//! Checks shared by the integration tests and the acceptance runner. Each
//! returns a short summary on success and a description of the first
//! counterexample otherwise.
#![allow(dead_code)]

use std::collections::BTreeSet;

use modcanon::construction::a_k;
use modcanon::cover::{fill, following_under_cover, lift_to_pattern, UnderCover};
use modcanon::oracle::BruteOutcome;
use modcanon::pattern::{char_word, donsets, is_compact, is_tiling, multiset_sum, Modulus, Word};
use modcanon::{
    brute_all_tilings, brute_minimal_complement, build_t, check_t1, check_t2, flatten_t, greedy_tile, predicted_counts,
    verify_tk_equals_vk, FpPoly, IntPoly, PrimeModulus, RhythmicPattern, SearchBudget,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Check = Result<String, String>;

pub const P2: PrimeModulus = PrimeModulus::TWO;
pub const P3: PrimeModulus = PrimeModulus::THREE;

pub const SIZES_0_1_N: [(usize, usize); 15] = [
    (2, 3),
    (3, 7),
    (4, 15),
    (5, 21),
    (6, 63),
    (7, 127),
    (8, 63),
    (9, 73),
    (10, 889),
    (11, 1533),
    (12, 3255),
    (13, 7905),
    (14, 11811),
    (15, 32767),
    (16, 255),
];

pub fn pat(s: &str) -> RhythmicPattern {
    s.parse().unwrap()
}

pub fn word(s: &str) -> Word {
    s.parse().unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Patterns `{0} ∪ S` for `S ⊆ {1, .., max}` with `min_len <= |A| <= max_len`.
pub fn small_patterns(max: usize, min_len: usize, max_len: usize) -> Vec<RhythmicPattern> {
    (0u32..1 << max)
        .map(|bits| std::iter::once(0).chain((1..=max).filter(|i| bits >> (i - 1) & 1 == 1)).collect::<Vec<_>>())
        .filter(|v| (min_len..=max_len).contains(&v.len()))
        .map(|v| RhythmicPattern::new(v).unwrap())
        .collect()
}

/// All binary words of a given length.
pub fn all_words(len: usize) -> impl Iterator<Item = Word> {
    (0u64..1 << len).map(move |bits| Word((0..len).map(|i| (bits >> i & 1) as u8).collect()))
}

fn fill_word(a: &RhythmicPattern, w: &Word) -> Word {
    fill(a, &UnderCover::new(0, w.clone(), P2)).expect("fills never stick mod 2")
}

fn ones(n: usize) -> Word {
    Word::ones(n)
}

fn zeros(n: usize) -> Word {
    Word::zeros(n)
}

fn cat(parts: &[Word]) -> Word {
    Word(parts.iter().flat_map(|w| w.0.iter().copied()).collect())
}

// ------------------------------------------------------ sizes of {0,1,n}

pub fn table1() -> Check {
    for (n, expected) in SIZES_0_1_N {
        let a = RhythmicPattern::new(vec![0, 1, n]).unwrap();
        let out = greedy_tile(&a, P2, 1 << 20);
        ensure(out.is_compact() && out.n == expected, || {
            format!("{{0,1,{n}}}: got {:?} N={}, want {expected}", out.status, out.n)
        })?;
        let b = out.entries_pattern().unwrap();
        ensure(is_compact(&a, &b, Modulus::Prime(P2)) == Some(expected), || format!("{{0,1,{n}}}: not compact"))?;
    }
    Ok(format!("{} rows", SIZES_0_1_N.len()))
}

// ------------------------------------------------------- power-of-two tiles

pub fn power_of_two_canon(k: u32) -> Check {
    let a = a_k(k);
    let counts = predicted_counts(k).unwrap();
    let out = greedy_tile(&a, P2, counts.n as usize);
    ensure(out.is_compact(), || format!("k={k}: greedy {:?}", out.status))?;
    ensure(out.n as u64 == counts.n, || format!("k={k}: N={} want {}", out.n, counts.n))?;
    ensure(out.entries.len() as u64 == counts.entries, || {
        format!("k={k}: #B={} want {}", out.entries.len(), counts.entries)
    })?;
    let b = out.entries_pattern().unwrap();
    let d = donsets(&a, &b, out.n, Modulus::Prime(P2)).map_err(|e| e.to_string())?;
    ensure(d.support_len() as u64 == counts.donsets, || {
        format!("k={k}: #D={} want {}", d.support_len(), counts.donsets)
    })?;
    ensure(d.iter().all(|(_, m)| m == 2), || format!("k={k}: a donset with excess other than 2"))?;
    ensure(3 * b.len() as u64 - 2 * d.support_len() as u64 == counts.n, || format!("k={k}: mass identity"))?;
    ensure(flatten_t(k).unwrap() == b, || format!("k={k}: flattened array differs from greedy entries"))?;
    ensure(verify_tk_equals_vk(k).unwrap(), || format!("k={k}: greedy does not walk T(k) row by row"))?;
    Ok(format!("k={k} N={} #B={} #D={}", counts.n, counts.entries, counts.donsets))
}

// ------------------------------------------------------ worked examples

pub fn worked_examples() -> Check {
    let p2 = Modulus::Prime(P2);
    let b2 = flatten_t(2).unwrap();
    ensure(b2 == pat("0,2,5,6,8,9,10"), || format!("B_2 = {b2}"))?;
    let b3 = flatten_t(3).unwrap();
    let b3_expected = pat(
        "0,2,4,6,9,10,13,14,16,17,18,20,21,22,27,28,29,30,32,34,35,36,37,38,41,42,43,44,45,46,48,49,50,51,52,53,54",
    );
    ensure(b3 == b3_expected, || format!("B_3 = {b3}"))?;
    let t2 = build_t(2).unwrap().to_string();
    ensure(t2 == "1010\n0110\n1110", || format!("T(2) = {t2}"))?;
    let t3 = build_t(3).unwrap().to_string();
    ensure(t3 == "10101010\n01100110\n11101110\n00011110\n10111110\n01111110\n11111110", || format!("T(3) = {t3}"))?;
    let v2 = greedy_tile(&a_k(2), P2, 100).entries_pattern().unwrap().to_word(12).unwrap().to_string();
    ensure(v2 == "101001101110", || format!("V(2) word {v2}"))?;
    let v2_rows: Vec<&str> = (0..3).map(|r| &v2[4 * r..4 * r + 4]).collect();
    ensure(v2_rows.join("\n") == t2 && verify_tk_equals_vk(2).unwrap(), || "V(2) != T(2)".into())?;

    let a = pat("0,1,4");
    let uc = modcanon::cover::extract_under_cover(&a, &[0, 2, 5], P2, 6, 4).map_err(|e| e.to_string())?;
    ensure(uc.word == word("0001"), || format!("UC_2(6) = {}", uc.word))?;
    let f = fill(&a, &uc).map_err(|e| e.to_string())?;
    ensure(f == word("1011"), || format!("B' = {f}"))?;
    let next = following_under_cover(&a, &[0, 2, 5], &uc, &f).map_err(|e| e.to_string())?;
    ensure(next.start == 10 && next.word == word("0011"), || format!("following {next}"))?;

    let uc3 = modcanon::cover::extract_under_cover(&pat("0,1,3"), &[0, 1, 4], P3, 1, 7).map_err(|e| e.to_string())?;
    ensure(uc3.word == word("2112101"), || format!("UC_3(1) = {}", uc3.word))?;

    let (a7, b7) = (pat("0,1,3"), pat("0,2,3"));
    ensure(is_tiling(&a7, &b7, 7, p2), || "({0,1,3},{0,2,3}) does not tile Z_7 mod 2".into())?;
    let d7 = donsets(&a7, &b7, 7, p2).map_err(|e| e.to_string())?;
    ensure(d7.iter().collect::<Vec<_>>() == [(3, 2)], || format!("donsets {d7:?}"))?;

    let out = greedy_tile(&pat("0,1,2,6,7,8"), P2, 1000);
    ensure(out.entries == [0, 3] && out.n == 12, || format!("{{0,1,2,6,7,8}} -> {:?} N={}", out.entries, out.n))?;

    let a3 = pat("0,1,3");
    let divisor = a3.to_poly(P3).mul(&FpPoly::x_pow_minus_one(P3, 1)).unwrap();
    let (q, r) = FpPoly::x_pow_minus_one(P3, 24).divrem(&divisor).unwrap();
    let expected_q = [
        (20, 1),
        (19, 1),
        (17, 2),
        (15, 2),
        (14, 2),
        (13, 2),
        (10, 2),
        (9, 1),
        (8, 2),
        (7, 1),
        (6, 1),
        (5, 1),
        (4, 2),
        (3, 2),
        (2, 1),
        (0, 1),
    ];
    let mut coeffs = vec![0i64; 21];
    for (e, c) in expected_q {
        coeffs[e] = c;
    }
    ensure(r.is_zero() && q == FpPoly::from_coeffs(P3, coeffs), || format!("quotient {q}"))?;
    let lifted = lift_to_pattern(&q, 24).map_err(|e| e.to_string())?;
    let expected_lift = pat("0,2,3,4,5,6,7,8,9,10,13,14,15,17,19,20,27,28,32,34,37,38,39,41");
    ensure(lifted == expected_lift, || format!("lift {lifted}"))?;
    ensure(is_tiling(&a3, &lifted, 24, Modulus::Prime(P3)), || "lifted pair does not tile Z_24 mod 3".into())?;
    Ok("11 examples".into())
}

// ------------------------------------------------------------- oracle

pub fn oracle_budget() -> SearchBudget {
    // For A ⊆ [0, 7] the forced search state is the residue window of the
    // last 7 positions, so mod 3 it repeats within 3^7 steps.
    SearchBudget { max_n: 5000, max_entries: 5000, node_limit: 10_000_000 }
}

pub fn oracle_agreement(max_onset: usize, min_len: usize, max_len: usize, primes: &[PrimeModulus]) -> Check {
    let budget = oracle_budget();
    let mut compact = 0;
    let mut stuck = 0;
    for a in small_patterns(max_onset, min_len, max_len) {
        for &p in primes {
            let g = greedy_tile(&a, p, budget.max_n);
            let BruteOutcome { best, complete, .. } = brute_minimal_complement(&a, p, budget);
            ensure(complete, || format!("{a} mod {p}: brute search hit its node limit"))?;
            if g.is_compact() {
                compact += 1;
                let (b, n) = best.ok_or_else(|| format!("{a} mod {p}: greedy found N={} but brute found none", g.n))?;
                ensure(b.onsets() == g.entries && n == g.n, || {
                    format!("{a} mod {p}: greedy {:?}/{} vs brute {b}/{n}", g.entries, g.n)
                })?;
            } else {
                stuck += 1;
                ensure(p != P2, || format!("{a}: greedy stuck mod 2: {:?}", g.status))?;
                ensure(best.is_none(), || format!("{a} mod {p}: greedy stuck but brute found {:?}", best))?;
            }
        }
    }
    Ok(format!("{compact} compact agreements, {stuck} stuck with no compact complement"))
}

// ------------------------------------------------------------- lemmas

pub fn lemma_recu() -> Check {
    let pair = pat("0,1");
    for n in 1..=32 {
        let uc = cat(&[zeros(1), ones(n), zeros(1)]);
        let want = cat(&[ones(n + 1), zeros(1)]);
        let got = fill_word(&pair, &uc);
        ensure(got == want, || format!("n={n}: {got}"))?;
    }
    Ok("n = 1..32".into())
}

pub fn lemma_second_half_filled() -> Check {
    let mut cases = 0;
    for k in 1..=6u32 {
        for n in 0..((1usize << k).saturating_sub(2)) {
            let uc = cat(&[zeros(1), ones(n), zeros(1)]);
            let got = fill_word(&a_k(k), &uc);
            ensure(got == cat(&[ones(n + 1), zeros(1)]), || format!("k={k} n={n}: {got}"))?;
            cases += 1;
        }
    }
    Ok(format!("{cases} cases, k <= 6"))
}

/// `fin` read literally: `0 1^(2^k-2) 0` fills to `1^(2^k)`.
pub fn lemma_fin_as_stated() -> Check {
    for k in 1..=6u32 {
        let w = 1usize << k;
        let got = fill_word(&a_k(k), &cat(&[zeros(1), ones(w - 2), zeros(1)]));
        ensure(got == ones(w), || format!("k={k}: fill gives {got}, expected {}", ones(w)))?;
    }
    Ok("k <= 6".into())
}

/// `fin` as used to close T(k): the entries are `1^(2^k-1) 0`, the window
/// is then fully covered, and with the onset of the previous row at the
/// last index, `0 1^(2^k-2) 1` fills to `1^(2^k)`.
pub fn lemma_fin_closing() -> Check {
    for k in 1..=6u32 {
        let w = 1usize << k;
        let a = a_k(k);
        let uc = UnderCover::new(0, cat(&[zeros(1), ones(w - 2), zeros(1)]), P2);
        let got = fill(&a, &uc).unwrap();
        ensure(got == cat(&[ones(w - 1), zeros(1)]), || format!("k={k}: entries {got}"))?;
        let covered = modcanon::cover::apply_fill(&a, &uc, &got);
        ensure(covered == ones(w), || format!("k={k}: window after filling {covered}"))?;
        let closing = fill_word(&a, &cat(&[zeros(1), ones(w - 2), ones(1)]));
        ensure(closing == ones(w), || format!("k={k}: 0 1^(2^k-2) 1 fills to {closing}"))?;
    }
    Ok("k <= 6".into())
}

pub fn lemma_double_size() -> Check {
    for k in 0..=5u32 {
        let h = (1usize << k) - 1;
        let uc = cat(&[ones(h), zeros(1), ones(h), zeros(1)]);
        let want = cat(&[zeros(h), ones(1), ones(h), zeros(1)]);
        let got = fill_word(&a_k(k + 1), &uc);
        ensure(got == want, || format!("k={k}: {got}"))?;
    }
    Ok("k = 0..5".into())
}

/// Over every word of length `2^k - 1`, which covers the rows of `T(k)`.
pub fn lemma_one_at_half_end() -> Check {
    let mut cases = 0;
    for k in 1..=4u32 {
        let a = a_k(k);
        let len = (1usize << k) - 1;
        for w in all_words(len) {
            let f0 = fill_word(&a, &cat(&[w.clone(), zeros(1)]));
            if f0.0[len] != 0 {
                continue;
            }
            let b = Word(f0.0[..len].to_vec());
            let f1 = fill_word(&a, &cat(&[w.clone(), ones(1)]));
            ensure(f1 == cat(&[b.clone(), ones(1)]), || format!("k={k} A={w}: A.1 fills to {f1}, want {b}1"))?;
            cases += 1;
        }
    }
    Ok(format!("{cases} words, k <= 4"))
}

pub fn lemma_repetition() -> Check {
    let mut cases = 0;
    for k in 1..=4u32 {
        let len = (1usize << k) - 1;
        for w in all_words(len) {
            for letter in [0u8, 1] {
                let uc = cat(&[w.clone(), Word(vec![letter])]);
                let f = fill_word(&a_k(k), &uc);
                if f.0[len] != 0 {
                    continue;
                }
                for n in 1..=3u32 {
                    let got = fill_word(&a_k(k + n - 1), &uc.repeat(n as usize));
                    ensure(got == f.repeat(n as usize), || format!("k={k} n={n} uc={uc}: {got}"))?;
                    cases += 1;
                }
            }
        }
    }
    Ok(format!("{cases} cases, k <= 4, n <= 3"))
}

pub fn lemma_konsets() -> Check {
    let mut canons = 0;
    for a in small_patterns(7, 1, 4) {
        let out = brute_minimal_complement(&a, P2, oracle_budget());
        let (b, n) = out.best.ok_or_else(|| format!("{a}: no minimal canon found"))?;
        let c = multiset_sum(&a, &b, Some(n));
        ensure(c.max_multiplicity() as usize <= a.len(), || format!("{a}: a {}-onset", c.max_multiplicity()))?;
        canons += 1;
    }
    Ok(format!("{canons} minimal canons"))
}

// ------------------------------------------------ random property suites

#[derive(Debug, Clone)]
pub struct Instance {
    pub a: RhythmicPattern,
    pub b: RhythmicPattern,
    pub n: usize,
    pub modulus: Modulus,
}

fn random_pattern(rng: &mut ChaCha8Rng, max: usize) -> RhythmicPattern {
    let density = rng.gen_range(0.05..0.6);
    let mut v = vec![0];
    v.extend((1..=max).filter(|_| rng.gen_bool(density)));
    RhythmicPattern::new(v).unwrap()
}

fn random_modulus(rng: &mut ChaCha8Rng) -> Modulus {
    match rng.gen_range(0..4) {
        0 => Modulus::Exact,
        1 => Modulus::Prime(P2),
        2 => Modulus::Prime(P3),
        _ => Modulus::Prime(PrimeModulus::new(5).unwrap()),
    }
}

/// Half arbitrary pairs in `[0, 24]`, half known canons (exact census
/// pairs and greedy compact canons mod 2 and 3).
pub fn random_instances(count: usize, seed: u64) -> Vec<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let census: Vec<(usize, RhythmicPattern, RhythmicPattern)> =
        (1..=24).flat_map(|n| brute_all_tilings(n).unwrap().into_iter().map(move |(a, b)| (n, a, b))).collect();
    (0..count)
        .map(|i| match i % 4 {
            0 | 1 => {
                let a = random_pattern(&mut rng, 24);
                let b = random_pattern(&mut rng, 24);
                Instance { a, b, n: rng.gen_range(1..=24), modulus: random_modulus(&mut rng) }
            }
            2 => {
                let (n, a, b) = census[rng.gen_range(0..census.len())].clone();
                if rng.gen_bool(0.5) {
                    Instance { a, b, n, modulus: Modulus::Exact }
                } else {
                    Instance { a: b, b: a, n, modulus: Modulus::Exact }
                }
            }
            _ => loop {
                let p = if rng.gen_bool(0.5) { P2 } else { P3 };
                let a = random_pattern(&mut rng, 10);
                let g = greedy_tile(&a, p, 4000);
                if g.is_compact() {
                    break Instance { a, b: g.entries_pattern().unwrap(), n: g.n, modulus: Modulus::Prime(p) };
                }
            },
        })
        .collect()
}

fn poly_route(inst: &Instance) -> bool {
    match inst.modulus {
        Modulus::Prime(p) => {
            inst.a.to_poly(p).mul(&inst.b.to_poly(p)).unwrap().mod_cyclic(inst.n) == FpPoly::all_ones(p, inst.n)
        }
        Modulus::Exact => {
            let prod: IntPoly = inst.a.to_int_poly().mul(&inst.b.to_int_poly());
            let mut folded = vec![0i64; inst.n];
            for (e, &c) in prod.coeffs().iter().enumerate() {
                folded[e % inst.n] += c;
            }
            folded.iter().all(|&c| c == 1)
        }
    }
}

fn word_route(inst: &Instance) -> bool {
    let c = multiset_sum(&inst.a, &inst.b, Some(inst.n));
    match inst.modulus {
        Modulus::Prime(p) => char_word(&c, p, inst.n).unwrap() == ones(inst.n),
        Modulus::Exact => (0..inst.n).all(|t| c.multiplicity(t) == 1),
    }
}

/// Multiset, polynomial and word verdicts for one instance.
pub fn routes(inst: &Instance) -> (bool, bool, bool) {
    (is_tiling(&inst.a, &inst.b, inst.n, inst.modulus), poly_route(inst), word_route(inst))
}

pub fn definition_equivalence(instances: &[Instance]) -> Check {
    let mut positive = 0;
    for inst in instances {
        let (m, p, w) = routes(inst);
        ensure(m == p && p == w, || format!("{inst:?}: multiset {m}, polynomial {p}, word {w}"))?;
        positive += m as usize;
    }
    ensure(positive > 0 && positive < instances.len(), || "degenerate sample".into())?;
    Ok(format!("{} instances, {positive} tilings", instances.len()))
}

pub fn duality(instances: &[Instance]) -> Check {
    let mut canons = 0;
    for inst in instances {
        let forward = is_tiling(&inst.a, &inst.b, inst.n, inst.modulus);
        ensure(forward == is_tiling(&inst.b, &inst.a, inst.n, inst.modulus), || format!("{inst:?}: duality"))?;
        if forward {
            canons += 1;
            let d1 = donsets(&inst.a, &inst.b, inst.n, inst.modulus).unwrap();
            let d2 = donsets(&inst.b, &inst.a, inst.n, inst.modulus).unwrap();
            ensure(d1 == d2, || format!("{inst:?}: donsets differ"))?;
            if inst.modulus == Modulus::Prime(P2) {
                let excess = (inst.a.len() * inst.b.len()) as u64 - inst.n as u64;
                ensure(excess == d1.total(), || format!("{inst:?}: mass identity"))?;
            }
        }
    }
    Ok(format!("{} instances, {canons} canons", instances.len()))
}

/// Exact tilings only; patterns are reduced into `[0, N)` first.
pub fn concatenation(instances: &[Instance], census_max: usize) -> Check {
    let mut checked = 0;
    let mut tilings = 0;
    let mut check = |a: &RhythmicPattern, b: &RhythmicPattern, n: usize| -> Result<(), String> {
        let base = is_tiling(a, b, n, Modulus::Exact);
        for k in 1..=3 {
            let ak = a.concatenate(k, n).map_err(|e| e.to_string())?;
            let lifted = is_tiling(&ak, b, k * n, Modulus::Exact);
            ensure(base == lifted, || format!("A={a} B={b} N={n} k={k}: {base} vs {lifted}"))?;
            checked += 1;
        }
        tilings += base as usize;
        Ok(())
    };
    for n in 1..=census_max {
        for (a, b) in brute_all_tilings(n).unwrap() {
            check(&a, &b, n)?;
            check(&b, &a, n)?;
        }
    }
    for inst in instances {
        let reduce = |p: &RhythmicPattern| {
            let set: BTreeSet<usize> = p.iter().map(|x| x % inst.n).collect();
            RhythmicPattern::new(set.into_iter().collect()).unwrap()
        };
        check(&reduce(&inst.a), &reduce(&inst.b), inst.n)?;
    }
    Ok(format!("{checked} concatenations, {tilings} of tilings"))
}

// ------------------------------------------------------- census and CM

pub fn cm_on_census(max_n: usize) -> Check {
    let mut tiles: BTreeSet<(usize, RhythmicPattern)> = BTreeSet::new();
    for n in 1..=max_n {
        for (a, b) in brute_all_tilings(n).unwrap() {
            tiles.insert((n, a));
            tiles.insert((n, b));
        }
    }
    let tiles: Vec<(usize, RhythmicPattern)> = tiles.into_iter().collect();
    use rayon::prelude::*;
    let failures: Vec<String> = tiles
        .par_iter()
        .filter_map(|(n, a)| {
            if !check_t1(a) {
                return Some(format!("T1 fails for tile {a} of Z_{n}"));
            }
            let t2 = check_t2(a);
            let primes = modcanon::arith::factorize(a.len() as u64).len();
            if primes <= 2 && !t2 {
                return Some(format!("T2 fails for tile {a} of Z_{n} with {} elements", a.len()));
            }
            if t2 {
                for k in 2..=3 {
                    let ak = match a.concatenate(k, *n) {
                        Ok(ak) => ak,
                        Err(e) => return Some(format!("{k}-concatenation of {a} (N={n}): {e}")),
                    };
                    if !check_t2(&ak) {
                        return Some(format!("T2 not preserved by {k}-concatenation of {a} (N={n})"));
                    }
                }
            }
            None
        })
        .collect();
    match failures.first() {
        Some(f) => Err(format!("{} counterexamples, first: {f}", failures.len())),
        None => Ok(format!("{} tiles of Z_N, N <= {max_n}", tiles.len())),
    }
}
