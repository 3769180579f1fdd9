//! Independent reference implementations shared by the property tests and
//! the acceptance binary. Nothing here calls into the code under test except
//! to obtain the values being compared.
#![allow(dead_code)]

use std::collections::BTreeSet;

use num_bigint::BigUint;
use rand::rngs::StdRng;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};

use cwc_core::bounds::{binomial, gilbert_lb, graham_sloane_lb, johnson_ub};
use cwc_core::rscode::{build_rs_base, GridIndex};
use cwc_core::verify::{brute_force_optimum, check_min_distance_at_least, min_distance, DistanceCheck};
use cwc_core::{CodeBook, Codeword, CwcError, FieldElement, FieldSpec};

pub const FIELD_ORDERS: [u32; 10] = [2, 3, 4, 5, 7, 8, 9, 11, 13, 16];

fn digits(mut v: usize, p: u32, m: usize) -> Vec<u32> {
    (0..m)
        .map(|_| {
            let d = (v % p as usize) as u32;
            v /= p as usize;
            d
        })
        .collect()
}

/// Product of two residues modulo the monic `x^m + low[m-1] x^(m-1) + ... + low[0]`,
/// both encoded as base-`p` digit strings with the constant term first.
pub fn residue_mul(a: usize, b: usize, low: &[u32], p: u32) -> usize {
    let m = low.len();
    let (da, db) = (digits(a, p, m), digits(b, p, m));
    let mut prod = vec![0u32; 2 * m];
    for i in 0..m {
        for j in 0..m {
            prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
        }
    }
    for k in (m..2 * m).rev() {
        let lead = prod[k];
        prod[k] = 0;
        for (i, &c) in low.iter().enumerate() {
            prod[k - m + i] = (prod[k - m + i] + p * p - lead * c % p) % p;
        }
    }
    prod[..m].iter().rev().fold(0, |acc, &d| acc * p as usize + d as usize)
}

pub fn has_zero_divisors(low: &[u32], p: u32) -> bool {
    let q = (p as usize).pow(low.len() as u32);
    (1..q).any(|a| (1..q).any(|b| residue_mul(a, b, low, p) == 0))
}

/// Field axioms, inverses, a cyclic multiplicative group, Frobenius, and a
/// modulus that is the smallest irreducible and agrees with residue arithmetic.
pub fn check_field(q: u32) -> Result<(), String> {
    let f = FieldSpec::with_order(q).map_err(|e| e.to_string())?;
    let fail = |what: &str| Err(format!("GF({q}): {what}"));
    let els: Vec<FieldElement> = f.elements().collect();
    if els.len() != q as usize {
        return fail("element count");
    }
    for &a in &els {
        if f.add(a, FieldElement::ZERO) != a
            || f.mul(a, FieldElement::ONE) != a
            || f.add(a, f.neg(a)) != FieldElement::ZERO
        {
            return fail("identities");
        }
        if a != FieldElement::ZERO && f.inv(a).ok().map(|b| f.mul(a, b)) != Some(FieldElement::ONE) {
            return fail("inverse");
        }
        if f.pow(a, q as u64) != a {
            return fail("a^q = a");
        }
        for &b in &els {
            if f.add(a, b) != f.add(b, a) || f.mul(a, b) != f.mul(b, a) || f.sub(f.add(a, b), b) != a {
                return fail("commutativity");
            }
            let p = f.p() as u64;
            if f.pow(f.add(a, b), p) != f.add(f.pow(a, p), f.pow(b, p)) {
                return fail("frobenius");
            }
            for &c in &els {
                if f.add(f.add(a, b), c) != f.add(a, f.add(b, c))
                    || f.mul(f.mul(a, b), c) != f.mul(a, f.mul(b, c))
                    || f.mul(a, f.add(b, c)) != f.add(f.mul(a, b), f.mul(a, c))
                {
                    return fail("associativity or distributivity");
                }
            }
        }
    }
    if f.inv(FieldElement::ZERO).is_ok() {
        return fail("zero has an inverse");
    }
    let qq = q as u64;
    if !els.iter().skip(1).any(|&g| (1..qq - 1).all(|k| f.pow(g, k) != FieldElement::ONE)) {
        return fail("no generator");
    }
    if f.m() > 1 {
        let (p, m) = (f.p(), f.m() as usize);
        let low = f.modulus();
        if low.len() != m || has_zero_divisors(low, p) {
            return fail("modulus is not irreducible");
        }
        let encoding = low.iter().rev().fold(0usize, |acc, &c| acc * p as usize + c as usize);
        if (0..encoding).any(|smaller| !has_zero_divisors(&digits(smaller, p, m), p)) {
            return fail("a smaller irreducible exists");
        }
        for a in 0..q as usize {
            for b in 0..q as usize {
                if f.mul(els[a], els[b]).index() != residue_mul(a, b, low, p) {
                    return fail("multiplication disagrees with residue arithmetic");
                }
            }
        }
    } else {
        for x in 0..q as usize {
            for y in 0..q as usize {
                if f.add(els[x], els[y]).index() != (x + y) % q as usize
                    || f.mul(els[x], els[y]).index() != x * y % q as usize
                {
                    return fail("prime field disagrees with integers");
                }
            }
        }
    }
    Ok(())
}

/// Supports of all evaluation words of polynomials of degree < r over Z/p,
/// evaluated at 0..w with integer arithmetic.
pub fn oracle_supports(p: usize, r: usize, w: usize) -> BTreeSet<Vec<usize>> {
    let mut out = BTreeSet::new();
    for k in 0..p.pow(r as u32) {
        let coeffs: Vec<usize> = (0..r).map(|i| k / p.pow(i as u32) % p).collect();
        let support: Vec<usize> = (0..w)
            .map(|x| {
                let value = coeffs.iter().rev().fold(0, |acc, &c| (acc * x + c) % p);
                x * p + value
            })
            .collect();
        out.insert(support);
    }
    out
}

/// Exhaustive pairwise intersection check of the prime-field base code.
/// Returns the largest intersection found.
pub fn check_rs_intersections(p: u32, r: usize, w: usize) -> Result<u32, String> {
    let tag = format!("q={p} r={r} w={w}");
    let field = FieldSpec::new(p, 1).map_err(|e| e.to_string())?;
    let grid = GridIndex::first(&field, w).map_err(|e| e.to_string())?;
    let book = build_rs_base(&field, r, &grid).map_err(|e| e.to_string())?;
    if book.len() != (p as usize).pow(r as u32) {
        return Err(format!("{tag}: size {}", book.len()));
    }
    let mut worst = 0;
    for (i, a) in book.words.iter().enumerate() {
        if a.weight() as usize != w {
            return Err(format!("{tag}: word {i} has weight {}", a.weight()));
        }
        for b in &book.words[i + 1..] {
            worst = worst.max(a.intersection(b));
        }
    }
    if worst as usize > r - 1 {
        return Err(format!("{tag}: intersection {worst} exceeds r-1"));
    }
    if book.len() > 1 {
        if worst as usize != r - 1 {
            return Err(format!("{tag}: bound r-1 not attained ({worst})"));
        }
        let d = min_distance(&book).map_err(|e| e.to_string())?.distance as usize;
        if d != 2 * (w + 1 - r) {
            return Err(format!("{tag}: distance {d}"));
        }
    }
    let got: BTreeSet<Vec<usize>> = book.words.iter().map(|c| c.support().collect()).collect();
    if got != oracle_supports(p as usize, r, w) {
        return Err(format!("{tag}: supports differ from the integer evaluation"));
    }
    Ok(worst)
}

/// A random book of plain bit vectors alongside its packed form: mostly
/// constant weight, occasionally off-weight or repeated words.
pub fn random_book(rng: &mut StdRng) -> (CodeBook, Vec<Vec<bool>>) {
    let n = rng.gen_range(1..=200);
    let w = rng.gen_range(0..=n);
    let size = rng.gen_range(2..=40);
    let mut book = CodeBook::new(n, w, 2);
    let mut plain = Vec::with_capacity(size);
    for _ in 0..size {
        let weight = if rng.gen_bool(0.8) { w } else { rng.gen_range(0..=n) };
        let support = if !plain.is_empty() && rng.gen_bool(0.05) {
            let prev: &Vec<bool> = &plain[rng.gen_range(0..plain.len())];
            (0..n).filter(|&i| prev[i]).collect::<Vec<_>>()
        } else {
            sample(rng, n, weight).into_vec()
        };
        let word = Codeword::from_support(n, &support).unwrap();
        plain.push((0..n).map(|i| word.get(i)).collect());
        book.words.push(word);
    }
    (book, plain)
}

pub fn plain_distance(a: &[bool], b: &[bool]) -> u32 {
    a.iter().zip(b).filter(|(x, y)| x != y).count() as u32
}

/// Minimum distance and the first pair attaining it, by nested loops.
pub fn naive_min(plain: &[Vec<bool>]) -> (u32, (usize, usize)) {
    let mut best = (u32::MAX, (0, 0));
    for i in 0..plain.len() {
        for j in i + 1..plain.len() {
            let d = plain_distance(&plain[i], &plain[j]);
            if d < best.0 {
                best = (d, (i, j));
            }
        }
    }
    best
}

/// Exact and threshold distance modes against the naive reference on
/// `rounds` random books.
pub fn differential_popcount(rounds: usize, seed: u64) -> Result<(), String> {
    let mut rng = StdRng::seed_from_u64(seed);
    for round in 0..rounds {
        let (book, plain) = random_book(&mut rng);
        let (d, pair) = naive_min(&plain);
        let got = min_distance(&book).map_err(|e| e.to_string())?;
        if (got.distance, got.pair) != (d, pair) {
            return Err(format!("round {round}: kernel {:?} vs naive {:?}", (got.distance, got.pair), (d, pair)));
        }
        let threshold = rng.gen_range(0..=d + 2);
        match check_min_distance_at_least(&book, threshold) {
            DistanceCheck::AtLeast(t) if t == threshold && d >= threshold => {}
            DistanceCheck::Below { distance, pair: (i, j) }
                if d < threshold && distance < threshold && plain_distance(&plain[i], &plain[j]) == distance => {}
            other => return Err(format!("round {round}: threshold {threshold} gave {other:?} with d={d}")),
        }
    }
    Ok(())
}

pub const ORACLE_CAP: u64 = 5000;
pub const ORACLE_BUDGET: u64 = 250_000;

pub fn exact_optimum(n: usize, d: usize, w: usize) -> Option<u64> {
    match brute_force_optimum(n, d, w, ORACLE_CAP, ORACLE_BUDGET) {
        Ok(v) => Some(v),
        Err(CwcError::SearchLimit(_)) => None,
        Err(e) => panic!("A({n},{d},{w}): {e}"),
    }
}

#[derive(Debug, Default)]
pub struct OracleSweep {
    pub decided: usize,
    pub undecided: Vec<String>,
    pub violations: Vec<String>,
}

/// Every `(n, d, w)` with `C(n, w) <= ORACLE_CAP`, `w <= n/2` and even
/// `4 <= d <= 2w`; the other weights follow by complementation and the
/// other distances are counting facts.
pub fn oracle_sweep() -> OracleSweep {
    let mut out = OracleSweep::default();
    for n in 2..=40usize {
        for w in 1..=n / 2 {
            if binomial(n as u64, w as u64) > BigUint::from(ORACLE_CAP) {
                continue;
            }
            for d in (4..=2 * w).step_by(2) {
                let Some(a) = exact_optimum(n, d, w) else {
                    out.undecided.push(format!("A({n},{d},{w})"));
                    continue;
                };
                out.decided += 1;
                let (n64, d64, w64) = (n as u64, d as u64, w as u64);
                let a_big = BigUint::from(a);
                if a_big > johnson_ub(n64, d64, w64).unwrap().ceil() {
                    out.violations.push(format!("A({n},{d},{w}) = {a} above johnson"));
                }
                if a_big < gilbert_lb(n64, d64, w64).unwrap().ceil() {
                    out.violations.push(format!("A({n},{d},{w}) = {a} below gilbert"));
                }
                if a_big < graham_sloane_lb(n64, d64, w64).unwrap().ceil() {
                    out.violations.push(format!("A({n},{d},{w}) = {a} below graham-sloane"));
                }
            }
        }
    }
    out
}
