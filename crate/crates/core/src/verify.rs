//! Exact verification of constant weight code claims.
//!
//! Distances are popcounts of XORs over packed limbs. The pair space is split
//! by first index across rayon workers and combined by a min-reduction keyed
//! on `(distance, i, j)`, so results do not depend on the worker count.

use num_bigint::BigUint;
use rayon::prelude::*;

use crate::bounds::{binomial, JohnsonTable};
use crate::clique::Graph;
use crate::codebook::CodeBook;
use crate::error::{CwcError, Result};

/// Default cap on `C(n, w)` for [`brute_force_optimum`].
pub const BRUTE_FORCE_CAP: u64 = 5000;
/// Default node budget for [`brute_force_optimum`].
pub const BRUTE_FORCE_NODES: u64 = 20_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightReport {
    pub pass: bool,
    /// `(word index, actual weight)` for every word of the wrong weight.
    pub failures: Vec<(usize, u32)>,
    pub warning: Option<String>,
}

pub fn check_constant_weight(book: &CodeBook) -> WeightReport {
    let failures: Vec<(usize, u32)> = book
        .words
        .iter()
        .enumerate()
        .filter(|(_, word)| word.weight() as usize != book.w || word.len() != book.n)
        .map(|(i, word)| (i, word.weight()))
        .collect();
    WeightReport {
        pass: failures.is_empty(),
        failures,
        warning: book.is_empty().then(|| "empty book: constant weight holds vacuously".to_string()),
    }
}

/// Contiguous copy of a book's limbs.
struct Packed {
    stride: usize,
    data: Vec<u64>,
}

impl Packed {
    fn new(book: &CodeBook) -> Self {
        let stride = crate::codebook::limbs_for(book.n).max(1);
        let mut data = Vec::with_capacity(stride * book.len());
        for word in &book.words {
            let limbs = word.limbs();
            data.extend_from_slice(limbs);
            data.extend(std::iter::repeat_n(0, stride - limbs.len()));
        }
        Packed { stride, data }
    }

    fn len(&self) -> usize {
        self.data.len() / self.stride
    }

    #[inline]
    fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.stride..(i + 1) * self.stride]
    }

    /// Smallest `(distance, j)` over `j > i`.
    fn row_min(&self, i: usize) -> Option<(u32, usize)> {
        let a = self.row(i);
        let mut best: Option<(u32, usize)> = None;
        let mut check = |d: u32, j: usize| {
            if best.is_none_or(|(bd, _)| d < bd) {
                best = Some((d, j));
            }
        };
        match self.stride {
            1 => {
                let a0 = a[0];
                for j in i + 1..self.len() {
                    check((a0 ^ self.data[j]).count_ones(), j);
                }
            }
            2 => {
                let (a0, a1) = (a[0], a[1]);
                for (k, b) in self.data[(i + 1) * 2..].chunks_exact(2).enumerate() {
                    check((a0 ^ b[0]).count_ones() + (a1 ^ b[1]).count_ones(), i + 1 + k);
                }
            }
            _ => {
                for j in i + 1..self.len() {
                    let d = a.iter().zip(self.row(j)).map(|(x, y)| (x ^ y).count_ones()).sum();
                    check(d, j);
                }
            }
        }
        best
    }

    /// First `j > i` with distance below `t`.
    fn row_first_below(&self, i: usize, t: u32) -> Option<(u32, usize)> {
        let a = self.row(i);
        (i + 1..self.len()).find_map(|j| {
            let d: u32 = a.iter().zip(self.row(j)).map(|(x, y)| (x ^ y).count_ones()).sum();
            (d < t).then_some((d, j))
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MinDistance {
    pub distance: u32,
    /// Lexicographically smallest pair attaining the minimum.
    pub pair: (usize, usize),
}

/// Exact minimum distance over all pairs.
pub fn min_distance(book: &CodeBook) -> Result<MinDistance> {
    if book.len() < 2 {
        return Err(CwcError::InvalidParameter(format!(
            "minimum distance needs at least 2 words, book has {}",
            book.len()
        )));
    }
    let packed = Packed::new(book);
    let (distance, i, j) = (0..packed.len() - 1)
        .into_par_iter()
        .filter_map(|i| packed.row_min(i).map(|(d, j)| (d, i, j)))
        .min()
        .expect("at least one pair");
    Ok(MinDistance { distance, pair: (i, j) })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DistanceCheck {
    /// Every pair is at distance `>= t`.
    AtLeast(u32),
    /// The first pair (in index order) below the threshold.
    Below { distance: u32, pair: (usize, usize) },
}

/// Early-exit check that all pairwise distances are at least `t`.
pub fn check_min_distance_at_least(book: &CodeBook, t: u32) -> DistanceCheck {
    if book.len() < 2 {
        return DistanceCheck::AtLeast(t);
    }
    let packed = Packed::new(book);
    let hit =
        (0..packed.len() - 1).into_par_iter().find_map_first(|i| packed.row_first_below(i, t).map(|(d, j)| (d, i, j)));
    match hit {
        Some((distance, i, j)) => DistanceCheck::Below { distance, pair: (i, j) },
        None => DistanceCheck::AtLeast(t),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub n: usize,
    pub w: usize,
    pub size: usize,
    pub d_claimed: usize,
    /// `None` for books with fewer than two words.
    pub d_exact: Option<u32>,
    pub witness: Option<(usize, usize)>,
    pub weight_failures: Vec<(usize, u32)>,
    pub duplicate: Option<(usize, usize)>,
    pub johnson_ub: BigUint,
    pub pass: bool,
}

impl Certificate {
    pub fn summary(&self) -> String {
        let d = self.d_exact.map_or("-".to_string(), |d| d.to_string());
        format!("({}, {}, {}, {})", self.n, d, self.w, self.size)
    }

    pub fn failure_reason(&self) -> Option<String> {
        if self.pass {
            return None;
        }
        if let Some(&(i, wt)) = self.weight_failures.first() {
            return Some(format!("word {i} has weight {wt}, expected {}", self.w));
        }
        if let Some((a, b)) = self.duplicate {
            return Some(format!("words {a} and {b} are identical"));
        }
        if let (Some(d), Some((a, b))) = (self.d_exact, self.witness) {
            if (d as usize) < self.d_claimed {
                return Some(format!("words {a} and {b} are at distance {d} < claimed {}", self.d_claimed));
            }
        }
        Some(format!("size {} exceeds the Johnson bound {}", self.size, self.johnson_ub))
    }

    pub fn comment_lines(&self) -> Vec<String> {
        let mut out = vec![
            format!("certificate: {}", if self.pass { "pass" } else { "FAIL" }),
            format!(
                "certificate: n={} w={} size={} d_claimed={} d_exact={}",
                self.n,
                self.w,
                self.size,
                self.d_claimed,
                self.d_exact.map_or("-".to_string(), |d| d.to_string())
            ),
        ];
        if let Some((a, b)) = self.witness {
            out.push(format!("certificate: closest pair {a} {b}"));
        }
        out.push(format!("certificate: johnson upper bound {}", self.johnson_ub));
        if let Some(reason) = self.failure_reason() {
            out.push(format!("certificate: failure: {reason}"));
        }
        out
    }
}

/// Full check of a book against its declared `(n, d_claimed, w)`.
pub fn verify_claim(book: &CodeBook) -> Certificate {
    let weights = check_constant_weight(book);
    let duplicate = book.find_duplicate();
    let exact = min_distance(book).ok();
    let johnson_ub = if book.w <= book.n && book.d_claimed > 0 {
        JohnsonTable::new()
            .upper_bound(book.n as u64, book.d_claimed as u64, book.w as u64)
            .map(|b| match b.value {
                crate::bounds::BoundNumber::Integer(i) => i,
                crate::bounds::BoundNumber::Rational(r) => r.to_integer().to_biguint().unwrap_or_default(),
            })
            .unwrap_or_else(|_| binomial(book.n as u64, book.w as u64))
    } else {
        binomial(book.n as u64, book.w as u64)
    };
    let distance_ok = exact.is_none_or(|m| m.distance as usize >= book.d_claimed);
    let pass = weights.pass && duplicate.is_none() && distance_ok && BigUint::from(book.len()) <= johnson_ub;
    Certificate {
        n: book.n,
        w: book.w,
        size: book.len(),
        d_claimed: book.d_claimed,
        d_exact: exact.map(|m| m.distance),
        witness: exact.map(|m| m.pair),
        weight_failures: weights.failures,
        duplicate,
        johnson_ub,
        pass,
    }
}

/// Exact `A(n, d, w)` for tiny parameters by maximum clique search over all
/// weight-`w` words. Refuses when `C(n, w) > cap` or the search exceeds
/// `node_budget`; never returns an approximation.
pub fn brute_force_optimum(n: usize, d: usize, w: usize, cap: u64, node_budget: u64) -> Result<u64> {
    if w > n {
        return Err(CwcError::InvalidParameter(format!("need w <= n, got n={n} w={w}")));
    }
    let d = d + d % 2;
    // complementing every word preserves all distances
    let w = w.min(n - w);
    let total = binomial(n as u64, w as u64);
    if total > BigUint::from(cap) {
        return Err(CwcError::SearchLimit(format!("C({n},{w}) = {total} exceeds the cap {cap}")));
    }
    // counting facts rather than searches
    if d <= 2 {
        return Ok(u64::try_from(total).expect("below cap"));
    }
    if d > 2 * w {
        return Ok(1);
    }
    if d == 2 * w {
        return Ok((n / w) as u64);
    }

    // Let i be the largest intersection between two words of an optimal
    // code and (x, y) a pair meeting it. The symmetric group is transitive
    // on ordered pairs of w-sets meeting in i points, so (x, y) may be taken
    // as (a, b_i) below and every other word meets a, b_i and each other in
    // at most i points. Branch on i.
    let words = weight_w_masks(n, w);
    let max_common = w - d / 2;
    let ceiling = closed_form_johnson(n, d, w);
    let a: u128 = (1u128 << w) - 1;
    let mut best = 1u64;
    let mut spent = 0u64;
    for i in (0..=max_common).rev() {
        if 2 * w - i > n {
            continue;
        }
        let b: u128 = ((1u128 << i) - 1) | (((1u128 << (w - i)) - 1) << w);
        let fits =
            |c: u128| c != a && c != b && (c & a).count_ones() as usize <= i && (c & b).count_ones() as usize <= i;
        let cands: Vec<u128> = words.iter().copied().filter(|&c| fits(c)).collect();
        let mut graph = Graph::new(cands.len());
        for (x, &u) in cands.iter().enumerate() {
            for (y, &v) in cands.iter().enumerate().skip(x + 1) {
                if (u & v).count_ones() as usize <= i {
                    graph.add_edge(x, y);
                }
            }
        }
        if best >= ceiling {
            break;
        }
        let floor = (best as usize).saturating_sub(2);
        let enough = (ceiling - 2) as usize;
        let (found, used) = graph.max_clique_above(floor, enough, node_budget - spent).map_err(|e| match e {
            CwcError::SearchLimit(_) => {
                CwcError::SearchLimit(format!("maximum clique search for A({n},{d},{w}) exceeded {node_budget} nodes"))
            }
            other => other,
        })?;
        spent += used;
        best = best.max(2);
        if let Some(clique) = found {
            best = best.max(2 + clique.len() as u64);
        }
    }
    Ok(best)
}

/// `floor(n/w floor((n-1)/(w-1) ... floor((n-w+e)/e)))` with `d = 2e`,
/// the nested first Johnson bound, evaluated without the recursion table of
/// the bounds module so that the two stay independent.
fn closed_form_johnson(n: usize, d: usize, w: usize) -> u64 {
    let e = d / 2;
    let mut value = ((n - w + e) / e) as u64;
    for k in e + 1..=w {
        value = (n - w + k) as u64 * value / k as u64;
    }
    value
}

/// All `n`-bit masks of weight `w` in increasing order (`n <= 128`).
fn weight_w_masks(n: usize, w: usize) -> Vec<u128> {
    assert!(n <= 128, "brute force supports n <= 128");
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..w).collect();
    loop {
        out.push(idx.iter().fold(0u128, |m, &i| m | 1 << i));
        // next combination in lexicographic order
        let mut k = w;
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            if idx[k] < n - w + k {
                break;
            }
            if k == 0 {
                return out;
            }
        }
        idx[k] += 1;
        for t in k + 1..w {
            idx[t] = idx[t - 1] + 1;
        }
    }
}
