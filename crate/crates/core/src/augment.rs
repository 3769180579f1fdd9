//! Packing extra codewords onto a graph code.
//!
//! Added words have weight `w`, touch at most `max_cols` column blocks, meet
//! each other in at most `t_pair` coordinates and meet every book word in at
//! most `t_base` coordinates.
//!
//! Candidates are `w`-subsets of `[0, n)` taken in lexicographic order of
//! their sorted coordinates, so blocks come in ascending order and values
//! inside a block in combinadic order. The search is a depth-first scan over
//! that order: each level accepts the first feasible candidate after the
//! previous one, and a dead end pops the last accepted word and resumes just
//! past it. Every coordinate placed or retracted inside a candidate counts as
//! one step against the budget. The longest set found so far is kept, so a
//! larger budget never yields fewer words.
//!
//! A book word with at most one bit per block (a graph word) meets a
//! candidate in at most as many coordinates as the candidate has blocks, so
//! graph words are skipped outright whenever `max_cols <= t_base`.

use std::collections::BTreeSet;

use crate::codebook::{CodeBook, Codeword};
use crate::error::{hypothesis, CwcError, Result};
use crate::rscode::BlockLayout;
use crate::verify::{check_constant_weight, check_min_distance_at_least, DistanceCheck};

pub const DEFAULT_BUDGET: u64 = 200_000_000;
const TRACE_EVENTS: usize = 48;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PackingConstraints {
    pub max_cols: usize,
    pub t_pair: usize,
    pub t_base: usize,
    pub w: usize,
    /// Coordinates no added word may use.
    pub forbidden: BTreeSet<usize>,
}

impl PackingConstraints {
    /// Constraints that keep distance `d` everywhere: both intersection
    /// limits are `w - d/2`.
    pub fn for_distance(w: usize, d: usize, max_cols: usize) -> Self {
        let t = w.saturating_sub(d / 2);
        PackingConstraints { max_cols, t_pair: t, t_base: t, w, forbidden: BTreeSet::new() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AugmentReport {
    /// Extra words requested.
    pub target: usize,
    /// Extra words packed and verified.
    pub achieved: usize,
    pub base_size: usize,
    pub steps: u64,
    pub budget_exhausted: bool,
    /// True when the search space was fully explored without reaching the target.
    pub search_exhausted: bool,
    pub trace: Vec<String>,
}

impl AugmentReport {
    pub fn reached_target(&self) -> bool {
        self.achieved >= self.target
    }

    pub fn comment_lines(&self) -> Vec<String> {
        let status = if self.reached_target() {
            "target reached"
        } else if self.budget_exhausted {
            "SHORT of target: step budget exhausted"
        } else {
            "SHORT of target: search space exhausted"
        };
        let mut out = vec![
            format!(
                "augment: base={} target_extra={} achieved={} ({status})",
                self.base_size, self.target, self.achieved
            ),
            format!("augment: steps={}", self.steps),
        ];
        out.extend(self.trace.iter().map(|t| format!("augment: {t}")));
        out
    }
}

/// Total size `q^r + w + floor(w / (floor((w-r+1)/(q-w+r-1)) + 1))`.
pub fn rs_packing_target(q: u64, w: u64, r: u64) -> Result<u64> {
    if r < 3 {
        return Err(hypothesis("r >= 3", format!("r={r}")));
    }
    if !(r - 1 < w && w <= q) {
        return Err(hypothesis("r-1 < w <= q", format!("q={q} w={w} r={r}")));
    }
    let slack = q - w + r - 1;
    let base = q.checked_pow(r as u32).ok_or_else(|| CwcError::InvalidParameter(format!("{q}^{r} overflows")))?;
    Ok(base + w + w / ((w - r + 1) / slack + 1))
}

/// Total size for the curve construction with `points = r q + r'`
/// evaluation points and pole order `s`:
/// `q^(s-g+1) + floor(P/(r+1)) + floor(P / (floor((P-s)/(q-r'+s)) + 1))`.
pub fn curve_packing_target(q: u64, points: u64, s: u64, genus: u64) -> Result<u64> {
    if s + 1 < 2 * genus {
        return Err(hypothesis("deg G >= 2g-1", format!("s={s} g={genus}")));
    }
    if s >= points {
        return Err(hypothesis("s < |P|", format!("s={s} |P|={points}")));
    }
    let (r, r_rem) = (points / q, points % q);
    if r + 1 > s {
        return Err(hypothesis("r+1 <= deg G", format!("|P|={points}=({r})q+{r_rem}, s={s}")));
    }
    let base = q
        .checked_pow((s + 1 - genus) as u32)
        .ok_or_else(|| CwcError::InvalidParameter(format!("{q}^{} overflows", s + 1 - genus)))?;
    Ok(base + points / (r + 1) + points / ((points - s) / (q - r_rem + s) + 1))
}

struct Exhausted;

struct Packer {
    layout: BlockLayout,
    w: usize,
    max_cols: usize,
    forbidden: Vec<bool>,
    thresholds: Vec<u32>,
    counts: Vec<u32>,
    /// coordinate -> checked entries containing it
    index: Vec<Vec<u32>>,
    chosen: Vec<usize>,
    steps: u64,
    budget: u64,
}

impl Packer {
    fn add_entry(&mut self, support: impl IntoIterator<Item = usize>, threshold: usize) {
        let id = self.thresholds.len() as u32;
        self.thresholds.push(threshold as u32);
        self.counts.push(0);
        for c in support {
            self.index[c].push(id);
        }
    }

    /// Removes the most recent entry, which was added with `support`.
    fn pop_entry(&mut self, support: &[usize]) {
        let id = self.thresholds.len() as u32 - 1;
        for &c in support {
            let popped = self.index[c].pop();
            debug_assert_eq!(popped, Some(id));
        }
        self.thresholds.pop();
        self.counts.pop();
    }

    /// First feasible candidate strictly after `lower` in lexicographic order.
    fn next_after(&mut self, lower: Option<&[usize]>) -> Result<Option<Vec<usize>>, Exhausted> {
        self.chosen.clear();
        let found = self.extend(lower.is_some(), lower, 0)?;
        let out = found.then(|| self.chosen.clone());
        for i in 0..self.chosen.len() {
            let c = self.chosen[i];
            for &e in &self.index[c] {
                self.counts[e as usize] -= 1;
            }
        }
        self.chosen.clear();
        Ok(out)
    }

    fn extend(&mut self, tight: bool, lower: Option<&[usize]>, touched: usize) -> Result<bool, Exhausted> {
        let k = self.chosen.len();
        if k == self.w {
            return Ok(!tight);
        }
        let bs = self.layout.block_size;
        let n = self.layout.n();
        let mut start = self.chosen.last().map_or(0, |&c| c + 1);
        if tight {
            start = start.max(lower.expect("tight implies a bound")[k]);
        }
        let last_block = self.chosen.last().map(|&c| c / bs);
        let need_after = self.w - k - 1;
        if n < need_after + 1 {
            return Ok(false);
        }
        for c in start..=n - need_after - 1 {
            if self.forbidden[c] {
                continue;
            }
            let opens_block = last_block != Some(c / bs);
            let now_touched = touched + opens_block as usize;
            if now_touched > self.max_cols {
                // every later coordinate also opens a block
                break;
            }
            let room = bs - 1 - c % bs + (self.max_cols - now_touched) * bs;
            if room < need_after {
                continue;
            }
            self.steps += 1;
            if self.steps > self.budget {
                return Err(Exhausted);
            }
            let mut ok = true;
            for &e in &self.index[c] {
                let e = e as usize;
                self.counts[e] += 1;
                ok &= self.counts[e] <= self.thresholds[e];
            }
            if ok {
                self.chosen.push(c);
                let still_tight = tight && c == lower.expect("tight implies a bound")[k];
                if self.extend(still_tight, lower, now_touched)? {
                    return Ok(true);
                }
                self.chosen.pop();
            }
            for &e in &self.index[c] {
                self.counts[e as usize] -= 1;
            }
        }
        Ok(false)
    }
}

fn is_graph_word(word: &Codeword, layout: BlockLayout) -> bool {
    let mut last = None;
    word.support().all(|c| {
        let b = layout.block_of(c);
        let fresh = last != Some(b);
        last = Some(b);
        fresh
    })
}

fn describe_support(support: &[usize], layout: BlockLayout) -> String {
    let mut parts: Vec<String> = Vec::new();
    let mut current: Option<(usize, Vec<usize>)> = None;
    for &c in support {
        let (b, v) = (c / layout.block_size, c % layout.block_size);
        match &mut current {
            Some((cb, vals)) if *cb == b => vals.push(v),
            _ => {
                if let Some((cb, vals)) = current.take() {
                    parts.push(format!("{cb}:{}", crate::rscode::join(&vals)));
                }
                current = Some((b, vec![v]));
            }
        }
    }
    if let Some((cb, vals)) = current {
        parts.push(format!("{cb}:{}", crate::rscode::join(&vals)));
    }
    parts.join(" | ")
}

/// Extends `book` with up to `target_extra` packed words and re-verifies the
/// result at `book.d_claimed`.
pub fn augment_pack(
    book: &CodeBook,
    layout: BlockLayout,
    cons: &PackingConstraints,
    target_extra: usize,
    budget: u64,
) -> Result<(CodeBook, AugmentReport)> {
    if layout.n() != book.n {
        return Err(CwcError::InvalidParameter(format!(
            "layout covers {} coordinates, book has length {}",
            layout.n(),
            book.n
        )));
    }
    if cons.w != book.w {
        return Err(CwcError::InvalidParameter(format!(
            "constraint weight {} differs from book weight {}",
            cons.w, book.w
        )));
    }
    if cons.max_cols == 0 {
        return Err(CwcError::InvalidParameter("max_cols must be at least 1".into()));
    }
    for (name, t) in [("t_base", cons.t_base), ("t_pair", cons.t_pair)] {
        if 2 * cons.w < book.d_claimed + 2 * t {
            return Err(CwcError::InvalidParameter(format!(
                "infeasible constraints: 2w - 2*{name} = {} < d_claimed = {}",
                (2 * cons.w).saturating_sub(2 * t),
                book.d_claimed
            )));
        }
    }
    if let Some(&c) = cons.forbidden.iter().find(|&&c| c >= book.n) {
        return Err(CwcError::InvalidParameter(format!("forbidden coordinate {c} out of range")));
    }

    let mut report = AugmentReport {
        target: target_extra,
        achieved: 0,
        base_size: book.len(),
        steps: 0,
        budget_exhausted: false,
        search_exhausted: false,
        trace: Vec::new(),
    };
    if target_extra == 0 {
        return Ok((book.clone(), report));
    }

    let mut packer = Packer {
        layout,
        w: cons.w,
        max_cols: cons.max_cols.min(layout.blocks),
        forbidden: (0..book.n).map(|c| cons.forbidden.contains(&c)).collect(),
        thresholds: Vec::new(),
        counts: Vec::new(),
        index: vec![Vec::new(); book.n],
        chosen: Vec::with_capacity(cons.w),
        steps: 0,
        budget,
    };
    let skip_graph_words = packer.max_cols <= cons.t_base;
    let mut skipped = 0;
    for word in &book.words {
        if skip_graph_words && is_graph_word(word, layout) {
            skipped += 1;
            continue;
        }
        packer.add_entry(word.support(), cons.t_base);
    }
    report.trace.push(format!(
        "constraints: max_cols={} t_pair={} t_base={}; {} book words checked, {} graph words implied",
        packer.max_cols,
        cons.t_pair,
        cons.t_base,
        book.len() - skipped,
        skipped
    ));

    let mut stack: Vec<Vec<usize>> = Vec::new();
    let mut best: Vec<Vec<usize>> = Vec::new();
    let mut lower: Option<Vec<usize>> = None;
    let mut events = 0usize;
    let mut backtracks = 0u64;
    while stack.len() < target_extra {
        match packer.next_after(lower.as_deref()) {
            Ok(Some(cand)) => {
                packer.add_entry(cand.iter().copied(), cons.t_pair);
                if events < TRACE_EVENTS {
                    report.trace.push(format!(
                        "accept #{} at step {}: {}",
                        stack.len() + 1,
                        packer.steps,
                        describe_support(&cand, layout)
                    ));
                }
                events += 1;
                lower = Some(cand.clone());
                stack.push(cand);
                if stack.len() > best.len() {
                    best = stack.clone();
                }
            }
            Ok(None) => match stack.pop() {
                Some(last) => {
                    packer.pop_entry(&last);
                    if events < TRACE_EVENTS {
                        report.trace.push(format!("dead end at depth {}; backtrack", stack.len() + 1));
                    }
                    events += 1;
                    backtracks += 1;
                    lower = Some(last);
                }
                None => {
                    report.search_exhausted = true;
                    break;
                }
            },
            Err(Exhausted) => {
                report.budget_exhausted = true;
                break;
            }
        }
    }
    if events > TRACE_EVENTS {
        report.trace.push(format!("... {} further events omitted", events - TRACE_EVENTS));
    }
    report.trace.push(format!("backtracks: {backtracks}"));
    report.steps = packer.steps;
    report.achieved = best.len();

    let mut out = book.clone();
    for support in &best {
        out.push(Codeword::from_support(book.n, support)?)?;
    }
    if !check_constant_weight(&out).pass {
        return Err(CwcError::VerificationFailed("augmented book is not constant weight".into()));
    }
    out.ensure_distinct()?;
    if let DistanceCheck::Below { distance, pair } = check_min_distance_at_least(&out, book.d_claimed as u32) {
        return Err(CwcError::VerificationFailed(format!(
            "augmented words {} and {} are at distance {distance} < {}",
            pair.0, pair.1, book.d_claimed
        )));
    }
    out.note(format!(
        "augmented: {} packed words (max_cols={} t_pair={} t_base={})",
        best.len(),
        packer.max_cols,
        cons.t_pair,
        cons.t_base
    ));
    Ok((out, report))
}
