//! Constant weight codes from Reed-Solomon evaluation.
//!
//! A polynomial `f` of degree `< r` is mapped to the binary word whose
//! support is its graph `{(P_i, f(P_i))}` over the evaluation points
//! `W = {P_1, ..., P_w}`. Coordinates are laid out column-major: column
//! position `i` owns the block `[i*q, (i+1)*q)` and value index `b` sits at
//! `i*q + b`. Two distinct graphs share at most `r-1` coordinates, so the
//! base code has minimum distance at least `2w + 2 - 2r`.

use rayon::prelude::*;

use crate::codebook::{CodeBook, Codeword};
use crate::error::{hypothesis, CwcError, Result};
use crate::gf::{FieldElement, FieldSpec};

/// Upper limit on `q^r` for a base code.
pub const MAX_BASE_WORDS: usize = 1 << 22;

/// `blocks` column blocks of `block_size` coordinates each.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BlockLayout {
    pub blocks: usize,
    pub block_size: usize,
}

impl BlockLayout {
    pub fn n(&self) -> usize {
        self.blocks * self.block_size
    }

    #[inline]
    pub fn block_of(&self, coord: usize) -> usize {
        coord / self.block_size
    }
}

/// Evaluation points and the coordinate map `(column, value) -> column*q + value`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridIndex {
    columns: Vec<FieldElement>,
    q: usize,
}

impl GridIndex {
    pub fn new(field: &FieldSpec, columns: Vec<FieldElement>) -> Result<Self> {
        let q = field.size();
        let mut seen = vec![false; q];
        for c in &columns {
            if c.index() >= q {
                return Err(CwcError::ElementOutOfRange { index: c.index(), q });
            }
            if std::mem::replace(&mut seen[c.index()], true) {
                return Err(CwcError::InvalidParameter(format!("evaluation point {c} repeated")));
            }
        }
        if columns.is_empty() {
            return Err(CwcError::InvalidParameter("no evaluation points".into()));
        }
        Ok(GridIndex { columns, q })
    }

    /// The first `w` field elements in index order.
    pub fn first(field: &FieldSpec, w: usize) -> Result<Self> {
        if w > field.size() {
            return Err(hypothesis("q >= w", format!("w={w} exceeds q={}", field.size())));
        }
        GridIndex::new(field, field.elements().take(w).collect())
    }

    pub fn columns(&self) -> &[FieldElement] {
        &self.columns
    }

    pub fn w(&self) -> usize {
        self.columns.len()
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn n(&self) -> usize {
        self.columns.len() * self.q
    }

    #[inline]
    pub fn coordinate(&self, column_position: usize, value: FieldElement) -> usize {
        column_position * self.q + value.index()
    }

    pub fn layout(&self) -> BlockLayout {
        BlockLayout { blocks: self.w(), block_size: self.q }
    }
}

pub fn rs_eval_word(field: &FieldSpec, coeffs: &[FieldElement], grid: &GridIndex) -> Result<Codeword> {
    if let Some(bad) = coeffs.iter().find(|c| c.index() >= field.size()) {
        return Err(CwcError::ElementOutOfRange { index: bad.index(), q: field.size() });
    }
    let support: Vec<usize> =
        grid.columns.iter().enumerate().map(|(i, &x)| grid.coordinate(i, field.eval_poly(coeffs, x))).collect();
    Codeword::from_support(grid.n(), &support)
}

/// Coefficient vector number `k` in the fixed enumeration: base-q digits of
/// `k`, constant term first.
pub(crate) fn coefficients_of(mut k: usize, q: usize, len: usize) -> Vec<FieldElement> {
    (0..len)
        .map(|_| {
            let digit = k % q;
            k /= q;
            FieldElement::from_index_unchecked(digit as u16)
        })
        .collect()
}

/// The `q^r` graph words of all polynomials of degree `< r` restricted to the
/// grid columns, with `d_claimed = 2w + 2 - 2r`.
pub fn build_rs_base(field: &FieldSpec, r: usize, grid: &GridIndex) -> Result<CodeBook> {
    let q = field.size();
    let w = grid.w();
    if grid.q() != q {
        return Err(CwcError::InvalidParameter("grid was built over a different field".into()));
    }
    if r < 1 {
        return Err(hypothesis("r >= 1", format!("r={r}")));
    }
    if w > q {
        return Err(hypothesis("q >= w > r-1", format!("w={w} exceeds q={q}")));
    }
    if r > w {
        return Err(hypothesis("q >= w > r-1", format!("r-1={} is not below w={w}", r - 1)));
    }
    let count = (q as u64)
        .checked_pow(r as u32)
        .filter(|&c| c <= MAX_BASE_WORDS as u64)
        .ok_or_else(|| CwcError::InvalidParameter(format!("q^r = {q}^{r} exceeds {MAX_BASE_WORDS} words")))?
        as usize;

    let words: Vec<Codeword> = (0..count)
        .into_par_iter()
        .map(|k| rs_eval_word(field, &coefficients_of(k, q, r), grid))
        .collect::<Result<_>>()?;

    let mut book = CodeBook::new(grid.n(), w, 2 * w + 2 - 2 * r);
    book.words = words;
    book.ensure_distinct()?;
    book.note("construction: reed-solomon graph code");
    book.note(format!("field: {}", field.describe()));
    book.note(format!("r: {r}"));
    book.note(format!("columns: {}", join(grid.columns())));
    book.note("coordinates: column_position*q + value_index");
    Ok(book)
}

/// Adds one word per column position `i`, supported on block `i` at the
/// values in `values`. The degree bound `r` is read back from
/// `d_claimed = 2w + 2 - 2r`.
pub fn add_column_words(mut book: CodeBook, grid: &GridIndex, values: &[FieldElement]) -> Result<CodeBook> {
    let w = grid.w();
    if book.w != w || book.n != grid.n() {
        return Err(CwcError::InvalidParameter("book does not match the grid".into()));
    }
    let r = (2 * w + 2)
        .checked_sub(book.d_claimed)
        .map(|x| x / 2)
        .ok_or_else(|| CwcError::InvalidParameter("d_claimed exceeds 2w+2".into()))?;
    if r < 2 {
        return Err(hypothesis(
            "2 <= r < q+1",
            format!("r={r}; the added words would only guarantee distance {}", 2 * w - 2),
        ));
    }
    if values.len() != w {
        return Err(CwcError::InvalidParameter(format!("value set has {} elements, expected w={w}", values.len())));
    }
    let mut seen = vec![false; grid.q()];
    for v in values {
        if v.index() >= grid.q() || std::mem::replace(&mut seen[v.index()], true) {
            return Err(CwcError::InvalidParameter(format!("bad or repeated value {v} in value set")));
        }
    }
    for i in 0..w {
        let support: Vec<usize> = values.iter().map(|&v| grid.coordinate(i, v)).collect();
        book.push(Codeword::from_support(grid.n(), &support)?)?;
    }
    book.ensure_distinct()?;
    book.note(format!("column words: {w} added on values {}", join(values)));
    Ok(book)
}

pub(crate) fn join<T: std::fmt::Display>(items: &[T]) -> String {
    items.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn support(word: &Codeword) -> Vec<usize> {
        word.support().collect()
    }

    #[test]
    fn identity_and_zero_polynomials() {
        let f = FieldSpec::new(5, 1).unwrap();
        let grid = GridIndex::first(&f, 5).unwrap();
        let x = rs_eval_word(&f, &[FieldElement::ZERO, FieldElement::ONE], &grid).unwrap();
        assert_eq!(support(&x), vec![0, 6, 12, 18, 24]);
        let zero = rs_eval_word(&f, &[FieldElement::ZERO], &grid).unwrap();
        assert_eq!(support(&zero), vec![0, 5, 10, 15, 20]);
    }

    #[test]
    fn quadratic_over_gf7() {
        let f = FieldSpec::new(7, 1).unwrap();
        let grid = GridIndex::first(&f, 7).unwrap();
        let coeffs = [f.from_int(1), f.from_int(0), f.from_int(1)];
        let word = rs_eval_word(&f, &coeffs, &grid).unwrap();
        // a^2 + 1 mod 7 for a = 0..6, computed by hand
        let expected: Vec<usize> = [1, 2, 5, 3, 3, 5, 2].iter().enumerate().map(|(a, v)| a * 7 + v).collect();
        assert_eq!(support(&word), expected);
    }

    #[test]
    fn base_sizes() {
        let f5 = FieldSpec::new(5, 1).unwrap();
        let book = build_rs_base(&f5, 2, &GridIndex::first(&f5, 5).unwrap()).unwrap();
        assert_eq!((book.len(), book.n, book.w, book.d_claimed), (25, 25, 5, 8));

        let f7 = FieldSpec::new(7, 1).unwrap();
        let consts = build_rs_base(&f7, 1, &GridIndex::first(&f7, 7).unwrap()).unwrap();
        assert_eq!(consts.len(), 7);
        assert_eq!(consts.d_claimed, 14);
        for (i, a) in consts.words.iter().enumerate() {
            for b in &consts.words[i + 1..] {
                assert_eq!(a.distance(b), 14);
            }
        }
    }

    #[test]
    fn enumeration_is_constant_term_fastest() {
        let f = FieldSpec::new(3, 1).unwrap();
        let grid = GridIndex::first(&f, 3).unwrap();
        let book = build_rs_base(&f, 2, &grid).unwrap();
        // word 1 is f = 1, word 3 is f = x
        assert_eq!(support(&book.words[1]), vec![1, 4, 7]);
        assert_eq!(support(&book.words[3]), vec![0, 4, 8]);
    }

    #[test]
    fn hypotheses_are_named() {
        let f = FieldSpec::new(5, 1).unwrap();
        let grid = GridIndex::first(&f, 3).unwrap();
        let err = build_rs_base(&f, 4, &grid).unwrap_err();
        assert!(err.to_string().contains("q >= w > r-1"), "{err}");
        assert!(GridIndex::first(&f, 6).is_err());
        assert!(build_rs_base(&f, 0, &grid).is_err());
    }

    #[test]
    fn column_words() {
        let f = FieldSpec::new(5, 1).unwrap();
        let grid = GridIndex::first(&f, 5).unwrap();
        let base = build_rs_base(&f, 2, &grid).unwrap();
        let values: Vec<_> = f.elements().collect();
        let book = add_column_words(base, &grid, &values).unwrap();
        assert_eq!(book.len(), 30);
        assert_eq!(support(&book.words[25]), vec![0, 1, 2, 3, 4]);

        let consts = build_rs_base(&f, 1, &grid).unwrap();
        assert!(matches!(add_column_words(consts, &grid, &values), Err(CwcError::Hypothesis { .. })));
    }

    #[test]
    fn grid_rejects_repeats() {
        let f = FieldSpec::new(5, 1).unwrap();
        assert!(GridIndex::new(&f, vec![FieldElement::ONE, FieldElement::ONE]).is_err());
    }
}
