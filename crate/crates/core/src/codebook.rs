//! Packed binary words and code books.

use std::fmt;

use crate::error::{CwcError, Result};

/// A binary word of length `n`, packed little-endian into `u64` limbs.
///
/// Bits at positions `>= n` are always zero.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Codeword {
    n: usize,
    bits: Vec<u64>,
    weight: u32,
}

#[inline]
pub fn limbs_for(n: usize) -> usize {
    n.div_ceil(64)
}

impl Codeword {
    pub fn zero(n: usize) -> Self {
        Codeword { n, bits: vec![0; limbs_for(n)], weight: 0 }
    }

    /// Builds a word from its support. Repeated coordinates are rejected.
    pub fn from_support(n: usize, support: &[usize]) -> Result<Self> {
        let mut word = Codeword::zero(n);
        for &c in support {
            if c >= n {
                return Err(CwcError::InvalidParameter(format!("coordinate {c} out of range for length {n}")));
            }
            if word.get(c) {
                return Err(CwcError::InvalidParameter(format!("coordinate {c} repeated in support")));
            }
            word.set(c, true);
        }
        Ok(word)
    }

    pub fn from_limbs(n: usize, mut bits: Vec<u64>) -> Result<Self> {
        if bits.len() != limbs_for(n) {
            return Err(CwcError::InvalidParameter(format!("{} limbs supplied for a word of length {n}", bits.len())));
        }
        if !n.is_multiple_of(64) {
            if let Some(last) = bits.last_mut() {
                if *last >> (n % 64) != 0 {
                    return Err(CwcError::InvalidParameter("bits set beyond word length".into()));
                }
                *last &= (1u64 << (n % 64)) - 1;
            }
        }
        let weight = bits.iter().map(|l| l.count_ones()).sum();
        Ok(Codeword { n, bits, weight })
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn weight(&self) -> u32 {
        self.weight
    }

    #[inline]
    pub fn limbs(&self) -> &[u64] {
        &self.bits
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        i < self.n && (self.bits[i / 64] >> (i % 64)) & 1 == 1
    }

    /// Sets or clears a bit. Panics when `i >= n`.
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.n, "bit {i} out of range for length {}", self.n);
        let mask = 1u64 << (i % 64);
        let limb = &mut self.bits[i / 64];
        let was = *limb & mask != 0;
        if value && !was {
            *limb |= mask;
            self.weight += 1;
        } else if !value && was {
            *limb &= !mask;
            self.weight -= 1;
        }
    }

    pub fn flip(&mut self, i: usize) {
        let v = self.get(i);
        self.set(i, !v);
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.iter().enumerate().flat_map(|(li, &limb)| {
            let mut rest = limb;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let tz = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(li * 64 + tz)
            })
        })
    }

    #[inline]
    pub fn distance(&self, other: &Codeword) -> u32 {
        self.bits.iter().zip(&other.bits).map(|(a, b)| (a ^ b).count_ones()).sum()
    }

    #[inline]
    pub fn intersection(&self, other: &Codeword) -> u32 {
        self.bits.iter().zip(&other.bits).map(|(a, b)| (a & b).count_ones()).sum()
    }

    /// `0`/`1` text, character `k` being coordinate `k`.
    pub fn to_bit_string(&self) -> String {
        (0..self.n).map(|i| if self.get(i) { '1' } else { '0' }).collect()
    }

    pub fn parse_bit_string(s: &str) -> Result<Self> {
        let n = s.len();
        let mut word = Codeword::zero(n);
        for (i, ch) in s.bytes().enumerate() {
            match ch {
                b'0' => {}
                b'1' => word.set(i, true),
                other => {
                    return Err(CwcError::InvalidParameter(format!(
                        "character {:?} at column {} is not 0 or 1",
                        other as char,
                        i + 1
                    )))
                }
            }
        }
        Ok(word)
    }
}

impl fmt::Debug for Codeword {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Codeword(n={}, w={}, {:?})", self.n, self.weight, self.support().collect::<Vec<_>>())
    }
}

/// A set of words with declared parameters `(n, d_claimed, w)` and free-form
/// provenance lines.
///
/// Constructors in this crate keep every word at length `n` and weight `w`
/// with no repeats; arbitrary books (read from disk, mutated in tests) are
/// checked by [`crate::verify`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodeBook {
    pub n: usize,
    pub w: usize,
    pub d_claimed: usize,
    pub words: Vec<Codeword>,
    pub meta: Vec<String>,
}

impl CodeBook {
    pub fn new(n: usize, w: usize, d_claimed: usize) -> Self {
        CodeBook { n, w, d_claimed, words: Vec::new(), meta: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn push(&mut self, word: Codeword) -> Result<()> {
        if word.len() != self.n {
            return Err(CwcError::InvalidParameter(format!(
                "word of length {} pushed into a book of length {}",
                word.len(),
                self.n
            )));
        }
        self.words.push(word);
        Ok(())
    }

    pub fn note(&mut self, line: impl Into<String>) {
        self.meta.push(line.into());
    }

    /// First pair of identical words, by sorted comparison.
    pub fn find_duplicate(&self) -> Option<(usize, usize)> {
        let mut order: Vec<usize> = (0..self.words.len()).collect();
        order.sort_by(|&a, &b| self.words[a].cmp(&self.words[b]).then(a.cmp(&b)));
        order
            .windows(2)
            .filter(|w| self.words[w[0]] == self.words[w[1]])
            .map(|w| (w[0].min(w[1]), w[0].max(w[1])))
            .min()
    }

    pub(crate) fn ensure_distinct(&self) -> Result<()> {
        match self.find_duplicate() {
            Some((a, b)) => Err(CwcError::DuplicateWords(a, b)),
            None => Ok(()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn support_round_trip() {
        let w = Codeword::from_support(70, &[0, 6, 63, 64, 69]).unwrap();
        assert_eq!(w.weight(), 5);
        assert_eq!(w.support().collect::<Vec<_>>(), vec![0, 6, 63, 64, 69]);
        assert_eq!(Codeword::parse_bit_string(&w.to_bit_string()).unwrap(), w);
    }

    #[test]
    fn rejects_bad_supports() {
        assert!(Codeword::from_support(8, &[8]).is_err());
        assert!(Codeword::from_support(8, &[1, 1]).is_err());
        assert!(Codeword::from_limbs(3, vec![0b1000]).is_err());
        assert!(Codeword::parse_bit_string("01x").is_err());
    }

    #[test]
    fn distance_and_intersection() {
        let a = Codeword::from_support(10, &[0, 1, 2]).unwrap();
        let b = Codeword::from_support(10, &[2, 3, 4]).unwrap();
        assert_eq!(a.distance(&b), 4);
        assert_eq!(a.intersection(&b), 1);
    }

    #[test]
    fn set_tracks_weight() {
        let mut w = Codeword::zero(5);
        w.set(3, true);
        w.set(3, true);
        assert_eq!(w.weight(), 1);
        w.flip(3);
        assert_eq!(w.weight(), 0);
    }

    #[test]
    fn duplicate_detection() {
        let mut book = CodeBook::new(4, 2, 2);
        for s in [[0, 1], [2, 3], [0, 1]] {
            book.push(Codeword::from_support(4, &s).unwrap()).unwrap();
        }
        assert_eq!(book.find_duplicate(), Some((0, 2)));
        assert!(book.push(Codeword::zero(5)).is_err());
    }
}
