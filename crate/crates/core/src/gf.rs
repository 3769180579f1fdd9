//! Arithmetic in small finite fields GF(p^m).
//!
//! Elements are identified by an index in `[0, q)`. For a prime field the
//! index is the residue itself. For an extension field the index is the
//! integer encoding `c0 + c1*p + ... + c_{m-1}*p^{m-1}` of the coefficient
//! vector of the element, viewed as a polynomial in the generator `x`
//! modulo a fixed monic irreducible polynomial of degree `m`.
//!
//! The modulus is the monic irreducible of degree `m` whose lower
//! coefficients have the smallest integer encoding. This pins down the
//! element numbering completely: GF(4) uses `x^2+x+1`, GF(8) uses
//! `x^3+x+1`, GF(9) uses `x^2+1`.
//!
//! All operations are table lookups; tables are built once in
//! [`FieldSpec::new`] and the spec is immutable afterwards.

use std::fmt;

use crate::error::{CwcError, Result};

/// Largest supported field size.
pub const MAX_FIELD_SIZE: u32 = 256;

/// An element of a [`FieldSpec`], identified by its canonical index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FieldElement(u16);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    /// Wraps a raw index without a range check. Use
    /// [`FieldSpec::element`] when the index comes from outside.
    pub const fn from_index_unchecked(index: u16) -> Self {
        FieldElement(index)
    }

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A concrete finite field with precomputed operation tables.
#[derive(Clone)]
pub struct FieldSpec {
    p: u32,
    m: u32,
    q: u32,
    /// Lower coefficients `c0..c_{m-1}` of the monic modulus; empty for prime fields.
    modulus: Vec<u32>,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    inv: Vec<u16>,
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldSpec")
            .field("p", &self.p)
            .field("m", &self.m)
            .field("q", &self.q)
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.m == other.m && self.modulus == other.modulus
    }
}

impl Eq for FieldSpec {}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Returns `(p, m)` when `n = p^m` for a prime `p` and `m >= 1`.
pub fn prime_power_decomposition(n: u64) -> Option<(u64, u32)> {
    if n < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= n && !n.is_multiple_of(p) {
        p += 1;
    }
    if !n.is_multiple_of(p) {
        // no factor up to sqrt(n)
        return Some((n, 1));
    }
    let mut rest = n;
    let mut m = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        m += 1;
    }
    (rest == 1).then_some((p, m))
}

impl FieldSpec {
    /// Builds GF(p^m) with the canonical modulus.
    pub fn new(p: u32, m: u32) -> Result<Self> {
        let invalid = |reason: &str| CwcError::InvalidField { p, m, reason: reason.to_string() };
        if m == 0 {
            return Err(invalid("extension degree must be at least 1"));
        }
        if !is_prime(p as u64) {
            return Err(invalid("characteristic is not prime"));
        }
        let q = (p as u64)
            .checked_pow(m)
            .filter(|&q| q <= MAX_FIELD_SIZE as u64)
            .ok_or_else(|| invalid(&format!("field size exceeds the cap of {MAX_FIELD_SIZE}")))? as u32;

        let modulus = if m == 1 { Vec::new() } else { canonical_modulus(p, m) };
        let mut field =
            FieldSpec { p, m, q, modulus, add: Vec::new(), mul: Vec::new(), neg: Vec::new(), inv: Vec::new() };
        field.build_tables();
        Ok(field)
    }

    /// Builds the field of the given prime-power order.
    pub fn with_order(q: u32) -> Result<Self> {
        match prime_power_decomposition(q as u64) {
            Some((p, m)) => FieldSpec::new(p as u32, m),
            None => Err(CwcError::InvalidField { p: q, m: 1, reason: "order is not a prime power".into() }),
        }
    }

    fn build_tables(&mut self) {
        let q = self.q as usize;
        let digits: Vec<Vec<u32>> = (0..q).map(|i| self.digits(i)).collect();
        self.add = vec![0; q * q];
        self.mul = vec![0; q * q];
        for a in 0..q {
            for b in 0..q {
                let sum: Vec<u32> = digits[a].iter().zip(&digits[b]).map(|(x, y)| (x + y) % self.p).collect();
                self.add[a * q + b] = self.encode(&sum) as u16;
                self.mul[a * q + b] = self.encode(&self.poly_mul_mod(&digits[a], &digits[b])) as u16;
            }
        }
        self.neg = (0..q)
            .map(|a| {
                let d: Vec<u32> = digits[a].iter().map(|&c| (self.p - c) % self.p).collect();
                self.encode(&d) as u16
            })
            .collect();
        self.inv = vec![0; q];
        for a in 1..q {
            let b = (1..q).find(|&b| self.mul[a * q + b] == 1).expect("field has inverses");
            self.inv[a] = b as u16;
        }
    }

    fn digits(&self, mut index: usize) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.m as usize);
        for _ in 0..self.m {
            out.push((index % self.p as usize) as u32);
            index /= self.p as usize;
        }
        out
    }

    fn encode(&self, coeffs: &[u32]) -> usize {
        coeffs.iter().rev().fold(0usize, |acc, &c| acc * self.p as usize + c as usize)
    }

    fn poly_mul_mod(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        let p = self.p;
        let m = self.m as usize;
        let mut prod = vec![0u32; 2 * m];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % p;
            }
        }
        // x^m = -(c0 + c1 x + ... + c_{m-1} x^{m-1})
        for k in (m..2 * m).rev() {
            let lead = prod[k];
            if lead == 0 {
                continue;
            }
            prod[k] = 0;
            for (i, &c) in self.modulus.iter().enumerate() {
                let sub = (lead * c) % p;
                prod[k - m + i] = (prod[k - m + i] + p - sub) % p;
            }
        }
        prod.truncate(m);
        prod
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn size(&self) -> usize {
        self.q as usize
    }

    /// Lower coefficients of the monic modulus, constant term first.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// Integer encoding of the modulus' lower coefficients.
    pub fn modulus_encoding(&self) -> usize {
        self.encode(&self.modulus)
    }

    pub fn modulus_string(&self) -> String {
        if self.m == 1 {
            return "none".into();
        }
        let mut terms = vec![format!("x^{}", self.m)];
        for (i, &c) in self.modulus.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "x".into(),
                _ => format!("x^{i}"),
            };
            terms.push(match (c, mono.is_empty()) {
                (_, true) => c.to_string(),
                (1, false) => mono,
                (_, false) => format!("{c}{mono}"),
            });
        }
        terms.join("+")
    }

    pub fn describe(&self) -> String {
        format!(
            "p={} m={} q={} modulus={} ({})",
            self.p,
            self.m,
            self.q,
            self.modulus_encoding(),
            self.modulus_string()
        )
    }

    pub fn element(&self, index: usize) -> Result<FieldElement> {
        if index < self.size() {
            Ok(FieldElement(index as u16))
        } else {
            Err(CwcError::ElementOutOfRange { index, q: self.size() })
        }
    }

    /// The image of an integer in the prime subfield.
    pub fn from_int(&self, value: i64) -> FieldElement {
        FieldElement(value.rem_euclid(self.p as i64) as u16)
    }

    /// All elements in canonical index order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.q as u16).map(FieldElement)
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(self.add[a.index() * self.size() + b.index()])
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        FieldElement(self.neg[a.index()])
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(self.mul[a.index() * self.size() + b.index()])
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.is_zero() {
            return Err(CwcError::ZeroInverse);
        }
        Ok(FieldElement(self.inv[a.index()]))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: FieldElement, mut k: u64) -> FieldElement {
        let mut base = a;
        let mut acc = FieldElement::ONE;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    /// Horner evaluation of `coeffs[0] + coeffs[1] x + ...`.
    pub fn eval_poly(&self, coeffs: &[FieldElement], x: FieldElement) -> FieldElement {
        coeffs.iter().rev().fold(FieldElement::ZERO, |acc, &c| self.add(self.mul(acc, x), c))
    }
}

/// Smallest-encoding monic irreducible polynomial of degree `m` over GF(p).
fn canonical_modulus(p: u32, m: u32) -> Vec<u32> {
    let count = (p as usize).pow(m);
    (0..count)
        .map(|enc| {
            let mut rest = enc;
            let mut coeffs = Vec::with_capacity(m as usize);
            for _ in 0..m {
                coeffs.push((rest % p as usize) as u32);
                rest /= p as usize;
            }
            coeffs
        })
        .find(|lower| {
            let mut full = lower.clone();
            full.push(1);
            is_irreducible(&full, p)
        })
        .expect("an irreducible polynomial exists in every degree")
}

/// Trial division by every monic polynomial of degree `1..=deg/2`.
/// `poly` is monic, constant term first.
pub fn is_irreducible(poly: &[u32], p: u32) -> bool {
    let deg = poly.len() - 1;
    if deg <= 1 {
        return deg == 1;
    }
    for d in 1..=deg / 2 {
        for enc in 0..(p as usize).pow(d as u32) {
            let mut divisor = Vec::with_capacity(d + 1);
            let mut rest = enc;
            for _ in 0..d {
                divisor.push((rest % p as usize) as u32);
                rest /= p as usize;
            }
            divisor.push(1);
            if poly_rem_is_zero(poly, &divisor, p) {
                return false;
            }
        }
    }
    true
}

fn poly_rem_is_zero(num: &[u32], monic_div: &[u32], p: u32) -> bool {
    let mut rem = num.to_vec();
    let dd = monic_div.len() - 1;
    for k in (dd..rem.len()).rev() {
        let lead = rem[k] % p;
        if lead == 0 {
            continue;
        }
        for (i, &c) in monic_div.iter().enumerate() {
            let idx = k - dd + i;
            rem[idx] = (rem[idx] + p - (lead * c) % p) % p;
        }
    }
    rem[..dd].iter().all(|&c| c == 0)
}
