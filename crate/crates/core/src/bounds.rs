//! Classical bounds on `A(n, d, w)` in exact arithmetic.
//!
//! * Gilbert type lower bound `C(n,w) / sum_{i<d'} C(w,i) C(n-w,i)` for `d = 2d'`.
//! * Graham-Sloane lower bound `C(n,w) / q^(d'-1)`, `q` the least prime power `>= n`.
//! * Johnson upper bound from the two recursions
//!   `A(n,d,w) <= floor(n/w * A(n-1,d,w-1))` and
//!   `A(n,d,w) <= floor(n/(n-w) * A(n-1,d,w))`.
//!
//! Lower bounds are exact rationals, the Johnson bound an exact integer.
//! Decimal output is presentation only.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{CwcError, Result};
use crate::gf::prime_power_decomposition;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundKind {
    Gilbert,
    GrahamSloane,
    JohnsonUpper,
    Construction,
}

impl fmt::Display for BoundKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BoundKind::Gilbert => "gilbert",
            BoundKind::GrahamSloane => "graham_sloane",
            BoundKind::JohnsonUpper => "johnson_upper",
            BoundKind::Construction => "construction",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BoundNumber {
    Rational(BigRational),
    Integer(BigUint),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundValue {
    pub kind: BoundKind,
    pub value: BoundNumber,
    pub trace: Vec<String>,
}

impl BoundValue {
    pub fn as_rational(&self) -> BigRational {
        match &self.value {
            BoundNumber::Rational(r) => r.clone(),
            BoundNumber::Integer(i) => BigRational::from_integer(i.clone().into()),
        }
    }

    pub fn to_f64(&self) -> f64 {
        let r = self.as_rational();
        // numerators here can be far beyond f64's exact range; divide in f64
        // only after scaling both sides down together
        let num = r.numer().to_f64().unwrap_or(f64::INFINITY);
        let den = r.denom().to_f64().unwrap_or(f64::INFINITY);
        if num.is_finite() && den.is_finite() {
            num / den
        } else {
            let shift = r.numer().bits().max(r.denom().bits()).saturating_sub(1000);
            let n = (r.numer() >> shift).to_f64().unwrap_or(f64::MAX);
            let d = (r.denom() >> shift).to_f64().unwrap_or(f64::MAX);
            n / d
        }
    }

    /// Smallest integer at least the value.
    pub fn ceil(&self) -> BigUint {
        let r = self.as_rational().ceil();
        r.to_integer().to_biguint().unwrap_or_default()
    }

    /// Value rounded half-up to `places` decimals, as text.
    pub fn decimal(&self, places: u32) -> String {
        decimal_string(&self.as_rational(), places)
    }

    /// `p/q` for rationals, the integer otherwise.
    pub fn exact_string(&self) -> String {
        match &self.value {
            BoundNumber::Rational(r) if r.is_integer() => r.to_integer().to_string(),
            BoundNumber::Rational(r) => format!("{}/{}", r.numer(), r.denom()),
            BoundNumber::Integer(i) => i.to_string(),
        }
    }
}

pub fn decimal_string(value: &BigRational, places: u32) -> String {
    let scale = num_bigint::BigInt::from(10u32).pow(places);
    let scaled = value * BigRational::from_integer(scale.clone());
    let half = BigRational::new(1.into(), 2.into());
    let rounded = (scaled + half).floor().to_integer();
    let (int_part, frac_part) = rounded.div_mod_floor(&scale);
    if places == 0 {
        return int_part.to_string();
    }
    format!("{}.{:0>width$}", int_part, frac_part.to_string(), width = places as usize)
}

/// Exact binomial coefficient; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        // exact at every step: acc is C(n, i+1) afterwards
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

fn check_params(n: u64, d: u64, w: u64) -> Result<u64> {
    if !d.is_multiple_of(2) {
        return Err(CwcError::InvalidParameter(format!("distance {d} is odd; constant weight distances are even")));
    }
    if d == 0 {
        return Err(CwcError::InvalidParameter("distance must be positive".into()));
    }
    if w == 0 || w > n {
        return Err(CwcError::InvalidParameter(format!("need 0 < w <= n, got n={n} w={w}")));
    }
    Ok(d / 2)
}

pub fn gilbert_lb(n: u64, d: u64, w: u64) -> Result<BoundValue> {
    let half = check_params(n, d, w)?;
    let total = binomial(n, w);
    let ball: BigUint = (0..half).map(|i| binomial(w, i) * binomial(n - w, i)).sum();
    let value = BigRational::new(total.clone().into(), ball.clone().into());
    let trace = vec![
        format!("d' = {half}"),
        format!("C({n},{w}) = {total}"),
        format!("sum_{{i<{half}}} C({w},i) C({},i) = {ball}", n - w),
    ];
    Ok(BoundValue { kind: BoundKind::Gilbert, value: BoundNumber::Rational(value), trace })
}

pub fn smallest_prime_power_geq(n: u64) -> u64 {
    let mut q = n.max(2);
    while prime_power_decomposition(q).is_none() {
        q += 1;
    }
    q
}

pub fn graham_sloane_lb(n: u64, d: u64, w: u64) -> Result<BoundValue> {
    let half = check_params(n, d, w)?;
    let q = smallest_prime_power_geq(n);
    let total = binomial(n, w);
    let denom = BigUint::from(q).pow((half - 1) as u32);
    let value = BigRational::new(total.clone().into(), denom.clone().into());
    let trace = vec![
        format!("q = {q} (least prime power >= {n})"),
        format!("C({n},{w}) = {total}"),
        format!("q^(d'-1) = {q}^{} = {denom}", half - 1),
    ];
    Ok(BoundValue { kind: BoundKind::GrahamSloane, value: BoundNumber::Rational(value), trace })
}

/// Memoized Johnson recursion.
#[derive(Debug, Default)]
pub struct JohnsonTable {
    memo: HashMap<(u64, u64, u64), BigUint>,
}

impl JohnsonTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.memo.len()
    }

    pub fn is_empty(&self) -> bool {
        self.memo.is_empty()
    }

    /// Memoized entries as `((n, d, w), value)`.
    pub fn entries(&self) -> impl Iterator<Item = ((u64, u64, u64), &BigUint)> {
        self.memo.iter().map(|(&k, v)| (k, v))
    }

    pub fn upper_bound(&mut self, n: u64, d: u64, w: u64) -> Result<BoundValue> {
        if w > n {
            return Err(CwcError::InvalidParameter(format!("need w <= n, got n={n} w={w}")));
        }
        let mut trace = Vec::new();
        let d = if d % 2 == 1 {
            trace.push(format!("odd d={d} normalized to {}", d + 1));
            d + 1
        } else {
            d
        };
        let value = self.value(n, d, w);
        self.trace_path(n, d, w, &mut trace);
        Ok(BoundValue { kind: BoundKind::JohnsonUpper, value: BoundNumber::Integer(value), trace })
    }

    fn base_case(n: u64, d: u64, w: u64) -> Option<(BigUint, &'static str)> {
        if w == 0 || w == n {
            Some((BigUint::one(), "w = 0 or w = n"))
        } else if d > 2 * w {
            Some((BigUint::one(), "d > 2w"))
        } else if d == 2 * w {
            Some((BigUint::from(n / w), "d = 2w: disjoint supports"))
        } else if d <= 2 {
            Some((binomial(n, w), "d <= 2: all weight-w words"))
        } else {
            None
        }
    }

    fn value(&mut self, n: u64, d: u64, w: u64) -> BigUint {
        if let Some(v) = self.memo.get(&(n, d, w)) {
            return v.clone();
        }
        let v = match Self::base_case(n, d, w) {
            Some((v, _)) => v,
            None => {
                let (a, b) = self.branches(n, d, w);
                a.min(b)
            }
        };
        self.memo.insert((n, d, w), v.clone());
        v
    }

    fn branches(&mut self, n: u64, d: u64, w: u64) -> (BigUint, BigUint) {
        let shorten = BigUint::from(n) * self.value(n - 1, d, w - 1) / BigUint::from(w);
        let puncture = BigUint::from(n) * self.value(n - 1, d, w) / BigUint::from(n - w);
        (shorten, puncture)
    }

    fn trace_path(&mut self, mut n: u64, d: u64, mut w: u64, trace: &mut Vec<String>) {
        loop {
            if let Some((v, why)) = Self::base_case(n, d, w) {
                trace.push(format!("A({n},{d},{w}) = {v} [base case: {why}]"));
                return;
            }
            let (a, b) = self.branches(n, d, w);
            if a <= b {
                trace.push(format!("A({n},{d},{w}) <= floor({n}/{w} * A({},{d},{})) = {a}", n - 1, w - 1));
                n -= 1;
                w -= 1;
            } else {
                trace.push(format!("A({n},{d},{w}) <= floor({n}/{} * A({},{d},{w})) = {b}", n - w, n - 1));
                n -= 1;
            }
        }
    }
}

pub fn johnson_ub(n: u64, d: u64, w: u64) -> Result<BoundValue> {
    JohnsonTable::new().upper_bound(n, d, w)
}

/// All three bounds for one parameter set, rendered for the CLI.
pub fn report(n: u64, d: u64, w: u64) -> Result<String> {
    let mut out = String::new();
    out.push_str(&format!("parameters: n={n} d={d} w={w}\n"));
    for bound in [gilbert_lb(n, d, w)?, graham_sloane_lb(n, d, w)?, johnson_ub(n, d, w)?] {
        out.push_str(&format!("{}: {} = {}\n", bound.kind, bound.exact_string(), bound.decimal(2)));
        for line in &bound.trace {
            out.push_str(&format!("  {line}\n"));
        }
    }
    Ok(out)
}
