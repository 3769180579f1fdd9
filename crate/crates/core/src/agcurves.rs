//! Rational points, Riemann-Roch bases and graph codes on curves.
//!
//! The divisor is always `s * P_inf` and the code is evaluated on affine
//! points only, so `L(s P_inf)` has an explicit monomial basis:
//!
//! * elliptic curves: `x` has pole order 2, `y` pole order 3, and the basis is
//!   `x^i y^j` with `j <= 1`, `2i + 3j <= s`;
//! * the Hermitian curve `x^q + x = y^(q+1)` over `F_{q^2}`: `y` has pole
//!   order `q`, `x` pole order `q+1`, and the basis is `x^i y^j` with
//!   `i <= q-1`, `(q+1)i + qj <= s`.

use rayon::prelude::*;

use crate::codebook::{CodeBook, Codeword};
use crate::error::{hypothesis, CwcError, Result};
use crate::gf::{prime_power_decomposition, FieldElement, FieldSpec};
use crate::rscode::{coefficients_of, BlockLayout, MAX_BASE_WORDS};

/// `y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeierstrassCurve {
    field: FieldSpec,
    /// `[a1, a2, a3, a4, a6]`
    coeffs: [FieldElement; 5],
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AffinePoint {
    pub x: FieldElement,
    pub y: FieldElement,
}

impl WeierstrassCurve {
    pub fn new(field: FieldSpec, coeffs: [FieldElement; 5]) -> Result<Self> {
        if let Some(c) = coeffs.iter().find(|c| c.index() >= field.size()) {
            return Err(CwcError::ElementOutOfRange { index: c.index(), q: field.size() });
        }
        let curve = WeierstrassCurve { field, coeffs };
        if curve.discriminant().is_zero() {
            return Err(CwcError::SingularCurve);
        }
        Ok(curve)
    }

    /// Short form `y^2 = x^3 + a4 x + a6` from integers (reduced mod p).
    pub fn short(field: FieldSpec, a4: i64, a6: i64) -> Result<Self> {
        let z = FieldElement::ZERO;
        let coeffs = [z, z, z, field.from_int(a4), field.from_int(a6)];
        WeierstrassCurve::new(field, coeffs)
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn coefficients(&self) -> [FieldElement; 5] {
        self.coeffs
    }

    pub fn discriminant(&self) -> FieldElement {
        let f = &self.field;
        let [a1, a2, a3, a4, a6] = self.coeffs;
        let k = |n: i64| f.from_int(n);
        let m = |a, b| f.mul(a, b);
        let add = |a, b| f.add(a, b);
        let b2 = add(m(a1, a1), m(k(4), a2));
        let b4 = add(m(k(2), a4), m(a1, a3));
        let b6 = add(m(a3, a3), m(k(4), a6));
        let b8 =
            f.sub(add(add(m(m(a1, a1), a6), m(m(k(4), a2), a6)), m(a2, m(a3, a3))), add(m(m(a1, a3), a4), m(a4, a4)));
        // -b2^2 b8 - 8 b4^3 - 27 b6^2 + 9 b2 b4 b6
        let t1 = m(m(b2, b2), b8);
        let t2 = m(k(8), m(b4, m(b4, b4)));
        let t3 = m(k(27), m(b6, b6));
        let t4 = m(k(9), m(b2, m(b4, b6)));
        f.sub(f.sub(f.sub(t4, t1), t2), t3)
    }

    pub fn contains(&self, p: AffinePoint) -> bool {
        let f = &self.field;
        let [a1, a2, a3, a4, a6] = self.coeffs;
        let (x, y) = (p.x, p.y);
        let lhs = f.add(f.add(f.mul(y, y), f.mul(a1, f.mul(x, y))), f.mul(a3, y));
        let x2 = f.mul(x, x);
        let rhs = f.add(f.add(f.add(f.mul(x2, x), f.mul(a2, x2)), f.mul(a4, x)), a6);
        lhs == rhs
    }

    pub fn describe(&self) -> String {
        let [a1, a2, a3, a4, a6] = self.coeffs;
        format!("elliptic a1={a1} a2={a2} a3={a3} a4={a4} a6={a6}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointSet {
    /// Affine points in `(x, y)` index order.
    pub affine: Vec<AffinePoint>,
    /// Affine points plus the point at infinity.
    pub total: usize,
}

/// Naive scan of all `(x, y)` pairs, with a Hasse bound sanity check.
pub fn enumerate_points(curve: &WeierstrassCurve) -> Result<PointSet> {
    let f = curve.field();
    let affine: Vec<AffinePoint> = f
        .elements()
        .flat_map(|x| f.elements().map(move |y| AffinePoint { x, y }))
        .filter(|&p| curve.contains(p))
        .collect();
    let total = affine.len() + 1;
    let q = f.size() as i64;
    let trace = total as i64 - (q + 1);
    if trace * trace > 4 * q {
        return Err(CwcError::VerificationFailed(format!("{} points over F_{q} violates the Hasse bound", total)));
    }
    Ok(PointSet { affine, total })
}

/// Non-singular curve with the most rational points, searching coefficient
/// tuples `(a1, a2, a3, a4, a6)` in lexicographic order and stopping at the
/// first curve meeting the Hasse-Weil maximum `q + 1 + floor(2 sqrt q)`.
pub fn find_maximal_curve(field: &FieldSpec) -> Result<(WeierstrassCurve, PointSet)> {
    let q = field.size();
    let hasse_max = q + 1 + (1..).take_while(|t: &usize| t * t <= 4 * q).last().unwrap_or(0);
    let mut best: Option<(WeierstrassCurve, PointSet)> = None;
    for code in 0..q.pow(5) {
        let digits = coefficients_of(code, q, 5);
        // a1 varies slowest
        let coeffs = [digits[4], digits[3], digits[2], digits[1], digits[0]];
        let Ok(curve) = WeierstrassCurve::new(field.clone(), coeffs) else {
            continue;
        };
        let points = enumerate_points(&curve)?;
        if best.as_ref().is_none_or(|(_, b)| points.total > b.total) {
            let done = points.total == hasse_max;
            best = Some((curve, points));
            if done {
                break;
            }
        }
    }
    best.ok_or_else(|| CwcError::InvalidParameter("no non-singular curve found".into()))
}

/// The Hermitian curve `x^q + x = y^(q+1)` over `F_{q^2}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HermitianCurve {
    field: FieldSpec,
    q: u32,
}

impl HermitianCurve {
    pub fn new(q: u32) -> Result<Self> {
        let (p, k) = prime_power_decomposition(q as u64)
            .ok_or_else(|| CwcError::InvalidParameter(format!("q={q} is not a prime power")))?;
        let field = FieldSpec::new(p as u32, 2 * k)?;
        Ok(HermitianCurve { field, q })
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn genus(&self) -> u64 {
        let q = self.q as u64;
        q * (q - 1) / 2
    }

    pub fn contains(&self, p: AffinePoint) -> bool {
        let f = &self.field;
        let q = self.q as u64;
        f.add(f.pow(p.x, q), p.x) == f.pow(p.y, q + 1)
    }

    pub fn points(&self) -> Vec<AffinePoint> {
        let f = &self.field;
        f.elements()
            .flat_map(|x| f.elements().map(move |y| AffinePoint { x, y }))
            .filter(|&p| self.contains(p))
            .collect()
    }

    pub fn describe(&self) -> String {
        format!("hermitian x^{q}+x=y^{} over F_{}", self.q + 1, self.field.q(), q = self.q)
    }
}

/// Affine points of the Hermitian curve over `F_{q^2}`; there are `q^3`.
pub fn hermitian_points(q: u32) -> Result<Vec<AffinePoint>> {
    Ok(HermitianCurve::new(q)?.points())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CurveKind {
    Elliptic,
    /// Hermitian curve with parameter `q` (field `F_{q^2}`).
    Hermitian {
        q: u32,
    },
}

impl CurveKind {
    pub fn genus(self) -> u64 {
        match self {
            CurveKind::Elliptic => 1,
            CurveKind::Hermitian { q } => (q as u64) * (q as u64 - 1) / 2,
        }
    }
}

/// Monomial basis `x^i y^j` of `L(s P_inf)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RRBasis {
    /// `(i, j)` exponent pairs, sorted by pole order then by `j`.
    pub monomials: Vec<(u32, u32)>,
    pub s: u32,
    pub genus: u64,
}

impl RRBasis {
    pub fn dim(&self) -> usize {
        self.monomials.len()
    }

    pub fn describe(&self) -> String {
        self.monomials
            .iter()
            .map(|&(i, j)| match (i, j) {
                (0, 0) => "1".to_string(),
                (i, 0) => pow_str("x", i),
                (0, j) => pow_str("y", j),
                (i, j) => format!("{}{}", pow_str("x", i), pow_str("y", j)),
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

fn pow_str(var: &str, e: u32) -> String {
    if e == 1 {
        var.to_string()
    } else {
        format!("{var}^{e}")
    }
}

pub fn rr_basis(kind: CurveKind, s: u32) -> Result<RRBasis> {
    if s < 1 {
        return Err(CwcError::InvalidParameter("divisor degree s must be at least 1".into()));
    }
    // (pole order of x, pole order of y, cap on the x exponent, cap on the y exponent)
    let (px, py, max_i, max_j) = match kind {
        CurveKind::Elliptic => (2, 3, u32::MAX, 1),
        CurveKind::Hermitian { q } => (q + 1, q, q - 1, u32::MAX),
    };
    let mut monomials = Vec::new();
    for i in (0..=s / px).filter(|&i| i <= max_i) {
        for j in (0..=(s - i * px) / py).filter(|&j| j <= max_j) {
            monomials.push((i, j));
        }
    }
    monomials.sort_by_key(|&(i, j)| (i * px + j * py, j));
    Ok(RRBasis { monomials, s, genus: kind.genus() })
}

/// One word per function in the span of `basis`, supported on
/// `{(point index i, value f(P_i))}` with coordinate `i*q + value`.
/// Functions are enumerated by coefficient vector, first monomial fastest.
pub fn build_ag_base(field: &FieldSpec, basis: &RRBasis, points: &[AffinePoint]) -> Result<(CodeBook, BlockLayout)> {
    let npts = points.len();
    let s = basis.s as usize;
    if s >= npts {
        return Err(hypothesis("s < |P|", format!("s={s} |P|={npts}")));
    }
    let q = field.size();
    let count = (q as u64)
        .checked_pow(basis.dim() as u32)
        .filter(|&c| c <= MAX_BASE_WORDS as u64)
        .ok_or_else(|| CwcError::InvalidParameter(format!("q^dim = {q}^{} is too many words", basis.dim())))?
        as usize;
    // monomial values at every point
    let table: Vec<Vec<FieldElement>> = points
        .iter()
        .map(|p| {
            basis
                .monomials
                .iter()
                .map(|&(i, j)| field.mul(field.pow(p.x, i as u64), field.pow(p.y, j as u64)))
                .collect()
        })
        .collect();
    let layout = BlockLayout { blocks: npts, block_size: q };
    let words: Vec<Codeword> = (0..count)
        .into_par_iter()
        .map(|k| {
            let coeffs = coefficients_of(k, q, basis.dim());
            let support: Vec<usize> = table
                .iter()
                .enumerate()
                .map(|(i, vals)| {
                    let v = vals
                        .iter()
                        .zip(&coeffs)
                        .fold(FieldElement::ZERO, |acc, (&m, &c)| field.add(acc, field.mul(m, c)));
                    i * q + v.index()
                })
                .collect();
            Codeword::from_support(layout.n(), &support)
        })
        .collect::<Result<_>>()?;
    let mut book = CodeBook::new(layout.n(), npts, 2 * (npts - s));
    book.words = words;
    book.ensure_distinct()?;
    book.note("construction: curve graph code on L(s*P_inf)");
    book.note(format!("field: {}", field.describe()));
    book.note(format!("s: {s} genus: {} dim: {}", basis.genus, basis.dim()));
    book.note(format!("basis: {}", basis.describe()));
    book.note(format!("points: {}", points.iter().map(|p| format!("({},{})", p.x, p.y)).collect::<Vec<_>>().join(" ")));
    book.note("coordinates: point_index*q + value_index");
    Ok((book, layout))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn example_curve_over_f7() {
        let f = FieldSpec::new(7, 1).unwrap();
        let curve = WeierstrassCurve::short(f, -2, -3).unwrap();
        let pts = enumerate_points(&curve).unwrap();
        assert_eq!(pts.total, 10);
        let mut listed: Vec<(usize, usize)> =
            vec![(3, 2), (2, 6), (4, 2), (0, 5), (5, 0), (0, 2), (4, 5), (2, 1), (3, 5)];
        listed.sort();
        let got: Vec<(usize, usize)> = pts.affine.iter().map(|p| (p.x.index(), p.y.index())).collect();
        assert_eq!(got, listed);
    }

    #[test]
    fn binary_curve() {
        let f = FieldSpec::new(2, 1).unwrap();
        let one = FieldElement::ONE;
        let z = FieldElement::ZERO;
        // y^2 + y = x^3 + x
        let curve = WeierstrassCurve::new(f, [z, z, one, one, z]).unwrap();
        assert_eq!(enumerate_points(&curve).unwrap().total, 5);
    }

    #[test]
    fn singular_rejected() {
        let f = FieldSpec::new(7, 1).unwrap();
        assert!(matches!(WeierstrassCurve::short(f, 0, 0), Err(CwcError::SingularCurve)));
    }

    #[test]
    fn maximal_curve_over_f8() {
        let f = FieldSpec::new(2, 3).unwrap();
        let (curve, pts) = find_maximal_curve(&f).unwrap();
        assert_eq!(pts.total, 14);
        assert_eq!(pts.affine.len(), 13);
        assert!(pts.affine.iter().all(|&p| curve.contains(p)));
    }

    #[test]
    fn hermitian_counts() {
        assert_eq!(hermitian_points(2).unwrap().len(), 8);
        assert_eq!(hermitian_points(3).unwrap().len(), 27);
        assert!(HermitianCurve::new(6).is_err());
    }

    #[test]
    fn bases() {
        assert_eq!(rr_basis(CurveKind::Elliptic, 2).unwrap().monomials, vec![(0, 0), (1, 0)]);
        let b5 = rr_basis(CurveKind::Elliptic, 5).unwrap();
        assert_eq!(b5.describe(), "1 x y x^2 xy");
        let h = rr_basis(CurveKind::Hermitian { q: 2 }, 3).unwrap();
        assert_eq!(h.describe(), "1 y x");
        assert!(rr_basis(CurveKind::Elliptic, 0).is_err());
    }

    #[test]
    fn hermitian_basis_respects_pole_orders() {
        // q = 3: y pole 3, x pole 4, x exponent < 3
        let h = rr_basis(CurveKind::Hermitian { q: 3 }, 8).unwrap();
        assert_eq!(h.monomials, vec![(0, 0), (0, 1), (1, 0), (0, 2), (1, 1), (2, 0)]);
        assert_eq!(h.dim() as u64, 8 - h.genus + 1);
    }

    #[test]
    fn ag_base_over_f7() {
        let f = FieldSpec::new(7, 1).unwrap();
        let curve = WeierstrassCurve::short(f.clone(), -2, -3).unwrap();
        let pts = enumerate_points(&curve).unwrap();
        let basis = rr_basis(CurveKind::Elliptic, 2).unwrap();
        let (book, layout) = build_ag_base(&f, &basis, &pts.affine).unwrap();
        assert_eq!((book.len(), book.n, book.w, book.d_claimed), (49, 63, 9, 14));
        assert_eq!(layout.blocks, 9);

        let too_big = rr_basis(CurveKind::Elliptic, 9).unwrap();
        assert!(build_ag_base(&f, &too_big, &pts.affine).is_err());
    }
}
