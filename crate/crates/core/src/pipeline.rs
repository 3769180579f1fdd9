//! End-to-end constructions: build, augment, verify.

use std::fmt;
use std::str::FromStr;

use crate::agcurves::{
    build_ag_base, enumerate_points, find_maximal_curve, rr_basis, CurveKind, HermitianCurve, WeierstrassCurve,
};
use crate::augment::{augment_pack, curve_packing_target, rs_packing_target, AugmentReport, PackingConstraints};
use crate::codebook::CodeBook;
use crate::error::{CwcError, Result};
use crate::format::write_cwc;
use crate::gf::{FieldElement, FieldSpec};
use crate::rscode::{add_column_words, build_rs_base, BlockLayout, GridIndex};
use crate::verify::{verify_claim, Certificate};

pub use crate::augment::DEFAULT_BUDGET;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RsAugment {
    None,
    /// One full column word per evaluation point.
    T21,
    /// Packing search for the larger count.
    T22,
}

impl FromStr for RsAugment {
    type Err = CwcError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "none" => Ok(RsAugment::None),
            "t21" => Ok(RsAugment::T21),
            "t22" => Ok(RsAugment::T22),
            other => Err(CwcError::InvalidParameter(format!("unknown augmentation `{other}` (none|t21|t22)"))),
        }
    }
}

impl fmt::Display for RsAugment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RsAugment::None => "none",
            RsAugment::T21 => "t21",
            RsAugment::T22 => "t22",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RsParams {
    pub p: u32,
    pub m: u32,
    pub r: usize,
    pub w: usize,
    pub augment: RsAugment,
    /// Extra words to pack for `T22`; defaults to the formula count.
    pub extra: Option<usize>,
    /// Blocks an added word may touch for `T22`; defaults to 2.
    pub max_cols: Option<usize>,
    pub budget: u64,
}

impl RsParams {
    pub fn new(p: u32, m: u32, r: usize, w: usize, augment: RsAugment) -> Self {
        RsParams { p, m, r, w, augment, extra: None, max_cols: None, budget: DEFAULT_BUDGET }
    }
}

/// A verified construction.
#[derive(Debug, Clone)]
pub struct Construction {
    pub book: CodeBook,
    pub certificate: Certificate,
    pub report: Option<AugmentReport>,
    /// Size predicted by the counting formula, when one applies.
    pub formula_size: Option<u64>,
}

impl Construction {
    fn finish(book: CodeBook, report: Option<AugmentReport>, formula_size: Option<u64>) -> Self {
        let certificate = verify_claim(&book);
        Construction { book, certificate, report, formula_size }
    }

    /// The book with augment report and certificate appended as comments.
    pub fn annotated(&self) -> CodeBook {
        let mut book = self.book.clone();
        if let Some(size) = self.formula_size {
            book.note(format!("formula size: {size}"));
        }
        if let Some(report) = &self.report {
            book.meta.extend(report.comment_lines());
        }
        book.meta.extend(self.certificate.comment_lines());
        book
    }

    pub fn to_cwc(&self) -> String {
        write_cwc(&self.annotated())
    }

    pub fn summary(&self) -> String {
        self.certificate.summary()
    }
}

/// Same count as [`rs_packing_target`] without its `r >= 3` check.
fn packing_count(q: u64, w: u64, r: u64) -> u64 {
    let slack = q - w + r - 1;
    q.pow(r as u32) + w + w / ((w + 1 - r) / slack + 1)
}

pub fn construct_rs(params: &RsParams) -> Result<Construction> {
    let field = FieldSpec::new(params.p, params.m)?;
    let grid = GridIndex::first(&field, params.w)?;
    let base = build_rs_base(&field, params.r, &grid)?;
    let (q, w, r) = (field.size() as u64, params.w as u64, params.r as u64);
    match params.augment {
        RsAugment::None => Ok(Construction::finish(base, None, Some(q.pow(r as u32)))),
        RsAugment::T21 => {
            let values: Vec<FieldElement> = field.elements().take(params.w).collect();
            let book = add_column_words(base, &grid, &values)?;
            Ok(Construction::finish(book, None, Some(q.pow(r as u32) + w)))
        }
        RsAugment::T22 => {
            let mut notes = Vec::new();
            let formula = match rs_packing_target(q, w, r) {
                Ok(t) => t,
                Err(CwcError::Hypothesis { .. }) if r == 2 && params.w > 1 && params.w <= field.size() => {
                    notes.push("r = 2 falls outside r >= 3; searching for the same count anyway".to_string());
                    packing_count(q, w, r)
                }
                Err(e) => return Err(e),
            };
            let base_len = base.len();
            let target = params.extra.unwrap_or((formula as usize).saturating_sub(base_len));
            let cons = PackingConstraints::for_distance(params.w, base.d_claimed, params.max_cols.unwrap_or(2));
            let (book, mut report) = augment_pack(&base, grid.layout(), &cons, target, params.budget)?;
            report.trace.splice(0..0, notes);
            Ok(Construction::finish(book, Some(report), Some(formula)))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CurveChoice {
    /// General Weierstrass coefficients `[a1, a2, a3, a4, a6]` as integers,
    /// read as field element indices after reduction into the prime field
    /// when `m = 1`, or as raw indices when `m > 1`.
    Elliptic { p: u32, m: u32, coeffs: [i64; 5] },
    /// The first maximal curve in lexicographic coefficient order.
    EllipticMaximal { p: u32, m: u32 },
    /// `x^q + x = y^(q+1)` over `F_{q^2}`.
    Hermitian { q: u32 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AgAugment {
    None,
    /// Packing search for the curve counting formula.
    T31,
}

impl FromStr for AgAugment {
    type Err = CwcError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "none" => Ok(AgAugment::None),
            "t31" => Ok(AgAugment::T31),
            other => Err(CwcError::InvalidParameter(format!("unknown augmentation `{other}` (none|t31)"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AgParams {
    pub curve: CurveChoice,
    /// Use only the first `points` affine points; all of them when `None`.
    pub points: Option<usize>,
    pub s: u32,
    pub augment: AgAugment,
    pub extra: Option<usize>,
    /// Blocks an added word may touch; defaults to `floor(|P|/q) + 2`.
    pub max_cols: Option<usize>,
    pub budget: u64,
}

impl AgParams {
    pub fn new(curve: CurveChoice, s: u32, augment: AgAugment) -> Self {
        AgParams { curve, points: None, s, augment, extra: None, max_cols: None, budget: DEFAULT_BUDGET }
    }
}

fn element_from_int(field: &FieldSpec, v: i64) -> Result<FieldElement> {
    if field.m() == 1 {
        Ok(field.from_int(v))
    } else {
        let idx = usize::try_from(v).map_err(|_| CwcError::InvalidParameter(format!("negative index {v}")))?;
        field.element(idx)
    }
}

pub fn construct_ag(params: &AgParams) -> Result<Construction> {
    let (field, kind, mut points, curve_note) = match &params.curve {
        CurveChoice::Elliptic { p, m, coeffs } => {
            let field = FieldSpec::new(*p, *m)?;
            let mut els = [FieldElement::ZERO; 5];
            for (e, &c) in els.iter_mut().zip(coeffs) {
                *e = element_from_int(&field, c)?;
            }
            let curve = WeierstrassCurve::new(field.clone(), els)?;
            let pts = enumerate_points(&curve)?;
            let note = format!("curve: {} ({} rational points)", curve.describe(), pts.total);
            (field, CurveKind::Elliptic, pts.affine, note)
        }
        CurveChoice::EllipticMaximal { p, m } => {
            let field = FieldSpec::new(*p, *m)?;
            let (curve, pts) = find_maximal_curve(&field)?;
            let note = format!("curve: {} ({} rational points, maximal)", curve.describe(), pts.total);
            (field, CurveKind::Elliptic, pts.affine, note)
        }
        CurveChoice::Hermitian { q } => {
            let curve = HermitianCurve::new(*q)?;
            let pts = curve.points();
            let note = format!("curve: {} ({} rational points)", curve.describe(), pts.len() + 1);
            (curve.field().clone(), CurveKind::Hermitian { q: *q }, pts, note)
        }
    };
    if let Some(k) = params.points {
        if k > points.len() {
            return Err(CwcError::InvalidParameter(format!(
                "asked for {k} points but the curve has {} affine points",
                points.len()
            )));
        }
        points.truncate(k);
    }
    let basis = rr_basis(kind, params.s)?;
    let (mut base, layout) = build_ag_base(&field, &basis, &points)?;
    base.meta.insert(0, curve_note);
    let q = field.size() as u64;
    let base_size = q.pow(basis.dim() as u32);
    match params.augment {
        AgAugment::None => Ok(Construction::finish(base, None, Some(base_size))),
        AgAugment::T31 => augment_curve(base, layout, params, kind.genus()),
    }
}

fn augment_curve(base: CodeBook, layout: BlockLayout, params: &AgParams, genus: u64) -> Result<Construction> {
    let q = layout.block_size as u64;
    let npts = layout.blocks as u64;
    let formula = curve_packing_target(q, npts, params.s as u64, genus);
    let target = match (params.extra, &formula) {
        (Some(extra), _) => extra,
        (None, Ok(total)) => (*total as usize).saturating_sub(base.len()),
        (None, Err(_)) => return Err(formula.unwrap_err()),
    };
    let default_cols = (npts / q + 2) as usize;
    let cons = PackingConstraints::for_distance(base.w, base.d_claimed, params.max_cols.unwrap_or(default_cols));
    let (book, report) = augment_pack(&base, layout, &cons, target, params.budget)?;
    Ok(Construction::finish(book, Some(report), formula.ok()))
}
