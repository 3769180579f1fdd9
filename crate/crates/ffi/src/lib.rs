//! C ABI over `cwc-core`.
//!
//! Code books cross the boundary as opaque `CwcCodeBook` handles. Every
//! fallible call returns a `CwcStatus`; on failure the message is available
//! from `cwc_last_error_message` on the same thread until the next call.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::path::Path;
use std::ptr;

use cwc_core::bounds::{gilbert_lb, graham_sloane_lb, johnson_ub};
use cwc_core::format::{read_file, write_file};
use cwc_core::pipeline::{construct_ag, construct_rs, AgAugment, AgParams, CurveChoice, RsAugment, RsParams};
use cwc_core::verify::verify_claim;
use cwc_core::{CodeBook, CwcError};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CwcStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Hypothesis = 3,
    Parse = 4,
    Io = 5,
    VerificationFailed = 6,
    SearchLimit = 7,
    OutOfRange = 8,
    Panic = 9,
}

/// Opaque code book handle.
pub struct CwcCodeBook {
    book: CodeBook,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct CwcSummary {
    pub n: u64,
    pub w: u64,
    pub size: u64,
    pub d_claimed: u64,
    /// Exact minimum distance, or -1 when the book has fewer than two words.
    pub d_exact: i64,
    pub pass: bool,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct CwcBounds {
    pub gilbert: f64,
    pub graham_sloane: f64,
    /// Saturates at `u64::MAX`.
    pub johnson_upper: u64,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn status_of(err: &CwcError) -> CwcStatus {
    match err {
        CwcError::Hypothesis { .. } => CwcStatus::Hypothesis,
        CwcError::Parse { .. } => CwcStatus::Parse,
        CwcError::Io(_) => CwcStatus::Io,
        CwcError::VerificationFailed(_) => CwcStatus::VerificationFailed,
        CwcError::SearchLimit(_) => CwcStatus::SearchLimit,
        CwcError::ElementOutOfRange { .. } => CwcStatus::OutOfRange,
        _ => CwcStatus::InvalidArgument,
    }
}

fn guard(f: impl FnOnce() -> Result<(), (CwcStatus, String)>) -> CwcStatus {
    clear_error();
    match std::panic::catch_unwind(std::panic::AssertUnwindSafe(f)) {
        Ok(Ok(())) => CwcStatus::Ok,
        Ok(Err((status, message))) => {
            set_error(message);
            status
        }
        Err(_) => {
            set_error("internal panic".to_string());
            CwcStatus::Panic
        }
    }
}

fn core_err(e: CwcError) -> (CwcStatus, String) {
    (status_of(&e), e.to_string())
}

fn null_err(what: &str) -> (CwcStatus, String) {
    (CwcStatus::NullPointer, format!("{what} is null"))
}

unsafe fn store(out: *mut *mut CwcCodeBook, book: CodeBook) {
    *out = Box::into_raw(Box::new(CwcCodeBook { book }));
}

unsafe fn path_arg<'a>(path: *const c_char) -> Result<&'a Path, (CwcStatus, String)> {
    if path.is_null() {
        return Err(null_err("path"));
    }
    let s = CStr::from_ptr(path)
        .to_str()
        .map_err(|_| (CwcStatus::InvalidArgument, "path is not valid UTF-8".to_string()))?;
    Ok(Path::new(s))
}

/// Message for the last failed call on this thread, or null. The pointer
/// stays valid until the next call into this library from the same thread.
#[no_mangle]
pub extern "C" fn cwc_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Reed-Solomon construction. `augment`: 0 none, 1 column words, 2 packing search.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn cwc_construct_rs(
    p: u32,
    m: u32,
    r: u32,
    w: u32,
    augment: u32,
    out: *mut *mut CwcCodeBook,
) -> CwcStatus {
    guard(|| {
        if out.is_null() {
            return Err(null_err("out"));
        }
        let augment = match augment {
            0 => RsAugment::None,
            1 => RsAugment::T21,
            2 => RsAugment::T22,
            other => return Err((CwcStatus::InvalidArgument, format!("unknown augmentation {other}"))),
        };
        let c = construct_rs(&RsParams::new(p, m, r as usize, w as usize, augment)).map_err(core_err)?;
        store(out, c.annotated());
        Ok(())
    })
}

fn ag_augment(code: u32) -> Result<AgAugment, (CwcStatus, String)> {
    match code {
        0 => Ok(AgAugment::None),
        1 => Ok(AgAugment::T31),
        other => Err((CwcStatus::InvalidArgument, format!("unknown augmentation {other}"))),
    }
}

unsafe fn construct_curve(
    curve: CurveChoice,
    points: u32,
    s: u32,
    augment: u32,
    out: *mut *mut CwcCodeBook,
) -> Result<(), (CwcStatus, String)> {
    if out.is_null() {
        return Err(null_err("out"));
    }
    let mut params = AgParams::new(curve, s, ag_augment(augment)?);
    params.points = (points > 0).then_some(points as usize);
    let c = construct_ag(&params).map_err(core_err)?;
    store(out, c.annotated());
    Ok(())
}

/// Elliptic curve construction. `coeffs` points at `[a1, a2, a3, a4, a6]`, or
/// is null to use the first maximal curve. `points` = 0 uses every affine
/// point. `augment`: 0 none, 1 packing search.
///
/// # Safety
/// `coeffs` must be null or point at five readable `int64_t`; `out` must be
/// valid for one handle.
#[no_mangle]
pub unsafe extern "C" fn cwc_construct_elliptic(
    p: u32,
    m: u32,
    coeffs: *const i64,
    points: u32,
    s: u32,
    augment: u32,
    out: *mut *mut CwcCodeBook,
) -> CwcStatus {
    guard(|| {
        let curve = if coeffs.is_null() {
            CurveChoice::EllipticMaximal { p, m }
        } else {
            let mut c = [0i64; 5];
            c.copy_from_slice(std::slice::from_raw_parts(coeffs, 5));
            CurveChoice::Elliptic { p, m, coeffs: c }
        };
        construct_curve(curve, points, s, augment, out)
    })
}

/// Hermitian curve construction over the field of `q^2` elements.
///
/// # Safety
/// `out` must be valid for one handle.
#[no_mangle]
pub unsafe extern "C" fn cwc_construct_hermitian(
    q: u32,
    points: u32,
    s: u32,
    augment: u32,
    out: *mut *mut CwcCodeBook,
) -> CwcStatus {
    guard(|| construct_curve(CurveChoice::Hermitian { q }, points, s, augment, out))
}

/// Read a `.cwc` file.
///
/// # Safety
/// `path` must be a NUL-terminated string; `out` must be valid for one handle.
#[no_mangle]
pub unsafe extern "C" fn cwc_codebook_read(path: *const c_char, out: *mut *mut CwcCodeBook) -> CwcStatus {
    guard(|| {
        if out.is_null() {
            return Err(null_err("out"));
        }
        let book = read_file(path_arg(path)?).map_err(core_err)?;
        store(out, book);
        Ok(())
    })
}

/// Write a `.cwc` file.
///
/// # Safety
/// `book` must be a live handle; `path` a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn cwc_codebook_write(book: *const CwcCodeBook, path: *const c_char) -> CwcStatus {
    guard(|| {
        let book = book.as_ref().ok_or_else(|| null_err("book"))?;
        write_file(&book.book, path_arg(path)?).map_err(core_err)
    })
}

/// Number of words, or 0 for a null handle.
///
/// # Safety
/// `book` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cwc_codebook_len(book: *const CwcCodeBook) -> u64 {
    book.as_ref().map_or(0, |b| b.book.len() as u64)
}

/// Word length, or 0 for a null handle.
///
/// # Safety
/// `book` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cwc_codebook_n(book: *const CwcCodeBook) -> u64 {
    book.as_ref().map_or(0, |b| b.book.n as u64)
}

/// Claimed weight, or 0 for a null handle.
///
/// # Safety
/// `book` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cwc_codebook_w(book: *const CwcCodeBook) -> u64 {
    book.as_ref().map_or(0, |b| b.book.w as u64)
}

/// Copy word `index` into `buf` as `n` bytes of 0 or 1.
///
/// # Safety
/// `book` must be a live handle and `buf` writable for `buf_len` bytes.
#[no_mangle]
pub unsafe extern "C" fn cwc_codebook_word(
    book: *const CwcCodeBook,
    index: u64,
    buf: *mut u8,
    buf_len: usize,
) -> CwcStatus {
    guard(|| {
        let book = book.as_ref().ok_or_else(|| null_err("book"))?;
        if buf.is_null() {
            return Err(null_err("buf"));
        }
        let word = usize::try_from(index)
            .ok()
            .and_then(|i| book.book.words.get(i))
            .ok_or_else(|| (CwcStatus::OutOfRange, format!("index {index} out of range")))?;
        if buf_len < word.len() {
            return Err((CwcStatus::InvalidArgument, format!("buffer holds {buf_len} bytes, need {}", word.len())));
        }
        let out = std::slice::from_raw_parts_mut(buf, word.len());
        for (k, slot) in out.iter_mut().enumerate() {
            *slot = word.get(k) as u8;
        }
        Ok(())
    })
}

/// Recompute the certificate. Returns `VerificationFailed` when the claim
/// does not hold; `out` is filled either way.
///
/// # Safety
/// `book` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cwc_codebook_verify(book: *const CwcCodeBook, out: *mut CwcSummary) -> CwcStatus {
    guard(|| {
        let book = book.as_ref().ok_or_else(|| null_err("book"))?;
        let out = out.as_mut().ok_or_else(|| null_err("out"))?;
        let cert = verify_claim(&book.book);
        *out = CwcSummary {
            n: cert.n as u64,
            w: cert.w as u64,
            size: cert.size as u64,
            d_claimed: cert.d_claimed as u64,
            d_exact: cert.d_exact.map_or(-1, i64::from),
            pass: cert.pass,
        };
        match cert.failure_reason() {
            Some(reason) => Err((CwcStatus::VerificationFailed, reason)),
            None => Ok(()),
        }
    })
}

/// Release a handle. Null is ignored.
///
/// # Safety
/// `book` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cwc_codebook_free(book: *mut CwcCodeBook) {
    if !book.is_null() {
        drop(Box::from_raw(book));
    }
}

/// Gilbert and Graham-Sloane lower bounds and the Johnson upper bound.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cwc_bounds(n: u64, d: u64, w: u64, out: *mut CwcBounds) -> CwcStatus {
    guard(|| {
        let out = out.as_mut().ok_or_else(|| null_err("out"))?;
        let g = gilbert_lb(n, d, w).map_err(core_err)?;
        let gs = graham_sloane_lb(n, d, w).map_err(core_err)?;
        let j = johnson_ub(n, d, w).map_err(core_err)?;
        *out = CwcBounds {
            gilbert: g.to_f64(),
            graham_sloane: gs.to_f64(),
            johnson_upper: u64::try_from(j.ceil()).unwrap_or(u64::MAX),
        };
        Ok(())
    })
}
