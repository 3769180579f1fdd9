//! Constant-weight binary codes from Reed-Solomon and algebraic-geometry
//! codes over finite fields.
//!
//! A `q`-ary codeword of length `L` maps to a binary word of length `Lq` and
//! weight `L` by expanding each symbol into a one-hot block. The resulting
//! base codes can be enlarged by packing extra words that keep the minimum
//! distance, and every result can be checked exactly against a certificate.

pub mod agcurves;
pub mod augment;
pub mod bounds;
pub mod clique;
pub mod codebook;
pub mod error;
pub mod format;
pub mod gf;
pub mod pipeline;
pub mod rscode;
pub mod tables;
pub mod verify;

pub use codebook::{CodeBook, Codeword};
pub use error::{CwcError, Result};
pub use gf::{FieldElement, FieldSpec};
