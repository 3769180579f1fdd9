//! The `.cwc` text format.
//!
//! ```text
//! CWC 1
//! n=<int> d=<int> w=<int> size=<int>
//! # optional comment lines
//! <size lines of exactly n characters from {0,1}>
//! ```
//!
//! Character `k` of a word line is coordinate `k`. Lines end in `\n` and
//! carry no trailing whitespace. Comment lines map one-to-one onto
//! [`CodeBook::meta`], so writing a book that was read back reproduces the
//! file byte for byte.

use std::path::Path;

use crate::codebook::{CodeBook, Codeword};
use crate::error::{CwcError, Result};

pub const MAGIC: &str = "CWC 1";

pub fn write_cwc(book: &CodeBook) -> String {
    let mut out = String::with_capacity((book.n + 1) * book.len() + 256);
    out.push_str(MAGIC);
    out.push('\n');
    out.push_str(&format!("n={} d={} w={} size={}\n", book.n, book.d_claimed, book.w, book.len()));
    for line in &book.meta {
        let clean = line.trim_end();
        if clean.is_empty() {
            out.push_str("#\n");
        } else {
            out.push_str("# ");
            out.push_str(clean);
            out.push('\n');
        }
    }
    for word in &book.words {
        out.push_str(&word.to_bit_string());
        out.push('\n');
    }
    out
}

fn parse_err(line: usize, message: impl Into<String>) -> CwcError {
    CwcError::Parse { line, message: message.into() }
}

fn header_field(token: Option<&str>, key: &str, line: usize) -> Result<usize> {
    let token = token.ok_or_else(|| parse_err(line, format!("missing `{key}=` field")))?;
    let value = token
        .strip_prefix(key)
        .and_then(|t| t.strip_prefix('='))
        .ok_or_else(|| parse_err(line, format!("expected `{key}=<int>`, found `{token}`")))?;
    value.parse().map_err(|_| parse_err(line, format!("`{value}` is not a non-negative integer")))
}

pub fn read_cwc(text: &str) -> Result<CodeBook> {
    if !text.is_ascii() {
        let line = text.lines().position(|l| !l.is_ascii()).map_or(1, |i| i + 1);
        return Err(parse_err(line, "non-ASCII content"));
    }
    if text.contains('\r') {
        let line = text.lines().position(|l| l.contains('\r')).map_or(1, |i| i + 1);
        return Err(parse_err(line, "carriage return found; line feeds only"));
    }
    let mut lines = text.split_terminator('\n').enumerate().map(|(i, l)| (i + 1, l));

    match lines.next() {
        Some((_, MAGIC)) => {}
        Some((ln, other)) => return Err(parse_err(ln, format!("expected `{MAGIC}`, found `{other}`"))),
        None => return Err(parse_err(1, "empty file")),
    }
    let (ln, header) = lines.next().ok_or_else(|| parse_err(2, "missing parameter line"))?;
    let mut tokens = header.split(' ');
    let n = header_field(tokens.next(), "n", ln)?;
    let d = header_field(tokens.next(), "d", ln)?;
    let w = header_field(tokens.next(), "w", ln)?;
    let size = header_field(tokens.next(), "size", ln)?;
    if let Some(extra) = tokens.next() {
        return Err(parse_err(ln, format!("unexpected token `{extra}`")));
    }

    let mut book = CodeBook::new(n, w, d);
    for (ln, line) in lines {
        if let Some(comment) = line.strip_prefix('#') {
            if !book.words.is_empty() {
                return Err(parse_err(ln, "comment after the first word"));
            }
            book.meta.push(comment.strip_prefix(' ').unwrap_or(comment).to_string());
            continue;
        }
        if line.len() != n {
            return Err(parse_err(ln, format!("word has {} characters, expected n={n}", line.len())));
        }
        let word = Codeword::parse_bit_string(line).map_err(|e| parse_err(ln, e.to_string()))?;
        book.words.push(word);
    }
    if book.len() != size {
        return Err(parse_err(
            text.split_terminator('\n').count(),
            format!("header declares size={size} but {} words were read", book.len()),
        ));
    }
    Ok(book)
}

pub fn write_file(book: &CodeBook, path: &Path) -> Result<()> {
    std::fs::write(path, write_cwc(book))?;
    Ok(())
}

pub fn read_file(path: &Path) -> Result<CodeBook> {
    read_cwc(&std::fs::read_to_string(path)?)
}
