//! Plain-text code files.
//!
//! One generator row per line; `#` starts a comment. Binary rows are strings of
//! `0`/`1` with no separators. `R` rows list element names separated by
//! whitespace or commas. A first comment line `# R` or `# binary` forces the
//! alphabet (needed for an `R` matrix whose entries are all `0`/`1` written
//! without separators).

use std::path::Path;

use super::construction::{Code, Construction};
use crate::error::{Error, Result};
use crate::gf2::BitMatrix;
use crate::rmatrix::RMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Alphabet {
    R,
    Binary,
}

fn header(text: &str) -> Option<Alphabet> {
    let first = text.lines().map(str::trim).find(|l| !l.is_empty())?;
    let tag = first.strip_prefix('#')?.trim().to_ascii_lowercase();
    match tag.as_str() {
        "r" | "ring" | "ring r" => Some(Alphabet::R),
        "binary" | "gf2" | "gf(2)" => Some(Alphabet::Binary),
        _ => None,
    }
}

pub fn parse_code(text: &str) -> Result<Code> {
    let rows: Vec<&str> = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')).collect();
    let alphabet = header(text).unwrap_or_else(|| {
        if !rows.is_empty() && rows.iter().all(|r| r.chars().all(|c| c == '0' || c == '1')) {
            Alphabet::Binary
        } else {
            Alphabet::R
        }
    });
    match alphabet {
        Alphabet::Binary => Ok(Code::Binary(BitMatrix::from_text(text)?)),
        Alphabet::R => Ok(Code::R(RMatrix::from_text(text)?)),
    }
}

pub fn format_code(code: &Code) -> String {
    match code {
        Code::R(m) => format!("# R\n{}", m.to_text()),
        Code::Binary(b) => format!("# binary\n{}", b.to_text()),
    }
}

/// Reads a code from a file path, or builds it if `arg` is not a file but a
/// construction descriptor.
pub fn load_code(arg: &str) -> Result<Code> {
    let path = Path::new(arg);
    if path.is_file() {
        return parse_code(&std::fs::read_to_string(path)?);
    }
    match arg.parse::<Construction>() {
        Ok(c) => c.build(),
        Err(e) => Err(Error::Parse(format!("`{arg}` is neither a readable file nor a construction ({e})"))),
    }
}
