//! Textual construction descriptors.
//!
//! ```text
//! qr(7,extended)            qr(p, q1|q2|q1p|q2p|extended|extended2|sqr)
//! bsqr(23)
//! C11(0,u^2,1+u^2)          Cp(r,s,t)
//! B11(u^2,1,1+u^2,0,1,1)    Bp(r,s,t,lambda,beta,gamma)
//! gray(C11(0,u^2,1+u^2))    binary image of an R-code
//! ext(gray(C11(0,u^2,1+u^2)), X=1366E7855836D5F97, c=1)
//! idext(C11(0,u^2,1+u^2), X=(u^2,0,u^2,0,u^2,u^2,0,0,u+u^2,u,u), c=1)
//! ```
//!
//! Binary bases take `X` in hex; `R` bases take an element list. Element names
//! accept `u2`, `u^2` and `w` (for `1+u+u^2`); display uses canonical names.

use std::fmt;
use std::str::FromStr;

use crate::circulant::{self, BorderSpec, CirculantSpec};
use crate::error::{Error, Result};
use crate::extend;
use crate::gf2::{BitMatrix, BitVector};
use crate::qr::{self, QrVariant};
use crate::ring::{self, RingElement};
use crate::rmatrix::RMatrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum XSpec {
    Hex(String),
    Elements(Vec<RingElement>),
}

impl fmt::Display for XSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            XSpec::Hex(h) => f.write_str(h),
            XSpec::Elements(v) => f.write_str(&ring::format_element_list(v)),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExtensionMethod {
    Ext,
    Idext,
}

impl ExtensionMethod {
    pub fn name(self) -> &'static str {
        match self {
            ExtensionMethod::Ext => "ext",
            ExtensionMethod::Idext => "idext",
        }
    }
}

impl FromStr for ExtensionMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "ext" => Ok(ExtensionMethod::Ext),
            "idext" => Ok(ExtensionMethod::Idext),
            other => Err(Error::Parse(format!("unknown extension method `{other}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Construction {
    Qr { p: usize, variant: QrVariant },
    Bsqr { p: usize },
    Qdc(CirculantSpec),
    Bordered(CirculantSpec, BorderSpec),
    Gray(Box<Construction>),
    Extension { method: ExtensionMethod, base: Box<Construction>, x: XSpec, c: RingElement },
}

/// A built code: over `R` or binary.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Code {
    R(RMatrix),
    Binary(BitMatrix),
}

impl Code {
    /// Binary generator (Gray image for `R`-codes), reduced.
    pub fn binary(&self) -> BitMatrix {
        match self {
            Code::R(m) => m.gray_image(),
            Code::Binary(b) => b.reduce(),
        }
    }

    pub fn is_r(&self) -> bool {
        matches!(self, Code::R(_))
    }

    /// Length over the code's own alphabet.
    pub fn len(&self) -> usize {
        match self {
            Code::R(m) => m.ncols(),
            Code::Binary(b) => b.ncols(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

impl Construction {
    pub fn build(&self) -> Result<Code> {
        match self {
            Construction::Qr { p, variant } => Ok(Code::R(qr::qr_code(*p, *variant)?)),
            Construction::Bsqr { p } => Ok(Code::Binary(qr::bsqr(*p)?)),
            Construction::Qdc(spec) => Ok(Code::R(circulant::qdc_code(spec)?)),
            Construction::Bordered(spec, b) => Ok(Code::R(circulant::bordered_qdc_code(spec, b)?)),
            Construction::Gray(inner) => Ok(Code::Binary(inner.build()?.binary())),
            Construction::Extension { method, base, x, c } => {
                let base = base.build()?;
                match (&base, x) {
                    (Code::Binary(g), XSpec::Hex(h)) => {
                        if *c != RingElement::ONE {
                            return Err(Error::Construction("binary extensions use c = 1".into()));
                        }
                        let xv = extend::decode_hex_x(h, g.ncols() / if *method == ExtensionMethod::Idext { 2 } else { 1 })?;
                        match method {
                            ExtensionMethod::Ext => Ok(Code::Binary(extend::extend_ext_binary(g, &xv)?)),
                            ExtensionMethod::Idext => Ok(Code::Binary(extend::extend_idext_binary(g, &xv)?)),
                        }
                    }
                    (Code::R(g), XSpec::Elements(xv)) => match method {
                        ExtensionMethod::Ext => Ok(Code::R(extend::extend_ext_r(g, xv, *c)?)),
                        ExtensionMethod::Idext => Ok(Code::R(extend::extend_idext_r(g, xv, *c)?)),
                    },
                    (Code::Binary(_), XSpec::Elements(_)) => {
                        Err(Error::Construction("binary bases take X in hex".into()))
                    }
                    (Code::R(_), XSpec::Hex(_)) => Err(Error::Construction("R bases take X as an element list".into())),
                }
            }
        }
    }

    /// `ext(base, X=.., c=..)` with a binary `X`.
    pub fn ext_binary(base: Construction, x: &BitVector) -> Construction {
        Construction::Extension {
            method: ExtensionMethod::Ext,
            base: Box::new(base),
            x: XSpec::Hex(extend::encode_hex_x(x)),
            c: RingElement::ONE,
        }
    }

    pub fn extension_r(method: ExtensionMethod, base: Construction, x: Vec<RingElement>, c: RingElement) -> Construction {
        Construction::Extension { method, base: Box::new(base), x: XSpec::Elements(x), c }
    }
}

impl fmt::Display for Construction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Construction::Qr { p, variant } => write!(f, "qr({p},{})", variant.name()),
            Construction::Bsqr { p } => write!(f, "bsqr({p})"),
            Construction::Qdc(s) => write!(f, "C{}({},{},{})", s.p, s.r, s.s, s.t),
            Construction::Bordered(s, b) => {
                write!(f, "B{}({},{},{},{},{},{})", s.p, s.r, s.s, s.t, b.lambda, b.beta, b.gamma)
            }
            Construction::Gray(inner) => write!(f, "gray({inner})"),
            Construction::Extension { method, base, x, c } => {
                write!(f, "{}({base}, X={x}, c={c})", method.name())
            }
        }
    }
}

/// Splits `s` at commas that are not nested in parentheses.
fn split_top_level(s: &str) -> Result<Vec<&str>> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth < 0 {
                    return Err(Error::Parse(format!("unbalanced `)` in `{s}`")));
                }
            }
            ',' if depth == 0 => {
                parts.push(s[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err(Error::Parse(format!("unbalanced `(` in `{s}`")));
    }
    parts.push(s[start..].trim());
    Ok(parts)
}

fn parse_usize(s: &str) -> Result<usize> {
    s.trim().parse().map_err(|_| Error::Parse(format!("`{s}` is not a number")))
}

fn parse_elements(args: &[&str], expected: usize, what: &str) -> Result<Vec<RingElement>> {
    if args.len() != expected {
        return Err(Error::Parse(format!("{what} takes {expected} ring elements, got {}", args.len())));
    }
    args.iter().map(|a| a.parse()).collect()
}

fn parse_x(value: &str) -> Result<XSpec> {
    let v = value.trim();
    if v.starts_with('(') {
        Ok(XSpec::Elements(ring::parse_element_list(v)?))
    } else {
        let hex = v.trim_start_matches("0x").trim_start_matches("0X");
        if hex.is_empty() || !hex.chars().all(|c| c.is_ascii_hexdigit()) {
            return Err(Error::Parse(format!("`{v}` is neither hex nor an element list")));
        }
        let trimmed = hex.trim_start_matches('0').to_ascii_uppercase();
        Ok(XSpec::Hex(if trimmed.is_empty() { "0".into() } else { trimmed }))
    }
}

impl FromStr for Construction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let open = s.find('(').ok_or_else(|| Error::Parse(format!("`{s}`: expected name(args)")))?;
        if !s.ends_with(')') {
            return Err(Error::Parse(format!("`{s}`: expected closing `)`")));
        }
        let name = s[..open].trim();
        let args = split_top_level(&s[open + 1..s.len() - 1])?;
        let lower = name.to_ascii_lowercase();
        match lower.as_str() {
            "qr" => {
                let [p, v] = args[..] else {
                    return Err(Error::Parse("qr(p, variant)".into()));
                };
                Ok(Construction::Qr { p: parse_usize(p)?, variant: QrVariant::parse(v)? })
            }
            "bsqr" => {
                let [p] = args[..] else {
                    return Err(Error::Parse("bsqr(p)".into()));
                };
                Ok(Construction::Bsqr { p: parse_usize(p)? })
            }
            "gray" => {
                let [inner] = args[..] else {
                    return Err(Error::Parse("gray(construction)".into()));
                };
                Ok(Construction::Gray(Box::new(inner.parse()?)))
            }
            "ext" | "idext" => {
                if args.len() < 2 || args.len() > 3 {
                    return Err(Error::Parse(format!("{lower}(base, X=.., c=..)")));
                }
                let base: Construction = args[0].parse()?;
                let mut x = None;
                let mut c = RingElement::ONE;
                for kv in &args[1..] {
                    let (k, v) = kv
                        .split_once('=')
                        .ok_or_else(|| Error::Parse(format!("expected key=value, got `{kv}`")))?;
                    match k.trim().to_ascii_lowercase().as_str() {
                        "x" => x = Some(parse_x(v)?),
                        "c" => c = v.trim().parse()?,
                        other => return Err(Error::Parse(format!("unknown key `{other}`"))),
                    }
                }
                let x = x.ok_or_else(|| Error::Parse("missing X=".into()))?;
                Ok(Construction::Extension { method: lower.parse()?, base: Box::new(base), x, c })
            }
            _ if name.len() > 1 && (name.starts_with('C') || name.starts_with('B')) => {
                let p = parse_usize(&name[1..])?;
                if name.starts_with('C') {
                    let e = parse_elements(&args, 3, "Cp")?;
                    Ok(Construction::Qdc(CirculantSpec::new(p, e[0], e[1], e[2])))
                } else {
                    let e = parse_elements(&args, 6, "Bp")?;
                    Ok(Construction::Bordered(CirculantSpec::new(p, e[0], e[1], e[2]), BorderSpec::new(e[3], e[4], e[5])))
                }
            }
            _ => Err(Error::Parse(format!("unknown construction `{name}`"))),
        }
    }
}
