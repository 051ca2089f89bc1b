//! Dense matrices over `R` and their Gray images.
//!
//! The Gray map sends `a + bu + cu^2` (with `a, b, c` in `F2^n`) to the
//! blockwise concatenation `(a + b | b + c | c)` of length `3n`. Cardinalities
//! and equalities of `R`-codes are computed on this image: the map is
//! injective and `F2`-linear, so `|C| = 2^rank`.

use std::fmt;

use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVector};
use crate::ring::{self, RingElement};

pub type RVector = Vec<RingElement>;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RMatrix {
    ncols: usize,
    rows: Vec<RVector>,
}

impl RMatrix {
    pub fn new(ncols: usize, rows: Vec<RVector>) -> Result<Self> {
        if let Some(bad) = rows.iter().find(|r| r.len() != ncols) {
            return Err(Error::Dimension(format!("row of length {} in an R-matrix with {ncols} columns", bad.len())));
        }
        Ok(RMatrix { ncols, rows })
    }

    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        RMatrix { ncols, rows: vec![vec![RingElement::ZERO; ncols]; nrows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.rows[i][i] = RingElement::ONE;
        }
        m
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[RVector] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &[RingElement] {
        &self.rows[i]
    }

    pub fn get(&self, i: usize, j: usize) -> RingElement {
        self.rows[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: RingElement) {
        self.rows[i][j] = x;
    }

    pub fn transpose(&self) -> RMatrix {
        let rows = (0..self.ncols).map(|j| self.rows.iter().map(|r| r[j]).collect()).collect();
        RMatrix { ncols: self.rows.len(), rows }
    }

    pub fn mul(&self, other: &RMatrix) -> Result<RMatrix> {
        if self.ncols != other.nrows() {
            return Err(Error::Dimension(format!("{}x{} times {}x{}", self.nrows(), self.ncols, other.nrows(), other.ncols)));
        }
        let rows = self
            .rows
            .iter()
            .map(|r| {
                (0..other.ncols)
                    .map(|j| r.iter().zip(&other.rows).map(|(&a, row)| a * row[j]).sum())
                    .collect()
            })
            .collect();
        Ok(RMatrix { ncols: other.ncols, rows })
    }

    /// `[self | other]`.
    pub fn hconcat(&self, other: &RMatrix) -> Result<RMatrix> {
        if self.nrows() != other.nrows() {
            return Err(Error::Dimension("hconcat row counts differ".into()));
        }
        let rows = self.rows.iter().zip(&other.rows).map(|(a, b)| a.iter().chain(b).copied().collect()).collect();
        Ok(RMatrix { ncols: self.ncols + other.ncols, rows })
    }

    pub fn push_row(&mut self, row: RVector) -> Result<()> {
        if row.len() != self.ncols {
            return Err(Error::Dimension(format!("pushing row of length {} into {} columns", row.len(), self.ncols)));
        }
        self.rows.push(row);
        Ok(())
    }

    /// Gray image of the `R`-module spanned by the rows, as a reduced binary basis.
    pub fn gray_image(&self) -> BitMatrix {
        gray_span(self).reduce()
    }

    /// `log2 |C|` for the code generated by the rows.
    pub fn log2_size(&self) -> usize {
        gray_span(self).rank()
    }

    /// Permutes coordinates: new coordinate `perm[j]` holds old coordinate `j`.
    pub fn permute_columns(&self, perm: &[usize]) -> RMatrix {
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let mut out = vec![RingElement::ZERO; self.ncols];
                for (j, &x) in r.iter().enumerate() {
                    out[perm[j]] = x;
                }
                out
            })
            .collect();
        RMatrix { ncols: self.ncols, rows }
    }

    /// Rows as whitespace-separated canonical element names.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for r in &self.rows {
            let names: Vec<String> = r.iter().map(ToString::to_string).collect();
            out.push_str(&names.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn from_text(text: &str) -> Result<RMatrix> {
        let rows = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(ring::parse_element_list)
            .collect::<Result<Vec<_>>>()?;
        let ncols = rows.first().map_or(0, Vec::len);
        RMatrix::new(ncols, rows)
    }
}

impl fmt::Debug for RMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RMatrix {}x{}", self.rows.len(), self.ncols)?;
        for r in &self.rows {
            writeln!(f, "  {}", ring::format_element_list(r))?;
        }
        Ok(())
    }
}

/// Gray image of a single vector.
pub fn gray_vector(v: &[RingElement]) -> BitVector {
    let n = v.len();
    let mut out = BitVector::zeros(3 * n);
    for (j, x) in v.iter().enumerate() {
        let (s0, s1, s2) = x.gray_symbol();
        out.set(j, s0);
        out.set(n + j, s1);
        out.set(2 * n + j, s2);
    }
    out
}

/// Inverse of [`gray_vector`]. The length must be a multiple of three.
pub fn gray_preimage(v: &BitVector) -> Result<RVector> {
    if v.len() % 3 != 0 {
        return Err(Error::Dimension(format!("Gray preimage of a length-{} vector", v.len())));
    }
    let n = v.len() / 3;
    Ok((0..n).map(|j| RingElement::from_gray_symbol(v.get(j), v.get(n + j), v.get(2 * n + j))).collect())
}

/// Lee weight of an `R`-vector.
pub fn lee_weight(v: &[RingElement]) -> usize {
    v.iter().map(|x| x.lee_weight() as usize).sum()
}

fn scale_vector(c: RingElement, v: &[RingElement]) -> RVector {
    v.iter().map(|&x| c * x).collect()
}

/// Unreduced spanning set `phi(r), phi(u r), phi(u^2 r)` for every row `r`.
fn gray_span(m: &RMatrix) -> BitMatrix {
    let mut rows = Vec::with_capacity(3 * m.nrows());
    for r in &m.rows {
        rows.push(gray_vector(r));
        rows.push(gray_vector(&scale_vector(RingElement::U, r)));
        rows.push(gray_vector(&scale_vector(RingElement::U2, r)));
    }
    BitMatrix::new(3 * m.ncols, rows).expect("consistent lengths")
}

fn from_coefficient_vector(v: &BitVector) -> RVector {
    let n = v.len() / 3;
    (0..n).map(|j| RingElement::new(v.get(j), v.get(n + j), v.get(2 * n + j))).collect()
}

/// Euclidean dual over `R`, computed without the Gray map.
///
/// `<x, r> = 0` splits into three `F2`-linear equations in the coefficient bits
/// of `x`; the null space of that system is `C^perp`. The returned rows are an
/// `F2`-basis of the dual (which is also an `R`-generating set).
pub fn r_dual(m: &RMatrix) -> RMatrix {
    let n = m.ncols;
    let basis = [RingElement::ONE, RingElement::U, RingElement::U2];
    let mut constraints = Vec::with_capacity(3 * m.nrows());
    for r in &m.rows {
        for component in 0..3 {
            let mut eq = BitVector::zeros(3 * n);
            for (j, &rj) in r.iter().enumerate() {
                for (t, &e) in basis.iter().enumerate() {
                    let (c0, c1, c2) = (e * rj).coefficients();
                    if [c0, c1, c2][component] {
                        eq.set(t * n + j, true);
                    }
                }
            }
            constraints.push(eq);
        }
    }
    let null = BitMatrix::new(3 * n, constraints).expect("consistent lengths").dual();
    let rows = null.rows().iter().map(from_coefficient_vector).collect();
    RMatrix { ncols: n, rows }
}

/// Outcome of [`r_self_dual_report`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SelfDualReport {
    pub orthogonal: bool,
    pub log2_size: usize,
    pub required_log2_size: Option<usize>,
}

impl SelfDualReport {
    pub fn is_self_dual(&self) -> bool {
        self.orthogonal && Some(self.log2_size) == self.required_log2_size
    }
}

pub fn r_self_dual_report(m: &RMatrix) -> SelfDualReport {
    let orthogonal = m
        .rows
        .iter()
        .enumerate()
        .all(|(i, a)| m.rows[i..].iter().all(|b| ring::dot(a, b).is_zero()));
    let required_log2_size = (m.ncols % 2 == 0).then_some(3 * m.ncols / 2);
    let report = SelfDualReport { orthogonal, log2_size: m.log2_size(), required_log2_size };
    if m.ncols % 2 == 1 {
        log::debug!("odd length {}: a self-dual R-code needs |C| = 8^(n/2)", m.ncols);
    }
    report
}

/// All row inner products vanish and `|C| = 8^(n/2)`.
pub fn r_self_dual_check(m: &RMatrix) -> bool {
    r_self_dual_report(m).is_self_dual()
}
