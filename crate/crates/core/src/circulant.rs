//! Quadratic circulant matrices and the (bordered) quadratic double circulant codes.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qr::residue_sets;
use crate::ring::{self, RingElement};
use crate::rmatrix::RMatrix;

/// `Q_p(r, s, t)`: `r` on column 0, `s` on residue columns, `t` on the rest.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CirculantSpec {
    pub p: usize,
    pub r: RingElement,
    pub s: RingElement,
    pub t: RingElement,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BorderSpec {
    pub lambda: RingElement,
    pub beta: RingElement,
    pub gamma: RingElement,
}

impl CirculantSpec {
    pub fn new(p: usize, r: RingElement, s: RingElement, t: RingElement) -> Self {
        CirculantSpec { p, r, s, t }
    }

    /// Every row and column sum of `Q_p(r, s, t)`.
    pub fn row_sum(&self) -> RingElement {
        self.r + ring::scale((self.p - 1) / 2, self.s + self.t)
    }
}

impl fmt::Display for CirculantSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q{}({},{},{})", self.p, self.r, self.s, self.t)
    }
}

impl BorderSpec {
    pub fn new(lambda: RingElement, beta: RingElement, gamma: RingElement) -> Self {
        BorderSpec { lambda, beta, gamma }
    }
}

pub fn first_row(spec: &CirculantSpec) -> Result<Vec<RingElement>> {
    let (residues, _) = residue_sets(spec.p)?;
    let mut row = vec![spec.t; spec.p];
    row[0] = spec.r;
    for q in residues {
        row[q] = spec.s;
    }
    Ok(row)
}

pub fn q_matrix(spec: &CirculantSpec) -> Result<RMatrix> {
    Ok(crate::qr::cyclic_shifts(&first_row(spec)?, spec.p))
}

/// Closed form of `Q Q^T` in characteristic 2.
pub fn qdc_closed_form(spec: &CirculantSpec) -> CirculantSpec {
    let CirculantSpec { p, r, s, t } = *spec;
    let k = p / 4;
    let sum_sq = (s + t).square();
    let kterm = ring::scale(k, sum_sq);
    if p % 4 == 1 {
        CirculantSpec::new(p, r.square(), s.square() + kterm, t.square() + kterm)
    } else {
        let off = r * s + r * t + kterm + s * t;
        CirculantSpec::new(p, r.square() + s.square() + t.square(), off, off)
    }
}

/// Reads `(r, s, t)` back from a matrix, if it is of the form `Q_p(r, s, t)`.
pub fn as_quadratic_circulant(m: &RMatrix, p: usize) -> Result<Option<CirculantSpec>> {
    if m.nrows() != p || m.ncols() != p {
        return Ok(None);
    }
    let (residues, nonresidues) = residue_sets(p)?;
    let row = m.row(0);
    let spec = CirculantSpec::new(p, row[0], row[residues[0]], row[nonresidues[0]]);
    Ok((q_matrix(&spec)? == *m).then_some(spec))
}

/// `Q Q^T` by direct multiplication, checked against [`qdc_closed_form`].
pub fn qdc_identity_check(spec: &CirculantSpec) -> Result<CirculantSpec> {
    let q = q_matrix(spec)?;
    let product = q.mul(&q.transpose())?;
    let closed = qdc_closed_form(spec);
    match as_quadratic_circulant(&product, spec.p)? {
        Some(direct) if direct == closed => Ok(direct),
        Some(direct) => Err(Error::IdentityMismatch(format!(
            "{spec}: direct product {direct}, closed form {closed}"
        ))),
        None => Err(Error::IdentityMismatch(format!(
            "{spec}: product is not a quadratic circulant"
        ))),
    }
}

/// `[I_p | Q_p(r, s, t)]`.
pub fn qdc_code(spec: &CirculantSpec) -> Result<RMatrix> {
    RMatrix::identity(spec.p).hconcat(&q_matrix(spec)?)
}

/// `[I_{p+1} | M]` with `M = (lambda beta..beta ; gamma Q_p ; ...)`.
pub fn bordered_qdc_code(spec: &CirculantSpec, b: &BorderSpec) -> Result<RMatrix> {
    let q = q_matrix(spec)?;
    let n = spec.p + 1;
    let mut m = RMatrix::zeros(n, n);
    m.set(0, 0, b.lambda);
    for j in 1..n {
        m.set(0, j, b.beta);
        m.set(j, 0, b.gamma);
        for i in 1..n {
            m.set(i, j, q.get(i - 1, j - 1));
        }
    }
    RMatrix::identity(n).hconcat(&m)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum QdcFamily {
    /// `C_p(0, u^2, 1+u^2)`
    First,
    /// `C_p(u+u^2, 1+u, u)`
    Second,
}

impl QdcFamily {
    pub fn spec(self, p: usize) -> CirculantSpec {
        let e = |s: &str| s.parse::<RingElement>().expect("literal");
        match self {
            QdcFamily::First => CirculantSpec::new(p, e("0"), e("u^2"), e("1+u^2")),
            QdcFamily::Second => CirculantSpec::new(p, e("u+u^2"), e("1+u"), e("u")),
        }
    }
}

pub fn self_dual_qdc_family(p: usize, which: QdcFamily) -> Result<RMatrix> {
    residue_sets(p)?;
    if p % 8 != 3 {
        return Err(Error::WrongResidueClass(p, "3 mod 8"));
    }
    qdc_code(&which.spec(p))
}

/// `Q Q^T = Q_p(0,1,1)`, every row sum equals `lambda`, and `lambda^2 = 0`.
pub fn bordered_self_dual_check(spec: &CirculantSpec, b: &BorderSpec) -> Result<bool> {
    if b.beta != RingElement::ONE || b.gamma != RingElement::ONE {
        return Err(Error::Construction("the bordered criterion needs beta = gamma = 1".into()));
    }
    let product = qdc_identity_check(spec)?;
    let target = CirculantSpec::new(spec.p, RingElement::ZERO, RingElement::ONE, RingElement::ONE);
    Ok(product == target && spec.row_sum() == b.lambda && b.lambda.square().is_zero())
}
