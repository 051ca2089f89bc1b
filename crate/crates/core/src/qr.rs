//! Quadratic-residue codes over `R`.
//!
//! Everything is built from the residue index sets of a prime `p` with
//! `p = +-1 (mod 8)`: the binary idempotents `e1`, `e2`, the four lifted
//! idempotent generators `(1+u^2)f + u^2 g`, the extended codes with a border
//! coordinate, and the subtracted codes obtained by identifying the two end
//! coordinates of an extended code.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVector};
use crate::ring::RingElement;
use crate::rmatrix::{self, RMatrix, RVector};

pub fn is_odd_prime(p: usize) -> bool {
    p >= 3 && p % 2 == 1 && (3..).step_by(2).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// Quadratic residues and non-residues in `1..p`.
pub fn residue_sets(p: usize) -> Result<(Vec<usize>, Vec<usize>)> {
    if !is_odd_prime(p) {
        return Err(Error::NotOddPrime(p));
    }
    let mut is_residue = vec![false; p];
    for i in 1..p {
        is_residue[i * i % p] = true;
    }
    let residues = (1..p).filter(|&i| is_residue[i]).collect();
    let nonresidues = (1..p).filter(|&i| !is_residue[i]).collect();
    Ok((residues, nonresidues))
}

/// Residue data for a prime with `2` a quadratic residue.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QrContext {
    pub p: usize,
    pub residues: Vec<usize>,
    pub nonresidues: Vec<usize>,
    /// `sum_{i in Q} x^i`
    pub e1: BitVector,
    /// `sum_{i in N} x^i`
    pub e2: BitVector,
    /// all-ones, `1 + e1 + e2`
    pub h: BitVector,
}

impl QrContext {
    pub fn new(p: usize) -> Result<Self> {
        let (residues, nonresidues) = residue_sets(p)?;
        if !residues.contains(&2) {
            return Err(Error::TwoNotQuadraticResidue(p));
        }
        let e1 = BitVector::from_support(p, &residues);
        let e2 = BitVector::from_support(p, &nonresidues);
        Ok(QrContext { p, residues, nonresidues, e1, e2, h: BitVector::ones(p) })
    }

    pub fn case(&self) -> QrCase {
        if self.p % 8 == 7 {
            QrCase::MinusOne
        } else {
            QrCase::PlusOne
        }
    }

    fn one(&self) -> BitVector {
        BitVector::from_support(self.p, &[0])
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum QrCase {
    /// `p = -1 (mod 8)`
    MinusOne,
    /// `p = +1 (mod 8)`
    PlusOne,
}

fn check_multiplier(a: usize, p: usize) -> Result<usize> {
    let a = a % p;
    if a == 0 {
        return Err(Error::NotInvertibleModP { a, p });
    }
    Ok(a)
}

/// `mu_a`: moves the coefficient at index `i` to index `a i mod p`.
pub fn mu<T: Clone>(a: usize, f: &[T]) -> Result<Vec<T>> {
    let p = f.len();
    let a = check_multiplier(a, p)?;
    let mut out = f.to_vec();
    for (i, x) in f.iter().enumerate() {
        out[a * i % p] = x.clone();
    }
    Ok(out)
}

pub fn mu_bits(a: usize, f: &BitVector) -> Result<BitVector> {
    let bits: Vec<bool> = f.iter().collect();
    Ok(BitVector::from_bits(mu(a, &bits)?))
}

/// Coordinate permutation of `mu_a` on length-`p` words.
pub fn mu_permutation(a: usize, p: usize) -> Result<Vec<usize>> {
    let a = check_multiplier(a, p)?;
    Ok((0..p).map(|i| a * i % p).collect())
}

/// Product in `F2[x]/(x^p - 1)` as a cyclic convolution.
pub fn cyclic_mul(f: &BitVector, g: &BitVector) -> BitVector {
    let p = f.len();
    assert_eq!(p, g.len());
    let mut out = BitVector::zeros(p);
    for i in f.support() {
        for j in g.support() {
            out.flip((i + j) % p);
        }
    }
    out
}

/// Product in `R[x]/(x^p - 1)`.
pub fn r_cyclic_mul(f: &[RingElement], g: &[RingElement]) -> RVector {
    let p = f.len();
    assert_eq!(p, g.len());
    let mut out = vec![RingElement::ZERO; p];
    for (i, &a) in f.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
        for (j, &b) in g.iter().enumerate() {
            out[(i + j) % p] += a * b;
        }
    }
    out
}

/// `(1+u^2) f + u^2 g` coefficientwise.
pub fn lift(f: &BitVector, g: &BitVector) -> RVector {
    f.iter()
        .zip(g.iter())
        .map(|(a, b)| match (a, b) {
            (false, false) => RingElement::ZERO,
            (true, false) => RingElement::ONE_PLUS_U2,
            (false, true) => RingElement::U2,
            (true, true) => RingElement::ONE,
        })
        .collect()
}

/// Whether `(1+u^2)f + u^2(g + h(u+u^2))` is idempotent in `R[x]/(x^p - 1)`.
///
/// Answers through the characterization (`f`, `g` idempotent over `F2` and the
/// `h` term vanishing) and confirms it by squaring the lifted polynomial.
pub fn lifted_idempotent_check(f: &BitVector, g: &BitVector, h: &[RingElement]) -> Result<bool> {
    let p = f.len();
    if g.len() != p || h.len() != p {
        return Err(Error::Dimension("f, g, h must share one length".into()));
    }
    let nil_part: RVector = h.iter().map(|&x| RingElement::U_PLUS_U2 * x).collect();
    let characterized = cyclic_mul(f, f) == *f && cyclic_mul(g, g) == *g && nil_part.iter().all(|x| x.is_zero());

    let lifted: RVector = lift(f, g).iter().zip(&nil_part).map(|(&a, &b)| a + b).collect();
    let squared = r_cyclic_mul(&lifted, &lifted) == lifted;
    if squared != characterized {
        return Err(Error::IdentityMismatch(format!(
            "idempotent characterization says {characterized}, squaring says {squared}"
        )));
    }
    Ok(characterized)
}

/// The `k` consecutive right cyclic shifts `x^0 g, ..., x^{k-1} g` as rows.
pub fn cyclic_shifts(g: &[RingElement], k: usize) -> RMatrix {
    let p = g.len();
    let rows = (0..k).map(|s| (0..p).map(|i| g[(i + p - s % p) % p]).collect()).collect();
    RMatrix::new(p, rows).expect("rows share length p")
}

/// Generator matrices of the four QR codes over `R`.
#[derive(Clone, Debug)]
pub struct RQrFamily {
    pub context: QrContext,
    pub case: QrCase,
    /// Idempotent generators of `Q1, Q2, Q1', Q2'`.
    pub idempotents: [RVector; 4],
    pub q1: RMatrix,
    pub q2: RMatrix,
    pub q1p: RMatrix,
    pub q2p: RMatrix,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum QrVariant {
    Q1,
    Q2,
    Q1p,
    Q2p,
    /// Extended `Q1`.
    Extended,
    /// Extended `Q2`.
    Extended2,
    Sqr,
}

impl QrVariant {
    pub fn name(self) -> &'static str {
        match self {
            QrVariant::Q1 => "q1",
            QrVariant::Q2 => "q2",
            QrVariant::Q1p => "q1p",
            QrVariant::Q2p => "q2p",
            QrVariant::Extended => "extended",
            QrVariant::Extended2 => "extended2",
            QrVariant::Sqr => "sqr",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Ok(match s.trim().to_ascii_lowercase().as_str() {
            "q1" => QrVariant::Q1,
            "q2" => QrVariant::Q2,
            "q1p" | "q1'" => QrVariant::Q1p,
            "q2p" | "q2'" => QrVariant::Q2p,
            "extended" | "ext" | "extended1" => QrVariant::Extended,
            "extended2" | "ext2" => QrVariant::Extended2,
            "sqr" => QrVariant::Sqr,
            other => return Err(Error::Parse(format!("unknown QR variant `{other}`"))),
        })
    }
}

fn shift_generator(g: &[RingElement], k: usize, label: &str) -> Result<RMatrix> {
    let all = cyclic_shifts(g, g.len());
    let gen = cyclic_shifts(g, k);
    let (full, got) = (all.log2_size(), gen.log2_size());
    if got != 3 * k || full != 3 * k {
        return Err(Error::Construction(format!(
            "{label}: {k} shifts give 2^{got}, full cyclic code has 2^{full}, expected 8^{k}"
        )));
    }
    Ok(gen)
}

pub fn qr_family(p: usize) -> Result<RQrFamily> {
    let ctx = QrContext::new(p)?;
    let one = ctx.one();
    let (a, b, ap, bp) = match ctx.case() {
        QrCase::MinusOne => (ctx.e1.clone(), ctx.e2.clone(), one.xor(&ctx.e2), one.xor(&ctx.e1)),
        QrCase::PlusOne => (one.xor(&ctx.e1), one.xor(&ctx.e2), ctx.e2.clone(), ctx.e1.clone()),
    };
    let idempotents = [lift(&a, &b), lift(&b, &a), lift(&ap, &bp), lift(&bp, &ap)];
    let big = (p + 1) / 2;
    let small = (p - 1) / 2;
    Ok(RQrFamily {
        case: ctx.case(),
        q1: shift_generator(&idempotents[0], big, "Q1")?,
        q2: shift_generator(&idempotents[1], big, "Q2")?,
        q1p: shift_generator(&idempotents[2], small, "Q1'")?,
        q2p: shift_generator(&idempotents[3], small, "Q2'")?,
        idempotents,
        context: ctx,
    })
}

/// Extended code: rows of `G_i'` with a leading `0`, then the all-ones row.
pub fn extend_qr(fam: &RQrFamily, i: usize) -> Result<RMatrix> {
    let base = match i {
        1 => &fam.q1p,
        2 => &fam.q2p,
        _ => return Err(Error::Parse(format!("extended QR index must be 1 or 2, got {i}"))),
    };
    let p = fam.context.p;
    let mut rows: Vec<RVector> = base
        .rows()
        .iter()
        .map(|r| std::iter::once(RingElement::ZERO).chain(r.iter().copied()).collect())
        .collect();
    rows.push(vec![RingElement::ONE; p + 1]);
    RMatrix::new(p + 1, rows)
}

/// Keeps codewords whose coordinate 0 equals coordinate `n-1`, then drops both.
///
/// Works on the Gray image; the surviving binary basis is pulled back and
/// thinned to an `R`-generating set.
pub fn subtract_sqr(extended: &RMatrix) -> Result<RMatrix> {
    let n = extended.ncols();
    if n < 2 {
        return Err(Error::Dimension("subtracted code needs length >= 2".into()));
    }
    let image = extended.gray_image();
    let pairs: Vec<(usize, usize)> = (0..3).map(|b| (b * n, b * n + n - 1)).collect();
    let sub = image.subcode_with_equal_coordinates(&pairs);
    let drop: Vec<usize> = pairs.iter().flat_map(|&(x, y)| [x, y]).collect();
    let shortened = sub.delete_columns(&drop).reduce();
    let target = shortened.rank();
    let mut gen = RMatrix::zeros(0, n - 2);
    let mut have = 0;
    for row in shortened.rows() {
        if have == target {
            break;
        }
        let r = rmatrix::gray_preimage(row)?;
        let mut trial = gen.clone();
        trial.push_row(r)?;
        let size = trial.log2_size();
        if size > have {
            gen = trial;
            have = size;
        }
    }
    Ok(gen)
}

/// Binary subtracted code: Gray image of the extended code with two binary
/// coordinates identified and removed. Both come from the added `R`
/// coordinate 0: its `a+b` bit (position 0) and its `c` bit (position `2n`).
pub fn bsqr(p: usize) -> Result<BitMatrix> {
    if p % 8 != 7 {
        return Err(Error::WrongResidueClass(p, "-1 mod 8"));
    }
    let fam = qr_family(p)?;
    let image = extend_qr(&fam, 1)?.gray_image();
    let (first, second) = (0, 2 * (p + 1));
    Ok(image.subcode_with_equal_coordinates(&[(first, second)]).delete_columns(&[first, second]).reduce())
}

/// Generator matrix of one named QR code (over `R`).
pub fn qr_code(p: usize, variant: QrVariant) -> Result<RMatrix> {
    let fam = qr_family(p)?;
    match variant {
        QrVariant::Q1 => Ok(fam.q1),
        QrVariant::Q2 => Ok(fam.q2),
        QrVariant::Q1p => Ok(fam.q1p),
        QrVariant::Q2p => Ok(fam.q2p),
        QrVariant::Extended => extend_qr(&fam, 1),
        QrVariant::Extended2 => extend_qr(&fam, 2),
        QrVariant::Sqr => {
            if p % 8 != 7 {
                return Err(Error::WrongResidueClass(p, "-1 mod 8"));
            }
            subtract_sqr(&extend_qr(&fam, 1)?)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rmatrix::r_dual;

    fn r(s: &str) -> RingElement {
        s.parse().unwrap()
    }

    fn brute_squares(p: usize) -> Vec<usize> {
        let mut v: Vec<usize> = (1..p).map(|i| i * i % p).collect();
        v.sort();
        v.dedup();
        v
    }

    #[test]
    fn residue_set_examples() {
        assert_eq!(residue_sets(7).unwrap(), (vec![1, 2, 4], vec![3, 5, 6]));
        assert_eq!(residue_sets(3).unwrap(), (vec![1], vec![2]));
        let (q, n) = residue_sets(17).unwrap();
        assert_eq!((q.len(), n.len()), (8, 8));
        assert!(q.contains(&2));
        for p in [3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 41] {
            let (q, n) = residue_sets(p).unwrap();
            assert_eq!(q, brute_squares(p));
            assert_eq!(q.len(), (p - 1) / 2);
            assert_eq!(n.len(), (p - 1) / 2);
            assert!(!q.contains(&0) && !n.contains(&0));
        }
        assert!(matches!(residue_sets(9), Err(Error::NotOddPrime(9))));
        assert!(matches!(residue_sets(2), Err(Error::NotOddPrime(2))));
    }

    #[test]
    fn context_requires_two_residue() {
        for p in [7, 17, 23, 31, 41] {
            let ctx = QrContext::new(p).unwrap();
            let mut all = ctx.e1.xor(&ctx.e2);
            all.flip(0);
            assert_eq!(all, ctx.h);
        }
        assert!(matches!(QrContext::new(11), Err(Error::TwoNotQuadraticResidue(11))));
        assert!(matches!(qr_family(13), Err(Error::TwoNotQuadraticResidue(13))));
    }

    #[test]
    fn mu_action() {
        let ctx = QrContext::new(17).unwrap();
        assert_eq!(mu_bits(1, &ctx.e1).unwrap(), ctx.e1);
        for &n in &ctx.nonresidues {
            assert_eq!(mu_bits(n, &ctx.e1).unwrap(), ctx.e2);
        }
        assert!(mu_bits(0, &ctx.e1).is_err());
        assert!(mu_bits(17, &ctx.e1).is_err());
        // mu_a is multiplicative on F2[x]/(x^p-1)
        let f = BitVector::from_support(17, &[0, 3, 4, 9]);
        let g = BitVector::from_support(17, &[1, 2, 16]);
        for a in 1..17 {
            let lhs = mu_bits(a, &cyclic_mul(&f, &g)).unwrap();
            let rhs = cyclic_mul(&mu_bits(a, &f).unwrap(), &mu_bits(a, &g).unwrap());
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn lifted_idempotents_are_idempotent() {
        for p in [7, 17, 23] {
            let ctx = QrContext::new(p).unwrap();
            let zero_r = vec![RingElement::ZERO; p];
            assert!(lifted_idempotent_check(&ctx.e1, &ctx.e2, &zero_r).unwrap());
            let ones_r = vec![RingElement::ONE; p];
            assert!(!lifted_idempotent_check(&ctx.e1, &ctx.e2, &ones_r).unwrap());
            let z = BitVector::zeros(p);
            assert!(lifted_idempotent_check(&z, &z, &zero_r).unwrap());
            // x is not idempotent
            let x = BitVector::from_support(p, &[1]);
            assert!(!lifted_idempotent_check(&x, &z, &zero_r).unwrap());
        }
    }

    #[test]
    fn p7_idempotent_and_sizes() {
        let fam = qr_family(7).unwrap();
        let expected: Vec<_> = ["1", "u^2", "u^2", "1+u^2", "u^2", "1+u^2", "1+u^2"].iter().map(|s| r(s)).collect();
        assert_eq!(fam.idempotents[2], expected);
        assert_eq!(fam.q1.log2_size(), 12);
        assert_eq!(fam.q1p.log2_size(), 9);
        for g in &fam.idempotents {
            assert_eq!(&r_cyclic_mul(g, g), g);
        }
    }

    #[test]
    fn p17_sizes() {
        let fam = qr_family(17).unwrap();
        assert_eq!(fam.case, QrCase::PlusOne);
        assert_eq!(fam.q1p.log2_size(), 24);
        assert_eq!(fam.q1.log2_size(), 27);
    }

    #[test]
    fn p7_extended_matches_printed_matrix() {
        let fam = qr_family(7).unwrap();
        let ext = extend_qr(&fam, 1).unwrap();
        let printed = RMatrix::from_text(
            "0 1 u^2 u^2 1+u^2 u^2 1+u^2 1+u^2\n\
             0 1+u^2 1 u^2 u^2 1+u^2 u^2 1+u^2\n\
             0 1+u^2 1+u^2 1 u^2 u^2 1+u^2 u^2\n\
             1 1 1 1 1 1 1 1\n",
        )
        .unwrap();
        assert_eq!(ext, printed);
        assert!(rmatrix::r_self_dual_check(&ext));
    }

    #[test]
    fn extended_self_dual_minus_one_case() {
        for p in [7, 23] {
            let fam = qr_family(p).unwrap();
            for i in [1, 2] {
                let ext = extend_qr(&fam, i).unwrap();
                assert!(rmatrix::r_self_dual_check(&ext));
                let img = ext.gray_image();
                assert!(img.is_self_dual());
                assert!(img.is_doubly_even());
            }
        }
    }

    #[test]
    fn extended_duals_plus_one_case() {
        let fam = qr_family(17).unwrap();
        let g1 = extend_qr(&fam, 1).unwrap();
        let g2 = extend_qr(&fam, 2).unwrap();
        assert!(!rmatrix::r_self_dual_check(&g1));
        assert!(g1.gray_image().dual().same_row_space(&g2.gray_image()));
        assert!(r_dual(&g1).gray_image().same_row_space(&g2.gray_image()));
    }

    #[test]
    fn subtracted_p7() {
        let sqr = qr_code(7, QrVariant::Sqr).unwrap();
        assert_eq!(sqr.ncols(), 6);
        let img = sqr.gray_image();
        assert_eq!((img.ncols(), img.rank()), (18, 9));
        assert!(img.is_self_dual());
        assert!(!img.is_doubly_even());
        // the printed generator spans the same code
        let printed = RMatrix::from_text("u^2 1+u^2 0 1 1 1\n1+u^2 1 1 u^2 0 1\n1 1 1 1 1 1\n").unwrap();
        assert!(printed.gray_image().same_row_space(&img));

        let b = bsqr(7).unwrap();
        assert_eq!((b.ncols(), b.rank()), (22, 11));
        assert!(b.is_self_dual());
        assert!(bsqr(17).is_err());
    }

    #[test]
    fn subtracted_zero_code() {
        let zero = RMatrix::zeros(2, 8);
        assert_eq!(subtract_sqr(&zero).unwrap().log2_size(), 0);
    }

    #[test]
    fn subtracted_p23_dimension() {
        let sqr = qr_code(23, QrVariant::Sqr).unwrap();
        let img = sqr.gray_image();
        assert_eq!((img.ncols(), img.rank()), (66, 33));
        let b = bsqr(23).unwrap();
        assert_eq!((b.ncols(), b.rank()), (70, 35));
        assert!(b.is_self_dual());
    }
}
