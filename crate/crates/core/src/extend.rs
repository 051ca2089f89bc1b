//! Self-dual extensions of self-dual codes by two coordinates.
//!
//! `ext`: from any self-dual `C` and `X` with `<X,X> = 1`, the rows
//! `(1, 0, X)` and `(<r_i,X>, c<r_i,X>, r_i)` generate a self-dual code of
//! length `n + 2`.
//!
//! `idext`: from `C = [I_n | A]` whose rows of `A` all sum to a unit `v`, the
//! rows `(1, 0, x_1..x_n, v^-1..v^-1)` and `(x_i + 1, c(x_i + 1), e_i | a_i)`
//! generate a self-dual code of length `2n + 2` provided `<X,X> = 1 + n v^-2`.
//!
//! Both are written once over [`Char2Base`], implemented by `bool` (GF(2)) and
//! [`RingElement`].

use std::fmt::Debug;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVector};
use crate::ring::RingElement;
use crate::rmatrix::{self, RMatrix};

/// A commutative ring of characteristic 2 with identity.
pub trait Char2Base: Copy + Eq + Debug + Send + Sync {
    const ZERO: Self;
    const ONE: Self;
    fn plus(self, other: Self) -> Self;
    fn times(self, other: Self) -> Self;
    fn inverse(self) -> Option<Self>;
    fn render(self) -> String;

    fn is_unit(self) -> bool {
        self.inverse().is_some()
    }
}

impl Char2Base for bool {
    const ZERO: Self = false;
    const ONE: Self = true;

    fn plus(self, other: Self) -> Self {
        self ^ other
    }

    fn times(self, other: Self) -> Self {
        self & other
    }

    fn inverse(self) -> Option<Self> {
        self.then_some(true)
    }

    fn render(self) -> String {
        u8::from(self).to_string()
    }
}

impl Char2Base for RingElement {
    const ZERO: Self = RingElement::ZERO;
    const ONE: Self = RingElement::ONE;

    fn plus(self, other: Self) -> Self {
        self + other
    }

    fn times(self, other: Self) -> Self {
        self * other
    }

    fn inverse(self) -> Option<Self> {
        RingElement::inverse(self).ok()
    }

    fn render(self) -> String {
        self.to_string()
    }
}

fn inner<T: Char2Base>(x: &[T], y: &[T]) -> T {
    x.iter().zip(y).fold(T::ZERO, |acc, (&a, &b)| acc.plus(a.times(b)))
}

fn times_count<T: Char2Base>(n: usize, x: T) -> T {
    if n % 2 == 1 {
        x
    } else {
        T::ZERO
    }
}

fn check_c<T: Char2Base>(c: T) -> Result<()> {
    if c.times(c) != T::ONE {
        return Err(Error::NotAUnit(format!("c = {} (need c^2 = 1)", c.render())));
    }
    Ok(())
}

fn check_norm<T: Char2Base>(x: &[T], expected: T) -> Result<()> {
    let found = inner(x, x);
    if found != expected {
        return Err(Error::NotUnimodular { found: found.render(), expected: expected.render() });
    }
    Ok(())
}

/// Rows of the `ext` generator; `rows` is any generating set of `C`.
pub fn ext_rows<T: Char2Base>(rows: &[Vec<T>], x: &[T], c: T) -> Result<Vec<Vec<T>>> {
    let n = x.len();
    if rows.iter().any(|r| r.len() != n) {
        return Err(Error::Dimension(format!("X has length {n}, code rows do not")));
    }
    check_c(c)?;
    check_norm(x, T::ONE)?;
    let mut out = Vec::with_capacity(rows.len() + 1);
    out.push([T::ONE, T::ZERO].into_iter().chain(x.iter().copied()).collect());
    for r in rows {
        let y = inner(r, x);
        out.push([y, c.times(y)].into_iter().chain(r.iter().copied()).collect());
    }
    Ok(out)
}

/// Common value `v` of the row sums of `A` in `rows = [I_n | A]`.
pub fn systematic_row_sum<T: Char2Base>(rows: &[Vec<T>]) -> Result<T> {
    let n = rows.len();
    for (i, r) in rows.iter().enumerate() {
        if r.len() != 2 * n {
            return Err(Error::NotSystematic(format!("row {i} has length {}, expected {}", r.len(), 2 * n)));
        }
        if (0..n).any(|j| r[j] != if i == j { T::ONE } else { T::ZERO }) {
            return Err(Error::NotSystematic(format!("row {i} does not start with a unit vector")));
        }
    }
    let sums: Vec<T> = rows.iter().map(|r| r[n..].iter().fold(T::ZERO, |a, &b| a.plus(b))).collect();
    let v = *sums.first().ok_or_else(|| Error::NotSystematic("empty generator".into()))?;
    if sums.iter().any(|&s| s != v) || !v.is_unit() {
        let shown: Vec<String> = sums.iter().map(|s| s.render()).collect();
        return Err(Error::RowSums(shown.join(", ")));
    }
    Ok(v)
}

/// The value `1 + n v^-2` that `<X,X>` must take for `idext`.
pub fn idext_required_norm<T: Char2Base>(n: usize, v: T) -> Result<T> {
    let vi = v.inverse().ok_or_else(|| Error::RowSums(format!("{} is not a unit", v.render())))?;
    Ok(T::ONE.plus(times_count(n, vi.times(vi))))
}

/// Rows of the `idext` generator; `rows` must be exactly `[I_n | A]`.
pub fn idext_rows<T: Char2Base>(rows: &[Vec<T>], x: &[T], c: T) -> Result<Vec<Vec<T>>> {
    let n = rows.len();
    if x.len() != n {
        return Err(Error::Dimension(format!("X has length {}, expected {n}", x.len())));
    }
    let v = systematic_row_sum(rows)?;
    check_c(c)?;
    check_norm(x, idext_required_norm(n, v)?)?;
    let vi = v.inverse().expect("checked unit");
    let mut out = Vec::with_capacity(n + 1);
    let mut first = vec![T::ONE, T::ZERO];
    first.extend_from_slice(x);
    first.extend(std::iter::repeat(vi).take(n));
    out.push(first);
    for (i, r) in rows.iter().enumerate() {
        let y = x[i].plus(T::ONE);
        out.push([y, c.times(y)].into_iter().chain(r.iter().copied()).collect());
    }
    Ok(out)
}

fn bit_rows(m: &BitMatrix) -> Vec<Vec<bool>> {
    m.rows().iter().map(|r| r.iter().collect()).collect()
}

fn from_bit_rows(ncols: usize, rows: Vec<Vec<bool>>) -> Result<BitMatrix> {
    BitMatrix::new(ncols, rows.into_iter().map(BitVector::from_bits).collect())
}

fn verified_binary(out: BitMatrix) -> Result<BitMatrix> {
    if !out.is_self_dual() {
        return Err(Error::Construction("extension output failed the self-duality check".into()));
    }
    Ok(out)
}

fn verified_r(out: RMatrix) -> Result<RMatrix> {
    if !rmatrix::r_self_dual_check(&out) {
        return Err(Error::Construction("extension output failed the self-duality check".into()));
    }
    Ok(out)
}

/// `ext` over GF(2) (`c = 1`). The output is reduced and verified self-dual.
pub fn extend_ext_binary(g: &BitMatrix, x: &BitVector) -> Result<BitMatrix> {
    if !g.is_self_dual() {
        return Err(Error::NotSelfDual);
    }
    let xs: Vec<bool> = x.iter().collect();
    let rows = ext_rows(&bit_rows(g), &xs, true)?;
    verified_binary(from_bit_rows(g.ncols() + 2, rows)?.reduce())
}

/// `ext` over `R`, verified self-dual.
pub fn extend_ext_r(g: &RMatrix, x: &[RingElement], c: RingElement) -> Result<RMatrix> {
    if !rmatrix::r_self_dual_check(g) {
        return Err(Error::NotSelfDual);
    }
    let rows = ext_rows(g.rows(), x, c)?;
    verified_r(RMatrix::new(g.ncols() + 2, rows)?)
}

/// `idext` over GF(2); `g` must be literally `[I_n | A]`.
pub fn extend_idext_binary(g: &BitMatrix, x: &BitVector) -> Result<BitMatrix> {
    let xs: Vec<bool> = x.iter().collect();
    let rows = idext_rows(&bit_rows(g), &xs, true)?;
    verified_binary(from_bit_rows(g.ncols() + 2, rows)?)
}

/// `idext` over `R`; `g` must be literally `[I_n | A]`.
pub fn extend_idext_r(g: &RMatrix, x: &[RingElement], c: RingElement) -> Result<RMatrix> {
    let rows = idext_rows(g.rows(), x, c)?;
    verified_r(RMatrix::new(g.ncols() + 2, rows)?)
}

/// Bit order used when reading an extension vector from hexadecimal.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum HexConvention {
    /// Most significant bit first, right-aligned to the length.
    #[default]
    MsbRightAligned,
    /// Most significant bit first, starting at coordinate 0.
    MsbLeftAligned,
    /// Bit `2^i` at coordinate `i`.
    LsbFirst,
}

impl HexConvention {
    pub const ALL: [HexConvention; 3] =
        [HexConvention::MsbRightAligned, HexConvention::MsbLeftAligned, HexConvention::LsbFirst];
}

/// Binary expansion of a hex string, most significant first, leading zeros removed.
fn hex_bits(hex: &str) -> Result<Vec<bool>> {
    let hex = hex.trim().trim_start_matches("0x").trim_start_matches("0X");
    if hex.is_empty() {
        return Err(Error::Parse("empty hex string".into()));
    }
    let mut bits = Vec::with_capacity(4 * hex.len());
    for ch in hex.chars() {
        let d = ch.to_digit(16).ok_or_else(|| Error::Parse(format!("`{ch}` is not a hex digit")))?;
        bits.extend((0..4).rev().map(|s| (d >> s) & 1 == 1));
    }
    let lead = bits.iter().take_while(|&&b| !b).count();
    Ok(bits.split_off(lead))
}

pub fn decode_hex_x(hex: &str, n: usize) -> Result<BitVector> {
    decode_hex_x_with(hex, n, HexConvention::default())
}

pub fn decode_hex_x_with(hex: &str, n: usize, convention: HexConvention) -> Result<BitVector> {
    let bits = hex_bits(hex)?;
    if bits.len() > n {
        return Err(Error::HexOverflow(n));
    }
    let mut out = BitVector::zeros(n);
    let m = bits.len();
    for (i, &b) in bits.iter().enumerate() {
        let pos = match convention {
            HexConvention::MsbRightAligned => n - m + i,
            HexConvention::MsbLeftAligned => i,
            HexConvention::LsbFirst => m - 1 - i,
        };
        out.set(pos, b);
    }
    Ok(out)
}

/// Inverse of [`decode_hex_x`]: uppercase, no leading zeros, `"0"` for zero.
pub fn encode_hex_x(v: &BitVector) -> String {
    let n = v.len();
    let pad = (4 - n % 4) % 4;
    let bits: Vec<bool> = std::iter::repeat(false).take(pad).chain(v.iter()).collect();
    let digits: String = bits
        .chunks(4)
        .map(|c| {
            let d = c.iter().fold(0u32, |acc, &b| (acc << 1) | u32::from(b));
            char::from_digit(d, 16).expect("nibble").to_ascii_uppercase()
        })
        .collect();
    let trimmed = digits.trim_start_matches('0');
    if trimmed.is_empty() {
        "0".to_string()
    } else {
        trimmed.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circulant::{self_dual_qdc_family, QdcFamily};
    use crate::qr::{qr_code, QrVariant};
    use crate::ring::parse_element_list;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn hex_examples() {
        assert_eq!(decode_hex_x("0", 4).unwrap(), BitVector::zeros(4));
        assert_eq!(decode_hex_x("5", 4).unwrap().to_bit_string(), "0101");
        assert_eq!(decode_hex_x("5", 6).unwrap().to_bit_string(), "000101");
        assert_eq!(decode_hex_x_with("5", 6, HexConvention::MsbLeftAligned).unwrap().to_bit_string(), "101000");
        assert_eq!(decode_hex_x_with("6", 6, HexConvention::LsbFirst).unwrap().to_bit_string(), "011000");
        assert_eq!(decode_hex_x("0x1F", 5).unwrap().to_bit_string(), "11111");
        assert!(matches!(decode_hex_x("20", 5), Err(Error::HexOverflow(5))));
        assert!(decode_hex_x("1G", 8).is_err());
        assert_eq!(encode_hex_x(&BitVector::zeros(66)), "0");
        assert_eq!(encode_hex_x(&BitVector::parse_bit_string("000101").unwrap()), "5");
        let v = decode_hex_x("1366E7855836D5F97", 66).unwrap();
        assert_eq!(encode_hex_x(&v), "1366E7855836D5F97");
        assert_eq!(v.weight() % 2, 1);
        assert_eq!(decode_hex_x("e2a99bba87fef283", 66).unwrap().weight() % 2, 1);
    }

    #[test]
    fn hex_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let v = BitVector::from_bits((0..66).map(|_| rng.gen::<bool>()));
            assert_eq!(decode_hex_x(&encode_hex_x(&v), 66).unwrap(), v);
        }
    }

    #[test]
    fn ext_binary_rejects_even_weight() {
        let g = self_dual_qdc_family(3, QdcFamily::First).unwrap().gray_image();
        let x = BitVector::from_support(18, &[0, 1]);
        assert!(matches!(extend_ext_binary(&g, &x), Err(Error::NotUnimodular { .. })));
        let x = BitVector::from_support(18, &[0, 1, 5]);
        let d = extend_ext_binary(&g, &x).unwrap();
        assert_eq!((d.ncols(), d.rank()), (20, 10));
    }

    #[test]
    fn ext_rejects_non_self_dual_input() {
        let g = BitMatrix::identity(4);
        assert!(matches!(extend_ext_binary(&g, &BitVector::from_support(4, &[0])), Err(Error::NotSelfDual)));
    }

    #[test]
    fn ext_over_r() {
        let g = qr_code(7, QrVariant::Extended).unwrap();
        let mut x = vec![RingElement::ZERO; 8];
        x[0] = RingElement::ONE;
        let d = extend_ext_r(&g, &x, RingElement::ONE).unwrap();
        assert_eq!(d.ncols(), 10);
        assert!(d.gray_image().is_self_dual());
        let d = extend_ext_r(&g, &x, RingElement::W).unwrap();
        assert!(rmatrix::r_self_dual_check(&d));
        assert!(extend_ext_r(&g, &x, RingElement::U).is_err());
        x[1] = RingElement::ONE;
        assert!(matches!(extend_ext_r(&g, &x, RingElement::ONE), Err(Error::NotUnimodular { .. })));
    }

    #[test]
    fn idext_example_shape() {
        let g = self_dual_qdc_family(11, QdcFamily::First).unwrap();
        assert_eq!(systematic_row_sum(g.rows()).unwrap(), RingElement::ONE);
        assert_eq!(idext_required_norm(11, RingElement::ONE).unwrap(), RingElement::ZERO);
        let x = parse_element_list("(u^2,0,u^2,0,u^2,u^2,0,0,u+u^2,u,u)").unwrap();
        let d = extend_idext_r(&g, &x, RingElement::ONE).unwrap();
        assert_eq!((d.nrows(), d.ncols()), (12, 24));
        assert_eq!(d.gray_image().rank(), 36);
        let scaled: Vec<RingElement> = x.iter().map(|&e| e * RingElement::U).collect();
        let mut bad = scaled.clone();
        bad[0] += RingElement::ONE;
        assert!(matches!(extend_idext_r(&g, &bad, RingElement::ONE), Err(Error::NotUnimodular { .. })));
    }

    #[test]
    fn idext_row_sum_errors() {
        let mut g = self_dual_qdc_family(3, QdcFamily::First).unwrap();
        g.set(0, 3, RingElement::U);
        assert!(matches!(systematic_row_sum(g.rows()), Err(Error::RowSums(_))));
        let g = qr_code(7, QrVariant::Extended).unwrap();
        assert!(matches!(systematic_row_sum(g.rows()), Err(Error::NotSystematic(_))));
    }

    #[test]
    fn idext_binary() {
        // extended Hamming [8,4,4] in [I | A] form: rows of A have weight 3
        let g = BitMatrix::from_rows_of_bits(&[
            &[1, 0, 0, 0, 0, 1, 1, 1],
            &[0, 1, 0, 0, 1, 0, 1, 1],
            &[0, 0, 1, 0, 1, 1, 0, 1],
            &[0, 0, 0, 1, 1, 1, 1, 0],
        ])
        .unwrap();
        // required <X,X> = 1 + 4 = 1
        let d = extend_idext_binary(&g, &BitVector::from_support(4, &[2])).unwrap();
        assert_eq!((d.ncols(), d.rank()), (10, 5));
        assert!(extend_idext_binary(&g, &BitVector::from_support(4, &[1, 2])).is_err());
    }

    #[test]
    fn random_valid_extensions_are_self_dual() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let g_bin = self_dual_qdc_family(3, QdcFamily::Second).unwrap().gray_image();
        let g_r = self_dual_qdc_family(3, QdcFamily::First).unwrap();
        let mut done = 0;
        while done < 100 {
            let mut x = BitVector::from_bits((0..18).map(|_| rng.gen::<bool>()));
            if x.weight() % 2 == 0 {
                x.flip(rng.gen_range(0..18));
            }
            let d = extend_ext_binary(&g_bin, &x).unwrap();
            assert!(d.is_self_dual());
            let xr: Vec<RingElement> = (0..3).map(|_| RingElement::from_bits(rng.gen_range(0..8)).unwrap()).collect();
            let c = if rng.gen::<bool>() { RingElement::ONE } else { RingElement::W };
            if let Ok(d) = extend_idext_r(&g_r, &xr, c) {
                assert!(rmatrix::r_self_dual_check(&d));
                done += 1;
            }
        }
    }
}
