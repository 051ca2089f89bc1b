//! Arithmetic in the eight-element ring `R = F2 + uF2 + u^2F2` with `u^3 = u`.
//!
//! An element `a + bu + cu^2` is stored as the 3-bit triple `(a, b, c)` packed
//! into the low bits of a byte: bit 0 is `a`, bit 1 is `b`, bit 2 is `c`.
//! Addition is XOR of the triples; multiplication goes through a table built
//! at compile time from the reduction `u^3 = u` (hence `u^4 = u^2`).

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One of the eight elements `a + bu + cu^2` of `R`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct RingElement(u8);

const fn poly_mul(x: u8, y: u8) -> u8 {
    // coefficients of the degree <= 4 product, then fold u^3 -> u, u^4 -> u^2
    let (a0, a1, a2) = (x & 1, (x >> 1) & 1, (x >> 2) & 1);
    let (b0, b1, b2) = (y & 1, (y >> 1) & 1, (y >> 2) & 1);
    let d0 = a0 & b0;
    let d1 = (a0 & b1) ^ (a1 & b0);
    let d2 = (a0 & b2) ^ (a1 & b1) ^ (a2 & b0);
    let d3 = (a1 & b2) ^ (a2 & b1);
    let d4 = a2 & b2;
    d0 | ((d1 ^ d3) << 1) | ((d2 ^ d4) << 2)
}

const fn build_mul_table() -> [[u8; 8]; 8] {
    let mut table = [[0u8; 8]; 8];
    let mut x = 0;
    while x < 8 {
        let mut y = 0;
        while y < 8 {
            table[x][y] = poly_mul(x as u8, y as u8);
            y += 1;
        }
        x += 1;
    }
    table
}

static MUL_TABLE: [[u8; 8]; 8] = build_mul_table();

const NAMES: [&str; 8] = ["0", "1", "u", "1+u", "u^2", "1+u^2", "u+u^2", "1+u+u^2"];

impl RingElement {
    pub const ZERO: RingElement = RingElement(0);
    pub const ONE: RingElement = RingElement(0b001);
    pub const U: RingElement = RingElement(0b010);
    pub const ONE_PLUS_U: RingElement = RingElement(0b011);
    pub const U2: RingElement = RingElement(0b100);
    pub const ONE_PLUS_U2: RingElement = RingElement(0b101);
    pub const U_PLUS_U2: RingElement = RingElement(0b110);
    /// The non-trivial unit `1 + u + u^2`.
    pub const W: RingElement = RingElement(0b111);

    /// Builds `a + bu + cu^2` from its three coefficient bits.
    pub const fn new(a: bool, b: bool, c: bool) -> Self {
        RingElement((a as u8) | ((b as u8) << 1) | ((c as u8) << 2))
    }

    /// Element from its packed 3-bit code (`a` in bit 0).
    pub fn from_bits(bits: u8) -> Result<Self> {
        if bits < 8 {
            Ok(RingElement(bits))
        } else {
            Err(Error::Parse(format!("ring element code {bits} out of range")))
        }
    }

    pub const fn bits(self) -> u8 {
        self.0
    }

    /// All eight elements in code order.
    pub fn all() -> impl Iterator<Item = RingElement> + Clone {
        (0u8..8).map(RingElement)
    }

    pub const fn coefficients(self) -> (bool, bool, bool) {
        (self.0 & 1 == 1, self.0 & 2 == 2, self.0 & 4 == 4)
    }

    pub const fn is_zero(self) -> bool {
        self.0 == 0
    }

    pub fn square(self) -> Self {
        self * self
    }

    /// Units of `R` are exactly `1` and `1 + u + u^2`.
    pub const fn is_unit(self) -> bool {
        self.0 == Self::ONE.0 || self.0 == Self::W.0
    }

    /// Multiplicative inverse. Each unit squares to one, so it is its own inverse.
    pub fn inverse(self) -> Result<Self> {
        if self.is_unit() {
            Ok(self)
        } else {
            Err(Error::NotAUnit(self.to_string()))
        }
    }

    /// Gray symbol `(a + b, b + c, c)`.
    pub const fn gray_symbol(self) -> (bool, bool, bool) {
        let (a, b, c) = self.coefficients();
        (a ^ b, b ^ c, c)
    }

    /// Inverse of [`gray_symbol`](Self::gray_symbol).
    pub const fn from_gray_symbol(s0: bool, s1: bool, s2: bool) -> Self {
        let c = s2;
        let b = s1 ^ c;
        let a = s0 ^ b;
        Self::new(a, b, c)
    }

    /// Lee weight: Hamming weight of the Gray symbol.
    pub const fn lee_weight(self) -> u32 {
        let (x, y, z) = self.gray_symbol();
        x as u32 + y as u32 + z as u32
    }

    /// Additive character `(-1)^c`.
    pub const fn character(self) -> i8 {
        if self.0 & 4 == 0 {
            1
        } else {
            -1
        }
    }

    /// Coordinates in the decomposition `(1+u^2)a + u^2(b + c(u+u^2))`.
    pub const fn crt_split(self) -> IdempotentPair {
        let (x0, x1, x2) = self.coefficients();
        IdempotentPair {
            f0: x0,
            g0: x2 ^ x0 ^ x1,
            g1: x1,
        }
    }

    pub const fn crt_join(pair: IdempotentPair) -> Self {
        // (1+u^2)a + u^2 b + c(u + u^2) = a + c u + (a + b + c) u^2
        let IdempotentPair { f0, g0, g1 } = pair;
        Self::new(f0, g1, f0 ^ g0 ^ g1)
    }
}

/// Coordinates of an element under `R ~ F2 x (F2 + vF2)`, `v = u + u^2`, `v^2 = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct IdempotentPair {
    /// Coefficient on the idempotent `1 + u^2` (the `F2` factor).
    pub f0: bool,
    /// Constant part of the chain factor, on the idempotent `u^2`.
    pub g0: bool,
    /// Nilpotent part of the chain factor, on `u + u^2`.
    pub g1: bool,
}

impl IdempotentPair {
    /// Componentwise product: `F2` part times `F2` part, chain parts modulo `v^2 = 0`.
    pub const fn mul(self, other: IdempotentPair) -> IdempotentPair {
        IdempotentPair {
            f0: self.f0 & other.f0,
            g0: self.g0 & other.g0,
            g1: (self.g0 & other.g1) ^ (self.g1 & other.g0),
        }
    }
}

impl Add for RingElement {
    type Output = RingElement;
    #[inline]
    fn add(self, rhs: RingElement) -> RingElement {
        RingElement(self.0 ^ rhs.0)
    }
}

impl AddAssign for RingElement {
    #[inline]
    fn add_assign(&mut self, rhs: RingElement) {
        self.0 ^= rhs.0;
    }
}

impl Mul for RingElement {
    type Output = RingElement;
    #[inline]
    fn mul(self, rhs: RingElement) -> RingElement {
        RingElement(MUL_TABLE[self.0 as usize][rhs.0 as usize])
    }
}

impl MulAssign for RingElement {
    #[inline]
    fn mul_assign(&mut self, rhs: RingElement) {
        *self = *self * rhs;
    }
}

impl std::iter::Sum for RingElement {
    fn sum<I: Iterator<Item = RingElement>>(iter: I) -> RingElement {
        iter.fold(RingElement::ZERO, Add::add)
    }
}

/// `n * x`, i.e. `x` added to itself `n` times.
pub fn scale(n: usize, x: RingElement) -> RingElement {
    if n % 2 == 1 {
        x
    } else {
        RingElement::ZERO
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(NAMES[self.0 as usize])
    }
}

impl fmt::Debug for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "R({})", NAMES[self.0 as usize])
    }
}

impl FromStr for RingElement {
    type Err = Error;

    /// Accepts the canonical names (`u^2`, `1+u+u^2`, ...) case-insensitively,
    /// plus `u2` for `u^2` and `w` for `1+u+u^2`. Terms are summed, so `u+u` is `0`.
    fn from_str(s: &str) -> Result<Self> {
        let cleaned: String = s.chars().filter(|c| !c.is_whitespace()).collect::<String>().to_lowercase();
        if cleaned.is_empty() {
            return Err(Error::Parse("empty ring element".into()));
        }
        let mut acc = RingElement::ZERO;
        for term in cleaned.split('+') {
            acc += match term {
                "0" => RingElement::ZERO,
                "1" => RingElement::ONE,
                "u" => RingElement::U,
                "u^2" | "u2" | "u**2" => RingElement::U2,
                "w" => RingElement::W,
                _ => return Err(Error::Parse(format!("bad ring element `{s}`"))),
            };
        }
        Ok(acc)
    }
}

impl TryFrom<String> for RingElement {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<RingElement> for String {
    fn from(x: RingElement) -> String {
        x.to_string()
    }
}

/// Euclidean inner product over `R`.
pub fn dot(x: &[RingElement], y: &[RingElement]) -> RingElement {
    x.iter().zip(y).map(|(&a, &b)| a * b).sum()
}

/// Parses a comma- or whitespace-separated list of elements, optionally in parentheses.
pub fn parse_element_list(s: &str) -> Result<Vec<RingElement>> {
    let trimmed = s.trim().trim_start_matches('(').trim_end_matches(')');
    trimmed
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(str::parse)
        .collect()
}

pub fn format_element_list(v: &[RingElement]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> RingElement {
        s.parse().unwrap()
    }

    #[test]
    fn addition_examples() {
        assert_eq!(r("u") + r("u"), RingElement::ZERO);
        assert_eq!(r("1+u") + r("u+u^2"), r("1+u^2"));
        let shifted: std::collections::BTreeSet<_> = RingElement::all().map(|e| RingElement::ONE + e).collect();
        assert_eq!(shifted.len(), 8);
    }

    #[test]
    fn multiplication_examples() {
        assert_eq!(r("u") * r("u^2"), r("u"));
        assert_eq!(r("u+u^2") * r("u+u^2"), RingElement::ZERO);
        assert_eq!(r("1+u") * r("1+u"), r("1+u^2"));
    }

    #[test]
    fn table_matches_square_identities() {
        assert_eq!(RingElement::U2.square(), RingElement::U2);
        assert_eq!(RingElement::ONE_PLUS_U.square(), RingElement::ONE_PLUS_U2);
        assert_eq!(RingElement::ONE_PLUS_U2.square(), RingElement::ONE_PLUS_U2);
        assert_eq!(RingElement::ZERO.square(), RingElement::ZERO);
        assert_eq!(RingElement::U_PLUS_U2.square(), RingElement::ZERO);
        assert_eq!(RingElement::U.square(), RingElement::U2);
        assert_eq!(RingElement::U * RingElement::U * RingElement::U, RingElement::U);
    }

    #[test]
    fn ring_axioms_by_exhaustion() {
        for x in RingElement::all() {
            assert_eq!(x * RingElement::ONE, x);
            assert_eq!(x + RingElement::ZERO, x);
            for y in RingElement::all() {
                assert_eq!(x * y, y * x);
                assert_eq!(x + y, y + x);
                for z in RingElement::all() {
                    assert_eq!((x * y) * z, x * (y * z));
                    assert_eq!(x * (y + z), x * y + x * z);
                    assert_eq!((x + y) + z, x + (y + z));
                }
            }
        }
    }

    #[test]
    fn units() {
        let units: Vec<_> = RingElement::all().filter(|x| x.is_unit()).collect();
        assert_eq!(units, vec![RingElement::ONE, RingElement::W]);
        for u in &units {
            assert_eq!(u.square(), RingElement::ONE);
        }
        // brute-force: x is a unit iff some y has xy = 1
        for x in RingElement::all() {
            let invertible = RingElement::all().any(|y| x * y == RingElement::ONE);
            assert_eq!(invertible, x.is_unit());
        }
        assert_eq!(r("1+u+u^2").inverse().unwrap(), r("1+u+u^2"));
        assert!(!r("u^2").is_unit());
        assert!(matches!(r("u^2").inverse(), Err(Error::NotAUnit(_))));
    }

    #[test]
    fn gray_symbols() {
        assert_eq!(RingElement::ZERO.gray_symbol(), (false, false, false));
        assert_eq!(r("u^2").gray_symbol(), (false, true, true));
        assert_eq!(r("1+u").gray_symbol(), (false, true, false));
        for x in RingElement::all() {
            let (a, b, c) = x.gray_symbol();
            assert_eq!(RingElement::from_gray_symbol(a, b, c), x);
            for y in RingElement::all() {
                let (p, q, s) = (x + y).gray_symbol();
                let (a2, b2, c2) = y.gray_symbol();
                assert_eq!((p, q, s), (a ^ a2, b ^ b2, c ^ c2));
                if x != y {
                    assert_ne!(x.gray_symbol(), y.gray_symbol());
                }
            }
        }
    }

    #[test]
    fn lee_weights() {
        let expected = [
            ("0", 0),
            ("1", 1),
            ("u", 2),
            ("u^2", 2),
            ("u+u^2", 2),
            ("1+u", 1),
            ("1+u^2", 3),
            ("1+u+u^2", 1),
        ];
        for (name, w) in expected {
            assert_eq!(r(name).lee_weight(), w, "{name}");
        }
    }

    #[test]
    fn character_properties() {
        assert_eq!(r("u^2").character(), -1);
        assert_eq!(RingElement::ZERO.character(), 1);
        let kernel: Vec<_> = RingElement::all().filter(|x| x.character() == 1).collect();
        assert_eq!(kernel, vec![r("0"), r("1"), r("u"), r("1+u")]);
        for x in RingElement::all() {
            for y in RingElement::all() {
                assert_eq!((x + y).character(), x.character() * y.character());
            }
        }
    }

    fn ideal(gen: RingElement) -> std::collections::BTreeSet<RingElement> {
        RingElement::all().map(|x| x * gen).collect()
    }

    #[test]
    fn listed_ideals_and_containments() {
        let set = |names: &[&str]| names.iter().map(|n| r(n)).collect::<std::collections::BTreeSet<_>>();
        let i_1u = ideal(r("1+u"));
        let i_u2 = ideal(r("u^2"));
        let i_uu2 = ideal(r("u+u^2"));
        let i_1u2 = ideal(r("1+u^2"));
        assert_eq!(i_1u, set(&["0", "1+u", "u+u^2", "1+u^2"]));
        assert_eq!(i_u2, set(&["0", "u", "u^2", "u+u^2"]));
        assert_eq!(i_uu2, set(&["0", "u+u^2"]));
        assert_eq!(i_1u2, set(&["0", "1+u^2"]));
        for id in [&i_1u, &i_u2, &i_uu2, &i_1u2] {
            for &x in id.iter() {
                for y in RingElement::all() {
                    assert!(id.contains(&(x * y)));
                }
                for &z in id.iter() {
                    assert!(id.contains(&(x + z)));
                }
            }
            // no nonzero listed ideal sits inside ker(chi)
            assert!(id.iter().any(|x| x.character() == -1));
        }
        assert!(i_1u2.is_subset(&i_1u));
        assert!(i_uu2.is_subset(&i_1u));
        assert!(i_uu2.is_subset(&i_u2));
    }

    #[test]
    fn crt_examples_and_roundtrip() {
        assert_eq!(RingElement::ONE.crt_split(), IdempotentPair { f0: true, g0: true, g1: false });
        assert_eq!(r("u^2").crt_split(), IdempotentPair { f0: false, g0: true, g1: false });
        assert_eq!(r("u+u^2").crt_split(), IdempotentPair { f0: false, g0: false, g1: true });
        for x in RingElement::all() {
            assert_eq!(RingElement::crt_join(x.crt_split()), x);
            for y in RingElement::all() {
                assert_eq!((x * y).crt_split(), x.crt_split().mul(y.crt_split()));
            }
        }
    }

    #[test]
    fn parse_and_display() {
        for x in RingElement::all() {
            assert_eq!(x.to_string().parse::<RingElement>().unwrap(), x);
            assert_eq!(x.to_string().to_uppercase().parse::<RingElement>().unwrap(), x);
        }
        assert_eq!(r("u2"), RingElement::U2);
        assert_eq!(r("1+u2"), RingElement::ONE_PLUS_U2);
        assert_eq!(r("W"), RingElement::W);
        assert!("v".parse::<RingElement>().is_err());
        let list = parse_element_list("(u^2, 0,1+u+u^2)").unwrap();
        assert_eq!(list, vec![RingElement::U2, RingElement::ZERO, RingElement::W]);
        assert_eq!(format_element_list(&list), "(u^2,0,1+u+u^2)");
    }
}
