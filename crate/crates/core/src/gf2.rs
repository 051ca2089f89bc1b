//! Bit-packed vectors and matrices over GF(2).
//!
//! Coordinate `i` lives in word `i / 64` at bit `i % 64`. Pad bits past the
//! length are always zero, so word-level popcounts give Hamming weights.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVector {
    len: usize,
    words: Vec<u64>,
}

#[inline]
pub(crate) fn words_for(len: usize) -> usize {
    len.div_ceil(64)
}

impl BitVector {
    pub fn zeros(len: usize) -> Self {
        BitVector { len, words: vec![0; words_for(len)] }
    }

    pub fn ones(len: usize) -> Self {
        let mut v = BitVector { len, words: vec![u64::MAX; words_for(len)] };
        v.clear_padding();
        v
    }

    pub fn from_bits<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        let mut words = Vec::new();
        let mut len = 0;
        for b in bits {
            if len % 64 == 0 {
                words.push(0);
            }
            if b {
                words[len / 64] |= 1 << (len % 64);
            }
            len += 1;
        }
        BitVector { len, words }
    }

    /// Vector of length `len` with ones at `positions`.
    pub fn from_support(len: usize, positions: &[usize]) -> Self {
        let mut v = Self::zeros(len);
        for &p in positions {
            v.set(p, true);
        }
        v
    }

    pub(crate) fn from_words(len: usize, words: Vec<u64>) -> Self {
        debug_assert_eq!(words.len(), words_for(len));
        let mut v = BitVector { len, words };
        v.clear_padding();
        v
    }

    fn clear_padding(&mut self) {
        let rem = self.len % 64;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "index {i} out of range for length {}", self.len);
        let mask = 1u64 << (i % 64);
        if value {
            self.words[i / 64] |= mask;
        } else {
            self.words[i / 64] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len);
        self.words[i / 64] ^= 1 << (i % 64);
    }

    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    #[inline]
    pub fn xor_assign(&mut self, other: &BitVector) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn xor(&self, other: &BitVector) -> BitVector {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    /// Standard inner product over GF(2).
    pub fn dot(&self, other: &BitVector) -> bool {
        debug_assert_eq!(self.len, other.len);
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum::<u32>()
            % 2
            == 1
    }

    /// Size of the common support.
    pub fn intersection_weight(&self, other: &BitVector) -> usize {
        self.words.iter().zip(&other.words).map(|(a, b)| (a & b).count_ones() as usize).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.len).filter(|&i| self.get(i)).collect()
    }

    pub fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, w)| **w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }

    /// New vector made of the listed coordinates, in that order.
    pub fn select(&self, positions: &[usize]) -> BitVector {
        BitVector::from_bits(positions.iter().map(|&p| self.get(p)))
    }

    pub fn concat(&self, other: &BitVector) -> BitVector {
        BitVector::from_bits(self.iter().chain(other.iter()))
    }

    pub fn to_bit_string(&self) -> String {
        self.iter().map(|b| if b { '1' } else { '0' }).collect()
    }

    pub fn parse_bit_string(s: &str) -> Result<BitVector> {
        s.trim()
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::Parse(format!("unexpected character `{other}` in bit string"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(BitVector::from_bits)
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVector({})", self.to_bit_string())
    }
}

impl fmt::Display for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_bit_string())
    }
}

/// A list of equal-length rows over GF(2).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    ncols: usize,
    rows: Vec<BitVector>,
}

impl BitMatrix {
    pub fn new(ncols: usize, rows: Vec<BitVector>) -> Result<Self> {
        if let Some(bad) = rows.iter().find(|r| r.len() != ncols) {
            return Err(Error::Dimension(format!("row of length {} in a matrix with {ncols} columns", bad.len())));
        }
        Ok(BitMatrix { ncols, rows })
    }

    pub fn empty(ncols: usize) -> Self {
        BitMatrix { ncols, rows: Vec::new() }
    }

    pub fn identity(n: usize) -> Self {
        BitMatrix {
            ncols: n,
            rows: (0..n).map(|i| BitVector::from_support(n, &[i])).collect(),
        }
    }

    pub fn from_rows_of_bits(rows: &[&[u8]]) -> Result<Self> {
        let ncols = rows.first().map_or(0, |r| r.len());
        let rows = rows.iter().map(|r| BitVector::from_bits(r.iter().map(|&b| b != 0))).collect();
        BitMatrix::new(ncols, rows)
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[BitVector] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<BitVector> {
        self.rows
    }

    pub fn row(&self, i: usize) -> &BitVector {
        &self.rows[i]
    }

    pub fn push_row(&mut self, row: BitVector) -> Result<()> {
        if row.len() != self.ncols {
            return Err(Error::Dimension(format!("pushing row of length {} into {} columns", row.len(), self.ncols)));
        }
        self.rows.push(row);
        Ok(())
    }

    /// Reduced row-echelon form with zero rows dropped, plus the pivot columns.
    ///
    /// The result is unique for a given row space, which makes it a canonical form.
    pub fn rref(&self) -> (BitMatrix, Vec<usize>) {
        let mut rows = self.rows.clone();
        let mut pivots = Vec::new();
        let mut top = 0;
        for col in 0..self.ncols {
            if top == rows.len() {
                break;
            }
            let Some(found) = (top..rows.len()).find(|&r| rows[r].get(col)) else {
                continue;
            };
            rows.swap(top, found);
            let pivot_row = rows[top].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != top && row.get(col) {
                    row.xor_assign(&pivot_row);
                }
            }
            pivots.push(col);
            top += 1;
        }
        rows.truncate(top);
        (BitMatrix { ncols: self.ncols, rows }, pivots)
    }

    pub fn reduce(&self) -> BitMatrix {
        self.rref().0
    }

    pub fn rank(&self) -> usize {
        // forward elimination only
        let mut rows = self.rows.clone();
        let mut rank = 0;
        for col in 0..self.ncols {
            if rank == rows.len() {
                break;
            }
            let Some(found) = (rank..rows.len()).find(|&r| rows[r].get(col)) else {
                continue;
            };
            rows.swap(rank, found);
            let pivot_row = rows[rank].clone();
            for row in rows.iter_mut().skip(rank + 1) {
                if row.get(col) {
                    row.xor_assign(&pivot_row);
                }
            }
            rank += 1;
        }
        rank
    }

    /// Basis of the null space `{x : G x^T = 0}`, i.e. the dual code.
    pub fn dual(&self) -> BitMatrix {
        let (reduced, pivots) = self.rref();
        let mut is_pivot = vec![false; self.ncols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let rows = (0..self.ncols)
            .filter(|&f| !is_pivot[f])
            .map(|free| {
                let mut v = BitVector::zeros(self.ncols);
                v.set(free, true);
                for (row, &p) in reduced.rows.iter().zip(&pivots) {
                    if row.get(free) {
                        v.set(p, true);
                    }
                }
                v
            })
            .collect();
        BitMatrix { ncols: self.ncols, rows }
    }

    /// Every pair of rows (including a row with itself) is orthogonal.
    pub fn is_self_orthogonal(&self) -> bool {
        self.rows
            .iter()
            .enumerate()
            .all(|(i, a)| self.rows[i..].iter().all(|b| !a.dot(b)))
    }

    pub fn is_self_dual(&self) -> bool {
        self.ncols % 2 == 0 && self.is_self_orthogonal() && 2 * self.rank() == self.ncols
    }

    /// All codewords have weight divisible by four.
    ///
    /// Checked on a basis: row weights are 0 mod 4 and pairwise intersections are even.
    pub fn is_doubly_even(&self) -> bool {
        let basis = self.reduce();
        basis.rows.iter().all(|r| r.weight() % 4 == 0)
            && basis
                .rows
                .iter()
                .enumerate()
                .all(|(i, a)| basis.rows[i + 1..].iter().all(|b| a.intersection_weight(b) % 2 == 0))
    }

    /// Every row has even weight (so every codeword does).
    pub fn is_even(&self) -> bool {
        self.rows.iter().all(|r| r.weight() % 2 == 0)
    }

    /// Whether `v` lies in the row space. `self` must be in reduced form with `pivots`.
    fn reduced_contains(&self, pivots: &[usize], v: &BitVector) -> bool {
        let mut w = v.clone();
        for (row, &p) in self.rows.iter().zip(pivots) {
            if w.get(p) {
                w.xor_assign(row);
            }
        }
        w.is_zero()
    }

    pub fn contains(&self, v: &BitVector) -> bool {
        let (reduced, pivots) = self.rref();
        reduced.reduced_contains(&pivots, v)
    }

    pub fn contains_all(&self, other: &BitMatrix) -> bool {
        let (reduced, pivots) = self.rref();
        other.rows.iter().all(|v| reduced.reduced_contains(&pivots, v))
    }

    pub fn same_row_space(&self, other: &BitMatrix) -> bool {
        self.ncols == other.ncols && self.reduce() == other.reduce()
    }

    /// Row space of `self` plus row space of `other`, reduced.
    pub fn sum(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(self.ncols, other.ncols);
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        BitMatrix { ncols: self.ncols, rows }.reduce()
    }

    /// Intersection of the two row spaces (Zassenhaus).
    pub fn intersection(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(self.ncols, other.ncols);
        let n = self.ncols;
        let zero = BitVector::zeros(n);
        let mut rows: Vec<BitVector> = self.rows.iter().map(|a| a.concat(a)).collect();
        rows.extend(other.rows.iter().map(|b| b.concat(&zero)));
        let (reduced, pivots) = BitMatrix { ncols: 2 * n, rows }.rref();
        let right: Vec<usize> = (n..2 * n).collect();
        let rows = reduced
            .rows
            .iter()
            .zip(&pivots)
            .filter(|(_, &p)| p >= n)
            .map(|(r, _)| r.select(&right))
            .collect();
        BitMatrix { ncols: n, rows }.reduce()
    }

    /// Keeps the listed columns, in that order.
    pub fn select_columns(&self, cols: &[usize]) -> BitMatrix {
        BitMatrix {
            ncols: cols.len(),
            rows: self.rows.iter().map(|r| r.select(cols)).collect(),
        }
    }

    pub fn delete_columns(&self, cols: &[usize]) -> BitMatrix {
        let keep: Vec<usize> = (0..self.ncols).filter(|c| !cols.contains(c)).collect();
        self.select_columns(&keep)
    }

    /// Basis of the subcode of codewords satisfying `c[i] == c[j]` for every listed pair.
    pub fn subcode_with_equal_coordinates(&self, pairs: &[(usize, usize)]) -> BitMatrix {
        let basis = self.reduce();
        // constraint matrix: message bit m_r participates in constraint t if row r differs at the pair
        let k = basis.nrows();
        let constraint_rows: Vec<BitVector> = (0..k)
            .map(|r| {
                BitVector::from_bits(pairs.iter().map(|&(i, j)| basis.rows[r].get(i) ^ basis.rows[r].get(j)))
            })
            .collect();
        // messages m with sum_r m_r * constraint_rows[r] = 0: null space of the transpose
        let transpose = BitMatrix { ncols: pairs.len(), rows: constraint_rows }.transpose();
        let messages = transpose.dual();
        let rows = messages
            .rows
            .iter()
            .map(|m| {
                let mut v = BitVector::zeros(self.ncols);
                for r in m.support() {
                    v.xor_assign(&basis.rows[r]);
                }
                v
            })
            .collect();
        BitMatrix { ncols: self.ncols, rows }.reduce()
    }

    pub fn transpose(&self) -> BitMatrix {
        let rows = (0..self.ncols)
            .map(|c| BitVector::from_bits(self.rows.iter().map(|r| r.get(c))))
            .collect();
        BitMatrix { ncols: self.rows.len(), rows }
    }

    /// Applies `perm` so that new column `perm[i]` holds old column `i`.
    pub fn permute_columns(&self, perm: &[usize]) -> BitMatrix {
        assert_eq!(perm.len(), self.ncols);
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let mut v = BitVector::zeros(self.ncols);
                for i in r.support() {
                    v.set(perm[i], true);
                }
                v
            })
            .collect();
        BitMatrix { ncols: self.ncols, rows }
    }

    /// One row per line, `0`/`1` characters, coordinate 0 first.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for r in &self.rows {
            out.push_str(&r.to_bit_string());
            out.push('\n');
        }
        out
    }

    pub fn from_text(text: &str) -> Result<BitMatrix> {
        let rows = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(BitVector::parse_bit_string)
            .collect::<Result<Vec<_>>>()?;
        let ncols = rows.first().map_or(0, BitVector::len);
        BitMatrix::new(ncols, rows)
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{}", self.rows.len(), self.ncols)?;
        for r in &self.rows {
            writeln!(f, "  {r}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_matrix(rng: &mut ChaCha8Rng, k: usize, n: usize) -> BitMatrix {
        let rows = (0..k).map(|_| BitVector::from_bits((0..n).map(|_| rng.gen_bool(0.5)))).collect();
        BitMatrix::new(n, rows).unwrap()
    }

    #[test]
    fn padding_stays_clear() {
        let v = BitVector::ones(70);
        assert_eq!(v.weight(), 70);
        assert_eq!(v.words()[1], (1 << 6) - 1);
    }

    #[test]
    fn identity_rank_and_duplicates() {
        let id = BitMatrix::identity(9);
        assert_eq!(id.rank(), 9);
        let mut dup = id.clone();
        dup.push_row(id.row(3).clone()).unwrap();
        assert_eq!(dup.rank(), 9);
        assert!(!id.is_self_dual());
        assert_eq!(BitMatrix::empty(5).rank(), 0);
    }

    #[test]
    fn dual_of_standard_form() {
        // [I_2 | A] with A = [[1,1,0],[0,1,1]]
        let g = BitMatrix::from_rows_of_bits(&[&[1, 0, 1, 1, 0], &[0, 1, 0, 1, 1]]).unwrap();
        let expected = BitMatrix::from_rows_of_bits(&[&[1, 0, 1, 0, 0], &[1, 1, 0, 1, 0], &[0, 1, 0, 0, 1]]).unwrap();
        assert!(g.dual().same_row_space(&expected));
        assert_eq!(BitMatrix::identity(4).dual().nrows(), 0);
    }

    #[test]
    fn dual_properties_on_random_matrices() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..40 {
            let k = rng.gen_range(0..12);
            let n = rng.gen_range(1..90);
            let g = random_matrix(&mut rng, k, n);
            let d = g.dual();
            assert_eq!(d.nrows(), n - g.rank());
            for a in g.rows() {
                for b in d.rows() {
                    assert!(!a.dot(b));
                }
            }
            assert!(d.dual().same_row_space(&g.reduce()));
            let reduced = g.reduce();
            assert!(reduced.contains_all(&g));
        }
    }

    #[test]
    fn intersection_matches_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let n = 8;
            let a = random_matrix(&mut rng, 4, n);
            let b = random_matrix(&mut rng, 5, n);
            let inter = a.intersection(&b);
            let mut count = 0;
            for x in 0u32..256 {
                let v = BitVector::from_bits((0..n).map(|i| (x >> i) & 1 == 1));
                if a.contains(&v) && b.contains(&v) {
                    count += 1;
                    assert!(inter.contains(&v));
                }
            }
            assert_eq!(count, 1 << inter.rank());
        }
    }

    #[test]
    fn equal_coordinate_subcode() {
        let g = BitMatrix::from_rows_of_bits(&[&[1, 1, 0, 0], &[0, 1, 1, 0], &[0, 0, 1, 1]]).unwrap();
        let sub = g.subcode_with_equal_coordinates(&[(0, 3)]);
        assert_eq!(sub.rank(), 2);
        for r in sub.rows() {
            assert_eq!(r.get(0), r.get(3));
        }
    }

    #[test]
    fn text_roundtrip() {
        let g = BitMatrix::from_rows_of_bits(&[&[1, 0, 1], &[0, 1, 1]]).unwrap();
        assert_eq!(BitMatrix::from_text(&g.to_text()).unwrap(), g);
        assert!(BitMatrix::from_text("10\n1x\n").is_err());
        assert!(BitMatrix::from_text("10\n101\n").is_err());
    }

    #[test]
    fn doubly_even_hamming_extension() {
        // extended Hamming [8,4,4] is doubly even and self-dual
        let g = BitMatrix::from_rows_of_bits(&[
            &[1, 0, 0, 0, 0, 1, 1, 1],
            &[0, 1, 0, 0, 1, 0, 1, 1],
            &[0, 0, 1, 0, 1, 1, 0, 1],
            &[0, 0, 0, 1, 1, 1, 1, 0],
        ])
        .unwrap();
        assert!(g.is_self_dual());
        assert!(g.is_doubly_even());
        let rep = BitMatrix::from_rows_of_bits(&[&[1, 1]]).unwrap();
        assert!(rep.is_self_dual());
        assert!(!rep.is_doubly_even());
    }
}
