//! Exact weight enumeration and minimum distance of binary linear codes.

mod forms;
mod infoset;
pub(crate) mod kernel;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::atomic::AtomicU64;

use serde::{Deserialize, Serialize};

pub use forms::{candidate_forms, extract_params, identify_form, EnumeratorForm, EnumeratorParams};

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::gf2::{BitMatrix, BitVector};

/// Largest dimension accepted for a full walk.
pub const FULL_ENUMERATION_CAP: usize = 40;

/// Dimension up to which `auto` minimum distance walks the whole code.
pub const AUTO_FULL_MAX_K: usize = 28;

/// Weight distribution `A_w`, complete or truncated at `upto`.
///
/// Only nonzero counts are stored; [`WeightProfile::coefficient`] reports zero
/// for every uncovered-but-absent weight inside the covered range.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightProfile {
    pub n: usize,
    pub k: usize,
    pub complete: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub upto: Option<usize>,
    pub counts: BTreeMap<usize, u64>,
}

impl WeightProfile {
    fn from_histogram(n: usize, k: usize, hist: &[u64], upto: Option<usize>) -> Self {
        let limit = upto.unwrap_or(n).min(n);
        let counts = hist.iter().enumerate().take(limit + 1).filter(|(_, &c)| c > 0).map(|(w, &c)| (w, c)).collect();
        WeightProfile { n, k, complete: upto.is_none() || limit >= n, upto: upto.filter(|&u| u < n), counts }
    }

    /// Largest weight whose count is known.
    pub fn covered(&self) -> usize {
        if self.complete {
            self.n
        } else {
            self.upto.unwrap_or(0)
        }
    }

    /// `A_w` if `w` is covered.
    pub fn coefficient(&self, w: usize) -> Option<u64> {
        (w <= self.covered()).then(|| self.counts.get(&w).copied().unwrap_or(0))
    }

    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    pub fn min_distance(&self) -> Option<usize> {
        self.counts.keys().copied().find(|&w| w > 0)
    }

    pub fn all_divisible_by(&self, d: usize) -> bool {
        self.counts.keys().all(|w| w % d == 0)
    }

    /// `A_w = A_{n-w}` (meaningful for complete profiles).
    pub fn is_symmetric(&self) -> bool {
        self.counts.iter().all(|(&w, &c)| self.counts.get(&(self.n - w)) == Some(&c))
    }

    /// Nonzero counts as `w:A_w` pairs.
    pub fn summary(&self) -> String {
        let parts: Vec<String> = self.counts.iter().map(|(w, c)| format!("{w}:{c}")).collect();
        parts.join(" ")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EnumMode {
    Full,
    /// Exact counts for weights `<= w` only.
    UpTo(usize),
}

/// How truncated profiles are counted.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum CountStrategy {
    /// The cheaper of [`CountStrategy::Walk`] and [`CountStrategy::InfoSets`].
    #[default]
    Auto,
    /// Visit every codeword.
    Walk,
    /// Disjoint information sets; exact, visits only light messages.
    InfoSets,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct EnumOptions<'a> {
    pub exec: Exec,
    pub strategy: CountStrategy,
    /// Incremented by the number of codewords visited (walk only).
    pub progress: Option<&'a AtomicU64>,
}

fn packed_walk(rows: &[BitVector], n: usize, opts: &EnumOptions) -> Result<Vec<u64>> {
    kernel::with_words!(n, W => {
        let packed: Vec<_> = rows.iter().map(kernel::pack::<W>).collect();
        kernel::walk_histogram(&packed, n, opts.exec, opts.progress)
    })
    .ok_or(Error::TooLong(n))
}

/// Full weight histogram (index = weight) by walking the code.
///
/// When the all-ones word is in the code it is split off the basis: the walk
/// covers a complement `C'` of `{0, 1}` and `A_w = A'_w + A'_{n-w}`.
fn full_histogram(basis: &BitMatrix, opts: &EnumOptions) -> Result<Vec<u64>> {
    let n = basis.ncols();
    let k = basis.nrows();
    if k > FULL_ENUMERATION_CAP {
        return Err(Error::EnumerationTooLarge { k, cap: FULL_ENUMERATION_CAP });
    }
    let ones = BitVector::ones(n);
    if k > 0 && n > 0 && basis.contains(&ones) {
        let rows = complement_of_ones(basis, &ones);
        let half = packed_walk(&rows, n, opts)?;
        return Ok((0..=n).map(|w| half[w] + half[n - w]).collect());
    }
    packed_walk(basis.rows(), n, opts)
}

/// `k - 1` basis rows that together with `ones` span the code.
fn complement_of_ones(basis: &BitMatrix, ones: &BitVector) -> Vec<BitVector> {
    let (rref, pivots) = basis.rref();
    // ones = sum of the rref rows whose pivot it covers; swap one of them out
    let drop = pivots.iter().position(|&p| ones.get(p)).expect("nonzero word has a pivot");
    rref.rows().iter().enumerate().filter(|&(i, _)| i != drop).map(|(_, r)| r.clone()).collect()
}

pub fn weight_enumerator(m: &BitMatrix, mode: EnumMode) -> Result<WeightProfile> {
    weight_enumerator_with(m, mode, &EnumOptions::default())
}

pub fn weight_enumerator_with(m: &BitMatrix, mode: EnumMode, opts: &EnumOptions) -> Result<WeightProfile> {
    let basis = m.reduce();
    let (n, k) = (basis.ncols(), basis.nrows());
    if n > kernel::MAX_LEN {
        return Err(Error::TooLong(n));
    }
    match mode {
        EnumMode::Full => Ok(WeightProfile::from_histogram(n, k, &full_histogram(&basis, opts)?, None)),
        EnumMode::UpTo(limit) => {
            let limit = limit.min(n);
            let sets = infoset::disjoint_information_sets(basis.rows(), n);
            let use_sets = match opts.strategy {
                CountStrategy::Walk => false,
                CountStrategy::InfoSets => true,
                CountStrategy::Auto => {
                    let cost = infoset::count_cost(k, sets.len(), limit);
                    cost < 2f64.powi(k as i32 - 1) || k > FULL_ENUMERATION_CAP
                }
            };
            let hist = if use_sets && k > 0 {
                log::debug!("counting A_w, w <= {limit}, on {} disjoint information sets", sets.len());
                infoset::count_up_to(&sets, n, limit, opts.exec).ok_or(Error::TooLong(n))?
            } else {
                full_histogram(&basis, opts)?
            };
            Ok(WeightProfile::from_histogram(n, k, &hist, Some(limit)))
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum MinDistanceMethod {
    #[default]
    Auto,
    Full,
    Bz,
}

impl FromStr for MinDistanceMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "auto" => Ok(MinDistanceMethod::Auto),
            "full" => Ok(MinDistanceMethod::Full),
            "bz" => Ok(MinDistanceMethod::Bz),
            other => Err(Error::Parse(format!("unknown min-distance method `{other}`"))),
        }
    }
}

impl fmt::Display for MinDistanceMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MinDistanceMethod::Auto => "auto",
            MinDistanceMethod::Full => "full",
            MinDistanceMethod::Bz => "bz",
        })
    }
}

#[derive(Clone, Copy, Debug)]
pub struct MinDistanceOptions {
    pub exec: Exec,
    /// Seeds the column shuffle behind the Brouwer–Zimmermann matrices.
    pub seed: u64,
}

impl Default for MinDistanceOptions {
    fn default() -> Self {
        MinDistanceOptions { exec: Exec::default(), seed: 0x5eed }
    }
}

/// Largest `d` in `{1, 2, 4}` dividing every codeword weight.
pub fn weight_divisor(m: &BitMatrix) -> usize {
    let rows = m.rows();
    if rows.iter().any(|r| r.weight() % 2 == 1) {
        1
    } else if rows.iter().all(|r| r.weight() % 4 == 0) && m.is_self_orthogonal() {
        4
    } else {
        2
    }
}

pub fn min_distance(m: &BitMatrix, method: MinDistanceMethod) -> Result<usize> {
    min_distance_with(m, method, &MinDistanceOptions::default())
}

pub fn min_distance_with(m: &BitMatrix, method: MinDistanceMethod, opts: &MinDistanceOptions) -> Result<usize> {
    let basis = m.reduce();
    let (n, k) = (basis.ncols(), basis.nrows());
    if k == 0 {
        return Err(Error::ZeroCode);
    }
    if n > kernel::MAX_LEN {
        return Err(Error::TooLong(n));
    }
    let full = match method {
        MinDistanceMethod::Full => true,
        MinDistanceMethod::Bz => false,
        MinDistanceMethod::Auto => k <= AUTO_FULL_MAX_K,
    };
    if full {
        let hist = full_histogram(&basis, &EnumOptions { exec: opts.exec, ..Default::default() })?;
        return Ok((1..=n).find(|&w| hist[w] > 0).expect("nonzero code"));
    }
    Ok(bz(&basis, opts)?.0)
}

/// Minimum distance and a codeword attaining it, by Brouwer–Zimmermann.
pub fn min_weight_codeword(m: &BitMatrix, opts: &MinDistanceOptions) -> Result<(usize, BitVector)> {
    let basis = m.reduce();
    if basis.nrows() == 0 {
        return Err(Error::ZeroCode);
    }
    bz(&basis, opts)
}

fn bz(basis: &BitMatrix, opts: &MinDistanceOptions) -> Result<(usize, BitVector)> {
    let n = basis.ncols();
    let sets = infoset::bz_information_sets(basis.rows(), n, opts.seed);
    let r = infoset::brouwer_zimmermann(&sets, n, weight_divisor(basis), opts.exec).ok_or(Error::TooLong(n))?;
    log::debug!("bz: d = {} after message weight {}", r.distance, r.levels);
    Ok((r.distance, r.witness))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SelfDualType {
    /// Singly-even.
    I,
    /// Doubly-even.
    II,
}

impl fmt::Display for SelfDualType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SelfDualType::I => "Type I",
            SelfDualType::II => "Type II",
        })
    }
}

/// Type of a binary self-dual code, `None` if the code is not self-dual.
pub fn self_dual_type(m: &BitMatrix) -> Option<SelfDualType> {
    m.is_self_dual().then(|| if m.is_doubly_even() { SelfDualType::II } else { SelfDualType::I })
}

/// Upper bound on the minimum distance of a self-dual code of length `n`.
pub fn extremal_bound(n: usize, typ: SelfDualType) -> usize {
    let base = 4 * (n / 24) + 4;
    match typ {
        SelfDualType::I if n % 24 == 22 => base + 2,
        _ => base,
    }
}

pub fn is_extremal(n: usize, d: usize, typ: SelfDualType) -> bool {
    d == extremal_bound(n, typ)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_code(k: usize, n: usize, rng: &mut ChaCha8Rng) -> BitMatrix {
        let rows = (0..k).map(|_| BitVector::from_bits((0..n).map(|_| rng.gen::<bool>()))).collect();
        BitMatrix::new(n, rows).unwrap()
    }

    fn golay() -> BitMatrix {
        // extended Golay code: [I | B] with the icosahedron-complement matrix
        let b = [
            "011111111111", "111011100010", "110111000101", "101110001011", "111100010110", "111000101101",
            "110001011011", "100010110111", "100101101110", "101011011100", "110110111000", "101101110001",
        ];
        let rows = (0..12)
            .map(|i| {
                let mut bits = vec![false; 24];
                bits[i] = true;
                for (j, ch) in b[i].chars().enumerate() {
                    bits[12 + j] = ch == '1';
                }
                BitVector::from_bits(bits)
            })
            .collect();
        BitMatrix::new(24, rows).unwrap()
    }

    #[test]
    fn golay_profile() {
        let g = golay();
        assert!(g.is_self_dual());
        let p = weight_enumerator(&g, EnumMode::Full).unwrap();
        assert_eq!(p.summary(), "0:1 8:759 12:2576 16:759 24:1");
        assert!(p.complete && p.is_symmetric() && p.all_divisible_by(4));
        assert_eq!(min_distance(&g, MinDistanceMethod::Bz).unwrap(), 8);
        assert_eq!(weight_divisor(&g), 4);
        assert_eq!(self_dual_type(&g), Some(SelfDualType::II));
    }

    #[test]
    fn truncated_profiles_agree() {
        let g = golay();
        for strategy in [CountStrategy::Walk, CountStrategy::InfoSets, CountStrategy::Auto] {
            let opts = EnumOptions { strategy, ..Default::default() };
            let p = weight_enumerator_with(&g, EnumMode::UpTo(12), &opts).unwrap();
            assert_eq!(p.summary(), "0:1 8:759 12:2576");
            assert!(!p.complete);
            assert_eq!(p.coefficient(10), Some(0));
            assert_eq!(p.coefficient(13), None);
        }
    }

    #[test]
    fn small_and_degenerate_codes() {
        let rep = BitMatrix::from_rows_of_bits(&[&[1, 1]]).unwrap();
        for m in [MinDistanceMethod::Auto, MinDistanceMethod::Full, MinDistanceMethod::Bz] {
            assert_eq!(min_distance(&rep, m).unwrap(), 2);
        }
        let zero = BitMatrix::empty(5);
        assert!(matches!(min_distance(&zero, MinDistanceMethod::Auto), Err(Error::ZeroCode)));
        let p = weight_enumerator(&zero, EnumMode::Full).unwrap();
        assert_eq!(p.counts, BTreeMap::from([(0, 1)]));
        assert_eq!(p.k, 0);
    }

    #[test]
    fn cap_is_enforced() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let m = random_code(41, 90, &mut rng);
        assert!(matches!(weight_enumerator(&m, EnumMode::Full), Err(Error::EnumerationTooLarge { .. })));
    }

    #[test]
    fn full_agrees_with_bz_on_random_codes() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for i in 0..30 {
            let k = rng.gen_range(1..=20);
            let n = k + rng.gen_range(1..40);
            let m = random_code(k, n, &mut rng);
            if m.rank() == 0 {
                continue;
            }
            let full = min_distance(&m, MinDistanceMethod::Full).unwrap();
            let opts = MinDistanceOptions { seed: i, ..Default::default() };
            assert_eq!(min_distance_with(&m, MinDistanceMethod::Bz, &opts).unwrap(), full);
        }
    }

    #[test]
    fn basis_permutation_invariance_and_complement_split() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let m = random_code(14, 40, &mut rng);
        let mut rows = m.rows().to_vec();
        rows.push(BitVector::ones(40));
        let with_ones = BitMatrix::new(40, rows.clone()).unwrap();
        rows.reverse();
        let reversed = BitMatrix::new(40, rows).unwrap();
        let a = weight_enumerator(&with_ones, EnumMode::Full).unwrap();
        let b = weight_enumerator(&reversed, EnumMode::Full).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.total(), 1 << with_ones.rank());
        assert!(a.is_symmetric());
        let seq = weight_enumerator_with(&m, EnumMode::Full, &EnumOptions { exec: Exec::Sequential, ..Default::default() });
        assert_eq!(seq.unwrap(), weight_enumerator(&m, EnumMode::Full).unwrap());
    }

    #[test]
    fn rains_bound() {
        assert_eq!(extremal_bound(72, SelfDualType::II), 16);
        assert_eq!(extremal_bound(22, SelfDualType::I), 6);
        assert_eq!(extremal_bound(68, SelfDualType::I), 12);
        assert_eq!(extremal_bound(24, SelfDualType::II), 8);
        assert!(is_extremal(24, 8, SelfDualType::II));
    }

    #[test]
    fn profile_json_shape() {
        let p = weight_enumerator(&golay(), EnumMode::Full).unwrap();
        let v: serde_json::Value = serde_json::to_value(&p).unwrap();
        assert_eq!(v["n"], 24);
        assert_eq!(v["counts"]["8"], 759);
        assert!(v.get("upto").is_none());
        let back: WeightProfile = serde_json::from_value(v).unwrap();
        assert_eq!(back, p);
    }
}
