//! Information-set methods: exact low-weight counting and Brouwer–Zimmermann.

use std::sync::atomic::{AtomicUsize, Ordering};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::kernel::{self, fast, for_each_combination, Word};
use crate::exec::Exec;
use crate::gf2::BitVector;

/// A generator matrix reduced so that row `i` is the only row with a one at
/// `pivots[i]`.
#[derive(Clone, Debug)]
pub(crate) struct Systematic {
    pub rows: Vec<BitVector>,
    pub pivots: Vec<usize>,
    /// Pivots taken from columns that no earlier matrix used.
    pub fresh: usize,
}

/// Gauss–Jordan elimination that picks pivot columns in `order`.
///
/// `rows` must be linearly independent; all of them receive a pivot as long as
/// `order` covers enough columns.
fn eliminate(rows: &[BitVector], order: &[usize]) -> (Vec<BitVector>, Vec<usize>) {
    let mut rows = rows.to_vec();
    let mut pivots = Vec::with_capacity(rows.len());
    let mut top = 0;
    for &col in order {
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
    (rows, pivots)
}

/// Systematic matrices on pairwise disjoint information sets, taken greedily in
/// column order until the unused columns no longer contain one.
pub(crate) fn disjoint_information_sets(basis: &[BitVector], n: usize) -> Vec<Systematic> {
    let k = basis.len();
    let mut used = vec![false; n];
    let mut out = Vec::new();
    loop {
        let free: Vec<usize> = (0..n).filter(|&c| !used[c]).collect();
        let (rows, pivots) = eliminate(basis, &free);
        if pivots.len() < k || k == 0 {
            break;
        }
        for &p in &pivots {
            used[p] = true;
        }
        out.push(Systematic { rows, pivots, fresh: k });
    }
    out
}

/// Systematic matrices for Brouwer–Zimmermann from a seeded column shuffle.
///
/// Each matrix prefers columns no earlier matrix used; `fresh` counts how many
/// of its pivots are new. Generation stops once the fresh rank drops below
/// half the dimension (such matrices add little to the bound).
pub(crate) fn bz_information_sets(basis: &[BitVector], n: usize, seed: u64) -> Vec<Systematic> {
    let k = basis.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let mut used = vec![false; n];
    let mut out: Vec<Systematic> = Vec::new();
    loop {
        let mut pref: Vec<usize> = order.iter().copied().filter(|&c| !used[c]).collect();
        let fresh_cols = pref.len();
        pref.extend(order.iter().copied().filter(|&c| used[c]));
        let (rows, pivots) = eliminate(basis, &pref);
        let fresh = pivots.iter().filter(|&&p| !used[p]).count();
        debug_assert!(fresh <= fresh_cols);
        if fresh == 0 || (fresh < k.div_ceil(2) && !out.is_empty()) {
            break;
        }
        for &p in &pivots {
            used[p] = true;
        }
        out.push(Systematic { rows, pivots, fresh });
    }
    log::debug!(
        "bz: {} information sets (seed {seed}), fresh ranks {:?}",
        out.len(),
        out.iter().map(|s| s.fresh).collect::<Vec<_>>()
    );
    out
}

fn binomial(n: usize, r: usize) -> f64 {
    if r > n {
        return 0.0;
    }
    (0..r).fold(1.0, |a, i| a * (n - i) as f64 / (i + 1) as f64)
}

/// Codewords examined by [`count_up_to`] on a code with `sets` disjoint sets.
pub(crate) fn count_cost(k: usize, sets: usize, max_weight: usize) -> f64 {
    let t = max_weight / sets.max(1);
    sets as f64 * (1..=t.min(k)).map(|i| binomial(k, i)).sum::<f64>()
}

/// Exact `A_w` for `w <= max_weight` (index 0 holds the zero word).
///
/// With `m` disjoint information sets, a codeword of weight at most `max_weight`
/// has at most `t = max_weight / m` ones on one of them, so it arises from a
/// message of weight `<= t` there. Enumerating those messages for every set
/// and counting a word only at the first set where it is light gives each
/// codeword exactly once.
pub(crate) fn count_up_to(sets: &[Systematic], n: usize, max_weight: usize, exec: Exec) -> Option<Vec<u64>> {
    kernel::with_words!(n, W => count_up_to_w::<W>(sets, n, max_weight, exec)).flatten()
}

fn count_up_to_w<const W: usize>(sets: &[Systematic], n: usize, max_weight: usize, exec: Exec) -> Option<Vec<u64>> {
    let m = sets.len();
    if m == 0 {
        return None;
    }
    let k = sets[0].rows.len();
    let t = max_weight / m;
    let gens: Vec<Vec<Word<W>>> = sets.iter().map(|s| s.rows.iter().map(kernel::pack::<W>).collect()).collect();
    let masks: Vec<Word<W>> = sets.iter().map(|s| kernel::pack::<W>(&BitVector::from_support(n, &s.pivots))).collect();

    let tasks = m * k;
    let mut hist = exec.map_reduce(
        tasks,
        || vec![0u64; max_weight + 1],
        |task| {
            let (j, first) = (task / k, task % k);
            let mut h = vec![0u64; max_weight + 1];
            fast(|| {
                for_each_combination(&gens[j], first, 1, t, &mut |c: &Word<W>| {
                    let w = kernel::weight(c);
                    if w <= max_weight && masks[..j].iter().all(|mask| kernel::masked_weight(c, mask) > t) {
                        h[w] += 1;
                    }
                })
            });
            h
        },
        |mut a, b| {
            for (x, y) in a.iter_mut().zip(b) {
                *x += y;
            }
            a
        },
    );
    hist[0] = 1;
    Some(hist)
}

/// Outcome of a Brouwer–Zimmermann run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct BzResult {
    pub distance: usize,
    pub witness: BitVector,
    /// Largest message weight enumerated.
    pub levels: usize,
}

/// Minimum distance by Brouwer–Zimmermann.
///
/// After all messages of weight `<= w` were tried on every matrix, a codeword
/// not yet seen has more than `w` ones on each matrix's pivots, hence at least
/// `w + 1 - (k - fresh_j)` ones on the fresh pivots of matrix `j`. Fresh pivot
/// sets are disjoint, so these lower bounds add up. `divisor` (1, 2 or 4)
/// rounds the bound up when every weight is a multiple of it.
pub(crate) fn brouwer_zimmermann(
    sets: &[Systematic],
    n: usize,
    divisor: usize,
    exec: Exec,
) -> Option<BzResult> {
    kernel::with_words!(n, W => bz_w::<W>(sets, n, divisor, exec)).flatten()
}

fn bz_w<const W: usize>(sets: &[Systematic], n: usize, divisor: usize, exec: Exec) -> Option<BzResult> {
    let k = sets.first()?.rows.len();
    if k == 0 {
        return None;
    }
    let gens: Vec<Vec<Word<W>>> = sets.iter().map(|s| s.rows.iter().map(kernel::pack::<W>).collect()).collect();
    // generator rows are codewords: start from the lightest
    let mut best = gens.iter().flatten().min_by_key(|r| kernel::weight(*r)).copied()?;
    let mut upper = kernel::weight(&best);
    let divisor = divisor.max(1);
    let round_up = |x: usize| x.div_ceil(divisor) * divisor;

    let mut w: usize = 0;
    loop {
        let lower: usize = sets.iter().map(|s| (w + 1).saturating_sub(k - s.fresh)).sum();
        if round_up(lower) >= upper || w >= k {
            log::debug!("bz: stop at level {w}, lower {lower}, upper {upper}");
            return Some(BzResult { distance: upper, witness: kernel::unpack(&best, n), levels: w });
        }
        w += 1;
        let bound = AtomicUsize::new(upper);
        let found = exec.map_reduce(
            gens.len() * k,
            || None,
            |task| {
                let (j, first) = (task / k, task % k);
                let mut local: Option<(usize, Word<W>)> = None;
                let mut cut = bound.load(Ordering::Relaxed);
                fast(|| {
                    for_each_combination(&gens[j], first, w, w, &mut |c: &Word<W>| {
                        let wt = kernel::weight(c);
                        if wt < cut {
                            cut = wt;
                            local = Some((wt, *c));
                        }
                    })
                });
                if let Some((wt, _)) = local {
                    bound.fetch_min(wt, Ordering::Relaxed);
                }
                local
            },
            |a, b| match (a, b) {
                (Some(x), Some(y)) => Some(if (y.0, y.1) < (x.0, x.1) { y } else { x }),
                (x, None) => x,
                (None, y) => y,
            },
        );
        if let Some((wt, c)) = found {
            if wt < upper {
                upper = wt;
                best = c;
            }
        }
    }
}
