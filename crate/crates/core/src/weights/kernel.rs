//! Inner loops: Gray-code codeword walk and combination enumeration.
//!
//! Codewords are fixed-width `[u64; W]` arrays so that XOR and popcount unroll.
//! Callers dispatch on the padded word count with [`with_words!`].

use std::sync::atomic::{AtomicU64, Ordering};

use crate::exec::Exec;
use crate::gf2::BitVector;

pub(crate) type Word<const W: usize> = [u64; W];

/// Longest supported code length (16 words).
pub(crate) const MAX_LEN: usize = 1024;

/// Runs `$body` with `$w` bound to the smallest supported width holding `$n` bits.
macro_rules! with_words {
    ($n:expr, $w:ident => $body:expr) => {{
        match crate::gf2::words_for($n) {
            0 | 1 => {
                const $w: usize = 1;
                Some($body)
            }
            2 => {
                const $w: usize = 2;
                Some($body)
            }
            3 | 4 => {
                const $w: usize = 4;
                Some($body)
            }
            5..=8 => {
                const $w: usize = 8;
                Some($body)
            }
            9..=16 => {
                const $w: usize = 16;
                Some($body)
            }
            _ => None,
        }
    }};
}
pub(crate) use with_words;

pub(crate) fn pack<const W: usize>(v: &BitVector) -> Word<W> {
    let mut out = [0u64; W];
    out[..v.words().len()].copy_from_slice(v.words());
    out
}

pub(crate) fn unpack<const W: usize>(w: &Word<W>, len: usize) -> BitVector {
    BitVector::from_words(len, w[..crate::gf2::words_for(len)].to_vec())
}

#[inline(always)]
pub(crate) fn xor<const W: usize>(a: &Word<W>, b: &Word<W>) -> Word<W> {
    let mut out = *a;
    for i in 0..W {
        out[i] ^= b[i];
    }
    out
}

#[inline(always)]
pub(crate) fn weight<const W: usize>(a: &Word<W>) -> usize {
    a.iter().map(|x| x.count_ones() as usize).sum()
}

#[inline(always)]
pub(crate) fn masked_weight<const W: usize>(a: &Word<W>, mask: &Word<W>) -> usize {
    let mut s = 0;
    for i in 0..W {
        s += (a[i] & mask[i]).count_ones() as usize;
    }
    s
}

#[cfg(target_arch = "x86_64")]
#[target_feature(enable = "popcnt")]
unsafe fn popcnt_region<R, F: FnOnce() -> R>(f: F) -> R {
    f()
}

/// Runs `f` compiled with hardware popcount when the CPU has it.
///
/// The hot closures are `#[inline(always)]` so they are generated inside the
/// feature-enabled frame.
#[inline(always)]
pub(crate) fn fast<R, F: FnOnce() -> R>(f: F) -> R {
    #[cfg(target_arch = "x86_64")]
    if std::is_x86_feature_detected!("popcnt") {
        // SAFETY: the feature was detected at runtime.
        return unsafe { popcnt_region(f) };
    }
    f()
}

/// XORs of every subset of `rows` (at most 8 rows), indexed by subset bitmask.
fn subset_table<const W: usize>(rows: &[Word<W>]) -> Vec<Word<W>> {
    let mut table = vec![[0u64; W]; 1 << rows.len()];
    for (b, r) in rows.iter().enumerate() {
        let half = 1 << b;
        for j in 0..half {
            table[half + j] = xor(&table[j], r);
        }
    }
    table
}

const TABLE_BITS: usize = 8;
const MAX_OUTER_BITS: usize = 10;
const MIN_INNER_BITS: usize = 12;

/// Histogram of weights over every codeword of the span of `rows`.
///
/// The lowest 8 rows go into a 256-entry subset table; the next rows are walked
/// in Gray-code order (one row XOR per step, then one XOR + popcount per table
/// entry); the top rows (up to 10) are fixed per work chunk. Chunk histograms
/// are summed, so the result does not depend on the execution mode.
pub(crate) fn walk_histogram<const W: usize>(
    rows: &[Word<W>],
    n: usize,
    exec: Exec,
    progress: Option<&AtomicU64>,
) -> Vec<u64> {
    let k = rows.len();
    let low = k.min(TABLE_BITS);
    let table = subset_table(&rows[..low]);
    let rest = &rows[low..];
    let outer = rest.len().saturating_sub(MIN_INNER_BITS).min(MAX_OUTER_BITS);
    let (inner, top) = rest.split_at(rest.len() - outer);
    let per_chunk = (table.len() as u64) << inner.len();

    exec.map_reduce(
        1 << outer,
        || vec![0u64; n + 1],
        |chunk| {
            let mut start = [0u64; W];
            for (b, r) in top.iter().enumerate() {
                if chunk >> b & 1 == 1 {
                    start = xor(&start, r);
                }
            }
            let hist = fast(|| walk_chunk(&table, inner, start, n));
            if let Some(p) = progress {
                p.fetch_add(per_chunk, Ordering::Relaxed);
            }
            hist
        },
        |mut a, b| {
            for (x, y) in a.iter_mut().zip(b) {
                *x += y;
            }
            a
        },
    )
}

#[inline(always)]
fn walk_chunk<const W: usize>(table: &[Word<W>], inner: &[Word<W>], start: Word<W>, n: usize) -> Vec<u64> {
    // four interleaved counters per weight avoid store-forwarding stalls
    let mut lanes = vec![[0u64; 4]; 64 * W + 1];
    let mut v = start;
    let steps: u64 = 1 << inner.len();
    let tail = &table[table.len() / 4 * 4..];
    for i in 0..steps {
        if i > 0 {
            v = xor(&v, &inner[i.trailing_zeros() as usize]);
        }
        for q in table.chunks_exact(4) {
            lanes[weight(&xor(&v, &q[0]))][0] += 1;
            lanes[weight(&xor(&v, &q[1]))][1] += 1;
            lanes[weight(&xor(&v, &q[2]))][2] += 1;
            lanes[weight(&xor(&v, &q[3]))][3] += 1;
        }
        for t in tail {
            lanes[weight(&xor(&v, t))][0] += 1;
        }
    }
    lanes.truncate(n + 1);
    lanes.iter().map(|l| l.iter().sum()).collect()
}

/// Visits the XOR of every subset of `rows` whose smallest index is `first`
/// and whose size lies in `min_size..=max_size`.
#[inline(always)]
pub(crate) fn for_each_combination<const W: usize, F: FnMut(&Word<W>)>(
    rows: &[Word<W>],
    first: usize,
    min_size: usize,
    max_size: usize,
    f: &mut F,
) {
    if max_size == 0 || first >= rows.len() {
        return;
    }
    // explicit stack of (next index, running xor); depth = subset size
    let mut stack: Vec<(usize, Word<W>)> = Vec::with_capacity(max_size);
    stack.push((first + 1, rows[first]));
    if min_size <= 1 {
        f(&rows[first]);
    }
    while let Some(&(from, acc)) = stack.last() {
        let depth = stack.len();
        if depth == max_size || from >= rows.len() {
            stack.pop();
            continue;
        }
        if depth + 1 == max_size {
            stack.pop();
            if depth + 1 >= min_size {
                for r in &rows[from..] {
                    f(&xor(&acc, r));
                }
            }
            continue;
        }
        stack[depth - 1].0 += 1;
        let word = xor(&acc, &rows[from]);
        if depth + 1 >= min_size {
            f(&word);
        }
        stack.push((from + 1, word));
    }
}
