//! Randomized search over extension vectors.
//!
//! Trial `i` draws from ChaCha8 seeded with `seed` on stream `i`, so the set of
//! codes found does not depend on the number of workers.

use std::sync::atomic::{AtomicU64, Ordering};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::construction::{Code, Construction, ExtensionMethod};
use super::store::{self, CodeRecord};
use super::{analyze, Analysis};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::extend::{self, Char2Base};
use crate::gf2::{BitMatrix, BitVector};
use crate::ring::RingElement;
use crate::rmatrix::RMatrix;

#[derive(Clone, Debug)]
pub struct SearchSpec {
    pub method: ExtensionMethod,
    pub base: Construction,
    pub trials: u64,
    pub seed: u64,
    /// Keep only codes of this length and dimension with at least this
    /// minimum distance.
    pub target: Option<Target>,
    pub keep_duplicates: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Target {
    pub n: usize,
    pub k: usize,
    pub d: usize,
}

impl Target {
    pub fn accepts(&self, a: &Analysis) -> bool {
        a.n == self.n && a.k == self.k && a.d >= self.d
    }
}

impl std::str::FromStr for Target {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<usize> = s
            .trim_matches(|c| c == '[' || c == ']')
            .split(',')
            .map(|p| p.trim().parse::<usize>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| Error::Parse(format!("target `{s}`: {e}")))?;
        match parts[..] {
            [n, k, d] => Ok(Target { n, k, d }),
            _ => Err(Error::Parse(format!("target `{s}` is not n,k,d"))),
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct SearchOutcome {
    pub trials: u64,
    /// Trials whose sampled `X` gave a code (the base admits no valid `X` otherwise).
    pub valid: u64,
    /// Codes meeting the target distance, before deduplication.
    pub hits: u64,
    /// Distinct hits in trial order.
    pub records: Vec<CodeRecord>,
}

/// Uniform vector of length `len` with `<X,X> = norm`: all coordinates but
/// the first are uniform; the first is uniform among the elements whose
/// square closes the gap. `None` if no such element exists.
fn sample_x<T: Char2Base>(len: usize, norm: T, alphabet: &[T], rng: &mut ChaCha8Rng) -> Option<Vec<T>> {
    let mut x: Vec<T> = (0..len).map(|_| *alphabet.choose(rng).expect("nonempty alphabet")).collect();
    let rest = x[1..].iter().fold(T::ZERO, |acc, &a| acc.plus(a.times(a)));
    let need = norm.plus(rest);
    let roots: Vec<T> = alphabet.iter().copied().filter(|a| a.times(*a) == need).collect();
    x[0] = *roots.choose(rng)?;
    Some(x)
}

enum Prepared {
    Binary { g: BitMatrix, len: usize, norm: bool },
    R { g: RMatrix, len: usize, norm: RingElement },
}

fn prepare(method: ExtensionMethod, base: &Code) -> Result<Prepared> {
    if !base.binary().is_self_dual() {
        return Err(Error::NotSelfDual);
    }
    Ok(match (method, base) {
        (ExtensionMethod::Ext, Code::Binary(g)) => Prepared::Binary { g: g.clone(), len: g.ncols(), norm: true },
        (ExtensionMethod::Ext, Code::R(g)) => Prepared::R { g: g.clone(), len: g.ncols(), norm: RingElement::ONE },
        (ExtensionMethod::Idext, Code::Binary(g)) => {
            let rows: Vec<Vec<bool>> = g.rows().iter().map(|r| r.iter().collect()).collect();
            let v = extend::systematic_row_sum(&rows)?;
            let len = g.nrows();
            Prepared::Binary { g: g.clone(), len, norm: extend::idext_required_norm(len, v)? }
        }
        (ExtensionMethod::Idext, Code::R(g)) => {
            let v = extend::systematic_row_sum(g.rows())?;
            let len = g.nrows();
            Prepared::R { g: g.clone(), len, norm: extend::idext_required_norm(len, v)? }
        }
    })
}

const UNITS: [RingElement; 2] = [RingElement::ONE, RingElement::W];

fn trial(spec: &SearchSpec, prepared: &Prepared, alphabet: &[RingElement], i: u64) -> Result<Option<(Construction, BitMatrix)>> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    rng.set_stream(i);
    match prepared {
        Prepared::Binary { g, len, norm } => {
            let Some(x) = sample_x(*len, *norm, &[false, true], &mut rng) else { return Ok(None) };
            let xv = BitVector::from_bits(x);
            let code = match spec.method {
                ExtensionMethod::Ext => extend::extend_ext_binary(g, &xv)?,
                ExtensionMethod::Idext => extend::extend_idext_binary(g, &xv)?,
            };
            let c = Construction::Extension {
                method: spec.method,
                base: Box::new(spec.base.clone()),
                x: super::XSpec::Hex(extend::encode_hex_x(&xv)),
                c: RingElement::ONE,
            };
            Ok(Some((c, code)))
        }
        Prepared::R { g, len, norm } => {
            let Some(x) = sample_x(*len, *norm, alphabet, &mut rng) else { return Ok(None) };
            let c = UNITS[rng.gen_range(0..UNITS.len())];
            let code = match spec.method {
                ExtensionMethod::Ext => extend::extend_ext_r(g, &x, c)?,
                ExtensionMethod::Idext => extend::extend_idext_r(g, &x, c)?,
            };
            Ok(Some((Construction::extension_r(spec.method, spec.base.clone(), x, c), code.gray_image())))
        }
    }
}

fn record(construction: &Construction, a: &Analysis, id: String, spec: &SearchSpec, trial: u64) -> Option<CodeRecord> {
    Some(CodeRecord {
        id,
        construction: construction.to_string(),
        label: None,
        n: a.n,
        k: a.k,
        d: a.d,
        self_dual: a.self_dual,
        params: a.params.clone()?,
        seed: Some(spec.seed),
        trial: Some(trial),
        equivalence: store::EQUIVALENCE_UNCHECKED.into(),
        created_unix: store::now_unix(),
    })
}

/// Runs the trials and returns the distinct hits; `progress` counts finished
/// trials. Nothing is written: the caller appends the records.
pub fn run_search(spec: &SearchSpec, exec: Exec, progress: Option<&AtomicU64>) -> Result<SearchOutcome> {
    let base = spec.base.build()?;
    let prepared = prepare(spec.method, &base)?;
    let alphabet: Vec<RingElement> = RingElement::all().collect();
    let n_trials = usize::try_from(spec.trials).map_err(|_| Error::Parse("too many trials".into()))?;

    let results: Vec<Result<Option<(Construction, Analysis, String)>>> = exec.map_collect(n_trials, |i| {
        let out = trial(spec, &prepared, &alphabet, i as u64).and_then(|t| {
            t.map(|(c, code)| analyze(&code, Exec::Sequential).map(|a| (c, a, store::canonical_id(&code)))).transpose()
        });
        if let Some(p) = progress {
            p.fetch_add(1, Ordering::Relaxed);
        }
        out
    });

    let mut outcome = SearchOutcome { trials: spec.trials, ..Default::default() };
    for (i, r) in results.into_iter().enumerate() {
        let Some((c, a, id)) = r? else { continue };
        outcome.valid += 1;
        if spec.target.is_some_and(|t| !t.accepts(&a)) {
            continue;
        }
        outcome.hits += 1;
        let Some(rec) = record(&c, &a, id, spec, i as u64) else { continue };
        if !store::is_duplicate(&outcome.records, &rec, spec.keep_duplicates) {
            outcome.records.push(rec);
        }
    }
    Ok(outcome)
}
