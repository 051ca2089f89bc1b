//! Construction descriptors, table verification, randomized search and the
//! code store.

pub mod codefile;
pub mod construction;
pub mod search;
pub mod store;
pub mod tables;

pub use codefile::{format_code, load_code, parse_code};
pub use construction::{Code, Construction, ExtensionMethod, XSpec};
pub use store::{canonical_id, CodeRecord, RecordFilter, Store};

use serde::Serialize;

use crate::error::Result;
use crate::exec::Exec;
use crate::gf2::BitMatrix;
use crate::weights::{
    self, candidate_forms, extract_params, identify_form, CountStrategy, EnumMode, EnumOptions, EnumeratorForm, EnumeratorParams,
    MinDistanceMethod, MinDistanceOptions, SelfDualType, WeightProfile,
};

/// Parameters of a binary code, with the enumerator form for self-dual codes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Analysis {
    pub n: usize,
    pub k: usize,
    pub d: usize,
    pub self_dual: Option<SelfDualType>,
    pub profile: Option<WeightProfile>,
    pub params: Option<EnumeratorParams>,
}

/// Weight up to which a self-dual code of length `n` is counted.
fn profile_limit(n: usize, doubly_even: bool) -> Option<usize> {
    let forms = candidate_forms(n, doubly_even);
    if forms.is_empty() {
        return None;
    }
    // A20 of the length-96 form is a consistency check, not needed for alpha
    Some(forms.iter().map(|f| if *f == EnumeratorForm::W96 { 16 } else { f.max_weight() }).max().unwrap_or(0))
}

pub fn analyze(b: &BitMatrix, exec: Exec) -> Result<Analysis> {
    analyze_with(b, exec, true)
}

/// As [`analyze`]; `low_weights` also counts `A_d..A_{d+4}` for self-dual
/// codes of lengths without a known form.
pub fn analyze_with(b: &BitMatrix, exec: Exec, low_weights: bool) -> Result<Analysis> {
    let basis = b.reduce();
    let (n, k) = (basis.ncols(), basis.nrows());
    let self_dual = weights::self_dual_type(&basis);
    let opts = EnumOptions { exec, strategy: CountStrategy::Auto, progress: None };
    let md = MinDistanceOptions { exec, ..Default::default() };

    let Some(typ) = self_dual else {
        let d = weights::min_distance_with(&basis, MinDistanceMethod::Auto, &md)?;
        return Ok(Analysis { n, k, d, self_dual, profile: None, params: None });
    };
    let doubly_even = typ == SelfDualType::II;
    let (d, profile) = match profile_limit(n, doubly_even) {
        Some(limit) => {
            let profile = weights::weight_enumerator_with(&basis, EnumMode::UpTo(limit), &opts)?;
            let d = match profile.min_distance() {
                Some(d) => d,
                None => weights::min_distance_with(&basis, MinDistanceMethod::Auto, &md)?,
            };
            (d, profile)
        }
        None => {
            let d = weights::min_distance_with(&basis, MinDistanceMethod::Auto, &md)?;
            if !low_weights {
                return Ok(Analysis { n, k, d, self_dual, profile: None, params: None });
            }
            (d, weights::weight_enumerator_with(&basis, EnumMode::UpTo(d + 4), &opts)?)
        }
    };
    // codes outside every form (e.g. below the extremal distance) keep raw counts
    let params = identify_form(&profile, doubly_even).or_else(|_| extract_params(&profile, EnumeratorForm::Raw)).ok();
    Ok(Analysis { n, k, d, self_dual, profile: Some(profile), params })
}
