//! Weight-enumerator families of self-dual codes and their free parameters.
//!
//! Each family fixes the low coefficients as affine functions of one or two
//! integers:
//!
//! | form         | coefficients                                                             |
//! |--------------|--------------------------------------------------------------------------|
//! | `W72_typeII` | `A12 = 4398 + a`, `A16 = 197073 - 12a`                                   |
//! | `W96`        | `A16 = -28086 + a`, `A20 = 3666432 - 16a`                                |
//! | `W72_1`      | `A12 = 2b`, `A14 = 8640 - 64g`, `A16 = 124281 - 24b + 384g`              |
//! | `W72_2`      | `A12 = 2b`, `A14 = 7616 - 64g`, `A16 = 134521 - 24b + 384g`              |
//! | `W68_1`      | `A12 = 442 + 4b`, `A14 = 10864 - 8b`                                     |
//! | `W68_2`      | `A12 = 442 + 4b`, `A14 = 14960 - 8b - 256g`                              |

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::WeightProfile;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum EnumeratorForm {
    #[serde(rename = "w72_typeII")]
    W72TypeII,
    #[serde(rename = "w96")]
    W96,
    #[serde(rename = "w72_1")]
    W72_1,
    #[serde(rename = "w72_2")]
    W72_2,
    #[serde(rename = "w68_1")]
    W68_1,
    #[serde(rename = "w68_2")]
    W68_2,
    #[serde(rename = "raw")]
    Raw,
}

impl EnumeratorForm {
    pub const ALL: [EnumeratorForm; 7] = [
        EnumeratorForm::W72TypeII,
        EnumeratorForm::W96,
        EnumeratorForm::W72_1,
        EnumeratorForm::W72_2,
        EnumeratorForm::W68_1,
        EnumeratorForm::W68_2,
        EnumeratorForm::Raw,
    ];

    pub fn name(self) -> &'static str {
        match self {
            EnumeratorForm::W72TypeII => "w72_typeII",
            EnumeratorForm::W96 => "w96",
            EnumeratorForm::W72_1 => "w72_1",
            EnumeratorForm::W72_2 => "w72_2",
            EnumeratorForm::W68_1 => "w68_1",
            EnumeratorForm::W68_2 => "w68_2",
            EnumeratorForm::Raw => "raw",
        }
    }

    pub fn length(self) -> Option<usize> {
        match self {
            EnumeratorForm::W72TypeII | EnumeratorForm::W72_1 | EnumeratorForm::W72_2 => Some(72),
            EnumeratorForm::W96 => Some(96),
            EnumeratorForm::W68_1 | EnumeratorForm::W68_2 => Some(68),
            EnumeratorForm::Raw => None,
        }
    }

    /// Smallest nonzero weight the form allows.
    pub fn min_weight(self) -> usize {
        match self {
            EnumeratorForm::W96 => 16,
            EnumeratorForm::Raw => 1,
            _ => 12,
        }
    }

    /// Largest weight whose coefficient the form pins down.
    pub fn max_weight(self) -> usize {
        match self {
            EnumeratorForm::W96 => 20,
            EnumeratorForm::W68_1 | EnumeratorForm::W68_2 => 14,
            EnumeratorForm::Raw => 0,
            _ => 16,
        }
    }

    /// Weights needed to solve for the parameters.
    fn solving_weights(self) -> &'static [usize] {
        match self {
            EnumeratorForm::W72TypeII => &[12],
            EnumeratorForm::W96 => &[16],
            EnumeratorForm::Raw => &[],
            _ => &[12, 14],
        }
    }

    fn doubly_even(self) -> bool {
        matches!(self, EnumeratorForm::W72TypeII | EnumeratorForm::W96)
    }

    /// Predicted `A_w` for `min_weight <= w <= max_weight`.
    fn predict(self, w: usize, p: &EnumeratorParams) -> Option<i64> {
        let a = p.alpha.unwrap_or(0);
        let b = p.beta.unwrap_or(0);
        let g = p.gamma.unwrap_or(0);
        if w % 2 == 1 || (self.doubly_even() && w % 4 != 0) {
            return Some(0);
        }
        match (self, w) {
            (EnumeratorForm::W72TypeII, 12) => Some(4398 + a),
            (EnumeratorForm::W72TypeII, 16) => Some(197073 - 12 * a),
            (EnumeratorForm::W96, 16) => Some(-28086 + a),
            (EnumeratorForm::W96, 20) => Some(3666432 - 16 * a),
            (EnumeratorForm::W72_1, 12) | (EnumeratorForm::W72_2, 12) => Some(2 * b),
            (EnumeratorForm::W72_1, 14) => Some(8640 - 64 * g),
            (EnumeratorForm::W72_2, 14) => Some(7616 - 64 * g),
            (EnumeratorForm::W72_1, 16) => Some(124281 - 24 * b + 384 * g),
            (EnumeratorForm::W72_2, 16) => Some(134521 - 24 * b + 384 * g),
            (EnumeratorForm::W68_1, 12) | (EnumeratorForm::W68_2, 12) => Some(442 + 4 * b),
            (EnumeratorForm::W68_1, 14) => Some(10864 - 8 * b),
            (EnumeratorForm::W68_2, 14) => Some(14960 - 8 * b - 256 * g),
            _ => None,
        }
    }
}

impl fmt::Display for EnumeratorForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for EnumeratorForm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_lowercase().replace(['-', ','], "_");
        EnumeratorForm::ALL
            .into_iter()
            .find(|f| f.name().to_ascii_lowercase() == key)
            .ok_or_else(|| Error::Parse(format!("unknown enumerator form `{s}`")))
    }
}

/// Free parameters of a weight enumerator in one of the known forms.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EnumeratorParams {
    pub form: EnumeratorForm,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma: Option<i64>,
    /// Low nonzero coefficients, kept for the `raw` form.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub raw: Option<BTreeMap<usize, u64>>,
}

impl EnumeratorParams {
    pub fn new(form: EnumeratorForm) -> Self {
        EnumeratorParams { form, alpha: None, beta: None, gamma: None, raw: None }
    }

    pub fn with_alpha(mut self, a: i64) -> Self {
        self.alpha = Some(a);
        self
    }

    pub fn with_beta_gamma(mut self, b: i64, g: Option<i64>) -> Self {
        self.beta = Some(b);
        self.gamma = g;
        self
    }
}

impl fmt::Display for EnumeratorParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.form)?;
        if let Some(a) = self.alpha {
            write!(f, " alpha={a}")?;
        }
        if let Some(b) = self.beta {
            write!(f, " beta={b}")?;
        }
        if let Some(g) = self.gamma {
            write!(f, " gamma={g}")?;
        }
        if let Some(raw) = &self.raw {
            for (w, c) in raw {
                write!(f, " A{w}={c}")?;
            }
        }
        Ok(())
    }
}

fn mismatch(form: EnumeratorForm, reason: impl Into<String>) -> Error {
    Error::FormMismatch { form: form.name().to_string(), reason: reason.into() }
}

fn exact_div(num: i64, den: i64, form: EnumeratorForm, what: &str) -> Result<i64> {
    if num % den != 0 {
        return Err(mismatch(form, format!("{what} = {num}/{den} is not an integer")));
    }
    Ok(num / den)
}

/// Solves `form` for its parameters and checks every coefficient it pins down
/// that the profile covers (including `A_w = 0` below the minimum weight).
pub fn extract_params(profile: &WeightProfile, form: EnumeratorForm) -> Result<EnumeratorParams> {
    if let Some(n) = form.length() {
        if profile.n != n {
            return Err(mismatch(form, format!("code length {} but the form is for length {n}", profile.n)));
        }
    }
    if form == EnumeratorForm::Raw {
        let raw = profile.counts.iter().filter(|(&w, _)| w > 0).map(|(&w, &c)| (w, c)).take(3).collect();
        return Ok(EnumeratorParams { raw: Some(raw), ..EnumeratorParams::new(form) });
    }
    let coeff = |w: usize| -> Result<i64> {
        profile
            .coefficient(w)
            .map(|c| c as i64)
            .ok_or_else(|| mismatch(form, format!("A{w} is not covered by the profile")))
    };
    for &w in form.solving_weights() {
        coeff(w)?;
    }
    let params = match form {
        EnumeratorForm::W72TypeII => EnumeratorParams::new(form).with_alpha(coeff(12)? - 4398),
        EnumeratorForm::W96 => EnumeratorParams::new(form).with_alpha(coeff(16)? + 28086),
        EnumeratorForm::W72_1 | EnumeratorForm::W72_2 => {
            let beta = exact_div(coeff(12)?, 2, form, "beta")?;
            let base = if form == EnumeratorForm::W72_1 { 8640 } else { 7616 };
            let gamma = exact_div(base - coeff(14)?, 64, form, "gamma")?;
            EnumeratorParams::new(form).with_beta_gamma(beta, Some(gamma))
        }
        EnumeratorForm::W68_1 => {
            let beta = exact_div(coeff(12)? - 442, 4, form, "beta")?;
            EnumeratorParams::new(form).with_beta_gamma(beta, None)
        }
        EnumeratorForm::W68_2 => {
            let beta = exact_div(coeff(12)? - 442, 4, form, "beta")?;
            let gamma = exact_div(14960 - 8 * beta - coeff(14)?, 256, form, "gamma")?;
            EnumeratorParams::new(form).with_beta_gamma(beta, Some(gamma))
        }
        EnumeratorForm::Raw => unreachable!(),
    };
    for w in 1..=form.max_weight() {
        let Some(found) = profile.coefficient(w) else { continue };
        let expected = if w < form.min_weight() { Some(0) } else { form.predict(w, &params) };
        if let Some(e) = expected {
            if found as i64 != e {
                return Err(mismatch(form, format!("A{w} = {found}, form gives {e} with {params}")));
            }
        }
    }
    Ok(params)
}

/// Candidate forms for a self-dual code of length `n`.
pub fn candidate_forms(n: usize, doubly_even: bool) -> Vec<EnumeratorForm> {
    match (n, doubly_even) {
        (72, true) => vec![EnumeratorForm::W72TypeII],
        (96, true) => vec![EnumeratorForm::W96],
        (72, false) => vec![EnumeratorForm::W72_1, EnumeratorForm::W72_2],
        (68, false) => vec![EnumeratorForm::W68_1, EnumeratorForm::W68_2],
        _ => vec![],
    }
}

/// The first candidate form that fits, or `raw` when the length has none.
///
/// `W72_1` and `W72_2` never both fit once `A16` is known. `W68_1` with `b`
/// coincides with `W68_2` with the same `b` and `g = 16`; the tie goes to
/// `W68_1`.
pub fn identify_form(profile: &WeightProfile, doubly_even: bool) -> Result<EnumeratorParams> {
    let candidates = candidate_forms(profile.n, doubly_even);
    if candidates.is_empty() {
        return extract_params(profile, EnumeratorForm::Raw);
    }
    let mut last = None;
    for form in candidates {
        match extract_params(profile, form) {
            Ok(p) => return Ok(p),
            Err(e) => last = Some(e),
        }
    }
    Err(last.expect("at least one candidate"))
}
