//! Expected parameters of the published tables and their recomputation.

use std::time::Instant;

use serde::Serialize;

use super::construction::{Code, Construction};
use super::store::{self, CodeRecord};
use super::{analyze_with, Analysis};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::gf2::BitMatrix;
use crate::weights::{self, EnumeratorForm, EnumeratorParams, SelfDualType};

pub const TABLES: std::ops::RangeInclusive<u8> = 1..=8;

/// One expected cell of a row.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Expect {
    /// `(n, 8^k, d)` of the `R`-code, `d` the Lee distance.
    R { n: usize, log8: usize, d: usize },
    Binary { n: usize, k: usize, d: usize },
    SelfDual(SelfDualType),
    Extremal,
    Params(EnumeratorParams),
    /// The binary image is the dual of this construction's image.
    DualOf(String),
    /// Report `A_w` without an expected value.
    Report(usize),
}

impl Expect {
    fn name(&self) -> String {
        match self {
            Expect::R { .. } => "R".into(),
            Expect::Binary { .. } => "binary".into(),
            Expect::SelfDual(_) => "type".into(),
            Expect::Extremal => "extremal".into(),
            Expect::Params(_) => "params".into(),
            Expect::DualOf(_) => "dual".into(),
            Expect::Report(w) => format!("A{w}"),
        }
    }

    fn expected(&self) -> String {
        match self {
            Expect::R { n, log8, d } => format!("({n}, 8^{log8}, {d})"),
            Expect::Binary { n, k, d } => format!("[{n},{k},{d}]"),
            Expect::SelfDual(t) => t.to_string(),
            Expect::Extremal => "yes".into(),
            Expect::Params(p) => p.to_string(),
            Expect::DualOf(c) => format!("dual of {c}"),
            Expect::Report(_) => "-".into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RowSpec {
    pub table: u8,
    pub label: String,
    pub construction: String,
    /// Skipped unless deep verification is requested.
    pub deep: bool,
    pub expect: Vec<Expect>,
    /// Cells whose printed value is known not to reproduce.
    pub known_mismatch: Vec<&'static str>,
}

impl RowSpec {
    fn new(table: u8, label: &str, construction: &str, expect: Vec<Expect>) -> Self {
        RowSpec { table, label: label.into(), construction: construction.into(), deep: false, expect, known_mismatch: vec![] }
    }

    fn deep(mut self) -> Self {
        self.deep = true;
        self
    }

    fn needs_low_weights(&self) -> bool {
        self.expect.iter().any(|e| matches!(e, Expect::Report(_)))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Status {
    Pass,
    /// Differs from the printed value in a documented way.
    Known,
    Skipped,
    Fail,
}

impl Status {
    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Known => "KNOWN",
            Status::Skipped => "SKIP",
            Status::Fail => "FAIL",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Cell {
    pub check: String,
    pub expected: String,
    pub found: String,
    pub status: Status,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RowReport {
    pub table: u8,
    pub label: String,
    pub construction: String,
    pub cells: Vec<Cell>,
    pub status: Status,
    pub seconds: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip)]
    pub analysis: Option<Analysis>,
    #[serde(skip)]
    pub id: Option<String>,
}

fn r(n: usize, log8: usize, d: usize) -> Expect {
    Expect::R { n, log8, d }
}

fn bin(n: usize, k: usize, d: usize) -> Expect {
    Expect::Binary { n, k, d }
}

fn w72_1(gamma: i64, beta: i64) -> Expect {
    Expect::Params(EnumeratorParams::new(EnumeratorForm::W72_1).with_beta_gamma(beta, Some(gamma)))
}

fn w72_2(gamma: i64, beta: i64) -> Expect {
    Expect::Params(EnumeratorParams::new(EnumeratorForm::W72_2).with_beta_gamma(beta, Some(gamma)))
}

fn w68_2(gamma: i64, beta: i64) -> Expect {
    Expect::Params(EnumeratorParams::new(EnumeratorForm::W68_2).with_beta_gamma(beta, Some(gamma)))
}

fn typeii(form: EnumeratorForm, alpha: i64) -> Expect {
    Expect::Params(EnumeratorParams::new(form).with_alpha(alpha))
}

fn table1() -> Vec<RowSpec> {
    use SelfDualType::*;
    let mut ext7 = RowSpec::new(1, "ext QR(7)", "qr(7,extended)", vec![r(8, 4, 6), bin(24, 12, 8), Expect::SelfDual(II), Expect::Extremal]);
    ext7.known_mismatch = vec!["R"];
    vec![
        RowSpec::new(1, "QR'(7)", "qr(7,q1p)", vec![r(7, 3, 8), bin(21, 9, 8)]),
        RowSpec::new(1, "QR(7)", "qr(7,q1)", vec![r(7, 4, 5), bin(21, 12, 5)]),
        ext7,
        RowSpec::new(1, "SQR(7)", "qr(7,sqr)", vec![bin(18, 9, 4), Expect::SelfDual(I)]),
        RowSpec::new(1, "BSQR(7)", "bsqr(7)", vec![bin(22, 11, 6), Expect::SelfDual(I), Expect::Extremal]),
        RowSpec::new(1, "QR'(23)", "qr(23,q1p)", vec![r(23, 11, 12), bin(69, 33, 12)]),
        RowSpec::new(1, "QR(23)", "qr(23,q1)", vec![r(23, 12, 11), bin(69, 36, 11)]),
        RowSpec::new(
            1,
            "ext QR(23)",
            "qr(23,extended)",
            vec![r(24, 12, 12), bin(72, 36, 12), Expect::SelfDual(II), typeii(EnumeratorForm::W72TypeII, -1362)],
        ),
        RowSpec::new(1, "BSQR(23)", "bsqr(23)", vec![bin(70, 35, 12), Expect::SelfDual(I)]),
        RowSpec::new(1, "QR'(31)", "qr(31,q1p)", vec![r(31, 15, 16), bin(93, 45, 16)]),
        RowSpec::new(1, "QR(31)", "qr(31,q1)", vec![r(31, 16, 14), bin(93, 48, 14)]),
        RowSpec::new(
            1,
            "ext QR(31)",
            "qr(31,extended)",
            vec![r(32, 16, 16), bin(96, 48, 16), Expect::SelfDual(II), typeii(EnumeratorForm::W96, 41106)],
        )
        .deep(),
        RowSpec::new(1, "BSQR(31)", "bsqr(31)", vec![bin(94, 47, 14), Expect::SelfDual(I)]),
    ]
}

fn table2() -> Vec<RowSpec> {
    vec![
        RowSpec::new(2, "QR'(17)", "qr(17,q1p)", vec![r(17, 8, 10), bin(51, 24, 10)]),
        RowSpec::new(2, "QR(17)", "qr(17,q1)", vec![r(17, 9, 9), bin(51, 27, 9)]),
        RowSpec::new(2, "ext QR(17)", "qr(17,extended)", vec![r(18, 9, 10), bin(54, 27, 10), Expect::DualOf("qr(17,extended2)".into())]),
        RowSpec::new(2, "QR'(41)", "qr(41,q1p)", vec![r(41, 20, 20), bin(123, 60, 20)]).deep(),
        RowSpec::new(2, "QR(41)", "qr(41,q1)", vec![r(41, 21, 18), bin(123, 63, 18)]).deep(),
        RowSpec::new(2, "ext QR(41)", "qr(41,extended)", vec![r(42, 21, 20), bin(126, 63, 20), Expect::DualOf("qr(41,extended2)".into())])
            .deep(),
    ]
}

fn table3() -> Vec<RowSpec> {
    let sd = || Expect::SelfDual(SelfDualType::I);
    vec![
        RowSpec::new(3, "C3(0,u^2,1+u^2)", "C3(0,u^2,1+u^2)", vec![r(6, 3, 4), bin(18, 9, 4), sd()]),
        RowSpec::new(3, "C3(u+u^2,1+u,u)", "C3(u+u^2,1+u,u)", vec![r(6, 3, 4), bin(18, 9, 4), sd()]),
        RowSpec::new(3, "C11(0,u^2,1+u^2)", "C11(0,u^2,1+u^2)", vec![r(22, 11, 12), bin(66, 33, 12), sd(), Expect::Report(12)]),
        RowSpec::new(3, "C11(u+u^2,1+u,u)", "C11(u+u^2,1+u,u)", vec![r(22, 11, 12), bin(66, 33, 12), sd(), Expect::Report(12)]),
        RowSpec::new(3, "C19(0,u^2,1+u^2)", "C19(0,u^2,1+u^2)", vec![r(38, 19, 16), bin(114, 57, 16)]).deep(),
        RowSpec::new(3, "C19(u+u^2,1+u,u)", "C19(u+u^2,1+u,u)", vec![r(38, 19, 16), bin(114, 57, 16)]).deep(),
    ]
}

fn table4() -> Vec<RowSpec> {
    use SelfDualType::*;
    vec![
        RowSpec::new(
            4,
            "B11(1,u^2,1+u^2,0,1,1)",
            "B11(1,u^2,1+u^2,0,1,1)",
            vec![bin(72, 36, 12), Expect::SelfDual(II), typeii(EnumeratorForm::W72TypeII, -3600)],
        ),
        RowSpec::new(
            4,
            "B11(u^2,1,1+u^2,0,1,1)",
            "B11(u^2,1,1+u^2,0,1,1)",
            vec![bin(72, 36, 12), Expect::SelfDual(II), typeii(EnumeratorForm::W72TypeII, -1356)],
        ),
        RowSpec::new(4, "B11(u^2,1,1+u,u+u^2,1,1)", "B11(u^2,1,1+u,u+u^2,1,1)", vec![bin(72, 36, 12), Expect::SelfDual(I), w72_2(11, 859)]),
        RowSpec::new(4, "B19(1,u^2,1+u^2,0,1,1)", "B19(1,u^2,1+u^2,0,1,1)", vec![bin(120, 60, 16)]).deep(),
        RowSpec::new(4, "B19(1,u^2,1+u,u+u^2,1,1)", "B19(1,u^2,1+u,u+u^2,1,1)", vec![bin(120, 60, 14)]).deep(),
    ]
}

const T5_BASE: &str = "C11(0,u^2,1+u^2)";
const T6_BASE: &str = "C11(u+u^2,1+u,u)";

/// (X, c, gamma, beta)
const T5: [(&str, &str, i64, i64); 10] = [
    ("1+u^2,u,u,u,1+u^2,u,0,1+u^2,u,1+u^2,u^2", "1", 5, 269),
    ("u+u^2,0,u,1+u,u+u^2,1,u^2,1+u+u^2,u,1+u^2,u", "1", 5, 273),
    ("u,1+u+u^2,u^2,u+u^2,1+u,u^2,1+u^2,u+u^2,0,1,u^2", "1", 5, 235),
    ("1,1+u+u^2,1+u,0,u,u^2,u,0,u,u+u^2,1+u", "w", 5, 255),
    ("u^2,1+u^2,u^2,u+u^2,u,u,1+u,1+u,1+u^2,u^2,u", "w", 4, 263),
    ("0,1,1,u^2,u,1+u+u^2,u+u^2,1+u^2,u,1+u^2,1+u^2", "w", 3, 250),
    ("u^2,0,1,u+u^2,0,1,1+u^2,1+u^2,1+u,1,0", "1", 3, 258),
    ("1+u^2,1,0,u+u^2,u,0,1+u+u^2,1+u,u^2,u^2,u", "w", 2, 279),
    ("0,u,0,1+u^2,1,1+u^2,1+u^2,u,1+u+u^2,1,u", "1", 1, 256),
    ("u,u^2,u,1,1+u^2,1,u+u^2,0,1,1+u,1+u^2", "1", 0, 258),
];

const T6: [(&str, &str, i64, i64); 10] = [
    ("1+u,u^2,1+u^2,u+u^2,u^2,u^2,u^2,u,u,1+u^2,1+u", "w", 4, 231),
    ("u^2,u^2,u,u^2,u^2,1+u^2,1+u,1+u,u,1+u,0", "w", 4, 249),
    ("1+u,1+u,1+u+u^2,1,0,0,u,1+u,u^2,u^2,1", "w", 3, 196),
    // one of two adjacent u^2 entries dropped from the printed 12-entry vector
    ("u^2,u^2,1+u^2,1+u^2,1+u^2,u^2,1+u^2,0,u,u,u", "w", 3, 215),
    ("0,u^2,1+u,1+u+u^2,1+u+u^2,1,0,1+u^2,0,u,1", "1", 2, 241),
    ("u,1+u,1+u,1,u^2,1+u^2,0,1,1+u^2,1,1+u+u^2", "1", 2, 244),
    ("u+u^2,1,u+u^2,1+u,u,u^2,0,u+u^2,0,1+u+u^2,1+u", "w", 2, 233),
    ("1+u,0,0,1,1+u,0,1+u+u^2,1,u,1+u+u^2,u^2", "w", 1, 211),
    ("1,1,u^2,1+u,u,1+u^2,1,1+u^2,0,u^2,0", "1", 1, 232),
    ("u,u,1,1+u,1,1+u^2,1+u+u^2,0,0,1+u+u^2,u+u^2", "w", 0, 211),
];

/// (label, X, gamma, beta)
const T7: [(&str, &str, i64, i64); 26] = [
    ("C1", "1366E7855836D5F97", 0, 111),
    ("C2", "152C8FDA100E589E4", 0, 113),
    ("C3", "307C91A5CC0BEFB39", 0, 115),
    ("C4", "2FBF977F66C73C095", 0, 117),
    ("C5", "2DBBF3D2D8C219910", 0, 119),
    ("C6", "252951E0B1E5AAC21", 0, 121),
    ("C7", "EDA2BBD6B53937A4", 0, 123),
    ("C8", "4528892715B1C268", 0, 125),
    ("C9", "D989EFC395464C6F", 0, 126),
    ("C10", "42E4E15D93AE3075", 0, 127),
    ("C11", "DC2E97A7B77B9378", 0, 128),
    ("C12", "20C589DC55E710589", 0, 129),
    ("C13", "22C125C827448086F", 0, 131),
    ("C14", "231CC8E70F78AE4F0", 0, 133),
    ("C15", "32BC23AA33E36B123", 0, 134),
    ("C16", "26745142F8B420C86", 0, 135),
    ("C17", "38C21CF4AF47A41E3", 0, 139),
    ("C18", "384F6537649B8B0AA", 1, 118),
    ("C19", "6353300D871453E1", 1, 126),
    ("C20", "CE66C92ABB5EE18E", 1, 129),
    ("C21", "739A837C7816DDCE", 1, 132),
    ("C22", "190A5C0A051314F9B", 1, 133),
    ("C23", "25F97FDA3C7DD9F16", 1, 138),
    ("C24", "3DB29DEB3DFDA30C1", 1, 140),
    ("C25", "3BFBD24B7741E669F", 1, 142),
    ("C26", "18DAFB91A9516B39", 1, 146),
];

const T8: [(&str, &str, i64, i64); 6] = [
    ("C27", "E2A99BBA87FEF283", 0, 66),
    ("C28", "289CF22D186686C0E", 1, 77),
    ("C29", "14AD41A72715F3696", 1, 79),
    ("C30", "2C8C98C94932D7341", 1, 81),
    ("C31", "3D07A44D2980F9E8C", 2, 82),
    ("C32", "3E26AD3A8670694F8", 2, 84),
];

/// Rows whose printed `(gamma, beta)` does not reproduce from the printed `X`
/// and `c`: the code is computed as (5, 285) and (2, 243) instead.
const PARAMS_NOT_REPRODUCED: [(u8, usize); 2] = [(5, 3), (6, 6)];

fn idext_rows(table: u8, base: &str, rows: &[(&str, &str, i64, i64)]) -> Vec<RowSpec> {
    rows.iter()
        .enumerate()
        .map(|(i, (x, c, g, b))| {
            let desc = format!("idext({base}, X=({x}), c={c})");
            let expect = vec![bin(72, 36, 12), Expect::SelfDual(SelfDualType::I), w72_1(*g, *b)];
            let mut row = RowSpec::new(table, &format!("row {}", i + 1), &desc, expect);
            if PARAMS_NOT_REPRODUCED.contains(&(table, i + 1)) {
                row.known_mismatch = vec!["params"];
            }
            row
        })
        .collect()
}

fn ext_rows(table: u8, base: &str, rows: &[(&str, &str, i64, i64)]) -> Vec<RowSpec> {
    rows.iter()
        .map(|(label, x, g, b)| {
            let desc = format!("ext(gray({base}), X={x}, c=1)");
            let expect = vec![bin(68, 34, 12), Expect::SelfDual(SelfDualType::I), w68_2(*g, *b)];
            RowSpec::new(table, label, &desc, expect)
        })
        .collect()
}

/// Rows of one table.
pub fn table_rows(table: u8) -> Result<Vec<RowSpec>> {
    Ok(match table {
        1 => table1(),
        2 => table2(),
        3 => table3(),
        4 => table4(),
        5 => idext_rows(5, T5_BASE, &T5),
        6 => idext_rows(6, T6_BASE, &T6),
        7 => ext_rows(7, T5_BASE, &T7),
        8 => ext_rows(8, T6_BASE, &T8),
        other => return Err(Error::Parse(format!("no table {other} (expected 1..8)"))),
    })
}

pub fn all_rows() -> Vec<RowSpec> {
    TABLES.flat_map(|t| table_rows(t).expect("known table")).collect()
}

/// The idext example of the text: `C11(0,u^2,1+u^2)` with a fixed `X` gives a
/// Type I code in `W72_2`.
pub fn worked_example() -> RowSpec {
    RowSpec::new(
        5,
        "example",
        "idext(C11(0,u^2,1+u^2), X=(u^2,0,u^2,0,u^2,u^2,0,0,u+u^2,u,u), c=1)",
        vec![bin(72, 36, 12), Expect::SelfDual(SelfDualType::I), w72_2(0, 335)],
    )
}

fn cell(spec: &RowSpec, e: &Expect, found: String, ok: bool) -> Cell {
    let name = e.name();
    let status = match (ok, spec.known_mismatch.contains(&name.as_str())) {
        (true, _) => Status::Pass,
        (false, true) => Status::Known,
        (false, false) => Status::Fail,
    };
    Cell { check: name, expected: e.expected(), found, status }
}

fn check_row(spec: &RowSpec, code: &Code, b: &BitMatrix, a: &Analysis) -> Result<Vec<Cell>> {
    let mut cells = Vec::new();
    for e in &spec.expect {
        let c = match e {
            Expect::R { n, log8, d } => match code {
                Code::R(m) => {
                    let bits = m.log2_size();
                    let found = if bits % 3 == 0 { format!("({}, 8^{}, {})", m.ncols(), bits / 3, a.d) } else {
                        format!("({}, 2^{}, {})", m.ncols(), bits, a.d)
                    };
                    cell(spec, e, found, m.ncols() == *n && bits == 3 * log8 && a.d == *d)
                }
                Code::Binary(_) => cell(spec, e, "binary code".into(), false),
            },
            Expect::Binary { n, k, d } => {
                cell(spec, e, format!("[{},{},{}]", a.n, a.k, a.d), (a.n, a.k, a.d) == (*n, *k, *d))
            }
            Expect::SelfDual(t) => {
                let found = a.self_dual.map_or("not self-dual".into(), |t| t.to_string());
                cell(spec, e, found, a.self_dual == Some(*t))
            }
            Expect::Extremal => {
                let ok = a.self_dual.is_some_and(|t| weights::is_extremal(a.n, a.d, t));
                let bound = a.self_dual.map(|t| weights::extremal_bound(a.n, t));
                cell(spec, e, format!("d={} bound={}", a.d, bound.map_or("-".into(), |b| b.to_string())), ok)
            }
            Expect::Params(p) => {
                // the form named by the row, not the first that fits
                let found = a.profile.as_ref().map(|pr| weights::extract_params(pr, p.form));
                match found {
                    Some(Ok(f)) => cell(spec, e, f.to_string(), f == *p),
                    Some(Err(err)) => cell(spec, e, err.to_string(), false),
                    None => cell(spec, e, "no profile".into(), false),
                }
            }
            Expect::DualOf(other) => {
                let o = other.parse::<Construction>()?.build()?.binary();
                let ok = b.dual().same_row_space(&o);
                cell(spec, e, if ok { format!("dual of {other}") } else { "differs".into() }, ok)
            }
            Expect::Report(w) => {
                let v = a.profile.as_ref().and_then(|p| p.coefficient(*w));
                cell(spec, e, v.map_or("not covered".into(), |v| v.to_string()), v.is_some())
            }
        };
        cells.push(c);
    }
    Ok(cells)
}

fn run_row(spec: &RowSpec, exec: Exec) -> RowReport {
    let start = Instant::now();
    let mut report = RowReport {
        table: spec.table,
        label: spec.label.clone(),
        construction: spec.construction.clone(),
        cells: vec![],
        status: Status::Fail,
        seconds: 0.0,
        error: None,
        analysis: None,
        id: None,
    };
    let result = spec.construction.parse::<Construction>().and_then(|c| c.build()).and_then(|code| {
        let b = code.binary();
        let a = analyze_with(&b, exec, spec.needs_low_weights())?;
        let cells = check_row(spec, &code, &b, &a)?;
        Ok((cells, a, store::canonical_id(&b)))
    });
    match result {
        Ok((cells, a, id)) => {
            report.status = cells.iter().map(|c| c.status).max().unwrap_or(Status::Pass);
            report.cells = cells;
            report.analysis = Some(a);
            report.id = Some(id);
        }
        Err(e) => report.error = Some(e.to_string()),
    }
    report.seconds = start.elapsed().as_secs_f64();
    report
}

/// Rebuilds and checks `rows`; deep rows are skipped unless `deep`.
pub fn verify_rows(rows: &[RowSpec], deep: bool, exec: Exec) -> Vec<RowReport> {
    exec.map_collect(rows.len(), |i| {
        let spec = &rows[i];
        if spec.deep && !deep {
            return RowReport {
                table: spec.table,
                label: spec.label.clone(),
                construction: spec.construction.clone(),
                cells: vec![],
                status: Status::Skipped,
                seconds: 0.0,
                error: None,
                analysis: None,
                id: None,
            };
        }
        log::debug!("table {} {}: {}", spec.table, spec.label, spec.construction);
        run_row(spec, exec)
    })
}

/// Store records for verified rows that carry enumerator parameters.
pub fn records_from_reports(reports: &[RowReport]) -> Vec<CodeRecord> {
    reports
        .iter()
        .filter(|r| r.status == Status::Pass)
        .filter_map(|r| {
            let a = r.analysis.as_ref()?;
            Some(CodeRecord {
                id: r.id.clone()?,
                construction: r.construction.clone(),
                label: Some(r.label.clone()),
                n: a.n,
                k: a.k,
                d: a.d,
                self_dual: a.self_dual,
                params: a.params.clone()?,
                seed: None,
                trial: None,
                equivalence: store::EQUIVALENCE_UNCHECKED.into(),
                created_unix: store::now_unix(),
            })
        })
        .collect()
}
