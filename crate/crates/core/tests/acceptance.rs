//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Integer quantities are compared exactly; the only tolerances are the
//! wall-clock limits stated on each line. Criteria that fail for a documented
//! reason are listed in `KNOWN` and do not fail the run.

use std::process::ExitCode;
use std::time::Instant;

use ringcodes::circulant::{self, CirculantSpec};
use ringcodes::harness::tables::{self, RowReport, Status};
use ringcodes::harness::load_code;
use ringcodes::ring::RingElement;
use ringcodes::weights::{
    self, CountStrategy, EnumMode, EnumOptions, EnumeratorForm, MinDistanceMethod, SelfDualType, WeightProfile,
};
use ringcodes::{BitMatrix, Exec};

/// Criteria expected to print FAIL, with the reason.
const KNOWN: [(u32, &str); 2] = [
    (3, "ext QR(7) R column printed as (8, 8^4, 6); the Lee distance is 8"),
    (7, "Table 5 row 3 and Table 6 row 6 give (5,285) and (2,243), printed (5,235) and (2,244)"),
];

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn binary(desc: &str) -> BitMatrix {
    load_code(desc).unwrap_or_else(|e| panic!("{desc}: {e}")).binary()
}

fn full_walk(b: &BitMatrix) -> WeightProfile {
    let opts = EnumOptions { exec: Exec::Parallel, strategy: CountStrategy::Walk, progress: None };
    weights::weight_enumerator_with(b, EnumMode::Full, &opts).expect("full enumeration")
}

fn low_weights(b: &BitMatrix, upto: usize) -> WeightProfile {
    let opts = EnumOptions { exec: Exec::Parallel, strategy: CountStrategy::Auto, progress: None };
    weights::weight_enumerator_with(b, EnumMode::UpTo(upto), &opts).expect("low-weight count")
}

fn a(p: &WeightProfile, w: usize) -> u64 {
    p.coefficient(w).unwrap_or(0)
}

fn rows_of(table: u8) -> Vec<RowReport> {
    tables::verify_rows(&tables::table_rows(table).unwrap(), false, Exec::Parallel)
}

fn summarize(reports: &[RowReport]) -> (bool, Vec<String>) {
    let mut bad = Vec::new();
    for r in reports.iter().filter(|r| r.status != Status::Skipped) {
        if r.status != Status::Pass {
            let cells: Vec<String> = r
                .cells
                .iter()
                .filter(|c| c.status != Status::Pass)
                .map(|c| format!("{} expected {} found {}", c.check, c.expected, c.found))
                .collect();
            bad.push(format!("{} {}: {}{}", r.table, r.label, cells.join("; "), r.error.clone().unwrap_or_default()));
        }
    }
    (bad.is_empty(), bad)
}

fn c1() -> Outcome {
    let g = binary("qr(7,extended)");
    let start = Instant::now();
    let p = full_walk(&g);
    let secs = start.elapsed().as_secs_f64();
    let params = (g.ncols(), g.rank(), p.min_distance());
    let pass = g.is_self_dual() && g.is_doubly_even() && params == (24, 12, Some(8)) && a(&p, 8) == 759 && secs < 1.0;
    outcome(pass, format!("[{},{},{:?}] A8={} walk {secs:.3}s (limit 1s)", params.0, params.1, params.2, a(&p, 8)))
}

fn c2() -> Outcome {
    let mut parts = Vec::new();
    let mut pass = true;
    for (desc, n, k, d, typ) in [("qr(7,sqr)", 18, 9, 4, SelfDualType::I), ("bsqr(7)", 22, 11, 6, SelfDualType::I)] {
        let start = Instant::now();
        let b = binary(desc);
        let found = weights::min_distance(&b, MinDistanceMethod::Full).unwrap();
        let t = weights::self_dual_type(&b);
        let secs = start.elapsed().as_secs_f64();
        pass &= (b.ncols(), b.rank(), found, t) == (n, k, d, Some(typ)) && secs < 1.0;
        parts.push(format!("{desc} [{},{},{found}] {:?} {secs:.3}s", b.ncols(), b.rank(), t));
    }
    outcome(pass, parts.join(", "))
}

fn c3() -> Outcome {
    let (rows_ok, bad) = summarize(&rows_of(1));
    let g = binary("qr(23,extended)");
    let p = full_walk(&g);
    let a12 = a(&p, 12);
    // W72 Type II: A12 = 4398 + alpha
    let alpha = a12 as i64 - 4398;
    let pass = rows_ok && a12 == 3036 && alpha == -1362 && p.min_distance() == Some(12);
    outcome(pass, format!("ext QR(23) full walk A12={a12} alpha={alpha}; rows off: [{}]", bad.join(" | ")))
}

fn c4() -> Outcome {
    let (ok, bad) = summarize(&rows_of(2));
    let q1 = binary("qr(17,extended)");
    let q2 = binary("qr(17,extended2)");
    let dual = q1.dual().same_row_space(&q2);
    outcome(ok && dual, format!("p=17 rows, dual(ext Q1) = ext Q2: {dual}; p=41 deep only; off: [{}]", bad.join(" | ")))
}

fn c5() -> Outcome {
    let (ok, bad) = summarize(&rows_of(3));
    let mut a12s = Vec::new();
    let mut sd = true;
    for desc in ["C11(0,u^2,1+u^2)", "C11(u+u^2,1+u,u)"] {
        let b = binary(desc);
        sd &= b.is_self_dual() && (b.ncols(), b.rank()) == (66, 33);
        let p = full_walk(&b);
        sd &= p.min_distance() == Some(12);
        a12s.push(a(&p, 12));
    }
    let pass = ok && sd && a12s[0] != a12s[1];
    outcome(pass, format!("C11 A12 by full walk = {a12s:?}; off: [{}]", bad.join(" | ")))
}

fn c6() -> Outcome {
    let (ok, bad) = summarize(&rows_of(4));
    let type2 = |desc: &str| {
        let b = binary(desc);
        let p = low_weights(&b, 16);
        (weights::self_dual_type(&b), a(&p, 12))
    };
    let first = type2("B11(1,u^2,1+u^2,0,1,1)");
    let second = type2("B11(u^2,1,1+u^2,0,1,1)");
    let b3 = binary("B11(u^2,1,1+u,u+u^2,1,1)");
    let p3 = weights::extract_params(&low_weights(&b3, 16), EnumeratorForm::W72_2).unwrap();
    let third = (weights::self_dual_type(&b3), p3.gamma, p3.beta);
    let pass = ok
        && first == (Some(SelfDualType::II), 798)
        && second == (Some(SelfDualType::II), 3042)
        && third == (Some(SelfDualType::I), Some(11), Some(859));
    outcome(pass, format!("A12 {} and {}, (gamma,beta)=({:?},{:?}); off: [{}]", first.1, second.1, third.1, third.2, bad.join(" | ")))
}

fn c7() -> Outcome {
    let mut exact = 0;
    let mut total = 0;
    let mut off = Vec::new();
    for t in 5..=8 {
        for r in rows_of(t) {
            total += 1;
            let shape_ok = r.cells.iter().filter(|c| c.check != "params").all(|c| c.status == Status::Pass);
            let params_ok = r.cells.iter().any(|c| c.check == "params" && c.status == Status::Pass);
            if shape_ok && params_ok && r.error.is_none() {
                exact += 1;
            } else {
                let found = r.cells.iter().find(|c| c.check == "params").map(|c| c.found.clone()).unwrap_or_default();
                off.push(format!("table {} {}: {found}", r.table, r.label));
            }
        }
    }
    outcome(exact == total, format!("{exact}/{total} rows exact; off: [{}]", off.join(" | ")))
}

fn c8() -> Outcome {
    let r = tables::verify_rows(&[tables::worked_example()], false, Exec::Parallel).remove(0);
    let found = r.cells.iter().find(|c| c.check == "params").map(|c| c.found.clone()).unwrap_or_default();
    outcome(r.status == Status::Pass, found)
}

fn c9() -> Outcome {
    let all: Vec<RingElement> = RingElement::all().collect();
    let mut ring_ok = true;
    for &x in &all {
        for &y in &all {
            for &z in &all {
                ring_ok &= x * (y + z) == x * y + x * z && (x * y) * z == x * (y * z);
            }
        }
    }
    let units: Vec<RingElement> = all.iter().copied().filter(|x| x.is_unit()).collect();
    ring_ok &= units == [RingElement::ONE, RingElement::W];
    let images: std::collections::HashSet<_> = all.iter().map(|x| x.gray_symbol()).collect();
    let gray_ok = images.len() == 8;
    let mut qdc_ok = true;
    for p in [3, 5, 7, 11, 13] {
        for &r in &all {
            for &s in &all {
                for &t in &all {
                    qdc_ok &= circulant::qdc_identity_check(&CirculantSpec::new(p, r, s, t)).is_ok();
                }
            }
        }
    }
    let bounds = (
        weights::extremal_bound(72, SelfDualType::II),
        weights::extremal_bound(22, SelfDualType::I),
        weights::extremal_bound(68, SelfDualType::I),
    );
    let pass = ring_ok && gray_ok && qdc_ok && bounds == (16, 6, 12);
    outcome(pass, format!("ring {ring_ok}, gray {gray_ok}, qdc 2560 triples {qdc_ok}, bounds {bounds:?}; full suite in tests/properties.rs"))
}

fn c10() -> Outcome {
    let b = binary("qr(31,extended)");
    let p = low_weights(&b, 20);
    let params = weights::extract_params(&p, EnumeratorForm::W96);
    let alpha = params.as_ref().ok().and_then(|x| x.alpha);
    let pass = p.min_distance() == Some(16) && alpha == Some(41106);
    outcome(pass, format!("[96,48] A16={} A20={} alpha={alpha:?}; |Aut| and novelty out of scope", a(&p, 16), a(&p, 20)))
}

fn main() -> ExitCode {
    let criteria: [(u32, &str, fn() -> Outcome); 10] = [
        (1, "Golay image of extended QR(7)", c1),
        (2, "SQR(7) and BSQR(7)", c2),
        (3, "Table 1 and A12 of extended QR(23)", c3),
        (4, "Table 2, p = 17", c4),
        (5, "Table 3 and C11 A12 values", c5),
        (6, "Table 4, bordered B11 codes", c6),
        (7, "Tables 5-8 extension codes", c7),
        (8, "idext worked example", c8),
        (9, "property spot checks", c9),
        (10, "A16 of the [96,48,16] code", c10),
    ];
    let mut unexpected = 0;
    for (id, name, f) in criteria {
        let start = Instant::now();
        let o = f();
        let secs = start.elapsed().as_secs_f64();
        let known = KNOWN.iter().find(|(k, _)| *k == id).map(|(_, why)| *why);
        let tag = match (o.pass, known) {
            (true, _) => "PASS",
            (false, Some(_)) => "FAIL (known)",
            (false, None) => "FAIL",
        };
        println!("{tag} {id:>2} {name} ({secs:.1}s): {}", o.detail);
        if let (false, Some(why)) = (o.pass, known) {
            println!("      known: {why}");
        }
        if !o.pass && known.is_none() {
            unexpected += 1;
        }
    }
    if unexpected > 0 {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
