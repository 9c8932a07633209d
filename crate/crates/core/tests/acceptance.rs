//! One pass/fail line per acceptance criterion. The lines go straight to
//! standard error so they show without `--nocapture`.

use std::io::Write;
use std::time::{Duration, Instant};

use minorbit::chevalley::Form;
use minorbit::quantize::quantization_report;
use minorbit::repbuild::DEFAULT_DIM_CAP;
use minorbit::rootsys::SimpleType;
use minorbit::tables::figure_types;
use minorbit::verify::{
    classical_types, closed_forms_hold, g2_example_quadratic, g2_expected_quadratic, hamiltonians, poisson_types,
    table_types, verify_commutativity, verify_cross_basis, verify_independence, verify_mnumbers, verify_structure,
    verify_tables, Context,
};

const SAMPLES: usize = 100;
const SEED: u64 = 7;

fn ty(s: &str) -> SimpleType {
    s.parse().unwrap()
}

fn report(n: u32, ok: bool, what: &str, detail: String) -> bool {
    let line = format!("criterion {n}: {} {what} ({detail})\n", if ok { "PASS" } else { "FAIL" });
    std::io::stderr().write_all(line.as_bytes()).unwrap();
    ok
}

fn criterion_1() -> bool {
    let start = Instant::now();
    let mut failed = Vec::new();
    for t in figure_types() {
        let r = verify_mnumbers(t, DEFAULT_DIM_CAP).unwrap();
        if !r.passed() || !r.numbers.sandwich_divergence().is_empty() {
            failed.push(t.to_string());
        }
    }
    let elapsed = start.elapsed();
    let ok = failed.is_empty() && elapsed < Duration::from_secs(5);
    report(1, ok, "node labels m_k for all 32 figure types", format!("{:.2?}, failures {failed:?}", elapsed))
}

fn criterion_2() -> bool {
    let start = Instant::now();
    let r = verify_tables(&table_types()).unwrap();
    let elapsed = start.elapsed();
    let ok = r.passed() && r.warnings() == 2 && elapsed < Duration::from_secs(60);
    report(
        2,
        ok,
        "example tables match up to sign gauge",
        format!(
            "{} tables compared, {} warnings, labels only: {:?}, {:.2?}",
            r.comparisons.len(),
            r.warnings(),
            r.labels_only.iter().map(|t| t.to_string()).collect::<Vec<_>>(),
            elapsed
        ),
    )
}

fn criterion_3() -> bool {
    let types = ["A1", "A2", "A3", "A4", "B2", "B3", "B4", "C2", "C3", "C4", "D3", "D4", "F4", "G2"];
    let failed: Vec<&str> = types
        .into_iter()
        .filter(|t| !closed_forms_hold(&Context::new(ty(t), DEFAULT_DIM_CAP).unwrap()).unwrap())
        .collect();
    let g2 = Context::new(ty("G2"), DEFAULT_DIM_CAP).unwrap();
    let example = g2_example_quadratic(&g2).unwrap() == g2_expected_quadratic();
    report(
        3,
        failed.is_empty() && example,
        "linear and quadratic closed forms, G2 example",
        format!("failures {failed:?}, G2 f_(2,2) example {}", if example { "equal" } else { "differs" }),
    )
}

fn criterion_4_5() -> (bool, bool) {
    let start = Instant::now();
    let mut commute_fail = Vec::new();
    let mut indep_fail = Vec::new();
    let mut pairs = 0;
    for t in poisson_types() {
        let ctx = Context::new(t, DEFAULT_DIM_CAP).unwrap();
        let set = hamiltonians(&ctx).unwrap();
        let c = verify_commutativity(&ctx, &set, SAMPLES, SEED);
        pairs += c.pairs.len();
        if !c.passed() || c.pairs.iter().any(|p| p.passing_samples != SAMPLES) {
            commute_fail.push(t.to_string());
        }
        if !verify_independence(&ctx, &set, SAMPLES, SEED).passed() {
            indep_fail.push(t.to_string());
        }
    }
    let elapsed = start.elapsed();
    let c4 = report(
        4,
        commute_fail.is_empty() && elapsed < Duration::from_secs(600),
        "Kirillov-Kostant brackets vanish exactly",
        format!("{pairs} pairs x {SAMPLES} samples, failures {commute_fail:?}, {:.2?}", elapsed),
    );
    let c5 = report(
        5,
        indep_fail.is_empty(),
        "Jacobian rank h - 1 and vanishing above m_k",
        format!("failures {indep_fail:?}"),
    );
    (c4, c5)
}

fn criterion_6() -> bool {
    let mut failed = Vec::new();
    let mut fits = 0;
    for t in classical_types() {
        let ctx = Context::new(t, DEFAULT_DIM_CAP).unwrap();
        let r = verify_cross_basis(&ctx, SAMPLES, SEED).unwrap();
        fits += r.classical.len();
        if !r.passed() || r.classical.iter().any(|f| !f.consistent || f.scalar.is_none()) {
            failed.push(t.to_string());
        }
    }
    report(
        6,
        failed.is_empty(),
        "trace Hamiltonians equal f up to one scalar",
        format!("{fits} (type, block, order) scalars fitted, failures {failed:?}"),
    )
}

fn criterion_7() -> bool {
    let mut types = figure_types();
    types.push(ty("D3"));
    let mut failed = Vec::new();
    let mut two_step = 0;
    for t in types {
        let r = verify_structure(t, 4).unwrap();
        if r.two_step == Some(true) {
            two_step += 1;
        }
        if !r.passed() || (t.rank <= 4 && r.two_step != Some(true)) {
            failed.push(t.to_string());
        }
    }
    report(
        7,
        failed.is_empty(),
        "|n*| = 2h - 3, sum m_k = h - 1, two-step nilpotency",
        format!("two-step checked on {two_step} types, failures {failed:?}"),
    )
}

fn criterion_8() -> bool {
    let types = ["A1", "A2", "A3", "A4", "B2", "B3", "B4", "C2", "C3", "C4", "D4", "F4", "G2"];
    let mut failed = Vec::new();
    let mut reported = 0;
    for t in types {
        let ctx = Context::new(ty(t), DEFAULT_DIM_CAP).unwrap();
        for form in [Form::Killing, Form::Normalized] {
            let r = quantization_report(&ctx.cb, &ctx.reps, form).unwrap();
            reported += r.degree2_commutators.len();
            if !r.passed() {
                failed.push(format!("{t} {form:?}"));
            }
        }
    }
    report(
        8,
        failed.is_empty(),
        "degree-1 quantizations commute with degree 1 and 2",
        format!("failures {failed:?}, {reported} degree-2 commutators reported"),
    )
}

#[test]
fn acceptance() {
    let c1 = criterion_1();
    let c2 = criterion_2();
    let c3 = criterion_3();
    let (c4, c5) = criterion_4_5();
    let c6 = criterion_6();
    let c7 = criterion_7();
    let c8 = criterion_8();
    assert!(c1 && c2 && c3 && c4 && c5 && c6 && c7 && c8, "some acceptance criteria failed");
}
