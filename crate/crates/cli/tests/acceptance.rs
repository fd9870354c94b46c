//! Acceptance suite: one pass/fail line per criterion.
//!
//! The process exits with status 0 after reporting, so that known findings do
//! not break the workspace build. Set `C3Q_ACCEPTANCE_STRICT=1` to exit with
//! status 1 when any criterion fails.

use std::path::Path;
use std::process::Command;
use std::sync::Arc;
use std::time::Instant;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use c3_qchar::cartan::Weight;
use c3_qchar::fm::{
    check_truncation_certificate, fm_qcharacter, table1_certificate, tkl0_certificate, truncate, Table1Row,
};
use c3_qchar::qchar::sl2::{sl2_kr_character, sl2_string_decompose, Sl2Monomial};
use c3_qchar::restriction::{
    conjecture_prediction, decompose, decomposition_dimension, h_lambda_character, restrict,
};
use c3_qchar::tsystem::verify::dominant_part_of;
use c3_qchar::tsystem::{
    case_grid, dominant_chain, highest_monomial_balance, relation_instance, special_family_labels, verify_relation,
    CharacterSource, Family, FmSource, ModuleLabel, RecursionSource, System, VerifyOptions, VerifyReport, CASE_COUNT,
};
use c3_qchar::{LMonomial, QCharacter};
use c3q_cli::{system_instances, EXIT_MISMATCH};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn fixture(node: u8) -> QCharacter {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join(format!("tests/fixtures/fundamental_{node}.txt"));
    let text = std::fs::read_to_string(path).expect("fixture file");
    QCharacter::from_terms(text.lines().filter(|l| !l.trim().is_empty()).map(|l| (l.parse::<LMonomial>().unwrap(), 1)))
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut bad = Vec::new();
    for node in 1..=3u8 {
        let x = fm_qcharacter(&LMonomial::y(node, 0)).unwrap();
        if x != fixture(node) {
            bad.push(node);
        }
    }
    let t = start.elapsed().as_secs_f64();
    outcome(bad.is_empty() && t < 1.0, format!("mismatched nodes {bad:?}, {t:.4} s"))
}

fn criterion_2() -> Outcome {
    let sizes: Vec<usize> = (0..=10).map(|k| sl2_kr_character(k, 0).len()).collect();
    let kr_ok = sizes.iter().enumerate().all(|(k, &n)| n == k + 1);
    let mut rng = StdRng::seed_from_u64(2);
    let mut round_trips = 0;
    for _ in 0..500 {
        let n = rng.gen_range(1..=8);
        let m = Sl2Monomial::from_pairs((0..n).map(|_| (rng.gen_range(-8..=8), 1)));
        let strings = sl2_string_decompose(&m).unwrap();
        let back = strings.iter().fold(Sl2Monomial::one(), |acc, st| {
            acc.mul(&Sl2Monomial::from_pairs(st.points(1).into_iter().map(|s| (s, 1))))
        });
        if back == m {
            round_trips += 1;
        }
    }
    outcome(kr_ok && round_trips == 500, format!("KR sizes {sizes:?}, {round_trips}/500 round trips"))
}

fn verify_all(src: &FmSource, systems: &[System]) -> Vec<VerifyReport> {
    let opts = VerifyOptions::default();
    let mut out = Vec::new();
    for &sys in systems {
        for r in system_instances(sys, 2, &[0, 1], false).unwrap() {
            out.push(verify_relation(&r, src, &opts).unwrap());
        }
    }
    out
}

fn summary(reports: &[VerifyReport]) -> (usize, Vec<String>) {
    let failed: Vec<String> = reports.iter().filter(|r| !r.passed()).map(|r| r.instance.to_string()).collect();
    (reports.len() - failed.len(), failed)
}

fn criterion_3(src: &FmSource) -> (Outcome, Vec<VerifyReport>) {
    let start = Instant::now();
    let direct = verify_all(src, &[System::Usual, System::I, System::III]);
    let mirrored = verify_all(src, &[System::II, System::IV]);
    let (a, fa) = summary(&direct);
    let (b, fb) = summary(&mirrored);
    let pass = fa.is_empty() && fb.is_empty();
    let detail = format!(
        "usual/I/III {a}/{} pass, II/IV {b}/{} pass, {:.0} s, failures {:?}",
        direct.len(),
        mirrored.len(),
        start.elapsed().as_secs_f64(),
        fa.iter().chain(&fb).collect::<Vec<_>>()
    );
    (outcome(pass, detail), direct)
}

fn criterion_4(src: &FmSource, reports: &[VerifyReport]) -> Outcome {
    let mut checked = 0;
    let mut bad = Vec::new();
    for case in 1..=CASE_COUNT {
        for p in case_grid(case, 2) {
            let c = dominant_chain(case, &p, 0, false).unwrap();
            let a = src.character(&c.factors[0]).unwrap();
            let b = src.character(&c.factors[1]).unwrap();
            let got = dominant_part_of(&[&a, &b]).sorted_terms();
            let ok = got.len() == c.monomials.len() && got.iter().all(|(m, k)| *k == 1 && c.monomials.contains(m));
            checked += 1;
            if !ok {
                bad.push(c.to_string());
            }
        }
    }
    let not_special: Vec<String> = reports
        .iter()
        .filter(|r| matches!(r.instance.id.system, System::I | System::III) && r.sources_special == Some(false))
        .map(|r| r.instance.to_string())
        .collect();
    outcome(
        bad.is_empty() && not_special.is_empty(),
        format!("{checked} chains, mismatched {bad:?}, non-special source products {not_special:?}"),
    )
}

fn criterion_5(src: &FmSource) -> (Outcome, Vec<(ModuleLabel, Arc<QCharacter>)>) {
    let labels = special_family_labels(3);
    let mut chars = Vec::new();
    let mut bad = Vec::new();
    for l in &labels {
        let x = src.character(l).unwrap();
        let special = x.is_special().unwrap();
        let anti = src.character(&l.bar()).unwrap().is_antispecial().unwrap();
        if !special || !anti {
            bad.push(format!("{l} special={special} barred anti-special={anti}"));
        }
        chars.push((l.clone(), x));
    }
    (outcome(bad.is_empty(), format!("{} labels, failures {bad:?}", labels.len())), chars)
}

fn criterion_6(fm: &FmSource) -> Outcome {
    let start = Instant::now();
    let rec = RecursionSource::default();
    let labels = special_family_labels(2);
    let mut bad = Vec::new();
    for l in &labels {
        match rec.character(l) {
            Ok(x) if *x == *fm.character(l).unwrap() => {}
            Ok(_) => bad.push(format!("{l}: differs")),
            Err(e) => bad.push(format!("{l}: {e}")),
        }
    }
    outcome(
        bad.is_empty(),
        format!("{}/{} labels agree, {:.0} s, failures {bad:?}", labels.len() - bad.len(), labels.len(), start.elapsed().as_secs_f64()),
    )
}

fn table1_grid(row: Table1Row) -> Vec<Vec<i64>> {
    let grid: Vec<Vec<i64>> = if row.arity() == 2 {
        (0..=3).flat_map(|a| (0..=3).map(move |b| vec![a, b])).collect()
    } else {
        (0..=3).map(|a| vec![a]).collect()
    };
    grid.into_iter().filter(|p| row.in_range(p)).collect()
}

fn criterion_7(src: &FmSource) -> Outcome {
    let mut failing_rows = Vec::new();
    let mut failures = 0;
    let mut strict_failures = 0;
    let mut total = 0;
    for row in Table1Row::ALL {
        let mut fails = Vec::new();
        for p in table1_grid(row) {
            total += 1;
            if !check_truncation_certificate(&table1_certificate(row, &p, false).unwrap()).ok() {
                fails.push(p.clone());
            }
            if !check_truncation_certificate(&table1_certificate(row, &p, true).unwrap()).ok() {
                strict_failures += 1;
            }
        }
        failures += fails.len();
        if !fails.is_empty() {
            failing_rows.push(format!("{row} at {fails:?}"));
        }
    }
    // T_{k,l,0}: the printed M and the completed one, against the truncated FM character.
    let mut printed_ok = 0;
    let mut complete_ok = 0;
    let mut sizes = Vec::new();
    let mut cases = 0;
    for k in 1..=3 {
        for l in 0..=3 {
            cases += 1;
            let printed = tkl0_certificate(k, l, false);
            let complete = tkl0_certificate(k, l, true);
            if check_truncation_certificate(&printed).ok() {
                printed_ok += 1;
            }
            let chi = src.character(&ModuleLabel::t(k, l, 0, 0)).unwrap();
            let trunc = truncate(&chi, &complete.m_plus, &complete.u);
            let sum = QCharacter::from_terms(complete.m.iter().map(|m| (m.clone(), 1)));
            if check_truncation_certificate(&complete).ok() && trunc == sum {
                complete_ok += 1;
            }
            sizes.push(trunc.len() as i64 - k);
        }
    }
    let size_k = sizes.iter().all(|&d| d == 0);
    outcome(
        failing_rows.is_empty() && printed_ok == cases && size_k,
        format!(
            "{}/{total} row instances pass (printed bounds: {} pass), failing {failing_rows:?}; \
             T_k_l_0: printed M verified {printed_ok}/{cases}, M with s <= k verified and equal to trunc {complete_ok}/{cases}, \
             |trunc| - k = {sizes:?}",
            total - failures,
            total - strict_failures
        ),
    )
}

fn criterion_8(src: &FmSource, chars: &[(ModuleLabel, Arc<QCharacter>)]) -> Outcome {
    let x = src.character(&ModuleLabel::t(0, 2, 0, 0)).unwrap();
    let d = decompose(&restrict(&x)).unwrap();
    let expect = vec![(Weight::new(0, 2, 0), 1), (Weight::new(2, 0, 0), 1), (Weight::new(0, 0, 0), 1)];
    let mut got = d.clone();
    got.sort();
    let mut exp = expect.clone();
    exp.sort();
    let t020 = got == exp;

    let mut dim_bad = Vec::new();
    for (l, x) in chars {
        let d = decompose(&restrict(x)).unwrap();
        if decomposition_dimension(&d).unwrap() as i64 != x.dimension() {
            dim_bad.push(l.to_string());
        }
    }

    let mut compared = 0;
    let mut differ = Vec::new();
    for a in 0..=3 {
        for b in 0..=3 {
            if a + b == 0 {
                continue;
            }
            for l in [ModuleLabel::t(a, b, 0, 0), ModuleLabel::t(a, 0, b, 0), ModuleLabel::new(Family::Ttilde, &[a, 0, b], 0).unwrap()] {
                let x = src.character(&l).unwrap();
                let d = decompose(&restrict(&x)).unwrap();
                compared += 1;
                if conjecture_prediction(&l) != Some(d) {
                    differ.push(l.to_string());
                }
            }
        }
    }

    let mut h_bad = Vec::new();
    for m1 in 0..=3 {
        for m2 in 0..=3 - m1 {
            let h = h_lambda_character(&Weight::new(m1, m2, 0)).unwrap();
            let x = if m1 + m2 == 0 { Arc::new(QCharacter::one()) } else { src.character(&ModuleLabel::t(0, m2, m1, 0)).unwrap() };
            if h != restrict(&x) {
                h_bad.push((m1, m2));
            }
        }
    }
    outcome(
        t020 && dim_bad.is_empty() && differ.is_empty() && h_bad.is_empty(),
        format!(
            "T_0_2_0 -> {d:?}; dimension bookkeeping failures {dim_bad:?} over {} characters; \
             predictions differ for {differ:?} of {compared}; H_lambda mismatches {h_bad:?}",
            chars.len()
        ),
    )
}

fn criterion_9() -> Outcome {
    let id = "I.9".parse().unwrap();
    let printed = relation_instance(id, &[1, 0], 0, true).unwrap();
    let corrected = relation_instance(id, &[1, 0], 0, false).unwrap();
    let printed_fails = !highest_monomial_balance(&printed).ok;
    let corrected_holds = highest_monomial_balance(&corrected).ok;
    let status = Command::new(env!("CARGO_BIN_EXE_c3q"))
        .args(["verify", "I", "--max", "1", "--perturb"])
        .output()
        .expect("run c3q")
        .status
        .code();
    outcome(
        printed_fails && corrected_holds && status == Some(EXIT_MISMATCH),
        format!(
            "printed I.9 at l=1 balanced: {}; corrected balanced: {corrected_holds}; perturbed verify exit code {status:?}",
            !printed_fails
        ),
    )
}

fn main() {
    let mut results: Vec<(usize, Outcome)> = Vec::new();
    let mut report = |n: usize, o: Outcome| {
        println!("criterion {n}: {} ({})", if o.pass { "PASS" } else { "FAIL" }, o.detail);
        results.push((n, o));
    };
    let src = FmSource::default();
    report(1, criterion_1());
    report(2, criterion_2());
    let (c3, reports) = criterion_3(&src);
    report(3, c3);
    report(4, criterion_4(&src, &reports));
    let (c5, chars) = criterion_5(&src);
    report(5, c5);
    report(6, criterion_6(&src));
    report(7, criterion_7(&src));
    report(8, criterion_8(&src, &chars));
    report(9, criterion_9());
    let failed: Vec<usize> = results.iter().filter(|(_, o)| !o.pass).map(|(n, _)| *n).collect();
    println!("acceptance: {}/{} criteria pass; failing {failed:?}", results.len() - failed.len(), results.len());
    if !failed.is_empty() && std::env::var("C3Q_ACCEPTANCE_STRICT").is_ok_and(|v| v == "1") {
        std::process::exit(1);
    }
}
