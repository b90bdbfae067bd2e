//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any
//! failure. Runs without the libtest harness so the lines always print.

mod common;

use std::time::{Duration, Instant};

use cutpoint_core::convert::{gfa_to_pfa, qfa_to_pfa};
use cutpoint_core::linalg::Matrix;
use cutpoint_core::linearize::qfa_to_gfa;
use cutpoint_core::models::{embed::stochastic_channel, Automaton};
use cutpoint_core::random::{random_channel, random_gqfa};
use cutpoint_core::scalar::{int, ratio, BOUNDARY_TOL};
use cutpoint_core::verify::{check_agreement_on, halfspace_shatter, values_for};
use cutpoint_core::witness::{
    all_subsets, build_witness, prepare_test_word, random_subsets, test_channel, verify_shattering, SignVector,
};
use cutpoint_core::{Rational, Scalar};
use num_traits::{One, Signed, Zero};

use common::{gfa_corpus, rng, simplex_point, vertex};

const LINEARIZE_TOL: f64 = 1e-9;
const MARGIN_TOL: f64 = 1e-9;
const KRAUS_TOL: f64 = 1e-12;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn criterion_1() -> Outcome {
    let mut r = rng(101);
    let mut worst = 0.0f64;
    let mut words = 0;
    for i in 0..20 {
        let n = 2 + i % 2;
        let q = random_gqfa(&mut r, n, 2);
        let g = match qfa_to_gfa(&q) {
            Ok(g) => g,
            Err(e) => return outcome(false, format!("linearization failed: {e}")),
        };
        if g.states() != n * n {
            return outcome(false, format!("GFA has {} states for n={n}", g.states()));
        }
        let fq = values_for(&q, 5);
        let fg = values_for(&g, 5);
        for ((_, a), (_, b)) in fq.iter().zip(&fg) {
            worst = worst.max((a - b).abs());
            words += 1;
        }
    }
    outcome(
        worst < LINEARIZE_TOL,
        format!("20 GQFAs, {words} words, max |f_G - f_Q| = {worst:.2e} (tol {LINEARIZE_TOL:.0e}), n^2 states"),
    )
}

fn criterion_2() -> Outcome {
    let mut violations = 0;
    let mut words = 0;
    let mut degenerate = 0;
    for (i, g) in gfa_corpus().iter().enumerate() {
        let (p, trace) = match gfa_to_pfa(g) {
            Ok(x) => x,
            Err(e) => return outcome(false, format!("machine {i}: {e}")),
        };
        let expected = if trace.degenerate.is_some() {
            degenerate += 1;
            2
        } else {
            2 * g.states() + 6
        };
        if p.states() != expected {
            return outcome(false, format!("machine {i}: {} states, expected {expected}", p.states()));
        }
        let half = ratio(1, 2);
        for ((_, fg), (_, fp)) in values_for(g, 6).iter().zip(&values_for(&p, 6)) {
            words += 1;
            if (fg > &g.cutpoint) != (fp > &half) {
                violations += 1;
            }
        }
    }
    outcome(
        violations == 0,
        format!("50 GFAs ({degenerate} degenerate), {words} words, {violations} sign violations (exact)"),
    )
}

fn criterion_3() -> Outcome {
    let mut mismatches = 0;
    let mut checked = 0;
    for g in &gfa_corpus() {
        let (p, trace) = gfa_to_pfa(g).expect("criterion 2 covers failures");
        if trace.degenerate.is_some() {
            continue;
        }
        for ((w, fg), (_, fp)) in values_for(g, 6).iter().zip(&values_for(&p, 6)) {
            checked += 1;
            let predicted = trace.predicted_acceptance(&(fg - &g.cutpoint), w.len()).unwrap();
            if *fp != predicted {
                mismatches += 1;
            }
        }
    }
    let worked = cutpoint_core::models::gfa_from_rows(&["a"], vec![int(1)], vec![vec![vec![int(-1)]]], vec![int(1)], int(0))
        .unwrap();
    let (p, _) = gfa_to_pfa(&worked).unwrap();
    let a = p.evaluate(&[0]).unwrap();
    let aa = p.evaluate(&[0, 0]).unwrap();
    let worked_ok = a == ratio(29, 60) && aa == ratio(901, 1800);
    outcome(
        mismatches == 0 && worked_ok,
        format!("{checked} words, {mismatches} identity mismatches; worked example f(a) = {a}, f(aa) = {aa}"),
    )
}

fn criterion_4() -> Outcome {
    let w2 = build_witness(2).unwrap();
    let report = match verify_shattering(&w2, &all_subsets(3)) {
        Ok(r) => r,
        Err(e) => return outcome(false, format!("n=2: {e}")),
    };
    let margin_err = report
        .checks
        .iter()
        .map(|c| (c.margin - 1.0 / 24.0).abs())
        .fold(0.0, f64::max);
    let ok2 = report.total() == 24 && report.all_passed() && margin_err < MARGIN_TOL;

    let w3 = build_witness(3).unwrap();
    let subsets = random_subsets(&mut rng(104), 8, 100);
    let report3 = match verify_shattering(&w3, &subsets) {
        Ok(r) => r,
        Err(e) => return outcome(false, format!("n=3: {e}")),
    };
    outcome(
        ok2 && report3.all_passed(),
        format!(
            "n=2: {}/{} decisions, max |margin - 1/24| = {margin_err:.1e}; n=3: {}/{} decisions over 100 subsets, margin {:.6}",
            report.passed(),
            report.total(),
            report3.passed(),
            report3.total(),
            report3.min_margin()
        ),
    )
}

fn criterion_5() -> Outcome {
    let w = build_witness(2).unwrap();
    let q = w.gqfa_all_tests().unwrap();
    let (p, _) = match qfa_to_pfa(&q) {
        Ok(x) => x,
        Err(e) => return outcome(false, format!("pipeline failed: {e}")),
    };
    let words: Vec<_> = (0..8u64)
        .flat_map(|m| {
            let s = SignVector::from_mask(3, m);
            (1..=3).map(move |k| (k, s.clone()))
        })
        .map(|(k, s)| prepare_test_word(&q, k, &s).unwrap())
        .collect();
    let report = check_agreement_on(&q, &p, &words, BOUNDARY_TOL).unwrap();
    outcome(
        p.states() == 14 && report.words_checked == 24 && report.clean(),
        format!(
            "{} PFA states, {} words, {} disagreements, {} boundary flags",
            p.states(),
            report.words_checked,
            report.disagreements.len(),
            report.boundary_flags.len()
        ),
    )
}

fn criterion_6() -> Outcome {
    let mut r = rng(106);
    let mut tested = 0;
    let mut wrongly_shattered = 0;
    let mut vertices_ok = true;
    let mus = [int(0), ratio(1, 2)];
    for m in 2..=4 {
        let verts: Vec<_> = (0..m).map(|i| vertex(m, i)).collect();
        for mu in &mus {
            vertices_ok &= halfspace_shatter(&verts, mu).unwrap().shattered();
        }
        let mut sets = Vec::new();
        let barycenter = vec![ratio(1, m as i64); m];
        sets.push(verts.iter().cloned().chain([barycenter]).collect::<Vec<_>>());
        let mut edge = vec![Rational::zero(); m];
        edge[0] = ratio(1, 3);
        edge[1] = ratio(2, 3);
        sets.push(verts.iter().cloned().chain([edge]).collect());
        for _ in 0..20 {
            sets.push((0..=m).map(|_| simplex_point(&mut r, m)).collect());
        }
        for set in &sets {
            for mu in &mus {
                tested += 1;
                if halfspace_shatter(set, mu).unwrap().shattered() {
                    wrongly_shattered += 1;
                }
            }
        }
    }
    outcome(
        wrongly_shattered == 0 && vertices_ok,
        format!("{tested} (set, mu) instances of m+1 points, {wrongly_shattered} shattered; vertices shattered: {vertices_ok}"),
    )
}

fn criterion_7() -> Outcome {
    let mut r = rng(107);
    let mut channels = Vec::new();
    for n in 2..=4 {
        for kraus in 1..=3 {
            channels.push(random_channel(&mut r, n, kraus));
        }
    }
    for n in 2..=3 {
        let w = build_witness(n).unwrap();
        channels.extend(w.prepare_channels().iter().cloned());
        let d = w.params().d();
        for _ in 0..16 {
            channels.push(test_channel(w.params(), &SignVector::random(&mut r, d)).unwrap().channel);
        }
    }
    let mut matrices = 0;
    let mut bad_matrices = 0;
    for g in &gfa_corpus() {
        let (p, trace) = gfa_to_pfa(g).unwrap();
        for m in &trace.stochastic {
            matrices += 1;
            let positive = m.iter().all(Signed::is_positive);
            if !positive || !m.row_sums().iter().all(One::is_one) {
                bad_matrices += 1;
            }
        }
        for m in p.transitions().iter().chain([p.end_marker()]) {
            matrices += 1;
            if !m.row_sums().iter().all(One::is_one) || m.iter().any(Signed::is_negative) {
                bad_matrices += 1;
            }
            let float: Matrix<f64> = m.map(|x| Scalar::to_f64(x));
            if m.rows() <= 16 {
                channels.push(stochastic_channel(&float).unwrap());
            }
        }
    }
    let worst = channels.iter().map(|c| c.completeness_residual()).fold(0.0, f64::max);
    let bad_channels = channels.iter().filter(|c| c.completeness_residual() >= KRAUS_TOL).count();
    outcome(
        bad_channels == 0 && bad_matrices == 0,
        format!(
            "{} channels, worst completeness residual {worst:.1e} (tol {KRAUS_TOL:.0e}); {matrices} stochastic matrices, {bad_matrices} invalid",
            channels.len()
        ),
    )
}

fn main() {
    type Check = fn() -> Outcome;
    let criteria: [(&str, Check, Duration); 7] = [
        ("linearization identity", criterion_1, Duration::from_secs(10)),
        ("conversion sign preservation", criterion_2, Duration::from_secs(60)),
        ("quantitative conversion identity", criterion_3, Duration::from_secs(60)),
        ("witness shattering", criterion_4, Duration::from_secs(10)),
        ("end-to-end pipeline", criterion_5, Duration::from_secs(5)),
        ("simplex shattering oracle", criterion_6, Duration::from_secs(10)),
        ("validity suite", criterion_7, Duration::from_secs(60)),
    ];
    let mut failed = 0;
    for (i, (name, check, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let out = check();
        let elapsed = start.elapsed();
        let pass = out.pass && elapsed <= *limit;
        if !pass {
            failed += 1;
        }
        println!(
            "criterion {} [{}] {name}: {} ({:.2} s, limit {} s)",
            i + 1,
            if pass { "PASS" } else { "FAIL" },
            out.detail,
            elapsed.as_secs_f64(),
            limit.as_secs()
        );
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
