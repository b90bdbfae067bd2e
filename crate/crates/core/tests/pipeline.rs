mod common;

use cutpoint_core::convert::{gfa_to_pfa, qfa_to_pfa};
use cutpoint_core::linearize::qfa_to_gfa;
use cutpoint_core::models::{eval_gfa, eval_qfa, pfa_as_qfa, Automaton, Validate};
use cutpoint_core::random::random_gqfa;
use cutpoint_core::scalar::BOUNDARY_TOL;
use cutpoint_core::verify::{check_agreement, check_agreement_on, values_for};
use cutpoint_core::witness::{build_witness, prepare_test_word, witness_acceptance, SignVector};
use cutpoint_core::Scalar;

use common::{gfa_corpus, rng};

fn witness_words(q: &cutpoint_core::models::Gqfa, d: usize) -> Vec<Vec<usize>> {
    (0..1u64 << d)
        .flat_map(|m| {
            let s = SignVector::from_mask(d, m);
            (1..=d).map(move |k| (k, s.clone()))
        })
        .map(|(k, s)| prepare_test_word(q, k, &s).unwrap())
        .collect()
}

#[test]
fn qubit_witness_linearizes_to_four_states() {
    let w = build_witness(2).unwrap();
    let q = w.gqfa_all_tests().unwrap();
    assert!(q.validate().is_valid());
    let g = qfa_to_gfa(&q).unwrap();
    assert_eq!(g.states(), 4);
    let words = witness_words(&q, 3);
    assert_eq!(words.len(), 24);
    for word in &words {
        let a = eval_gfa(&g, word).unwrap();
        let b = eval_qfa(&q, word).unwrap();
        assert!((a - b).abs() < 1e-9);
    }
    let report = check_agreement_on(&q, &g, &words, BOUNDARY_TOL).unwrap();
    assert!(report.clean());
}

#[test]
fn qubit_witness_through_the_full_pipeline() {
    let w = build_witness(2).unwrap();
    let q = w.gqfa_all_tests().unwrap();
    let (p, trace) = qfa_to_pfa(&q).unwrap();
    assert_eq!(p.states(), 2 * 4 + 6);
    assert_eq!(p.alphabet(), &q.alphabet);
    let words = witness_words(&q, 3);
    let report = check_agreement_on(&q, &p, &words, BOUNDARY_TOL).unwrap();
    assert!(report.clean(), "{report:?}");
    // the PFA margin is tiny but positive on every prepare–test word
    for word in &words {
        let gap = Scalar::to_f64(&p.evaluate(word).unwrap()) - 0.5;
        assert!(gap.abs() > 0.0);
        assert!(gap.abs() < 1.0 / 24.0);
    }
    assert!(trace.degenerate.is_none());
}

#[test]
fn acceptance_law_on_random_sign_vectors() {
    let mut r = rng(11);
    for n in 2..=3 {
        let w = build_witness(n).unwrap();
        let d = w.params().d();
        let signs: Vec<_> = (0..200).map(|_| SignVector::random(&mut r, d)).collect();
        let q = w.gqfa(&signs).unwrap();
        let mut worst = 0.0f64;
        for s in &signs {
            for k in 1..=d {
                let v = witness_acceptance(&q, k, s).unwrap();
                worst = worst.max((v - w.predicted(k, s).unwrap()).abs());
                assert!(((v - 0.5).abs() - w.params().margin()).abs() < 1e-9);
            }
        }
        assert!(worst < 1e-9, "n={n}: {worst:e}");
        for ch in q.channels.iter() {
            assert!(ch.completeness_residual() < 1e-12);
        }
    }
}

#[test]
fn random_gqfa_pipeline_agrees_on_short_words() {
    let mut r = rng(12);
    for _ in 0..4 {
        let q = random_gqfa(&mut r, 2, 2);
        let (p, _) = qfa_to_pfa(&q).unwrap();
        assert_eq!(p.states(), 14);
        let report = check_agreement(&q, &p, 3, BOUNDARY_TOL).unwrap();
        assert!(report.agree(), "{report:?}");
    }
}

#[test]
fn converted_pfas_embed_back_into_quantum_machines() {
    for g in gfa_corpus().iter().take(6) {
        let (p, _) = gfa_to_pfa(g).unwrap();
        let q = pfa_as_qfa(&p).unwrap();
        let hash = q.alphabet.index_of("#").unwrap();
        for (w, v) in values_for(&p, 3) {
            let mut marked = w.clone();
            marked.push(hash);
            let fq = q.evaluate(&marked).unwrap();
            assert!((fq - Scalar::to_f64(&v)).abs() < 1e-12);
        }
    }
}
