use std::path::PathBuf;

use drgt_core::data::CORPUS;
use drgt_core::group::{closure_enumerate, ProductReplacement, SmallGroup};
use drgt_core::perm::{Perm, PermGroupFile};
use drgt_core::pipeline;
use drgt_core::suite::blocks::{brute_force_blocks, is_block, is_primitive_by_blocks, minimal_block_size, minimal_block_system};
use drgt_core::suite::duality::coverage_derangement_duality_check;
use drgt_core::suite::orbital::{is_primitive_by_orbitals, orbital_graph};
use drgt_core::suite::perm_action::PermAction;
use drgt_core::suite::psl::{build_psl_coset_action, counterexample_search, PSL3_4_ORDER};
use drgt_core::suite::search::fixne1_sweep;
use drgt_core::triality::{phase_rng, Phase, DEFAULT_SEED};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn corpus() -> Vec<(&'static str, PermGroupFile)> {
    CORPUS.iter().map(|(n, t)| (*n, PermGroupFile::parse(t).unwrap())).collect()
}

fn action(f: &PermGroupFile) -> PermAction {
    PermAction::new(f.generators.clone(), 0, None, ChaCha8Rng::seed_from_u64(11)).unwrap()
}

fn enumerate(gens: &[Perm]) -> SmallGroup<Perm> {
    closure_enumerate(gens, &Perm::identity(gens[0].degree()), 100_000).unwrap()
}

fn corpus_file(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data/corpus").join(format!("{name}.perm"))
}

#[test]
fn corpus_chain_orders_match_enumeration() {
    for (name, f) in corpus() {
        let a = action(&f);
        assert!(a.is_transitive(), "{name}");
        assert_eq!(a.order(), enumerate(&f.generators).len() as u128, "{name}");
    }
}

#[test]
fn primitivity_three_ways() {
    for (name, f) in corpus() {
        assert!(f.degree <= 50);
        let a = action(&f);
        let higman = is_primitive_by_orbitals(&a).unwrap();
        let closure = is_primitive_by_blocks(&f.generators, f.degree);
        let brute = brute_force_blocks(&f.generators, f.degree, 10_000_000).unwrap().is_empty();
        assert_eq!(higman, closure, "{name}");
        assert_eq!(higman, brute, "{name}");
        for beta in 1..f.degree as u32 {
            let connected = orbital_graph(&a, beta, usize::MAX).unwrap().1;
            let whole = minimal_block_size(&f.generators, f.degree, 0, beta) == f.degree;
            assert_eq!(connected, whole, "{name} beta {beta}");
        }
    }
}

#[test]
fn known_primitivity_verdicts() {
    let verdict = |n: &str| {
        let f = corpus().into_iter().find(|(m, _)| *m == n).unwrap().1;
        is_primitive_by_orbitals(&action(&f)).unwrap()
    };
    for n in ["s3_natural", "a5_pairs10", "s3wrs2_9", "agl1_8", "psl3_4_21", "frobenius21_7"] {
        assert!(verdict(n), "{n}");
    }
    for n in ["c4_natural", "s4_pairs", "s2wrs3_6", "c12_regular", "s4_cosets_c2_12"] {
        assert!(!verdict(n), "{n}");
    }
}

#[test]
fn duality_on_small_instances() {
    let p = |n: usize, c: &[&[u32]]| Perm::from_cycles(n, c).unwrap();
    let s4 = enumerate(&[p(4, &[&[0, 1, 2, 3]]), p(4, &[&[0, 1]])]);
    let a5 = enumerate(&[p(5, &[&[0, 1, 2, 3, 4]]), p(5, &[&[0, 1, 2]])]);
    let f21_gens = [
        Perm::new((0..7).map(|x| (x + 1) % 7).collect()).unwrap(),
        Perm::new((0..7).map(|x| (2 * x) % 7).collect()).unwrap(),
    ];
    let f21 = enumerate(&f21_gens);
    let cases = [
        (&s4, enumerate(&[p(4, &[&[0, 1, 2]]), p(4, &[&[0, 1]])])),
        (&s4, enumerate(&[p(4, &[&[0, 1]])])),
        (&s4, enumerate(&[p(4, &[&[0, 1], &[2, 3]]), p(4, &[&[0, 2], &[1, 3]])])),
        (&s4, enumerate(&[Perm::identity(4)])),
        (&f21, enumerate(&[f21_gens[1].clone()])),
        (&a5, enumerate(&[p(5, &[&[0, 1, 2, 3, 4]])])),
        (&a5, enumerate(&[p(5, &[&[0, 1, 2]]), p(5, &[&[0, 1], &[3, 4]])])),
    ];
    for (g, u) in cases.iter() {
        let r = coverage_derangement_duality_check(g, u).unwrap();
        assert!(r.holds, "|G| = {}, |U| = {}: {:?}", g.len(), u.len(), r.mismatches);
    }
}

#[test]
fn psl3_4_chain_and_membership() {
    let f = PermGroupFile::parse(drgt_core::data::PSL3_4_PERM).unwrap();
    let a = PermAction::new(f.generators.clone(), 0, None, phase_rng(1, Phase::Chain)).unwrap();
    assert_eq!(a.order(), PSL3_4_ORDER);
    assert_eq!(enumerate(&f.generators).len() as u128, PSL3_4_ORDER);
    let mut pr = ProductReplacement::new(&f.generators, &Perm::identity(21), ChaCha8Rng::seed_from_u64(2));
    for _ in 0..200 {
        assert!(a.chain().contains(&pr.next_element()));
    }
    assert!(!a.chain().contains(&Perm::from_cycles(21, &[&[0, 1]]).unwrap()));
}

#[test]
fn psl3_4_coset_action_orbitals_match_blocks() {
    let setup = build_psl_coset_action(DEFAULT_SEED).unwrap();
    let rep = counterexample_search(&setup.action, true, 100).unwrap();
    assert!(rep.pair.is_some());
    let gens = setup.action.generators();
    let n = setup.action.degree();
    let total: usize = rep.records.iter().map(|r| r.suborbit_size).sum();
    assert_eq!(total + 1, n);
    for r in &rep.records {
        let whole = minimal_block_size(gens, n, setup.action.alpha(), r.beta) == n;
        assert_eq!(r.connected, whole, "beta {}", r.beta);
    }
    // the action is imprimitive: some orbital graphs are disconnected
    assert!(rep.records.iter().any(|r| !r.connected));
    let sweep = fixne1_sweep(&setup.action, 100).unwrap();
    assert_eq!(sweep.pairs_checked, n - 1);
    assert!(sweep.violations.is_empty());
}

#[test]
fn file_reports() {
    let r = pipeline::derangement_report(&corpus_file("s3_natural"), 0, 1, DEFAULT_SEED).unwrap();
    assert!(r.passed);
    assert_eq!(r.pair, Some((0, 1)));
    let r = pipeline::orbital_report(&corpus_file("c4_natural"), 0, DEFAULT_SEED).unwrap();
    assert_eq!(r.details["primitive"], false);
    let r = pipeline::fixne1_report(&corpus_file("frobenius21_7"), 0, None, DEFAULT_SEED).unwrap();
    assert!(r.passed);
    let r = pipeline::fixne1_report(&corpus_file("frobenius21_7"), 2, Some(5), DEFAULT_SEED).unwrap();
    assert!(r.passed);
    assert!(pipeline::orbital_report(&corpus_file("missing"), 0, DEFAULT_SEED).is_err());
}

#[test]
fn remark_c_and_d_reports() {
    let c = pipeline::remark_c_report(DEFAULT_SEED, false).unwrap();
    assert!(c.passed);
    assert!(c.fixed_point_histogram.unwrap().keys().all(|&f| f >= 1));
    let d = pipeline::remark_d_report(DEFAULT_SEED).unwrap();
    assert!(d.passed);
    assert!(d.lines.iter().any(|l| l.contains("exploratory")));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn minimal_block_is_block(idx in 0usize..CORPUS.len(), seed in 0u32..1000) {
        let f = PermGroupFile::parse(CORPUS[idx].1).unwrap();
        let n = f.degree as u32;
        let (a, b) = (seed % n, (seed / n) % n);
        prop_assume!(a != b);
        let labels = minimal_block_system(&f.generators, f.degree, a, b);
        let block: Vec<u32> = (0..n).filter(|&q| labels[q as usize] == labels[a as usize]).collect();
        prop_assert!(block.contains(&b));
        prop_assert!(is_block(&f.generators, f.degree, &block));
        prop_assert_eq!(f.degree % block.len(), 0);
    }
}
