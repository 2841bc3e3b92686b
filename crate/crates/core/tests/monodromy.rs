use kumfib::monodromy::{
    deck_parity, puncture_table_with, reference_relabeling, reference_table, track_loop_with, DeckParity, LoopSpec,
    Puncture, Route, TrackerConfig,
};
use kumfib::perm::Permutation;

fn p(s: &str) -> Permutation {
    Permutation::parse(s, 6).unwrap()
}

fn cfg(steps: usize) -> TrackerConfig {
    TrackerConfig { precision: 128, steps }
}

#[test]
fn table_is_stable_under_refinement() {
    let t256 = puncture_table_with(&cfg(256)).unwrap();
    let t512 = puncture_table_with(&cfg(512)).unwrap();
    let t1024 = puncture_table_with(&cfg(1024)).unwrap();
    assert_eq!(t256, t512);
    assert_eq!(t512, t1024);

    assert_eq!(t256.zero.cycle_type(), vec![2, 2, 2]);
    assert_eq!(t256.quarter256.cycle_type(), vec![2, 1, 1, 1, 1]);
    assert_eq!(t256.infinity.cycle_type(), vec![4, 2]);
    assert!(t256.product().is_identity());
    assert_eq!(t256.infinity, t256.infinity_from_relation());

    // the reference labels up to a relabelling inside the triples
    let rho = reference_relabeling();
    assert_eq!(deck_parity(&rho), DeckParity::Swaps);
    assert_eq!(t256.relabel(&rho), reference_table());
    assert!(reference_table().product().is_identity());
}

#[test]
fn route_below_zero_still_gives_a_transposition() {
    let r = track_loop_with(&LoopSpec::around(Puncture::Quarter256, Route::Below), &cfg(256)).unwrap();
    assert_eq!(r.permutation.cycle_type(), vec![2, 1, 1, 1, 1]);
}

#[test]
fn apparent_point_has_trivial_monodromy() {
    let r = track_loop_with(&LoopSpec::around(Puncture::Apparent81, Route::Above), &cfg(256)).unwrap();
    assert!(r.permutation.is_identity(), "{}", r.permutation);
    let c = track_loop_with(&LoopSpec::contractible(), &cfg(256)).unwrap();
    assert!(c.permutation.is_identity());
    assert!(c.closure_error < 1e-20);
}

#[test]
fn deck_parities() {
    assert_eq!(deck_parity(&p("(45)")), DeckParity::Swaps);
    assert_eq!(deck_parity(&Permutation::identity(6)), DeckParity::Preserves);
    assert_eq!(deck_parity(&p("(123)")), DeckParity::Preserves);
    assert_eq!(deck_parity(&p("(14)(25)(36)")), DeckParity::NotInH { exchanges_triples: true, even: false });
    assert_eq!(deck_parity(&p("(14)")), DeckParity::NotInH { exchanges_triples: false, even: false });
}
