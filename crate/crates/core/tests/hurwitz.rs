mod common;

use kumfib::hurwitz::{
    c2_components, canonical_form, genus, genus_from_rh, identity_cover, pullback, random_connected_cover,
    random_cover, regular_d8_cover, search_tuples, validate, validate_against, BranchData, HurwitzCover, Mark,
    Violation,
};
use common::brute_force_classes;
use kumfib::perm::Permutation;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn p(s: &str, n: usize) -> Permutation {
    Permutation::parse(s, n).unwrap()
}

#[test]
fn quartic_component_is_unique_in_s4() {
    // marks 1/256, inf, 0
    let types = vec![vec![2, 1, 1], vec![4], vec![2, 2]];
    assert_eq!(brute_force_classes(4, &types), 1);
    let b = BranchData::new(4, vec![2, 2], vec![4], vec![2, 1, 1], 0).unwrap();
    let found = search_tuples(&b, 10);
    assert!(!found.truncated);
    assert_eq!(found.covers.len(), 1);
    let q = &c2_components()[2];
    assert_eq!(canonical_form(4, &found.covers[0].tuple), canonical_form(4, &q.tuple));
}

#[test]
fn quintic_data_is_rigid_in_s5() {
    let types = vec![vec![1; 5], vec![4, 1], vec![5], vec![2, 1, 1, 1]];
    let brute = brute_force_classes(5, &types);
    let b = BranchData::new(5, vec![5], vec![1, 4], vec![1; 5], 1).unwrap();
    let found = search_tuples(&b, 10);
    assert_eq!(found.covers.len(), brute);
    assert_eq!(brute, 1);
    for c in &found.covers {
        assert!(validate_against(c, &b).is_ok());
    }
}

#[test]
fn search_agrees_with_brute_force_on_small_data() {
    for n in 2..=4 {
        for b in kumfib::hodge::genus_zero_branch_data(n) {
            if b.r > 1 {
                continue;
            }
            let mut types = vec![b.z.clone(), b.y.clone(), b.x.clone()];
            for _ in 0..b.r {
                let mut t = vec![2];
                t.extend(std::iter::repeat_n(1, n - 2));
                types.push(t);
            }
            let found = search_tuples(&b, 100);
            assert!(!found.truncated);
            assert_eq!(found.covers.len(), brute_force_classes(n, &types), "{}", b);
        }
    }
}

#[test]
fn parity_violations_give_nothing() {
    // Σ(e - 1) = 1 + 1 + 0 + 1 = 3, odd
    let b = BranchData::new(3, vec![2, 1], vec![2, 1], vec![1, 1, 1], 1).unwrap();
    assert!(search_tuples(&b, 10).covers.is_empty());
}

#[test]
fn validation() {
    let marks = Mark::specials().to_vec();
    let ok = HurwitzCover::new(2, marks.clone(), vec![p("()", 2), p("(12)", 2), p("(12)", 2)]).unwrap();
    assert!(validate(&ok).is_ok());
    assert_eq!(genus(&ok).unwrap(), 0);
    let bad = HurwitzCover::new(3, marks.clone(), vec![p("(12)", 3), p("()", 3), p("()", 3)]).unwrap();
    let v = validate(&bad).unwrap_err();
    assert!(v.iter().any(|x| matches!(x, Violation::ProductNotIdentity { .. })), "{:?}", v);
    let split = HurwitzCover::new(4, marks, vec![p("(12)", 4), p("(12)(34)", 4), p("(34)", 4)]).unwrap();
    assert!(validate(&split).is_err());
    assert!(genus(&split).is_err());
}

#[test]
fn c2_components_are_rational() {
    let comps = c2_components();
    assert_eq!(comps.iter().map(|c| c.degree).sum::<usize>(), 8);
    for c in &comps {
        assert!(validate(c).is_ok());
        assert_eq!(genus(c).unwrap(), 0);
    }
    let q = &comps[2];
    assert_eq!(q.profile(Mark::Quarter256), vec![2, 1, 1]);
    assert_eq!(q.profile(Mark::Zero), vec![2, 2]);
    assert_eq!(q.profile(Mark::Infinity), vec![4]);
}

#[test]
fn riemann_hurwitz_genus_two() {
    // [2,2], [4], [1,1,1,1] and five simple points at degree 4
    assert_eq!(genus_from_rh(4, 2 + 3 + 5).unwrap(), 2);
    assert!(genus_from_rh(4, 3).is_err());
}

#[test]
fn d8_cover() {
    let g = regular_d8_cover();
    assert_eq!(g.degree, 8);
    assert!(validate(&g).is_ok());
    assert_eq!(g.monodromy_group_order(), 8);
    assert_eq!(g.profile(Mark::Zero), vec![2, 2, 2, 2]);
    assert_eq!(g.profile(Mark::Infinity), vec![4, 4]);
    assert_eq!(g.profile(Mark::Quarter256), vec![2, 2, 2, 2]);
    let mut count = 0;
    for c in c2_components() {
        let comps = pullback(&c, &g).unwrap();
        assert!(comps.iter().all(|r| r.genus == 0));
        count += comps.len();
    }
    assert_eq!(count, 8);
}

#[test]
fn quintic_pullbacks() {
    let b = BranchData::new(5, vec![5], vec![1, 4], vec![1; 5], 1).unwrap();
    let g = &search_tuples(&b, 10).covers[0];
    let comps = c2_components();
    for c in &comps[..2] {
        let r = pullback(c, g).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].genus, 0);
    }
    let r = pullback(&comps[2], g).unwrap();
    assert_eq!(r.len(), 1);
    assert_eq!(r[0].genus, 2);
    assert_eq!(r[0].degree_over_source, 4);
}

#[test]
fn identity_pullback_returns_the_cover() {
    for c in c2_components() {
        let r = pullback(&c, &identity_cover()).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].degree_over_lambda, c.degree);
        assert_eq!(r[0].genus, genus(&c).unwrap());
        for mp in &r[0].profiles {
            assert_eq!(mp.over_lambda, c.profile(mp.mark));
        }
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 { a } else { gcd(b, a % b) }
}

/// `2 dn - Σ_marks (dn - #cycles)` with pair-cycle counts from `gcd` of cycle lengths.
fn fibre_product_euler(a: &HurwitzCover, g: &HurwitzCover) -> i64 {
    let dn = (a.degree * g.degree) as i64;
    let mut marks: Vec<Mark> = a.marks.iter().chain(&g.marks).copied().collect();
    marks.sort();
    marks.dedup();
    let mut chi = 2 * dn;
    for m in marks {
        let la = a.profile(m);
        let lg = g.profile(m);
        let cycles: usize = la.iter().flat_map(|&x| lg.iter().map(move |&y| gcd(x, y))).sum();
        chi -= dn - cycles as i64;
    }
    chi
}

fn cover_pair() -> impl Strategy<Value = (u64, usize, usize, usize, usize)> {
    (any::<u64>(), 1usize..=6, 1usize..=6, 0usize..=2, 0usize..=2)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn pullback_accounting((seed, d, n, ea, eg) in cover_pair()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_cover(&mut rng, d, ea);
        let g = random_connected_cover(&mut rng, n, eg);
        let comps = pullback(&a, &g).unwrap();
        prop_assert_eq!(comps.iter().map(|c| c.degree_over_lambda).sum::<usize>(), d * n);
        let chi: i64 = comps.iter().map(|c| 2 - 2 * c.genus as i64).sum();
        prop_assert_eq!(chi, fibre_product_euler(&a, &g));
        for c in &comps {
            prop_assert_eq!(c.degree_over_source * n, c.degree_over_lambda);
            for mp in &c.profiles {
                prop_assert_eq!(mp.over_lambda.iter().sum::<usize>(), c.degree_over_lambda);
                let over: usize = mp.over_source.iter().map(|s| s.g_index * s.profile.iter().sum::<usize>()).sum();
                prop_assert_eq!(over, c.degree_over_lambda);
            }
        }
        // relabelling either cover changes nothing
        let ca = rand_perm(&mut rng, d);
        let cg = rand_perm(&mut rng, n);
        let again = pullback(&a.conjugate_by(&ca), &g.conjugate_by(&cg)).unwrap();
        let key = |v: &[kumfib::hurwitz::ComponentReport]| {
            let mut k: Vec<(usize, u64)> = v.iter().map(|c| (c.degree_over_lambda, c.genus)).collect();
            k.sort();
            k
        };
        prop_assert_eq!(key(&comps), key(&again));
    }
}

fn rand_perm(rng: &mut ChaCha8Rng, n: usize) -> Permutation {
    kumfib::hurwitz::random_permutation(rng, n)
}
