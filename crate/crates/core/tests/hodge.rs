use kumfib::hodge::{
    analyze_branch_data, analyze_cover, c_of_y, cy_condition, fiber_inventory, h11, h21, paper_constants,
    partitions, smoothness, x_fiber_components, y_fiber_components, y_fiber_multiplicities, HodgeValue,
};
use kumfib::hurwitz::{regular_d8_cover, BranchData, DEFAULT_SEARCH_BUDGET};

fn quintic() -> BranchData {
    BranchData::new(5, vec![5], vec![1, 4], vec![1; 5], 1).unwrap()
}

fn y2_prime() -> BranchData {
    BranchData::new(8, vec![2, 2, 2, 2], vec![4, 4], vec![2, 2, 2, 2], 0).unwrap()
}

#[test]
fn cy_degree_clause_is_riemann_hurwitz() {
    for n in 1..=8 {
        let parts = partitions(n);
        for x in &parts {
            for y in &parts {
                for z in &parts {
                    for r in 0..=2 * n {
                        let b = BranchData { n, x: x.clone(), y: y.clone(), z: z.clone(), r };
                        let ram = (n - x.len()) + (n - y.len()) + (n - z.len()) + r;
                        let rh = ram == 2 * n - 2;
                        let y_ok = (y.len() == 2 && y.iter().all(|v| [1, 2, 4].contains(v))) || *y == vec![8];
                        assert_eq!(cy_condition(&b), rh && y_ok, "{}", b);
                    }
                }
            }
        }
    }
}

#[test]
fn reference_cy_examples() {
    assert_eq!(quintic().tuple_form(), (1, 2, 5, 5, 1));
    assert_eq!(y2_prime().tuple_form(), (4, 2, 4, 8, 0));
    assert!(cy_condition(&quintic()));
    assert!(cy_condition(&y2_prime()));
    let identity = BranchData::new(1, vec![1], vec![1], vec![1], 0).unwrap();
    assert!(!cy_condition(&identity));
    assert!(smoothness(&quintic()));
    assert!(!smoothness(&y2_prime()));
}

#[test]
fn fibre_component_counts() {
    for x in 1..=12usize {
        // two strict transforms, 4(x - 1) exceptional curves and the blown-up intersections
        let x64 = x as i64;
        let expected = 2 + 4 * (x64 - 1) + (x64 - 2).pow(2) - (x64 % 2);
        assert_eq!(x_fiber_components(x) as i64, expected, "x = {}", x);
    }
    assert_eq!([1, 2, 4, 8].map(y_fiber_components), [Some(20), Some(9), Some(1), Some(1)]);
    for y in [1, 2] {
        let total: u32 = y_fiber_multiplicities(y).unwrap().iter().map(|(_, c)| c).sum();
        assert_eq!(Some(total as u64), y_fiber_components(y));
        assert_eq!(c_of_y(y), y_fiber_components(y).map(|c| c as i64 - 1));
    }
    assert_eq!(c_of_y(4), Some(0));
    let inv = fiber_inventory(&y2_prime());
    assert_eq!(inv.terminal_points(), 8);
    assert!(inv.quarter256.iter().all(|q| q.singularity.as_deref() == Some("cA1")));
    assert_eq!(fiber_inventory(&quintic()).terminal_points(), 0);
}

#[test]
fn closed_forms() {
    // 12 + (25 + 1 - 1) + 0 + 19 + s
    assert_eq!(h11(&quintic(), 3).unwrap(), 59);
    assert_eq!(h21(&quintic(), 2).unwrap(), 3);
    // 12 + 4 * 5 + 0 + 0 + s
    assert_eq!(h11(&y2_prime(), 8).unwrap(), 40);
    assert_eq!(h21(&y2_prime(), 0).unwrap(), 0);
    let one_point = BranchData::new(8, vec![4, 4], vec![8], vec![1; 8], 6).unwrap();
    assert!(h11(&one_point, 1).is_err());
    assert!(h21(&one_point, 0).is_err());
}

#[test]
fn constants() {
    let c = paper_constants();
    assert_eq!((c.euler_a2, c.h11_a2, c.h21_a2), (64, 32, 0));
    assert_eq!((c.euler_y2_prime, c.h11_y2_prime, c.h21_y2_prime), (80, 40, 0));
    assert_eq!(c.euler_a2, 2 * (c.h11_a2 - c.h21_a2));
    assert_eq!(c.euler_y2_prime, 2 * (c.h11_y2_prime - c.h21_y2_prime));
}

#[test]
fn end_to_end_quintic() {
    let a = analyze_branch_data(&quintic(), 16, DEFAULT_SEARCH_BUDGET).unwrap();
    assert!(!a.ambiguous && !a.truncated);
    assert_eq!(a.outcomes.iter().copied().collect::<Vec<_>>(), vec![(3, 2)]);
    let r = &a.reports[0];
    assert_eq!((r.h11.value(), r.h21.value(), r.euler.value()), (Some(59), Some(3), Some(112)));
}

#[test]
fn end_to_end_y2_prime() {
    let r = analyze_cover(&y2_prime(), &regular_d8_cover()).unwrap();
    let curve = r.fixed_curve.as_ref().unwrap();
    assert_eq!((curve.s, curve.p_g), (8, 0));
    assert_eq!((r.h11.value(), r.h21.value(), r.euler.value()), (Some(40), Some(0), Some(80)));
}

#[test]
fn euler_is_twice_the_hodge_difference() {
    for b in kumfib::hodge::admissible_branch_data(5) {
        let a = analyze_branch_data(&b, 8, 100_000).unwrap();
        for r in &a.reports {
            match (&r.h11, &r.h21, &r.euler) {
                (HodgeValue::Value(p), HodgeValue::Value(q), HodgeValue::Value(e)) => assert_eq!(*e, 2 * (p - q)),
                (_, _, e) => assert!(e.value().is_none()),
            }
        }
    }
}

#[test]
fn end_to_end_y2_prime_from_branch_data() {
    let a = analyze_branch_data(&y2_prime(), 16, DEFAULT_SEARCH_BUDGET).unwrap();
    assert!(!a.truncated);
    assert_eq!(a.outcomes.iter().copied().collect::<Vec<_>>(), vec![(8, 0)]);
    for r in &a.reports {
        assert_eq!((r.h11.value(), r.h21.value()), (Some(40), Some(0)));
    }
}
