use kumfib::exact_algebra::{irreducible_factors, rat, Place, Polynomial, Rational, RationalFunction};
use proptest::prelude::*;

fn small_poly() -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(-6i64..=6, 1..5).prop_map(|c| Polynomial::from_ints(&c))
}

fn nonzero_poly() -> impl Strategy<Value = Polynomial> {
    small_poly().prop_filter("nonzero", |p| !p.is_zero())
}

fn ratfunc() -> impl Strategy<Value = RationalFunction> {
    (small_poly(), nonzero_poly()).prop_map(|(n, d)| RationalFunction::new(n, d))
}

fn mobius() -> impl Strategy<Value = (i64, i64, i64, i64)> {
    (-4i64..=4, -4i64..=4, -4i64..=4, -4i64..=4).prop_filter("invertible", |(a, b, c, d)| a * d - b * c != 0)
}

/// Sum of `deg(place) * ord` over all places where `f` has a zero or pole.
fn total_order(f: &RationalFunction) -> i64 {
    let mut total = f.order_at(&Place::Infinity).unwrap();
    for p in [f.numerator(), f.denominator()] {
        if p.is_constant() {
            continue;
        }
        for (place, _) in irreducible_factors(p).unwrap() {
            total += place.degree() as i64 * f.order_at(&place).unwrap();
        }
    }
    total
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn mobius_round_trip(f in ratfunc(), (a, b, c, d) in mobius()) {
        let m = RationalFunction::mobius(a, b, c, d);
        let m_inv = RationalFunction::mobius(d, -b, -c, a);
        prop_assert_eq!(m.compose(&m_inv), RationalFunction::x());
        prop_assert_eq!(f.compose(&m).compose(&m_inv), f);
    }

    #[test]
    fn composition_agrees_with_evaluation(f in ratfunc(), g in ratfunc(), x in -20i64..=20) {
        let x = rat(x, 3);
        if let Ok(gx) = g.eval(&x) {
            if let (Ok(lhs), Ok(rhs)) = (f.compose(&g).eval(&x), f.eval(&gx)) {
                prop_assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn orders_sum_to_zero(f in ratfunc()) {
        prop_assume!(!f.is_zero());
        prop_assert_eq!(total_order(&f), 0);
    }

    #[test]
    fn factor_multiplicities_sum_to_degree(p in nonzero_poly()) {
        let total: usize = irreducible_factors(&p).unwrap().iter().map(|(pl, m)| pl.degree() * m).sum();
        prop_assert_eq!(total, p.deg());
    }

    #[test]
    fn factorization_recovers_planted_factors(
        roots in prop::collection::vec((-9i64..=9, 1usize..=3), 0..3),
        quads in prop::collection::vec((1i64..=7, 1usize..=2), 0..3),
    ) {
        // x - r and x^2 + c (c > 0) are irreducible; dedupe planted factors
        let mut planted: Vec<(Polynomial, usize)> = Vec::new();
        for (r, m) in roots {
            let f = Polynomial::linear_root(rat(r, 1));
            match planted.iter_mut().find(|(g, _)| *g == f) {
                Some(e) => e.1 += m,
                None => planted.push((f, m)),
            }
        }
        for (c, m) in quads {
            let f = Polynomial::from_ints(&[c, 0, 1]);
            match planted.iter_mut().find(|(g, _)| *g == f) {
                Some(e) => e.1 += m,
                None => planted.push((f, m)),
            }
        }
        let p = planted.iter().fold(Polynomial::from_ints(&[3]), |acc, (f, m)| &acc * &f.pow(*m as u32));
        let mut got: Vec<(Polynomial, usize)> = irreducible_factors(&p)
            .unwrap()
            .into_iter()
            .map(|(pl, m)| (pl.minimal_polynomial().unwrap().clone(), m))
            .collect();
        let key = |(f, m): &(Polynomial, usize)| (f.deg(), f.coeffs().to_vec(), *m);
        got.sort_by_key(key);
        planted.sort_by_key(key);
        prop_assert_eq!(got, planted);
    }
}

#[test]
fn cyclotomic_twelve_is_irreducible() {
    let f = Polynomial::from_ints(&[1, 0, -1, 0, 1]);
    let factors = irreducible_factors(&f).unwrap();
    assert_eq!(factors.len(), 1);
    assert_eq!(factors[0].0.degree(), 4);
}

#[test]
fn swinnerton_dyer_style_splitting() {
    // four linear factors modulo primes where 2 and 3 are both squares;
    // recombination must still find the two quadratics
    let f = &Polynomial::from_ints(&[-2, 0, 1]) * &Polynomial::from_ints(&[-3, 0, 1]);
    let factors = irreducible_factors(&f).unwrap();
    let degrees: Vec<usize> = factors.iter().map(|(p, _)| p.degree()).collect();
    assert_eq!(degrees, vec![2, 2]);
}

#[test]
fn x4_plus_1_is_irreducible() {
    // reducible modulo every prime
    let f = Polynomial::from_ints(&[1, 0, 0, 0, 1]);
    assert_eq!(irreducible_factors(&f).unwrap().len(), 1);
}

#[test]
fn rational_arithmetic_is_exact() {
    let third: Rational = rat(1, 3);
    assert_eq!(&third + &third + &third, rat(1, 1));
}
