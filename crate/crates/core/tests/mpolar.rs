use kumfib::exact_algebra::{rat, Rational};
use kumfib::family_x2::{params_of_lambda, LambdaFamily};
use kumfib::mpolar::{discriminant_delta, fiber_locus, j_pair, normalize, sigma_pi, six_distinct_roots, SigmaPi};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-60i64..=60, 1i64..=24).prop_map(|(n, d)| rat(n, d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn vieta(a in rational(), b in rational()) {
        let sp = sigma_pi(&a, &b);
        let jp = j_pair(&sp);
        prop_assert_eq!(jp.sum(), sp.sigma.clone());
        prop_assert_eq!(jp.product(), sp.pi.clone());
    }

    #[test]
    fn delta_is_sigma_squared_minus_four_pi(a in rational(), b in rational()) {
        let sp = sigma_pi(&a, &b);
        prop_assert_eq!(discriminant_delta(&a, &b), &sp.sigma * &sp.sigma - rat(4, 1) * &sp.pi);
    }

    #[test]
    fn distinct_roots_iff_squarefree(a in rational(), b in rational()) {
        let (m, p) = fiber_locus(&a, &b);
        let f = &m * &p;
        let squarefree = f.gcd(&f.derivative()).is_constant();
        prop_assert_eq!(six_distinct_roots(&a, &b), squarefree);
    }
}

#[test]
fn boundary_cases_collide() {
    // a^3 = (b - 1)^2 at (1, 0) and (1, 2); a^3 = (b + 1)^2 at (4, 7)
    for (a, b) in [(1, 0), (1, 2), (4, 7)] {
        assert!(!six_distinct_roots(&rat(a, 1), &rat(b, 1)), "({}, {})", a, b);
    }
}

#[test]
fn lambda_one_parameters() {
    let p = params_of_lambda(&rat(1, 1)).unwrap();
    assert_eq!((p.a.clone(), p.b.clone(), p.d.clone()), (rat(145, 144), rat(647, 1728), rat(1, 1)));
    let n = normalize(&p).unwrap();
    assert_eq!(n.a, Some(rat(145, 144)));
    assert_eq!(n.b_squared, rat(647 * 647, 1728 * 1728));
    let fam = LambdaFamily::new();
    let sp = n.sigma_pi();
    assert_eq!(sp.sigma, rat(1625, 864));
    assert_eq!(fam.sigma_of_lambda.eval(&rat(1, 1)).unwrap(), sp.sigma);
    assert_eq!(fam.pi_of_lambda.eval(&rat(1, 1)).unwrap(), sp.pi);
}

#[test]
fn vieta_at_lambda_one() {
    let pi = rat(145, 144) * rat(145, 144) * rat(145, 144);
    let jp = j_pair(&SigmaPi { sigma: rat(1625, 864), pi: pi.clone() });
    assert_eq!(jp.sum(), rat(1625, 864));
    assert_eq!(jp.product(), pi);
}

#[test]
fn cusp_is_rejected() {
    assert!(matches!(params_of_lambda(&rat(0, 1)), Err(kumfib::Error::Cusp)));
}
