//! The one-parameter family over the λ-line, its 8-fold cover by the ν-line,
//! the two elliptic surfaces over the cover and the affine Kummer model.

mod deck;
mod kummer;
mod tower;

pub use deck::{all_deck_elements, deck_element, DeckElement, ALPHA_LABELS, BETA_LABELS};
pub use kummer::{
    apply_involution, kummer_equation, CoordinateMap, Involution, KummerEquation, KummerPoint, KummerScalar,
    SourceCoord, FLOAT_TOLERANCE,
};
pub use tower::{lambda_of_nu, lambda_of_nu_complex, CoverTower};

use crate::error::{Error, Result};
use crate::exact_algebra::{rat, Polynomial, Rational, RationalFunction};
use crate::kodaira::WeierstrassFamily;
use crate::mpolar::ModularParams;

fn poly(coeffs: &[Rational]) -> RationalFunction {
    RationalFunction::from_poly(Polynomial::new(coeffs.to_vec()))
}

/// Parameter maps of the family as rational functions of λ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LambdaFamily {
    pub a_of_lambda: RationalFunction,
    pub b_of_lambda: RationalFunction,
    pub d_of_lambda: RationalFunction,
    pub sigma_of_lambda: RationalFunction,
    pub pi_of_lambda: RationalFunction,
}

impl Default for LambdaFamily {
    fn default() -> Self {
        Self::new()
    }
}

impl LambdaFamily {
    pub fn new() -> Self {
        let zero = rat(0, 1);
        let inv_lambda = RationalFunction::x().recip().expect("x is nonzero");
        let inv_lambda_sq = &inv_lambda * &inv_lambda;
        // sigma = 2 - 23/(192 λ) + 1/(1728 λ^2)
        let sigma = &(&RationalFunction::from_int(2) - &(&RationalFunction::constant(rat(23, 192)) * &inv_lambda))
            + &(&RationalFunction::constant(rat(1, 1728)) * &inv_lambda_sq);
        // pi = (1 + 1/(144 λ))^3
        let base = &RationalFunction::from_int(1) + &(&RationalFunction::constant(rat(1, 144)) * &inv_lambda);
        LambdaFamily {
            a_of_lambda: poly(&[rat(1, 144), rat(1, 1)]),
            b_of_lambda: poly(&[rat(-1, 1728), rat(3, 8)]),
            d_of_lambda: poly(&[zero.clone(), zero.clone(), zero, rat(1, 1)]),
            sigma_of_lambda: sigma,
            pi_of_lambda: base.pow(3).expect("nonzero base"),
        }
    }

    /// `(a^3/d - b^2/d + 1, a^3/d)` computed from the parameter maps.
    pub fn sigma_pi_from_params(&self) -> (RationalFunction, RationalFunction) {
        let a = &self.a_of_lambda;
        let b = &self.b_of_lambda;
        let a3 = &(&(a * a) * a) / &self.d_of_lambda;
        let b2 = &(b * b) / &self.d_of_lambda;
        (&(&a3 - &b2) + &RationalFunction::from_int(1), a3)
    }
}

/// `(a, b, d)` at a rational λ; λ = 0 is the cusp.
pub fn params_of_lambda(lambda: &Rational) -> Result<ModularParams> {
    let fam = LambdaFamily::new();
    let d = fam.d_of_lambda.eval(lambda)?;
    if num_traits::Zero::is_zero(&d) {
        return Err(Error::Cusp);
    }
    ModularParams::new(fam.a_of_lambda.eval(lambda)?, fam.b_of_lambda.eval(lambda)?, d)
}

/// `z^2 = t(t - 1)(t - nu^2)`.
pub fn e1_model() -> WeierstrassFamily {
    WeierstrassFamily::new(
        RationalFunction::from_poly(Polynomial::from_ints(&[-1, 0, -1])),
        RationalFunction::from_poly(Polynomial::from_ints(&[0, 0, 1])),
        RationalFunction::from_int(0),
    )
}

/// The involution `nu -> (nu + 1)/(nu - 1)` exchanging the two elliptic surfaces.
pub fn e_swap() -> RationalFunction {
    RationalFunction::mobius(1, 1, 1, -1)
}

pub fn e2_model() -> WeierstrassFamily {
    e1_model().precompose(&e_swap())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mpolar::normalize;

    #[test]
    fn params_at_one() {
        let p = params_of_lambda(&rat(1, 1)).unwrap();
        assert_eq!((p.a.clone(), p.b.clone(), p.d.clone()), (rat(145, 144), rat(647, 1728), rat(1, 1)));
        let sp = normalize(&p).unwrap().sigma_pi();
        let fam = LambdaFamily::new();
        assert_eq!(sp.sigma, fam.sigma_of_lambda.eval(&rat(1, 1)).unwrap());
        assert_eq!(sp.pi, fam.pi_of_lambda.eval(&rat(1, 1)).unwrap());
        assert_eq!(sp.sigma, rat(1625, 864));
    }

    #[test]
    fn cusp_rejected() {
        assert!(matches!(params_of_lambda(&rat(0, 1)), Err(Error::Cusp)));
    }

    #[test]
    fn closed_forms_match_parameter_maps() {
        let fam = LambdaFamily::new();
        let (sigma, pi) = fam.sigma_pi_from_params();
        assert_eq!(sigma, fam.sigma_of_lambda);
        assert_eq!(pi, fam.pi_of_lambda);
    }
}
