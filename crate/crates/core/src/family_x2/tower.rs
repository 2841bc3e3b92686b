//! The cover tower `nu -> mu' -> mu -> lambda`.

use rug::Complex;

use crate::error::Result;
use crate::exact_algebra::{rat, Polynomial, Rational, RationalFunction};
use crate::numeric::eval_ratfunc_complex;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverTower {
    /// `lambda = -mu^2 + 1/256`
    pub f1: RationalFunction,
    /// `mu = -mu'^2 + 1/16`
    pub f2: RationalFunction,
    /// `mu'^2 = (1/8)(1 - nu^2)^2 / (1 + nu^2)^2`; `mu'` itself needs `sqrt(8)`.
    pub f3_squared_composite: RationalFunction,
    /// `mu(nu)`, the composite of the last two steps.
    pub f2_f3_composite: RationalFunction,
    pub lambda_of_nu: RationalFunction,
}

impl Default for CoverTower {
    fn default() -> Self {
        Self::new()
    }
}

impl CoverTower {
    pub fn new() -> Self {
        let f1 = RationalFunction::from_poly(Polynomial::new(vec![rat(1, 256), rat(0, 1), rat(-1, 1)]));
        let f2 = RationalFunction::from_poly(Polynomial::new(vec![rat(1, 16), rat(0, 1), rat(-1, 1)]));
        let one_minus = Polynomial::from_ints(&[1, 0, -1]);
        let one_plus = Polynomial::from_ints(&[1, 0, 1]);
        let f3_sq = RationalFunction::new(one_minus.pow(2).scale(&rat(1, 8)), one_plus.pow(2));
        // f2 is even, so it is a polynomial in mu'^2 and composes with mu'^2 directly
        let f2_even = RationalFunction::from_poly(Polynomial::new(vec![rat(1, 16), rat(-1, 1)]));
        let f2_f3 = f2_even.compose(&f3_sq);
        // lambda = (1/16) nu^2 (1 - nu^2)^2 / (1 + nu^2)^4
        let num = (&Polynomial::from_ints(&[0, 0, 1]) * &one_minus.pow(2)).scale(&rat(1, 16));
        let lambda_of_nu = RationalFunction::new(num, one_plus.pow(4));
        CoverTower { f1, f2, f3_squared_composite: f3_sq, f2_f3_composite: f2_f3, lambda_of_nu }
    }

    /// `f1 ∘ (f2 ∘ f3)`, computed by composition rather than from the closed form.
    pub fn composed(&self) -> RationalFunction {
        self.f1.compose(&self.f2_f3_composite)
    }
}

pub fn lambda_of_nu(nu: &Rational) -> Result<Rational> {
    CoverTower::new().lambda_of_nu.eval(nu)
}

/// Complex evaluation at the working precision of `nu`; `nu^2 + 1 = 0` is a pole.
pub fn lambda_of_nu_complex(nu: &Complex) -> Result<Complex> {
    eval_ratfunc_complex(&CoverTower::new().lambda_of_nu, nu)
}
