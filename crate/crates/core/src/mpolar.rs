//! Parameter arithmetic for M-polarized K3 surfaces in normal form.
//!
//! A surface is described by weighted parameters `(a, b, d)` of weights
//! `(2, 3, 6)` with `d != 0`. After normalizing `d = 1` the invariants
//! `sigma = a^3 - b^2 + 1` and `pi = a^3` are the elementary symmetric
//! functions of the j-invariants of the two associated elliptic curves.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exact_algebra::{rat, Polynomial, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModularParams {
    pub a: Rational,
    pub b: Rational,
    pub d: Rational,
}

impl ModularParams {
    pub fn new(a: Rational, b: Rational, d: Rational) -> Result<Self> {
        if d.is_zero() {
            return Err(Error::Cusp);
        }
        Ok(ModularParams { a, b, d })
    }
}

/// Weight-invariant combinations of `(a, b, d)`.
///
/// `a_cubed = a^3/d` and `b_squared = b^2/d` are always rational; the
/// normalized `a = a/d^(1/3)` is rational exactly when `d` is a rational cube.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalizedParams {
    pub a: Option<Rational>,
    pub a_cubed: Rational,
    pub b_squared: Rational,
}

impl NormalizedParams {
    pub fn sigma_pi(&self) -> SigmaPi {
        SigmaPi {
            sigma: &self.a_cubed - &self.b_squared + Rational::from_integer(1.into()),
            pi: self.a_cubed.clone(),
        }
    }

    /// `(a^3 - (b-1)^2)(a^3 - (b+1)^2)` expressed through `a^3` and `b^2`.
    pub fn discriminant(&self) -> Rational {
        let sp = self.sigma_pi();
        &sp.sigma * &sp.sigma - rat(4, 1) * &sp.pi
    }
}

fn rational_cbrt(q: &Rational) -> Option<Rational> {
    let cbrt_int = |n: &BigInt| {
        let r = n.cbrt();
        (&r * &r * &r == *n).then_some(r)
    };
    Some(Rational::new(cbrt_int(q.numer())?, cbrt_int(q.denom())?))
}

/// Normalizes away `d`. Rejects `d = 0` (the cusp).
pub fn normalize(p: &ModularParams) -> Result<NormalizedParams> {
    if p.d.is_zero() {
        return Err(Error::Cusp);
    }
    let a = rational_cbrt(&p.d).map(|c| &p.a / c);
    Ok(NormalizedParams {
        a,
        a_cubed: &p.a * &p.a * &p.a / &p.d,
        b_squared: &p.b * &p.b / &p.d,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaPi {
    pub sigma: Rational,
    pub pi: Rational,
}

/// `sigma = a^3 - b^2 + 1`, `pi = a^3` for normalized `(a, b)`.
pub fn sigma_pi(a: &Rational, b: &Rational) -> SigmaPi {
    let a3 = a * a * a;
    SigmaPi { sigma: &a3 - b * b + rat(1, 1), pi: a3 }
}

/// `(a^3 - (b-1)^2)(a^3 - (b+1)^2)`, the discriminant of `j^2 - sigma j + pi`.
pub fn discriminant_delta(a: &Rational, b: &Rational) -> Rational {
    let a3 = a * a * a;
    let one = rat(1, 1);
    let bm = b - &one;
    let bp = b + &one;
    (&a3 - &bm * &bm) * (&a3 - &bp * &bp)
}

/// `P(x) = 4x^3 - 3ax - b`.
pub fn cubic_p(a: &Rational, b: &Rational) -> Polynomial {
    Polynomial::new(vec![-b.clone(), rat(-3, 1) * a, Rational::zero(), rat(4, 1)])
}

/// `(P - 1, P + 1)`: their six roots locate the I2 fibres of the induced
/// fibration on the Kummer surface.
pub fn fiber_locus(a: &Rational, b: &Rational) -> (Polynomial, Polynomial) {
    let p = cubic_p(a, b);
    let one = Polynomial::constant(rat(1, 1));
    (&p - &one, &p + &one)
}

/// The six roots of `(P - 1)(P + 1)` are pairwise distinct iff `a^3 != (b ± 1)^2`.
pub fn six_distinct_roots(a: &Rational, b: &Rational) -> bool {
    !discriminant_delta(a, b).is_zero()
}

/// `rational + coeff * sqrt(radicand)`, kept exact.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticSurd {
    pub rational: Rational,
    pub coeff: Rational,
    pub radicand: Rational,
}

impl QuadraticSurd {
    /// Collapses to a rational when the radicand is a rational square or the
    /// surd coefficient vanishes.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.coeff.is_zero() || self.radicand.is_zero() {
            return Some(self.rational.clone());
        }
        rational_sqrt(&self.radicand).map(|r| &self.rational + &self.coeff * r)
    }

    pub fn to_f64(&self) -> (f64, f64) {
        use num_traits::ToPrimitive;
        let r = self.rational.to_f64().unwrap();
        let c = self.coeff.to_f64().unwrap();
        let d = self.radicand.to_f64().unwrap();
        if d >= 0.0 {
            (r + c * d.sqrt(), 0.0)
        } else {
            (r, c * (-d).sqrt())
        }
    }
}

impl fmt::Display for QuadraticSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_rational() {
            Some(q) => write!(f, "{}", q),
            None => write!(f, "{} + ({})*sqrt({})", self.rational, self.coeff, self.radicand),
        }
    }
}

pub fn rational_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let sqrt_int = |n: &BigInt| {
        let r = n.sqrt();
        (&r * &r == *n).then_some(r)
    };
    Some(Rational::new(sqrt_int(q.numer())?, sqrt_int(q.denom())?))
}

/// The two roots of `j^2 - sigma j + pi = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JPair {
    pub plus: QuadraticSurd,
    pub minus: QuadraticSurd,
}

impl JPair {
    /// Exact sum of conjugates (the surd parts cancel).
    pub fn sum(&self) -> Rational {
        debug_assert_eq!(self.plus.radicand, self.minus.radicand);
        debug_assert!((&self.plus.coeff + &self.minus.coeff).is_zero());
        &self.plus.rational + &self.minus.rational
    }

    /// Exact product of conjugates: `r^2 - c^2 D`.
    pub fn product(&self) -> Rational {
        &self.plus.rational * &self.minus.rational
            + &self.plus.coeff * &self.minus.coeff * &self.plus.radicand
    }

    pub fn is_double_root(&self) -> bool {
        self.plus.radicand.is_zero()
    }
}

pub fn j_pair(sp: &SigmaPi) -> JPair {
    let half = rat(1, 2);
    let radicand = &sp.sigma * &sp.sigma - rat(4, 1) * &sp.pi;
    let rational = &sp.sigma * &half;
    JPair {
        plus: QuadraticSurd { rational: rational.clone(), coeff: half.clone(), radicand: radicand.clone() },
        minus: QuadraticSurd { rational, coeff: -half, radicand },
    }
}
