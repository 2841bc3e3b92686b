//! Places of the projective line over the rationals.

use std::fmt;

use super::{Polynomial, Rational};

/// A closed point of the projective line over Q: either the point at
/// infinity or the orbit of Galois-conjugate roots of a monic irreducible
/// polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Place {
    Finite(Polynomial),
    Infinity,
}

impl Place {
    /// The place of a rational point `x = r`.
    pub fn rational(r: Rational) -> Self {
        Place::Finite(Polynomial::linear_root(r))
    }

    /// The place cut out by `p`, normalised to be monic. The caller is
    /// responsible for irreducibility.
    pub fn finite(p: &Polynomial) -> Self {
        assert!(!p.is_constant(), "a place needs a non-constant polynomial");
        Place::Finite(p.monic())
    }

    pub fn minimal_polynomial(&self) -> Option<&Polynomial> {
        match self {
            Place::Finite(p) => Some(p),
            Place::Infinity => None,
        }
    }

    /// Number of geometric points in the place.
    pub fn degree(&self) -> usize {
        match self {
            Place::Finite(p) => p.deg(),
            Place::Infinity => 1,
        }
    }

    /// Image under the Möbius map `x -> (a x + b) / (c x + d)` (determinant nonzero).
    pub fn mobius_image(&self, a: i64, b: i64, c: i64, d: i64) -> Place {
        let inverse = (d, -b, -c, a);
        match self {
            Place::Infinity => {
                if c == 0 {
                    Place::Infinity
                } else {
                    Place::rational(Rational::new(a.into(), c.into()))
                }
            }
            Place::Finite(m) => {
                // roots y of the image satisfy m(inverse(y)) = 0
                let (ia, ib, ic, id) = inverse;
                let num = Polynomial::from_ints(&[ib, ia]);
                let den = Polynomial::from_ints(&[id, ic]);
                let k = m.deg();
                let mut acc = Polynomial::zero();
                for (i, coef) in m.coeffs().iter().enumerate() {
                    let term = &num.pow(i as u32) * &den.pow((k - i) as u32);
                    acc = &acc + &term.scale(coef);
                }
                if acc.is_constant() {
                    Place::Infinity
                } else {
                    Place::finite(&acc)
                }
            }
        }
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Finite(p) => write!(f, "{}", p),
            Place::Infinity => write!(f, "inf"),
        }
    }
}
