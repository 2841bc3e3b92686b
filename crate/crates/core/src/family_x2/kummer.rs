//! The affine Kummer model
//! `u^2 = s(s - 1)(s - c^2) t(t - 1)(t - nu^2)` with `c = (nu + 1)/(nu - 1)`,
//! and its coordinate involutions.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rug::Float;

use crate::error::{Error, Result};
use crate::exact_algebra::{Polynomial, Rational, RationalFunction};
use crate::numeric::float;

/// Relative tolerance for the on-surface test with floating coordinates.
pub const FLOAT_TOLERANCE: f64 = 1e-20;

/// Field operations needed to move points around; implemented for exact
/// rationals and for MPFR floats.
pub trait KummerScalar: Clone + std::fmt::Debug {
    /// Lifts a rational constant, matching the precision of `self`.
    fn lift(&self, q: &Rational) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    /// `None` when `o` vanishes (exactly, or to working precision).
    fn div(&self, o: &Self) -> Option<Self>;
    /// Whether `residual` is zero relative to `scale`.
    fn negligible(residual: &Self, scale: &Self) -> bool;
}

impl KummerScalar for Rational {
    fn lift(&self, q: &Rational) -> Self {
        q.clone()
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Option<Self> {
        (!o.is_zero()).then(|| self / o)
    }
    fn negligible(residual: &Self, _scale: &Self) -> bool {
        residual.is_zero()
    }
}

impl KummerScalar for Float {
    fn lift(&self, q: &Rational) -> Self {
        float(self.prec(), q)
    }
    fn add(&self, o: &Self) -> Self {
        Float::with_val(self.prec(), self + o)
    }
    fn sub(&self, o: &Self) -> Self {
        Float::with_val(self.prec(), self - o)
    }
    fn mul(&self, o: &Self) -> Self {
        Float::with_val(self.prec(), self * o)
    }
    fn div(&self, o: &Self) -> Option<Self> {
        let eps = Float::with_val(self.prec(), Float::i_exp(1, -((self.prec() / 2) as i32)));
        (Float::with_val(self.prec(), o.abs_ref()) > eps).then(|| Float::with_val(self.prec(), self / o))
    }
    fn negligible(residual: &Self, scale: &Self) -> bool {
        let bound = Float::with_val(scale.prec(), scale.abs_ref()).max(&Float::with_val(scale.prec(), 1))
            * FLOAT_TOLERANCE;
        Float::with_val(residual.prec(), residual.abs_ref()) <= bound
    }
}

fn eval_poly<T: KummerScalar>(p: &Polynomial, x: &T) -> T {
    let mut acc = x.lift(&Rational::zero());
    for c in p.coeffs().iter().rev() {
        acc = acc.mul(x).add(&x.lift(c));
    }
    acc
}

fn eval_rf<T: KummerScalar>(f: &RationalFunction, x: &T) -> Result<T> {
    eval_poly(f.numerator(), x)
        .div(&eval_poly(f.denominator(), x))
        .ok_or_else(|| Error::Pole(format!("{:?} at {:?}", f.to_string(), x)))
}

#[derive(Clone, Debug, PartialEq)]
pub struct KummerPoint<T> {
    pub nu: T,
    pub s: T,
    pub t: T,
    pub u: T,
}

/// `c(nu) = (nu + 1)/(nu - 1)`.
fn kummer_c() -> RationalFunction {
    RationalFunction::mobius(1, 1, 1, -1)
}

impl<T: KummerScalar> KummerPoint<T> {
    pub fn new(nu: T, s: T, t: T, u: T) -> Self {
        KummerPoint { nu, s, t, u }
    }

    /// `(u^2, s(s-1)(s-c^2) t(t-1)(t-nu^2))`.
    fn sides(&self) -> Result<(T, T)> {
        let one = self.nu.lift(&Rational::one());
        let c = eval_rf(&kummer_c(), &self.nu)?;
        let c2 = c.mul(&c);
        let nu2 = self.nu.mul(&self.nu);
        let s_part = self.s.mul(&self.s.sub(&one)).mul(&self.s.sub(&c2));
        let t_part = self.t.mul(&self.t.sub(&one)).mul(&self.t.sub(&nu2));
        Ok((self.u.mul(&self.u), s_part.mul(&t_part)))
    }

    /// Exact equality for rationals; relative tolerance [`FLOAT_TOLERANCE`] for floats.
    pub fn is_on_surface(&self) -> Result<bool> {
        let (lhs, rhs) = self.sides()?;
        let scale = if T::negligible(&lhs, &rhs) { rhs.clone() } else { lhs.clone() };
        Ok(T::negligible(&lhs.sub(&rhs), &scale))
    }
}

impl KummerPoint<Float> {
    /// The `u` with the given sign that puts `(nu, s, t)` on the surface;
    /// `None` if the right-hand side is negative.
    pub fn lift_u(nu: Float, s: Float, t: Float, positive: bool) -> Result<Option<Self>> {
        let prec = nu.prec();
        let probe = KummerPoint { nu: nu.clone(), s: s.clone(), t: t.clone(), u: Float::new(prec) };
        let (_, rhs) = probe.sides()?;
        if rhs.is_sign_negative() {
            return Ok(None);
        }
        let mut u = rhs.sqrt();
        if !positive {
            u = -u;
        }
        Ok(Some(KummerPoint { nu, s, t, u }))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SourceCoord {
    S,
    T,
}

/// `(nu, s, t, u) -> (base(nu), s_coef(nu) * src_s, t_coef(nu) * src_t, u_coef(nu) * u)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoordinateMap {
    pub base: RationalFunction,
    pub s: (SourceCoord, RationalFunction),
    pub t: (SourceCoord, RationalFunction),
    pub u: RationalFunction,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Involution {
    Beta,
    Iota,
    /// Composite `iota ∘ beta`; its base map agrees with `alpha`.
    IotaPrime,
}

impl Involution {
    pub fn map(&self) -> CoordinateMap {
        let one = RationalFunction::from_int(1);
        let w = RationalFunction::mobius(1, -1, 1, 1);
        let w2 = &w * &w;
        let w3 = &w2 * &w;
        match self {
            Involution::Beta => CoordinateMap {
                base: RationalFunction::mobius(-1, 0, 0, 1),
                s: (SourceCoord::S, w2),
                t: (SourceCoord::T, one),
                u: w3,
            },
            Involution::Iota => CoordinateMap {
                base: RationalFunction::mobius(1, 1, 1, -1),
                s: (SourceCoord::T, one.clone()),
                t: (SourceCoord::S, one.clone()),
                u: one,
            },
            Involution::IotaPrime => CoordinateMap {
                base: w,
                s: (SourceCoord::T, one),
                t: (SourceCoord::S, w2),
                u: w3,
            },
        }
    }
}

impl CoordinateMap {
    pub fn identity() -> Self {
        let one = RationalFunction::from_int(1);
        CoordinateMap {
            base: RationalFunction::x(),
            s: (SourceCoord::S, one.clone()),
            t: (SourceCoord::T, one.clone()),
            u: one,
        }
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }

    /// `self ∘ inner`: apply `inner` first.
    pub fn compose(&self, inner: &CoordinateMap) -> CoordinateMap {
        let pick = |c: SourceCoord| match c {
            SourceCoord::S => &inner.s,
            SourceCoord::T => &inner.t,
        };
        let through = |(c, coef): &(SourceCoord, RationalFunction)| {
            let (src, inner_coef) = pick(*c);
            (*src, &coef.compose(&inner.base) * inner_coef)
        };
        CoordinateMap {
            base: self.base.compose(&inner.base),
            s: through(&self.s),
            t: through(&self.t),
            u: &self.u.compose(&inner.base) * &inner.u,
        }
    }

    pub fn apply<T: KummerScalar>(&self, p: &KummerPoint<T>) -> Result<KummerPoint<T>> {
        let pick = |c: SourceCoord| match c {
            SourceCoord::S => &p.s,
            SourceCoord::T => &p.t,
        };
        Ok(KummerPoint {
            nu: eval_rf(&self.base, &p.nu)?,
            s: eval_rf(&self.s.1, &p.nu)?.mul(pick(self.s.0)),
            t: eval_rf(&self.t.1, &p.nu)?.mul(pick(self.t.0)),
            u: eval_rf(&self.u, &p.nu)?.mul(&p.u),
        })
    }

    /// Pulls the equation back along the map, as a polynomial in the old
    /// `(s, t, u)` with coefficients in Q(nu).
    pub fn pull_back(&self, eq: &KummerEquation) -> KummerEquation {
        let mut out: BTreeMap<[u32; 3], RationalFunction> = BTreeMap::new();
        for (&[i, j, k], coef) in &eq.terms {
            let mut c = coef.compose(&self.base);
            c = &c * &self.s.1.pow(i as i32).expect("nonzero coefficient");
            c = &c * &self.t.1.pow(j as i32).expect("nonzero coefficient");
            c = &c * &self.u.pow(k as i32).expect("nonzero coefficient");
            let mut exps = [0u32, 0, k];
            exps[self.s.0 as usize] += i;
            exps[self.t.0 as usize] += j;
            let slot = out.entry(exps).or_insert_with(RationalFunction::zero);
            *slot = &*slot + &c;
        }
        out.retain(|_, c| !c.is_zero());
        KummerEquation { terms: out }
    }
}

pub fn apply_involution<T: KummerScalar>(which: Involution, p: &KummerPoint<T>) -> Result<KummerPoint<T>> {
    which.map().apply(p)
}

/// A polynomial in `(s, t, u)` over Q(nu), keyed by exponent triples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KummerEquation {
    pub terms: BTreeMap<[u32; 3], RationalFunction>,
}

impl KummerEquation {
    /// The unit `m(nu)` with `self = m * other`, if there is one.
    pub fn multiplier_over(&self, other: &KummerEquation) -> Option<RationalFunction> {
        if self.terms.len() != other.terms.len() {
            return None;
        }
        let (key, c0) = other.terms.iter().next()?;
        let m = self.terms.get(key)? / c0;
        let consistent = other
            .terms
            .iter()
            .all(|(k, c)| self.terms.get(k).is_some_and(|d| *d == &m * c));
        consistent.then_some(m)
    }
}

/// `u^2 - s(s-1)(s-c^2) t(t-1)(t-nu^2)`.
pub fn kummer_equation() -> KummerEquation {
    let c = kummer_c();
    let c2 = &c * &c;
    let one = RationalFunction::from_int(1);
    let nu2 = RationalFunction::from_poly(Polynomial::from_ints(&[0, 0, 1]));
    // s^3 - (1 + c^2) s^2 + c^2 s, likewise in t with nu^2
    let cubic = |k: &RationalFunction| vec![(1u32, k.clone()), (2, -(&one + k)), (3, one.clone())];
    let mut terms = BTreeMap::new();
    terms.insert([0, 0, 2], one.clone());
    for (i, a) in cubic(&c2) {
        for (j, b) in cubic(&nu2) {
            terms.insert([i, j, 0], -(&a * &b));
        }
    }
    KummerEquation { terms }
}
