//! Kodaira classification of singular fibres of elliptic surfaces over the
//! projective line, for Weierstrass families `y^2 = x^3 + a2 x^2 + a4 x + a6`
//! with coefficients in Q(nu).
//!
//! Fibres are classified per place (Galois orbit of points) from the
//! valuations of `c4`, `c6` and the discriminant on a minimal model. In
//! residue characteristic zero these three valuations determine the type.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact_algebra::{irreducible_factors, rat, Place, Polynomial, RationalFunction};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeierstrassFamily {
    pub a2: RationalFunction,
    pub a4: RationalFunction,
    pub a6: RationalFunction,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CInvariants {
    pub c4: RationalFunction,
    pub c6: RationalFunction,
    /// `(c4^3 - c6^2) / 1728`
    pub discriminant: RationalFunction,
}

impl WeierstrassFamily {
    pub fn new(a2: RationalFunction, a4: RationalFunction, a6: RationalFunction) -> Self {
        WeierstrassFamily { a2, a4, a6 }
    }

    /// The family obtained by substituting `nu -> m(nu)` in every coefficient.
    pub fn precompose(&self, m: &RationalFunction) -> Self {
        WeierstrassFamily {
            a2: self.a2.compose(m),
            a4: self.a4.compose(m),
            a6: self.a6.compose(m),
        }
    }

    pub fn c_invariants(&self) -> CInvariants {
        c_invariants(self)
    }

    /// `J = c4^3 / (1728 Δ)`, normalized so that `J = 1` where `c6 = 0` and
    /// `J = 0` where `c4 = 0`.
    pub fn j_invariant(&self) -> Result<RationalFunction> {
        let c = self.c_invariants();
        if c.discriminant.is_zero() {
            return Err(Error::DegenerateFamily);
        }
        let c4_cubed = c.c4.pow(3)?;
        Ok(&c4_cubed / &(&RationalFunction::from_int(1728) * &c.discriminant))
    }
}

/// Standard Weierstrass formulary specialised to `a1 = a3 = 0`.
pub fn c_invariants(w: &WeierstrassFamily) -> CInvariants {
    let k = RationalFunction::from_int;
    let b2 = &k(4) * &w.a2;
    let b4 = &k(2) * &w.a4;
    let b6 = &k(4) * &w.a6;
    let c4 = &(&b2 * &b2) - &(&k(24) * &b4);
    let b2_cubed = &(&b2 * &b2) * &b2;
    let c6 = &(&(-&b2_cubed) + &(&(&k(36) * &b2) * &b4)) - &(&k(216) * &b6);
    let c4_cubed = &(&c4 * &c4) * &c4;
    let discriminant = &(&c4_cubed - &(&c6 * &c6)) * &RationalFunction::constant(rat(1, 1728));
    CInvariants { c4, c6, discriminant }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum KodairaType {
    /// `I_n`; `I_0` is a smooth fibre and is never emitted.
    I(u32),
    IStar(u32),
    II,
    III,
    IV,
    IIStar,
    IIIStar,
    IVStar,
}

impl KodairaType {
    /// Topological Euler number of the fibre.
    pub fn euler_number(&self) -> u32 {
        match *self {
            KodairaType::I(n) => n,
            KodairaType::IStar(n) => n + 6,
            KodairaType::II => 2,
            KodairaType::III => 3,
            KodairaType::IV => 4,
            KodairaType::IVStar => 8,
            KodairaType::IIIStar => 9,
            KodairaType::IIStar => 10,
        }
    }
}

impl fmt::Display for KodairaType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KodairaType::I(n) => write!(f, "I{}", n),
            KodairaType::IStar(n) => write!(f, "I{}*", n),
            KodairaType::II => write!(f, "II"),
            KodairaType::III => write!(f, "III"),
            KodairaType::IV => write!(f, "IV"),
            KodairaType::IIStar => write!(f, "II*"),
            KodairaType::IIIStar => write!(f, "III*"),
            KodairaType::IVStar => write!(f, "IV*"),
        }
    }
}

/// A singular fibre over a place, with valuations on a minimal model
/// (`None` stands for a coefficient vanishing identically).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KodairaFiber {
    pub place: Place,
    pub kind: KodairaType,
    pub v_c4: Option<i64>,
    pub v_c6: Option<i64>,
    pub v_disc: i64,
}

fn valuation(f: &RationalFunction, place: &Place) -> Result<Option<i64>> {
    if f.is_zero() {
        return Ok(None);
    }
    f.order_at(place).map(Some)
}

/// Valuations `(v(c4), v(c6), v(Δ))` after the twist `(x, y) -> (u^2 x, u^3 y)`
/// that makes the model integral and minimal at `place`.
pub fn minimal_valuations(c: &CInvariants, place: &Place) -> Result<(Option<i64>, Option<i64>, i64)> {
    let v4 = valuation(&c.c4, place)?;
    let v6 = valuation(&c.c6, place)?;
    let vd = valuation(&c.discriminant, place)?.ok_or(Error::DegenerateFamily)?;
    // k = floor(min(v4/4, v6/6))
    let shift = [v4.map(|v| v.div_euclid(4)), v6.map(|v| v.div_euclid(6))]
        .into_iter()
        .flatten()
        .min()
        .ok_or(Error::DegenerateFamily)?;
    Ok((v4.map(|v| v - 4 * shift), v6.map(|v| v - 6 * shift), vd - 12 * shift))
}

/// Kodaira type from minimal valuations, or `None` for a smooth fibre.
pub fn kodaira_type(v4: Option<i64>, v_disc: i64) -> Option<KodairaType> {
    if v_disc == 0 {
        return None;
    }
    if v4 == Some(0) {
        return Some(KodairaType::I(v_disc as u32));
    }
    // additive reduction: v(j) = 3 v(c4) - v(Δ)
    if let Some(v4) = v4 {
        let vj = 3 * v4 - v_disc;
        if vj < 0 {
            return Some(KodairaType::IStar((-vj) as u32));
        }
    }
    Some(match v_disc {
        2 => KodairaType::II,
        3 => KodairaType::III,
        4 => KodairaType::IV,
        6 => KodairaType::IStar(0),
        8 => KodairaType::IVStar,
        9 => KodairaType::IIIStar,
        10 => KodairaType::IIStar,
        other => unreachable!("v(Δ) = {} is impossible on a minimal model in characteristic 0", other),
    })
}

fn candidate_places(c: &CInvariants) -> Result<Vec<Place>> {
    let mut places: Vec<Place> = Vec::new();
    let polys: Vec<&Polynomial> = [&c.c4, &c.c6, &c.discriminant]
        .iter()
        .filter(|f| !f.is_zero())
        .flat_map(|f| [f.numerator(), f.denominator()])
        .collect();
    for p in polys {
        for (place, _) in irreducible_factors(p)? {
            if !places.contains(&place) {
                places.push(place);
            }
        }
    }
    places.sort_by(|a, b| {
        let (pa, pb) = (a.minimal_polynomial().unwrap(), b.minimal_polynomial().unwrap());
        pa.deg().cmp(&pb.deg()).then_with(|| pa.coeffs().cmp(pb.coeffs()))
    });
    places.push(Place::Infinity);
    Ok(places)
}

/// All singular fibres, finite places first (by degree, then coefficients),
/// the place at infinity last.
pub fn classify(w: &WeierstrassFamily) -> Result<Vec<KodairaFiber>> {
    let c = c_invariants(w);
    if c.discriminant.is_zero() {
        return Err(Error::DegenerateFamily);
    }
    let mut out = Vec::new();
    for place in candidate_places(&c)? {
        let (v4, v6, vd) = minimal_valuations(&c, &place)?;
        if let Some(kind) = kodaira_type(v4, vd) {
            out.push(KodairaFiber { place, kind, v_c4: v4, v_c6: v6, v_disc: vd });
        }
    }
    Ok(out)
}
