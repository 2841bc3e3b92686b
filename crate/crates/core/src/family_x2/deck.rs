//! The dihedral deck group of the 8-fold cover `nu -> lambda`.

use std::fmt;

use crate::exact_algebra::{Place, RationalFunction};
use crate::perm::Permutation;

/// Label action of `alpha: nu -> (nu - 1)/(nu + 1)`.
pub const ALPHA_LABELS: &str = "(1524)(36)";
/// Label action of `beta: nu -> -nu`.
pub const BETA_LABELS: &str = "(14)(25)(36)";

/// `alpha^i beta^j` in normal form, `i in 0..4`, `j in 0..2`. As a map,
/// `beta^j` is applied first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeckElement {
    pub i: u8,
    pub j: u8,
    pub base_map: RationalFunction,
    /// `[a, b, c, d]` for `(a nu + b)/(c nu + d)`, up to scale.
    pub matrix: [i64; 4],
    pub label_perm: Permutation,
}

fn mat_mul(x: [i64; 4], y: [i64; 4]) -> [i64; 4] {
    let [a, b, c, d] = x;
    let [e, f, g, h] = y;
    let m = [a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h];
    let g = m.iter().fold(0i64, |acc, &v| num_integer::gcd(acc, v)).max(1);
    m.map(|v| v / g)
}

/// Builds `alpha^i beta^j` with exponents reduced mod 4 and mod 2.
pub fn deck_element(i: i64, j: i64) -> DeckElement {
    let i = i.rem_euclid(4) as u8;
    let j = j.rem_euclid(2) as u8;
    let alpha = [1, -1, 1, 1];
    let beta = [-1, 0, 0, 1];
    let alpha_p = Permutation::parse(ALPHA_LABELS, 6).expect("valid literal");
    let beta_p = Permutation::parse(BETA_LABELS, 6).expect("valid literal");
    let mut matrix = [1, 0, 0, 1];
    let mut perm = Permutation::identity(6);
    for _ in 0..j {
        matrix = mat_mul(beta, matrix);
        perm = beta_p.compose(&perm);
    }
    for _ in 0..i {
        matrix = mat_mul(alpha, matrix);
        perm = alpha_p.compose(&perm);
    }
    let [a, b, c, d] = matrix;
    DeckElement { i, j, base_map: RationalFunction::mobius(a, b, c, d), matrix, label_perm: perm }
}

pub fn all_deck_elements() -> Vec<DeckElement> {
    (0..2).flat_map(|j| (0..4).map(move |i| deck_element(i, j))).collect()
}

impl DeckElement {
    pub fn identity() -> Self {
        deck_element(0, 0)
    }

    /// `self ∘ other`, reduced with `beta alpha^k = alpha^(-k) beta`.
    pub fn compose(&self, other: &DeckElement) -> DeckElement {
        let sign = if self.j == 0 { 1 } else { -1 };
        deck_element(self.i as i64 + sign * other.i as i64, (self.j + other.j) as i64)
    }

    pub fn inverse(&self) -> DeckElement {
        if self.j == 0 {
            deck_element(-(self.i as i64), 0)
        } else {
            self.clone()
        }
    }

    pub fn is_identity(&self) -> bool {
        self.i == 0 && self.j == 0
    }

    /// Image of a place of the nu-line under the base map.
    pub fn map_place(&self, place: &Place) -> Place {
        let [a, b, c, d] = self.matrix;
        place.mobius_image(a, b, c, d)
    }
}

impl fmt::Display for DeckElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.i, self.j) {
            (0, 0) => write!(f, "id"),
            (0, _) => write!(f, "b"),
            (1, 0) => write!(f, "a"),
            (1, _) => write!(f, "ab"),
            (i, 0) => write!(f, "a^{}", i),
            (i, _) => write!(f, "a^{}b", i),
        }
    }
}
