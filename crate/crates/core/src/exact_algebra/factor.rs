//! Factorization of univariate polynomials over the rationals.
//!
//! Squarefree decomposition (Yun) followed by Zassenhaus on each squarefree
//! part: factor modulo a small prime by distinct-degree and Cantor-Zassenhaus
//! equal-degree splitting, Hensel-lift to a power of the prime above the
//! Mignotte bound, then recombine lifted factors by trial division over Z.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Place, Polynomial};
use crate::error::{Error, Result};

/// Complete factorization of `p` into places (monic irreducible factors)
/// with multiplicities, sorted by degree then coefficients. Constants give
/// an empty list.
pub fn irreducible_factors(p: &Polynomial) -> Result<Vec<(Place, usize)>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut out = Vec::new();
    for (part, mult) in squarefree_decomposition(p) {
        for factor in factor_squarefree(&part.primitive_integer()) {
            out.push((Place::finite(&Polynomial::from_bigints(&factor)), mult));
        }
    }
    out.sort_by(|(a, _), (b, _)| {
        let (pa, pb) = (a.minimal_polynomial().unwrap(), b.minimal_polynomial().unwrap());
        pa.deg().cmp(&pb.deg()).then_with(|| pa.coeffs().cmp(pb.coeffs()))
    });
    Ok(out)
}

/// Yun's algorithm: `p = c * prod f_i^i` with each `f_i` monic, squarefree and
/// pairwise coprime. Only non-constant parts are returned.
pub fn squarefree_decomposition(p: &Polynomial) -> Vec<(Polynomial, usize)> {
    let mut out = Vec::new();
    if p.is_constant() {
        return out;
    }
    let a = p.monic();
    let b = a.derivative();
    let c = a.gcd(&b);
    let mut w = a.exact_div(&c).unwrap();
    let mut y = b.exact_div(&c).unwrap();
    let mut z = &y - &w.derivative();
    let mut i = 1;
    while !w.is_constant() {
        let g = w.gcd(&z);
        if !g.is_constant() {
            out.push((g.clone(), i));
        }
        w = w.exact_div(&g).unwrap();
        y = z.exact_div(&g).unwrap();
        z = &y - &w.derivative();
        i += 1;
    }
    out
}

/// Irreducible factors over Z of a primitive squarefree polynomial with
/// positive leading coefficient (ascending coefficients).
pub fn factor_squarefree(f: &[BigInt]) -> Vec<Vec<BigInt>> {
    let n = f.len() - 1;
    if n <= 1 {
        return vec![f.to_vec()];
    }
    let lc = f[n].clone();

    let (p, modp_factors) = choose_prime(f);
    if modp_factors.len() == 1 {
        return vec![f.to_vec()];
    }

    // any factor of lc*f has coefficients below |lc| * 2^n * ||f||_2
    let norm_sq: BigInt = f.iter().map(|c| c * c).sum();
    let norm = norm_sq.sqrt() + BigInt::one();
    let bound = BigInt::from(2) * lc.abs() * (BigInt::one() << n) * norm;
    let pb = BigInt::from(p);
    let mut k = 1u32;
    let mut modulus = pb.clone();
    while modulus <= bound {
        modulus *= &pb;
        k += 1;
    }

    let lifted = multi_lift(f, &modp_factors, p, k);
    recombine(f, lifted, &modulus)
}

// ---------------------------------------------------------------------------
// Polynomials over F_p, ascending u64 coefficients in [0, p).

type ModPoly = Vec<u64>;

fn trim(mut a: ModPoly) -> ModPoly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn mp_deg(a: &ModPoly) -> usize {
    a.len().saturating_sub(1)
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, p);
        }
        b = mul_mod(b, b, p);
        e >>= 1;
    }
    r
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn mp_from_int(f: &[BigInt], p: u64) -> ModPoly {
    let pb = BigInt::from(p);
    trim(f.iter().map(|c| c.mod_floor(&pb).to_u64().unwrap()).collect())
}

fn mp_sub(a: &ModPoly, b: &ModPoly, p: u64) -> ModPoly {
    let n = a.len().max(b.len());
    trim((0..n)
        .map(|i| (a.get(i).copied().unwrap_or(0) + p - b.get(i).copied().unwrap_or(0)) % p)
        .collect())
}

fn mp_mul(a: &ModPoly, b: &ModPoly, p: u64) -> ModPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mul_mod(x, y, p)) % p;
        }
    }
    trim(out)
}

fn mp_scale(a: &ModPoly, c: u64, p: u64) -> ModPoly {
    trim(a.iter().map(|&x| mul_mod(x, c, p)).collect())
}

fn mp_monic(a: &ModPoly, p: u64) -> ModPoly {
    match a.last() {
        Some(&lc) => mp_scale(a, inv_mod(lc, p), p),
        None => Vec::new(),
    }
}

fn mp_divrem(a: &ModPoly, b: &ModPoly, p: u64) -> (ModPoly, ModPoly) {
    assert!(!b.is_empty());
    if a.len() < b.len() {
        return (Vec::new(), a.clone());
    }
    let db = b.len() - 1;
    let inv = inv_mod(*b.last().unwrap(), p);
    let mut r = a.clone();
    let mut q = vec![0u64; a.len() - db];
    for k in (0..q.len()).rev() {
        let c = mul_mod(r[k + db], inv, p);
        q[k] = c;
        if c != 0 {
            for (i, &bi) in b.iter().enumerate() {
                r[k + i] = (r[k + i] + p - mul_mod(c, bi, p)) % p;
            }
        }
    }
    r.truncate(db);
    (trim(q), trim(r))
}

fn mp_rem(a: &ModPoly, b: &ModPoly, p: u64) -> ModPoly {
    mp_divrem(a, b, p).1
}

fn mp_gcd(a: &ModPoly, b: &ModPoly, p: u64) -> ModPoly {
    let mut a = a.clone();
    let mut b = b.clone();
    while !b.is_empty() {
        let r = mp_rem(&a, &b, p);
        a = b;
        b = r;
    }
    mp_monic(&a, p)
}

/// Returns `(s, t)` with `s a + t b = 1` for coprime `a`, `b`.
fn mp_bezout(a: &ModPoly, b: &ModPoly, p: u64) -> (ModPoly, ModPoly) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1): (ModPoly, ModPoly) = (vec![1], Vec::new());
    let (mut t0, mut t1): (ModPoly, ModPoly) = (Vec::new(), vec![1]);
    while !r1.is_empty() {
        let (q, r) = mp_divrem(&r0, &r1, p);
        let s2 = mp_sub(&s0, &mp_mul(&q, &s1, p), p);
        let t2 = mp_sub(&t0, &mp_mul(&q, &t1, p), p);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    assert_eq!(r0.len(), 1, "Bezout inputs not coprime");
    let inv = inv_mod(r0[0], p);
    (mp_scale(&s0, inv, p), mp_scale(&t0, inv, p))
}

fn mp_powmod(base: &ModPoly, exp: &BigUint, modulus: &ModPoly, p: u64) -> ModPoly {
    let mut result: ModPoly = vec![1];
    let base = mp_rem(base, modulus, p);
    for i in (0..exp.bits()).rev() {
        result = mp_rem(&mp_mul(&result, &result, p), modulus, p);
        if exp.bit(i) {
            result = mp_rem(&mp_mul(&result, &base, p), modulus, p);
        }
    }
    mp_rem(&result, modulus, p)
}

fn mp_derivative(a: &ModPoly, p: u64) -> ModPoly {
    trim(a.iter().enumerate().skip(1).map(|(k, &c)| mul_mod(c, k as u64 % p, p)).collect())
}

/// Distinct-degree factorization of a monic squarefree polynomial.
fn ddf(f: &ModPoly, p: u64) -> Vec<(ModPoly, usize)> {
    let mut out = Vec::new();
    let mut f = f.clone();
    let x: ModPoly = vec![0, 1];
    let mut h = x.clone();
    let mut i = 1;
    let pu = BigUint::from(p);
    while mp_deg(&f) >= 2 * i {
        h = mp_powmod(&h, &pu, &f, p);
        let g = mp_gcd(&mp_sub(&h, &x, p), &f, p);
        if mp_deg(&g) > 0 {
            f = mp_divrem(&f, &g, p).0;
            h = mp_rem(&h, &f, p);
            out.push((g, i));
        }
        i += 1;
    }
    if mp_deg(&f) > 0 {
        let d = mp_deg(&f);
        out.push((f, d));
    }
    out
}

/// Cantor-Zassenhaus equal-degree splitting (odd p).
fn edf(f: &ModPoly, d: usize, p: u64, rng: &mut ChaCha8Rng) -> Vec<ModPoly> {
    if mp_deg(f) == d {
        return vec![f.clone()];
    }
    let exp = (BigUint::from(p).pow(d as u32) - BigUint::one()) >> 1;
    loop {
        let a: ModPoly = trim((0..mp_deg(f)).map(|_| rng.gen_range(0..p)).collect());
        if mp_deg(&a) == 0 {
            continue;
        }
        let b = mp_sub(&mp_powmod(&a, &exp, f, p), &vec![1], p);
        let g = mp_gcd(&b, f, p);
        let dg = mp_deg(&g);
        if dg > 0 && dg < mp_deg(f) {
            let other = mp_divrem(f, &g, p).0;
            let mut out = edf(&g, d, p, rng);
            out.extend(edf(&mp_monic(&other, p), d, p, rng));
            return out;
        }
    }
}

fn factor_modp(f: &ModPoly, p: u64) -> Vec<ModPoly> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed ^ p);
    let monic = mp_monic(f, p);
    let mut out = Vec::new();
    for (g, d) in ddf(&monic, p) {
        out.extend(edf(&g, d, p, &mut rng));
    }
    out.sort();
    out
}

const PRIMES: [u64; 24] = [
    3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
];

/// Picks, among the first few primes keeping `f` squarefree of full degree,
/// the one giving the fewest modular factors.
fn choose_prime(f: &[BigInt]) -> (u64, Vec<ModPoly>) {
    let n = f.len() - 1;
    let mut best: Option<(u64, Vec<ModPoly>)> = None;
    let mut tried = 0;
    let extra = (101u64..).step_by(2).filter(|&q| is_prime(q));
    for p in PRIMES.iter().copied().chain(extra) {
        let fp = mp_from_int(f, p);
        if mp_deg(&fp) != n || fp.is_empty() {
            continue;
        }
        if mp_deg(&mp_gcd(&fp, &mp_derivative(&fp, p), p)) > 0 {
            continue;
        }
        let facs = factor_modp(&fp, p);
        if best.as_ref().is_none_or(|(_, b)| facs.len() < b.len()) {
            best = Some((p, facs));
        }
        tried += 1;
        if tried >= 6 || best.as_ref().is_some_and(|(_, b)| b.len() == 1) {
            break;
        }
    }
    best.expect("no suitable prime")
}

fn is_prime(q: u64) -> bool {
    q >= 2 && (2..).take_while(|d| d * d <= q).all(|d| !q.is_multiple_of(d))
}

// ---------------------------------------------------------------------------
// Hensel lifting over Z / p^k.

fn to_int(a: &ModPoly) -> Vec<BigInt> {
    a.iter().map(|&c| BigInt::from(c)).collect()
}

fn int_trim(mut a: Vec<BigInt>) -> Vec<BigInt> {
    while a.last().is_some_and(Zero::is_zero) {
        a.pop();
    }
    a
}

fn int_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    int_trim(out)
}

fn int_sub(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let n = a.len().max(b.len());
    int_trim(
        (0..n)
            .map(|i| {
                a.get(i).cloned().unwrap_or_default() - b.get(i).cloned().unwrap_or_default()
            })
            .collect(),
    )
}

fn int_add_scaled(a: &[BigInt], b: &ModPoly, scale: &BigInt) -> Vec<BigInt> {
    let n = a.len().max(b.len());
    int_trim(
        (0..n)
            .map(|i| {
                a.get(i).cloned().unwrap_or_default()
                    + scale * BigInt::from(b.get(i).copied().unwrap_or(0))
            })
            .collect(),
    )
}

fn int_reduce(a: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    int_trim(a.iter().map(|c| c.mod_floor(m)).collect())
}

/// Lifts `f = g h (mod p)` with `g` monic to `f = G H (mod p^k)`, keeping
/// `G` monic and `lc(H) = lc(f)`.
fn hensel_pair(f: &[BigInt], g: &ModPoly, h: &ModPoly, p: u64, k: u32) -> (Vec<BigInt>, Vec<BigInt>) {
    let (_, t) = mp_bezout(g, h, p);
    let lc = f.last().unwrap().clone();
    let mut big_g = to_int(g);
    let mut big_h = to_int(h);
    *big_h.last_mut().unwrap() = lc;
    let pb = BigInt::from(p);
    let mut pj = pb.clone();
    for _ in 1..k {
        let err = int_sub(f, &int_mul(&big_g, &big_h));
        let e: Vec<BigInt> = err.iter().map(|c| c / &pj).collect();
        let e = mp_from_int(&e, p);
        let dg = mp_rem(&mp_mul(&t, &e, p), g, p);
        let dh = mp_divrem(&mp_sub(&e, &mp_mul(&dg, h, p), p), g, p).0;
        big_g = int_add_scaled(&big_g, &dg, &pj);
        big_h = int_add_scaled(&big_h, &dh, &pj);
        pj *= &pb;
    }
    (big_g, big_h)
}

fn inv_mod_big(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.extended_gcd(m);
    assert!(e.gcd.is_one(), "leading coefficient not invertible modulo p^k");
    e.x.mod_floor(m)
}

/// Lifts the monic modular factorization of `f` to monic factors mod `p^k`.
fn multi_lift(f: &[BigInt], facs: &[ModPoly], p: u64, k: u32) -> Vec<Vec<BigInt>> {
    let modulus = BigInt::from(p).pow(k);
    if facs.len() == 1 {
        let inv = inv_mod_big(f.last().unwrap(), &modulus);
        let monic: Vec<BigInt> = f.iter().map(|c| c * &inv).collect();
        return vec![int_reduce(&monic, &modulus)];
    }
    let mid = facs.len() / 2;
    let g = facs[..mid].iter().fold(vec![1u64], |acc, x| mp_mul(&acc, x, p));
    let lc_p = mp_from_int(&[f.last().unwrap().clone()], p)[0];
    let h = facs[mid..].iter().fold(vec![lc_p], |acc, x| mp_mul(&acc, x, p));
    let (big_g, big_h) = hensel_pair(f, &g, &h, p, k);
    let mut out = multi_lift(&big_g, &facs[..mid], p, k);
    out.extend(multi_lift(&big_h, &facs[mid..], p, k));
    out
}

fn symmetric(a: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let half = m >> 1;
    int_trim(
        a.iter()
            .map(|c| {
                let r = c.mod_floor(m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect(),
    )
}

fn primitive(a: &[BigInt]) -> Vec<BigInt> {
    let content = a.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    let sign = if a.last().is_some_and(|c| c.sign() == Sign::Minus) { -1 } else { 1 };
    a.iter().map(|c| c / &content * sign).collect()
}

fn int_divides(g: &[BigInt], f: &[BigInt]) -> Option<Vec<BigInt>> {
    // cheap constant-term screen first
    if !f[0].is_zero() && (g[0].is_zero() || !f[0].is_multiple_of(&g[0])) {
        return None;
    }
    let q = Polynomial::from_bigints(f).exact_div(&Polynomial::from_bigints(g))?;
    if q.coeffs().iter().all(|c| c.is_integer()) {
        Some(q.coeffs().iter().map(|c| c.to_integer()).collect())
    } else {
        None
    }
}

fn recombine(f: &[BigInt], mut lifted: Vec<Vec<BigInt>>, modulus: &BigInt) -> Vec<Vec<BigInt>> {
    let mut f = f.to_vec();
    let mut result = Vec::new();
    let mut size = 1;
    'outer: while 2 * size <= lifted.len() {
        let lc = f.last().unwrap().clone();
        for subset in Combinations::new(lifted.len(), size) {
            let cand = subset
                .iter()
                .fold(vec![lc.clone()], |acc, &i| int_reduce(&int_mul(&acc, &lifted[i]), modulus));
            let g = primitive(&symmetric(&cand, modulus));
            if let Some(q) = int_divides(&g, &f) {
                result.push(g);
                f = q;
                for &i in subset.iter().rev() {
                    lifted.remove(i);
                }
                continue 'outer;
            }
        }
        size += 1;
    }
    if f.len() > 1 {
        result.push(primitive(&f));
    }
    result
}

struct Combinations {
    n: usize,
    idx: Vec<usize>,
    done: bool,
}

impl Combinations {
    fn new(n: usize, k: usize) -> Self {
        Combinations { n, idx: (0..k).collect(), done: k > n }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;
    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.idx.clone();
        let k = self.idx.len();
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.idx[i] < self.n - k + i {
                self.idx[i] += 1;
                for j in i + 1..k {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_algebra::Rational;

    fn poly(c: &[i64]) -> Polynomial {
        Polynomial::from_ints(c)
    }

    fn places(p: &Polynomial) -> Vec<(Polynomial, usize)> {
        irreducible_factors(p)
            .unwrap()
            .into_iter()
            .map(|(pl, m)| (pl.minimal_polynomial().unwrap().clone(), m))
            .collect()
    }

    #[test]
    fn nu4_minus_one() {
        let f = places(&poly(&[-1, 0, 0, 0, 1]));
        assert_eq!(f, vec![(poly(&[-1, 1]), 1), (poly(&[1, 1]), 1), (poly(&[1, 0, 1]), 1)]);
    }

    #[test]
    fn constants_have_no_places() {
        assert!(irreducible_factors(&poly(&[7])).unwrap().is_empty());
        assert!(matches!(irreducible_factors(&Polynomial::zero()), Err(Error::ZeroPolynomial)));
    }

    #[test]
    fn cyclotomic_twelve_is_irreducible() {
        let f = places(&poly(&[1, 0, -1, 0, 1]));
        assert_eq!(f, vec![(poly(&[1, 0, -1, 0, 1]), 1)]);
    }

    #[test]
    fn quartic_splitting_into_quadratics_mod_every_prime() {
        // x^4 + 1 splits mod every prime but is irreducible over Q
        let f = places(&poly(&[1, 0, 0, 0, 1]));
        assert_eq!(f, vec![(poly(&[1, 0, 0, 0, 1]), 1)]);
        // (x^2 - 2)(x^2 - 3) also has no rational roots but does split
        let g = places(&(&poly(&[-2, 0, 1]) * &poly(&[-3, 0, 1])));
        assert_eq!(g, vec![(poly(&[-3, 0, 1]), 1), (poly(&[-2, 0, 1]), 1)]);
    }

    #[test]
    fn non_monic_rational_factors() {
        // (2x - 1)^2 (3x^2 + 1)
        let p = &(&poly(&[-1, 2]) * &poly(&[-1, 2])) * &poly(&[1, 0, 3]);
        let half = Rational::new(1.into(), 2.into());
        let third = Rational::new(1.into(), 3.into());
        assert_eq!(
            places(&p),
            vec![
                (Polynomial::linear_root(half), 2),
                (Polynomial::new(vec![third, Rational::zero(), Rational::one()]), 1),
            ]
        );
    }

    #[test]
    fn degree_24_product_factors_quickly() {
        let parts = [
            poly(&[1, 0, -1, 0, 1]),
            poly(&[-2, 0, 1]),
            poly(&[1, 1, 1]),
            poly(&[2, 2, 0, 0, 0, 1]),
            poly(&[-7, 0, 0, 1]),
            poly(&[1, 2]),
            poly(&[5, 0, 0, 0, 0, 0, 1]),
        ];
        let mut p = Polynomial::one();
        let mut expected_deg = 0;
        for q in &parts {
            p = &p * q;
            expected_deg += q.deg();
        }
        p = &p * &poly(&[-1, 1]);
        expected_deg += 1;
        assert_eq!(expected_deg, 24);
        let f = places(&p);
        assert_eq!(f.len(), parts.len() + 1);
        assert_eq!(f.iter().map(|(q, m)| q.deg() * m).sum::<usize>(), 24);
        let mut prod = Polynomial::one();
        for (q, m) in &f {
            prod = &prod * &q.pow(*m as u32);
        }
        assert_eq!(prod, p.monic());
    }

    #[test]
    fn squarefree_decomposition_of_powers() {
        let p = &poly(&[0, 1]).pow(3) * &poly(&[1, 0, 1]).pow(2);
        let sqf = squarefree_decomposition(&p);
        assert_eq!(sqf, vec![(poly(&[1, 0, 1]), 2), (poly(&[0, 1]), 3)]);
    }
}
