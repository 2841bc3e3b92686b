//! Numerical monodromy of the six I2-fibre locations over the λ-line.
//!
//! The roots `x` of `(P(x) - 1)(P(x) + 1)` with normalized parameters are
//! multivalued in λ through `λ^(1/2)`. We track instead `y = λ^(1/2) x`, the
//! roots of the single-valued sextic
//!
//! `F(y, λ) = (4y^3 - 3a(λ)y - b(λ))^2 - λ^3`,
//!
//! whose `y`-discriminant is `-2^14 λ^11 (81λ - 1)^2 (256λ - 1)`. The point
//! `λ = 1/81` is a collision of roots with trivial local monodromy; loops are
//! routed around it and it is used as a puncture when sizing radii.

use std::fmt;

use rug::float::Constant;
use rug::{Complex, Float};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact_algebra::{rat, Rational};
use crate::numeric::complex;
use crate::perm::Permutation;

pub const DEFAULT_PRECISION: u32 = 128;
pub const DEFAULT_STEPS: usize = 256;

/// Exact complex number used for path geometry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactPoint {
    pub re: Rational,
    pub im: Rational,
}

impl ExactPoint {
    pub fn new(re: Rational, im: Rational) -> Self {
        ExactPoint { re, im }
    }

    pub fn real(re: Rational) -> Self {
        ExactPoint { re, im: rat(0, 1) }
    }

    pub fn to_complex(&self, prec: u32) -> Complex {
        let mut z = complex(prec, &self.re);
        *z.mut_imag() = crate::numeric::float(prec, &self.im);
        z
    }
}

pub fn default_base_point() -> ExactPoint {
    ExactPoint::real(rat(-257, 256))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Puncture {
    Zero,
    Quarter256,
    Infinity,
    /// `λ = 1/81`, where roots collide without monodromy.
    Apparent81,
}

impl Puncture {
    pub fn finite_value(&self) -> Option<Rational> {
        match self {
            Puncture::Zero => Some(rat(0, 1)),
            Puncture::Quarter256 => Some(rat(1, 256)),
            Puncture::Apparent81 => Some(rat(1, 81)),
            Puncture::Infinity => None,
        }
    }

    pub fn finite() -> [Puncture; 3] {
        [Puncture::Zero, Puncture::Quarter256, Puncture::Apparent81]
    }

    /// Half the distance to the nearest other finite puncture.
    pub fn default_radius(&self) -> Option<Rational> {
        let c = self.finite_value()?;
        Puncture::finite()
            .iter()
            .filter(|p| *p != self)
            .map(|p| {
                let d = p.finite_value().unwrap() - &c;
                if d < rat(0, 1) {
                    -d
                } else {
                    d
                }
            })
            .min()
            .map(|d| d / rat(2, 1))
    }
}

impl fmt::Display for Puncture {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Puncture::Zero => write!(f, "0"),
            Puncture::Quarter256 => write!(f, "1/256"),
            Puncture::Infinity => write!(f, "inf"),
            Puncture::Apparent81 => write!(f, "1/81"),
        }
    }
}

/// Which side of `λ = 0` the approach to a puncture right of 0 passes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Route {
    Above,
    Below,
}

/// A based loop: out along `tail` (polyline from the base point), once
/// around the circle through the last tail point, and back along `tail`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LoopSpec {
    pub base: ExactPoint,
    pub tail: Vec<ExactPoint>,
    pub center: ExactPoint,
    pub counterclockwise: bool,
}

impl LoopSpec {
    /// Counterclockwise loop around a finite puncture with the default radius.
    /// Punctures right of 0 are approached passing `route` of 0.
    pub fn around(p: Puncture, route: Route) -> Self {
        let base = default_base_point();
        match p {
            Puncture::Infinity => Self::infinity_direct(),
            Puncture::Zero => {
                let r = p.default_radius().unwrap();
                LoopSpec {
                    base,
                    tail: vec![ExactPoint::real(-r)],
                    center: ExactPoint::real(rat(0, 1)),
                    counterclockwise: true,
                }
            }
            _ => {
                let c = p.finite_value().unwrap();
                let r = p.default_radius().unwrap();
                let sign = if route == Route::Above { rat(1, 1) } else { rat(-1, 1) };
                LoopSpec {
                    base,
                    tail: vec![
                        ExactPoint::new(rat(0, 1), &sign * &c),
                        ExactPoint::new(c.clone(), &sign * &r),
                    ],
                    center: ExactPoint::real(c),
                    counterclockwise: true,
                }
            }
        }
    }

    /// Counterclockwise around ∞, i.e. clockwise on `|λ| = 8`.
    pub fn infinity_direct() -> Self {
        LoopSpec {
            base: default_base_point(),
            tail: vec![ExactPoint::real(rat(-8, 1))],
            center: ExactPoint::real(rat(0, 1)),
            counterclockwise: false,
        }
    }

    /// A loop bounding a disc free of punctures.
    pub fn contractible() -> Self {
        LoopSpec {
            base: default_base_point(),
            tail: vec![ExactPoint::real(rat(-3, 4))],
            center: ExactPoint::real(rat(-1, 2)),
            counterclockwise: true,
        }
    }

    fn segments(&self, prec: u32) -> Vec<Segment> {
        let mut pts = vec![self.base.to_complex(prec)];
        pts.extend(self.tail.iter().map(|p| p.to_complex(prec)));
        let mut out: Vec<Segment> = pts.windows(2).map(|w| Segment::Line(w[0].clone(), w[1].clone())).collect();
        let start = pts.last().unwrap().clone();
        let center = self.center.to_complex(prec);
        out.push(Segment::Arc {
            offset: Complex::with_val(prec, &start - &center),
            center,
            sign: if self.counterclockwise { 1 } else { -1 },
        });
        out.extend(pts.windows(2).rev().map(|w| Segment::Line(w[1].clone(), w[0].clone())));
        out
    }
}

enum Segment {
    Line(Complex, Complex),
    Arc { center: Complex, offset: Complex, sign: i32 },
}

impl Segment {
    fn point(&self, t: &Float) -> Complex {
        let prec = t.prec();
        match self {
            Segment::Line(a, b) => {
                let d = Complex::with_val(prec, b - a);
                Complex::with_val(prec, a + d * t)
            }
            Segment::Arc { center, offset, sign } => {
                let theta = Float::with_val(prec, Constant::Pi) * 2u32 * t * *sign;
                let rot = Complex::with_val(prec, (theta.clone().cos(), theta.sin()));
                Complex::with_val(prec, center + offset * rot)
            }
        }
    }
}

fn ab(lambda: &Complex) -> (Complex, Complex) {
    let prec = lambda.prec().0;
    let a = Complex::with_val(prec, lambda + Float::with_val(prec, 1) / 144u32);
    let mut b = Complex::with_val(prec, lambda * 3u32);
    b /= 8u32;
    b -= Float::with_val(prec, 1) / 1728u32;
    (a, b)
}

/// `Q(y) = 4y^3 - 3a y - b` and `Q'(y)`.
fn cubic(y: &Complex, a: &Complex, b: &Complex) -> (Complex, Complex) {
    let prec = y.prec().0;
    let y2 = Complex::with_val(prec, y * y);
    let mut q = Complex::with_val(prec, &y2 * y);
    q *= 4u32;
    let mut ay = Complex::with_val(prec, a * y);
    ay *= 3u32;
    q -= &ay;
    q -= b;
    let mut q_y = y2;
    q_y *= 12u32;
    q_y -= Complex::with_val(prec, a * 3u32);
    (q, q_y)
}

/// `(F, F_y, F_λ)` at `(y, λ)`.
fn sextic(y: &Complex, lambda: &Complex) -> (Complex, Complex, Complex) {
    let prec = y.prec().0;
    let (a, b) = ab(lambda);
    let (q, q_y) = cubic(y, &a, &b);
    // dQ/dλ = -3y - 3/8
    let mut q_l = Complex::with_val(prec, y * 3u32);
    q_l += Float::with_val(prec, 3) / 8u32;
    q_l = -q_l;
    let l2 = Complex::with_val(prec, lambda * lambda);
    let l3 = Complex::with_val(prec, &l2 * lambda);
    let f = Complex::with_val(prec, &q * &q) - l3;
    let f_y = Complex::with_val(prec, &q * &q_y) * 2u32;
    let f_l = Complex::with_val(prec, &q * &q_l) * 2u32 - l2 * 3u32;
    (f, f_y, f_l)
}

fn abs(z: &Complex) -> Float {
    Float::with_val(z.prec().0, z.abs_ref())
}

fn min_separation(ys: &[Complex]) -> Float {
    let prec = ys[0].prec().0;
    let mut best = Float::with_val(prec, rug::float::Special::Infinity);
    for i in 0..ys.len() {
        for j in i + 1..ys.len() {
            let d = abs(&Complex::with_val(prec, &ys[i] - &ys[j]));
            if d < best {
                best = d;
            }
        }
    }
    best
}

fn tiny(prec: u32, bits: u32) -> Float {
    Float::with_val(prec, Float::i_exp(1, -(bits as i32)))
}

fn newton(y0: &Complex, lambda: &Complex) -> Option<Complex> {
    let prec = y0.prec().0;
    let tol = tiny(prec, prec - 8);
    let mut y = y0.clone();
    for _ in 0..40 {
        let (f, f_y, _) = sextic(&y, lambda);
        if f_y.is_zero() {
            return None;
        }
        let dy = Complex::with_val(prec, &f / &f_y);
        y -= &dy;
        let scale = abs(&y).max(&Float::with_val(prec, 1));
        if abs(&dy) <= Float::with_val(prec, &tol * &scale) {
            return Some(y);
        }
    }
    None
}

/// Tracker settings: working precision and the initial (also maximal)
/// number of steps per path segment.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TrackerConfig {
    pub precision: u32,
    pub steps: usize,
}

impl Default for TrackerConfig {
    fn default() -> Self {
        TrackerConfig { precision: DEFAULT_PRECISION, steps: DEFAULT_STEPS }
    }
}

impl TrackerConfig {
    fn safety_radius(&self) -> Float {
        tiny(self.precision, self.precision / 4)
    }
}

fn track_segment(seg: &Segment, ys: &mut [Complex], cfg: &TrackerConfig) -> Result<usize> {
    let prec = cfg.precision;
    let max_h = 1.0 / cfg.steps as f64;
    let mut h = max_h;
    let mut t = 0.0f64;
    let mut lambda = seg.point(&Float::with_val(prec, t));
    let mut accepted = 0usize;
    while t < 1.0 {
        if h < 1e-14 {
            return Err(Error::NonConvergence(format!("step size underflow at t = {} on the path", t)));
        }
        let t1 = (t + h).min(1.0);
        let lambda1 = seg.point(&Float::with_val(prec, t1));
        let dl = Complex::with_val(prec, &lambda1 - &lambda);
        let sep = min_separation(ys);
        if sep < cfg.safety_radius() {
            return Err(Error::RootCollision(format!("roots within {:.3e} near λ = {}", sep.to_f64(), lambda)));
        }
        let limit = Float::with_val(prec, &sep / 3u32);
        let mut next = Vec::with_capacity(ys.len());
        let mut ok = true;
        for y in ys.iter() {
            let (_, f_y, f_l) = sextic(y, &lambda);
            let pred = Complex::with_val(prec, y - Complex::with_val(prec, &f_l / &f_y) * &dl);
            match newton(&pred, &lambda1) {
                Some(y1) if abs(&Complex::with_val(prec, &y1 - y)) < limit => next.push(y1),
                _ => {
                    ok = false;
                    break;
                }
            }
        }
        if ok {
            ys.clone_from_slice(&next);
            t = t1;
            lambda = lambda1;
            accepted += 1;
            h = (h * 2.0).min(max_h);
        } else {
            h /= 2.0;
        }
    }
    Ok(accepted)
}

/// Which cubic a root belongs to at the base point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Triple {
    /// Root of `P(x) - 1`.
    PMinus,
    /// Root of `P(x) + 1`.
    PPlus,
}

/// The six labelled roots at a base point. Labels `1..=3` are the roots of
/// `P - 1`, labels `4..=6` those of `P + 1`, each triple sorted by
/// `(re x, im x)`, with `x = y / λ^(1/2)` on the principal branch.
#[derive(Clone, Debug)]
pub struct TrackedRoots {
    pub lambda: ExactPoint,
    pub x: Vec<Complex>,
    pub y: Vec<Complex>,
    pub triple: Vec<Triple>,
}

impl TrackedRoots {
    pub fn at(base: &ExactPoint, prec: u32) -> Result<Self> {
        let lambda = base.to_complex(prec);
        if lambda.is_zero() {
            return Err(Error::Cusp);
        }
        let ys = sextic_roots(&lambda)?;
        let sqrt_l = Complex::with_val(prec, lambda.sqrt_ref());
        let l32 = Complex::with_val(prec, &lambda * &sqrt_l);
        let mut minus = Vec::new();
        let mut plus = Vec::new();
        for y in ys {
            let (a, b) = ab(&lambda);
            let (q, _) = cubic(&y, &a, &b);
            let x = Complex::with_val(prec, &y / &sqrt_l);
            let to_plus = abs(&Complex::with_val(prec, &q - &l32));
            let to_minus = abs(&Complex::with_val(prec, &q + &l32));
            if to_plus < to_minus {
                minus.push((x, y));
            } else {
                plus.push((x, y));
            }
        }
        if minus.len() != 3 || plus.len() != 3 {
            return Err(Error::RootCollision("roots do not split into two triples".into()));
        }
        let key = |p: &(Complex, Complex)| (p.0.real().to_f64(), p.0.imag().to_f64());
        let cmp = |l: &(Complex, Complex), r: &(Complex, Complex)| {
            let (a, b) = (key(l), key(r));
            a.partial_cmp(&b).unwrap()
        };
        minus.sort_by(cmp);
        plus.sort_by(cmp);
        let triple = [Triple::PMinus; 3].into_iter().chain([Triple::PPlus; 3]).collect();
        let (x, y): (Vec<_>, Vec<_>) = minus.into_iter().chain(plus).unzip();
        let out = TrackedRoots { lambda: base.clone(), x, y, triple };
        if min_separation(&out.y) < tiny(prec, prec / 4) {
            return Err(Error::RootCollision("base point is too close to a degeneration".into()));
        }
        Ok(out)
    }
}

/// Roots of `F(·, λ)` by Durand-Kerner iteration, polished by Newton.
fn sextic_roots(lambda: &Complex) -> Result<Vec<Complex>> {
    let prec = lambda.prec().0;
    let seed = Complex::with_val(prec, (0.4, 0.9));
    let mut zs: Vec<Complex> = Vec::with_capacity(6);
    let mut z = seed.clone();
    for _ in 0..6 {
        zs.push(z.clone());
        z *= &seed;
    }
    let tol = tiny(prec, prec - 10);
    for _ in 0..2000 {
        let mut worst = Float::new(prec);
        for k in 0..6 {
            let (f, _, _) = sextic(&zs[k], lambda);
            let mut den = Complex::with_val(prec, 16);
            for j in 0..6 {
                if j != k {
                    den *= Complex::with_val(prec, &zs[k] - &zs[j]);
                }
            }
            let d = Complex::with_val(prec, &f / &den);
            zs[k] -= &d;
            let a = abs(&d);
            if a > worst {
                worst = a;
            }
        }
        if worst < tol {
            return zs.iter().map(|z| newton(z, lambda).ok_or_else(nonconv)).collect();
        }
    }
    Err(nonconv())
}

fn nonconv() -> Error {
    Error::NonConvergence("root finder at the base point".into())
}

/// Outcome of tracking one loop.
#[derive(Clone, Debug)]
pub struct LoopResult {
    pub permutation: Permutation,
    pub steps: usize,
    /// Largest distance between a returned root and the base root it was matched to.
    pub closure_error: f64,
}

pub fn track_loop_with(spec: &LoopSpec, cfg: &TrackerConfig) -> Result<LoopResult> {
    let base = TrackedRoots::at(&spec.base, cfg.precision)?;
    track_from(&base, spec, cfg)
}

fn track_from(base: &TrackedRoots, spec: &LoopSpec, cfg: &TrackerConfig) -> Result<LoopResult> {
    let prec = cfg.precision;
    let mut ys = base.y.clone();
    let mut steps = 0;
    for seg in spec.segments(prec) {
        steps += track_segment(&seg, &mut ys, cfg)?;
    }
    // match each returned root with a base root
    let tol = Float::with_val(prec, 10f64.powf(-(prec as f64) / 4.0));
    let mut images = Vec::with_capacity(6);
    let mut closure = 0f64;
    for y in &ys {
        let (j, d) = base
            .y
            .iter()
            .enumerate()
            .map(|(j, b)| (j, abs(&Complex::with_val(prec, y - b))))
            .min_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
            .unwrap();
        let scale = abs(&base.y[j]).max(&Float::with_val(prec, 1));
        let rel = Float::with_val(prec, &d / &scale);
        if rel > tol {
            return Err(Error::LoopNotClosed(rel.to_f64()));
        }
        closure = closure.max(rel.to_f64());
        images.push(j);
    }
    let permutation = Permutation::from_images0(images)
        .map_err(|_| Error::LoopNotClosed(closure))?;
    Ok(LoopResult { permutation, steps, closure_error: closure })
}

/// The permutation of labels after one traversal of `spec`.
pub fn track_loop(spec: &LoopSpec, precision_bits: u32) -> Result<Permutation> {
    let cfg = TrackerConfig { precision: precision_bits, ..TrackerConfig::default() };
    Ok(track_loop_with(spec, &cfg)?.permutation)
}

/// Loop permutations around the three punctures.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PunctureTable {
    pub zero: Permutation,
    pub quarter256: Permutation,
    /// Tracked directly on `|λ| = 8`.
    pub infinity: Permutation,
}

impl PunctureTable {
    /// `σ_0 ∘ σ_∞ ∘ σ_{1/256}`, the loop around 1/256 applied first.
    pub fn product(&self) -> Permutation {
        self.zero.compose(&self.infinity).compose(&self.quarter256)
    }

    /// `σ_∞` as forced by the product relation.
    pub fn infinity_from_relation(&self) -> Permutation {
        self.zero.inverse().compose(&self.quarter256.inverse())
    }

    pub fn relabel(&self, rho: &Permutation) -> PunctureTable {
        PunctureTable {
            zero: self.zero.conjugate_by(rho),
            quarter256: self.quarter256.conjugate_by(rho),
            infinity: self.infinity.conjugate_by(rho),
        }
    }

    pub fn as_array(&self) -> [(Puncture, &Permutation); 3] {
        [
            (Puncture::Zero, &self.zero),
            (Puncture::Quarter256, &self.quarter256),
            (Puncture::Infinity, &self.infinity),
        ]
    }
}

/// Route to 1/256 used by [`puncture_table`]: passing above 0 makes the big
/// counterclockwise circle equal to the loop around 0 followed by the loop
/// around 1/256.
pub const DEFAULT_ROUTE: Route = Route::Above;

pub fn puncture_table_with(cfg: &TrackerConfig) -> Result<PunctureTable> {
    let base = TrackedRoots::at(&default_base_point(), cfg.precision)?;
    let specs = [
        LoopSpec::around(Puncture::Zero, DEFAULT_ROUTE),
        LoopSpec::around(Puncture::Quarter256, DEFAULT_ROUTE),
        LoopSpec::infinity_direct(),
    ];
    let results: Vec<Result<LoopResult>> = std::thread::scope(|s| {
        let handles: Vec<_> = specs.iter().map(|spec| s.spawn(|| track_from(&base, spec, cfg))).collect();
        handles.into_iter().map(|h| h.join().expect("tracker thread panicked")).collect()
    });
    let mut perms = results.into_iter().map(|r| r.map(|l| l.permutation));
    Ok(PunctureTable {
        zero: perms.next().unwrap()?,
        quarter256: perms.next().unwrap()?,
        infinity: perms.next().unwrap()?,
    })
}

pub fn puncture_table() -> Result<PunctureTable> {
    puncture_table_with(&TrackerConfig::default())
}

/// Within-triple relabelling of our base-point labels that reproduces the
/// reference labelling of the table: label `i` is renamed `ρ(i)`. Our `P + 1`
/// triple sorts in the opposite order from the reference one.
pub const REFERENCE_RELABELING: &str = "(46)";

/// Reference loop permutations around 0, 1/256 and ∞.
pub const REFERENCE_TABLE: [&str; 3] = ["(14)(25)(36)", "(12)", "(1524)(36)"];

pub fn reference_table() -> PunctureTable {
    let parse = |s: &str| Permutation::parse(s, 6).expect("valid literal");
    PunctureTable {
        zero: parse(REFERENCE_TABLE[0]),
        quarter256: parse(REFERENCE_TABLE[1]),
        infinity: parse(REFERENCE_TABLE[2]),
    }
}

pub fn reference_relabeling() -> Permutation {
    Permutation::parse(REFERENCE_RELABELING, 6).expect("valid literal")
}

/// Action of a label permutation relative to the two triples.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum DeckParity {
    /// Fixes both triples, even: automorphisms of each elliptic surface.
    Preserves,
    /// Fixes both triples, odd: exchanges the two elliptic surfaces.
    Swaps,
    /// Outside the triple stabilizer.
    NotInH { exchanges_triples: bool, even: bool },
}

pub fn deck_parity(tau: &Permutation) -> DeckParity {
    let block = |i: usize| (i - 1) / 3;
    let images: Vec<usize> = (1..=6).map(|i| block(tau.apply(i))).collect();
    let fixes = (1..=6).all(|i| images[i - 1] == block(i));
    let exchanges = (1..=6).all(|i| images[i - 1] != block(i));
    match (fixes, tau.is_even()) {
        (true, true) => DeckParity::Preserves,
        (true, false) => DeckParity::Swaps,
        (false, even) => DeckParity::NotInH { exchanges_triples: exchanges, even },
    }
}
