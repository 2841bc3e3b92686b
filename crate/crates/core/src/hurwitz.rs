//! Branched covers of the λ-line as permutation tuples.
//!
//! Marks are ordered `1/256, ∞, 0, e1, e2, ...` and a tuple is valid when the
//! product in that order (first mark applied first) is the identity:
//! `σ_{er} ∘ ... ∘ σ_0 ∘ σ_∞ ∘ σ_{1/256} = id`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::perm::{generated_group, orbits, Permutation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Mark {
    Quarter256,
    Infinity,
    Zero,
    /// An extra branch point away from the three special values (1-based).
    Extra(usize),
}

impl Mark {
    pub fn specials() -> [Mark; 3] {
        [Mark::Quarter256, Mark::Infinity, Mark::Zero]
    }
}

impl fmt::Display for Mark {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mark::Quarter256 => write!(f, "1/256"),
            Mark::Infinity => write!(f, "inf"),
            Mark::Zero => write!(f, "0"),
            Mark::Extra(i) => write!(f, "e{}", i),
        }
    }
}

impl std::str::FromStr for Mark {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "1/256" | "quarter256" => Ok(Mark::Quarter256),
            "inf" | "infinity" => Ok(Mark::Infinity),
            "0" | "zero" => Ok(Mark::Zero),
            other => other
                .strip_prefix('e')
                .and_then(|i| i.parse::<usize>().ok())
                .filter(|&i| i > 0)
                .map(Mark::Extra)
                .ok_or_else(|| Error::InvalidInput(format!("unknown mark {:?}", other))),
        }
    }
}

impl Serialize for Mark {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HurwitzCover {
    pub degree: usize,
    pub marks: Vec<Mark>,
    pub tuple: Vec<Permutation>,
}

impl HurwitzCover {
    /// Checks shapes only (lengths, degrees, mark order); see [`validate`]
    /// for the monodromy conditions.
    pub fn new(degree: usize, marks: Vec<Mark>, tuple: Vec<Permutation>) -> Result<Self> {
        if marks.len() != tuple.len() {
            return Err(Error::InvalidInput(format!("{} marks but {} permutations", marks.len(), tuple.len())));
        }
        if let Some(p) = tuple.iter().find(|p| p.degree() != degree) {
            return Err(Error::InvalidInput(format!("permutation {} is not of degree {}", p, degree)));
        }
        if marks.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::MarkMismatch("marks must be distinct and ordered 1/256, inf, 0, e1, ...".into()));
        }
        Ok(HurwitzCover { degree, marks, tuple })
    }

    /// Local monodromy at `mark` (identity if the mark is absent).
    pub fn at(&self, mark: Mark) -> Permutation {
        self.marks
            .iter()
            .position(|&m| m == mark)
            .map(|i| self.tuple[i].clone())
            .unwrap_or_else(|| Permutation::identity(self.degree))
    }

    pub fn product(&self) -> Permutation {
        Permutation::product_in_order(self.degree, &self.tuple)
    }

    pub fn profile(&self, mark: Mark) -> Vec<usize> {
        self.at(mark).cycle_type()
    }

    pub fn is_connected(&self) -> bool {
        orbits(self.degree, &self.tuple).len() <= 1
    }

    pub fn monodromy_group_order(&self) -> usize {
        generated_group(self.degree, &self.tuple).len()
    }

    /// `Σ (e - 1)` over all ramification points.
    pub fn ramification_total(&self) -> usize {
        self.tuple.iter().map(|p| self.degree - p.cycles().len()).sum()
    }

    pub fn tuple_strings(&self) -> Vec<String> {
        self.tuple.iter().map(|p| p.to_string()).collect()
    }

    /// Simultaneous relabelling `c ∘ σ ∘ c⁻¹` of every entry.
    pub fn conjugate_by(&self, c: &Permutation) -> HurwitzCover {
        HurwitzCover {
            degree: self.degree,
            marks: self.marks.clone(),
            tuple: self.tuple.iter().map(|p| p.conjugate_by(c)).collect(),
        }
    }
}

/// The identity cover of degree 1 over the three special marks.
pub fn identity_cover() -> HurwitzCover {
    HurwitzCover {
        degree: 1,
        marks: Mark::specials().to_vec(),
        tuple: vec![Permutation::identity(1); 3],
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    ProductNotIdentity { product: String },
    NotTransitive { orbits: usize },
    ProfileMismatch { mark: Mark, expected: Vec<usize>, actual: Vec<usize> },
    ExtraNotTransposition { mark: Mark, actual: Vec<usize> },
    ExtraCount { expected: usize, actual: usize },
    DegreeMismatch { expected: usize, actual: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::ProductNotIdentity { product } => write!(f, "product of the tuple is {} instead of ()", product),
            Violation::NotTransitive { orbits } => write!(f, "tuple is not transitive ({} orbits)", orbits),
            Violation::ProfileMismatch { mark, expected, actual } => {
                write!(f, "profile at {} is {:?}, expected {:?}", mark, actual, expected)
            }
            Violation::ExtraNotTransposition { mark, actual } => {
                write!(f, "extra mark {} has profile {:?}, expected a transposition", mark, actual)
            }
            Violation::ExtraCount { expected, actual } => write!(f, "extra ramification {}, expected r = {}", actual, expected),
            Violation::DegreeMismatch { expected, actual } => write!(f, "degree {}, expected {}", actual, expected),
        }
    }
}

/// Product identity and transitivity.
pub fn validate(c: &HurwitzCover) -> std::result::Result<(), Vec<Violation>> {
    let mut v = Vec::new();
    let prod = c.product();
    if !prod.is_identity() {
        v.push(Violation::ProductNotIdentity { product: prod.to_string() });
    }
    let orb = orbits(c.degree, &c.tuple).len();
    if orb > 1 {
        v.push(Violation::NotTransitive { orbits: orb });
    }
    if v.is_empty() {
        Ok(())
    } else {
        Err(v)
    }
}

/// [`validate`] plus agreement of the profiles with `b`.
pub fn validate_against(c: &HurwitzCover, b: &BranchData) -> std::result::Result<(), Vec<Violation>> {
    let mut v = validate(c).err().unwrap_or_default();
    if c.degree != b.n {
        v.push(Violation::DegreeMismatch { expected: b.n, actual: c.degree });
        return Err(v);
    }
    for (mark, expected) in [(Mark::Zero, &b.x), (Mark::Infinity, &b.y), (Mark::Quarter256, &b.z)] {
        let actual = c.profile(mark);
        if &actual != expected {
            v.push(Violation::ProfileMismatch { mark, expected: expected.clone(), actual });
        }
    }
    let extras: Vec<Mark> = c.marks.iter().copied().filter(|m| matches!(m, Mark::Extra(_))).collect();
    let mut total = 0;
    for m in &extras {
        let t = c.profile(*m);
        let e = b.n - t.len();
        total += e;
        if e != 1 {
            v.push(Violation::ExtraNotTransposition { mark: *m, actual: t });
        }
    }
    if total != b.r {
        v.push(Violation::ExtraCount { expected: b.r, actual: total });
    }
    if v.is_empty() {
        Ok(())
    } else {
        Err(v)
    }
}

/// Genus of a connected cover of the projective line.
pub fn genus(c: &HurwitzCover) -> Result<u64> {
    let orb = orbits(c.degree, &c.tuple).len();
    if orb > 1 {
        return Err(Error::Disconnected(orb));
    }
    genus_from_rh(c.degree, c.ramification_total())
}

/// `g` from `2g - 2 = -2d + R`.
pub fn genus_from_rh(degree: usize, ramification: usize) -> Result<u64> {
    let twice = ramification as i64 - 2 * degree as i64 + 2;
    if twice < 0 || twice % 2 != 0 {
        return Err(Error::InvalidBranchData(format!(
            "Riemann-Hurwitz gives 2g = {} for degree {} and ramification {}",
            twice, degree, ramification
        )));
    }
    Ok((twice / 2) as u64)
}

/// Ramification data of a cover `g` of the λ-line: profiles over 0, ∞,
/// 1/256 and the number of extra simple branch points.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct BranchData {
    pub n: usize,
    pub x: Vec<usize>,
    pub y: Vec<usize>,
    pub z: Vec<usize>,
    pub r: usize,
}

impl BranchData {
    /// Sorts the partitions in non-increasing order and checks they sum to `n`.
    pub fn new(n: usize, mut x: Vec<usize>, mut y: Vec<usize>, mut z: Vec<usize>, r: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidBranchData("degree must be positive".into()));
        }
        for (name, p) in [("x", &mut x), ("y", &mut y), ("z", &mut z)] {
            if p.contains(&0) {
                return Err(Error::InvalidBranchData(format!("{} has a zero part", name)));
            }
            if p.iter().sum::<usize>() != n {
                return Err(Error::InvalidBranchData(format!("{} = {:?} does not sum to {}", name, p, n)));
            }
            p.sort_unstable_by(|a, b| b.cmp(a));
        }
        Ok(BranchData { n, x, y, z, r })
    }

    pub fn k(&self) -> usize {
        self.x.len()
    }
    pub fn l(&self) -> usize {
        self.y.len()
    }
    pub fn m(&self) -> usize {
        self.z.len()
    }

    /// Number of odd parts of `z`.
    pub fn m_odd(&self) -> usize {
        self.z.iter().filter(|&&z| z % 2 == 1).count()
    }

    /// `Σ(x-1) + Σ(y-1) + Σ(z-1) + r`.
    pub fn ramification_total(&self) -> usize {
        (self.n - self.k()) + (self.n - self.l()) + (self.n - self.m()) + self.r
    }

    /// Riemann-Hurwitz for a connected cover from a genus-0 curve.
    pub fn is_genus_zero_consistent(&self) -> bool {
        self.ramification_total() + 2 == 2 * self.n
    }

    pub fn tuple_form(&self) -> (usize, usize, usize, usize, usize) {
        (self.k(), self.l(), self.m(), self.n, self.r)
    }
}

impl fmt::Display for BranchData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (k, l, m, n, r) = self.tuple_form();
        write!(f, "(k,l,m,n,r)=({},{},{},{},{}) x={:?} y={:?} z={:?}", k, l, m, n, r, self.x, self.y, self.z)
    }
}

/// Local structure of a pulled-back component over one point of the source
/// of `g`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SourcePointProfile {
    /// Ramification index of `g` at the point.
    pub g_index: usize,
    /// Ramification indices of the component over that point.
    pub profile: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MarkProfile {
    pub mark: Mark,
    /// Cycle type over the λ-line.
    pub over_lambda: Vec<usize>,
    /// One entry per point of the source of `g` over the mark.
    pub over_source: Vec<SourcePointProfile>,
}

/// One irreducible component of a normalized fibre product.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentReport {
    pub degree_over_lambda: usize,
    pub degree_over_source: usize,
    pub profiles: Vec<MarkProfile>,
    pub genus: u64,
}

/// Union of the marks of both covers in canonical order.
fn merged_marks(a: &HurwitzCover, b: &HurwitzCover) -> Vec<Mark> {
    let mut marks: Vec<Mark> = a.marks.iter().chain(&b.marks).copied().collect();
    marks.sort_unstable();
    marks.dedup();
    marks
}

/// Components of the normalized fibre product of `base_cover` and `g` over
/// the λ-line, in order of their smallest pair `(i, j)`. `g` must be
/// connected; `base_cover` need not be.
pub fn pullback(base_cover: &HurwitzCover, g: &HurwitzCover) -> Result<Vec<ComponentReport>> {
    for c in [base_cover, g] {
        if c.marks.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::MarkMismatch("marks must be distinct and in canonical order".into()));
        }
    }
    let g_orbits = orbits(g.degree, &g.tuple).len();
    if g_orbits > 1 {
        return Err(Error::Disconnected(g_orbits));
    }
    let d = base_cover.degree;
    let n = g.degree;
    let marks = merged_marks(base_cover, g);
    let idx = |i: usize, j: usize| i * n + j;
    let mut pair_perms = Vec::with_capacity(marks.len());
    for &m in &marks {
        let (s, t) = (base_cover.at(m), g.at(m));
        let mut images = vec![0; d * n];
        for i in 0..d {
            for j in 0..n {
                images[idx(i, j)] = idx(s.apply0(i), t.apply0(j));
            }
        }
        pair_perms.push(Permutation::from_images0(images)?);
    }
    let mut reports = Vec::new();
    for orbit in orbits(d * n, &pair_perms) {
        let size = orbit.len();
        if size % n != 0 {
            return Err(Error::InvalidInput("pulled-back component does not cover the source of g".into()));
        }
        let in_orbit: std::collections::HashSet<usize> = orbit.iter().copied().collect();
        let mut profiles = Vec::new();
        let mut ramification = 0;
        for (mi, &m) in marks.iter().enumerate() {
            let p = &pair_perms[mi];
            let g_local = g.at(m);
            // g-cycle containing each source sheet
            let mut g_cycle_of = vec![0usize; n];
            let g_cycles = g_local.cycles();
            for (ci, c) in g_cycles.iter().enumerate() {
                for &j in c {
                    g_cycle_of[j - 1] = ci;
                }
            }
            let mut over_lambda = Vec::new();
            let mut by_source: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
            for cycle in p.cycles() {
                let first = cycle[0] - 1;
                if !in_orbit.contains(&first) {
                    continue;
                }
                let len = cycle.len();
                over_lambda.push(len);
                ramification += len - 1;
                let gc = g_cycle_of[first % n];
                by_source.entry(gc).or_default().push(len / g_cycles[gc].len());
            }
            over_lambda.sort_unstable_by(|a, b| b.cmp(a));
            let over_source = by_source
                .into_iter()
                .map(|(gc, mut profile)| {
                    profile.sort_unstable_by(|a, b| b.cmp(a));
                    SourcePointProfile { g_index: g_cycles[gc].len(), profile }
                })
                .collect();
            profiles.push(MarkProfile { mark: m, over_lambda, over_source });
        }
        let genus = genus_from_rh(size, ramification)?;
        reports.push(ComponentReport { degree_over_lambda: size, degree_over_source: size / n, profiles, genus });
    }
    Ok(reports)
}

/// The three components of the curve of fixed points over the λ-line: two
/// double covers branched over 0 and ∞ and one 4-fold cover with profiles
/// `[2,1,1]`, `[4]`, `[2,2]` over 1/256, ∞, 0.
pub fn c2_components() -> [HurwitzCover; 3] {
    let marks = Mark::specials().to_vec();
    let p2 = |s: &str| Permutation::parse(s, 2).expect("valid literal");
    let p4 = |s: &str| Permutation::parse(s, 4).expect("valid literal");
    let double = HurwitzCover { degree: 2, marks: marks.clone(), tuple: vec![p2("()"), p2("(12)"), p2("(12)")] };
    let quartic = HurwitzCover { degree: 4, marks, tuple: vec![p4("(13)"), p4("(1432)"), p4("(12)(34)")] };
    [double.clone(), double, quartic]
}

/// The Galois cover with group generated by the quartic component's tuple
/// (dihedral of order 8), in its regular representation.
pub fn regular_d8_cover() -> HurwitzCover {
    let quartic = &c2_components()[2];
    let elements: Vec<Permutation> = generated_group(4, &quartic.tuple).into_iter().collect();
    let position = |p: &Permutation| elements.iter().position(|e| e == p).expect("closed under products");
    let tuple = quartic
        .tuple
        .iter()
        .map(|s| {
            let images = elements.iter().map(|h| position(&s.compose(h))).collect();
            Permutation::from_images0(images).expect("left multiplication is a bijection")
        })
        .collect();
    HurwitzCover { degree: elements.len(), marks: quartic.marks.clone(), tuple }
}

/// All permutations of `{0..n-1}` with the given cycle type.
pub fn class_members(n: usize, cycle_type: &[usize]) -> Vec<Permutation> {
    let mut lengths: Vec<usize> = cycle_type.to_vec();
    lengths.sort_unstable_by(|a, b| b.cmp(a));
    let mut out = Vec::new();
    let mut images: Vec<usize> = (0..n).collect();
    let mut used = vec![false; n];
    fn rec(
        n: usize,
        lengths: &mut Vec<usize>,
        images: &mut Vec<usize>,
        used: &mut Vec<bool>,
        out: &mut Vec<Permutation>,
    ) {
        let Some(start) = (0..n).find(|&i| !used[i]) else {
            out.push(Permutation::from_images0(images.clone()).expect("bijection by construction"));
            return;
        };
        let mut tried = Vec::new();
        for li in 0..lengths.len() {
            let len = lengths[li];
            if tried.contains(&len) {
                continue;
            }
            tried.push(len);
            lengths.remove(li);
            used[start] = true;
            let mut cycle = vec![start];
            extend_cycle(n, len, &mut cycle, lengths, images, used, out);
            used[start] = false;
            lengths.insert(li, len);
        }
    }
    fn extend_cycle(
        n: usize,
        len: usize,
        cycle: &mut Vec<usize>,
        lengths: &mut Vec<usize>,
        images: &mut Vec<usize>,
        used: &mut Vec<bool>,
        out: &mut Vec<Permutation>,
    ) {
        if cycle.len() == len {
            for w in 0..len {
                images[cycle[w]] = cycle[(w + 1) % len];
            }
            rec(n, lengths, images, used, out);
            for &c in cycle.iter() {
                images[c] = c;
            }
            return;
        }
        for next in 0..n {
            if !used[next] {
                used[next] = true;
                cycle.push(next);
                extend_cycle(n, len, cycle, lengths, images, used, out);
                cycle.pop();
                used[next] = false;
            }
        }
    }
    if lengths.iter().sum::<usize>() != n {
        return out;
    }
    rec(n, &mut lengths, &mut images, &mut used, &mut out);
    out
}

fn class_size(n: usize, cycle_type: &[usize]) -> u128 {
    let fact = |k: usize| (1..=k as u128).product::<u128>();
    let mut denom: u128 = 1;
    let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
    for &l in cycle_type {
        *counts.entry(l).or_default() += 1;
    }
    for (l, c) in counts {
        denom *= (l as u128).pow(c as u32) * fact(c);
    }
    fact(n) / denom
}

/// Canonical representative of the simultaneous conjugacy class of a
/// transitive tuple: the lexicographically least relabelling obtained by
/// breadth-first numbering from each starting point.
pub fn canonical_form(n: usize, tuple: &[Permutation]) -> Vec<Vec<usize>> {
    let mut best: Option<Vec<Vec<usize>>> = None;
    for start in 0..n {
        let mut label = vec![usize::MAX; n];
        label[start] = 0;
        let mut order = vec![start];
        let mut head = 0;
        while head < order.len() {
            let p = order[head];
            head += 1;
            for g in tuple {
                let q = g.apply0(p);
                if label[q] == usize::MAX {
                    label[q] = order.len();
                    order.push(q);
                }
            }
        }
        if order.len() < n {
            continue;
        }
        let relabelled: Vec<Vec<usize>> = tuple
            .iter()
            .map(|g| {
                let mut im = vec![0; n];
                for p in 0..n {
                    im[label[p]] = label[g.apply0(p)];
                }
                im
            })
            .collect();
        if best.as_ref().is_none_or(|b| relabelled < *b) {
            best = Some(relabelled);
        }
    }
    best.unwrap_or_default()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchResult {
    /// Representatives up to simultaneous conjugation, in canonical order.
    pub covers: Vec<HurwitzCover>,
    /// Set when the result limit or the candidate budget cut the search short.
    pub truncated: bool,
    pub candidates_examined: u64,
}

/// Default bound on the number of candidate tuples examined.
pub const DEFAULT_SEARCH_BUDGET: u64 = 5_000_000;

pub fn search_tuples(b: &BranchData, limit: usize) -> SearchResult {
    search_tuples_with_budget(b, limit, DEFAULT_SEARCH_BUDGET)
}

/// Transitive tuples realizing `b` with one transposition per extra mark,
/// up to simultaneous conjugation.
pub fn search_tuples_with_budget(b: &BranchData, limit: usize, budget: u64) -> SearchResult {
    let n = b.n;
    let mut marks = Mark::specials().to_vec();
    let mut types = vec![b.z.clone(), b.y.clone(), b.x.clone()];
    let mut transposition = vec![2];
    transposition.extend(std::iter::repeat_n(1, n.saturating_sub(2)));
    for i in 0..b.r {
        marks.push(Mark::Extra(i + 1));
        types.push(if n >= 2 { transposition.clone() } else { vec![] });
    }
    let empty = SearchResult { covers: vec![], truncated: false, candidates_examined: 0 };
    if !b.is_genus_zero_consistent() || types.iter().any(|t| t.iter().sum::<usize>() != n) {
        return empty;
    }
    let sizes: Vec<u128> = types.iter().map(|t| class_size(n, t)).collect();
    let mut by_size: Vec<usize> = (0..marks.len()).collect();
    by_size.sort_by(|&i, &j| sizes[j].cmp(&sizes[i]).then(i.cmp(&j)));
    let fixed = by_size[0];
    let determined = by_size[1];
    let free: Vec<usize> = by_size[2..].to_vec();

    let fixed_rep = class_members(n, &types[fixed]).into_iter().next();
    let Some(fixed_rep) = fixed_rep else { return empty };
    let pools: Vec<Vec<Permutation>> = free.iter().map(|&i| class_members(n, &types[i])).collect();

    let mut found: BTreeMap<Vec<Vec<usize>>, Vec<Permutation>> = BTreeMap::new();
    let mut examined = 0u64;
    let mut truncated = false;
    let mut counters = vec![0usize; free.len()];
    if pools.iter().any(|p| p.is_empty()) {
        return empty;
    }
    'outer: loop {
        if examined >= budget {
            truncated = true;
            break;
        }
        examined += 1;
        let mut tuple: Vec<Option<Permutation>> = vec![None; marks.len()];
        tuple[fixed] = Some(fixed_rep.clone());
        for (slot, &i) in free.iter().enumerate() {
            tuple[i] = Some(pools[slot][counters[slot]].clone());
        }
        // solve the product relation for the determined entry
        let before = Permutation::product_in_order(n, tuple[..determined].iter().flatten());
        let after = Permutation::product_in_order(n, tuple[determined + 1..].iter().flatten());
        let sigma = after.inverse().compose(&before.inverse());
        if sigma.cycle_type() == types[determined] {
            tuple[determined] = Some(sigma);
            let full: Vec<Permutation> = tuple.into_iter().flatten().collect();
            if orbits(n, &full).len() == 1 {
                let key = canonical_form(n, &full);
                if !found.contains_key(&key) {
                    if found.len() >= limit {
                        truncated = true;
                        break 'outer;
                    }
                    found.insert(key, full);
                }
            }
        }
        // advance the odometer
        let mut k = 0;
        loop {
            if k == counters.len() {
                break 'outer;
            }
            counters[k] += 1;
            if counters[k] < pools[k].len() {
                break;
            }
            counters[k] = 0;
            k += 1;
        }
    }
    let covers = found
        .into_keys()
        .map(|key| HurwitzCover {
            degree: n,
            marks: marks.clone(),
            tuple: key.into_iter().map(|im| Permutation::from_images0(im).expect("relabelled bijection")).collect(),
        })
        .collect();
    SearchResult { covers, truncated, candidates_examined: examined }
}

/// A uniformly random permutation of `{0..n-1}`.
pub fn random_permutation<R: rand::Rng + ?Sized>(rng: &mut R, n: usize) -> Permutation {
    use rand::seq::SliceRandom;
    let mut images: Vec<usize> = (0..n).collect();
    images.shuffle(rng);
    Permutation::from_images0(images).expect("shuffle is a bijection")
}

/// A random tuple with identity product over the three special marks plus
/// `extras` more; the last entry is solved for. Not necessarily connected.
pub fn random_cover<R: rand::Rng + ?Sized>(rng: &mut R, degree: usize, extras: usize) -> HurwitzCover {
    let mut marks = Mark::specials().to_vec();
    marks.extend((1..=extras).map(Mark::Extra));
    let mut tuple: Vec<Permutation> = (0..marks.len() - 1).map(|_| random_permutation(rng, degree)).collect();
    let before = Permutation::product_in_order(degree, &tuple);
    tuple.push(before.inverse());
    HurwitzCover { degree, marks, tuple }
}

/// [`random_cover`], redrawn until transitive.
pub fn random_connected_cover<R: rand::Rng + ?Sized>(rng: &mut R, degree: usize, extras: usize) -> HurwitzCover {
    loop {
        let c = random_cover(rng, degree, extras);
        if c.is_connected() {
            return c;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, n: usize) -> Permutation {
        Permutation::parse(s, n).unwrap()
    }

    #[test]
    fn double_cover_validates() {
        let c = HurwitzCover::new(2, Mark::specials().to_vec(), vec![p("()", 2), p("(12)", 2), p("(12)", 2)]).unwrap();
        assert!(validate(&c).is_ok());
        assert_eq!(genus(&c).unwrap(), 0);
    }

    #[test]
    fn bad_product_is_reported() {
        let c = HurwitzCover::new(3, Mark::specials().to_vec(), vec![p("(12)", 3), p("(23)", 3), p("()", 3)]).unwrap();
        let v = validate(&c).unwrap_err();
        assert!(matches!(v[0], Violation::ProductNotIdentity { .. }));
    }

    #[test]
    fn disconnected_genus_rejected() {
        let c = HurwitzCover::new(2, Mark::specials().to_vec(), vec![p("()", 2); 3]).unwrap();
        assert!(matches!(genus(&c), Err(Error::Disconnected(2))));
    }

    #[test]
    fn class_sizes() {
        assert_eq!(class_members(4, &[2, 1, 1]).len(), 6);
        assert_eq!(class_members(4, &[2, 2]).len(), 3);
        assert_eq!(class_members(5, &[4, 1]).len(), 30);
        assert_eq!(class_members(8, &[4, 4]).len() as u128, class_size(8, &[4, 4]));
        assert!(class_members(5, &[5]).iter().all(|q| q.cycle_type() == vec![5]));
    }

    #[test]
    fn canonical_form_is_conjugation_invariant() {
        let c = &c2_components()[2];
        let r = p("(1243)", 4);
        assert_eq!(canonical_form(4, &c.tuple), canonical_form(4, &c.conjugate_by(&r).tuple));
    }

    #[test]
    fn marks_round_trip() {
        for m in [Mark::Quarter256, Mark::Infinity, Mark::Zero, Mark::Extra(3)] {
            assert_eq!(m.to_string().parse::<Mark>().unwrap(), m);
        }
        assert!("e0".parse::<Mark>().is_err());
    }
}
