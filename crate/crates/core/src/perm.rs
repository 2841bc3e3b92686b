//! Permutations of `{1..n}` with right-to-left composition.
//!
//! `a.compose(&b)` is the map `i -> a(b(i))`: `b` is applied first.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    // 0-based images
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { images: (0..n).collect() }
    }

    /// From 0-based images; rejects non-bijections.
    pub fn from_images0(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(Error::InvalidPermutation(format!("{:?} is not a bijection", images)));
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    /// From 1-based images, e.g. `[2, 1, 3]` is the transposition (12).
    pub fn from_images(images: &[usize]) -> Result<Self> {
        if images.contains(&0) {
            return Err(Error::InvalidPermutation("points are numbered from 1".into()));
        }
        Self::from_images0(images.iter().map(|&i| i - 1).collect())
    }

    /// From 1-based disjoint cycles on `{1..n}`.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self> {
        let owned: Vec<Vec<usize>> = cycles.iter().map(|c| c.to_vec()).collect();
        Self::from_cycle_vecs(n, &owned)
    }

    fn from_cycle_vecs(n: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<usize> = (0..n).collect();
        let mut used = vec![false; n];
        for cycle in cycles {
            for (k, &p) in cycle.iter().enumerate() {
                if p == 0 || p > n {
                    return Err(Error::InvalidPermutation(format!("point {} outside 1..{}", p, n)));
                }
                if used[p - 1] {
                    return Err(Error::InvalidPermutation(format!("point {} repeated", p)));
                }
                used[p - 1] = true;
                let next = cycle[(k + 1) % cycle.len()];
                images[p - 1] = next - 1;
            }
        }
        Ok(Permutation { images })
    }

    /// Parses cycle notation on `{1..n}`. Points inside a cycle are separated
    /// by whitespace or commas; a cycle with no separators, like `(1524)`,
    /// is read digit by digit.
    pub fn parse(s: &str, n: usize) -> Result<Self> {
        Self::from_cycle_vecs(n, &parse_cycles(s)?)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of the 1-based point `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1] + 1
    }

    /// Image of the 0-based point `i`.
    pub fn apply0(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn images0(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// `self ∘ other`: apply `other`, then `self`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree(), "degree mismatch in composition");
        Permutation { images: other.images.iter().map(|&j| self.images[j]).collect() }
    }

    /// Composition of a sequence applied in order: first element first.
    pub fn product_in_order<'a, I>(n: usize, perms: I) -> Permutation
    where
        I: IntoIterator<Item = &'a Permutation>,
    {
        perms.into_iter().fold(Permutation::identity(n), |acc, p| p.compose(&acc))
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.degree()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j] = i;
        }
        Permutation { images: inv }
    }

    pub fn pow(&self, e: i64) -> Permutation {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        (0..e.unsigned_abs()).fold(Permutation::identity(self.degree()), |acc, _| base.compose(&acc))
    }

    /// `c ∘ self ∘ c⁻¹`: relabels every point `i` as `c(i)`.
    pub fn conjugate_by(&self, c: &Permutation) -> Permutation {
        c.compose(self).compose(&c.inverse())
    }

    /// Disjoint cycles (1-based), including fixed points, each starting at
    /// its smallest point, ordered by that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cycle.push(i + 1);
                i = self.images[i];
            }
            out.push(cycle);
        }
        out
    }

    /// Cycle lengths in non-increasing order, fixed points included.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut t: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        t.sort_unstable_by(|a, b| b.cmp(a));
        t
    }

    pub fn is_even(&self) -> bool {
        self.cycles().iter().map(|c| c.len() - 1).sum::<usize>() % 2 == 0
    }

    pub fn order(&self) -> usize {
        self.cycles().iter().map(Vec::len).fold(1, num_integer::lcm)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let compact = self.degree() <= 9;
        let mut any = false;
        for cycle in self.cycles().into_iter().filter(|c| c.len() > 1) {
            any = true;
            let parts: Vec<String> = cycle.iter().map(usize::to_string).collect();
            write!(f, "({})", parts.join(if compact { "" } else { " " }))?;
        }
        if !any {
            write!(f, "()")?;
        }
        Ok(())
    }
}

impl FromStr for Permutation {
    type Err = Error;
    /// Degree is taken as the largest point mentioned.
    fn from_str(s: &str) -> Result<Self> {
        let cycles = parse_cycles(s)?;
        let n = cycles.iter().flatten().copied().max().unwrap_or(0);
        Permutation::from_cycle_vecs(n, &cycles)
    }
}

fn parse_cycles(s: &str) -> Result<Vec<Vec<usize>>> {
    let bad = |msg: String| Error::InvalidPermutation(format!("{:?}: {}", s, msg));
    let mut cycles = Vec::new();
    let mut rest = s.trim();
    while !rest.is_empty() {
        let open = rest.strip_prefix('(').ok_or_else(|| bad("expected '('".into()))?;
        let close = open.find(')').ok_or_else(|| bad("unbalanced parentheses".into()))?;
        let body = open[..close].trim();
        let points: Vec<usize> = if body.contains(|c: char| c.is_whitespace() || c == ',') {
            body.split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<usize>().map_err(|e| bad(e.to_string())))
                .collect::<Result<_>>()?
        } else {
            body.chars()
                .map(|c| {
                    c.to_digit(10)
                        .map(|d| d as usize)
                        .ok_or_else(|| bad(format!("unexpected {:?}", c)))
                })
                .collect::<Result<_>>()?
        };
        if !points.is_empty() {
            cycles.push(points);
        }
        rest = open[close + 1..].trim_start();
    }
    Ok(cycles)
}

/// Orbits of the group generated by `gens` on `{0..n-1}`, each sorted,
/// ordered by smallest element.
pub fn orbits(n: usize, gens: &[Permutation]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut orbit = vec![start];
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(i) = queue.pop_front() {
            for g in gens {
                let j = g.apply0(i);
                if !seen[j] {
                    seen[j] = true;
                    orbit.push(j);
                    queue.push_back(j);
                }
            }
        }
        orbit.sort_unstable();
        out.push(orbit);
    }
    out
}

pub fn is_transitive(n: usize, gens: &[Permutation]) -> bool {
    n == 0 || orbits(n, gens).len() == 1
}

/// All elements of the group generated by `gens` (brute-force closure;
/// intended for small groups).
pub fn generated_group(n: usize, gens: &[Permutation]) -> BTreeSet<Permutation> {
    let id = Permutation::identity(n);
    let mut seen: HashSet<Permutation> = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(g) = queue.pop_front() {
        for s in gens {
            let h = s.compose(&g);
            if seen.insert(h.clone()) {
                queue.push_back(h);
            }
        }
    }
    seen.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        Permutation::parse(s, 6).unwrap()
    }

    #[test]
    fn parse_compact_and_spaced_agree() {
        assert_eq!(p("(1524)(36)"), p("(1 5 2 4)(3 6)"));
        assert_eq!(p(" ( 1, 5,2 4 ) (3 6) "), p("(1524)(36)"));
        assert_eq!(p("()"), Permutation::identity(6));
        assert_eq!(p("(1524)(36)").to_string(), "(1524)(36)");
    }

    #[test]
    fn parse_rejects_bad_input() {
        assert!(Permutation::parse("(12)(23)", 3).is_err());
        assert!(Permutation::parse("(17)", 6).is_err());
        assert!(Permutation::parse("(12", 3).is_err());
        assert!(Permutation::parse("12", 3).is_err());
    }

    #[test]
    fn composition_is_right_to_left() {
        let a = p("(12)");
        let b = p("(23)");
        // apply (23) first: 2 -> 3 -> 3
        assert_eq!(a.compose(&b).apply(2), 3);
        assert_eq!(Permutation::product_in_order(6, [&b, &a]), a.compose(&b));
    }

    #[test]
    fn relation_of_three_loops() {
        // the three local monodromies compose to the identity, (12) applied first
        let total = p("(14)(25)(36)").compose(&p("(1524)(36)")).compose(&p("(12)"));
        assert!(total.is_identity());
    }

    #[test]
    fn cycle_type_parity_order() {
        let a = p("(1524)(36)");
        assert_eq!(a.cycle_type(), vec![4, 2]);
        assert!(a.is_even());
        assert_eq!(a.order(), 4);
        assert!(!p("(45)").is_even());
    }

    #[test]
    fn conjugation_relabels() {
        let a = p("(12)");
        let c = p("(13)");
        assert_eq!(a.conjugate_by(&c), p("(32)"));
    }

    #[test]
    fn group_closure_and_orbits() {
        let g = generated_group(6, &[p("(1524)(36)"), p("(14)(25)(36)")]);
        assert_eq!(g.len(), 8);
        assert_eq!(orbits(6, &[p("(1524)(36)"), p("(14)(25)(36)")]).len(), 2);
        assert!(!is_transitive(6, &[p("(12)")]));
    }
}
