//! Calabi-Yau conditions, singular fibre inventories and Hodge numbers of
//! the Kummer-fibred threefolds `Y_g` built from a cover `g` of the λ-line.

use std::collections::BTreeSet;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::hurwitz::{c2_components, pullback, search_tuples_with_budget, BranchData, ComponentReport, HurwitzCover};

/// Trivial canonical sheaf: `k + l + m - n - r = 2` and either `l = 2` with
/// both `y_j ∈ {1, 2, 4}` or `l = 1` with `y_1 = 8`.
pub fn cy_condition(b: &BranchData) -> bool {
    let (k, l, m, n, r) = b.tuple_form();
    if k + l + m != n + r + 2 {
        return false;
    }
    match l {
        2 => b.y.iter().all(|y| matches!(y, 1 | 2 | 4)),
        1 => b.y[0] == 8,
        _ => false,
    }
}

/// Unramified over 1/256. Sufficient for smoothness, not necessary.
pub fn smoothness(b: &BranchData) -> bool {
    b.m() == b.n
}

pub const SMOOTH_NOTE: &str = "smooth (g is unramified over 1/256)";
pub const NOT_GUARANTEED_NOTE: &str = "not guaranteed smooth by the criterion (g ramifies over 1/256)";

/// Components of the resolved fibre over a point of index `x` above λ = 0:
/// two strict transforms, `4(x-1)` over the four curves of `cA_{x-1}`
/// singularities, and the blow-ups of their intersections.
pub fn x_fiber_components(x: usize) -> u64 {
    let x = x as u64;
    if x.is_multiple_of(2) {
        x * x + 2
    } else {
        x * x + 1
    }
}

/// Components of the fibre over a point of index `y` above λ = ∞.
pub fn y_fiber_components(y: usize) -> Option<u64> {
    match y {
        1 => Some(20),
        2 => Some(9),
        4 | 8 => Some(1),
        _ => None,
    }
}

/// `(multiplicity, count)` pairs, where known.
pub fn y_fiber_multiplicities(y: usize) -> Option<Vec<(u32, u32)>> {
    match y {
        1 => Some(vec![(4, 1), (3, 2), (2, 7), (1, 10)]),
        2 => Some(vec![(2, 1), (1, 8)]),
        _ => None,
    }
}

/// New divisor classes contributed by a fibre over ∞ (`c_j`).
pub fn c_of_y(y: usize) -> Option<i64> {
    match y {
        1 => Some(19),
        2 => Some(8),
        4 => Some(0),
        _ => None,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ZeroFiber {
    pub x: usize,
    pub components: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InfinityFiber {
    pub y: usize,
    pub components: Option<u64>,
    /// `(multiplicity, count)`
    pub multiplicities: Option<Vec<(u32, u32)>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuarterFiber {
    pub z: usize,
    /// Isolated terminal points of type `cA_{z-1}`.
    pub terminal_points: u32,
    pub singularity: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiberInventory {
    pub zero: Vec<ZeroFiber>,
    pub infinity: Vec<InfinityFiber>,
    pub quarter256: Vec<QuarterFiber>,
}

impl FiberInventory {
    pub fn terminal_points(&self) -> u32 {
        self.quarter256.iter().map(|q| q.terminal_points).sum()
    }
}

pub fn fiber_inventory(b: &BranchData) -> FiberInventory {
    FiberInventory {
        zero: b.x.iter().map(|&x| ZeroFiber { x, components: x_fiber_components(x) }).collect(),
        infinity: b
            .y
            .iter()
            .map(|&y| InfinityFiber { y, components: y_fiber_components(y), multiplicities: y_fiber_multiplicities(y) })
            .collect(),
        quarter256: b
            .z
            .iter()
            .map(|&z| {
                if z > 1 {
                    QuarterFiber { z, terminal_points: 2, singularity: Some(format!("cA{}", z - 1)) }
                } else {
                    QuarterFiber { z, terminal_points: 0, singularity: None }
                }
            })
            .collect(),
    }
}

fn require_two_points_at_infinity(b: &BranchData) -> Result<()> {
    if b.l() != 2 {
        return Err(Error::Unsupported(format!(
            "Hodge formulas need two points over infinity, got y = {:?}",
            b.y
        )));
    }
    Ok(())
}

/// `12 + Σ_{x odd} x² + Σ_{x even} (x² + 1) + s + c_1 + c_2`.
pub fn h11(b: &BranchData, s: u64) -> Result<i64> {
    require_two_points_at_infinity(b)?;
    let mut total = 12 + s as i64;
    for &x in &b.x {
        total += x_fiber_components(x) as i64 - 1;
    }
    for &y in &b.y {
        total += c_of_y(y).ok_or_else(|| Error::Unsupported(format!("no divisor count for y = {}", y)))?;
    }
    Ok(total)
}

/// `k + (m_odd - n)/2 + p_g`.
pub fn h21(b: &BranchData, p_g: u64) -> Result<i64> {
    require_two_points_at_infinity(b)?;
    let diff = b.m_odd() as i64 - b.n as i64;
    if diff % 2 != 0 {
        return Err(Error::Unsupported(format!("m_odd - n = {} is odd", diff)));
    }
    let value = b.k() as i64 + diff / 2 + p_g as i64;
    if b.m() == b.n && value != b.r as i64 + p_g as i64 {
        return Err(Error::InvalidBranchData(format!(
            "unramified over 1/256 but k = {} differs from r = {}",
            b.k(),
            b.r
        )));
    }
    Ok(value)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PaperConstants {
    pub euler_a2: i64,
    pub h11_a2: i64,
    pub h21_a2: i64,
    pub euler_y2_prime: i64,
    pub h11_y2_prime: i64,
    pub h21_y2_prime: i64,
}

pub fn paper_constants() -> PaperConstants {
    PaperConstants { euler_a2: 64, h11_a2: 32, h21_a2: 0, euler_y2_prime: 80, h11_y2_prime: 40, h21_y2_prime: 0 }
}

/// An integer, or the reason no value is available.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HodgeValue {
    Value(i64),
    Unsupported(String),
}

impl HodgeValue {
    pub fn value(&self) -> Option<i64> {
        match self {
            HodgeValue::Value(v) => Some(*v),
            HodgeValue::Unsupported(_) => None,
        }
    }

    fn from_result(r: Result<i64>) -> Self {
        match r {
            Ok(v) => HodgeValue::Value(v),
            Err(e) => HodgeValue::Unsupported(e.to_string()),
        }
    }
}

impl std::fmt::Display for HodgeValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            HodgeValue::Value(v) => write!(f, "{}", v),
            HodgeValue::Unsupported(_) => write!(f, "unsupported"),
        }
    }
}

impl Serialize for HodgeValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            HodgeValue::Value(v) => s.serialize_i64(*v),
            HodgeValue::Unsupported(_) => s.serialize_str("unsupported"),
        }
    }
}

/// The curve `C_g`: pull-back of the three components of `C_2` along `g`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FixedCurve {
    pub components: Vec<ComponentReport>,
    /// Number of components `s`.
    pub s: u64,
    /// Geometric genus `p_g`: the sum of the component genera.
    pub p_g: u64,
}

pub fn fixed_curve(g: &HurwitzCover) -> Result<FixedCurve> {
    let mut components = Vec::new();
    for c in c2_components() {
        components.extend(pullback(&c, g)?);
    }
    let s = components.len() as u64;
    let p_g = components.iter().map(|c| c.genus).sum();
    Ok(FixedCurve { components, s, p_g })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CYReport {
    pub branch_data: BranchData,
    /// Cycle notation, one entry per mark; absent when no tuple was used.
    pub tuple: Option<Vec<String>>,
    pub marks: Option<Vec<String>>,
    pub cy: bool,
    pub smooth: bool,
    pub smoothness_note: String,
    pub terminal_points: u32,
    pub inventory: FiberInventory,
    pub fixed_curve: Option<FixedCurve>,
    pub h11: HodgeValue,
    pub h21: HodgeValue,
    pub euler: HodgeValue,
}

/// Report for a cover with an explicit tuple.
pub fn analyze_cover(b: &BranchData, g: &HurwitzCover) -> Result<CYReport> {
    let curve = fixed_curve(g)?;
    Ok(assemble(b, Some(g), Some(curve)))
}

fn assemble(b: &BranchData, g: Option<&HurwitzCover>, curve: Option<FixedCurve>) -> CYReport {
    let cy = cy_condition(b);
    let smooth = smoothness(b);
    let inventory = fiber_inventory(b);
    let (h11v, h21v) = match (&curve, cy) {
        (_, false) => {
            let why = "branch data fails the Calabi-Yau condition".to_string();
            (HodgeValue::Unsupported(why.clone()), HodgeValue::Unsupported(why))
        }
        (None, true) => {
            let why = "no monodromy tuple realizes the branch data".to_string();
            (HodgeValue::Unsupported(why.clone()), HodgeValue::Unsupported(why))
        }
        (Some(c), true) => (HodgeValue::from_result(h11(b, c.s)), HodgeValue::from_result(h21(b, c.p_g))),
    };
    let euler = match (h11v.value(), h21v.value()) {
        (Some(a), Some(c)) => HodgeValue::Value(2 * (a - c)),
        _ => HodgeValue::Unsupported("needs both Hodge numbers".into()),
    };
    CYReport {
        branch_data: b.clone(),
        tuple: g.map(|g| g.tuple_strings()),
        marks: g.map(|g| g.marks.iter().map(|m| m.to_string()).collect()),
        cy,
        smooth,
        smoothness_note: if smooth { SMOOTH_NOTE } else { NOT_GUARANTEED_NOTE }.to_string(),
        terminal_points: inventory.terminal_points(),
        inventory,
        fixed_curve: curve,
        h11: h11v,
        h21: h21v,
        euler,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Analysis {
    /// One report per realizing tuple (or a single tuple-free report).
    pub reports: Vec<CYReport>,
    /// Distinct `(s, p_g)` outcomes among the reports.
    pub outcomes: BTreeSet<(u64, u64)>,
    pub ambiguous: bool,
    pub truncated: bool,
}

pub const DEFAULT_TUPLE_LIMIT: usize = 64;

/// Searches for tuples realizing `b` and reports each candidate.
pub fn analyze_branch_data(b: &BranchData, limit: usize, budget: u64) -> Result<Analysis> {
    let search = if cy_condition(b) {
        Some(search_tuples_with_budget(b, limit, budget))
    } else {
        None
    };
    let mut reports = Vec::new();
    let mut outcomes = BTreeSet::new();
    let truncated = search.as_ref().is_some_and(|s| s.truncated);
    for g in search.iter().flat_map(|s| &s.covers) {
        let curve = fixed_curve(g)?;
        outcomes.insert((curve.s, curve.p_g));
        reports.push(assemble(b, Some(g), Some(curve)));
    }
    if reports.is_empty() {
        reports.push(assemble(b, None, None));
    }
    Ok(Analysis { ambiguous: outcomes.len() > 1, reports, outcomes, truncated })
}

/// Partitions of `n` in non-increasing order, lexicographically decreasing.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn rec(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for p in (1..=rest.min(max)).rev() {
            cur.push(p);
            rec(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// All branch data of degree `n` consistent with Riemann-Hurwitz for a
/// genus-0 source (so `r` is determined by the partitions).
pub fn genus_zero_branch_data(n: usize) -> Vec<BranchData> {
    let parts = partitions(n);
    let mut out = Vec::new();
    for x in &parts {
        for y in &parts {
            for z in &parts {
                let used = (n - x.len()) + (n - y.len()) + (n - z.len());
                if used + 2 <= 2 * n {
                    let r = 2 * n - 2 - used;
                    out.push(BranchData { n, x: x.clone(), y: y.clone(), z: z.clone(), r });
                }
            }
        }
    }
    out
}

/// Branch data with `n ≤ max_degree` passing [`cy_condition`], sorted.
pub fn admissible_branch_data(max_degree: usize) -> Vec<BranchData> {
    let mut out: Vec<BranchData> =
        (1..=max_degree).flat_map(genus_zero_branch_data).filter(cy_condition).collect();
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bd(n: usize, x: &[usize], y: &[usize], z: &[usize], r: usize) -> BranchData {
        BranchData::new(n, x.to_vec(), y.to_vec(), z.to_vec(), r).unwrap()
    }

    #[test]
    fn cy_examples() {
        assert!(cy_condition(&bd(8, &[2, 2, 2, 2], &[4, 4], &[2, 2, 2, 2], 0)));
        assert!(cy_condition(&bd(5, &[5], &[1, 4], &[1; 5], 1)));
        assert!(!cy_condition(&bd(1, &[1], &[1], &[1], 0)));
    }

    #[test]
    fn smoothness_examples() {
        assert!(smoothness(&bd(5, &[5], &[1, 4], &[1; 5], 1)));
        assert!(!smoothness(&bd(8, &[2, 2, 2, 2], &[4, 4], &[2, 2, 2, 2], 0)));
    }

    #[test]
    fn fibre_counts() {
        assert_eq!(x_fiber_components(1), 2);
        assert_eq!(x_fiber_components(2), 6);
        assert_eq!(y_fiber_components(1), Some(20));
        let m = y_fiber_multiplicities(1).unwrap();
        assert_eq!(m.iter().map(|(_, c)| c).sum::<u32>(), 20);
    }

    #[test]
    fn hodge_examples() {
        let y2 = bd(8, &[2, 2, 2, 2], &[4, 4], &[2, 2, 2, 2], 0);
        assert_eq!(h11(&y2, 8).unwrap(), 40);
        assert_eq!(h21(&y2, 0).unwrap(), 0);
        let q = bd(5, &[5], &[1, 4], &[1; 5], 1);
        assert_eq!(h11(&q, 3).unwrap(), 59);
        assert_eq!(h21(&q, 2).unwrap(), 3);
    }

    #[test]
    fn single_point_at_infinity_is_unsupported() {
        let b = bd(8, &[8], &[8], &[8], 0);
        assert!(matches!(h11(&b, 1), Err(Error::Unsupported(_))));
        assert!(matches!(h21(&b, 0), Err(Error::Unsupported(_))));
    }

    #[test]
    fn constants_are_consistent() {
        let c = paper_constants();
        assert_eq!(c.euler_a2, 2 * (c.h11_a2 - c.h21_a2));
        assert_eq!(c.euler_y2_prime, 2 * (c.h11_y2_prime - c.h21_y2_prime));
    }

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (1..=8).map(|n| partitions(n).len()).collect();
        assert_eq!(counts, vec![1, 2, 3, 5, 7, 11, 15, 22]);
    }
}
