//! Subcommand bodies. Each returns its full output so it can be tested
//! without spawning a process.

use std::fmt::Write as _;

use serde::Serialize;

use kumfib::exact_algebra::{irreducible_factors, Place, RationalFunction};
use kumfib::family_x2::{e1_model, e2_model};
use kumfib::hodge::{
    admissible_branch_data, analyze_branch_data, analyze_cover, Analysis, CYReport, HodgeValue,
    DEFAULT_TUPLE_LIMIT,
};
use kumfib::hurwitz::{BranchData, DEFAULT_SEARCH_BUDGET};
use kumfib::kodaira::{classify, kodaira_type, minimal_valuations, WeierstrassFamily};
use kumfib::monodromy::{
    deck_parity, puncture_table_with, reference_relabeling, reference_table, TrackerConfig, DEFAULT_PRECISION,
    DEFAULT_STEPS,
};

use crate::document::{parse_document, OutputFormat, Subject};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_UNSUPPORTED: i32 = 3;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn invalid(msg: impl std::fmt::Display) -> Self {
        Outcome { stdout: String::new(), stderr: format!("{}\n", msg), code: EXIT_INVALID }
    }
}

fn json_line<T: Serialize>(out: &mut String, value: &T) {
    out.push_str(&serde_json::to_string(value).expect("reports serialize"));
    out.push('\n');
}

#[derive(Serialize)]
struct ReportLine<'a> {
    kind: &'static str,
    index: usize,
    #[serde(flatten)]
    report: &'a CYReport,
}

#[derive(Serialize)]
struct SummaryLine<'a> {
    kind: &'static str,
    candidates: usize,
    outcomes: Vec<Outcome2<'a>>,
    ambiguous: bool,
    truncated: bool,
}

#[derive(Serialize)]
struct Outcome2<'a> {
    s: u64,
    p_g: u64,
    h11: &'a HodgeValue,
    h21: &'a HodgeValue,
    euler: &'a HodgeValue,
}

fn outcome_rows(a: &Analysis) -> Vec<Outcome2<'_>> {
    let mut rows: Vec<Outcome2> = Vec::new();
    for r in &a.reports {
        if let Some(c) = &r.fixed_curve {
            if !rows.iter().any(|o| o.s == c.s && o.p_g == c.p_g) {
                rows.push(Outcome2 { s: c.s, p_g: c.p_g, h11: &r.h11, h21: &r.h21, euler: &r.euler });
            }
        }
    }
    rows.sort_by_key(|o| (o.s, o.p_g));
    rows
}

fn fmt_partition(p: &[usize]) -> String {
    let parts: Vec<String> = p.iter().map(|x| x.to_string()).collect();
    format!("[{}]", parts.join(","))
}

fn render_report_table(out: &mut String, index: usize, r: &CYReport) {
    let b = &r.branch_data;
    let (k, l, m, n, rr) = b.tuple_form();
    let _ = writeln!(out, "candidate {}", index);
    let _ = writeln!(out, "  (k,l,m,n,r)   ({},{},{},{},{})", k, l, m, n, rr);
    let _ = writeln!(out, "  x / y / z     {} / {} / {}", fmt_partition(&b.x), fmt_partition(&b.y), fmt_partition(&b.z));
    if let (Some(marks), Some(tuple)) = (&r.marks, &r.tuple) {
        let pairs: Vec<String> = marks.iter().zip(tuple).map(|(m, t)| format!("{}: {}", m, t)).collect();
        let _ = writeln!(out, "  tuple         {}", pairs.join(", "));
    }
    let _ = writeln!(out, "  calabi-yau    {}", if r.cy { "yes" } else { "no" });
    let _ = writeln!(out, "  smoothness    {}", r.smoothness_note);
    let _ = writeln!(out, "  terminal pts  {}", r.terminal_points);
    let inv = &r.inventory;
    let zero: Vec<String> = inv.zero.iter().map(|f| format!("x={}:{}", f.x, f.components)).collect();
    let _ = writeln!(out, "  fibres at 0   {}", zero.join(" "));
    let inf: Vec<String> = inv
        .infinity
        .iter()
        .map(|f| match f.components {
            Some(c) => format!("y={}:{}", f.y, c),
            None => format!("y={}:?", f.y),
        })
        .collect();
    let _ = writeln!(out, "  fibres at inf {}", inf.join(" "));
    let quarter: Vec<String> =
        inv.quarter256.iter().filter_map(|f| f.singularity.as_ref().map(|s| format!("2x{}", s))).collect();
    let _ = writeln!(out, "  over 1/256    {}", if quarter.is_empty() { "none".into() } else { quarter.join(" ") });
    match &r.fixed_curve {
        Some(c) => {
            let genera: Vec<String> = c.components.iter().map(|x| x.genus.to_string()).collect();
            let degrees: Vec<String> = c.components.iter().map(|x| x.degree_over_source.to_string()).collect();
            let _ = writeln!(out, "  C_g           s={} p_g={} genera=[{}] degrees=[{}]", c.s, c.p_g, genera.join(","), degrees.join(","));
        }
        None => {
            let _ = writeln!(out, "  C_g           unknown (no tuple)");
        }
    }
    let _ = writeln!(out, "  h11 h21 e     {} {} {}", r.h11, r.h21, r.euler);
    for (name, v) in [("h11", &r.h11), ("h21", &r.h21)] {
        if let HodgeValue::Unsupported(why) = v {
            let _ = writeln!(out, "  note          {} unsupported: {}", name, why);
        }
    }
}

fn render_analysis(a: &Analysis, format: OutputFormat) -> String {
    let mut out = String::new();
    match format {
        OutputFormat::Jsonl => {
            for (i, r) in a.reports.iter().enumerate() {
                json_line(&mut out, &ReportLine { kind: "cy_report", index: i, report: r });
            }
            json_line(
                &mut out,
                &SummaryLine {
                    kind: "summary",
                    candidates: a.reports.len(),
                    outcomes: outcome_rows(a),
                    ambiguous: a.ambiguous,
                    truncated: a.truncated,
                },
            );
        }
        OutputFormat::Table => {
            for (i, r) in a.reports.iter().enumerate() {
                render_report_table(&mut out, i, r);
            }
            let _ = writeln!(
                out,
                "{} candidate(s), {} distinct (s, p_g) outcome(s){}{}",
                a.reports.len(),
                a.outcomes.len(),
                if a.ambiguous { ", AMBIGUOUS" } else { "" },
                if a.truncated { ", search truncated" } else { "" }
            );
        }
    }
    out
}

fn exit_code(a: &Analysis) -> i32 {
    let unsupported =
        a.reports.iter().any(|r| matches!(r.h11, HodgeValue::Unsupported(_)) || matches!(r.h21, HodgeValue::Unsupported(_)));
    if unsupported {
        EXIT_UNSUPPORTED
    } else {
        EXIT_OK
    }
}

/// `kumfib report <file>`; `format` overrides the document's own choice.
pub fn report(text: &str, format: Option<OutputFormat>) -> Outcome {
    let doc = match parse_document(text) {
        Ok(d) => d,
        Err(e) => return Outcome::invalid(e),
    };
    let format = format.or(doc.options.output_format).unwrap_or_default();
    let analysis = match doc.subject() {
        Err(e) => {
            return Outcome::invalid(e)
        }
        Ok(Subject::Cover(b, g)) => match analyze_cover(&b, &g) {
            Ok(r) => {
                let outcomes = r.fixed_curve.iter().map(|c| (c.s, c.p_g)).collect();
                Analysis { reports: vec![r], outcomes, ambiguous: false, truncated: false }
            }
            Err(e) => return Outcome::invalid(e),
        },
        Ok(Subject::Data(b)) => {
            let limit = doc.options.tuple_limit.unwrap_or(DEFAULT_TUPLE_LIMIT);
            let budget = doc.options.search_budget.unwrap_or(DEFAULT_SEARCH_BUDGET);
            match analyze_branch_data(&b, limit, budget) {
                Ok(a) => a,
                Err(e) => return Outcome::invalid(e),
            }
        }
    };
    let mut stderr = String::new();
    let code = exit_code(&analysis);
    if code == EXIT_UNSUPPORTED {
        stderr.push_str("some Hodge numbers are unsupported for this input\n");
    }
    Outcome { stdout: render_analysis(&analysis, format), stderr, code }
}

#[derive(Serialize)]
struct CatalogRow<'a> {
    kind: &'static str,
    k: usize,
    l: usize,
    m: usize,
    n: usize,
    r: usize,
    x: &'a [usize],
    y: &'a [usize],
    z: &'a [usize],
    smooth: bool,
    terminal_points: u32,
    zero_components: Vec<u64>,
    infinity_components: Vec<Option<u64>>,
    candidates: usize,
    outcomes: Vec<Outcome2<'a>>,
    ambiguous: bool,
    truncated: bool,
}

/// Tuple search limits used per catalog entry.
pub const CATALOG_TUPLE_LIMIT: usize = 16;
pub const CATALOG_SEARCH_BUDGET: u64 = 200_000;

pub struct CatalogEntry {
    pub data: BranchData,
    pub analysis: Option<Analysis>,
}

/// All admissible branch data up to `max_degree`, each analysed unless
/// `search` is off.
pub fn catalog(max_degree: usize, search: bool) -> kumfib::Result<Vec<CatalogEntry>> {
    use rayon::prelude::*;
    admissible_branch_data(max_degree)
        .into_par_iter()
        .map(|data| {
            let analysis =
                if search { Some(analyze_branch_data(&data, CATALOG_TUPLE_LIMIT, CATALOG_SEARCH_BUDGET)?) } else { None };
            Ok(CatalogEntry { data, analysis })
        })
        .collect()
}

pub fn enumerate(max_degree: usize, search: bool, format: OutputFormat) -> Outcome {
    let entries = match catalog(max_degree, search) {
        Ok(e) => e,
        Err(e) => return Outcome { stdout: String::new(), stderr: format!("{}\n", e), code: EXIT_CHECK_FAILED },
    };
    let mut out = String::new();
    if format == OutputFormat::Table {
        let _ = writeln!(out, "{:<16} {:<18} {:<8} {:<18} {:<6} {:<5} (s,p_g)->(h11,h21)", "(k,l,m,n,r)", "x", "y", "z", "smooth", "cand");
    }
    for e in &entries {
        let b = &e.data;
        let (k, l, m, n, r) = b.tuple_form();
        let inv = kumfib::hodge::fiber_inventory(b);
        let (outcomes, candidates, ambiguous, truncated) = match &e.analysis {
            Some(a) => {
                let found = a.reports.iter().filter(|r| r.fixed_curve.is_some()).count();
                (outcome_rows(a), found, a.ambiguous, a.truncated)
            }
            None => (vec![], 0, false, false),
        };
        match format {
            OutputFormat::Jsonl => json_line(
                &mut out,
                &CatalogRow {
                    kind: "catalog_row",
                    k,
                    l,
                    m,
                    n,
                    r,
                    x: &b.x,
                    y: &b.y,
                    z: &b.z,
                    smooth: kumfib::hodge::smoothness(b),
                    terminal_points: inv.terminal_points(),
                    zero_components: inv.zero.iter().map(|f| f.components).collect(),
                    infinity_components: inv.infinity.iter().map(|f| f.components).collect(),
                    candidates,
                    outcomes,
                    ambiguous,
                    truncated,
                },
            ),
            OutputFormat::Table => {
                let o: Vec<String> =
                    outcomes.iter().map(|o| format!("({},{})->({},{})", o.s, o.p_g, o.h11, o.h21)).collect();
                let flag = if truncated { " (truncated)" } else { "" };
                let _ = writeln!(
                    out,
                    "{:<16} {:<18} {:<8} {:<18} {:<6} {:<5} {}{}",
                    format!("({},{},{},{},{})", k, l, m, n, r),
                    fmt_partition(&b.x),
                    fmt_partition(&b.y),
                    fmt_partition(&b.z),
                    if kumfib::hodge::smoothness(b) { "yes" } else { "-" },
                    candidates,
                    o.join(" "),
                    flag
                );
            }
        }
    }
    Outcome { stdout: out, stderr: String::new(), code: EXIT_OK }
}

#[derive(Serialize)]
struct MonodromyRow {
    kind: &'static str,
    puncture: String,
    computed: String,
    cycle_type: Vec<usize>,
    relabeled: String,
    reference: String,
    matches: bool,
    parity: String,
}

pub fn monodromy(precision: u32, steps: usize, format: OutputFormat) -> Outcome {
    if precision < 64 || steps == 0 {
        return Outcome::invalid("precision must be at least 64 bits and steps positive");
    }
    let cfg = TrackerConfig { precision, steps };
    let table = match puncture_table_with(&cfg) {
        Ok(t) => t,
        Err(e) => return Outcome { stdout: String::new(), stderr: format!("{}\n", e), code: EXIT_CHECK_FAILED },
    };
    let rho = reference_relabeling();
    let relabeled = table.relabel(&rho);
    let reference = reference_table();
    let names = ["0", "1/256", "inf"];
    let mut out = String::new();
    let mut all_match = true;
    for (i, ((_, p), ((_, q), (_, want)))) in
        table.as_array().iter().zip(relabeled.as_array().iter().zip(reference.as_array().iter())).enumerate()
    {
        let row = MonodromyRow {
            kind: "loop",
            puncture: names[i].into(),
            computed: p.to_string(),
            cycle_type: p.cycle_type(),
            relabeled: q.to_string(),
            reference: want.to_string(),
            matches: q == want,
            parity: format!("{:?}", deck_parity(p)),
        };
        all_match &= row.matches;
        match format {
            OutputFormat::Jsonl => json_line(&mut out, &row),
            OutputFormat::Table => {
                let _ = writeln!(
                    out,
                    "{:<6} {:<16} {:<14} relabeled {:<16} reference {:<16} {}",
                    row.puncture,
                    row.computed,
                    format!("{:?}", row.cycle_type),
                    row.relabeled,
                    row.reference,
                    if row.matches { "match" } else { "differs" }
                );
            }
        }
    }
    let product_ok = table.product().is_identity();
    match format {
        OutputFormat::Jsonl => {
            #[derive(Serialize)]
            struct Footer {
                kind: &'static str,
                precision: u32,
                steps: usize,
                relabeling: String,
                product_is_identity: bool,
            }
            json_line(
                &mut out,
                &Footer {
                    kind: "summary",
                    precision,
                    steps,
                    relabeling: rho.to_string(),
                    product_is_identity: product_ok,
                },
            );
        }
        OutputFormat::Table => {
            let _ = writeln!(out, "relabeling {}; product s0*sinf*s(1/256) = identity: {}", rho, product_ok);
        }
    }
    let code = if product_ok && all_match { EXIT_OK } else { EXIT_CHECK_FAILED };
    Outcome { stdout: out, stderr: String::new(), code }
}

pub fn monodromy_default(format: OutputFormat) -> Outcome {
    monodromy(DEFAULT_PRECISION, DEFAULT_STEPS, format)
}

/// A point of the ν-line where `j ∈ {0, 1, ∞}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpecialFibre {
    pub place: String,
    pub place_degree: usize,
    pub j: &'static str,
    /// Order of vanishing of `j`, `j - 1` or `1/j` respectively.
    pub multiplicity: i64,
    pub kodaira: String,
}

/// Fibres of an elliptic surface over the ν-line with `j ∈ {0, 1, ∞}`.
pub fn special_fibres(w: &WeierstrassFamily) -> kumfib::Result<Vec<SpecialFibre>> {
    let j = w.j_invariant()?;
    let j_minus_1 = &j - &RationalFunction::from_int(1);
    let c = w.c_invariants();
    let mut places: Vec<(Place, &'static str)> = Vec::new();
    for (f, label) in [(j.denominator(), "inf"), (j_minus_1.numerator(), "1"), (j.numerator(), "0")] {
        for (p, _) in irreducible_factors(f)? {
            places.push((p, label));
        }
    }
    let deg_j = j.numerator().deg() as i64 - j.denominator().deg() as i64;
    let at_inf = match deg_j {
        d if d < 0 => Some("0"),
        d if d > 0 => Some("inf"),
        _ => None,
    };
    if let Some(l) = at_inf {
        places.push((Place::Infinity, l));
    } else if j_minus_1.order_at(&Place::Infinity)? > 0 {
        places.push((Place::Infinity, "1"));
    }
    let mut out = Vec::new();
    for (place, label) in places {
        let multiplicity = match label {
            "inf" => -j.order_at(&place)?,
            "1" => j_minus_1.order_at(&place)?,
            _ => j.order_at(&place)?,
        };
        let (v4, _, vd) = minimal_valuations(&c, &place)?;
        let kodaira = kodaira_type(v4, vd).map(|k| k.to_string()).unwrap_or_else(|| "I0".into());
        out.push(SpecialFibre { place: place.to_string(), place_degree: place.degree(), j: label, multiplicity, kodaira });
    }
    Ok(out)
}

pub fn fibers(format: OutputFormat) -> Outcome {
    let mut out = String::new();
    for (name, w) in [("E1", e1_model()), ("E2", e2_model())] {
        let rows = match special_fibres(&w) {
            Ok(r) => r,
            Err(e) => return Outcome { stdout: out, stderr: format!("{}\n", e), code: EXIT_CHECK_FAILED },
        };
        let singular = match classify(&w) {
            Ok(s) => s,
            Err(e) => return Outcome { stdout: out, stderr: format!("{}\n", e), code: EXIT_CHECK_FAILED },
        };
        let euler: u32 = singular.iter().map(|f| f.kind.euler_number() * f.place.degree() as u32).sum();
        match format {
            OutputFormat::Jsonl => {
                #[derive(Serialize)]
                struct Row<'a> {
                    kind: &'static str,
                    surface: &'a str,
                    #[serde(flatten)]
                    fibre: &'a SpecialFibre,
                }
                for r in &rows {
                    json_line(&mut out, &Row { kind: "special_fibre", surface: name, fibre: r });
                }
                #[derive(Serialize)]
                struct Total<'a> {
                    kind: &'static str,
                    surface: &'a str,
                    euler_number: u32,
                }
                json_line(&mut out, &Total { kind: "euler", surface: name, euler_number: euler });
            }
            OutputFormat::Table => {
                let _ = writeln!(out, "{}: j in {{0, 1, inf}}", name);
                let _ = writeln!(out, "  {:<28} {:<4} {:<12} type", "place", "j", "multiplicity");
                for r in &rows {
                    let _ = writeln!(out, "  {:<28} {:<4} {:<12} {}", r.place, r.j, r.multiplicity, r.kodaira);
                }
                let _ = writeln!(out, "  total Euler number of singular fibres: {}", euler);
            }
        }
    }
    Outcome { stdout: out, stderr: String::new(), code: EXIT_OK }
}
