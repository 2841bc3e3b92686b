//! Input documents for `kumfib report`.

use serde::Deserialize;

use kumfib::hurwitz::{validate, validate_against, BranchData, HurwitzCover, Mark, Violation};
use kumfib::perm::Permutation;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Table,
    Jsonl,
}

#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BranchDataDoc {
    pub n: usize,
    pub x: Vec<usize>,
    pub y: Vec<usize>,
    pub z: Vec<usize>,
    pub r: usize,
}

#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TupleDoc {
    pub degree: usize,
    pub marks: Vec<String>,
    /// Cycle notation, e.g. `"(1 5 2 4)(3 6)"`.
    pub permutations: Vec<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Options {
    pub precision_bits: Option<u32>,
    pub step_scale: Option<f64>,
    pub output_format: Option<OutputFormat>,
    pub tuple_limit: Option<usize>,
    pub search_budget: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputDocument {
    pub branch_data: Option<BranchDataDoc>,
    pub tuple: Option<TupleDoc>,
    #[serde(default)]
    pub options: Options,
}

/// What the pipeline runs on after validation.
#[derive(Clone, Debug, PartialEq)]
pub enum Subject {
    Data(BranchData),
    Cover(BranchData, HurwitzCover),
}

#[derive(Debug, PartialEq)]
pub enum DocumentError {
    Schema(String),
    Invalid(String),
    Violations(Vec<Violation>),
}

impl std::fmt::Display for DocumentError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            DocumentError::Schema(m) => write!(f, "schema error {}", m),
            DocumentError::Invalid(m) => write!(f, "invalid input: {}", m),
            DocumentError::Violations(v) => {
                write!(f, "invalid cover:")?;
                for x in v {
                    write!(f, "\n  - {}", x)?;
                }
                Ok(())
            }
        }
    }
}

/// Parses JSON, reporting the field path and position of the first problem.
pub fn parse_document(text: &str) -> Result<InputDocument, DocumentError> {
    let mut de = serde_json::Deserializer::from_str(text);
    let doc: InputDocument = serde_path_to_error::deserialize(&mut de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        DocumentError::Schema(format!("at `{}` (line {}, column {}): {}", path, inner.line(), inner.column(), inner))
    })?;
    de.end().map_err(|e| DocumentError::Schema(format!("trailing content: {}", e)))?;
    Ok(doc)
}

/// Branch data read off a cover; `r` counts ramification at the extra marks.
pub fn branch_data_of_cover(c: &HurwitzCover) -> Result<BranchData, DocumentError> {
    let r = c
        .marks
        .iter()
        .filter(|m| matches!(m, Mark::Extra(_)))
        .map(|&m| c.degree - c.at(m).cycles().len())
        .sum();
    BranchData::new(c.degree, c.profile(Mark::Zero), c.profile(Mark::Infinity), c.profile(Mark::Quarter256), r)
        .map_err(|e| DocumentError::Invalid(e.to_string()))
}

fn cover_of(doc: &TupleDoc) -> Result<HurwitzCover, DocumentError> {
    let marks = doc
        .marks
        .iter()
        .enumerate()
        .map(|(i, m)| m.parse::<Mark>().map_err(|e| DocumentError::Invalid(format!("tuple.marks[{}]: {}", i, e))))
        .collect::<Result<Vec<_>, _>>()?;
    let perms = doc
        .permutations
        .iter()
        .enumerate()
        .map(|(i, p)| {
            Permutation::parse(p, doc.degree)
                .map_err(|e| DocumentError::Invalid(format!("tuple.permutations[{}]: {}", i, e)))
        })
        .collect::<Result<Vec<_>, _>>()?;
    HurwitzCover::new(doc.degree, marks, perms).map_err(|e| DocumentError::Invalid(format!("tuple: {}", e)))
}

impl InputDocument {
    pub fn subject(&self) -> Result<Subject, DocumentError> {
        let data = match &self.branch_data {
            Some(b) => Some(
                BranchData::new(b.n, b.x.clone(), b.y.clone(), b.z.clone(), b.r)
                    .map_err(|e| DocumentError::Invalid(format!("branch_data: {}", e)))?,
            ),
            None => None,
        };
        match (&self.tuple, data) {
            (None, None) => Err(DocumentError::Invalid("document needs `branch_data` or `tuple`".into())),
            (None, Some(b)) => Ok(Subject::Data(b)),
            (Some(t), given) => {
                let cover = cover_of(t)?;
                match &given {
                    Some(b) => validate_against(&cover, b).map_err(DocumentError::Violations)?,
                    None => validate(&cover).map_err(DocumentError::Violations)?,
                }
                let b = match given {
                    Some(b) => b,
                    None => branch_data_of_cover(&cover)?,
                };
                Ok(Subject::Cover(b, cover))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn schema_errors_name_the_field() {
        let e = parse_document("{\n \"branch_data\": {\"n\": 5, \"x\": [5], \"y\": \"oops\"}\n}").unwrap_err();
        let msg = e.to_string();
        assert!(msg.contains("branch_data.y"), "{}", msg);
        assert!(msg.contains("line 2"), "{}", msg);
    }

    #[test]
    fn unknown_fields_are_rejected() {
        assert!(matches!(parse_document("{\"bogus\": 1}"), Err(DocumentError::Schema(_))));
    }

    #[test]
    fn tuple_yields_branch_data() {
        let doc = parse_document(
            r#"{"tuple": {"degree": 2, "marks": ["1/256", "inf", "0"], "permutations": ["()", "(1 2)", "(12)"]}}"#,
        )
        .unwrap();
        match doc.subject().unwrap() {
            Subject::Cover(b, _) => assert_eq!((b.x, b.y, b.z, b.r), (vec![2], vec![2], vec![1, 1], 0)),
            other => panic!("{:?}", other),
        }
    }
}
