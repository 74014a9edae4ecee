//! JSON documents for matrices, lift certificates and obstruction reports.
//!
//! Rationals are strings (`"3"`, `"-1/2"`), series are lists of
//! `[exponent, coefficient]` pairs in ascending exponent order, and fractions
//! are `{"num": series, "den": series}`. Output is canonical: keys sorted,
//! two-space indentation, trailing newline.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hahn::{verify_lift, GenFrac, GenPoly, SeriesMatrix};
use crate::lift::{relation_vanishes, CertificateCheck, LiftCertificate};
use crate::obstruct::{Assignment, ObstructionReport};
use crate::scalars::{format_rational, parse_rational, FieldSpec, Rational};
use crate::tropical::TropMatrix;

/// Serializes with sorted keys and a trailing newline.
pub fn to_canonical_json<T: Serialize>(value: &T) -> Result<String> {
    let v = serde_json::to_value(value).map_err(|e| Error::Invariant(format!("serialization: {e}")))?;
    let mut s = serde_json::to_string_pretty(&v).map_err(|e| Error::Invariant(format!("serialization: {e}")))?;
    s.push('\n');
    Ok(s)
}

fn from_json<T: for<'de> Deserialize<'de>>(text: &str, what: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("{what}: {e}")))
}

fn grid_strings(b: &TropMatrix) -> Vec<Vec<String>> {
    (0..b.rows()).map(|i| b.row(i).iter().map(format_rational).collect()).collect()
}

fn parse_grid(rows: usize, cols: usize, grid: &[Vec<String>]) -> Result<TropMatrix> {
    if grid.len() != rows || grid.iter().any(|r| r.len() != cols) {
        return Err(Error::Parse(format!("entries do not form a {rows}×{cols} grid")));
    }
    let entries = grid.iter().flatten().map(|s| parse_rational(s)).collect::<Result<Vec<Rational>>>()?;
    TropMatrix::new(rows, cols, entries)
}

fn parse_field(s: &str) -> Result<FieldSpec> {
    s.parse()
}

/// A tropical matrix with the field it is meant to be lifted over.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixDoc {
    pub field: String,
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<String>,
}

impl MatrixDoc {
    pub fn new(b: &TropMatrix, field: FieldSpec) -> Self {
        MatrixDoc {
            field: field.to_string(),
            rows: b.rows(),
            cols: b.cols(),
            entries: grid_strings(b),
            name: None,
            provenance: None,
        }
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn with_provenance(mut self, provenance: impl Into<String>) -> Self {
        self.provenance = Some(provenance.into());
        self
    }

    pub fn matrix(&self) -> Result<TropMatrix> {
        parse_grid(self.rows, self.cols, &self.entries)
    }

    pub fn field(&self) -> Result<FieldSpec> {
        parse_field(&self.field)
    }

    /// Parses and re-renders entries and field, e.g. `"2/4"` becomes `"1/2"`.
    pub fn canonical(&self) -> Result<MatrixDoc> {
        let b = self.matrix()?;
        let f = self.field()?;
        Ok(MatrixDoc { name: self.name.clone(), provenance: self.provenance.clone(), ..MatrixDoc::new(&b, f) })
    }

    pub fn from_json(text: &str) -> Result<MatrixDoc> {
        let doc: MatrixDoc = from_json(text, "matrix document")?;
        doc.matrix()?;
        doc.field()?;
        Ok(doc)
    }

    pub fn to_json(&self) -> Result<String> {
        to_canonical_json(self)
    }
}

/// `[exponent, coefficient]` pairs.
pub type SeriesDoc = Vec<(String, String)>;

fn series_doc(p: &GenPoly) -> SeriesDoc {
    p.terms().iter().map(|(e, c)| (format_rational(e), c.to_string())).collect()
}

fn parse_series(f: FieldSpec, doc: &SeriesDoc) -> Result<GenPoly> {
    let terms = doc
        .iter()
        .map(|(e, c)| Ok((parse_rational(e)?, f.parse_elem(c)?)))
        .collect::<Result<Vec<_>>>()?;
    GenPoly::from_terms(f, terms)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FracDoc {
    pub num: SeriesDoc,
    pub den: SeriesDoc,
}

fn frac_doc(x: &GenFrac) -> FracDoc {
    FracDoc { num: series_doc(x.num()), den: series_doc(x.den()) }
}

fn parse_frac(f: FieldSpec, doc: &FracDoc) -> Result<GenFrac> {
    GenFrac::new(parse_series(f, &doc.num)?, parse_series(f, &doc.den)?)
}

/// Per-column record of a Cramer-rule construction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct ColumnDoc {
    pub split: [usize; 2],
    pub triple: Vec<usize>,
    pub xi: Vec<String>,
    pub theta1: String,
    pub theta2: String,
}

/// A lift of `matrix` of rank at most `targetRank`, with row relations
/// (one series per row) that annihilate it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct CertificateDoc {
    pub field: String,
    pub target_rank: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub method: Option<String>,
    pub matrix: Vec<Vec<String>>,
    pub lift: Vec<Vec<FracDoc>>,
    pub relations: Vec<Vec<SeriesDoc>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub columns: Vec<ColumnDoc>,
}

impl CertificateDoc {
    pub fn from_certificate(cert: &LiftCertificate) -> Self {
        let relations = [&cert.frame.first, &cert.frame.second].into_iter().map(|c| c.iter().map(series_doc).collect()).collect();
        let columns = cert
            .columns
            .iter()
            .map(|c| ColumnDoc {
                split: [c.split.0, c.split.1],
                triple: c.triple.clone(),
                xi: c.xi.iter().map(ToString::to_string).collect(),
                theta1: format_rational(&c.theta1),
                theta2: format_rational(&c.theta2),
            })
            .collect();
        CertificateDoc {
            method: Some(cert.method.to_string()),
            relations,
            columns,
            ..CertificateDoc::from_lift(&cert.b, &cert.lift, &[], cert.target_rank)
        }
    }

    /// A certificate with explicit relations and no construction record.
    pub fn from_lift(b: &TropMatrix, lift: &SeriesMatrix, relations: &[Vec<GenPoly>], target_rank: usize) -> Self {
        CertificateDoc {
            field: lift.field().to_string(),
            target_rank,
            method: None,
            matrix: grid_strings(b),
            lift: (0..lift.rows()).map(|i| lift.row(i).iter().map(frac_doc).collect()).collect(),
            relations: relations.iter().map(|r| r.iter().map(series_doc).collect()).collect(),
            columns: Vec::new(),
        }
    }

    pub fn from_json(text: &str) -> Result<CertificateDoc> {
        from_json(text, "certificate")
    }

    pub fn to_json(&self) -> Result<String> {
        to_canonical_json(self)
    }

    pub fn field_spec(&self) -> Result<FieldSpec> {
        parse_field(&self.field)
    }

    pub fn tropical_matrix(&self) -> Result<TropMatrix> {
        let cols = self.matrix.first().map_or(0, Vec::len);
        parse_grid(self.matrix.len(), cols, &self.matrix)
    }

    pub fn series_matrix(&self) -> Result<SeriesMatrix> {
        let f = self.field_spec()?;
        let rows = self.lift.len();
        let cols = self.lift.first().map_or(0, Vec::len);
        if self.lift.iter().any(|r| r.len() != cols) {
            return Err(Error::Parse("lift rows have different lengths".into()));
        }
        let entries = self.lift.iter().flatten().map(|d| parse_frac(f, d)).collect::<Result<Vec<_>>>()?;
        SeriesMatrix::new(f, rows, cols, entries)
    }

    /// Re-checks degree match, rank bound and every relation from the
    /// document alone.
    pub fn check(&self) -> Result<CertificateCheck> {
        let f = self.field_spec()?;
        let b = self.tropical_matrix()?;
        let lift = self.series_matrix()?;
        let report = verify_lift(&lift, &b, self.target_rank)?;
        let mut bad = Vec::new();
        for (k, rel) in self.relations.iter().enumerate() {
            let weights = rel.iter().map(|s| parse_series(f, s)).collect::<Result<Vec<_>>>()?;
            if !report.shape_ok || weights.len() != lift.rows() || !relation_vanishes(&lift, &weights)? {
                bad.push(k);
            }
        }
        Ok(CertificateCheck { lift: report, nonvanishing_relations: bad })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct MinorDoc {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub singular: bool,
    pub perm_value: String,
    pub achiever_count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct AssignmentDoc {
    pub values: Vec<Vec<String>>,
    /// Positions fixed to 1, as `[row, column]`.
    pub gauge: Vec<[usize; 2]>,
}

fn assignment_doc(a: &Assignment) -> AssignmentDoc {
    let values = (0..a.rows).map(|i| (0..a.cols).map(|j| a.get(i, j).to_string()).collect()).collect();
    let gauge = (0..a.rows).flat_map(|i| (0..a.cols).map(move |j| (i, j))).filter(|&(i, j)| a.is_gauge(i, j)).map(|(i, j)| [i, j]).collect();
    AssignmentDoc { values, gauge }
}

/// Counts beyond `u64` are written as strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Count {
    Small(u64),
    Big(String),
}

impl From<u128> for Count {
    fn from(n: u128) -> Self {
        u64::try_from(n).map_or_else(|_| Count::Big(n.to_string()), Count::Small)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct ReportDoc {
    pub verdict: String,
    pub r: usize,
    pub field: String,
    pub searched_count: Count,
    pub nodes_visited: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness_assignment: Option<AssignmentDoc>,
    pub minors: Vec<MinorDoc>,
}

impl ReportDoc {
    pub fn from_report(rep: &ObstructionReport) -> Self {
        ReportDoc {
            verdict: rep.verdict.to_string(),
            r: rep.r,
            field: rep.field.to_string(),
            searched_count: rep.searched_count.into(),
            nodes_visited: rep.nodes_visited,
            witness_assignment: rep.witness.as_ref().map(assignment_doc),
            minors: rep
                .minors
                .iter()
                .map(|m| MinorDoc {
                    rows: m.rows.clone(),
                    cols: m.cols.clone(),
                    singular: m.is_singular(),
                    perm_value: format_rational(&m.perm_value),
                    achiever_count: m.achiever_count(),
                })
                .collect(),
        }
    }

    pub fn from_json(text: &str) -> Result<ReportDoc> {
        from_json(text, "obstruction report")
    }

    pub fn to_json(&self) -> Result<String> {
        to_canonical_json(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::golden;
    use crate::lift::kapranov_upper;
    use crate::obstruct::{certify_lower_bound, DEFAULT_BUDGET};
    use crate::scalars::rat;

    #[test]
    fn matrix_doc_roundtrips_byte_identically() {
        let doc = MatrixDoc::new(&golden::matrix_b(), FieldSpec::Fp(3)).with_name("B");
        let text = doc.to_json().unwrap();
        let back = MatrixDoc::from_json(&text).unwrap();
        assert_eq!(back, doc);
        assert_eq!(back.to_json().unwrap(), text);
        assert!(text.find("\"cols\"").unwrap() < text.find("\"entries\"").unwrap());
    }

    #[test]
    fn canonical_form_reduces_fractions() {
        let text = r#"{"field":"F5","rows":1,"cols":2,"entries":[["2/4"," 3"]]}"#;
        let doc = MatrixDoc::from_json(text).unwrap().canonical().unwrap();
        assert_eq!(doc.entries, vec![vec!["1/2".to_string(), "3".to_string()]]);
        assert_eq!(doc.matrix().unwrap().get(0, 0), &rat(1, 2));
    }

    #[test]
    fn malformed_documents_are_parse_errors() {
        for bad in [
            "{",
            r#"{"field":"F5","rows":2,"cols":1,"entries":[["1"]]}"#,
            r#"{"field":"F6","rows":1,"cols":1,"entries":[["1"]]}"#,
            r#"{"field":"F5","rows":1,"cols":1,"entries":[["x"]]}"#,
            r#"{"field":"F5","rows":1,"cols":1,"entries":[["1"]],"extra":0}"#,
        ] {
            assert!(matches!(MatrixDoc::from_json(bad), Err(Error::Parse(_))), "{bad}");
        }
    }

    #[test]
    fn certificate_roundtrip_and_recheck() {
        let cert = kapranov_upper(&golden::matrix_b(), FieldSpec::Gf4).unwrap();
        let doc = CertificateDoc::from_certificate(&cert);
        let text = doc.to_json().unwrap();
        let back = CertificateDoc::from_json(&text).unwrap();
        assert_eq!(back, doc);
        assert!(back.check().unwrap().passed());
        assert_eq!(back.series_matrix().unwrap(), cert.lift);
    }

    #[test]
    fn explicit_f3_lift_checks_at_four_not_three() {
        let b = golden::matrix_b();
        let rel = vec![golden::explicit_f3_relation()];
        let at4 = CertificateDoc::from_lift(&b, &golden::explicit_f3_lift(), &rel, 4);
        let at3 = CertificateDoc { target_rank: 3, ..at4.clone() };
        assert!(at4.check().unwrap().passed());
        let c3 = at3.check().unwrap();
        assert!(!c3.passed());
        assert_eq!(c3.lift.rank, 4);
    }

    #[test]
    fn report_document_lists_minors() {
        let rep = certify_lower_bound(&golden::matrix_d(), 3, FieldSpec::Fp(2), DEFAULT_BUDGET).unwrap();
        let doc = ReportDoc::from_report(&rep);
        assert_eq!(doc.verdict, "CERTIFIED");
        assert_eq!(doc.minors.len(), 25);
        assert_eq!(ReportDoc::from_json(&doc.to_json().unwrap()).unwrap(), doc);
        assert_eq!(Count::from(u128::MAX), Count::Big(u128::MAX.to_string()));
    }
}
