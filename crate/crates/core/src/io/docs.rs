//! JSON documents for determinantal representations and certificates.
//! Rationals are `"p/q"` strings; affine entries use the poset-DSL grammar.

use serde::{Deserialize, Serialize};

use super::dsl::parse_affine;
use crate::algebra::rational::{ceil, frac};
use crate::algebra::{parse_rational, rank, AffineMatrix, RatMatrix, Rational, VarId};
use crate::certify::{upper_bound, HessianCertificate};
use crate::error::{Error, Result};
use crate::families::{eval_recurrence, hessian_at, FamilyKind, FamilySpec, VarOrder, ZeroCase};
use crate::poset::DetRep;

pub const DETREP_FORMAT: &str = "dcpoly-detrep";
pub const CERTIFICATE_FORMAT: &str = "dcpoly-certificate";
pub const SCHEMA_VERSION: &str = "1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyDoc {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub composition: Option<Vec<usize>>,
}

impl FamilyDoc {
    pub fn from_spec(spec: &FamilySpec) -> Self {
        let (n, composition) = match spec.kind() {
            FamilyKind::Perm | FamilyKind::Hoperm => (Some(spec.n()), None),
            FamilyKind::Mperm => (None, Some(spec.composition().to_vec())),
        };
        Self {
            kind: spec.kind().name().to_string(),
            n,
            composition,
        }
    }

    pub fn to_spec(&self) -> Result<FamilySpec> {
        let kind: FamilyKind = self.kind.parse()?;
        let need_n = || {
            self.n
                .ok_or_else(|| Error::Document(format!("{} family needs `n`", self.kind)))
        };
        match kind {
            FamilyKind::Perm => FamilySpec::perm(need_n()?),
            FamilyKind::Hoperm => FamilySpec::hoperm(need_n()?),
            FamilyKind::Mperm => FamilySpec::mperm(
                self.composition
                    .clone()
                    .ok_or_else(|| Error::Document("mperm family needs `composition`".into()))?,
            ),
        }
    }
}

fn doc_rational(text: &str) -> Result<Rational> {
    parse_rational(text).map_err(|_| Error::Document(format!("malformed rational {text:?}")))
}

fn matrix_strings(m: &RatMatrix) -> Vec<Vec<String>> {
    m.row_vecs()
        .into_iter()
        .map(|r| r.iter().map(ToString::to_string).collect())
        .collect()
}

fn matrix_from_strings(rows: &[Vec<String>]) -> Result<RatMatrix> {
    RatMatrix::from_rows(
        rows.iter()
            .map(|r| r.iter().map(|t| doc_rational(t)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?,
    )
}

fn parse_var(text: &str) -> Result<VarId> {
    let form = parse_affine(text)?;
    let mut vars = form.variables();
    match (vars.next(), vars.next(), form.constant_term() == &Rational::from_integer(0.into())) {
        (Some(v), None, true) if form.coefficient(&v) == Rational::from_integer(1.into()) => Ok(v),
        _ => Err(Error::Document(format!("{text:?} is not a single variable"))),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DetRepDoc {
    pub format: String,
    pub version: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<FamilyDoc>,
    pub size: usize,
    pub chain_degree: usize,
    pub cycle_length: usize,
    pub sign_fixed: bool,
    pub top_adjoined: bool,
    pub vertices: Vec<String>,
    pub entries: Vec<Vec<String>>,
}

impl DetRepDoc {
    pub fn from_detrep(rep: &DetRep) -> Self {
        let n = rep.size();
        Self {
            format: DETREP_FORMAT.into(),
            version: SCHEMA_VERSION.into(),
            family: rep.family.as_ref().map(FamilyDoc::from_spec),
            size: n,
            chain_degree: rep.chain_degree,
            cycle_length: rep.cycle_length,
            sign_fixed: rep.sign_fixed,
            top_adjoined: rep.top_adjoined,
            vertices: rep.vertices.clone(),
            entries: (0..n)
                .map(|i| rep.matrix.row(i).iter().map(ToString::to_string).collect())
                .collect(),
        }
    }

    pub fn to_detrep(&self) -> Result<DetRep> {
        if self.format != DETREP_FORMAT || self.version != SCHEMA_VERSION {
            return Err(Error::Document(format!(
                "unsupported document {} version {}",
                self.format, self.version
            )));
        }
        let rows = self
            .entries
            .iter()
            .map(|r| r.iter().map(|e| parse_affine(e)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let matrix = AffineMatrix::from_rows(rows)?;
        if matrix.size() != self.size || self.vertices.len() != self.size {
            return Err(Error::Document(format!(
                "declared size {} does not match {} rows / {} vertices",
                self.size,
                matrix.size(),
                self.vertices.len()
            )));
        }
        Ok(DetRep {
            matrix,
            family: self.family.as_ref().map(FamilyDoc::to_spec).transpose()?,
            sign_fixed: self.sign_fixed,
            chain_degree: self.chain_degree,
            cycle_length: self.cycle_length,
            top_adjoined: self.top_adjoined,
            vertices: self.vertices.clone(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZeroCaseDoc {
    pub construction: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ell: Option<u8>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_columns: Option<Vec<usize>>,
}

impl ZeroCaseDoc {
    fn from_case(case: &ZeroCase) -> Self {
        let mut doc = Self {
            construction: String::new(),
            ell: case.ell(),
            c: None,
            k: None,
            d: None,
            max_columns: None,
        };
        match case {
            ZeroCase::Hoperm => doc.construction = "hoperm".into(),
            ZeroCase::Equal => doc.construction = "equal-parts".into(),
            ZeroCase::Unequal {
                k,
                max_columns,
                c,
                d,
            } => {
                doc.construction = "unequal-parts".into();
                doc.c = Some(*c);
                doc.k = Some(*k);
                doc.d = Some(d.to_string());
                doc.max_columns = Some(max_columns.clone());
            }
        }
        doc
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MismatchDoc {
    pub row: usize,
    pub col: usize,
    pub expected: String,
    pub actual: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureCheckDoc {
    pub form: String,
    pub passed: bool,
    pub mismatches: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub first_mismatch: Option<MismatchDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub printed_scale_passed: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateDoc {
    pub format: String,
    pub schema_version: String,
    pub tool_version: String,
    pub family: FamilyDoc,
    pub requested_family: FamilyDoc,
    pub relabeling: Vec<usize>,
    pub zero_case: ZeroCaseDoc,
    pub zero_point: Vec<Vec<String>>,
    pub value: String,
    pub hessian_size: usize,
    pub variable_order: Vec<String>,
    pub rank: usize,
    pub lower_bound: String,
    pub lower_bound_int: u64,
    pub upper_bound: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub structure_check: Option<StructureCheckDoc>,
    /// Certification is deterministic; kept for schema compatibility with
    /// randomized checks.
    pub seeds: Vec<u64>,
}

impl CertificateDoc {
    pub fn from_certificate(cert: &HessianCertificate) -> Self {
        Self {
            format: CERTIFICATE_FORMAT.into(),
            schema_version: SCHEMA_VERSION.into(),
            tool_version: env!("CARGO_PKG_VERSION").into(),
            family: FamilyDoc::from_spec(&cert.family),
            requested_family: FamilyDoc::from_spec(&cert.requested),
            relabeling: cert.zero.relabeling.clone(),
            zero_case: ZeroCaseDoc::from_case(&cert.zero.case),
            zero_point: matrix_strings(&cert.zero.point),
            value: cert.value.to_string(),
            hessian_size: cert.hessian_size,
            variable_order: cert.variable_order.vars().iter().map(ToString::to_string).collect(),
            rank: cert.rank,
            lower_bound: cert.lower_bound.to_string(),
            lower_bound_int: cert.lower_bound_int,
            upper_bound: cert.upper_bound as u64,
            structure_check: cert.structure_check.as_ref().map(|s| StructureCheckDoc {
                form: s.form.clone(),
                passed: s.passed,
                mismatches: s.mismatches,
                first_mismatch: s.first_mismatch.as_ref().map(|m| MismatchDoc {
                    row: m.row,
                    col: m.col,
                    expected: m.expected.to_string(),
                    actual: m.actual.to_string(),
                }),
                printed_scale_passed: s.printed_scale_passed,
            }),
            seeds: Vec::new(),
        }
    }
}

/// Result of recomputing a stored certificate from its zero point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecheckReport {
    pub value: Rational,
    pub rank: usize,
    pub problems: Vec<String>,
}

impl RecheckReport {
    pub fn passed(&self) -> bool {
        self.problems.is_empty()
    }
}

/// Recomputes `f(y)`, the Hessian rank and the bounds from the stored point
/// and variable order, and lists every disagreement with the document.
pub fn recheck_certificate(doc: &CertificateDoc) -> Result<RecheckReport> {
    if doc.format != CERTIFICATE_FORMAT || doc.schema_version != SCHEMA_VERSION {
        return Err(Error::Document(format!(
            "unsupported document {} schema {}",
            doc.format, doc.schema_version
        )));
    }
    let spec = doc.family.to_spec()?;
    let point = matrix_from_strings(&doc.zero_point)?;
    spec.check_point(&point)?;
    let order = VarOrder(
        doc.variable_order
            .iter()
            .map(|v| parse_var(v))
            .collect::<Result<Vec<_>>>()?,
    );
    let mut problems = Vec::new();
    let mut sorted = order.vars().to_vec();
    sorted.sort();
    let mut all = spec.var_order().0;
    all.sort();
    if sorted != all {
        return Err(Error::Document(
            "variable order is not a permutation of the family variables".into(),
        ));
    }

    let value = eval_recurrence(&spec, &point)?;
    if value != Rational::from_integer(0.into()) {
        problems.push(format!("f(y) = {value}, not 0"));
    }
    if doc_rational(&doc.value)? != value {
        problems.push(format!("stored value {} but recomputed {value}", doc.value));
    }
    let hessian = hessian_at(&spec, &point, &order)?;
    let rank = rank(&hessian);
    if hessian.rows() != doc.hessian_size {
        problems.push(format!(
            "stored Hessian size {} but recomputed {}",
            doc.hessian_size,
            hessian.rows()
        ));
    }
    if rank != doc.rank {
        problems.push(format!("stored rank {} but recomputed {rank}", doc.rank));
    }
    let lower = frac(rank as i64, 2);
    if doc_rational(&doc.lower_bound)? != lower {
        problems.push(format!("stored lower bound {} but rank/2 = {lower}", doc.lower_bound));
    }
    if ceil(&lower) != doc.lower_bound_int.into() {
        problems.push(format!(
            "stored integer lower bound {} but ceil(rank/2) = {}",
            doc.lower_bound_int,
            ceil(&lower)
        ));
    }
    if u128::from(doc.upper_bound) != upper_bound(&spec) {
        problems.push(format!(
            "stored upper bound {} but closed form gives {}",
            doc.upper_bound,
            upper_bound(&spec)
        ));
    }
    Ok(RecheckReport {
        value,
        rank,
        problems,
    })
}

pub fn to_json<T: Serialize>(doc: &T) -> String {
    let mut text = serde_json::to_string_pretty(doc).expect("documents serialize");
    text.push('\n');
    text
}

pub fn from_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Document(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certify::certify_lower_bound;
    use crate::poset::family_detrep;

    #[test]
    fn detrep_round_trip() {
        let rep = family_detrep(&FamilySpec::mperm(vec![2, 1]).unwrap()).unwrap();
        let text = to_json(&DetRepDoc::from_detrep(&rep));
        let back: DetRepDoc = from_json(&text).unwrap();
        assert_eq!(back.to_detrep().unwrap(), rep);
    }

    #[test]
    fn certificate_round_trip_and_recheck() {
        let cert = certify_lower_bound(&FamilySpec::mperm(vec![1, 2]).unwrap()).unwrap();
        let doc = CertificateDoc::from_certificate(&cert);
        let back: CertificateDoc = from_json(&to_json(&doc)).unwrap();
        assert_eq!(back, doc);
        let report = recheck_certificate(&back).unwrap();
        assert!(report.passed(), "{:?}", report.problems);
        assert_eq!(report.rank, cert.rank);
    }

    #[test]
    fn tampered_certificate_is_caught() {
        let cert = certify_lower_bound(&FamilySpec::perm(3).unwrap()).unwrap();
        let mut doc = CertificateDoc::from_certificate(&cert);
        doc.rank = 8;
        doc.zero_point[0][0] = "5".into();
        let report = recheck_certificate(&doc).unwrap();
        assert!(!report.passed());
        assert!(report.problems.iter().any(|p| p.contains("not 0")));
    }

    #[test]
    fn wrong_schema_rejected() {
        let cert = certify_lower_bound(&FamilySpec::perm(3).unwrap()).unwrap();
        let mut doc = CertificateDoc::from_certificate(&cert);
        doc.schema_version = "2".into();
        assert!(recheck_certificate(&doc).is_err());
    }
}
