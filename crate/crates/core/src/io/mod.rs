//! Text formats: the poset DSL, plain matrices, and JSON documents.

pub mod docs;
pub mod dsl;
pub mod matrix_text;

pub use docs::{
    from_json, recheck_certificate, to_json, CertificateDoc, DetRepDoc, FamilyDoc, RecheckReport,
};
pub use dsl::{parse_affine, parse_poset, serialize_poset, PosetDoc};
pub use matrix_text::{format_matrix, parse_matrix};
