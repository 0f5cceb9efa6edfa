//! JSON certificate documents. A document carries the graph it speaks
//! about, so it can be checked on its own.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::certificate::Certificate;
use crate::classifier::{Lemma, Proof, Verdict, Witness};
use crate::graph::{CanonicalKey, Graph};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateDocument {
    pub format_version: u32,
    pub graph: Graph,
    pub verdict: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Certificate>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub lemmas: BTreeMap<CanonicalKey, Lemma>,
}

#[derive(Debug, Error)]
pub enum DocumentError {
    #[error("malformed certificate document: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported format_version {0} (expected {FORMAT_VERSION})")]
    Version(u32),
    #[error("verdict `{0}` is missing its `{1}` field")]
    Missing(String, &'static str),
    #[error("unknown verdict `{0}`")]
    UnknownVerdict(String),
}

impl CertificateDocument {
    pub fn new(g: &Graph, verdict: &Verdict) -> CertificateDocument {
        let mut doc = CertificateDocument {
            format_version: FORMAT_VERSION,
            graph: g.clone(),
            verdict: verdict.tag().to_string(),
            witness: None,
            certificate: None,
            reason: None,
            lemmas: BTreeMap::new(),
        };
        match verdict {
            Verdict::Occurs(w) => doc.witness = Some(w.clone()),
            Verdict::NotOccurs(p) => {
                doc.certificate = Some(p.certificate.clone());
                doc.lemmas = p.lemmas.clone();
            }
            Verdict::Unknown(r) => doc.reason = Some(r.clone()),
        }
        doc
    }

    pub fn verdict(&self) -> Result<Verdict, DocumentError> {
        if self.format_version != FORMAT_VERSION {
            return Err(DocumentError::Version(self.format_version));
        }
        let missing = |field| DocumentError::Missing(self.verdict.clone(), field);
        Ok(match self.verdict.as_str() {
            "occurs" => Verdict::Occurs(self.witness.clone().ok_or_else(|| missing("witness"))?),
            "not_occurs" => Verdict::NotOccurs(Proof {
                certificate: self.certificate.clone().ok_or_else(|| missing("certificate"))?,
                lemmas: self.lemmas.clone(),
            }),
            "unknown" => Verdict::Unknown(self.reason.clone().ok_or_else(|| missing("reason"))?),
            other => return Err(DocumentError::UnknownVerdict(other.to_string())),
        })
    }

    /// Pretty JSON with a trailing newline; equal verdicts give equal bytes.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("documents always serialize");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<CertificateDocument, DocumentError> {
        Ok(serde_json::from_str(text)?)
    }

    /// One document or a JSON array of them.
    pub fn many_from_json(text: &str) -> Result<Vec<CertificateDocument>, DocumentError> {
        let value: serde_json::Value = serde_json::from_str(text)?;
        Ok(match value {
            serde_json::Value::Array(items) => items
                .into_iter()
                .map(serde_json::from_value)
                .collect::<Result<_, _>>()?,
            single => vec![serde_json::from_value(single)?],
        })
    }
}
