//! JSON documents for algebras, cobrackets and reports.
//!
//! Indices in documents are 1-based. Coefficients are strings `"p"` or
//! `"p/q"`. Emission is canonical: sorted keys, records sorted by index,
//! zero coefficients omitted, two-space indentation and a final newline, so
//! `emit(parse(text)) == text` for any emitted text.

use std::collections::BTreeMap;
use std::path::Path;

use num_traits::Zero;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::algebra::NLieAlgebra;
use crate::bialgebra::Cobracket;
use crate::catalog;
use crate::index::combinations;
use crate::report::{CheckReport, CheckSummary};
use crate::scalar::{parse, to_text, zeros};
use crate::tensor::DenseTensor;

#[derive(Debug, thiserror::Error)]
pub enum IoError {
    #[error("cannot read {path}: {source}")]
    Read {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("cannot write {path}: {source}")]
    Write {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Unknown(crate::Error),
    #[error("schema violation: {0}")]
    Schema(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Term {
    pub basis: usize,
    pub coeff: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketRecord {
    pub indices: Vec<usize>,
    pub value: Vec<Term>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDocument {
    pub name: String,
    pub arity: usize,
    pub dim: usize,
    pub brackets: Vec<BracketRecord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TensorTerm {
    pub slots: Vec<usize>,
    pub coeff: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CobracketEntry {
    pub source: usize,
    pub tensor: Vec<TensorTerm>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CobracketDocument {
    pub name: String,
    /// Name of an algebra in the same bundle, or a catalog name.
    pub over: String,
    /// `false` accepts non-antisymmetric images.
    #[serde(default = "yes")]
    pub antisymmetric: bool,
    pub entries: Vec<CobracketEntry>,
}

fn yes() -> bool {
    true
}

/// Several named objects in one file.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Bundle {
    #[serde(default)]
    pub algebras: Vec<AlgebraDocument>,
    #[serde(default)]
    pub cobrackets: Vec<CobracketDocument>,
}

/// Any top-level document.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Document {
    Algebra(AlgebraDocument),
    Cobracket(CobracketDocument),
    Bundle(Bundle),
}

impl Document {
    fn into_bundle(self) -> Bundle {
        match self {
            Document::Algebra(a) => Bundle {
                algebras: vec![a],
                cobrackets: vec![],
            },
            Document::Cobracket(c) => Bundle {
                algebras: vec![],
                cobrackets: vec![c],
            },
            Document::Bundle(b) => b,
        }
    }
}

fn schema(msg: impl Into<String>) -> IoError {
    IoError::Schema(msg.into())
}

/// Sorted-key, two-space JSON with a trailing newline.
pub fn canonical_json<T: Serialize>(value: &T) -> String {
    // serde_json's default map is ordered, so going through `Value` sorts keys
    let v = serde_json::to_value(value).expect("serializable");
    let mut s = serde_json::to_string_pretty(&v).expect("serializable");
    s.push('\n');
    s
}

pub fn algebra_document(name: &str, alg: &NLieAlgebra) -> AlgebraDocument {
    AlgebraDocument {
        name: name.to_string(),
        arity: alg.arity(),
        dim: alg.dim(),
        brackets: alg
            .canonical_entries()
            .into_iter()
            .map(|(idx, v)| BracketRecord {
                indices: idx.iter().map(|i| i + 1).collect(),
                value: v
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(k, c)| Term {
                        basis: k + 1,
                        coeff: to_text(c),
                    })
                    .collect(),
            })
            .collect(),
    }
}

pub fn algebra_from_document(doc: &AlgebraDocument) -> Result<NLieAlgebra, IoError> {
    let (n, d) = (doc.arity, doc.dim);
    let mut entries = Vec::with_capacity(doc.brackets.len());
    for (r, rec) in doc.brackets.iter().enumerate() {
        let at = |msg: String| schema(format!("algebra `{}`, bracket record {}: {msg}", doc.name, r + 1));
        if rec.indices.len() != n {
            return Err(at(format!("expected {n} indices, found {}", rec.indices.len())));
        }
        if rec.indices.iter().any(|&i| i == 0 || i > d) {
            return Err(at(format!("indices {:?} outside 1..={d}", rec.indices)));
        }
        if !rec.indices.windows(2).all(|w| w[0] < w[1]) {
            return Err(at(format!("indices {:?} are not strictly increasing", rec.indices)));
        }
        let mut v = zeros(d);
        for t in &rec.value {
            if t.basis == 0 || t.basis > d {
                return Err(at(format!("basis {} outside 1..={d}", t.basis)));
            }
            let c = parse(&t.coeff).map_err(|e| at(e.to_string()))?;
            if !v[t.basis - 1].is_zero() {
                return Err(at(format!("basis {} listed twice", t.basis)));
            }
            v[t.basis - 1] = c;
        }
        entries.push((rec.indices.iter().map(|i| i - 1).collect(), v));
    }
    NLieAlgebra::from_canonical(n, d, entries).map_err(|e| schema(format!("algebra `{}`: {e}", doc.name)))
}

pub fn cobracket_document(name: &str, over: &str, cb: &Cobracket) -> CobracketDocument {
    CobracketDocument {
        name: name.to_string(),
        over: over.to_string(),
        antisymmetric: cb.is_antisymmetric(),
        entries: cb
            .images()
            .iter()
            .enumerate()
            .filter(|(_, t)| !t.is_zero())
            .map(|(i, t)| CobracketEntry {
                source: i + 1,
                tensor: t
                    .nonzero()
                    .map(|(idx, c)| TensorTerm {
                        slots: idx.iter().map(|s| s + 1).collect(),
                        coeff: to_text(c),
                    })
                    .collect(),
            })
            .collect(),
    }
}

pub fn cobracket_from_document(doc: &CobracketDocument, alg: NLieAlgebra) -> Result<Cobracket, IoError> {
    let (n, d) = (alg.arity(), alg.dim());
    let mut images = vec![DenseTensor::zeros(n, d); d];
    let mut seen = std::collections::HashSet::new();
    for e in &doc.entries {
        let at = |msg: String| schema(format!("cobracket `{}`, source {}: {msg}", doc.name, e.source));
        if e.source == 0 || e.source > d {
            return Err(at(format!("source outside 1..={d}")));
        }
        if !seen.insert(e.source) {
            return Err(at("source listed twice".into()));
        }
        for t in &e.tensor {
            if t.slots.len() != n || t.slots.iter().any(|&s| s == 0 || s > d) {
                return Err(at(format!("slots {:?} are not {n} indices in 1..={d}", t.slots)));
            }
            let idx: Vec<usize> = t.slots.iter().map(|s| s - 1).collect();
            let c = parse(&t.coeff).map_err(|err| at(err.to_string()))?;
            if !images[e.source - 1].get(&idx).is_zero() {
                return Err(at(format!("slots {:?} listed twice", t.slots)));
            }
            images[e.source - 1].set(&idx, c);
        }
    }
    let built = if doc.antisymmetric {
        Cobracket::new(alg, images)
    } else {
        Cobracket::raw(alg, images)
    };
    built.map_err(|e| schema(format!("cobracket `{}`: {e}", doc.name)))
}

pub fn parse_document(text: &str) -> Result<Document, IoError> {
    serde_json::from_str(text).map_err(|e| schema(e.to_string()))
}

pub fn parse_algebra(text: &str) -> Result<(String, NLieAlgebra), IoError> {
    let doc: AlgebraDocument = serde_json::from_str(text).map_err(|e| schema(e.to_string()))?;
    Ok((doc.name.clone(), algebra_from_document(&doc)?))
}

pub fn emit_algebra(name: &str, alg: &NLieAlgebra) -> String {
    canonical_json(&algebra_document(name, alg))
}

pub fn emit_cobracket(name: &str, over: &str, cb: &Cobracket) -> String {
    canonical_json(&cobracket_document(name, over, cb))
}

/// Hex SHA-256 of the input bytes.
pub fn digest(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// A resolved input: its label, canonical text (for hashing) and contents.
#[derive(Debug, Clone)]
pub struct Source {
    pub label: String,
    pub text: String,
    bundle: Bundle,
    selector: Option<String>,
}

impl Source {
    pub fn digest(&self) -> String {
        digest(self.text.as_bytes())
    }

    pub fn bundle(&self) -> &Bundle {
        &self.bundle
    }

    /// The algebra this input names: a catalog algebra, the selected or
    /// first algebra of a file, or the algebra under a cobracket.
    pub fn algebra(&self) -> Result<(String, NLieAlgebra), IoError> {
        let pick = |name: &str| self.bundle.algebras.iter().find(|a| a.name == name);
        let doc = match &self.selector {
            Some(s) => pick(s),
            None => self.bundle.algebras.first(),
        };
        if let Some(doc) = doc {
            return Ok((doc.name.clone(), algebra_from_document(doc)?));
        }
        let cb = self.cobracket_doc()?;
        Ok((cb.over.clone(), self.resolve_algebra(&cb.over)?))
    }

    fn cobracket_doc(&self) -> Result<&CobracketDocument, IoError> {
        let found = match &self.selector {
            Some(s) => self.bundle.cobrackets.iter().find(|c| &c.name == s),
            None => self.bundle.cobrackets.first(),
        };
        found.ok_or_else(|| match &self.selector {
            Some(s) => IoError::Unknown(crate::Error::UnknownName {
                name: s.clone(),
                available: self
                    .bundle
                    .algebras
                    .iter()
                    .map(|a| a.name.as_str())
                    .chain(self.bundle.cobrackets.iter().map(|c| c.name.as_str()))
                    .collect::<Vec<_>>()
                    .join(", "),
            }),
            None => schema(format!("{} contains no cobracket", self.label)),
        })
    }

    fn resolve_algebra(&self, name: &str) -> Result<NLieAlgebra, IoError> {
        match self.bundle.algebras.iter().find(|a| a.name == name) {
            Some(doc) => algebra_from_document(doc),
            None => catalog::algebra(name).map_err(IoError::Unknown),
        }
    }

    pub fn cobracket(&self) -> Result<(String, Cobracket), IoError> {
        let doc = self.cobracket_doc()?;
        let alg = self.resolve_algebra(&doc.over)?;
        Ok((doc.name.clone(), cobracket_from_document(doc, alg)?))
    }
}

/// Resolves `catalog:NAME`, `PATH` or `PATH#NAME`. Catalog entries are
/// materialized as canonical documents so digests are stable.
pub fn load(spec: &str) -> Result<Source, IoError> {
    if let Some(name) = spec.strip_prefix("catalog:") {
        let bundle = match catalog::algebra(name) {
            Ok(alg) => Bundle {
                algebras: vec![algebra_document(name, &alg)],
                cobrackets: vec![],
            },
            Err(crate::Error::UnknownName { .. }) => {
                let cb = catalog::cobracket(name).map_err(|e| match e {
                    crate::Error::UnknownName { name, .. } => IoError::Unknown(crate::Error::UnknownName {
                        name,
                        available: catalog::all_names(),
                    }),
                    e => IoError::Unknown(e),
                })?;
                let over = catalog_algebra_name(name);
                Bundle {
                    algebras: vec![],
                    cobrackets: vec![cobracket_document(name, &over, &cb)],
                }
            }
            Err(e) => return Err(IoError::Unknown(e)),
        };
        return Ok(Source {
            label: spec.to_string(),
            text: canonical_json(&bundle),
            bundle,
            selector: None,
        });
    }
    let (path, selector) = match spec.rsplit_once('#') {
        Some((p, s)) => (p, Some(s.to_string())),
        None => (spec, None),
    };
    let text = std::fs::read_to_string(Path::new(path)).map_err(|source| IoError::Read {
        path: path.to_string(),
        source,
    })?;
    let bundle = parse_document(&text)?.into_bundle();
    Ok(Source {
        label: spec.to_string(),
        text,
        bundle,
        selector,
    })
}

/// Catalog algebra underlying a catalog cobracket.
fn catalog_algebra_name(cobracket: &str) -> String {
    if let Some(a) = cobracket.strip_prefix("zero:") {
        return a.to_string();
    }
    match cobracket {
        "wedge-abelian" => "abelian:n3:d4".into(),
        _ => "A4".into(),
    }
}

/// The structured report written by the CLI.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub tool: String,
    pub version: String,
    pub command: String,
    /// Input label to SHA-256 of its text.
    pub inputs: BTreeMap<String, String>,
    pub passed: bool,
    pub checks: Vec<CheckSummary>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub seed: Option<u64>,
    /// Derived objects or numbers (e.g. a constructed double, cohomology
    /// dimensions).
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub output: Option<serde_json::Value>,
    pub elapsed_ms: u64,
}

impl ReportDocument {
    pub fn new(command: &str, sources: &[&Source], checks: &[CheckReport]) -> Self {
        Self {
            tool: "nlie".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            command: command.into(),
            inputs: sources.iter().map(|s| (s.label.clone(), s.digest())).collect(),
            passed: checks.iter().all(|c| c.passed),
            checks: checks.iter().map(CheckSummary::from).collect(),
            seed: None,
            output: None,
            elapsed_ms: 0,
        }
    }

    pub fn to_json(&self) -> String {
        canonical_json(self)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!(
            "{} {}: {}\n",
            self.tool,
            self.command,
            if self.passed { "PASS" } else { "FAIL" }
        );
        for c in &self.checks {
            s.push_str(&format!(
                "  [{}] {} ({} tuples)\n",
                if c.passed { "pass" } else { "FAIL" },
                c.name,
                c.checks_run
            ));
            if let Some(cx) = &c.counterexample {
                let nonzero: Vec<String> = cx
                    .residual
                    .iter()
                    .enumerate()
                    .filter(|(_, v)| v.as_str() != "0")
                    .map(|(i, v)| format!("{}: {v}", i + 1))
                    .collect();
                let shown = if nonzero.len() > 8 {
                    format!("{}, ... ({} nonzero)", nonzero[..8].join(", "), nonzero.len())
                } else {
                    nonzero.join(", ")
                };
                s.push_str(&format!(
                    "        at {} = {:?}, residual of length {} nonzero at {{{shown}}}\n",
                    cx.layout,
                    cx.tuple,
                    cx.residual.len()
                ));
            }
            for n in &c.notes {
                s.push_str(&format!("        {n}\n"));
            }
        }
        if let Some(seed) = self.seed {
            s.push_str(&format!("  seed {seed}\n"));
        }
        if let Some(out) = &self.output {
            s.push_str(&format!("  output {}\n", serde_json::to_string(out).expect("json")));
        }
        s
    }
}

/// Every catalog algebra and cobracket name with at least one instance.
pub fn catalog_documents() -> Vec<String> {
    let mut out = Vec::new();
    for name in catalog::algebra_names() {
        out.push(emit_algebra(name, &catalog::algebra(name).expect("catalog name")));
    }
    for name in catalog::cobracket_names() {
        let cb = catalog::cobracket(name).expect("catalog name");
        out.push(emit_cobracket(name, &catalog_algebra_name(name), &cb));
    }
    out
}

/// All canonical brackets of an algebra as `[e_a…] = v` lines.
pub fn describe_algebra(alg: &NLieAlgebra) -> Vec<String> {
    combinations(alg.dim(), alg.arity())
        .into_iter()
        .filter_map(|idx| {
            let v = alg.bracket_basis(&idx);
            let terms: Vec<String> = v
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| format!("{}*e{}", to_text(c), k + 1))
                .collect();
            (!terms.is_empty()).then(|| {
                let args: Vec<String> = idx.iter().map(|i| format!("e{}", i + 1)).collect();
                format!("[{}] = {}", args.join(","), terms.join(" + "))
            })
        })
        .collect()
}
