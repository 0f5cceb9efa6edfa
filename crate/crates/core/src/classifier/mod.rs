//! The verdict engine.
//!
//! [`Session::classify`] runs a fixed rule pipeline over a graph and
//! memoizes the result by isomorphism class. "Occurs" verdicts carry a
//! construction witness built from complete graphs, an isolated vertex
//! beside a clique, and joins. "Does not occur" verdicts carry a
//! [`Proof`] that [`verify_certificate`] re-checks without consulting any
//! knowledge base. Anything the rules cannot settle is `Unknown`.

mod kb;
mod verify;

pub use kb::{Entry, KbStats, KnowledgeBase, SeedBase, StoredVerdict};
pub use verify::{verify_certificate, Verification};

use std::cmp::Reverse;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use crate::certificate::{AdmissibilityProof, Certificate, EdgeName, EdgeSubsetCertificate};
use crate::certificate::subsets_by_size;
use crate::families::{
    complete, direct_product, gamma, isolated_plus_complete, FamilyError, FamilySpec,
};
use crate::graph::{bits, ordered_pair, CanonicalForm, CanonicalKey, Graph, GraphError};
use crate::rules::{
    check_components, check_markmain, check_palfy, refute_diameter3, Diameter3Outcome,
    OracleAnswer, RuleError, SylowConfig, VerdictOracle,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("the empty graph has no verdict")]
    EmptyGraph,
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Rule(#[from] RuleError),
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error("classification budget of {0} graphs exhausted")]
    Budget(u64),
    #[error("internal inconsistency for class {key}: derived both {first} and {second}")]
    Inconsistent {
        key: CanonicalKey,
        first: &'static str,
        second: &'static str,
    },
}

/// How a graph that occurs is built from the basic occurring families.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    CompleteGraph { n: usize },
    IsolatedPlusComplete { n: usize },
    DirectProduct { factors: Vec<Witness> },
    KnownExample { tag: String },
}

impl Witness {
    /// Rebuilds the witnessed graph from the family constructors. Factor
    /// vertices are prefixed `f0_`, `f1_`, ... to keep names disjoint.
    pub fn replay(&self) -> Result<Graph, FamilyError> {
        match self {
            Witness::CompleteGraph { n } => complete(*n),
            Witness::IsolatedPlusComplete { n } => isolated_plus_complete(*n),
            Witness::DirectProduct { factors } => {
                let mut parts = factors.iter().enumerate();
                let Some((_, first)) = parts.next() else {
                    return Err(FamilyError::Size(0, 2));
                };
                let mut acc = first.replay()?.prefixed("f0_");
                for (i, f) in parts {
                    acc = direct_product(&acc, &f.replay()?.prefixed(&format!("f{i}_")))?;
                }
                Ok(acc)
            }
            Witness::KnownExample { tag } => match tag.as_str() {
                "gamma22" => Ok(gamma(FamilySpec::new(2, 2)?)),
                _ => Err(FamilyError::Size(0, 0)),
            },
        }
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::CompleteGraph { n } => write!(f, "CompleteGraph({n})"),
            Witness::IsolatedPlusComplete { n } => write!(f, "IsolatedPlusComplete({n})"),
            Witness::DirectProduct { factors } => {
                f.write_str("DirectProduct(")?;
                for (i, w) in factors.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{w}")?;
                }
                f.write_str(")")
            }
            Witness::KnownExample { tag } => write!(f, "KnownExample({tag})"),
        }
    }
}

/// Why the rules left a graph undecided, in terms of its own labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum UnknownReason {
    /// Two complete components, neither a single vertex.
    TwoCliques { sizes: (usize, usize) },
    /// The sweep stopped at a vertex whose deletion gave a graph not
    /// proved to be impossible.
    NotAdmissible {
        vertex: String,
        removed_vertex: bool,
        removed_edges: Vec<EdgeName>,
        subgraph_verdict: &'static str,
        /// Set when the diameter-3 refutation was skipped for budget.
        skipped_refutation: Option<String>,
    },
}

impl UnknownReason {
    fn relabel(&self, map: &HashMap<String, String>) -> UnknownReason {
        let name = |s: &String| map.get(s).cloned().unwrap_or_else(|| s.clone());
        match self {
            UnknownReason::TwoCliques { sizes } => UnknownReason::TwoCliques { sizes: *sizes },
            UnknownReason::NotAdmissible {
                vertex,
                removed_vertex,
                removed_edges,
                subgraph_verdict,
                skipped_refutation,
            } => {
                let mut edges: Vec<EdgeName> = removed_edges
                    .iter()
                    .map(|(a, b)| ordered_pair(&name(a), &name(b)))
                    .collect();
                edges.sort();
                UnknownReason::NotAdmissible {
                    vertex: name(vertex),
                    removed_vertex: *removed_vertex,
                    removed_edges: edges,
                    subgraph_verdict,
                    skipped_refutation: skipped_refutation.clone(),
                }
            }
        }
    }
}

impl fmt::Display for UnknownReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            UnknownReason::TwoCliques { sizes: (a, b) } => write!(
                f,
                "two complete components of sizes {a} and {b}; disconnected graphs beyond an isolated vertex are not decided by these rules"
            ),
            UnknownReason::NotAdmissible {
                vertex,
                removed_vertex,
                removed_edges,
                subgraph_verdict,
                skipped_refutation,
            } => {
                write!(f, "no rule applies; vertex {vertex} is not admissible (")?;
                if *removed_vertex {
                    write!(f, "removing {vertex}")?;
                } else {
                    let edges: Vec<String> = removed_edges.iter().map(|(a, b)| format!("{a}-{b}")).collect();
                    write!(f, "removing edges {}", edges.join(","))?;
                }
                write!(f, " gives a graph with verdict {subgraph_verdict})")?;
                if let Some(e) = skipped_refutation {
                    write!(f, "; diameter-3 refutation skipped: {e}")?;
                }
                Ok(())
            }
        }
    }
}

/// A certificate plus the shared lemmas it references.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Proof {
    pub certificate: Certificate,
    pub lemmas: BTreeMap<CanonicalKey, Lemma>,
}

/// A graph proved not to occur, referenced by canonical key.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lemma {
    pub graph: Graph,
    pub certificate: Certificate,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Occurs(Witness),
    NotOccurs(Proof),
    Unknown(String),
}

impl Verdict {
    pub fn tag(&self) -> &'static str {
        match self {
            Verdict::Occurs(_) => "occurs",
            Verdict::NotOccurs(_) => "not_occurs",
            Verdict::Unknown(_) => "unknown",
        }
    }

    /// The certificate's rule tag, the witness kind, or `none`.
    pub fn rule(&self) -> &'static str {
        match self {
            Verdict::NotOccurs(p) => p.certificate.rule(),
            Verdict::Occurs(Witness::CompleteGraph { .. }) => "complete_graph",
            Verdict::Occurs(Witness::IsolatedPlusComplete { .. }) => "isolated_plus_complete",
            Verdict::Occurs(Witness::DirectProduct { .. }) => "direct_product",
            Verdict::Occurs(Witness::KnownExample { .. }) => "known_example",
            Verdict::Unknown(_) => "none",
        }
    }
}

/// Construction witness for graphs built from complete graphs, an
/// isolated vertex beside a clique, and joins; `None` otherwise.
pub fn occurs_by_construction(g: &Graph) -> Option<Witness> {
    if g.is_empty() {
        return None;
    }
    if g.is_complete() {
        return Some(Witness::CompleteGraph { n: g.order() });
    }
    let comps = g.components();
    if comps.len() == 2 && comps.iter().all(|c| c.complete) {
        let sizes = (comps[0].vertices.len(), comps[1].vertices.len());
        return match sizes {
            (1, n) | (n, 1) => Some(Witness::IsolatedPlusComplete { n }),
            _ => None,
        };
    }
    let factors = g.complement().components();
    if factors.len() < 2 {
        return None;
    }
    let mut parts = Vec::with_capacity(factors.len());
    for f in &factors {
        let sub = g.induced(f.vertices.iter().fold(0u32, |m, &v| m | 1 << v));
        let w = occurs_by_construction(&sub)?;
        parts.push((Reverse(sub.order()), sub.canonical_key(), w));
    }
    parts.sort_by_key(|p| (p.0, p.1));
    Some(Witness::DirectProduct {
        factors: parts.into_iter().map(|(_, _, w)| w).collect(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EngineConfig {
    pub sylow: SylowConfig,
    /// Largest number of distinct classes one session may run the pipeline on.
    pub max_classifications: u64,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig {
            sylow: SylowConfig::default(),
            max_classifications: 1 << 22,
        }
    }
}

/// Outcome of an admissibility check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Admissibility {
    Admissible(AdmissibilityProof),
    /// The first deletion not proved to be impossible.
    NotAdmissible {
        vertex: String,
        /// `true` when the vertex itself was removed.
        removed_vertex: bool,
        removed_edges: Vec<EdgeName>,
        subgraph_verdict: &'static str,
    },
}

/// One classification context with a private knowledge base.
#[derive(Debug, Clone)]
pub struct Session {
    config: EngineConfig,
    seeds: &'static SeedBase,
    kb: KnowledgeBase,
    runs: u64,
}

impl Default for Session {
    fn default() -> Self {
        Session::new(EngineConfig::default())
    }
}

struct KbOracle<'a> {
    seeds: &'a SeedBase,
    kb: &'a KnowledgeBase,
}

impl VerdictOracle for KbOracle<'_> {
    fn lookup(&self, g: &Graph) -> OracleAnswer {
        let form = g.canonical_form();
        if self.seeds.get(&form.key).is_some() {
            return OracleAnswer::Other;
        }
        match self.kb.get(&form.key) {
            None => OracleAnswer::Missing,
            Some(entry) => match &entry.verdict {
                StoredVerdict::NotOccurs(c) => OracleAnswer::NotOccurs(child_reference(entry, c, g, &form)),
                _ => OracleAnswer::Other,
            },
        }
    }
}

/// How a stored "does not occur" result is cited from a parent proof:
/// admissibility arguments by lemma reference, everything else inline.
fn child_reference(entry: &Entry, cert: &Certificate, g: &Graph, form: &CanonicalForm) -> Certificate {
    match cert {
        Certificate::AllAdmissible { .. } | Certificate::Lemma { .. } => {
            Certificate::Lemma { key: form.key }
        }
        _ => cert.relabel(&label_map(entry, g, form)),
    }
}

/// Maps names of the stored graph onto the isomorphic graph `g`.
fn label_map(entry: &Entry, g: &Graph, form: &CanonicalForm) -> HashMap<String, String> {
    entry
        .order
        .iter()
        .zip(&form.order)
        .map(|(&s, &t)| (entry.graph.name(s).to_string(), g.name(t).to_string()))
        .collect()
}

/// The canonical representative of a class and its canonical order.
fn representative(key: &CanonicalKey) -> (Graph, Vec<usize>) {
    let graph = Graph::from_canonical_key(key);
    let order = graph.canonical_form().order;
    (graph, order)
}

impl Session {
    pub fn new(config: EngineConfig) -> Session {
        Session {
            config,
            seeds: SeedBase::shared(),
            kb: KnowledgeBase::new(),
            runs: 0,
        }
    }

    pub fn config(&self) -> &EngineConfig {
        &self.config
    }

    pub fn knowledge_base(&self) -> &KnowledgeBase {
        &self.kb
    }

    /// Conflict-checked merge of another base into this session's.
    pub fn absorb(&mut self, other: &KnowledgeBase) -> Result<(), ClassifyError> {
        self.kb.merge(other)
    }

    /// Adds an externally verified verdict to the knowledge base, together
    /// with the lemmas its proof references.
    /// Unknown verdicts carry nothing to reuse and are skipped. Entries are
    /// stored on the canonical representative like computed ones.
    pub fn seed_verified(&mut self, g: &Graph, verdict: &Verdict) -> Result<(), ClassifyError> {
        match verdict {
            Verdict::Unknown(_) => Ok(()),
            Verdict::Occurs(w) => self.insert_canonical(g, StoredVerdict::Occurs(w.clone())),
            Verdict::NotOccurs(proof) => {
                for lemma in proof.lemmas.values() {
                    self.insert_canonical(&lemma.graph, StoredVerdict::NotOccurs(lemma.certificate.clone()))?;
                }
                if let Certificate::Lemma { .. } = proof.certificate {
                    return Ok(());
                }
                self.insert_canonical(g, StoredVerdict::NotOccurs(proof.certificate.clone()))
            }
        }
    }

    fn insert_canonical(&mut self, g: &Graph, verdict: StoredVerdict) -> Result<(), ClassifyError> {
        let form = g.canonical_form();
        let (canon, order) = representative(&form.key);
        let map: HashMap<String, String> = form
            .order
            .iter()
            .zip(&order)
            .map(|(&s, &t)| (g.name(s).to_string(), canon.name(t).to_string()))
            .collect();
        let verdict = match verdict {
            StoredVerdict::NotOccurs(c) => StoredVerdict::NotOccurs(c.relabel(&map)),
            StoredVerdict::Unknown(r) => StoredVerdict::Unknown(r.relabel(&map)),
            occurs => occurs,
        };
        self.kb.insert(form.key, Entry { graph: canon, order, verdict })
    }

    /// Classifies `g`, reusing and extending the session's knowledge base.
    pub fn classify(&mut self, g: &Graph) -> Result<Verdict, ClassifyError> {
        if g.is_empty() {
            return Err(ClassifyError::EmptyGraph);
        }
        let form = g.canonical_form();
        self.ensure(&form.key)?;
        Ok(match self.stored_for(g, &form) {
            StoredVerdict::Occurs(w) => Verdict::Occurs(w),
            StoredVerdict::Unknown(r) => Verdict::Unknown(r.to_string()),
            StoredVerdict::NotOccurs(certificate) => {
                let lemmas = self.lemma_closure(&certificate);
                Verdict::NotOccurs(Proof { certificate, lemmas })
            }
        })
    }

    /// Admissibility of `v`: removing it, and removing each nonempty set of
    /// its incident edges, must all give graphs proved not to occur.
    pub fn admissible(&mut self, g: &Graph, v: &str) -> Result<Admissibility, ClassifyError> {
        let vi = g.require(v)?;
        let removal = g.delete([v], Vec::<(&str, &str)>::new())?;
        let vertex_removal = match self.child_certificate(&removal)? {
            Ok(c) => c,
            Err(tag) => {
                return Ok(Admissibility::NotAdmissible {
                    vertex: v.to_string(),
                    removed_vertex: true,
                    removed_edges: Vec::new(),
                    subgraph_verdict: tag,
                })
            }
        };
        let mut incident: Vec<(EdgeName, (usize, usize))> = bits(g.neighbors(vi))
            .map(|u| (ordered_pair(v, g.name(u)), (vi, u)))
            .collect();
        incident.sort();
        let mut edge_subsets = Vec::with_capacity((1 << incident.len()) - 1);
        for subset in subsets_by_size(incident.len()).skip(1) {
            let removed: Vec<EdgeName> = subset.iter().map(|&i| incident[i].0.clone()).collect();
            let drop: Vec<(usize, usize)> = subset.iter().map(|&i| incident[i].1).collect();
            let child = g.without_edges(&drop);
            match self.child_certificate(&child)? {
                Ok(certificate) => edge_subsets.push(EdgeSubsetCertificate { removed, certificate }),
                Err(tag) => {
                    return Ok(Admissibility::NotAdmissible {
                        vertex: v.to_string(),
                        removed_vertex: false,
                        removed_edges: removed,
                        subgraph_verdict: tag,
                    })
                }
            }
        }
        Ok(Admissibility::Admissible(AdmissibilityProof {
            vertex: v.to_string(),
            vertex_removal: Box::new(vertex_removal),
            edge_subsets,
        }))
    }

    /// Certificate that `child` does not occur, citing `child`'s labels, or
    /// the verdict tag it got instead.
    fn child_certificate(&mut self, child: &Graph) -> Result<Result<Certificate, &'static str>, ClassifyError> {
        if child.is_empty() {
            return Ok(Err("empty"));
        }
        if let Some(v) = check_palfy(child) {
            return Ok(Ok(Certificate::PalfyViolation { triple: v.triple }));
        }
        let form = child.canonical_form();
        self.ensure(&form.key)?;
        if self.seeds.get(&form.key).is_some() {
            return Ok(Err("occurs"));
        }
        let entry = self.kb.get(&form.key).expect("ensured");
        Ok(match &entry.verdict {
            StoredVerdict::NotOccurs(c) => Ok(child_reference(entry, c, child, &form)),
            other => Err(other.tag()),
        })
    }

    /// Makes sure the class `key` has a verdict in the seeds or the base.
    /// The pipeline always runs on the canonical representative, so stored
    /// certificates do not depend on which labeling arrived first.
    fn ensure(&mut self, key: &CanonicalKey) -> Result<(), ClassifyError> {
        if self.seeds.get(key).is_some() || self.kb.lookup(key).is_some() {
            return Ok(());
        }
        self.runs += 1;
        if self.runs > self.config.max_classifications {
            return Err(ClassifyError::Budget(self.config.max_classifications));
        }
        let (graph, order) = representative(key);
        let verdict = self.pipeline(&graph)?;
        self.kb.insert(*key, Entry { graph, order, verdict })
    }

    /// The stored verdict for the class of `g`, relabeled onto `g`.
    fn stored_for(&self, g: &Graph, form: &CanonicalForm) -> StoredVerdict {
        if let Some(w) = self.seeds.get(&form.key) {
            return StoredVerdict::Occurs(w.clone());
        }
        let entry = self.kb.get(&form.key).expect("ensured");
        match &entry.verdict {
            StoredVerdict::NotOccurs(c) => StoredVerdict::NotOccurs(c.relabel(&label_map(entry, g, form))),
            StoredVerdict::Unknown(r) => StoredVerdict::Unknown(r.relabel(&label_map(entry, g, form))),
            occurs => occurs.clone(),
        }
    }

    fn lemma_closure(&self, root: &Certificate) -> BTreeMap<CanonicalKey, Lemma> {
        let mut out = BTreeMap::new();
        let mut stack = Vec::new();
        root.lemma_refs(&mut stack);
        while let Some(key) = stack.pop() {
            if out.contains_key(&key) {
                continue;
            }
            let entry = self.kb.get(&key).expect("referenced lemmas are stored");
            let StoredVerdict::NotOccurs(cert) = &entry.verdict else {
                unreachable!("lemma references point at refuted classes")
            };
            cert.lemma_refs(&mut stack);
            out.insert(
                key,
                Lemma {
                    graph: entry.graph.clone(),
                    certificate: cert.clone(),
                },
            );
        }
        out
    }

    fn pipeline(&mut self, g: &Graph) -> Result<StoredVerdict, ClassifyError> {
        if let Some(v) = check_palfy(g) {
            return Ok(StoredVerdict::NotOccurs(Certificate::PalfyViolation { triple: v.triple }));
        }
        if !g.is_connected() {
            if let Some(c) = check_components(g) {
                return Ok(StoredVerdict::NotOccurs(c));
            }
            if let Some(w) = occurs_by_construction(g) {
                return Ok(StoredVerdict::Occurs(w));
            }
            let comps = g.components();
            return Ok(StoredVerdict::Unknown(UnknownReason::TwoCliques {
                sizes: (comps[0].vertices.len(), comps[1].vertices.len()),
            }));
        }
        if let Some(w) = occurs_by_construction(g) {
            if check_markmain(g).is_some() {
                return Err(ClassifyError::Inconsistent {
                    key: g.canonical_key(),
                    first: "occurs",
                    second: "not_occurs",
                });
            }
            return Ok(StoredVerdict::Occurs(w));
        }
        if let Some(m) = check_markmain(g) {
            return Ok(StoredVerdict::NotOccurs(Certificate::Markmain { p1: m.p1, p2: m.p2 }));
        }
        let mut over_budget = None;
        if g.distances().diameter() == Some(3) {
            loop {
                let outcome = refute_diameter3(
                    g,
                    &KbOracle {
                        seeds: self.seeds,
                        kb: &self.kb,
                    },
                    &self.config.sylow,
                );
                let outcome = match outcome {
                    Err(e @ RuleError::BranchBudget { .. }) => {
                        over_budget = Some(e);
                        break;
                    }
                    other => other?,
                };
                match outcome {
                    Diameter3Outcome::Refuted(c) => return Ok(StoredVerdict::NotOccurs(c)),
                    Diameter3Outcome::Inconclusive { pending } if pending.is_empty() => break,
                    Diameter3Outcome::Inconclusive { pending } => {
                        for b in &pending {
                            self.ensure(&b.canonical_key())?;
                        }
                    }
                }
            }
        }
        let mut proofs = Vec::with_capacity(g.order());
        for v in g.name_order() {
            match self.admissible(g, g.name(v))? {
                Admissibility::Admissible(p) => proofs.push(p),
                Admissibility::NotAdmissible {
                    vertex,
                    removed_vertex,
                    removed_edges,
                    subgraph_verdict,
                } => {
                    return Ok(StoredVerdict::Unknown(UnknownReason::NotAdmissible {
                        vertex,
                        removed_vertex,
                        removed_edges,
                        subgraph_verdict,
                        skipped_refutation: over_budget.as_ref().map(|e| e.to_string()),
                    }));
                }
            }
        }
        Ok(StoredVerdict::NotOccurs(Certificate::AllAdmissible { proofs }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rules::SassViolation;

    fn gamma_kt(k: usize, t: usize) -> Graph {
        gamma(FamilySpec::new(k, t).unwrap())
    }

    fn graph(v: &[&str], e: &[(&str, &str)]) -> Graph {
        Graph::new(v.iter().copied(), e.iter().copied()).unwrap()
    }

    #[test]
    fn construction_examples() {
        assert_eq!(
            occurs_by_construction(&complete(4).unwrap()),
            Some(Witness::CompleteGraph { n: 4 })
        );
        assert_eq!(
            occurs_by_construction(&gamma_kt(4, 1)),
            Some(Witness::DirectProduct {
                factors: vec![
                    Witness::IsolatedPlusComplete { n: 3 },
                    Witness::CompleteGraph { n: 1 }
                ]
            })
        );
        assert_eq!(occurs_by_construction(&gamma_kt(3, 3)), None);
        let k2k2 = graph(&["a", "b", "c", "d"], &[("a", "b"), ("c", "d")]);
        assert_eq!(occurs_by_construction(&k2k2), None);
    }

    #[test]
    fn witnesses_replay_to_the_subject() {
        for g in [gamma_kt(4, 1), gamma_kt(2, 2), gamma_kt(2, 1), complete(3).unwrap()] {
            let w = occurs_by_construction(&g).unwrap();
            assert_eq!(w.replay().unwrap().canonical_key(), g.canonical_key());
        }
        let known = Witness::KnownExample { tag: "gamma22".into() };
        assert_eq!(known.replay().unwrap().canonical_key(), gamma_kt(2, 2).canonical_key());
        assert!(Witness::KnownExample { tag: "nope".into() }.replay().is_err());
        assert!(Witness::DirectProduct { factors: vec![] }.replay().is_err());
    }

    #[test]
    fn classify_examples() {
        let mut s = Session::default();
        assert!(matches!(s.classify(&gamma_kt(2, 2)).unwrap(), Verdict::Occurs(_)));
        match s.classify(&gamma_kt(3, 3)).unwrap() {
            Verdict::NotOccurs(p) => match p.certificate {
                Certificate::AllAdmissible { proofs } => assert_eq!(proofs.len(), 6),
                other => panic!("{other:?}"),
            },
            other => panic!("{other:?}"),
        }
        assert_eq!(s.classify(&gamma_kt(6, 5)).unwrap().tag(), "not_occurs");
        let k3k4 = crate::families::complete(3)
            .unwrap()
            .disjoint_union(&complete(4).unwrap().prefixed("w"))
            .unwrap();
        assert_eq!(s.classify(&k3k4).unwrap().tag(), "unknown");
        assert_eq!(
            s.classify(&Graph::new(Vec::<String>::new(), Vec::<(&str, &str)>::new()).unwrap()),
            Err(ClassifyError::EmptyGraph)
        );
    }

    #[test]
    fn admissibility_examples() {
        let mut s = Session::default();
        let g = gamma_kt(3, 3);
        let Admissibility::Admissible(p) = s.admissible(&g, "a1").unwrap() else {
            panic!("a1 should be admissible");
        };
        assert_eq!(p.edge_subsets.len(), 7);
        assert_eq!(p.vertex_removal.rule(), "markmain");
        for s in &p.edge_subsets {
            let touches_a = s.removed.iter().any(|(x, y)| x.starts_with('a') && y.starts_with('a'));
            if touches_a {
                assert_eq!(s.certificate.rule(), "palfy_violation");
            } else {
                assert_eq!(s.removed, vec![("a1".to_string(), "b1".to_string())]);
                assert_eq!(s.certificate.rule(), "diameter3_refutation");
            }
        }

        match s.admissible(&gamma_kt(2, 2), "a1").unwrap() {
            Admissibility::NotAdmissible {
                removed_vertex,
                subgraph_verdict,
                ..
            } => {
                assert!(removed_vertex);
                assert_eq!(subgraph_verdict, "occurs");
            }
            other => panic!("{other:?}"),
        }
        let k2 = complete(2).unwrap();
        assert!(matches!(
            s.admissible(&k2, "v1").unwrap(),
            Admissibility::NotAdmissible { removed_vertex: true, .. }
        ));
    }

    #[test]
    fn path_on_three_vertices_occurs_as_a_join() {
        let mut s = Session::default();
        let p3 = graph(&["a", "b", "c"], &[("a", "b"), ("b", "c")]);
        assert!(matches!(
            s.classify(&p3).unwrap(),
            Verdict::Occurs(Witness::DirectProduct { .. })
        ));
    }

    #[test]
    fn memo_hits_are_relabeled_onto_the_new_graph() {
        let mut s = Session::default();
        let g = gamma_kt(3, 3);
        let first = s.classify(&g).unwrap();
        let names: Vec<String> = ["p", "q", "r", "x", "y", "z"].iter().map(|s| s.to_string()).collect();
        let h = g.renamed(names).unwrap();
        let second = s.classify(&h).unwrap();
        assert_eq!(first.rule(), second.rule());
        assert_eq!(verify_certificate(&h, &second), Verification::Valid);
        let again = s.classify(&g).unwrap();
        assert_eq!(again, first);
    }

    #[test]
    fn gamma33_minus_matching_edge_cites_small_third_layer() {
        let mut s = Session::default();
        let g = gamma_kt(3, 3).delete(Vec::<&str>::new(), [("a1", "b1")]).unwrap();
        let Verdict::NotOccurs(p) = s.classify(&g).unwrap() else { panic!() };
        let Certificate::Diameter3Refutation { bases, .. } = &p.certificate else { panic!() };
        assert!(bases.iter().all(|b| matches!(
            &b.outcome,
            crate::certificate::BaseOutcome::Sass { violations }
                if violations.contains(&SassViolation::Rho3TooSmall { rho3: 2 })
        )));
    }

    fn branching_example() -> Graph {
        graph(
            &["v0", "v1", "v2", "v3", "v4", "v5"],
            &[
                ("v0", "v1"),
                ("v0", "v2"),
                ("v0", "v3"),
                ("v0", "v5"),
                ("v1", "v2"),
                ("v1", "v3"),
                ("v1", "v4"),
                ("v2", "v3"),
                ("v2", "v4"),
                ("v3", "v4"),
            ],
        )
    }

    #[test]
    fn branching_refutation_classifies_pending_branches() {
        let g = branching_example();
        let mut s = Session::default();
        let v = s.classify(&g).unwrap();
        assert_eq!(verify_certificate(&g, &v), Verification::Valid);
    }

    #[test]
    fn branch_budget_falls_through_to_the_sweep() {
        let g = branching_example();
        assert!(matches!(
            refute_diameter3(&g, &crate::rules::NoOracle, &SylowConfig { max_branches: 1, ..SylowConfig::default() }),
            Err(RuleError::BranchBudget { .. })
        ));
        let mut s = Session::new(EngineConfig {
            sylow: SylowConfig {
                max_branches: 1,
                ..SylowConfig::default()
            },
            ..EngineConfig::default()
        });
        let v = s.classify(&g).unwrap();
        assert_eq!(verify_certificate(&g, &v), Verification::Valid);
    }

    #[test]
    fn budget_is_enforced() {
        let mut s = Session::new(EngineConfig {
            max_classifications: 1,
            ..EngineConfig::default()
        });
        assert_eq!(s.classify(&gamma_kt(3, 3)), Err(ClassifyError::Budget(1)));
    }
}
