//! Proof trees for "does not occur" verdicts.
//!
//! Every node names the rule it applies and carries enough payload for the
//! verifier to re-derive the claim from the subject graph alone. Subresults
//! proved by an every-vertex-admissible argument are shared through
//! [`Certificate::Lemma`] references into a lemma table keyed by canonical
//! key, which keeps nested proofs from growing exponentially.

use std::cmp::Ordering;
use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::graph::{ordered_pair, CanonicalKey};
use crate::rules::{EdgeFamily, Partition, SassViolation};

pub type EdgeName = (String, String);

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "rule", rename_all = "snake_case")]
pub enum Certificate {
    /// Three pairwise nonadjacent vertices.
    PalfyViolation { triple: [String; 3] },
    /// A disconnected graph with three or more components or a non-complete
    /// component; `triple` is the induced independent triple.
    BadComponents {
        components: Vec<Vec<String>>,
        triple: [String; 3],
    },
    /// An adjacent pair of degree-2 vertices without a common neighbor in a
    /// graph on at least five vertices that satisfies the triple condition.
    Markmain { p1: String, p2: String },
    /// Every base vertex of eccentricity three is eliminated, either by a
    /// partition constraint or because all Sylow branches are refuted.
    Diameter3Refutation {
        edge_family: EdgeFamily,
        bases: Vec<BaseRefutation>,
    },
    /// Every vertex is admissible.
    AllAdmissible { proofs: Vec<AdmissibilityProof> },
    /// The subject is isomorphic to the lemma graph stored under `key`.
    Lemma { key: CanonicalKey },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BaseRefutation {
    pub partition: Partition,
    pub outcome: BaseOutcome,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BaseOutcome {
    Sass { violations: Vec<SassViolation> },
    Sylow { primes: Vec<PrimeBranches> },
}

/// Refutations of every branch obtained by deleting `prime`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeBranches {
    pub prime: String,
    pub branches: Vec<BranchRefutation>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchRefutation {
    /// Extra edges removed besides the prime and its incident edges.
    pub removed: Vec<EdgeName>,
    pub certificate: Certificate,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdmissibilityProof {
    pub vertex: String,
    pub vertex_removal: Box<Certificate>,
    /// One entry per nonempty subset of the edges incident to `vertex`.
    pub edge_subsets: Vec<EdgeSubsetCertificate>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeSubsetCertificate {
    pub removed: Vec<EdgeName>,
    pub certificate: Certificate,
}

impl Certificate {
    /// Rule tag as it appears in serialized documents.
    pub fn rule(&self) -> &'static str {
        match self {
            Certificate::PalfyViolation { .. } => "palfy_violation",
            Certificate::BadComponents { .. } => "bad_components",
            Certificate::Markmain { .. } => "markmain",
            Certificate::Diameter3Refutation { .. } => "diameter3_refutation",
            Certificate::AllAdmissible { .. } => "all_admissible",
            Certificate::Lemma { .. } => "lemma",
        }
    }

    /// Lemma keys referenced anywhere in this tree.
    pub fn lemma_refs(&self, out: &mut Vec<CanonicalKey>) {
        match self {
            Certificate::Lemma { key } => out.push(*key),
            Certificate::Diameter3Refutation { bases, .. } => {
                for base in bases {
                    if let BaseOutcome::Sylow { primes } = &base.outcome {
                        for b in primes.iter().flat_map(|p| &p.branches) {
                            b.certificate.lemma_refs(out);
                        }
                    }
                }
            }
            Certificate::AllAdmissible { proofs } => {
                for proof in proofs {
                    proof.vertex_removal.lemma_refs(out);
                    for s in &proof.edge_subsets {
                        s.certificate.lemma_refs(out);
                    }
                }
            }
            _ => {}
        }
    }

    /// Renames every vertex cited in the tree. Lemma references are label
    /// free and pass through unchanged.
    pub fn relabel(&self, map: &HashMap<String, String>) -> Certificate {
        let name = |s: &String| map.get(s).cloned().unwrap_or_else(|| s.clone());
        let triple = |t: &[String; 3]| {
            let mut t = [name(&t[0]), name(&t[1]), name(&t[2])];
            t.sort();
            t
        };
        match self {
            Certificate::PalfyViolation { triple: t } => Certificate::PalfyViolation { triple: triple(t) },
            Certificate::BadComponents { components, triple: t } => {
                let mut components: Vec<Vec<String>> = components
                    .iter()
                    .map(|c| {
                        let mut c: Vec<String> = c.iter().map(name).collect();
                        c.sort();
                        c
                    })
                    .collect();
                components.sort();
                Certificate::BadComponents {
                    components,
                    triple: triple(t),
                }
            }
            Certificate::Markmain { p1, p2 } => {
                let (p1, p2) = ordered_pair(&name(p1), &name(p2));
                Certificate::Markmain { p1, p2 }
            }
            Certificate::Diameter3Refutation { edge_family, bases } => {
                let mut bases: Vec<BaseRefutation> = bases
                    .iter()
                    .map(|b| BaseRefutation {
                        partition: b.partition.relabel(map),
                        outcome: match &b.outcome {
                            BaseOutcome::Sass { violations } => BaseOutcome::Sass {
                                violations: violations.clone(),
                            },
                            BaseOutcome::Sylow { primes } => {
                                let mut primes: Vec<PrimeBranches> = primes
                                    .iter()
                                    .map(|p| {
                                        let mut branches: Vec<BranchRefutation> = p
                                            .branches
                                            .iter()
                                            .map(|br| BranchRefutation {
                                                removed: relabel_edges(&br.removed, map),
                                                certificate: br.certificate.relabel(map),
                                            })
                                            .collect();
                                        branches.sort_by(|x, y| subset_order(&x.removed, &y.removed));
                                        PrimeBranches {
                                            prime: name(&p.prime),
                                            branches,
                                        }
                                    })
                                    .collect();
                                primes.sort_by(|x, y| x.prime.cmp(&y.prime));
                                BaseOutcome::Sylow { primes }
                            }
                        },
                    })
                    .collect();
                bases.sort_by(|x, y| x.partition.base.cmp(&y.partition.base));
                Certificate::Diameter3Refutation {
                    edge_family: *edge_family,
                    bases,
                }
            }
            Certificate::AllAdmissible { proofs } => {
                let mut proofs: Vec<AdmissibilityProof> = proofs
                    .iter()
                    .map(|p| {
                        let mut edge_subsets: Vec<EdgeSubsetCertificate> = p
                            .edge_subsets
                            .iter()
                            .map(|s| EdgeSubsetCertificate {
                                removed: relabel_edges(&s.removed, map),
                                certificate: s.certificate.relabel(map),
                            })
                            .collect();
                        edge_subsets.sort_by(|x, y| subset_order(&x.removed, &y.removed));
                        AdmissibilityProof {
                            vertex: name(&p.vertex),
                            vertex_removal: Box::new(p.vertex_removal.relabel(map)),
                            edge_subsets,
                        }
                    })
                    .collect();
                proofs.sort_by(|x, y| x.vertex.cmp(&y.vertex));
                Certificate::AllAdmissible { proofs }
            }
            Certificate::Lemma { key } => Certificate::Lemma { key: *key },
        }
    }
}

fn relabel_edges(edges: &[EdgeName], map: &HashMap<String, String>) -> Vec<EdgeName> {
    let name = |s: &String| map.get(s).cloned().unwrap_or_else(|| s.clone());
    let mut out: Vec<EdgeName> = edges
        .iter()
        .map(|(a, b)| ordered_pair(&name(a), &name(b)))
        .collect();
    out.sort();
    out
}

/// Order on edge subsets: by size, then lexicographically.
pub(crate) fn subset_order(a: &[EdgeName], b: &[EdgeName]) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

/// Index combinations of `0..n` in order of increasing size, each size in
/// lexicographic order.
pub(crate) fn subsets_by_size(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (0..=n).flat_map(move |size| Combinations::new(n, size))
}

struct Combinations {
    n: usize,
    current: Option<Vec<usize>>,
}

impl Combinations {
    fn new(n: usize, size: usize) -> Combinations {
        Combinations {
            n,
            current: (size <= n).then(|| (0..size).collect()),
        }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.take()?;
        let k = out.len();
        let mut next = out.clone();
        let mut i = k;
        while i > 0 {
            i -= 1;
            if next[i] < self.n - k + i {
                next[i] += 1;
                for j in i + 1..k {
                    next[j] = next[j - 1] + 1;
                }
                self.current = Some(next);
                break;
            }
        }
        Some(out)
    }
}
