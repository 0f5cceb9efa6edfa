//! Necessary conditions on degree graphs of solvable groups, each as a
//! standalone checker whose violation doubles as a certificate node.

use std::collections::{BTreeSet, HashMap, HashSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::certificate::{
    subsets_by_size, BaseOutcome, BaseRefutation, BranchRefutation, Certificate, EdgeName,
    PrimeBranches,
};
use crate::graph::{bits, mask_names, ordered_pair, Graph, GraphError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RuleError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("graph is not connected")]
    NotConnected,
    #[error("base `{base}` has eccentricity {found:?}, expected 3")]
    Eccentricity { base: String, found: Option<usize> },
    #[error("graph has diameter {0:?}, expected 3")]
    NotDiameterThree(Option<usize>),
    #[error("{candidates} candidate edges give 2^{candidates} branches, over the budget of {limit}")]
    BranchBudget { candidates: usize, limit: u64 },
}

/// Three vertices spanning no edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PalfyViolation {
    pub triple: [String; 3],
}

/// The lexicographically first independent triple, if any.
pub fn check_palfy(g: &Graph) -> Option<PalfyViolation> {
    let order = g.name_order();
    let n = order.len();
    for x in 0..n {
        for y in x + 1..n {
            let (u, v) = (order[x], order[y]);
            if g.adjacent(u, v) {
                continue;
            }
            let blocked = g.neighbors(u) | g.neighbors(v);
            if let Some(&w) = order[y + 1..].iter().find(|&&w| blocked & (1 << w) == 0) {
                return Some(PalfyViolation {
                    triple: [u, v, w].map(|i| g.name(i).to_string()),
                });
            }
        }
    }
    None
}

/// Disconnected graphs other than two complete components, with a witness
/// triple drawn from the offending components.
pub fn check_components(g: &Graph) -> Option<Certificate> {
    let comps = g.components();
    if comps.len() < 2 {
        return None;
    }
    let first = |c: &crate::graph::Component| c.vertices[0];
    let triple = if comps.len() >= 3 {
        [first(&comps[0]), first(&comps[1]), first(&comps[2])]
    } else {
        let (bad, other) = if !comps[0].complete {
            (&comps[0], &comps[1])
        } else if !comps[1].complete {
            (&comps[1], &comps[0])
        } else {
            return None;
        };
        let (u, v) = bad
            .vertices
            .iter()
            .flat_map(|&u| bad.vertices.iter().map(move |&v| (u, v)))
            .find(|&(u, v)| u < v && !g.adjacent(u, v))
            .expect("non-complete component has a non-edge");
        [u, v, first(other)]
    };
    let mut triple = triple.map(|i| g.name(i).to_string());
    triple.sort();
    let mut components: Vec<Vec<String>> = comps
        .iter()
        .map(|c| {
            let mut names: Vec<String> = c.vertices.iter().map(|&v| g.name(v).to_string()).collect();
            names.sort();
            names
        })
        .collect();
    components.sort();
    Some(Certificate::BadComponents { components, triple })
}

/// Adjacent degree-2 vertices with no common neighbor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarkmainMatch {
    pub p1: String,
    pub p2: String,
}

/// First matching pair in name order, provided the graph has at least five
/// vertices and passes the triple condition.
pub fn check_markmain(g: &Graph) -> Option<MarkmainMatch> {
    if g.order() < 5 || check_palfy(g).is_some() {
        return None;
    }
    let order = g.name_order();
    for (x, &u) in order.iter().enumerate() {
        if g.degree(u) != 2 {
            continue;
        }
        for &v in &order[x + 1..] {
            if g.degree(v) == 2 && g.adjacent(u, v) && g.neighbors(u) & g.neighbors(v) == 0 {
                return Some(MarkmainMatch {
                    p1: g.name(u).to_string(),
                    p2: g.name(v).to_string(),
                });
            }
        }
    }
    None
}

/// Distance-layer partition of a diameter-three graph around `base`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Partition {
    pub base: String,
    pub rho1: BTreeSet<String>,
    pub rho2: BTreeSet<String>,
    pub rho3: BTreeSet<String>,
    pub rho4: BTreeSet<String>,
}

impl Partition {
    pub fn left(&self) -> usize {
        self.rho1.len() + self.rho2.len()
    }

    pub fn right(&self) -> usize {
        self.rho3.len() + self.rho4.len()
    }

    pub(crate) fn relabel(&self, map: &HashMap<String, String>) -> Partition {
        let set = |s: &BTreeSet<String>| {
            s.iter()
                .map(|n| map.get(n).cloned().unwrap_or_else(|| n.clone()))
                .collect()
        };
        Partition {
            base: map.get(&self.base).cloned().unwrap_or_else(|| self.base.clone()),
            rho1: set(&self.rho1),
            rho2: set(&self.rho2),
            rho3: set(&self.rho3),
            rho4: set(&self.rho4),
        }
    }
}

pub fn build_partition(g: &Graph, base: &str) -> Result<Partition, RuleError> {
    let p = g.require(base)?;
    if !g.is_connected() {
        return Err(RuleError::NotConnected);
    }
    let dist = g.bfs(p);
    let ecc = dist.iter().copied().max().flatten();
    if ecc != Some(3) {
        return Err(RuleError::Eccentricity {
            base: base.to_string(),
            found: ecc,
        });
    }
    let layer = |d: usize| {
        dist.iter()
            .enumerate()
            .filter(|(_, x)| **x == Some(d))
            .fold(0u32, |m, (v, _)| m | 1 << v)
    };
    let (near, rho3, rho4) = (layer(1), layer(2), layer(3));
    let rho2 = bits(near)
        .filter(|&v| g.neighbors(v) & rho3 != 0)
        .fold(0u32, |m, v| m | 1 << v);
    let rho1 = (near & !rho2) | 1 << p;
    Ok(Partition {
        base: base.to_string(),
        rho1: mask_names(g, rho1),
        rho2: mask_names(g, rho2),
        rho3: mask_names(g, rho3),
        rho4: mask_names(g, rho4),
    })
}

/// A violated partition constraint with the cardinalities involved.
/// `left` is `|ρ1 ∪ ρ2|` and `right` is `|ρ3 ∪ ρ4|`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "which", rename_all = "snake_case")]
pub enum SassViolation {
    /// `|ρ3| < 3`.
    Rho3TooSmall { rho3: usize },
    /// `left > right`.
    LeftExceedsRight { left: usize, right: usize },
    /// `right < 2^left`.
    PowerBound { left: usize, right: usize },
}

/// Every violated constraint, in the order ρ3 size, left/right, power bound.
pub fn check_sass(partition: &Partition) -> Vec<SassViolation> {
    let (left, right, rho3) = (partition.left(), partition.right(), partition.rho3.len());
    let mut out = Vec::new();
    if rho3 < 3 {
        out.push(SassViolation::Rho3TooSmall { rho3 });
    }
    if left > right {
        out.push(SassViolation::LeftExceedsRight { left, right });
    }
    let power = 1u128.checked_shl(left as u32).unwrap_or(u128::MAX);
    if (right as u128) < power {
        out.push(SassViolation::PowerBound { left, right });
    }
    out
}

/// Which extra edges a Sylow branch may lose alongside the deleted prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EdgeFamily {
    /// Edges with at least one endpoint adjacent to the prime.
    #[default]
    Broad,
    /// Edges with both endpoints adjacent to the prime.
    Narrow,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SylowConfig {
    /// Largest number of branches generated for one (graph, prime) pair.
    pub max_branches: u64,
    /// Nested Sylow applications allowed in one refutation chain.
    pub max_depth: usize,
    pub edge_family: EdgeFamily,
}

impl Default for SylowConfig {
    fn default() -> Self {
        SylowConfig {
            max_branches: 1 << 20,
            max_depth: 3,
            edge_family: EdgeFamily::Broad,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Branch {
    pub removed: Vec<EdgeName>,
    pub graph: Graph,
}

/// Edges a branch may drop, as name pairs in sorted order.
pub fn branch_candidates(g: &Graph, p: usize, family: EdgeFamily) -> Vec<EdgeName> {
    let near = g.neighbors(p);
    let mut out: Vec<EdgeName> = g
        .edges()
        .into_iter()
        .filter(|&(u, w)| u != p && w != p)
        .filter(|&(u, w)| {
            let (a, b) = (near & 1 << u != 0, near & 1 << w != 0);
            match family {
                EdgeFamily::Broad => a || b,
                EdgeFamily::Narrow => a && b,
            }
        })
        .map(|(u, w)| ordered_pair(g.name(u), g.name(w)))
        .collect();
    out.sort();
    out
}

/// Graphs obtained by deleting `p` and any subset of the candidate edges,
/// one per isomorphism class, first representative in subset order.
pub fn sylow_branches(g: &Graph, p: &str, config: &SylowConfig) -> Result<Vec<Branch>, RuleError> {
    let pi = g.require(p)?;
    let candidates = branch_candidates(g, pi, config.edge_family);
    let count = 1u64.checked_shl(candidates.len() as u32).unwrap_or(u64::MAX);
    if candidates.len() >= 64 || count > config.max_branches {
        return Err(RuleError::BranchBudget {
            candidates: candidates.len(),
            limit: config.max_branches,
        });
    }
    let base = g.delete([p], Vec::<(&str, &str)>::new())?;
    let index: Vec<(usize, usize)> = candidates
        .iter()
        .map(|(a, b)| (base.index_of(a).unwrap(), base.index_of(b).unwrap()))
        .collect();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for subset in subsets_by_size(candidates.len()) {
        let drop: Vec<(usize, usize)> = subset.iter().map(|&i| index[i]).collect();
        let graph = base.without_edges(&drop);
        if seen.insert(graph.canonical_key()) {
            out.push(Branch {
                removed: subset.iter().map(|&i| candidates[i].clone()).collect(),
                graph,
            });
        }
    }
    Ok(out)
}

/// What a verdict source knows about a graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleAnswer {
    /// Proved not to occur; the certificate is valid for the queried labels.
    NotOccurs(Certificate),
    /// Known to occur, or known to be undecided.
    Other,
    /// Not yet classified.
    Missing,
}

/// Read-only verdict lookup consulted for Sylow branches.
pub trait VerdictOracle {
    fn lookup(&self, g: &Graph) -> OracleAnswer;
}

/// An oracle that knows nothing.
pub struct NoOracle;

impl VerdictOracle for NoOracle {
    fn lookup(&self, _: &Graph) -> OracleAnswer {
        OracleAnswer::Other
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Diameter3Outcome {
    Refuted(Certificate),
    /// Not refuted. `pending` lists branch graphs the oracle has not
    /// classified yet; when it is empty the answer is final for this oracle.
    Inconclusive { pending: Vec<Graph> },
}

enum BranchOutcome {
    Refuted(Certificate),
    NotRefuted,
    Pending(Vec<Graph>),
}

/// Tries to show a diameter-three graph cannot occur: every base of
/// eccentricity three must violate a partition constraint, or else every
/// branch for every prime in its third layer must be refuted.
pub fn refute_diameter3(
    g: &Graph,
    oracle: &dyn VerdictOracle,
    config: &SylowConfig,
) -> Result<Diameter3Outcome, RuleError> {
    refute_at(g, oracle, config, 0)
}

fn refute_at(
    g: &Graph,
    oracle: &dyn VerdictOracle,
    config: &SylowConfig,
    level: usize,
) -> Result<Diameter3Outcome, RuleError> {
    let dist = g.distances();
    let diameter = dist.diameter();
    if diameter != Some(3) {
        return Err(RuleError::NotDiameterThree(diameter));
    }
    let mut bases = Vec::new();
    for v in g.name_order() {
        if dist.eccentricity(v) != Some(3) {
            continue;
        }
        let partition = build_partition(g, g.name(v))?;
        let violations = check_sass(&partition);
        if !violations.is_empty() {
            bases.push(BaseRefutation {
                partition,
                outcome: BaseOutcome::Sass { violations },
            });
            continue;
        }
        if level >= config.max_depth {
            return Ok(Diameter3Outcome::Inconclusive { pending: Vec::new() });
        }
        let mut primes = Vec::new();
        let mut pending: Vec<Graph> = Vec::new();
        for p in &partition.rho3 {
            let mut refuted = Vec::new();
            for branch in sylow_branches(g, p, config)? {
                match refute_branch(&branch.graph, oracle, config, level + 1)? {
                    BranchOutcome::Refuted(certificate) => refuted.push(BranchRefutation {
                        removed: branch.removed,
                        certificate,
                    }),
                    BranchOutcome::Pending(more) => pending.extend(more),
                    BranchOutcome::NotRefuted => {
                        return Ok(Diameter3Outcome::Inconclusive { pending: Vec::new() })
                    }
                }
            }
            primes.push(PrimeBranches {
                prime: p.clone(),
                branches: refuted,
            });
        }
        if !pending.is_empty() {
            let mut seen = HashSet::new();
            pending.retain(|b| seen.insert(b.canonical_key()));
            return Ok(Diameter3Outcome::Inconclusive { pending });
        }
        bases.push(BaseRefutation {
            partition,
            outcome: BaseOutcome::Sylow { primes },
        });
    }
    Ok(Diameter3Outcome::Refuted(Certificate::Diameter3Refutation {
        edge_family: config.edge_family,
        bases,
    }))
}

fn refute_branch(
    b: &Graph,
    oracle: &dyn VerdictOracle,
    config: &SylowConfig,
    level: usize,
) -> Result<BranchOutcome, RuleError> {
    if let Some(v) = check_palfy(b) {
        return Ok(BranchOutcome::Refuted(Certificate::PalfyViolation { triple: v.triple }));
    }
    if b.is_connected() && b.distances().diameter() == Some(3) {
        match refute_at(b, oracle, config, level)? {
            Diameter3Outcome::Refuted(c) => return Ok(BranchOutcome::Refuted(c)),
            Diameter3Outcome::Inconclusive { pending } if !pending.is_empty() => {
                return Ok(BranchOutcome::Pending(pending))
            }
            Diameter3Outcome::Inconclusive { .. } => {}
        }
    }
    Ok(match oracle.lookup(b) {
        OracleAnswer::NotOccurs(c) => BranchOutcome::Refuted(c),
        OracleAnswer::Other => BranchOutcome::NotRefuted,
        OracleAnswer::Missing => BranchOutcome::Pending(vec![b.clone()]),
    })
}
