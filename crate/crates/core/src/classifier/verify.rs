//! Independent re-checking of verdicts. Nothing here reads a knowledge
//! base: every claim is recomputed from the subject graph and the lemma
//! table shipped with the proof.

use std::collections::{BTreeSet, HashMap, HashSet};

use crate::certificate::{BaseOutcome, Certificate, EdgeName};
use crate::graph::{CanonicalKey, Graph};
use crate::rules::{branch_candidates, build_partition, check_components, check_sass, EdgeFamily};

use super::{Lemma, Proof, Verdict, Witness};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verification {
    Valid,
    Invalid(String),
}

impl Verification {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verification::Valid)
    }
}

type Check = Result<(), String>;

pub fn verify_certificate(g: &Graph, verdict: &Verdict) -> Verification {
    let outcome = match verdict {
        Verdict::Unknown(_) => Ok(()),
        Verdict::Occurs(w) => check_witness(g, w),
        Verdict::NotOccurs(proof) => check_proof(g, proof),
    };
    match outcome {
        Ok(()) => Verification::Valid,
        Err(reason) => Verification::Invalid(reason),
    }
}

fn check_witness(g: &Graph, w: &Witness) -> Check {
    check_witness_shape(w)?;
    let replayed = w.replay().map_err(|e| format!("witness does not replay: {e}"))?;
    if replayed.canonical_key() != g.canonical_key() {
        return Err(format!(
            "witness replays to {} but the subject is {}",
            replayed.canonical_key(),
            g.canonical_key()
        ));
    }
    Ok(())
}

/// Join factors must come largest first, ties broken by canonical key, so
/// each witness has exactly one spelling.
fn check_witness_shape(w: &Witness) -> Check {
    let Witness::DirectProduct { factors } = w else {
        return Ok(());
    };
    if factors.len() < 2 {
        return Err("a direct product needs at least two factors".into());
    }
    let mut sort_keys = Vec::with_capacity(factors.len());
    for f in factors {
        check_witness_shape(f)?;
        let g = f.replay().map_err(|e| format!("witness factor does not replay: {e}"))?;
        sort_keys.push((std::cmp::Reverse(g.order()), g.canonical_key()));
    }
    if sort_keys.windows(2).any(|p| p[0] > p[1]) {
        return Err("direct product factors are out of order".into());
    }
    Ok(())
}

fn check_proof(g: &Graph, proof: &Proof) -> Check {
    if g.is_empty() {
        return Err("the empty graph has no verdict".into());
    }
    let mut checker = Checker {
        lemmas: &proof.lemmas,
        done: HashSet::new(),
        open: HashSet::new(),
    };
    checker.check(g, &proof.certificate)
}

struct Checker<'a> {
    lemmas: &'a std::collections::BTreeMap<CanonicalKey, Lemma>,
    done: HashSet<CanonicalKey>,
    open: HashSet<CanonicalKey>,
}

fn lookup(g: &Graph, name: &str) -> Result<usize, String> {
    g.index_of(name).ok_or_else(|| format!("unknown vertex `{name}`"))
}

fn independent(g: &Graph, triple: &[String; 3]) -> Check {
    let idx = [lookup(g, &triple[0])?, lookup(g, &triple[1])?, lookup(g, &triple[2])?];
    if idx[0] == idx[1] || idx[0] == idx[2] || idx[1] == idx[2] {
        return Err("cited triple repeats a vertex".into());
    }
    for (a, b) in [(0, 1), (0, 2), (1, 2)] {
        if g.adjacent(idx[a], idx[b]) {
            return Err(format!("cited triple spans edge {}-{}", triple[a], triple[b]));
        }
    }
    Ok(())
}

fn has_independent_triple(g: &Graph) -> bool {
    let n = g.order();
    (0..n).any(|a| {
        (a + 1..n).any(|b| {
            !g.adjacent(a, b) && (b + 1..n).any(|c| !g.adjacent(a, c) && !g.adjacent(b, c))
        })
    })
}

/// Index pairs for `edges`, each of which must be an edge of `g`.
fn edge_indices(g: &Graph, edges: &[EdgeName]) -> Result<Vec<(usize, usize)>, String> {
    let mut seen = HashSet::new();
    edges
        .iter()
        .map(|(a, b)| {
            let (u, v) = (lookup(g, a)?, lookup(g, b)?);
            if !g.adjacent(u, v) {
                return Err(format!("{a}-{b} is not an edge"));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(format!("edge {a}-{b} listed twice"));
            }
            Ok((u, v))
        })
        .collect()
}

impl Checker<'_> {
    fn check(&mut self, g: &Graph, cert: &Certificate) -> Check {
        match cert {
            Certificate::PalfyViolation { triple } => independent(g, triple),
            Certificate::BadComponents { components, triple } => {
                let Some(Certificate::BadComponents { components: actual, .. }) = check_components(g) else {
                    return Err("graph is connected or has two complete components".into());
                };
                if *components != actual {
                    return Err("cited components do not match the graph".into());
                }
                independent(g, triple)
            }
            Certificate::Markmain { p1, p2 } => {
                if g.order() < 5 {
                    return Err("the degree-2 rule needs at least five vertices".into());
                }
                if has_independent_triple(g) {
                    return Err("the degree-2 rule needs the triple condition to hold".into());
                }
                let (u, v) = (lookup(g, p1)?, lookup(g, p2)?);
                if !g.adjacent(u, v) {
                    return Err(format!("{p1} and {p2} are not adjacent"));
                }
                if g.degree(u) != 2 || g.degree(v) != 2 {
                    return Err(format!("{p1} and {p2} do not both have degree 2"));
                }
                if g.neighbors(u) & g.neighbors(v) != 0 {
                    return Err(format!("{p1} and {p2} share a neighbor"));
                }
                Ok(())
            }
            Certificate::Diameter3Refutation { edge_family, bases } => self.check_diameter3(g, *edge_family, bases),
            Certificate::AllAdmissible { proofs } => {
                let claimed: Vec<&str> = proofs.iter().map(|p| p.vertex.as_str()).collect();
                let unique: BTreeSet<&str> = claimed.iter().copied().collect();
                if unique.len() != claimed.len() {
                    return Err("a vertex has two admissibility proofs".into());
                }
                let all: BTreeSet<&str> = g.names().iter().map(String::as_str).collect();
                if unique != all {
                    return Err("admissibility proofs do not cover every vertex".into());
                }
                for p in proofs {
                    let v = lookup(g, &p.vertex)?;
                    let removal = g
                        .delete([p.vertex.as_str()], Vec::<(&str, &str)>::new())
                        .map_err(|e| e.to_string())?;
                    if removal.is_empty() {
                        return Err(format!("removing {} leaves the empty graph", p.vertex));
                    }
                    self.check(&removal, &p.vertex_removal)
                        .map_err(|e| format!("removal of {}: {e}", p.vertex))?;
                    let expected = (1usize << g.degree(v)) - 1;
                    if p.edge_subsets.len() != expected {
                        return Err(format!(
                            "vertex {} has {} edge subsets, expected {expected}",
                            p.vertex,
                            p.edge_subsets.len()
                        ));
                    }
                    let mut seen = HashSet::new();
                    for s in &p.edge_subsets {
                        if s.removed.is_empty() {
                            return Err(format!("vertex {} lists an empty edge subset", p.vertex));
                        }
                        let drop = edge_indices(g, &s.removed)?;
                        if drop.iter().any(|&(a, b)| a != v && b != v) {
                            return Err(format!("an edge subset for {} has an edge not incident to it", p.vertex));
                        }
                        let mut key: Vec<(usize, usize)> = drop.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
                        key.sort();
                        if !seen.insert(key) {
                            return Err(format!("vertex {} repeats an edge subset", p.vertex));
                        }
                        self.check(&g.without_edges(&drop), &s.certificate)
                            .map_err(|e| format!("{} minus {:?}: {e}", p.vertex, s.removed))?;
                    }
                }
                Ok(())
            }
            Certificate::Lemma { key } => {
                if g.canonical_key() != *key {
                    return Err(format!("lemma {key} is cited for a graph of class {}", g.canonical_key()));
                }
                if self.done.contains(key) {
                    return Ok(());
                }
                let lemma = self.lemmas.get(key).ok_or_else(|| format!("lemma {key} is missing"))?;
                if lemma.graph.canonical_key() != *key {
                    return Err(format!("lemma {key} carries a graph of another class"));
                }
                if !self.open.insert(*key) {
                    return Err(format!("lemma {key} depends on itself"));
                }
                let result = self.check(&lemma.graph, &lemma.certificate);
                self.open.remove(key);
                result.map_err(|e| format!("lemma {key}: {e}"))?;
                self.done.insert(*key);
                Ok(())
            }
        }
    }

    fn check_diameter3(
        &mut self,
        g: &Graph,
        family: EdgeFamily,
        bases: &[crate::certificate::BaseRefutation],
    ) -> Check {
        let dist = g.distances();
        if dist.diameter() != Some(3) {
            return Err(format!("graph has diameter {:?}, not 3", dist.diameter()));
        }
        let expected: BTreeSet<&str> = (0..g.order())
            .filter(|&v| dist.eccentricity(v) == Some(3))
            .map(|v| g.name(v))
            .collect();
        let claimed: Vec<&str> = bases.iter().map(|b| b.partition.base.as_str()).collect();
        let claimed_set: BTreeSet<&str> = claimed.iter().copied().collect();
        if claimed_set.len() != claimed.len() || claimed_set != expected {
            return Err("refuted bases are not exactly the vertices of eccentricity 3".into());
        }
        for b in bases {
            let base = &b.partition.base;
            let partition = build_partition(g, base).map_err(|e| e.to_string())?;
            if partition != b.partition {
                return Err(format!("partition at {base} does not match the graph"));
            }
            match &b.outcome {
                BaseOutcome::Sass { violations } => {
                    if violations.is_empty() {
                        return Err(format!("base {base} cites no violated constraint"));
                    }
                    if *violations != check_sass(&partition) {
                        return Err(format!("constraint violations at {base} do not match the partition"));
                    }
                }
                BaseOutcome::Sylow { primes } => {
                    let cited: Vec<&str> = primes.iter().map(|p| p.prime.as_str()).collect();
                    let layer: Vec<&str> = partition.rho3.iter().map(String::as_str).collect();
                    if cited != layer {
                        return Err(format!("branches at {base} do not cover its third layer"));
                    }
                    for p in primes {
                        self.check_branches(g, family, &p.prime, &p.branches)
                            .map_err(|e| format!("base {base}, prime {}: {e}", p.prime))?;
                    }
                }
            }
        }
        Ok(())
    }

    fn check_branches(
        &mut self,
        g: &Graph,
        family: EdgeFamily,
        prime: &str,
        branches: &[crate::certificate::BranchRefutation],
    ) -> Check {
        let pi = lookup(g, prime)?;
        let candidates = branch_candidates(g, pi, family);
        if candidates.len() >= 32 {
            return Err(format!("{} candidate edges is beyond what can be checked", candidates.len()));
        }
        let base = g
            .delete([prime], Vec::<(&str, &str)>::new())
            .map_err(|e| e.to_string())?;
        let index: Vec<(usize, usize)> = candidates
            .iter()
            .map(|(a, b)| (base.index_of(a).unwrap(), base.index_of(b).unwrap()))
            .collect();
        let mut required = HashSet::new();
        for mask in 0u64..1 << candidates.len() {
            let drop: Vec<(usize, usize)> = (0..candidates.len())
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| index[i])
                .collect();
            required.insert(base.without_edges(&drop).canonical_key());
        }
        let allowed: HashSet<&EdgeName> = candidates.iter().collect();
        let mut covered = HashMap::new();
        for br in branches {
            if let Some(e) = br.removed.iter().find(|e| !allowed.contains(e)) {
                return Err(format!("{}-{} is not a candidate edge", e.0, e.1));
            }
            let drop = edge_indices(&base, &br.removed)?;
            let graph = base.without_edges(&drop);
            if covered.insert(graph.canonical_key(), ()).is_some() {
                return Err("two branches are isomorphic".into());
            }
            self.check(&graph, &br.certificate)
                .map_err(|e| format!("branch {:?}: {e}", br.removed))?;
        }
        if covered.len() != required.len() || required.iter().any(|k| !covered.contains_key(k)) {
            return Err("branch list does not match the regenerated branches".into());
        }
        Ok(())
    }
}
