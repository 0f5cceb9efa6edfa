use std::collections::HashMap;
use std::sync::OnceLock;

use crate::certificate::Certificate;
use crate::families::{complete, isolated_plus_complete};
use crate::graph::{CanonicalKey, Graph, MAX_VERTICES};

use super::{ClassifyError, UnknownReason, Witness};

/// A verdict as stored in a knowledge base: certificates cite the labels
/// of the entry's own graph and carry no lemma table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StoredVerdict {
    Occurs(Witness),
    NotOccurs(Certificate),
    Unknown(UnknownReason),
}

impl StoredVerdict {
    pub fn tag(&self) -> &'static str {
        match self {
            StoredVerdict::Occurs(_) => "occurs",
            StoredVerdict::NotOccurs(_) => "not_occurs",
            StoredVerdict::Unknown(_) => "unknown",
        }
    }
}

#[derive(Debug, Clone)]
pub struct Entry {
    /// The graph the verdict was first derived for.
    pub graph: Graph,
    /// Canonical vertex order of `graph`.
    pub order: Vec<usize>,
    pub verdict: StoredVerdict,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct KbStats {
    pub lookups: u64,
    pub hits: u64,
    pub inserts: u64,
}

/// Memo of verdicts keyed by isomorphism class. Entries never change once
/// written.
#[derive(Debug, Clone, Default)]
pub struct KnowledgeBase {
    entries: HashMap<CanonicalKey, Entry>,
    stats: KbStats,
}

impl KnowledgeBase {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn stats(&self) -> KbStats {
        self.stats
    }

    pub fn get(&self, key: &CanonicalKey) -> Option<&Entry> {
        self.entries.get(key)
    }

    pub(crate) fn lookup(&mut self, key: &CanonicalKey) -> Option<&Entry> {
        self.stats.lookups += 1;
        let hit = self.entries.get(key);
        if hit.is_some() {
            self.stats.hits += 1;
        }
        hit
    }

    /// Adds an entry. Re-inserting a class is a no-op when the verdict tags
    /// agree and an inconsistency error when they do not.
    pub fn insert(&mut self, key: CanonicalKey, entry: Entry) -> Result<(), ClassifyError> {
        if let Some(old) = self.entries.get(&key) {
            if old.verdict.tag() != entry.verdict.tag() {
                return Err(ClassifyError::Inconsistent {
                    key,
                    first: old.verdict.tag(),
                    second: entry.verdict.tag(),
                });
            }
            return Ok(());
        }
        self.stats.inserts += 1;
        self.entries.insert(key, entry);
        Ok(())
    }

    /// Folds `other` into `self`, failing on any tag conflict.
    pub fn merge(&mut self, other: &KnowledgeBase) -> Result<(), ClassifyError> {
        for (key, entry) in &other.entries {
            if let Some(old) = self.entries.get(key) {
                if old.verdict.tag() != entry.verdict.tag() {
                    return Err(ClassifyError::Inconsistent {
                        key: *key,
                        first: old.verdict.tag(),
                        second: entry.verdict.tag(),
                    });
                }
            }
        }
        for (key, entry) in &other.entries {
            self.insert(*key, entry.clone())?;
        }
        Ok(())
    }

    pub fn iter(&self) -> impl Iterator<Item = (&CanonicalKey, &Entry)> {
        self.entries.iter()
    }
}

/// Classes known to occur before any search: complete graphs, an isolated
/// vertex beside a clique, and the four-cycle.
#[derive(Debug)]
pub struct SeedBase {
    witnesses: HashMap<CanonicalKey, Witness>,
}

impl SeedBase {
    fn build() -> SeedBase {
        let mut witnesses = HashMap::new();
        for n in 1..=MAX_VERTICES {
            let g = complete(n).expect("in range");
            witnesses.insert(g.canonical_key(), Witness::CompleteGraph { n });
        }
        for n in 1..MAX_VERTICES {
            let g = isolated_plus_complete(n).expect("in range");
            witnesses.insert(g.canonical_key(), Witness::IsolatedPlusComplete { n });
        }
        let c4 = Witness::DirectProduct {
            factors: vec![
                Witness::IsolatedPlusComplete { n: 1 },
                Witness::IsolatedPlusComplete { n: 1 },
            ],
        };
        let key = c4.replay().expect("valid witness").canonical_key();
        witnesses.insert(key, c4);
        SeedBase { witnesses }
    }

    pub fn shared() -> &'static SeedBase {
        static SEEDS: OnceLock<SeedBase> = OnceLock::new();
        SEEDS.get_or_init(SeedBase::build)
    }

    pub fn get(&self, key: &CanonicalKey) -> Option<&Witness> {
        self.witnesses.get(key)
    }

    pub fn len(&self) -> usize {
        self.witnesses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.witnesses.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{gamma, FamilySpec};

    fn entry(g: &Graph, verdict: StoredVerdict) -> Entry {
        Entry {
            graph: g.clone(),
            order: g.canonical_form().order,
            verdict,
        }
    }

    fn unknown(n: usize) -> StoredVerdict {
        StoredVerdict::Unknown(UnknownReason::TwoCliques { sizes: (n + 1, n + 1) })
    }

    #[test]
    fn seeds_cover_named_families() {
        let seeds = SeedBase::shared();
        assert_eq!(seeds.len(), 16 + 15 + 1);
        let c4 = gamma(FamilySpec::new(2, 2).unwrap());
        assert!(matches!(seeds.get(&c4.canonical_key()), Some(Witness::DirectProduct { .. })));
        let k1k3 = isolated_plus_complete(3).unwrap();
        assert_eq!(
            seeds.get(&k1k3.canonical_key()),
            Some(&Witness::IsolatedPlusComplete { n: 3 })
        );
    }

    #[test]
    fn insert_is_write_once_and_conflict_checked() {
        let g = gamma(FamilySpec::new(3, 3).unwrap());
        let key = g.canonical_key();
        let mut kb = KnowledgeBase::new();
        kb.insert(key, entry(&g, unknown(1))).unwrap();
        kb.insert(key, entry(&g, unknown(2))).unwrap();
        assert_eq!(kb.get(&key).unwrap().verdict, unknown(1));
        let clash = kb.insert(key, entry(&g, StoredVerdict::Occurs(Witness::CompleteGraph { n: 1 })));
        assert!(matches!(clash, Err(ClassifyError::Inconsistent { .. })));
        assert_eq!(kb.stats().inserts, 1);
    }

    #[test]
    fn merge_rejects_conflicts_without_partial_writes() {
        let a = gamma(FamilySpec::new(3, 3).unwrap());
        let b = gamma(FamilySpec::new(4, 3).unwrap());
        let mut left = KnowledgeBase::new();
        left.insert(a.canonical_key(), entry(&a, unknown(3))).unwrap();
        let mut right = KnowledgeBase::new();
        right.insert(b.canonical_key(), entry(&b, unknown(3))).unwrap();
        right
            .insert(a.canonical_key(), entry(&a, StoredVerdict::Occurs(Witness::CompleteGraph { n: 1 })))
            .unwrap();
        assert!(left.merge(&right).is_err());
        assert_eq!(left.len(), 1);

        let mut ok = KnowledgeBase::new();
        ok.insert(b.canonical_key(), entry(&b, unknown(3))).unwrap();
        left.merge(&ok).unwrap();
        assert_eq!(left.len(), 2);
    }
}
