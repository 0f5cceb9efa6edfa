//! Exhaustive runs over every isomorphism class on a few vertices.

use std::collections::BTreeSet;
use std::fmt;

use rayon::prelude::*;

use crate::classifier::{occurs_by_construction, ClassifyError, EngineConfig, Session, Verdict};
use crate::graph::{CanonicalKey, Graph};
use crate::rules::check_palfy;

pub const MAX_ENUMERATION_ORDER: usize = 7;

/// Canonical keys of all graphs on `n` vertices, one per isomorphism
/// class, in key order. Built by adding one vertex at a time with every
/// possible neighborhood.
pub fn graph_classes(n: usize) -> Vec<CanonicalKey> {
    if n == 0 {
        return Vec::new();
    }
    let mut level: BTreeSet<CanonicalKey> = BTreeSet::new();
    level.insert(Graph::new(["v1"], Vec::<(&str, &str)>::new()).unwrap().canonical_key());
    for m in 1..n {
        let mut next = BTreeSet::new();
        for key in &level {
            let g = Graph::from_canonical_key(key);
            let name = format!("v{}", m + 1);
            for mask in 0u32..1 << m {
                let edges: Vec<(String, String)> = (0..m)
                    .filter(|&u| mask >> u & 1 == 1)
                    .map(|u| (g.name(u).to_string(), name.clone()))
                    .collect();
                let mut names = g.names().to_vec();
                names.push(name.clone());
                let mut all = g.edge_names();
                all.extend(edges);
                let h = Graph::new(names, all).expect("fresh vertex");
                next.insert(h.canonical_key());
            }
        }
        level = next;
    }
    level.into_iter().collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReportLine {
    pub key: CanonicalKey,
    pub verdict: &'static str,
    pub rule: &'static str,
    pub edges: Vec<(String, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumerationReport {
    pub order: usize,
    pub classes: usize,
    pub palfy_passing: usize,
    pub occurs: usize,
    pub not_occurs: usize,
    pub unknown: usize,
    pub lines: Vec<ReportLine>,
}

impl EnumerationReport {
    pub fn summary(&self) -> String {
        format!(
            "order {}\nclasses {}\npalfy_passing {}\noccurs {}\nnot_occurs {}\nunknown {}\n",
            self.order, self.classes, self.palfy_passing, self.occurs, self.not_occurs, self.unknown
        )
    }
}

impl fmt::Display for EnumerationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.summary())?;
        for line in &self.lines {
            let edges: Vec<String> = line.edges.iter().map(|(a, b)| format!("{a}-{b}")).collect();
            writeln!(f, "{} {} {} {}", line.key, line.verdict, line.rule, edges.join(","))?;
        }
        Ok(())
    }
}

fn classify_one(session: &mut Session, key: &CanonicalKey) -> Result<ReportLine, ClassifyError> {
    let g = Graph::from_canonical_key(key);
    let verdict = session.classify(&g)?;
    if matches!(verdict, Verdict::NotOccurs(_)) && occurs_by_construction(&g).is_some() {
        return Err(ClassifyError::Inconsistent {
            key: *key,
            first: "occurs",
            second: "not_occurs",
        });
    }
    Ok(ReportLine {
        key: *key,
        verdict: verdict.tag(),
        rule: verdict.rule(),
        edges: g.edge_names(),
    })
}

/// Classifies every Pálfy-passing class on `n` vertices. With `parallel`
/// the classes are spread over worker threads, each with its own session;
/// the report is the same either way.
pub fn enumerate(n: usize, config: EngineConfig, parallel: bool) -> Result<EnumerationReport, ClassifyError> {
    let classes = graph_classes(n);
    let passing: Vec<CanonicalKey> = classes
        .iter()
        .copied()
        .filter(|k| check_palfy(&Graph::from_canonical_key(k)).is_none())
        .collect();
    let lines: Vec<ReportLine> = if parallel {
        passing
            .par_iter()
            .map_init(|| Session::new(config), classify_one)
            .collect::<Result<_, _>>()?
    } else {
        let mut session = Session::new(config);
        passing
            .iter()
            .map(|k| classify_one(&mut session, k))
            .collect::<Result<_, _>>()?
    };
    let count = |tag: &str| lines.iter().filter(|l| l.verdict == tag).count();
    Ok(EnumerationReport {
        order: n,
        classes: classes.len(),
        palfy_passing: passing.len(),
        occurs: count("occurs"),
        not_occurs: count("not_occurs"),
        unknown: count("unknown"),
        lines,
    })
}
