//! Canonical labeling by color refinement plus individualization search.
//!
//! The ordered partition is refined to an equitable one by splitting each
//! cell on its members' neighbor counts into every cell. When cells remain
//! non-singleton, each member of the first such cell is individualized in
//! turn and the search recurses. Leaves are discrete partitions, i.e. vertex
//! orders; the key is the largest upper-triangle adjacency encoding over all
//! leaves. Members of one twin class are interchangeable, so only one of
//! them is tried per cell.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{bits, Graph};

/// Isomorphism-class key: equal keys iff isomorphic graphs.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalKey {
    order: u8,
    bits: u128,
}

/// A canonical key together with the vertex order that realizes it:
/// `order[i]` is the vertex placed at canonical position `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalForm {
    pub key: CanonicalKey,
    pub order: Vec<usize>,
}

fn pair_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    i * n - i * (i + 1) / 2 + (j - i - 1)
}

impl CanonicalKey {
    pub fn order(&self) -> usize {
        self.order as usize
    }

    pub fn edge_count(&self) -> usize {
        self.bits.count_ones() as usize
    }

    /// Adjacency of canonical positions `i` and `j`.
    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        let (i, j) = if i < j { (i, j) } else { (j, i) };
        if i == j || j >= self.order() {
            return false;
        }
        self.bits >> (127 - pair_index(self.order(), i, j)) & 1 == 1
    }

    pub fn to_bytes(&self) -> [u8; 17] {
        let mut out = [0u8; 17];
        out[0] = self.order;
        out[1..].copy_from_slice(&self.bits.to_be_bytes());
        out
    }

    fn encode(g: &Graph, order: &[usize]) -> CanonicalKey {
        let n = order.len();
        let mut bits = 0u128;
        let mut p = 0;
        for i in 0..n {
            let row = g.neighbors(order[i]);
            for &w in &order[i + 1..] {
                if row & (1 << w) != 0 {
                    bits |= 1u128 << (127 - p);
                }
                p += 1;
            }
        }
        CanonicalKey {
            order: n as u8,
            bits,
        }
    }
}

impl fmt::Display for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:02}-{:032x}", self.order, self.bits)
    }
}

impl fmt::Debug for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalKey({self})")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("malformed canonical key `{0}`")]
pub struct ParseKeyError(String);

impl FromStr for CanonicalKey {
    type Err = ParseKeyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseKeyError(s.to_string());
        let (n, hex) = s.split_once('-').ok_or_else(err)?;
        let order: u8 = n.parse().map_err(|_| err())?;
        if hex.len() != 32 || order as usize > super::MAX_VERTICES {
            return Err(err());
        }
        let bits = u128::from_str_radix(hex, 16).map_err(|_| err())?;
        let pairs = order as usize * (order as usize).saturating_sub(1) / 2;
        if pairs < 128 && bits & (u128::MAX >> pairs) != 0 {
            return Err(err());
        }
        Ok(CanonicalKey { order, bits })
    }
}

impl Serialize for CanonicalKey {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for CanonicalKey {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

type Cells = Vec<Vec<usize>>;

fn refine(g: &Graph, mut cells: Cells) -> Cells {
    let n = g.order();
    loop {
        let mut cell_of = vec![0usize; n];
        for (c, cell) in cells.iter().enumerate() {
            for &v in cell {
                cell_of[v] = c;
            }
        }
        let mut next = Vec::with_capacity(cells.len());
        for cell in &cells {
            if cell.len() == 1 {
                next.push(cell.clone());
                continue;
            }
            let mut keyed: Vec<(Vec<u8>, usize)> = cell
                .iter()
                .map(|&v| {
                    let mut sig = vec![0u8; cells.len()];
                    for u in bits(g.neighbors(v)) {
                        sig[cell_of[u]] += 1;
                    }
                    (sig, v)
                })
                .collect();
            keyed.sort();
            let mut start = 0;
            for i in 1..=keyed.len() {
                if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                    next.push(keyed[start..i].iter().map(|(_, v)| *v).collect());
                    start = i;
                }
            }
        }
        if next.len() == cells.len() {
            return next;
        }
        cells = next;
    }
}

/// Twin class per vertex: vertices with equal open or equal closed
/// neighborhoods share a class, and swapping two of them is an automorphism.
fn twin_classes(g: &Graph) -> Vec<usize> {
    let n = g.order();
    let mut class: Vec<usize> = (0..n).collect();
    for v in 0..n {
        for u in 0..v {
            let open = g.neighbors(u) == g.neighbors(v);
            let closed = g.neighbors(u) | 1 << u == g.neighbors(v) | 1 << v;
            if open || closed {
                class[v] = class[u];
                break;
            }
        }
    }
    class
}

struct Search<'a> {
    g: &'a Graph,
    twins: Vec<usize>,
    best: Option<CanonicalForm>,
}

impl Search<'_> {
    fn descend(&mut self, cells: Cells) {
        let Some(target) = cells.iter().position(|c| c.len() > 1) else {
            let order: Vec<usize> = cells.into_iter().flatten().collect();
            let key = CanonicalKey::encode(self.g, &order);
            if self.best.as_ref().is_none_or(|b| key > b.key) {
                self.best = Some(CanonicalForm { key, order });
            }
            return;
        };
        let mut tried: Vec<usize> = Vec::new();
        for &v in &cells[target] {
            if tried.contains(&self.twins[v]) {
                continue;
            }
            tried.push(self.twins[v]);
            let mut next = Vec::with_capacity(cells.len() + 1);
            next.extend_from_slice(&cells[..target]);
            next.push(vec![v]);
            next.push(cells[target].iter().copied().filter(|&u| u != v).collect());
            next.extend_from_slice(&cells[target + 1..]);
            let next = refine(self.g, next);
            self.descend(next);
        }
    }
}

pub(super) fn canonical_form(g: &Graph) -> CanonicalForm {
    if g.order() == 0 {
        return CanonicalForm {
            key: CanonicalKey { order: 0, bits: 0 },
            order: Vec::new(),
        };
    }
    let mut search = Search {
        g,
        twins: twin_classes(g),
        best: None,
    };
    search.descend(refine(g, vec![(0..g.order()).collect()]));
    search.best.expect("search reaches at least one leaf")
}
