//! Constructors for the named graph families: the two-clique matchings
//! `Γ(k,t)`, complete graphs, an isolated vertex beside a clique, and
//! direct products (joins).

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, GraphError, MAX_VERTICES};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("family parameters must be positive (got k={k}, t={t})")]
    NonPositive { k: usize, t: usize },
    #[error("size {0} is outside 1..={1}")]
    Size(usize, usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Parameters of `Γ(k,t)`: a `k`-clique and a `t`-clique joined by a
/// matching on the smaller side.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FamilySpec {
    k: usize,
    t: usize,
}

impl FamilySpec {
    pub fn new(k: usize, t: usize) -> Result<FamilySpec, FamilyError> {
        if k == 0 || t == 0 {
            return Err(FamilyError::NonPositive { k, t });
        }
        if k + t > MAX_VERTICES {
            return Err(FamilyError::Graph(GraphError::TooManyVertices(k + t)));
        }
        Ok(FamilySpec { k, t })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn t(&self) -> usize {
        self.t
    }

    /// The same family member with the larger clique first.
    pub fn normalized(&self) -> FamilySpec {
        FamilySpec {
            k: self.k.max(self.t),
            t: self.k.min(self.t),
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Γ({},{})", self.k, self.t)
    }
}

fn clique_edges(names: &[String]) -> Vec<(String, String)> {
    let mut out = Vec::new();
    for i in 0..names.len() {
        for j in i + 1..names.len() {
            out.push((names[i].clone(), names[j].clone()));
        }
    }
    out
}

/// `Γ(k,t)` with vertices `a1..ak`, `b1..bt`. When `k < t` the sides are
/// swapped so that the `a` clique is always the larger one.
pub fn gamma(spec: FamilySpec) -> Graph {
    let FamilySpec { k, t } = spec.normalized();
    let a: Vec<String> = (1..=k).map(|i| format!("a{i}")).collect();
    let b: Vec<String> = (1..=t).map(|i| format!("b{i}")).collect();
    let mut edges = clique_edges(&a);
    edges.extend(clique_edges(&b));
    edges.extend((0..t).map(|i| (a[i].clone(), b[i].clone())));
    let vertices: Vec<String> = a.into_iter().chain(b).collect();
    Graph::new(vertices, edges).expect("family spec bounds the vertex count")
}

/// `K_n` on vertices `v1..vn`.
pub fn complete(n: usize) -> Result<Graph, FamilyError> {
    if !(1..=MAX_VERTICES).contains(&n) {
        return Err(FamilyError::Size(n, MAX_VERTICES));
    }
    let names: Vec<String> = (1..=n).map(|i| format!("v{i}")).collect();
    let edges = clique_edges(&names);
    Ok(Graph::new(names, edges)?)
}

/// `K_1 ⊔ K_n`: an isolated vertex `u0` beside the clique `v1..vn`.
pub fn isolated_plus_complete(n: usize) -> Result<Graph, FamilyError> {
    if !(1..MAX_VERTICES).contains(&n) {
        return Err(FamilyError::Size(n, MAX_VERTICES - 1));
    }
    let lone = Graph::new(["u0"], Vec::<(&str, &str)>::new())?;
    Ok(lone.disjoint_union(&complete(n)?)?)
}

/// Disjoint union of `a` and `b` with every cross edge added.
pub fn direct_product(a: &Graph, b: &Graph) -> Result<Graph, FamilyError> {
    Ok(a.join(b)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(k: usize, t: usize) -> FamilySpec {
        FamilySpec::new(k, t).unwrap()
    }

    fn choose2(n: usize) -> usize {
        n * n.saturating_sub(1) / 2
    }

    #[test]
    fn gamma_two_two_is_four_cycle() {
        let g = gamma(spec(2, 2));
        assert_eq!(g.edge_count(), 4);
        assert!((0..4).all(|v| g.degree(v) == 2));
        assert!(g.is_connected());
        assert_eq!(g.names(), ["a1", "a2", "b1", "b2"]);
    }

    #[test]
    fn gamma_one_one_is_an_edge() {
        let g = gamma(spec(1, 1));
        assert_eq!(g.canonical_key(), complete(2).unwrap().canonical_key());
    }

    #[test]
    fn gamma_three_three_is_the_prism() {
        let g = gamma(spec(3, 3));
        assert_eq!((g.order(), g.edge_count()), (6, 9));
        let prism = Graph::new(
            ["x", "y", "z", "p", "q", "r"],
            [
                ("x", "y"),
                ("y", "z"),
                ("z", "x"),
                ("p", "q"),
                ("q", "r"),
                ("r", "p"),
                ("x", "p"),
                ("y", "q"),
                ("z", "r"),
            ],
        )
        .unwrap();
        assert_eq!(g.canonical_key(), prism.canonical_key());
    }

    #[test]
    fn gamma_swaps_to_larger_side_first() {
        let g = gamma(spec(2, 5));
        assert_eq!(g.names()[..5], ["a1", "a2", "a3", "a4", "a5"]);
        assert_eq!(g, gamma(spec(5, 2)));
    }

    #[test]
    fn family_spec_validation() {
        assert!(FamilySpec::new(0, 3).is_err());
        assert!(FamilySpec::new(3, 0).is_err());
        assert!(FamilySpec::new(9, 8).is_err());
        assert!(FamilySpec::new(8, 8).is_ok());
    }

    #[test]
    fn complete_graphs() {
        assert_eq!(complete(1).unwrap().order(), 1);
        assert_eq!(complete(4).unwrap().edge_count(), 6);
        assert_eq!(
            complete(2).unwrap().canonical_key(),
            gamma(spec(1, 1)).canonical_key()
        );
        assert!(complete(0).is_err());
        assert!(complete(17).is_err());
    }

    #[test]
    fn isolated_vertex_beside_clique() {
        let g = isolated_plus_complete(1).unwrap();
        assert_eq!((g.order(), g.edge_count()), (2, 0));
        let g = isolated_plus_complete(3).unwrap();
        let comps = g.components();
        assert_eq!(comps.len(), 2);
        assert!(comps.iter().all(|c| c.complete));
        let g = isolated_plus_complete(2).unwrap();
        assert_eq!((g.order(), g.edge_count()), (3, 1));
        assert!(isolated_plus_complete(16).is_err());
    }

    #[test]
    fn direct_products() {
        let a = isolated_plus_complete(2).unwrap();
        let b = complete(1).unwrap().prefixed("r");
        assert_eq!(
            direct_product(&a, &b).unwrap().canonical_key(),
            gamma(spec(3, 1)).canonical_key()
        );

        let two = isolated_plus_complete(1).unwrap();
        let c4 = direct_product(&two, &two.prefixed("r")).unwrap();
        assert_eq!(c4.canonical_key(), gamma(spec(2, 2)).canonical_key());

        let k5 = direct_product(&complete(2).unwrap(), &complete(3).unwrap().prefixed("r")).unwrap();
        assert_eq!(k5, k5.clone());
        assert!(k5.is_complete());
        assert_eq!(k5.order(), 5);

        assert!(matches!(
            direct_product(&two, &two),
            Err(FamilyError::Graph(GraphError::NameCollision(_)))
        ));
    }

    #[test]
    fn gamma_invariants_over_all_specs() {
        for k in 1..=15 {
            for t in 1..=16 - k {
                let g = gamma(spec(k, t));
                assert_eq!(g.edge_count(), choose2(k) + choose2(t) + k.min(t));
                assert_eq!(g.canonical_key(), gamma(spec(t, k)).canonical_key());
                assert!(g.distances().diameter().unwrap() <= 2, "{k},{t}");
            }
        }
    }

    #[test]
    fn direct_product_commutes_and_associates() {
        let a = gamma(spec(2, 1)).prefixed("x");
        let b = isolated_plus_complete(2).unwrap().prefixed("y");
        let c = complete(2).unwrap().prefixed("z");
        let ab = direct_product(&a, &b).unwrap();
        let ba = direct_product(&b, &a).unwrap();
        assert_eq!(ab.canonical_key(), ba.canonical_key());
        let ab_c = direct_product(&ab, &c).unwrap();
        let a_bc = direct_product(&a, &direct_product(&b, &c).unwrap()).unwrap();
        assert_eq!(ab_c.canonical_key(), a_bc.canonical_key());
    }
}
