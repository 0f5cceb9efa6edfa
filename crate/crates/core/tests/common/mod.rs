//! Brute-force reference computations, written without the library's
//! algorithms so the tests compare against something independent.
#![allow(dead_code)]

use chardeg::graph::Graph;

pub fn adjacency(g: &Graph) -> Vec<Vec<bool>> {
    let n = g.order();
    (0..n).map(|u| (0..n).map(|v| g.adjacent(u, v)).collect()).collect()
}

/// Any three pairwise nonadjacent vertices.
pub fn has_independent_triple(g: &Graph) -> bool {
    let a = adjacency(g);
    let n = a.len();
    for x in 0..n {
        for y in x + 1..n {
            for z in y + 1..n {
                if !a[x][y] && !a[x][z] && !a[y][z] {
                    return true;
                }
            }
        }
    }
    false
}

pub const INF: usize = usize::MAX / 4;

/// All-pairs distances by Floyd–Warshall; `INF` across components.
pub fn floyd(g: &Graph) -> Vec<Vec<usize>> {
    let a = adjacency(g);
    let n = a.len();
    let mut d = vec![vec![INF; n]; n];
    for u in 0..n {
        d[u][u] = 0;
        for v in 0..n {
            if a[u][v] {
                d[u][v] = 1;
            }
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if d[i][k] + d[k][j] < d[i][j] {
                    d[i][j] = d[i][k] + d[k][j];
                }
            }
        }
    }
    d
}

/// Components as sorted index lists, found by repeated flooding.
pub fn components(g: &Graph) -> Vec<Vec<usize>> {
    let d = floyd(g);
    let n = d.len();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        let comp: Vec<usize> = (0..n).filter(|&v| d[s][v] < INF).collect();
        for &v in &comp {
            seen[v] = true;
        }
        out.push(comp);
    }
    out
}

pub fn is_clique(g: &Graph, vs: &[usize]) -> bool {
    vs.iter()
        .all(|&u| vs.iter().all(|&v| u == v || g.adjacent(u, v)))
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Isomorphism by trying every bijection. Only for small graphs.
pub fn isomorphic(a: &Graph, b: &Graph) -> bool {
    let n = a.order();
    if n != b.order() || a.edge_count() != b.edge_count() {
        return false;
    }
    let mut da: Vec<usize> = (0..n).map(|v| a.degree(v)).collect();
    let mut db: Vec<usize> = (0..n).map(|v| b.degree(v)).collect();
    da.sort();
    db.sort();
    if da != db {
        return false;
    }
    let mut p: Vec<usize> = (0..n).collect();
    loop {
        if (0..n).all(|u| (u + 1..n).all(|v| a.adjacent(u, v) == b.adjacent(p[u], p[v]))) {
            return true;
        }
        if !next_permutation(&mut p) {
            return false;
        }
    }
}

/// The graph on `v0..v{n-1}` whose edges are picked by `mask` over the
/// pairs (i, j), i < j, in row order.
pub fn from_mask(n: usize, mask: u64) -> Graph {
    let bits: Vec<bool> = (0..n * n.saturating_sub(1) / 2).map(|i| mask >> i & 1 == 1).collect();
    from_bits(n, &bits)
}

/// As [`from_mask`], one flag per pair.
pub fn from_bits(n: usize, bits: &[bool]) -> Graph {
    let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let mut edges = Vec::new();
    let mut bit = 0;
    for i in 0..n {
        for j in i + 1..n {
            if bits[bit] {
                edges.push((names[i].clone(), names[j].clone()));
            }
            bit += 1;
        }
    }
    Graph::new(names, edges).unwrap()
}

/// The same graph with vertex `u` renamed `x{perm[u]}`; the new graph
/// lists `x0, x1, ...` so `u` moves to position `perm[u]`.
pub fn relabel(g: &Graph, perm: &[usize]) -> Graph {
    let names: Vec<String> = (0..g.order()).map(|i| format!("x{i}")).collect();
    let edges: Vec<(String, String)> = g
        .edges()
        .into_iter()
        .map(|(u, v)| (names[perm[u]].clone(), names[perm[v]].clone()))
        .collect();
    Graph::new(names, edges).unwrap()
}
