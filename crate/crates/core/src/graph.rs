//! Simple undirected graphs on dense vertex ids `0..n`, plus the structural
//! statistics the bound calculus consumes: degree stats, girth, and the
//! K3 / K2,3 forbidden-subgraph screen.

use std::collections::VecDeque;
use std::fmt;

use num::bigint::BigInt;
use num::rational::BigRational;

use crate::error::{Error, Result};

/// Immutable simple graph. Edges are stored normalized (`u < v`) and sorted;
/// adjacency lists are sorted. All operations on it are pure.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, m={})", self.n, self.edges.len())
    }
}

impl Graph {
    /// Build a graph from an edge list. Pairs may come in any order;
    /// self-loops, duplicates and out-of-range ids are rejected.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut norm: Vec<(usize, usize)> = Vec::new();
        for (u, v) in edges {
            if u == v {
                return Err(Error::validation(format!("self-loop at vertex {u}")));
            }
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexRange { vertex: w, n });
                }
            }
            norm.push((u.min(v), u.max(v)));
        }
        norm.sort_unstable();
        if let Some(w) = norm.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::validation(format!(
                "duplicate edge {} {}",
                w[0].0, w[0].1
            )));
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &norm {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Graph {
            n,
            edges: norm,
            adj,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// Edges in canonical order: `u < v`, sorted lexicographically.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Index of edge `{u, v}` in canonical order, if present.
    pub fn edge_id(&self, u: usize, v: usize) -> Option<usize> {
        let key = (u.min(v), u.max(v));
        self.edges.binary_search(&key).ok()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edge_id(u, v).is_some()
    }
}

/// Exact degree statistics of a nonempty graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeStats {
    pub max_degree: usize,
    pub edge_count: usize,
    /// 2m/n as an exact rational.
    pub avg_degree: BigRational,
}

pub fn degree_stats(g: &Graph) -> Result<DegreeStats> {
    if g.n() == 0 {
        return Err(Error::validation("degree stats of the empty graph"));
    }
    let m = g.m();
    Ok(DegreeStats {
        max_degree: (0..g.n()).map(|v| g.degree(v)).max().unwrap_or(0),
        edge_count: m,
        avg_degree: BigRational::new(BigInt::from(2 * m), BigInt::from(g.n())),
    })
}

/// Length of a shortest cycle; forests have infinite girth.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Girth {
    Finite(usize),
    Infinite,
}

impl Girth {
    pub fn at_least(self, bound: usize) -> bool {
        match self {
            Girth::Finite(g) => g >= bound,
            Girth::Infinite => true,
        }
    }
}

impl fmt::Display for Girth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Girth::Finite(g) => write!(f, "{g}"),
            Girth::Infinite => write!(f, "infinity"),
        }
    }
}

/// Shortest cycle length by BFS from every vertex. Every non-tree edge met
/// during a BFS closes a walk of length `dist(u) + dist(v) + 1` that contains
/// a cycle no longer than itself, so the minimum over all roots is exact.
pub fn girth(g: &Graph) -> Girth {
    let n = g.n();
    let mut best: Option<usize> = None;
    let mut dist = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    for root in 0..n {
        dist.fill(usize::MAX);
        parent.fill(usize::MAX);
        dist[root] = 0;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            if let Some(b) = best {
                // nothing shorter can close at this depth
                if 2 * dist[v] >= b {
                    break;
                }
            }
            for &w in g.neighbors(v) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    parent[w] = v;
                    queue.push_back(w);
                } else if parent[v] != w && parent[w] != v {
                    let cycle = dist[v] + dist[w] + 1;
                    best = Some(best.map_or(cycle, |b| b.min(cycle)));
                }
            }
        }
    }
    match best {
        Some(c) => Girth::Finite(c),
        None => Girth::Infinite,
    }
}

/// Result of the forbidden-subgraph screen. Either flag set means the graph
/// admits no good edge-labelling, no search required.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ForbiddenScreen {
    pub contains_k3: bool,
    pub contains_k23: bool,
}

pub fn forbidden_screen(g: &Graph) -> ForbiddenScreen {
    let contains_k3 = g
        .edges()
        .iter()
        .any(|&(u, v)| common_neighbor_count(g, u, v, 1) >= 1);
    let mut contains_k23 = false;
    'pairs: for u in 0..g.n() {
        for v in (u + 1)..g.n() {
            if common_neighbor_count(g, u, v, 3) >= 3 {
                contains_k23 = true;
                break 'pairs;
            }
        }
    }
    ForbiddenScreen {
        contains_k3,
        contains_k23,
    }
}

/// Count common neighbors of `u` and `v` by merging sorted adjacency lists,
/// stopping early once `enough` are found.
fn common_neighbor_count(g: &Graph, u: usize, v: usize, enough: usize) -> usize {
    let (a, b) = (g.neighbors(u), g.neighbors(v));
    let (mut i, mut j, mut count) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                count += 1;
                if count >= enough {
                    return count;
                }
                i += 1;
                j += 1;
            }
        }
    }
    count
}
