//! Graph family generators.

use std::collections::HashSet;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Restarts of the pairing scheme before `random_regular` gives up.
pub const REGULAR_RETRY_CAP: usize = 1000;

/// A graph family request, as accepted by the CLI.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    Path { n: usize },
    Cycle { n: usize },
    Complete { n: usize },
    CompleteBipartite { a: usize, b: usize },
    Hypercube { dim: u32 },
    RandomRegular { n: usize, degree: usize },
}

pub fn generate(family: &Family, seed: u64) -> Result<Graph> {
    match *family {
        Family::Path { n } => Ok(path(n)),
        Family::Cycle { n } => cycle(n),
        Family::Complete { n } => Ok(complete(n)),
        Family::CompleteBipartite { a, b } => complete_bipartite(a, b),
        Family::Hypercube { dim } => {
            if dim >= 24 {
                return Err(Error::validation(format!(
                    "hypercube dimension {dim} is too large to build"
                )));
            }
            Ok(hypercube(dim))
        }
        Family::RandomRegular { n, degree } => random_regular(n, degree, seed),
    }
}

pub fn path(n: usize) -> Graph {
    Graph::new(n, (1..n).map(|v| (v - 1, v))).expect("path edges are simple")
}

pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::validation(format!("cycle needs n >= 3, got {n}")));
    }
    Graph::new(n, (0..n).map(|v| (v, (v + 1) % n)))
}

pub fn complete(n: usize) -> Graph {
    let edges = (0..n).flat_map(|u| ((u + 1)..n).map(move |v| (u, v)));
    Graph::new(n, edges).expect("complete edges are simple")
}

pub fn complete_bipartite(a: usize, b: usize) -> Result<Graph> {
    if a < 1 || b < 1 {
        return Err(Error::validation(format!(
            "complete bipartite needs both sides >= 1, got {a}, {b}"
        )));
    }
    let edges = (0..a).flat_map(|u| (0..b).map(move |v| (u, a + v)));
    Graph::new(a + b, edges)
}

/// Hypercube Q_d: vertices are bit strings, edges flip one coordinate.
pub fn hypercube(dim: u32) -> Graph {
    assert!(dim < 24, "hypercube dimension {dim} is too large to build");
    let n = 1usize << dim;
    let mut edges = Vec::with_capacity((dim as usize) << dim.saturating_sub(1));
    for v in 0..n {
        for i in 0..dim {
            let w = v ^ (1 << i);
            if v < w {
                edges.push((v, w));
            }
        }
    }
    Graph::new(n, edges).expect("hypercube edges are simple")
}

/// Random d-regular simple graph via stub pairing: two stubs are drawn
/// uniformly, a pair that would create a loop or parallel edge is rejected
/// and redrawn, and an attempt that stalls is restarted from scratch.
/// Deterministic per seed.
pub fn random_regular(n: usize, degree: usize, seed: u64) -> Result<Graph> {
    if degree >= n && !(n == 0 && degree == 0) {
        return Err(Error::validation(format!(
            "degree {degree} must be smaller than n = {n}"
        )));
    }
    if !(n * degree).is_multiple_of(2) {
        return Err(Error::validation(format!(
            "n * degree = {} must be even",
            n * degree
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    'attempt: for _ in 0..REGULAR_RETRY_CAP {
        let mut stubs: Vec<usize> = (0..n)
            .flat_map(|v| std::iter::repeat_n(v, degree))
            .collect();
        let mut used: HashSet<(usize, usize)> = HashSet::new();
        let mut edges: Vec<(usize, usize)> = Vec::with_capacity(n * degree / 2);
        let mut rejections = 0usize;
        while !stubs.is_empty() {
            let i = rng.gen_range(0..stubs.len());
            let j = rng.gen_range(0..stubs.len());
            let (u, v) = (stubs[i], stubs[j]);
            let key = (u.min(v), u.max(v));
            if i == j || u == v || used.contains(&key) {
                rejections += 1;
                if rejections > 200 * (n * degree + 1) {
                    continue 'attempt; // stalled near the end; restart
                }
                continue;
            }
            used.insert(key);
            edges.push(key);
            // remove the higher index first so the lower one stays valid
            let (hi, lo) = (i.max(j), i.min(j));
            stubs.swap_remove(hi);
            stubs.swap_remove(lo);
        }
        return Graph::new(n, edges);
    }
    Err(Error::GenerationFailure {
        attempts: REGULAR_RETRY_CAP,
    })
}
