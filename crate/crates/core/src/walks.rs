//! Nice k-walk counting and nondecreasing-path enumeration.
//!
//! A nice k-walk never immediately backtracks and carries a nondecreasing
//! label sequence; walks are directed, so a walk and its reversal are
//! distinct objects. Two nice k-walks with the same ordered endpoints prove
//! a labelling is not good, and so does a pair of distinct nondecreasing
//! simple paths with the same ordered endpoints.

use std::collections::BTreeMap;
use std::collections::HashMap;

use num::bigint::BigUint;
use num::rational::BigRational;
use num::Zero;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::labelling::Labelling;

fn check_labelled(g: &Graph, phi: &Labelling) -> Result<()> {
    if phi.len() != g.m() {
        return Err(Error::validation(format!(
            "labelling covers {} edges but the graph has {}",
            phi.len(),
            g.m()
        )));
    }
    Ok(())
}

/// Exact number of directed nice k-walks.
///
/// Dynamic program over directed edges: a walk ending with the directed edge
/// `u -> v` extends along any edge `v -> w` with `w != u` and label at least
/// the incoming one. Per-vertex label-sorted prefix sums make each round
/// O(m log m); counts are big integers.
pub fn count_nice_walks(g: &Graph, phi: &Labelling, k: u32) -> Result<BigUint> {
    if k < 1 {
        return Err(Error::validation("walk length k must be at least 1"));
    }
    check_labelled(g, phi)?;
    let m = g.m();
    if m == 0 {
        return Ok(BigUint::zero());
    }

    // dense label ranks; only the weak order of labels matters
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&a, &b| phi.label(a).cmp(phi.label(b)));
    let mut rank = vec![0u32; m];
    let mut next_rank = 0u32;
    for (i, &e) in order.iter().enumerate() {
        if i > 0 && phi.label(order[i - 1]) < phi.label(e) {
            next_rank += 1;
        }
        rank[e] = next_rank;
    }

    // directed edge id: 2e for u -> v with (u, v) the stored pair, 2e + 1 for v -> u
    let into = |target: usize, e: usize| -> usize {
        let (_, v) = g.edges()[e];
        if v == target {
            2 * e
        } else {
            2 * e + 1
        }
    };
    let out_of = |source: usize, e: usize| -> usize {
        let (u, _) = g.edges()[e];
        if u == source {
            2 * e
        } else {
            2 * e + 1
        }
    };

    // incident edges per vertex, sorted by label rank, with for each position
    // the number of incident edges of rank <= its own
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); g.n()];
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        incident[u].push(e);
        incident[v].push(e);
    }
    let mut le_count: Vec<Vec<usize>> = Vec::with_capacity(g.n());
    for list in &mut incident {
        list.sort_by_key(|&e| rank[e]);
        let mut counts = vec![0usize; list.len()];
        let mut i = 0;
        while i < list.len() {
            let mut j = i;
            while j + 1 < list.len() && rank[list[j + 1]] == rank[list[i]] {
                j += 1;
            }
            for slot in counts.iter_mut().take(j + 1).skip(i) {
                *slot = j + 1;
            }
            i = j + 1;
        }
        le_count.push(counts);
    }

    let one = BigUint::from(1u32);
    let mut cur: Vec<BigUint> = vec![one; 2 * m];
    for _ in 2..=k {
        let mut next: Vec<BigUint> = vec![BigUint::zero(); 2 * m];
        for v in 0..g.n() {
            let list = &incident[v];
            // prefix[i] = walks ending at v over incident edges of the i smallest ranks
            let mut prefix: Vec<BigUint> = Vec::with_capacity(list.len() + 1);
            prefix.push(BigUint::zero());
            for (i, &e) in list.iter().enumerate() {
                let val = prefix[i].clone() + &cur[into(v, e)];
                prefix.push(val);
            }
            for (i, &e) in list.iter().enumerate() {
                let admissible = &prefix[le_count[v][i]];
                // the reversal of the outgoing edge has equal rank, always admissible; exclude it
                next[out_of(v, e)] = admissible - &cur[into(v, e)];
            }
        }
        cur = next;
    }
    Ok(cur.into_iter().sum())
}

/// All nondecreasing simple paths from one source, grouped by target.
#[derive(Clone, Debug)]
pub struct PathEnumeration {
    /// Target vertex to the list of paths (each path starts at the source).
    pub paths: BTreeMap<usize, Vec<Vec<usize>>>,
    pub truncated: bool,
    pub paths_explored: u64,
}

struct PathDfs<'a> {
    g: &'a Graph,
    phi: &'a Labelling,
    cap: u64,
    explored: u64,
    truncated: bool,
    visited: Vec<bool>,
    path: Vec<usize>,
}

impl<'a> PathDfs<'a> {
    fn new(g: &'a Graph, phi: &'a Labelling, cap: u64) -> Self {
        PathDfs {
            g,
            phi,
            cap,
            explored: 0,
            truncated: false,
            visited: vec![false; g.n()],
            path: Vec::new(),
        }
    }

    /// Walk the nondecreasing-path tree rooted at the current path in
    /// lexicographic order, invoking `sink` on every discovered path.
    /// `sink` returns false to abort the whole search.
    fn run(&mut self, source: usize, sink: &mut impl FnMut(&[usize]) -> bool) {
        self.visited[source] = true;
        self.path.push(source);
        self.extend(source, None, sink);
        self.visited[source] = false;
        self.path.pop();
    }

    fn extend(
        &mut self,
        v: usize,
        last: Option<&BigRational>,
        sink: &mut impl FnMut(&[usize]) -> bool,
    ) -> bool {
        for &w in self.g.neighbors(v) {
            if self.visited[w] {
                continue;
            }
            let label = self.phi.label(self.g.edge_id(v, w).expect("adjacent"));
            if let Some(prev) = last {
                if label < prev {
                    continue;
                }
            }
            if self.explored == self.cap {
                self.truncated = true;
                return false;
            }
            self.explored += 1;
            self.visited[w] = true;
            self.path.push(w);
            let keep_going = sink(&self.path) && self.extend(w, Some(label), sink);
            self.visited[w] = false;
            self.path.pop();
            if !keep_going {
                return false;
            }
        }
        true
    }
}

/// Depth-first enumeration of all nondecreasing simple paths out of `source`,
/// truncated (with a flag) once `cap` paths have been produced.
pub fn enumerate_nondecreasing_paths(
    g: &Graph,
    phi: &Labelling,
    source: usize,
    cap: u64,
) -> Result<PathEnumeration> {
    check_labelled(g, phi)?;
    if source >= g.n() {
        return Err(Error::VertexRange {
            vertex: source,
            n: g.n(),
        });
    }
    if cap < 1 {
        return Err(Error::validation("cap must be at least 1"));
    }
    let mut paths: BTreeMap<usize, Vec<Vec<usize>>> = BTreeMap::new();
    let mut dfs = PathDfs::new(g, phi, cap);
    dfs.run(source, &mut |path| {
        paths
            .entry(*path.last().expect("nonempty"))
            .or_default()
            .push(path.to_vec());
        true
    });
    Ok(PathEnumeration {
        paths,
        truncated: dfs.truncated,
        paths_explored: dfs.explored,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GoodStatus {
    Good,
    Bad,
    Inconclusive,
}

/// Two distinct nondecreasing simple paths sharing ordered endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub endpoints: (usize, usize),
    pub first: Vec<usize>,
    pub second: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct GoodnessVerdict {
    pub status: GoodStatus,
    pub witness: Option<Witness>,
    pub paths_explored: u64,
    pub cap_hit: bool,
}

/// Decide whether a labelling is good by per-source depth-first enumeration,
/// exiting early on the second nondecreasing path to any target.
///
/// Sources are scanned in increasing id order and each source's paths in
/// lexicographic order, so the returned witness is deterministic. `cap`
/// bounds the total number of paths explored across all sources; hitting it
/// yields an explicitly inconclusive verdict.
pub fn is_good(g: &Graph, phi: &Labelling, cap: u64) -> Result<GoodnessVerdict> {
    check_labelled(g, phi)?;
    if cap < 1 {
        return Err(Error::validation("cap must be at least 1"));
    }
    let mut dfs = PathDfs::new(g, phi, cap);
    let mut witness: Option<Witness> = None;
    for source in 0..g.n() {
        let mut first_path: Vec<Option<Vec<usize>>> = vec![None; g.n()];
        dfs.run(source, &mut |path| {
            let target = *path.last().expect("nonempty");
            match &first_path[target] {
                Some(existing) => {
                    witness = Some(Witness {
                        endpoints: (source, target),
                        first: existing.clone(),
                        second: path.to_vec(),
                    });
                    false
                }
                None => {
                    first_path[target] = Some(path.to_vec());
                    true
                }
            }
        });
        if witness.is_some() {
            return Ok(GoodnessVerdict {
                status: GoodStatus::Bad,
                witness,
                paths_explored: dfs.explored,
                cap_hit: dfs.truncated,
            });
        }
        if dfs.truncated {
            return Ok(GoodnessVerdict {
                status: GoodStatus::Inconclusive,
                witness: None,
                paths_explored: dfs.explored,
                cap_hit: true,
            });
        }
    }
    Ok(GoodnessVerdict {
        status: GoodStatus::Good,
        witness: None,
        paths_explored: dfs.explored,
        cap_hit: false,
    })
}

/// A directed nice walk; vertices may repeat, consecutive edges never
/// backtrack, labels never decrease.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NiceWalk {
    pub vertices: Vec<usize>,
}

impl NiceWalk {
    /// Check the defining conditions against a graph and labelling.
    pub fn is_nice(g: &Graph, phi: &Labelling, vertices: &[usize]) -> bool {
        if vertices.len() < 2 {
            return false;
        }
        let mut last: Option<&BigRational> = None;
        for i in 1..vertices.len() {
            let (u, v) = (vertices[i - 1], vertices[i]);
            let Some(e) = g.edge_id(u, v) else {
                return false;
            };
            if i >= 2 && vertices[i - 2] == v {
                return false;
            }
            let label = phi.label(e);
            if let Some(prev) = last {
                if label < prev {
                    return false;
                }
            }
            last = Some(label);
        }
        true
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DuplicateWalks {
    pub endpoints: (usize, usize),
    pub first: NiceWalk,
    pub second: NiceWalk,
}

/// Search for two distinct nice k-walks with equal ordered endpoints by
/// exhaustive enumeration with endpoint bucketing. A returned pair proves
/// the labelling is not good. `budget` bounds the number of enumeration
/// steps (every partial walk extension counts).
pub fn find_duplicate_nice_walks(
    g: &Graph,
    phi: &Labelling,
    k: u32,
    budget: u64,
) -> Result<Option<DuplicateWalks>> {
    if k < 1 {
        return Err(Error::validation("walk length k must be at least 1"));
    }
    check_labelled(g, phi)?;
    let mut buckets: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    let mut steps = 0u64;
    let mut walk: Vec<usize> = Vec::with_capacity(k as usize + 1);

    fn extend(
        g: &Graph,
        phi: &Labelling,
        k: u32,
        budget: u64,
        steps: &mut u64,
        walk: &mut Vec<usize>,
        buckets: &mut HashMap<(usize, usize), Vec<usize>>,
    ) -> Result<Option<DuplicateWalks>> {
        let v = *walk.last().expect("nonempty");
        let last_label = if walk.len() >= 2 {
            Some(phi.label(g.edge_id(walk[walk.len() - 2], v).expect("adjacent")))
        } else {
            None
        };
        for &w in g.neighbors(v) {
            if walk.len() >= 2 && walk[walk.len() - 2] == w {
                continue;
            }
            let label = phi.label(g.edge_id(v, w).expect("adjacent"));
            if let Some(prev) = last_label {
                if label < prev {
                    continue;
                }
            }
            if *steps == budget {
                return Err(Error::BudgetExhausted { budget });
            }
            *steps += 1;
            walk.push(w);
            if walk.len() == k as usize + 1 {
                let key = (walk[0], w);
                if let Some(existing) = buckets.get(&key) {
                    let found = DuplicateWalks {
                        endpoints: key,
                        first: NiceWalk {
                            vertices: existing.clone(),
                        },
                        second: NiceWalk {
                            vertices: walk.clone(),
                        },
                    };
                    walk.pop();
                    return Ok(Some(found));
                }
                buckets.insert(key, walk.clone());
            } else {
                let found = extend(g, phi, k, budget, steps, walk, buckets)?;
                if found.is_some() {
                    walk.pop();
                    return Ok(found);
                }
            }
            walk.pop();
        }
        Ok(None)
    }

    for start in 0..g.n() {
        walk.push(start);
        let found = extend(g, phi, k, budget, &mut steps, &mut walk, &mut buckets)?;
        walk.pop();
        if found.is_some() {
            return Ok(found);
        }
    }
    Ok(None)
}
