//! Constructing labellings: uniform random ranks, the hypercube dimension
//! labelling, a resampling labeller for high-girth bounded-degree graphs,
//! exhaustive goodness decision over rank permutations, and the gamma table
//! (maximum edge count of a good graph on n vertices).

use std::collections::HashSet;

use itertools::Itertools;
use num::bigint::BigInt;
use num::rational::BigRational;
use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::generate;
use crate::graph::{forbidden_screen, girth, Graph};
use crate::labelling::Labelling;
use crate::walks::{is_good, GoodStatus};

/// Largest n `gamma` accepts by default.
pub const DEFAULT_GAMMA_CAP: usize = 5;

/// A uniformly random injective labelling: a random permutation of the ranks
/// 1..=m, which is order-equivalent to i.i.d. uniform real labels.
/// Deterministic per seed.
pub fn random_labelling(g: &Graph, seed: u64) -> Labelling {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut ranks: Vec<u64> = (1..=g.m() as u64).collect();
    ranks.shuffle(&mut rng);
    Labelling::from_ranks(g, ranks).expect("rank count matches edge count")
}

/// The hypercube Q_d labelled by coordinate-flip dimension (1-based). Edges
/// of equal dimension share a label; the unique nondecreasing route between
/// two vertices flips the differing coordinates in increasing dimension
/// order, so the labelling is good.
pub fn hypercube_labelling(dim: u32) -> (Graph, Labelling) {
    let g = generate::hypercube(dim);
    let labels = g
        .edges()
        .iter()
        .map(|&(u, v)| BigRational::from_integer(BigInt::from((u ^ v).trailing_zeros() + 1)))
        .collect();
    let phi = Labelling::new(&g, labels).expect("one label per edge");
    (g, phi)
}

/// Outcome of the resampling labeller.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ResampleStats {
    /// Resampling events performed.
    pub rounds: u64,
    pub terminated: bool,
    /// Simple k-paths monotone in either direction that remain; zero
    /// whenever `terminated` is true.
    pub remaining_violations: u64,
}

/// Resampling labeller: label edges with fresh uniform ranks, then while some
/// simple path of length exactly k is nondecreasing in either traversal
/// direction, resample the labels of the first such path (smallest vertex
/// sequence in lexicographic order) and repeat.
///
/// With girth at least 2k, a terminated run is a good labelling: two
/// nondecreasing paths between an ordered pair would either close a cycle
/// shorter than 2k or contain a monotone k-subpath. The girth precondition
/// can be overridden with `allow_low_girth` for experimentation; termination
/// and goodness are then not guaranteed.
///
/// Labels are uniform draws from a 2^64 rank universe (collisions redrawn,
/// so the labelling stays injective); resampling touches only the violating
/// path's edges. Deterministic per seed.
pub fn mt_label(
    g: &Graph,
    k: u32,
    seed: u64,
    max_rounds: u64,
    allow_low_girth: bool,
) -> Result<(Labelling, ResampleStats)> {
    if k < 1 {
        return Err(Error::validation("k must be at least 1"));
    }
    if max_rounds < 1 {
        return Err(Error::validation("max_rounds must be at least 1"));
    }
    let girth_value = girth(g);
    if !allow_low_girth && !girth_value.at_least(2 * k as usize) {
        return Err(Error::GirthTooSmall {
            girth: girth_value.to_string(),
            required: 2 * k as usize,
        });
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut taken: HashSet<u64> = HashSet::with_capacity(g.m());
    let fresh = |taken: &mut HashSet<u64>, rng: &mut ChaCha8Rng| -> u64 {
        loop {
            let r: u64 = rng.gen();
            if taken.insert(r) {
                return r;
            }
        }
    };
    let mut ranks: Vec<u64> = Vec::with_capacity(g.m());
    for _ in 0..g.m() {
        ranks.push(fresh(&mut taken, &mut rng));
    }
    let mut phi = Labelling::from_ranks(g, ranks.iter().copied())?;

    let mut rounds = 0u64;
    let stats = loop {
        match first_monotone_k_path(g, &phi, k) {
            None => {
                break ResampleStats {
                    rounds,
                    terminated: true,
                    remaining_violations: 0,
                }
            }
            Some(path) => {
                if rounds == max_rounds {
                    break ResampleStats {
                        rounds,
                        terminated: false,
                        remaining_violations: count_monotone_k_paths(g, &phi, k),
                    };
                }
                rounds += 1;
                for pair in path.windows(2) {
                    let e = g.edge_id(pair[0], pair[1]).expect("path edge");
                    let old = phi.label(e).numer().try_into().unwrap_or(0u64);
                    taken.remove(&old);
                    let r = fresh(&mut taken, &mut rng);
                    phi.set(e, BigRational::from_integer(BigInt::from(r)));
                }
            }
        }
    };
    Ok((phi, stats))
}

/// First (lexicographically smallest vertex sequence) simple path of length
/// exactly k whose label sequence is nondecreasing in either direction.
fn first_monotone_k_path(g: &Graph, phi: &Labelling, k: u32) -> Option<Vec<usize>> {
    let mut found: Option<Vec<usize>> = None;
    scan_monotone_k_paths(g, phi, k, &mut |path| {
        found = Some(path.to_vec());
        false
    });
    found
}

fn count_monotone_k_paths(g: &Graph, phi: &Labelling, k: u32) -> u64 {
    let mut count = 0u64;
    scan_monotone_k_paths(g, phi, k, &mut |_| {
        count += 1;
        true
    });
    count
}

/// Enumerate vertex sequences of simple k-paths in lexicographic order,
/// pruning prefixes that are monotone in neither direction, and report the
/// ones monotone in at least one. The callback returns false to stop.
fn scan_monotone_k_paths(
    g: &Graph,
    phi: &Labelling,
    k: u32,
    visit: &mut impl FnMut(&[usize]) -> bool,
) {
    struct Scan<'a, F> {
        g: &'a Graph,
        phi: &'a Labelling,
        k: u32,
        path: Vec<usize>,
        visited: Vec<bool>,
        visit: &'a mut F,
    }

    impl<F: FnMut(&[usize]) -> bool> Scan<'_, F> {
        fn extend(&mut self, nondecreasing: bool, nonincreasing: bool) -> bool {
            if self.path.len() == self.k as usize + 1 {
                return (self.visit)(&self.path);
            }
            let v = *self.path.last().expect("nonempty");
            let last_label = if self.path.len() >= 2 {
                let u = self.path[self.path.len() - 2];
                Some(
                    self.phi
                        .label(self.g.edge_id(u, v).expect("path edge"))
                        .clone(),
                )
            } else {
                None
            };
            for i in 0..self.g.neighbors(v).len() {
                let w = self.g.neighbors(v)[i];
                if self.visited[w] {
                    continue;
                }
                let label = self.phi.label(self.g.edge_id(v, w).expect("adjacent"));
                let (mut inc, mut dec) = (nondecreasing, nonincreasing);
                if let Some(prev) = &last_label {
                    inc &= label >= prev;
                    dec &= label <= prev;
                }
                if !inc && !dec {
                    continue;
                }
                self.visited[w] = true;
                self.path.push(w);
                let keep_going = self.extend(inc, dec);
                self.path.pop();
                self.visited[w] = false;
                if !keep_going {
                    return false;
                }
            }
            true
        }
    }

    let mut scan = Scan {
        g,
        phi,
        k,
        path: Vec::with_capacity(k as usize + 1),
        visited: vec![false; g.n()],
        visit,
    };
    for start in 0..g.n() {
        scan.visited[start] = true;
        scan.path.push(start);
        let keep_going = scan.extend(true, true);
        scan.path.pop();
        scan.visited[start] = false;
        if !keep_going {
            return;
        }
    }
}

/// Verdict of the exhaustive search over injective labellings.
#[derive(Clone, Debug)]
pub enum ExhaustiveStatus {
    Good(Labelling),
    Bad,
    BudgetExceeded,
}

#[derive(Clone, Debug)]
pub struct ExhaustiveOutcome {
    pub status: ExhaustiveStatus,
    pub orderings_tried: u64,
}

/// Decide goodness by trying every permutation of edge ranks 1..=m as a
/// labelling (injective labellings suffice: refining the ties of a good
/// labelling keeps it good). Permutations are scanned in lexicographic
/// order; the witness is the first good one, independent of thread count.
/// `budget` caps the number of orderings tried.
pub fn exhaustive_decide_good(g: &Graph, budget: u64) -> ExhaustiveOutcome {
    let m = g.m();
    if m == 0 {
        return ExhaustiveOutcome {
            status: ExhaustiveStatus::Good(Labelling::new(g, Vec::new()).expect("empty")),
            orderings_tried: 1,
        };
    }
    if m > 20 {
        // 21! overflows the permutation index; enumerate sequentially. The
        // budget (at most u64::MAX < m!) always runs out before completion,
        // so a bad verdict is out of reach here by construction.
        return exhaustive_sequential(g, budget);
    }
    let total = factorial_saturating(m as u64);
    let limit = total.min(budget);
    let found = (0..limit).into_par_iter().find_first(|&index| {
        let phi = labelling_from_perm_index(g, index);
        matches!(
            is_good(g, &phi, u64::MAX).map(|v| v.status),
            Ok(GoodStatus::Good)
        )
    });
    match found {
        Some(index) => ExhaustiveOutcome {
            status: ExhaustiveStatus::Good(labelling_from_perm_index(g, index)),
            orderings_tried: index + 1,
        },
        None if limit == total => ExhaustiveOutcome {
            status: ExhaustiveStatus::Bad,
            orderings_tried: total,
        },
        None => ExhaustiveOutcome {
            status: ExhaustiveStatus::BudgetExceeded,
            orderings_tried: limit,
        },
    }
}

fn exhaustive_sequential(g: &Graph, budget: u64) -> ExhaustiveOutcome {
    let mut ranks: Vec<u64> = (1..=g.m() as u64).collect();
    let mut tried = 0u64;
    loop {
        if tried == budget {
            return ExhaustiveOutcome {
                status: ExhaustiveStatus::BudgetExceeded,
                orderings_tried: tried,
            };
        }
        tried += 1;
        let phi = Labelling::from_ranks(g, ranks.iter().copied()).expect("permutation");
        if matches!(
            is_good(g, &phi, u64::MAX).map(|v| v.status),
            Ok(GoodStatus::Good)
        ) {
            return ExhaustiveOutcome {
                status: ExhaustiveStatus::Good(phi),
                orderings_tried: tried,
            };
        }
        if !next_permutation(&mut ranks) {
            return ExhaustiveOutcome {
                status: ExhaustiveStatus::Bad,
                orderings_tried: tried,
            };
        }
    }
}

fn next_permutation(ranks: &mut [u64]) -> bool {
    let Some(i) = (0..ranks.len().saturating_sub(1))
        .rev()
        .find(|&i| ranks[i] < ranks[i + 1])
    else {
        return false;
    };
    let j = (i + 1..ranks.len())
        .rev()
        .find(|&j| ranks[j] > ranks[i])
        .expect("a larger element exists right of i");
    ranks.swap(i, j);
    ranks[i + 1..].reverse();
    true
}

fn factorial_saturating(m: u64) -> u64 {
    let mut acc = 1u64;
    for i in 2..=m {
        acc = match acc.checked_mul(i) {
            Some(v) => v,
            None => return u64::MAX,
        };
    }
    acc
}

/// Rank permutation number `index` (factorial number system, lexicographic)
/// into a labelling of g.
fn labelling_from_perm_index(g: &Graph, index: u64) -> Labelling {
    let m = g.m();
    let mut remaining: Vec<u64> = (1..=m as u64).collect();
    let mut radix = factorial_saturating(m as u64 - 1);
    let mut rest = index;
    let mut ranks = Vec::with_capacity(m);
    for pos in (0..m).rev() {
        let digit = (rest / radix.max(1)) as usize;
        rest %= radix.max(1);
        ranks.push(remaining.remove(digit));
        if pos > 0 {
            radix /= pos as u64;
        }
    }
    Labelling::from_ranks(g, ranks).expect("permutation covers all edges")
}

/// gamma(n) with its witness: a good graph on n vertices with the maximum
/// number of edges, plus a good labelling of it.
#[derive(Clone, Debug)]
pub struct GammaEntry {
    pub n: usize,
    pub gamma: usize,
    pub witness_graph: Graph,
    pub witness_labelling: Labelling,
}

/// Compute gamma(n) by scanning edge counts downward from floor(n^2/4)
/// (any denser graph contains a triangle) over all labelled graphs,
/// screening out graphs containing K3 or K2,3 and deciding the rest
/// exhaustively. The witness is the first good graph in the canonical
/// edge-subset order, independent of thread count.
pub fn gamma(n: usize, cap: usize) -> Result<GammaEntry> {
    if n < 1 {
        return Err(Error::validation("n must be at least 1"));
    }
    if n > cap {
        return Err(Error::validation(format!(
            "n = {n} exceeds the configured cap {cap}"
        )));
    }
    let pairs: Vec<(usize, usize)> = (0..n).tuple_combinations().collect();
    for m in (0..=(n * n / 4)).rev() {
        let candidates: Vec<Vec<(usize, usize)>> = pairs.iter().copied().combinations(m).collect();
        let found = candidates.par_iter().enumerate().find_first(|(_, edges)| {
            let g = Graph::new(n, edges.iter().copied()).expect("simple by construction");
            let screen = forbidden_screen(&g);
            if screen.contains_k3 || screen.contains_k23 {
                return false;
            }
            matches!(
                exhaustive_decide_good(&g, u64::MAX).status,
                ExhaustiveStatus::Good(_)
            )
        });
        if let Some((index, edges)) = found {
            let g = Graph::new(n, edges.iter().copied())?;
            let ExhaustiveStatus::Good(phi) = exhaustive_decide_good(&g, u64::MAX).status else {
                unreachable!("re-running the decision is deterministic");
            };
            let _ = index;
            return Ok(GammaEntry {
                n,
                gamma: m,
                witness_graph: g,
                witness_labelling: phi,
            });
        }
    }
    // m = 0 always succeeds (the empty graph is good), so this is unreachable
    unreachable!("the edgeless graph on {n} vertices is good");
}
