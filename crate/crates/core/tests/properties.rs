//! Cross-module invariants, each checked against an oracle that is
//! independent of the implementation path it verifies.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{BigUint, Zero};
use proptest::prelude::*;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use goodlabel::bounds::{certify_badness, epsilon, recursion_identity_residual, BoundParams};
use goodlabel::format::{parse_graph, write_graph};
use goodlabel::generate;
use goodlabel::graph::{degree_stats, girth, Graph};
use goodlabel::label::{mt_label, random_labelling};
use goodlabel::labelling::Labelling;
use goodlabel::walks::{
    count_nice_walks, find_duplicate_nice_walks, is_good, GoodStatus, NiceWalk,
};

/// Brute-force enumeration of directed nice k-walks, written directly from
/// the definition; the DP is checked against it.
mod oracle {
    use super::*;

    pub fn nice_walks(g: &Graph, phi: &Labelling, k: u32) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut walk = Vec::with_capacity(k as usize + 1);
        for start in 0..g.n() {
            walk.push(start);
            extend(g, phi, k, &mut walk, &mut out);
            walk.pop();
        }
        out
    }

    fn extend(
        g: &Graph,
        phi: &Labelling,
        k: u32,
        walk: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if walk.len() == k as usize + 1 {
            out.push(walk.clone());
            return;
        }
        let v = *walk.last().unwrap();
        for &w in g.neighbors(v) {
            if walk.len() >= 2 {
                if walk[walk.len() - 2] == w {
                    continue;
                }
                let prev = phi.label_of(g, walk[walk.len() - 2], v).unwrap();
                let next = phi.label_of(g, v, w).unwrap();
                if next < prev {
                    continue;
                }
            }
            walk.push(w);
            extend(g, phi, k, walk, out);
            walk.pop();
        }
    }
}

fn random_graph(n: usize, edge_prob_percent: u32, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.gen_range(0..100) < edge_prob_percent {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, edges).unwrap()
}

/// Random labelling with deliberate ties: labels drawn from a small set.
fn tied_labelling(g: &Graph, distinct: u64, seed: u64) -> Labelling {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Labelling::from_ranks(g, (0..g.m()).map(|_| rng.gen_range(1..=distinct))).unwrap()
}

#[test]
fn dp_matches_brute_force_on_small_graphs() {
    let mut checked = 0u32;
    for (gi, g) in [
        generate::path(5),
        generate::cycle(6).unwrap(),
        generate::complete(4),
        generate::complete_bipartite(2, 3).unwrap(),
        random_graph(7, 40, 71),
        random_graph(8, 35, 72),
    ]
    .iter()
    .enumerate()
    {
        for li in 0..8u64 {
            let phi = if li % 4 == 3 {
                tied_labelling(g, 3, 5000 + li)
            } else {
                random_labelling(g, gi as u64 * 100 + li)
            };
            for k in 1..=5 {
                let dp = count_nice_walks(g, &phi, k).unwrap();
                let brute = oracle::nice_walks(g, &phi, k);
                assert_eq!(
                    dp,
                    BigUint::from(brute.len()),
                    "graph {gi}, labelling {li}, k {k}"
                );
                for walk in &brute {
                    assert!(NiceWalk::is_nice(g, &phi, walk));
                }
                checked += 1;
            }
        }
    }
    assert!(checked > 0);
}

#[test]
fn count_at_k2_matches_incident_pair_formula() {
    for seed in 0..6u64 {
        let g = random_graph(8, 45, 200 + seed);
        let phi = if seed % 2 == 0 {
            random_labelling(&g, seed)
        } else {
            tied_labelling(&g, 2, seed)
        };
        // sum over middle vertices of ordered pairs of distinct incident
        // edges (e, e') with label(e) <= label(e')
        let mut expected = 0u64;
        for v in 0..g.n() {
            let incident: Vec<_> = g
                .neighbors(v)
                .iter()
                .map(|&w| phi.label_of(&g, v, w).unwrap())
                .collect();
            for (i, a) in incident.iter().enumerate() {
                for (j, b) in incident.iter().enumerate() {
                    if i != j && a <= b {
                        expected += 1;
                    }
                }
            }
        }
        assert_eq!(
            count_nice_walks(&g, &phi, 2).unwrap(),
            BigUint::from(expected)
        );
    }
}

#[test]
fn duplicate_walks_imply_bad_labelling() {
    let mut hits = 0u32;
    for seed in 0..30u64 {
        let g = random_graph(7, 50, 300 + seed);
        let phi = tied_labelling(&g, 3, seed);
        for k in 2..=4 {
            if let Some(dup) = find_duplicate_nice_walks(&g, &phi, k, 1_000_000).unwrap() {
                assert!(NiceWalk::is_nice(&g, &phi, &dup.first.vertices));
                assert!(NiceWalk::is_nice(&g, &phi, &dup.second.vertices));
                let verdict = is_good(&g, &phi, u64::MAX).unwrap();
                assert_eq!(verdict.status, GoodStatus::Bad, "seed {seed}, k {k}");
                hits += 1;
            }
        }
    }
    assert!(
        hits >= 10,
        "the corpus must actually exercise duplicates, got {hits}"
    );
}

#[test]
fn reversal_of_a_nice_walk_is_nice_iff_labels_constant() {
    for seed in 0..10u64 {
        let g = random_graph(7, 45, 400 + seed);
        let phi = tied_labelling(&g, 2, seed);
        for k in 2..=4 {
            for walk in oracle::nice_walks(&g, &phi, k) {
                let labels: Vec<_> = walk
                    .windows(2)
                    .map(|p| phi.label_of(&g, p[0], p[1]).unwrap())
                    .collect();
                let constant = labels.windows(2).all(|w| w[0] == w[1]);
                let mut reversed = walk.clone();
                reversed.reverse();
                assert_eq!(
                    NiceWalk::is_nice(&g, &phi, &reversed),
                    constant,
                    "walk {walk:?}"
                );
            }
        }
    }
}

/// Refining the ties of a good weak-order labelling into any strict order
/// only removes nondecreasing paths, so goodness is preserved.
#[test]
fn strict_refinements_of_good_labellings_stay_good() {
    let mut found_good = 0u32;
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let templates = [
        generate::cycle(5).unwrap(),
        generate::cycle(7).unwrap(),
        generate::hypercube(2),
        generate::hypercube(3),
        generate::path(6),
        random_graph(6, 35, 500),
        random_graph(7, 30, 501),
    ];
    'outer: for round in 0..400u64 {
        let g = &templates[(round as usize) % templates.len()];
        if g.m() == 0 {
            continue;
        }
        let phi = tied_labelling(g, 3, 600 + round);
        if is_good(g, &phi, 1_000_000).unwrap().status != GoodStatus::Good {
            continue;
        }
        found_good += 1;
        // strict refinement: stable sort by (label, random tiebreak)
        let mut order: Vec<usize> = (0..g.m()).collect();
        let tiebreak: Vec<u64> = (0..g.m()).map(|_| rng.gen()).collect();
        order.sort_by(|&a, &b| {
            phi.label(a)
                .cmp(phi.label(b))
                .then(tiebreak[a].cmp(&tiebreak[b]))
        });
        let mut ranks = vec![0u64; g.m()];
        for (rank, &e) in order.iter().enumerate() {
            ranks[e] = rank as u64 + 1;
        }
        let refined = Labelling::from_ranks(g, ranks).unwrap();
        assert_eq!(
            is_good(g, &refined, 1_000_000).unwrap().status,
            GoodStatus::Good,
            "refinement broke goodness at round {round}"
        );
        if found_good >= 100 {
            break 'outer;
        }
    }
    assert!(
        found_good >= 100,
        "only {found_good} good weak labellings found"
    );
}

/// Independent audit of the resampling labeller: enumerate all simple k-paths
/// from scratch and confirm none is monotone in either direction.
#[test]
fn mt_label_postcondition_audit() {
    fn monotone_k_paths(g: &Graph, phi: &Labelling, k: u32) -> u64 {
        let mut count = 0;
        let mut path = Vec::new();
        let mut visited = vec![false; g.n()];
        fn go(
            g: &Graph,
            phi: &Labelling,
            k: u32,
            path: &mut Vec<usize>,
            visited: &mut Vec<bool>,
            count: &mut u64,
        ) {
            if path.len() == k as usize + 1 {
                let labels: Vec<_> = path
                    .windows(2)
                    .map(|p| phi.label_of(g, p[0], p[1]).unwrap())
                    .collect();
                let nondec = labels.windows(2).all(|w| w[0] <= w[1]);
                let noninc = labels.windows(2).all(|w| w[0] >= w[1]);
                if nondec || noninc {
                    *count += 1;
                }
                return;
            }
            let v = *path.last().unwrap();
            for &w in g.neighbors(v) {
                if visited[w] {
                    continue;
                }
                visited[w] = true;
                path.push(w);
                go(g, phi, k, path, visited, count);
                path.pop();
                visited[w] = false;
            }
        }
        for start in 0..g.n() {
            visited[start] = true;
            path.push(start);
            go(g, phi, k, &mut path, &mut visited, &mut count);
            path.pop();
            visited[start] = false;
        }
        count
    }

    // k = 2 is excluded everywhere: two adjacent labels are always
    // comparable, so every 2-path is monotone in one direction and the
    // resampler cannot terminate (matching the k! threshold, which no
    // delta >= 2 satisfies at k = 2)
    let cases = [
        (generate::cycle(12).unwrap(), 4u32),
        (generate::cycle(16).unwrap(), 5u32),
        (generate::cycle(20).unwrap(), 6u32),
        (generate::path(12), 3u32),
    ];
    for (g, k) in &cases {
        assert!(
            girth(g).at_least(2 * *k as usize),
            "cases must satisfy the contract"
        );
        for seed in [1u64, 2, 3] {
            let (phi, stats) = mt_label(g, *k, seed, 100_000, false).unwrap();
            assert!(stats.terminated, "k = {k}, seed = {seed}");
            assert_eq!(monotone_k_paths(g, &phi, *k), 0);
            assert_eq!(
                is_good(g, &phi, 10_000_000).unwrap().status,
                GoodStatus::Good
            );
        }
    }
}

/// Whenever a certificate applies, every inequality in its proof-chain trace
/// must hold exactly (the integrality of the scaled parameters, the dyadic
/// bound on r, and the g value beating n^2).
#[test]
fn applying_certificates_have_fully_valid_traces() {
    for (t, c) in [(1u32, 1u32), (1, 3), (2, 1), (2, 2)] {
        let eps = epsilon(t, c).unwrap();
        for dbar_int in [70u64, 129, 300, 4099, 65_536, 999_983] {
            let dbar = BigRational::from_integer(BigInt::from(dbar_int));
            // largest n the size condition admits, when there is one
            let bound = &eps.epsilon * dbar.pow(t as i32);
            let mut n = bound.floor().to_integer();
            if BigRational::from_integer(n.clone()) == bound {
                n -= 1;
            }
            let Ok(n) = u64::try_from(&n) else { continue };
            if n < 1 {
                continue;
            }
            let delta = dbar_int; // regular-graph parameters
            let cert = certify_badness(n, &dbar, delta, t, c).unwrap();
            assert!(cert.applies, "t={t} c={c} dbar={dbar_int} n={n}");
            let trace = cert.trace.expect("populated");
            assert!(trace.r_exceeds_pow);
            assert!(trace.integrality.iter().all(|(_, ok)| *ok));
            assert!(trace.g_exceeds_n_squared);
            // and one step of monotonicity in n
            assert!(
                certify_badness(n / 2 + 1, &dbar, delta, t, c)
                    .unwrap()
                    .applies
            );
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn graph_documents_round_trip(n in 1usize..12, percent in 0u32..100, seed in 0u64..1000) {
        let g = random_graph(n, percent, seed);
        let parsed = parse_graph(&write_graph(&g)).unwrap();
        prop_assert_eq!(parsed, g);
    }

    #[test]
    fn average_degree_identity(n in 1usize..12, percent in 0u32..100, seed in 0u64..1000) {
        let g = random_graph(n, percent, seed);
        let stats = degree_stats(&g).unwrap();
        let n_rat = BigRational::from_integer(BigInt::from(g.n()));
        let m_rat = BigRational::from_integer(BigInt::from(2 * g.m()));
        prop_assert_eq!(n_rat * stats.avg_degree.clone(), m_rat);
        prop_assert!(
            BigRational::from_integer(BigInt::from(stats.max_degree)) >= stats.avg_degree
        );
    }

    #[test]
    fn one_walk_count_is_always_2m(n in 2usize..10, percent in 10u32..90, seed in 0u64..1000) {
        let g = random_graph(n, percent, seed);
        let phi = random_labelling(&g, seed);
        prop_assert_eq!(
            count_nice_walks(&g, &phi, 1).unwrap(),
            BigUint::from(2 * g.m())
        );
    }

    #[test]
    fn residual_vanishes_on_arbitrary_rationals(
        n_num in -50i64..50, m_num in -50i64..50, d_num in -20i64..20,
        n_den in 1u32..9, m_den in 1u32..9, d_den in 1u32..9,
        k in 2u32..7, q_prime in 2u32..7,
    ) {
        let params = BoundParams::new(k, 1, q_prime).unwrap();
        let n = BigRational::new(BigInt::from(n_num), BigInt::from(n_den));
        let m = BigRational::new(BigInt::from(m_num), BigInt::from(m_den));
        let delta = BigRational::new(BigInt::from(d_num), BigInt::from(d_den));
        let residual = recursion_identity_residual(&n, &m, &delta, k, &params).unwrap();
        prop_assert!(residual.is_zero());
    }
}
