//! Matching verdicts against perfect-matching enumeration.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use skewcycle::applications::{is_alternating_circuit, symmetric_difference};
use skewcycle::oracle::count_perfect_matchings;
use skewcycle::{unique_matching, verify_matching, MatchingInstance, MatchingVerdict};

fn check(inst: &MatchingInstance) -> bool {
    let count = count_perfect_matchings(inst.node_count, &inst.edges, 2);
    match unique_matching(inst).unwrap() {
        MatchingVerdict::Unique => {
            assert_eq!(count, 1, "{inst:?}");
            true
        }
        MatchingVerdict::AlternatingCircuit(w) => {
            assert_eq!(count, 2, "{inst:?}");
            assert!(is_alternating_circuit(inst, &w), "{inst:?} {w:?}");
            let other = MatchingInstance {
                matching: symmetric_difference(inst, &w),
                ..inst.clone()
            };
            verify_matching(&other).unwrap();
            let mut m = inst.matching.clone();
            m.sort_unstable();
            assert_ne!(other.matching, m);
            false
        }
    }
}

/// Every graph on six labeled nodes that contains the matching
/// {01, 23, 45}, with that matching.
#[test]
fn all_six_node_graphs_with_a_fixed_matching() {
    let n = 6;
    let matched = [(0, 1), (2, 3), (4, 5)];
    let others: Vec<_> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|e| !matched.contains(e))
        .collect();
    let mut unique = 0;
    for mask in 0u32..1 << others.len() {
        let mut edges = matched.to_vec();
        edges.extend(
            (0..others.len())
                .filter(|&i| mask >> i & 1 == 1)
                .map(|i| others[i]),
        );
        let inst = MatchingInstance {
            node_count: n,
            edges,
            matching: vec![0, 1, 2],
        };
        unique += check(&inst) as usize;
    }
    assert!(unique > 0 && unique < 1 << others.len());
}

#[test]
fn random_ten_node_graphs() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let (mut unique, mut total) = (0, 0);
    for _ in 0..2000 {
        let n = 10;
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut rng);
        let mut edges: Vec<(usize, usize)> = perm.chunks(2).map(|c| (c[0], c[1])).collect();
        let extra = rng.gen_range(0..12);
        for _ in 0..extra {
            let (u, v) = (rng.gen_range(0..n), rng.gen_range(0..n));
            if u != v {
                edges.push((u, v));
            }
        }
        let k = n / 2;
        // Shuffle edge order, keeping track of the matching.
        let mut idx: Vec<usize> = (0..edges.len()).collect();
        idx.shuffle(&mut rng);
        let shuffled: Vec<_> = idx.iter().map(|&i| edges[i]).collect();
        let matching = (0..shuffled.len()).filter(|&j| idx[j] < k).collect();
        let inst = MatchingInstance {
            node_count: n,
            edges: shuffled,
            matching,
        };
        unique += check(&inst) as usize;
        total += 1;
    }
    assert!(unique > 100 && unique < total - 100, "{unique} of {total}");
}

#[test]
fn parallel_edge_gives_two_cycle() {
    let inst = MatchingInstance {
        node_count: 2,
        edges: vec![(0, 1), (1, 0)],
        matching: vec![1],
    };
    let MatchingVerdict::AlternatingCircuit(w) = unique_matching(&inst).unwrap() else {
        panic!("two parallel edges are two matchings");
    };
    assert_eq!(w.arcs.len(), 2);
}
