//! Unique perfect matching via weak acyclicity.
//!
//! Orient every matched edge out of both endpoints and every other edge into
//! both. A cycle of the resulting bidirected graph then alternates matched
//! and unmatched edges, and since every node has one matched edge it is node
//! simple. Such a cycle exists iff `M` is not the only perfect matching.

use crate::acyclicity::{acyclicity_test, Verdict};
use crate::error::{contract, Error, Result};
use crate::graph::{BidirectedGraph, End, NodeId, Walk, WalkKind};
use crate::reductions::canonical_preprocess;

/// Undirected graph with a proposed perfect matching, given as edge indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatchingInstance {
    pub node_count: usize,
    pub edges: Vec<(NodeId, NodeId)>,
    pub matching: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MatchingVerdict {
    Unique,
    /// Closed walk over edge indices of the instance, alternating between
    /// matched and unmatched edges.
    AlternatingCircuit(Walk),
}

/// Checks that `M` covers every node exactly once and that the instance is
/// well formed (ids in range, no loops, no repeated matching index).
pub fn verify_matching(inst: &MatchingInstance) -> Result<()> {
    let n = inst.node_count;
    for (i, &(u, v)) in inst.edges.iter().enumerate() {
        for x in [u, v] {
            if x >= n {
                return Err(Error::NodeOutOfRange { node: x, count: n });
            }
        }
        if u == v {
            return Err(Error::NotPerfectMatching(format!(
                "edge {i} is a loop at node {u}"
            )));
        }
    }
    let mut cover = vec![None; n];
    let mut used = vec![false; inst.edges.len()];
    for &e in &inst.matching {
        let &(u, v) = inst
            .edges
            .get(e)
            .ok_or_else(|| Error::NotPerfectMatching(format!("edge index {e} out of range")))?;
        if std::mem::replace(&mut used[e], true) {
            return Err(Error::NotPerfectMatching(format!("edge {e} listed twice")));
        }
        for x in [u, v] {
            if let Some(f) = cover[x].replace(e) {
                return Err(Error::NotPerfectMatching(format!(
                    "node {x} covered by edges {f} and {e}"
                )));
            }
        }
    }
    if let Some(x) = cover.iter().position(Option::is_none) {
        return Err(Error::NotPerfectMatching(format!(
            "node {x} is not covered"
        )));
    }
    Ok(())
}

/// The bidirected graph whose cycles are the alternating circuits of `M`.
/// Edge `i` of the result is edge `i` of the instance.
pub fn alternating_graph(inst: &MatchingInstance) -> BidirectedGraph {
    let mut matched = vec![false; inst.edges.len()];
    for &e in &inst.matching {
        matched[e] = true;
    }
    let mut bg = BidirectedGraph::new(inst.node_count);
    for (i, &(u, v)) in inst.edges.iter().enumerate() {
        let d = if matched[i] { End::Out } else { End::In };
        bg.add_edge(u, d, v, d);
    }
    bg
}

/// `Unique` iff `M` is the only perfect matching, else an alternating
/// circuit. Linear time.
pub fn unique_matching(inst: &MatchingInstance) -> Result<MatchingVerdict> {
    verify_matching(inst)?;
    let bg = alternating_graph(inst);
    let (g, trace, map) = canonical_preprocess(&bg)?;
    match acyclicity_test(&g)? {
        Verdict::WeaklyAcyclic(_) => Ok(MatchingVerdict::Unique),
        Verdict::RegularCircuit(c) => {
            let w = trace.pull_back_skew_circuit(&g, &map, &c)?;
            let w = start_with_matched(inst, w);
            if !is_alternating_circuit(inst, &w) {
                return Err(contract("pulled-back circuit does not alternate"));
            }
            Ok(MatchingVerdict::AlternatingCircuit(w))
        }
    }
}

fn start_with_matched(inst: &MatchingInstance, w: Walk) -> Walk {
    let mut matched = vec![false; inst.edges.len()];
    for &e in &inst.matching {
        matched[e] = true;
    }
    match w.arcs.iter().position(|&e| matched[e]) {
        Some(i) if i > 0 => w.rotated(i),
        _ => w,
    }
}

/// A node-simple even cycle alternating matched and unmatched edges.
pub fn is_alternating_circuit(inst: &MatchingInstance, w: &Walk) -> bool {
    let k = w.arcs.len();
    if w.kind != WalkKind::Cycle || k < 2 || k % 2 == 1 || w.nodes.len() != k + 1 {
        return false;
    }
    if w.nodes[0] != w.nodes[k] {
        return false;
    }
    let mut matched = vec![false; inst.edges.len()];
    for &e in &inst.matching {
        matched[e] = true;
    }
    let mut seen = vec![false; inst.node_count];
    for i in 0..k {
        let Some(&(u, v)) = inst.edges.get(w.arcs[i]) else {
            return false;
        };
        let (a, b) = (w.nodes[i], w.nodes[i + 1]);
        if !((u == a && v == b) || (u == b && v == a)) {
            return false;
        }
        if matched[w.arcs[i]] == matched[w.arcs[(i + 1) % k]] {
            return false;
        }
        if std::mem::replace(&mut seen[a], true) {
            return false;
        }
    }
    true
}

/// `M` with the circuit's edges flipped.
pub fn symmetric_difference(inst: &MatchingInstance, w: &Walk) -> Vec<usize> {
    let mut in_m = vec![false; inst.edges.len()];
    for &e in &inst.matching {
        in_m[e] = true;
    }
    for &e in &w.arcs {
        in_m[e] = !in_m[e];
    }
    (0..inst.edges.len()).filter(|&e| in_m[e]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inst(n: usize, edges: &[(NodeId, NodeId)], matching: &[usize]) -> MatchingInstance {
        MatchingInstance {
            node_count: n,
            edges: edges.to_vec(),
            matching: matching.to_vec(),
        }
    }

    #[test]
    fn single_edge_is_unique() {
        let i = inst(2, &[(0, 1)], &[0]);
        assert_eq!(unique_matching(&i).unwrap(), MatchingVerdict::Unique);
    }

    #[test]
    fn square_has_the_square_as_circuit() {
        let i = inst(4, &[(0, 1), (1, 2), (2, 3), (3, 0)], &[0, 2]);
        let MatchingVerdict::AlternatingCircuit(w) = unique_matching(&i).unwrap() else {
            panic!("a 4-cycle has two perfect matchings");
        };
        let mut es = w.arcs.clone();
        es.sort_unstable();
        assert_eq!(es, vec![0, 1, 2, 3]);
        assert_eq!(symmetric_difference(&i, &w), vec![1, 3]);
    }

    #[test]
    fn path_of_four_is_unique() {
        let i = inst(4, &[(0, 1), (1, 2), (2, 3)], &[0, 2]);
        assert_eq!(unique_matching(&i).unwrap(), MatchingVerdict::Unique);
    }

    #[test]
    fn bad_matchings_are_rejected() {
        assert!(verify_matching(&inst(4, &[(0, 1), (1, 2), (2, 3)], &[0, 2])).is_ok());
        let twice = verify_matching(&inst(3, &[(0, 1), (1, 2)], &[0, 1])).unwrap_err();
        assert!(twice.to_string().contains("node 1 covered"), "{twice}");
        let bare = verify_matching(&inst(4, &[(0, 1), (2, 3)], &[0])).unwrap_err();
        assert!(bare.to_string().contains("node 2 is not covered"), "{bare}");
        assert!(verify_matching(&inst(2, &[(0, 0), (0, 1)], &[1])).is_err());
    }
}
