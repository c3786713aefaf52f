//! Certificates of weak acyclicity: strongly acyclic partitions, weak and
//! strong separators, barriers, and the two decomposition trees.

mod strong;
mod verify;
mod weak;

pub use strong::{
    component_partition, decompose_strong, find_strong_separator, ComponentPartition,
    StrongDecomposition, StrongNode, StrongPart,
};
pub use verify::{
    verify_barrier, verify_certificate, verify_component_partition, verify_strong_acyclic,
    verify_strong_decomposition, verify_strong_separator, verify_weak_decomposition,
    verify_weak_separator, Certificate, Violation,
};
pub use weak::{
    barrier_to_separators, decompose, final_barrier, find_weak_separator, Split, WeakDecomposition,
    WeakNode, WeakOutcome,
};

use crate::graph::{mate, ArcId, NodeId, SkewGraph, Walk, WalkKind};

/// `Z` with `G[Z]` acyclic and no arc from `Z` to `Z'`; `Z'` is implied.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrongAcyclicPartition {
    pub z: Vec<NodeId>,
}

/// `(A, B, Z)`: `A`, `B` self-symmetric and nonempty, one mate pair of arcs
/// between them, no arc leaving `Z`, and `G[Z]` acyclic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeakSeparator {
    pub a: Vec<NodeId>,
    pub b: Vec<NodeId>,
    pub z: Vec<NodeId>,
    pub crossing: [ArcId; 2],
}

/// `(A, B)` joined only by `a' -> b` and `b' -> a`, with `G[A]` reachable
/// from `a` and `G[B]` from `b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrongSeparator {
    pub a: Vec<NodeId>,
    pub b: Vec<NodeId>,
    pub crossing: [ArcId; 2],
    pub entry_a: NodeId,
    pub entry_b: NodeId,
}

/// `(S, M; buds)`. The buds are given by their node sets in the base graph
/// and their base arcs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Barrier {
    pub s: Vec<NodeId>,
    pub m: Vec<NodeId>,
    pub buds: Vec<crate::buds::Bud>,
}

/// Either a certificate of the requested kind or a regular circuit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decomposed<T> {
    Tree(T),
    Circuit(Walk),
}

impl<T> Decomposed<T> {
    pub fn tree(self) -> Option<T> {
        match self {
            Decomposed::Tree(t) => Some(t),
            Decomposed::Circuit(_) => None,
        }
    }
}

/// Topological order of the digraph on `0..n` with the given arcs (Kahn,
/// FIFO seeded in increasing id order), or the nodes left on cycles.
pub(crate) fn topo_order(
    n: usize,
    arcs: &[(NodeId, NodeId)],
) -> std::result::Result<Vec<NodeId>, Vec<NodeId>> {
    let mut indeg = vec![0usize; n];
    let mut start = vec![0usize; n + 1];
    for &(u, v) in arcs {
        indeg[v] += 1;
        start[u + 1] += 1;
    }
    for i in 0..n {
        start[i + 1] += start[i];
    }
    let mut fill = start.clone();
    let mut adj = vec![0; arcs.len()];
    for &(u, v) in arcs {
        adj[fill[u]] = v;
        fill[u] += 1;
    }
    let mut queue: std::collections::VecDeque<NodeId> = (0..n).filter(|&x| indeg[x] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(x) = queue.pop_front() {
        order.push(x);
        for &y in &adj[start[x]..start[x + 1]] {
            indeg[y] -= 1;
            if indeg[y] == 0 {
                queue.push_back(y);
            }
        }
    }
    if order.len() == n {
        Ok(order)
    } else {
        Err((0..n).filter(|&x| indeg[x] > 0).collect())
    }
}

/// A directed cycle of `g` through nodes that all have positive in-degree
/// inside `rest` (the leftovers of a failed topological sort).
fn cycle_in(g: &SkewGraph, rest: &[NodeId]) -> Walk {
    let inside = g.membership(rest);
    // Walk backwards along in-arcs until a node repeats.
    let mut seen = vec![usize::MAX; g.node_count()];
    let mut trail: Vec<ArcId> = Vec::new();
    let mut x = rest[0];
    loop {
        if seen[x] != usize::MAX {
            let mut arcs: Vec<ArcId> = trail[seen[x]..].to_vec();
            arcs.reverse();
            return Walk::from_arcs(g, x, arcs, WalkKind::Cycle);
        }
        seen[x] = trail.len();
        let a = g
            .in_arcs(x)
            .find(|&a| inside[g.tail(a)])
            .expect("leftover node has an in-arc from a leftover node");
        trail.push(a);
        x = g.tail(a);
    }
}

/// `π̃(x) = π(x) − π(x')` for a topological numbering `π`, or `None` if `g`
/// has a cycle. Strictly increasing along every arc.
pub fn antisymmetric_labeling(g: &SkewGraph) -> Option<Vec<i64>> {
    let arcs: Vec<_> = g.arcs().map(|(_, u, v)| (u, v)).collect();
    let order = topo_order(g.node_count(), &arcs).ok()?;
    let mut pi = vec![0i64; g.node_count()];
    for (i, &x) in order.iter().enumerate() {
        pi[x] = i as i64 + 1;
    }
    Some((0..g.node_count()).map(|x| pi[x] - pi[mate(x)]).collect())
}

/// Outcome of [`check_strong_acyclic`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StrongAcyclicity {
    Partition(StrongAcyclicPartition),
    Cycle(Walk),
}

/// `Z = {x : π̃(x) > 0}` if `g` has no directed cycle, else some cycle.
pub fn check_strong_acyclic(g: &SkewGraph) -> StrongAcyclicity {
    let arcs: Vec<_> = g.arcs().map(|(_, u, v)| (u, v)).collect();
    match topo_order(g.node_count(), &arcs) {
        Ok(order) => {
            let mut pi = vec![0usize; g.node_count()];
            for (i, &x) in order.iter().enumerate() {
                pi[x] = i;
            }
            let z = (0..g.node_count())
                .filter(|&x| pi[x] > pi[mate(x)])
                .collect();
            StrongAcyclicity::Partition(StrongAcyclicPartition { z })
        }
        Err(rest) => StrongAcyclicity::Cycle(cycle_in(g, &rest)),
    }
}

/// Sorted members of `set` together with their mates.
pub(crate) fn with_mates(set: &[NodeId]) -> Vec<NodeId> {
    let mut out: Vec<NodeId> = set.iter().flat_map(|&x| [x, mate(x)]).collect();
    out.sort_unstable();
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::fixtures::*;

    #[test]
    fn f2_partition_follows_labeling() {
        let g = f2();
        let lab = antisymmetric_labeling(&g).unwrap();
        // π = (a, x, x', a') = (1, 2, 3, 4) with a = 0, a' = 1, x = 2, x' = 3.
        assert_eq!(lab, vec![-3, 3, -1, 1]);
        let StrongAcyclicity::Partition(p) = check_strong_acyclic(&g) else {
            panic!("F2 is strongly acyclic");
        };
        assert_eq!(p.z, vec![1, 3]);
        for (_, u, v) in g.arcs() {
            assert!(lab[u] < lab[v]);
            assert!(!(p.z.contains(&u) && p.z.contains(&mate(v))));
        }
    }

    #[test]
    fn f3_gives_a_cycle() {
        let g = f3();
        let StrongAcyclicity::Cycle(c) = check_strong_acyclic(&g) else {
            panic!("F3 has a cycle");
        };
        assert!(g.is_circuit(&c));
        assert_eq!(c.len(), 2);
    }

    #[test]
    fn empty_graph_has_empty_partition() {
        assert_eq!(
            check_strong_acyclic(&SkewGraph::empty()),
            StrongAcyclicity::Partition(StrongAcyclicPartition { z: vec![] })
        );
    }
}
