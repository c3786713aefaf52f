//! Ground truth for tests: fixtures, exhaustive searches, an explicit
//! (non-lazy) trimming rebuild, and instance generators.

mod generate;

pub use generate::{generate, GenKind, GenSpec, Instance};

use crate::buds::Bud;
use crate::error::{contract, Error, Result};
use crate::graph::{mate, ArcId, BidirectedGraph, End, NodeId, SkewGraph, Walk, WalkKind};

/// Default arc cap for the exhaustive searches.
pub const DEFAULT_CAP: usize = 24;

/// Small named graphs used throughout the tests.
pub mod fixtures {
    use crate::graph::SkewGraph;

    /// Node names for [`f1`]: a pair for each of `a`, `x`, `b`, `y`.
    pub mod f1_nodes {
        pub const A: usize = 0;
        pub const A_: usize = 1;
        pub const X: usize = 2;
        pub const X_: usize = 3;
        pub const B: usize = 4;
        pub const B_: usize = 5;
        pub const Y: usize = 6;
        pub const Y_: usize = 7;
    }

    /// Two strongly acyclic blocks `a -> x, x' -> a'` (and `b`, `y`) glued by
    /// the single mate pair `a' -> b`, `b' -> a`. Weakly acyclic and strongly
    /// connected.
    pub fn f1() -> SkewGraph {
        use f1_nodes::*;
        SkewGraph::from_arc_pairs(4, &[(A, X), (X, A_), (B, Y), (Y, B_), (A_, B)]).expect("fixture")
    }

    /// The left block of [`f1`] alone: strongly acyclic.
    pub fn f2() -> SkewGraph {
        use f1_nodes::*;
        SkewGraph::from_arc_pairs(2, &[(A, X), (X, A_)]).expect("fixture")
    }

    /// `u -> w -> u` with mates; nodes `u = 0`, `w = 2`.
    pub fn f3() -> SkewGraph {
        SkewGraph::from_arc_pairs(2, &[(0, 2), (2, 0)]).expect("fixture")
    }

    /// `s -> v -> w -> v'` with mates; nodes `s = 0`, `v = 2`, `w = 4`.
    /// `({v, w, w', v'}, s -> v)` is a bud.
    pub fn f4() -> SkewGraph {
        SkewGraph::from_arc_pairs(3, &[(0, 2), (2, 4), (4, 3)]).expect("fixture")
    }
}

fn check_cap(g: &SkewGraph, cap: usize) -> Result<()> {
    if g.arc_count() > cap {
        return Err(Error::OracleCap {
            arcs: g.arc_count(),
            cap,
        });
    }
    Ok(())
}

/// Exhaustive search over arc-simple walks that never use an arc together
/// with its mate.
struct RegularSearch<'a> {
    g: &'a SkewGraph,
    used: Vec<bool>,
    arcs: Vec<ArcId>,
}

impl<'a> RegularSearch<'a> {
    fn new(g: &'a SkewGraph) -> Self {
        RegularSearch {
            g,
            used: vec![false; g.arc_pair_count()],
            arcs: Vec::new(),
        }
    }

    /// Depth-first extension from `at` until some arc reaches `target`.
    fn extend(&mut self, at: NodeId, target: NodeId) -> bool {
        for &a in self.g.out_arcs(at) {
            let p = a >> 1;
            if self.used[p] {
                continue;
            }
            self.used[p] = true;
            self.arcs.push(a);
            let h = self.g.head(a);
            if h == target || self.extend(h, target) {
                return true;
            }
            self.arcs.pop();
            self.used[p] = false;
        }
        false
    }
}

/// Some regular circuit of `g`, if one exists. Refuses graphs above the cap.
pub fn brute_regular_circuit(g: &SkewGraph) -> Result<Option<Walk>> {
    brute_regular_circuit_capped(g, DEFAULT_CAP)
}

pub fn brute_regular_circuit_capped(g: &SkewGraph, cap: usize) -> Result<Option<Walk>> {
    check_cap(g, cap)?;
    for s in 0..g.node_count() {
        let mut search = RegularSearch::new(g);
        if search.extend(s, s) {
            return Ok(Some(Walk::from_arcs(g, s, search.arcs, WalkKind::Cycle)));
        }
    }
    Ok(None)
}

/// Some regular `s`–`t` path of `g`, if one exists (`s = t` gives the empty
/// path).
pub fn brute_regular_path(g: &SkewGraph, s: NodeId, t: NodeId) -> Result<Option<Walk>> {
    check_cap(g, DEFAULT_CAP)?;
    if s == t {
        return Ok(Some(Walk::single(s)));
    }
    let mut search = RegularSearch::new(g);
    Ok(search
        .extend(s, t)
        .then(|| Walk::from_arcs(g, s, search.arcs, WalkKind::Open)))
}

/// Some edge-simple cycle of a bidirected graph (a closed walk with a
/// transit pair at every node, including where it closes).
pub fn brute_bidirected_cycle(bg: &BidirectedGraph) -> Result<Option<Walk>> {
    if 2 * bg.edges.len() > DEFAULT_CAP {
        return Err(Error::OracleCap {
            arcs: 2 * bg.edges.len(),
            cap: DEFAULT_CAP,
        });
    }
    let m = bg.edges.len();
    // incidences[v] = (edge, end type at v, other endpoint, end type there)
    let mut inc: Vec<Vec<(usize, End, NodeId, End)>> = vec![Vec::new(); bg.node_count];
    for (i, e) in bg.edges.iter().enumerate() {
        inc[e.u].push((i, e.du, e.v, e.dv));
        if e.u != e.v || e.du != e.dv {
            inc[e.v].push((i, e.dv, e.u, e.du));
        }
    }
    struct S<'a> {
        inc: &'a [Vec<(usize, End, NodeId, End)>],
        used: Vec<bool>,
        nodes: Vec<NodeId>,
        edges: Vec<usize>,
    }
    impl S<'_> {
        fn go(&mut self, at: NodeId, need: End, start: NodeId, close: End) -> bool {
            for &(e, d, w, dw) in &self.inc[at] {
                if self.used[e] || d != need {
                    continue;
                }
                self.used[e] = true;
                self.nodes.push(w);
                self.edges.push(e);
                if (w == start && dw == close) || self.go(w, dw.flip(), start, close) {
                    return true;
                }
                self.nodes.pop();
                self.edges.pop();
                self.used[e] = false;
            }
            false
        }
    }
    for s in 0..bg.node_count {
        for first in [End::Out, End::In] {
            let mut st = S {
                inc: &inc,
                used: vec![false; m],
                nodes: vec![s],
                edges: Vec::new(),
            };
            if st.go(s, first, s, first.flip()) {
                return Ok(Some(Walk {
                    nodes: st.nodes,
                    arcs: st.edges,
                    kind: WalkKind::Cycle,
                }));
            }
        }
    }
    Ok(None)
}

/// Number of perfect matchings of an undirected graph, counting stops at
/// `limit`. Always matches the lowest uncovered node first, so each
/// matching is found once.
pub fn count_perfect_matchings(n: usize, edges: &[(NodeId, NodeId)], limit: usize) -> usize {
    let mut adj: Vec<Vec<NodeId>> = vec![Vec::new(); n];
    for &(u, v) in edges {
        if u != v {
            adj[u].push(v);
            adj[v].push(u);
        }
    }
    fn go(adj: &[Vec<NodeId>], covered: &mut [bool], limit: usize) -> usize {
        let Some(x) = covered.iter().position(|&c| !c) else {
            return 1;
        };
        covered[x] = true;
        let mut total = 0;
        for &y in &adj[x] {
            if !covered[y] {
                covered[y] = true;
                total += go(adj, covered, limit - total);
                covered[y] = false;
                if total >= limit {
                    break;
                }
            }
        }
        covered[x] = false;
        total
    }
    if limit == 0 {
        return 0;
    }
    go(&adj, &mut vec![false; n], limit)
}

/// Definitional bud check: self-symmetric members, base arc entering, every
/// member regularly reachable from the base node inside the members.
pub fn is_bud(g: &SkewGraph, bud: &Bud) -> Result<bool> {
    let inside = g.membership(&bud.members);
    if bud.members.iter().any(|&x| !inside[mate(x)]) {
        return Ok(false);
    }
    let a = bud.base_arc;
    if !inside[g.head(a)] || inside[g.tail(a)] {
        return Ok(false);
    }
    let sub = g.induced(&bud.members)?;
    let local = |x: NodeId| sub.nodes.iter().position(|&y| y == x).expect("member");
    let base = local(g.head(a));
    for i in 0..sub.graph.node_count() {
        if brute_regular_path(&sub.graph, base, i)?.is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Result of [`explicit_trim`]: the rebuilt graph and the old-to-new maps.
#[derive(Clone, Debug)]
pub struct Trimmed {
    pub graph: SkewGraph,
    pub node_map: Vec<Option<NodeId>>,
    pub arc_map: Vec<Option<ArcId>>,
}

/// Literal rebuild of `G / bud`: interior nodes and arcs inside the bud
/// vanish, arcs entering go to the antibase node (the base arc to the base
/// node), arcs leaving start at the base node (the antibase arc at the
/// antibase node).
pub fn explicit_trim(g: &SkewGraph, bud: &Bud) -> Result<Trimmed> {
    if !is_bud(g, bud)? {
        return Err(contract("explicit_trim: not a bud"));
    }
    let inside = g.membership(&bud.members);
    let v = g.head(bud.base_arc);
    let mut node_map = vec![None; g.node_count()];
    let mut pairs = 0;
    for k in 0..g.pair_count() {
        let x = 2 * k;
        if !inside[x] || x == v || x == mate(v) {
            node_map[x] = Some(2 * pairs);
            node_map[x + 1] = Some(2 * pairs + 1);
            pairs += 1;
        }
    }
    let image_tail = |a: ArcId| -> NodeId {
        let t = g.tail(a);
        if !inside[t] {
            t
        } else if a == mate(bud.base_arc) {
            mate(v)
        } else {
            v
        }
    };
    let image_head = |a: ArcId| -> NodeId {
        let h = g.head(a);
        if !inside[h] {
            h
        } else if a == bud.base_arc {
            v
        } else {
            mate(v)
        }
    };
    let mut declared = Vec::new();
    let mut arc_map = vec![None; g.arc_count()];
    for j in 0..g.arc_pair_count() {
        let a = 2 * j;
        if inside[g.tail(a)] && inside[g.head(a)] {
            continue;
        }
        let (t, h) = (image_tail(a), image_head(a));
        let id = declared.len();
        declared.push((node_map[t].expect("kept"), node_map[h].expect("kept")));
        arc_map[a] = Some(2 * id);
        arc_map[a + 1] = Some(2 * id + 1);
    }
    Ok(Trimmed {
        graph: SkewGraph::from_arc_pairs(pairs, &declared)?,
        node_map,
        arc_map,
    })
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    #[test]
    fn f3_has_circuit_f1_has_none() {
        let c = brute_regular_circuit(&f3()).unwrap().unwrap();
        assert!(f3().is_regular_circuit(&c));
        assert!(brute_regular_circuit(&f1()).unwrap().is_none());
        assert!(brute_regular_circuit(&f2()).unwrap().is_none());
    }

    #[test]
    fn single_mate_pair_has_no_circuit() {
        let g = SkewGraph::from_arc_pairs(2, &[(0, 2)]).unwrap();
        assert!(brute_regular_circuit(&g).unwrap().is_none());
    }

    #[test]
    fn regular_paths_in_f1() {
        use f1_nodes::*;
        let g = f1();
        let p = brute_regular_path(&g, A, A_).unwrap().unwrap();
        assert_eq!(p.nodes.first(), Some(&A));
        assert_eq!(p.nodes.last(), Some(&A_));
        assert_eq!(brute_regular_path(&g, A, A).unwrap().unwrap().len(), 0);
    }

    #[test]
    fn cap_is_enforced() {
        let declared: Vec<_> = (0..13).map(|i| (0, 2 + 2 * (i % 3))).collect();
        let g = SkewGraph::from_arc_pairs(4, &declared).unwrap();
        assert!(matches!(
            brute_regular_circuit(&g),
            Err(Error::OracleCap { .. })
        ));
    }

    #[test]
    fn f4_explicit_trim() {
        let g = f4();
        let bud = Bud {
            members: vec![2, 3, 4, 5],
            base_arc: 0,
        };
        assert!(is_bud(&g, &bud).unwrap());
        let t = explicit_trim(&g, &bud).unwrap();
        assert_eq!(t.graph.node_count(), 4);
        let arcs: Vec<_> = t.graph.arcs().map(|(_, u, v)| (u, v)).collect();
        // s -> v and v' -> s' in the relabelled graph
        assert_eq!(arcs, vec![(0, 2), (3, 1)]);
    }

    #[test]
    fn non_bud_is_rejected() {
        let g = f4();
        let bud = Bud {
            members: vec![4, 5],
            base_arc: 0,
        };
        assert!(explicit_trim(&g, &bud).is_err());
    }

    #[test]
    fn bidirected_cycle_search() {
        let mut bg = BidirectedGraph::new(2);
        bg.add_edge(0, End::Out, 1, End::In);
        assert!(brute_bidirected_cycle(&bg).unwrap().is_none());
        bg.add_edge(1, End::Out, 0, End::In);
        let c = brute_bidirected_cycle(&bg).unwrap().unwrap();
        assert!(bg.is_walk(&c) && BidirectedGraph::is_edge_simple(&c));
        // An out-out edge and an in-in edge close up; two out-out edges do not.
        let mut bg = BidirectedGraph::new(2);
        bg.add_edge(0, End::Out, 1, End::Out);
        bg.add_edge(0, End::In, 1, End::In);
        assert!(brute_bidirected_cycle(&bg).unwrap().is_some());
        let mut bg = BidirectedGraph::new(2);
        bg.add_edge(0, End::Out, 1, End::Out);
        bg.add_edge(0, End::Out, 1, End::Out);
        assert!(brute_bidirected_cycle(&bg).unwrap().is_none());
    }
}
