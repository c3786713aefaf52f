//! Skew-symmetric and bidirected graphs, walks, and the conversions between
//! the two graph languages.
//!
//! Node and arc ids of a [`SkewGraph`] come in mate pairs `{2k, 2k+1}`, so the
//! mate of any element is `id ^ 1`. Arc `2j` is the arc declared by the `j`-th
//! arc pair and `2j+1` is its mate.

use crate::error::{contract, Error, Result};

pub type NodeId = usize;
pub type ArcId = usize;

/// Mate of a node or arc id.
#[inline]
pub fn mate(x: usize) -> usize {
    x ^ 1
}

/// A skew-symmetric digraph stored as outgoing adjacency only.
///
/// Incoming arcs of `v` are the mates of the outgoing arcs of `mate(v)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkewGraph {
    pairs: usize,
    tails: Vec<NodeId>,
    heads: Vec<NodeId>,
    out_start: Vec<usize>,
    out_list: Vec<ArcId>,
}

impl SkewGraph {
    /// Builds a graph with `pairs` node pairs. Each entry `(u, v)` declares the
    /// arc `u -> v` and, implicitly, its mate `v' -> u'`.
    pub fn from_arc_pairs(pairs: usize, declared: &[(NodeId, NodeId)]) -> Result<Self> {
        let n = 2 * pairs;
        let mut tails = Vec::with_capacity(2 * declared.len());
        let mut heads = Vec::with_capacity(2 * declared.len());
        for &(u, v) in declared {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::NodeOutOfRange { node: x, count: n });
                }
            }
            tails.push(u);
            heads.push(v);
            tails.push(mate(v));
            heads.push(mate(u));
        }
        let mut out_start = vec![0usize; n + 1];
        for &t in &tails {
            out_start[t + 1] += 1;
        }
        for i in 0..n {
            out_start[i + 1] += out_start[i];
        }
        let mut fill = out_start.clone();
        let mut out_list = vec![0; tails.len()];
        for (a, &t) in tails.iter().enumerate() {
            out_list[fill[t]] = a;
            fill[t] += 1;
        }
        Ok(SkewGraph {
            pairs,
            tails,
            heads,
            out_start,
            out_list,
        })
    }

    pub fn empty() -> Self {
        SkewGraph::from_arc_pairs(0, &[]).unwrap()
    }

    pub fn pair_count(&self) -> usize {
        self.pairs
    }

    pub fn node_count(&self) -> usize {
        2 * self.pairs
    }

    pub fn arc_count(&self) -> usize {
        self.tails.len()
    }

    pub fn arc_pair_count(&self) -> usize {
        self.tails.len() / 2
    }

    #[inline]
    pub fn tail(&self, a: ArcId) -> NodeId {
        self.tails[a]
    }

    #[inline]
    pub fn head(&self, a: ArcId) -> NodeId {
        self.heads[a]
    }

    #[inline]
    pub fn out_arcs(&self, v: NodeId) -> &[ArcId] {
        &self.out_list[self.out_start[v]..self.out_start[v + 1]]
    }

    /// Position range of `v`'s outgoing arcs inside [`SkewGraph::out_list`].
    #[inline]
    pub(crate) fn out_range(&self, v: NodeId) -> (usize, usize) {
        (self.out_start[v], self.out_start[v + 1])
    }

    #[inline]
    pub(crate) fn out_list(&self) -> &[ArcId] {
        &self.out_list
    }

    pub fn in_arcs(&self, v: NodeId) -> impl Iterator<Item = ArcId> + '_ {
        self.out_arcs(mate(v)).iter().map(|&a| mate(a))
    }

    #[inline]
    pub fn out_degree(&self, v: NodeId) -> usize {
        self.out_start[v + 1] - self.out_start[v]
    }

    #[inline]
    pub fn in_degree(&self, v: NodeId) -> usize {
        self.out_degree(mate(v))
    }

    /// The declared `(tail, head)` of every arc pair, in declaration order.
    pub fn declared_pairs(&self) -> Vec<(NodeId, NodeId)> {
        (0..self.arc_pair_count())
            .map(|j| (self.tails[2 * j], self.heads[2 * j]))
            .collect()
    }

    pub fn arcs(&self) -> impl Iterator<Item = (ArcId, NodeId, NodeId)> + '_ {
        (0..self.arc_count()).map(move |a| (a, self.tails[a], self.heads[a]))
    }

    pub fn membership(&self, set: &[NodeId]) -> Vec<bool> {
        let mut m = vec![false; self.node_count()];
        for &x in set {
            m[x] = true;
        }
        m
    }

    /// Arcs entering `set` from outside.
    pub fn delta_in(&self, set: &[NodeId]) -> Vec<ArcId> {
        let m = self.membership(set);
        let mut out: Vec<ArcId> = set
            .iter()
            .flat_map(|&v| self.in_arcs(v))
            .filter(|&a| !m[self.tail(a)])
            .collect();
        out.sort_unstable();
        out
    }

    /// Arcs leaving `set`.
    pub fn delta_out(&self, set: &[NodeId]) -> Vec<ArcId> {
        let m = self.membership(set);
        let mut out: Vec<ArcId> = set
            .iter()
            .flat_map(|&v| self.out_arcs(v).iter().copied())
            .filter(|&a| !m[self.head(a)])
            .collect();
        out.sort_unstable();
        out
    }

    /// Arcs with both endpoints in `set`.
    pub fn gamma(&self, set: &[NodeId]) -> Vec<ArcId> {
        let m = self.membership(set);
        let mut out: Vec<ArcId> = set
            .iter()
            .flat_map(|&v| self.out_arcs(v).iter().copied())
            .filter(|&a| m[self.head(a)])
            .collect();
        out.sort_unstable();
        out
    }

    /// Every node has in-degree at most one or out-degree at most one.
    pub fn check_degree_property(&self) -> Result<()> {
        for v in 0..self.node_count() {
            let (i, o) = (self.in_degree(v), self.out_degree(v));
            if i > 1 && o > 1 {
                return Err(Error::DegreeProperty {
                    node: v,
                    indeg: i,
                    outdeg: o,
                });
            }
        }
        Ok(())
    }

    /// No arc joins a node to its own mate (such arcs always come as a
    /// parallel mate pair).
    pub fn check_loop_property(&self) -> Result<()> {
        for (a, t, h) in self.arcs() {
            if h == mate(t) {
                return Err(Error::LoopProperty {
                    node: t,
                    arc: a,
                    mate_arc: mate(a),
                });
            }
        }
        Ok(())
    }

    pub fn check_algorithm_preconditions(&self) -> Result<()> {
        self.check_loop_property()?;
        self.check_degree_property()
    }

    /// Subgraph induced by a self-symmetric node set, relabelled compactly.
    pub fn induced(&self, set: &[NodeId]) -> Result<Induced> {
        let m = self.membership(set);
        let mut new_id = vec![usize::MAX; self.node_count()];
        let mut nodes = Vec::with_capacity(set.len());
        let mut evens: Vec<NodeId> = set.iter().map(|&x| x & !1).collect();
        evens.sort_unstable();
        evens.dedup();
        for &x in &evens {
            if !m[x] || !m[mate(x)] {
                return Err(contract(format!(
                    "induced: set is not self-symmetric at node {x}"
                )));
            }
            new_id[x] = nodes.len();
            nodes.push(x);
            new_id[mate(x)] = nodes.len();
            nodes.push(mate(x));
        }
        let mut declared = Vec::new();
        let mut arcs = Vec::new();
        for j in 0..self.arc_pair_count() {
            let (t, h) = (self.tails[2 * j], self.heads[2 * j]);
            if m[t] && m[h] {
                declared.push((new_id[t], new_id[h]));
                arcs.push(2 * j);
                arcs.push(2 * j + 1);
            }
        }
        let graph = SkewGraph::from_arc_pairs(evens.len(), &declared)?;
        Ok(Induced { graph, nodes, arcs })
    }

    pub fn is_walk(&self, w: &Walk) -> bool {
        if w.nodes.len() != w.arcs.len() + 1 {
            return false;
        }
        if w.nodes.iter().any(|&v| v >= self.node_count())
            || w.arcs.iter().any(|&a| a >= self.arc_count())
        {
            return false;
        }
        let incident = w
            .arcs
            .iter()
            .enumerate()
            .all(|(i, &a)| self.tail(a) == w.nodes[i] && self.head(a) == w.nodes[i + 1]);
        incident && (w.kind == WalkKind::Open || w.nodes[0] == w.nodes[w.nodes.len() - 1])
    }

    /// True iff `w` is a node-simple closed walk with at least one arc.
    pub fn is_circuit(&self, w: &Walk) -> bool {
        if !self.is_walk(w) || w.arcs.is_empty() || w.nodes[0] != *w.nodes.last().unwrap() {
            return false;
        }
        let mut inner = w.nodes[1..].to_vec();
        inner.sort_unstable();
        inner.windows(2).all(|p| p[0] != p[1])
    }

    /// A regular circuit: node-simple, closed, arc-simple and free of mate arcs.
    pub fn is_regular_circuit(&self, w: &Walk) -> bool {
        self.is_circuit(w) && is_regular(self, w)
    }
}

/// Induced subgraph plus the original ids of its nodes and arcs.
#[derive(Clone, Debug)]
pub struct Induced {
    pub graph: SkewGraph,
    pub nodes: Vec<NodeId>,
    pub arcs: Vec<ArcId>,
}

impl Induced {
    pub fn lift_nodes(&self, xs: &[NodeId]) -> Vec<NodeId> {
        xs.iter().map(|&x| self.nodes[x]).collect()
    }

    pub fn lift_walk(&self, w: &Walk) -> Walk {
        Walk {
            nodes: self.lift_nodes(&w.nodes),
            arcs: w.arcs.iter().map(|&a| self.arcs[a]).collect(),
            kind: w.kind,
        }
    }
}

/// True iff the walk is arc-simple and contains no arc together with its mate.
pub fn is_regular(_g: &SkewGraph, w: &Walk) -> bool {
    let mut pairs: Vec<usize> = w.arcs.iter().map(|&a| a >> 1).collect();
    pairs.sort_unstable();
    pairs.windows(2).all(|p| p[0] != p[1])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum WalkKind {
    Open,
    Cycle,
}

/// Alternating node/arc (or node/edge) sequence. `nodes.len() == arcs.len() + 1`;
/// a cycle repeats its start node at the end.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Walk {
    pub nodes: Vec<NodeId>,
    pub arcs: Vec<ArcId>,
    pub kind: WalkKind,
}

impl Walk {
    pub fn single(v: NodeId) -> Self {
        Walk {
            nodes: vec![v],
            arcs: Vec::new(),
            kind: WalkKind::Open,
        }
    }

    /// Builds a skew-graph walk from its start node and arc sequence.
    pub fn from_arcs(g: &SkewGraph, start: NodeId, arcs: Vec<ArcId>, kind: WalkKind) -> Self {
        let mut nodes = Vec::with_capacity(arcs.len() + 1);
        nodes.push(start);
        nodes.extend(arcs.iter().map(|&a| g.head(a)));
        Walk { nodes, arcs, kind }
    }

    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    /// The symmetric walk: mates of all elements in reverse order.
    pub fn mate_walk(&self) -> Walk {
        Walk {
            nodes: self.nodes.iter().rev().map(|&x| mate(x)).collect(),
            arcs: self.arcs.iter().rev().map(|&a| mate(a)).collect(),
            kind: self.kind,
        }
    }

    pub fn reversed(&self) -> Walk {
        Walk {
            nodes: self.nodes.iter().rev().copied().collect(),
            arcs: self.arcs.iter().rev().copied().collect(),
            kind: self.kind,
        }
    }

    /// Rotates a cycle so that it starts at position `i` of its node list.
    pub fn rotated(&self, i: usize) -> Walk {
        assert_eq!(self.kind, WalkKind::Cycle);
        let k = self.arcs.len();
        if k == 0 {
            return self.clone();
        }
        let i = i % k;
        let arcs: Vec<_> = (0..k).map(|j| self.arcs[(i + j) % k]).collect();
        let mut nodes: Vec<_> = (0..k).map(|j| self.nodes[(i + j) % k]).collect();
        nodes.push(nodes[0]);
        Walk {
            nodes,
            arcs,
            kind: WalkKind::Cycle,
        }
    }
}

/// Direction of a bidirected edge at one of its endpoints.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum End {
    /// The edge enters the endpoint (`-` in files).
    In,
    /// The edge leaves the endpoint (`+` in files).
    Out,
}

impl End {
    pub fn flip(self) -> End {
        match self {
            End::In => End::Out,
            End::Out => End::In,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BiEdge {
    pub u: NodeId,
    pub du: End,
    pub v: NodeId,
    pub dv: End,
}

impl BiEdge {
    pub fn new(u: NodeId, du: End, v: NodeId, dv: End) -> Self {
        BiEdge { u, du, v, dv }
    }

    /// The two (node, direction) ends of the edge.
    pub fn ends(&self) -> [(NodeId, End); 2] {
        [(self.u, self.du), (self.v, self.dv)]
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BidirectedGraph {
    pub node_count: usize,
    pub edges: Vec<BiEdge>,
}

impl BidirectedGraph {
    pub fn new(node_count: usize) -> Self {
        BidirectedGraph {
            node_count,
            edges: Vec::new(),
        }
    }

    pub fn add_edge(&mut self, u: NodeId, du: End, v: NodeId, dv: End) -> usize {
        self.edges.push(BiEdge::new(u, du, v, dv));
        self.edges.len() - 1
    }

    pub fn validate(&self) -> Result<()> {
        for e in &self.edges {
            for x in [e.u, e.v] {
                if x >= self.node_count {
                    return Err(Error::NodeOutOfRange {
                        node: x,
                        count: self.node_count,
                    });
                }
            }
        }
        Ok(())
    }

    /// Checks the walk definition: consecutive elements are incident, every
    /// interior node sees a transit pair, and a cycle is also transit at its
    /// start.
    pub fn is_walk(&self, w: &Walk) -> bool {
        if w.nodes.len() != w.arcs.len() + 1
            || w.nodes.iter().any(|&v| v >= self.node_count)
            || w.arcs.iter().any(|&e| e >= self.edges.len())
        {
            return false;
        }
        if w.arcs.is_empty() {
            return w.kind == WalkKind::Open;
        }
        // Each state: (direction of the first edge at v0, direction of the
        // last edge at the current node).
        let mut states: Vec<(End, End)> = Vec::new();
        for (i, &e) in w.arcs.iter().enumerate() {
            let edge = self.edges[e];
            let (from, to) = (w.nodes[i], w.nodes[i + 1]);
            let mut options = Vec::with_capacity(2);
            if edge.u == from && edge.v == to {
                options.push((edge.du, edge.dv));
            }
            if edge.v == from && edge.u == to {
                options.push((edge.dv, edge.du));
            }
            let mut next = Vec::new();
            for &(dep, arr) in &options {
                if i == 0 {
                    next.push((dep, arr));
                } else {
                    for &(first, last) in &states {
                        if last != dep {
                            next.push((first, arr));
                        }
                    }
                }
            }
            next.sort_by_key(|&(a, b)| (a as u8, b as u8));
            next.dedup();
            if next.is_empty() {
                return false;
            }
            states = next;
        }
        match w.kind {
            WalkKind::Open => true,
            WalkKind::Cycle => {
                w.nodes[0] == w.nodes[w.nodes.len() - 1]
                    && states.iter().any(|&(first, last)| first != last)
            }
        }
    }

    pub fn is_edge_simple(w: &Walk) -> bool {
        let mut es = w.arcs.clone();
        es.sort_unstable();
        es.windows(2).all(|p| p[0] != p[1])
    }

    /// A cycle whose nodes are pairwise distinct apart from the closing repeat.
    pub fn is_node_simple_cycle(&self, w: &Walk) -> bool {
        if w.kind != WalkKind::Cycle || !self.is_walk(w) {
            return false;
        }
        let mut inner = w.nodes[1..].to_vec();
        inner.sort_unstable();
        inner.windows(2).all(|p| p[0] != p[1])
    }
}

/// Which node of every skew pair represents the bidirected node of the same
/// index (the `V1` side of the partition).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NodeMap {
    v1: Vec<NodeId>,
}

impl NodeMap {
    /// Even ids form `V1`.
    pub fn canonical(pairs: usize) -> Self {
        NodeMap {
            v1: (0..pairs).map(|k| 2 * k).collect(),
        }
    }

    /// `choice[k] == true` selects the odd node `2k+1` of pair `k`.
    pub fn from_choice(choice: &[bool]) -> Self {
        NodeMap {
            v1: choice
                .iter()
                .enumerate()
                .map(|(k, &odd)| 2 * k + odd as usize)
                .collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.v1.len()
    }

    pub fn is_empty(&self) -> bool {
        self.v1.is_empty()
    }

    /// Skew node representing bidirected node `b`.
    pub fn to_skew(&self, b: NodeId) -> NodeId {
        self.v1[b]
    }

    /// Bidirected node of skew node `x`, plus whether `x` is on the `V1` side.
    pub fn to_bidirected(&self, x: NodeId) -> (NodeId, bool) {
        let b = x >> 1;
        (b, self.v1[b] == x)
    }
}

/// One mate arc pair per edge: the arc runs from the copy of `u` the edge
/// leaves (u if it leaves `u`, u' if it enters) to the copy of `v` it enters.
pub fn bidirected_to_skew(bg: &BidirectedGraph) -> Result<(SkewGraph, NodeMap)> {
    bg.validate()?;
    let declared: Vec<(NodeId, NodeId)> = bg
        .edges
        .iter()
        .map(|e| {
            let tail = match e.du {
                End::Out => 2 * e.u,
                End::In => 2 * e.u + 1,
            };
            let head = match e.dv {
                End::In => 2 * e.v,
                End::Out => 2 * e.v + 1,
            };
            (tail, head)
        })
        .collect();
    let g = SkewGraph::from_arc_pairs(bg.node_count, &declared)?;
    Ok((g, NodeMap::canonical(bg.node_count)))
}

/// The bidirected graph determined by the partition `map` (one edge per arc pair).
pub fn skew_to_bidirected(g: &SkewGraph, map: &NodeMap) -> BidirectedGraph {
    let edges = g
        .declared_pairs()
        .into_iter()
        .map(|(t, h)| {
            let (u, t_in_v1) = map.to_bidirected(t);
            let (v, h_in_v1) = map.to_bidirected(h);
            let du = if t_in_v1 { End::Out } else { End::In };
            let dv = if h_in_v1 { End::In } else { End::Out };
            BiEdge::new(u, du, v, dv)
        })
        .collect();
    BidirectedGraph {
        node_count: g.pair_count(),
        edges,
    }
}

/// Image of a skew walk in the bidirected graph: pairs of nodes and arcs are
/// identified. The mate walk projects onto the same sequence read backwards.
pub fn project_walk(g: &SkewGraph, w: &Walk, _map: &NodeMap) -> Result<Walk> {
    if !g.is_walk(w) {
        return Err(contract("project_walk: not a walk of the skew graph"));
    }
    Ok(Walk {
        nodes: w.nodes.iter().map(|&x| x >> 1).collect(),
        arcs: w.arcs.iter().map(|&a| a >> 1).collect(),
        kind: w.kind,
    })
}

/// The preimage of a bidirected walk, starting from the `V1` copy of its first
/// node when that orientation works and from its mate otherwise.
pub fn lift_walk(g: &SkewGraph, bw: &Walk, map: &NodeMap) -> Result<Walk> {
    if bw.nodes.len() != bw.arcs.len() + 1 || bw.nodes.iter().any(|&b| b >= g.pair_count()) {
        return Err(Error::Contract("lift_walk: malformed walk".into()));
    }
    let first = map.to_skew(bw.nodes[0]);
    for start in [first, mate(first)] {
        if let Some(w) = lift_from(g, bw, start) {
            return Ok(w);
        }
    }
    Err(Error::Contract(
        "lift_walk: sequence violates the transit condition".into(),
    ))
}

fn lift_from(g: &SkewGraph, bw: &Walk, start: NodeId) -> Option<Walk> {
    let mut cur = start;
    let mut arcs = Vec::with_capacity(bw.arcs.len());
    for (i, &e) in bw.arcs.iter().enumerate() {
        if 2 * e + 1 >= g.arc_count() {
            return None;
        }
        let next_pair = bw.nodes[i + 1];
        let a = [2 * e, 2 * e + 1]
            .into_iter()
            .find(|&a| g.tail(a) == cur && g.head(a) >> 1 == next_pair)?;
        arcs.push(a);
        cur = g.head(a);
    }
    if bw.kind == WalkKind::Cycle && cur != start {
        return None;
    }
    Some(Walk::from_arcs(g, start, arcs, bw.kind))
}
