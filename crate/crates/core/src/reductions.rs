//! Node/edge acyclicity reductions for bidirected graphs and the preprocessing
//! pipeline that establishes the degree and loop properties.

use crate::error::{contract, Result};
use crate::graph::{
    bidirected_to_skew, BidirectedGraph, End, NodeId, NodeMap, SkewGraph, Walk, WalkKind,
};

/// Where an output node of one reduction stage came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NodeOrigin {
    /// Copy `half` (1 or 2) of an input node.
    Copy { node: NodeId, half: u8 },
    /// The node `w_e` standing for input edge `edge`.
    Gadget { edge: usize },
}

/// Where an output edge of one reduction stage came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EdgeOrigin {
    /// The `v1 -> v2` edge added for input node `node`.
    Splitter { node: NodeId },
    /// Input edge moved onto endpoint copies.
    Transferred { edge: usize },
    /// Edge `u_half -> w_edge`.
    GadgetIn { edge: usize, half: u8 },
    /// Edge `w_edge -> v_half`.
    GadgetOut { edge: usize, half: u8 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StageKind {
    NodeToEdge,
    EdgeToNode,
}

/// One reduction step, indexed by output ids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stage {
    pub kind: StageKind,
    pub node_origin: Vec<NodeOrigin>,
    pub edge_origin: Vec<EdgeOrigin>,
}

/// Composition of reduction stages, first stage applied first.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ReductionTrace {
    pub stages: Vec<Stage>,
}

impl ReductionTrace {
    pub fn then(mut self, other: ReductionTrace) -> ReductionTrace {
        self.stages.extend(other.stages);
        self
    }

    /// Pulls a skew circuit of the final reduced graph back to a cycle of the
    /// original bidirected graph.
    pub fn pull_back_skew_circuit(&self, g: &SkewGraph, map: &NodeMap, c: &Walk) -> Result<Walk> {
        let bw = crate::graph::project_walk(g, c, map)?;
        pull_back_cycle(self, &bw)
    }
}

fn single_stage(stage: Stage) -> ReductionTrace {
    ReductionTrace {
        stages: vec![stage],
    }
}

/// Splits every node `v` into `v1 -> v2`; edges entering `v` attach to `v1`,
/// edges leaving it attach to `v2`, keeping their directions.
pub fn node_to_edge(bg: &BidirectedGraph) -> Result<(BidirectedGraph, ReductionTrace)> {
    bg.validate()?;
    let n = bg.node_count;
    let mut out = BidirectedGraph::new(2 * n);
    let mut node_origin = Vec::with_capacity(2 * n);
    for v in 0..n {
        node_origin.push(NodeOrigin::Copy { node: v, half: 1 });
        node_origin.push(NodeOrigin::Copy { node: v, half: 2 });
    }
    let mut edge_origin = Vec::with_capacity(n + bg.edges.len());
    for v in 0..n {
        out.add_edge(2 * v, End::Out, 2 * v + 1, End::In);
        edge_origin.push(EdgeOrigin::Splitter { node: v });
    }
    let copy = |x: NodeId, d: End| match d {
        End::In => 2 * x,
        End::Out => 2 * x + 1,
    };
    for (i, e) in bg.edges.iter().enumerate() {
        out.add_edge(copy(e.u, e.du), e.du, copy(e.v, e.dv), e.dv);
        edge_origin.push(EdgeOrigin::Transferred { edge: i });
    }
    let trace = single_stage(Stage {
        kind: StageKind::NodeToEdge,
        node_origin,
        edge_origin,
    });
    Ok((out, trace))
}

/// Splits every node into two unconnected copies and replaces each edge `e`
/// by a node `w_e` entered from both copies of one end and leaving to both
/// copies of the other.
pub fn edge_to_node(bg: &BidirectedGraph) -> Result<(BidirectedGraph, ReductionTrace)> {
    bg.validate()?;
    let n = bg.node_count;
    let m = bg.edges.len();
    let mut out = BidirectedGraph::new(2 * n + m);
    let mut node_origin = Vec::with_capacity(2 * n + m);
    for v in 0..n {
        node_origin.push(NodeOrigin::Copy { node: v, half: 1 });
        node_origin.push(NodeOrigin::Copy { node: v, half: 2 });
    }
    node_origin.extend((0..m).map(|edge| NodeOrigin::Gadget { edge }));
    let mut edge_origin = Vec::with_capacity(4 * m);
    for (i, e) in bg.edges.iter().enumerate() {
        let w = 2 * n + i;
        for half in 1..=2u8 {
            out.add_edge(2 * e.u + (half as usize - 1), e.du, w, End::In);
            edge_origin.push(EdgeOrigin::GadgetIn { edge: i, half });
        }
        for half in 1..=2u8 {
            out.add_edge(w, End::Out, 2 * e.v + (half as usize - 1), e.dv);
            edge_origin.push(EdgeOrigin::GadgetOut { edge: i, half });
        }
    }
    let trace = single_stage(Stage {
        kind: StageKind::EdgeToNode,
        node_origin,
        edge_origin,
    });
    Ok((out, trace))
}

/// `edge_to_node`, then `node_to_edge`, then conversion to a skew graph. The
/// result satisfies the degree and loop properties and is weakly acyclic iff
/// the input is weakly (edge-) acyclic.
pub fn canonical_preprocess(bg: &BidirectedGraph) -> Result<(SkewGraph, ReductionTrace, NodeMap)> {
    let (g1, t1) = edge_to_node(bg)?;
    let (g2, t2) = node_to_edge(&g1)?;
    let (sk, map) = bidirected_to_skew(&g2)?;
    Ok((sk, t1.then(t2), map))
}

/// Maps a cycle of the fully reduced graph back to the original graph.
pub fn pull_back_cycle(trace: &ReductionTrace, w: &Walk) -> Result<Walk> {
    if w.kind != WalkKind::Cycle || w.arcs.is_empty() {
        return Err(contract("pull_back_cycle: expected a nonempty cycle"));
    }
    let mut cur = w.clone();
    for stage in trace.stages.iter().rev() {
        cur = match stage.kind {
            StageKind::NodeToEdge => pull_node_to_edge(stage, &cur)?,
            StageKind::EdgeToNode => pull_edge_to_node(stage, &cur)?,
        };
    }
    Ok(cur)
}

fn origin_node(stage: &Stage, x: NodeId) -> Result<NodeId> {
    match stage.node_origin.get(x) {
        Some(NodeOrigin::Copy { node, .. }) => Ok(*node),
        Some(NodeOrigin::Gadget { .. }) => Err(contract("pull_back_cycle: unexpected gadget node")),
        None => Err(contract(format!("pull_back_cycle: node {x} outside trace"))),
    }
}

fn pull_node_to_edge(stage: &Stage, w: &Walk) -> Result<Walk> {
    let origin = |e: usize| {
        stage
            .edge_origin
            .get(e)
            .copied()
            .ok_or_else(|| contract(format!("pull_back_cycle: edge {e} outside trace")))
    };
    let mut first = None;
    for (i, &e) in w.arcs.iter().enumerate() {
        if matches!(origin(e)?, EdgeOrigin::Transferred { .. }) {
            first = Some(i);
            break;
        }
    }
    let start = first.ok_or_else(|| contract("pull_back_cycle: cycle uses splitter edges only"))?;
    let w = w.rotated(start);
    let mut nodes = Vec::new();
    let mut edges = Vec::new();
    for (i, &e) in w.arcs.iter().enumerate() {
        if let EdgeOrigin::Transferred { edge } = origin(e)? {
            nodes.push(origin_node(stage, w.nodes[i])?);
            edges.push(edge);
        }
    }
    nodes.push(nodes[0]);
    Ok(Walk {
        nodes,
        arcs: edges,
        kind: WalkKind::Cycle,
    })
}

fn pull_edge_to_node(stage: &Stage, w: &Walk) -> Result<Walk> {
    let start = w
        .nodes
        .iter()
        .position(|&x| matches!(stage.node_origin.get(x), Some(NodeOrigin::Copy { .. })))
        .ok_or_else(|| contract("pull_back_cycle: cycle has no copy node"))?;
    let w = w.rotated(start);
    if !w.arcs.len().is_multiple_of(2) {
        return Err(contract("pull_back_cycle: odd cycle in a gadget graph"));
    }
    let gadget_edge = |e: usize| match stage.edge_origin.get(e) {
        Some(EdgeOrigin::GadgetIn { edge, .. }) | Some(EdgeOrigin::GadgetOut { edge, .. }) => {
            Ok(*edge)
        }
        _ => Err(contract(format!(
            "pull_back_cycle: edge {e} is not a gadget edge"
        ))),
    };
    let mut nodes = Vec::with_capacity(w.arcs.len() / 2 + 1);
    let mut edges = Vec::with_capacity(w.arcs.len() / 2);
    for t in 0..w.arcs.len() / 2 {
        let (e1, e2) = (gadget_edge(w.arcs[2 * t])?, gadget_edge(w.arcs[2 * t + 1])?);
        if e1 != e2 {
            return Err(contract(
                "pull_back_cycle: gadget entered and left through different edges",
            ));
        }
        nodes.push(origin_node(stage, w.nodes[2 * t])?);
        edges.push(e1);
    }
    nodes.push(nodes[0]);
    Ok(Walk {
        nodes,
        arcs: edges,
        kind: WalkKind::Cycle,
    })
}
