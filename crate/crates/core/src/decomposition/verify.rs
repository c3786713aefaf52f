//! Clause-by-clause checkers for every certificate type.

use super::strong::{scc, unreached};
use super::{
    topo_order, Barrier, ComponentPartition, StrongAcyclicPartition, StrongDecomposition,
    StrongSeparator, WeakDecomposition, WeakSeparator,
};
use crate::graph::{mate, ArcId, NodeId, SkewGraph, Walk};
use std::fmt;

/// A broken clause with the arc or node that breaks it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub clause: String,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.clause, self.detail)
    }
}

impl std::error::Error for Violation {}

fn fail<T>(clause: &str, detail: impl Into<String>) -> Result<T, Violation> {
    Err(Violation {
        clause: clause.to_string(),
        detail: detail.into(),
    })
}

type Check = Result<(), Violation>;

/// Any certificate the library produces for a skew-symmetric graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    RegularCircuit(Walk),
    StrongAcyclic(StrongAcyclicPartition),
    WeakSeparator(WeakSeparator),
    Barrier(Barrier),
    WeakDecomposition(WeakDecomposition),
    StrongSeparator(StrongSeparator),
    StrongDecomposition(StrongDecomposition),
}

/// Checks `c` against `g`. Separators and barriers are checked on their own
/// clauses only; the weak acyclicity of their parts is what the trees add.
pub fn verify_certificate(g: &SkewGraph, c: &Certificate) -> Check {
    match c {
        Certificate::RegularCircuit(w) => {
            if g.is_regular_circuit(w) {
                Ok(())
            } else {
                fail(
                    "regular circuit",
                    "not a node-simple circuit free of mate arcs",
                )
            }
        }
        Certificate::StrongAcyclic(p) => verify_strong_acyclic(g, p),
        Certificate::WeakSeparator(s) => verify_weak_separator(g, s),
        Certificate::Barrier(b) => verify_barrier(g, b),
        Certificate::WeakDecomposition(d) => verify_weak_decomposition(g, d),
        Certificate::StrongSeparator(s) => verify_strong_separator(g, s),
        Certificate::StrongDecomposition(d) => verify_strong_decomposition(g, d),
    }
}

fn check_ids(g: &SkewGraph, xs: &[NodeId]) -> Check {
    match xs.iter().find(|&&x| x >= g.node_count()) {
        Some(x) => fail("node range", format!("node {x} out of range")),
        None => Ok(()),
    }
}

/// Labels every node by the part containing it; a node in two parts or in
/// none is a violation.
fn label(g: &SkewGraph, parts: &[&[NodeId]]) -> Result<Vec<usize>, Violation> {
    const NONE: usize = usize::MAX;
    let mut lab = vec![NONE; g.node_count()];
    for (i, p) in parts.iter().enumerate() {
        check_ids(g, p)?;
        for &x in p.iter() {
            if lab[x] != NONE {
                return fail("partition", format!("node {x} appears twice"));
            }
            lab[x] = i;
        }
    }
    if let Some(x) = lab.iter().position(|&l| l == NONE) {
        return fail("partition", format!("node {x} is not covered"));
    }
    Ok(lab)
}

fn self_symmetric(name: &str, set: &[NodeId], lab: &[usize]) -> Check {
    for &x in set {
        if lab[mate(x)] != lab[x] {
            return fail(
                "self-symmetric",
                format!("{name} contains {x} but not its mate"),
            );
        }
    }
    Ok(())
}

/// A cycle among the arcs with both ends selected, reported as one of its
/// nodes.
fn cycle_among(g: &SkewGraph, keep: impl Fn(ArcId, NodeId, NodeId) -> bool) -> Option<NodeId> {
    let arcs: Vec<_> = g
        .arcs()
        .filter(|&(a, u, v)| keep(a, u, v))
        .map(|(_, u, v)| (u, v))
        .collect();
    topo_order(g.node_count(), &arcs).err().map(|rest| rest[0])
}

pub fn verify_strong_acyclic(g: &SkewGraph, p: &StrongAcyclicPartition) -> Check {
    let zm: Vec<NodeId> = p.z.iter().map(|&x| mate(x)).collect();
    check_ids(g, &p.z)?;
    let lab = label(g, &[&p.z, &zm])?;
    for (a, u, v) in g.arcs() {
        if lab[u] == 0 && lab[v] == 1 {
            return fail("Z→Z′ arc", format!("arc {a}: {u} -> {v}"));
        }
    }
    if let Some(x) = cycle_among(g, |_, u, v| lab[u] == 0 && lab[v] == 0) {
        return fail("G[Z] acyclic", format!("cycle through node {x}"));
    }
    Ok(())
}

pub fn verify_weak_separator(g: &SkewGraph, s: &WeakSeparator) -> Check {
    const A: usize = 0;
    const B: usize = 1;
    const Z: usize = 2;
    const ZM: usize = 3;
    check_ids(g, &s.z)?;
    let zm: Vec<NodeId> = s.z.iter().map(|&x| mate(x)).collect();
    let lab = label(g, &[&s.a, &s.b, &s.z, &zm])?;
    if s.a.is_empty() || s.b.is_empty() {
        return fail("nonempty parts", "A or B is empty");
    }
    self_symmetric("A", &s.a, &lab)?;
    self_symmetric("B", &s.b, &lab)?;
    let [c0, c1] = s.crossing;
    if c0 >= g.arc_count() || c1 != mate(c0) {
        return fail("crossing pair", "the crossing arcs are not a mate pair");
    }
    let mut crossing = Vec::new();
    for (a, u, v) in g.arcs() {
        let (lu, lv) = (lab[u], lab[v]);
        if (lu == A && lv == B) || (lu == B && lv == A) {
            crossing.push(a);
        }
        if lu == Z && lv != Z {
            return fail("arc leaves Z", format!("arc {a}: {u} -> {v}"));
        }
        if lv == ZM && lu != ZM {
            return fail("arc enters Z′", format!("arc {a}: {u} -> {v}"));
        }
    }
    if let Some(&a) = crossing.iter().find(|&&a| a != c0 && a != c1) {
        return fail(
            "second crossing pair",
            format!("arc {a} also joins A and B"),
        );
    }
    if crossing.len() != 2 || lab[g.tail(c0)] != A {
        return fail("crossing pair", format!("arc {c0} does not go from A to B"));
    }
    if let Some(x) = cycle_among(g, |_, u, v| lab[u] == Z && lab[v] == Z) {
        return fail("G[Z] acyclic", format!("cycle through node {x}"));
    }
    Ok(())
}

/// Clauses (i)-(v) of an `(S, M; buds)` barrier, with base arcs allowed to
/// join two buds, plus acyclicity of the contracted `W` subgraph.
pub fn verify_barrier(g: &SkewGraph, b: &Barrier) -> Check {
    const S: usize = 0;
    const SM: usize = 1;
    const M: usize = 2;
    check_ids(g, &b.s)?;
    let sm: Vec<NodeId> = b.s.iter().map(|&x| mate(x)).collect();
    let mut parts: Vec<&[NodeId]> = vec![&b.s, &sm, &b.m];
    parts.extend(b.buds.iter().map(|t| t.members.as_slice()));
    let lab = label(g, &parts)?;
    self_symmetric("M", &b.m, &lab)?;
    for t in &b.buds {
        self_symmetric("bud", &t.members, &lab)?;
        let a = t.base_arc;
        if a >= g.arc_count() || !t.members.contains(&g.head(a)) || t.members.contains(&g.tail(a)) {
            return fail("bud", format!("arc {a} does not enter its bud"));
        }
    }
    let bud = |x: NodeId| lab[x].checked_sub(3);
    let is_base = |a: ArcId, i: usize| {
        let base = b.buds[i].base_arc;
        a == base || a == mate(base)
    };
    for (a, u, v) in g.arcs() {
        let (lu, lv) = (lab[u], lab[v]);
        let detail = || format!("arc {a}: {u} -> {v}");
        if lu == S && (lv == SM || lv == M) {
            return fail("S→S′∪M arc", detail());
        }
        match (bud(u), bud(v)) {
            (Some(i), Some(j)) if i != j && !is_base(a, i) && !is_base(a, j) => {
                return fail("arc between buds", detail());
            }
            (Some(_), None) | (None, Some(_)) if lu == M || lv == M => {
                return fail("arc between a bud and M", detail());
            }
            (None, Some(j)) if lu == S && a != b.buds[j].base_arc => {
                return fail("S→bud arc other than the base arc", detail());
            }
            _ => {}
        }
    }
    // W = S followed by the bud bases; arcs of G/buds between them.
    let ns = b.s.len();
    let mut w_of = vec![usize::MAX; g.node_count()];
    for (i, &x) in b.s.iter().enumerate() {
        w_of[x] = i;
    }
    let image = |a: ArcId, x: NodeId, tail: bool| match bud(x) {
        None => w_of[x],
        Some(i) => {
            let base = b.buds[i].base_arc;
            let on_base = if tail { a != mate(base) } else { a == base };
            if on_base {
                ns + i
            } else {
                usize::MAX
            }
        }
    };
    let mut arcs = Vec::new();
    for (a, u, v) in g.arcs() {
        if bud(u).is_some() && bud(u) == bud(v) {
            continue;
        }
        let (x, y) = (image(a, u, true), image(a, v, false));
        if x != usize::MAX && y != usize::MAX {
            arcs.push((x, y));
        }
    }
    if topo_order(ns + b.buds.len(), &arcs).is_err() {
        return fail("acyclic W", "the contracted W subgraph has a cycle");
    }
    Ok(())
}

/// Every split verifies as a weak separator of the graph induced by its
/// subtree, every leaf as a strongly acyclic partition, and `G[Z]` is
/// acyclic everywhere. Linear in the graph and the tree.
pub fn verify_weak_decomposition(g: &SkewGraph, d: &WeakDecomposition) -> Check {
    const NONE: usize = usize::MAX;
    let n = g.node_count();
    let t = d.nodes.len();
    if d.root >= t {
        return fail("tree", "root out of range");
    }
    // Preorder intervals; also rejects shared children and cycles.
    let mut tin = vec![NONE; t];
    let mut tout = vec![0; t];
    let mut clock = 0;
    let mut stack = vec![(d.root, false)];
    while let Some((i, done)) = stack.pop() {
        if done {
            tout[i] = clock;
            continue;
        }
        if tin[i] != NONE {
            return fail("tree", format!("tree node {i} is reached twice"));
        }
        tin[i] = clock;
        clock += 1;
        stack.push((i, true));
        if let Some(s) = &d.nodes[i].split {
            for &c in s.children.iter().rev() {
                if c >= t {
                    return fail("tree", format!("child {c} out of range"));
                }
                stack.push((c, false));
            }
        }
    }
    let within = |x: usize, y: usize| tin[x] <= tin[y] && tin[y] < tout[x];
    let mut owner = vec![NONE; n];
    let mut in_z = vec![false; n];
    for (i, node) in d.nodes.iter().enumerate() {
        if tin[i] == NONE {
            continue;
        }
        check_ids(g, &node.z)?;
        for &x in &node.z {
            if owner[x] != NONE || owner[mate(x)] != NONE {
                return fail("partition", format!("node {x} appears twice"));
            }
            owner[x] = i;
            owner[mate(x)] = i;
            in_z[x] = true;
        }
    }
    if let Some(x) = owner.iter().position(|&o| o == NONE) {
        return fail("partition", format!("node {x} is not covered"));
    }
    // Each subtree of a split must own a node.
    let mut owned = vec![0usize; t];
    for &o in &owner {
        owned[o] += 1;
    }
    let mut order: Vec<usize> = (0..t).filter(|&i| tin[i] != NONE).collect();
    order.sort_unstable_by_key(|&i| std::cmp::Reverse(tin[i]));
    let mut splits = 0;
    for &i in &order {
        if let Some(s) = d.nodes[i].split {
            splits += 1;
            for c in s.children {
                if owned[c] == 0 {
                    return fail("nonempty parts", format!("a side of split {i} is empty"));
                }
                owned[i] += owned[c];
            }
        }
    }
    let mut unrelated = 0usize;
    for (a, u, v) in g.arcs() {
        let (ou, ov) = (owner[u], owner[v]);
        let detail = || format!("arc {a}: {u} -> {v} at tree node {ou}");
        if ou == ov {
            if in_z[u] && !in_z[v] {
                let clause = if d.nodes[ou].split.is_some() {
                    "arc leaves Z"
                } else {
                    "Z→Z′ arc"
                };
                return fail(clause, detail());
            }
        } else if within(ou, ov) {
            if in_z[u] {
                return fail("arc leaves Z", detail());
            }
        } else if within(ov, ou) {
            if !in_z[v] {
                return fail(
                    "arc enters Z′",
                    format!("arc {a}: {u} -> {v} at tree node {ov}"),
                );
            }
        } else {
            unrelated += 1;
        }
    }
    for &i in &order {
        let Some(s) = d.nodes[i].split else { continue };
        let [c0, c1] = s.crossing;
        if c0 >= g.arc_count() || c1 != mate(c0) {
            return fail("crossing pair", format!("split {i}: not a mate pair"));
        }
        let (ot, oh) = (owner[g.tail(c0)], owner[g.head(c0)]);
        let [l, r] = s.children;
        if !(within(l, ot) && within(r, oh)) {
            return fail(
                "crossing pair",
                format!("split {i}: arc {c0} does not go from A to B"),
            );
        }
    }
    // Each declared pair is two arcs crossing at its own split; anything
    // else joining unrelated tree nodes is an extra crossing arc.
    if unrelated != 2 * splits {
        return fail(
            "second crossing pair",
            format!(
                "{unrelated} arcs join sides of splits, {} expected",
                2 * splits
            ),
        );
    }
    if let Some(x) = cycle_among(g, |_, u, v| owner[u] == owner[v] && in_z[u] && in_z[v]) {
        return fail("G[Z] acyclic", format!("cycle through node {x}"));
    }
    Ok(())
}

/// Conditions (i)-(iv) of the component partition; strong connectivity of
/// each component is checked, weak acyclicity is left to the tree.
pub fn verify_component_partition(g: &SkewGraph, p: &ComponentPartition) -> Check {
    check_ids(g, &p.z)?;
    let zm: Vec<NodeId> = p.z.iter().map(|&x| mate(x)).collect();
    let mut parts: Vec<&[NodeId]> = vec![&p.z, &zm];
    parts.extend(p.components.iter().map(|c| c.as_slice()));
    let lab = label(g, &parts)?;
    let (comp, _) = scc(g);
    for c in &p.components {
        self_symmetric("component", c, &lab)?;
        if let Some(&x) = c.iter().find(|&&x| comp[x] != comp[c[0]]) {
            return fail(
                "strongly connected",
                format!("{x} and {} are not strongly connected", c[0]),
            );
        }
    }
    for (a, u, v) in g.arcs() {
        let (lu, lv) = (lab[u], lab[v]);
        let detail = || format!("arc {a}: {u} -> {v}");
        if lu == 0 && lv != 0 {
            return fail("arc leaves Z", detail());
        }
        if lv == 1 && lu != 1 {
            return fail("arc enters Z′", detail());
        }
        if lu >= 2 && lv >= 2 && lu != lv {
            return fail("arc between components", detail());
        }
    }
    if let Some(x) = cycle_among(g, |_, u, v| lab[u] == 0 && lab[v] == 0) {
        return fail("G[Z] acyclic", format!("cycle through node {x}"));
    }
    Ok(())
}

/// `(A, B)` covers the graph, only `a' -> b` and `b' -> a` cross, and each
/// side is reachable from its entry node.
pub fn verify_strong_separator(g: &SkewGraph, s: &StrongSeparator) -> Check {
    let lab = label(g, &[&s.a, &s.b])?;
    if s.a.is_empty() || s.b.is_empty() {
        return fail("nonempty parts", "A or B is empty");
    }
    self_symmetric("A", &s.a, &lab)?;
    self_symmetric("B", &s.b, &lab)?;
    let [c0, c1] = s.crossing;
    if c0 >= g.arc_count() || c1 != mate(c0) {
        return fail("crossing pair", "the crossing arcs are not a mate pair");
    }
    if g.tail(c0) != mate(s.entry_a) || g.head(c0) != s.entry_b {
        return fail("crossing pair", format!("arc {c0} is not a' -> b"));
    }
    if lab[s.entry_a] != 0 || lab[s.entry_b] != 1 {
        return fail("crossing pair", "entry nodes lie on the wrong sides");
    }
    for (a, u, v) in g.arcs() {
        if lab[u] != lab[v] && a != c0 && a != c1 {
            return fail("second crossing pair", format!("arc {a}: {u} -> {v}"));
        }
    }
    for (name, set, entry) in [("A", &s.a, s.entry_a), ("B", &s.b, s.entry_b)] {
        if let Some(x) = unreached(g, set, entry) {
            return fail(
                "entry connectivity",
                format!("node {x} of {name} is not reachable from {entry}"),
            );
        }
    }
    Ok(())
}

/// Every tree node verifies as a component partition of the graph induced
/// by its subtree, every part as a strong separator.
pub fn verify_strong_decomposition(g: &SkewGraph, d: &StrongDecomposition) -> Check {
    let t = d.nodes.len();
    if d.root >= t {
        return fail("tree", "root out of range");
    }
    let mut visited = vec![false; t];
    let mut stack = vec![(d.root, (0..g.node_count()).collect::<Vec<_>>())];
    while let Some((i, set)) = stack.pop() {
        if std::mem::replace(&mut visited[i], true) {
            return fail("tree", format!("tree node {i} is reached twice"));
        }
        if d.node_set(i) != set {
            return fail(
                "partition",
                format!("tree node {i} does not cover its node set"),
            );
        }
        let sub = g.induced(&set).map_err(|e| Violation {
            clause: "partition".into(),
            detail: e.to_string(),
        })?;
        let mut local = vec![usize::MAX; g.node_count()];
        for (k, &x) in sub.nodes.iter().enumerate() {
            local[x] = k;
        }
        let mut local_arc = vec![usize::MAX; g.arc_count()];
        for (k, &a) in sub.arcs.iter().enumerate() {
            local_arc[a] = k;
        }
        let node = &d.nodes[i];
        let to_local = |xs: &[NodeId]| -> Vec<NodeId> { xs.iter().map(|&x| local[x]).collect() };
        let mut components = Vec::new();
        for p in &node.parts {
            if p.children.iter().any(|&c| c >= t) {
                return fail("tree", format!("child of tree node {i} out of range"));
            }
            let [xa, yb] = p.children.map(|c| d.node_set(c));
            let mut comp: Vec<NodeId> = xa.iter().chain(&yb).copied().collect();
            comp.sort_unstable();
            if comp.iter().any(|&x| local[x] == usize::MAX) {
                return fail(
                    "partition",
                    format!("a part of tree node {i} leaves its set"),
                );
            }
            let part = sub.graph.induced(&to_local(&comp)).map_err(|e| Violation {
                clause: "partition".into(),
                detail: e.to_string(),
            })?;
            let mut inner = vec![usize::MAX; sub.graph.node_count()];
            for (k, &x) in part.nodes.iter().enumerate() {
                inner[x] = k;
            }
            let mut inner_arc = vec![usize::MAX; sub.graph.arc_count()];
            for (k, &a) in part.arcs.iter().enumerate() {
                inner_arc[a] = k;
            }
            let lift =
                |xs: &[NodeId]| -> Vec<NodeId> { xs.iter().map(|&x| inner[local[x]]).collect() };
            let arc = |a: ArcId| {
                let l = local_arc.get(a).copied().unwrap_or(usize::MAX);
                if l == usize::MAX {
                    usize::MAX
                } else {
                    inner_arc[l]
                }
            };
            let sep = StrongSeparator {
                a: lift(&xa),
                b: lift(&yb),
                crossing: p.crossing.map(arc),
                entry_a: inner[local[p.entries[0]]],
                entry_b: inner[local[p.entries[1]]],
            };
            if sep.crossing.contains(&usize::MAX)
                || sep.entry_a == usize::MAX
                || sep.entry_b == usize::MAX
            {
                return fail(
                    "crossing pair",
                    format!("tree node {i}: crossing pair outside its part"),
                );
            }
            verify_strong_separator(&part.graph, &sep).map_err(|v| Violation {
                clause: v.clause,
                detail: format!("tree node {i}: {}", v.detail),
            })?;
            components.push(to_local(&comp));
            stack.push((p.children[0], xa));
            stack.push((p.children[1], yb));
        }
        let cp = ComponentPartition {
            z: to_local(&node.z),
            components,
        };
        verify_component_partition(&sub.graph, &cp).map_err(|v| Violation {
            clause: v.clause,
            detail: format!("tree node {i}: {}", v.detail),
        })?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::buds::Bud;
    use crate::decomposition::{find_weak_separator, WeakOutcome};
    use crate::oracle::fixtures::{f1, f1_nodes::*};

    fn f1_separator() -> WeakSeparator {
        match find_weak_separator(&f1()).unwrap() {
            WeakOutcome::Separator(s) => s,
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn f1_separator_verifies() {
        let sep = f1_separator();
        verify_certificate(&f1(), &Certificate::WeakSeparator(sep)).unwrap();
    }

    #[test]
    fn extra_arc_makes_second_crossing_pair() {
        let mut pairs = f1().declared_pairs();
        pairs.push((A, B));
        let g = SkewGraph::from_arc_pairs(4, &pairs).unwrap();
        // Appending a pair keeps the ids of the original arcs.
        let sep = f1_separator();
        let v = verify_weak_separator(&g, &sep).unwrap_err();
        assert_eq!(v.clause, "second crossing pair");
    }

    #[test]
    fn barrier_with_arc_into_m() {
        // S = {p}, M = {q, q'}, and p -> q injected.
        let g = SkewGraph::from_arc_pairs(2, &[(0, 2)]).unwrap();
        let b = Barrier {
            s: vec![0],
            m: vec![2, 3],
            buds: vec![],
        };
        assert_eq!(verify_barrier(&g, &b).unwrap_err().clause, "S→S′∪M arc");
        let ok = SkewGraph::from_arc_pairs(2, &[]).unwrap();
        verify_barrier(&ok, &b).unwrap();
    }

    #[test]
    fn barrier_of_f4() {
        let g = crate::oracle::fixtures::f4();
        let b = Barrier {
            s: vec![0],
            m: vec![],
            buds: vec![Bud {
                members: vec![2, 3, 4, 5],
                base_arc: g.out_arcs(0)[0],
            }],
        };
        verify_barrier(&g, &b).unwrap();
        let extra = SkewGraph::from_arc_pairs(3, &[(0, 2), (2, 4), (4, 3), (0, 4)]).unwrap();
        assert_eq!(
            verify_barrier(&extra, &b).unwrap_err().clause,
            "S→bud arc other than the base arc"
        );
    }

    #[test]
    fn tampered_trees_are_rejected() {
        let g = f1();
        let d = crate::decomposition::decompose(&g).unwrap().tree().unwrap();
        verify_weak_decomposition(&g, &d).unwrap();
        // Moving a leaf node to the root breaks its Z side.
        let mut bad = d.clone();
        let leaf = bad.nodes[bad.root].split.unwrap().children[0];
        let x = bad.nodes[leaf].z.pop().unwrap();
        bad.nodes[bad.root].z.push(mate(x));
        assert!(verify_weak_decomposition(&g, &bad).is_err());
        let mut bad = d;
        bad.nodes[bad.root]
            .split
            .as_mut()
            .unwrap()
            .crossing
            .swap(0, 1);
        assert_eq!(
            verify_weak_decomposition(&g, &bad).unwrap_err().clause,
            "crossing pair"
        );
    }
}
