//! Component partition and the strong decomposition tree.

use super::weak::{find_weak_separator, WeakOutcome};
use super::{cycle_in, with_mates, Decomposed, StrongSeparator};
use crate::acyclicity::{acyclicity_test, Verdict};
use crate::error::{contract, Result};
use crate::graph::{mate, NodeId, SkewGraph};

/// `Z` plus the self-symmetric strongly connected components, listed in
/// topological order of the condensation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentPartition {
    pub z: Vec<NodeId>,
    pub components: Vec<Vec<NodeId>>,
}

/// Strongly connected components, numbered in topological order of the
/// condensation. Iterative Tarjan.
pub(crate) fn scc(g: &SkewGraph) -> (Vec<usize>, usize) {
    const UNSEEN: usize = usize::MAX;
    let n = g.node_count();
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut comp = vec![UNSEEN; n];
    let mut stack = Vec::new();
    let mut call: Vec<(NodeId, usize)> = Vec::new();
    let mut next = 0;
    let mut count = 0;
    for root in 0..n {
        if index[root] != UNSEEN {
            continue;
        }
        call.push((root, 0));
        index[root] = next;
        low[root] = next;
        next += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(&(v, i)) = call.last() {
            let out = g.out_arcs(v);
            if i < out.len() {
                let w = g.head(out[i]);
                call.last_mut().expect("frame").1 += 1;
                if index[w] == UNSEEN {
                    index[w] = next;
                    low[w] = next;
                    next += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            call.pop();
            if let Some(&(p, _)) = call.last() {
                low[p] = low[p].min(low[v]);
            }
            if low[v] == index[v] {
                loop {
                    let w = stack.pop().expect("tarjan stack");
                    on_stack[w] = false;
                    comp[w] = count;
                    if w == v {
                        break;
                    }
                }
                count += 1;
            }
        }
    }
    // Tarjan emits sinks first.
    for c in &mut comp {
        *c = count - 1 - *c;
    }
    (comp, count)
}

/// Splits a weakly acyclic graph into `Z`, `Z'` and self-symmetric strong
/// components with no arc leaving `Z`. A strong component that is not
/// self-symmetric and not a single loopless node yields a regular circuit.
pub fn component_partition(g: &SkewGraph) -> Decomposed<ComponentPartition> {
    let (comp, count) = scc(g);
    let n = g.node_count();
    let mut members: Vec<Vec<NodeId>> = vec![Vec::new(); count];
    for x in 0..n {
        members[comp[x]].push(x);
    }
    let looped: Vec<bool> = {
        let mut l = vec![false; count];
        for (_, u, v) in g.arcs() {
            if comp[u] == comp[v] {
                l[comp[u]] = true;
            }
        }
        l
    };
    let mut z = Vec::new();
    let mut components = Vec::new();
    for (c, set) in members.iter().enumerate() {
        let x = set[0];
        let cm = comp[mate(x)];
        if cm == c {
            components.push(set.clone());
        } else if looped[c] {
            // No mate arc lies inside a regular component.
            return Decomposed::Circuit(cycle_in(g, set));
        } else if c > cm {
            z.push(x);
        }
    }
    z.sort_unstable();
    Decomposed::Tree(ComponentPartition { z, components })
}

/// The root separator of a strongly connected weakly acyclic graph, with
/// the entry nodes `a` and `b` of the crossing pair `a' -> b`, `b' -> a`.
pub fn find_strong_separator(g: &SkewGraph) -> Result<StrongSeparator> {
    let sep = match find_weak_separator(g)? {
        WeakOutcome::Separator(s) => s,
        WeakOutcome::StrongAcyclic(_) => {
            return Err(contract(
                "no strong separator: the graph is strongly acyclic",
            ))
        }
        WeakOutcome::Circuit(_) => {
            return Err(contract(
                "no strong separator: the graph has a regular circuit",
            ))
        }
    };
    if let Some(&x) = sep.z.first() {
        return Err(contract(format!(
            "no strong separator: node {x} lies in a nonempty Z, so the graph is not strongly connected"
        )));
    }
    let c = sep.crossing[0];
    let out = StrongSeparator {
        entry_a: mate(g.tail(c)),
        entry_b: g.head(c),
        a: sep.a,
        b: sep.b,
        crossing: sep.crossing,
    };
    for (set, entry) in [(&out.a, out.entry_a), (&out.b, out.entry_b)] {
        if let Some(x) = unreached(g, set, entry) {
            return Err(contract(format!(
                "no strong separator: node {x} is not reachable from {entry} inside its side"
            )));
        }
    }
    Ok(out)
}

/// A node of `set` not reachable from `entry` inside `G[set]`. Since `set`
/// is self-symmetric, reaching every node means every node also reaches
/// `entry'`.
pub(crate) fn unreached(g: &SkewGraph, set: &[NodeId], entry: NodeId) -> Option<NodeId> {
    let inside = g.membership(set);
    if !inside[entry] {
        return Some(entry);
    }
    let mut seen = vec![false; g.node_count()];
    seen[entry] = true;
    let mut stack = vec![entry];
    while let Some(x) = stack.pop() {
        for &a in g.out_arcs(x) {
            let y = g.head(a);
            if inside[y] && !seen[y] {
                seen[y] = true;
                stack.push(y);
            }
        }
    }
    set.iter().copied().find(|&x| !seen[x])
}

/// One self-symmetric component of a tree node and its strong separator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrongPart {
    /// `a` and `b`.
    pub entries: [NodeId; 2],
    /// `a' -> b`, then `b' -> a`.
    pub crossing: [usize; 2],
    /// Subtrees for `X = A` and `Y = B`.
    pub children: [usize; 2],
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct StrongNode {
    pub z: Vec<NodeId>,
    pub parts: Vec<StrongPart>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrongDecomposition {
    pub nodes: Vec<StrongNode>,
    pub root: usize,
}

impl StrongDecomposition {
    /// Sorted node set of the subtree at `i`, mates included.
    pub fn node_set(&self, i: usize) -> Vec<NodeId> {
        let mut out = Vec::new();
        let mut stack = vec![i];
        while let Some(t) = stack.pop() {
            out.extend_from_slice(&self.nodes[t].z);
            for p in &self.nodes[t].parts {
                stack.extend(p.children);
            }
        }
        with_mates(&out)
    }
}

/// Alternates [`component_partition`] and [`find_strong_separator`] down to
/// strongly acyclic leaves. O(mn) in the worst case.
pub fn decompose_strong(g: &SkewGraph) -> Result<Decomposed<StrongDecomposition>> {
    g.check_algorithm_preconditions()?;
    if let Verdict::RegularCircuit(c) = acyclicity_test(g)? {
        return Ok(Decomposed::Circuit(c));
    }
    let mut nodes = vec![StrongNode::default()];
    let mut work: Vec<(usize, Vec<NodeId>)> = vec![(0, (0..g.node_count()).collect())];
    while let Some((t, set)) = work.pop() {
        let sub = g.induced(&set)?;
        let cp = component_partition(&sub.graph)
            .tree()
            .ok_or_else(|| contract("regular circuit inside a weakly acyclic graph"))?;
        nodes[t].z = sub.lift_nodes(&cp.z);
        nodes[t].z.sort_unstable();
        for comp in &cp.components {
            let part = sub.graph.induced(comp)?;
            let sep = find_strong_separator(&part.graph)?;
            let lift = |xs: &[NodeId]| -> Vec<NodeId> {
                let mut v: Vec<NodeId> = xs.iter().map(|&x| sub.nodes[part.nodes[x]]).collect();
                v.sort_unstable();
                v
            };
            let children = [nodes.len(), nodes.len() + 1];
            nodes.push(StrongNode::default());
            nodes.push(StrongNode::default());
            nodes[t].parts.push(StrongPart {
                entries: [sep.entry_a, sep.entry_b].map(|x| sub.nodes[part.nodes[x]]),
                crossing: sep.crossing.map(|a| sub.arcs[part.arcs[a]]),
                children,
            });
            work.push((children[0], lift(&sep.a)));
            work.push((children[1], lift(&sep.b)));
        }
    }
    Ok(Decomposed::Tree(StrongDecomposition { nodes, root: 0 }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposition::verify_strong_decomposition;
    use crate::oracle::fixtures::{f1, f1_nodes::*, f2, f3};

    #[test]
    fn f1_is_one_component() {
        let cp = component_partition(&f1()).tree().unwrap();
        assert!(cp.z.is_empty());
        assert_eq!(cp.components, vec![(0..8).collect::<Vec<_>>()]);
    }

    #[test]
    fn isolated_pair_goes_to_z() {
        // F1 plus a fifth pair without arcs.
        let g = SkewGraph::from_arc_pairs(5, &f1().declared_pairs()).unwrap();
        let cp = component_partition(&g).tree().unwrap();
        assert_eq!(cp.components, vec![(0..8).collect::<Vec<_>>()]);
        assert_eq!(cp.z.len(), 1);
        assert!(cp.z[0] == 8 || cp.z[0] == 9);
    }

    #[test]
    fn regular_component_gives_circuit() {
        let g = f3();
        let Decomposed::Circuit(c) = component_partition(&g) else {
            panic!("F3 has a regular strong component");
        };
        assert!(g.is_regular_circuit(&c));
    }

    #[test]
    fn f1_strong_separator() {
        let s = find_strong_separator(&f1()).unwrap();
        assert_eq!(s.a, vec![A, A_, X, X_]);
        assert_eq!(s.b, vec![B, B_, Y, Y_]);
        assert_eq!((s.entry_a, s.entry_b), (A, B));
    }

    #[test]
    fn lone_crossing_pair_is_not_a_strong_separator() {
        // a' -> b only: A = {a, a'} has no inner arcs.
        let g = SkewGraph::from_arc_pairs(2, &[(1, 2)]).unwrap();
        assert!(find_strong_separator(&g).is_err());
    }

    #[test]
    fn f1_strong_tree() {
        let g = f1();
        let d = decompose_strong(&g).unwrap().tree().unwrap();
        let root = &d.nodes[d.root];
        assert!(root.z.is_empty());
        assert_eq!(root.parts.len(), 1);
        let [x, y] = root.parts[0].children;
        assert_eq!(d.node_set(x), vec![A, A_, X, X_]);
        assert_eq!(d.node_set(y), vec![B, B_, Y, Y_]);
        assert!(d.nodes[x].parts.is_empty() && d.nodes[y].parts.is_empty());
        verify_strong_decomposition(&g, &d).unwrap();
    }

    #[test]
    fn strong_tree_of_acyclic_and_cyclic_inputs() {
        let d = decompose_strong(&f2()).unwrap().tree().unwrap();
        assert_eq!(d.nodes.len(), 1);
        assert!(matches!(
            decompose_strong(&f3()).unwrap(),
            Decomposed::Circuit(_)
        ));
    }
}
