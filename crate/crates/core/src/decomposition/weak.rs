//! Weak decomposition from the traversal: per-bud acyclic barriers turned
//! into a left spine of weak separators.

use super::{
    check_strong_acyclic, topo_order, with_mates, Barrier, Decomposed, StrongAcyclicPartition,
    StrongAcyclicity, WeakSeparator,
};
use crate::acyclicity::{acyclicity_test, Color, TraversalState, Verdict};
use crate::buds::Bud;
use crate::error::{contract, Result};
use crate::graph::{mate, ArcId, NodeId, SkewGraph, Walk};

/// One tree node. `A` and `B` of a split are the node sets of its two
/// subtrees; they are not stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeakNode {
    /// One node of each pair placed here; mates are implied.
    pub z: Vec<NodeId>,
    pub split: Option<Split>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Split {
    /// The crossing arc from `A` to `B`, then its mate.
    pub crossing: [ArcId; 2],
    /// Roots of the `A` and `B` subtrees.
    pub children: [usize; 2],
}

/// Binary decomposition tree kept in an arena.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeakDecomposition {
    pub nodes: Vec<WeakNode>,
    pub root: usize,
}

impl WeakDecomposition {
    pub fn leaf(z: Vec<NodeId>) -> Self {
        WeakDecomposition {
            nodes: vec![WeakNode { z, split: None }],
            root: 0,
        }
    }

    /// Sorted node set of the subtree at `i`, mates included.
    pub fn node_set(&self, i: usize) -> Vec<NodeId> {
        let mut out = Vec::new();
        let mut stack = vec![i];
        while let Some(t) = stack.pop() {
            out.extend_from_slice(&self.nodes[t].z);
            if let Some(s) = &self.nodes[t].split {
                stack.extend(s.children);
            }
        }
        with_mates(&out)
    }

    /// The separator stored at a split node.
    pub fn separator(&self, i: usize) -> Option<WeakSeparator> {
        let s = self.nodes[i].split?;
        let mut z = self.nodes[i].z.clone();
        z.sort_unstable();
        Some(WeakSeparator {
            a: self.node_set(s.children[0]),
            b: self.node_set(s.children[1]),
            z,
            crossing: s.crossing,
        })
    }

    /// Number of levels.
    pub fn depth(&self) -> usize {
        let mut best = 0;
        let mut stack = vec![(self.root, 1)];
        while let Some((t, d)) = stack.pop() {
            best = best.max(d);
            if let Some(s) = &self.nodes[t].split {
                stack.extend(s.children.map(|c| (c, d + 1)));
            }
        }
        best
    }
}

/// Outcome of [`find_weak_separator`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WeakOutcome {
    Separator(WeakSeparator),
    StrongAcyclic(StrongAcyclicPartition),
    Circuit(Walk),
}

/// An element of `W` in a barrier: a node of `S` or the base of a bud. A
/// bud is attached when the tail of its base arc lies in an earlier element
/// (or its mate does).
#[derive(Clone, Copy, Debug)]
enum Item {
    Simple(NodeId),
    Bud(usize, bool),
}

/// Tree arena that also tracks the leftmost leaf of every root it hands out.
#[derive(Default)]
struct Arena {
    nodes: Vec<WeakNode>,
    leftmost: Vec<usize>,
}

impl Arena {
    fn push(&mut self, node: WeakNode, leftmost: Option<usize>) -> usize {
        let i = self.nodes.len();
        self.nodes.push(node);
        self.leftmost.push(leftmost.unwrap_or(i));
        i
    }

    fn graft(&mut self, other: &WeakDecomposition) -> usize {
        let off = self.nodes.len();
        for n in &other.nodes {
            let node = WeakNode {
                z: n.z.clone(),
                split: n.split.map(|s| Split {
                    crossing: s.crossing,
                    children: s.children.map(|c| c + off),
                }),
            };
            self.push(node, None);
        }
        let root = other.root + off;
        let mut x = root;
        while let Some(s) = self.nodes[x].split {
            x = s.children[0];
        }
        self.leftmost[root] = x;
        root
    }

    /// Tree of the disjoint union of two trees with no arcs between them:
    /// `y` takes the place of the leftmost leaf of `x`, and the two leftmost
    /// leaves are united.
    fn merge(&mut self, x: usize, y: usize) -> usize {
        let (lx, ly) = (self.leftmost[x], self.leftmost[y]);
        if y == ly {
            let z = std::mem::take(&mut self.nodes[ly].z);
            self.nodes[lx].z.extend(z);
            return x;
        }
        let z = std::mem::take(&mut self.nodes[lx].z);
        self.nodes[ly].z.extend(z);
        if x == lx {
            return y;
        }
        self.nodes[lx] = std::mem::replace(
            &mut self.nodes[y],
            WeakNode {
                z: Vec::new(),
                split: None,
            },
        );
        self.leftmost[x] = ly;
        x
    }

    /// Keeps the nodes reachable from `root`, sorted Z parts.
    fn finish(self, root: usize) -> WeakDecomposition {
        const NONE: usize = usize::MAX;
        let mut new_id = vec![NONE; self.nodes.len()];
        let mut order = Vec::new();
        let mut stack = vec![root];
        while let Some(i) = stack.pop() {
            new_id[i] = order.len();
            order.push(i);
            if let Some(s) = &self.nodes[i].split {
                stack.extend(s.children.iter().rev());
            }
        }
        let mut nodes: Vec<Option<WeakNode>> = self.nodes.into_iter().map(Some).collect();
        let out = order
            .iter()
            .map(|&i| {
                let mut n = nodes[i].take().expect("tree node visited once");
                n.z.sort_unstable();
                if let Some(s) = &mut n.split {
                    s.children = s.children.map(|c| new_id[c]);
                }
                n
            })
            .collect();
        WeakDecomposition {
            nodes: out,
            root: 0,
        }
    }
}

/// Builds the spine over `W` listed in topological order. `sub(i)` is the
/// arena index of bud `i`'s decomposition, `base_arc(i)` its base arc.
fn spine(
    arena: &mut Arena,
    order: &[Item],
    sub: impl Fn(usize) -> usize,
    base_arc: impl Fn(usize) -> ArcId,
) -> usize {
    let mut cur: Option<usize> = None;
    let mut pending: Option<(usize, bool)> = None;
    let mut z: Vec<NodeId> = Vec::new();
    let close = |arena: &mut Arena,
                 cur: &mut Option<usize>,
                 pending: Option<(usize, bool)>,
                 z: Vec<NodeId>| {
        let root = match (*cur, pending) {
            (None, None) if z.is_empty() => return,
            (None, None) => arena.push(WeakNode { z, split: None }, None),
            // Nothing before the bud: its tree absorbs the next slice.
            (None, Some((b, _))) => {
                let root = sub(b);
                arena.nodes[root].z.extend(z);
                root
            }
            (Some(c), Some((b, true))) => {
                let a = base_arc(b);
                let node = WeakNode {
                    z,
                    split: Some(Split {
                        crossing: [a, mate(a)],
                        children: [c, sub(b)],
                    }),
                };
                let left = arena.leftmost[c];
                arena.push(node, Some(left))
            }
            // No arc joins the bud to what comes before it.
            (Some(c), Some((b, false))) => {
                let root = arena.merge(c, sub(b));
                arena.nodes[root].z.extend(z);
                root
            }
            (Some(_), None) => unreachable!("slice after the first one without a bud"),
        };
        *cur = Some(root);
    };
    for &item in order {
        match item {
            Item::Simple(x) => z.push(x),
            Item::Bud(b, attached) => {
                close(arena, &mut cur, pending, std::mem::take(&mut z));
                pending = Some((b, attached));
            }
        }
    }
    close(arena, &mut cur, pending, z);
    cur.unwrap_or_else(|| {
        arena.push(
            WeakNode {
                z: Vec::new(),
                split: None,
            },
            None,
        )
    })
}

/// Weak decomposition of `g`, or a regular circuit. Strongly acyclic inputs
/// give a single leaf.
pub fn decompose(g: &SkewGraph) -> Result<Decomposed<WeakDecomposition>> {
    g.check_algorithm_preconditions()?;
    if let StrongAcyclicity::Partition(p) = check_strong_acyclic(g) {
        return Ok(Decomposed::Tree(WeakDecomposition::leaf(p.z)));
    }
    match acyclicity_test(g)? {
        Verdict::RegularCircuit(c) => Ok(Decomposed::Circuit(c)),
        Verdict::WeaklyAcyclic(st) => Ok(Decomposed::Tree(from_traversal(&st))),
    }
}

/// Barrier items of every maximal chain of trims and of the final graph,
/// each list in decreasing finish order.
struct Barriers {
    /// Indexed by chain head record; the last entry is the final barrier.
    items: Vec<Vec<Item>>,
    heads: Vec<usize>,
}

fn collect_barriers(st: &TraversalState<'_>) -> Barriers {
    let cg = st.current();
    let recs = cg.records();
    let n = st.graph().node_count();
    let top = recs.len();

    let mut is_previous = vec![false; recs.len()];
    for r in recs {
        if let Some(p) = r.previous {
            is_previous[p] = true;
        }
    }
    let mut owner = vec![usize::MAX; recs.len()];
    let mut heads = Vec::new();
    for r in 0..recs.len() {
        if is_previous[r] {
            continue;
        }
        heads.push(r);
        let mut c = Some(r);
        while let Some(x) = c {
            owner[x] = r;
            c = recs[x].previous;
        }
    }

    // Every finish stamp belongs to exactly one barrier item.
    let max_f = (0..n).map(|x| st.finish(x)).max().unwrap_or(0) as usize;
    let mut slot: Vec<Option<(usize, Item)>> = vec![None; max_f + 1];
    for (r, rec) in recs.iter().enumerate() {
        let b = owner[r];
        for &x in &rec.simple_black {
            slot[st.finish(x) as usize] = Some((b, Item::Simple(x)));
        }
        for &c in &rec.children {
            slot[st.finish(recs[c].base) as usize] = Some((b, Item::Bud(c, true)));
        }
        if rec.parent.is_none() {
            slot[st.finish(rec.base) as usize] = Some((top, Item::Bud(r, true)));
        }
    }
    for x in 0..n {
        if cg.is_simple(x) && st.color(x) == Color::Black {
            slot[st.finish(x) as usize] = Some((top, Item::Simple(x)));
        }
    }
    let mut items = vec![Vec::new(); top + 1];
    for s in slot.into_iter().rev().flatten() {
        items[s.0].push(s.1);
    }
    // The antibase node is a sink of its bud and goes last.
    for &r in &heads {
        items[r].push(Item::Simple(mate(recs[r].base)));
    }

    // Positions inside the owning barrier; a node shares its mate's.
    let mut pos_node = vec![usize::MAX; n];
    let mut pos_bud = vec![usize::MAX; recs.len()];
    for list in &items {
        for (i, it) in list.iter().enumerate() {
            match *it {
                Item::Simple(x) => {
                    pos_node[x] = i;
                    pos_node[mate(x)] = i;
                }
                Item::Bud(c, _) => pos_bud[c] = i,
            }
        }
    }
    let level = |r: Option<usize>| r.map_or(top, |r| owner[r]);
    // Position of the element of barrier `h` containing `t`; `None` for
    // the base node of `h`, which is not in `W`.
    let pos_in = |t: NodeId, h: usize| -> Option<usize> {
        let mut c = level(cg.innermost(t));
        if c == h {
            return (h == top || t != recs[h].base).then_some(pos_node[t]);
        }
        loop {
            let up = level(recs[c].parent);
            if up == h {
                return Some(pos_bud[c]);
            }
            c = up;
        }
    };
    for (h, list) in items.iter_mut().enumerate() {
        for (i, it) in list.iter_mut().enumerate() {
            if let Item::Bud(c, attached) = it {
                let t = st.graph().tail(recs[*c].base_arc);
                *attached = pos_in(t, h).is_some_and(|p| p < i);
            }
        }
    }
    Barriers { items, heads }
}

fn from_traversal(st: &TraversalState<'_>) -> WeakDecomposition {
    let recs = st.current().records();
    let Barriers { items, heads } = collect_barriers(st);
    let mut arena = Arena::default();
    let mut root_of = vec![usize::MAX; recs.len()];
    // Children and previous records always precede their parent.
    for &r in &heads {
        let root = spine(&mut arena, &items[r], |b| root_of[b], |b| recs[b].base_arc);
        root_of[r] = root;
    }
    let root = spine(
        &mut arena,
        &items[recs.len()],
        |b| root_of[b],
        |b| recs[b].base_arc,
    );
    arena.finish(root)
}

/// The acyclic barrier left by the traversal: simple black nodes and the
/// maximal buds, with `M` empty.
pub fn final_barrier(g: &SkewGraph) -> Result<Decomposed<Barrier>> {
    let st = match acyclicity_test(g)? {
        Verdict::RegularCircuit(c) => return Ok(Decomposed::Circuit(c)),
        Verdict::WeaklyAcyclic(st) => st,
    };
    let cg = st.current();
    let s = (0..g.node_count())
        .filter(|&x| cg.is_simple(x) && st.color(x) == Color::Black)
        .collect();
    let buds = cg
        .records()
        .iter()
        .enumerate()
        .filter(|(_, r)| r.parent.is_none())
        .map(|(i, r)| Bud {
            members: cg.preimage(i),
            base_arc: r.base_arc,
        })
        .collect();
    Ok(Decomposed::Tree(Barrier {
        s,
        m: Vec::new(),
        buds,
    }))
}

/// Combines an acyclic barrier with `M = ∅` and decompositions of its buds
/// (`sub[i]` for `barrier.buds[i]`, over the node ids of `g`).
pub fn barrier_to_separators(
    g: &SkewGraph,
    barrier: &Barrier,
    sub: &[WeakDecomposition],
) -> Result<WeakDecomposition> {
    if !barrier.m.is_empty() {
        return Err(contract("barrier has a nonempty M part"));
    }
    if sub.len() != barrier.buds.len() {
        return Err(contract("one decomposition per bud is required"));
    }
    let n = g.node_count();
    const OUT: usize = usize::MAX;
    // W index of S nodes, and bud index of bud members.
    let mut w_of = vec![OUT; n];
    let mut bud_of = vec![OUT; n];
    for (i, &x) in barrier.s.iter().enumerate() {
        w_of[x] = i;
    }
    let ns = barrier.s.len();
    for (i, b) in barrier.buds.iter().enumerate() {
        for &x in &b.members {
            bud_of[x] = i;
        }
    }
    let image = |a: ArcId, end: NodeId, tail: bool| -> usize {
        if w_of[end] != OUT {
            return w_of[end];
        }
        let i = bud_of[end];
        if i == OUT {
            return OUT;
        }
        let base = barrier.buds[i].base_arc;
        let to_base = if tail { a != mate(base) } else { a == base };
        if to_base {
            ns + i
        } else {
            OUT
        }
    };
    let mut arcs = Vec::new();
    for (a, u, v) in g.arcs() {
        if bud_of[u] != OUT && bud_of[u] == bud_of[v] {
            continue;
        }
        let (x, y) = (image(a, u, true), image(a, v, false));
        if x != OUT && y != OUT {
            arcs.push((x, y));
        }
    }
    let order = topo_order(ns + barrier.buds.len(), &arcs)
        .map_err(|_| contract("the contracted W subgraph has a cycle"))?;
    let mut pos = vec![0; order.len()];
    for (i, &w) in order.iter().enumerate() {
        pos[w] = i;
    }
    // Position of the element holding `t` or its mate.
    let pos_of = |t: NodeId| -> Option<usize> {
        if w_of[t] != OUT {
            Some(pos[w_of[t]])
        } else if w_of[mate(t)] != OUT {
            Some(pos[w_of[mate(t)]])
        } else if bud_of[t] != OUT {
            Some(pos[ns + bud_of[t]])
        } else {
            None
        }
    };
    let items: Vec<Item> = order
        .iter()
        .enumerate()
        .map(|(i, &w)| {
            if w < ns {
                Item::Simple(barrier.s[w])
            } else {
                let t = g.tail(barrier.buds[w - ns].base_arc);
                Item::Bud(w - ns, pos_of(t).is_some_and(|p| p < i))
            }
        })
        .collect();
    let mut arena = Arena::default();
    let roots: Vec<usize> = sub.iter().map(|d| arena.graft(d)).collect();
    let root = spine(
        &mut arena,
        &items,
        |b| roots[b],
        |b| barrier.buds[b].base_arc,
    );
    Ok(arena.finish(root))
}

/// Root separator of [`decompose`], or the partition / circuit.
pub fn find_weak_separator(g: &SkewGraph) -> Result<WeakOutcome> {
    Ok(match decompose(g)? {
        Decomposed::Circuit(c) => WeakOutcome::Circuit(c),
        Decomposed::Tree(d) => match d.separator(d.root) {
            Some(sep) => WeakOutcome::Separator(sep),
            None => WeakOutcome::StrongAcyclic(StrongAcyclicPartition {
                z: d.nodes[d.root].z.clone(),
            }),
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposition::verify_weak_decomposition;
    use crate::oracle::fixtures::{f1, f1_nodes::*, f2, f3};

    #[test]
    fn f1_root_separator() {
        let g = f1();
        let WeakOutcome::Separator(sep) = find_weak_separator(&g).unwrap() else {
            panic!("F1 has a separator");
        };
        assert_eq!(sep.a, vec![A, A_, X, X_]);
        assert_eq!(sep.b, vec![B, B_, Y, Y_]);
        assert!(sep.z.is_empty());
        assert_eq!(g.tail(sep.crossing[0]), A_);
        assert_eq!(g.head(sep.crossing[0]), B);
        let d = decompose(&g).unwrap().tree().unwrap();
        let s = d.nodes[d.root].split.unwrap();
        assert!(s.children.iter().all(|&c| d.nodes[c].split.is_none()));
        verify_weak_decomposition(&g, &d).unwrap();
    }

    #[test]
    fn strongly_acyclic_gives_one_leaf() {
        let d = decompose(&f2()).unwrap().tree().unwrap();
        assert_eq!(d.nodes.len(), 1);
        assert_eq!(d.nodes[0].z, vec![1, 3]);
    }

    #[test]
    fn f3_gives_circuit() {
        let Decomposed::Circuit(c) = decompose(&f3()).unwrap() else {
            panic!("F3 is not weakly acyclic");
        };
        assert!(f3().is_regular_circuit(&c));
    }

    #[test]
    fn barrier_without_buds_is_a_leaf() {
        let g = f2();
        let b = Barrier {
            s: vec![1, 2],
            m: vec![],
            buds: vec![],
        };
        let d = barrier_to_separators(&g, &b, &[]).unwrap();
        assert_eq!(
            d.nodes,
            vec![WeakNode {
                z: vec![1, 2],
                split: None
            }]
        );
    }

    #[test]
    fn one_simple_node_and_one_bud() {
        // s -> v -> w -> v': the bud {v, w, w', v'} with base arc s -> v.
        let g = SkewGraph::from_arc_pairs(3, &[(0, 2), (2, 4), (4, 3)]).unwrap();
        let bud = Bud {
            members: vec![2, 3, 4, 5],
            base_arc: g.out_arcs(0)[0],
        };
        let inner = WeakDecomposition::leaf(vec![3, 4]);
        let b = Barrier {
            s: vec![0],
            m: vec![],
            buds: vec![bud],
        };
        let d = barrier_to_separators(&g, &b, &[inner]).unwrap();
        let sep = d.separator(d.root).unwrap();
        assert_eq!(sep.a, vec![0, 1]);
        assert_eq!(sep.b, vec![2, 3, 4, 5]);
        assert!(sep.z.is_empty());
        verify_weak_decomposition(&g, &d).unwrap();
    }

    #[test]
    fn nonempty_m_is_rejected() {
        let b = Barrier {
            s: vec![],
            m: vec![0, 1],
            buds: vec![],
        };
        assert!(barrier_to_separators(&f2(), &b, &[]).is_err());
    }
}
