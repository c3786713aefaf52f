//! Buds, implicit bud trimming, and restoration of regular paths through a
//! trimming history.
//!
//! The current graph is never rebuilt. Every maximal trimmed bud is a
//! union-find set of base-graph nodes carrying its base node and base arc;
//! arc images are computed on the fly:
//!
//! * an arc leaving a bud set leaves its base node, except the antibase arc,
//!   which leaves the antibase node;
//! * an arc entering a bud set enters its antibase node, except the base arc,
//!   which enters the base node;
//! * an arc with both ends in one bud set is dead.

use crate::error::{contract, Result};
use crate::graph::{mate, ArcId, NodeId, SkewGraph, Walk, WalkKind};

const NONE: usize = usize::MAX;

/// A bud `(V, a)` given by its node set and base arc.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bud {
    pub members: Vec<NodeId>,
    pub base_arc: ArcId,
}

impl Bud {
    pub fn base_node(&self, g: &SkewGraph) -> NodeId {
        g.head(self.base_arc)
    }
}

/// One trimming performed by the traversal: an elementary bud made of the
/// forest path `path[0] -> ... -> path[k]` and its mate, closed by the arc
/// `path[0] -> mate(path[k])`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrimRecord {
    /// Base node, `path[0]`.
    pub base: NodeId,
    pub base_arc: ArcId,
    /// Current nodes of the forest path at trim time.
    pub path: Vec<NodeId>,
    /// `path_arcs[i]` is the forest arc entering `path[i + 1]`.
    pub path_arcs: Vec<ArcId>,
    pub closing_arc: ArcId,
    /// Simple black nodes of the path (absorbed for the first time).
    pub simple_black: Vec<NodeId>,
    /// Maximal buds on the path (other than the base) absorbed by this trim.
    pub children: Vec<usize>,
    /// The bud previously maximal at the base node, when the base was complex.
    pub previous: Option<usize>,
    /// The record that later absorbed this one.
    pub parent: Option<usize>,
}

impl TrimRecord {
    /// Current nodes of the bud at trim time: the path and its mate.
    pub fn current_members(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.path.iter().flat_map(|&x| [x, mate(x)])
    }

    /// Child buds of this record in the laminar family.
    pub fn nested(&self) -> impl Iterator<Item = usize> + '_ {
        self.previous
            .into_iter()
            .chain(self.children.iter().copied())
    }
}

#[derive(Clone, Debug)]
struct UnionFind {
    parent: Vec<usize>,
    size: Vec<u32>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    #[inline]
    fn find(&mut self, x: usize) -> usize {
        if self.parent[x] == x {
            return x;
        }
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut y = x;
        while self.parent[y] != r {
            let next = self.parent[y];
            self.parent[y] = r;
            y = next;
        }
        r
    }

    fn find_readonly(&self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) -> usize {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return ra;
        }
        let (big, small) = if self.size[ra] >= self.size[rb] {
            (ra, rb)
        } else {
            (rb, ra)
        };
        self.parent[small] = big;
        self.size[big] += self.size[small];
        big
    }
}

/// Lazily trimmed view of a base graph.
#[derive(Clone, Debug)]
pub struct CurrentGraph<'g> {
    base: &'g SkewGraph,
    uf: UnionFind,
    /// Per union-find root: the record of the maximal bud, or `NONE`.
    set_record: Vec<usize>,
    /// Side of a node inside every bud containing it: 0 = base side.
    side: Vec<u8>,
    /// First record that absorbed a node, or `NONE`.
    innermost: Vec<usize>,
    /// Segment lists: one segment per base node (its outgoing arcs).
    seg_next: Vec<usize>,
    list_head: Vec<usize>,
    list_tail: Vec<usize>,
    records: Vec<TrimRecord>,
    dead_seen: Vec<bool>,
    dead_discards: usize,
}

impl<'g> CurrentGraph<'g> {
    pub fn new(base: &'g SkewGraph) -> Self {
        let n = base.node_count();
        CurrentGraph {
            base,
            uf: UnionFind::new(n),
            set_record: vec![NONE; n],
            side: vec![0; n],
            innermost: vec![NONE; n],
            seg_next: vec![NONE; n],
            list_head: (0..n).collect(),
            list_tail: (0..n).collect(),
            records: Vec::new(),
            dead_seen: vec![false; base.arc_count()],
            dead_discards: 0,
        }
    }

    pub fn base(&self) -> &'g SkewGraph {
        self.base
    }

    pub fn records(&self) -> &[TrimRecord] {
        &self.records
    }

    /// Number of arcs discarded as dead while scanning.
    pub fn dead_discards(&self) -> usize {
        self.dead_discards
    }

    fn record_of(&mut self, x: NodeId) -> Option<usize> {
        let r = self.uf.find(x);
        let rec = self.set_record[r];
        (rec != NONE).then_some(rec)
    }

    fn record_of_ro(&self, x: NodeId) -> Option<usize> {
        let rec = self.set_record[self.uf.find_readonly(x)];
        (rec != NONE).then_some(rec)
    }

    /// The current node standing for base node `x`.
    pub fn representative(&mut self, x: NodeId) -> NodeId {
        match self.record_of(x) {
            None => x,
            Some(rec) => {
                let b = self.records[rec].base;
                if self.side[x] == 0 {
                    b
                } else {
                    mate(b)
                }
            }
        }
    }

    /// True iff `x` is not inside any trimmed bud.
    pub fn is_simple(&self, x: NodeId) -> bool {
        self.record_of_ro(x).is_none()
    }

    /// The first record that absorbed `x`.
    pub(crate) fn innermost(&self, x: NodeId) -> Option<usize> {
        (self.innermost[x] != NONE).then_some(self.innermost[x])
    }

    /// The maximal trimmed bud record containing `x`.
    pub fn maximal_bud(&self, x: NodeId) -> Option<usize> {
        self.record_of_ro(x)
    }

    pub fn tail_image(&mut self, a: ArcId) -> NodeId {
        let t = self.base.tail(a);
        match self.record_of(t) {
            None => t,
            Some(rec) => {
                let r = &self.records[rec];
                if a == mate(r.base_arc) {
                    mate(r.base)
                } else {
                    r.base
                }
            }
        }
    }

    pub fn head_image(&mut self, a: ArcId) -> NodeId {
        let h = self.base.head(a);
        match self.record_of(h) {
            None => h,
            Some(rec) => {
                let r = &self.records[rec];
                if a == r.base_arc {
                    r.base
                } else {
                    mate(r.base)
                }
            }
        }
    }

    /// Tail and head images of `a`, or `None` if `a` is dead. One lookup
    /// per endpoint; the scan loop calls this for every arc.
    #[inline]
    pub(crate) fn images(&mut self, a: ArcId) -> Option<(NodeId, NodeId)> {
        let (t, h) = (self.base.tail(a), self.base.head(a));
        let (rt, rh) = (self.uf.find(t), self.uf.find(h));
        let (ct, ch) = (self.set_record[rt], self.set_record[rh]);
        if ct != NONE && rt == rh {
            return None;
        }
        let ti = if ct == NONE {
            t
        } else if a == mate(self.records[ct].base_arc) {
            mate(self.records[ct].base)
        } else {
            self.records[ct].base
        };
        let hi = if ch == NONE {
            h
        } else if a == self.records[ch].base_arc {
            self.records[ch].base
        } else {
            mate(self.records[ch].base)
        };
        Some((ti, hi))
    }

    pub fn is_dead(&mut self, a: ArcId) -> bool {
        let (t, h) = (self.base.tail(a), self.base.head(a));
        let rt = self.uf.find(t);
        self.set_record[rt] != NONE && rt == self.uf.find(h)
    }

    /// Records that a scan discarded `a` as dead.
    pub(crate) fn note_dead(&mut self, a: ArcId) {
        debug_assert!(!self.dead_seen[a], "arc {a} discarded as dead twice");
        self.dead_seen[a] = true;
        self.dead_discards += 1;
    }

    /// Live arcs as `(arc, tail image, head image)`.
    pub fn live_arcs(&mut self) -> Vec<(ArcId, NodeId, NodeId)> {
        (0..self.base.arc_count())
            .filter_map(|a| {
                if self.is_dead(a) {
                    None
                } else {
                    Some((a, self.tail_image(a), self.head_image(a)))
                }
            })
            .collect()
    }

    /// Arcs stored in the concatenated list of current node `c`.
    pub fn list_arcs(&self, c: NodeId) -> Vec<ArcId> {
        let mut out = Vec::new();
        let mut s = self.list_head[c];
        while s != NONE {
            out.extend_from_slice(self.base.out_arcs(s));
            s = self.seg_next[s];
        }
        out
    }

    pub(crate) fn list_start(&self, c: NodeId) -> Cursor {
        let s = self.list_head[c];
        Cursor {
            seg: s,
            pos: self.base.out_range(s).0,
        }
    }

    pub(crate) fn advance(&self, cur: &mut Cursor) -> Option<ArcId> {
        loop {
            let (_, end) = self.base.out_range(cur.seg);
            if cur.pos < end {
                let a = self.base.out_list()[cur.pos];
                cur.pos += 1;
                return Some(a);
            }
            let next = self.seg_next[cur.seg];
            if next == NONE {
                return None;
            }
            cur.seg = next;
            cur.pos = self.base.out_range(next).0;
        }
    }

    fn prepend_list(&mut self, target: NodeId, src: NodeId) {
        let (h, t) = (self.list_head[src], self.list_tail[src]);
        self.seg_next[t] = self.list_head[target];
        self.list_head[target] = h;
    }

    fn append_list(&mut self, target: NodeId, src: NodeId) {
        let (h, t) = (self.list_head[src], self.list_tail[src]);
        let tail = self.list_tail[target];
        self.seg_next[tail] = h;
        self.list_tail[target] = t;
    }

    /// Trims the elementary bud formed by forest path `path` (current nodes,
    /// base first), its forest arcs, the base arc and the closing arc
    /// `path[0] -> mate(path[k])`. Returns the new record id.
    ///
    /// Lists of path nodes (already scanned) are put in front of the base
    /// node's list; lists of the never-scanned mate side go behind it, so an
    /// in-progress cursor at the base only meets the new arcs.
    pub fn trim(
        &mut self,
        path: Vec<NodeId>,
        path_arcs: Vec<ArcId>,
        base_arc: ArcId,
        closing_arc: ArcId,
    ) -> Result<usize> {
        if path.len() < 2 || path_arcs.len() + 1 != path.len() {
            return Err(contract("trim: malformed bud path"));
        }
        let u = path[0];
        let id = self.records.len();
        let previous = self.record_of(u);
        let mut simple_black = Vec::new();
        let mut children = Vec::new();
        for &x in &path[1..] {
            match self.record_of(x) {
                Some(rec) => children.push(rec),
                None => simple_black.push(x),
            }
        }
        // Lists.
        for &x in &path[1..] {
            self.prepend_list(u, x);
        }
        for &x in &path[1..] {
            if self.record_of(x).is_none() {
                self.append_list(u, mate(x));
            }
        }
        if previous.is_none() {
            self.append_list(u, mate(u));
        }
        // Sides and first absorption for simple members.
        for (i, &x) in path.iter().enumerate() {
            if (i > 0 || previous.is_none()) && self.record_of(x).is_none() {
                self.side[x] = 0;
                self.side[mate(x)] = 1;
                self.innermost[x] = id;
                self.innermost[mate(x)] = id;
            }
        }
        for &rec in previous.iter().chain(children.iter()) {
            self.records[rec].parent = Some(id);
        }
        // Union.
        let mut root = self.uf.find(u);
        for &x in &path {
            for y in [x, mate(x)] {
                root = self.uf.union(root, y);
            }
        }
        self.set_record[root] = id;
        self.records.push(TrimRecord {
            base: u,
            base_arc,
            path,
            path_arcs,
            closing_arc,
            simple_black,
            children,
            previous,
            parent: None,
        });
        Ok(id)
    }

    /// Base-graph node set of a record's bud.
    pub fn preimage(&self, rec: usize) -> Vec<NodeId> {
        let mut out = Vec::new();
        let mut stack = vec![rec];
        while let Some(r) = stack.pop() {
            let record = &self.records[r];
            for x in record.current_members() {
                if self.innermost[x] == r {
                    out.push(x);
                }
            }
            stack.extend(record.nested());
        }
        out.sort_unstable();
        out
    }

    /// The bud that is maximal at level `level` (`None` = the final graph)
    /// and contains `x`, or `None` if `x` is simple at that level.
    fn bud_at_level(&self, x: NodeId, level: Option<usize>) -> Option<usize> {
        let mut r = self.innermost[x];
        if r == NONE || Some(r) == level {
            return None;
        }
        loop {
            let p = self.records[r].parent;
            if p == level {
                return Some(r);
            }
            r = p?;
        }
    }

    /// Regular connector inside the bud of `rec` (as seen at its trim time)
    /// from the base node to current node `c`.
    fn connector(&self, rec: usize, c: NodeId) -> Result<Vec<ArcId>> {
        let r = &self.records[rec];
        if let Some(i) = r.path.iter().position(|&x| x == c) {
            return Ok(r.path_arcs[..i].to_vec());
        }
        if let Some(i) = r.path.iter().position(|&x| mate(x) == c) {
            let mut arcs = vec![r.closing_arc];
            arcs.extend(r.path_arcs[i..].iter().rev().map(|&a| mate(a)));
            return Ok(arcs);
        }
        Err(contract(format!("connector: node {c} is not in bud {rec}")))
    }

    /// Undoes a single trimming on a walk given by its arcs: every junction
    /// inside `rec`'s bud (as a current node right after `rec`) gets the
    /// connector spliced in. Junctions inside older buds are left alone.
    pub fn restore_path(&self, rec: usize, arcs: &[ArcId], closed: bool) -> Result<Vec<ArcId>> {
        let level = self.records[rec].parent;
        let g = self.base;
        let k = arcs.len();
        let mut out = Vec::with_capacity(k);
        for i in 0..k {
            out.push(arcs[i]);
            let next = match (i + 1 < k, closed) {
                (true, _) => arcs[i + 1],
                (false, true) => arcs[0],
                (false, false) => break,
            };
            let (y, z) = (g.head(arcs[i]), g.tail(next));
            if y == z || self.bud_at_level(y, level) != Some(rec) {
                continue;
            }
            let r = &self.records[rec];
            if arcs[i] == r.base_arc {
                out.extend(self.connector(rec, self.current_at(rec, z, next))?);
            } else if next == mate(r.base_arc) {
                let c = self.current_at(rec, mate(y), mate(arcs[i]));
                out.extend(self.connector(rec, c)?.into_iter().rev().map(mate));
            } else {
                return Err(avoids(y, z, rec));
            }
        }
        Ok(out)
    }

    /// The current node, just before `rec` was trimmed, that `leave` starts
    /// from, given that its tail is `z`.
    fn current_at(&self, rec: usize, z: NodeId, leave: ArcId) -> NodeId {
        match self.bud_at_level(z, Some(rec)) {
            None => z,
            Some(child) => {
                let r = &self.records[child];
                if leave == mate(r.base_arc) {
                    mate(r.base)
                } else {
                    r.base
                }
            }
        }
    }

    /// Expands a closed walk of the final current graph (given by base arcs,
    /// consecutive arcs meeting at the same current node) into a walk of the
    /// base graph by undoing every trimming.
    pub fn restore_all(&self, arcs: &[ArcId]) -> Result<Walk> {
        if arcs.is_empty() {
            return Err(contract("restore_all: empty circuit"));
        }
        let g = self.base;
        let k = arcs.len();
        let mut stack: Vec<Item> = Vec::new();
        for i in (0..k).rev() {
            let next = arcs[(i + 1) % k];
            stack.push(Item::Join(Join {
                from: g.head(arcs[i]),
                to: g.tail(next),
                enter: arcs[i],
                leave: next,
                level: None,
            }));
            stack.push(Item::Arc(arcs[i]));
        }
        let mut out = Vec::new();
        while let Some(item) = stack.pop() {
            match item {
                Item::Arc(a) => out.push(a),
                Item::Join(j) => self.expand_join(j, &mut stack)?,
            }
        }
        Ok(Walk::from_arcs(g, g.tail(out[0]), out, WalkKind::Cycle))
    }

    /// Replaces a junction by the connector through the bud that is maximal
    /// at the junction's level, pushing the pieces on `stack` in order.
    fn expand_join(&self, j: Join, stack: &mut Vec<Item>) -> Result<()> {
        if j.from == j.to {
            return Ok(());
        }
        let bud = self.bud_at_level(j.from, j.level).ok_or_else(|| {
            contract(format!(
                "restore: nodes {} and {} do not meet",
                j.from, j.to
            ))
        })?;
        let r = &self.records[bud];
        let (target, leave, mirror) = if j.enter == r.base_arc {
            (j.to, j.leave, false)
        } else if j.leave == mate(r.base_arc) {
            (mate(j.from), mate(j.enter), true)
        } else {
            return Err(avoids(j.from, j.to, bud));
        };
        let g = self.base;
        let q = self.connector(bud, self.current_at(bud, target, leave))?;
        let level = Some(bud);
        let mut items = Vec::with_capacity(2 * q.len() + 1);
        let (mut at, mut enter) = (r.base, r.base_arc);
        for &a in &q {
            items.push(Item::Join(Join {
                from: at,
                to: g.tail(a),
                enter,
                leave: a,
                level,
            }));
            items.push(Item::Arc(a));
            at = g.head(a);
            enter = a;
        }
        items.push(Item::Join(Join {
            from: at,
            to: target,
            enter,
            leave,
            level,
        }));
        if mirror {
            for it in items.iter_mut() {
                *it = match *it {
                    Item::Arc(a) => Item::Arc(mate(a)),
                    Item::Join(j) => Item::Join(Join {
                        from: mate(j.to),
                        to: mate(j.from),
                        enter: mate(j.leave),
                        leave: mate(j.enter),
                        level: j.level,
                    }),
                };
            }
            stack.extend(items);
        } else {
            stack.extend(items.into_iter().rev());
        }
        Ok(())
    }
}

fn avoids(y: NodeId, z: NodeId, bud: usize) -> crate::error::Error {
    contract(format!(
        "restore: junction {y} -> {z} avoids base and antibase arcs of bud {bud}"
    ))
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct Cursor {
    seg: usize,
    pos: usize,
}

/// The walk reaches base-graph node `from` by arc `enter` and goes on from
/// `to` by arc `leave`; both nodes lie in one current node at `level`
/// (`None` = the final graph).
#[derive(Clone, Copy, Debug)]
struct Join {
    from: NodeId,
    to: NodeId,
    enter: ArcId,
    leave: ArcId,
    level: Option<usize>,
}

#[derive(Clone, Copy, Debug)]
enum Item {
    Arc(ArcId),
    Join(Join),
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::acyclicity::{acyclicity_test, Verdict};
    use crate::oracle::fixtures::f4;
    use crate::oracle::{explicit_trim, generate, GenKind, GenSpec};
    use std::collections::BTreeSet;

    // F4 names: s = 0, v = 2, w = 4; arcs s->v = 0, v->w = 2, w->v' = 4.
    fn trim_f4(cg: &mut CurrentGraph<'_>) -> usize {
        cg.trim(vec![2, 4], vec![2], 0, 5).unwrap()
    }

    #[test]
    fn nothing_trimmed_means_identity() {
        let g = f4();
        let mut cg = CurrentGraph::new(&g);
        for x in 0..g.node_count() {
            assert_eq!(cg.representative(x), x);
        }
        assert_eq!(cg.live_arcs().len(), g.arc_count());
    }

    #[test]
    fn f4_trim_leaves_border_arcs() {
        let g = f4();
        let mut cg = CurrentGraph::new(&g);
        trim_f4(&mut cg);
        assert_eq!(cg.live_arcs(), vec![(0, 0, 2), (1, 3, 1)]);
        assert_eq!(cg.representative(4), 2);
        assert_eq!(cg.representative(5), 3);
        // The contracted base node has in-degree 1 again.
        let into_base = cg.live_arcs().iter().filter(|e| e.2 == 2).count();
        assert_eq!(into_base, 1);
    }

    #[test]
    fn restore_splices_connector() {
        // F4 plus exits w -> t and v' -> t, with t = 6.
        let g = SkewGraph::from_arc_pairs(4, &[(0, 2), (2, 4), (4, 3), (4, 6), (3, 6)]).unwrap();
        let mut cg = CurrentGraph::new(&g);
        let rec = cg.trim(vec![2, 4], vec![2], 0, 5).unwrap();
        assert_eq!(cg.tail_image(6), 2);
        assert_eq!(cg.restore_path(rec, &[0, 6], false).unwrap(), vec![0, 2, 6]);
        // Through v': v -> w' -> v' -> t.
        let arcs = cg.restore_path(rec, &[0, 8], false).unwrap();
        assert_eq!(arcs, vec![0, 5, 3, 8]);
        let w = Walk::from_arcs(&g, 0, arcs, WalkKind::Open);
        assert!(g.is_walk(&w) && crate::graph::is_regular(&g, &w));
        // A path avoiding the bud is unchanged.
        assert_eq!(cg.restore_path(rec, &[1], false).unwrap(), vec![1]);
    }

    fn weakly_acyclic_runs() -> Vec<SkewGraph> {
        let mut out = Vec::new();
        for seed in 0..300 {
            let kind = [
                GenKind::WeaklyAcyclicComposed,
                GenKind::StronglyConnectedWeaklyAcyclic,
            ][seed % 2];
            let spec = GenSpec {
                kind,
                pairs: 8,
                arcs: 10,
                seed: seed as u64,
            };
            out.push(generate(spec).unwrap().into_skew().unwrap());
        }
        out
    }

    #[test]
    fn mate_coherence_and_laminarity() {
        for g in weakly_acyclic_runs() {
            let Verdict::WeaklyAcyclic(mut st) = acyclicity_test(&g).unwrap() else {
                panic!("generated instance has a circuit");
            };
            let cg = st.current_mut();
            for x in 0..g.node_count() {
                assert_eq!(cg.representative(mate(x)), mate(cg.representative(x)));
            }
            let sets: Vec<BTreeSet<NodeId>> = (0..cg.records().len())
                .map(|r| cg.preimage(r).into_iter().collect())
                .collect();
            for a in &sets {
                assert!(a.iter().all(|&x| a.contains(&mate(x))));
                for b in &sets {
                    assert!(a.is_disjoint(b) || a.is_subset(b) || b.is_subset(a));
                }
            }
        }
    }

    /// Replays a run's trims on a fresh view and compares the live arcs with
    /// a literal rebuild after every step.
    #[test]
    fn lazy_trims_match_explicit_rebuilds() {
        let mut checked = 0;
        for g in weakly_acyclic_runs() {
            let Verdict::WeaklyAcyclic(st) = acyclicity_test(&g).unwrap() else {
                panic!("generated instance has a circuit");
            };
            let records = st.current().records().to_vec();
            let mut cg = CurrentGraph::new(&g);
            let mut explicit = g.clone();
            let mut node_map: Vec<Option<NodeId>> = (0..g.node_count()).map(Some).collect();
            let mut arc_map: Vec<Option<ArcId>> = (0..g.arc_count()).map(Some).collect();
            for r in &records {
                let members: Vec<NodeId> = r
                    .current_members()
                    .map(|x| node_map[x].expect("current node survives"))
                    .collect();
                let bud = Bud {
                    members,
                    base_arc: arc_map[r.base_arc].expect("base arc is live"),
                };
                let t = explicit_trim(&explicit, &bud).unwrap();
                cg.trim(
                    r.path.clone(),
                    r.path_arcs.clone(),
                    r.base_arc,
                    r.closing_arc,
                )
                .unwrap();
                for m in node_map.iter_mut() {
                    *m = m.and_then(|x| t.node_map[x]);
                }
                for m in arc_map.iter_mut() {
                    *m = m.and_then(|a| t.arc_map[a]);
                }
                explicit = t.graph;
                let mut lazy: Vec<(ArcId, NodeId, NodeId)> = cg
                    .live_arcs()
                    .into_iter()
                    .map(|(a, u, v)| {
                        (
                            arc_map[a].unwrap(),
                            node_map[u].unwrap(),
                            node_map[v].unwrap(),
                        )
                    })
                    .collect();
                lazy.sort_unstable();
                let want: Vec<_> = explicit.arcs().collect();
                assert_eq!(lazy, want);
                checked += 1;
            }
        }
        assert!(checked > 50, "{checked}");
    }
}
