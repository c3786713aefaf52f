//! Linear-time weak acyclicity test.
//!
//! A depth-first search over node pairs with five colors. Meeting a gray
//! node closes a regular circuit; meeting an antiblack node means the mate
//! of that node is a black descendant, and the forest path down to it
//! together with its mirror image is trimmed as a bud.

use crate::buds::{CurrentGraph, Cursor};
use crate::error::{contract, Result};
use crate::graph::{mate, ArcId, NodeId, SkewGraph, Walk};

const NONE: usize = usize::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Color {
    White,
    Gray,
    Black,
    AntiGray,
    AntiBlack,
}

impl Color {
    pub fn mirror(self) -> Color {
        match self {
            Color::White => Color::White,
            Color::Gray => Color::AntiGray,
            Color::Black => Color::AntiBlack,
            Color::AntiGray => Color::Gray,
            Color::AntiBlack => Color::Black,
        }
    }
}

/// Counters gathered during a run.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Stats {
    pub arcs_scanned: usize,
    pub trims: usize,
    pub dead_discards: usize,
}

#[derive(Clone, Copy, Debug)]
struct Frame {
    node: NodeId,
    cursor: Cursor,
}

/// Search state; after a successful run it carries what the decomposition
/// needs: colors, forest arcs, finish stamps and the trim history.
#[derive(Clone, Debug)]
pub struct TraversalState<'g> {
    cg: CurrentGraph<'g>,
    color: Vec<Color>,
    q: Vec<ArcId>,
    f: Vec<u64>,
    clock: u64,
    stack: Vec<Frame>,
    stats: Stats,
}

/// Outcome of the test.
#[derive(Clone, Debug)]
pub enum Verdict<'g> {
    WeaklyAcyclic(Box<TraversalState<'g>>),
    RegularCircuit(Walk),
}

impl<'g> Verdict<'g> {
    pub fn is_weakly_acyclic(&self) -> bool {
        matches!(self, Verdict::WeaklyAcyclic(_))
    }

    pub fn circuit(&self) -> Option<&Walk> {
        match self {
            Verdict::RegularCircuit(w) => Some(w),
            Verdict::WeaklyAcyclic(_) => None,
        }
    }
}

/// Runs the test. The graph must satisfy the degree and loop properties;
/// arbitrary graphs go through `canonical_preprocess` first.
pub fn acyclicity_test(g: &SkewGraph) -> Result<Verdict<'_>> {
    run(g, false)
}

/// Same as [`acyclicity_test`], but re-checks the structural invariants of
/// the search after every step. Quadratic; meant for tests.
pub fn acyclicity_test_checked(g: &SkewGraph) -> Result<Verdict<'_>> {
    run(g, true)
}

fn run(g: &SkewGraph, checked: bool) -> Result<Verdict<'_>> {
    g.check_algorithm_preconditions()?;
    let mut st = TraversalState::new(g);
    for k in 0..g.pair_count() {
        let (v, w) = (2 * k, 2 * k + 1);
        if st.color[v] != Color::White {
            continue;
        }
        let root = if g.out_degree(v) <= 1 || g.out_degree(w) > 1 {
            v
        } else {
            w
        };
        if let Some(c) = st.visit(root, checked)? {
            return Ok(Verdict::RegularCircuit(c));
        }
    }
    st.stats.dead_discards = st.cg.dead_discards();
    if checked {
        invariants::check_final(&mut st)?;
    }
    Ok(Verdict::WeaklyAcyclic(Box::new(st)))
}

impl<'g> TraversalState<'g> {
    fn new(g: &'g SkewGraph) -> Self {
        let n = g.node_count();
        TraversalState {
            cg: CurrentGraph::new(g),
            color: vec![Color::White; n],
            q: vec![NONE; n],
            f: vec![0; n],
            clock: 0,
            stack: Vec::new(),
            stats: Stats::default(),
        }
    }

    pub fn graph(&self) -> &'g SkewGraph {
        self.cg.base()
    }

    pub fn current(&self) -> &CurrentGraph<'g> {
        &self.cg
    }

    pub fn current_mut(&mut self) -> &mut CurrentGraph<'g> {
        &mut self.cg
    }

    /// Color of a current node.
    pub fn color(&self, x: NodeId) -> Color {
        self.color[x]
    }

    /// Forest arc entering `x`, if any.
    pub fn forest_arc(&self, x: NodeId) -> Option<ArcId> {
        (self.q[x] != NONE).then_some(self.q[x])
    }

    /// Finish stamp of a node that turned black (0 otherwise). Mates carry
    /// no stamp of their own.
    pub fn finish(&self, x: NodeId) -> u64 {
        self.f[x]
    }

    pub fn stats(&self) -> Stats {
        self.stats
    }

    fn paint(&mut self, x: NodeId, c: Color) {
        self.color[x] = c;
        self.color[mate(x)] = c.mirror();
    }

    fn push(&mut self, u: NodeId, q: ArcId) {
        self.paint(u, Color::Gray);
        self.q[u] = q;
        let cursor = self.cg.list_start(u);
        self.stack.push(Frame { node: u, cursor });
    }

    /// Explores from `root`; returns a regular circuit of the base graph if
    /// one is found.
    fn visit(&mut self, root: NodeId, checked: bool) -> Result<Option<Walk>> {
        self.push(root, NONE);
        while let Some(top) = self.stack.last_mut() {
            let u = top.node;
            let mut cursor = top.cursor;
            let next = self.cg.advance(&mut cursor);
            self.stack.last_mut().expect("nonempty").cursor = cursor;
            let Some(a) = next else {
                self.stack.pop();
                self.paint(u, Color::Black);
                self.clock += 1;
                self.f[u] = self.clock;
                if checked {
                    invariants::check_step(self)?;
                }
                continue;
            };
            self.stats.arcs_scanned += 1;
            let Some((t, h)) = self.cg.images(a) else {
                self.cg.note_dead(a);
                continue;
            };
            if t != u {
                continue;
            }
            match self.color[h] {
                Color::White => self.push(h, a),
                Color::Gray => return self.close_circuit(h, a).map(Some),
                Color::AntiBlack => {
                    self.trim_at(u, mate(h), a)?;
                    if checked {
                        invariants::check_step(self)?;
                    }
                }
                Color::Black | Color::AntiGray => {}
            }
        }
        Ok(None)
    }

    fn close_circuit(&self, h: NodeId, a: ArcId) -> Result<Walk> {
        let i = self
            .stack
            .iter()
            .position(|fr| fr.node == h)
            .ok_or_else(|| contract("gray node missing from the search stack"))?;
        let mut arcs: Vec<ArcId> = self.stack[i + 1..]
            .iter()
            .map(|fr| self.q[fr.node])
            .collect();
        arcs.push(a);
        self.cg.restore_all(&arcs)
    }

    /// Trimming case: `u` gray, `w` black with `u -> w'` just scanned.
    fn trim_at(&mut self, u: NodeId, w: NodeId, closing: ArcId) -> Result<()> {
        let mut path = vec![w];
        let mut arcs = Vec::new();
        let mut x = w;
        while x != u {
            let qa = self.q[x];
            if qa == NONE {
                return Err(contract(format!(
                    "trimming case: node {w} is not a descendant of {u}"
                )));
            }
            arcs.push(qa);
            x = self.cg.tail_image(qa);
            path.push(x);
        }
        path.reverse();
        arcs.reverse();
        let base_arc = self.q[u];
        if base_arc == NONE {
            return Err(contract(format!("trimming case at root {u}")));
        }
        self.cg.trim(path, arcs, base_arc, closing)?;
        self.stats.trims += 1;
        Ok(())
    }
}

pub(crate) mod invariants {
    //! Structural checks of the running search, used by the checked mode.

    use super::{Color, TraversalState, NONE};
    use crate::error::{contract, Result};
    use crate::graph::{mate, NodeId};
    use std::collections::{BTreeMap, BTreeSet};

    fn current_nodes(st: &mut TraversalState<'_>) -> Vec<NodeId> {
        let n = st.graph().node_count();
        (0..n).filter(|&x| st.cg.representative(x) == x).collect()
    }

    pub(crate) fn check_step(st: &mut TraversalState<'_>) -> Result<()> {
        let nodes = current_nodes(st);
        let live = st.cg.live_arcs();
        // Color symmetry.
        for &x in &nodes {
            if st.color[mate(x)] != st.color[x].mirror() {
                return Err(contract(format!("color symmetry broken at {x}")));
            }
        }
        // Gray nodes are exactly the stack.
        let gray: BTreeSet<NodeId> = nodes
            .iter()
            .copied()
            .filter(|&x| st.color[x] == Color::Gray)
            .collect();
        let on_stack: BTreeSet<NodeId> = st.stack.iter().map(|fr| fr.node).collect();
        if gray != on_stack || on_stack.len() != st.stack.len() {
            return Err(contract("gray nodes differ from the search path"));
        }
        // Forest arcs connect current forest nodes and avoid mates.
        for &x in &nodes {
            let qa = st.q[x];
            if qa == NONE || !matches!(st.color[x], Color::Gray | Color::Black) {
                continue;
            }
            if st.cg.is_dead(qa) || st.cg.head_image(qa) != x {
                return Err(contract(format!("forest arc into {x} is not live")));
            }
            let t = st.cg.tail_image(qa);
            if !matches!(st.color[t], Color::Gray | Color::Black) {
                return Err(contract(format!(
                    "forest arc into {x} leaves a mate-side node"
                )));
            }
        }
        // Property B.
        for &(a, t, h) in &live {
            if st.color[t] == Color::Black
                && matches!(st.color[h], Color::Gray | Color::White | Color::AntiBlack)
            {
                return Err(contract(format!(
                    "arc {a} leaves black {t} into {:?} {h}",
                    st.color[h]
                )));
            }
        }
        // Property A: black part acyclic.
        let black: Vec<NodeId> = nodes
            .iter()
            .copied()
            .filter(|&x| st.color[x] == Color::Black)
            .collect();
        let black_arcs: Vec<(NodeId, NodeId)> = live
            .iter()
            .filter(|&&(_, t, h)| st.color[t] == Color::Black && st.color[h] == Color::Black)
            .map(|&(_, t, h)| (t, h))
            .collect();
        if !acyclic(&black, &black_arcs) {
            return Err(contract("black subgraph has a cycle"));
        }
        // Lazy lists against the live arc set.
        for &x in &nodes {
            if !st.cg.is_simple(x) && x != base_of(st, x) {
                continue;
            }
            let mut from_list: Vec<_> = st
                .cg
                .list_arcs(x)
                .into_iter()
                .filter(|&a| !st.cg.is_dead(a))
                .collect();
            from_list.retain(|&a| st.cg.tail_image(a) == x);
            from_list.sort_unstable();
            let mut expected: Vec<_> = live.iter().filter(|e| e.1 == x).map(|e| e.0).collect();
            expected.sort_unstable();
            if from_list != expected {
                return Err(contract(format!(
                    "outgoing list of {x} disagrees with live arcs"
                )));
            }
        }
        Ok(())
    }

    fn base_of(st: &mut TraversalState<'_>, x: NodeId) -> NodeId {
        match st.cg.maximal_bud(x) {
            Some(r) => st.cg.records()[r].base,
            None => x,
        }
    }

    fn acyclic(nodes: &[NodeId], arcs: &[(NodeId, NodeId)]) -> bool {
        let mut indeg: BTreeMap<NodeId, usize> = nodes.iter().map(|&x| (x, 0)).collect();
        let mut out: BTreeMap<NodeId, Vec<NodeId>> = BTreeMap::new();
        for &(t, h) in arcs {
            *indeg.get_mut(&h).expect("black head") += 1;
            out.entry(t).or_default().push(h);
        }
        let mut ready: Vec<NodeId> = indeg.iter().filter(|e| *e.1 == 0).map(|e| *e.0).collect();
        let mut seen = 0;
        while let Some(x) = ready.pop() {
            seen += 1;
            for &y in out.get(&x).map(Vec::as_slice).unwrap_or(&[]) {
                let d = indeg.get_mut(&y).expect("black head");
                *d -= 1;
                if *d == 0 {
                    ready.push(y);
                }
            }
        }
        seen == nodes.len()
    }

    pub(crate) fn check_final(st: &mut TraversalState<'_>) -> Result<()> {
        check_step(st)?;
        let nodes = current_nodes(st);
        for &x in &nodes {
            if !matches!(st.color[x], Color::Black | Color::AntiBlack) {
                return Err(contract(format!("node {x} not finished")));
            }
        }
        // Finish stamps order the black part topologically.
        for (a, t, h) in st.cg.live_arcs() {
            if st.color[t] == Color::Black && st.color[h] == Color::Black && st.f[t] <= st.f[h] {
                return Err(contract(format!("arc {a} goes up in finish order")));
            }
        }
        // Laminarity of bud preimages.
        let sets: Vec<BTreeSet<NodeId>> = (0..st.cg.records().len())
            .map(|r| st.cg.preimage(r).into_iter().collect())
            .collect();
        for i in 0..sets.len() {
            for j in i + 1..sets.len() {
                let (a, b) = (&sets[i], &sets[j]);
                let disjoint = a.is_disjoint(b);
                if !disjoint && !a.is_subset(b) && !b.is_subset(a) {
                    return Err(contract(format!("buds {i} and {j} cross")));
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::fixtures::*;
    use crate::oracle::{brute_regular_circuit, generate, GenKind, GenSpec};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn f3_yields_its_two_cycle() {
        let g = f3();
        let v = acyclicity_test_checked(&g).unwrap();
        let c = v.circuit().expect("circuit");
        assert!(g.is_regular_circuit(c));
        assert_eq!(c.len(), 2);
    }

    #[test]
    fn fixtures_without_circuits() {
        for g in [f1(), f2(), f4(), SkewGraph::empty()] {
            assert!(acyclicity_test_checked(&g).unwrap().is_weakly_acyclic());
        }
    }

    #[test]
    fn isolated_pair_scans_nothing() {
        let g = SkewGraph::from_arc_pairs(1, &[]).unwrap();
        let Verdict::WeaklyAcyclic(st) = acyclicity_test(&g).unwrap() else {
            panic!("no arcs, no circuit");
        };
        assert_eq!(st.stats().arcs_scanned, 0);
        assert_eq!(st.color(0), Color::Black);
        assert_eq!(st.color(1), Color::AntiBlack);
    }

    #[test]
    fn precondition_violation_is_reported() {
        // Node 0 gets two in-arcs and two out-arcs.
        let g = SkewGraph::from_arc_pairs(3, &[(2, 0), (4, 0), (0, 2), (0, 4)]).unwrap();
        assert!(acyclicity_test(&g).is_err());
        // Parallel arcs between a node and its mate.
        let g = SkewGraph::from_arc_pairs(1, &[(0, 1)]).unwrap();
        assert!(acyclicity_test(&g).is_err());
    }

    fn random_skew(rng: &mut ChaCha8Rng, pairs: usize, arc_pairs: usize) -> Option<SkewGraph> {
        let n = 2 * pairs;
        let declared: Vec<_> = (0..arc_pairs)
            .map(|_| (rng.gen_range(0..n), rng.gen_range(0..n)))
            .collect();
        let g = SkewGraph::from_arc_pairs(pairs, &declared).ok()?;
        g.check_algorithm_preconditions().ok().map(|_| g)
    }

    #[test]
    fn agrees_with_brute_force_and_keeps_invariants() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut seen = [0usize; 2];
        for _ in 0..4000 {
            let pairs = rng.gen_range(1..=5);
            let arcs = rng.gen_range(0..=10);
            let Some(g) = random_skew(&mut rng, pairs, arcs) else {
                continue;
            };
            let expected = brute_regular_circuit(&g).unwrap().is_some();
            let v = acyclicity_test_checked(&g).unwrap();
            assert_eq!(!v.is_weakly_acyclic(), expected, "{:?}", g.declared_pairs());
            if let Some(c) = v.circuit() {
                assert!(g.is_regular_circuit(c), "{:?} {:?}", g.declared_pairs(), c);
            }
            seen[expected as usize] += 1;
        }
        assert!(seen[0] > 100 && seen[1] > 100, "{seen:?}");
    }

    #[test]
    fn generated_positive_instances() {
        let (mut trims, mut nested) = (0, 0);
        for kind in [
            GenKind::StronglyAcyclic,
            GenKind::WeaklyAcyclicComposed,
            GenKind::StronglyConnectedWeaklyAcyclic,
        ] {
            for seed in 0..40 {
                let g = generate(GenSpec {
                    kind,
                    pairs: 30,
                    arcs: 90,
                    seed,
                })
                .unwrap()
                .into_skew()
                .unwrap();
                let Verdict::WeaklyAcyclic(st) = acyclicity_test_checked(&g).unwrap() else {
                    panic!("{} seed {seed}", kind.name());
                };
                trims += st.stats().trims;
                nested += st
                    .current()
                    .records()
                    .iter()
                    .filter(|r| r.nested().next().is_some())
                    .count();
            }
        }
        assert!(trims > 200 && nested > 20, "{trims} trims, {nested} nested");
        eprintln!("{trims} {nested}");
    }

    #[test]
    fn circuits_restored_through_buds_are_regular() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let (mut circuits, mut small) = (0, 0);
        for seed in 0..1500 {
            let kind = if seed % 2 == 0 {
                GenKind::WeaklyAcyclicComposed
            } else {
                GenKind::StronglyConnectedWeaklyAcyclic
            };
            let (pairs, arcs) = if seed % 3 == 0 { (4, 5) } else { (25, 75) };
            let g = generate(GenSpec {
                kind,
                pairs,
                arcs,
                seed,
            })
            .unwrap()
            .into_skew()
            .unwrap();
            let mut declared = g.declared_pairs();
            let n = g.node_count();
            for _ in 0..rng.gen_range(1..=2) {
                declared.push((rng.gen_range(0..n), rng.gen_range(0..n)));
            }
            let h = SkewGraph::from_arc_pairs(g.pair_count(), &declared).unwrap();
            if h.check_algorithm_preconditions().is_err() {
                continue;
            }
            let v = acyclicity_test_checked(&h)
                .unwrap_or_else(|e| panic!("seed {seed}: {e} {} {declared:?}", h.pair_count()));
            if let Some(c) = v.circuit() {
                assert!(h.is_regular_circuit(c), "seed {seed}: {c:?}");
                circuits += 1;
            }
            if h.arc_count() <= 24 {
                let expected = brute_regular_circuit(&h).unwrap().is_some();
                assert_eq!(!v.is_weakly_acyclic(), expected, "seed {seed}");
                small += 1;
            }
        }
        assert!(circuits > 150 && small > 100, "{circuits} {small}");
    }
}
