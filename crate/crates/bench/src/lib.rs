//! Benchmark inputs shared by the criterion targets.

use skewcycle::oracle::{generate, GenKind, GenSpec};
use skewcycle::SkewGraph;

/// Sizes benchmarked, as node counts.
pub const SIZES: [usize; 3] = [1_000, 10_000, 100_000];

/// A weakly acyclic composed instance with `nodes` nodes and about four
/// arcs per node.
pub fn composed(nodes: usize, seed: u64) -> SkewGraph {
    let spec = GenSpec {
        kind: GenKind::WeaklyAcyclicComposed,
        pairs: nodes / 2,
        arcs: 2 * nodes,
        seed,
    };
    generate(spec)
        .and_then(|i| {
            i.into_skew()
                .ok_or_else(|| skewcycle::Error::Contract("not a skew graph".into()))
        })
        .expect("composed instance")
}

/// A random bidirected instance preprocessed into a skew graph; usually has
/// a circuit, so the test stops early.
pub fn random(nodes: usize, seed: u64) -> SkewGraph {
    let spec = GenSpec {
        kind: GenKind::RandomBidirected,
        pairs: nodes,
        arcs: 2 * nodes,
        seed,
    };
    let bg = generate(spec)
        .expect("random instance")
        .into_bidirected()
        .expect("bidirected");
    skewcycle::canonical_preprocess(&bg).expect("preprocess").0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inputs_are_well_formed() {
        let g = composed(1_000, 1);
        assert_eq!(g.node_count(), 1_000);
        assert!(g.check_algorithm_preconditions().is_ok());
        assert!(random(200, 1).check_algorithm_preconditions().is_ok());
    }
}
