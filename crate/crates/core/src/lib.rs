pub mod acyclicity;
pub mod applications;
pub mod buds;
pub mod decomposition;
pub mod error;
pub mod graph;
pub mod oracle;
pub mod reductions;

pub use acyclicity::{
    acyclicity_test, acyclicity_test_checked, Color, Stats, TraversalState, Verdict,
};
pub use applications::{unique_matching, verify_matching, MatchingInstance, MatchingVerdict};
pub use buds::{Bud, CurrentGraph, TrimRecord};
pub use decomposition::{
    antisymmetric_labeling, barrier_to_separators, check_strong_acyclic, component_partition,
    decompose, decompose_strong, final_barrier, find_strong_separator, find_weak_separator,
    verify_certificate, Barrier, Certificate, ComponentPartition, Decomposed,
    StrongAcyclicPartition, StrongAcyclicity, StrongDecomposition, StrongSeparator, Violation,
    WeakDecomposition, WeakOutcome, WeakSeparator,
};
pub use error::{Error, Result};
pub use graph::{
    bidirected_to_skew, is_regular, lift_walk, mate, project_walk, skew_to_bidirected, ArcId,
    BiEdge, BidirectedGraph, End, NodeId, NodeMap, SkewGraph, Walk, WalkKind,
};
pub use reductions::{canonical_preprocess, edge_to_node, node_to_edge, ReductionTrace};
