//! Sierpiński graphs `S(n, l)`: explicit packings of internally disjoint
//! Steiner trees, Hamiltonian path decompositions, an exact brute-force
//! packing oracle for small graphs, and network properties.
//!
//! Vertices are words over `{0, …, l-1}` of length `n` ([`VertexWord`]);
//! the graph itself is implicit ([`SierpinskiGraph`]) and only materialized
//! on request, below a size cap.

pub mod error;
pub mod exec;
pub mod graph;
pub mod ham;
pub mod oracle;
pub mod props;
pub mod steiner;

pub use error::{Error, Result};
pub use exec::Exec;
pub use graph::{bridge_edge, AtomId, SierpinskiGraph, VertexWord, DEFAULT_MATERIALIZE_CAP};
pub use ham::{constrained_paths, decompose_complete, decompose_sierpinski, HamPathSet};
pub use oracle::{
    connectivity_k, max_disjoint_trees, verify_packing, verify_steiner_tree, Flavor, GenericGraph, OracleCaps,
    SearchBudget, Verdict,
};
pub use steiner::{
    connectivity_value, construct_steiner_trees, construct_trees_large_k, verify_tree_set, worst_case_subset,
    ConnectivityValue, ConstructionMode, SteinerTreeSet, Strategy,
};
