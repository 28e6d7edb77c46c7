//! Triangulations of closed orientable surfaces and the antiferromagnetic
//! Ising model on them: validation, exact satisfying-state enumeration,
//! exact groundstates, and constructions of triangulations whose groundstate
//! is a single ± pair.

pub mod catalog;
pub mod complex;
pub mod construct;
pub mod data;
pub mod format;
pub mod ground;
pub mod ising;
pub mod matching;
pub mod oracle;
pub mod report;
pub mod solve;

pub use catalog::{
    load_catalog, scan_catalog, scan_supportability, CatalogEntry, CatalogError, LoadOptions,
    RemovableSet, SupportReport, DEFAULT_MAX_REMOVAL,
};
pub use complex::{
    build_complex, dual_graph, euler_genus, glue, remove_faces, ComplexError, DualGraph, Edge,
    GlueError, Glued, GluingSpec, Marks, SurfaceComplex, Triple, Vertex,
};
pub use construct::{
    build_genus, build_genus_from, build_torus, build_torus_from, certify_punctured,
    certify_supporting, chain_connectors, delta, fill_all, fill_hole, fill_hole_aligned,
    hole_sizes, AugmentingTriangulation, ConstructError, Filled, SupportingPunctured,
};
pub use format::{parse_tri, read_tri, to_tri_string, write_tri, FormatError};
pub use ground::{groundstates, GroundOptions, GroundstateReport, Method};
pub use ising::{energy, frustrated_edges, is_satisfying, Constraint, IsingError, Spin, SpinState};
pub use matching::{matching_from_state, state_from_matching};
pub use solve::{enumerate_satisfying, serious_edges, SolveOptions, SolveReport};
