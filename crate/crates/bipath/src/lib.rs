//! Distances between bifiltrations along monotone paths.
//!
//! `bipath` compares two datasets through the lens of two-parameter
//! persistence: each dataset is a [bifiltration](bifiltration::Bifiltration)
//! (a simplicial complex whose cells carry two-dimensional grades), and a
//! [monotone path](path::MonotonePath) through the grade plane restricts
//! both to ordinary one-parameter filtrations. The persistence diagrams of
//! those restrictions are compared with the
//! [bottleneck](distances::bottleneck) or
//! [Wasserstein](distances::wasserstein) distance, which turns every path
//! into a number: how differently the two datasets look along it.
//!
//! The [`search`] module maximizes that number over a grid of candidate
//! paths with ensemble sampling, greedy rollout, or tabular Q-learning,
//! and provides the straight-line matching-distance baseline the searches
//! are measured against.
//!
//! The pipeline end to end:
//!
//! 1. build or parse bifiltrations ([`bifiltration`]),
//! 2. describe a path and a search space ([`path`]),
//! 3. restrict along the path ([`slicer`]),
//! 4. reduce to persistence diagrams ([`persistence`]),
//! 5. compare diagrams ([`distances`]),
//! 6. search path space ([`search`]).
//!
//! Every random choice in the crate flows from a single 64-bit seed, and
//! all iteration orders are fixed, so identical inputs produce identical
//! outputs byte for byte.

pub mod bifiltration;
pub mod cli;
pub mod distances;
pub mod float_json;
pub mod grade;
pub mod path;
pub mod persistence;
pub mod search;
pub mod slicer;

pub use bifiltration::{
    build_codensity_values, build_function_rips, parse_bifiltration, parse_point_cloud,
    serialize_bifiltration, Bifiltration, GradedSimplex, PointCloud,
};
pub use distances::{bottleneck, scale_diagram, wasserstein, Matching};
pub use grade::BiGrade;
pub use path::{MonotonePath, ProjectionMode, SearchSpace, SearchSpaceConfig, TerminationRule};
pub use persistence::{compute_diagrams, PersistenceDiagram};
pub use search::{
    ensemble_search, greedy_search, matching_distance_approx, qlearn_search, query_distance,
    slice_family, Metric, QLearnOutcome, QParams, QueryConfig, SearchResult,
};
pub use slicer::{slice, ScalarFiltration};
