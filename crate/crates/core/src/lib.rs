//! Message-free STDMA node scheduling for regular wireless sensor networks.
//!
//! Nodes on a hexagonal or square-grid lattice derive their transmit slot
//! from their own address, giving collision-free TDMA frames of length
//! `(k+1)^2` (hexagonal) or `(k+1) ceil((k+1)/2)` (square) under the k-hop
//! interference model — independent of network size. The crate bundles:
//!
//! - [`lattice`]: coordinates, graph distances (with a BFS oracle),
//!   neighborhoods, planar embeddings, and basis-section tilings;
//! - [`scheduler`]: the slot assignments, frame-length formulas, and an
//!   exhaustive schedule verifier;
//! - [`interference`]: conflict graphs, closed-form clique numbers with an
//!   exact branch-and-bound oracle, and approximation ratios;
//! - [`sinr`]: the SINR criterion, interference bounds, transmit-power
//!   thresholds, and feasibility regions;
//! - [`deployment`]: seeded perturbed deployments and full-frame SINR
//!   evaluation with per-receiver rho = SINR/beta reporting.

pub mod deployment;
pub mod interference;
pub mod lattice;
pub mod scheduler;
pub mod sinr;

pub use deployment::{
    evaluate, extent_for_node_count, generate, operating_point, Deployment, DeploymentError,
    OperatingPoint, RhoRecord, RhoReport,
};
pub use interference::{
    approximation_ratio, brute_force_max_clique, build_interference_graph, clique_number_formula,
    nodes_conflict, CliqueResult, InterferenceError, InterferenceGraph, CLIQUE_NODE_BUDGET,
};
pub use lattice::{
    bfs_distance, coset, embed, graph_distance, neighbors, neighbors_in, BasisSection,
    LatticeCoord, LatticeError, LatticeKind, NetworkExtent, Point, SectionShape,
};
pub use scheduler::{
    build_schedule, concurrent_set, frame_length, hex_slot, square_slot, verify_schedule,
    InterferenceK, Schedule, ScheduleError, VerificationReport, Violation,
};
pub use sinr::{
    beta_max, dd_max, exact_regular_interference, feasibility, hex_interference_bound,
    interference_bound, min_signal, power_threshold, sinr, square_interference_bound,
    FeasibilityRegion, SinrError, SinrParams, DEFAULT_INTERFERENCE_RINGS, POWER_MARGIN,
};
