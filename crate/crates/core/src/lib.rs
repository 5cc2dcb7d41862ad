//! Scale-dependent statistical dimension of graphs.
//!
//! Counts how many nodes lie within `R` hops of an origin and turns that
//! growth curve into a dimension estimate, averaged over random origins.
//! Hypercube lattices provide the calibration baseline; ITDK-style Internet
//! topology snapshots are ingested into device and AS channels.

pub mod ball;
pub mod dimension;
pub mod ensemble;
pub mod error;
pub mod graph;
pub mod io;
pub mod itdk;
pub mod lattice;

pub use ball::{ball_profile, eccentricity_reached, BallProber, BallProfile};
pub use dimension::{
    calibrated_dimension, continuum_ball_volume, degree_distribution, dimension_profile, raw_dimension,
    DegreeDistribution, DimensionProfile,
};
pub use ensemble::{
    calibration_suite, confinement_report, run_ensemble, CalibrationRow, ConfinementReport, EnsembleSpec,
    EnsembleStats, OriginFilter, RadiusStats,
};
pub use error::{Error, Result};
pub use graph::{quotient_by_partition, Graph, NodeId, Quotient, SemanticType, SymbolTable};
pub use io::{load_graph, save_graph};
pub use itdk::{build_as_graph, build_device_graph, parse_itdk, AsChannel, Asn, ItdkBundle, ParsedItdk};
pub use lattice::{expected_counts, generate_hypercube, validate_lattice, LatticeReport, LatticeSpec};
