//! Exact geometry: embeddings, validity certificates, projections and
//! diagrams.

pub mod diagram;
pub mod embedding;
pub mod frame;
pub mod io;
pub mod projection;
pub mod rational;
pub mod sampling;

pub use diagram::{gauss_diagram, Arrow, GaussDiagram, LinkDiagram, Passage, SignedGaussCode};
pub use embedding::{
    cycle_curve, moment_curve_embedding, moment_curve_points, validate_embedding, SegRef, SpatialEmbedding,
    ValidityCertificate, Violation,
};
pub use frame::{FrameSequence, ProjectionFrame, DEFAULT_FRAME_RETRIES};
pub use projection::{embedding_table, project, CrossingTable, GenericityFailure, ProjectError};
pub use rational::RationalPoint3;
pub use sampling::{random_k331_embedding, random_polyline_embedding, random_rectilinear_embedding, SamplingError};
