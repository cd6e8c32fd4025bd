//! Structural role embeddings of graph nodes on the hyperboloid model.
//!
//! The pipeline measures pairwise structural similarity of nodes through
//! FastDTW over hop-ring degree sequences, builds a weighted multilayer
//! context graph, samples layer-aware biased random walks, and trains
//! hyperboloid embeddings with Riemannian SGD and negative sampling.
//!
//! The crate is pure computation: all file and CLI concerns live in the
//! companion `hyperstruc-cli` crate.

pub mod dtw;
pub mod eval;
pub mod graph;
pub mod manifold;
pub mod multilayer;
pub mod structdist;
pub mod trainer;
pub mod walker;

pub use graph::{Graph, HopRings, LabelMap, NodeId};
pub use manifold::HyperboloidPoint;
pub use multilayer::{MultilayerGraph, WalkState};
pub use structdist::StructuralDistanceTable;
pub use trainer::{EmbeddingMatrix, TrainConfig};
pub use walker::{Corpus, PairMultiset, WalkConfig};
