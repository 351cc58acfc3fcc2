//! Joint estimation of sparse Ising (binary Markov) networks across data
//! categories that share common structure.
//!
//! The estimator maximizes a group-penalized pseudo-likelihood: each pairwise
//! interaction is coupled across the K categories through the penalty
//! `lambda * sum_{j<j'} sqrt(sum_k |theta_jj'^(k)|)`, which zeroes whole edge
//! groups and so preserves common sparsity while allowing per-category
//! differences. Fitting runs a local-linear-approximation outer loop over
//! weighted-l1 coordinate-descent subproblems.
//!
//! The crate also ships the supporting machinery for benchmarking and for an
//! end-to-end roll-call-vote analysis: synthetic graph/data generators with a
//! Gibbs sampler, cross-validation and bootstrap stability selection, ROC
//! scoring of structure recovery, and a vote-matrix ingestion/imputation
//! pipeline.
//!
//! Core numerics are generic over the scalar type (`f32`/`f64`) via
//! [`num::Scalar`]; concrete `f64` aliases are exported at the crate root.

pub mod error;
pub mod evaluation;
pub mod io;
pub mod joint;
pub mod model;
pub mod num;
pub mod rollcall;
pub mod seed;
pub mod selection;
pub mod solver;
pub mod synthetic;

pub use error::{Error, Result};
pub use model::{BinaryDataset, CategoryCollection, PenaltySpec};
pub use num::Scalar;

/// Concrete `f64` aliases for the scalar-generic types.
pub type InteractionMatrix64 = model::InteractionMatrix<f64>;
pub type InteractionMatrix32 = model::InteractionMatrix<f32>;
pub type WeightMatrix64 = solver::WeightMatrix<f64>;
pub type FitResult64 = solver::FitResult<f64>;
pub type JointModel64 = joint::JointModel<f64>;
pub type FactorizationResult64 = joint::FactorizationResult<f64>;
