//! Bakry-Émery curvature, spectral sharpness and hypercube recognition for
//! finite weighted graphs.
//!
//! A graph `G = (V, w, m)` carries symmetric edge weights `w` and a positive
//! vertex measure `m`. The modules build on one another:
//!
//! - [`graph`]: the immutable graph value, metrics and degrees
//! - [`operators`]: `Δ`, `Γ`, `Γ₂` and their local matrices
//! - [`spectral`]: spectrum of `−Δ`, heat semigroup, eigenfunction extension
//! - [`curvature`]: `K_∞(x)`, `K_n(x)`, `CD(K, n)`, one-sphere Laplacian
//! - [`rigidity`]: shell structure, SSP/NCP and the equivalence harnesses
//! - [`recognizer`]: certified hypercube recognition
//! - [`symmetrize`]: spherical projection onto a weighted path
//! - [`fixtures`]: named example graphs
//! - [`json`]: graph and certificate serialization

pub mod curvature;
pub mod error;
pub mod fixtures;
pub mod graph;
pub mod json;
pub mod operators;
pub mod recognizer;
pub mod rigidity;
pub mod spectral;
pub mod symmetrize;

pub use error::{Error, Result};
pub use graph::{Bipartition, ShellDecomposition, Vertex, WeightedGraph};
