//! Normalized-Laplacian spectral distance between graphs.
//!
//! The pipeline: build or read a [`Graph`], compute its normalized-Laplacian
//! [`Spectrum`], smooth the spectral measure with a Gaussian kernel and take
//! the ℓ¹ distance between two such densities
//! ([`distance::spectral_distance`]). Generators for the standard graph
//! families double as closed-form oracles, and [`experiments`] drives the
//! convergence studies exposed by the `specdist` binary.

pub mod distance;
pub mod eigen;
pub mod error;
pub mod experiments;
pub mod fit;
pub mod generators;
pub mod graph;
pub mod matrix;
pub mod spectral;

pub use distance::{spectral_distance, DensityParams, SpectralDensity, DEFAULT_SIGMA};
pub use error::{Error, Result};
pub use generators::{FamilySpec, GraphSpec, GrowthRule, RandomModel, RandomSpec};
pub use graph::{EditOp, Graph};
pub use matrix::DistanceMatrix;
pub use spectral::{spectrum, SpectralMeasure, Spectrum};
