//! Spectral pairs and mixed Hodge numbers of isolated hypersurface
//! singularities from lattice-polytope combinatorics. Germs must be
//! convenient and non-degenerate with a simplicial Newton boundary.
//!
//! The pipeline runs germ parsing ([`germ`]), Newton polyhedron geometry
//! ([`geometry`]), triangulation and the weight function ([`subdivision`]),
//! monomial basis construction ([`basis`]) and Hodge classification
//! ([`hodge`]). [`danilov`] recomputes the Hodge numbers by an independent
//! face-by-face formula and [`oracle`] supplies brute-force checks.

pub mod basis;
pub mod danilov;
pub mod error;
pub mod geometry;
pub mod germ;
pub mod hodge;
pub mod io;
pub mod linalg;
pub mod oracle;
pub mod pipeline;
pub mod polytope;
pub mod rational;
pub mod subdivision;

pub use error::{Error, Result};
pub use germ::{parse_germ, ExponentVector, Germ};
pub use hodge::SpectralPairs;
pub use pipeline::{compute, ComputeOptions};

pub use rational::Rational;
