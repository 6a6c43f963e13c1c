//! Exact symbolic toolkit for rational maps from the projective plane to
//! projective 3-space: planarization tests, dual planarizations, base loci
//! with multiplicities, topological degrees, implicit surface equations, and
//! classification of quadratic planarizations into normal forms.
//!
//! All arithmetic is exact, over Q and single quadratic extensions Q(sqrt(D)).

pub mod catalog;
pub mod error;
pub mod poly;
pub mod parse;
pub mod planarity;
pub mod ratmap;
pub mod report;
pub mod rng;
pub mod scalar;

pub use error::{Error, Result};
