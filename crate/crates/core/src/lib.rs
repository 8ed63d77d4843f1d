//! Gramians of vector sequences, spectral bounds on finite sections,
//! normalized reproducing-kernel sequences and separated partitions of
//! Bessel sequences.
//!
//! Sequence indices are 1-based throughout; matrix accessors are 0-based.

pub mod error;
pub mod kernels;
pub mod partition;
pub mod quadrature;
pub mod sequences;
pub mod spectral;

pub use error::{Error, Result};
pub use num_complex::Complex64;
