//! Syndrome-based Gallager-B decoding for quantum LDPC codes, with tools to
//! find and certify the variable-node structures that make it fail.
//!
//! The crate is organised bottom-up:
//!
//! - [`gf2`]: bit-packed vectors and matrices over GF(2).
//! - [`tanner`]: Tanner graphs, induced subgraphs, the absorbing predicate.
//! - [`decoder`]: the decoder itself, traces and outcome classification.
//! - [`structures`]: failure-inducing and absorbing set censuses, symmetric
//!   stabilizers, partitions and certificates for the failure theorems.
//! - [`families`]: path, cycle, theta and dumbbell generators and the named
//!   example graphs.
//! - [`css`]: CSS codes and the hypergraph product.
//! - [`alist`] and [`report`]: file formats used by the command-line tool.

pub mod alist;
pub mod css;
pub mod decoder;
pub mod error;
pub mod families;
pub mod gf2;
pub mod report;
pub mod structures;
pub mod tanner;

pub use error::{Error, Result};
