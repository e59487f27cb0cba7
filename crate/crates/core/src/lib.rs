//! Exact face-vector arithmetic for cubical polytopes.
//!
//! - [`seqkit`]: unimodality, peaks, dips and symmetry of finite sequences.
//! - [`cubecore`]: cube f-vectors, the transform `f = h * H` to the short
//!   cubical h-vector, and the structural checks built on it.
//! - [`constructions`]: capping and neighborly cubical polytope f-vectors.
//! - [`feasibility`]: exact Fourier–Motzkin with certificates, applied to
//!   dip patterns.
//! - [`search`]: cap-count intervals and counterexample search.
//! - [`cli`]: the `cubical` command line.
//!
//! No floating point is used anywhere; all values are `BigInt` or
//! `BigRational`.

pub mod cli;
pub mod constructions;
pub mod cubecore;
pub mod decimal;
pub mod error;
pub mod feasibility;
pub mod search;
pub mod selftest;
pub mod seqkit;

pub use error::{Error, Result};
