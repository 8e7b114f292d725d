//! Simulator and verification toolkit for quantum multi-secret sharing with
//! cheater identification.
//!
//! A dealer splits `n` classical secrets among `m` participants so that each
//! secret has its own access structure: any authorized coalition recovers it,
//! any other coalition learns nothing. Share derivation is linear algebra over
//! a prime field ([`finite_field`], [`access_msp`], [`lmss`]); recovery runs
//! through an entangled-qudit circuit ([`qudit_sim`]); a matrix "black box"
//! lets participants prove share ownership without revealing shares, so
//! cheaters are identified before anything is released ([`blackbox`]).
//!
//! [`protocol`] wires the phases together into reproducible, seedable runs
//! that emit serializable transcripts. [`noise_analysis`] compares closed-form
//! recovery fidelities under three single-parameter noise channels against
//! density-matrix simulation. [`demo`] bundles a small worked scenario
//! (four participants, two secrets over Z_7) used throughout the tests and by
//! the `qmss demo` subcommand.
//!
//! Everything is exact where the math is exact: field elements are canonical
//! residues, reductions use a deterministic row-echelon form, and the only
//! floating point lives in the state-vector and density-matrix simulators.

pub mod access_msp;
pub mod blackbox;
pub mod demo;
pub mod finite_field;
pub mod lmss;
pub mod noise_analysis;
pub mod protocol;
pub mod qudit_sim;
