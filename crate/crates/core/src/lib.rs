//! Combinatorial machinery for stellated and stacked spheres and balls.
//!
//! The central type is [`Complex`], an immutable simplicial complex stored by
//! its facets. Around it sit bistellar and shelling moves with replayable
//! certificates, exact homology over prime fields and the rationals,
//! reconstructions of stacked balls, the Klee–Novik family, automorphism
//! groups and a corpus of named example complexes.

pub mod certificate;
pub mod certify;
pub mod claims;
pub mod complex;
pub mod constructions;
pub mod corpus;
pub mod error;
pub mod homology;
pub mod io;
pub mod label;
pub mod moves;
pub mod random;
pub mod symmetry;

pub use complex::{Classification, Complex, DualGraph, FVector, Face};
pub use error::{Error, Result};
pub use label::Label;
