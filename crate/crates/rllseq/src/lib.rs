//! Maximum-length run-length-limited sequences in the de Bruijn graph.
//!
//! An `(n,s)`-word is a binary word of length `n` whose longest run of
//! zeros is at most `s`; an `(n,s)`-sequence is a (cyclic or acyclic)
//! sequence whose length-`n` windows are distinct `(n,s)`-words. This crate
//! constructs maximum-length `(n,s)`-sequences by three routes (necklace
//! merging, keyed necklace merging, and lexicographic Lyndon-word
//! concatenation), counts them exactly and asymptotically, decodes window
//! positions, and measures acquisition behaviour for a pulse-slot
//! synchronization channel against the doubled-slot baseline scheme.
//!
//! With the `parallel` feature (default), the exhaustive scans, counting
//! tables, and simulator trials run on rayon; every result is deterministic
//! either way.

pub mod bitword;
pub mod enumeration;
pub mod generators;
pub mod locate;
pub mod lyndon;
pub mod oracle;
pub mod syncsim;
pub mod vset;

mod error;

pub use bitword::{BitWord, Necklace};
pub use error::Error;
pub use generators::{SequenceBuffer, VerifyReport};

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
