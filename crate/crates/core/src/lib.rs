//! Words over Z/NZ and finite fields, classified through their image in the
//! group of 2x2 determinant-one matrices.
//!
//! Every letter alpha maps to the matrix `[[0,1],[-1,alpha]]`; a word maps to
//! the product of its letters' matrices. This crate classifies words by
//! where that product sends the point at infinity, both by direct matrix
//! computation and by length-reducing rewrite rules, and builds the
//! surrounding machinery: exact class counts over fields, prime-word
//! factorization over Z/NZ, successor/predecessor dynamics with periodic
//! words, and breadth-first shortest generator words for arbitrary group
//! elements.
//!
//! The `slword` binary exposes all of it; see the README for the command
//! set.

pub mod classify;
pub mod cli;
pub mod dynamics;
pub mod error;
pub mod factor;
pub mod rewrite;
pub mod ring;
pub mod sl2;
pub mod word;
pub mod wordsearch;

pub use error::SlError;
pub use ring::{Elem, Ring};
pub use sl2::Mat2;
pub use word::Word;
