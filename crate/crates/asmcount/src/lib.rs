//! Exact enumeration of alternating sign matrices, refined by boundary
//! data.
//!
//! An alternating sign matrix (ASM) has entries in `{-1, 0, 1}` with rows
//! and columns summing to one and alternating in sign. This crate counts
//! them three ways and checks the ways against each other:
//!
//! - [`asm`] and [`triangle`]: the matrices themselves, their bijection
//!   with complete monotone triangles, and exhaustive enumeration.
//! - [`counting`]: brute-force oracles; exact big-integer counts computed
//!   by dynamic programming on triangle rows, refined by where the
//!   boundary `1`s sit.
//! - [`formulas`]: closed-form product formulas for the same counts, plus
//!   exact checkers for the identities tying the refinements together.
//! - [`sixvertex`]: the square-ice model whose partition function expands
//!   into those counting tables at the crossing parameter `2*pi/3`, checked
//!   numerically.
//!
//! Counts are [`BigInt`]s throughout; intermediate formula values are
//! [`BigRational`]s asserted integral rather than trusted. Everything is
//! deterministic, including the randomized numeric checks, which take
//! explicit seeds.
//!
//! ```
//! use asmcount::counting::AlphaCounter;
//! use asmcount::formulas;
//!
//! let counter = AlphaCounter::new();
//! assert_eq!(counter.total(4), formulas::asm_total(4));
//! assert_eq!(counter.total(4), asmcount::BigInt::from(42));
//! ```

pub mod asm;
pub mod counting;
pub mod formulas;
pub mod report;
pub mod sixvertex;
pub mod triangle;

pub use num::{BigInt, BigRational};

// Compile the guide's code blocks as doctests so the book cannot drift
// from the library.
#[cfg(doctest)]
#[doc = include_str!("../../../book/src/introduction.md")]
pub struct BookIntroduction;

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/matrices-and-triangles.md")]
pub struct BookMatricesAndTriangles;

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/counting.md")]
pub struct BookCounting;

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/formulas.md")]
pub struct BookFormulas;

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/six-vertex.md")]
pub struct BookSixVertex;
