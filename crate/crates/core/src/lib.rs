//! Exact graph-entropy and linear-extension toolkit for width-2 posets.
//!
//! The crate revolves around one inequality.  For a finite poset `P` let
//! `e(P)` be its number of linear extensions, `H̄(P)` the graph entropy of its
//! incomparability graph, and `κ₂(P)` the number of connected components of
//! the incomparability graph that are single edges.  For every poset of width
//! at most 2,
//!
//! ```text
//!     |P| · H̄(P)  ≤  (2 − ε) · log₂ e(P)  +  ε · κ₂(P),
//!     ε = 2 − (3·log 3 − 2)/log 3  ≈ 0.2619,
//! ```
//!
//! and everything here exists to compute both sides exactly and to check the
//! inequality (plus the lemmas feeding it) with certified arithmetic:
//!
//! * [`poset`]: posets over string ids, incomparability graphs, chain covers;
//! * [`linext`]: three independent linear-extension counters;
//! * [`exact`]: the number field ℚ-spanned by logarithms of rationals, with
//!   symbolic zero tests and certified interval evaluation;
//! * [`entropy`]: the Körner-Marton decomposition and a Frank-Wolfe oracle;
//! * [`intervals`]: canonical interval representations, epochs, phantom
//!   edges and the span-2 completion `Q`;
//! * [`bounds`]: bound reports, the edge-removal experiments and the
//!   special-case closed forms;
//! * [`sortsim`]: sorting under partial information with entropy budgets;
//! * [`generate`]: corpus generators and an isomorphism-free enumerator;
//! * [`io`]: the `poset v1` text format;
//! * [`render`]: SVG renderings of interval representations.
//!
//! The `examples/` directory walks through every capability end to end; the
//! thin `poset-entropy` binary exposes the same operations as subcommands.

pub mod bounds;
pub mod entropy;
pub mod error;
pub mod exact;
pub mod generate;
pub mod intervals;
pub mod io;
pub mod linext;
pub mod poset;
pub mod render;
pub mod sortsim;

pub use error::Error;
