//! Decide whether an integer polynomial divides a polynomial whose
//! coefficients come from a finite digit set, and produce witnesses.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, the census
//! driver and the command line live in the `digitmult` crate.
//!
//! Module map:
//!
//! - [`intpoly`]: exact arithmetic in `Z[X]`, text formats, cyclotomic
//!   stripping, squarefree decomposition, positive-root test.
//! - [`gf2`]: factorization over `F_2` and the `deg2` bound on the degree of
//!   Littlewood multiples.
//! - [`roots`]: certified root disks, unit-circle classification, the bound
//!   table used to prune residues, Salem-type classification.
//! - [`search`]: breadth-first search of the residue graph, minimal-degree
//!   search, walk counting and replayable exhaustion certificates.
//! - [`oracle`]: exhaustive enumeration for small degrees.
//! - [`survey`]: family enumeration and pre-filters for censuses.

#![no_std]

extern crate alloc;

pub mod dyadic;
mod error;
pub mod gf2;
pub mod intpoly;
pub mod oracle;
pub mod roots;
pub mod search;
pub mod survey;

pub use error::{Error, Result};
pub use intpoly::{IntPolynomial, PolynomialFamily};
pub use search::{DigitSet, SearchConfig, SearchMode, SearchOutcome, Witness};

