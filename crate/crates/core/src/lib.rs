//! Exact face-counting polynomials of generalized permutahedra, hypergraph
//! colorings, and lattice-point counts in pruned inside-out polytopes,
//! together with checkers for the reciprocity identities relating them.

pub mod ehrhart;
pub mod error;
pub mod exact;
pub mod hypergraph;
mod par;
pub mod permutahedron;
pub mod poly;
pub mod report;
pub mod setfn;
pub mod verify;

#[cfg(feature = "cli")]
pub mod cli;

pub use error::{Error, Result};
pub use exact::{Rat, RatVec};
pub use permutahedron::{Composition, Face, GPerm};
pub use poly::{Polynomial, QuasiPolynomial};
pub use report::{Check, Report};
pub use setfn::SetFn;
