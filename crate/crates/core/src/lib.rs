//! Computation and verification of globalizations of partial actions in three
//! settings: finite monoids acting partially on finite sets, finite
//! topological monoids acting on finite spaces, and finite-dimensional
//! bialgebras coacting partially on algebras.
//!
//! Every construction ships with its certificate: partial-action axioms are
//! checked exhaustively, topological globalizability is decided against the
//! coarsest admissible domain topology, and the comodule-algebra globalization
//! is cut out as an exact equalizer whose pushout criterion, factorization
//! properties, and envelope comparison are all re-verified numerically.

pub mod algebra;
pub mod bialgebra;
pub mod exact;
pub mod fintop;
pub mod fixtures;
pub mod monoid;
pub mod pca;
pub mod random;
pub mod setact;
pub mod topact;
