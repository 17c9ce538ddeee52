//! Exact construction of the isospectral lattice pairs `(L1, L2)` of Conway and Sloane,
//! their theta series, the `Θ_{1,1}` invariant, the discrepancy series `δ`,
//! and certificates that the two lattices of a pair are isospectral but not
//! isometric.
//!
//! All lattice work is done in integer coordinates with respect to the
//! eigenbasis `u0..u3` of the Kleinian four group, where the Gram matrix is
//! `diag(a, b, c, d)`. Series are indexed by exponent vectors rather than
//! real exponents so that one computation is valid at every parameter point.

pub mod arith;
pub mod codes;
pub mod discrepancy;
pub mod error;
pub mod lattice;
pub mod theta;
pub mod verify;

pub use error::{Error, Result};
