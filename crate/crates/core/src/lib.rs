//! Swan conductors and refined Swan conductors of Artin–Schreier–Witt
//! characters over iterated truncated Laurent series fields.
//!
//! The crate is layered: [`algebra`] provides exact scalars, nested series and
//! the literal grammar; [`witt`] builds Witt vectors and characters on top;
//! [`logdiff`] implements logarithmic forms with `d`, wedge, Cartier and
//! residues; [`rsw`], [`reciprocity`] and [`extensions`] compute the
//! invariants and check the identities relating them.

pub mod algebra;
pub mod error;
pub mod extensions;
pub mod logdiff;
pub mod reciprocity;
pub mod rsw;
pub mod sample;
pub mod witt;

pub use algebra::galois::{GaloisRing, Scalar};
pub use algebra::series::{Nested, SeriesRing, EXACT};
pub use algebra::tower::FieldTower;
pub use error::{Error, Result};
