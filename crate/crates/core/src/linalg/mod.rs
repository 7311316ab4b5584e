//! Exact integer linear algebra: Smith normal form, congruence lattices and
//! quotients.

pub mod lattice;
pub mod snf;

pub use lattice::{Lattice, Quotient};
pub use snf::{snf, snf_with_shape, Matrix, Smith};
