//! Exact computations with finite crossed modules of Γ-groups and with
//! finitely generated abelian Γ-modules.
//!
//! The crate covers group hypercohomology `H⁰`/`H¹` with coefficients in a
//! crossed module `A → G`, braidings and the abelian group structure they
//! induce on `H¹`, the band-valued 2-cocycle obstruction for lifting classes
//! to `H¹(Γ, G)`, and `H⁰`/`H¹` of integral modules via Smith normal form.

pub mod braided;
pub mod cochain;
pub mod crossed;
pub mod error;
pub mod fixtures;
pub mod gamma;
pub mod group;
pub mod hyper;
pub mod io;
pub mod linalg;
pub mod modules;
pub mod obstruction;
pub mod out;
pub mod random;
pub mod report;
pub mod scenario;

pub use error::{Error, Result};
