//! Minimal free resolutions of monomial ideals computed from their
//! lcm-lattices, in exact arithmetic.
//!
//! The pipeline is: parse an ideal ([`io`]), build its [`lattice`], compute
//! homology of the complexes `Δ_m` ([`simplicial`]), and assemble resolutions
//! ([`resolution`]) or the poset and RLM constructions ([`poset`]). The
//! [`classify`] module decides membership in the usual ideal classes.

pub mod chain;
pub mod classify;
pub mod error;
pub mod field;
pub mod io;
pub mod lattice;
pub mod matrix;
pub mod resolution;
pub mod monomial;
pub mod poset;
pub mod random;
pub mod simplicial;
pub mod vcomplex;

pub use chain::{Chain, Face};
pub use error::{Error, Result};
pub use field::{FieldSpec, Scalar};
pub use lattice::{BettiPoset, LcmLattice};
pub use matrix::Matrix;
pub use monomial::{Monomial, MonomialIdeal, Subset};
pub use simplicial::SimplicialComplex;
pub use vcomplex::{BasedComplex, Label};
