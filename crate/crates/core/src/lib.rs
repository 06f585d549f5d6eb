//! Exact computations for the duality between semisimple MV-algebras and
//! closed subsets of unit cubes, restricted to finite, computable data.
//!
//! - [`terms`]: the Łukasiewicz term language (parse, evaluate, substitute).
//! - [`geometry`]: exact rational polyhedral geometry inside `[0,1]^n`.
//! - [`mcnaughton`]: McNaughton functions and ℤ-maps as cell complexes.
//! - [`duality`]: the `V`/`I` Galois connection on finite presentations and
//!   the duals of homomorphisms.
//! - [`algebra`]: finite tuple MV-algebras, their spectra, coproduct and
//!   tensor spectra.
//! - [`tangents`]: Bouligand–Severi tangents of polynomial curve germs and
//!   rationally outgoing witnesses.
//!
//! Everything is exact: scalars are [`Rational`]s, affine pieces of
//! McNaughton functions carry integer coefficients.

pub mod algebra;
pub mod duality;
mod error;
pub mod geometry;
pub mod json;
pub mod mcnaughton;
mod par;
pub mod rational;
pub mod sampling;
pub mod tangents;
pub mod terms;

pub use error::{Error, Result};
pub use rational::Rational;
