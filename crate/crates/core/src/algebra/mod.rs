//! Finite semisimple MV-algebras as concrete tuple algebras inside
//! `[0,1]^N`, their spectra `Hom(A, [0,1])`, and the coproduct and tensor
//! spectra of two algebras.

mod finite;
mod spectrum;

pub use finite::{chain, product, subalgebra_closure, FiniteMVAlgebra};
pub use spectrum::{
    algebra_of_spectrum, bimorphism_split, coproduct_spectrum, is_hom, relations_satisfied, spectrum, tensor_spectrum,
    Spectrum, TensorSpectrum,
};
