//! McNaughton functions as explicit cell complexes.
//!
//! A [`PlFunction`] is a list of convex cells, each carrying an integer
//! affine piece. Compiled functions live on the whole cube with
//! full-dimensional cells; restricting to a polyhedron keeps the pieces and
//! cuts the cells down to the polyhedron's simplices.

mod function;
mod piece;
mod zmap;

pub use function::{
    compile, one_set, pl_equal, pl_eval, pl_neg, pl_op, used_variables, zero_set, MvOp, PlFunction,
};
pub use piece::AffinePiece;
pub use zmap::{compose, factor, Factorization, ZMap};
