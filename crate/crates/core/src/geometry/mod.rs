//! Exact rational geometry in `[0,1]^n`: simplices, convex cells cut by
//! hyperplanes, triangulation, and polyhedra as finite unions of simplices.

mod cell;
pub mod linalg;
mod point;
mod polyhedron;
mod simplex;

pub use cell::{split_cell, triangulate, AffineForm, ConvexCell};
pub use point::{affine_independent, affine_rank, barycenter, Point};
pub use polyhedron::{poly_equal, poly_intersect, poly_union, product, project, Polyhedron};
pub use simplex::{simplex_contains, Simplex};
