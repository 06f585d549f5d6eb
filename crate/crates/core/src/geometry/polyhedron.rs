use itertools::Itertools;

use super::cell::ConvexCell;
use super::point::Point;
use super::simplex::Simplex;
use crate::par;
use crate::rational::int;
use crate::{Error, Result};

/// A finite union of closed rational simplices in `R^dim`. The empty list
/// is the empty set; lower-dimensional simplices are allowed.
#[derive(Clone, Debug)]
pub struct Polyhedron {
    dim: usize,
    simplices: Vec<Simplex>,
}

impl Polyhedron {
    /// Validates dimensions and drops simplices contained in another one.
    pub fn new(dim: usize, simplices: Vec<Simplex>) -> Result<Self> {
        for s in &simplices {
            if s.ambient_dim() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: s.ambient_dim() });
            }
        }
        Ok(Self::reduced(dim, simplices))
    }

    fn reduced(dim: usize, mut simplices: Vec<Simplex>) -> Self {
        simplices.sort_by(|a, b| b.dim().cmp(&a.dim()).then_with(|| a.vertices().cmp(b.vertices())));
        simplices.dedup();
        let keep: Vec<bool> = par::map_range(simplices.len(), |i| {
            let s = &simplices[i];
            !simplices.iter().enumerate().any(|(j, t)| {
                j != i
                    && t.dim() >= s.dim()
                    && t.cell().bbox_overlaps(s.cell())
                    && s.vertices().iter().all(|v| t.cell().contains(v))
            })
        });
        let simplices = simplices
            .into_iter()
            .zip(keep)
            .filter_map(|(s, k)| k.then_some(s))
            .collect();
        Polyhedron { dim, simplices }
    }

    pub fn empty(dim: usize) -> Self {
        Polyhedron { dim, simplices: Vec::new() }
    }

    pub fn point(p: Point) -> Self {
        Polyhedron { dim: p.dim(), simplices: vec![Simplex::point(p)] }
    }

    /// `[0,1]^n`, triangulated into `n!` simplices.
    pub fn cube(n: usize) -> Self {
        let segment = Polyhedron {
            dim: 1,
            simplices: vec![Simplex::new_unchecked(vec![
                Point::new(vec![int(0)]),
                Point::new(vec![int(1)]),
            ])],
        };
        (0..n).fold(Polyhedron::point(Point::new(Vec::new())), |acc, _| acc.product(&segment))
    }

    /// Union of the given cells, each triangulated.
    pub fn from_cells(dim: usize, cells: &[ConvexCell]) -> Self {
        let simplices = par::flat_map(cells, ConvexCell::triangulate);
        Self::reduced(dim, simplices)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn simplices(&self) -> &[Simplex] {
        &self.simplices
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn is_in_cube(&self) -> bool {
        self.simplices.iter().all(|s| s.vertices().iter().all(Point::is_in_cube))
    }

    fn check_same_dim(&self, other: &Polyhedron) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: other.dim });
        }
        Ok(())
    }

    pub fn contains_point(&self, p: &Point) -> Result<bool> {
        p.check_dim(self.dim)?;
        Ok(self.simplices.iter().any(|s| s.cell().contains(p)))
    }

    /// `self ⊆ other`, decided exactly: each simplex is cut along the
    /// supporting hyperplanes of the other side's simplices, and no piece of
    /// full dimension may survive outside all of them.
    pub fn is_subset_of(&self, other: &Polyhedron) -> Result<bool> {
        self.check_same_dim(other)?;
        Ok(par::all(&self.simplices, |s| simplex_covered(s, &other.simplices)))
    }

    /// Set equality.
    pub fn set_eq(&self, other: &Polyhedron) -> Result<bool> {
        Ok(self.is_subset_of(other)? && other.is_subset_of(self)?)
    }

    pub fn intersect(&self, other: &Polyhedron) -> Result<Polyhedron> {
        self.check_same_dim(other)?;
        let pieces = par::flat_map(&self.simplices, |s| {
            other
                .simplices
                .iter()
                .filter_map(|t| s.cell().intersect(t.cell()))
                .flat_map(|c| c.triangulate())
                .collect()
        });
        Ok(Self::reduced(self.dim, pieces))
    }

    pub fn union(&self, other: &Polyhedron) -> Result<Polyhedron> {
        self.check_same_dim(other)?;
        let mut all = self.simplices.clone();
        all.extend(other.simplices.iter().cloned());
        Ok(Self::reduced(self.dim, all))
    }

    /// Image under the projection onto the listed coordinates (in order).
    pub fn project(&self, coords: &[usize]) -> Result<Polyhedron> {
        if coords.is_empty() {
            return Err(Error::Geometry("projection onto an empty coordinate set".into()));
        }
        if let Some(&bad) = coords.iter().find(|&&c| c >= self.dim) {
            return Err(Error::Geometry(format!("coordinate {bad} out of range for dimension {}", self.dim)));
        }
        if coords.iter().duplicates().next().is_some() {
            return Err(Error::Geometry("repeated projection coordinate".into()));
        }
        let pieces = par::flat_map(&self.simplices, |s| {
            let pts: Vec<Point> = s.vertices().iter().map(|v| v.project(coords)).collect();
            ConvexCell::hull(coords.len(), &pts).expect("non-empty").triangulate()
        });
        Ok(Self::reduced(coords.len(), pieces))
    }

    /// Cartesian product, triangulated by staircase triangulations of the
    /// products of simplices.
    pub fn product(&self, other: &Polyhedron) -> Polyhedron {
        let dim = self.dim + other.dim;
        let pieces: Vec<Simplex> = self
            .simplices
            .iter()
            .cartesian_product(&other.simplices)
            .flat_map(|(s, t)| staircase(s, t))
            .collect();
        Self::reduced(dim, pieces)
    }

    /// A point in the relative interior of each simplex.
    pub fn barycenters(&self) -> Vec<Point> {
        self.simplices.iter().map(Simplex::barycenter).collect()
    }
}

fn simplex_covered(s: &Simplex, cover: &[Simplex]) -> bool {
    let cell = s.cell();
    if cover.iter().any(|t| s.vertices().iter().all(|v| t.cell().contains(v))) {
        return true;
    }
    let target = s.dim();
    let mut pieces = vec![cell.clone()];
    for t in cover {
        if pieces.is_empty() {
            break;
        }
        pieces = pieces.iter().flat_map(|r| r.subtract(t.cell(), target)).collect();
    }
    pieces.is_empty()
}

/// Staircase triangulation of `S × T`: one simplex per monotone lattice
/// path from `(0,0)` to `(dim S, dim T)`.
fn staircase(s: &Simplex, t: &Simplex) -> Vec<Simplex> {
    let (p, q) = (s.dim(), t.dim());
    (0..p + q)
        .combinations(p)
        .map(|s_steps| {
            let (mut i, mut j) = (0, 0);
            let mut verts = vec![s.vertices()[0].concat(&t.vertices()[0])];
            for step in 0..p + q {
                if s_steps.contains(&step) {
                    i += 1;
                } else {
                    j += 1;
                }
                verts.push(s.vertices()[i].concat(&t.vertices()[j]));
            }
            Simplex::new_unchecked(verts)
        })
        .collect()
}

pub fn poly_equal(p: &Polyhedron, q: &Polyhedron) -> Result<bool> {
    p.set_eq(q)
}

pub fn poly_intersect(p: &Polyhedron, q: &Polyhedron) -> Result<Polyhedron> {
    p.intersect(q)
}

pub fn poly_union(p: &Polyhedron, q: &Polyhedron) -> Result<Polyhedron> {
    p.union(q)
}

pub fn project(p: &Polyhedron, coords: &[usize]) -> Result<Polyhedron> {
    p.project(coords)
}

pub fn product(p: &Polyhedron, q: &Polyhedron) -> Polyhedron {
    p.product(q)
}
