//! Convex polytopes carried in both representations at once: the exact
//! vertex list and a half-space description `form(x) <= 0`.
//!
//! Keeping both makes hyperplane cuts exact and cheap: the vertices of
//! `C ∩ {h <= 0}` are the old vertices with `h <= 0` plus the crossings of
//! edges with `{h = 0}`, and edges are recognised combinatorially from the
//! sets of constraints tight at each vertex.

use std::collections::HashSet;

use fixedbitset::FixedBitSet;
use itertools::Itertools;
use num_traits::{Signed, Zero};

use super::linalg::{self, dot};
use super::point::{affine_rank, barycenter, Point};
use super::simplex::Simplex;
use crate::rational::{int, Rational};
use crate::{Error, Result};

/// Affine functional `x ↦ coeffs·x + constant` with rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffineForm {
    coeffs: Vec<Rational>,
    constant: Rational,
}

impl AffineForm {
    pub fn new(coeffs: Vec<Rational>, constant: Rational) -> Self {
        AffineForm { coeffs, constant }
    }

    /// `x_i - c` in dimension `n`.
    pub fn coordinate(n: usize, i: usize, c: Rational) -> Self {
        let mut coeffs = vec![int(0); n];
        coeffs[i] = int(1);
        AffineForm { coeffs, constant: -c }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn constant(&self) -> &Rational {
        &self.constant
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn value(&self, p: &Point) -> Rational {
        dot(&self.coeffs, p.coords()) + &self.constant
    }

    pub fn negated(&self) -> Self {
        AffineForm {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
            constant: -&self.constant,
        }
    }

    pub fn is_constant(&self) -> bool {
        linalg::is_zero_vec(&self.coeffs)
    }

    /// Positive rescaling with leading coefficient `±1`; the half-space
    /// `form <= 0` is unchanged.
    fn normalized(mut self) -> Self {
        if let Some(lead) = self.coeffs.iter().find(|c| !c.is_zero()).map(|c| c.abs()) {
            for c in self.coeffs.iter_mut() {
                *c = &*c / &lead;
            }
            self.constant = &self.constant / &lead;
        }
        self
    }
}

/// A non-empty rational polytope (of any dimension) in `R^n`.
#[derive(Clone, Debug)]
pub struct ConvexCell {
    ambient: usize,
    vertices: Vec<Point>,
    constraints: Vec<AffineForm>,
    /// `tight[v]` = constraints vanishing at vertex `v`.
    tight: Vec<FixedBitSet>,
    dim: usize,
    lo: Vec<Rational>,
    hi: Vec<Rational>,
}

impl PartialEq for ConvexCell {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.vertices == other.vertices
    }
}

impl Eq for ConvexCell {}

impl ConvexCell {
    /// The unit cube `[0,1]^n`.
    pub fn cube(n: usize) -> Self {
        let vertices = (0..1usize << n)
            .map(|mask| Point::new((0..n).map(|i| int(((mask >> i) & 1) as i64)).collect()))
            .collect();
        let constraints = (0..n)
            .flat_map(|i| {
                let lower = AffineForm::coordinate(n, i, int(0)).negated();
                let upper = AffineForm::coordinate(n, i, int(1));
                [lower, upper]
            })
            .collect();
        Self::assemble(n, vertices, constraints)
    }

    /// Convex hull of a finite point set. Non-extreme input points are
    /// discarded.
    pub fn hull(ambient: usize, points: &[Point]) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::Geometry("convex hull of no points".into()));
        }
        for p in points {
            p.check_dim(ambient)?;
        }
        let mut pts = points.to_vec();
        pts.sort();
        pts.dedup();
        let base = pts[0].clone();
        let mut directions: Vec<Vec<Rational>> =
            pts[1..].iter().map(|p| linalg::sub(p.coords(), base.coords())).collect();
        let pivots = linalg::rref(&mut directions);
        directions.truncate(pivots.len());
        let d = directions.len();

        let mut constraints = Vec::new();
        for normal in linalg::null_space(&directions, ambient) {
            let c = -dot(&normal, base.coords());
            let eq = AffineForm::new(normal, c);
            constraints.push(eq.negated());
            constraints.push(eq);
        }
        if d >= 1 {
            for combo in (0..pts.len()).combinations(d) {
                let s0 = pts[combo[0]].coords();
                let rows: Vec<Vec<Rational>> = combo[1..]
                    .iter()
                    .map(|&i| {
                        let diff = linalg::sub(pts[i].coords(), s0);
                        directions.iter().map(|l| dot(l, &diff)).collect()
                    })
                    .collect();
                let alpha = linalg::null_space(&rows, d);
                if alpha.len() != 1 {
                    continue;
                }
                let mut normal = vec![int(0); ambient];
                for (a, l) in alpha[0].iter().zip(&directions) {
                    for (n, li) in normal.iter_mut().zip(l) {
                        *n += a * li;
                    }
                }
                let offset = dot(&normal, s0);
                let vals: Vec<Rational> =
                    pts.iter().map(|p| dot(&normal, p.coords()) - &offset).collect();
                if vals.iter().all(|v| !v.is_positive()) {
                    constraints.push(AffineForm::new(normal, -offset));
                } else if vals.iter().all(|v| !v.is_negative()) {
                    constraints.push(AffineForm::new(normal, -offset).negated());
                }
            }
        }
        Ok(Self::assemble(ambient, pts, constraints))
    }

    /// Builds a cell from a complete half-space description and a point list
    /// containing every vertex of the described polytope.
    fn assemble(ambient: usize, mut points: Vec<Point>, constraints: Vec<AffineForm>) -> Self {
        points.sort();
        points.dedup();
        let mut seen = HashSet::new();
        let constraints: Vec<AffineForm> = constraints
            .into_iter()
            .filter(|c| !c.is_constant())
            .map(AffineForm::normalized)
            .filter(|c| seen.insert(c.clone()))
            .collect();
        let tight_of = |p: &Point, cs: &[AffineForm]| {
            let mut bits = FixedBitSet::with_capacity(cs.len());
            for (i, c) in cs.iter().enumerate() {
                if c.value(p).is_zero() {
                    bits.insert(i);
                }
            }
            bits
        };
        let tight: Vec<FixedBitSet> = points.iter().map(|p| tight_of(p, &constraints)).collect();

        // Extreme points: no other point is tight on a superset.
        let keep_vertex: Vec<bool> = (0..points.len())
            .map(|v| {
                !(0..points.len()).any(|w| w != v && tight[w].is_superset(&tight[v]))
            })
            .collect();
        let vertices: Vec<Point> = points
            .into_iter()
            .zip(&keep_vertex)
            .filter_map(|(p, &k)| k.then_some(p))
            .collect();
        let dim = affine_rank(&vertices);

        let nv = vertices.len();
        let columns: Vec<FixedBitSet> = constraints
            .iter()
            .map(|c| {
                let mut col = FixedBitSet::with_capacity(nv);
                for (v, p) in vertices.iter().enumerate() {
                    if c.value(p).is_zero() {
                        col.insert(v);
                    }
                }
                col
            })
            .collect();
        let everywhere = |i: usize| columns[i].count_ones(..) == nv;
        let keep: Vec<bool> = (0..constraints.len())
            .map(|i| {
                if everywhere(i) {
                    return true;
                }
                if dim == 0 {
                    return false;
                }
                !(0..constraints.len()).any(|j| {
                    j != i
                        && !everywhere(j)
                        && columns[j].is_superset(&columns[i])
                        && (columns[j] != columns[i] || j < i)
                })
            })
            .collect();
        let constraints: Vec<AffineForm> = constraints
            .into_iter()
            .zip(&keep)
            .filter_map(|(c, &k)| k.then_some(c))
            .collect();
        let tight = vertices.iter().map(|p| tight_of(p, &constraints)).collect();

        let mut lo = vec![int(0); ambient];
        let mut hi = vec![int(0); ambient];
        for i in 0..ambient {
            lo[i] = vertices.iter().map(|p| &p[i]).min().cloned().unwrap_or_default();
            hi[i] = vertices.iter().map(|p| &p[i]).max().cloned().unwrap_or_default();
        }
        ConvexCell { ambient, vertices, constraints, tight, dim, lo, hi }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    /// Dimension of the affine hull.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Extreme points, sorted lexicographically.
    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    /// Half-space description; each form is `<= 0` on the cell.
    pub fn constraints(&self) -> &[AffineForm] {
        &self.constraints
    }

    pub fn barycenter(&self) -> Point {
        barycenter(&self.vertices)
    }

    pub fn contains(&self, p: &Point) -> bool {
        p.dim() == self.ambient && self.constraints.iter().all(|c| !c.value(p).is_positive())
    }

    /// Coordinate-wise bounding box `(lo, hi)`.
    pub(crate) fn bounds(&self) -> (&[Rational], &[Rational]) {
        (&self.lo, &self.hi)
    }

    pub fn bbox_overlaps(&self, other: &ConvexCell) -> bool {
        (0..self.ambient).all(|i| self.lo[i] <= other.hi[i] && other.lo[i] <= self.hi[i])
    }

    fn adjacent(&self, a: usize, b: usize) -> bool {
        let mut common = self.tight[a].clone();
        common.intersect_with(&self.tight[b]);
        !(0..self.vertices.len()).any(|w| w != a && w != b && self.tight[w].is_superset(&common))
    }

    /// `self ∩ {h <= 0}`, or `None` when empty.
    pub fn clip(&self, h: &AffineForm) -> Option<ConvexCell> {
        if h.is_constant() {
            return (!h.constant().is_positive()).then(|| self.clone());
        }
        let vals: Vec<Rational> = self.vertices.iter().map(|p| h.value(p)).collect();
        if vals.iter().all(|v| !v.is_positive()) {
            return Some(self.clone());
        }
        if vals.iter().all(Signed::is_positive) {
            return None;
        }
        let mut points: Vec<Point> = self
            .vertices
            .iter()
            .zip(&vals)
            .filter(|(_, v)| !v.is_positive())
            .map(|(p, _)| p.clone())
            .collect();
        for (i, j) in (0..self.vertices.len()).tuple_combinations() {
            let opposite = (vals[i].is_negative() && vals[j].is_positive())
                || (vals[i].is_positive() && vals[j].is_negative());
            if opposite && self.adjacent(i, j) {
                let s = &vals[i] / (&vals[i] - &vals[j]);
                let (u, w) = (self.vertices[i].coords(), self.vertices[j].coords());
                let crossing = u.iter().zip(w).map(|(a, b)| a + &s * (b - a)).collect();
                points.push(Point::new(crossing));
            }
        }
        let mut constraints = self.constraints.clone();
        constraints.push(h.clone());
        Some(Self::assemble(self.ambient, points, constraints))
    }

    /// Both closed sides of the hyperplane `{h = 0}`: `(C ∩ {h <= 0}, C ∩ {h >= 0})`.
    pub fn split(&self, h: &AffineForm) -> (Option<ConvexCell>, Option<ConvexCell>) {
        (self.clip(h), self.clip(&h.negated()))
    }

    /// Like [`split`](Self::split) but drops a side that is only a face of
    /// the cell (contained in the other side). When the cell lies inside the
    /// hyperplane it is returned once, on the `<= 0` side.
    pub fn split_proper(&self, h: &AffineForm) -> (Option<ConvexCell>, Option<ConvexCell>) {
        let vals: Vec<Rational> = self.vertices.iter().map(|p| h.value(p)).collect();
        let neg = vals.iter().any(Signed::is_negative);
        let pos = vals.iter().any(Signed::is_positive);
        match (neg, pos) {
            (false, false) | (true, false) => (Some(self.clone()), None),
            (false, true) => (None, Some(self.clone())),
            (true, true) => (self.clip(h), self.clip(&h.negated())),
        }
    }

    pub fn intersect(&self, other: &ConvexCell) -> Option<ConvexCell> {
        if self.ambient != other.ambient || !self.bbox_overlaps(other) {
            return None;
        }
        let mut cur = self.clone();
        for c in &other.constraints {
            cur = cur.clip(c)?;
        }
        Some(cur)
    }

    /// Pieces of `self` outside `other` that keep the dimension `target`.
    /// Their union contains the closure of `self \ other` up to sets of
    /// lower dimension.
    pub(crate) fn subtract(&self, other: &ConvexCell, target: usize) -> Vec<ConvexCell> {
        if !self.bbox_overlaps(other) {
            return vec![self.clone()];
        }
        let mut out = Vec::new();
        let mut cur = self.clone();
        for c in &other.constraints {
            if cur.vertices.iter().all(|p| !c.value(p).is_positive()) {
                continue;
            }
            if let Some(outside) = cur.clip(&c.negated()) {
                if outside.dim == target {
                    out.push(outside);
                }
            }
            match cur.clip(c) {
                Some(inside) if inside.dim == target => cur = inside,
                _ => return out,
            }
        }
        out
    }

    /// Image under the coordinate projection onto `coords`.
    pub fn project(&self, coords: &[usize]) -> ConvexCell {
        let pts: Vec<Point> = self.vertices.iter().map(|p| p.project(coords)).collect();
        Self::hull(coords.len(), &pts).expect("non-empty cell")
    }

    /// Restricts to the coordinate face `{x_k = 0 : k ∉ keep}` and drops the
    /// fixed coordinates. Returns `None` if the face misses the cell or the
    /// result loses dimension relative to `keep.len()`.
    pub(crate) fn restrict_to_coordinate_face(&self, keep: &[usize]) -> Option<ConvexCell> {
        let mut cur = self.clone();
        for k in (0..self.ambient).filter(|k| !keep.contains(k)) {
            cur = cur.clip(&AffineForm::coordinate(self.ambient, k, int(0)))?;
        }
        if cur.dim != keep.len() {
            return None;
        }
        let vertices = cur.vertices.iter().map(|p| p.project(keep)).collect();
        let constraints = cur
            .constraints
            .iter()
            .map(|c| {
                let coeffs = keep.iter().map(|&i| c.coeffs[i].clone()).collect();
                AffineForm::new(coeffs, c.constant.clone())
            })
            .collect();
        Some(Self::assemble(keep.len(), vertices, constraints))
    }

    /// Pulling triangulation: cone from the lexicographically smallest
    /// vertex over the (recursively triangulated) facets avoiding it.
    pub fn triangulate(&self) -> Vec<Simplex> {
        let nv = self.vertices.len();
        let columns: Vec<Vec<usize>> = self
            .constraints
            .iter()
            .map(|c| (0..nv).filter(|&v| c.value(&self.vertices[v]).is_zero()).collect())
            .filter(|col: &Vec<usize>| col.len() < nv)
            .collect();
        let all: Vec<usize> = (0..nv).collect();
        self.pull(&all, self.dim, &columns)
            .into_iter()
            .map(|idx| Simplex::new_unchecked(idx.iter().map(|&i| self.vertices[i].clone()).collect()))
            .collect()
    }

    fn pull(&self, face: &[usize], dim: usize, columns: &[Vec<usize>]) -> Vec<Vec<usize>> {
        if face.len() == dim + 1 {
            return vec![face.to_vec()];
        }
        let apex = face[0];
        let mut facets: Vec<Vec<usize>> = Vec::new();
        for col in columns {
            let sub: Vec<usize> = face.iter().copied().filter(|v| col.contains(v)).collect();
            if sub.len() < dim || sub.len() == face.len() || sub.contains(&apex) {
                continue;
            }
            if facets.contains(&sub) {
                continue;
            }
            let pts: Vec<&Point> = sub.iter().map(|&i| &self.vertices[i]).collect();
            if affine_rank(&pts) + 1 == dim {
                facets.push(sub);
            }
        }
        let mut out = Vec::new();
        for facet in facets {
            for mut s in self.pull(&facet, dim - 1, columns) {
                s.insert(0, apex);
                out.push(s);
            }
        }
        out
    }
}

/// Spec-level entry point: both closed sides of `C` cut by `{h = 0}`.
pub fn split_cell(cell: &ConvexCell, h: &AffineForm) -> (Option<ConvexCell>, Option<ConvexCell>) {
    cell.split(h)
}

pub fn triangulate(cell: &ConvexCell) -> Vec<Simplex> {
    cell.triangulate()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn pt(c: &[(i64, i64)]) -> Point {
        Point::from_ratios(c)
    }

    #[test]
    fn cube_shape() {
        let c = ConvexCell::cube(3);
        assert_eq!(c.vertices().len(), 8);
        assert_eq!(c.constraints().len(), 6);
        assert_eq!(c.dim(), 3);
        let p = ConvexCell::cube(0);
        assert_eq!(p.vertices().len(), 1);
        assert_eq!(p.dim(), 0);
    }

    #[test]
    fn hull_drops_interior_points() {
        let pts = vec![pt(&[(0, 1), (0, 1)]), pt(&[(1, 1), (0, 1)]), pt(&[(0, 1), (1, 1)]), pt(&[(1, 4), (1, 4)])];
        let c = ConvexCell::hull(2, &pts).unwrap();
        assert_eq!(c.vertices().len(), 3);
        assert_eq!(c.constraints().len(), 3);
    }

    #[test]
    fn hull_of_collinear_points_in_plane() {
        let pts = vec![pt(&[(0, 1), (0, 1)]), pt(&[(1, 2), (1, 2)]), pt(&[(1, 1), (1, 1)])];
        let c = ConvexCell::hull(2, &pts).unwrap();
        assert_eq!(c.dim(), 1);
        assert_eq!(c.vertices().len(), 2);
        assert!(c.contains(&pt(&[(1, 3), (1, 3)])));
        assert!(!c.contains(&pt(&[(1, 3), (1, 2)])));
    }

    #[test]
    fn clip_through_vertex_keeps_exact_vertices() {
        let sq = ConvexCell::cube(2);
        // x + y <= 1 cuts the square along its diagonal.
        let h = AffineForm::new(vec![int(1), int(1)], int(-1));
        let lower = sq.clip(&h).unwrap();
        assert_eq!(lower.vertices().len(), 3);
        let upper = sq.clip(&h.negated()).unwrap();
        assert_eq!(upper.vertices().len(), 3);
    }

    #[test]
    fn split_proper_drops_face_only_side() {
        let seg = ConvexCell::cube(1);
        let h = AffineForm::coordinate(1, 0, int(0));
        let (l, r) = seg.split(&h);
        assert_eq!(l.unwrap().vertices(), &[pt(&[(0, 1)])]);
        assert!(r.is_some());
        let (l, r) = seg.split_proper(&h);
        assert!(l.is_none());
        assert_eq!(r.unwrap(), seg);
    }

    #[test]
    fn subtract_covers_difference() {
        let sq = ConvexCell::cube(2);
        let half = sq.clip(&AffineForm::coordinate(2, 0, rat(1, 2))).unwrap();
        let rest = sq.subtract(&half, 2);
        assert_eq!(rest.len(), 1);
        assert_eq!(rest[0].vertices()[0], pt(&[(1, 2), (0, 1)]));
        assert!(half.subtract(&sq, 2).is_empty());
    }
}
