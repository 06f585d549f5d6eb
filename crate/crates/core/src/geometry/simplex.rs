use std::hash::{Hash, Hasher};
use std::sync::OnceLock;

use num_traits::{Signed, Zero};

use super::cell::ConvexCell;
use super::linalg;
use super::point::{affine_independent, barycenter, Point};
use crate::rational::{int, Rational};
use crate::{Error, Result};

/// `conv(v_0, …, v_m)` with affinely independent rational vertices, stored
/// in lexicographic order.
#[derive(Clone, Debug)]
pub struct Simplex {
    vertices: Vec<Point>,
    cell: OnceLock<ConvexCell>,
}

impl PartialEq for Simplex {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices
    }
}

impl Eq for Simplex {}

impl Hash for Simplex {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.vertices.hash(state);
    }
}

impl Simplex {
    pub fn new(vertices: Vec<Point>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::Geometry("a simplex needs at least one vertex".into()));
        }
        if !affine_independent(&vertices)? {
            return Err(Error::Geometry("simplex vertices are affinely dependent".into()));
        }
        Ok(Self::new_unchecked(vertices))
    }

    pub(crate) fn new_unchecked(mut vertices: Vec<Point>) -> Self {
        vertices.sort();
        Simplex { vertices, cell: OnceLock::new() }
    }

    pub fn point(p: Point) -> Self {
        Self::new_unchecked(vec![p])
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn dim(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn ambient_dim(&self) -> usize {
        self.vertices[0].dim()
    }

    /// The same polytope as a [`ConvexCell`] (computed once).
    pub fn cell(&self) -> &ConvexCell {
        self.cell.get_or_init(|| {
            ConvexCell::hull(self.ambient_dim(), &self.vertices).expect("simplex has vertices")
        })
    }

    pub fn barycenter(&self) -> Point {
        barycenter(&self.vertices)
    }

    /// Barycentric coordinates of `p` if it lies in the affine hull.
    pub fn barycentric(&self, p: &Point) -> Result<Option<Vec<Rational>>> {
        p.check_dim(self.ambient_dim())?;
        let base = self.vertices[0].coords();
        let n = self.ambient_dim();
        let m = self.dim();
        let rows: Vec<Vec<Rational>> = (0..n)
            .map(|r| (1..=m).map(|j| &self.vertices[j][r] - &base[r]).collect())
            .collect();
        let rhs = linalg::sub(p.coords(), base);
        let Some(lambda) = (if m == 0 {
            linalg::is_zero_vec(&rhs).then(Vec::new)
        } else {
            linalg::solve(&rows, &rhs)
        }) else {
            return Ok(None);
        };
        let first = lambda.iter().fold(int(1), |acc, l| acc - l);
        let mut all = vec![first];
        all.extend(lambda);
        Ok(Some(all))
    }

    pub fn contains(&self, p: &Point) -> Result<bool> {
        Ok(self
            .barycentric(p)?
            .is_some_and(|l| l.iter().all(|x| !x.is_negative())))
    }

    /// The face spanned by the listed vertex indices.
    pub fn face(&self, indices: &[usize]) -> Result<Simplex> {
        let mut vs = Vec::with_capacity(indices.len());
        for &i in indices {
            let v = self
                .vertices
                .get(i)
                .ok_or_else(|| Error::Geometry(format!("vertex index {i} out of range")))?;
            vs.push(v.clone());
        }
        Simplex::new(vs)
    }

    /// Euclidean volume for full-dimensional simplices.
    pub fn volume(&self) -> Option<Rational> {
        let n = self.ambient_dim();
        if self.dim() != n {
            return None;
        }
        let base = self.vertices[0].coords();
        let m: Vec<Vec<Rational>> =
            self.vertices[1..].iter().map(|v| linalg::sub(v.coords(), base)).collect();
        let det = if n == 0 { int(1) } else { linalg::determinant(&m) };
        Some(det.abs() / factorial(n))
    }

    /// Squared `m`-dimensional content (Gram determinant), exact in any
    /// ambient dimension.
    pub fn content_squared(&self) -> Rational {
        let base = self.vertices[0].coords();
        let edges: Vec<Vec<Rational>> =
            self.vertices[1..].iter().map(|v| linalg::sub(v.coords(), base)).collect();
        let gram: Vec<Vec<Rational>> = edges
            .iter()
            .map(|a| edges.iter().map(|b| linalg::dot(a, b)).collect())
            .collect();
        let det = if gram.is_empty() { int(1) } else { linalg::determinant(&gram) };
        let f = factorial(self.dim());
        det / (&f * &f)
    }

    pub fn is_degenerate_volume(&self) -> bool {
        self.volume().is_none_or(|v| v.is_zero())
    }
}

fn factorial(n: usize) -> Rational {
    (1..=n as i64).fold(int(1), |acc, k| acc * int(k))
}

/// `simplex_contains`: exact barycentric membership test.
pub fn simplex_contains(s: &Simplex, p: &Point) -> Result<bool> {
    s.contains(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn pt(c: &[(i64, i64)]) -> Point {
        Point::from_ratios(c)
    }

    #[test]
    fn rejects_dependent_vertices() {
        let r = Simplex::new(vec![pt(&[(0, 1), (0, 1)]), pt(&[(1, 1), (1, 1)]), pt(&[(2, 1), (2, 1)])]);
        assert!(r.is_err());
    }

    #[test]
    fn membership() {
        let tri = Simplex::new(vec![pt(&[(0, 1), (0, 1)]), pt(&[(1, 1), (0, 1)]), pt(&[(0, 1), (1, 1)])]).unwrap();
        assert!(tri.contains(&pt(&[(1, 4), (1, 4)])).unwrap());
        assert!(!tri.contains(&pt(&[(1, 1), (1, 1)])).unwrap());
        let seg = Simplex::new(vec![pt(&[(0, 1)]), pt(&[(1, 1)])]).unwrap();
        assert!(seg.contains(&pt(&[(1, 3)])).unwrap());
        assert!(seg.contains(&pt(&[(1, 3), (0, 1)])).is_err());
    }

    #[test]
    fn volumes() {
        let tri = Simplex::new(vec![pt(&[(0, 1), (0, 1)]), pt(&[(1, 1), (0, 1)]), pt(&[(0, 1), (1, 1)])]).unwrap();
        assert_eq!(tri.volume().unwrap(), rat(1, 2));
        assert_eq!(tri.content_squared(), rat(1, 4));
        let diag = Simplex::new(vec![pt(&[(0, 1), (0, 1)]), pt(&[(1, 1), (1, 1)])]).unwrap();
        assert_eq!(diag.volume(), None);
        assert_eq!(diag.content_squared(), int(2));
    }
}
