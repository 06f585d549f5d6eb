use std::fmt;

use crate::rational::{self, Rational};
use crate::{Error, Result};

/// A point of `Q^n`, usually of the unit cube.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point(Vec<Rational>);

impl Point {
    pub fn new(coords: Vec<Rational>) -> Self {
        Point(coords)
    }

    /// Point whose coordinates must all lie in `[0,1]`.
    pub fn in_cube(coords: Vec<Rational>) -> Result<Self> {
        if let Some(c) = coords.iter().find(|c| !rational::in_unit_interval(c)) {
            return Err(Error::OutOfCube(rational::to_text(c)));
        }
        Ok(Point(coords))
    }

    pub fn from_ratios(coords: &[(i64, i64)]) -> Self {
        Point(coords.iter().map(|&(p, q)| rational::rat(p, q)).collect())
    }

    /// Parses a comma-separated coordinate list such as `1/2,1/3`.
    pub fn parse(text: &str) -> Result<Self> {
        if text.trim().is_empty() {
            return Ok(Point(Vec::new()));
        }
        text.split(',').map(rational::parse).collect::<Result<Vec<_>>>().map(Point)
    }

    pub fn origin(dim: usize) -> Self {
        Point(vec![rational::int(0); dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<Rational> {
        self.0
    }

    pub fn is_in_cube(&self) -> bool {
        self.0.iter().all(rational::in_unit_interval)
    }

    pub fn project(&self, coords: &[usize]) -> Point {
        Point(coords.iter().map(|&i| self.0[i].clone()).collect())
    }

    /// Concatenation, used for products of cubes.
    pub fn concat(&self, other: &Point) -> Point {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Point(v)
    }

    pub(crate) fn check_dim(&self, expected: usize) -> Result<()> {
        if self.dim() != expected {
            return Err(Error::DimensionMismatch { expected, found: self.dim() });
        }
        Ok(())
    }
}

impl std::ops::Index<usize> for Point {
    type Output = Rational;
    fn index(&self, i: usize) -> &Rational {
        &self.0[i]
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", rational::to_display(c))?;
        }
        write!(f, ")")
    }
}

/// Average of a non-empty point list; lies in the relative interior of
/// their convex hull when the points are its vertices.
pub fn barycenter(points: &[Point]) -> Point {
    let n = points[0].dim();
    let k = rational::int(points.len() as i64);
    let mut sum = vec![rational::int(0); n];
    for p in points {
        for (s, c) in sum.iter_mut().zip(p.coords()) {
            *s += c;
        }
    }
    Point(sum.into_iter().map(|s| s / &k).collect())
}

/// Dimension of the affine hull (`-1` is not representable: callers pass a
/// non-empty slice).
pub fn affine_rank<P: std::borrow::Borrow<Point>>(points: &[P]) -> usize {
    let Some(first) = points.first() else { return 0 };
    let base = first.borrow().coords();
    let rows: Vec<Vec<Rational>> = points[1..]
        .iter()
        .map(|p| super::linalg::sub(p.borrow().coords(), base))
        .collect();
    super::linalg::rank(&rows)
}

/// True iff the points are affinely independent.
pub fn affine_independent(points: &[Point]) -> Result<bool> {
    if let Some(first) = points.first() {
        for p in points {
            p.check_dim(first.dim())?;
        }
    } else {
        return Ok(true);
    }
    Ok(affine_rank(points) + 1 == points.len())
}
