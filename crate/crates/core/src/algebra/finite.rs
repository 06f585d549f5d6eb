use std::collections::BTreeSet;

use crate::geometry::Point;
use crate::rational::{self, rat};
use crate::{Error, Result};

/// A finite subalgebra of `[0,1]^ambient` with coordinatewise operations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteMVAlgebra {
    ambient: usize,
    elements: Vec<Point>,
}

pub(crate) fn neg(a: &Point) -> Point {
    Point::new(a.coords().iter().map(rational::mv_neg).collect())
}

pub(crate) fn oplus(a: &Point, b: &Point) -> Point {
    Point::new(a.coords().iter().zip(b.coords()).map(|(x, y)| rational::mv_oplus(x, y)).collect())
}

pub(crate) fn odot(a: &Point, b: &Point) -> Point {
    Point::new(a.coords().iter().zip(b.coords()).map(|(x, y)| rational::mv_odot(x, y)).collect())
}

impl FiniteMVAlgebra {
    /// Checks the tuples and closure under `0`, `¬`, `⊕` exhaustively.
    pub fn new(ambient: usize, elements: Vec<Point>) -> Result<Self> {
        let set: BTreeSet<Point> = elements.into_iter().collect();
        for e in &set {
            if e.dim() != ambient {
                return Err(Error::DimensionMismatch { expected: ambient, found: e.dim() });
            }
            if !e.is_in_cube() {
                return Err(Error::OutOfCube(e.to_string()));
            }
        }
        if !set.contains(&Point::origin(ambient)) {
            return Err(Error::Algebra("the zero tuple is missing".into()));
        }
        for a in &set {
            if !set.contains(&neg(a)) {
                return Err(Error::Algebra(format!("not closed under negation at {a}")));
            }
            if let Some(b) = set.iter().find(|b| !set.contains(&oplus(a, b))) {
                return Err(Error::Algebra(format!("not closed under ⊕ at {a}, {b}")));
            }
        }
        Ok(FiniteMVAlgebra { ambient, elements: set.into_iter().collect() })
    }

    /// The one-element algebra, where `0 = 1`.
    pub fn trivial() -> Self {
        FiniteMVAlgebra { ambient: 0, elements: vec![Point::new(Vec::new())] }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    /// Elements in lexicographic order.
    pub fn elements(&self) -> &[Point] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn index_of(&self, a: &Point) -> Option<usize> {
        self.elements.binary_search(a).ok()
    }

    pub fn zero(&self) -> Point {
        Point::origin(self.ambient)
    }

    pub fn one(&self) -> Point {
        neg(&self.zero())
    }

    pub fn labels(&self) -> Vec<String> {
        self.elements.iter().map(ToString::to_string).collect()
    }
}

/// `{0, 1/n, …, 1}`.
pub fn chain(n: usize) -> Result<FiniteMVAlgebra> {
    if n == 0 {
        return Err(Error::Algebra("a chain needs n >= 1".into()));
    }
    let elements = (0..=n as i64).map(|k| Point::new(vec![rat(k, n as i64)])).collect();
    Ok(FiniteMVAlgebra { ambient: 1, elements })
}

/// Direct product, as tuples of concatenated coordinates.
pub fn product(a: &FiniteMVAlgebra, b: &FiniteMVAlgebra) -> FiniteMVAlgebra {
    let mut elements: Vec<Point> =
        a.elements.iter().flat_map(|x| b.elements.iter().map(move |y| x.concat(y))).collect();
    elements.sort();
    FiniteMVAlgebra { ambient: a.ambient + b.ambient, elements }
}

/// The least subalgebra of `[0,1]^ambient` containing `gens`.
pub fn subalgebra_closure(ambient: usize, gens: &[Point]) -> Result<FiniteMVAlgebra> {
    for g in gens {
        g.check_dim(ambient)?;
        if !g.is_in_cube() {
            return Err(Error::OutOfCube(g.to_string()));
        }
    }
    let mut set: BTreeSet<Point> = BTreeSet::new();
    let mut queue: Vec<Point> = vec![Point::origin(ambient)];
    queue.extend(gens.iter().cloned());
    while let Some(x) = queue.pop() {
        if !set.insert(x.clone()) {
            continue;
        }
        queue.push(neg(&x));
        queue.extend(set.iter().map(|y| oplus(&x, y)).filter(|z| !set.contains(z)));
    }
    Ok(FiniteMVAlgebra { ambient, elements: set.into_iter().collect() })
}
