use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use num_traits::Zero;

use super::piece::AffinePiece;
use crate::geometry::{ConvexCell, Point, Polyhedron};
use crate::par;
use crate::rational::{self, Rational};
use crate::terms::Term;
use crate::{Error, Result};

/// Binary pointwise operations of the standard MV-algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MvOp {
    Oplus,
    Odot,
    Vee,
    Wedge,
    Ominus,
}

/// A continuous piecewise linear function with integer pieces.
///
/// `domain == None` means the whole cube `[0,1]^arity`.
#[derive(Clone, Debug)]
pub struct PlFunction {
    arity: usize,
    cells: Vec<(ConvexCell, AffinePiece)>,
    domain: Option<Polyhedron>,
}

impl PlFunction {
    /// Validates a user-supplied complex: dimensions, range `[0,1]` at
    /// every cell vertex, continuity across shared faces, cells inside the
    /// domain and covering it.
    pub fn new(arity: usize, cells: Vec<(ConvexCell, AffinePiece)>, domain: Option<Polyhedron>) -> Result<Self> {
        for (c, p) in &cells {
            if c.ambient_dim() != arity {
                return Err(Error::DimensionMismatch { expected: arity, found: c.ambient_dim() });
            }
            if p.arity() != arity {
                return Err(Error::DimensionMismatch { expected: arity, found: p.arity() });
            }
        }
        if let Some(d) = &domain {
            if d.dim() != arity {
                return Err(Error::DimensionMismatch { expected: arity, found: d.dim() });
            }
        }
        let f = PlFunction { arity, cells, domain };
        if !f.check_range() {
            return Err(Error::Geometry("a piece leaves [0,1] on its cell".into()));
        }
        if !f.check_continuity() {
            return Err(Error::Geometry("adjacent pieces disagree on a shared face".into()));
        }
        let support = Polyhedron::from_cells(arity, &f.cells.iter().map(|(c, _)| c.clone()).collect::<Vec<_>>());
        let dom = f.domain_polyhedron();
        if !support.is_subset_of(&dom)? {
            return Err(Error::Geometry("cells leave the domain".into()));
        }
        if !dom.is_subset_of(&support)? {
            return Err(Error::Geometry("cells do not cover the domain".into()));
        }
        Ok(f)
    }

    pub(crate) fn from_parts(arity: usize, cells: Vec<(ConvexCell, AffinePiece)>, domain: Option<Polyhedron>) -> Self {
        PlFunction { arity, cells, domain }
    }

    /// The constant `c ∈ {0, 1}` on the cube.
    pub fn constant(n: usize, c: i64) -> Self {
        Self::single(n, AffinePiece::constant_fn(n, c))
    }

    /// The projection `x ↦ x_i` on the cube.
    pub fn coordinate(n: usize, i: usize) -> Self {
        Self::single(n, AffinePiece::coordinate(n, i))
    }

    fn single(n: usize, piece: AffinePiece) -> Self {
        PlFunction { arity: n, cells: vec![(ConvexCell::cube(n), piece)], domain: None }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn cells(&self) -> &[(ConvexCell, AffinePiece)] {
        &self.cells
    }

    /// `None` for the whole cube.
    pub fn domain(&self) -> Option<&Polyhedron> {
        self.domain.as_ref()
    }

    pub fn domain_polyhedron(&self) -> Polyhedron {
        self.domain.clone().unwrap_or_else(|| Polyhedron::cube(self.arity))
    }

    pub fn eval(&self, p: &Point) -> Result<Rational> {
        p.check_dim(self.arity)?;
        let inside = match &self.domain {
            None => p.is_in_cube(),
            Some(d) => d.contains_point(p)?,
        };
        if !inside {
            return Err(Error::OutsideDomain);
        }
        self.cells
            .iter()
            .find(|(c, _)| c.contains(p))
            .map(|(_, piece)| piece.value(p))
            .ok_or(Error::OutsideDomain)
    }

    pub fn neg(&self) -> Self {
        let cells = self.cells.iter().map(|(c, p)| (c.clone(), p.one_minus())).collect();
        PlFunction { arity: self.arity, cells, domain: self.domain.clone() }
    }

    pub fn op(&self, op: MvOp, other: &PlFunction) -> Result<Self> {
        self.check_compatible(other)?;
        let cells = par::flat_map(&self.cells, |(c, f)| {
            other
                .cells
                .iter()
                .filter_map(|(d, g)| {
                    let i = c.intersect(d)?;
                    (i.dim() == c.dim()).then(|| apply(op, &i, f, g))
                })
                .flatten()
                .collect()
        });
        Ok(PlFunction { arity: self.arity, cells, domain: self.domain.clone() })
    }

    /// Exact pointwise equality: the pieces agree at every vertex of every
    /// pairwise cell intersection.
    pub fn equals(&self, other: &PlFunction) -> Result<bool> {
        self.check_compatible(other)?;
        Ok(par::all(&self.cells, |(c, f)| {
            other.cells.iter().all(|(d, g)| {
                f == g
                    || match c.intersect(d) {
                        Some(i) => i.vertices().iter().all(|v| f.value(v) == g.value(v)),
                        None => true,
                    }
            })
        }))
    }

    /// `{p : f(p) = 0}`.
    pub fn zero_set(&self) -> Polyhedron {
        self.level_set(0)
    }

    /// `{p : f(p) = 1}`.
    pub fn one_set(&self) -> Polyhedron {
        self.level_set(1)
    }

    fn level_set(&self, level: i64) -> Polyhedron {
        let cells = par::flat_map(&self.cells, |(c, p)| {
            let h = p.form_minus(level);
            c.clip(&h).and_then(|c| c.clip(&h.negated())).into_iter().collect()
        });
        Polyhedron::from_cells(self.arity, &cells)
    }

    /// The same function on the smaller domain `p`.
    pub fn restrict(&self, p: &Polyhedron) -> Result<Self> {
        if p.dim() != self.arity {
            return Err(Error::DimensionMismatch { expected: self.arity, found: p.dim() });
        }
        match &self.domain {
            None if !p.is_in_cube() => return Err(Error::OutOfCube("restriction domain".into())),
            Some(d) if !p.is_subset_of(d)? => return Err(Error::OutsideDomain),
            _ => {}
        }
        let cells = par::flat_map(p.simplices(), |s| {
            self.cells
                .iter()
                .filter_map(|(c, piece)| {
                    let i = s.cell().intersect(c)?;
                    (i.dim() == s.dim()).then(|| (i, piece.clone()))
                })
                .collect()
        });
        Ok(PlFunction { arity: self.arity, cells, domain: Some(p.clone()) })
    }

    /// Variables with a nonzero coefficient in some piece.
    pub fn used_variables(&self) -> BTreeSet<usize> {
        self.cells
            .iter()
            .flat_map(|(_, p)| p.coeffs().iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, _)| i))
            .collect()
    }

    /// Every piece stays in `[0,1]` on its cell.
    pub fn check_range(&self) -> bool {
        par::all(&self.cells, |(c, p)| c.vertices().iter().all(|v| rational::in_unit_interval(&p.value(v))))
    }

    /// Any two cells agree on their common part.
    pub fn check_continuity(&self) -> bool {
        par::map_range(self.cells.len(), |i| {
            let (c, f) = &self.cells[i];
            self.cells[i + 1..].iter().all(|(d, g)| {
                f == g
                    || c.intersect(d)
                        .is_none_or(|x| x.vertices().iter().all(|v| f.value(v) == g.value(v)))
            })
        })
        .into_iter()
        .all(|ok| ok)
    }

    fn check_compatible(&self, other: &PlFunction) -> Result<()> {
        if self.arity != other.arity {
            return Err(Error::DimensionMismatch { expected: self.arity, found: other.arity });
        }
        let same = match (&self.domain, &other.domain) {
            (None, None) => true,
            (Some(p), Some(q)) => p.simplices() == q.simplices() || p.set_eq(q)?,
            (Some(p), None) | (None, Some(p)) => p.set_eq(&Polyhedron::cube(self.arity))?,
        };
        if same {
            Ok(())
        } else {
            Err(Error::Geometry("functions have different domains".into()))
        }
    }
}

/// The operation on one common cell, split where the formula changes.
fn apply(op: MvOp, cell: &ConvexCell, f: &AffinePiece, g: &AffinePiece) -> Vec<(ConvexCell, AffinePiece)> {
    let n = f.arity();
    let (cut, below, above) = match op {
        MvOp::Oplus => (f.add(g).plus_const(-1), f.add(g), AffinePiece::constant_fn(n, 1)),
        MvOp::Odot => (f.add(g).plus_const(-1), AffinePiece::constant_fn(n, 0), f.add(g).plus_const(-1)),
        MvOp::Vee => (f.sub(g), g.clone(), f.clone()),
        MvOp::Wedge => (f.sub(g), f.clone(), g.clone()),
        MvOp::Ominus => (f.sub(g), AffinePiece::constant_fn(n, 0), f.sub(g)),
    };
    let (lo, hi) = cell.split_proper(&cut.form_minus(0));
    lo.map(|c| (c, below)).into_iter().chain(hi.map(|c| (c, above))).collect()
}

/// Builds the McNaughton function of `t` on `[0,1]^n` by structural
/// recursion, sharing repeated subterms.
pub fn compile(t: &Term, n: usize) -> Result<PlFunction> {
    if t.arity() > n {
        return Err(Error::Arity(format!("term uses x{} but the arity is {n}", t.arity() - 1)));
    }
    let mut memo = HashMap::new();
    Ok(Arc::unwrap_or_clone(compile_rec(t, n, &mut memo)))
}

fn compile_rec(t: &Term, n: usize, memo: &mut HashMap<Term, Arc<PlFunction>>) -> Arc<PlFunction> {
    if let Some(f) = memo.get(t) {
        return f.clone();
    }
    let binary = |op: MvOp, a: &Term, b: &Term, memo: &mut HashMap<Term, Arc<PlFunction>>| {
        let fa = compile_rec(a, n, memo);
        let fb = compile_rec(b, n, memo);
        fa.op(op, &fb).expect("same arity and domain")
    };
    let f = if t.as_one() {
        PlFunction::constant(n, 1)
    } else if let Some((a, b)) = t.as_wedge() {
        binary(MvOp::Wedge, a, b, memo)
    } else if let Some((a, b)) = t.as_odot() {
        binary(MvOp::Odot, a, b, memo)
    } else if let Some((a, b)) = t.as_vee() {
        binary(MvOp::Vee, a, b, memo)
    } else {
        match t {
            Term::Var(i) => PlFunction::coordinate(n, *i),
            Term::Zero => PlFunction::constant(n, 0),
            Term::Neg(a) => compile_rec(a, n, memo).neg(),
            Term::Oplus(a, b) => binary(MvOp::Oplus, a, b, memo),
        }
    };
    let f = Arc::new(f);
    memo.insert(t.clone(), f.clone());
    f
}

pub fn pl_eval(f: &PlFunction, p: &Point) -> Result<Rational> {
    f.eval(p)
}

pub fn pl_op(op: MvOp, f: &PlFunction, g: &PlFunction) -> Result<PlFunction> {
    f.op(op, g)
}

pub fn pl_neg(f: &PlFunction) -> PlFunction {
    f.neg()
}

pub fn pl_equal(f: &PlFunction, g: &PlFunction) -> Result<bool> {
    f.equals(g)
}

pub fn zero_set(f: &PlFunction) -> Polyhedron {
    f.zero_set()
}

pub fn one_set(f: &PlFunction) -> Polyhedron {
    f.one_set()
}

pub fn used_variables(f: &PlFunction) -> BTreeSet<usize> {
    f.used_variables()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{poly_equal, Simplex};
    use crate::rational::{int, rat};
    use crate::terms::{chang_distance, parse_term};

    fn c(text: &str, n: usize) -> PlFunction {
        compile(&parse_term(text).unwrap(), n).unwrap()
    }

    fn pt(c: &[(i64, i64)]) -> Point {
        Point::from_ratios(c)
    }

    fn segment(a: (i64, i64), b: (i64, i64)) -> Polyhedron {
        let s = Simplex::new(vec![pt(&[a]), pt(&[b])]).unwrap();
        Polyhedron::new(1, vec![s]).unwrap()
    }

    #[test]
    fn doubling_has_two_cells() {
        let f = c("x0 (+) x0", 1);
        let mut summary: Vec<(Vec<Point>, String)> =
            f.cells().iter().map(|(c, p)| (c.vertices().to_vec(), p.to_string())).collect();
        summary.sort();
        assert_eq!(
            summary,
            vec![
                (vec![pt(&[(0, 1)]), pt(&[(1, 2)])], "2*x0".to_string()),
                (vec![pt(&[(1, 2)]), pt(&[(1, 1)])], "1".to_string()),
            ]
        );
        assert_eq!(f.eval(&pt(&[(1, 4)])).unwrap(), rat(1, 2));
        assert_eq!(f.eval(&pt(&[(1, 2)])).unwrap(), int(1));
    }

    #[test]
    fn negation_is_one_cell() {
        let f = c("~x0", 1);
        assert_eq!(f.cells().len(), 1);
        assert_eq!(f.cells()[0].1.to_string(), "-x0 + 1");
        assert_eq!(c("1", 2).eval(&pt(&[(1, 3), (2, 3)])).unwrap(), int(1));
    }

    #[test]
    fn equality_examples() {
        assert!(c("x0 (+) x0", 1).equals(&c("~(~x0 & ~x0)", 1)).unwrap());
        assert!(!c("x0", 1).equals(&c("~x0", 1)).unwrap());
        let f = c("x0 (+) 0", 1);
        assert!(f.equals(&c("x0", 1)).unwrap());
    }

    #[test]
    fn level_sets() {
        let d = compile(&chang_distance(&Term::var(0), &parse_term("~x0").unwrap()), 1).unwrap();
        assert!(poly_equal(&d.zero_set(), &Polyhedron::point(pt(&[(1, 2)]))).unwrap());
        assert!(poly_equal(&c("x0 (+) x0", 1).one_set(), &segment((1, 2), (1, 1))).unwrap());
    }

    #[test]
    fn evaluation_outside_domain() {
        let f = c("x0", 1).restrict(&segment((0, 1), (1, 2))).unwrap();
        assert_eq!(f.eval(&pt(&[(3, 4)])), Err(Error::OutsideDomain));
        assert_eq!(f.eval(&pt(&[(1, 4)])).unwrap(), rat(1, 4));
        assert!(matches!(c("x0", 1).eval(&pt(&[(1, 2), (0, 1)])), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn compiled_functions_are_valid() {
        let f = c("(x0 (+) x1) /\\ ~(x0 & x1)", 2);
        assert!(f.check_range());
        assert!(f.check_continuity());
        let g = PlFunction::new(2, f.cells().to_vec(), None).unwrap();
        assert!(g.equals(&f).unwrap());
    }

    #[test]
    fn validation_rejects_discontinuity() {
        let half = |a: (i64, i64), b: (i64, i64)| ConvexCell::hull(1, &[pt(&[a]), pt(&[b])]).unwrap();
        let cells = vec![
            (half((0, 1), (1, 2)), AffinePiece::constant_fn(1, 0)),
            (half((1, 2), (1, 1)), AffinePiece::constant_fn(1, 1)),
        ];
        assert!(PlFunction::new(1, cells, None).is_err());
    }
}
