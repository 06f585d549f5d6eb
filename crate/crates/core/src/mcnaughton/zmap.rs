use itertools::Itertools;

use super::function::{compile, PlFunction};
use super::piece::AffinePiece;
use crate::geometry::{AffineForm, ConvexCell, Point, Polyhedron};
use crate::par;
use crate::rational::{from_bigint, Rational};
use crate::terms::Term;
use crate::{Error, Result};

/// A map `p ↦ (f_1(p), …, f_k(p))` from a closed subset of `[0,1]^m` into
/// `[0,1]^k` whose components are McNaughton functions.
///
/// Components are stored on the whole cube; `domain` (`None` = the cube)
/// is where the map is considered.
#[derive(Clone, Debug)]
pub struct ZMap {
    source_dim: usize,
    domain: Option<Polyhedron>,
    components: Vec<PlFunction>,
}

/// Cells of the common refinement of all components, each with the affine
/// map in force there.
type JointCell = (ConvexCell, Vec<AffinePiece>);

impl ZMap {
    pub fn new(source_dim: usize, domain: Option<Polyhedron>, components: Vec<PlFunction>) -> Result<Self> {
        if let Some(d) = &domain {
            if d.dim() != source_dim {
                return Err(Error::DimensionMismatch { expected: source_dim, found: d.dim() });
            }
            if !d.is_in_cube() {
                return Err(Error::OutOfCube("map domain".into()));
            }
        }
        for f in &components {
            if f.arity() != source_dim {
                return Err(Error::DimensionMismatch { expected: source_dim, found: f.arity() });
            }
            if f.domain().is_some() {
                return Err(Error::Geometry("map components must be defined on the whole cube".into()));
            }
        }
        Ok(ZMap { source_dim, domain, components })
    }

    /// Components compiled from terms over `source_dim` variables.
    pub fn from_terms(source_dim: usize, domain: Option<Polyhedron>, terms: &[Term]) -> Result<Self> {
        let components = terms.iter().map(|t| compile(t, source_dim)).collect::<Result<Vec<_>>>()?;
        Self::new(source_dim, domain, components)
    }

    pub fn identity(n: usize, domain: Option<Polyhedron>) -> Result<Self> {
        Self::projection(n, &(0..n).collect::<Vec<_>>(), domain)
    }

    /// `p ↦ (p_{coords[0]}, p_{coords[1]}, …)`.
    pub fn projection(n: usize, coords: &[usize], domain: Option<Polyhedron>) -> Result<Self> {
        if let Some(&bad) = coords.iter().find(|&&i| i >= n) {
            return Err(Error::DimensionMismatch { expected: n, found: bad + 1 });
        }
        let components = coords.iter().map(|&i| PlFunction::coordinate(n, i)).collect();
        Self::new(n, domain, components)
    }

    pub fn source_dim(&self) -> usize {
        self.source_dim
    }

    pub fn target_dim(&self) -> usize {
        self.components.len()
    }

    pub fn domain(&self) -> Option<&Polyhedron> {
        self.domain.as_ref()
    }

    pub fn domain_polyhedron(&self) -> Polyhedron {
        self.domain.clone().unwrap_or_else(|| Polyhedron::cube(self.source_dim))
    }

    pub fn components(&self) -> &[PlFunction] {
        &self.components
    }

    /// Components restricted to the domain.
    pub fn restricted_components(&self) -> Result<Vec<PlFunction>> {
        match &self.domain {
            None => Ok(self.components.clone()),
            Some(d) => self.components.iter().map(|f| f.restrict(d)).collect(),
        }
    }

    pub fn apply(&self, p: &Point) -> Result<Point> {
        p.check_dim(self.source_dim)?;
        if let Some(d) = &self.domain {
            if !d.contains_point(p)? {
                return Err(Error::OutsideDomain);
            }
        }
        let coords = self.components.iter().map(|f| f.eval(p)).collect::<Result<Vec<_>>>()?;
        Ok(Point::new(coords))
    }

    /// Equality as maps on the (common) domain.
    pub fn equals(&self, other: &ZMap) -> Result<bool> {
        if self.source_dim != other.source_dim || self.target_dim() != other.target_dim() {
            return Err(Error::DimensionMismatch { expected: self.target_dim(), found: other.target_dim() });
        }
        if !self.domain_polyhedron().set_eq(&other.domain_polyhedron())? {
            return Ok(false);
        }
        let (mine, theirs) = (self.restricted_components()?, other.restricted_components()?);
        for (f, g) in mine.iter().zip(&theirs) {
            if !f.equals(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn joint_cells(&self) -> Vec<JointCell> {
        let m = self.source_dim;
        let mut cells: Vec<JointCell> = vec![(ConvexCell::cube(m), Vec::new())];
        for f in &self.components {
            cells = par::flat_map(&cells, |(c, rows)| {
                f.cells()
                    .iter()
                    .filter_map(|(d, piece)| {
                        let i = c.intersect(d)?;
                        (i.dim() == m).then(|| {
                            let mut rows = rows.clone();
                            rows.push(piece.clone());
                            (i, rows)
                        })
                    })
                    .collect()
            });
        }
        cells
    }

    /// Image of the domain, as a polyhedron in `[0,1]^target_dim`.
    pub fn image(&self) -> Polyhedron {
        let joint = self.joint_cells();
        let pieces: Vec<JointCell> = match &self.domain {
            None => joint,
            Some(d) => par::flat_map(d.simplices(), |s| {
                joint
                    .iter()
                    .filter_map(|(c, rows)| {
                        let i = s.cell().intersect(c)?;
                        (i.dim() == s.dim()).then(|| (i, rows.clone()))
                    })
                    .collect()
            }),
        };
        let k = self.target_dim();
        let cells = par::map(&pieces, |(c, rows)| {
            let pts: Vec<Point> = c.vertices().iter().map(|v| map_point(rows, v)).collect();
            ConvexCell::hull(k, &pts).expect("non-empty cell")
        });
        Polyhedron::from_cells(k, &cells)
    }
}

fn map_point(rows: &[AffinePiece], v: &Point) -> Point {
    Point::new(rows.iter().map(|r| r.value(v)).collect())
}

/// `{x : form(rows(x)) <= 0}` as a form in the source variables.
fn pull_back(form: &AffineForm, rows: &[AffinePiece], n: usize) -> AffineForm {
    let mut coeffs = vec![Rational::from_integer(0.into()); n];
    let mut constant = form.constant().clone();
    for (a, row) in form.coeffs().iter().zip(rows) {
        for (c, r) in coeffs.iter_mut().zip(row.coeffs()) {
            *c += a * from_bigint(r);
        }
        constant += a * from_bigint(row.constant());
    }
    AffineForm::new(coeffs, constant)
}

fn bbox_meets(pts: &[Point], cell: &ConvexCell) -> bool {
    let (lo, hi) = cell.bounds();
    (0..lo.len()).all(|i| {
        let min = pts.iter().map(|p| &p[i]).min().expect("non-empty");
        let max = pts.iter().map(|p| &p[i]).max().expect("non-empty");
        *min <= hi[i] && lo[i] <= *max
    })
}

/// `g ∘ f`. The image of `f`'s domain must lie in `g`'s domain.
pub fn compose(g: &ZMap, f: &ZMap) -> Result<ZMap> {
    if f.target_dim() != g.source_dim {
        return Err(Error::DimensionMismatch { expected: g.source_dim, found: f.target_dim() });
    }
    if let Some(d) = &g.domain {
        if !f.image().is_subset_of(d)? {
            return Err(Error::OutsideDomain);
        }
    }
    let k = f.source_dim;
    let joint = f.joint_cells();
    let images: Vec<Vec<Point>> =
        par::map(&joint, |(c, rows)| c.vertices().iter().map(|v| map_point(rows, v)).collect());
    let components = g
        .components
        .iter()
        .map(|h| {
            let cells = par::map_range(joint.len(), |j| {
                let (r, rows) = &joint[j];
                h.cells()
                    .iter()
                    .filter(|(d, _)| bbox_meets(&images[j], d))
                    .filter_map(|(d, piece)| {
                        let mut cut = r.clone();
                        for form in d.constraints() {
                            cut = cut.clip(&pull_back(form, rows, k))?;
                        }
                        (cut.dim() == k).then(|| (cut, piece.compose(rows, k)))
                    })
                    .collect::<Vec<_>>()
            })
            .into_iter()
            .flatten()
            .collect();
            PlFunction::from_parts(k, cells, None)
        })
        .collect();
    Ok(ZMap { source_dim: k, domain: f.domain.clone(), components })
}

/// `π_{J'} ∘ η = ξ ∘ π_{I'}` with `I' = coords`.
#[derive(Clone, Debug)]
pub struct Factorization {
    pub coords: Vec<usize>,
    pub xi: ZMap,
}

impl Factorization {
    /// Checks the commutation on the domain of `eta` exactly.
    pub fn verify(&self, eta: &ZMap, selected: &[usize]) -> Result<bool> {
        let lhs = ZMap {
            source_dim: eta.source_dim,
            domain: eta.domain.clone(),
            components: selected.iter().map(|&j| eta.components[j].clone()).collect(),
        };
        let pi = ZMap::projection(eta.source_dim, &self.coords, eta.domain.clone())?;
        lhs.equals(&compose(&self.xi, &pi)?)
    }
}

/// Restricts `eta` to the components `selected` and factors it through the
/// coordinates those components actually use.
pub fn factor(eta: &ZMap, selected: &[usize]) -> Result<Factorization> {
    if let Some(&bad) = selected.iter().find(|&&j| j >= eta.target_dim()) {
        return Err(Error::DimensionMismatch { expected: eta.target_dim(), found: bad + 1 });
    }
    if selected.iter().duplicates().next().is_some() {
        return Err(Error::Geometry("repeated component index".into()));
    }
    let coords: Vec<usize> = selected
        .iter()
        .flat_map(|&j| eta.components[j].used_variables())
        .sorted()
        .dedup()
        .collect();
    let components = selected
        .iter()
        .map(|&j| {
            let cells = eta.components[j]
                .cells()
                .iter()
                .filter_map(|(c, p)| c.restrict_to_coordinate_face(&coords).map(|c| (c, p.select(&coords))))
                .collect();
            PlFunction::from_parts(coords.len(), cells, None)
        })
        .collect();
    let domain = match &eta.domain {
        None => None,
        Some(d) if d.is_empty() => Some(Polyhedron::empty(coords.len())),
        Some(_) if coords.is_empty() => Some(Polyhedron::point(Point::new(Vec::new()))),
        Some(d) => Some(d.project(&coords)?),
    };
    let xi = ZMap { source_dim: coords.len(), domain, components };
    Ok(Factorization { coords, xi })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};
    use crate::terms::parse_term;

    fn terms(ts: &[&str]) -> Vec<Term> {
        ts.iter().map(|t| parse_term(t).unwrap()).collect()
    }

    #[test]
    fn involution_composes_to_identity() {
        let f = ZMap::from_terms(1, None, &terms(&["~x0"])).unwrap();
        let id = ZMap::identity(1, None).unwrap();
        assert!(compose(&f, &f).unwrap().equals(&id).unwrap());
        assert!(compose(&id, &f).unwrap().equals(&f).unwrap());
    }

    #[test]
    fn doubling_twice() {
        let f = ZMap::from_terms(1, None, &terms(&["x0 (+) x0"])).unwrap();
        let ff = compose(&f, &f).unwrap();
        let expect = ZMap::from_terms(1, None, &terms(&["x0 (+) x0 (+) x0 (+) x0"])).unwrap();
        assert!(ff.equals(&expect).unwrap());
        let at = |a, b| ff.apply(&Point::from_ratios(&[(a, b)])).unwrap()[0].clone();
        assert_eq!(at(1, 8), rat(1, 2));
        assert_eq!(at(1, 4), int(1));
    }

    #[test]
    fn factor_examples() {
        let eta = ZMap::from_terms(3, None, &terms(&["x0", "x2"])).unwrap();
        let fz = factor(&eta, &[0]).unwrap();
        assert_eq!(fz.coords, vec![0]);
        assert!(fz.xi.equals(&ZMap::identity(1, None).unwrap()).unwrap());
        assert!(fz.verify(&eta, &[0]).unwrap());

        let eta = ZMap::from_terms(4, None, &terms(&["1", "x1 (+) x3"])).unwrap();
        let fz = factor(&eta, &[0]).unwrap();
        assert!(fz.coords.is_empty());
        assert!(fz.verify(&eta, &[0]).unwrap());
        let fz = factor(&eta, &[1]).unwrap();
        assert_eq!(fz.coords, vec![1, 3]);
        assert!(fz.verify(&eta, &[1]).unwrap());
    }

    #[test]
    fn composition_checks_domains() {
        let half = Polyhedron::point(Point::from_ratios(&[(1, 2)]));
        let g = ZMap::from_terms(1, Some(half), &terms(&["x0"])).unwrap();
        let f = ZMap::from_terms(1, None, &terms(&["x0"])).unwrap();
        assert_eq!(compose(&g, &f).unwrap_err(), Error::OutsideDomain);
        let two = ZMap::identity(2, None).unwrap();
        assert!(matches!(compose(&two, &f), Err(Error::DimensionMismatch { .. })));
    }
}
