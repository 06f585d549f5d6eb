//! Bouligand–Severi tangents of polynomial curve germs and rationally
//! outgoing witnesses.
//!
//! A germ is `x_i = x + Σ_k c_k·i^{-k}`. Unit vectors are never formed:
//! tangent directions are rational rays, and every condition below is
//! invariant under positive rescaling of each ray, the scale being absorbed
//! into the witness lengths `λ`.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::geometry::linalg::{dot, is_zero_vec, orthogonal_residual};
use crate::geometry::{Point, Polyhedron, Simplex};
use crate::rational::{self, Rational};
use crate::{Error, Result};

/// Eventual sign of `q(t) = Σ_k poly[k]·t^k` as `t = 1/i → 0+`.
fn eventual_sign(poly: &[Rational]) -> Ordering {
    poly.iter()
        .find(|a| !a.is_zero())
        .map_or(Ordering::Equal, |a| if a.is_positive() { Ordering::Greater } else { Ordering::Less })
}

/// An index beyond which `q(1/i)` has its eventual sign:
/// `i > Σ_{k>j} |a_k| / |a_j|`, `a_j` the lowest nonzero coefficient.
fn sign_threshold(poly: &[Rational]) -> u64 {
    let Some(j) = poly.iter().position(|a| !a.is_zero()) else { return 1 };
    let tail: Rational = poly[j + 1..].iter().map(Signed::abs).sum();
    let bound = (tail / poly[j].abs()).floor().to_integer() + BigInt::one();
    u64::try_from(bound).unwrap_or(u64::MAX)
}

fn eval_at(poly: &[Rational], i: u64) -> Rational {
    let t = Rational::new(BigInt::one(), BigInt::from(i));
    poly.iter().rev().fold(Rational::zero(), |acc, a| acc * &t + a)
}

/// The least `i0 >= 1` with `q(1/i) >= 0` for all `i >= i0`, if any.
fn nonneg_start(poly: &[Rational]) -> Option<u64> {
    if eventual_sign(poly) == Ordering::Less {
        return None;
    }
    let last_bad = (1..=sign_threshold(poly)).rev().find(|&i| eval_at(poly, i).is_negative());
    Some(last_bad.map_or(1, |i| i + 1))
}

/// `x_i = base + Σ_k coeffs[k-1]·i^{-k}` for integers `i >= i0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveGerm {
    base: Point,
    coeffs: Vec<Vec<Rational>>,
    i0: u64,
}

impl CurveGerm {
    /// Checks `x_i ∈ [0,1]^n` for all `i >= i0` exactly.
    pub fn new(base: Point, coeffs: Vec<Vec<Rational>>, i0: u64) -> Result<Self> {
        let n = base.dim();
        if let Some(c) = coeffs.iter().find(|c| c.len() != n) {
            return Err(Error::DimensionMismatch { expected: n, found: c.len() });
        }
        if i0 == 0 {
            return Err(Error::Tangent("the germ must start at i0 >= 1".into()));
        }
        let g = CurveGerm { base, coeffs, i0 };
        match g.valid_start() {
            Some(start) if start <= i0 => Ok(g),
            Some(start) => Err(Error::OutOfCube(format!("germ leaves [0,1] before i = {start}"))),
            None => Err(Error::OutOfCube("germ eventually leaves [0,1]".into())),
        }
    }

    /// Like [`new`](Self::new), starting at the least valid index `>= min_i0`.
    pub fn with_valid_start(base: Point, coeffs: Vec<Vec<Rational>>, min_i0: u64) -> Result<Self> {
        let probe = CurveGerm { base, coeffs, i0: 1 };
        let start = probe.valid_start().ok_or_else(|| Error::OutOfCube("germ eventually leaves [0,1]".into()))?;
        CurveGerm::new(probe.base, probe.coeffs, start.max(min_i0).max(1))
    }

    /// The least `i0` with `x_i ∈ [0,1]^n` for all `i >= i0`.
    fn valid_start(&self) -> Option<u64> {
        let mut start = 1;
        for j in 0..self.dim() {
            let lower = self.coordinate_poly(j);
            let mut upper: Vec<Rational> = lower.iter().map(|a| -a).collect();
            upper[0] += Rational::one();
            start = start.max(nonneg_start(&lower)?).max(nonneg_start(&upper)?);
        }
        Some(start)
    }

    pub fn base(&self) -> &Point {
        &self.base
    }

    pub fn coeffs(&self) -> &[Vec<Rational>] {
        &self.coeffs
    }

    pub fn i0(&self) -> u64 {
        self.i0
    }

    pub fn dim(&self) -> usize {
        self.base.dim()
    }

    pub fn point(&self, i: u64) -> Point {
        Point::new((0..self.dim()).map(|j| eval_at(&self.coordinate_poly(j), i)).collect())
    }

    fn coordinate_poly(&self, j: usize) -> Vec<Rational> {
        std::iter::once(self.base[j].clone()).chain(self.coeffs.iter().map(|c| c[j].clone())).collect()
    }

    /// `form(x_i)` as a polynomial in `1/i`.
    fn compose_form(&self, coeffs: &[Rational], constant: &Rational) -> Vec<Rational> {
        std::iter::once(dot(coeffs, self.base.coords()) + constant)
            .chain(self.coeffs.iter().map(|c| dot(coeffs, c)))
            .collect()
    }

    /// Multiplies `c_k` (zero-based) by `s > 0`; the start index grows if
    /// needed to stay in the cube.
    pub fn rescaled(&self, k: usize, s: &Rational) -> Result<Self> {
        let mut coeffs = self.coeffs.clone();
        let c = coeffs.get_mut(k).ok_or_else(|| Error::Tangent(format!("no coefficient {k}")))?;
        for x in c.iter_mut() {
            *x *= s;
        }
        CurveGerm::with_valid_start(self.base.clone(), coeffs, self.i0)
    }
}

/// Pairwise orthogonal nonzero rational directions at a base point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TangentTuple {
    base: Point,
    directions: Vec<Vec<Rational>>,
}

impl TangentTuple {
    pub fn new(base: Point, directions: Vec<Vec<Rational>>) -> Result<Self> {
        for (s, d) in directions.iter().enumerate() {
            d.len()
                .eq(&base.dim())
                .then_some(())
                .ok_or(Error::DimensionMismatch { expected: base.dim(), found: d.len() })?;
            if is_zero_vec(d) {
                return Err(Error::Tangent(format!("direction {s} is zero")));
            }
            if directions[..s].iter().any(|e| !dot(d, e).is_zero()) {
                return Err(Error::Tangent(format!("direction {s} is not orthogonal to the previous ones")));
            }
        }
        Ok(TangentTuple { base, directions })
    }

    pub fn base(&self) -> &Point {
        &self.base
    }

    pub fn directions(&self) -> &[Vec<Rational>] {
        &self.directions
    }

    pub fn k(&self) -> usize {
        self.directions.len()
    }

    /// Each direction rescaled to a primitive integer vector.
    pub fn canonical(&self) -> Self {
        let directions = self.directions.iter().map(|d| primitive(d)).collect();
        TangentTuple { base: self.base.clone(), directions }
    }

    /// Same rays, possibly different representatives.
    pub fn same_rays(&self, other: &TangentTuple) -> bool {
        self.base == other.base && self.canonical().directions == other.canonical().directions
    }
}

fn primitive(d: &[Rational]) -> Vec<Rational> {
    let l = d.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = d.iter().map(|x| (x * Rational::from_integer(l.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    ints.into_iter().map(|x| Rational::from_integer(x / &g)).collect()
}

/// The first `k` tangent directions: Gram–Schmidt without normalisation
/// over `c_1, c_2, …`, skipping coefficients already in the span.
pub fn extract_tangent(g: &CurveGerm, k: usize) -> Result<TangentTuple> {
    if k == 0 {
        return Err(Error::Tangent("k must be at least 1".into()));
    }
    if g.coeffs.iter().all(|c| is_zero_vec(c)) {
        return Err(Error::Tangent("constant germ".into()));
    }
    let mut basis: Vec<Vec<Rational>> = Vec::new();
    for c in &g.coeffs {
        if basis.len() == k {
            break;
        }
        let r = orthogonal_residual(c, &basis);
        if !is_zero_vec(&r) {
            basis.push(r);
        }
    }
    if basis.len() < k {
        return Err(Error::Tangent(format!("the germ has only {} independent stages, {k} requested", basis.len())));
    }
    Ok(TangentTuple { base: g.base.clone(), directions: basis })
}

/// Whether `x_i ∈ X` for all large `i`.
pub fn germ_in_polyhedron(x: &Polyhedron, g: &CurveGerm) -> Result<bool> {
    if x.dim() != g.dim() {
        return Err(Error::DimensionMismatch { expected: x.dim(), found: g.dim() });
    }
    Ok(x.simplices().iter().any(|s| germ_in_simplex(s, g)))
}

fn germ_in_simplex(s: &Simplex, g: &CurveGerm) -> bool {
    s.cell()
        .constraints()
        .iter()
        .all(|h| eventual_sign(&g.compose_form(h.coeffs(), h.constant())) != Ordering::Greater)
}

/// No `x_i - x` lies in the span of `u` for large `i`.
pub fn tangent_condition_2(g: &CurveGerm, u: &TangentTuple) -> Result<bool> {
    if g.base != u.base {
        return Err(Error::Tangent("germ and tangent have different base points".into()));
    }
    Ok(g.coeffs.iter().any(|c| !is_zero_vec(&orthogonal_residual(c, &u.directions))))
}

/// A rational simplex `S`, a face `F` (possibly empty) and positive
/// lengths `λ`.
#[derive(Clone, Debug)]
pub struct OutgoingWitness {
    simplex: Simplex,
    face: Vec<Point>,
    face_indices: Vec<usize>,
    lambda: Vec<Rational>,
}

impl OutgoingWitness {
    /// `face` indexes into `vertices` as given.
    pub fn new(vertices: Vec<Point>, face: Vec<usize>, lambda: Vec<Rational>) -> Result<Self> {
        let mut seen = vec![false; vertices.len()];
        for &i in &face {
            match seen.get_mut(i) {
                None => return Err(Error::Tangent(format!("face index {i} out of range"))),
                Some(true) => return Err(Error::Tangent(format!("face index {i} repeated"))),
                Some(s) => *s = true,
            }
        }
        if let Some(l) = lambda.iter().find(|l| !l.is_positive()) {
            return Err(Error::Tangent(format!("lambda {} is not positive", rational::to_text(l))));
        }
        let face_points = face.iter().map(|&i| vertices[i].clone()).collect();
        let simplex = Simplex::new(vertices)?;
        Ok(OutgoingWitness { simplex, face: face_points, face_indices: face, lambda })
    }

    pub fn simplex(&self) -> &Simplex {
        &self.simplex
    }

    pub fn face_indices(&self) -> &[usize] {
        &self.face_indices
    }

    pub fn face_points(&self) -> &[Point] {
        &self.face
    }

    pub fn lambda(&self) -> &[Rational] {
        &self.lambda
    }

    fn face_polyhedron(&self) -> Result<Polyhedron> {
        let n = self.simplex.ambient_dim();
        if self.face.is_empty() {
            return Ok(Polyhedron::empty(n));
        }
        Polyhedron::new(n, vec![Simplex::new(self.face.clone())?])
    }
}

/// `x, x + λ_1 d_1, x + λ_1 d_1 + λ_2 d_2, …`.
pub fn chain_points(u: &TangentTuple, lambda: &[Rational]) -> Vec<Point> {
    let mut cur = u.base.coords().to_vec();
    let mut out = vec![Point::new(cur.clone())];
    for (d, l) in u.directions.iter().zip(lambda) {
        for (c, di) in cur.iter_mut().zip(d) {
            *c += l * di;
        }
        out.push(Point::new(cur.clone()));
    }
    out
}

/// The three witness conditions, evaluated independently.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OutgoingConditions {
    /// (1) every chain point lies in `S`.
    pub chain_in_simplex: bool,
    /// (2) some chain point lies outside `F`.
    pub chain_leaves_face: bool,
    /// (3) `F ∩ X = S ∩ X`.
    pub same_trace: bool,
}

impl OutgoingConditions {
    pub fn all(&self) -> bool {
        self.chain_in_simplex && self.chain_leaves_face && self.same_trace
    }
}

fn check_witness_shape(x: &Polyhedron, u: &TangentTuple, w: &OutgoingWitness) -> Result<()> {
    let n = x.dim();
    for found in [w.simplex.ambient_dim(), u.base.dim()] {
        if found != n {
            return Err(Error::DimensionMismatch { expected: n, found });
        }
    }
    if w.lambda.len() != u.k() {
        return Err(Error::Tangent(format!("{} lengths for {} directions", w.lambda.len(), u.k())));
    }
    Ok(())
}

fn same_trace(x: &Polyhedron, w: &OutgoingWitness, f: &Polyhedron) -> Result<bool> {
    let s = Polyhedron::new(x.dim(), vec![w.simplex.clone()])?;
    f.intersect(x)?.set_eq(&s.intersect(x)?)
}

pub fn outgoing_conditions(x: &Polyhedron, u: &TangentTuple, w: &OutgoingWitness) -> Result<OutgoingConditions> {
    check_witness_shape(x, u, w)?;
    let chain = chain_points(u, &w.lambda);
    let f = w.face_polyhedron()?;
    let mut chain_in_simplex = true;
    let mut chain_leaves_face = false;
    for p in &chain {
        chain_in_simplex &= w.simplex.contains(p)?;
        chain_leaves_face |= !f.contains_point(p)?;
    }
    Ok(OutgoingConditions { chain_in_simplex, chain_leaves_face, same_trace: same_trace(x, w, &f)? })
}

/// The three witness conditions: the chain lies in `S`, not entirely in
/// `F`, and `F ∩ X = S ∩ X`. Stops at the first failing condition.
pub fn verify_outgoing(x: &Polyhedron, u: &TangentTuple, w: &OutgoingWitness) -> Result<bool> {
    check_witness_shape(x, u, w)?;
    let chain = chain_points(u, &w.lambda);
    for p in &chain {
        if !w.simplex.contains(p)? {
            return Ok(false);
        }
    }
    let f = w.face_polyhedron()?;
    let mut leaves = false;
    for p in &chain {
        leaves |= !f.contains_point(p)?;
    }
    if !leaves {
        return Ok(false);
    }
    same_trace(x, w, &f)
}

/// A complete certificate that `X` has a rationally outgoing `k`-tangent:
/// the germ stays in `X`, escapes the span of its first `k` directions,
/// and `w` witnesses the outgoing conditions for those directions (taken
/// as primitive integer rays).
pub fn check_outgoing_tangent(x: &Polyhedron, g: &CurveGerm, k: usize, w: &OutgoingWitness) -> Result<bool> {
    let n = x.dim();
    if k == 0 || k >= n {
        return Err(Error::Tangent(format!("k must lie in 1..={} for dimension {n}", n.saturating_sub(1))));
    }
    if !germ_in_polyhedron(x, g)? {
        return Ok(false);
    }
    let u = extract_tangent(g, k)?.canonical();
    if !tangent_condition_2(g, &u)? {
        return Ok(false);
    }
    verify_outgoing(x, &u, w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn v(c: &[(i64, i64)]) -> Vec<Rational> {
        c.iter().map(|&(p, q)| rat(p, q)).collect()
    }

    fn p(c: &[(i64, i64)]) -> Point {
        Point::from_ratios(c)
    }

    fn germ(base: &[(i64, i64)], coeffs: &[&[(i64, i64)]]) -> CurveGerm {
        CurveGerm::with_valid_start(p(base), coeffs.iter().map(|c| v(c)).collect(), 1).unwrap()
    }

    fn poly(pts: &[&[(i64, i64)]]) -> Polyhedron {
        let s = Simplex::new(pts.iter().map(|c| p(c)).collect()).unwrap();
        Polyhedron::new(s.ambient_dim(), vec![s]).unwrap()
    }

    #[test]
    fn extraction() {
        let g = germ(&[(0, 1), (0, 1)], &[&[(1, 1), (0, 1)], &[(0, 1), (1, 1)]]);
        assert_eq!(extract_tangent(&g, 2).unwrap().directions(), &[v(&[(1, 1), (0, 1)]), v(&[(0, 1), (1, 1)])]);
        let g = germ(&[(0, 1), (0, 1)], &[&[(1, 2), (1, 2)], &[(1, 2), (0, 1)]]);
        let u = extract_tangent(&g, 2).unwrap();
        assert_eq!(u.directions()[1], v(&[(1, 4), (-1, 4)]));
        assert_eq!(u.canonical().directions()[1], v(&[(1, 1), (-1, 1)]));
        assert_eq!(extract_tangent(&g, 1).unwrap().directions(), &[v(&[(1, 2), (1, 2)])]);
        let g = germ(&[(0, 1), (0, 1)], &[&[(1, 1), (1, 1)], &[(1, 1), (0, 1)]]);
        assert_eq!(extract_tangent(&g, 2).unwrap().directions()[1], v(&[(1, 2), (-1, 2)]));
        assert!(extract_tangent(&germ(&[(1, 2)], &[&[(0, 1)]]), 1).is_err());
        assert!(extract_tangent(&germ(&[(0, 1)], &[&[(1, 1)]]), 2).is_err());
    }

    #[test]
    fn germ_validation() {
        assert!(CurveGerm::new(p(&[(0, 1)]), vec![v(&[(-1, 1)])], 1).is_err());
        // 1/2 - 3/i stays in [0,1] only from i = 6 on
        assert!(CurveGerm::new(p(&[(1, 2)]), vec![v(&[(-3, 1)])], 5).is_err());
        assert!(CurveGerm::new(p(&[(1, 2)]), vec![v(&[(-3, 1)])], 6).is_ok());
        let g = germ(&[(0, 1), (0, 1)], &[&[(1, 1), (0, 1)], &[(0, 1), (1, 1)]]);
        assert_eq!(g.point(2), p(&[(1, 2), (1, 4)]));
    }

    #[test]
    fn membership() {
        let sq = Polyhedron::cube(2);
        assert!(germ_in_polyhedron(&sq, &germ(&[(0, 1), (0, 1)], &[&[(1, 1), (0, 1)]])).unwrap());
        let edge = poly(&[&[(0, 1), (0, 1)], &[(1, 1), (0, 1)]]);
        let g = germ(&[(0, 1), (0, 1)], &[&[(1, 1), (0, 1)], &[(0, 1), (1, 1)]]);
        assert!(!germ_in_polyhedron(&edge, &g).unwrap());
        let tri = poly(&[&[(0, 1), (0, 1)], &[(1, 1), (0, 1)], &[(1, 1), (1, 1)]]);
        assert!(germ_in_polyhedron(&tri, &g).unwrap());
    }

    #[test]
    fn condition_two() {
        let g = germ(&[(0, 1), (0, 1)], &[&[(1, 1), (0, 1)], &[(0, 1), (1, 1)]]);
        let e1 = TangentTuple::new(p(&[(0, 1), (0, 1)]), vec![v(&[(1, 1), (0, 1)])]).unwrap();
        assert!(tangent_condition_2(&g, &e1).unwrap());
        assert!(!tangent_condition_2(&germ(&[(0, 1), (0, 1)], &[&[(1, 1), (0, 1)]]), &e1).unwrap());
        let both = TangentTuple::new(p(&[(0, 1), (0, 1)]), vec![v(&[(1, 1), (0, 1)]), v(&[(0, 1), (1, 1)])]).unwrap();
        assert!(!tangent_condition_2(&g, &both).unwrap());
    }

    #[test]
    fn witness_conditions() {
        let x = poly(&[&[(0, 1), (0, 1)], &[(1, 1), (0, 1)]]);
        let u = TangentTuple::new(p(&[(0, 1), (0, 1)]), vec![v(&[(0, 1), (1, 1)])]).unwrap();
        let s = vec![p(&[(0, 1), (0, 1)]), p(&[(0, 1), (1, 2)])];
        let ok = OutgoingWitness::new(s.clone(), vec![0], vec![rat(1, 2)]).unwrap();
        assert!(verify_outgoing(&x, &u, &ok).unwrap());
        let whole = OutgoingWitness::new(s.clone(), vec![0, 1], vec![rat(1, 2)]).unwrap();
        assert!(!verify_outgoing(&x, &u, &whole).unwrap());
        let long = OutgoingWitness::new(s.clone(), vec![0], vec![int(1)]).unwrap();
        assert!(!verify_outgoing(&x, &u, &long).unwrap());
        assert!(OutgoingWitness::new(s.clone(), vec![2], vec![int(1)]).is_err());
        assert!(OutgoingWitness::new(s, vec![0], vec![int(0)]).is_err());
    }

    #[test]
    fn composite_check() {
        let x = poly(&[&[(0, 1), (0, 1)], &[(1, 1), (0, 1)]]);
        let s = vec![p(&[(0, 1), (0, 1)]), p(&[(0, 1), (1, 2)])];
        let w = OutgoingWitness::new(s, vec![0], vec![rat(1, 2)]).unwrap();
        // the germ (0, 1/i) leaves the segment
        let g = germ(&[(0, 1), (0, 1)], &[&[(0, 1), (1, 1)]]);
        assert!(!check_outgoing_tangent(&x, &g, 1, &w).unwrap());
        // inside the segment, but its tangent spans the whole germ
        let g = germ(&[(0, 1), (0, 1)], &[&[(1, 1), (0, 1)]]);
        assert!(!check_outgoing_tangent(&x, &g, 1, &w).unwrap());
        assert!(check_outgoing_tangent(&x, &g, 2, &w).is_err());
    }
}
