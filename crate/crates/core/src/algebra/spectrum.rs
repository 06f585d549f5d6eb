use std::collections::BTreeSet;

use num_integer::Integer;
use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use super::finite::{self, subalgebra_closure, FiniteMVAlgebra};
use crate::geometry::Point;
use crate::rational::{self, Rational};
use crate::{Error, Result};

/// A finite set of points in `[0,1]^labels`, each label naming a
/// coordinate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Spectrum {
    labels: Vec<String>,
    points: Vec<Point>,
}

impl Spectrum {
    pub fn new(labels: Vec<String>, points: Vec<Point>) -> Result<Self> {
        for p in &points {
            p.check_dim(labels.len())?;
            if !p.is_in_cube() {
                return Err(Error::OutOfCube(p.to_string()));
            }
        }
        Ok(Spectrum { labels, points })
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Projection onto the named coordinates, as a set.
    pub fn restrict_labels(&self, labels: &[String]) -> Result<Spectrum> {
        let idx = labels
            .iter()
            .map(|l| {
                self.labels
                    .iter()
                    .position(|m| m == l)
                    .ok_or_else(|| Error::Algebra(format!("unknown label {l}")))
            })
            .collect::<Result<Vec<_>>>()?;
        let points: BTreeSet<Point> = self.points.iter().map(|p| p.project(&idx)).collect();
        Ok(Spectrum { labels: labels.to_vec(), points: points.into_iter().collect() })
    }
}

/// Operation tables of a finite algebra, by element index.
struct Tables {
    zero: usize,
    one: usize,
    neg: Vec<usize>,
    oplus: Vec<Vec<usize>>,
}

impl Tables {
    fn new(a: &FiniteMVAlgebra) -> Self {
        let idx = |x: &Point| a.index_of(x).expect("closed algebra");
        let els = a.elements();
        Tables {
            zero: idx(&a.zero()),
            one: idx(&a.one()),
            neg: els.iter().map(|x| idx(&finite::neg(x))).collect(),
            oplus: els.iter().map(|x| els.iter().map(|y| idx(&finite::oplus(x, y))).collect()).collect(),
        }
    }
}

/// Whether `h`, read as `element ↦ h[index]`, is an MV-homomorphism.
pub fn is_hom(a: &FiniteMVAlgebra, h: &Point) -> bool {
    if h.dim() != a.len() {
        return false;
    }
    let t = Tables::new(a);
    let n = a.len();
    h[t.zero].is_zero()
        && (0..n).all(|i| h[t.neg[i]] == rational::mv_neg(&h[i]))
        && (0..n).all(|i| (0..n).all(|j| h[t.oplus[i][j]] == rational::mv_oplus(&h[i], &h[j])))
}

fn common_denominator(a: &FiniteMVAlgebra) -> BigInt {
    a.elements()
        .iter()
        .flat_map(|e| e.coords().iter().map(|c| c.denom().clone()))
        .fold(BigInt::one(), |acc, d| acc.lcm(&d))
}

/// Propagates `h(¬x) = 1 - h(x)` and `h(x ⊕ y) = min(h(x) + h(y), 1)`
/// from the newly assigned indices; values are numerators over `l`.
fn propagate(t: &Tables, l: i64, h: &mut [Option<i64>], mut queue: Vec<usize>) -> bool {
    let set = |h: &mut [Option<i64>], k: usize, v: i64, queue: &mut Vec<usize>| match h[k] {
        Some(w) => w == v,
        None => {
            h[k] = Some(v);
            queue.push(k);
            true
        }
    };
    while let Some(i) = queue.pop() {
        let vi = h[i].expect("assigned");
        if !set(h, t.neg[i], l - vi, &mut queue) {
            return false;
        }
        for j in 0..h.len() {
            if let Some(vj) = h[j] {
                if !set(h, t.oplus[i][j], (vi + vj).min(l), &mut queue) {
                    return false;
                }
            }
        }
    }
    true
}

fn search(t: &Tables, l: i64, h: Vec<Option<i64>>, out: &mut Vec<Vec<i64>>) {
    let Some(i) = h.iter().position(Option::is_none) else {
        out.push(h.into_iter().map(|v| v.expect("assigned")).collect());
        return;
    };
    for v in 0..=l {
        let mut next = h.clone();
        next[i] = Some(v);
        if propagate(t, l, &mut next, vec![i]) {
            search(t, l, next, out);
        }
    }
}

/// All homomorphisms `A → [0,1]`, each as the point `(h(a))_a`, sorted.
///
/// Candidate values are the multiples of `1/L`, `L` the least common
/// denominator of the coordinates of `A`: the image of a homomorphism is a
/// finite chain that already occurs as a coordinate image.
pub fn spectrum(a: &FiniteMVAlgebra) -> Spectrum {
    let t = Tables::new(a);
    let l = common_denominator(a).to_i64().expect("denominators fit in i64");
    let mut h = vec![None; a.len()];
    h[t.zero] = Some(0);
    let mut raw = Vec::new();
    if propagate(&t, l, &mut h, vec![t.zero]) {
        search(&t, l, h, &mut raw);
    }
    let mut points: Vec<Point> = raw
        .into_iter()
        .map(|vals| Point::new(vals.into_iter().map(|v| rational::rat(v, l)).collect()))
        .collect();
    points.sort();
    points.dedup();
    Spectrum { labels: a.labels(), points }
}

/// Points `(p, q)` over the disjoint union of the labels.
pub fn coproduct_spectrum(a: &FiniteMVAlgebra, b: &FiniteMVAlgebra) -> Spectrum {
    let (sa, sb) = (spectrum(a), spectrum(b));
    let labels = a
        .labels()
        .into_iter()
        .map(|l| format!("A:{l}"))
        .chain(b.labels().into_iter().map(|l| format!("B:{l}")))
        .collect();
    let points = sa.points.iter().flat_map(|p| sb.points.iter().map(move |q| p.concat(q))).collect();
    Spectrum { labels, points }
}

/// The image of `W(A) × W(B)` under `(p, q) ↦ (p(a)·q(b))_{(a,b)}`, with
/// the generating pair of every point.
#[derive(Clone, Debug)]
pub struct TensorSpectrum {
    pub spectrum: Spectrum,
    pub factors: Vec<(Point, Point)>,
}

impl TensorSpectrum {
    /// No two pairs share an image.
    pub fn is_injective(&self) -> bool {
        let distinct: BTreeSet<&Point> = self.spectrum.points.iter().collect();
        distinct.len() == self.factors.len()
    }
}

fn multiply(p: &Point, q: &Point) -> Point {
    Point::new(p.coords().iter().flat_map(|x| q.coords().iter().map(move |y| x * y)).collect())
}

pub fn tensor_spectrum(a: &FiniteMVAlgebra, b: &FiniteMVAlgebra) -> TensorSpectrum {
    let (sa, sb) = (spectrum(a), spectrum(b));
    let labels = a
        .labels()
        .iter()
        .flat_map(|x| b.labels().into_iter().map(move |y| format!("{x}⊗{y}")))
        .collect();
    let factors: Vec<(Point, Point)> = sa
        .points
        .iter()
        .flat_map(|p| sb.points.iter().map(move |q| (p.clone(), q.clone())))
        .collect();
    let points = factors.iter().map(|(p, q)| multiply(p, q)).collect();
    TensorSpectrum { spectrum: Spectrum { labels, points }, factors }
}

/// Checks every instance of the nine relation families presenting
/// `A ⊗ B` on `pt`, indexed by `(a, b) ↦ index(a)·|B| + index(b)`.
pub fn relations_satisfied(a: &FiniteMVAlgebra, b: &FiniteMVAlgebra, pt: &Point) -> Result<bool> {
    let (na, nb) = (a.len(), b.len());
    pt.check_dim(na * nb)?;
    let r = |i: usize, j: usize| &pt[i * nb + j];
    let (ta, tb) = (Tables::new(a), Tables::new(b));
    let meet_join = |alg: &FiniteMVAlgebra| {
        let els = alg.elements();
        let idx = |x: Point| alg.index_of(&x).expect("lattice closed");
        let pick = |x: &Point, y: &Point, max: bool| {
            Point::new(
                x.coords()
                    .iter()
                    .zip(y.coords())
                    .map(|(u, v)| if (u >= v) == max { u.clone() } else { v.clone() })
                    .collect(),
            )
        };
        let vee: Vec<Vec<usize>> = els.iter().map(|x| els.iter().map(|y| idx(pick(x, y, true))).collect()).collect();
        let wedge: Vec<Vec<usize>> =
            els.iter().map(|x| els.iter().map(|y| idx(pick(x, y, false))).collect()).collect();
        let orthogonal: Vec<Vec<bool>> =
            els.iter().map(|x| els.iter().map(|y| finite::odot(x, y) == alg.zero()).collect()).collect();
        (vee, wedge, orthogonal)
    };
    let (vee_a, wedge_a, orth_a) = meet_join(a);
    let (vee_b, wedge_b, orth_b) = meet_join(b);
    let max = |x: &Rational, y: &Rational| x.max(y).clone();
    let min = |x: &Rational, y: &Rational| x.min(y).clone();

    // (1)
    if !r(ta.one, tb.one).is_one()
        || (0..na).any(|i| !r(i, tb.zero).is_zero())
        || (0..nb).any(|j| !r(ta.zero, j).is_zero())
    {
        return Ok(false);
    }
    for i in 0..na {
        for j1 in 0..nb {
            for j2 in 0..nb {
                let (x, y) = (r(i, j1), r(i, j2));
                // (2), (4)
                if *r(i, vee_b[j1][j2]) != max(x, y) || *r(i, wedge_b[j1][j2]) != min(x, y) {
                    return Ok(false);
                }
                // (6), (8)
                if orth_b[j1][j2]
                    && (!rational::mv_odot(x, y).is_zero() || *r(i, tb.oplus[j1][j2]) != rational::mv_oplus(x, y))
                {
                    return Ok(false);
                }
            }
        }
    }
    for j in 0..nb {
        for i1 in 0..na {
            for i2 in 0..na {
                let (x, y) = (r(i1, j), r(i2, j));
                // (3), (5)
                if *r(vee_a[i1][i2], j) != max(x, y) || *r(wedge_a[i1][i2], j) != min(x, y) {
                    return Ok(false);
                }
                // (7), (9)
                if orth_a[i1][i2]
                    && (!rational::mv_odot(x, y).is_zero() || *r(ta.oplus[i1][i2], j) != rational::mv_oplus(x, y))
                {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// `p(a) = pt(a, 1)`, `q(b) = pt(1, b)`, returned when both are
/// homomorphisms and `pt = p·q`.
pub fn bimorphism_split(a: &FiniteMVAlgebra, b: &FiniteMVAlgebra, pt: &Point) -> Result<Option<(Point, Point)>> {
    let (na, nb) = (a.len(), b.len());
    pt.check_dim(na * nb)?;
    let (ta, tb) = (Tables::new(a), Tables::new(b));
    let p = Point::new((0..na).map(|i| pt[i * nb + tb.one].clone()).collect());
    let q = Point::new((0..nb).map(|j| pt[ta.one * nb + j].clone()).collect());
    let ok = is_hom(a, &p) && is_hom(b, &q) && multiply(&p, &q) == *pt;
    Ok(ok.then_some((p, q)))
}

/// The subalgebra of `[0,1]^points` generated by the coordinate functions.
pub fn algebra_of_spectrum(x: &Spectrum) -> FiniteMVAlgebra {
    if x.points.is_empty() {
        return FiniteMVAlgebra::trivial();
    }
    let gens: Vec<Point> = (0..x.labels.len())
        .map(|j| Point::new(x.points.iter().map(|p| p[j].clone()).collect()))
        .collect();
    subalgebra_closure(x.points.len(), &gens).expect("coordinates lie in [0,1]")
}
