//! Seeded random generators for terms, points, presentations, algebras,
//! polyhedra and tangent witnesses. The same seed always yields the same
//! samples.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{chain, product, FiniteMVAlgebra};
use crate::geometry::linalg::sub;
use crate::geometry::{affine_independent, Point, Polyhedron, Simplex};
use crate::rational::{int, rat, Rational};
use crate::tangents::{chain_points, extract_tangent, CurveGerm, OutgoingWitness};
use crate::terms::{Presentation, Term};

pub type SampleRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Depth of each constructor once expanded to `0, ¬, ⊕`, not counting
/// its arguments.
const COSTS: [(Op, usize); 7] = [
    (Op::Neg, 1),
    (Op::Oplus, 1),
    (Op::Imp, 2),
    (Op::Odot, 3),
    (Op::Vee, 4),
    (Op::Ominus, 4),
    (Op::Wedge, 6),
];

#[derive(Clone, Copy)]
enum Op {
    Neg,
    Oplus,
    Imp,
    Odot,
    Vee,
    Ominus,
    Wedge,
}

/// A random term over `x0 … x(vars-1)` whose expanded depth is at most
/// `depth`. Sugar appears whenever the depth budget allows it.
pub fn term<R: Rng>(rng: &mut R, vars: usize, depth: usize) -> Term {
    let fits: Vec<(Op, usize)> = COSTS.iter().copied().filter(|&(_, c)| c <= depth).collect();
    if fits.is_empty() || rng.gen_bool(0.15) {
        return match rng.gen_range(0..10) {
            0 => Term::zero(),
            1 if depth >= 1 => Term::one(),
            _ => Term::var(rng.gen_range(0..vars.max(1))),
        };
    }
    let (op, cost) = *fits.choose(rng).expect("non-empty");
    let rest = depth - cost;
    let child = |rng: &mut R| term(rng, vars, rest);
    let a = child(rng);
    match op {
        Op::Neg => Term::neg(a),
        Op::Oplus => Term::oplus(a, child(rng)),
        Op::Imp => Term::imp(a, child(rng)),
        Op::Odot => Term::odot(a, child(rng)),
        Op::Vee => Term::vee(a, child(rng)),
        Op::Ominus => Term::ominus(a, child(rng)),
        Op::Wedge => Term::wedge(a, child(rng)),
    }
}

/// A random rational in `[0,1]` with denominator at most `max_den`.
pub fn unit_rational<R: Rng>(rng: &mut R, max_den: i64) -> Rational {
    let d = rng.gen_range(1..=max_den.max(1));
    rat(rng.gen_range(0..=d), d)
}

pub fn point<R: Rng>(rng: &mut R, n: usize, max_den: i64) -> Point {
    Point::new((0..n).map(|_| unit_rational(rng, max_den)).collect())
}

/// Up to `max_rels` random relations over `arity` generators.
pub fn presentation<R: Rng>(rng: &mut R, arity: usize, max_rels: usize, depth: usize) -> Presentation {
    let k = rng.gen_range(0..=max_rels);
    let rels = (0..k).map(|_| (term(rng, arity, depth), term(rng, arity, depth))).collect();
    Presentation::new(arity, rels).expect("terms use only the given generators")
}

/// A product of `1..=max_factors` chains, each with at most `max_den + 1`
/// elements.
pub fn chain_product<R: Rng>(rng: &mut R, max_factors: usize, max_den: usize) -> FiniteMVAlgebra {
    let factors = rng.gen_range(1..=max_factors.max(1));
    (0..factors)
        .map(|_| chain(rng.gen_range(1..=max_den.max(1))).expect("n >= 1"))
        .reduce(|a, b| product(&a, &b))
        .expect("at least one factor")
}

/// A random simplex of dimension `k` with vertices on the grid
/// `(1/den)·ℤ^n ∩ [0,1]^n`.
pub fn simplex<R: Rng>(rng: &mut R, n: usize, k: usize, den: i64) -> Simplex {
    loop {
        let pts: Vec<Point> = (0..=k)
            .map(|_| Point::new((0..n).map(|_| rat(rng.gen_range(0..=den), den)).collect()))
            .collect();
        if affine_independent(&pts).expect("same dimension") {
            return Simplex::new(pts).expect("independent vertices");
        }
    }
}

/// A union of `count` random simplices in `[0,1]^n`, the first one
/// full-dimensional.
pub fn polyhedron<R: Rng>(rng: &mut R, n: usize, count: usize, den: i64) -> Polyhedron {
    let simplices = (0..count.max(1))
        .map(|i| {
            let k = if i == 0 { n } else { rng.gen_range(0..=n) };
            simplex(rng, n, k, den)
        })
        .collect();
    Polyhedron::new(n, simplices).expect("same dimension")
}

/// A random point of `s` (convex combination with small weights).
pub fn point_in_simplex<R: Rng>(rng: &mut R, s: &Simplex, support: &[usize]) -> Point {
    let weights: Vec<i64> = support.iter().map(|_| rng.gen_range(0..=3)).collect();
    let total: i64 = weights.iter().sum();
    if total == 0 {
        return s.vertices()[support[0]].clone();
    }
    let n = s.ambient_dim();
    let mut c = vec![int(0); n];
    for (&i, &w) in support.iter().zip(&weights) {
        for (cj, vj) in c.iter_mut().zip(s.vertices()[i].coords()) {
            *cj += vj * rat(w, total);
        }
    }
    Point::new(c)
}

fn random_support<R: Rng>(rng: &mut R, m: usize) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..m).collect();
    idx.shuffle(rng);
    idx.truncate(rng.gen_range(1..=m));
    idx
}

/// A germ `x_i = (1 - t - t²)·x + t·y1 + t²·y2`, `t = 1/i`, `i >= 2`, with
/// `x, y1, y2` in one simplex of `x_set`, so it stays inside `x_set`.
pub fn germ_in<R: Rng>(rng: &mut R, x_set: &Polyhedron) -> Option<CurveGerm> {
    let s = x_set.simplices().choose(rng)?;
    let m = s.vertices().len();
    let support = random_support(rng, m);
    let base = point_in_simplex(rng, s, &support);
    let all: Vec<usize> = (0..m).collect();
    let y1 = point_in_simplex(rng, s, &all);
    let y2 = point_in_simplex(rng, s, &all);
    let coeffs = vec![sub(y1.coords(), base.coords()), sub(y2.coords(), base.coords())];
    CurveGerm::new(base, coeffs, 2).ok()
}

/// A `(germ, k, witness)` triple aimed at the outgoing-tangent conditions:
/// the germ lies in `x_set`, and the witness simplex is built either
/// around the tangent chain or around the base point.
pub fn falsification_case<R: Rng>(rng: &mut R, x_set: &Polyhedron) -> Option<(CurveGerm, usize, OutgoingWitness)> {
    let n = x_set.dim();
    let g = germ_in(rng, x_set)?;
    let stages = (1..n).rev().find(|&k| extract_tangent(&g, k).is_ok())?;
    let k = rng.gen_range(1..=stages);
    let u = extract_tangent(&g, k).ok()?.canonical();
    let lambda: Vec<Rational> = (0..k).map(|_| rat(1, rng.gen_range(1..=8))).collect();
    let mut verts = if rng.gen_bool(0.7) {
        chain_points(&u, &lambda)
    } else {
        vec![g.base().clone()]
    };
    let target = rng.gen_range(verts.len()..=n + 1);
    let mut tries = 0;
    while verts.len() < target && tries < 50 {
        tries += 1;
        let mut cand = verts.clone();
        cand.push(point(rng, n, 4));
        if affine_independent(&cand).expect("same dimension") {
            verts = cand;
        }
    }
    let face: Vec<usize> = (0..verts.len()).filter(|_| rng.gen_bool(0.5)).collect();
    let w = OutgoingWitness::new(verts, face, lambda).ok()?;
    Some((g, k, w))
}
