//! The `V`/`I` Galois connection on finitely presented MV-algebras and the
//! duals of homomorphisms between them.
//!
//! `variety` and `in_ideal` only see the radical of a presentation: two
//! presentations with the same semisimple quotient are indistinguishable
//! here.

use crate::geometry::Polyhedron;
use crate::mcnaughton::{compile, MvOp, PlFunction, ZMap};
use crate::par;
use crate::terms::{chang_distance, Presentation, Term};
use crate::{Error, Result};

/// A homomorphism of presented algebras `source → target`, given by the
/// images of the source generators as terms over the target generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomSpec {
    source: Presentation,
    target: Presentation,
    images: Vec<Term>,
}

impl HomSpec {
    pub fn new(source: Presentation, target: Presentation, images: Vec<Term>) -> Result<Self> {
        if images.len() != source.arity() {
            return Err(Error::Arity(format!(
                "{} generator images for a source of arity {}",
                images.len(),
                source.arity()
            )));
        }
        if let Some(t) = images.iter().find(|t| t.arity() > target.arity()) {
            return Err(Error::Arity(format!("image {t} uses more than {} variables", target.arity())));
        }
        Ok(HomSpec { source, target, images })
    }

    /// `x_i ↦ x_i` on `p`.
    pub fn identity(p: &Presentation) -> Self {
        let images = (0..p.arity()).map(Term::var).collect();
        HomSpec { source: p.clone(), target: p.clone(), images }
    }

    pub fn source(&self) -> &Presentation {
        &self.source
    }

    pub fn target(&self) -> &Presentation {
        &self.target
    }

    pub fn images(&self) -> &[Term] {
        &self.images
    }
}

/// `h ∘ g`: first `g`, then `h`. Requires `g.target == h.source`.
pub fn compose_homs(h: &HomSpec, g: &HomSpec) -> Result<HomSpec> {
    if g.target != h.source {
        return Err(Error::Arity("homomorphisms are not composable".into()));
    }
    let images = g.images.iter().map(|t| t.substitute(&h.images)).collect::<Result<Vec<_>>>()?;
    HomSpec::new(g.source.clone(), h.target.clone(), images)
}

/// `max_i |s_i - t_i|` over the relations, or `None` without relations.
pub fn distance_function(p: &Presentation) -> Option<PlFunction> {
    let n = p.arity();
    let dists = par::map(p.relations(), |(s, t)| {
        compile(&chang_distance(s, t), n).expect("relations respect the arity")
    });
    dists
        .into_iter()
        .reduce(|a, b| a.op(MvOp::Vee, &b).expect("same arity"))
}

/// The common zero set of the relations in `[0,1]^arity`.
pub fn variety(p: &Presentation) -> Polyhedron {
    match distance_function(p) {
        None => Polyhedron::cube(p.arity()),
        Some(d) => d.zero_set(),
    }
}

/// Whether `s` and `t` agree at every point of `p`.
pub fn in_ideal(p: &Polyhedron, s: &Term, t: &Term) -> Result<bool> {
    let used = s.arity().max(t.arity());
    if used > p.dim() {
        return Err(Error::DimensionMismatch { expected: p.dim(), found: used });
    }
    if p.is_empty() {
        return Ok(true);
    }
    let zeros = compile(&chang_distance(s, t), p.dim())?.zero_set();
    p.is_subset_of(&zeros)
}

/// Equality of radicals, decided as equality of varieties.
pub fn radical_equal(s: &Presentation, t: &Presentation) -> Result<bool> {
    if s.arity() != t.arity() {
        return Err(Error::DimensionMismatch { expected: s.arity(), found: t.arity() });
    }
    variety(s).set_eq(&variety(t))
}

/// Whether the images respect every source relation modulo the target.
pub fn check_hom(h: &HomSpec) -> Result<bool> {
    let v = variety(&h.target);
    for (s, t) in h.source.relations() {
        if !in_ideal(&v, &s.substitute(&h.images)?, &t.substitute(&h.images)?)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The dual map `V(target) → V(source)`, `p ↦ (images_i(p))_i`.
pub fn dual_zmap(h: &HomSpec) -> Result<ZMap> {
    if !check_hom(h)? {
        return Err(Error::IllDefinedHom("a source relation is not respected".into()));
    }
    let domain = (!h.target.relations().is_empty()).then(|| variety(&h.target));
    let eta = ZMap::from_terms(h.target.arity(), domain, &h.images)?;
    if !h.source.relations().is_empty() && !eta.image().is_subset_of(&variety(&h.source))? {
        return Err(Error::IllDefinedHom("image leaves the source variety".into()));
    }
    Ok(eta)
}

/// Finds a term whose McNaughton function agrees with `f` on `V(p)`.
///
/// Tries `0`, `1`, each generator and finally `provenance`, the term `f`
/// was built from.
pub fn evaluation_onto_check(p: &Presentation, f: &PlFunction, provenance: &Term) -> Result<Term> {
    let n = p.arity();
    if f.arity() != n {
        return Err(Error::DimensionMismatch { expected: n, found: f.arity() });
    }
    let v = variety(p);
    let target = match f.domain() {
        None => f.restrict(&v)?,
        Some(_) => f.clone(),
    };
    let candidates = [Term::zero(), Term::one()]
        .into_iter()
        .chain((0..n).map(Term::var))
        .chain(std::iter::once(provenance.clone()));
    for c in candidates {
        if c.arity() > n {
            continue;
        }
        if compile(&c, n)?.restrict(&v)?.equals(&target)? {
            return Ok(c);
        }
    }
    Err(Error::Geometry("no candidate term represents the function".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{poly_equal, Point, Simplex};
    use crate::terms::parse_term;

    fn pres(n: usize, rels: &[&str]) -> Presentation {
        Presentation::parse(n, rels).unwrap()
    }

    fn t(s: &str) -> Term {
        parse_term(s).unwrap()
    }

    fn segment(a: (i64, i64), b: (i64, i64)) -> Polyhedron {
        let s = Simplex::new(vec![Point::from_ratios(&[a]), Point::from_ratios(&[b])]).unwrap();
        Polyhedron::new(1, vec![s]).unwrap()
    }

    #[test]
    fn variety_examples() {
        assert!(poly_equal(&variety(&pres(1, &["x0 (+) x0 = 1"])), &segment((1, 2), (1, 1))).unwrap());
        let half = Polyhedron::point(Point::from_ratios(&[(1, 2)]));
        assert!(poly_equal(&variety(&pres(1, &["x0 = ~x0"])), &half).unwrap());
        assert!(poly_equal(&variety(&pres(2, &[])), &Polyhedron::cube(2)).unwrap());
        assert!(variety(&pres(1, &["0 = 1"])).is_empty());
    }

    #[test]
    fn ideal_membership() {
        let half = Polyhedron::point(Point::from_ratios(&[(1, 2)]));
        assert!(in_ideal(&half, &t("x0"), &t("~x0")).unwrap());
        assert!(!in_ideal(&Polyhedron::cube(1), &t("x0"), &t("~x0")).unwrap());
        assert!(in_ideal(&segment((1, 2), (1, 1)), &t("x0 (+) x0"), &t("1")).unwrap());
        assert!(in_ideal(&half, &t("x1"), &t("0")).is_err());
    }

    #[test]
    fn radicals() {
        let s = pres(1, &["x0 = ~x0"]);
        assert!(radical_equal(&s, &pres(1, &["x0 (+) x0 = 1", "~x0 (+) ~x0 = 1"])).unwrap());
        assert!(!radical_equal(&pres(1, &[]), &pres(1, &["0 = 1"])).unwrap());
        assert!(radical_equal(&s, &pres(1, &["x0 = ~x0", "x0 = ~x0"])).unwrap());
    }

    #[test]
    fn homomorphisms() {
        let s = pres(1, &["x0 = ~x0"]);
        let bad = HomSpec::new(s.clone(), pres(1, &[]), vec![t("x0")]).unwrap();
        assert!(!check_hom(&bad).unwrap());
        assert!(matches!(dual_zmap(&bad), Err(Error::IllDefinedHom(_))));
        assert!(check_hom(&HomSpec::identity(&s)).unwrap());
        let vacuous = HomSpec::new(s, pres(1, &["0 = 1"]), vec![t("x0")]).unwrap();
        assert!(check_hom(&vacuous).unwrap());

        let free = pres(1, &[]);
        let neg = HomSpec::new(free.clone(), free.clone(), vec![t("~x0")]).unwrap();
        let eta = dual_zmap(&neg).unwrap();
        assert_eq!(eta.apply(&Point::from_ratios(&[(1, 3)])).unwrap(), Point::from_ratios(&[(2, 3)]));
        let id = dual_zmap(&HomSpec::identity(&free)).unwrap();
        assert!(id.equals(&ZMap::identity(1, None).unwrap()).unwrap());
    }

    #[test]
    fn onto_examples() {
        let free = pres(1, &[]);
        let f = compile(&t("x0"), 1).unwrap();
        assert_eq!(evaluation_onto_check(&free, &f, &t("x0")).unwrap(), t("x0"));
        let diag = pres(2, &["x0 = x1"]);
        let prov = t("x0 (+) x1");
        let f = compile(&prov, 2).unwrap().restrict(&variety(&diag)).unwrap();
        let got = evaluation_onto_check(&diag, &f, &prov).unwrap();
        assert!(compile(&got, 2).unwrap().restrict(&variety(&diag)).unwrap().equals(&f).unwrap());
        let one = compile(&t("x0 (+) ~x0"), 1).unwrap();
        assert_eq!(evaluation_onto_check(&free, &one, &t("x0 (+) ~x0")).unwrap(), t("1"));
    }
}
