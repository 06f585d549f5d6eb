use std::fmt;
use std::sync::Arc;

use crate::geometry::Point;
use crate::rational::{self, Rational};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Term {
    Var(usize),
    Zero,
    Neg(Arc<Term>),
    Oplus(Arc<Term>, Arc<Term>),
}

impl Term {
    pub fn var(i: usize) -> Term {
        Term::Var(i)
    }

    pub fn zero() -> Term {
        Term::Zero
    }

    /// `1 = ¬0`
    pub fn one() -> Term {
        Term::neg(Term::Zero)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(a: Term) -> Term {
        Term::Neg(Arc::new(a))
    }

    pub fn oplus(a: Term, b: Term) -> Term {
        Term::Oplus(Arc::new(a), Arc::new(b))
    }

    /// `a ⊙ b = ¬(¬a ⊕ ¬b)`
    pub fn odot(a: Term, b: Term) -> Term {
        Term::neg(Term::oplus(Term::neg(a), Term::neg(b)))
    }

    /// `a ∨ b = ¬(¬a ⊕ b) ⊕ b`
    pub fn vee(a: Term, b: Term) -> Term {
        Term::oplus(Term::neg(Term::oplus(Term::neg(a), b.clone())), b)
    }

    /// `a ∧ b = ¬(¬a ∨ ¬b)`
    pub fn wedge(a: Term, b: Term) -> Term {
        Term::neg(Term::vee(Term::neg(a), Term::neg(b)))
    }

    /// `a → b = ¬a ⊕ b`
    pub fn imp(a: Term, b: Term) -> Term {
        Term::oplus(Term::neg(a), b)
    }

    /// `a ⊖ b = a ⊙ ¬b`
    pub fn ominus(a: Term, b: Term) -> Term {
        Term::odot(a, Term::neg(b))
    }

    /// One more than the largest variable index (0 for closed terms).
    pub fn arity(&self) -> usize {
        match self {
            Term::Var(i) => i + 1,
            Term::Zero => 0,
            Term::Neg(a) => a.arity(),
            Term::Oplus(a, b) => a.arity().max(b.arity()),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Term::Var(_) | Term::Zero => 0,
            Term::Neg(a) => 1 + a.depth(),
            Term::Oplus(a, b) => 1 + a.depth().max(b.depth()),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Term::Var(_) | Term::Zero => 1,
            Term::Neg(a) => 1 + a.size(),
            Term::Oplus(a, b) => 1 + a.size() + b.size(),
        }
    }

    /// Value at `p` in the standard MV-algebra `[0,1]`.
    pub fn eval(&self, p: &Point) -> Result<Rational> {
        if p.dim() < self.arity() {
            return Err(Error::Arity(format!(
                "term uses {} variables but the point has {} coordinates",
                self.arity(),
                p.dim()
            )));
        }
        if let Some(c) = p.coords().iter().find(|c| !rational::in_unit_interval(c)) {
            return Err(Error::OutOfCube(rational::to_text(c)));
        }
        Ok(self.eval_unchecked(p.coords()))
    }

    pub(crate) fn eval_unchecked(&self, coords: &[Rational]) -> Rational {
        match self {
            Term::Var(i) => coords[*i].clone(),
            Term::Zero => rational::int(0),
            Term::Neg(a) => rational::mv_neg(&a.eval_unchecked(coords)),
            Term::Oplus(a, b) => rational::mv_oplus(&a.eval_unchecked(coords), &b.eval_unchecked(coords)),
        }
    }

    /// Simultaneous substitution `x_i ↦ images[i]`.
    pub fn substitute(&self, images: &[Term]) -> Result<Term> {
        if self.arity() > images.len() {
            return Err(Error::Arity(format!(
                "substitution provides {} images for a term over {} variables",
                images.len(),
                self.arity()
            )));
        }
        Ok(self.substitute_unchecked(images))
    }

    fn substitute_unchecked(&self, images: &[Term]) -> Term {
        match self {
            Term::Var(i) => images[*i].clone(),
            Term::Zero => Term::Zero,
            Term::Neg(a) => Term::neg(a.substitute_unchecked(images)),
            Term::Oplus(a, b) => Term::oplus(a.substitute_unchecked(images), b.substitute_unchecked(images)),
        }
    }

    /// Core-only rendering: `0`, `xN`, `~`, `(+)`.
    pub fn to_core_string(&self) -> String {
        render(self, false).0
    }

    pub(crate) fn as_one(&self) -> bool {
        matches!(self, Term::Neg(a) if **a == Term::Zero)
    }

    pub(crate) fn as_neg(&self) -> Option<&Term> {
        match self {
            Term::Neg(a) => Some(a),
            _ => None,
        }
    }

    pub(crate) fn as_odot(&self) -> Option<(&Term, &Term)> {
        let Term::Oplus(a, b) = self.as_neg()? else { return None };
        Some((a.as_neg()?, b.as_neg()?))
    }

    pub(crate) fn as_vee(&self) -> Option<(&Term, &Term)> {
        let Term::Oplus(l, r) = self else { return None };
        let Term::Oplus(na, b) = l.as_neg()? else { return None };
        (**b == **r).then_some(())?;
        Some((na.as_neg()?, r))
    }

    pub(crate) fn as_wedge(&self) -> Option<(&Term, &Term)> {
        let (na, nb) = self.as_neg()?.as_vee()?;
        Some((na.as_neg()?, nb.as_neg()?))
    }

    pub(crate) fn as_imp(&self) -> Option<(&Term, &Term)> {
        let Term::Oplus(l, r) = self else { return None };
        Some((l.as_neg()?, r))
    }
}

const PREC_IMP: u8 = 1;
const PREC_VEE: u8 = 2;
const PREC_WEDGE: u8 = 3;
const PREC_OPLUS: u8 = 4;
const PREC_ODOT: u8 = 5;
const PREC_UNARY: u8 = 6;
const PREC_ATOM: u8 = 7;

fn render(t: &Term, sugar: bool) -> (String, u8) {
    let binary = |op: &str, prec: u8, l: &Term, r: &Term| {
        let (ls, lp) = render(l, sugar);
        let (rs, rp) = render(r, sugar);
        let ls = if lp < prec { format!("({ls})") } else { ls };
        let rs = if rp <= prec { format!("({rs})") } else { rs };
        (format!("{ls} {op} {rs}"), prec)
    };
    if sugar {
        if t.as_one() {
            return ("1".into(), PREC_ATOM);
        }
        if let Some((a, b)) = t.as_wedge() {
            return binary("/\\", PREC_WEDGE, a, b);
        }
        if let Some((a, b)) = t.as_odot() {
            return binary("&", PREC_ODOT, a, b);
        }
        if let Some((a, b)) = t.as_vee() {
            return binary("\\/", PREC_VEE, a, b);
        }
        if let Some((a, b)) = t.as_imp() {
            return binary("->", PREC_IMP, a, b);
        }
    }
    match t {
        Term::Var(i) => (format!("x{i}"), PREC_ATOM),
        Term::Zero => ("0".into(), PREC_ATOM),
        Term::Neg(a) => {
            let (s, p) = render(a, sugar);
            let s = if p < PREC_UNARY { format!("({s})") } else { s };
            (format!("~{s}"), PREC_UNARY)
        }
        Term::Oplus(a, b) => binary("(+)", PREC_OPLUS, a, b),
    }
}

/// Re-sugared rendering in the concrete syntax accepted by
/// [`parse_term`](super::parse_term).
impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(self, true).0)
    }
}

/// `(s ⊖ t) ⊕ (t ⊖ s)`, whose value is `|s - t|` at every point.
pub fn chang_distance(s: &Term, t: &Term) -> Term {
    Term::oplus(Term::ominus(s.clone(), t.clone()), Term::ominus(t.clone(), s.clone()))
}
