use super::{parse_term, Term};
use crate::{Error, Result};

/// Generators `x0 … x(arity-1)` and finitely many relations `s = t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    arity: usize,
    relations: Vec<(Term, Term)>,
}

impl Presentation {
    pub fn new(arity: usize, relations: Vec<(Term, Term)>) -> Result<Self> {
        for (s, t) in &relations {
            let used = s.arity().max(t.arity());
            if used > arity {
                return Err(Error::Arity(format!(
                    "relation {s} = {t} uses x{} but the arity is {arity}",
                    used - 1
                )));
            }
        }
        Ok(Presentation { arity, relations })
    }

    /// The free algebra on `arity` generators.
    pub fn free(arity: usize) -> Self {
        Presentation { arity, relations: Vec::new() }
    }

    /// Parses relations written as `s = t`.
    pub fn parse(arity: usize, relations: &[&str]) -> Result<Self> {
        let rels = relations.iter().map(|r| parse_relation(r)).collect::<Result<Vec<_>>>()?;
        Self::new(arity, rels)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn relations(&self) -> &[(Term, Term)] {
        &self.relations
    }

    pub fn with_relation(&self, s: Term, t: Term) -> Result<Self> {
        let mut rels = self.relations.clone();
        rels.push((s, t));
        Self::new(self.arity, rels)
    }
}

/// `"s = t"` → `(s, t)`.
pub fn parse_relation(text: &str) -> Result<(Term, Term)> {
    let Some((s, t)) = text.split_once('=') else {
        return Err(Error::Syntax { pos: text.len(), msg: "relation needs the form s = t".into() });
    };
    let lhs = parse_term(s)?;
    let rhs = parse_term(t).map_err(|e| match e {
        Error::Syntax { pos, msg } => Error::Syntax { pos: pos + s.len() + 1, msg },
        Error::UnknownOperator { pos, op } => Error::UnknownOperator { pos: pos + s.len() + 1, op },
        other => other,
    })?;
    Ok((lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arity_is_checked() {
        assert!(Presentation::parse(1, &["x0 (+) x0 = 1"]).is_ok());
        assert!(matches!(Presentation::parse(1, &["x1 = 0"]), Err(Error::Arity(_))));
        assert!(parse_relation("x0").is_err());
    }
}
