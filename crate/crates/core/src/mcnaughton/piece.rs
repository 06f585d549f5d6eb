use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::geometry::{AffineForm, Point};
use crate::rational::{from_bigint, Rational};

/// `x ↦ coeffs·x + constant` with integer data.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffinePiece {
    coeffs: Vec<BigInt>,
    constant: BigInt,
}

impl AffinePiece {
    pub fn new(coeffs: Vec<BigInt>, constant: BigInt) -> Self {
        AffinePiece { coeffs, constant }
    }

    pub fn constant_fn(n: usize, c: i64) -> Self {
        AffinePiece { coeffs: vec![BigInt::zero(); n], constant: BigInt::from(c) }
    }

    pub fn coordinate(n: usize, i: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); n];
        coeffs[i] = BigInt::one();
        AffinePiece { coeffs, constant: BigInt::zero() }
    }

    pub fn arity(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn constant(&self) -> &BigInt {
        &self.constant
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn value(&self, p: &Point) -> Rational {
        self.value_at(p.coords())
    }

    pub(crate) fn value_at(&self, x: &[Rational]) -> Rational {
        let mut acc = from_bigint(&self.constant);
        for (c, xi) in self.coeffs.iter().zip(x) {
            if !c.is_zero() {
                acc += xi * from_bigint(c);
            }
        }
        acc
    }

    /// The same map as a rational form, shifted by `-level`.
    pub(crate) fn form_minus(&self, level: i64) -> AffineForm {
        AffineForm::new(
            self.coeffs.iter().map(from_bigint).collect(),
            from_bigint(&(&self.constant - BigInt::from(level))),
        )
    }

    pub(crate) fn add(&self, other: &Self) -> Self {
        AffinePiece {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
            constant: &self.constant + &other.constant,
        }
    }

    pub(crate) fn sub(&self, other: &Self) -> Self {
        self.add(&other.scaled(-1))
    }

    pub(crate) fn plus_const(&self, c: i64) -> Self {
        AffinePiece { coeffs: self.coeffs.clone(), constant: &self.constant + c }
    }

    pub(crate) fn scaled(&self, k: i64) -> Self {
        AffinePiece {
            coeffs: self.coeffs.iter().map(|a| a * k).collect(),
            constant: &self.constant * k,
        }
    }

    /// `1 - self`.
    pub(crate) fn one_minus(&self) -> Self {
        self.scaled(-1).plus_const(1)
    }

    /// `self ∘ rows`, where `rows[j]` gives the `j`-th input coordinate.
    pub(crate) fn compose(&self, rows: &[AffinePiece], n: usize) -> Self {
        let mut out = AffinePiece { coeffs: vec![BigInt::zero(); n], constant: self.constant.clone() };
        for (a, row) in self.coeffs.iter().zip(rows) {
            if a.is_zero() {
                continue;
            }
            for (c, r) in out.coeffs.iter_mut().zip(&row.coeffs) {
                *c += a * r;
            }
            out.constant += a * &row.constant;
        }
        out
    }

    /// Keeps the coefficients of the listed variables, in order.
    pub(crate) fn select(&self, keep: &[usize]) -> Self {
        AffinePiece {
            coeffs: keep.iter().map(|&i| self.coeffs[i].clone()).collect(),
            constant: self.constant.clone(),
        }
    }
}

impl fmt::Display for AffinePiece {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            let sign = if c.is_negative() { "-" } else { "+" };
            let mag = c.abs();
            let term = if mag.is_one() { format!("x{i}") } else { format!("{mag}*x{i}") };
            if first {
                write!(f, "{}{term}", if c.is_negative() { "-" } else { "" })?;
            } else {
                write!(f, " {sign} {term}")?;
            }
            first = false;
        }
        if first {
            write!(f, "{}", self.constant)
        } else if !self.constant.is_zero() {
            let sign = if self.constant.is_negative() { "-" } else { "+" };
            write!(f, " {sign} {}", self.constant.abs())
        } else {
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn piece(c: &[i64], k: i64) -> AffinePiece {
        AffinePiece::new(c.iter().map(|&x| BigInt::from(x)).collect(), BigInt::from(k))
    }

    #[test]
    fn arithmetic_and_display() {
        let f = piece(&[2, -1], 1);
        assert_eq!(f.to_string(), "2*x0 - x1 + 1");
        assert_eq!(f.one_minus().to_string(), "-2*x0 + x1");
        assert_eq!(piece(&[0, 0], 0).to_string(), "0");
        assert_eq!(f.value(&Point::from_ratios(&[(1, 4), (1, 2)])), rat(1, 1));
    }

    #[test]
    fn composition() {
        // (2y) ∘ (x0 + x1) = 2x0 + 2x1
        let g = piece(&[2], 0);
        let rows = [piece(&[1, 1], 0)];
        assert_eq!(g.compose(&rows, 2), piece(&[2, 2], 0));
    }
}
