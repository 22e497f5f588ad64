//! Sparse multivariate polynomials, used for symbolic determinants of small
//! affine matrices.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::affine::{AffineForm, AffineMatrix, Assignment, VarId};
use super::rational::Rational;
use crate::error::{Error, Result};

/// Sorted list of variables, repeated according to exponent.
pub type Monomial = Vec<VarId>;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(value: Rational) -> Self {
        let mut p = Self::zero();
        p.add_term(Vec::new(), value);
        p
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn from_affine(form: &AffineForm) -> Self {
        let mut p = Self::constant(form.constant_term().clone());
        for (v, c) in form.terms() {
            p.add_term(vec![*v], c.clone());
        }
        p
    }

    pub fn add_term(&mut self, mut monomial: Monomial, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        monomial.sort();
        let entry = self
            .terms
            .entry(monomial.clone())
            .or_insert_with(Rational::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&monomial);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn scaled(&self, factor: &Rational) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c * factor);
        }
        out
    }

    pub fn times(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let mut m = ma.clone();
                m.extend_from_slice(mb);
                out.add_term(m, ca * cb);
            }
        }
        out
    }

    pub fn derivative(&self, v: VarId) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let power = m.iter().filter(|&&w| w == v).count();
            if power == 0 {
                continue;
            }
            let mut reduced = m.clone();
            let at = reduced.iter().position(|&w| w == v).unwrap();
            reduced.remove(at);
            out.add_term(reduced, c * Rational::from_integer(power.into()));
        }
        out
    }

    pub fn eval(&self, point: &Assignment) -> Result<Rational> {
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for v in m {
                term *= point.get(v).ok_or(Error::MissingAssignment(*v))?;
            }
            total += term;
        }
        Ok(total)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let vars: Vec<String> = m.iter().map(ToString::to_string).collect();
                match (m.is_empty(), c.is_one()) {
                    (true, _) => c.to_string(),
                    (false, true) => vars.join("*"),
                    (false, false) => format!("{c}*{}", vars.join("*")),
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Symbolic determinant by Laplace expansion along the first row.
/// Exponential in the size; meant for matrices of size at most about 7.
pub fn symbolic_det(m: &AffineMatrix) -> Polynomial {
    let n = m.size();
    let entries: Vec<Vec<Polynomial>> = (0..n)
        .map(|i| m.row(i).iter().map(Polynomial::from_affine).collect())
        .collect();
    let cols: Vec<usize> = (0..n).collect();
    laplace(&entries, 0, &cols)
}

fn laplace(entries: &[Vec<Polynomial>], row: usize, cols: &[usize]) -> Polynomial {
    if cols.is_empty() {
        return Polynomial::one();
    }
    let mut total = Polynomial::zero();
    for (pos, &c) in cols.iter().enumerate() {
        let entry = &entries[row][c];
        if entry.is_empty() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let minor = laplace(entries, row + 1, &rest);
        let mut term = entry.times(&minor);
        if pos % 2 == 1 {
            term = term.scaled(&-Rational::one());
        }
        total = total.plus(&term);
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::int;

    fn x(i: u32, j: i32) -> VarId {
        VarId::new(i, j)
    }

    #[test]
    fn cancellation_removes_terms() {
        let mut p = Polynomial::from_affine(&AffineForm::var(x(1, 1)));
        p.add_term(vec![x(1, 1)], int(-1));
        assert!(p.is_empty());
    }

    #[test]
    fn two_by_two_determinant() {
        let rows = vec![
            vec![AffineForm::var(x(1, 1)), AffineForm::var(x(1, 2))],
            vec![AffineForm::var(x(2, 1)), AffineForm::var(x(2, 2))],
        ];
        let det = symbolic_det(&AffineMatrix::from_rows(rows).unwrap());
        let mut expected = Polynomial::zero();
        expected.add_term(vec![x(1, 1), x(2, 2)], int(1));
        expected.add_term(vec![x(1, 2), x(2, 1)], int(-1));
        assert_eq!(det, expected);
    }

    #[test]
    fn derivative_of_square() {
        let p = Polynomial::from_affine(&AffineForm::var(x(1, 1)));
        let sq = p.times(&p);
        assert_eq!(sq.derivative(x(1, 1)), p.scaled(&int(2)));
        assert!(sq.derivative(x(2, 1)).is_empty());
    }
}
