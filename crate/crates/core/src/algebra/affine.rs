//! Affine-linear forms in the family variables `x[i,j]`.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::{One, Signed, Zero};

use super::matrix::RatMatrix;
use super::rational::Rational;
use crate::error::{Error, Result};

/// Variable `x[row,col]`. Rows start at 1; a negative column is the `-j`
/// column of the hyperoctahedral permanent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct VarId {
    pub row: u32,
    pub col: i32,
}

impl VarId {
    pub fn new(row: u32, col: i32) -> Self {
        debug_assert!(row >= 1 && col != 0, "invalid variable x[{row},{col}]");
        Self { row, col }
    }
}

/// Sorted by row, then `|col|`, then positive before negative.
impl Ord for VarId {
    fn cmp(&self, other: &Self) -> Ordering {
        self.row
            .cmp(&other.row)
            .then(self.col.unsigned_abs().cmp(&other.col.unsigned_abs()))
            .then(other.col.signum().cmp(&self.col.signum()))
    }
}

impl PartialOrd for VarId {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x[{},{}]", self.row, self.col)
    }
}

pub type Assignment = HashMap<VarId, Rational>;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AffineForm {
    constant: Rational,
    terms: BTreeMap<VarId, Rational>,
}

impl AffineForm {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(value: Rational) -> Self {
        Self {
            constant: value,
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn var(v: VarId) -> Self {
        let mut form = Self::zero();
        form.add_term(v, Rational::one());
        form
    }

    pub fn add_term(&mut self, v: VarId, coeff: Rational) {
        let entry = self.terms.entry(v).or_insert_with(Rational::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&v);
        }
    }

    pub fn add_constant(&mut self, value: &Rational) {
        self.constant += value;
    }

    pub fn constant_term(&self) -> &Rational {
        &self.constant
    }

    pub fn terms(&self) -> impl Iterator<Item = (&VarId, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, v: &VarId) -> Rational {
        self.terms.get(v).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.constant.is_zero() && self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn variables(&self) -> impl Iterator<Item = VarId> + '_ {
        self.terms.keys().copied()
    }

    pub fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.constant += &other.constant;
        for (v, c) in &other.terms {
            out.add_term(*v, c.clone());
        }
        out
    }

    pub fn scaled(&self, factor: &Rational) -> Self {
        if factor.is_zero() {
            return Self::zero();
        }
        Self {
            constant: &self.constant * factor,
            terms: self.terms.iter().map(|(v, c)| (*v, c * factor)).collect(),
        }
    }

    pub fn eval(&self, point: &Assignment) -> Result<Rational> {
        let mut value = self.constant.clone();
        for (v, c) in &self.terms {
            let x = point.get(v).ok_or(Error::MissingAssignment(*v))?;
            value += c * x;
        }
        Ok(value)
    }
}

/// Writes the form in the poset-DSL grammar: terms in variable order, then
/// the constant; `0` for the zero form.
impl fmt::Display for AffineForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self
            .terms
            .iter()
            .map(|(v, c)| {
                if c.is_one() {
                    v.to_string()
                } else {
                    format!("{c}*{v}")
                }
            })
            .collect();
        if !self.constant.is_zero() || parts.is_empty() {
            parts.push(self.constant.to_string());
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// Square matrix of affine forms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineMatrix {
    size: usize,
    entries: Vec<AffineForm>,
}

impl AffineMatrix {
    pub fn zeros(size: usize) -> Self {
        Self {
            size,
            entries: vec![AffineForm::zero(); size * size],
        }
    }

    pub fn from_rows(rows: Vec<Vec<AffineForm>>) -> Result<Self> {
        let size = rows.len();
        if let Some(bad) = rows.iter().position(|r| r.len() != size) {
            return Err(Error::Shape(format!(
                "affine matrix row {} has {} entries, expected {}",
                bad + 1,
                rows[bad].len(),
                size
            )));
        }
        Ok(Self {
            size,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, i: usize, j: usize) -> &AffineForm {
        &self.entries[i * self.size + j]
    }

    pub fn get_mut(&mut self, i: usize, j: usize) -> &mut AffineForm {
        &mut self.entries[i * self.size + j]
    }

    pub fn row(&self, i: usize) -> &[AffineForm] {
        &self.entries[i * self.size..(i + 1) * self.size]
    }

    pub fn negate_row(&mut self, i: usize) {
        let minus_one = -Rational::one();
        for j in 0..self.size {
            let negated = self.get(i, j).scaled(&minus_one);
            *self.get_mut(i, j) = negated;
        }
    }

    /// Every variable used anywhere in the matrix, sorted.
    pub fn variables(&self) -> Vec<VarId> {
        let mut vars: Vec<VarId> = self.entries.iter().flat_map(|e| e.variables()).collect();
        vars.sort();
        vars.dedup();
        vars
    }

    /// Row `h` holds the coefficient of `vars[h]` in every entry, entries
    /// flattened row-major: the `m × size²` coefficient matrix of the
    /// linear part.
    pub fn coefficient_matrix(&self, vars: &[VarId]) -> RatMatrix {
        RatMatrix::from_fn(vars.len(), self.size * self.size, |h, e| {
            self.entries[e].coefficient(&vars[h])
        })
    }

    pub fn max_abs_coefficient(&self) -> Rational {
        self.entries
            .iter()
            .flat_map(|e| e.terms().map(|(_, c)| c.abs()))
            .max()
            .unwrap_or_else(Rational::zero)
    }
}

/// Entrywise evaluation of `F` at a point.
pub fn eval_affine_matrix(f: &AffineMatrix, point: &Assignment) -> Result<RatMatrix> {
    let n = f.size();
    let mut out = RatMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            out[(i, j)] = f.get(i, j).eval(point)?;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{frac, int};

    #[test]
    fn variable_order() {
        let mut vars = [VarId::new(2, 1),
            VarId::new(1, -2),
            VarId::new(1, 2),
            VarId::new(1, -1),
            VarId::new(1, 1)];
        vars.sort();
        let text: Vec<String> = vars.iter().map(ToString::to_string).collect();
        assert_eq!(text, ["x[1,1]", "x[1,-1]", "x[1,2]", "x[1,-2]", "x[2,1]"]);
    }

    #[test]
    fn zero_coefficients_are_dropped() {
        let v = VarId::new(1, 1);
        let mut form = AffineForm::var(v);
        form.add_term(v, int(-1));
        assert!(form.is_zero());
        assert_eq!(form.to_string(), "0");
    }

    #[test]
    fn display() {
        let mut form = AffineForm::constant(int(2));
        form.add_term(VarId::new(1, -2), frac(3, 2));
        form.add_term(VarId::new(1, 1), int(1));
        assert_eq!(form.to_string(), "x[1,1] + 3/2*x[1,-2] + 2");
    }

    #[test]
    fn evaluation() {
        let v = VarId::new(1, 1);
        let f = AffineMatrix::from_rows(vec![vec![AffineForm::var(v)]]).unwrap();
        let point = Assignment::from([(v, int(5))]);
        assert_eq!(eval_affine_matrix(&f, &point).unwrap(), RatMatrix::from_i64(&[&[5]]));

        let c = AffineMatrix::from_rows(vec![
            vec![AffineForm::constant(int(1)), AffineForm::zero()],
            vec![AffineForm::constant(int(3)), AffineForm::constant(int(4))],
        ])
        .unwrap();
        assert_eq!(
            eval_affine_matrix(&c, &Assignment::new()).unwrap(),
            RatMatrix::from_i64(&[&[1, 0], &[3, 4]])
        );

        let err = eval_affine_matrix(&f, &Assignment::new()).unwrap_err();
        assert_eq!(err, Error::MissingAssignment(v));
        assert!(err.to_string().contains("x[1,1]"));
    }
}
