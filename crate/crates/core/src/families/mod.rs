//! The permanent, the hyperoctahedral permanent and the multipermanent.
//!
//! `perm_n` is carried as the multipermanent with composition `(1,…,1)`; the
//! `Perm` kind only affects naming and display.

mod derivative;
mod eval;
mod special;

use std::collections::HashMap;
use std::fmt;

pub use derivative::{det_cofactor_hessian, hessian_at, partial, second_partial};
pub use eval::{
    eval, eval_brute, eval_recurrence, Method, BRUTE_HOPERM_MAX_N, BRUTE_MPERM_MAX_GAMMA,
    RECURRENCE_HOPERM_MAX_N, RECURRENCE_MPERM_MAX_GAMMA,
};
pub use special::{ones_value, zero_point, ZeroCase, ZeroPoint};

use crate::algebra::{Assignment, RatMatrix, Rational, VarId};
use crate::error::{Error, Result};

/// Evaluation points are plain matrices in the family's shape: `n × 2n` for
/// hoperm with columns `1,…,n,−1,…,−n`, and `γ × n` for mperm.
pub type PointMatrix = RatMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FamilyKind {
    Perm,
    Hoperm,
    Mperm,
}

impl FamilyKind {
    pub fn name(self) -> &'static str {
        match self {
            FamilyKind::Perm => "perm",
            FamilyKind::Hoperm => "hoperm",
            FamilyKind::Mperm => "mperm",
        }
    }
}

impl std::str::FromStr for FamilyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "perm" => Ok(FamilyKind::Perm),
            "hoperm" => Ok(FamilyKind::Hoperm),
            "mperm" => Ok(FamilyKind::Mperm),
            other => Err(Error::InvalidFamily(format!("unknown family {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FamilySpec {
    kind: FamilyKind,
    /// Column count for perm/mperm, row count for hoperm.
    n: usize,
    /// Empty for hoperm.
    composition: Vec<usize>,
}

impl FamilySpec {
    pub fn perm(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidFamily("perm needs n >= 1".into()));
        }
        Ok(Self {
            kind: FamilyKind::Perm,
            n,
            composition: vec![1; n],
        })
    }

    pub fn hoperm(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidFamily("hoperm needs n >= 1".into()));
        }
        Ok(Self {
            kind: FamilyKind::Hoperm,
            n,
            composition: Vec::new(),
        })
    }

    /// Zero parts are rejected; remove them before building the spec.
    pub fn mperm(composition: Vec<usize>) -> Result<Self> {
        if composition.is_empty() {
            return Err(Error::InvalidFamily("mperm needs a non-empty composition".into()));
        }
        if let Some(pos) = composition.iter().position(|&m| m == 0) {
            return Err(Error::InvalidFamily(format!(
                "composition part {} is zero; remove zero parts first",
                pos + 1
            )));
        }
        Ok(Self {
            kind: FamilyKind::Mperm,
            n: composition.len(),
            composition,
        })
    }

    pub fn kind(&self) -> FamilyKind {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn composition(&self) -> &[usize] {
        &self.composition
    }

    pub fn is_hoperm(&self) -> bool {
        self.kind == FamilyKind::Hoperm
    }

    /// Degree of the polynomial: `n` for hoperm, `γ = Σ mᵢ` otherwise.
    pub fn gamma(&self) -> usize {
        if self.is_hoperm() {
            self.n
        } else {
            self.composition.iter().sum()
        }
    }

    pub fn shape(&self) -> (usize, usize) {
        if self.is_hoperm() {
            (self.n, 2 * self.n)
        } else {
            (self.gamma(), self.n)
        }
    }

    pub fn num_vars(&self) -> usize {
        let (r, c) = self.shape();
        r * c
    }

    /// Whether the composition is already sorted descending.
    pub fn is_partition(&self) -> bool {
        self.composition.windows(2).all(|w| w[0] >= w[1])
    }

    /// Sorts an mperm composition into a partition. Returns the canonical spec
    /// and, for each column of it, the column of `self` it came from. Perm and
    /// hoperm come back unchanged with the identity relabeling.
    pub fn canonical(&self) -> (FamilySpec, Vec<usize>) {
        let mut order: Vec<usize> = (0..self.n).collect();
        if self.kind != FamilyKind::Mperm {
            return (self.clone(), order);
        }
        order.sort_by(|&a, &b| self.composition[b].cmp(&self.composition[a]));
        let composition = order.iter().map(|&j| self.composition[j]).collect();
        (
            FamilySpec {
                kind: FamilyKind::Mperm,
                n: self.n,
                composition,
            },
            order,
        )
    }

    pub fn check_point(&self, x: &PointMatrix) -> Result<()> {
        let (r, c) = self.shape();
        if x.rows() != r || x.cols() != c {
            return Err(Error::Shape(format!(
                "{self} expects a {r}x{c} matrix, got {}x{}",
                x.rows(),
                x.cols()
            )));
        }
        Ok(())
    }

    /// Variable stored at 0-based matrix position `(row, col)`.
    pub fn var_at(&self, row: usize, col: usize) -> VarId {
        let c = if self.is_hoperm() && col >= self.n {
            -((col - self.n + 1) as i32)
        } else {
            (col + 1) as i32
        };
        VarId::new(row as u32 + 1, c)
    }

    /// 0-based matrix position of a variable, if it belongs to the family.
    pub fn position(&self, v: VarId) -> Option<(usize, usize)> {
        let (rows, _) = self.shape();
        let row = (v.row as usize).checked_sub(1)?;
        let abs = v.col.unsigned_abs() as usize;
        if row >= rows || abs == 0 || abs > self.n {
            return None;
        }
        match (self.is_hoperm(), v.col > 0) {
            (_, true) => Some((row, abs - 1)),
            (true, false) => Some((row, self.n + abs - 1)),
            (false, false) => None,
        }
    }

    pub fn assignment(&self, x: &PointMatrix) -> Result<Assignment> {
        self.check_point(x)?;
        let mut map = HashMap::with_capacity(self.num_vars());
        for i in 0..x.rows() {
            for j in 0..x.cols() {
                map.insert(self.var_at(i, j), x[(i, j)].clone());
            }
        }
        Ok(map)
    }

    pub fn point_from_assignment(&self, point: &Assignment) -> Result<PointMatrix> {
        let (r, c) = self.shape();
        let mut x = RatMatrix::zeros(r, c);
        for i in 0..r {
            for j in 0..c {
                let v = self.var_at(i, j);
                x[(i, j)] = point.get(&v).cloned().ok_or(Error::MissingAssignment(v))?;
            }
        }
        Ok(x)
    }

    /// Hessian indexing order: hoperm sweeps all positive columns row by row,
    /// then all negative columns; mperm is row-major.
    pub fn var_order(&self) -> VarOrder {
        let (rows, _) = self.shape();
        let mut vars = Vec::with_capacity(self.num_vars());
        if self.is_hoperm() {
            for sign in [1i32, -1] {
                for i in 0..rows {
                    for j in 1..=self.n {
                        vars.push(VarId::new(i as u32 + 1, sign * j as i32));
                    }
                }
            }
        } else {
            for i in 0..rows {
                for j in 1..=self.n {
                    vars.push(VarId::new(i as u32 + 1, j as i32));
                }
            }
        }
        VarOrder(vars)
    }

    /// Closed-form size of the poset determinantal representation:
    /// `3ⁿ` for hoperm, `∏(mᵢ+1) − 1` otherwise.
    pub fn detrep_size(&self) -> u128 {
        if self.is_hoperm() {
            3u128.pow(self.n as u32)
        } else {
            self.composition
                .iter()
                .map(|&m| m as u128 + 1)
                .product::<u128>()
                - 1
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            FamilyKind::Perm => write!(f, "perm_{}", self.n),
            FamilyKind::Hoperm => write!(f, "hoperm_{}", self.n),
            FamilyKind::Mperm => {
                let parts: Vec<String> = self.composition.iter().map(ToString::to_string).collect();
                write!(f, "mperm_({})", parts.join(","))
            }
        }
    }
}

/// Total order on the family variables used to index Hessian rows/columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarOrder(pub Vec<VarId>);

impl VarOrder {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn vars(&self) -> &[VarId] {
        &self.0
    }
}

/// Point with every variable set to `value`.
pub fn constant_point(spec: &FamilySpec, value: Rational) -> PointMatrix {
    let (r, c) = spec.shape();
    RatMatrix::from_fn(r, c, |_, _| value.clone())
}
