//! Graded posets whose cover relations carry affine labels, and the
//! polynomial they support: the sum over saturated chains of the product of
//! the labels along the chain.

mod grenet;
mod lattices;
mod verify;

use std::collections::{HashMap, HashSet};

pub use grenet::{family_detrep, family_poset, grenet_build, DetRep, TOP_ID};
pub use lattices::{boolean_lattice, cube_face_lattice, multiset_lattice};
pub use verify::{
    verify_against_family, verify_detrep, TrialOutcome, VerificationReport, VerifyConfig,
};

use num_traits::{One, Zero};

use crate::algebra::{AffineForm, Assignment, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Element {
    pub id: String,
    pub rank: usize,
}

/// Cover relation `lower ⋖ upper`, by element index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cover {
    pub lower: usize,
    pub upper: usize,
    pub label: AffineForm,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GradedLabeledPoset {
    elements: Vec<Element>,
    covers: Vec<Cover>,
    index: HashMap<String, usize>,
}

impl GradedLabeledPoset {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_element(&mut self, id: impl Into<String>, rank: usize) -> Result<usize> {
        let id = id.into();
        if self.index.contains_key(&id) {
            return Err(Error::InvalidPoset(format!("duplicate element id {id:?}")));
        }
        let at = self.elements.len();
        self.index.insert(id.clone(), at);
        self.elements.push(Element { id, rank });
        Ok(at)
    }

    pub fn add_cover(&mut self, lower: &str, upper: &str, label: AffineForm) -> Result<()> {
        let find = |id: &str| {
            self.index
                .get(id)
                .copied()
                .ok_or_else(|| Error::InvalidPoset(format!("unknown element id {id:?}")))
        };
        let (lower, upper) = (find(lower)?, find(upper)?);
        self.covers.push(Cover {
            lower,
            upper,
            label,
        });
        Ok(())
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn covers(&self) -> &[Cover] {
        &self.covers
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Largest element rank.
    pub fn rank(&self) -> usize {
        self.elements.iter().map(|e| e.rank).max().unwrap_or(0)
    }
}

/// Outcome of [`validate_poset`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PosetReport {
    pub elements: usize,
    pub covers: usize,
    pub rank: usize,
    pub minimum: usize,
    pub maximal: Vec<usize>,
}

impl PosetReport {
    pub fn has_unique_maximum(&self) -> bool {
        self.maximal.len() == 1
    }
}

/// Checks the hypotheses of the chain construction: one element of rank 0,
/// every cover raises rank by exactly one, every element lies on a saturated
/// chain from the minimum, and every maximal element has the top rank.
pub fn validate_poset(poset: &GradedLabeledPoset) -> Result<PosetReport> {
    let invalid = |msg: String| Err(Error::InvalidPoset(msg));
    let elements = poset.elements();
    if elements.is_empty() {
        return invalid("poset has no elements".into());
    }
    let minima: Vec<usize> = (0..elements.len()).filter(|&i| elements[i].rank == 0).collect();
    match minima.len() {
        0 => return invalid("no element of rank 0".into()),
        1 => {}
        _ => {
            return invalid(format!(
                "{} elements of rank 0 ({:?}, {:?}, ...); a unique minimum is required",
                minima.len(),
                elements[minima[0]].id,
                elements[minima[1]].id
            ))
        }
    }

    let mut has_lower = vec![false; elements.len()];
    let mut has_upper = vec![false; elements.len()];
    let mut seen = HashSet::new();
    for cover in poset.covers() {
        let (lo, hi) = (&elements[cover.lower], &elements[cover.upper]);
        if hi.rank != lo.rank + 1 {
            return invalid(format!(
                "cover {} -> {} goes from rank {} to rank {}; covers must raise rank by one",
                lo.id, hi.id, lo.rank, hi.rank
            ));
        }
        if !seen.insert((cover.lower, cover.upper)) {
            return invalid(format!("duplicate cover {} -> {}", lo.id, hi.id));
        }
        has_lower[cover.upper] = true;
        has_upper[cover.lower] = true;
    }

    let rank = poset.rank();
    if rank == 0 {
        return invalid("poset has rank 0; at least one cover is required".into());
    }
    for (i, e) in elements.iter().enumerate() {
        if !has_lower[i] && !has_upper[i] {
            return invalid(format!("element {} is isolated", e.id));
        }
        if e.rank > 0 && !has_lower[i] {
            return invalid(format!(
                "element {} of rank {} has no lower cover and is unreachable from the minimum",
                e.id, e.rank
            ));
        }
        if !has_upper[i] && e.rank != rank {
            return invalid(format!(
                "maximal element {} has rank {}, expected {}",
                e.id, e.rank, rank
            ));
        }
    }
    let maximal = (0..elements.len()).filter(|&i| !has_upper[i]).collect();
    Ok(PosetReport {
        elements: elements.len(),
        covers: poset.covers().len(),
        rank,
        minimum: minima[0],
        maximal,
    })
}

/// Sum over saturated chains from the minimum to any maximal element of the
/// product of cover labels, by dynamic programming up the ranks.
pub fn eval_poset_polynomial(poset: &GradedLabeledPoset, point: &Assignment) -> Result<Rational> {
    let report = validate_poset(poset)?;
    let mut by_rank: Vec<&Cover> = poset.covers().iter().collect();
    by_rank.sort_by_key(|c| poset.elements()[c.lower].rank);
    let mut value = vec![Rational::zero(); poset.len()];
    value[report.minimum] = Rational::one();
    for cover in by_rank {
        if value[cover.lower].is_zero() {
            continue;
        }
        let label = cover.label.eval(point)?;
        let contribution = &value[cover.lower] * label;
        value[cover.upper] += contribution;
    }
    Ok(report.maximal.iter().map(|&i| value[i].clone()).sum())
}
