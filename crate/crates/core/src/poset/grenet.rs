//! Determinantal representations from labeled graded posets.
//!
//! The Hasse diagram becomes a directed graph; the maximum and the minimum are
//! merged into a single root vertex `v₀` and every other vertex gets a loop of
//! weight 1. Every cycle cover is one root cycle along a saturated chain plus
//! loops, so the determinant of the weighted adjacency matrix is the chain
//! polynomial up to the sign `(-1)^(L-1)` of an `L`-cycle; when `L` is even
//! the first row is negated.

use super::{
    boolean_lattice, cube_face_lattice, multiset_lattice, validate_poset, GradedLabeledPoset,
};
use crate::algebra::{det, eval_affine_matrix, AffineForm, AffineMatrix, Assignment, Rational};
use crate::error::Result;
use crate::families::{FamilyKind, FamilySpec};

/// Id given to the formal top adjoined to posets with several maximal elements.
pub const TOP_ID: &str = "top";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DetRep {
    pub matrix: AffineMatrix,
    /// Family the poset was built for, when known.
    pub family: Option<FamilySpec>,
    /// Whether the first row was negated to fix the overall sign.
    pub sign_fixed: bool,
    /// Rank of the input poset, i.e. the degree of the chain polynomial.
    pub chain_degree: usize,
    /// Length of every cycle through the root; `chain_degree + 1` when a top
    /// was adjoined.
    pub cycle_length: usize,
    pub top_adjoined: bool,
    /// Element id of each vertex; vertex 0 is the merged minimum/maximum.
    pub vertices: Vec<String>,
}

impl DetRep {
    pub fn size(&self) -> usize {
        self.matrix.size()
    }

    pub fn det_at(&self, point: &Assignment) -> Result<Rational> {
        det(&eval_affine_matrix(&self.matrix, point)?)
    }

    /// True when the graph on the non-root vertices, loops removed, has no
    /// cycle: then every cycle cover is a root cycle plus loops.
    pub fn cycles_pass_through_root(&self) -> bool {
        let n = self.size();
        let edge = |i: usize, j: usize| i != j && !self.matrix.get(i, j).is_zero();
        let mut indegree = vec![0usize; n];
        for i in 1..n {
            for j in 1..n {
                if edge(i, j) {
                    indegree[j] += 1;
                }
            }
        }
        let mut ready: Vec<usize> = (1..n).filter(|&v| indegree[v] == 0).collect();
        let mut removed = 0;
        while let Some(v) = ready.pop() {
            removed += 1;
            for j in 1..n {
                if edge(v, j) {
                    indegree[j] -= 1;
                    if indegree[j] == 0 {
                        ready.push(j);
                    }
                }
            }
        }
        removed == n.saturating_sub(1)
    }
}

/// Compiles a valid poset into a determinantal representation of its chain
/// polynomial. A poset without a unique maximum first gets a formal top
/// covering every maximal element with label 1.
pub fn grenet_build(poset: &GradedLabeledPoset) -> Result<DetRep> {
    let report = validate_poset(poset)?;
    let chain_degree = report.rank;
    let mut working = poset.clone();
    let top_adjoined = !report.has_unique_maximum();
    let top = if top_adjoined {
        let mut top_id = TOP_ID.to_string();
        while working.index_of(&top_id).is_some() {
            top_id.push('\'');
        }
        let top = working.add_element(top_id.clone(), chain_degree + 1)?;
        for &m in &report.maximal {
            let id = working.elements()[m].id.clone();
            working.add_cover(&id, &top_id, AffineForm::one())?;
        }
        top
    } else {
        report.maximal[0]
    };
    let cycle_length = chain_degree + usize::from(top_adjoined);

    let elements = working.elements();
    let mut rest: Vec<usize> = (0..elements.len())
        .filter(|&i| i != report.minimum && i != top)
        .collect();
    rest.sort_by(|&a, &b| {
        elements[a]
            .rank
            .cmp(&elements[b].rank)
            .then_with(|| elements[a].id.cmp(&elements[b].id))
    });
    let mut vertex = vec![0usize; elements.len()];
    for (pos, &e) in rest.iter().enumerate() {
        vertex[e] = pos + 1;
    }
    let size = rest.len() + 1;

    let mut matrix = AffineMatrix::zeros(size);
    for cover in working.covers() {
        let (i, j) = (vertex[cover.lower], vertex[cover.upper]);
        let summed = matrix.get(i, j).plus(&cover.label);
        *matrix.get_mut(i, j) = summed;
    }
    for v in 1..size {
        let with_loop = matrix.get(v, v).plus(&AffineForm::one());
        *matrix.get_mut(v, v) = with_loop;
    }
    let sign_fixed = cycle_length % 2 == 0;
    if sign_fixed {
        matrix.negate_row(0);
    }

    let root_name = format!(
        "{}={}",
        elements[report.minimum].id, elements[top].id
    );
    let vertices = std::iter::once(root_name)
        .chain(rest.iter().map(|&e| elements[e].id.clone()))
        .collect();

    Ok(DetRep {
        matrix,
        family: None,
        sign_fixed,
        chain_degree,
        cycle_length,
        top_adjoined,
        vertices,
    })
}

/// The labeled lattice whose chain polynomial is the family polynomial.
pub fn family_poset(spec: &FamilySpec) -> Result<GradedLabeledPoset> {
    match spec.kind() {
        FamilyKind::Perm => boolean_lattice(spec.n()),
        FamilyKind::Hoperm => cube_face_lattice(spec.n()),
        FamilyKind::Mperm => multiset_lattice(spec.composition()),
    }
}

pub fn family_detrep(spec: &FamilySpec) -> Result<DetRep> {
    let mut rep = grenet_build(&family_poset(spec)?)?;
    rep.family = Some(spec.clone());
    Ok(rep)
}
