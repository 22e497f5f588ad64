//! The three labeled lattices: subsets of `[n]`, faces of the `n`-cube, and
//! sub-multisets of `{1^m₁, …, n^mₙ}`.
//!
//! An edge into an element of rank `r` is labeled with a row-`r` variable, so
//! each saturated chain spells one monomial `x[1,·] x[2,·] ⋯`.

use super::GradedLabeledPoset;
use crate::algebra::{AffineForm, VarId};
use crate::error::{Error, Result};

fn label(row: usize, col: i32) -> AffineForm {
    AffineForm::var(VarId::new(row as u32, col))
}

/// Adds every element (sorted by rank, then id) followed by every cover.
fn assemble(
    mut elements: Vec<(String, usize)>,
    covers: Vec<(String, String, AffineForm)>,
) -> GradedLabeledPoset {
    elements.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| a.0.cmp(&b.0)));
    let mut poset = GradedLabeledPoset::new();
    for (id, rank) in elements {
        poset.add_element(id, rank).expect("generated ids are distinct");
    }
    for (lo, hi, l) in covers {
        poset.add_cover(&lo, &hi, l).expect("generated covers are well formed");
    }
    poset
}

fn positive(n: usize, what: &str) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidPoset(format!("{what} needs n >= 1")));
    }
    Ok(())
}

/// Subsets of `[n]`; the edge `T → T ∪ {j}` is labeled `x[|T|+1, j]`.
/// Element ids are `b` followed by the membership bits of `1..n`.
pub fn boolean_lattice(n: usize) -> Result<GradedLabeledPoset> {
    positive(n, "boolean lattice")?;
    let id = |mask: usize| -> String {
        let bits: String = (0..n).map(|j| if mask >> j & 1 == 1 { '1' } else { '0' }).collect();
        format!("b{bits}")
    };
    let mut elements = Vec::new();
    let mut covers = Vec::new();
    for mask in 0..1usize << n {
        let rank = mask.count_ones() as usize;
        elements.push((id(mask), rank));
        for j in 0..n {
            if mask >> j & 1 == 0 {
                covers.push((id(mask), id(mask | 1 << j), label(rank + 1, j as i32 + 1)));
            }
        }
    }
    Ok(assemble(elements, covers))
}

/// Faces of the `n`-cube as vectors `u ∈ {0,1,−1}ⁿ`, ranked by the number of
/// nonzero coordinates. Setting coordinate `j` of a rank-`r` face to `±1` is
/// labeled `x[r+1, ±j]`. Ids are `c` followed by `0`, `+` or `-` per coordinate.
pub fn cube_face_lattice(n: usize) -> Result<GradedLabeledPoset> {
    positive(n, "cube face lattice")?;
    let id = |u: &[i8]| -> String {
        let chars: String = u
            .iter()
            .map(|&c| match c {
                0 => '0',
                1 => '+',
                _ => '-',
            })
            .collect();
        format!("c{chars}")
    };
    let total = 3usize.pow(n as u32);
    let mut elements = Vec::with_capacity(total);
    let mut covers = Vec::new();
    for code in 0..total {
        let mut u = vec![0i8; n];
        let mut rest = code;
        for slot in u.iter_mut() {
            *slot = [0, 1, -1][rest % 3];
            rest /= 3;
        }
        let rank = u.iter().filter(|&&c| c != 0).count();
        elements.push((id(&u), rank));
        for j in 0..n {
            if u[j] != 0 {
                continue;
            }
            for sign in [1i8, -1] {
                let mut v = u.clone();
                v[j] = sign;
                let col = i32::from(sign) * (j as i32 + 1);
                covers.push((id(&u), id(&v), label(rank + 1, col)));
            }
        }
    }
    Ok(assemble(elements, covers))
}

/// Sub-multisets of `{1^m₁, …, n^mₙ}` as count vectors; adding one copy of
/// `j` to a multiset of size `s` is labeled `x[s+1, j]`. Ids are `m` followed
/// by the counts joined with `_`.
pub fn multiset_lattice(composition: &[usize]) -> Result<GradedLabeledPoset> {
    positive(composition.len(), "multiset lattice")?;
    if let Some(pos) = composition.iter().position(|&m| m == 0) {
        return Err(Error::InvalidPoset(format!(
            "composition part {} is zero",
            pos + 1
        )));
    }
    let id = |counts: &[usize]| -> String {
        let parts: Vec<String> = counts.iter().map(ToString::to_string).collect();
        format!("m{}", parts.join("_"))
    };
    let total: usize = composition.iter().map(|m| m + 1).product();
    let mut elements = Vec::with_capacity(total);
    let mut covers = Vec::new();
    for code in 0..total {
        let mut counts = Vec::with_capacity(composition.len());
        let mut rest = code;
        for &m in composition {
            counts.push(rest % (m + 1));
            rest /= m + 1;
        }
        let size: usize = counts.iter().sum();
        elements.push((id(&counts), size));
        for j in 0..composition.len() {
            if counts[j] < composition[j] {
                let mut bigger = counts.clone();
                bigger[j] += 1;
                covers.push((id(&counts), id(&bigger), label(size + 1, j as i32 + 1)));
            }
        }
    }
    Ok(assemble(elements, covers))
}
