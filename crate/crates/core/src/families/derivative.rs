//! Exact first and second partial derivatives.
//!
//! Every variable has degree at most one in each family, so derivatives are
//! evaluations of a smaller member of the same family on a reduced matrix.

use num_traits::Zero;

use super::eval::{hoperm_of, mperm_of};
use super::{FamilySpec, PointMatrix, VarOrder};
use crate::algebra::{det, RatMatrix, Rational, VarId};
use crate::error::{Error, Result};

fn locate(spec: &FamilySpec, v: VarId) -> Result<(usize, usize)> {
    spec.position(v)
        .map(|(row, col)| (row, col % spec.n()))
        .ok_or_else(|| Error::Shape(format!("{v} is not a variable of {spec}")))
}

/// Matrix with the given rows and the column pairs `j`, `−j` removed.
fn hoperm_minor(x: &RatMatrix, n: usize, rows: &[usize], abs_cols: &[usize]) -> RatMatrix {
    let cols: Vec<usize> = abs_cols.iter().flat_map(|&j| [j, n + j]).collect();
    x.without(rows, &cols)
}

/// `∂f/∂v` at `x`: `mperm_{m−e_j}(X_i)` or `hoperm_{n−1}(X_{i,±j})`.
pub fn partial(spec: &FamilySpec, x: &PointMatrix, v: VarId) -> Result<Rational> {
    spec.check_point(x)?;
    let (i, j) = locate(spec, v)?;
    if spec.is_hoperm() {
        Ok(hoperm_of(&hoperm_minor(x, spec.n(), &[i], &[j])))
    } else {
        let mut reduced = spec.composition().to_vec();
        reduced[j] -= 1;
        Ok(mperm_of(&x.without(&[i], &[]), &reduced))
    }
}

/// `∂²f/∂v∂w` at `x`. Zero when both variables share a row, and for hoperm
/// also when they share a column pair.
pub fn second_partial(spec: &FamilySpec, x: &PointMatrix, v: VarId, w: VarId) -> Result<Rational> {
    spec.check_point(x)?;
    let (i, j) = locate(spec, v)?;
    let (k, l) = locate(spec, w)?;
    if i == k {
        return Ok(Rational::zero());
    }
    if spec.is_hoperm() {
        if j == l {
            return Ok(Rational::zero());
        }
        Ok(hoperm_of(&hoperm_minor(x, spec.n(), &[i, k], &[j, l])))
    } else {
        let mut reduced = spec.composition().to_vec();
        for col in [j, l] {
            match reduced[col].checked_sub(1) {
                Some(r) => reduced[col] = r,
                None => return Ok(Rational::zero()),
            }
        }
        Ok(mperm_of(&x.without(&[i, k], &[]), &reduced))
    }
}

/// Hessian at `x`, rows and columns indexed by `order`.
pub fn hessian_at(spec: &FamilySpec, x: &PointMatrix, order: &VarOrder) -> Result<RatMatrix> {
    spec.check_point(x)?;
    if order.len() != spec.num_vars() {
        return Err(Error::Shape(format!(
            "variable order has {} entries, {spec} has {} variables",
            order.len(),
            spec.num_vars()
        )));
    }
    let vars = order.vars();
    let size = vars.len();
    let mut h = RatMatrix::zeros(size, size);
    for a in 0..size {
        for b in a + 1..size {
            let value = second_partial(spec, x, vars[a], vars[b])?;
            if !value.is_zero() {
                h[(b, a)] = value.clone();
                h[(a, b)] = value;
            }
        }
    }
    Ok(h)
}

/// Hessian of `det_n` at `a`, indexed by `(i,j) ↦ i·n + j`. The entry for
/// `(i,j),(k,l)` is zero when `i = k` or `j = l`, and otherwise the signed
/// complementary minor with rows `i,k` and columns `j,l` removed.
pub fn det_cofactor_hessian(a: &RatMatrix) -> Result<RatMatrix> {
    if !a.is_square() {
        return Err(Error::Shape(format!(
            "det Hessian of a non-square {}x{} matrix",
            a.rows(),
            a.cols()
        )));
    }
    let n = a.rows();
    let mut h = RatMatrix::zeros(n * n, n * n);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if k == i {
                    continue;
                }
                for l in 0..n {
                    if l == j {
                        continue;
                    }
                    // position of z_{k,l} once row i and column j are gone
                    let kk = k - usize::from(k > i);
                    let ll = l - usize::from(l > j);
                    let minor = det(&a.without(&[i, k], &[j, l]))?;
                    h[(i * n + j, k * n + l)] = if (i + j + kk + ll) % 2 == 0 {
                        minor
                    } else {
                        -minor
                    };
                }
            }
        }
    }
    Ok(h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::int;
    use crate::families::eval_brute;

    fn x(i: u32, j: i32) -> VarId {
        VarId::new(i, j)
    }

    /// f|_{v=1} − f|_{v=0}: exact for polynomials of degree ≤ 1 in `v`.
    fn difference(spec: &FamilySpec, p: &RatMatrix, v: VarId) -> Rational {
        let (r, c) = spec.position(v).unwrap();
        let mut hi = p.clone();
        hi[(r, c)] = int(1);
        let mut lo = p.clone();
        lo[(r, c)] = int(0);
        eval_brute(spec, &hi).unwrap() - eval_brute(spec, &lo).unwrap()
    }

    #[test]
    fn partial_examples() {
        let m = FamilySpec::mperm(vec![2, 1]).unwrap();
        let u = RatMatrix::ones(3, 2);
        assert_eq!(partial(&m, &u, x(3, 2)).unwrap(), int(1));
        assert_eq!(difference(&m, &u, x(3, 2)), int(1));
        assert_eq!(partial(&m, &RatMatrix::zeros(3, 2), x(1, 2)).unwrap(), int(0));

        let h = FamilySpec::hoperm(2).unwrap();
        let u = RatMatrix::ones(2, 4);
        assert_eq!(partial(&h, &u, x(1, 1)).unwrap(), int(2));
        assert_eq!(difference(&h, &u, x(1, 1)), int(2));
        assert!(partial(&h, &u, x(3, 1)).is_err());
    }

    #[test]
    fn second_partial_examples() {
        let m = FamilySpec::mperm(vec![2, 1]).unwrap();
        let u = RatMatrix::ones(3, 2);
        assert_eq!(second_partial(&m, &u, x(1, 1), x(2, 1)).unwrap(), int(1));
        assert_eq!(second_partial(&m, &u, x(1, 1), x(1, 2)).unwrap(), int(0));

        let h = FamilySpec::hoperm(3).unwrap();
        let p = RatMatrix::from_fn(3, 6, |i, j| int((i * 6 + j) as i64 + 2));
        assert_eq!(second_partial(&h, &p, x(1, 2), x(3, -2)).unwrap(), int(0));
        assert_eq!(second_partial(&h, &p, x(2, 1), x(2, 3)).unwrap(), int(0));
        assert_ne!(second_partial(&h, &p, x(1, 2), x(3, -1)).unwrap(), int(0));
    }

    #[test]
    fn det_hessian_small_cases() {
        let h1 = det_cofactor_hessian(&RatMatrix::from_i64(&[&[7]])).unwrap();
        assert_eq!(h1, RatMatrix::zeros(1, 1));

        // det = z00 z11 − z01 z10
        let h2 = det_cofactor_hessian(&RatMatrix::from_i64(&[&[3, -1], &[5, 9]])).unwrap();
        let expected = RatMatrix::from_i64(&[
            &[0, 0, 0, 1],
            &[0, 0, -1, 0],
            &[0, -1, 0, 0],
            &[1, 0, 0, 0],
        ]);
        assert_eq!(h2, expected);
        assert!(det_cofactor_hessian(&RatMatrix::zeros(2, 3)).is_err());
    }
}
