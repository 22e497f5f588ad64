//! Determinant and rank by fraction-free elimination, plus the two block
//! constructions the Hessian arguments rely on.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::matrix::RatMatrix;
use super::rational::{denominator_lcm, Rational};
use crate::error::{Error, Result};

/// Scales every row by the lcm of its denominators. Returns the integer rows
/// and the product of the scale factors.
fn integer_rows(m: &RatMatrix) -> (Vec<Vec<BigInt>>, BigInt) {
    let mut scale = BigInt::one();
    let rows = (0..m.rows())
        .map(|i| {
            let row = m.row(i);
            let lcm = denominator_lcm(row);
            let ints = row
                .iter()
                .map(|v| v.numer() * (&lcm / v.denom()))
                .collect();
            scale *= &lcm;
            ints
        })
        .collect();
    (rows, scale)
}

/// Bareiss elimination on a square integer matrix.
fn bareiss_det(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        let (top, bottom) = a.split_at_mut(k + 1);
        let pivot_row = &top[k];
        let pivot = &pivot_row[k];
        for row in bottom.iter_mut() {
            let factor = std::mem::take(&mut row[k]);
            for j in k + 1..n {
                let updated = pivot * &row[j] - &factor * &pivot_row[j];
                row[j] = exact_div(updated, &prev);
            }
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

fn exact_div(value: BigInt, divisor: &BigInt) -> BigInt {
    if divisor.is_one() {
        return value;
    }
    debug_assert!((&value % divisor).is_zero(), "inexact fraction-free step");
    value / divisor
}

/// Exact determinant.
pub fn det(m: &RatMatrix) -> Result<Rational> {
    if !m.is_square() {
        return Err(Error::Shape(format!(
            "determinant of a non-square {}x{} matrix",
            m.rows(),
            m.cols()
        )));
    }
    let (rows, scale) = integer_rows(m);
    Ok(Rational::new(bareiss_det(rows), scale))
}

/// Exact rank over the rationals.
pub fn rank(m: &RatMatrix) -> usize {
    let (mut a, _) = integer_rows(m);
    let (rows, cols) = (m.rows(), m.cols());
    let mut r = 0;
    let mut prev = BigInt::one();
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let (top, bottom) = a.split_at_mut(r + 1);
        let pivot_row = &top[r];
        let pivot = &pivot_row[c];
        for row in bottom.iter_mut() {
            let factor = std::mem::take(&mut row[c]);
            for j in c + 1..cols {
                let updated = pivot * &row[j] - &factor * &pivot_row[j];
                row[j] = exact_div(updated, &prev);
            }
        }
        prev = a[r][c].clone();
        r += 1;
    }
    r
}

/// `L · H · Lᵗ`: the Hessian of `det ∘ F` from the Hessian of `det` at `F(y)`,
/// where row `h` of `L` holds the coefficients of variable `h` in each entry of `F`.
pub fn pushforward_hessian(l: &RatMatrix, h: &RatMatrix) -> Result<RatMatrix> {
    if !h.is_square() {
        return Err(Error::Shape(format!(
            "Hessian must be square, got {}x{}",
            h.rows(),
            h.cols()
        )));
    }
    if l.cols() != h.rows() {
        return Err(Error::Shape(format!(
            "coefficient matrix has {} columns but Hessian has size {}",
            l.cols(),
            h.rows()
        )));
    }
    l.mul(h)?.mul(&l.transpose())
}

/// The `(ab)×(ab)` block matrix with zero diagonal blocks, `Q` along the first
/// block row and column, and `R` in every other off-diagonal position.
pub fn build_off_diagonal(q: &RatMatrix, r: &RatMatrix, blocks: usize) -> Result<RatMatrix> {
    if !q.is_square() || !r.is_square() || q.rows() != r.rows() {
        return Err(Error::Shape(format!(
            "Q ({}x{}) and R ({}x{}) must be square of equal size",
            q.rows(),
            q.cols(),
            r.rows(),
            r.cols()
        )));
    }
    if blocks < 2 {
        return Err(Error::Shape(format!("need at least 2 blocks, got {blocks}")));
    }
    let a = q.rows();
    let mut m = RatMatrix::zeros(a * blocks, a * blocks);
    for bi in 0..blocks {
        for bj in 0..blocks {
            if bi == bj {
                continue;
            }
            let block = if bi == 0 || bj == 0 { q } else { r };
            m.set_block(bi * a, bj * a, block);
        }
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{frac, int};

    #[test]
    fn det_examples() {
        assert_eq!(det(&RatMatrix::identity(3)).unwrap(), int(1));
        assert_eq!(det(&RatMatrix::from_i64(&[&[1, 2], &[3, 4]])).unwrap(), int(-2));
        assert_eq!(det(&RatMatrix::ones(3, 3)).unwrap(), int(0));
        assert_eq!(det(&RatMatrix::zeros(0, 0)).unwrap(), int(1));
        assert!(matches!(det(&RatMatrix::zeros(2, 3)), Err(Error::Shape(_))));
    }

    #[test]
    fn det_needs_row_swap_and_fractions() {
        let m = RatMatrix::from_rows(vec![
            vec![int(0), frac(1, 2)],
            vec![frac(2, 3), int(5)],
        ])
        .unwrap();
        assert_eq!(det(&m).unwrap(), frac(-1, 3));
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&RatMatrix::zeros(4, 4)), 0);
        assert_eq!(rank(&RatMatrix::ones(3, 3)), 1);
        let w3 = RatMatrix::ones(3, 3).sub(&RatMatrix::identity(3)).unwrap();
        assert_eq!(rank(&w3), 3);
        assert_eq!(rank(&RatMatrix::from_i64(&[&[0, 1, 2], &[0, 2, 4]])), 1);
        assert_eq!(rank(&RatMatrix::from_i64(&[&[0, 0], &[0, 3], &[1, 0]])), 2);
    }

    #[test]
    fn pushforward_examples() {
        let h = RatMatrix::from_i64(&[&[0, 1, 0, 0], &[1, 0, 0, 0], &[0, 0, 2, 1], &[0, 0, 1, 5]]);
        assert_eq!(pushforward_hessian(&RatMatrix::identity(4), &h).unwrap(), h);
        assert!(pushforward_hessian(&RatMatrix::zeros(2, 4), &h).unwrap().is_zero());
        assert!(pushforward_hessian(&RatMatrix::zeros(2, 3), &h).is_err());
    }

    #[test]
    fn off_diagonal_examples() {
        let one = RatMatrix::identity(1);
        assert_eq!(
            build_off_diagonal(&one, &one, 2).unwrap(),
            RatMatrix::from_i64(&[&[0, 1], &[1, 0]])
        );
        let i2 = RatMatrix::identity(2);
        let m = build_off_diagonal(&i2, &i2, 3).unwrap();
        for bi in 0..3 {
            for bj in 0..3 {
                let expected = if bi == bj { RatMatrix::zeros(2, 2) } else { i2.clone() };
                assert_eq!(m.block(2 * bi, 2 * bj, 2, 2), expected);
            }
        }
        assert!(build_off_diagonal(&i2, &one, 3).is_err());
        assert!(build_off_diagonal(&i2, &i2, 1).is_err());
    }
}
