//! Closed-form Hessians at the explicit zeros, assembled block by block.

use num_bigint::BigInt;
use num_traits::One;

use crate::algebra::rational::{factorial, frac, int};
use crate::algebra::{RatMatrix, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HessianBlocks {
    /// `H = [[C, C], [C, C]]`, `C = prefactor · (blocks of A and (n−2)W)`.
    Hoperm {
        prefactor: Rational,
        a: RatMatrix,
        /// `(n−2)·W` with `W = U − I`.
        scaled_w: RatMatrix,
        c: RatMatrix,
    },
    /// Zero diagonal blocks, `Q` wherever the block row or column is the
    /// special row, `R` elsewhere.
    Mperm {
        ell: u8,
        /// 1-based special row: `γ` for `ℓ = 1`, `1` for `ℓ = 2`.
        special_row: usize,
        q: RatMatrix,
        r: RatMatrix,
        k1: Option<Rational>,
        k2: Option<Rational>,
        c: Option<usize>,
        d: Option<Rational>,
        /// Scalar in front of the bracketed `R` pattern.
        r_prefactor: Rational,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpectedHessian {
    pub matrix: RatMatrix,
    pub blocks: HessianBlocks,
}

fn rat(value: BigInt) -> Rational {
    Rational::from_integer(value)
}

/// Expected Hessian of `hoperm_n` at its zero, in the positive-then-negative
/// variable order. Needs `n ≥ 3`.
pub fn expected_hessian_hoperm(n: usize) -> Result<ExpectedHessian> {
    if n < 3 {
        return Err(Error::InvalidFamily(format!(
            "closed-form hoperm Hessian needs n >= 3, got {n}"
        )));
    }
    let prefactor = rat((BigInt::one() << (n - 2)) * factorial(n - 3));
    let edge = int(n as i64 - 2);
    let a = RatMatrix::from_fn(n, n, |i, j| match (i == j, i == n - 1 || j == n - 1) {
        (true, _) => int(0),
        (false, true) => edge.clone(),
        (false, false) => int(-2),
    });
    let w = RatMatrix::ones(n, n).sub(&RatMatrix::identity(n))?;
    let scaled_w = w.scale(&edge);

    let mut c = RatMatrix::zeros(n * n, n * n);
    for bi in 0..n {
        for bj in 0..n {
            if bi == bj {
                continue;
            }
            let block = if bi == n - 1 || bj == n - 1 { &scaled_w } else { &a };
            c.set_block(bi * n, bj * n, block);
        }
    }
    let c = c.scale(&prefactor);
    let mut matrix = RatMatrix::zeros(2 * n * n, 2 * n * n);
    for (bi, bj) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
        matrix.set_block(bi * n * n, bj * n * n, &c);
    }
    Ok(ExpectedHessian {
        matrix,
        blocks: HessianBlocks::Hoperm {
            prefactor,
            a,
            scaled_w,
            c,
        },
    })
}

/// Which scalar multiplies the bracketed `R⁽¹⁾` pattern.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UnequalRScale {
    /// `(γ−3)!/(m₁!⋯mₙ!)`, what the row-`γ` expansion of the second
    /// derivative produces.
    Derived,
    /// `k₁ = (γ−2)!/(m₁!⋯mₙ!)` as printed next to `R⁽¹⁾`; agrees with
    /// `Derived` only when `γ = 3`.
    Printed,
}

/// Expected Hessian of `mperm_m` at its zero for a partition `m` with `γ ≥ 3`,
/// row-major variable order.
pub fn expected_hessian_mperm(m: &[usize]) -> Result<ExpectedHessian> {
    expected_hessian_mperm_with(m, UnequalRScale::Derived)
}

pub fn expected_hessian_mperm_with(m: &[usize], scale: UnequalRScale) -> Result<ExpectedHessian> {
    if m.is_empty() || m.contains(&0) {
        return Err(Error::InvalidFamily(format!("invalid partition {m:?}")));
    }
    if m.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::InvalidFamily(format!(
            "{m:?} is not sorted descending; canonicalize to a partition first"
        )));
    }
    let gamma: usize = m.iter().sum();
    if gamma < 3 {
        return Err(Error::InvalidFamily(format!(
            "closed-form mperm Hessian needs gamma >= 3, got {gamma}"
        )));
    }
    let n = m.len();
    let denom: BigInt = m.iter().map(|&p| factorial(p)).product();
    let mi = |j: usize| int(m[j] as i64);
    // m_j m_j' off the diagonal, m_j (m_j − 1) on it
    let pair = |j: usize, l: usize| {
        if j == l {
            mi(j) * (mi(j) - int(1))
        } else {
            mi(j) * mi(l)
        }
    };

    let blocks = if m.iter().all(|&p| p == m[0]) {
        let mm = m[0] as i64;
        let k2 = Rational::new(factorial(gamma - 3), denom);
        let q = RatMatrix::from_fn(n, n, &pair).scale(&(&k2 * int(gamma as i64 - 2)));
        let nn = n as i64;
        let r_prefactor = &k2 * int(mm);
        let r = RatMatrix::from_fn(n, n, |j, l| match (j, l) {
            (0, 0) => int(2 * (mm - 1) * (nn - 1)),
            (0, _) | (_, 0) => int(mm * (nn - 2)),
            _ if j == l => int(-2 * (mm - 1)),
            _ => int(-2 * mm),
        })
        .scale(&r_prefactor);
        HessianBlocks::Mperm {
            ell: 2,
            special_row: 1,
            q,
            r,
            k1: None,
            k2: Some(k2),
            c: None,
            d: None,
            r_prefactor,
        }
    } else {
        let c = m.iter().filter(|&&p| p == m[0]).count();
        let d = frac(gamma as i64, (c * m[0]) as i64);
        let k1 = Rational::new(factorial(gamma - 2), denom.clone());
        let r_prefactor = match scale {
            UnequalRScale::Derived => Rational::new(factorial(gamma - 3), denom),
            UnequalRScale::Printed => k1.clone(),
        };
        let q = RatMatrix::from_fn(n, n, &pair).scale(&k1);
        let r = RatMatrix::from_fn(n, n, |j, l| {
            let factor = match (j < c, l < c) {
                (true, true) => int(2) * (&d - int(1)),
                (false, false) => int(-2),
                _ => &d - int(2),
            };
            factor * pair(j, l)
        })
        .scale(&r_prefactor);
        HessianBlocks::Mperm {
            ell: 1,
            special_row: gamma,
            q,
            r,
            k1: Some(k1),
            k2: None,
            c: Some(c),
            d: Some(d),
            r_prefactor,
        }
    };

    let HessianBlocks::Mperm {
        special_row, q, r, ..
    } = &blocks
    else {
        unreachable!()
    };
    let s = special_row - 1;
    let mut matrix = RatMatrix::zeros(gamma * n, gamma * n);
    for bi in 0..gamma {
        for bj in 0..gamma {
            if bi == bj {
                continue;
            }
            let block = if bi == s || bj == s { q } else { r };
            matrix.set_block(bi * n, bj * n, block);
        }
    }
    Ok(ExpectedHessian { matrix, blocks })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hoperm_three_blocks() {
        let e = expected_hessian_hoperm(3).unwrap();
        let HessianBlocks::Hoperm {
            prefactor,
            a,
            scaled_w,
            ..
        } = &e.blocks
        else {
            panic!()
        };
        assert_eq!(*prefactor, int(2));
        assert_eq!(*a, RatMatrix::from_i64(&[&[0, -2, 1], &[-2, 0, 1], &[1, 1, 0]]));
        assert_eq!(*scaled_w, RatMatrix::from_i64(&[&[0, 1, 1], &[1, 0, 1], &[1, 1, 0]]));
        assert_eq!(e.matrix.rows(), 18);
        assert!(e.matrix.is_symmetric());
        assert!(expected_hessian_hoperm(2).is_err());
    }

    #[test]
    fn perm_three_uses_equal_case() {
        let e = expected_hessian_mperm(&[1, 1, 1]).unwrap();
        let HessianBlocks::Mperm { ell, q, k2, .. } = &e.blocks else {
            panic!()
        };
        assert_eq!(*ell, 2);
        assert_eq!(*k2, Some(int(1)));
        let w = RatMatrix::ones(3, 3).sub(&RatMatrix::identity(3)).unwrap();
        assert_eq!(*q, w);
    }

    #[test]
    fn two_one_constants() {
        let e = expected_hessian_mperm(&[2, 1]).unwrap();
        let HessianBlocks::Mperm { ell, k1, c, d, .. } = &e.blocks else {
            panic!()
        };
        assert_eq!((*ell, *c), (1, Some(1)));
        assert_eq!(*k1, Some(frac(1, 2)));
        assert_eq!(*d, Some(frac(3, 2)));
    }

    #[test]
    fn printed_and_derived_scales_agree_only_at_gamma_three() {
        let derived = expected_hessian_mperm(&[2, 1]).unwrap();
        let printed = expected_hessian_mperm_with(&[2, 1], UnequalRScale::Printed).unwrap();
        assert_eq!(derived, printed);
        let derived = expected_hessian_mperm(&[3, 1]).unwrap();
        let printed = expected_hessian_mperm_with(&[3, 1], UnequalRScale::Printed).unwrap();
        assert_ne!(derived.matrix, printed.matrix);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(expected_hessian_mperm(&[1, 2]).is_err());
        assert!(expected_hessian_mperm(&[2]).is_err());
        assert!(expected_hessian_mperm(&[2, 0, 1]).is_err());
    }
}
