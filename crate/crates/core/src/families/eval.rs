//! Brute-force and recursive evaluators.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{FamilySpec, PointMatrix};
use crate::algebra::rational::denominator_lcm;
use crate::algebra::{RatMatrix, Rational};
use crate::error::{Error, Result};

pub const BRUTE_HOPERM_MAX_N: usize = 8;
pub const BRUTE_MPERM_MAX_GAMMA: usize = 12;
pub const RECURRENCE_HOPERM_MAX_N: usize = 12;
pub const RECURRENCE_MPERM_MAX_GAMMA: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Brute,
    Recurrence,
}

pub fn eval(spec: &FamilySpec, x: &PointMatrix, method: Method) -> Result<Rational> {
    match method {
        Method::Brute => eval_brute(spec, x),
        Method::Recurrence => eval_recurrence(spec, x),
    }
}

/// Sums every monomial of the definition: all `n!·2ⁿ` signed permutations for
/// hoperm, every `σ: [γ] → [n]` with the prescribed preimage sizes for mperm.
///
/// Each monomial uses exactly one entry per row, so rows are first scaled to
/// integers and the enumeration runs over `BigInt`.
pub fn eval_brute(spec: &FamilySpec, x: &PointMatrix) -> Result<Rational> {
    spec.check_point(x)?;
    let (rows, scale) = scaled_rows(x);
    let total = if spec.is_hoperm() {
        cap("hoperm n (brute force)", spec.n(), BRUTE_HOPERM_MAX_N)?;
        let mut acc = BigInt::zero();
        signed_permutation_sum(&rows, spec.n(), 0, 0, &BigInt::one(), &mut acc);
        acc
    } else {
        cap("mperm gamma (brute force)", spec.gamma(), BRUTE_MPERM_MAX_GAMMA)?;
        let mut acc = BigInt::zero();
        let mut remaining = spec.composition().to_vec();
        profile_function_sum(&rows, 0, &mut remaining, &BigInt::one(), &mut acc);
        acc
    };
    Ok(Rational::new(total, scale))
}

fn cap(what: &'static str, value: usize, limit: usize) -> Result<()> {
    if value > limit {
        return Err(Error::SizeCap { what, value, limit });
    }
    Ok(())
}

fn scaled_rows(x: &RatMatrix) -> (Vec<Vec<BigInt>>, BigInt) {
    let mut scale = BigInt::one();
    let rows = (0..x.rows())
        .map(|i| {
            let row = x.row(i);
            let lcm = denominator_lcm(row);
            let ints = row.iter().map(|v| v.numer() * (&lcm / v.denom())).collect();
            scale *= &lcm;
            ints
        })
        .collect();
    (rows, scale)
}

fn signed_permutation_sum(
    rows: &[Vec<BigInt>],
    n: usize,
    row: usize,
    used: u32,
    prefix: &BigInt,
    acc: &mut BigInt,
) {
    if row == n {
        *acc += prefix;
        return;
    }
    for j in 0..n {
        if used & (1 << j) != 0 {
            continue;
        }
        for col in [j, n + j] {
            let entry = &rows[row][col];
            if entry.is_zero() {
                continue;
            }
            signed_permutation_sum(rows, n, row + 1, used | (1 << j), &(prefix * entry), acc);
        }
    }
}

fn profile_function_sum(
    rows: &[Vec<BigInt>],
    row: usize,
    remaining: &mut [usize],
    prefix: &BigInt,
    acc: &mut BigInt,
) {
    if row == rows.len() {
        *acc += prefix;
        return;
    }
    for j in 0..remaining.len() {
        if remaining[j] == 0 {
            continue;
        }
        let entry = &rows[row][j];
        if entry.is_zero() {
            continue;
        }
        remaining[j] -= 1;
        profile_function_sum(rows, row + 1, remaining, &(prefix * entry), acc);
        remaining[j] += 1;
    }
}

/// Row expansion with memoization on the residual state: the set of used
/// column pairs for hoperm, the residual composition for mperm.
pub fn eval_recurrence(spec: &FamilySpec, x: &PointMatrix) -> Result<Rational> {
    spec.check_point(x)?;
    if spec.is_hoperm() {
        cap("hoperm n (recurrence)", spec.n(), RECURRENCE_HOPERM_MAX_N)?;
        Ok(hoperm_of(x))
    } else {
        cap("mperm gamma (recurrence)", spec.gamma(), RECURRENCE_MPERM_MAX_GAMMA)?;
        Ok(mperm_of(x, spec.composition()))
    }
}

/// `hoperm_n` of an `n × 2n` matrix, expanding along the topmost remaining row.
pub(crate) fn hoperm_of(x: &RatMatrix) -> Rational {
    let n = x.rows();
    debug_assert_eq!(x.cols(), 2 * n);
    // x[i,j] + x[i,-j]
    let pair_sums: Vec<Vec<Rational>> = (0..n)
        .map(|i| (0..n).map(|j| &x[(i, j)] + &x[(i, n + j)]).collect())
        .collect();
    let mut memo: Vec<Option<Rational>> = vec![None; 1 << n];
    hoperm_state(&pair_sums, 0, &mut memo)
}

fn hoperm_state(pair_sums: &[Vec<Rational>], used: usize, memo: &mut [Option<Rational>]) -> Rational {
    let n = pair_sums.len();
    let row = used.count_ones() as usize;
    if row == n {
        return Rational::one();
    }
    if let Some(v) = &memo[used] {
        return v.clone();
    }
    let mut total = Rational::zero();
    for j in 0..n {
        if used & (1 << j) != 0 || pair_sums[row][j].is_zero() {
            continue;
        }
        let rest = hoperm_state(pair_sums, used | (1 << j), memo);
        total += &pair_sums[row][j] * rest;
    }
    memo[used] = Some(total.clone());
    total
}

/// `mperm_m` of a `γ × n` matrix for a residual composition `m` that may
/// contain zero parts. Expands along the last row.
pub(crate) fn mperm_of(x: &RatMatrix, composition: &[usize]) -> Rational {
    debug_assert_eq!(x.cols(), composition.len());
    if composition.iter().sum::<usize>() != x.rows() {
        return Rational::zero();
    }
    let mut memo = HashMap::new();
    let mut state = composition.to_vec();
    mperm_state(x, &mut state, &mut memo)
}

fn mperm_state(
    x: &RatMatrix,
    state: &mut Vec<usize>,
    memo: &mut HashMap<Vec<usize>, Rational>,
) -> Rational {
    let rows_left: usize = state.iter().sum();
    if rows_left == 0 {
        return Rational::one();
    }
    if let Some(v) = memo.get(state.as_slice()) {
        return v.clone();
    }
    let row = rows_left - 1;
    let mut total = Rational::zero();
    for j in 0..state.len() {
        if state[j] == 0 || x[(row, j)].is_zero() {
            continue;
        }
        state[j] -= 1;
        let rest = mperm_state(x, state, memo);
        state[j] += 1;
        total += &x[(row, j)] * rest;
    }
    memo.insert(state.clone(), total.clone());
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::int;

    fn both(spec: &FamilySpec, x: &RatMatrix) -> (Rational, Rational) {
        (eval_brute(spec, x).unwrap(), eval_recurrence(spec, x).unwrap())
    }

    #[test]
    fn hoperm_examples() {
        let h1 = FamilySpec::hoperm(1).unwrap();
        assert_eq!(both(&h1, &RatMatrix::ones(1, 2)), (int(2), int(2)));

        let h2 = FamilySpec::hoperm(2).unwrap();
        let x = RatMatrix::from_i64(&[&[1, 2, 3, 4], &[5, 6, 7, 8]]);
        // (1+3)(6+8) + (2+4)(5+7)
        assert_eq!(both(&h2, &x), (int(128), int(128)));
    }

    #[test]
    fn mperm_examples() {
        let m = FamilySpec::mperm(vec![2, 1]).unwrap();
        let x = RatMatrix::from_i64(&[&[1, 2], &[3, 4], &[5, 6]]);
        // 1·3·6 + 1·4·5 + 2·3·5
        assert_eq!(both(&m, &x), (int(68), int(68)));

        let p = FamilySpec::mperm(vec![1, 1, 1]).unwrap();
        assert_eq!(both(&p, &RatMatrix::identity(3)), (int(1), int(1)));
    }

    #[test]
    fn shape_and_caps() {
        let h = FamilySpec::hoperm(2).unwrap();
        assert!(matches!(eval_brute(&h, &RatMatrix::ones(2, 2)), Err(Error::Shape(_))));
        let big = FamilySpec::hoperm(9).unwrap();
        assert!(matches!(
            eval_brute(&big, &RatMatrix::ones(9, 18)),
            Err(Error::SizeCap { .. })
        ));
        assert!(eval_recurrence(&big, &RatMatrix::ones(9, 18)).is_ok());
        let wide = FamilySpec::perm(13).unwrap();
        assert!(matches!(
            eval_brute(&wide, &RatMatrix::ones(13, 13)),
            Err(Error::SizeCap { .. })
        ));
        let huge = FamilySpec::mperm(vec![11, 10]).unwrap();
        assert!(eval_recurrence(&huge, &RatMatrix::ones(21, 2)).is_err());
    }

    #[test]
    fn residual_composition_with_zero_parts() {
        // mperm_(2,0) of U_{2,2}: only σ = (1,1)
        assert_eq!(mperm_of(&RatMatrix::ones(2, 2), &[2, 0]), int(1));
        assert_eq!(mperm_of(&RatMatrix::zeros(0, 2), &[0, 0]), int(1));
    }
}
