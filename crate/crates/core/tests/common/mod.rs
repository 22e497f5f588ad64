//! Independent oracles shared by the integration tests. Nothing here calls the
//! library's own evaluators or elimination routines.
#![allow(dead_code)]

use dcpoly::algebra::{Polynomial, RatMatrix, Rational, VarId};
use dcpoly::families::FamilySpec;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn r(v: i64) -> Rational {
    Rational::from_integer(v.into())
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize, bound: i64) -> RatMatrix {
    RatMatrix::from_fn(rows, cols, |_, _| r(rng.gen_range(-bound..=bound)))
}

/// Laplace expansion along the first row.
pub fn cofactor_det(m: &RatMatrix) -> Rational {
    let n = m.rows();
    if n == 0 {
        return Rational::one();
    }
    let mut total = Rational::zero();
    for j in 0..n {
        if m[(0, j)].is_zero() {
            continue;
        }
        let minor = RatMatrix::from_fn(n - 1, n - 1, |a, b| {
            m[(a + 1, if b < j { b } else { b + 1 })].clone()
        });
        let term = &m[(0, j)] * cofactor_det(&minor);
        if j % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

/// Textbook Gaussian elimination over the rationals.
pub fn gauss_rank(m: &RatMatrix) -> usize {
    let mut a = m.row_vecs();
    let (rows, cols) = (m.rows(), m.cols());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        for i in 0..rows {
            if i != rank && !a[i][c].is_zero() {
                let f = &a[i][c] / &a[rank][c];
                for k in c..cols {
                    let t = &f * &a[rank][k];
                    a[i][k] -= t;
                }
            }
        }
        rank += 1;
    }
    rank
}

pub fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

/// Ryser's inclusion–exclusion formula for the permanent.
pub fn ryser(a: &[Vec<Rational>]) -> Rational {
    let n = a.len();
    if n == 0 {
        return Rational::one();
    }
    let mut total = Rational::zero();
    for s in 1u32..(1 << n) {
        let mut prod = Rational::one();
        for row in a {
            let sum: Rational = (0..n).filter(|j| s >> j & 1 == 1).map(|j| row[j].clone()).sum();
            prod *= sum;
            if prod.is_zero() {
                break;
            }
        }
        if (n - s.count_ones() as usize).is_multiple_of(2) {
            total += prod;
        } else {
            total -= prod;
        }
    }
    total
}

/// hoperm(X) = perm(X₊ + X₋): each row picks one of ±σ(i) independently.
pub fn hoperm_oracle(x: &RatMatrix) -> Rational {
    let n = x.rows();
    let folded: Vec<Vec<Rational>> = (0..n)
        .map(|i| (0..n).map(|j| &x[(i, j)] + &x[(i, j + n)]).collect())
        .collect();
    ryser(&folded)
}

/// mperm_m(X) = perm(X with column j repeated mⱼ times) / ∏ mⱼ!.
pub fn mperm_oracle(x: &RatMatrix, comp: &[usize]) -> Rational {
    let expanded: Vec<Vec<Rational>> = (0..x.rows())
        .map(|i| {
            comp.iter()
                .enumerate()
                .flat_map(|(j, &m)| std::iter::repeat_n(x[(i, j)].clone(), m))
                .collect()
        })
        .collect();
    let denom: u128 = comp.iter().map(|&m| factorial(m)).product();
    ryser(&expanded) / Rational::from_integer(denom.into())
}

pub fn family_oracle(spec: &FamilySpec, x: &RatMatrix) -> Rational {
    if spec.is_hoperm() {
        hoperm_oracle(x)
    } else {
        mperm_oracle(x, spec.composition())
    }
}

/// All partitions of `gamma` in descending order.
pub fn partitions(gamma: usize) -> Vec<Vec<usize>> {
    fn go(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for p in (1..=rest.min(max)).rev() {
            cur.push(p);
            go(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(gamma, gamma, &mut Vec::new(), &mut out);
    out
}

pub fn partitions_up_to(max_gamma: usize) -> Vec<Vec<usize>> {
    (1..=max_gamma).flat_map(partitions).collect()
}

/// The family polynomial written out monomial by monomial from its definition.
pub fn family_polynomial(spec: &FamilySpec) -> Polynomial {
    let mut poly = Polynomial::zero();
    if spec.is_hoperm() {
        let n = spec.n() as i32;
        fn go(i: i32, n: i32, used: &mut Vec<bool>, mono: &mut Vec<VarId>, poly: &mut Polynomial) {
            if i > n {
                poly.add_term(mono.clone(), Rational::one());
                return;
            }
            for j in 1..=n {
                if used[j as usize] {
                    continue;
                }
                used[j as usize] = true;
                for s in [j, -j] {
                    mono.push(VarId::new(i as u32, s));
                    go(i + 1, n, used, mono, poly);
                    mono.pop();
                }
                used[j as usize] = false;
            }
        }
        go(1, n, &mut vec![false; n as usize + 1], &mut Vec::new(), &mut poly);
    } else {
        fn go(i: usize, left: &mut Vec<usize>, mono: &mut Vec<VarId>, poly: &mut Polynomial) {
            if left.iter().all(|&m| m == 0) {
                poly.add_term(mono.clone(), Rational::one());
                return;
            }
            for j in 0..left.len() {
                if left[j] == 0 {
                    continue;
                }
                left[j] -= 1;
                mono.push(VarId::new(i as u32, j as i32 + 1));
                go(i + 1, left, mono, poly);
                mono.pop();
                left[j] += 1;
            }
        }
        go(1, &mut spec.composition().to_vec(), &mut Vec::new(), &mut poly);
    }
    poly
}
