//! Hessian-rank lower bounds on determinantal complexity.
//!
//! If `f = det ∘ F` with `F` an `s × s` affine matrix and `f(y) = 0`, then the
//! Hessian of `f` at `y` has rank at most `2s`; so `rank/2` bounds `s` from
//! below. A certificate records the zero, the exact Hessian rank and the
//! resulting bound, next to the upper bound from the poset construction.

mod expected;

use num_traits::Zero;

pub use expected::{
    expected_hessian_hoperm, expected_hessian_mperm, expected_hessian_mperm_with,
    ExpectedHessian, HessianBlocks, UnequalRScale,
};

use crate::algebra::rational::{ceil, frac};
use crate::algebra::{rank, RatMatrix, Rational};
use crate::error::{Error, Result};
use crate::families::{eval_recurrence, hessian_at, zero_point, FamilySpec, VarOrder, ZeroPoint};
use crate::poset::family_detrep;

pub const CERTIFY_HOPERM_MIN_N: usize = 3;
pub const CERTIFY_HOPERM_MAX_N: usize = 5;
pub const CERTIFY_MPERM_MIN_GAMMA: usize = 3;
pub const CERTIFY_MPERM_MAX_VARS: usize = 60;

/// First entry where two matrices differ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub row: usize,
    pub col: usize,
    pub expected: Rational,
    pub actual: Rational,
}

/// Entrywise comparison of the computed Hessian with a closed form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureCheck {
    pub form: String,
    pub passed: bool,
    pub mismatches: usize,
    pub first_mismatch: Option<Mismatch>,
    /// For unequal parts, whether the printed `k₁` scale on `R⁽¹⁾` also
    /// matches; `None` when that scale does not apply.
    pub printed_scale_passed: Option<bool>,
}

pub fn compare(expected: &RatMatrix, actual: &RatMatrix) -> (usize, Option<Mismatch>) {
    assert_eq!(
        (expected.rows(), expected.cols()),
        (actual.rows(), actual.cols()),
        "compared matrices differ in shape"
    );
    let mut count = 0;
    let mut first = None;
    for i in 0..expected.rows() {
        for j in 0..expected.cols() {
            if expected[(i, j)] != actual[(i, j)] {
                count += 1;
                first.get_or_insert_with(|| Mismatch {
                    row: i,
                    col: j,
                    expected: expected[(i, j)].clone(),
                    actual: actual[(i, j)].clone(),
                });
            }
        }
    }
    (count, first)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HessianCertificate {
    /// The family as requested.
    pub requested: FamilySpec,
    /// The family actually certified: compositions are sorted into partitions.
    pub family: FamilySpec,
    pub zero: ZeroPoint,
    /// `f(zero)`; always zero in a returned certificate.
    pub value: Rational,
    pub hessian_size: usize,
    pub rank: usize,
    pub lower_bound: Rational,
    pub lower_bound_int: u64,
    pub upper_bound: u128,
    pub variable_order: VarOrder,
    pub structure_check: Option<StructureCheck>,
}

/// Closed-form size of the poset determinantal representation.
pub fn upper_bound(spec: &FamilySpec) -> u128 {
    spec.detrep_size()
}

/// [`upper_bound`], cross-checked against the dimension of the compiled
/// representation.
pub fn upper_bound_checked(spec: &FamilySpec) -> Result<u128> {
    let closed = upper_bound(spec);
    let built = family_detrep(spec)?.size() as u128;
    if built != closed {
        return Err(Error::Consistency(format!(
            "{spec}: compiled representation has size {built}, closed form gives {closed}"
        )));
    }
    Ok(closed)
}

fn check_caps(spec: &FamilySpec) -> Result<()> {
    if spec.is_hoperm() {
        if spec.n() < CERTIFY_HOPERM_MIN_N {
            return Err(Error::InvalidFamily(format!(
                "certification needs hoperm n >= {CERTIFY_HOPERM_MIN_N}"
            )));
        }
        if spec.n() > CERTIFY_HOPERM_MAX_N {
            return Err(Error::SizeCap {
                what: "hoperm n (certification)",
                value: spec.n(),
                limit: CERTIFY_HOPERM_MAX_N,
            });
        }
    } else {
        if spec.gamma() < CERTIFY_MPERM_MIN_GAMMA {
            return Err(Error::InvalidFamily(format!(
                "certification needs gamma >= {CERTIFY_MPERM_MIN_GAMMA}"
            )));
        }
        if spec.num_vars() > CERTIFY_MPERM_MAX_VARS {
            return Err(Error::SizeCap {
                what: "gamma * n (certification)",
                value: spec.num_vars(),
                limit: CERTIFY_MPERM_MAX_VARS,
            });
        }
    }
    Ok(())
}

fn structure_check(spec: &FamilySpec, hessian: &RatMatrix) -> Result<StructureCheck> {
    if spec.is_hoperm() {
        let expected = expected_hessian_hoperm(spec.n())?;
        let (mismatches, first_mismatch) = compare(&expected.matrix, hessian);
        return Ok(StructureCheck {
            form: "H = [[C, C], [C, C]], C from blocks A and (n-2)W".into(),
            passed: mismatches == 0,
            mismatches,
            first_mismatch,
            printed_scale_passed: None,
        });
    }
    let expected = expected_hessian_mperm(spec.composition())?;
    let (mismatches, first_mismatch) = compare(&expected.matrix, hessian);
    let HessianBlocks::Mperm { ell, .. } = expected.blocks else {
        unreachable!("mperm blocks")
    };
    let printed_scale_passed = if ell == 1 {
        let printed = expected_hessian_mperm_with(spec.composition(), UnequalRScale::Printed)?;
        Some(compare(&printed.matrix, hessian).0 == 0)
    } else {
        None
    };
    Ok(StructureCheck {
        form: format!("zero diagonal, Q({ell}) on the special row/column, R({ell}) elsewhere"),
        passed: mismatches == 0,
        mismatches,
        first_mismatch,
        printed_scale_passed,
    })
}

/// Builds the explicit zero, checks it is a zero, and certifies
/// `dc(f) ≥ rank(Hessian)/2`.
pub fn certify_lower_bound(requested: &FamilySpec) -> Result<HessianCertificate> {
    check_caps(requested)?;
    let (family, _) = requested.canonical();
    let zero = zero_point(&family);
    let value = eval_recurrence(&family, &zero.point)?;
    if !value.is_zero() {
        return Err(Error::Consistency(format!(
            "{family} does not vanish at its constructed zero (value {value})"
        )));
    }
    let order = family.var_order();
    let hessian = hessian_at(&family, &zero.point, &order)?;
    let rank = rank(&hessian);
    let lower_bound = frac(rank as i64, 2);
    let lower_bound_int: u64 = ceil(&lower_bound)
        .try_into()
        .expect("rank fits in u64");
    let upper_bound = upper_bound(&family);
    if u128::from(lower_bound_int) > upper_bound {
        return Err(Error::Consistency(format!(
            "{family}: lower bound {lower_bound_int} exceeds upper bound {upper_bound}"
        )));
    }
    let structure_check = Some(structure_check(&family, &hessian)?);
    Ok(HessianCertificate {
        requested: requested.clone(),
        family,
        zero,
        value,
        hessian_size: hessian.rows(),
        rank,
        lower_bound,
        lower_bound_int,
        upper_bound,
        variable_order: order,
        structure_check,
    })
}
