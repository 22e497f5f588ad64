//! All-ones values and explicit zeros.

use num_bigint::BigInt;
use num_traits::One;

use super::{FamilySpec, PointMatrix};
use crate::algebra::rational::{factorial, frac, int, multinomial};
use crate::algebra::{RatMatrix, Rational};

/// Value at the all-ones matrix: `2ⁿ·n!` for hoperm, `γ!/(m₁!⋯mₙ!)` for mperm.
pub fn ones_value(spec: &FamilySpec) -> Rational {
    let value = if spec.is_hoperm() {
        (BigInt::one() << spec.n()) * factorial(spec.n())
    } else {
        multinomial(spec.composition())
    };
    Rational::from_integer(value)
}

/// Which construction produced a zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ZeroCase {
    /// All ones except `x[n,n] = 1 − 2n`.
    Hoperm,
    /// Parts not all equal (`ℓ = 1`): row `γ` gets `1 − γ/(c·mₖ)` in every
    /// column attaining the maximum part.
    Unequal {
        /// 1-based index of the first maximal part.
        k: usize,
        /// 1-based columns attaining the maximum.
        max_columns: Vec<usize>,
        c: usize,
        /// `γ / (c · max mᵢ)`.
        d: Rational,
    },
    /// All parts equal (`ℓ = 2`): `x[1,1] = 1 − n`.
    Equal,
}

impl ZeroCase {
    /// `ℓ` for the multipermanent constructions, `None` for hoperm.
    pub fn ell(&self) -> Option<u8> {
        match self {
            ZeroCase::Hoperm => None,
            ZeroCase::Unequal { .. } => Some(1),
            ZeroCase::Equal => Some(2),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZeroPoint {
    pub point: PointMatrix,
    pub case: ZeroCase,
    /// The composition sorted descending (empty for hoperm).
    pub partition: Vec<usize>,
    /// For each partition column, the original column it came from (0-based).
    pub relabeling: Vec<usize>,
}

/// Explicit zero of the family polynomial, in the column order of `spec`.
///
/// The unequal-parts construction only depends on which columns attain the
/// maximum, so it is built directly for the composition as given; the
/// partition and relabeling are recorded for callers that need the sorted form.
pub fn zero_point(spec: &FamilySpec) -> ZeroPoint {
    let (rows, cols) = spec.shape();
    let mut point = RatMatrix::ones(rows, cols);
    let (canonical, relabeling) = spec.canonical();

    if spec.is_hoperm() {
        let n = spec.n();
        point[(n - 1, n - 1)] = int(1 - 2 * n as i64);
        return ZeroPoint {
            point,
            case: ZeroCase::Hoperm,
            partition: Vec::new(),
            relabeling,
        };
    }

    let m = spec.composition();
    let gamma = spec.gamma();
    let max = *m.iter().max().expect("non-empty composition");
    let case = if m.iter().all(|&p| p == max) {
        point[(0, 0)] = int(1 - spec.n() as i64);
        ZeroCase::Equal
    } else {
        let max_columns: Vec<usize> = (0..m.len()).filter(|&j| m[j] == max).collect();
        let c = max_columns.len();
        let entry = int(1) - frac(gamma as i64, (c * max) as i64);
        for &j in &max_columns {
            point[(gamma - 1, j)] = entry.clone();
        }
        ZeroCase::Unequal {
            k: max_columns[0] + 1,
            max_columns: max_columns.iter().map(|j| j + 1).collect(),
            c,
            d: frac(gamma as i64, (c * max) as i64),
        }
    };
    ZeroPoint {
        point,
        case,
        partition: canonical.composition().to_vec(),
        relabeling,
    }
}
