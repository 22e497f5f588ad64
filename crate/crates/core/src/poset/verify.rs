//! Randomized identity check of a determinantal representation against a
//! reference evaluator.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::DetRep;
use crate::algebra::rational::int;
use crate::algebra::{Assignment, Rational, VarId};
use crate::error::{Error, Result};
use crate::families::{eval, FamilySpec, Method};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyConfig {
    pub trials: usize,
    pub seed: u64,
    /// Values are drawn from `[-bound, bound]`; `None` means `10 · degree`.
    pub bound: Option<i64>,
}

impl VerifyConfig {
    pub fn new(trials: usize, seed: u64) -> Self {
        Self {
            trials,
            seed,
            bound: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrialOutcome {
    pub index: usize,
    pub passed: bool,
    pub det_value: Rational,
    pub reference_value: Rational,
    /// The evaluation point, kept only for failing trials.
    pub witness: Option<Vec<(VarId, Rational)>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub seed: u64,
    pub bound: i64,
    pub trials: Vec<TrialOutcome>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.trials.iter().all(|t| t.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &TrialOutcome> {
        self.trials.iter().filter(|t| !t.passed)
    }
}

/// Independent stream per trial so any single trial can be replayed from
/// `(seed, index)`.
fn trial_point(vars: &[VarId], seed: u64, index: usize, bound: i64) -> Assignment {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    vars.iter()
        .map(|&v| (v, int(rng.gen_range(-bound..=bound))))
        .collect()
}

/// Compares `det(D(x))` with `reference(x)` at `trials` random integer points.
/// `vars` must cover every variable used by the representation.
pub fn verify_detrep(
    rep: &DetRep,
    vars: &[VarId],
    reference: impl Fn(&Assignment) -> Result<Rational>,
    config: &VerifyConfig,
) -> Result<VerificationReport> {
    if config.trials == 0 {
        return Err(Error::Shape("verification needs at least one trial".into()));
    }
    let bound = config
        .bound
        .unwrap_or(10 * rep.chain_degree.max(1) as i64);
    let mut trials = Vec::with_capacity(config.trials);
    for index in 0..config.trials {
        let point = trial_point(vars, config.seed, index, bound);
        let det_value = rep.det_at(&point)?;
        let reference_value = reference(&point)?;
        let passed = det_value == reference_value;
        let witness = (!passed).then(|| {
            let mut w: Vec<(VarId, Rational)> =
                point.iter().map(|(v, x)| (*v, x.clone())).collect();
            w.sort_by_key(|(v, _)| *v);
            w
        });
        trials.push(TrialOutcome {
            index,
            passed,
            det_value,
            reference_value,
            witness,
        });
    }
    Ok(VerificationReport {
        seed: config.seed,
        bound,
        trials,
    })
}

/// [`verify_detrep`] with a family evaluator as the reference.
pub fn verify_against_family(
    rep: &DetRep,
    spec: &FamilySpec,
    method: Method,
    config: &VerifyConfig,
) -> Result<VerificationReport> {
    let vars = spec.var_order().0;
    verify_detrep(
        rep,
        &vars,
        |point| eval(spec, &spec.point_from_assignment(point)?, method),
        config,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::AffineForm;
    use crate::poset::family_detrep;

    #[test]
    fn perm2_passes() {
        let spec = FamilySpec::perm(2).unwrap();
        let rep = family_detrep(&spec).unwrap();
        let report =
            verify_against_family(&rep, &spec, Method::Brute, &VerifyConfig::new(20, 7)).unwrap();
        assert!(report.passed());
        assert_eq!((report.trials.len(), report.bound, report.seed), (20, 20, 7));
    }

    #[test]
    fn zeroed_label_fails_with_witness() {
        let spec = FamilySpec::perm(2).unwrap();
        let mut rep = family_detrep(&spec).unwrap();
        let (i, j) = (0..3)
            .flat_map(|i| (0..3).map(move |j| (i, j)))
            .find(|&(i, j)| !rep.matrix.get(i, j).is_constant())
            .unwrap();
        *rep.matrix.get_mut(i, j) = AffineForm::zero();
        let report =
            verify_against_family(&rep, &spec, Method::Brute, &VerifyConfig::new(20, 7)).unwrap();
        assert!(!report.passed());
        let failure = report.failures().next().unwrap();
        assert_eq!(failure.witness.as_ref().unwrap().len(), 4);
    }

    #[test]
    fn trials_are_replayable() {
        let vars = FamilySpec::hoperm(2).unwrap().var_order().0;
        assert_eq!(trial_point(&vars, 3, 5, 9), trial_point(&vars, 3, 5, 9));
        assert_ne!(trial_point(&vars, 3, 5, 9), trial_point(&vars, 3, 6, 9));
    }

    #[test]
    fn zero_trials_rejected() {
        let spec = FamilySpec::perm(1).unwrap();
        let rep = family_detrep(&spec).unwrap();
        assert!(verify_against_family(&rep, &spec, Method::Brute, &VerifyConfig::new(0, 1)).is_err());
    }
}
