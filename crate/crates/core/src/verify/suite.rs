use rayon::prelude::*;
use serde::Serialize;

use crate::distribution::{Joint2, Joint3, Var};
use crate::error::{Error, Result};
use crate::mass::{Backend, Rational};
use crate::measures::LogBase;
use crate::sample::{self, Sample};

use super::checks::{self, MonotonicityScan};
use super::{CheckResult, Fault, Verifier, Witness};

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteConfig {
    pub seed: u64,
    pub trials: usize,
    /// Two or three alphabet sizes, `(|X|, |Y|)` or `(|X|, |Y|, |Z|)`.
    pub shape: Vec<usize>,
    pub backend: Backend,
    pub base: LogBase,
    #[doc(hidden)]
    pub fault: Option<Fault>,
}

impl SuiteConfig {
    pub fn new(seed: u64, trials: usize, shape: Vec<usize>, backend: Backend) -> Self {
        Self {
            seed,
            trials,
            shape,
            backend,
            base: LogBase::BITS,
            fault: None,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::InvalidParameters("trials must be at least 1".into()));
        }
        if !(2..=3).contains(&self.shape.len()) {
            return Err(Error::InvalidParameters(format!(
                "shape needs 2 or 3 dimensions, got {}",
                self.shape.len()
            )));
        }
        if self.shape.contains(&0) {
            return Err(Error::InvalidParameters("shape dimensions must be at least 1".into()));
        }
        Ok(())
    }
}

/// A property that is reported rather than asserted.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Observation {
    pub name: String,
    pub occurrences: usize,
    pub evaluated: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl Observation {
    fn new(name: &str) -> Self {
        Self {
            name: name.to_string(),
            occurrences: 0,
            evaluated: 0,
            witness: None,
        }
    }

    fn merge(&mut self, other: Observation) {
        self.occurrences += other.occurrences;
        self.evaluated += other.evaluated;
        if self.witness.is_none() {
            self.witness = other.witness;
        }
    }
}

pub const COMPONENT_I_PLUS_CHAIN: &str = "corollary4_component_i_plus_chain_fails";
pub const COMPONENT_I_MINUS_CHAIN: &str = "corollary4_component_i_minus_chain_fails";

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub seed: u64,
    pub trials: usize,
    pub shape: Vec<usize>,
    pub backend: Backend,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fault: Option<Fault>,
    pub checks: Vec<CheckResult>,
    pub observations: Vec<Observation>,
}

impl VerificationReport {
    /// No check failed. Skipped checks do not count against this.
    pub fn all_passed(&self) -> bool {
        !self.checks.iter().any(CheckResult::failed)
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn observation(&self, name: &str) -> Option<&Observation> {
        self.observations.iter().find(|o| o.name == name)
    }

    /// Pretty JSON with a trailing newline; key order is fixed.
    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("report serializes");
        text.push('\n');
        text
    }
}

struct TrialOutcome {
    checks: Vec<CheckResult>,
    observations: Vec<Observation>,
}

/// Runs every check over `trials` seeded random distributions of the given
/// shape. Trial `k` is drawn from `splitmix64(seed + k)`; results are merged
/// in trial order, so the report does not depend on scheduling.
pub fn run_suite(config: &SuiteConfig) -> Result<VerificationReport> {
    config.validate()?;
    match config.backend {
        Backend::Float => run_typed::<f64>(config),
        Backend::Rational => run_typed::<Rational>(config),
    }
}

fn check_names(three: bool) -> Vec<&'static str> {
    let mut names = vec![
        checks::POSTULATE1,
        checks::EXCLUSION_FORMS,
        checks::POSTULATE2,
        checks::POSTULATE3,
    ];
    if three {
        names.push(checks::POSTULATE4);
    }
    names.push(checks::LEMMAS);
    if three {
        names.extend([checks::COROLLARY3, checks::COROLLARY4]);
    }
    names.push(checks::AVERAGE);
    names
}

fn run_typed<T: Sample>(config: &SuiteConfig) -> Result<VerificationReport> {
    let verifier = Verifier::new(config.base).with_fault(config.fault);
    let three = config.shape.len() == 3;
    let outcomes: Vec<TrialOutcome> = (0..config.trials)
        .into_par_iter()
        .map(|trial| run_trial::<T>(&verifier, config, trial))
        .collect();

    let mut checks: Vec<CheckResult> = check_names(three).into_iter().map(CheckResult::empty).collect();
    let mut observations = if three {
        vec![
            Observation::new(COMPONENT_I_PLUS_CHAIN),
            Observation::new(COMPONENT_I_MINUS_CHAIN),
        ]
    } else {
        Vec::new()
    };
    let scan = verifier.check_postulate2(&MonotonicityScan::default())?;
    slot(&mut checks, scan);
    for outcome in outcomes {
        for result in outcome.checks {
            slot(&mut checks, result);
        }
        for (acc, obs) in observations.iter_mut().zip(outcome.observations) {
            acc.merge(obs);
        }
    }
    Ok(VerificationReport {
        seed: config.seed,
        trials: config.trials,
        shape: config.shape.clone(),
        backend: config.backend,
        fault: config.fault,
        checks,
        observations,
    })
}

fn slot(checks: &mut [CheckResult], result: CheckResult) {
    let acc = checks
        .iter_mut()
        .find(|c| c.name == result.name)
        .expect("every produced check is enabled");
    acc.merge(result);
}

fn run_trial<T: Sample>(verifier: &Verifier, config: &SuiteConfig, trial: usize) -> TrialOutcome {
    let seed = sample::trial_seed(config.seed, trial as u64);
    let mut checks = Vec::new();
    let mut observations = Vec::new();
    match config.shape[..] {
        [nx, ny] => {
            let joint = sample::random_joint2::<T>(seed, nx, ny);
            pairwise_checks(verifier, &joint, &mut checks);
        }
        [nx, ny, nz] => {
            let joint = sample::random_joint3::<T>(seed, nx, ny, nz);
            pairwise_checks(verifier, &joint.pair(Var::X, Var::Y), &mut checks);
            let mut i_plus = Observation::new(COMPONENT_I_PLUS_CHAIN);
            let mut i_minus = Observation::new(COMPONENT_I_MINUS_CHAIN);
            for x in 0..nx {
                for y in 0..ny {
                    for z in 0..nz {
                        checks.push(verifier.check_postulate4(&joint, x, y, z));
                        checks.push(verifier.check_corollary3(&joint, x, y, z));
                        checks.push(verifier.check_corollary4(&joint, x, y, z));
                        if let Ok((plus_fails, minus_fails)) =
                            verifier.component_chain_failures(&joint, x, y, z)
                        {
                            note(&mut i_plus, plus_fails, &joint, [x, y, z]);
                            note(&mut i_minus, minus_fails, &joint, [x, y, z]);
                        }
                    }
                }
            }
            observations.extend([i_plus, i_minus]);
        }
        _ => unreachable!("shape validated"),
    }
    for check in &mut checks {
        if let Some(w) = check.witness.as_mut() {
            w.trial = Some(trial);
        }
    }
    for obs in &mut observations {
        if let Some(w) = obs.witness.as_mut() {
            w.trial = Some(trial);
        }
    }
    TrialOutcome {
        checks,
        observations,
    }
}

fn note<T: Sample>(obs: &mut Observation, fails: bool, joint: &Joint3<T>, [x, y, z]: [usize; 3]) {
    obs.evaluated += 1;
    if fails {
        obs.occurrences += 1;
        if obs.witness.is_none() {
            use crate::distribution::Ev;
            obs.witness = Some(Witness::joint3(
                joint,
                &[Ev::x(x), Ev::y(y), Ev::z(z)],
                "component-wise chain equality does not hold".to_string(),
            ));
        }
    }
}

/// `joint` with the misinformative cells `(x, ȳ)` removed, and with the
/// informative cells `(x̄, ȳ)` removed, each renormalized. Random draws are
/// almost always mixed, so these keep the degenerate branches exercised.
fn lemma_variants<T: Sample>(joint: &Joint2<T>, x: usize, y: usize) -> Vec<Joint2<T>> {
    [true, false]
        .into_iter()
        .filter_map(|drop_on_target| {
            let masses: Vec<T> = joint
                .cells()
                .map(|(xi, yi, m)| {
                    let dropped = yi != y && (xi == x) == drop_on_target;
                    if dropped { T::zero() } else { m.clone() }
                })
                .collect();
            let total = crate::mass::sum(&masses);
            if total.is_zero() {
                return None;
            }
            let masses = masses.into_iter().map(|m| m / total.clone()).collect();
            Some(Joint2::from_parts(joint.x().clone(), joint.y().clone(), masses))
        })
        .collect()
}

fn pairwise_checks<T: Sample>(verifier: &Verifier, joint: &Joint2<T>, out: &mut Vec<CheckResult>) {
    let (nx, ny) = joint.shape();
    for x in 0..nx {
        for y in 0..ny {
            out.push(verifier.check_postulate1(joint, x, y));
            out.push(verifier.check_exclusion_forms(joint, x, y));
            out.push(verifier.check_lemmas(joint, x, y));
            for variant in lemma_variants(joint, x, y) {
                out.push(verifier.check_lemmas(&variant, x, y));
            }
        }
    }
    let marginal = joint.marginal(Var::X);
    for x in 0..nx {
        out.push(verifier.check_postulate3(&marginal, x));
    }
    for y in 0..ny {
        out.push(verifier.check_average_information(joint, y));
    }
}
