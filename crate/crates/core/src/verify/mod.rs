//! Executable checks of the decomposition's defining properties.
//!
//! Each check evaluates one property on one distribution and event choice and
//! returns a [`CheckResult`]; [`run_suite`] folds these over seeded random
//! ensembles into a [`VerificationReport`]. On the rational backend every
//! identity is decided exactly by comparing log-arguments; on floats values
//! must agree within [`LOG_TOLERANCE`].

mod checks;
mod suite;

use std::collections::BTreeMap;

use serde::Serialize;

use crate::distribution::{DistributionFile, Ev, Joint2, Joint3};
use crate::error::{Error, Result};
use crate::mass::Mass;
use crate::measures::{self, Decomposition, Extended, Info, LogBase};

pub use checks::{
    MonotonicityScan, ScanSeries, AVERAGE, COROLLARY3, COROLLARY4, EXCLUSION_FORMS, LEMMAS,
    POSTULATE1, POSTULATE2, POSTULATE3, POSTULATE4,
};
pub use suite::{
    run_suite, Observation, SuiteConfig, VerificationReport, COMPONENT_I_MINUS_CHAIN,
    COMPONENT_I_PLUS_CHAIN,
};

/// Agreement required between information values on the float backend.
pub const LOG_TOLERANCE: f64 = 1e-9;

/// Slack allowed below zero for quantities that must be non-negative.
pub const NONNEGATIVE_SLACK: f64 = 1e-12;

pub const DEFAULT_SCAN_RESOLUTION: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CheckStatus {
    Pass,
    Fail,
    Skip,
}

/// A distribution and event choice on which a check failed.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Witness {
    pub distribution: DistributionFile,
    pub events: BTreeMap<String, String>,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trial: Option<usize>,
}

impl Witness {
    pub(crate) fn joint2<T: Mass>(joint: &Joint2<T>, x: usize, y: usize, detail: String) -> Self {
        let mut events = BTreeMap::new();
        events.insert("x".to_string(), joint.x().label(x).to_string());
        events.insert("y".to_string(), joint.y().label(y).to_string());
        Self {
            distribution: DistributionFile::from_joint2(joint),
            events,
            detail,
            trial: None,
        }
    }

    pub(crate) fn joint3<T: Mass>(joint: &Joint3<T>, events: &[Ev], detail: String) -> Self {
        let events = events
            .iter()
            .map(|e| (e.var.to_string().to_lowercase(), joint.event_name(*e).to_string()))
            .collect();
        Self {
            distribution: DistributionFile::from_joint3(joint),
            events,
            detail,
            trial: None,
        }
    }
}

/// Outcome of one check, or the aggregate of many evaluations of it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub status: CheckStatus,
    pub max_residual: Extended,
    pub evaluated: usize,
    pub skipped: usize,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub skip_reasons: BTreeMap<String, usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl CheckResult {
    pub fn empty(name: &str) -> Self {
        Self {
            name: name.to_string(),
            status: CheckStatus::Skip,
            max_residual: Extended(0.0),
            evaluated: 0,
            skipped: 0,
            skip_reasons: BTreeMap::new(),
            witness: None,
        }
    }

    pub fn skip(name: &str, reason: &str) -> Self {
        let mut r = Self::empty(name);
        r.skipped = 1;
        r.skip_reasons.insert(reason.to_string(), 1);
        r
    }

    pub fn passed(&self) -> bool {
        self.status == CheckStatus::Pass
    }

    pub fn failed(&self) -> bool {
        self.status == CheckStatus::Fail
    }

    /// Folds another result for the same check into this one. The first
    /// witness seen is kept.
    pub fn merge(&mut self, other: CheckResult) {
        debug_assert_eq!(self.name, other.name);
        self.max_residual = Extended(max_residual(self.max_residual.0, other.max_residual.0));
        self.evaluated += other.evaluated;
        self.skipped += other.skipped;
        for (reason, n) in other.skip_reasons {
            *self.skip_reasons.entry(reason).or_default() += n;
        }
        if self.witness.is_none() {
            self.witness = other.witness;
        }
        self.status = match (self.status, other.status) {
            (CheckStatus::Fail, _) | (_, CheckStatus::Fail) => CheckStatus::Fail,
            (CheckStatus::Pass, _) | (_, CheckStatus::Pass) => CheckStatus::Pass,
            _ => CheckStatus::Skip,
        };
    }
}

fn max_residual(a: f64, b: f64) -> f64 {
    if a.is_nan() || b.is_nan() {
        f64::NAN
    } else {
        a.max(b)
    }
}

/// Machine-readable skip reason for an undefined quantity.
pub(crate) fn skip_reason(err: &Error) -> &'static str {
    match err {
        Error::ZeroConditioningEvent(_) => "zero_conditioning_event",
        Error::ZeroMarginal(_) => "zero_marginal",
        Error::DegenerateTotalExclusion => "total_exclusion",
        _ => "undefined",
    }
}

/// Deliberately wrong formulas, used to show that the checks can fail.
#[doc(hidden)]
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Fault {
    /// Replaces `i₋ = h(y|x)` with `h(y)`.
    AmbiguityAsSpecificity,
}

impl std::str::FromStr for Fault {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ambiguity-as-specificity" | "ambiguity_as_specificity" => {
                Ok(Fault::AmbiguityAsSpecificity)
            }
            other => Err(Error::InvalidParameters(format!("unknown fault {other:?}"))),
        }
    }
}

/// Runs checks with a fixed base, routing every decomposition through one
/// place so that a [`Fault`] can be injected.
#[derive(Debug, Clone, Copy, Default)]
pub struct Verifier {
    pub base: LogBase,
    #[doc(hidden)]
    pub fault: Option<Fault>,
}

impl Verifier {
    pub fn new(base: LogBase) -> Self {
        Self { base, fault: None }
    }

    #[doc(hidden)]
    pub fn with_fault(mut self, fault: Option<Fault>) -> Self {
        self.fault = fault;
        self
    }

    fn tamper<T: Mass>(&self, mut d: Decomposition<T>) -> Decomposition<T> {
        match self.fault {
            Some(Fault::AmbiguityAsSpecificity) => d.i_minus = d.i_plus.clone(),
            None => {}
        }
        d
    }

    pub(crate) fn decompose<T: Mass>(
        &self,
        joint: &Joint2<T>,
        x: usize,
        y: usize,
    ) -> Result<Decomposition<T>> {
        measures::decompose(joint, x, y, self.base).map(|d| self.tamper(d))
    }

    pub(crate) fn decompose3<T: Mass>(
        &self,
        joint: &Joint3<T>,
        source: &[Ev],
        target: &[Ev],
        given: &[Ev],
    ) -> Result<Decomposition<T>> {
        measures::decompose_events(joint, source, target, given, self.base).map(|d| self.tamper(d))
    }
}

/// Accumulates comparisons within one check evaluation.
pub(crate) struct Tally {
    max_residual: f64,
    failures: Vec<String>,
}

impl Tally {
    pub(crate) fn new() -> Self {
        Self {
            max_residual: 0.0,
            failures: Vec::new(),
        }
    }

    pub(crate) fn same<T: Mass>(&mut self, what: &str, lhs: &Info<T>, rhs: &Info<T>) {
        let residual = lhs.residual(rhs);
        self.max_residual = max_residual(self.max_residual, residual);
        if !lhs.agrees(rhs, LOG_TOLERANCE) {
            self.failures.push(format!(
                "{what}: {} != {} (residual {residual:e})",
                Extended(lhs.value()),
                Extended(rhs.value())
            ));
        }
    }

    pub(crate) fn holds(&mut self, what: &str, ok: bool, detail: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(format!("{what}: {}", detail()));
        }
    }

    pub(crate) fn residual(&mut self, value: f64) {
        self.max_residual = max_residual(self.max_residual, value);
    }

    pub(crate) fn finish(self, name: &str, witness: impl FnOnce(String) -> Witness) -> CheckResult {
        let mut r = CheckResult::empty(name);
        r.evaluated = 1;
        r.max_residual = Extended(self.max_residual);
        if self.failures.is_empty() {
            r.status = CheckStatus::Pass;
        } else {
            r.status = CheckStatus::Fail;
            r.witness = Some(witness(self.failures.join("; ")));
        }
        r
    }
}

/// Non-negativity of an information value: exact on rationals, with
/// [`NONNEGATIVE_SLACK`] on floats.
pub(crate) fn non_negative<T: Mass>(info: &Info<T>) -> bool {
    let v = info.value();
    match T::BACKEND {
        crate::mass::Backend::Rational => v >= 0.0,
        crate::mass::Backend::Float => v >= -NONNEGATIVE_SLACK,
    }
}
