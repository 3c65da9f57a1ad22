//! Pointwise entropy, pointwise mutual information and its directed
//! decomposition `i(x;y) = i₊(y→x) − i₋(y→x)` with
//!
//! ```text
//! i₊(y→x) = h(y)   = −log p(y)      (specificity)
//! i₋(y→x) = h(y|x) = −log p(y|x)    (ambiguity)
//! ```
//!
//! together with the conditional and joint forms and the closed forms for
//! purely informative and purely misinformative exclusions.
//!
//! A zero joint mass with positive marginals is not an error: it yields
//! `pmi = −∞` and `i₋ = +∞`.

mod info;

use serde::{Serialize, Serializer};

use crate::distribution::{Ev, ExclusionKind, ExclusionSplit, Joint2, Joint3};
use crate::error::{Error, Result};
use crate::mass::{self, Mass, MassLiteral};

pub use info::{Extended, Info, LogBase};

/// `pmi = i_plus − i_minus` for one (source → target) event pair.
#[derive(Debug, Clone, PartialEq)]
pub struct Decomposition<T> {
    pub pmi: Info<T>,
    pub i_plus: Info<T>,
    pub i_minus: Info<T>,
    pub split: ExclusionSplit<T>,
}

impl<T: Mass> Decomposition<T> {
    pub fn base(&self) -> LogBase {
        self.pmi.base()
    }

    pub fn pmi_value(&self) -> f64 {
        self.pmi.value()
    }

    pub fn i_plus_value(&self) -> f64 {
        self.i_plus.value()
    }

    pub fn i_minus_value(&self) -> f64 {
        self.i_minus.value()
    }
}

impl<T: Mass> Serialize for Decomposition<T> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Split {
            informative: MassLiteral,
            misinformative: MassLiteral,
            kind: ExclusionKind,
        }
        #[derive(Serialize)]
        struct Record {
            base: f64,
            pmi: Extended,
            i_plus: Extended,
            i_minus: Extended,
            split: Split,
        }
        Record {
            base: self.base().value(),
            pmi: Extended(self.pmi_value()),
            i_plus: Extended(self.i_plus_value()),
            i_minus: Extended(self.i_minus_value()),
            split: Split {
                informative: self.split.informative.to_literal(),
                misinformative: self.split.misinformative.to_literal(),
                kind: self.split.kind,
            },
        }
        .serialize(serializer)
    }
}

/// `h(p) = −log_b p`; `+∞` at `p = 0`.
pub fn pointwise_entropy<T: Mass>(p: &T, base: LogBase) -> Result<Info<T>> {
    let above_one = *p > T::one() && !p.agrees(&T::one(), crate::distribution::INTERNAL_TOLERANCE);
    if p.is_negative_mass() || above_one {
        return Err(Error::InvalidProbability(p.to_f64()));
    }
    Ok(Info::surprisal(p.clone(), base))
}

/// `i(x;y) = log_b p(x,y) / (p(x) p(y))`, evaluated directly from the joint.
pub fn pmi<T: Mass>(joint: &Joint2<T>, x: usize, y: usize, base: LogBase) -> Result<Info<T>> {
    let p_x = joint.p_x(x);
    let p_y = joint.p_y(y);
    if !mass::is_positive(&p_x) {
        return Err(Error::ZeroMarginal(joint.x().label(x).to_string()));
    }
    if !mass::is_positive(&p_y) {
        return Err(Error::ZeroMarginal(joint.y().label(y).to_string()));
    }
    Ok(Info::ratio(joint.mass(x, y).clone(), p_x * p_y, base))
}

/// Decomposition of the information source `y` provides about target `x`.
pub fn decompose<T: Mass>(
    joint: &Joint2<T>,
    x: usize,
    y: usize,
    base: LogBase,
) -> Result<Decomposition<T>> {
    let masses = EventMasses::collect(
        joint.cells().map(|(xi, yi, m)| (m, true, yi == y, xi == x)),
        false,
    );
    masses.decompose(
        base,
        || String::new(),
        || joint.y().label(y).to_string(),
        || joint.x().label(x).to_string(),
    )
}

/// Specificity written in terms of the exclusions: `−log(1 − p(x,ȳ) − p(x̄,ȳ))`.
pub fn i_plus_from_exclusions<T: Mass>(split: &ExclusionSplit<T>, base: LogBase) -> Result<Info<T>> {
    let remaining = T::one() - split.total();
    if remaining.is_zero() {
        return Err(Error::DegenerateTotalExclusion);
    }
    Ok(Info::surprisal(remaining, base))
}

/// Ambiguity written in terms of the exclusions: `−log(1 − p(x,ȳ)/p(x))`.
pub fn i_minus_from_exclusions<T: Mass>(
    split: &ExclusionSplit<T>,
    p_x: &T,
    base: LogBase,
) -> Result<Info<T>> {
    if !mass::is_positive(p_x) {
        return Err(Error::ZeroMarginal("x".into()));
    }
    Ok(Info::ratio(
        p_x.clone(),
        p_x.clone() - split.misinformative.clone(),
        base,
    ))
}

/// PMI when all exclusion is informative: `−log(1 − p(x̄,ȳ))`.
pub fn pmi_purely_informative<T: Mass>(informative: &T, base: LogBase) -> Result<Info<T>> {
    if informative.is_negative_mass() || *informative > T::one() {
        return Err(Error::InvalidProbability(informative.to_f64()));
    }
    let remaining = T::one() - informative.clone();
    if remaining.is_zero() {
        return Err(Error::DegenerateTotalExclusion);
    }
    Ok(Info::surprisal(remaining, base))
}

/// PMI when all exclusion is misinformative:
/// `log((1 − p(x,ȳ)/p(x)) / (1 − p(x,ȳ)))`; `−∞` when `p(x,ȳ) = p(x)`.
pub fn pmi_purely_misinformative<T: Mass>(
    misinformative: &T,
    p_x: &T,
    base: LogBase,
) -> Result<Info<T>> {
    if !mass::is_positive(p_x) {
        return Err(Error::ZeroMarginal("x".into()));
    }
    if misinformative.is_negative_mass() {
        return Err(Error::InvalidProbability(misinformative.to_f64()));
    }
    if misinformative > p_x {
        return Err(Error::MisinformativeExceedsEvent {
            misinformative: misinformative.to_f64(),
            p_x: p_x.to_f64(),
        });
    }
    if misinformative == p_x {
        return Ok(Info::ratio(T::zero(), T::one(), base));
    }
    Ok(Info::ratio(
        p_x.clone() - misinformative.clone(),
        p_x.clone() * (T::one() - misinformative.clone()),
        base,
    ))
}

/// `i(y→x|z)`: `i₊ = h(y|z)`, `i₋ = h(y|x,z)`.
///
/// Roles are not tied to variable names; any three distinct variables work.
pub fn decompose_conditional<T: Mass>(
    joint: &Joint3<T>,
    source: Ev,
    target: Ev,
    given: Ev,
    base: LogBase,
) -> Result<Decomposition<T>> {
    decompose_events(joint, &[source], &[target], &[given], base)
}

/// `i(yz→x)`: `i₊ = h(yz)`, `i₋ = h(yz|x)`.
pub fn decompose_joint_source<T: Mass>(
    joint: &Joint3<T>,
    source_a: Ev,
    source_b: Ev,
    target: Ev,
    base: LogBase,
) -> Result<Decomposition<T>> {
    decompose_events(joint, &[source_a, source_b], &[target], &[], base)
}

/// `i(y→xz)`: `i₊ = h(y)`, `i₋ = h(y|xz)`.
pub fn decompose_joint_target<T: Mass>(
    joint: &Joint3<T>,
    source: Ev,
    target_a: Ev,
    target_b: Ev,
    base: LogBase,
) -> Result<Decomposition<T>> {
    decompose_events(joint, &[source], &[target_a, target_b], &[], base)
}

/// General form: source and target are conjunctions of events, optionally
/// conditioned on a further conjunction. Each variable may appear once.
pub fn decompose_events<T: Mass>(
    joint: &Joint3<T>,
    source: &[Ev],
    target: &[Ev],
    given: &[Ev],
    base: LogBase,
) -> Result<Decomposition<T>> {
    if source.is_empty() || target.is_empty() {
        return Err(Error::InvalidEvents("source and target must be non-empty".into()));
    }
    let mut seen = Vec::with_capacity(3);
    for ev in source.iter().chain(target).chain(given) {
        if seen.contains(&ev.var) {
            return Err(Error::InvalidEvents(format!("variable {} used twice", ev.var)));
        }
        if ev.index >= joint.alphabet(ev.var).len() {
            return Err(Error::InvalidEvents(format!(
                "index {} out of range for {}",
                ev.index, ev.var
            )));
        }
        seen.push(ev.var);
    }
    let all = |events: &[Ev], cell| events.iter().all(|e| e.holds(cell));
    let masses = EventMasses::collect(
        joint
            .cells()
            .map(|(c, m)| (m, all(given, c), all(source, c), all(target, c))),
        !given.is_empty(),
    );
    let name = |events: &[Ev]| {
        events
            .iter()
            .map(|e| joint.event_name(*e))
            .collect::<Vec<_>>()
            .join("")
    };
    masses.decompose(base, || name(given), || name(source), || name(target))
}

/// `I(X;y) = Σₓ p(x|y) i(x;y)`, the KL divergence of `P(X|y)` from `P(X)`.
pub fn average_info_to_target<T: Mass>(joint: &Joint2<T>, y: usize, base: LogBase) -> Result<f64> {
    let p_y = joint.p_y(y);
    if !mass::is_positive(&p_y) {
        return Err(Error::ZeroMarginal(joint.y().label(y).to_string()));
    }
    let mut total = 0.0;
    for x in 0..joint.x().len() {
        let p_xy = joint.mass(x, y);
        if !mass::is_positive(p_xy) {
            continue;
        }
        let weight = (p_xy.clone() / p_y.clone()).to_f64();
        total += pmi(joint, x, y, base)?.scaled_by(weight);
    }
    Ok(total)
}

/// Cell sums needed for one decomposition, all restricted to the context.
struct EventMasses<T> {
    context: T,
    source: T,
    target: T,
    both: T,
    informative: T,
    misinformative: T,
}

impl<T: Mass> EventMasses<T> {
    /// Items are `(mass, in context, in source, in target)`. Without a
    /// conditioning event the context mass is exactly one.
    fn collect<'a>(
        cells: impl Iterator<Item = (&'a T, bool, bool, bool)>,
        conditioned: bool,
    ) -> Self {
        let mut acc = Self {
            context: T::zero(),
            source: T::zero(),
            target: T::zero(),
            both: T::zero(),
            informative: T::zero(),
            misinformative: T::zero(),
        };
        let bump = |slot: &mut T, m: &T| slot.add_lazy(m);
        for (m, in_context, in_source, in_target) in cells {
            if !in_context {
                continue;
            }
            bump(&mut acc.context, m);
            match (in_source, in_target) {
                (true, true) => {
                    bump(&mut acc.source, m);
                    bump(&mut acc.target, m);
                    bump(&mut acc.both, m);
                }
                (true, false) => bump(&mut acc.source, m),
                (false, true) => {
                    bump(&mut acc.target, m);
                    bump(&mut acc.misinformative, m);
                }
                (false, false) => bump(&mut acc.informative, m),
            }
        }
        let mut acc = Self {
            context: acc.context.settle(),
            source: acc.source.settle(),
            target: acc.target.settle(),
            both: acc.both.settle(),
            informative: acc.informative.settle(),
            misinformative: acc.misinformative.settle(),
        };
        if !conditioned {
            acc.context = T::one();
        }
        acc
    }

    fn decompose(
        self,
        base: LogBase,
        context_name: impl Fn() -> String,
        source_name: impl Fn() -> String,
        target_name: impl Fn() -> String,
    ) -> Result<Decomposition<T>> {
        if !mass::is_positive(&self.context) {
            return Err(Error::ZeroConditioningEvent(context_name()));
        }
        if !mass::is_positive(&self.source) {
            return Err(Error::ZeroMarginal(source_name()));
        }
        if !mass::is_positive(&self.target) {
            return Err(Error::ZeroMarginal(target_name()));
        }
        let split = if self.context == T::one() {
            ExclusionSplit::new(self.informative, self.misinformative)
        } else {
            ExclusionSplit::new(
                self.informative / self.context.clone(),
                self.misinformative / self.context.clone(),
            )
        };
        Ok(Decomposition {
            pmi: Info::ratio(
                self.both.clone() * self.context.clone(),
                self.source.clone() * self.target.clone(),
                base,
            ),
            i_plus: Info::ratio(self.context, self.source, base),
            i_minus: Info::ratio(self.target, self.both, base),
            split,
        })
    }
}

#[cfg(test)]
mod tests;
