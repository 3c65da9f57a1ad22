//! Finite joint distributions over labeled alphabets.
//!
//! Complement events are never stored: `ȳ` is always derived as "any label of
//! the alphabet except `y`". Zero-mass rows and columns are accepted at
//! construction; operations that need a positive event fail when called.

mod file;
mod joint2;
mod joint3;

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mass::{self, Mass};

pub use file::{Distribution, DistributionFile};
pub use joint2::Joint2;
pub use joint3::{Assignment, Ev, Joint3, Slot};

/// Input masses must sum to one within this tolerance on the float backend.
pub const INPUT_SUM_TOLERANCE: f64 = 1e-9;

/// Tolerance for identities between internally computed float probabilities.
pub const INTERNAL_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Var {
    X,
    Y,
    Z,
}

impl Var {
    pub const ALL: [Var; 3] = [Var::X, Var::Y, Var::Z];

    pub(crate) fn slot(self) -> usize {
        self as usize
    }

    fn lower(self) -> char {
        match self {
            Var::X => 'x',
            Var::Y => 'y',
            Var::Z => 'z',
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Var::X => "X",
            Var::Y => "Y",
            Var::Z => "Z",
        })
    }
}

/// Ordered, duplicate-free event labels for one variable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    var: Var,
    labels: Vec<String>,
    index: HashMap<String, usize>,
}

impl Alphabet {
    pub fn new(var: Var, labels: Vec<String>) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::EmptyAlphabet(var));
        }
        let mut index = HashMap::with_capacity(labels.len());
        for (i, label) in labels.iter().enumerate() {
            if index.insert(label.clone(), i).is_some() {
                return Err(Error::DuplicateLabel {
                    var,
                    label: label.clone(),
                });
            }
        }
        Ok(Self { var, labels, index })
    }

    /// `x1, x2, ...` style labels.
    pub fn numbered(var: Var, len: usize) -> Result<Self> {
        Self::new(var, (1..=len).map(|i| format!("{}{i}", var.lower())).collect())
    }

    pub fn var(&self) -> Var {
        self.var
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, index: usize) -> &str {
        &self.labels[index]
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.index
            .get(label)
            .copied()
            .ok_or_else(|| Error::UnknownLabel {
                var: self.var,
                label: label.to_string(),
            })
    }

    fn relabel(&self, var: Var) -> Self {
        Self {
            var,
            ..self.clone()
        }
    }
}

/// A distribution over a single variable, such as `P(X)` or `P(X|y)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Marginal<T> {
    alphabet: Alphabet,
    masses: Vec<T>,
}

impl<T: Mass> Marginal<T> {
    pub fn new(var: Var, labels: Vec<String>, masses: Vec<T>) -> Result<Self> {
        let alphabet = Alphabet::new(var, labels)?;
        if masses.len() != alphabet.len() {
            return Err(Error::DimensionMismatch {
                context: format!("{var} masses"),
                expected: alphabet.len(),
                found: masses.len(),
            });
        }
        check_masses(
            masses
                .iter()
                .enumerate()
                .map(|(i, m)| (alphabet.label(i).to_string(), m)),
        )?;
        Ok(Self { alphabet, masses })
    }

    /// Built from masses already known to be a valid distribution.
    pub(crate) fn from_parts(alphabet: Alphabet, masses: Vec<T>) -> Self {
        Self { alphabet, masses }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn labels(&self) -> &[String] {
        self.alphabet.labels()
    }

    pub fn masses(&self) -> &[T] {
        &self.masses
    }

    pub fn mass(&self, index: usize) -> &T {
        &self.masses[index]
    }

    pub fn get(&self, label: &str) -> Result<&T> {
        Ok(&self.masses[self.alphabet.index_of(label)?])
    }

    /// The channel `Y := X`: a joint distribution whose mass sits on the diagonal.
    pub fn diagonal(&self) -> Joint2<T> {
        let n = self.masses.len();
        let mut masses = vec![T::zero(); n * n];
        for (i, m) in self.masses.iter().enumerate() {
            masses[i * n + i] = m.clone();
        }
        Joint2::from_parts(
            self.alphabet.relabel(Var::X),
            self.alphabet.relabel(Var::Y),
            masses,
        )
    }

    /// Exact on the rational backend, within [`INTERNAL_TOLERANCE`] on floats.
    pub fn agrees(&self, other: &Self) -> bool {
        self.labels() == other.labels()
            && self
                .masses
                .iter()
                .zip(&other.masses)
                .all(|(a, b)| a.agrees(b, INTERNAL_TOLERANCE))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ExclusionKind {
    PurelyInformative,
    PurelyMisinformative,
    Mixed,
    Null,
}

impl fmt::Display for ExclusionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ExclusionKind::PurelyInformative => "purely informative",
            ExclusionKind::PurelyMisinformative => "purely misinformative",
            ExclusionKind::Mixed => "mixed",
            ExclusionKind::Null => "null",
        })
    }
}

/// The mass excluded by observing the source event, split by whether it lies
/// on the target event (misinformative) or its complement (informative).
#[derive(Debug, Clone, PartialEq)]
pub struct ExclusionSplit<T> {
    /// `p(x̄, ȳ)`
    pub informative: T,
    /// `p(x, ȳ)`
    pub misinformative: T,
    pub kind: ExclusionKind,
}

impl<T: Mass> ExclusionSplit<T> {
    pub fn new(informative: T, misinformative: T) -> Self {
        let kind = match (informative.is_zero(), misinformative.is_zero()) {
            (true, true) => ExclusionKind::Null,
            (false, true) => ExclusionKind::PurelyInformative,
            (true, false) => ExclusionKind::PurelyMisinformative,
            (false, false) => ExclusionKind::Mixed,
        };
        Self {
            informative,
            misinformative,
            kind,
        }
    }

    /// `p(ȳ)`
    pub fn total(&self) -> T {
        self.informative.clone() + self.misinformative.clone()
    }
}

/// Rejects negative entries and totals away from one.
pub(crate) fn check_masses<'a, T: Mass>(
    cells: impl IntoIterator<Item = (String, &'a T)>,
) -> Result<()> {
    let mut total = T::zero();
    for (location, m) in cells {
        if m.is_negative_mass() {
            return Err(Error::NegativeMass {
                location,
                value: m.to_f64(),
            });
        }
        total = total + m.clone();
    }
    if !total.agrees(&T::one(), INPUT_SUM_TOLERANCE) {
        return Err(Error::MassSumNotOne {
            total: total.to_f64(),
            deviation: mass::deviation_from_one(&total),
        });
    }
    Ok(())
}
