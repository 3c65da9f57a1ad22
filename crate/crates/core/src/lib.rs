//! Directed decomposition of pointwise mutual information into specificity
//! and ambiguity over finite discrete distributions.
//!
//! The information an event `y` provides about an event `x` splits into two
//! non-negative parts, `i(x;y) = i₊(y→x) − i₋(y→x)`, where `i₊ = h(y)` grows
//! with the total probability mass excluded by observing `y` and `i₋ = h(y|x)`
//! grows with the part of that exclusion that falls on `x` itself.
//!
//! - [`distribution`]: joint distributions, marginals, conditionals, exclusion splits
//! - [`measures`]: pointwise entropy, PMI and its decompositions
//! - [`verify`]: executable checks of the decomposition's defining properties
//! - [`diagram`]: probability mass diagrams as text or SVG

pub mod diagram;
pub mod distribution;
pub mod error;
pub mod mass;
pub mod measures;
pub mod sample;
pub mod verify;

pub use distribution::{
    Alphabet, Assignment, Distribution, DistributionFile, Ev, ExclusionKind, ExclusionSplit,
    Joint2, Joint3, Marginal, Slot, Var,
};
pub use error::{Error, ErrorCategory, Result};
pub use mass::{Backend, Mass, MassLiteral, Rational};
pub use measures::{Decomposition, Extended, Info, LogBase};
