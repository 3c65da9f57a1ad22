//! Probability mass diagrams.
//!
//! Each panel is one stacked bar whose blocks are joint events, stacked in
//! label order with the target variable outermost. Block height is
//! proportional to mass. Blocks removed by an observation are hatched:
//! vertically (`|`) when they lie off the target event (informative) and
//! diagonally (`/`) when they lie on it (misinformative). Retained blocks
//! are solid (`#`). The posterior panel renormalizes what remains.
//!
//! Layout constants (bar width, gaps, margins) are conventions of this
//! renderer.

mod ascii;
mod svg;

use std::fmt;
use std::str::FromStr;

use crate::distribution::{Ev, Joint2, Joint3, Marginal, Var};
use crate::error::{Error, Result};
use crate::mass::Mass;

pub use ascii::DEFAULT_UNIT_HEIGHT;

/// Most blocks a single panel may hold.
pub const MAX_BLOCKS: usize = 12;
pub const DEFAULT_WIDTH_PX: u32 = 600;
pub const DEFAULT_HEIGHT_PX: u32 = 400;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Panel {
    Prior,
    Exclusion,
    Posterior,
}

impl Panel {
    pub const ALL: [Panel; 3] = [Panel::Prior, Panel::Exclusion, Panel::Posterior];
}

impl fmt::Display for Panel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Panel::Prior => "prior",
            Panel::Exclusion => "exclusion",
            Panel::Posterior => "posterior",
        })
    }
}

impl FromStr for Panel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "prior" => Ok(Panel::Prior),
            "exclusion" => Ok(Panel::Exclusion),
            "posterior" => Ok(Panel::Posterior),
            other => Err(Error::InvalidDiagram(format!("unknown panel {other:?}"))),
        }
    }
}

/// How a block is drawn.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fill {
    Retained,
    /// Excluded mass off the target event.
    Informative,
    /// Excluded mass on the target event.
    Misinformative,
}

impl Fill {
    pub fn ascii(self) -> char {
        match self {
            Fill::Retained => '#',
            Fill::Informative => '|',
            Fill::Misinformative => '/',
        }
    }

    fn excluded(on_target: bool) -> Self {
        if on_target {
            Fill::Misinformative
        } else {
            Fill::Informative
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Block {
    pub label: String,
    pub mass: f64,
    pub fill: Fill,
}

/// One stacked bar, top block first.
#[derive(Debug, Clone, PartialEq)]
pub struct PanelModel {
    pub title: String,
    pub blocks: Vec<Block>,
}

impl PanelModel {
    fn new(title: String, blocks: Vec<Block>) -> Result<Self> {
        if blocks.len() > MAX_BLOCKS {
            return Err(Error::TooManyBlocks {
                count: blocks.len(),
                limit: MAX_BLOCKS,
            });
        }
        Ok(Self { title, blocks })
    }
}

/// A two-variable diagram: `y` observed, `x` the target event.
#[derive(Debug, Clone, PartialEq)]
pub struct DiagramSpec<T> {
    pub joint: Joint2<T>,
    pub target_x: String,
    pub source_y: String,
    pub panels: Vec<Panel>,
    pub width_px: u32,
    pub height_px: u32,
    /// Text rows per 1/8 of mass.
    pub unit_height: usize,
}

impl<T: Mass> DiagramSpec<T> {
    /// All three panels at default sizes.
    pub fn new(joint: Joint2<T>, target_x: impl Into<String>, source_y: impl Into<String>) -> Self {
        Self {
            joint,
            target_x: target_x.into(),
            source_y: source_y.into(),
            panels: Panel::ALL.to_vec(),
            width_px: DEFAULT_WIDTH_PX,
            height_px: DEFAULT_HEIGHT_PX,
            unit_height: DEFAULT_UNIT_HEIGHT,
        }
    }

    pub fn with_panels(mut self, panels: Vec<Panel>) -> Self {
        self.panels = panels;
        self
    }

    /// Builds the panel models, checking the spec on the way.
    pub fn panels(&self) -> Result<Vec<PanelModel>> {
        if self.panels.is_empty() {
            return Err(Error::InvalidDiagram("no panels requested".into()));
        }
        check_size(self.width_px, self.height_px, self.unit_height)?;
        let x = self.joint.x_index(&self.target_x)?;
        let y = self.joint.y_index(&self.source_y)?;
        let j = &self.joint;
        let pair = |xi: usize, yi: usize| format!("{},{}", j.x().label(xi), j.y().label(yi));
        self.panels
            .iter()
            .map(|panel| match panel {
                Panel::Prior => PanelModel::new(
                    "P(X,Y)".into(),
                    j.cells()
                        .map(|(xi, yi, m)| block(pair(xi, yi), m, Fill::Retained))
                        .collect(),
                ),
                Panel::Exclusion => PanelModel::new(
                    format!("observe {}", j.y().label(y)),
                    j.cells()
                        .map(|(xi, yi, m)| {
                            let fill = if yi == y { Fill::Retained } else { Fill::excluded(xi == x) };
                            block(pair(xi, yi), m, fill)
                        })
                        .collect(),
                ),
                Panel::Posterior => posterior_panel(
                    format!("P(X|{})", j.y().label(y)),
                    &j.condition(y)?,
                ),
            })
            .collect()
    }
}

fn check_size(width_px: u32, height_px: u32, unit_height: usize) -> Result<()> {
    if width_px == 0 || height_px == 0 || unit_height == 0 {
        return Err(Error::InvalidDiagram(
            "width, height and unit height must be positive".into(),
        ));
    }
    Ok(())
}

fn block<T: Mass>(label: String, mass: &T, fill: Fill) -> Block {
    Block {
        label,
        mass: mass.to_f64(),
        fill,
    }
}

fn posterior_panel<T: Mass>(title: String, posterior: &Marginal<T>) -> Result<PanelModel> {
    PanelModel::new(
        title,
        posterior
            .labels()
            .iter()
            .zip(posterior.masses())
            .map(|(label, m)| block(label.clone(), m, Fill::Retained))
            .collect(),
    )
}

pub fn render_ascii<T: Mass>(spec: &DiagramSpec<T>) -> Result<String> {
    Ok(ascii::render(&spec.panels()?, spec.unit_height))
}

pub fn render_svg<T: Mass>(spec: &DiagramSpec<T>) -> Result<String> {
    Ok(svg::render(&spec.panels()?, spec.width_px, spec.height_px))
}

/// Order in which `y` and `z` are observed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChainOrdering {
    OneShot,
    YThenZ,
    ZThenY,
}

impl FromStr for ChainOrdering {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "one-shot" => Ok(ChainOrdering::OneShot),
            "y-then-z" => Ok(ChainOrdering::YThenZ),
            "z-then-y" => Ok(ChainOrdering::ZThenY),
            other => Err(Error::InvalidDiagram(format!("unknown ordering {other:?}"))),
        }
    }
}

/// A three-variable diagram: `y` and `z` observed, `x` the target event.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainSpec<T> {
    pub joint: Joint3<T>,
    pub target_x: String,
    pub source_y: String,
    pub source_z: String,
    pub ordering: ChainOrdering,
    pub width_px: u32,
    pub height_px: u32,
    pub unit_height: usize,
}

impl<T: Mass> ChainSpec<T> {
    pub fn new(
        joint: Joint3<T>,
        target_x: impl Into<String>,
        source_y: impl Into<String>,
        source_z: impl Into<String>,
        ordering: ChainOrdering,
    ) -> Self {
        Self {
            joint,
            target_x: target_x.into(),
            source_y: source_y.into(),
            source_z: source_z.into(),
            ordering,
            width_px: DEFAULT_WIDTH_PX,
            height_px: DEFAULT_HEIGHT_PX,
            unit_height: DEFAULT_UNIT_HEIGHT,
        }
    }

    /// One-shot: prior, exclusion of everything but `yz`, `P(X|y,z)`.
    /// Sequential: prior, exclusion of the first event's complement, the
    /// joint of `X` and the other source given the first event, exclusion of
    /// the second event's complement, `P(X|y,z)`.
    pub fn panels(&self) -> Result<Vec<PanelModel>> {
        check_size(self.width_px, self.height_px, self.unit_height)?;
        let j = &self.joint;
        let ex = j.event(Var::X, &self.target_x)?;
        let ey = j.event(Var::Y, &self.source_y)?;
        let ez = j.event(Var::Z, &self.source_z)?;
        let triple = |c: [usize; 3]| {
            format!(
                "{},{},{}",
                j.alphabet(Var::X).label(c[0]),
                j.alphabet(Var::Y).label(c[1]),
                j.alphabet(Var::Z).label(c[2])
            )
        };
        let prior = PanelModel::new(
            "P(X,Y,Z)".into(),
            j.cells().map(|(c, m)| block(triple(c), m, Fill::Retained)).collect(),
        )?;
        let exclude3 = |kept: &[Ev], title: String| {
            PanelModel::new(
                title,
                j.cells()
                    .map(|(c, m)| {
                        let fill = if kept.iter().all(|e| c[e.var.slot()] == e.index) {
                            Fill::Retained
                        } else {
                            Fill::excluded(c[0] == ex.index)
                        };
                        block(triple(c), m, fill)
                    })
                    .collect(),
            )
        };
        let (y_name, z_name) = (j.event_name(ey), j.event_name(ez));
        let final_title = format!("P(X|{y_name},{z_name})");
        match self.ordering {
            ChainOrdering::OneShot => Ok(vec![
                prior,
                exclude3(&[ey, ez], format!("observe {y_name}{z_name}"))?,
                posterior_panel(final_title, &j.posterior(Var::X, &[ey, ez])?)?,
            ]),
            ChainOrdering::YThenZ | ChainOrdering::ZThenY => {
                let (first, second, other) = if self.ordering == ChainOrdering::YThenZ {
                    (ey, ez, Var::Z)
                } else {
                    (ez, ey, Var::Y)
                };
                let first_name = j.event_name(first);
                let second_name = j.event_name(second);
                let middle = j.given(first)?;
                let pair = |xi: usize, oi: usize| {
                    format!("{},{}", middle.x().label(xi), middle.y().label(oi))
                };
                let intermediate = PanelModel::new(
                    format!("P(X,{other}|{first_name})"),
                    middle
                        .cells()
                        .map(|(xi, oi, m)| block(pair(xi, oi), m, Fill::Retained))
                        .collect(),
                )?;
                let second_exclusion = PanelModel::new(
                    format!("observe {second_name}"),
                    middle
                        .cells()
                        .map(|(xi, oi, m)| {
                            let fill = if oi == second.index {
                                Fill::Retained
                            } else {
                                Fill::excluded(xi == ex.index)
                            };
                            block(pair(xi, oi), m, fill)
                        })
                        .collect(),
                )?;
                Ok(vec![
                    prior,
                    exclude3(&[first], format!("observe {first_name}"))?,
                    intermediate,
                    second_exclusion,
                    posterior_panel(final_title, &middle.condition(second.index)?)?,
                ])
            }
        }
    }
}

pub fn render_chain<T: Mass>(spec: &ChainSpec<T>) -> Result<String> {
    Ok(svg::render(&spec.panels()?, spec.width_px, spec.height_px))
}

pub fn render_chain_ascii<T: Mass>(spec: &ChainSpec<T>) -> Result<String> {
    Ok(ascii::render(&spec.panels()?, spec.unit_height))
}

/// Splits `total` units among `masses` in proportion, rounding by largest
/// remainder so the parts sum to `total` exactly. Ties go to the earlier block.
pub fn apportion(masses: &[f64], total: usize) -> Vec<usize> {
    let sum: f64 = masses.iter().sum();
    if sum <= 0.0 {
        return vec![0; masses.len()];
    }
    let quotas: Vec<f64> = masses.iter().map(|m| m / sum * total as f64).collect();
    let mut parts: Vec<usize> = quotas.iter().map(|q| q.floor() as usize).collect();
    let assigned: usize = parts.iter().sum();
    let mut order: Vec<usize> = (0..masses.len()).filter(|&i| masses[i] > 0.0).collect();
    // remainders are compared on a 1e-9 grid so float noise cannot break ties
    order.sort_by_key(|&i| (-((quotas[i] - quotas[i].floor()) * 1e9).round() as i64, i));
    for &i in order.iter().take(total.saturating_sub(assigned)) {
        parts[i] += 1;
    }
    parts
}

#[cfg(test)]
mod tests;
