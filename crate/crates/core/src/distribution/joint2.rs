use crate::error::{Error, Result};
use crate::mass::{self, Mass};

use super::{check_masses, Alphabet, ExclusionSplit, Joint3, Marginal, Var};

/// A joint distribution `P(X, Y)` stored row-major (X-major).
#[derive(Debug, Clone, PartialEq)]
pub struct Joint2<T> {
    x: Alphabet,
    y: Alphabet,
    masses: Vec<T>,
}

impl<T: Mass> Joint2<T> {
    pub fn new(x_labels: Vec<String>, y_labels: Vec<String>, masses: Vec<Vec<T>>) -> Result<Self> {
        let x = Alphabet::new(Var::X, x_labels)?;
        let y = Alphabet::new(Var::Y, y_labels)?;
        if masses.len() != x.len() {
            return Err(Error::DimensionMismatch {
                context: "mass rows".into(),
                expected: x.len(),
                found: masses.len(),
            });
        }
        for (i, row) in masses.iter().enumerate() {
            if row.len() != y.len() {
                return Err(Error::DimensionMismatch {
                    context: format!("mass row {}", x.label(i)),
                    expected: y.len(),
                    found: row.len(),
                });
            }
        }
        let masses: Vec<T> = masses.into_iter().flatten().collect();
        let ny = y.len();
        check_masses(masses.iter().enumerate().map(|(k, m)| {
            (format!("({}, {})", x.label(k / ny), y.label(k % ny)), m)
        }))?;
        Ok(Self { x, y, masses })
    }

    /// Numbered labels `x1.. / y1..`.
    pub fn from_grid(masses: Vec<Vec<T>>) -> Result<Self> {
        let nx = masses.len();
        let ny = masses.first().map_or(0, Vec::len);
        Self::new(
            Alphabet::numbered(Var::X, nx.max(1))?.labels().to_vec(),
            Alphabet::numbered(Var::Y, ny.max(1))?.labels().to_vec(),
            masses,
        )
    }

    pub(crate) fn from_parts(x: Alphabet, y: Alphabet, masses: Vec<T>) -> Self {
        debug_assert_eq!(masses.len(), x.len() * y.len());
        Self { x, y, masses }
    }

    pub fn x(&self) -> &Alphabet {
        &self.x
    }

    pub fn y(&self) -> &Alphabet {
        &self.y
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.x.len(), self.y.len())
    }

    pub fn mass(&self, x: usize, y: usize) -> &T {
        &self.masses[x * self.y.len() + y]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[T]> {
        self.masses.chunks(self.y.len())
    }

    /// `(x, y, p(x, y))` in row-major order.
    pub fn cells(&self) -> impl Iterator<Item = (usize, usize, &T)> {
        let ny = self.y.len();
        self.masses
            .iter()
            .enumerate()
            .map(move |(k, m)| (k / ny, k % ny, m))
    }

    pub fn x_index(&self, label: &str) -> Result<usize> {
        self.x.index_of(label)
    }

    pub fn y_index(&self, label: &str) -> Result<usize> {
        self.y.index_of(label)
    }

    pub fn p_x(&self, x: usize) -> T {
        mass::sum((0..self.y.len()).map(|y| self.mass(x, y)))
    }

    pub fn p_y(&self, y: usize) -> T {
        mass::sum((0..self.x.len()).map(|x| self.mass(x, y)))
    }

    /// Row sums (`Var::X`) or column sums (`Var::Y`).
    ///
    /// Panics on `Var::Z`.
    pub fn marginal(&self, axis: Var) -> Marginal<T> {
        match axis {
            Var::X => Marginal::from_parts(
                self.x.clone(),
                (0..self.x.len()).map(|x| self.p_x(x)).collect(),
            ),
            Var::Y => Marginal::from_parts(
                self.y.clone(),
                (0..self.y.len()).map(|y| self.p_y(y)).collect(),
            ),
            Var::Z => panic!("a two-variable joint has no Z axis"),
        }
    }

    /// `P(X | y)`.
    pub fn condition(&self, y: usize) -> Result<Marginal<T>> {
        let p_y = self.p_y(y);
        if !mass::is_positive(&p_y) {
            return Err(Error::ZeroConditioningEvent(self.y.label(y).to_string()));
        }
        let masses = (0..self.x.len())
            .map(|x| self.mass(x, y).clone() / p_y.clone())
            .collect();
        Ok(Marginal::from_parts(self.x.clone(), masses))
    }

    pub fn condition_on(&self, y_label: &str) -> Result<Marginal<T>> {
        self.condition(self.y_index(y_label)?)
    }

    /// Exclusions induced in `P(X)` by observing `y`, relative to target `x`.
    pub fn exclusion_split_at(&self, x: usize, y: usize) -> ExclusionSplit<T> {
        let mut informative = T::zero();
        let mut misinformative = T::zero();
        for (xi, yi, m) in self.cells() {
            if yi == y {
                continue;
            }
            if xi == x {
                misinformative = misinformative + m.clone();
            } else {
                informative = informative + m.clone();
            }
        }
        ExclusionSplit::new(informative, misinformative)
    }

    pub fn exclusion_split(&self, x_label: &str, y_label: &str) -> Result<ExclusionSplit<T>> {
        Ok(self.exclusion_split_at(self.x_index(x_label)?, self.y_index(y_label)?))
    }

    /// Swaps the roles of the two variables.
    pub fn transpose(&self) -> Joint2<T> {
        let (nx, ny) = self.shape();
        let masses = (0..ny)
            .flat_map(|y| (0..nx).map(move |x| (x, y)))
            .map(|(x, y)| self.mass(x, y).clone())
            .collect();
        Joint2::from_parts(self.y.relabel(Var::X), self.x.relabel(Var::Y), masses)
    }

    /// The same distribution with a single-label `Z` alphabet.
    pub fn embed(&self) -> Joint3<T> {
        let z = Alphabet::numbered(Var::Z, 1).expect("non-empty alphabet");
        Joint3::from_parts(self.x.clone(), self.y.clone(), z, self.masses.clone())
    }

    pub fn map<U: Mass>(&self, f: impl Fn(&T) -> U) -> Joint2<U> {
        Joint2::from_parts(
            self.x.clone(),
            self.y.clone(),
            self.masses.iter().map(f).collect(),
        )
    }
}
