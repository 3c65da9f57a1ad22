use crate::error::{Error, Result};
use crate::mass::{self, Mass};

use super::{check_masses, Alphabet, Joint2, Marginal, Var};

/// A single event `var = label`, resolved to an index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Ev {
    pub var: Var,
    pub index: usize,
}

impl Ev {
    pub fn new(var: Var, index: usize) -> Self {
        Self { var, index }
    }

    pub fn x(index: usize) -> Self {
        Self::new(Var::X, index)
    }

    pub fn y(index: usize) -> Self {
        Self::new(Var::Y, index)
    }

    pub fn z(index: usize) -> Self {
        Self::new(Var::Z, index)
    }

    pub(crate) fn holds(&self, cell: [usize; 3]) -> bool {
        cell[self.var.slot()] == self.index
    }
}

/// One variable's constraint in an [`Assignment`].
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub enum Slot {
    #[default]
    Any,
    Is(String),
    /// The complement of a single event.
    Not(String),
}

/// A partial assignment of events (or single-event complements) to `X, Y, Z`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Assignment {
    slots: [Slot; 3],
}

impl Assignment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn is(mut self, var: Var, label: impl Into<String>) -> Self {
        self.slots[var.slot()] = Slot::Is(label.into());
        self
    }

    pub fn not(mut self, var: Var, label: impl Into<String>) -> Self {
        self.slots[var.slot()] = Slot::Not(label.into());
        self
    }

    pub fn slot(&self, var: Var) -> &Slot {
        &self.slots[var.slot()]
    }
}

/// A joint distribution `P(X, Y, Z)` stored X-major then Y then Z.
#[derive(Debug, Clone, PartialEq)]
pub struct Joint3<T> {
    alphabets: [Alphabet; 3],
    masses: Vec<T>,
}

impl<T: Mass> Joint3<T> {
    pub fn new(
        x_labels: Vec<String>,
        y_labels: Vec<String>,
        z_labels: Vec<String>,
        masses: Vec<Vec<Vec<T>>>,
    ) -> Result<Self> {
        let x = Alphabet::new(Var::X, x_labels)?;
        let y = Alphabet::new(Var::Y, y_labels)?;
        let z = Alphabet::new(Var::Z, z_labels)?;
        if masses.len() != x.len() {
            return Err(Error::DimensionMismatch {
                context: "masses3 X slices".into(),
                expected: x.len(),
                found: masses.len(),
            });
        }
        for (i, slice) in masses.iter().enumerate() {
            if slice.len() != y.len() {
                return Err(Error::DimensionMismatch {
                    context: format!("masses3 rows for {}", x.label(i)),
                    expected: y.len(),
                    found: slice.len(),
                });
            }
            for (j, row) in slice.iter().enumerate() {
                if row.len() != z.len() {
                    return Err(Error::DimensionMismatch {
                        context: format!("masses3 row ({}, {})", x.label(i), y.label(j)),
                        expected: z.len(),
                        found: row.len(),
                    });
                }
            }
        }
        let masses: Vec<T> = masses.into_iter().flatten().flatten().collect();
        let joint = Self {
            alphabets: [x, y, z],
            masses,
        };
        check_masses(joint.cells().map(|(c, m)| (joint.cell_name(c), m)))?;
        Ok(joint)
    }

    /// Numbered labels `x1.., y1.., z1..`.
    pub fn from_grid(masses: Vec<Vec<Vec<T>>>) -> Result<Self> {
        let nx = masses.len();
        let ny = masses.first().map_or(0, Vec::len);
        let nz = masses.first().and_then(|s| s.first()).map_or(0, Vec::len);
        let labels = |var, n: usize| -> Result<Vec<String>> {
            Ok(Alphabet::numbered(var, n.max(1))?.labels().to_vec())
        };
        Self::new(
            labels(Var::X, nx)?,
            labels(Var::Y, ny)?,
            labels(Var::Z, nz)?,
            masses,
        )
    }

    pub(crate) fn from_parts(x: Alphabet, y: Alphabet, z: Alphabet, masses: Vec<T>) -> Self {
        debug_assert_eq!(masses.len(), x.len() * y.len() * z.len());
        Self {
            alphabets: [x, y, z],
            masses,
        }
    }

    pub fn alphabet(&self, var: Var) -> &Alphabet {
        &self.alphabets[var.slot()]
    }

    pub fn shape(&self) -> (usize, usize, usize) {
        (
            self.alphabets[0].len(),
            self.alphabets[1].len(),
            self.alphabets[2].len(),
        )
    }

    fn offset(&self, [x, y, z]: [usize; 3]) -> usize {
        let (_, ny, nz) = self.shape();
        (x * ny + y) * nz + z
    }

    pub fn mass(&self, x: usize, y: usize, z: usize) -> &T {
        &self.masses[self.offset([x, y, z])]
    }

    pub fn cells(&self) -> impl Iterator<Item = ([usize; 3], &T)> {
        let (_, ny, nz) = self.shape();
        self.masses
            .iter()
            .enumerate()
            .map(move |(k, m)| ([k / (ny * nz), (k / nz) % ny, k % nz], m))
    }

    fn cell_name(&self, cell: [usize; 3]) -> String {
        format!(
            "({}, {}, {})",
            self.alphabets[0].label(cell[0]),
            self.alphabets[1].label(cell[1]),
            self.alphabets[2].label(cell[2])
        )
    }

    pub fn event(&self, var: Var, label: &str) -> Result<Ev> {
        Ok(Ev::new(var, self.alphabet(var).index_of(label)?))
    }

    pub fn event_name(&self, ev: Ev) -> &str {
        self.alphabet(ev.var).label(ev.index)
    }

    /// Total mass of the cells satisfying `pred`.
    pub(crate) fn mass_where(&self, pred: impl Fn([usize; 3]) -> bool) -> T {
        self.cells()
            .filter(|(c, _)| pred(*c))
            .fold(T::zero(), |acc, (_, m)| acc + m.clone())
    }

    /// Probability of the conjunction of `events`.
    pub fn p(&self, events: &[Ev]) -> T {
        self.mass_where(|c| events.iter().all(|e| e.holds(c)))
    }

    pub fn prob(&self, assignment: &Assignment) -> Result<T> {
        let mut constraints = Vec::new();
        for var in Var::ALL {
            match assignment.slot(var) {
                Slot::Any => {}
                Slot::Is(label) => constraints.push((self.event(var, label)?, true)),
                Slot::Not(label) => constraints.push((self.event(var, label)?, false)),
            }
        }
        if constraints.is_empty() {
            return Err(Error::EmptyAssignment);
        }
        Ok(self.mass_where(|c| constraints.iter().all(|(e, want)| e.holds(c) == *want)))
    }

    pub fn marginal(&self, var: Var) -> Marginal<T> {
        let alphabet = self.alphabet(var).clone();
        let masses = (0..alphabet.len())
            .map(|i| self.p(&[Ev::new(var, i)]))
            .collect();
        Marginal::from_parts(alphabet, masses)
    }

    /// The pairwise marginal `P(rows, cols)`, with `rows` in the X role.
    pub fn pair(&self, rows: Var, cols: Var) -> Joint2<T> {
        assert_ne!(rows, cols, "pair needs two distinct variables");
        let (nr, nc) = (self.alphabet(rows).len(), self.alphabet(cols).len());
        let mut masses = vec![T::zero(); nr * nc];
        for (c, m) in self.cells() {
            let k = c[rows.slot()] * nc + c[cols.slot()];
            masses[k] = masses[k].clone() + m.clone();
        }
        Joint2::from_parts(
            self.alphabet(rows).relabel(Var::X),
            self.alphabet(cols).relabel(Var::Y),
            masses,
        )
    }

    /// The joint of the two remaining variables conditioned on `ev`, in
    /// `X, Y, Z` order (conditioning on `Y` gives `P(X, Z | y)` with `Z` in
    /// the Y role).
    pub fn given(&self, ev: Ev) -> Result<Joint2<T>> {
        let p_ev = self.p(&[ev]);
        if !mass::is_positive(&p_ev) {
            return Err(Error::ZeroConditioningEvent(self.event_name(ev).to_string()));
        }
        let rest: Vec<Var> = Var::ALL.into_iter().filter(|v| *v != ev.var).collect();
        let (rows, cols) = (rest[0], rest[1]);
        let (nr, nc) = (self.alphabet(rows).len(), self.alphabet(cols).len());
        let mut masses = Vec::with_capacity(nr * nc);
        for r in 0..nr {
            for c in 0..nc {
                let m = self.p(&[ev, Ev::new(rows, r), Ev::new(cols, c)]);
                masses.push(m / p_ev.clone());
            }
        }
        Ok(Joint2::from_parts(
            self.alphabet(rows).relabel(Var::X),
            self.alphabet(cols).relabel(Var::Y),
            masses,
        ))
    }

    /// `P(target | given...)` computed in one step.
    pub fn posterior(&self, target: Var, given: &[Ev]) -> Result<Marginal<T>> {
        if given.iter().any(|e| e.var == target) {
            return Err(Error::InvalidEvents(format!(
                "cannot condition {target} on itself"
            )));
        }
        let p_given = self.p(given);
        if !mass::is_positive(&p_given) {
            let names: Vec<&str> = given.iter().map(|e| self.event_name(*e)).collect();
            return Err(Error::ZeroConditioningEvent(names.join("")));
        }
        let alphabet = self.alphabet(target).clone();
        let masses = (0..alphabet.len())
            .map(|i| {
                let mut events = given.to_vec();
                events.push(Ev::new(target, i));
                self.p(&events) / p_given.clone()
            })
            .collect();
        Ok(Marginal::from_parts(alphabet, masses))
    }

    pub fn map<U: Mass>(&self, f: impl Fn(&T) -> U) -> Joint3<U> {
        Joint3 {
            alphabets: self.alphabets.clone(),
            masses: self.masses.iter().map(f).collect(),
        }
    }
}
