use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mass::{Mass, MassLiteral};

use super::{Joint2, Joint3, Var};

/// On-disk JSON form of a two- or three-variable distribution.
///
/// Exactly one of `masses` (X-major grid) or `masses3` (X, Y, Z nesting) is
/// present; `z_labels` accompanies `masses3`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DistributionFile {
    pub x_labels: Vec<String>,
    pub y_labels: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub z_labels: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub masses: Option<Vec<Vec<MassLiteral>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub masses3: Option<Vec<Vec<Vec<MassLiteral>>>>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Distribution<T> {
    Two(Joint2<T>),
    Three(Joint3<T>),
}

impl<T> Distribution<T> {
    pub fn arity(&self) -> usize {
        match self {
            Distribution::Two(_) => 2,
            Distribution::Three(_) => 3,
        }
    }
}

impl DistributionFile {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        Self::parse(&text)
    }

    /// Pretty JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("file model serializes");
        text.push('\n');
        text
    }

    pub fn from_joint2<T: Mass>(joint: &Joint2<T>) -> Self {
        Self {
            x_labels: joint.x().labels().to_vec(),
            y_labels: joint.y().labels().to_vec(),
            z_labels: None,
            masses: Some(
                joint
                    .rows()
                    .map(|row| row.iter().map(Mass::to_literal).collect())
                    .collect(),
            ),
            masses3: None,
        }
    }

    pub fn from_joint3<T: Mass>(joint: &Joint3<T>) -> Self {
        let (nx, ny, nz) = joint.shape();
        let masses3 = (0..nx)
            .map(|x| {
                (0..ny)
                    .map(|y| (0..nz).map(|z| joint.mass(x, y, z).to_literal()).collect())
                    .collect()
            })
            .collect();
        Self {
            x_labels: joint.alphabet(Var::X).labels().to_vec(),
            y_labels: joint.alphabet(Var::Y).labels().to_vec(),
            z_labels: Some(joint.alphabet(Var::Z).labels().to_vec()),
            masses: None,
            masses3: Some(masses3),
        }
    }

    pub fn from_distribution<T: Mass>(dist: &Distribution<T>) -> Self {
        match dist {
            Distribution::Two(j) => Self::from_joint2(j),
            Distribution::Three(j) => Self::from_joint3(j),
        }
    }

    pub fn to_distribution<T: Mass>(&self) -> Result<Distribution<T>> {
        match (&self.masses, &self.masses3, &self.z_labels) {
            (Some(_), Some(_), _) => Err(Error::Format(
                "a file holds either masses or masses3, not both".into(),
            )),
            (Some(_), None, Some(_)) => Err(Error::Format(
                "z_labels given with a two-variable masses grid".into(),
            )),
            (None, Some(_), None) => Err(Error::Format("masses3 requires z_labels".into())),
            (None, None, _) => Err(Error::Format("missing masses or masses3".into())),
            (Some(grid), None, None) => Ok(Distribution::Two(Joint2::new(
                self.x_labels.clone(),
                self.y_labels.clone(),
                convert(grid, |row| convert(row, T::from_literal))?,
            )?)),
            (None, Some(grid), Some(z_labels)) => Ok(Distribution::Three(Joint3::new(
                self.x_labels.clone(),
                self.y_labels.clone(),
                z_labels.clone(),
                convert(grid, |slice| {
                    convert(slice, |row| convert(row, T::from_literal))
                })?,
            )?)),
        }
    }
}

fn convert<A, B>(items: &[A], f: impl Fn(&A) -> Result<B>) -> Result<Vec<B>> {
    items.iter().map(f).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mass::{ratio, Rational};

    const WORKED: &str = r#"{
        "x_labels": ["x1", "x2"],
        "y_labels": ["y1", "y2"],
        "masses": [["1/4", 0.25], ["1/8", "3/8"]]
    }"#;

    #[test]
    fn parses_mixed_literals_on_both_backends() {
        let file = DistributionFile::parse(WORKED).unwrap();
        let Distribution::Two(exact) = file.to_distribution::<Rational>().unwrap() else {
            panic!("expected two variables");
        };
        assert_eq!(exact.mass(0, 1), &ratio(1, 4));
        assert_eq!(exact.mass(1, 1), &ratio(3, 8));
        let Distribution::Two(float) = file.to_distribution::<f64>().unwrap() else {
            panic!("expected two variables");
        };
        assert_eq!(*float.mass(1, 0), 0.125);
    }

    #[test]
    fn rejects_ambiguous_layouts() {
        let both = r#"{"x_labels":["a"],"y_labels":["b"],"z_labels":["c"],
            "masses":[[1]],"masses3":[[[1]]]}"#;
        let err = DistributionFile::parse(both)
            .unwrap()
            .to_distribution::<f64>()
            .unwrap_err();
        assert!(matches!(err, Error::Format(_)));
        let neither = r#"{"x_labels":["a"],"y_labels":["b"]}"#;
        assert!(matches!(
            DistributionFile::parse(neither).unwrap().to_distribution::<f64>(),
            Err(Error::Format(_))
        ));
        assert!(matches!(
            DistributionFile::parse(r#"{"x_labels":["a"],"y_labels":["b"],"mass":[[1]]}"#),
            Err(Error::Format(_))
        ));
        assert!(matches!(
            DistributionFile::parse(r#"{"x_labels":["a"],"y_labels":["b"],"masses":[["x/y"]]}"#)
                .unwrap()
                .to_distribution::<Rational>(),
            Err(Error::InvalidMass(_))
        ));
    }

    #[test]
    fn three_variable_round_trip() {
        let j = Joint3::from_grid(vec![
            vec![vec![ratio(1, 8), ratio(1, 8)], vec![ratio(1, 8), ratio(1, 8)]],
            vec![vec![ratio(1, 8), ratio(1, 8)], vec![ratio(1, 16), ratio(3, 16)]],
        ])
        .unwrap();
        let file = DistributionFile::from_joint3(&j);
        let text = file.to_json();
        let back = DistributionFile::parse(&text).unwrap();
        assert_eq!(back, file);
        assert_eq!(back.to_distribution::<Rational>().unwrap(), Distribution::Three(j));
    }
}
