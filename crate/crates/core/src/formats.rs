//! JSON file formats for orthospaces, states, matrices and observables.

use serde::{Deserialize, Serialize};

use crate::field::{parse_rational, Field, Rational};
use crate::jordan::{Algebra, JordanElement, JordanError};
use crate::orthospace::{EventId, OrthoError, OrthoSpace};
use crate::statespace::State;

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Ortho(#[from] OrthoError),
    #[error(transparent)]
    Jordan(#[from] JordanError),
    #[error("unknown algebra tag {0:?}")]
    Algebra(String),
    #[error("cannot parse number {0:?}")]
    Number(String),
}

/// Orthospace table: orthogonal pairs, sum triples `(e, f, e+f)` and the complement map.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrthoFile {
    pub n_events: usize,
    pub zero: usize,
    pub unit: usize,
    pub ortho: Vec<(usize, usize)>,
    pub sums: Vec<(usize, usize, usize)>,
    pub complement: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

impl OrthoFile {
    pub fn from_space(space: &OrthoSpace) -> Self {
        let mut ortho = Vec::new();
        let mut sums = Vec::new();
        for e in space.events() {
            for f in space.events() {
                if space.is_ortho(e, f) {
                    ortho.push((e.index(), f.index()));
                }
                if let Some(s) = space.sum(e, f) {
                    sums.push((e.index(), f.index(), s.index()));
                }
            }
        }
        let default_labels = space.labels().iter().enumerate().all(|(i, l)| *l == i.to_string());
        OrthoFile {
            n_events: space.len(),
            zero: space.zero().index(),
            unit: space.unit().index(),
            ortho,
            sums,
            complement: space.events().map(|e| space.complement(e).index()).collect(),
            labels: (!default_labels).then(|| space.labels().to_vec()),
        }
    }

    pub fn to_space(&self) -> Result<OrthoSpace, OrthoError> {
        let space = OrthoSpace::from_parts(self.n_events, self.zero, self.unit, &self.ortho, &self.sums, &self.complement)?;
        match &self.labels {
            Some(labels) => space.with_labels(labels.clone()),
            None => Ok(space),
        }
    }
}

pub fn parse_orthospace(text: &str) -> Result<OrthoSpace, FormatError> {
    let file: OrthoFile = serde_json::from_str(text)?;
    Ok(file.to_space()?)
}

pub fn write_orthospace(space: &OrthoSpace) -> String {
    serde_json::to_string_pretty(&OrthoFile::from_space(space)).expect("serializable")
}

/// A single state (`["p/q", …]`) or a list of states.
#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(untagged)]
enum StatesFile {
    One(State),
    Many(Vec<State>),
}

pub fn parse_states(text: &str) -> Result<Vec<State>, FormatError> {
    Ok(match serde_json::from_str(text)? {
        StatesFile::One(s) => vec![s],
        StatesFile::Many(v) => v,
    })
}

pub fn write_states(states: &[State]) -> String {
    serde_json::to_string_pretty(states).expect("serializable")
}

/// Hermitian matrix: algebra tag, dimension and row-major coordinate tuples.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatrixFile {
    pub algebra: String,
    pub n: usize,
    pub entries: Vec<Vec<f64>>,
}

impl MatrixFile {
    pub fn from_element(x: &JordanElement) -> Self {
        let n = x.n();
        let entries = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).map(|(i, j)| x.entry(i, j).coords().to_vec()).collect();
        MatrixFile { algebra: x.algebra().tag().to_string(), n, entries }
    }

    pub fn to_element(&self) -> Result<JordanElement, FormatError> {
        let algebra = Algebra::from_tag(&self.algebra).ok_or_else(|| FormatError::Algebra(self.algebra.clone()))?;
        Ok(JordanElement::from_coordinate_rows(algebra, self.n, &self.entries)?)
    }
}

#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(untagged)]
enum MatricesFile {
    One(MatrixFile),
    Many(Vec<MatrixFile>),
}

/// One matrix or a list of matrices (projection lists, density states).
pub fn parse_matrices(text: &str) -> Result<Vec<JordanElement>, FormatError> {
    let files = match serde_json::from_str(text)? {
        MatricesFile::One(m) => vec![m],
        MatricesFile::Many(v) => v,
    };
    files.iter().map(MatrixFile::to_element).collect()
}

pub fn write_matrices(xs: &[JordanElement]) -> String {
    serde_json::to_string_pretty(&xs.iter().map(MatrixFile::from_element).collect::<Vec<_>>()).expect("serializable")
}

/// Observable support as `(value, event)` pairs; values are decimal or `p/q` text.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ObservableFile {
    pub support: Vec<(String, usize)>,
}

impl ObservableFile {
    pub fn from_support<T: Field>(support: &[(T, EventId)]) -> Self {
        ObservableFile { support: support.iter().map(|(t, e)| (t.to_string(), e.index())).collect() }
    }

    pub fn rational_support(&self) -> Result<Vec<(Rational, EventId)>, FormatError> {
        self.support
            .iter()
            .map(|(t, e)| parse_rational(t).map(|r| (r, EventId(*e))).ok_or_else(|| FormatError::Number(t.clone())))
            .collect()
    }

    pub fn float_support(&self) -> Result<Vec<(f64, EventId)>, FormatError> {
        self.rational_support().map(|v| v.into_iter().map(|(r, e)| (r.as_f64(), e)).collect())
    }
}

pub fn parse_observable(text: &str) -> Result<ObservableFile, FormatError> {
    Ok(serde_json::from_str(text)?)
}
