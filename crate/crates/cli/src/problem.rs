//! Problem files: a JSON object describing an isometry and, optionally, a
//! claimed reflector list.
//!
//! ```json
//! {
//!   "signature": { "p": 2, "q": 3 },
//!   "matrix": [["1", "5", "4", "3", "0"], ...],
//!   "basis": [["0", "0", "1", "1", "-1"], ...],
//!   "matrix_coordinates": "canonical",
//!   "mode": "exact",
//!   "reflectors": [["0", "0", "0", "0", "1"], ...]
//! }
//! ```
//!
//! Entries are rational strings (`"a/b"`), integers, or decimals. Basis rows
//! are basis vectors in canonical coordinates.

use cartan_core::{Matrix, NumberMode, OrthogonalBasis, OrthogonalMap, Scalar, Signature, Vector};
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SignatureSpec {
    pub p: usize,
    pub q: usize,
}

/// A number as written in the file: a string or a bare JSON number.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Entry {
    Text(String),
    Number(serde_json::Number),
}

impl Entry {
    pub fn to_scalar(&self, mode: NumberMode) -> Result<Scalar, CliError> {
        let text = match self {
            Entry::Text(s) => s.clone(),
            Entry::Number(n) => n.to_string(),
        };
        Scalar::parse(&text, mode).map_err(|e| CliError::Parse(e.to_string()))
    }

    pub fn from_scalar(s: &Scalar) -> Entry {
        Entry::Text(s.to_string())
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModeName {
    #[default]
    Exact,
    Float,
}

/// Coordinates in which `matrix` is written.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MatrixCoordinates {
    #[default]
    Canonical,
    Basis,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProblemFile {
    pub signature: SignatureSpec,
    pub matrix: Vec<Vec<Entry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<Vec<Entry>>>,
    #[serde(default, skip_serializing_if = "is_default")]
    pub matrix_coordinates: MatrixCoordinates,
    #[serde(default)]
    pub mode: ModeName,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<Entry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reflectors: Option<Vec<Vec<Entry>>>,
}

fn is_default<T: Default + PartialEq>(v: &T) -> bool {
    *v == T::default()
}

/// A problem file with every field parsed and validated.
#[derive(Clone, Debug)]
pub struct Problem {
    pub signature: Signature,
    pub mode: NumberMode,
    pub basis: OrthogonalBasis,
    /// The map over `basis`.
    pub map: OrthogonalMap,
    pub reflectors: Option<Vec<Vector>>,
}

impl ProblemFile {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Parse(format!("invalid problem file: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("problem files always serialize")
    }

    /// Mode from the file, overridden by an explicit command-line choice.
    pub fn number_mode(&self, override_mode: Option<NumberMode>) -> Result<NumberMode, CliError> {
        if let Some(m) = override_mode {
            return Ok(m);
        }
        Ok(match self.mode {
            ModeName::Exact => {
                if self.tolerance.is_some() {
                    return Err(CliError::Parse("tolerance is only valid in float mode".into()));
                }
                NumberMode::Exact
            }
            ModeName::Float => {
                let tolerance = match &self.tolerance {
                    Some(t) => t.to_scalar(NumberMode::Exact)?.to_f64(),
                    None => cartan_core::scalar::DEFAULT_TOLERANCE,
                };
                if !(tolerance > 0.0) {
                    return Err(CliError::Parse("tolerance must be positive".into()));
                }
                NumberMode::Float { tolerance }
            }
        })
    }

    pub fn signature(&self) -> Result<Signature, CliError> {
        Signature::new(self.signature.p, self.signature.q).map_err(|e| CliError::Parse(e.to_string()))
    }

    /// Parses everything except orthogonality of the matrix.
    fn parse_parts(&self, mode: NumberMode) -> Result<(Signature, OrthogonalBasis, Matrix, Option<Vec<Vector>>), CliError> {
        let sig = self.signature()?;
        let n = sig.dim();
        let matrix = parse_square(&self.matrix, n, mode, "matrix")?;
        let basis = match &self.basis {
            None => OrthogonalBasis::canonical(sig),
            Some(rows) => {
                let m = parse_square(rows, n, mode, "basis")?;
                let vectors = m.to_rows().into_iter().map(Vector::new).collect();
                OrthogonalBasis::from_vectors(vectors, sig).map_err(|e| CliError::Parse(format!("basis: {e}")))?
            }
        };
        let reflectors = self
            .reflectors
            .as_ref()
            .map(|rows| {
                rows.iter()
                    .enumerate()
                    .map(|(i, row)| {
                        if row.len() != n {
                            return Err(CliError::Parse(format!(
                                "reflector {} has {} entries, expected {n}",
                                i + 1,
                                row.len()
                            )));
                        }
                        row.iter()
                            .map(|e| e.to_scalar(mode))
                            .collect::<Result<Vec<_>, _>>()
                            .map(Vector::new)
                    })
                    .collect::<Result<Vec<_>, _>>()
            })
            .transpose()?;
        Ok((sig, basis, matrix, reflectors))
    }

    /// The matrix over the declared basis, without an orthogonality check.
    pub fn basis_matrix(&self, mode: NumberMode) -> Result<(OrthogonalBasis, Matrix), CliError> {
        let (_, basis, matrix, _) = self.parse_parts(mode)?;
        let m = match self.matrix_coordinates {
            MatrixCoordinates::Canonical => basis
                .matrix_from_canonical(&matrix)
                .map_err(|e| CliError::Parse(e.to_string()))?,
            MatrixCoordinates::Basis => matrix,
        };
        Ok((basis, m))
    }

    pub fn parse(&self, mode: NumberMode) -> Result<Problem, CliError> {
        let (signature, basis, _, reflectors) = self.parse_parts(mode)?;
        let (_, m) = self.basis_matrix(mode)?;
        let map = OrthogonalMap::new(m, basis.clone()).map_err(|e| match e {
            cartan_core::Error::NotOrthogonalMap { max_deviation } => CliError::NotOrthogonal(format!(
                "matrix does not preserve the form: max |M^T G M - G| entry is {max_deviation}"
            )),
            other => CliError::Parse(other.to_string()),
        })?;
        Ok(Problem {
            signature,
            mode,
            basis,
            map,
            reflectors,
        })
    }
}

fn parse_square(rows: &[Vec<Entry>], n: usize, mode: NumberMode, what: &str) -> Result<Matrix, CliError> {
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(CliError::Parse(format!("{what} must be {n}x{n}")));
    }
    let parsed = rows
        .iter()
        .map(|r| r.iter().map(|e| e.to_scalar(mode)).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()?;
    Matrix::from_rows(parsed).map_err(|e| CliError::Parse(e.to_string()))
}

pub fn matrix_entries(m: &Matrix) -> Vec<Vec<Entry>> {
    m.to_rows().iter().map(|r| r.iter().map(Entry::from_scalar).collect()).collect()
}

pub fn vector_entries(v: &Vector) -> Vec<Entry> {
    v.coords().iter().map(Entry::from_scalar).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    const IDENTITY_2_0: &str = r#"{"signature": {"p": 2, "q": 0}, "matrix": [["1", 0], [0, "1"]]}"#;

    #[test]
    fn parses_minimal_file() {
        let pf = ProblemFile::from_json(IDENTITY_2_0).unwrap();
        let problem = pf.parse(NumberMode::Exact).unwrap();
        assert!(problem.map.matrix().is_identity());
        assert!(problem.reflectors.is_none());
    }

    #[test]
    fn rejects_bad_shapes_and_numbers() {
        let pf = ProblemFile::from_json(r#"{"signature": {"p": 2, "q": 0}, "matrix": [["1"]]}"#).unwrap();
        assert!(matches!(pf.parse(NumberMode::Exact), Err(CliError::Parse(_))));
        let pf = ProblemFile::from_json(r#"{"signature": {"p": 1, "q": 0}, "matrix": [["1/0"]]}"#).unwrap();
        assert!(matches!(pf.parse(NumberMode::Exact), Err(CliError::Parse(_))));
        assert!(ProblemFile::from_json("{").is_err());
    }

    #[test]
    fn non_isometry_is_reported_with_deviation() {
        let pf = ProblemFile::from_json(r#"{"signature": {"p": 1, "q": 1}, "matrix": [["2", 0], [0, 1]]}"#).unwrap();
        match pf.parse(NumberMode::Exact) {
            Err(CliError::NotOrthogonal(msg)) => assert!(msg.contains('3'), "{msg}"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn tolerance_requires_float_mode() {
        let pf = ProblemFile::from_json(
            r#"{"signature": {"p": 1, "q": 0}, "matrix": [["1"]], "tolerance": "1e-6"}"#,
        )
        .unwrap();
        assert!(pf.number_mode(None).is_err());
        let pf = ProblemFile::from_json(
            r#"{"signature": {"p": 1, "q": 0}, "matrix": [[1.0]], "mode": "float", "tolerance": 1e-6}"#,
        )
        .unwrap();
        assert_eq!(pf.number_mode(None).unwrap(), NumberMode::Float { tolerance: 1e-6 });
    }
}
