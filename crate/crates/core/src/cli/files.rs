use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::hilbert::VectorFamily;
use crate::numerics::PNorm;
use crate::schauder::{PNormSpace, SchauderFramePair};

/// Anything that stops a command before a report exists.
#[derive(Debug)]
pub enum CliError {
    Io { path: PathBuf, message: String },
    /// Malformed file. `line` and `column` are set for JSON syntax errors;
    /// `field` names the offending entry for shape errors.
    Parse { path: PathBuf, line: Option<usize>, column: Option<usize>, field: Option<String>, message: String },
    Domain(Error),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Io { path, message } => write!(f, "{}: {message}", path.display()),
            CliError::Parse { path, line, column, field, message } => {
                write!(f, "parse error in {}", path.display())?;
                if let (Some(l), Some(c)) = (line, column) {
                    write!(f, " at line {l}, column {c}")?;
                }
                if let Some(field) = field {
                    write!(f, " in field `{field}`")?;
                }
                write!(f, ": {message}")
            }
            CliError::Domain(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Domain(e)
    }
}

/// On-disk family: vectors plus optional dual frame, functionals and norm.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyFile {
    pub dimension: usize,
    pub vectors: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dual: Option<Vec<Vec<f64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub functionals: Option<Vec<Vec<f64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<PNorm>,
}

impl FamilyFile {
    pub fn from_family(f: &VectorFamily) -> Self {
        Self { dimension: f.dim(), vectors: f.vectors().to_vec(), dual: None, functionals: None, p: None }
    }

    pub fn from_pair(fr: &SchauderFramePair) -> Self {
        Self {
            dimension: fr.dim(),
            vectors: fr.x_vectors().to_vec(),
            dual: None,
            functionals: Some(fr.f_functionals().to_vec()),
            p: Some(fr.space().p),
        }
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Io { path: path.to_path_buf(), message: e.to_string() })?;
        Self::parse(&text, path)
    }

    pub fn parse(text: &str, path: &Path) -> Result<Self, CliError> {
        let file: FamilyFile = serde_json::from_str(text).map_err(|e| CliError::Parse {
            path: path.to_path_buf(),
            line: Some(e.line()),
            column: Some(e.column()),
            field: None,
            message: e.to_string(),
        })?;
        file.validate(path)?;
        Ok(file)
    }

    fn validate(&self, path: &Path) -> Result<(), CliError> {
        let bad = |field: String, message: String| CliError::Parse {
            path: path.to_path_buf(),
            line: None,
            column: None,
            field: Some(field),
            message,
        };
        if self.dimension == 0 {
            return Err(bad("dimension".into(), "must be at least 1".into()));
        }
        if self.vectors.is_empty() {
            return Err(bad("vectors".into(), "must not be empty".into()));
        }
        let groups = [("vectors", Some(&self.vectors)), ("dual", self.dual.as_ref()), ("functionals", self.functionals.as_ref())];
        for (name, rows) in groups {
            let Some(rows) = rows else { continue };
            if rows.len() != self.vectors.len() {
                return Err(bad(
                    name.into(),
                    format!("has {} rows but `vectors` has {}", rows.len(), self.vectors.len()),
                ));
            }
            for (i, row) in rows.iter().enumerate() {
                if row.len() != self.dimension {
                    return Err(bad(
                        format!("{name}[{i}]"),
                        format!("row has length {}, expected dimension {}", row.len(), self.dimension),
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn family(&self) -> Result<VectorFamily, Error> {
        VectorFamily::new(self.dimension, self.vectors.clone())
    }

    pub fn dual_family(&self) -> Result<Option<VectorFamily>, Error> {
        self.dual.as_ref().map(|d| VectorFamily::new(self.dimension, d.clone())).transpose()
    }

    /// Schauder pair from `vectors` and `functionals`, with `p` taken from
    /// `override_p`, then the file, then 2.
    pub fn pair(&self, override_p: Option<PNorm>) -> Result<SchauderFramePair, Error> {
        let functionals = self.functionals.clone().ok_or_else(|| {
            Error::InvalidParameter("base file needs `functionals` for a Schauder certificate".into())
        })?;
        let p = override_p.or(self.p).unwrap_or_default();
        SchauderFramePair::new(PNormSpace::new(self.dimension, p)?, self.vectors.clone(), functionals)
    }

    pub fn write(&self, path: &Path) -> Result<(), CliError> {
        let text = serde_json::to_string_pretty(self).expect("plain data serializes");
        fs::write(path, text + "\n").map_err(|e| CliError::Io { path: path.to_path_buf(), message: e.to_string() })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_optional_fields() {
        let f = FamilyFile::parse(
            r#"{"dimension": 2, "vectors": [[1, 0], [0, 1]], "functionals": [[1, 0], [0, 1]], "p": "inf"}"#,
            Path::new("x.json"),
        )
        .unwrap();
        assert_eq!(f.p, Some(PNorm::Inf));
        assert_eq!(f.pair(None).unwrap().space().p, PNorm::Inf);
        assert_eq!(f.pair(Some(PNorm::One)).unwrap().space().p, PNorm::One);
    }

    #[test]
    fn reports_bad_row_with_field() {
        let err = FamilyFile::parse(r#"{"dimension": 2, "vectors": [[1, 0], [0, 1, 2]]}"#, Path::new("x.json"))
            .unwrap_err();
        match err {
            CliError::Parse { field, .. } => assert_eq!(field.as_deref(), Some("vectors[1]")),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn reports_syntax_error_position() {
        let err = FamilyFile::parse("{\n  \"dimension\": 2,\n  \"vectors\": [[1, 0],]\n}", Path::new("x.json"))
            .unwrap_err();
        match err {
            CliError::Parse { line, .. } => assert_eq!(line, Some(3)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn floats_round_trip_exactly() {
        let v = vec![vec![0.1 + 0.2, 1.0 / 3.0, std::f64::consts::PI, 1e-300]];
        let f = FamilyFile { dimension: 4, vectors: v.clone(), dual: None, functionals: None, p: None };
        let text = serde_json::to_string(&f).unwrap();
        assert_eq!(FamilyFile::parse(&text, Path::new("x")).unwrap().vectors, v);
    }
}
