//! System file format.
//!
//! A JSON object with row-major numeric arrays:
//!
//! ```json
//! {"kind": "state_space", "time_domain": "discrete",
//!  "A": [[0.5]], "B": [[1]], "C": [[1]], "D": [[0]]}
//! ```
//!
//! `state_space` needs `A`, `B` and `C`; `D` defaults to zero. `descriptor`
//! needs `A`; `E` defaults to the identity and `B`, `C`, `D` are optional.

use std::path::Path;

use ftnorm::pencil::DescriptorPair;
use ftnorm::{RealMatrix, StateSpace};
use serde::Deserialize;

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    StateSpace,
    Descriptor,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TimeDomain {
    #[default]
    Discrete,
    Continuous,
}

type Rows = Vec<Vec<f64>>;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSystem {
    kind: Kind,
    #[serde(default)]
    time_domain: TimeDomain,
    #[serde(rename = "A")]
    a: Rows,
    #[serde(rename = "B")]
    b: Option<Rows>,
    #[serde(rename = "C")]
    c: Option<Rows>,
    #[serde(rename = "D")]
    d: Option<Rows>,
    #[serde(rename = "E")]
    e: Option<Rows>,
}

/// Validated system file.
#[derive(Debug, Clone, PartialEq)]
pub struct SystemFile {
    pub kind: Kind,
    pub time_domain: TimeDomain,
    pub a: RealMatrix,
    pub e: RealMatrix,
    pub b: Option<RealMatrix>,
    pub c: Option<RealMatrix>,
    pub d: Option<RealMatrix>,
}

fn to_matrix(name: &str, rows: &Rows) -> Result<RealMatrix, CliError> {
    let ncols = rows.first().map_or(0, Vec::len);
    if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != ncols) {
        return Err(CliError::Schema(format!(
            "field \"{name}\": row {i} has {} entries, expected {ncols}",
            r.len()
        )));
    }
    if rows.iter().flatten().any(|x| !x.is_finite()) {
        return Err(CliError::Schema(format!("field \"{name}\": non-finite entry")));
    }
    Ok(RealMatrix::from_row_iterator(rows.len(), ncols, rows.iter().flatten().copied()))
}

fn check_shape(name: &str, m: &RealMatrix, rows: usize, cols: usize) -> Result<(), CliError> {
    if m.shape() != (rows, cols) {
        return Err(CliError::Schema(format!(
            "field \"{name}\" is {}x{}, expected {rows}x{cols}",
            m.nrows(),
            m.ncols()
        )));
    }
    Ok(())
}

/// Parses and validates a system document.
pub fn parse_system(text: &str) -> Result<SystemFile, CliError> {
    let raw: RawSystem = serde_json::from_str(text).map_err(|e| CliError::Schema(e.to_string()))?;
    let a = to_matrix("A", &raw.a)?;
    let n = a.nrows();
    check_shape("A", &a, n, n)?;
    let opt = |name: &str, rows: &Option<Rows>| rows.as_ref().map(|r| to_matrix(name, r)).transpose();
    let b = opt("B", &raw.b)?;
    let c = opt("C", &raw.c)?;
    let d = opt("D", &raw.d)?;
    let e = opt("E", &raw.e)?;

    if raw.kind == Kind::StateSpace {
        if b.is_none() {
            return Err(CliError::Schema("missing field \"B\" (required for state_space)".into()));
        }
        if c.is_none() {
            return Err(CliError::Schema("missing field \"C\" (required for state_space)".into()));
        }
        if e.is_some() {
            return Err(CliError::Schema("field \"E\" is only allowed for descriptor systems".into()));
        }
    }
    if let Some(b) = &b {
        check_shape("B", b, n, b.ncols())?;
    }
    if let Some(c) = &c {
        check_shape("C", c, c.nrows(), n)?;
    }
    if let Some(d) = &d {
        let (Some(b), Some(c)) = (&b, &c) else {
            return Err(CliError::Schema("field \"D\" needs both \"B\" and \"C\"".into()));
        };
        check_shape("D", d, c.nrows(), b.ncols())?;
    }
    let e = match e {
        Some(e) => {
            check_shape("E", &e, n, n)?;
            e
        }
        None => RealMatrix::identity(n, n),
    };
    Ok(SystemFile { kind: raw.kind, time_domain: raw.time_domain, a, e, b, c, d })
}

pub fn read_system(path: &Path) -> Result<SystemFile, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    parse_system(&text)
}

impl SystemFile {
    pub fn pencil(&self) -> Result<DescriptorPair, CliError> {
        Ok(DescriptorPair::new(self.e.clone(), self.a.clone())?)
    }

    /// State-space realization for norm computations. Descriptor files are
    /// accepted only with `E = I`.
    pub fn state_space(&self) -> Result<StateSpace, CliError> {
        let n = self.a.nrows();
        if self.e != RealMatrix::identity(n, n) {
            return Err(CliError::Usage("norms need E = I".into()));
        }
        let (Some(b), Some(c)) = (&self.b, &self.c) else {
            return Err(CliError::Usage("norms need \"B\" and \"C\"".into()));
        };
        let d = self.d.clone().unwrap_or_else(|| RealMatrix::zeros(c.nrows(), b.ncols()));
        Ok(StateSpace::new(self.a.clone(), b.clone(), c.clone(), d)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_state_space() {
        let s = parse_system(
            r#"{"kind":"state_space","time_domain":"discrete","A":[[0.5]],"B":[[1]],"C":[[1]],"D":[[0]]}"#,
        )
        .unwrap();
        assert_eq!(s.a[(0, 0)], 0.5);
        assert_eq!(s.state_space().unwrap().states(), 1);
    }

    #[test]
    fn missing_a_names_the_field() {
        let err = parse_system(r#"{"kind":"state_space","B":[[1]],"C":[[1]]}"#).unwrap_err();
        assert!(err.to_string().contains("`A`"), "{err}");
    }

    #[test]
    fn descriptor_defaults_to_identity() {
        let s = parse_system(r#"{"kind":"descriptor","A":[[1,2],[3,4]]}"#).unwrap();
        assert_eq!(s.e, RealMatrix::identity(2, 2));
        assert_eq!(s.time_domain, TimeDomain::Discrete);
    }

    #[test]
    fn row_major_layout() {
        let s = parse_system(r#"{"kind":"descriptor","A":[[1,2],[3,4]]}"#).unwrap();
        assert_eq!(s.a[(0, 1)], 2.0);
        assert_eq!(s.a[(1, 0)], 3.0);
    }

    #[test]
    fn rejects_bad_shapes() {
        for text in [
            r#"{"kind":"descriptor","A":[[1,2],[3]]}"#,
            r#"{"kind":"descriptor","A":[[1,2]]}"#,
            r#"{"kind":"descriptor","A":[[1]],"E":[[1,0],[0,1]]}"#,
            r#"{"kind":"state_space","A":[[1]],"B":[[1],[2]],"C":[[1]]}"#,
            r#"{"kind":"state_space","A":[[1]],"B":[[1]],"C":[[1]],"D":[[0,0]]}"#,
            r#"{"kind":"state_space","A":[[1]],"C":[[1]]}"#,
            r#"{"kind":"state_space","A":[[1]],"B":[[1]],"C":[[1]],"F":1}"#,
            r#"{"kind":"state_space","A":[[1e999]],"B":[[1]],"C":[[1]]}"#,
            "not json",
        ] {
            assert!(parse_system(text).is_err(), "{text}");
        }
    }
}
