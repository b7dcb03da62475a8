//! JSON scenario files and report documents.
//!
//! Complex numbers are `[re, im]` pairs and matrices are row-major nested
//! arrays of them. Reals are written in the shortest decimal form that
//! parses back to the identical `f64`, so emit-then-parse is bit exact.

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::linalg::ComplexMatrix;
use crate::optimizer::{FixedParts, OptimizationResult, SweepSummary};
use crate::qstate::{CompositeDims, DensityOperator, PureState};
use crate::tradeoff::{
    ConservedTriple, Evolution, NoncommReport, Scenario, TradeoffReport, Verdict,
};

pub const SCHEMA_VERSION: u32 = 1;

type MatrixField = Vec<Vec<[f64; 2]>>;
type VectorField = Vec<[f64; 2]>;

/// Error tied to a location in a document.
#[derive(Debug, Clone, PartialEq)]
pub struct DocumentError {
    /// Dotted field path, e.g. `psi1` or `h_a[1]`; `.` for the root.
    pub path: String,
    pub message: String,
}

impl DocumentError {
    fn at(path: impl Into<String>, message: impl fmt::Display) -> Self {
        Self {
            path: path.into(),
            message: message.to_string(),
        }
    }
}

impl fmt::Display for DocumentError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at {}: {}", self.path, self.message)
    }
}

impl std::error::Error for DocumentError {}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DimsField {
    pub a: usize,
    pub b: usize,
}

/// On-disk scenario.
///
/// Hamiltonian form: `h_a`, `h_b`, `h_int` (evolution `exp(-iHT)`).
/// Conserved-quantity form: `l_a`, `l_b`, `l_int` and an explicit unitary `u`.
/// Fixed-part files for optimisation give `h_a`, `h_b` and may omit `h_int`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    #[serde(default = "schema_version")]
    pub schema_version: u32,
    pub dims: DimsField,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h_a: Option<MatrixField>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h_b: Option<MatrixField>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h_int: Option<MatrixField>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub l_a: Option<MatrixField>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub l_b: Option<MatrixField>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub l_int: Option<MatrixField>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub u: Option<MatrixField>,
    pub psi0: VectorField,
    pub psi1: VectorField,
    pub sigma: MatrixField,
    pub time: f64,
}

fn schema_version() -> u32 {
    SCHEMA_VERSION
}

fn matrix_to_field(m: &ComplexMatrix) -> MatrixField {
    m.to_rows()
        .into_iter()
        .map(|r| r.into_iter().map(|z| [z.re, z.im]).collect())
        .collect()
}

fn vector_to_field(v: &[Complex64]) -> VectorField {
    v.iter().map(|z| [z.re, z.im]).collect()
}

fn field_to_matrix(
    path: &str,
    f: &MatrixField,
    dim: usize,
) -> Result<ComplexMatrix, DocumentError> {
    if f.len() != dim {
        return Err(DocumentError::at(
            path,
            format!("expected {dim} rows, found {}", f.len()),
        ));
    }
    for (i, row) in f.iter().enumerate() {
        if row.len() != dim {
            return Err(DocumentError::at(
                format!("{path}[{i}]"),
                format!("expected {dim} entries, found {}", row.len()),
            ));
        }
    }
    let rows: Vec<Vec<Complex64>> = f
        .iter()
        .map(|r| r.iter().map(|&[re, im]| Complex64::new(re, im)).collect())
        .collect();
    ComplexMatrix::from_rows(&rows).map_err(|e| DocumentError::at(path, e))
}

fn field_to_state(path: &str, f: &VectorField, dim: usize) -> Result<PureState, DocumentError> {
    if f.len() != dim {
        return Err(DocumentError::at(
            path,
            format!("expected {dim} amplitudes, found {}", f.len()),
        ));
    }
    PureState::new(f.iter().map(|&[re, im]| Complex64::new(re, im)).collect())
        .map_err(|e| DocumentError::at(path, e))
}

fn require<'a>(path: &str, f: &'a Option<MatrixField>) -> Result<&'a MatrixField, DocumentError> {
    f.as_ref()
        .ok_or_else(|| DocumentError::at(path, "missing field"))
}

fn hermitian(path: &str, f: &MatrixField, dim: usize) -> Result<ComplexMatrix, DocumentError> {
    let m = field_to_matrix(path, f, dim)?;
    m.ensure_hermitian()
        .map_err(|e| DocumentError::at(path, e))?;
    Ok(m)
}

impl ScenarioFile {
    /// Parses JSON text; syntax and type errors carry the offending path.
    pub fn parse(text: &str) -> Result<Self, DocumentError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            DocumentError::at(path, e.into_inner())
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("scenario files always serialize")
    }

    pub fn from_scenario(s: &Scenario) -> Self {
        let c = &s.conserved;
        let (a, b, int) = (
            Some(matrix_to_field(&c.part_a)),
            Some(matrix_to_field(&c.part_b)),
            Some(matrix_to_field(&c.part_int)),
        );
        let mut file = Self {
            schema_version: SCHEMA_VERSION,
            dims: DimsField {
                a: s.dims.a,
                b: s.dims.b,
            },
            h_a: None,
            h_b: None,
            h_int: None,
            l_a: None,
            l_b: None,
            l_int: None,
            u: None,
            psi0: vector_to_field(s.psi0.amplitudes()),
            psi1: vector_to_field(s.psi1.amplitudes()),
            sigma: matrix_to_field(s.sigma.matrix()),
            time: s.time,
        };
        match &s.evolution {
            Evolution::Generated => {
                file.h_a = a;
                file.h_b = b;
                file.h_int = int;
            }
            Evolution::Explicit(u) => {
                file.l_a = a;
                file.l_b = b;
                file.l_int = int;
                file.u = Some(matrix_to_field(u));
            }
        }
        file
    }

    fn check_version(&self) -> Result<(), DocumentError> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(DocumentError::at(
                "schema_version",
                format!(
                    "unsupported version {}, expected {SCHEMA_VERSION}",
                    self.schema_version
                ),
            ));
        }
        Ok(())
    }

    fn common(
        &self,
    ) -> Result<(CompositeDims, PureState, PureState, DensityOperator), DocumentError> {
        self.check_version()?;
        let dims = CompositeDims::new(self.dims.a, self.dims.b)
            .map_err(|e| DocumentError::at("dims", e))?;
        let psi0 = field_to_state("psi0", &self.psi0, dims.a)?;
        let psi1 = field_to_state("psi1", &self.psi1, dims.a)?;
        let overlap = psi0
            .inner(&psi1)
            .map_err(|e| DocumentError::at("psi1", e))?
            .norm();
        if overlap > crate::tradeoff::ORTHOGONALITY_TOL {
            return Err(DocumentError::at("psi1", Error::NotOrthogonal { overlap }));
        }
        let sigma = DensityOperator::new(field_to_matrix("sigma", &self.sigma, dims.b)?)
            .map_err(|e| DocumentError::at("sigma", e))?;
        if !(self.time.is_finite() && self.time >= 0.0) {
            return Err(DocumentError::at("time", "must be finite and nonnegative"));
        }
        Ok((dims, psi0, psi1, sigma))
    }

    /// Builds and validates the scenario the file describes.
    pub fn to_scenario(&self) -> Result<Scenario, DocumentError> {
        let (dims, psi0, psi1, sigma) = self.common()?;
        let has_h = self.h_a.is_some() || self.h_b.is_some() || self.h_int.is_some();
        let has_l = self.l_a.is_some() || self.l_b.is_some() || self.l_int.is_some();
        let (conserved, evolution) = match (has_h, has_l) {
            (true, true) => {
                return Err(DocumentError::at(
                    ".",
                    "give either h_a/h_b/h_int or l_a/l_b/l_int with u, not both",
                ))
            }
            (false, false) => {
                return Err(DocumentError::at("h_a", "missing field"));
            }
            (true, false) => {
                if self.u.is_some() {
                    return Err(DocumentError::at(
                        "u",
                        "an explicit unitary needs the l_a/l_b/l_int form",
                    ));
                }
                let triple = ConservedTriple::new(
                    hermitian("h_a", require("h_a", &self.h_a)?, dims.a)?,
                    hermitian("h_b", require("h_b", &self.h_b)?, dims.b)?,
                    hermitian("h_int", require("h_int", &self.h_int)?, dims.total())?,
                )
                .map_err(|e| DocumentError::at(".", e))?;
                (triple, Evolution::Generated)
            }
            (false, true) => {
                let triple = ConservedTriple::new(
                    hermitian("l_a", require("l_a", &self.l_a)?, dims.a)?,
                    hermitian("l_b", require("l_b", &self.l_b)?, dims.b)?,
                    hermitian("l_int", require("l_int", &self.l_int)?, dims.total())?,
                )
                .map_err(|e| DocumentError::at(".", e))?;
                let u = field_to_matrix("u", require("u", &self.u)?, dims.total())?;
                u.ensure_unitary(crate::qstate::UNITARY_TOL)
                    .map_err(|e| DocumentError::at("u", e))?;
                (triple, Evolution::Explicit(u))
            }
        };
        Scenario::new(dims, conserved, psi0, psi1, sigma, self.time, evolution)
            .map_err(|e| DocumentError::at(".", e))
    }

    /// Reads the parts held fixed during optimisation; `h_int` is ignored.
    pub fn to_fixed_parts(&self) -> Result<FixedParts, DocumentError> {
        let (dims, psi0, psi1, sigma) = self.common()?;
        if self.u.is_some() || self.l_a.is_some() {
            return Err(DocumentError::at(
                "h_a",
                "optimisation needs a Hamiltonian file (h_a, h_b)",
            ));
        }
        let h_a = hermitian("h_a", require("h_a", &self.h_a)?, dims.a)?;
        let h_b = hermitian("h_b", require("h_b", &self.h_b)?, dims.b)?;
        FixedParts::new(dims, h_a, h_b, psi0, psi1, sigma, self.time)
            .map_err(|e| DocumentError::at(".", e))
    }
}

/// Which checker produced a [`CheckOutcome`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckMode {
    /// `L = H` for Hamiltonian evolution.
    Energy,
    /// Explicit unitary with a checked conserved quantity.
    Conserved,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub mode: CheckMode,
    pub report: TradeoffReport,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "body", rename_all = "snake_case")]
pub enum ReportBody {
    Check(CheckOutcome),
    Noncomm(NoncommReport),
    Sweep(SweepSummary),
    Optimization(OptimizationResult),
}

/// Machine-readable output of every command.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub schema_version: u32,
    pub report: ReportBody,
}

impl ReportDocument {
    pub fn new(report: ReportBody) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            report,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }

    pub fn parse(text: &str) -> Result<Self, DocumentError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            DocumentError::at(path, e.into_inner())
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tradeoff::build_spin_demo;

    fn spin_file() -> ScenarioFile {
        let s =
            build_spin_demo(Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0), 0.1, 3.0).unwrap();
        ScenarioFile::from_scenario(&s)
    }

    #[test]
    fn scenario_file_round_trip() {
        let f = spin_file();
        let back = ScenarioFile::parse(&f.to_json()).unwrap();
        assert_eq!(back, f);
        let s = back.to_scenario().unwrap();
        assert_eq!(ScenarioFile::from_scenario(&s), f);
    }

    #[test]
    fn non_orthogonal_encoding_is_reported_at_psi1() {
        let mut f = spin_file();
        f.psi1 = f.psi0.clone();
        assert_eq!(f.to_scenario().unwrap_err().path, "psi1");
    }

    #[test]
    fn structural_errors_name_the_path() {
        let mut v: serde_json::Value = serde_json::from_str(&spin_file().to_json()).unwrap();
        v["h_a"][1][0] = serde_json::json!("oops");
        let err = ScenarioFile::parse(&v.to_string()).unwrap_err();
        assert_eq!(err.path, "h_a[1][0]");

        let mut f = spin_file();
        f.h_b.as_mut().unwrap()[0].pop();
        assert_eq!(f.to_scenario().unwrap_err().path, "h_b[0]");

        let mut f = spin_file();
        f.h_int = None;
        assert_eq!(f.to_scenario().unwrap_err().path, "h_int");
        assert!(f.to_fixed_parts().is_ok());

        let mut f = spin_file();
        f.h_a.as_mut().unwrap()[0][1] = [0.3, 0.0];
        assert_eq!(f.to_scenario().unwrap_err().path, "h_a");

        let mut f = spin_file();
        f.psi0 = vec![[1.0, 0.0], [1.0, 0.0]];
        assert_eq!(f.to_scenario().unwrap_err().path, "psi0");
    }

    #[test]
    fn unknown_fields_are_rejected() {
        let mut v: serde_json::Value = serde_json::from_str(&spin_file().to_json()).unwrap();
        v["extra"] = serde_json::json!(1);
        assert!(ScenarioFile::parse(&v.to_string()).is_err());
    }
}
