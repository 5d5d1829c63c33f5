//! The JSON model-file schema and its conversion into library objects.
//!
//! Exactly one mode per file. Matrices are row-major nested arrays; structure
//! constants are a list of `{i, j, k, value}` entries meaning
//! `[E_i, E_j] contains value * E_k` (one orientation suffices, the other is
//! filled in by antisymmetry; supplying both inconsistently draws a warning).

use nalgebra::{DMatrix, DVector};
use paracontact::structure::StructureReport;
use paracontact::{
    levi_civita, ApapStructure, Connection, CubicTensor, FrameModel, FundamentalTensor,
    LieAlgebraModel, LieExample,
};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BracketEntry {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub value: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case", deny_unknown_fields)]
pub enum ModelFile {
    Lie {
        dim: usize,
        g: Vec<Vec<f64>>,
        phi: Vec<Vec<f64>>,
        xi: Vec<f64>,
        eta: Vec<f64>,
        structure_constants: Vec<BracketEntry>,
    },
    RawF {
        dim: usize,
        g: Vec<Vec<f64>>,
        phi: Vec<Vec<f64>>,
        xi: Vec<f64>,
        eta: Vec<f64>,
        #[serde(rename = "F_components")]
        f_components: Vec<f64>,
    },
    Example {
        n: usize,
        a: Vec<f64>,
    },
}

/// Everything the pipeline needs, whatever the input mode was.
pub struct LoadedModel {
    pub mode: &'static str,
    pub structure: ApapStructure,
    pub algebra: Option<LieAlgebraModel>,
    pub connection: Option<Connection>,
    pub fundamental: FundamentalTensor,
    pub notes: Vec<String>,
}

/// Why a model file could not be turned into a pipeline input.
#[derive(Debug)]
pub enum LoadError {
    /// Malformed arrays, inconsistent dimensions, non-finite numbers
    /// (exit code 3).
    Shape(String),
    /// Semantically invalid input: failed axioms, Jacobi violation,
    /// inadmissible tensor (exit code 2). Carries the per-axiom residuals
    /// when the structure itself was the problem.
    Validation {
        error: paracontact::Error,
        report: Option<StructureReport>,
    },
}

impl LoadError {
    fn invalid(error: paracontact::Error) -> Self {
        LoadError::Validation {
            error,
            report: None,
        }
    }
}

impl std::fmt::Display for LoadError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            LoadError::Shape(msg) => write!(f, "parse error: {msg}"),
            LoadError::Validation { error, report } => {
                write!(f, "validation failure: {error}")?;
                if let Some(r) = report {
                    write!(
                        f,
                        "\n  axiom residuals: phi.xi={:.3e} phi^2={:.3e} eta.phi={:.3e} \
                         eta(xi)={:.3e} tr(phi)={:.3e} compat(phi)={:.3e} compat(xi)={:.3e}",
                        r.phi_xi,
                        r.phi_square,
                        r.eta_phi,
                        r.eta_xi,
                        r.trace_phi,
                        r.compat_phi,
                        r.compat_xi
                    )?;
                }
                Ok(())
            }
        }
    }
}

fn to_matrix(rows: &[Vec<f64>], dim: usize, name: &str) -> Result<DMatrix<f64>, LoadError> {
    if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
        return Err(LoadError::Shape(format!(
            "field '{name}' must be a {dim}x{dim} row-major matrix"
        )));
    }
    let m = DMatrix::from_fn(dim, dim, |i, j| rows[i][j]);
    if m.iter().any(|v| !v.is_finite()) {
        return Err(LoadError::Shape(format!(
            "field '{name}' contains non-finite numbers"
        )));
    }
    Ok(m)
}

fn to_vector(v: &[f64], dim: usize, name: &str) -> Result<DVector<f64>, LoadError> {
    if v.len() != dim {
        return Err(LoadError::Shape(format!(
            "field '{name}' must have {dim} entries, got {}",
            v.len()
        )));
    }
    if v.iter().any(|x| !x.is_finite()) {
        return Err(LoadError::Shape(format!(
            "field '{name}' contains non-finite numbers"
        )));
    }
    Ok(DVector::from_column_slice(v))
}

fn build_structure(
    dim: usize,
    g: &[Vec<f64>],
    phi: &[Vec<f64>],
    xi: &[f64],
    eta: &[f64],
) -> Result<ApapStructure, LoadError> {
    let g = to_matrix(g, dim, "g")?;
    let phi = to_matrix(phi, dim, "phi")?;
    let xi = to_vector(xi, dim, "xi")?;
    let eta = to_vector(eta, dim, "eta")?;
    let model = FrameModel::new(g).map_err(LoadError::invalid)?;
    let structure = ApapStructure::new(model, phi, xi, eta).map_err(LoadError::invalid)?;
    let report = structure.validate();
    if !report.valid {
        return Err(LoadError::Validation {
            error: paracontact::Error::InvalidStructure {
                residual: report.worst(),
            },
            report: Some(report),
        });
    }
    Ok(structure)
}

fn with_connection(
    mode: &'static str,
    structure: ApapStructure,
    alg: LieAlgebraModel,
    notes: Vec<String>,
) -> Result<LoadedModel, LoadError> {
    let connection = levi_civita(&alg, structure.model()).map_err(LoadError::invalid)?;
    let fundamental =
        FundamentalTensor::from_connection(&connection, &structure).map_err(LoadError::invalid)?;
    Ok(LoadedModel {
        mode,
        structure,
        algebra: Some(alg),
        connection: Some(connection),
        fundamental,
        notes,
    })
}

impl ModelFile {
    pub fn load(&self) -> Result<LoadedModel, LoadError> {
        match self {
            ModelFile::Lie {
                dim,
                g,
                phi,
                xi,
                eta,
                structure_constants,
            } => {
                let structure = build_structure(*dim, g, phi, xi, eta)?;
                let entries: Vec<(usize, usize, usize, f64)> = structure_constants
                    .iter()
                    .map(|e| (e.i, e.j, e.k, e.value))
                    .collect();
                if entries.iter().any(|e| !e.3.is_finite()) {
                    return Err(LoadError::Shape(
                        "structure_constants contain non-finite numbers".into(),
                    ));
                }
                if entries.iter().any(|e| e.0 == e.1 && e.3 != 0.0) {
                    return Err(LoadError::Shape(
                        "structure_constants entries with i = j must vanish".into(),
                    ));
                }
                let (alg, inconsistency) =
                    LieAlgebraModel::from_brackets(*dim, &entries).map_err(LoadError::invalid)?;
                let mut notes = Vec::new();
                if inconsistency > 1e-9 {
                    notes.push(format!(
                        "warning: bracket list supplied both orientations inconsistently \
                         (max deviation {inconsistency:.3e}); antisymmetrized"
                    ));
                }
                with_connection("lie", structure, alg, notes)
            }
            ModelFile::RawF {
                dim,
                g,
                phi,
                xi,
                eta,
                f_components,
            } => {
                if f_components.len() != dim * dim * dim {
                    return Err(LoadError::Shape(format!(
                        "F_components must have {} entries, got {}",
                        dim * dim * dim,
                        f_components.len()
                    )));
                }
                if f_components.iter().any(|v| !v.is_finite()) {
                    return Err(LoadError::Shape(
                        "F_components contain non-finite numbers".into(),
                    ));
                }
                let structure = build_structure(*dim, g, phi, xi, eta)?;
                let tensor = CubicTensor::from_vec(*dim, f_components.clone())
                    .map_err(LoadError::invalid)?;
                let fundamental = FundamentalTensor::new(tensor, structure.clone())
                    .map_err(LoadError::invalid)?;
                Ok(LoadedModel {
                    mode: "raw_f",
                    structure,
                    algebra: None,
                    connection: None,
                    fundamental,
                    notes: Vec::new(),
                })
            }
            ModelFile::Example { n, a } => {
                let ex =
                    LieExample::new(*n, a.clone()).map_err(|e| LoadError::Shape(e.to_string()))?;
                let (alg, structure) = ex.build().map_err(LoadError::invalid)?;
                let mut notes = vec![format!(
                    "example family member: n = {}, a = {:?}",
                    n,
                    ex.params()
                )];
                if *n == 1 {
                    let expected = ex.expected_class().expect("n = 1");
                    notes.push(format!(
                        "expected class for these parameters: {}",
                        class_label(&expected)
                    ));
                } else {
                    notes.push(
                        "membership for n > 1 is reported as computed (no closed-form \
                         expectation for this family beyond n = 1)"
                            .to_string(),
                    );
                }
                with_connection("example", structure, alg, notes)
            }
        }
    }
}

/// ASCII label for a membership set: `F0`, `F4`, `F4+F9`, ...
pub fn class_label(members: &[usize]) -> String {
    if members.is_empty() {
        "F0".to_string()
    } else {
        members
            .iter()
            .map(|i| format!("F{i}"))
            .collect::<Vec<_>>()
            .join("+")
    }
}
