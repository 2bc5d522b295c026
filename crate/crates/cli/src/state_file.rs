//! JSON state files:
//! `{"dims": [2, 2], "kind": "pure" | "density", "data": [[re, im], ...]}`.
//! Density data is row-major. Norm, trace, Hermiticity and positivity are
//! checked at [`INPUT_TOLERANCE`] before anything else runs.

use std::path::Path;

use polygamy_core::linalg::{Complex64, ComplexMatrix};
use polygamy_core::states::{DensityMatrix, PureState, SystemLayout};
use serde::Deserialize;

use crate::Failure;

pub const INPUT_TOLERANCE: f64 = 1e-8;

#[derive(Debug, Deserialize)]
#[serde(rename_all = "lowercase")]
enum Kind {
    Pure,
    Density,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct StateFile {
    dims: Vec<usize>,
    kind: Kind,
    data: Vec<[f64; 2]>,
}

pub(crate) fn load(path: &Path) -> Result<DensityMatrix, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::input("input", format!("{}: {e}", path.display())))?;
    parse(&text)
}

fn parse(text: &str) -> Result<DensityMatrix, Failure> {
    let file: StateFile = serde_json::from_str(text).map_err(|e| Failure::input("parse", e.to_string()))?;
    let layout = SystemLayout::new(file.dims)?;
    let data: Vec<Complex64> = file.data.iter().map(|&[re, im]| Complex64::new(re, im)).collect();
    let dim = layout.total_dim();
    match file.kind {
        Kind::Pure => Ok(PureState::with_tolerance(data, layout, INPUT_TOLERANCE)?.density()),
        Kind::Density => {
            if data.len() != dim * dim {
                return Err(Failure::input(
                    "invalid_state",
                    format!("{} entries for a {dim}x{dim} density matrix", data.len()),
                ));
            }
            let matrix = ComplexMatrix::new(dim, dim, data)?;
            Ok(DensityMatrix::with_tolerance(matrix, layout, INPUT_TOLERANCE)?)
        }
    }
}
