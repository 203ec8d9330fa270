//! File formats.
//!
//! * state vector, JSON: `[[re, im], …]` in lexicographic element order
//! * state vector, CSV: header `index,re,im`, one row per amplitude
//! * density matrix, JSON: `{"dim": d, "entries": [[re, im], …]}`, row-major
//! * density matrix, CSV: header `row,col,re,im`
//! * Husimi table, CSV: header `g_coords,lambda_coords,Q`; coordinates are
//!   space-separated, e.g. `1 0,0 1,0.25`
//!
//! Floats are written in shortest round-trip form, so reading a file this
//! module wrote and writing it again reproduces the same bytes.

use std::fmt::Write as _;
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Result, WehrlError};
use crate::husimi::HusimiTable;
use crate::state::{DensityMatrix, StateVector};

fn pairs(values: &[Complex64]) -> Vec<[f64; 2]> {
    values.iter().map(|c| [c.re, c.im]).collect()
}

fn unpairs(values: &[[f64; 2]]) -> Vec<Complex64> {
    values
        .iter()
        .map(|[re, im]| Complex64::new(*re, *im))
        .collect()
}

pub fn state_to_json(psi: &StateVector) -> String {
    serde_json::to_string(&pairs(psi.amplitudes())).expect("finite floats serialize")
}

pub fn state_from_json(text: &str) -> Result<StateVector> {
    let raw: Vec<[f64; 2]> = serde_json::from_str(text)?;
    StateVector::new(unpairs(&raw))
}

pub fn state_to_csv(psi: &StateVector) -> String {
    let mut out = String::from("index,re,im\n");
    for (i, a) in psi.amplitudes().iter().enumerate() {
        writeln!(out, "{i},{:?},{:?}", a.re, a.im).expect("write to string");
    }
    out
}

pub fn state_from_csv(text: &str) -> Result<StateVector> {
    let mut amplitudes = Vec::new();
    for (line_no, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || (line_no == 0 && line.starts_with("index")) {
            continue;
        }
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        let bad = || {
            WehrlError::Parse(format!(
                "line {}: expected `index,re,im`, got {line:?}",
                line_no + 1
            ))
        };
        if fields.len() != 3 {
            return Err(bad());
        }
        let index: usize = fields[0].parse().map_err(|_| bad())?;
        if index != amplitudes.len() {
            return Err(WehrlError::Parse(format!(
                "line {}: index {index} out of order",
                line_no + 1
            )));
        }
        let re: f64 = fields[1].parse().map_err(|_| bad())?;
        let im: f64 = fields[2].parse().map_err(|_| bad())?;
        amplitudes.push(Complex64::new(re, im));
    }
    StateVector::new(amplitudes)
}

#[derive(Debug, Serialize, Deserialize)]
struct DensityFile {
    dim: usize,
    entries: Vec<[f64; 2]>,
}

pub fn density_to_json(rho: &DensityMatrix) -> String {
    let m = rho.matrix();
    let entries: Vec<Complex64> = (0..rho.dim())
        .flat_map(|i| (0..rho.dim()).map(move |j| m[(i, j)]))
        .collect();
    serde_json::to_string(&DensityFile {
        dim: rho.dim(),
        entries: pairs(&entries),
    })
    .expect("finite floats serialize")
}

pub fn density_from_json(text: &str) -> Result<DensityMatrix> {
    let file: DensityFile = serde_json::from_str(text)?;
    DensityMatrix::from_row_slice(file.dim, &unpairs(&file.entries))
}

/// Density matrix as CSV: header `row,col,re,im`, row-major.
pub fn density_to_csv(rho: &DensityMatrix) -> String {
    let mut out = String::from("row,col,re,im\n");
    let m = rho.matrix();
    for i in 0..rho.dim() {
        for j in 0..rho.dim() {
            writeln!(out, "{i},{j},{:?},{:?}", m[(i, j)].re, m[(i, j)].im)
                .expect("write to string");
        }
    }
    out
}

fn space_joined(coords: &[usize]) -> String {
    coords
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn husimi_to_csv(table: &HusimiTable) -> String {
    let mut out = String::from("g_coords,lambda_coords,Q\n");
    for (i, q) in table.values().iter().enumerate() {
        let z = table.group().point_at(i);
        writeln!(
            out,
            "{},{},{:?}",
            space_joined(z.g.coords()),
            space_joined(z.lambda.coords()),
            q
        )
        .expect("write to string");
    }
    out
}

#[derive(Debug, Serialize)]
struct HusimiRow {
    g: Vec<usize>,
    lambda: Vec<usize>,
    q: f64,
}

pub fn husimi_to_json(table: &HusimiTable) -> String {
    let rows: Vec<HusimiRow> = table
        .values()
        .iter()
        .enumerate()
        .map(|(i, &q)| {
            let z = table.group().point_at(i);
            HusimiRow {
                g: z.g.coords().to_vec(),
                lambda: z.lambda.coords().to_vec(),
                q,
            }
        })
        .collect();
    serde_json::to_string_pretty(&rows).expect("finite floats serialize")
}

/// A state read from disk: either a pure vector or a density matrix.
#[derive(Debug, Clone, PartialEq)]
pub enum StateInput {
    Pure(StateVector),
    Mixed(DensityMatrix),
}

impl StateInput {
    pub fn density(&self) -> DensityMatrix {
        match self {
            StateInput::Pure(psi) => psi.projector(),
            StateInput::Mixed(rho) => rho.clone(),
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            StateInput::Pure(psi) => psi.dim(),
            StateInput::Mixed(rho) => rho.dim(),
        }
    }
}

/// Detects the format by shape: a JSON array is a state vector, a JSON
/// object is a density matrix, anything else is parsed as state CSV.
pub fn parse_state_text(text: &str) -> Result<StateInput> {
    match text.trim_start().chars().next() {
        Some('[') => state_from_json(text).map(StateInput::Pure),
        Some('{') => density_from_json(text).map(StateInput::Mixed),
        _ => state_from_csv(text).map(StateInput::Pure),
    }
}

pub fn read_state_file(path: &Path) -> Result<StateInput> {
    parse_state_text(&std::fs::read_to_string(path)?)
}
