//! The `TripletSpec` file format.

use std::collections::BTreeSet;

use glaw_core::exactla::{Matrix, Scalar};
use glaw_core::liecore::{FundamentalTriplet, LieAlgebraData, QuadraticForm, Representation};
use glaw_core::Error;
use serde::{Deserialize, Serialize};

/// One nonzero bracket `[e_i, e_j] = Σ c_k e_k`.
pub type StructureEntry = (usize, usize, Vec<(usize, Scalar)>);

/// A fundamental triplet as stored on disk. Rationals are `"p/q"` strings.
///
/// Only one of `[e_i, e_j]` and `[e_j, e_i]` needs to be listed; the missing
/// one is filled in by antisymmetry. Listing both keeps them as given, so an
/// inconsistent file is caught by validation rather than silently repaired.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TripletSpec {
    pub name: String,
    pub dim_g0: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis_names: Option<Vec<String>>,
    pub structure_constants: Vec<StructureEntry>,
    #[serde(rename = "B0")]
    pub b0: Vec<Vec<Scalar>>,
    #[serde(rename = "dim_V")]
    pub dim_v: usize,
    pub rho: Vec<Vec<Vec<Scalar>>>,
}

/// A file that parses as JSON but does not describe a triplet of the stated shape.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShapeError(pub String);

fn shape(msg: impl Into<String>) -> ShapeError {
    ShapeError(msg.into())
}

/// Nonzero brackets `[e_i, e_j]` with `i ≤ j`.
pub fn sparse_structure(g: &LieAlgebraData) -> Vec<StructureEntry> {
    let n = g.dim();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i..n {
            let terms: Vec<(usize, Scalar)> = g
                .bracket_basis(i, j)
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| (k, c.clone()))
                .collect();
            if !terms.is_empty() {
                out.push((i, j, terms));
            }
        }
    }
    out
}

fn dense(m: &Matrix) -> Vec<Vec<Scalar>> {
    m.to_rows()
}

fn square(rows: &[Vec<Scalar>], n: usize, what: &str) -> Result<Matrix, ShapeError> {
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(shape(format!("{what} must be {n}×{n}")));
    }
    Ok(if n == 0 { Matrix::zeros(0, 0) } else { Matrix::from_rows(rows.to_vec()) })
}

impl TripletSpec {
    /// Canonical spec of a triplet: brackets with `i ≤ j`, nonzero coefficients only.
    pub fn from_triplet(name: &str, t: &FundamentalTriplet) -> Self {
        let n = t.dim_g0();
        let structure_constants = sparse_structure(&t.g0);
        TripletSpec {
            name: name.to_string(),
            dim_g0: n,
            basis_names: None,
            structure_constants,
            b0: dense(&t.b0.gram),
            dim_v: t.dim_v(),
            rho: t.rho.action.iter().map(dense).collect(),
        }
    }

    /// Builds the triplet without validating it.
    pub fn to_triplet(&self) -> Result<FundamentalTriplet, ShapeError> {
        let n = self.dim_g0;
        let d = self.dim_v;
        if let Some(names) = &self.basis_names {
            if names.len() != n {
                return Err(shape(format!("basis_names has {} entries, expected {n}", names.len())));
            }
        }
        let zero = vec![Scalar::zero(); n];
        let mut s = vec![vec![zero; n]; n];
        let mut listed = BTreeSet::new();
        for (i, j, terms) in &self.structure_constants {
            if *i >= n || *j >= n {
                return Err(shape(format!("structure constant index ({i}, {j}) out of range")));
            }
            if !listed.insert((*i, *j)) {
                return Err(shape(format!("bracket ({i}, {j}) listed twice")));
            }
            for (k, c) in terms {
                if *k >= n {
                    return Err(shape(format!("structure constant target {k} out of range")));
                }
                s[*i][*j][*k] += c;
            }
        }
        for &(i, j) in &listed {
            if i != j && !listed.contains(&(j, i)) {
                s[j][i] = s[i][j].iter().map(|c| -c).collect();
            }
        }
        let g0 = LieAlgebraData::new(n, s).map_err(|e| shape(e.to_string()))?;
        let b0 = square(&self.b0, n, "B0")?;
        if self.rho.len() != n {
            return Err(shape(format!("rho lists {} matrices, expected {n}", self.rho.len())));
        }
        let action = self
            .rho
            .iter()
            .enumerate()
            .map(|(k, m)| square(m, d, &format!("rho[{k}]")))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(FundamentalTriplet::new(g0, QuadraticForm::new(b0), Representation::new(d, action)))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("spec serializes")
    }
}

impl From<ShapeError> for Error {
    fn from(e: ShapeError) -> Self {
        Error::DimensionMismatch(e.0)
    }
}
