//! Dense square matrices, finite matrix sets, vector/operator norms and the
//! JSON input format.
//!
//! Matrices are stored row-major. A [`Word`] `(i_1, …, i_n)` names the product
//! `A_{i_n} ⋯ A_{i_2} A_{i_1}`: the first index is the factor applied first.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize, Serializer};

use crate::eigen;
use crate::error::{JsrError, Result};

/// Vector norm used to induce operator norms and set norms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NormKind {
    L1,
    L2,
    #[serde(rename = "linf")]
    LInf,
}

impl NormKind {
    pub const ALL: [NormKind; 3] = [NormKind::L1, NormKind::L2, NormKind::LInf];

    /// The dual norm: `‖u‖_* = sup { u·y : ‖y‖ ≤ 1 }`.
    pub fn dual(self) -> NormKind {
        match self {
            NormKind::L1 => NormKind::LInf,
            NormKind::L2 => NormKind::L2,
            NormKind::LInf => NormKind::L1,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            NormKind::L1 => "l1",
            NormKind::L2 => "l2",
            NormKind::LInf => "linf",
        }
    }
}

impl fmt::Display for NormKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for NormKind {
    type Err = JsrError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "l1" => Ok(NormKind::L1),
            "l2" => Ok(NormKind::L2),
            "linf" | "l-inf" | "inf" => Ok(NormKind::LInf),
            other => Err(JsrError::InvalidInput(format!(
                "unknown norm kind {other:?} (expected l1, l2 or linf)"
            ))),
        }
    }
}

/// Comparison tolerance `|a - b| <= abs + rel * max(|a|, |b|)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    pub abs: f64,
    pub rel: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            abs: 1e-9,
            rel: 1e-9,
        }
    }
}

impl Tolerance {
    pub fn slack(&self, a: f64, b: f64) -> f64 {
        self.abs + self.rel * a.abs().max(b.abs())
    }

    /// `a <= b` up to the tolerance.
    pub fn le(&self, a: f64, b: f64) -> bool {
        a <= b + self.slack(a, b)
    }

    pub fn eq(&self, a: f64, b: f64) -> bool {
        (a - b).abs() <= self.slack(a, b)
    }
}

pub fn vector_norm(x: &[f64], kind: NormKind) -> Result<f64> {
    if let Some(i) = x.iter().position(|v| !v.is_finite()) {
        return Err(JsrError::NonFinite(format!("vector component {i}")));
    }
    Ok(norm_unchecked(x, kind))
}

pub(crate) fn norm_unchecked(x: &[f64], kind: NormKind) -> f64 {
    match kind {
        NormKind::L1 => x.iter().map(|v| v.abs()).sum(),
        NormKind::L2 => {
            // scaled to avoid overflow on large entries
            let scale = x.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
            if scale == 0.0 {
                0.0
            } else {
                scale * x.iter().map(|v| (v / scale).powi(2)).sum::<f64>().sqrt()
            }
        }
        NormKind::LInf => x.iter().fold(0.0_f64, |m, v| m.max(v.abs())),
    }
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Dense `d × d` real matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    dim: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn new(dim: usize, data: Vec<f64>) -> Result<Self> {
        if dim == 0 {
            return Err(JsrError::InvalidInput(
                "matrix dimension must be at least 1".into(),
            ));
        }
        if data.len() != dim * dim {
            return Err(JsrError::DimensionMismatch {
                expected: dim * dim,
                found: data.len(),
            });
        }
        if let Some(k) = data.iter().position(|v| !v.is_finite()) {
            return Err(JsrError::NonFinite(format!(
                "entry ({}, {})",
                k / dim,
                k % dim
            )));
        }
        Ok(Matrix { dim, data })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let dim = rows.len();
        if let Some((i, row)) = rows.iter().enumerate().find(|(_, r)| r.len() != dim) {
            return Err(JsrError::InvalidInput(format!(
                "row {i} has {} entries, expected {dim}",
                row.len()
            )));
        }
        Matrix::new(dim, rows.concat())
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Matrix::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = 1.0;
        }
        m
    }

    pub fn zeros(dim: usize) -> Self {
        Matrix {
            dim,
            data: vec![0.0; dim * dim],
        }
    }

    pub fn diag(values: &[f64]) -> Self {
        let mut m = Matrix::zeros(values.len());
        for (i, v) in values.iter().enumerate() {
            m.data[i * values.len() + i] = *v;
        }
        m
    }

    pub(crate) fn from_raw(dim: usize, data: Vec<f64>) -> Self {
        debug_assert_eq!(data.len(), dim * dim);
        Matrix { dim, data }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub(crate) fn data_mut(&mut self) -> &mut [f64] {
        &mut self.data
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.data[row * self.dim + col]
    }

    #[inline]
    pub(crate) fn set(&mut self, row: usize, col: usize, value: f64) {
        self.data[row * self.dim + col] = value;
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.data.chunks(self.dim).map(|r| r.to_vec()).collect()
    }

    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        let d = self.dim;
        let mut out = vec![0.0; d * d];
        self.mul_into(rhs, &mut out);
        Matrix { dim: d, data: out }
    }

    /// Writes `self · rhs` into `out` (length `d²`).
    pub(crate) fn mul_into(&self, rhs: &Matrix, out: &mut [f64]) {
        let d = self.dim;
        debug_assert_eq!(rhs.dim, d);
        out.iter_mut().for_each(|v| *v = 0.0);
        for i in 0..d {
            for k in 0..d {
                let a = self.data[i * d + k];
                if a == 0.0 {
                    continue;
                }
                let row = &rhs.data[k * d..(k + 1) * d];
                let dst = &mut out[i * d..(i + 1) * d];
                for (o, b) in dst.iter_mut().zip(row) {
                    *o += a * b;
                }
            }
        }
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        self.data.chunks(self.dim).map(|row| dot(row, x)).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let d = self.dim;
        let mut t = Matrix::zeros(d);
        for i in 0..d {
            for j in 0..d {
                t.data[j * d + i] = self.data[i * d + j];
            }
        }
        t
    }

    pub fn scale(&self, c: f64) -> Matrix {
        Matrix {
            dim: self.dim,
            data: self.data.iter().map(|v| v * c).collect(),
        }
    }

    pub fn sub(&self, rhs: &Matrix) -> Matrix {
        Matrix {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn add(&self, rhs: &Matrix) -> Matrix {
        Matrix {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0_f64, |m, v| m.max(v.abs()))
    }

    pub fn is_nonnegative(&self) -> bool {
        self.data.iter().all(|v| *v >= 0.0)
    }

    /// Kronecker product `self ⊗ rhs` (dimension `d·e`).
    pub fn kron(&self, rhs: &Matrix) -> Matrix {
        let (d, e) = (self.dim, rhs.dim);
        let n = d * e;
        let mut out = vec![0.0; n * n];
        for i in 0..d {
            for j in 0..d {
                let a = self.get(i, j);
                if a == 0.0 {
                    continue;
                }
                for k in 0..e {
                    for l in 0..e {
                        out[(i * e + k) * n + j * e + l] = a * rhs.get(k, l);
                    }
                }
            }
        }
        Matrix { dim: n, data: out }
    }

    /// Induced operator norm.
    ///
    /// L1 is the maximum absolute column sum, LInf the maximum absolute row
    /// sum, and L2 the largest singular value (power iteration on `AᵀA`).
    pub fn operator_norm(&self, kind: NormKind) -> Result<f64> {
        let d = self.dim;
        match kind {
            NormKind::L1 => Ok((0..d)
                .map(|j| (0..d).map(|i| self.get(i, j).abs()).sum::<f64>())
                .fold(0.0, f64::max)),
            NormKind::LInf => Ok(self
                .data
                .chunks(d)
                .map(|r| r.iter().map(|v| v.abs()).sum::<f64>())
                .fold(0.0, f64::max)),
            NormKind::L2 => eigen::largest_singular_value(self),
        }
    }

    pub fn spectral_radius(&self) -> Result<f64> {
        eigen::spectral_radius(self)
    }

    /// Inverse by Gauss–Jordan elimination with partial pivoting; `None`
    /// when a pivot falls below `1e-12 · max_abs`.
    pub fn inverse(&self) -> Option<Matrix> {
        let d = self.dim;
        let scale = self.max_abs();
        if scale == 0.0 {
            return None;
        }
        let mut a = self.clone();
        let mut inv = Matrix::identity(d);
        for col in 0..d {
            let pivot =
                (col..d).max_by(|&i, &j| a.get(i, col).abs().total_cmp(&a.get(j, col).abs()))?;
            if a.get(pivot, col).abs() <= 1e-12 * scale {
                return None;
            }
            for k in 0..d {
                a.data.swap(col * d + k, pivot * d + k);
                inv.data.swap(col * d + k, pivot * d + k);
            }
            let pv = a.get(col, col);
            for k in 0..d {
                a.data[col * d + k] /= pv;
                inv.data[col * d + k] /= pv;
            }
            for row in 0..d {
                if row == col {
                    continue;
                }
                let f = a.get(row, col);
                if f != 0.0 {
                    for k in 0..d {
                        a.data[row * d + k] -= f * a.data[col * d + k];
                        inv.data[row * d + k] -= f * inv.data[col * d + k];
                    }
                }
            }
        }
        Some(inv)
    }
}

/// Ordered, nonempty collection of matrices of a common dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixSet {
    dim: usize,
    members: Vec<Matrix>,
}

impl MatrixSet {
    pub fn new(members: Vec<Matrix>) -> Result<Self> {
        let first = members.first().ok_or_else(|| {
            JsrError::InvalidInput("matrix set must contain at least one matrix".into())
        })?;
        let dim = first.dim();
        if let Some(m) = members.iter().find(|m| m.dim() != dim) {
            return Err(JsrError::DimensionMismatch {
                expected: dim,
                found: m.dim(),
            });
        }
        Ok(MatrixSet { dim, members })
    }

    pub fn from_rows(sets: &[Vec<Vec<f64>>]) -> Result<Self> {
        MatrixSet::new(
            sets.iter()
                .map(|m| Matrix::from_rows(m))
                .collect::<Result<_>>()?,
        )
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[Matrix] {
        &self.members
    }

    pub fn get(&self, i: usize) -> &Matrix {
        &self.members[i]
    }

    pub fn scale(&self, c: f64) -> MatrixSet {
        MatrixSet {
            dim: self.dim,
            members: self.members.iter().map(|m| m.scale(c)).collect(),
        }
    }

    /// `T · A_i · T⁻¹` for every member.
    pub fn conjugate(&self, t: &Matrix, t_inv: &Matrix) -> MatrixSet {
        MatrixSet {
            dim: self.dim,
            members: self.members.iter().map(|m| t.mul(m).mul(t_inv)).collect(),
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.members.iter().map(Matrix::max_abs).fold(0.0, f64::max)
    }

    /// The product named by `word`, multiplied out directly.
    pub fn product(&self, word: &Word) -> Matrix {
        word.indices()
            .iter()
            .fold(Matrix::identity(self.dim), |acc, &i| {
                self.members[i].mul(&acc)
            })
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "dim": self.dim,
            "matrices": self.members.iter().map(Matrix::rows).collect::<Vec<_>>(),
        })
    }
}

/// Index sequence `(i_1, …, i_n)`, stored zero-based.
///
/// Displayed and serialized one-based so that index `1` names `A_1`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Word(Vec<usize>);

impl Word {
    pub fn new(indices: Vec<usize>) -> Self {
        Word(indices)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    /// Builds a word from one-based indices.
    pub fn from_one_based(indices: &[usize]) -> Self {
        Word(indices.iter().map(|i| i - 1).collect())
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.0.iter().map(|i| i + 1).collect()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|i| (i + 1).to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.one_based().serialize(s)
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSet {
    dim: usize,
    matrices: Vec<Vec<Vec<f64>>>,
}

/// Parses the JSON input format `{"dim": d, "matrices": [[[row], …], …]}`.
pub fn parse_matrix_set(text: &str) -> Result<MatrixSet> {
    let raw: RawSet = serde_json::from_str(text).map_err(|e| JsrError::Parse {
        location: format!("line {} column {}", e.line(), e.column()),
        message: e.to_string(),
    })?;
    let d = raw.dim;
    if d == 0 {
        return Err(JsrError::Parse {
            location: "dim".into(),
            message: "dimension must be at least 1".into(),
        });
    }
    if raw.matrices.is_empty() {
        return Err(JsrError::Parse {
            location: "matrices".into(),
            message: "matrix set must contain at least one matrix".into(),
        });
    }
    let mut members = Vec::with_capacity(raw.matrices.len());
    for (k, rows) in raw.matrices.iter().enumerate() {
        if rows.len() != d {
            return Err(JsrError::Parse {
                location: format!("matrices[{k}]"),
                message: format!("ragged matrix: expected {d} rows, found {}", rows.len()),
            });
        }
        let mut data = Vec::with_capacity(d * d);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != d {
                return Err(JsrError::Parse {
                    location: format!("matrices[{k}][{i}]"),
                    message: format!("ragged matrix: expected {d} columns, found {}", row.len()),
                });
            }
            if let Some(j) = row.iter().position(|v| !v.is_finite()) {
                return Err(JsrError::Parse {
                    location: format!("matrices[{k}][{i}][{j}]"),
                    message: "non-finite entry".into(),
                });
            }
            data.extend_from_slice(row);
        }
        members.push(Matrix::from_raw(d, data));
    }
    MatrixSet::new(members)
}
