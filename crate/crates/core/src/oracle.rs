//! Brute-force reference computations.
//!
//! Deliberately independent of the streaming enumeration and the eigenvalue
//! code elsewhere in the crate: products are materialized level by level
//! as nalgebra matrices, and spectra and singular values come from
//! nalgebra's decompositions.

use nalgebra::DMatrix;
use serde::Serialize;

use crate::error::{JsrError, Result};
use crate::matrix::{Matrix, MatrixSet, NormKind, Word};
use crate::products::Limits;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleInterval {
    pub n_max: usize,
    pub kind: NormKind,
    /// `max_{n <= n_max} (max ρ(P))^{1/n}` over products of length `n`.
    pub lower: f64,
    /// `min_{n <= n_max} (max ‖P‖)^{1/n}`.
    pub upper: f64,
    pub witness_lower: Word,
    pub witness_upper: Word,
}

fn to_dmatrix(m: &Matrix) -> DMatrix<f64> {
    DMatrix::from_row_slice(m.dim(), m.dim(), m.data())
}

fn norm_of(m: &DMatrix<f64>, kind: NormKind) -> f64 {
    match kind {
        NormKind::L1 => m.column_iter().map(|c| c.abs().sum()).fold(0.0, f64::max),
        NormKind::LInf => m.row_iter().map(|r| r.abs().sum()).fold(0.0, f64::max),
        NormKind::L2 => m.singular_values().max(),
    }
}

fn radius_of(m: &DMatrix<f64>) -> f64 {
    m.complex_eigenvalues()
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max)
}

pub fn brute_force_interval(
    set: &MatrixSet,
    n_max: usize,
    kind: NormKind,
    limits: &Limits,
) -> Result<OracleInterval> {
    if n_max == 0 {
        return Err(JsrError::InvalidInput("n_max must be at least 1".into()));
    }
    let r = set.len() as u128;
    let required = (1..=n_max as u32).fold(0u128, |acc, n| acc.saturating_add(r.saturating_pow(n)));
    if required > limits.max_words {
        return Err(JsrError::BudgetExceeded {
            required,
            budget: limits.max_words,
        });
    }
    let gens: Vec<DMatrix<f64>> = set.members().iter().map(to_dmatrix).collect();
    // words in lexicographic order, first factor most significant
    let mut level: Vec<(Vec<usize>, DMatrix<f64>)> =
        vec![(Vec::new(), DMatrix::identity(set.dim(), set.dim()))];
    let mut lower = (0.0, Word::empty());
    let mut upper = (f64::INFINITY, Word::empty());
    for n in 1..=n_max {
        let mut next = Vec::with_capacity(level.len() * gens.len());
        for (word, prod) in &level {
            for (i, g) in gens.iter().enumerate() {
                let mut w = word.clone();
                w.push(i);
                // word (i_1, …, i_n) is A_{i_n} ⋯ A_{i_1}
                next.push((w, g * prod));
            }
        }
        level = next;
        let inv = 1.0 / n as f64;
        let mut max_norm = (f64::NEG_INFINITY, 0usize);
        let mut max_rad = (f64::NEG_INFINITY, 0usize);
        for (k, (_, p)) in level.iter().enumerate() {
            if !p.iter().all(|v| v.is_finite()) {
                return Err(JsrError::NonFinite(format!("product of length {n}")));
            }
            let nv = norm_of(p, kind);
            if nv > max_norm.0 {
                max_norm = (nv, k);
            }
            let rv = radius_of(p);
            if rv > max_rad.0 {
                max_rad = (rv, k);
            }
        }
        let u = max_norm.0.powf(inv);
        if u < upper.0 {
            upper = (u, Word::new(level[max_norm.1].0.clone()));
        }
        let l = max_rad.0.powf(inv);
        if l > lower.0 || lower.1.is_empty() {
            lower = (l, Word::new(level[max_rad.1].0.clone()));
        }
    }
    // ρ(P)^{1/n} never exceeds any ‖𝒜^m‖^{1/m}; eigenvalues of defective
    // (e.g. nilpotent) products carry O(ε^{1/d}) rounding, so cap them
    Ok(OracleInterval {
        n_max,
        kind,
        lower: lower.0.min(upper.0),
        upper: upper.0,
        witness_lower: lower.1,
        witness_upper: upper.1,
    })
}

fn leaves_line_invariant(m: &Matrix, v: [f64; 2], tol: f64) -> bool {
    let w = m.mul_vec(&v);
    (v[0] * w[1] - v[1] * w[0]).abs() <= tol
}

/// Real eigendirections of a 2×2 matrix that is not a multiple of `I`.
fn eigendirections(m: &Matrix) -> Vec<[f64; 2]> {
    let (a, b, c, d) = (m.get(0, 0), m.get(0, 1), m.get(1, 0), m.get(1, 1));
    let half = 0.5 * (a - d);
    let disc = half * half + b * c;
    let scale = m.max_abs().powi(2);
    if disc < -1e-14 * scale {
        return Vec::new();
    }
    let s = disc.max(0.0).sqrt();
    let mean = 0.5 * (a + d);
    let mut out: Vec<[f64; 2]> = Vec::new();
    for lambda in [mean + s, mean - s] {
        // rows of A − λI are orthogonal to the eigenvector
        let r1 = [b, lambda - a];
        let r2 = [lambda - d, c];
        let v = if r1[0].hypot(r1[1]) >= r2[0].hypot(r2[1]) {
            r1
        } else {
            r2
        };
        let n = v[0].hypot(v[1]);
        if n > 0.0 {
            let u = [v[0] / n, v[1] / n];
            if !out
                .iter()
                .any(|w| (w[0] * u[1] - w[1] * u[0]).abs() < 1e-12)
            {
                out.push(u);
            }
        }
    }
    out
}

/// A common invariant line of a 2×2 set, if one exists.
pub fn invariant_subspace_search_2d(set: &MatrixSet) -> Result<Option<Vec<f64>>> {
    if set.dim() != 2 {
        return Err(JsrError::UnsupportedDimension {
            dim: set.dim(),
            reason: "the line search is for 2x2 sets",
        });
    }
    let tol = 1e-9 * (1.0 + set.max_abs());
    let is_scalar = |m: &Matrix| {
        m.get(0, 1).abs() <= tol
            && m.get(1, 0).abs() <= tol
            && (m.get(0, 0) - m.get(1, 1)).abs() <= tol
    };
    let Some(pivot) = set.members().iter().find(|m| !is_scalar(m)) else {
        return Ok(Some(vec![1.0, 0.0]));
    };
    for v in eigendirections(pivot) {
        if set
            .members()
            .iter()
            .all(|m| leaves_line_invariant(m, v, tol))
        {
            return Ok(Some(v.to_vec()));
        }
    }
    Ok(None)
}
