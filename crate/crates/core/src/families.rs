//! Matrix families with closed-form lower bounds on `χ_d`.
//!
//! * `𝒫(A) = {A_1, …, A_d}`, where `A_i` is the identity with its `i`-th row
//!   replaced by the `i`-th row of `A`. Irreducible iff `A` is
//!   indecomposable and 1 is not an eigenvalue of `A`;
//!   `χ_d ≥ α β^{d-1}` with `α = min_{|x|₁=1} |(A − I)x|₁ / 2d` and `β` half
//!   the smallest nonzero off-diagonal magnitude.
//! * `𝒱(A) = {A, V_1 A, …, V_d A}`, where `V_i` flips the sign of the
//!   `i`-th coordinate. Irreducible iff `A` is indecomposable and
//!   nonsingular; `χ_d ≥ α̃ β̃^{d-1}` with `α̃ = min_{|x|₁=1} |Ax|₁ / d` and
//!   `β̃` the smallest nonzero off-diagonal magnitude.
//!
//! Both minima use `min_{|x|₁=1} |Mx|₁ = 1 / ‖M⁻¹‖₁`, zero for singular `M`.

use serde::Serialize;

use crate::error::{JsrError, Result};
use crate::matrix::{Matrix, MatrixSet, NormKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Family {
    P,
    V,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExampleBound {
    pub family: Family,
    pub alpha: f64,
    pub beta: f64,
    pub chi_lower: f64,
    pub irreducible: bool,
}

fn zero_tol(a: &Matrix) -> f64 {
    1e-12 * a.max_abs()
}

pub fn build_p(a: &Matrix) -> MatrixSet {
    let d = a.dim();
    let members = (0..d)
        .map(|i| {
            let mut m = Matrix::identity(d);
            for j in 0..d {
                m.set(i, j, a.get(i, j));
            }
            m
        })
        .collect();
    MatrixSet::new(members).expect("d >= 1 members of equal size")
}

pub fn build_v(a: &Matrix) -> MatrixSet {
    let d = a.dim();
    let mut members = vec![a.clone()];
    for i in 0..d {
        let mut m = a.clone();
        for j in 0..d {
            // `0.0 - x` keeps zeros unsigned in serialized output
            m.set(i, j, 0.0 - a.get(i, j));
        }
        members.push(m);
    }
    MatrixSet::new(members).expect("d + 1 members of equal size")
}

/// `{A, b cᵀ}`; no closed-form χ bound is known for this family.
pub fn build_controllability(a: &Matrix, b: &[f64], c: &[f64]) -> Result<MatrixSet> {
    let d = a.dim();
    for v in [b, c] {
        if v.len() != d {
            return Err(JsrError::DimensionMismatch {
                expected: d,
                found: v.len(),
            });
        }
    }
    let data = b
        .iter()
        .flat_map(|bi| c.iter().map(move |cj| bi * cj))
        .collect();
    MatrixSet::new(vec![a.clone(), Matrix::new(d, data)?])
}

/// Strong connectivity of the digraph with an edge `j → i` for every
/// nonzero `a_ij`: no coordinate subspace is invariant under `A`.
pub fn indecomposable(a: &Matrix) -> bool {
    let d = a.dim();
    let tol = zero_tol(a);
    let reach_all = |forward: bool| {
        let mut seen = vec![false; d];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for w in 0..d {
                let entry = if forward { a.get(w, v) } else { a.get(v, w) };
                if !seen[w] && entry.abs() > tol {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    };
    reach_all(true) && reach_all(false)
}

/// `min_{|x|₁=1} |Mx|₁`, zero when `M` is singular.
fn l1_lower_gain(m: &Matrix) -> f64 {
    match m.inverse() {
        Some(inv) => {
            1.0 / inv
                .operator_norm(NormKind::L1)
                .expect("L1 norm is closed-form")
        }
        None => 0.0,
    }
}

fn min_off_diagonal(a: &Matrix) -> f64 {
    let d = a.dim();
    let tol = zero_tol(a);
    let mut best = f64::INFINITY;
    for i in 0..d {
        for j in 0..d {
            let v = a.get(i, j).abs();
            if i != j && v > tol {
                best = best.min(v);
            }
        }
    }
    if best.is_finite() {
        best
    } else {
        0.0
    }
}

pub fn example1_bound(a: &Matrix) -> ExampleBound {
    let d = a.dim();
    let alpha = l1_lower_gain(&a.sub(&Matrix::identity(d))) / (2.0 * d as f64);
    let beta = 0.5 * min_off_diagonal(a);
    ExampleBound {
        family: Family::P,
        alpha,
        beta,
        chi_lower: alpha * beta.powi(d as i32 - 1),
        irreducible: indecomposable(a) && alpha > 0.0,
    }
}

pub fn example2_bound(a: &Matrix) -> ExampleBound {
    let d = a.dim();
    let alpha = l1_lower_gain(a) / d as f64;
    let beta = min_off_diagonal(a);
    ExampleBound {
        family: Family::V,
        alpha,
        beta,
        chi_lower: alpha * beta.powi(d as i32 - 1),
        irreducible: indecomposable(a) && alpha > 0.0,
    }
}
