//! A-priori accuracy certificates built on the measure of irreducibility,
//! and the Protasov estimate of the constant γ in
//! `γ^{1/n} ‖𝒜^n‖^{1/n} <= ρ(𝒜)`.

use serde::Serialize;

use crate::bounds::gelfand_upper;
use crate::error::{JsrError, Result};
use crate::matrix::{Matrix, MatrixSet, NormKind};
use crate::products::{matrix_set_norm, word_count, Limits};
use crate::sphere::sphere_net;

fn require_chi(chi_lower: f64) -> Result<()> {
    if chi_lower > 0.0 && chi_lower.is_finite() {
        Ok(())
    } else {
        Err(JsrError::NoCertificate { chi_lower })
    }
}

/// `ν_p = max{1, ‖𝒜‖^p} / χ`, with `χ` a lower bound on `χ_p(𝒜)`.
pub fn nu_p(
    set: &MatrixSet,
    p: usize,
    kind: NormKind,
    chi_lower: f64,
    limits: &Limits,
) -> Result<f64> {
    require_chi(chi_lower)?;
    let norm = matrix_set_norm(set, 1, kind, limits)?.value;
    Ok(norm.powi(p as i32).max(1.0) / chi_lower)
}

/// `η_p = max{1, ρ^p} / χ` for a supplied estimate of ρ. Diagnostic only:
/// it is as trustworthy as `rho_estimate`.
pub fn eta_p(p: usize, rho_estimate: f64, chi_lower: f64) -> Result<f64> {
    if !(rho_estimate > 0.0 && rho_estimate.is_finite()) {
        return Err(JsrError::InvalidInput(format!(
            "rho estimate must be positive, got {rho_estimate}"
        )));
    }
    require_chi(chi_lower)?;
    Ok(rho_estimate.powi(p as i32).max(1.0) / chi_lower)
}

/// `ν^{-1/n} ‖𝒜^n‖^{1/n} <= ρ(𝒜) <= ‖𝒜^n‖^{1/n}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CertifiedInterval {
    pub n: usize,
    pub p: usize,
    pub kind: NormKind,
    pub chi_lower: f64,
    pub nu_p: f64,
    pub lower: f64,
    pub upper: f64,
    pub ratio: f64,
}

pub fn certified_interval(
    set: &MatrixSet,
    n: usize,
    p: usize,
    kind: NormKind,
    chi_lower: f64,
    limits: &Limits,
) -> Result<CertifiedInterval> {
    let nu = nu_p(set, p, kind, chi_lower, limits)?;
    let upper = gelfand_upper(set, n, kind, limits)?;
    let ratio = nu.powf(1.0 / n as f64);
    Ok(CertifiedInterval {
        n,
        p,
        kind,
        chi_lower,
        nu_p: nu,
        lower: upper / ratio,
        upper,
        ratio,
    })
}

/// Smallest `n` with `ν^{1/n} <= 1 + ε`.
pub fn plan_steps(nu: f64, epsilon: f64) -> Result<usize> {
    if !(nu > 1.0 && nu.is_finite()) {
        return Err(JsrError::InvalidInput(format!(
            "nu must be finite and > 1, got {nu}"
        )));
    }
    if !(epsilon > 0.0 && epsilon.is_finite()) {
        return Err(JsrError::InvalidInput(format!(
            "epsilon must be positive, got {epsilon}"
        )));
    }
    let target = 1.0 + epsilon;
    let fits = |n: usize| nu.powf(1.0 / n as f64) <= target;
    let estimate = (nu.ln() / epsilon.ln_1p()).ceil();
    let mut n = if estimate.is_finite() && estimate >= 1.0 {
        estimate.min(usize::MAX as f64 / 2.0) as usize
    } else {
        1
    };
    // the closed form can be off by one after rounding
    while n > 1 && fits(n - 1) {
        n -= 1;
    }
    while !fits(n) {
        n += 1;
    }
    Ok(n)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StepPlan {
    pub n: usize,
    /// `r^n`, saturated.
    pub words: u128,
    pub fits_budget: bool,
}

pub fn plan(nu: f64, epsilon: f64, set_size: usize, limits: &Limits) -> Result<StepPlan> {
    let n = plan_steps(nu, epsilon)?;
    let words = word_count(set_size, n);
    Ok(StepPlan {
        n,
        words,
        fits_budget: words <= limits.max_words,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GammaEstimate {
    /// Lower estimate of γ, clamped to at most 1.
    pub gamma_lower: f64,
    /// Netted infima `p_1, …, p_{d-1}`; each overestimates the true `p_k`.
    pub p_values: Vec<f64>,
    /// `p_values` minus a Lipschitz correction where one is available (d = 2).
    pub p_lower: Vec<f64>,
    pub set_norm: f64,
    pub denominator: f64,
    pub samples: usize,
    pub heuristic: bool,
}

impl GammaEstimate {
    /// Alternative lower bound `γ^{1/n} · upper` on ρ (heuristic unless
    /// `heuristic` is false).
    pub fn wirth_lower(&self, n: usize, upper: f64) -> f64 {
        self.gamma_lower.powf(1.0 / n as f64) * upper
    }
}

fn norm2(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// `sup_{x ∈ L, |x| = 1} max_i dist(A_i x, L)` for the line spanned by unit `u`.
fn line_excess(members: &[Matrix], u: &[f64]) -> f64 {
    members
        .iter()
        .map(|a| {
            let v = a.mul_vec(u);
            let c: f64 = v.iter().zip(u).map(|(x, y)| x * y).sum();
            let r: Vec<f64> = v.iter().zip(u).map(|(x, y)| x - c * y).collect();
            norm2(&r)
        })
        .fold(0.0, f64::max)
}

/// Same for the plane with unit normal `n` in three dimensions:
/// `sup_x |n·A_i x|` over unit `x ⟂ n` is `|P A_iᵀ n|`.
fn plane_excess(members: &[Matrix], n: &[f64]) -> f64 {
    members
        .iter()
        .map(|a| {
            let w = a.transpose().mul_vec(n);
            let c: f64 = w.iter().zip(n).map(|(x, y)| x * y).sum();
            let r: Vec<f64> = w.iter().zip(n).map(|(x, y)| x - c * y).collect();
            norm2(&r)
        })
        .fold(0.0, f64::max)
}

/// Estimates γ from the subspace quantities `p_k` in the Euclidean norm.
///
/// `samples` sets the net resolution: the angular step (d = 2) or the
/// geodesic mesh (d = 3) is `π / samples`. The denominator is
/// `(2‖𝒜‖)^{d-1}`, or `(ρ + ‖𝒜‖)^{d-1}` when an upper bound on ρ is given.
/// Netted infima over subspaces overestimate `p_k`; in two dimensions the
/// infimum over lines is corrected by its Lipschitz constant, which makes
/// the result a bound, while in three dimensions it stays an estimate.
pub fn protasov_gamma(
    set: &MatrixSet,
    rho_upper: Option<f64>,
    samples: usize,
    limits: &Limits,
) -> Result<GammaEstimate> {
    let d = set.dim();
    if d > 3 {
        return Err(JsrError::UnsupportedDimension {
            dim: d,
            reason: "subspace nets exist for d <= 3",
        });
    }
    if samples == 0 {
        return Err(JsrError::InvalidInput("samples must be positive".into()));
    }
    if let Some(r) = rho_upper {
        if !(r >= 0.0 && r.is_finite()) {
            return Err(JsrError::InvalidInput(format!(
                "rho upper bound must be finite and >= 0, got {r}"
            )));
        }
    }
    let norm = matrix_set_norm(set, 1, NormKind::L2, limits)?.value;
    let members = set.members();
    let step = std::f64::consts::PI / samples as f64;
    let (p_values, p_lower, heuristic) = match d {
        1 => (Vec::new(), Vec::new(), false),
        2 => {
            let mut best = f64::INFINITY;
            for j in 0..samples {
                let t = step * j as f64;
                let u = [t.cos(), t.sin()];
                let nrm = [-t.sin(), t.cos()];
                let f = members
                    .iter()
                    .map(|a| {
                        let v = a.mul_vec(&u);
                        (nrm[0] * v[0] + nrm[1] * v[1]).abs()
                    })
                    .fold(0.0, f64::max);
                best = best.min(f);
            }
            // θ ↦ |n(θ)ᵀ A u(θ)| is 2‖A‖-Lipschitz; every angle is within step/2
            let certified = (best - norm * step).max(0.0);
            (vec![best], vec![certified], false)
        }
        _ => {
            let net = sphere_net(3, NormKind::L2, step, true)?;
            let lines = net
                .points
                .iter()
                .map(|u| line_excess(members, u))
                .fold(f64::INFINITY, f64::min);
            let planes = net
                .points
                .iter()
                .map(|n| plane_excess(members, n))
                .fold(f64::INFINITY, f64::min);
            (vec![lines, planes], vec![lines, planes], true)
        }
    };
    let base = match rho_upper {
        Some(r) => r + norm,
        None => 2.0 * norm,
    };
    let denominator = base.powi(d as i32 - 1);
    let numerator: f64 = p_lower.iter().product();
    let gamma_lower = if numerator == 0.0 {
        0.0
    } else {
        (numerator / denominator).min(1.0)
    };
    Ok(GammaEstimate {
        gamma_lower,
        p_values,
        p_lower,
        set_norm: norm,
        denominator,
        samples,
        heuristic,
    })
}
