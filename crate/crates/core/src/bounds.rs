//! Finite-`n` bounds on the joint spectral radius.
//!
//! For every `n`, `(max ρ(P))^{1/n} <= ρ(𝒜) <= (max ‖P‖)^{1/n}` where `P`
//! ranges over the `n`-products. [`sandwich`] tracks both sides for
//! `n = 1..=n_max` in one enumeration pass per `n`.

use serde::Serialize;

use crate::eigen;
use crate::error::{JsrError, Result};
use crate::matrix::{Matrix, MatrixSet, NormKind, Word};
use crate::products::{enumerate_products, for_each_product, matrix_set_norm, Extremum, Limits};

/// Bounds at one product length, plus the running best interval.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub n: usize,
    pub kind: NormKind,
    /// `(max ρ(P))^{1/n}`.
    pub lower: f64,
    /// `‖𝒜^n‖^{1/n}`.
    pub upper: f64,
    pub best_lower: f64,
    pub best_upper: f64,
    pub witness_lower: Word,
    pub witness_upper: Word,
}

fn nth_root(x: f64, n: usize) -> f64 {
    if n == 1 {
        x
    } else {
        x.powf(1.0 / n as f64)
    }
}

/// `‖𝒜^n‖^{1/n}`, an upper bound on ρ(𝒜).
pub fn gelfand_upper(set: &MatrixSet, n: usize, kind: NormKind, limits: &Limits) -> Result<f64> {
    Ok(nth_root(matrix_set_norm(set, n, kind, limits)?.value, n))
}

/// Maximal spectral radius over the `n`-products, with its first witness.
pub fn max_product_spectral_radius(set: &MatrixSet, n: usize, limits: &Limits) -> Result<Extremum> {
    let mut best = Extremum {
        value: f64::NEG_INFINITY,
        witness: Word::empty(),
    };
    for_each_product(set, n, limits, |w, p| {
        let v = eigen::spectral_radius(p)?;
        if v > best.value {
            best = Extremum {
                value: v,
                witness: Word::new(w.to_vec()),
            };
        }
        Ok(())
    })?;
    Ok(best)
}

/// `(max ρ(P))^{1/n}`, a lower bound on ρ(𝒜).
pub fn spectral_lower(set: &MatrixSet, n: usize, limits: &Limits) -> Result<f64> {
    Ok(nth_root(
        max_product_spectral_radius(set, n, limits)?.value,
        n,
    ))
}

/// Result of [`sandwich`]: the completed reports and, if a later length
/// failed, the error that stopped it.
#[derive(Debug, Clone, PartialEq)]
pub struct Sandwich {
    pub reports: Vec<BoundReport>,
    pub error: Option<JsrError>,
}

impl Sandwich {
    pub fn into_result(self) -> Result<Vec<BoundReport>> {
        match self.error {
            Some(e) => Err(e),
            None => Ok(self.reports),
        }
    }

    pub fn last(&self) -> Option<&BoundReport> {
        self.reports.last()
    }
}

pub fn sandwich(set: &MatrixSet, n_max: usize, kind: NormKind, limits: &Limits) -> Sandwich {
    let mut reports: Vec<BoundReport> = Vec::with_capacity(n_max);
    if n_max == 0 {
        return Sandwich {
            reports,
            error: Some(JsrError::InvalidInput("n_max must be at least 1".into())),
        };
    }
    for n in 1..=n_max {
        let mut rho = Extremum {
            value: f64::NEG_INFINITY,
            witness: Word::empty(),
        };
        let mut norm = rho.clone();
        let pass = for_each_product(set, n, limits, |w, p| {
            let r = eigen::spectral_radius(p)?;
            if r > rho.value {
                rho = Extremum {
                    value: r,
                    witness: Word::new(w.to_vec()),
                };
            }
            let v = p.operator_norm(kind)?;
            if v > norm.value {
                norm = Extremum {
                    value: v,
                    witness: Word::new(w.to_vec()),
                };
            }
            Ok(())
        });
        if let Err(e) = pass {
            return Sandwich {
                reports,
                error: Some(e),
            };
        }
        let lower = nth_root(rho.value, n);
        let upper = nth_root(norm.value, n);
        let (best_lower, best_upper) = match reports.last() {
            Some(prev) => (prev.best_lower.max(lower), prev.best_upper.min(upper)),
            None => (lower, upper),
        };
        reports.push(BoundReport {
            n,
            kind,
            lower,
            upper,
            best_lower,
            best_upper,
            witness_lower: rho.witness,
            witness_upper: norm.witness,
        });
    }
    Sandwich {
        reports,
        error: None,
    }
}

/// `max |tr(P)|^{1/n}` over the `n`-products.
///
/// This is a heuristic estimate: the trace formula only holds in the limit,
/// so a finite-`n` value may fall on either side of ρ(𝒜).
pub fn trace_estimate(set: &MatrixSet, n: usize, limits: &Limits) -> Result<Extremum> {
    let mut best = Extremum {
        value: f64::NEG_INFINITY,
        witness: Word::empty(),
    };
    for_each_product(set, n, limits, |w, p| {
        let t = p.trace().abs();
        if t > best.value {
            best = Extremum {
                value: t,
                witness: Word::new(w.to_vec()),
            };
        }
        Ok(())
    })?;
    best.value = nth_root(best.value, n);
    Ok(best)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KroneckerBounds {
    pub n: usize,
    /// `ρ(Σ A_i^{⊗n})`.
    pub sum_spectral_radius: f64,
    pub lower: f64,
    pub upper: f64,
}

/// Dimension up to which the Kronecker sum is materialized and handed to
/// the dense eigenvalue routine.
const DENSE_KRON_LIMIT: usize = 256;

/// Bounds for sets of nonnegative matrices from the spectral radius of
/// `S_n = Σ A_i^{⊗n}`: `r^{-1/n} ρ(S_n)^{1/n} <= ρ(𝒜) <= ρ(S_n)^{1/n}`.
pub fn kronecker_bounds(set: &MatrixSet, n: usize, limits: &Limits) -> Result<KroneckerBounds> {
    kronecker_bounds_impl(set, n, limits, DENSE_KRON_LIMIT)
}

fn kronecker_bounds_impl(
    set: &MatrixSet,
    n: usize,
    limits: &Limits,
    dense_limit: usize,
) -> Result<KroneckerBounds> {
    if n == 0 {
        return Err(JsrError::InvalidInput(
            "product length n must be at least 1".into(),
        ));
    }
    for (k, m) in set.members().iter().enumerate() {
        for i in 0..m.dim() {
            for j in 0..m.dim() {
                if m.get(i, j) < 0.0 {
                    return Err(JsrError::NegativeEntry {
                        matrix: k + 1,
                        row: i + 1,
                        col: j + 1,
                        value: m.get(i, j),
                    });
                }
            }
        }
    }
    let d = set.dim();
    let required = (d as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if required > limits.max_kron_rows as u128 {
        return Err(JsrError::KroneckerBudgetExceeded {
            required,
            budget: limits.max_kron_rows,
        });
    }
    let big = required as usize;
    let rho = if big <= dense_limit {
        let mut sum = Matrix::zeros(big);
        for a in set.members() {
            let mut power = a.clone();
            for _ in 1..n {
                power = power.kron(a);
            }
            sum = sum.add(&power);
        }
        eigen::spectral_radius(&sum)?
    } else {
        perron_root_matrix_free(set, n)?
    };
    let upper = nth_root(rho, n);
    let lower = upper / nth_root(set.len() as f64, n);
    Ok(KroneckerBounds {
        n,
        sum_spectral_radius: rho,
        lower,
        upper,
    })
}

/// Applies `a` along tensor mode `mode` of `x` (shape `d^n`, row-major).
fn apply_mode(a: &Matrix, x: &[f64], mode: usize, n: usize, out: &mut [f64]) {
    let d = a.dim();
    let stride = d.pow((n - 1 - mode) as u32);
    let block = stride * d;
    out.iter_mut().for_each(|v| *v = 0.0);
    for base in (0..x.len()).step_by(block) {
        for inner in 0..stride {
            for i in 0..d {
                let mut acc = 0.0;
                for l in 0..d {
                    acc += a.get(i, l) * x[base + l * stride + inner];
                }
                out[base + i * stride + inner] = acc;
            }
        }
    }
}

/// Perron root of `Σ A_i^{⊗n}` by power iteration on `S + I`, bracketed by
/// Collatz–Wielandt ratios, without materializing `S`.
fn perron_root_matrix_free(set: &MatrixSet, n: usize) -> Result<f64> {
    let size = set.dim().pow(n as u32);
    let mut x = vec![1.0 / size as f64; size];
    let mut buf_a = vec![0.0; size];
    let mut buf_b = vec![0.0; size];
    for _ in 0..eigen::MAX_ITERATIONS {
        // y = (S + I) x
        let mut y = x.clone();
        for a in set.members() {
            buf_a.copy_from_slice(&x);
            for mode in 0..n {
                apply_mode(a, &buf_a, mode, n, &mut buf_b);
                std::mem::swap(&mut buf_a, &mut buf_b);
            }
            y.iter_mut().zip(&buf_a).for_each(|(s, v)| *s += v);
        }
        let (mut lo, mut hi) = (f64::INFINITY, 0.0_f64);
        for (yi, xi) in y.iter().zip(&x) {
            let ratio = yi / xi;
            lo = lo.min(ratio);
            hi = hi.max(ratio);
        }
        if hi - lo <= eigen::CONVERGENCE_TOL * hi {
            return Ok((0.5 * (lo + hi) - 1.0).max(0.0));
        }
        let total: f64 = y.iter().sum();
        x = y.into_iter().map(|v| v / total).collect();
    }
    Err(JsrError::NoConvergence {
        what: "Perron root power iteration",
        iterations: eigen::MAX_ITERATIONS,
    })
}

/// True iff every `d`-product vanishes, which holds iff ρ(𝒜) = 0.
///
/// Entries count as zero below `1e-12 · (1 + max input magnitude)`.
pub fn zero_radius_test(set: &MatrixSet, limits: &Limits) -> Result<bool> {
    let tol = 1e-12 * (1.0 + set.max_abs());
    for item in enumerate_products(set, set.dim(), limits)? {
        let (_, p) = item?;
        if p.max_abs() > tol {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn set(ms: &[&[&[f64]]]) -> MatrixSet {
        MatrixSet::from_rows(
            &ms.iter()
                .map(|m| m.iter().map(|r| r.to_vec()).collect())
                .collect::<Vec<_>>(),
        )
        .unwrap()
    }

    fn pair() -> MatrixSet {
        set(&[&[&[1.0, 1.0], &[0.0, 1.0]], &[&[1.0, 0.0], &[1.0, 1.0]]])
    }

    fn rot() -> MatrixSet {
        set(&[&[&[0.0, -1.0], &[1.0, 0.0]]])
    }

    const GOLDEN: f64 = 1.618_033_988_749_895;

    #[test]
    fn gelfand_upper_examples() {
        let lim = Limits::default();
        let two = MatrixSet::new(vec![Matrix::diag(&[2.0])]).unwrap();
        assert_abs_diff_eq!(
            gelfand_upper(&two, 4, NormKind::L1, &lim).unwrap(),
            2.0,
            epsilon = 1e-15
        );
        let pm =
            MatrixSet::new(vec![Matrix::identity(2), Matrix::identity(2).scale(-1.0)]).unwrap();
        assert_abs_diff_eq!(
            gelfand_upper(&pm, 3, NormKind::LInf, &lim).unwrap(),
            1.0,
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(
            gelfand_upper(&pair(), 2, NormKind::L1, &lim).unwrap(),
            3f64.sqrt(),
            epsilon = 1e-15
        );
    }

    #[test]
    fn spectral_lower_examples() {
        let lim = Limits::default();
        let two = MatrixSet::new(vec![Matrix::diag(&[2.0])]).unwrap();
        assert_eq!(spectral_lower(&two, 1, &lim).unwrap(), 2.0);
        let nil = set(&[&[&[0.0, 1.0], &[0.0, 0.0]]]);
        assert_eq!(spectral_lower(&nil, 2, &lim).unwrap(), 0.0);
        assert_abs_diff_eq!(
            spectral_lower(&pair(), 2, &lim).unwrap(),
            GOLDEN,
            epsilon = 1e-14
        );
    }

    #[test]
    fn sandwich_examples() {
        let lim = Limits::default();
        let id = MatrixSet::new(vec![Matrix::identity(2)]).unwrap();
        for r in sandwich(&id, 3, NormKind::L2, &lim).into_result().unwrap() {
            assert_abs_diff_eq!(r.lower, 1.0, epsilon = 1e-14);
            assert_abs_diff_eq!(r.upper, 1.0, epsilon = 1e-14);
        }
        for r in sandwich(&rot(), 4, NormKind::L2, &lim)
            .into_result()
            .unwrap()
        {
            assert_abs_diff_eq!(r.lower, 1.0, epsilon = 1e-14);
            assert_abs_diff_eq!(r.upper, 1.0, epsilon = 1e-14);
        }
        let reports = sandwich(&pair(), 8, NormKind::L2, &lim)
            .into_result()
            .unwrap();
        assert!(reports[7].best_lower >= 1.618033);
        for w in reports.windows(2) {
            assert!(w[1].best_lower >= w[0].best_lower);
            assert!(w[1].best_upper <= w[0].best_upper);
            assert!(w[1].best_upper - w[1].best_lower <= w[0].best_upper - w[0].best_lower);
        }
        assert_eq!(reports[1].witness_lower.one_based(), vec![1, 2]);
    }

    #[test]
    fn sandwich_returns_partial_reports() {
        let lim = Limits {
            max_words: 8,
            ..Limits::default()
        };
        let out = sandwich(&pair(), 5, NormKind::L1, &lim);
        assert_eq!(out.reports.len(), 3);
        assert!(matches!(
            out.error,
            Some(JsrError::BudgetExceeded { required: 16, .. })
        ));
    }

    #[test]
    fn trace_examples() {
        let lim = Limits::default();
        let two = MatrixSet::new(vec![Matrix::diag(&[2.0])]).unwrap();
        assert_eq!(trace_estimate(&two, 1, &lim).unwrap().value, 2.0);
        assert_abs_diff_eq!(
            trace_estimate(&rot(), 2, &lim).unwrap().value,
            2f64.sqrt(),
            epsilon = 1e-15
        );
        let t = trace_estimate(&pair(), 2, &lim).unwrap();
        assert_abs_diff_eq!(t.value, 3f64.sqrt(), epsilon = 1e-15);
        assert_eq!(t.witness.one_based(), vec![1, 2]);
    }

    #[test]
    fn kronecker_examples() {
        let lim = Limits::default();
        let two = MatrixSet::new(vec![Matrix::diag(&[2.0, 2.0])]).unwrap();
        let k = kronecker_bounds(&two, 2, &lim).unwrap();
        assert_abs_diff_eq!(k.sum_spectral_radius, 4.0, epsilon = 1e-12);
        assert_abs_diff_eq!(k.lower, 2.0, epsilon = 1e-12);
        assert_abs_diff_eq!(k.upper, 2.0, epsilon = 1e-12);

        let scalars = MatrixSet::new(vec![Matrix::diag(&[1.0]), Matrix::diag(&[3.0])]).unwrap();
        let k = kronecker_bounds(&scalars, 1, &lim).unwrap();
        assert_eq!((k.lower, k.upper), (2.0, 4.0));

        let k = kronecker_bounds(&pair(), 2, &lim).unwrap();
        assert!(k.lower <= GOLDEN && GOLDEN <= k.upper, "{k:?}");
    }

    #[test]
    fn kronecker_errors() {
        let lim = Limits::default();
        let neg = set(&[&[&[1.0, -1.0], &[0.0, 1.0]]]);
        assert!(matches!(
            kronecker_bounds(&neg, 1, &lim),
            Err(JsrError::NegativeEntry {
                matrix: 1,
                row: 1,
                col: 2,
                ..
            })
        ));
        assert!(matches!(
            kronecker_bounds(&pair(), 13, &lim),
            Err(JsrError::KroneckerBudgetExceeded { required: 8192, .. })
        ));
    }

    #[test]
    fn matrix_free_perron_root_matches_dense() {
        let lim = Limits::default();
        let s = set(&[&[&[0.5, 0.2], &[0.3, 0.9]], &[&[0.1, 0.7], &[0.4, 0.2]]]);
        for n in 1..=4 {
            let dense = kronecker_bounds_impl(&s, n, &lim, usize::MAX).unwrap();
            let free = kronecker_bounds_impl(&s, n, &lim, 0).unwrap();
            assert_abs_diff_eq!(
                dense.sum_spectral_radius,
                free.sum_spectral_radius,
                epsilon = 1e-9
            );
        }
    }

    #[test]
    fn zero_test_examples() {
        let lim = Limits::default();
        assert!(zero_radius_test(&set(&[&[&[0.0, 1.0], &[0.0, 0.0]]]), &lim).unwrap());
        assert!(
            !zero_radius_test(&MatrixSet::new(vec![Matrix::identity(2)]).unwrap(), &lim).unwrap()
        );
        let two_nil = set(&[&[&[0.0, 1.0], &[0.0, 0.0]], &[&[0.0, 0.0], &[1.0, 0.0]]]);
        assert!(!zero_radius_test(&two_nil, &lim).unwrap());
    }
}
