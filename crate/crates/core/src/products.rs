//! Exhaustive enumeration of the `r^n` products of length `n`.
//!
//! Products are visited in lexicographic order of the word `(i_1, …, i_n)`.
//! The enumeration carries one prefix product per depth, so memory is
//! `O(n·d²)` regardless of how many words are visited.

use serde::Serialize;

use crate::error::{JsrError, Result};
use crate::matrix::{Matrix, MatrixSet, NormKind, Word};

/// Resource limits shared by the enumerating operations.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Limits {
    /// Maximum number of words visited by one enumeration.
    pub max_words: u128,
    /// Maximum dimension `d^n` of a Kronecker power.
    pub max_kron_rows: usize,
    /// Entry magnitude at which a product is considered an overflow risk.
    pub overflow_threshold: f64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_words: 1 << 24,
            max_kron_rows: 4096,
            overflow_threshold: 1e150,
        }
    }
}

/// `r^n`, saturating at `u128::MAX`.
pub fn word_count(r: usize, n: usize) -> u128 {
    let mut total: u128 = 1;
    for _ in 0..n {
        total = total.saturating_mul(r as u128);
    }
    total
}

pub fn check_budget(r: usize, n: usize, limits: &Limits) -> Result<u128> {
    let required = word_count(r, n);
    if required > limits.max_words {
        return Err(JsrError::BudgetExceeded {
            required,
            budget: limits.max_words,
        });
    }
    Ok(required)
}

fn require_positive(n: usize) -> Result<()> {
    if n == 0 {
        return Err(JsrError::InvalidInput(
            "product length n must be at least 1".into(),
        ));
    }
    Ok(())
}

/// Odometer over words of length `n` with cached prefix products.
struct Odometer<'a> {
    set: &'a MatrixSet,
    threshold: f64,
    idx: Vec<usize>,
    levels: Vec<Matrix>,
    /// First level whose product must be recomputed, `None` when exhausted.
    dirty_from: Option<usize>,
}

impl<'a> Odometer<'a> {
    fn new(set: &'a MatrixSet, n: usize, limits: &Limits) -> Result<Self> {
        require_positive(n)?;
        check_budget(set.len(), n, limits)?;
        Ok(Odometer {
            set,
            threshold: limits.overflow_threshold,
            idx: vec![0; n],
            levels: vec![Matrix::identity(set.dim()); n + 1],
            dirty_from: Some(1),
        })
    }

    /// Computes the current product; `Ok(false)` once every word was visited.
    fn load(&mut self) -> Result<bool> {
        let Some(from) = self.dirty_from else {
            return Ok(false);
        };
        let n = self.idx.len();
        for k in from..=n {
            let (head, tail) = self.levels.split_at_mut(k);
            let factor = self.set.get(self.idx[k - 1]);
            let out = &mut tail[0];
            factor.mul_into(&head[k - 1], out.data_mut());
            let magnitude = out.max_abs();
            if magnitude > self.threshold || !magnitude.is_finite() {
                self.dirty_from = None;
                return Err(JsrError::OverflowRisk {
                    magnitude,
                    threshold: self.threshold,
                });
            }
        }
        Ok(true)
    }

    fn current(&self) -> (&[usize], &Matrix) {
        (&self.idx, &self.levels[self.idx.len()])
    }

    fn advance(&mut self) {
        let r = self.set.len();
        let mut k = self.idx.len();
        while k > 0 {
            self.idx[k - 1] += 1;
            if self.idx[k - 1] < r {
                break;
            }
            self.idx[k - 1] = 0;
            k -= 1;
        }
        self.dirty_from = if k == 0 { None } else { Some(k) };
    }
}

/// Visits every product of length `n` in lexicographic word order.
///
/// The callback receives the zero-based word and the product
/// `A_{i_n} ⋯ A_{i_1}`; an error from the callback stops the enumeration.
pub fn for_each_product<F>(set: &MatrixSet, n: usize, limits: &Limits, mut f: F) -> Result<()>
where
    F: FnMut(&[usize], &Matrix) -> Result<()>,
{
    let mut odo = Odometer::new(set, n, limits)?;
    while odo.load()? {
        let (w, m) = odo.current();
        f(w, m)?;
        odo.advance();
    }
    Ok(())
}

/// Streaming iterator over `(Word, product)` pairs.
pub struct Products<'a> {
    odo: Odometer<'a>,
}

impl Iterator for Products<'_> {
    type Item = Result<(Word, Matrix)>;

    fn next(&mut self) -> Option<Self::Item> {
        match self.odo.load() {
            Ok(false) => None,
            Ok(true) => {
                let (w, m) = self.odo.current();
                let item = (Word::new(w.to_vec()), m.clone());
                self.odo.advance();
                Some(Ok(item))
            }
            Err(e) => Some(Err(e)),
        }
    }
}

pub fn enumerate_products<'a>(
    set: &'a MatrixSet,
    n: usize,
    limits: &Limits,
) -> Result<Products<'a>> {
    Ok(Products {
        odo: Odometer::new(set, n, limits)?,
    })
}

/// A maximal (or minimal) value over products with the lexicographically
/// first word attaining it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Extremum {
    pub value: f64,
    pub witness: Word,
}

/// `‖𝒜^n‖ = max over n-products of the operator norm`.
pub fn matrix_set_norm(
    set: &MatrixSet,
    n: usize,
    kind: NormKind,
    limits: &Limits,
) -> Result<Extremum> {
    let mut best = Extremum {
        value: f64::NEG_INFINITY,
        witness: Word::empty(),
    };
    for_each_product(set, n, limits, |w, p| {
        let v = p.operator_norm(kind)?;
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

/// Maximum operator norm over all products of length `0..=p` (identity included).
pub fn max_norm_up_to(set: &MatrixSet, p: usize, kind: NormKind, limits: &Limits) -> Result<f64> {
    let mut best = 1.0_f64;
    for k in 1..=p {
        best = best.max(matrix_set_norm(set, k, kind, limits)?.value);
    }
    Ok(best)
}
