//! Measure of irreducibility.
//!
//! For a unit vector `x`, `r(x)` is the radius of the largest norm ball
//! centred at the origin inside `conv(𝒜_p x ∪ −𝒜_p x)`, where `𝒜_p` holds
//! every product of at most `p` factors (the identity included). The
//! measure `χ_p` is the infimum of `r` over the unit sphere; for
//! `p >= d − 1` it is positive exactly when the set has no common
//! invariant subspace.
//!
//! [`chi_measure`] samples `r` on a sphere net. The sampled minimum bounds
//! `χ_p` from above. Since `r` is Lipschitz with constant at most
//! `max_{A ∈ 𝒜_p} ‖A‖`, subtracting `L · covering` from the sampled
//! minimum bounds `χ_p` from below.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::eigen;
use crate::error::{JsrError, Result};
use crate::hull;
use crate::matrix::{dot, norm_unchecked, Matrix, MatrixSet, NormKind, Tolerance};
use crate::products::{word_count, Limits};
use crate::sphere::sphere_net;

const DEDUP_TOL: f64 = 1e-12;

/// `𝒜_p(x) ∪ 𝒜_p(−x)` with near-duplicates removed.
#[derive(Debug, Clone, PartialEq)]
pub struct ReachSet {
    pub base: Vec<f64>,
    pub p: usize,
    pub points: Vec<Vec<f64>>,
}

impl ReachSet {
    pub fn dim(&self) -> usize {
        self.base.len()
    }
}

fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
    a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
}

fn check_reach_budget(r: usize, p: usize, limits: &Limits) -> Result<()> {
    let required = (0..=p).fold(0u128, |acc, k| acc.saturating_add(word_count(r, k)));
    if required > limits.max_words {
        return Err(JsrError::BudgetExceeded {
            required,
            budget: limits.max_words,
        });
    }
    Ok(())
}

pub fn reach_set(set: &MatrixSet, p: usize, x: &[f64], limits: &Limits) -> Result<ReachSet> {
    if x.len() != set.dim() {
        return Err(JsrError::DimensionMismatch {
            expected: set.dim(),
            found: x.len(),
        });
    }
    if x.iter().all(|v| *v == 0.0) || x.iter().any(|v| !v.is_finite()) {
        return Err(JsrError::InvalidInput(
            "base point must be finite and nonzero".into(),
        ));
    }
    check_reach_budget(set.len(), p, limits)?;
    let tol = DEDUP_TOL * (1.0 + norm_unchecked(x, NormKind::LInf));
    let mut found: Vec<Vec<f64>> = vec![x.to_vec()];
    let mut frontier: Vec<Vec<f64>> = vec![x.to_vec()];
    // a duplicate's images are generated from its first copy, so only new
    // vectors are extended
    for _ in 0..p {
        let mut next = Vec::new();
        for v in &frontier {
            for a in set.members() {
                let w = a.mul_vec(v);
                if !found.iter().any(|u| close(u, &w, tol)) {
                    found.push(w.clone());
                    next.push(w);
                }
            }
        }
        frontier = next;
    }
    let mut points = found.clone();
    for v in &found {
        let neg: Vec<f64> = v.iter().map(|c| -c).collect();
        if !points.iter().any(|u| close(u, &neg, tol)) {
            points.push(neg);
        }
    }
    Ok(ReachSet {
        base: x.to_vec(),
        p,
        points,
    })
}

pub fn inscribed_radius(points: &ReachSet, kind: NormKind) -> Result<f64> {
    hull::inscribed_radius(&points.points, points.dim(), kind)
}

/// Precomputed products of length `0..=p` for repeated evaluation of `r(x)`.
#[derive(Debug, Clone)]
pub struct RadiusEvaluator {
    dim: usize,
    kind: NormKind,
    products: Vec<Matrix>,
    max_norm: f64,
}

impl RadiusEvaluator {
    pub fn new(set: &MatrixSet, p: usize, kind: NormKind, limits: &Limits) -> Result<Self> {
        check_reach_budget(set.len(), p, limits)?;
        let d = set.dim();
        let tol = DEDUP_TOL * (1.0 + set.max_abs());
        let mut products = vec![Matrix::identity(d)];
        let mut frontier = vec![Matrix::identity(d)];
        for _ in 0..p {
            let mut next = Vec::new();
            for m in &frontier {
                for a in set.members() {
                    let prod = a.mul(m);
                    if prod.max_abs() > limits.overflow_threshold {
                        return Err(JsrError::OverflowRisk {
                            magnitude: prod.max_abs(),
                            threshold: limits.overflow_threshold,
                        });
                    }
                    if !products.iter().any(|q| close(q.data(), prod.data(), tol)) {
                        products.push(prod.clone());
                        next.push(prod);
                    }
                }
            }
            frontier = next;
        }
        let mut max_norm = 0.0_f64;
        for m in &products {
            max_norm = max_norm.max(m.operator_norm(kind)?);
        }
        Ok(RadiusEvaluator {
            dim: d,
            kind,
            products,
            max_norm,
        })
    }

    /// `max_{A ∈ 𝒜_p} ‖A‖` (at least 1, the identity being included).
    pub fn max_norm(&self) -> f64 {
        self.max_norm
    }

    /// Lipschitz constant used for certification, `2 · max ‖A‖`.
    pub fn lipschitz(&self) -> f64 {
        2.0 * self.max_norm
    }

    pub fn reach_points(&self, x: &[f64]) -> Vec<Vec<f64>> {
        let mut pts: Vec<Vec<f64>> = Vec::with_capacity(2 * self.products.len());
        for m in &self.products {
            let v = m.mul_vec(x);
            pts.push(v.iter().map(|c| -c).collect());
            pts.push(v);
        }
        pts
    }

    /// `r(x)`, the inscribed radius of the symmetric hull of `𝒜_p x`.
    pub fn radius(&self, x: &[f64]) -> Result<f64> {
        hull::inscribed_radius(&self.reach_points(x), self.dim, self.kind)
    }

    /// Upper estimate of `r(x)` from the support function sampled along
    /// `directions`: `min_u h(u) / ‖u‖_*` with `h(u) = max |u·v|`.
    pub fn radius_upper_estimate(&self, x: &[f64], directions: &[Vec<f64>]) -> f64 {
        let pts: Vec<Vec<f64>> = self.products.iter().map(|m| m.mul_vec(x)).collect();
        directions
            .iter()
            .map(|u| {
                let h = pts.iter().map(|v| dot(u, v).abs()).fold(0.0, f64::max);
                h / norm_unchecked(u, self.kind.dual())
            })
            .fold(f64::INFINITY, f64::min)
    }
}

/// Sampled estimate of `χ_p` with a certified lower bound.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChiEstimate {
    pub p: usize,
    pub kind: NormKind,
    /// Minimum of `r(x)` over the evaluated unit vectors; an upper bound on χ_p.
    pub sampled_inf: f64,
    /// `max(0, sampled_inf − lipschitz · covering_radius)`; a lower bound on χ_p.
    pub certified_lower: f64,
    pub lipschitz: f64,
    /// Requested mesh.
    pub mesh: f64,
    /// Covering radius of the net actually used, in the same norm.
    pub covering_radius: f64,
    pub argmin: Vec<f64>,
    pub samples: usize,
    /// False for the sampling estimate, whose `sampled_inf` is an upper
    /// estimate only and whose `certified_lower` is always zero.
    pub certified: bool,
}

/// Unit vectors lying in the candidate invariant subspaces of the members:
/// real eigenvectors (invariant lines) and, in three dimensions, a vector
/// orthogonal to each real left eigenvector (invariant planes).
fn invariant_candidates(set: &MatrixSet) -> Result<Vec<Vec<f64>>> {
    let d = set.dim();
    let mut out = Vec::new();
    if !(2..=3).contains(&d) {
        return Ok(out);
    }
    for a in set.members() {
        out.extend(eigen::real_eigenvectors(a)?);
        if d == 3 {
            for w in eigen::real_eigenvectors(&a.transpose())? {
                let k = (0..3)
                    .min_by(|&i, &j| w[i].abs().total_cmp(&w[j].abs()))
                    .unwrap_or(0);
                let mut e = [0.0; 3];
                e[k] = 1.0;
                let u = [
                    w[1] * e[2] - w[2] * e[1],
                    w[2] * e[0] - w[0] * e[2],
                    w[0] * e[1] - w[1] * e[0],
                ];
                out.push(u.to_vec());
            }
        }
    }
    Ok(out)
}

/// Samples `r(x)` over a net of the `kind`-unit sphere (dimensions 1 to 3).
///
/// Besides the net, the real eigendirections of the members are evaluated,
/// so that invariant subspaces of reducible sets are hit exactly.
pub fn chi_measure(
    set: &MatrixSet,
    p: usize,
    kind: NormKind,
    mesh: f64,
    limits: &Limits,
) -> Result<ChiEstimate> {
    let d = set.dim();
    if p == 0 {
        return Err(JsrError::InvalidInput("p must be at least 1".into()));
    }
    if d > 3 {
        return Err(JsrError::ExactHullUnavailable { dim: d });
    }
    let eval = RadiusEvaluator::new(set, p, kind, limits)?;
    let net = sphere_net(d, kind, mesh, true)?;
    let extra: Vec<Vec<f64>> = invariant_candidates(set)?
        .into_iter()
        .map(|v| {
            let n = norm_unchecked(&v, kind);
            v.into_iter().map(|c| c / n).collect()
        })
        .collect();
    let mut best = f64::INFINITY;
    let mut argmin = Vec::new();
    let mut samples = 0usize;
    for x in net.points.iter().chain(extra.iter()) {
        let r = eval.radius(x)?;
        samples += 1;
        if r < best {
            best = r;
            argmin = x.clone();
        }
    }
    let lipschitz = eval.lipschitz();
    Ok(ChiEstimate {
        p,
        kind,
        sampled_inf: best,
        certified_lower: (best - lipschitz * net.covering).max(0.0),
        lipschitz,
        mesh,
        covering_radius: net.covering,
        argmin,
        samples,
        certified: true,
    })
}

/// Support-function sampling estimate of `χ_p` for any dimension.
///
/// Both the base points and the support directions are pseudorandom from
/// `seed`. The result only estimates `χ_p` from above; it carries no
/// certificate.
pub fn chi_sampled_estimate(
    set: &MatrixSet,
    p: usize,
    kind: NormKind,
    base_samples: usize,
    directions: usize,
    seed: u64,
    limits: &Limits,
) -> Result<ChiEstimate> {
    if p == 0 || base_samples == 0 || directions == 0 {
        return Err(JsrError::InvalidInput(
            "p and sample counts must be positive".into(),
        ));
    }
    let d = set.dim();
    let eval = RadiusEvaluator::new(set, p, kind, limits)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut random_unit = |k: NormKind| -> Vec<f64> {
        loop {
            let v: Vec<f64> = (0..d).map(|_| rng.random_range(-1.0..1.0)).collect();
            let n2 = norm_unchecked(&v, NormKind::L2);
            if n2 > 1e-3 && n2 <= 1.0 {
                let n = norm_unchecked(&v, k);
                return v.into_iter().map(|c| c / n).collect();
            }
        }
    };
    let dirs: Vec<Vec<f64>> = (0..directions).map(|_| random_unit(NormKind::L2)).collect();
    let mut best = f64::INFINITY;
    let mut argmin = Vec::new();
    for _ in 0..base_samples {
        let x = random_unit(kind);
        let r = eval.radius_upper_estimate(&x, &dirs);
        if r < best {
            best = r;
            argmin = x;
        }
    }
    Ok(ChiEstimate {
        p,
        kind,
        sampled_inf: best,
        certified_lower: 0.0,
        lipschitz: eval.lipschitz(),
        mesh: f64::NAN,
        covering_radius: f64::NAN,
        argmin,
        samples: base_samples,
        certified: false,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Irreducibility {
    Irreducible,
    Reducible,
    /// Reducible over ℂ; whether a real invariant subspace exists is not
    /// decided (only possible in even dimension >= 4).
    ComplexReducible,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BurnsideReport {
    /// Dimension of the span of all products (the generated algebra).
    pub span_dim: usize,
    pub full_dim: usize,
    pub verdict: Irreducibility,
}

/// Maximum dimension accepted by the algebra-span test.
pub const BURNSIDE_MAX_DIM: usize = 8;

/// Span of the algebra generated by the set and the identity.
///
/// Returns an orthonormal basis (as flattened `d × d` matrices). Products
/// of growing length are added until the span stops growing.
fn algebra_basis(set: &MatrixSet) -> Vec<Vec<f64>> {
    let d = set.dim();
    let full = d * d;
    let gens: Vec<Matrix> = set
        .members()
        .iter()
        .map(|m| {
            let s = m.max_abs();
            if s > 0.0 {
                m.scale(1.0 / s)
            } else {
                m.clone()
            }
        })
        .collect();
    let mut basis: Vec<Vec<f64>> = Vec::new();
    let mut queue: Vec<Matrix> = Vec::new();
    let try_add = |m: &Matrix, basis: &mut Vec<Vec<f64>>, queue: &mut Vec<Matrix>| {
        let n = norm_unchecked(m.data(), NormKind::L2);
        if n == 0.0 {
            return;
        }
        let mut v: Vec<f64> = m.data().iter().map(|x| x / n).collect();
        // two Gram–Schmidt passes
        for _ in 0..2 {
            for b in basis.iter() {
                let c = dot(b, &v);
                v.iter_mut().zip(b).for_each(|(x, y)| *x -= c * y);
            }
        }
        let res = norm_unchecked(&v, NormKind::L2);
        if res > 1e-10 {
            v.iter_mut().for_each(|x| *x /= res);
            queue.push(Matrix::from_raw(d, v.clone()));
            basis.push(v);
        }
    };
    try_add(&Matrix::identity(d), &mut basis, &mut queue);
    while let Some(b) = queue.pop() {
        for g in &gens {
            if basis.len() == full {
                return basis;
            }
            try_add(&g.mul(&b), &mut basis, &mut queue);
        }
    }
    basis
}

/// Algebra-span irreducibility test.
///
/// Full span (`d²`) is equivalent to irreducibility over ℂ, which implies
/// real irreducibility. For `d = 2` a two-dimensional algebra `span{I, B}`
/// is real-irreducible iff `B` has no real eigenvalue. In odd dimension a
/// real-irreducible set is also complex-irreducible, so a deficient span
/// means reducible.
pub fn burnside_test(set: &MatrixSet) -> Result<BurnsideReport> {
    let d = set.dim();
    if d > BURNSIDE_MAX_DIM {
        return Err(JsrError::UnsupportedDimension {
            dim: d,
            reason: "algebra-span test needs d <= 8",
        });
    }
    let basis = algebra_basis(set);
    let full = d * d;
    let verdict = if basis.len() == full {
        Irreducibility::Irreducible
    } else if d == 2 && basis.len() == 2 {
        // basis[1] is orthogonal to I, i.e. traceless: real spectrum iff det <= 0
        let b = &basis[1];
        let det = b[0] * b[3] - b[1] * b[2];
        if det > 1e-10 {
            Irreducibility::Irreducible
        } else {
            Irreducibility::Reducible
        }
    } else if d % 2 == 1 || d == 2 {
        Irreducibility::Reducible
    } else {
        Irreducibility::ComplexReducible
    };
    Ok(BurnsideReport {
        span_dim: basis.len(),
        full_dim: full,
        verdict,
    })
}

pub fn burnside_irreducible(set: &MatrixSet) -> Result<bool> {
    Ok(burnside_test(set)?.verdict == Irreducibility::Irreducible)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Lemma1Status {
    Consistent,
    /// Irreducible, sampled χ positive, but the net is too coarse to certify it.
    Inconclusive,
    Inconsistent,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Lemma1Report {
    pub burnside: BurnsideReport,
    pub chi: ChiEstimate,
    pub status: Lemma1Status,
}

/// Compares the algebra-span verdict with the sign of the sampled χ_p.
pub fn lemma1_crosscheck(
    set: &MatrixSet,
    p: usize,
    kind: NormKind,
    mesh: f64,
    tol: &Tolerance,
    limits: &Limits,
) -> Result<Lemma1Report> {
    let d = set.dim();
    if p + 1 < d {
        return Err(JsrError::InvalidInput(format!(
            "p = {p} must be at least d - 1 = {}",
            d - 1
        )));
    }
    let burnside = burnside_test(set)?;
    let chi = chi_measure(set, p, kind, mesh, limits)?;
    let positive = chi.sampled_inf > tol.abs;
    let status = match burnside.verdict {
        Irreducibility::Reducible if positive => Lemma1Status::Inconsistent,
        Irreducibility::Reducible => Lemma1Status::Consistent,
        Irreducibility::Irreducible if !positive => Lemma1Status::Inconsistent,
        Irreducibility::Irreducible if chi.certified_lower > 0.0 => Lemma1Status::Consistent,
        Irreducibility::Irreducible => Lemma1Status::Inconclusive,
        Irreducibility::ComplexReducible => Lemma1Status::Inconclusive,
    };
    Ok(Lemma1Report {
        burnside,
        chi,
        status,
    })
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

    fn rot() -> MatrixSet {
        set(&[&[&[0.0, -1.0], &[1.0, 0.0]]])
    }

    fn pair() -> MatrixSet {
        set(&[&[&[1.0, 1.0], &[0.0, 1.0]], &[&[1.0, 0.0], &[1.0, 1.0]]])
    }

    fn diag_pair() -> MatrixSet {
        set(&[&[&[2.0, 0.0], &[0.0, 3.0]], &[&[1.0, 0.0], &[0.0, 5.0]]])
    }

    fn sorted(mut v: Vec<Vec<f64>>) -> Vec<Vec<f64>> {
        v.sort_by(|a, b| a.partial_cmp(b).unwrap());
        v
    }

    #[test]
    fn reach_set_examples() {
        let lim = Limits::default();
        let id = MatrixSet::new(vec![Matrix::identity(2)]).unwrap();
        let rs = reach_set(&id, 1, &[1.0, 0.0], &lim).unwrap();
        assert_eq!(
            sorted(rs.points),
            sorted(vec![vec![1.0, 0.0], vec![-1.0, 0.0]])
        );

        let rs = reach_set(&rot(), 1, &[1.0, 0.0], &lim).unwrap();
        assert_eq!(
            sorted(rs.points),
            sorted(vec![
                vec![1.0, 0.0],
                vec![0.0, 1.0],
                vec![-1.0, 0.0],
                vec![0.0, -1.0]
            ])
        );

        let shear = set(&[&[&[1.0, 1.0], &[0.0, 1.0]]]);
        let rs = reach_set(&shear, 2, &[0.0, 1.0], &lim).unwrap();
        assert_eq!(
            sorted(rs.points),
            sorted(vec![
                vec![0.0, 1.0],
                vec![1.0, 1.0],
                vec![2.0, 1.0],
                vec![0.0, -1.0],
                vec![-1.0, -1.0],
                vec![-2.0, -1.0]
            ])
        );
        assert!(reach_set(&shear, 2, &[0.0, 0.0], &lim).is_err());
    }

    #[test]
    fn inscribed_radius_examples() {
        let lim = Limits::default();
        let rs = reach_set(&rot(), 1, &[1.0, 0.0], &lim).unwrap();
        assert_abs_diff_eq!(
            inscribed_radius(&rs, NormKind::L2).unwrap(),
            0.5f64.sqrt(),
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(
            inscribed_radius(&rs, NormKind::L1).unwrap(),
            1.0,
            epsilon = 1e-15
        );
        let id = MatrixSet::new(vec![Matrix::identity(2)]).unwrap();
        let rs = reach_set(&id, 3, &[1.0, 0.0], &lim).unwrap();
        for kind in NormKind::ALL {
            assert_eq!(inscribed_radius(&rs, kind).unwrap(), 0.0);
        }
    }

    #[test]
    fn chi_examples() {
        let lim = Limits::default();
        let id = MatrixSet::new(vec![Matrix::identity(2)]).unwrap();
        let chi = chi_measure(&id, 2, NormKind::L2, 0.05, &lim).unwrap();
        assert_eq!(chi.sampled_inf, 0.0);
        assert_eq!(chi.certified_lower, 0.0);

        let chi = chi_measure(&rot(), 1, NormKind::L2, 0.01, &lim).unwrap();
        assert_abs_diff_eq!(chi.sampled_inf, 0.5f64.sqrt(), epsilon = 1e-12);
        assert!(chi.certified_lower > 0.0 && chi.certified_lower <= chi.sampled_inf);
        assert_abs_diff_eq!(chi.lipschitz, 2.0, epsilon = 1e-12);

        let chi = chi_measure(&pair(), 1, NormKind::L2, 0.01, &lim).unwrap();
        assert!(chi.sampled_inf > 0.0, "{chi:?}");
        assert!(chi.certified_lower > 0.0);
    }

    #[test]
    fn chi_refuses_high_dimension_and_zero_p() {
        let lim = Limits::default();
        let big = MatrixSet::new(vec![Matrix::identity(4)]).unwrap();
        assert!(matches!(
            chi_measure(&big, 3, NormKind::L2, 0.1, &lim),
            Err(JsrError::ExactHullUnavailable { dim: 4 })
        ));
        assert!(chi_measure(&rot(), 0, NormKind::L2, 0.1, &lim).is_err());
    }

    #[test]
    fn sampled_estimate_bounds_exact_value_from_above() {
        let lim = Limits::default();
        let exact = chi_measure(&pair(), 1, NormKind::L2, 0.01, &lim).unwrap();
        let est = chi_sampled_estimate(&pair(), 1, NormKind::L2, 2000, 400, 1, &lim).unwrap();
        assert!(!est.certified);
        assert_eq!(est.certified_lower, 0.0);
        assert!(est.sampled_inf >= exact.certified_lower);
        // r(x) upper estimate never drops below the exact radius
        let eval = RadiusEvaluator::new(&pair(), 1, NormKind::L2, &lim).unwrap();
        let dirs = sphere_net(2, NormKind::L2, 0.05, false).unwrap().points;
        for x in sphere_net(2, NormKind::L2, 0.1, false).unwrap().points {
            assert!(eval.radius_upper_estimate(&x, &dirs) >= eval.radius(&x).unwrap() - 1e-12);
        }
        // four-dimensional sets go through the sampling estimate
        let big = MatrixSet::new(vec![Matrix::identity(4)]).unwrap();
        let est = chi_sampled_estimate(&big, 3, NormKind::L2, 50, 50, 2, &lim).unwrap();
        assert!(est.sampled_inf < 0.05);
    }

    #[test]
    fn burnside_examples() {
        let id = MatrixSet::new(vec![Matrix::identity(2)]).unwrap();
        let rep = burnside_test(&id).unwrap();
        assert_eq!((rep.span_dim, rep.verdict), (1, Irreducibility::Reducible));
        let rep = burnside_test(&pair()).unwrap();
        assert_eq!(
            (rep.span_dim, rep.verdict),
            (4, Irreducibility::Irreducible)
        );
        assert!(!burnside_irreducible(&diag_pair()).unwrap());
        // span{I, R} has dimension 2 but R has no real eigenvector
        let rep = burnside_test(&rot()).unwrap();
        assert_eq!(
            (rep.span_dim, rep.verdict),
            (2, Irreducibility::Irreducible)
        );
        // a Jordan block leaves span{I, N} with a real invariant line
        let jordan = set(&[&[&[1.0, 1.0], &[0.0, 1.0]]]);
        assert_eq!(
            burnside_test(&jordan).unwrap().verdict,
            Irreducibility::Reducible
        );
        // rotation by 90° in two orthogonal planes of ℝ⁴
        let j = Matrix::from_rows(&[
            vec![0.0, -1.0, 0.0, 0.0],
            vec![1.0, 0.0, 0.0, 0.0],
            vec![0.0, 0.0, 0.0, -1.0],
            vec![0.0, 0.0, 1.0, 0.0],
        ])
        .unwrap();
        let rep = burnside_test(&MatrixSet::new(vec![j]).unwrap()).unwrap();
        assert_eq!(rep.verdict, Irreducibility::ComplexReducible);
    }

    #[test]
    fn lemma1_examples() {
        let lim = Limits::default();
        let tol = Tolerance::default();
        let id = MatrixSet::new(vec![Matrix::identity(2)]).unwrap();
        let rep = lemma1_crosscheck(&id, 1, NormKind::L2, 0.05, &tol, &lim).unwrap();
        assert_eq!(rep.status, Lemma1Status::Consistent);
        assert_eq!(rep.chi.sampled_inf, 0.0);

        let rep = lemma1_crosscheck(&rot(), 1, NormKind::L2, 0.01, &tol, &lim).unwrap();
        assert_eq!(rep.burnside.verdict, Irreducibility::Irreducible);
        assert_eq!(rep.status, Lemma1Status::Consistent);

        let rep = lemma1_crosscheck(&diag_pair(), 1, NormKind::L2, 0.01, &tol, &lim).unwrap();
        assert_eq!(rep.burnside.verdict, Irreducibility::Reducible);
        assert!(rep.chi.sampled_inf <= 1e-12);
        assert_eq!(rep.status, Lemma1Status::Consistent);

        assert!(lemma1_crosscheck(
            &MatrixSet::new(vec![Matrix::identity(3)]).unwrap(),
            1,
            NormKind::L2,
            0.1,
            &tol,
            &lim
        )
        .is_err());
    }

    #[test]
    fn radius_is_even_in_x() {
        let lim = Limits::default();
        let eval = RadiusEvaluator::new(&pair(), 1, NormKind::L1, &lim).unwrap();
        for x in sphere_net(2, NormKind::L1, 0.3, false).unwrap().points {
            let neg: Vec<f64> = x.iter().map(|v| -v).collect();
            assert_abs_diff_eq!(
                eval.radius(&x).unwrap(),
                eval.radius(&neg).unwrap(),
                epsilon = 1e-12
            );
        }
    }
}
