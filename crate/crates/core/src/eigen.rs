//! Eigenvalue routines for small dense matrices.
//!
//! Dimensions 1 and 2 use closed forms. Larger matrices are reduced to upper
//! Hessenberg form by Householder reflections and then iterated with the
//! Francis double-shift QR algorithm.

use crate::error::{JsrError, Result};
use crate::matrix::{norm_unchecked, Matrix, NormKind};

/// Iteration cap shared by the QR and power iterations.
pub const MAX_ITERATIONS: usize = 10_000;
/// Relative convergence tolerance of the power iteration.
pub const CONVERGENCE_TOL: f64 = 1e-12;

/// A (possibly complex) eigenvalue `re + i·im`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Eigenvalue {
    pub re: f64,
    pub im: f64,
}

impl Eigenvalue {
    pub fn modulus(&self) -> f64 {
        self.re.hypot(self.im)
    }
}

pub fn spectral_radius(a: &Matrix) -> Result<f64> {
    match a.dim() {
        1 => Ok(a.get(0, 0).abs()),
        2 => Ok(spectral_radius_2x2(
            a.get(0, 0),
            a.get(0, 1),
            a.get(1, 0),
            a.get(1, 1),
        )),
        _ => Ok(eigenvalues(a)?
            .iter()
            .map(Eigenvalue::modulus)
            .fold(0.0, f64::max)),
    }
}

/// Closed form from the characteristic polynomial `λ² − tλ + δ`.
fn spectral_radius_2x2(a: f64, b: f64, c: f64, d: f64) -> f64 {
    let half_tr = 0.5 * (a + d);
    let half_diff = 0.5 * (a - d);
    // disc = t²/4 − δ = ((a−d)/2)² + bc, which avoids cancellation in t² − 4δ
    let disc = half_diff * half_diff + b * c;
    if disc >= 0.0 {
        half_tr.abs() + disc.sqrt()
    } else {
        // complex pair of modulus √δ
        (a * d - b * c).abs().sqrt()
    }
}

/// All eigenvalues of `a`, in the order the QR iteration deflates them.
pub fn eigenvalues(a: &Matrix) -> Result<Vec<Eigenvalue>> {
    let n = a.dim();
    match n {
        1 => {
            return Ok(vec![Eigenvalue {
                re: a.get(0, 0),
                im: 0.0,
            }])
        }
        2 => {
            let (p, q, r, s) = (a.get(0, 0), a.get(0, 1), a.get(1, 0), a.get(1, 1));
            let half_tr = 0.5 * (p + s);
            let half_diff = 0.5 * (p - s);
            let disc = half_diff * half_diff + q * r;
            return Ok(if disc >= 0.0 {
                let root = disc.sqrt();
                // larger-magnitude root first, the other one from the determinant
                let big = if half_tr >= 0.0 {
                    half_tr + root
                } else {
                    half_tr - root
                };
                let det = p * s - q * r;
                let small = if big != 0.0 {
                    det / big
                } else {
                    half_tr - root
                };
                vec![
                    Eigenvalue { re: big, im: 0.0 },
                    Eigenvalue { re: small, im: 0.0 },
                ]
            } else {
                let im = (-disc).sqrt();
                vec![
                    Eigenvalue { re: half_tr, im },
                    Eigenvalue {
                        re: half_tr,
                        im: -im,
                    },
                ]
            });
        }
        _ => {}
    }
    let mut h: Vec<Vec<f64>> = a.rows();
    hessenberg(&mut h);
    francis_qr(&mut h)
}

/// In-place Householder reduction to upper Hessenberg form.
fn hessenberg(a: &mut [Vec<f64>]) {
    let n = a.len();
    for k in 0..n.saturating_sub(2) {
        let col: Vec<f64> = (k + 1..n).map(|i| a[i][k]).collect();
        let alpha = norm_unchecked(&col, NormKind::L2);
        if alpha == 0.0 {
            continue;
        }
        let sign = if col[0] >= 0.0 { 1.0 } else { -1.0 };
        let mut v = col;
        v[0] += sign * alpha;
        let vnorm2: f64 = v.iter().map(|x| x * x).sum();
        if vnorm2 == 0.0 {
            continue;
        }
        // A ← (I − 2vvᵀ/vᵀv) A (I − 2vvᵀ/vᵀv), acting on rows/cols k+1..n
        for j in 0..n {
            let s: f64 = v
                .iter()
                .enumerate()
                .map(|(t, vt)| vt * a[k + 1 + t][j])
                .sum();
            let f = 2.0 * s / vnorm2;
            for (t, vt) in v.iter().enumerate() {
                a[k + 1 + t][j] -= f * vt;
            }
        }
        for row in a.iter_mut() {
            let s: f64 = v
                .iter()
                .enumerate()
                .map(|(t, vt)| vt * row[k + 1 + t])
                .sum();
            let f = 2.0 * s / vnorm2;
            for (t, vt) in v.iter().enumerate() {
                row[k + 1 + t] -= f * vt;
            }
        }
        for i in k + 2..n {
            a[i][k] = 0.0;
        }
    }
}

fn sign(a: f64, b: f64) -> f64 {
    if b >= 0.0 {
        a.abs()
    } else {
        -a.abs()
    }
}

/// Francis double-shift QR on an upper Hessenberg matrix (destroys `a`).
fn francis_qr(a: &mut [Vec<f64>]) -> Result<Vec<Eigenvalue>> {
    let n = a.len();
    let mut out = vec![Eigenvalue { re: 0.0, im: 0.0 }; n];
    let mut anorm = 0.0;
    for (i, row) in a.iter().enumerate() {
        for v in row.iter().skip(i.saturating_sub(1)) {
            anorm += v.abs();
        }
    }
    let mut nn = n as isize - 1;
    let mut t = 0.0;
    let mut its = 0usize;
    let mut total = 0usize;
    while nn >= 0 {
        let nu = nn as usize;
        // look for a single small subdiagonal element
        let mut l = nu;
        while l >= 1 {
            let mut s = a[l - 1][l - 1].abs() + a[l][l].abs();
            if s == 0.0 {
                s = anorm;
            }
            if a[l][l - 1].abs() + s == s {
                a[l][l - 1] = 0.0;
                break;
            }
            l -= 1;
        }
        let mut x = a[nu][nu];
        if l == nu {
            out[nu] = Eigenvalue { re: x + t, im: 0.0 };
            nn -= 1;
            its = 0;
            continue;
        }
        let mut y = a[nu - 1][nu - 1];
        let mut w = a[nu][nu - 1] * a[nu - 1][nu];
        if l == nu - 1 {
            let p = 0.5 * (y - x);
            let q = p * p + w;
            let z = q.abs().sqrt();
            x += t;
            if q >= 0.0 {
                let z = p + sign(z, p);
                out[nu - 1] = Eigenvalue { re: x + z, im: 0.0 };
                out[nu] = Eigenvalue {
                    re: if z != 0.0 { x - w / z } else { x + z },
                    im: 0.0,
                };
            } else {
                out[nu - 1] = Eigenvalue { re: x + p, im: z };
                out[nu] = Eigenvalue { re: x + p, im: -z };
            }
            nn -= 2;
            its = 0;
            continue;
        }
        if total >= MAX_ITERATIONS {
            return Err(JsrError::NoConvergence {
                what: "QR eigenvalue iteration",
                iterations: total,
            });
        }
        if its > 0 && its % 10 == 0 {
            // exceptional shift
            t += x;
            for (i, row) in a.iter_mut().enumerate().take(nu + 1) {
                row[i] -= x;
            }
            let s = a[nu][nu - 1].abs() + a[nu - 1][nu - 2].abs();
            x = 0.75 * s;
            y = x;
            w = -0.4375 * s * s;
        }
        its += 1;
        total += 1;
        // form shift and look for two consecutive small subdiagonal elements
        let mut m = nu - 2;
        let (mut p, mut q, mut r);
        loop {
            let z = a[m][m];
            let rr = x - z;
            let ss = y - z;
            p = (rr * ss - w) / a[m + 1][m] + a[m][m + 1];
            q = a[m + 1][m + 1] - z - rr - ss;
            r = a[m + 2][m + 1];
            let s = p.abs() + q.abs() + r.abs();
            p /= s;
            q /= s;
            r /= s;
            if m == l {
                break;
            }
            let u = a[m][m - 1].abs() * (q.abs() + r.abs());
            let v = p.abs() * (a[m - 1][m - 1].abs() + z.abs() + a[m + 1][m + 1].abs());
            if u + v == v {
                break;
            }
            m -= 1;
        }
        for i in m + 2..=nu {
            a[i][i - 2] = 0.0;
            if i != m + 2 {
                a[i][i - 3] = 0.0;
            }
        }
        // double QR step on rows l..=nn and columns m..=nn
        let mut k = m;
        while k < nu {
            if k != m {
                p = a[k][k - 1];
                q = a[k + 1][k - 1];
                r = if k != nu - 1 { a[k + 2][k - 1] } else { 0.0 };
                x = p.abs() + q.abs() + r.abs();
                if x != 0.0 {
                    p /= x;
                    q /= x;
                    r /= x;
                }
            }
            let s = sign((p * p + q * q + r * r).sqrt(), p);
            if s != 0.0 {
                if k == m {
                    if l != m {
                        a[k][k - 1] = -a[k][k - 1];
                    }
                } else {
                    a[k][k - 1] = -s * x;
                }
                p += s;
                x = p / s;
                y = q / s;
                let z = r / s;
                q /= p;
                r /= p;
                for j in k..=nu {
                    let mut pp = a[k][j] + q * a[k + 1][j];
                    if k != nu - 1 {
                        pp += r * a[k + 2][j];
                        a[k + 2][j] -= pp * z;
                    }
                    a[k + 1][j] -= pp * y;
                    a[k][j] -= pp * x;
                }
                let mmin = if nu < k + 3 { nu } else { k + 3 };
                for row in a.iter_mut().take(mmin + 1).skip(l) {
                    let mut pp = x * row[k] + y * row[k + 1];
                    if k != nu - 1 {
                        pp += z * row[k + 2];
                        row[k + 2] -= pp * r;
                    }
                    row[k + 1] -= pp * q;
                    row[k] -= pp;
                }
            }
            k += 1;
        }
    }
    Ok(out)
}

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations.
///
/// Converges for every symmetric input (quadratically once the
/// off-diagonal mass is small), independently of eigenvalue gaps.
fn symmetric_eigenvalues(b: &Matrix) -> Result<Vec<f64>> {
    let d = b.dim();
    let mut a: Vec<f64> = b.data().to_vec();
    let total: f64 = a.iter().map(|x| x * x).sum();
    for _ in 0..100 {
        let off: f64 = (0..d)
            .flat_map(|i| (0..d).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i * d + j] * a[i * d + j])
            .sum();
        if off <= 1e-28 * total {
            return Ok((0..d).map(|i| a[i * d + i]).collect());
        }
        for p in 0..d {
            for q in p + 1..d {
                let apq = a[p * d + q];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[q * d + q] - a[p * d + p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..d {
                    let (akp, akq) = (a[k * d + p], a[k * d + q]);
                    a[k * d + p] = c * akp - s * akq;
                    a[k * d + q] = s * akp + c * akq;
                }
                for k in 0..d {
                    let (apk, aqk) = (a[p * d + k], a[q * d + k]);
                    a[p * d + k] = c * apk - s * aqk;
                    a[q * d + k] = s * apk + c * aqk;
                }
            }
        }
    }
    Err(JsrError::NoConvergence {
        what: "symmetric Jacobi eigenvalue sweep",
        iterations: 100,
    })
}

/// Largest singular value of `a`.
pub fn largest_singular_value(a: &Matrix) -> Result<f64> {
    let d = a.dim();
    if d == 1 {
        return Ok(a.get(0, 0).abs());
    }
    let scale = a.max_abs();
    if scale == 0.0 {
        return Ok(0.0);
    }
    // work on A/scale so that AᵀA cannot overflow
    let s = a.scale(1.0 / scale);
    let b = s.transpose().mul(&s);
    if d == 2 {
        let (p, q, r) = (b.get(0, 0), b.get(0, 1), b.get(1, 1));
        let top = 0.5 * (p + r) + (0.5 * (p - r)).hypot(q);
        return Ok(scale * top.max(0.0).sqrt());
    }
    let top = symmetric_eigenvalues(&b)?.into_iter().fold(0.0, f64::max);
    Ok(scale * top.sqrt())
}

/// Unit (ℓ2) vectors spanning the real eigenspaces of `a`, for `d <= 3`.
///
/// For an eigenvalue whose eigenspace is larger than a line, an orthonormal
/// basis of that eigenspace is returned.
pub fn real_eigenvectors(a: &Matrix) -> Result<Vec<Vec<f64>>> {
    let d = a.dim();
    if d > 3 {
        return Err(JsrError::UnsupportedDimension {
            dim: d,
            reason: "real eigenvectors are computed for d <= 3 only",
        });
    }
    let scale = a.max_abs().max(f64::MIN_POSITIVE);
    let mut out = Vec::new();
    for ev in eigenvalues(a)? {
        if ev.im.abs() > 1e-10 * scale {
            continue;
        }
        let m = a.sub(&Matrix::identity(d).scale(ev.re));
        out.extend(null_space_small(&m, 1e-9 * (scale + ev.re.abs())));
    }
    Ok(out)
}

fn unit(v: Vec<f64>) -> Vec<f64> {
    let n = norm_unchecked(&v, NormKind::L2);
    v.into_iter().map(|x| x / n).collect()
}

fn cross(a: &[f64], b: &[f64]) -> Vec<f64> {
    vec![
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

/// Approximate null space of a (near-)singular `d × d` matrix, `d <= 3`.
fn null_space_small(m: &Matrix, tol: f64) -> Vec<Vec<f64>> {
    let d = m.dim();
    let rows = m.rows();
    let basis = |k: usize| -> Vec<f64> { (0..d).map(|i| if i == k { 1.0 } else { 0.0 }).collect() };
    let (best_row, best_norm) = rows
        .iter()
        .map(|r| (r.clone(), norm_unchecked(r, NormKind::L2)))
        .fold(
            (vec![0.0; d], 0.0),
            |acc, x| if x.1 > acc.1 { x } else { acc },
        );
    if best_norm <= tol {
        return (0..d).map(basis).collect();
    }
    match d {
        1 => vec![],
        2 => vec![unit(vec![-best_row[1], best_row[0]])],
        _ => {
            let mut best: Option<(Vec<f64>, f64)> = None;
            for i in 0..3 {
                for j in i + 1..3 {
                    let c = cross(&rows[i], &rows[j]);
                    let n = norm_unchecked(&c, NormKind::L2);
                    if best.as_ref().is_none_or(|b| n > b.1) {
                        best = Some((c, n));
                    }
                }
            }
            let (c, n) = best.unwrap_or((vec![0.0; 3], 0.0));
            if n > tol * best_norm {
                vec![unit(c)]
            } else {
                // rank one: the plane orthogonal to the dominant row
                let r = unit(best_row);
                let k = (0..3)
                    .min_by(|&i, &j| r[i].abs().total_cmp(&r[j].abs()))
                    .unwrap_or(0);
                let u = unit(cross(&r, &basis(k)));
                let w = unit(cross(&r, &u));
                vec![u, w]
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn m(rows: &[&[f64]]) -> Matrix {
        Matrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(spectral_radius(&Matrix::diag(&[2.0, -3.0])).unwrap(), 3.0);
        assert_abs_diff_eq!(
            spectral_radius(&m(&[&[0.0, -1.0], &[1.0, 0.0]])).unwrap(),
            1.0,
            epsilon = 1e-15
        );
        let golden = (3.0 + 5f64.sqrt()) / 2.0;
        assert_abs_diff_eq!(
            spectral_radius(&m(&[&[2.0, 1.0], &[1.0, 1.0]])).unwrap(),
            golden,
            epsilon = 1e-14
        );
    }

    #[test]
    fn qr_on_known_spectra() {
        // companion matrix of (λ−1)(λ−2)(λ−3) = λ³ − 6λ² + 11λ − 6
        let c = m(&[&[6.0, -11.0, 6.0], &[1.0, 0.0, 0.0], &[0.0, 1.0, 0.0]]);
        let mut ev: Vec<f64> = eigenvalues(&c).unwrap().iter().map(|e| e.re).collect();
        ev.sort_by(f64::total_cmp);
        for (got, want) in ev.iter().zip([1.0, 2.0, 3.0]) {
            assert_abs_diff_eq!(*got, want, epsilon = 1e-10);
        }
        // rotation block with modulus 2 next to a 1
        let r = m(&[&[0.0, -2.0, 0.0], &[2.0, 0.0, 0.0], &[0.0, 0.0, 1.0]]);
        assert_abs_diff_eq!(spectral_radius(&r).unwrap(), 2.0, epsilon = 1e-12);
        // permutation cycle: cube roots of unity
        let p = m(&[&[0.0, 0.0, 1.0], &[1.0, 0.0, 0.0], &[0.0, 1.0, 0.0]]);
        assert_abs_diff_eq!(spectral_radius(&p).unwrap(), 1.0, epsilon = 1e-12);
        // nilpotent
        let n = m(&[&[0.0, 1.0, 0.0], &[0.0, 0.0, 1.0], &[0.0, 0.0, 0.0]]);
        assert_eq!(spectral_radius(&n).unwrap(), 0.0);
    }

    #[test]
    fn qr_agrees_with_nalgebra_on_random_matrices() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for d in 3..=6 {
            for _ in 0..50 {
                let data: Vec<f64> = (0..d * d).map(|_| rng.random_range(-1.0..1.0)).collect();
                let a = Matrix::new(d, data.clone()).unwrap();
                let na = nalgebra::DMatrix::from_row_slice(d, d, &data);
                let want = na
                    .complex_eigenvalues()
                    .iter()
                    .map(|z| z.norm())
                    .fold(0.0, f64::max);
                assert_abs_diff_eq!(spectral_radius(&a).unwrap(), want, epsilon = 1e-10);
            }
        }
    }

    #[test]
    fn singular_value_matches_svd() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for d in 2..=5 {
            for _ in 0..50 {
                let data: Vec<f64> = (0..d * d).map(|_| rng.random_range(-1.0..1.0)).collect();
                let a = Matrix::new(d, data.clone()).unwrap();
                let na = nalgebra::DMatrix::from_row_slice(d, d, &data);
                let want = na.singular_values().max();
                assert_abs_diff_eq!(largest_singular_value(&a).unwrap(), want, epsilon = 1e-9);
            }
        }
    }

    #[test]
    fn restart_escapes_orthogonal_start() {
        // AᵀA = diag(1, 9, 1) rotated so that the all-ones vector is an
        // eigenvector of the smaller eigenvalue
        let a = m(&[&[1.0, -1.0, 0.0], &[0.0, 1.0, -1.0], &[-1.0, 0.0, 1.0]]);
        let want = nalgebra::DMatrix::from_row_slice(3, 3, a.data())
            .singular_values()
            .max();
        assert_abs_diff_eq!(largest_singular_value(&a).unwrap(), want, epsilon = 1e-9);
    }

    #[test]
    fn eigenvectors_are_eigenvectors() {
        let a = m(&[&[2.0, 1.0, 0.0], &[0.0, 3.0, 1.0], &[0.0, 0.0, 5.0]]);
        let vs = real_eigenvectors(&a).unwrap();
        assert_eq!(vs.len(), 3);
        for v in vs {
            let av = a.mul_vec(&v);
            let lambda: f64 = av.iter().zip(&v).map(|(x, y)| x * y).sum();
            for (x, y) in av.iter().zip(&v) {
                assert_abs_diff_eq!(*x, lambda * y, epsilon = 1e-9);
            }
        }
        assert_eq!(real_eigenvectors(&Matrix::identity(3)).unwrap().len(), 9);
        assert!(real_eigenvectors(&m(&[&[0.0, -1.0], &[1.0, 0.0]]))
            .unwrap()
            .is_empty());
    }
}
