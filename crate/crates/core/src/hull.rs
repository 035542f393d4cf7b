//! Convex hulls in dimensions 1 to 3 and the radius of the largest
//! origin-centred norm ball they contain.
//!
//! A ball `{‖y‖ <= t}` lies inside the half-space `{u·y <= c}` iff
//! `t·‖u‖_* <= c`, with `‖·‖_*` the dual norm. The inscribed radius is the
//! minimum of `c / ‖u‖_*` over the facets of the hull.

use std::collections::HashSet;

use crate::error::{JsrError, Result};
use crate::matrix::{dot, norm_unchecked, NormKind};

/// Supporting half-space `{y : normal·y <= offset}` of a hull facet.
#[derive(Debug, Clone, PartialEq)]
pub struct Facet {
    pub normal: Vec<f64>,
    pub offset: f64,
}

impl Facet {
    /// Distance, measured in `kind`, from the origin to the facet's plane.
    pub fn distance(&self, kind: NormKind) -> f64 {
        self.offset / norm_unchecked(&self.normal, kind.dual())
    }
}

fn scale_of(points: &[Vec<f64>]) -> f64 {
    points
        .iter()
        .flat_map(|p| p.iter())
        .fold(0.0_f64, |m, v| m.max(v.abs()))
}

/// Facets of the convex hull of `points` (all of dimension `dim`).
///
/// Returns `None` when the hull is lower-dimensional.
pub fn hull_facets(points: &[Vec<f64>], dim: usize) -> Result<Option<Vec<Facet>>> {
    if points.is_empty() {
        return Ok(None);
    }
    if let Some(p) = points.iter().find(|p| p.len() != dim) {
        return Err(JsrError::DimensionMismatch {
            expected: dim,
            found: p.len(),
        });
    }
    if dim > 3 {
        return Err(JsrError::ExactHullUnavailable { dim });
    }
    let scale = scale_of(points);
    if scale == 0.0 {
        return Ok(None);
    }
    match dim {
        1 => {
            let lo = points.iter().map(|p| p[0]).fold(f64::INFINITY, f64::min);
            let hi = points
                .iter()
                .map(|p| p[0])
                .fold(f64::NEG_INFINITY, f64::max);
            if hi - lo <= 1e-12 * scale {
                return Ok(None);
            }
            Ok(Some(vec![
                Facet {
                    normal: vec![1.0],
                    offset: hi,
                },
                Facet {
                    normal: vec![-1.0],
                    offset: -lo,
                },
            ]))
        }
        2 => Ok(hull_2d(&dedup(points, scale), scale)),
        3 => Ok(hull_3d(&dedup(points, scale), scale)),
        _ => Err(JsrError::ExactHullUnavailable { dim }),
    }
}

/// Largest `t` with the `kind`-ball of radius `t` inside `conv(points)`;
/// zero for flat hulls or when the origin is not interior.
pub fn inscribed_radius(points: &[Vec<f64>], dim: usize, kind: NormKind) -> Result<f64> {
    let Some(facets) = hull_facets(points, dim)? else {
        return Ok(0.0);
    };
    let mut best = f64::INFINITY;
    for f in &facets {
        if f.offset <= 0.0 {
            return Ok(0.0);
        }
        best = best.min(f.distance(kind));
    }
    Ok(if best.is_finite() { best } else { 0.0 })
}

/// Merges points closer than `1e-10 · scale`; near-duplicates would
/// otherwise make orientation tests on tiny edges meaningless.
fn dedup(points: &[Vec<f64>], scale: f64) -> Vec<Vec<f64>> {
    let tol = 1e-10 * scale;
    let mut out: Vec<Vec<f64>> = Vec::with_capacity(points.len());
    for p in points {
        if !out
            .iter()
            .any(|q| q.iter().zip(p).all(|(a, b)| (a - b).abs() <= tol))
        {
            out.push(p.clone());
        }
    }
    out
}

fn cross2(o: &[f64], a: &[f64], b: &[f64]) -> f64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

/// Andrew's monotone chain; counter-clockwise, collinear points dropped.
fn turns_right_or_straight(o: &[f64], a: &[f64], b: &[f64]) -> bool {
    let la = (a[0] - o[0]).hypot(a[1] - o[1]);
    let lb = (b[0] - o[0]).hypot(b[1] - o[1]);
    cross2(o, a, b) <= 1e-12 * la * lb
}

fn hull_2d(points: &[Vec<f64>], scale: f64) -> Option<Vec<Facet>> {
    let mut pts: Vec<&Vec<f64>> = points.iter().collect();
    pts.sort_by(|a, b| a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])));
    let mut chain: Vec<&Vec<f64>> = Vec::with_capacity(pts.len() * 2);
    for pass in 0..2 {
        let start = chain.len();
        let iter: Box<dyn Iterator<Item = &&Vec<f64>>> = if pass == 0 {
            Box::new(pts.iter())
        } else {
            Box::new(pts.iter().rev())
        };
        for p in iter {
            while chain.len() >= start + 2
                && turns_right_or_straight(chain[chain.len() - 2], chain[chain.len() - 1], p)
            {
                chain.pop();
            }
            chain.push(p);
        }
        chain.pop();
    }
    if chain.len() < 3 {
        return None;
    }
    let area2: f64 = (0..chain.len())
        .map(|i| {
            let (a, b) = (chain[i], chain[(i + 1) % chain.len()]);
            a[0] * b[1] - a[1] * b[0]
        })
        .sum();
    if area2 <= 1e-12 * scale * scale {
        return None;
    }
    let facets = (0..chain.len())
        .map(|i| {
            let (a, b) = (chain[i], chain[(i + 1) % chain.len()]);
            let normal = vec![b[1] - a[1], a[0] - b[0]];
            let offset = dot(&normal, a);
            Facet { normal, offset }
        })
        .collect();
    Some(facets)
}

fn sub3(a: &[f64], b: &[f64]) -> [f64; 3] {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn cross3(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn dot3(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn len3(a: [f64; 3]) -> f64 {
    dot3(a, a).sqrt()
}

/// Incremental hull; faces are index triples with outward orientation.
fn hull_3d(points: &[Vec<f64>], scale: f64) -> Option<Vec<Facet>> {
    let eps = 1e-12 * scale;
    let n = points.len();
    if n < 4 {
        return None;
    }
    // initial simplex from extreme points
    let i0 = (0..n).max_by(|&a, &b| points[a][0].total_cmp(&points[b][0]))?;
    let i1 = (0..n).max_by(|&a, &b| {
        len3(sub3(&points[a], &points[i0])).total_cmp(&len3(sub3(&points[b], &points[i0])))
    })?;
    let axis = sub3(&points[i1], &points[i0]);
    let axis_len = len3(axis);
    if axis_len <= eps {
        return None;
    }
    let line_dist = |k: usize| len3(cross3(axis, sub3(&points[k], &points[i0]))) / axis_len;
    let i2 = (0..n).max_by(|&a, &b| line_dist(a).total_cmp(&line_dist(b)))?;
    if line_dist(i2) <= eps {
        return None;
    }
    let plane_n = cross3(axis, sub3(&points[i2], &points[i0]));
    let plane_len = len3(plane_n);
    let plane_dist = |k: usize| dot3(plane_n, sub3(&points[k], &points[i0])) / plane_len;
    let i3 = (0..n).max_by(|&a, &b| plane_dist(a).abs().total_cmp(&plane_dist(b).abs()))?;
    if plane_dist(i3).abs() <= eps {
        return None;
    }

    let centroid: [f64; 3] = {
        let mut c = [0.0; 3];
        for &k in &[i0, i1, i2, i3] {
            for (t, v) in c.iter_mut().enumerate() {
                *v += points[k][t] / 4.0;
            }
        }
        c
    };
    let orient = |f: [usize; 3]| -> [usize; 3] {
        let nrm = cross3(
            sub3(&points[f[1]], &points[f[0]]),
            sub3(&points[f[2]], &points[f[0]]),
        );
        if dot3(nrm, sub3(&centroid, &points[f[0]])) > 0.0 {
            [f[0], f[2], f[1]]
        } else {
            f
        }
    };
    let mut faces: Vec<[usize; 3]> = vec![
        orient([i0, i1, i2]),
        orient([i0, i1, i3]),
        orient([i0, i2, i3]),
        orient([i1, i2, i3]),
    ];

    let visible = |f: &[usize; 3], p: &[f64]| -> bool {
        let nrm = cross3(
            sub3(&points[f[1]], &points[f[0]]),
            sub3(&points[f[2]], &points[f[0]]),
        );
        dot3(nrm, sub3(p, &points[f[0]])) > eps * len3(nrm)
    };

    // far points first: most of the rest then fall inside early, and fewer
    // sliver faces get created
    let mut order: Vec<usize> = (0..n).filter(|k| ![i0, i1, i2, i3].contains(k)).collect();
    let far = |k: usize| len3(sub3(&points[k], &centroid));
    order.sort_by(|&a, &b| far(b).total_cmp(&far(a)));
    for k in order {
        let p = &points[k];
        let (seen, kept): (Vec<[usize; 3]>, Vec<[usize; 3]>) =
            faces.iter().partition(|f| visible(f, p));
        if seen.is_empty() {
            continue;
        }
        let edges: HashSet<(usize, usize)> = seen
            .iter()
            .flat_map(|f| [(f[0], f[1]), (f[1], f[2]), (f[2], f[0])])
            .collect();
        faces = kept;
        for &(a, b) in &edges {
            if !edges.contains(&(b, a)) {
                faces.push([a, b, k]);
            }
        }
    }

    // zero-area faces (a vertex on the line of a horizon edge) bound nothing
    let facets = faces
        .iter()
        .filter_map(|f| {
            let nrm = cross3(
                sub3(&points[f[1]], &points[f[0]]),
                sub3(&points[f[2]], &points[f[0]]),
            );
            if len3(nrm) <= 1e-14 * scale * scale {
                return None;
            }
            let normal = nrm.to_vec();
            let offset = dot(&normal, &points[f[0]]);
            Some(Facet { normal, offset })
        })
        .collect();
    Some(facets)
}
