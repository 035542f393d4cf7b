//! Deterministic nets on the unit sphere of a norm, with a certified
//! covering radius: every point of the sphere lies within `covering`
//! (measured in the same norm) of some net point.

use crate::error::{JsrError, Result};
use crate::matrix::{norm_unchecked, NormKind};

#[derive(Debug, Clone, PartialEq)]
pub struct SphereNet {
    pub kind: NormKind,
    /// Net points, each with `‖x‖_kind = 1`.
    pub points: Vec<Vec<f64>>,
    /// Covering radius in the `kind` norm.
    pub covering: f64,
}

fn normalize(v: &[f64], kind: NormKind) -> Vec<f64> {
    let n = norm_unchecked(v, kind);
    v.iter().map(|x| x / n).collect()
}

/// Icosahedron edge length (unit circumradius) and the inradius of its faces.
const ICOSA_EDGE: f64 = 1.051_462_224_238_267_2;
const ICOSA_INRADIUS: f64 = 0.794_654_472_291_766_1;

/// Builds a net of the `kind`-unit sphere in dimension `dim` (1 to 3).
///
/// In two dimensions the angular step is at most `mesh`; in three the
/// geodesic edge length of the subdivided icosahedron is at most `mesh`.
/// With `symmetric` set, only a half sphere (plus a boundary band) is kept,
/// which covers the whole sphere for functions with `f(x) = f(−x)`.
pub fn sphere_net(dim: usize, kind: NormKind, mesh: f64, symmetric: bool) -> Result<SphereNet> {
    if !(mesh > 0.0 && mesh.is_finite()) {
        return Err(JsrError::InvalidInput(format!(
            "mesh must be positive, got {mesh}"
        )));
    }
    match dim {
        1 => Ok(SphereNet {
            kind,
            points: if symmetric {
                vec![vec![1.0]]
            } else {
                vec![vec![1.0], vec![-1.0]]
            },
            covering: 0.0,
        }),
        2 => Ok(circle_net(kind, mesh, symmetric)),
        3 => Ok(icosphere_net(kind, mesh, symmetric)),
        _ => Err(JsrError::UnsupportedDimension {
            dim,
            reason: "deterministic sphere nets exist for d <= 3",
        }),
    }
}

fn circle_net(kind: NormKind, mesh: f64, symmetric: bool) -> SphereNet {
    // a multiple of 8 puts the corners of the L1 and LInf spheres on the grid,
    // so consecutive net points share an edge of the polygonal sphere
    let count = 8 * (std::f64::consts::TAU / (8.0 * mesh)).ceil().max(1.0) as usize;
    let step = std::f64::consts::TAU / count as f64;
    let last = if symmetric { count / 2 } else { count - 1 };
    let points: Vec<Vec<f64>> = (0..=last)
        .map(|j| {
            let t = step * j as f64;
            normalize(&[t.cos(), t.sin()], kind)
        })
        .collect();
    let covering = match kind {
        NormKind::L2 => 0.5 * step,
        _ => {
            // straight edges: half the largest gap between neighbours
            let mut gap = 0.0_f64;
            for j in 0..count {
                let a = normalize(&[(step * j as f64).cos(), (step * j as f64).sin()], kind);
                let t = step * (j + 1) as f64;
                let b = normalize(&[t.cos(), t.sin()], kind);
                let diff: Vec<f64> = a.iter().zip(&b).map(|(x, y)| x - y).collect();
                gap = gap.max(norm_unchecked(&diff, kind));
            }
            0.5 * gap
        }
    };
    SphereNet {
        kind,
        points,
        covering,
    }
}

fn icosahedron() -> (Vec<[f64; 3]>, Vec<[usize; 3]>) {
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let raw = [
        [-1.0, phi, 0.0],
        [1.0, phi, 0.0],
        [-1.0, -phi, 0.0],
        [1.0, -phi, 0.0],
        [0.0, -1.0, phi],
        [0.0, 1.0, phi],
        [0.0, -1.0, -phi],
        [0.0, 1.0, -phi],
        [phi, 0.0, -1.0],
        [phi, 0.0, 1.0],
        [-phi, 0.0, -1.0],
        [-phi, 0.0, 1.0],
    ];
    let verts = raw
        .iter()
        .map(|v| {
            let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
            [v[0] / n, v[1] / n, v[2] / n]
        })
        .collect();
    let faces = vec![
        [0, 11, 5],
        [0, 5, 1],
        [0, 1, 7],
        [0, 7, 10],
        [0, 10, 11],
        [1, 5, 9],
        [5, 11, 4],
        [11, 10, 2],
        [10, 7, 6],
        [7, 1, 8],
        [3, 9, 4],
        [3, 4, 2],
        [3, 2, 6],
        [3, 6, 8],
        [3, 8, 9],
        [4, 9, 5],
        [2, 4, 11],
        [6, 2, 10],
        [8, 6, 7],
        [9, 8, 1],
    ];
    (verts, faces)
}

fn dist3(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2) + (a[2] - b[2]).powi(2)).sqrt()
}

fn unit3(v: [f64; 3]) -> [f64; 3] {
    let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
    [v[0] / n, v[1] / n, v[2] / n]
}

/// Nearest-vertex covering bound of a planar triangle: the circumradius
/// when no angle is obtuse, otherwise the longest edge.
fn triangle_cover(a: &[f64; 3], b: &[f64; 3], c: &[f64; 3]) -> f64 {
    let (x, y, z) = (dist3(b, c), dist3(a, c), dist3(a, b));
    let mut e = [x, y, z];
    e.sort_by(f64::total_cmp);
    if e[2] * e[2] > e[0] * e[0] + e[1] * e[1] {
        return e[2];
    }
    let s = 0.5 * (x + y + z);
    let area = (s * (s - x) * (s - y) * (s - z)).max(0.0).sqrt();
    if area == 0.0 {
        e[2]
    } else {
        x * y * z / (4.0 * area)
    }
}

fn icosphere_net(kind: NormKind, mesh: f64, symmetric: bool) -> SphereNet {
    let (verts, faces) = icosahedron();
    let freq = (ICOSA_EDGE / (ICOSA_INRADIUS * mesh)).ceil().max(1.0) as usize;
    // generic direction for the half-sphere split
    let g = unit3([1.0, 0.318_309_886, 0.141_421_356]);
    let mut l2_cover = 0.0_f64;
    let mut dirs: Vec<[f64; 3]> = Vec::new();
    for f in &faces {
        let (a, b, c) = (verts[f[0]], verts[f[1]], verts[f[2]]);
        let at = |i: usize, j: usize| -> [f64; 3] {
            let (u, v) = (i as f64 / freq as f64, j as f64 / freq as f64);
            let w = 1.0 - u - v;
            [
                w * a[0] + u * b[0] + v * c[0],
                w * a[1] + u * b[1] + v * c[1],
                w * a[2] + u * b[2] + v * c[2],
            ]
        };
        for i in 0..freq {
            for j in 0..freq - i {
                let mut tris = vec![[at(i, j), at(i + 1, j), at(i, j + 1)]];
                if i + j + 1 < freq {
                    tris.push([at(i + 1, j), at(i + 1, j + 1), at(i, j + 1)]);
                }
                for [p, q, r] in tris {
                    // planar piece: nearest-vertex distance plus the radial gap
                    let (pu, qu, ru) = (unit3(p), unit3(q), unit3(r));
                    let nrm = {
                        let e1 = [qu[0] - pu[0], qu[1] - pu[1], qu[2] - pu[2]];
                        let e2 = [ru[0] - pu[0], ru[1] - pu[1], ru[2] - pu[2]];
                        unit3([
                            e1[1] * e2[2] - e1[2] * e2[1],
                            e1[2] * e2[0] - e1[0] * e2[2],
                            e1[0] * e2[1] - e1[1] * e2[0],
                        ])
                    };
                    let h = (nrm[0] * pu[0] + nrm[1] * pu[1] + nrm[2] * pu[2]).abs();
                    // triangle through the unit vertices, at distance h from 0
                    l2_cover = l2_cover.max(triangle_cover(&pu, &qu, &ru) + (1.0 - h));
                }
            }
        }
        for i in 0..=freq {
            for j in 0..=freq - i {
                dirs.push(unit3(at(i, j)));
            }
        }
    }
    let points = dirs
        .iter()
        .filter(|v| !symmetric || v[0] * g[0] + v[1] * g[1] + v[2] * g[2] >= -l2_cover)
        .map(|v| normalize(v, kind))
        .collect();
    // x ↦ x/‖x‖_kind is 2·c/m Lipschitz from the Euclidean sphere, with
    // c = max ‖w‖_kind/‖w‖₂ and m = min ‖w‖_kind over the Euclidean sphere
    let covering = match kind {
        NormKind::L2 => l2_cover,
        NormKind::L1 | NormKind::LInf => 2.0 * 3f64.sqrt() * l2_cover,
    };
    SphereNet {
        kind,
        points,
        covering,
    }
}
