#![allow(dead_code)]

use jsr_core::irreducibility::burnside_irreducible;
use jsr_core::{Matrix, MatrixSet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_matrix(rng: &mut ChaCha8Rng, d: usize, lo: f64, hi: f64) -> Matrix {
    Matrix::new(d, (0..d * d).map(|_| rng.random_range(lo..hi)).collect()).unwrap()
}

pub fn random_set(rng: &mut ChaCha8Rng, d: usize, r: usize) -> MatrixSet {
    MatrixSet::new((0..r).map(|_| random_matrix(rng, d, -1.0, 1.0)).collect()).unwrap()
}

/// A well-conditioned random similarity and its inverse.
pub fn random_similarity(rng: &mut ChaCha8Rng, d: usize) -> (Matrix, Matrix) {
    loop {
        let t = Matrix::identity(d).add(&random_matrix(rng, d, -0.5, 0.5));
        if let Some(inv) = t.inverse() {
            if inv.max_abs() < 10.0 {
                return (t, inv);
            }
        }
    }
}

/// Common upper-triangular structure hidden by a random similarity.
pub fn reducible_set(rng: &mut ChaCha8Rng, d: usize, r: usize) -> MatrixSet {
    let members = (0..r)
        .map(|_| {
            let mut data = vec![0.0; d * d];
            for i in 0..d {
                for j in i..d {
                    data[i * d + j] = rng.random_range(-1.0..1.0);
                }
            }
            Matrix::new(d, data).unwrap()
        })
        .collect();
    let (t, t_inv) = random_similarity(rng, d);
    MatrixSet::new(members).unwrap().conjugate(&t, &t_inv)
}

/// Random sets that pass the algebra-span test.
pub fn irreducible_set(rng: &mut ChaCha8Rng, d: usize, r: usize) -> MatrixSet {
    loop {
        let s = random_set(rng, d, r);
        if burnside_irreducible(&s).unwrap() {
            return s;
        }
    }
}

pub fn golden_pair() -> MatrixSet {
    MatrixSet::from_rows(&[
        vec![vec![1.0, 1.0], vec![0.0, 1.0]],
        vec![vec![1.0, 0.0], vec![1.0, 1.0]],
    ])
    .unwrap()
}

pub fn rotation() -> MatrixSet {
    MatrixSet::from_rows(&[vec![vec![0.0, -1.0], vec![1.0, 0.0]]]).unwrap()
}
