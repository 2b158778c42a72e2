//! Shared fixtures for the integration suites. Each test binary uses its
//! own subset.
#![allow(dead_code)]

use graph_translation::{generate, BaseKind, Graph, GraphKind, SpectralBasis};
use ndarray::Array1;
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub const ALL_KINDS: [BaseKind; 3] = [
    BaseKind::Laplacian,
    BaseKind::NormalizedLaplacian,
    BaseKind::Adjacency,
];

/// A small mixed zoo of connected graphs.
pub fn zoo() -> Vec<(String, Graph)> {
    let kinds = [
        ("path9", GraphKind::Path { n: 9 }, 0),
        ("cycle8", GraphKind::Cycle { n: 8 }, 0),
        ("grid3x4", GraphKind::Grid { rows: 3, cols: 4 }, 0),
        ("k5", GraphKind::Complete { n: 5 }, 0),
        ("star6", GraphKind::Star { leaves: 6 }, 0),
        ("er20", GraphKind::ErdosRenyi { n: 20, p: 0.3 }, 11),
        ("geo25", GraphKind::Geometric { n: 25, radius: 0.4 }, 5),
    ];
    kinds
        .into_iter()
        .map(|(name, kind, seed)| (name.to_string(), generate(kind, seed).unwrap()))
        .collect()
}

pub fn random_signal(n: usize, rng: &mut ChaCha8Rng) -> Array1<Complex64> {
    (0..n)
        .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
        .collect()
}

pub fn norm(x: &Array1<Complex64>) -> f64 {
    x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub fn diff_norm(a: &Array1<Complex64>, b: &Array1<Complex64>) -> f64 {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm_sqr())
        .sum::<f64>()
        .sqrt()
}

/// Removes the zero-mode component of a signal (Laplacian kinds).
pub fn remove_dc(basis: &SpectralBasis, x: &Array1<Complex64>) -> Array1<Complex64> {
    let u0 = basis.eigenvector(0);
    let mut dot = Complex64::new(0.0, 0.0);
    for (xi, &u) in x.iter().zip(u0.iter()) {
        dot += xi * u;
    }
    let mut out = x.clone();
    for (o, &u) in out.iter_mut().zip(u0.iter()) {
        *o -= dot * u;
    }
    out
}

pub fn impulse(n: usize, i: usize) -> Array1<Complex64> {
    let mut x = Array1::<Complex64>::zeros(n);
    x[i] = Complex64::new(1.0, 0.0);
    x
}
