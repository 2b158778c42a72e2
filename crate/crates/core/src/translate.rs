//! Exact graph translation operators in spectral form: a basis plus one
//! unit-modulus phase per Fourier mode.

use ndarray::{Array1, Array2, ArrayView1};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::spectral::{BaseKind, SpectralBasis};

/// Default dimension cap for materializing the dense operator matrix.
pub const MATRIX_CAP: usize = 512;

/// The exact translation operator `exp(-iα·diag(θ))` in the chosen Fourier
/// basis. Applying it multiplies mode `l` by `exp(-i α θ_l)`, so the
/// operator is unitary by construction.
#[derive(Debug, Clone)]
pub struct ExactTranslation {
    basis: SpectralBasis,
    alpha: f64,
    phases: Vec<Complex64>,
}

impl ExactTranslation {
    /// Builds the operator for a connected graph.
    pub fn new(g: &Graph, kind: BaseKind, alpha: f64) -> Result<Self> {
        Self::from_basis(SpectralBasis::for_graph(g, kind)?, alpha)
    }

    /// Builds the operator from an existing basis, reusing its
    /// decomposition.
    pub fn from_basis(basis: SpectralBasis, alpha: f64) -> Result<Self> {
        if !alpha.is_finite() || alpha <= 0.0 {
            return Err(Error::InvalidParam(format!(
                "vertex-diffusion factor alpha must be positive, got {alpha}"
            )));
        }
        let freqs = basis.frequencies()?;
        let phases = freqs
            .theta
            .iter()
            .map(|&t| Complex64::from_polar(1.0, -alpha * t))
            .collect();
        Ok(ExactTranslation {
            basis,
            alpha,
            phases,
        })
    }

    pub fn basis(&self) -> &SpectralBasis {
        &self.basis
    }

    pub fn kind(&self) -> BaseKind {
        self.basis.kind()
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn n(&self) -> usize {
        self.basis.n()
    }

    /// Per-mode phases `exp(-i α θ_l)`.
    pub fn phases(&self) -> &[Complex64] {
        &self.phases
    }

    /// Applies the operator: `U diag(phases) Uᵀ x`. Preserves the 2-norm up
    /// to round-off.
    pub fn apply(&self, x: &ArrayView1<Complex64>) -> Result<Array1<Complex64>> {
        let mut spectrum = self.basis.gft(x)?;
        for (s, p) in spectrum.iter_mut().zip(&self.phases) {
            *s *= p;
        }
        self.basis.igft(&spectrum.view())
    }

    /// Materializes the dense unitary matrix, refusing dimensions above
    /// [`MATRIX_CAP`].
    pub fn matrix(&self) -> Result<Array2<Complex64>> {
        self.matrix_with_cap(MATRIX_CAP)
    }

    pub fn matrix_with_cap(&self, cap: usize) -> Result<Array2<Complex64>> {
        let n = self.n();
        if n > cap {
            return Err(Error::DimensionCap { n, cap });
        }
        let u = self.basis.eigenvectors();
        let mut t = Array2::<Complex64>::zeros((n, n));
        for l in 0..n {
            let phase = self.phases[l];
            for i in 0..n {
                let ui = u[[i, l]];
                if ui == 0.0 {
                    continue;
                }
                for j in 0..n {
                    t[[i, j]] += phase * ui * u[[j, l]];
                }
            }
        }
        Ok(t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{generate, GraphKind};
    use ndarray::array;
    use rand::{Rng, SeedableRng};

    fn norm(x: &Array1<Complex64>) -> f64 {
        x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    fn random_signal(n: usize, rng: &mut rand_chacha::ChaCha8Rng) -> Array1<Complex64> {
        (0..n)
            .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
            .collect()
    }

    #[test]
    fn two_path_laplacian_phases_and_matrix() {
        let g = generate(GraphKind::Path { n: 2 }, 0).unwrap();
        let t = ExactTranslation::new(&g, BaseKind::Laplacian, 1.0).unwrap();
        assert_eq!(t.phases()[0], Complex64::new(1.0, 0.0));
        assert!((t.phases()[1] - Complex64::new(-1.0, 0.0)).norm() < 1e-12);

        // The operator is the swap matrix.
        let m = t.matrix().unwrap();
        let expect = [[0.0, 1.0], [1.0, 0.0]];
        for i in 0..2 {
            for j in 0..2 {
                assert!((m[[i, j]] - Complex64::new(expect[i][j], 0.0)).norm() < 1e-10);
            }
        }
    }

    #[test]
    fn two_path_adjacency_is_identity() {
        let g = generate(GraphKind::Path { n: 2 }, 0).unwrap();
        let t = ExactTranslation::new(&g, BaseKind::Adjacency, 1.0).unwrap();
        for p in t.phases() {
            assert!((p - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        }
        let m = t.matrix().unwrap();
        for i in 0..2 {
            for j in 0..2 {
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!((m[[i, j]] - Complex64::new(expect, 0.0)).norm() < 1e-10);
            }
        }
    }

    #[test]
    fn doubling_alpha_squares_phases() {
        let g = generate(GraphKind::ErdosRenyi { n: 9, p: 0.5 }, 1).unwrap();
        for kind in [
            BaseKind::Laplacian,
            BaseKind::NormalizedLaplacian,
            BaseKind::Adjacency,
        ] {
            let t1 = ExactTranslation::new(&g, kind, 1.0).unwrap();
            let t2 = ExactTranslation::new(&g, kind, 2.0).unwrap();
            for (a, b) in t1.phases().iter().zip(t2.phases()) {
                assert!((a * a - b).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn swap_action_on_impulse() {
        let g = generate(GraphKind::Path { n: 2 }, 0).unwrap();
        let t = ExactTranslation::new(&g, BaseKind::Laplacian, 1.0).unwrap();
        let x = array![Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)];
        let y = t.apply(&x.view()).unwrap();
        assert!(y[0].norm() < 1e-12);
        assert!((y[1] - Complex64::new(1.0, 0.0)).norm() < 1e-12);

        // Applying the swap twice restores the input.
        let z = t.apply(&y.view()).unwrap();
        assert!((z[0] - x[0]).norm() < 1e-12);
        assert!((z[1] - x[1]).norm() < 1e-12);
    }

    #[test]
    fn triangle_impulse_closed_form() {
        let g = generate(GraphKind::Complete { n: 3 }, 0).unwrap();
        let t = ExactTranslation::new(&g, BaseKind::Laplacian, 1.0).unwrap();
        let x = array![
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0)
        ];
        let y = t.apply(&x.view()).unwrap();
        let theta = std::f64::consts::PI * (0.75f64).sqrt();
        let e = Complex64::from_polar(1.0, -theta);
        let on = (Complex64::new(1.0, 0.0) + 2.0 * e) / 3.0;
        let off = (Complex64::new(1.0, 0.0) - e) / 3.0;
        assert!((y[0] - on).norm() < 1e-12);
        assert!((y[1] - off).norm() < 1e-12);
        assert!((y[2] - off).norm() < 1e-12);
    }

    #[test]
    fn isometry_on_random_signals() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(77);
        let g = generate(GraphKind::Geometric { n: 20, radius: 0.5 }, 3).unwrap();
        for kind in [
            BaseKind::Laplacian,
            BaseKind::NormalizedLaplacian,
            BaseKind::Adjacency,
        ] {
            let t = ExactTranslation::new(&g, kind, 1.0).unwrap();
            for _ in 0..200 {
                let x = random_signal(20, &mut rng);
                let y = t.apply(&x.view()).unwrap();
                assert!((norm(&y) - norm(&x)).abs() <= 1e-10 * norm(&x));
            }
        }
    }

    #[test]
    fn group_law_in_alpha() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let g = generate(GraphKind::Cycle { n: 7 }, 0).unwrap();
        let ta = ExactTranslation::new(&g, BaseKind::Laplacian, 0.7).unwrap();
        let tb = ExactTranslation::new(&g, BaseKind::Laplacian, 1.8).unwrap();
        let tab = ExactTranslation::new(&g, BaseKind::Laplacian, 2.5).unwrap();
        let x = random_signal(7, &mut rng);
        let two_step = tb.apply(&ta.apply(&x.view()).unwrap().view()).unwrap();
        let one_step = tab.apply(&x.view()).unwrap();
        let diff: Array1<Complex64> = &two_step - &one_step;
        assert!(norm(&diff) <= 1e-10 * norm(&x));
    }

    #[test]
    fn commutes_with_base_matrix() {
        let g = generate(GraphKind::ErdosRenyi { n: 10, p: 0.45 }, 6).unwrap();
        for kind in [
            BaseKind::Laplacian,
            BaseKind::NormalizedLaplacian,
            BaseKind::Adjacency,
        ] {
            let m = match kind {
                BaseKind::Laplacian => g.laplacian_matrix(),
                BaseKind::NormalizedLaplacian => g.normalized_laplacian_matrix().unwrap(),
                BaseKind::Adjacency => g.adjacency_matrix(),
            };
            let t = ExactTranslation::new(&g, kind, 1.0)
                .unwrap()
                .matrix()
                .unwrap();
            let n = g.n();
            let m_max = m.iter().fold(0.0f64, |a, &x| a.max(x.abs()));
            let mut worst = 0.0f64;
            for i in 0..n {
                for j in 0..n {
                    let mut tm = Complex64::new(0.0, 0.0);
                    let mut mt = Complex64::new(0.0, 0.0);
                    for k in 0..n {
                        tm += t[[i, k]] * m[[k, j]];
                        mt += m[[i, k]] * t[[k, j]];
                    }
                    worst = worst.max((tm - mt).norm());
                }
            }
            assert!(worst <= 1e-9 * m_max, "{kind}: commutator {worst:e}");
        }
    }

    #[test]
    fn unitarity_of_matrix() {
        let g = generate(GraphKind::Star { leaves: 6 }, 0).unwrap();
        let t = ExactTranslation::new(&g, BaseKind::NormalizedLaplacian, 1.5)
            .unwrap()
            .matrix()
            .unwrap();
        let n = 7;
        for i in 0..n {
            for j in 0..n {
                let mut acc = Complex64::new(0.0, 0.0);
                for k in 0..n {
                    acc += t[[k, i]].conj() * t[[k, j]];
                }
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!((acc - Complex64::new(expect, 0.0)).norm() <= 1e-10);
            }
        }
    }

    #[test]
    fn dc_mode_is_fixed() {
        let g = generate(GraphKind::Grid { rows: 3, cols: 3 }, 0).unwrap();
        let t = ExactTranslation::new(&g, BaseKind::Laplacian, 1.0).unwrap();
        assert_eq!(t.phases()[0], Complex64::new(1.0, 0.0));
        let u0: Array1<Complex64> = t
            .basis()
            .eigenvector(0)
            .iter()
            .map(|&v| Complex64::new(v, 0.0))
            .collect();
        let y = t.apply(&u0.view()).unwrap();
        let diff: Array1<Complex64> = &y - &u0;
        assert!(norm(&diff) <= 1e-12);
    }

    #[test]
    fn matrix_cap_enforced() {
        let g = generate(GraphKind::Path { n: 6 }, 0).unwrap();
        let t = ExactTranslation::new(&g, BaseKind::Laplacian, 1.0).unwrap();
        assert!(matches!(
            t.matrix_with_cap(5),
            Err(Error::DimensionCap { n: 6, cap: 5 })
        ));
    }

    #[test]
    fn rejects_nonpositive_alpha() {
        let g = generate(GraphKind::Path { n: 3 }, 0).unwrap();
        assert!(ExactTranslation::new(&g, BaseKind::Laplacian, 0.0).is_err());
        assert!(ExactTranslation::new(&g, BaseKind::Laplacian, -1.0).is_err());
    }
}
