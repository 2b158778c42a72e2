//! Truncated-series approximations of the three translations, applied
//! matrix-free, together with every bound formula and the eigenvalue-exact
//! oracle (in [`bounds`]).

pub mod bounds;

pub use bounds::{
    adjacency_tail_monotone, corrected_kappa_r, corrected_kappa_r_diverges,
    corrected_total_laplacian, dc_error_term, empirical_sup_error, kappa_c, kappa_c_abs_tail,
    kappa_r, kappa_s, kappa_s_abs_tail, lagrange_remainder_bound, laplacian_tail_monotone,
    min_order_search, min_total_adjacency_for_radius, min_total_paper_for_radius, product_bound,
    total_bound_adjacency, total_bound_laplacian, BoundReport, MinOrder, SymbolTruncation,
};

use ndarray::{Array1, Array2, ArrayView1};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::spectral::{BaseKind, SpectralBasis};

/// The scaled base operator `M` (`L/ρ`, `ℒ/2`, or `I - A/γ_max`), exposed
/// only through mat-vec application so polynomial evaluation never fills in
/// entries beyond the graph's edges.
#[derive(Debug, Clone)]
pub struct ScaledMatrix<'g> {
    graph: &'g Graph,
    kind: BaseKind,
    scale: f64,
    inv_sqrt_deg: Option<Vec<f64>>,
}

impl<'g> ScaledMatrix<'g> {
    /// Builds the scaled operator for a connected graph. The adjacency kind
    /// needs `γ_max` and therefore runs an eigendecomposition; use
    /// [`ScaledMatrix::adjacency_with_gamma`] to reuse a known value.
    pub fn new(graph: &'g Graph, kind: BaseKind) -> Result<Self> {
        if !graph.is_connected() {
            return Err(Error::Disconnected);
        }
        match kind {
            BaseKind::Laplacian => Ok(ScaledMatrix {
                graph,
                kind,
                scale: graph.rho()?,
                inv_sqrt_deg: None,
            }),
            BaseKind::NormalizedLaplacian => Ok(ScaledMatrix {
                graph,
                kind,
                scale: 2.0,
                inv_sqrt_deg: Some(graph.inv_sqrt_degrees()?),
            }),
            BaseKind::Adjacency => {
                let basis = SpectralBasis::for_graph(graph, BaseKind::Adjacency)?;
                Self::adjacency_with_gamma(graph, basis.scale())
            }
        }
    }

    /// Adjacency-kind operator with a caller-supplied largest eigenvalue.
    pub fn adjacency_with_gamma(graph: &'g Graph, gamma_max: f64) -> Result<Self> {
        if !graph.is_connected() {
            return Err(Error::Disconnected);
        }
        if !gamma_max.is_finite() || gamma_max <= 0.0 {
            return Err(Error::NonPositiveScale(gamma_max));
        }
        Ok(ScaledMatrix {
            graph,
            kind: BaseKind::Adjacency,
            scale: gamma_max,
            inv_sqrt_deg: None,
        })
    }

    pub fn kind(&self) -> BaseKind {
        self.kind
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    /// One mat-vec `y = M x`.
    pub fn apply(&self, x: &ArrayView1<Complex64>) -> Array1<Complex64> {
        let n = self.n();
        debug_assert_eq!(x.len(), n);
        let mut y = Array1::<Complex64>::zeros(n);
        match self.kind {
            BaseKind::Laplacian => {
                let inv = 1.0 / self.scale;
                for i in 0..n {
                    let mut acc = x[i] * self.graph.degrees()[i];
                    for &(j, w) in self.graph.neighbors(i) {
                        acc -= x[j] * w;
                    }
                    y[i] = acc * inv;
                }
            }
            BaseKind::NormalizedLaplacian => {
                let inv_sqrt = self.inv_sqrt_deg.as_ref().expect("set at construction");
                for i in 0..n {
                    let mut acc = x[i];
                    let si = inv_sqrt[i];
                    for &(j, w) in self.graph.neighbors(i) {
                        acc -= x[j] * (w * si * inv_sqrt[j]);
                    }
                    y[i] = acc * 0.5;
                }
            }
            BaseKind::Adjacency => {
                let inv = 1.0 / self.scale;
                for i in 0..n {
                    let mut acc = Complex64::new(0.0, 0.0);
                    for &(j, w) in self.graph.neighbors(i) {
                        acc += x[j] * w;
                    }
                    y[i] = x[i] - acc * inv;
                }
            }
        }
        y
    }

    /// Dense `M`, for small-n consistency checks.
    pub fn dense(&self) -> Array2<f64> {
        let n = self.n();
        match self.kind {
            BaseKind::Laplacian => self.graph.laplacian_matrix() / self.scale,
            BaseKind::NormalizedLaplacian => {
                self.graph.normalized_laplacian_matrix().expect("checked") / 2.0
            }
            BaseKind::Adjacency => Array2::eye(n) - self.graph.adjacency_matrix() / self.scale,
        }
    }
}

/// Truncation orders of an approximate translation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ApproxOrder {
    /// Joint cosine/sine truncation at index `k` (polynomial degree 2k+1).
    Adjacency { k: usize },
    /// Trigonometric order `p` and square-root order `q`.
    Laplacian { p: usize, q: usize },
}

/// A truncated translation operator applied matrix-free. The result of an
/// application depends on the input only through a bounded hop
/// neighborhood: `2K+1` hops for the adjacency kind, `P+Q` otherwise.
#[derive(Debug, Clone)]
pub struct ApproxTranslation<'g> {
    mat: ScaledMatrix<'g>,
    order: ApproxOrder,
    alpha: f64,
    epsilon: f64,
}

fn validate_alpha(alpha: f64) -> Result<()> {
    if !alpha.is_finite() || alpha <= 0.0 {
        return Err(Error::InvalidParam(format!(
            "vertex-diffusion factor alpha must be positive, got {alpha}"
        )));
    }
    Ok(())
}

impl<'g> ApproxTranslation<'g> {
    /// Adjacency-kind approximation of order `k`.
    pub fn adjacency(g: &'g Graph, k: usize, alpha: f64) -> Result<Self> {
        validate_alpha(alpha)?;
        Ok(ApproxTranslation {
            mat: ScaledMatrix::new(g, BaseKind::Adjacency)?,
            order: ApproxOrder::Adjacency { k },
            alpha,
            epsilon: 0.0,
        })
    }

    /// Adjacency-kind approximation reusing a known `γ_max`.
    pub fn adjacency_with_gamma(
        g: &'g Graph,
        gamma_max: f64,
        k: usize,
        alpha: f64,
    ) -> Result<Self> {
        validate_alpha(alpha)?;
        Ok(ApproxTranslation {
            mat: ScaledMatrix::adjacency_with_gamma(g, gamma_max)?,
            order: ApproxOrder::Adjacency { k },
            alpha,
            epsilon: 0.0,
        })
    }

    /// Laplacian-kind approximation of orders `(p, q)`; the square-root
    /// series parameter ε comes from the graph's spectral gap.
    pub fn laplacian(g: &'g Graph, kind: BaseKind, p: usize, q: usize, alpha: f64) -> Result<Self> {
        let basis = SpectralBasis::for_graph(g, kind)?;
        let gap = basis.spectral_gap()?;
        Self::laplacian_with_gap(g, kind, p, q, alpha, gap.epsilon)
    }

    /// Laplacian-kind approximation with a caller-supplied ε.
    pub fn laplacian_with_gap(
        g: &'g Graph,
        kind: BaseKind,
        p: usize,
        q: usize,
        alpha: f64,
        epsilon: f64,
    ) -> Result<Self> {
        validate_alpha(alpha)?;
        if !kind.is_laplacian_type() {
            return Err(Error::InvalidParam(
                "orders (P, Q) apply to the Laplacian kinds; use the K order for adjacency".into(),
            ));
        }
        if !(0.0..1.0).contains(&epsilon) {
            return Err(Error::InvalidParam(format!(
                "epsilon must be in [0, 1), got {epsilon}"
            )));
        }
        Ok(ApproxTranslation {
            mat: ScaledMatrix::new(g, kind)?,
            order: ApproxOrder::Laplacian { p, q },
            alpha,
            epsilon,
        })
    }

    pub fn kind(&self) -> BaseKind {
        self.mat.kind()
    }

    pub fn order(&self) -> ApproxOrder {
        self.order
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    /// Scale of the underlying `M` (ρ, 2, or γ_max).
    pub fn scale(&self) -> f64 {
        self.mat.scale()
    }

    /// Hop radius the operator can move energy: the polynomial degree.
    pub fn hop_reach(&self) -> usize {
        match self.order {
            ApproxOrder::Adjacency { k } => 2 * k + 1,
            ApproxOrder::Laplacian { p, q } => p + q,
        }
    }

    /// The scalar-symbol truncation matching this operator, for oracle
    /// evaluation.
    pub fn symbol_truncation(&self) -> SymbolTruncation {
        match self.order {
            ApproxOrder::Adjacency { k } => SymbolTruncation::Adjacency { k },
            ApproxOrder::Laplacian { p, q } => SymbolTruncation::Laplacian {
                p,
                q,
                epsilon: self.epsilon,
            },
        }
    }

    /// Applies the truncated operator.
    pub fn apply(&self, x: &ArrayView1<Complex64>) -> Result<Array1<Complex64>> {
        let n = self.mat.n();
        if x.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                got: x.len(),
            });
        }
        match self.order {
            ApproxOrder::Adjacency { k } => Ok(self.apply_adjacency(k, x)),
            ApproxOrder::Laplacian { p, q } => Ok(self.apply_laplacian(p, q, x)),
        }
    }

    /// `Σ_{k≤K} (-1)^k [(απM)^{2k}/(2k)! - i (απM)^{2k+1}/(2k+1)!] x`,
    /// accumulated over 2K+1 successive mat-vecs.
    fn apply_adjacency(&self, k: usize, x: &ArrayView1<Complex64>) -> Array1<Complex64> {
        let apix = self.alpha * std::f64::consts::PI;
        let mut power = x.to_owned();
        let mut acc = x.to_owned(); // m = 0 term has coefficient +1
        let mut base = 1.0f64; // (απ)^m / m!
        for m in 1..=(2 * k + 1) {
            power = self.mat.apply(&power.view());
            base *= apix / m as f64;
            let coef = match m % 4 {
                0 => Complex64::new(base, 0.0),
                1 => Complex64::new(0.0, -base),
                2 => Complex64::new(-base, 0.0),
                _ => Complex64::new(0.0, base),
            };
            ndarray::Zip::from(&mut acc).and(&power).for_each(|a, &pw| {
                *a += coef * pw;
            });
        }
        acc
    }

    /// `C^(P)(M) x - i R^(Q)(M) S^(P)(M) x`, each factor evaluated by
    /// Horner's rule: C and S as polynomials in `M`, R as a polynomial in
    /// `(1+ε)M - I`.
    fn apply_laplacian(&self, p: usize, q: usize, x: &ArrayView1<Complex64>) -> Array1<Complex64> {
        let c = self.horner_in_m(&cos_coefficients(p, self.alpha), x);
        let s = self.horner_in_m(&sin_coefficients(p, self.alpha), x);
        let r = self.horner_in_shifted(&sqrt_coefficients(q), &s.view());
        let mut out = c;
        let minus_i = Complex64::new(0.0, -1.0);
        ndarray::Zip::from(&mut out).and(&r).for_each(|o, &rv| {
            *o += minus_i * rv;
        });
        out
    }

    fn horner_in_m(&self, coeffs: &[f64], x: &ArrayView1<Complex64>) -> Array1<Complex64> {
        let mut acc: Array1<Complex64> = x.mapv(|v| v * coeffs[coeffs.len() - 1]);
        for &c in coeffs[..coeffs.len() - 1].iter().rev() {
            acc = self.mat.apply(&acc.view());
            ndarray::Zip::from(&mut acc).and(x).for_each(|a, &xv| {
                *a += xv * c;
            });
        }
        acc
    }

    fn horner_in_shifted(&self, coeffs: &[f64], x: &ArrayView1<Complex64>) -> Array1<Complex64> {
        let shift = 1.0 + self.epsilon;
        let mut acc: Array1<Complex64> = x.mapv(|v| v * coeffs[coeffs.len() - 1]);
        for &c in coeffs[..coeffs.len() - 1].iter().rev() {
            let mv = self.mat.apply(&acc.view());
            ndarray::Zip::from(&mut acc)
                .and(&mv)
                .and(x)
                .for_each(|a, &m, &xv| {
                    *a = shift * m - *a + xv * c;
                });
        }
        let prefactor = (1.0 / (1.0 + self.epsilon)).sqrt();
        acc.mapv_into(|v| v * prefactor)
    }
}

/// Coefficients of `C^(P)`: `(-1)^k (απ)^{2k} / (2k)!` for `x^k`.
pub(crate) fn cos_coefficients(p: usize, alpha: f64) -> Vec<f64> {
    let a2 = (alpha * std::f64::consts::PI).powi(2);
    let mut coeffs = Vec::with_capacity(p + 1);
    let mut c = 1.0f64;
    coeffs.push(c);
    for k in 0..p {
        c *= -a2 / ((2 * k + 1) as f64 * (2 * k + 2) as f64);
        coeffs.push(c);
    }
    coeffs
}

/// Coefficients of `S^(P)`: `(-1)^k (απ)^{2k+1} / (2k+1)!` for `x^k`.
pub(crate) fn sin_coefficients(p: usize, alpha: f64) -> Vec<f64> {
    let api = alpha * std::f64::consts::PI;
    let a2 = api * api;
    let mut coeffs = Vec::with_capacity(p + 1);
    let mut c = api;
    coeffs.push(c);
    for k in 0..p {
        c *= -a2 / ((2 * k + 2) as f64 * (2 * k + 3) as f64);
        coeffs.push(c);
    }
    coeffs
}

/// Taylor coefficients of `√(1+y)` about 0, up to `y^q`. The √(1/(1+ε))
/// prefactor of `R^(Q)` is applied separately.
pub(crate) fn sqrt_coefficients(q: usize) -> Vec<f64> {
    let mut coeffs = Vec::with_capacity(q + 1);
    let mut b = 1.0f64;
    coeffs.push(b);
    for k in 0..q {
        b *= -((2 * k) as f64 - 1.0) / (2.0 * (k as f64 + 1.0));
        coeffs.push(b);
    }
    coeffs
}

/// One-shot adjacency-kind application (computes `γ_max` internally; build
/// an [`ApproxTranslation`] to amortize that over many signals).
pub fn apply_adjacency_approx(
    g: &Graph,
    k: usize,
    alpha: f64,
    x: &ArrayView1<Complex64>,
) -> Result<Array1<Complex64>> {
    ApproxTranslation::adjacency(g, k, alpha)?.apply(x)
}

/// One-shot Laplacian-kind application (derives ε from the graph's
/// spectral gap).
pub fn apply_laplacian_approx(
    g: &Graph,
    kind: BaseKind,
    p: usize,
    q: usize,
    alpha: f64,
    x: &ArrayView1<Complex64>,
) -> Result<Array1<Complex64>> {
    ApproxTranslation::laplacian(g, kind, p, q, alpha)?.apply(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{generate, GraphKind};
    use crate::translate::ExactTranslation;
    use rand::{Rng, SeedableRng};
    use std::f64::consts::PI;

    fn norm(x: &Array1<Complex64>) -> f64 {
        x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    fn impulse(n: usize, i: usize) -> Array1<Complex64> {
        let mut x = Array1::<Complex64>::zeros(n);
        x[i] = Complex64::new(1.0, 0.0);
        x
    }

    #[test]
    fn sqrt_coefficients_match_series() {
        let b = sqrt_coefficients(4);
        let expect = [1.0, 0.5, -0.125, 0.0625, -0.0390625];
        for (a, e) in b.iter().zip(expect) {
            assert!((a - e).abs() < 1e-15);
        }
    }

    #[test]
    fn scaled_matrix_matches_dense() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(31);
        for n in [24usize, 64] {
            let g = generate(GraphKind::ErdosRenyi { n, p: 0.25 }, 9).unwrap();
            for kind in [
                BaseKind::Laplacian,
                BaseKind::NormalizedLaplacian,
                BaseKind::Adjacency,
            ] {
                let m = ScaledMatrix::new(&g, kind).unwrap();
                let dense = m.dense();
                let x: Array1<Complex64> = (0..n)
                    .map(|_| {
                        Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
                    })
                    .collect();
                let sparse = m.apply(&x.view());
                for i in 0..n {
                    let mut acc = Complex64::new(0.0, 0.0);
                    for j in 0..n {
                        acc += x[j] * dense[[i, j]];
                    }
                    assert!((acc - sparse[i]).norm() < 1e-12, "{kind} n={n} row {i}");
                }
            }
        }
    }

    #[test]
    fn adjacency_order_zero_hand_expansion() {
        // On K2, M = I - A and the K = 0 truncation is I - iπM.
        let g = generate(GraphKind::Path { n: 2 }, 0).unwrap();
        let x = impulse(2, 0);
        let y = apply_adjacency_approx(&g, 0, 1.0, &x.view()).unwrap();
        assert!((y[0] - Complex64::new(1.0, -PI)).norm() < 1e-14);
        assert!((y[1] - Complex64::new(0.0, PI)).norm() < 1e-14);
    }

    #[test]
    fn adjacency_series_converges_to_exact() {
        let g = generate(GraphKind::Cycle { n: 6 }, 0).unwrap();
        let exact = ExactTranslation::new(&g, BaseKind::Adjacency, 1.0).unwrap();
        let approx = ApproxTranslation::adjacency(&g, 40, 1.0).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        for _ in 0..20 {
            let x: Array1<Complex64> = (0..6)
                .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
                .collect();
            let ye = exact.apply(&x.view()).unwrap();
            let ya = approx.apply(&x.view()).unwrap();
            let diff: Array1<Complex64> = &ye - &ya;
            assert!(norm(&diff) <= 1e-10 * norm(&x));
        }
    }

    #[test]
    fn adjacency_support_is_compact() {
        // K = 1 gives a degree-3 polynomial: nothing moves past hop 3.
        let g = generate(GraphKind::Path { n: 9 }, 0).unwrap();
        let y = apply_adjacency_approx(&g, 1, 1.0, &impulse(9, 0).view()).unwrap();
        for j in 4..9 {
            assert_eq!(
                y[j],
                Complex64::new(0.0, 0.0),
                "vertex {j} should be untouched"
            );
        }
        assert!(y[3].norm() > 0.0);
    }

    #[test]
    fn laplacian_order_zero_formula() {
        // P = Q = 0 collapses to x - iπ√(1/(1+ε)) x.
        let g = generate(GraphKind::Complete { n: 4 }, 0).unwrap();
        let approx = ApproxTranslation::laplacian(&g, BaseKind::Laplacian, 0, 0, 1.0).unwrap();
        assert!((approx.epsilon() - 0.2).abs() < 1e-12);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2);
        let x: Array1<Complex64> = (0..4)
            .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
            .collect();
        let y = approx.apply(&x.view()).unwrap();
        let factor = Complex64::new(1.0, -PI * (1.0f64 / 1.2).sqrt());
        for i in 0..4 {
            assert!((y[i] - factor * x[i]).norm() < 1e-13);
        }
    }

    #[test]
    fn laplacian_high_order_matches_exact_on_k2() {
        // ε = 0 on K2; the zero mode is excited, so compare on the DC-free
        // component only.
        let g = generate(GraphKind::Path { n: 2 }, 0).unwrap();
        let exact = ExactTranslation::new(&g, BaseKind::Laplacian, 1.0).unwrap();
        let approx = ApproxTranslation::laplacian(&g, BaseKind::Laplacian, 30, 30, 1.0).unwrap();
        assert!(approx.epsilon().abs() < 1e-12);
        let u1: Array1<Complex64> = exact
            .basis()
            .eigenvector(1)
            .iter()
            .map(|&v| Complex64::new(v, 0.0))
            .collect();
        let ye = exact.apply(&u1.view()).unwrap();
        let ya = approx.apply(&u1.view()).unwrap();
        let diff: Array1<Complex64> = &ye - &ya;
        assert!(norm(&diff) <= 1e-10);
    }

    #[test]
    fn laplacian_support_is_compact() {
        let g = generate(GraphKind::Path { n: 12 }, 0).unwrap();
        for kind in [BaseKind::Laplacian, BaseKind::NormalizedLaplacian] {
            let approx = ApproxTranslation::laplacian(&g, kind, 5, 1, 1.0).unwrap();
            let y = approx.apply(&impulse(12, 0).view()).unwrap();
            for j in 7..12 {
                assert_eq!(y[j], Complex64::new(0.0, 0.0), "{kind} vertex {j}");
            }
        }
    }

    #[test]
    fn six_hop_neighborhood_at_orders_5_1() {
        let g = generate(GraphKind::Path { n: 16 }, 0).unwrap();
        let approx = ApproxTranslation::laplacian(&g, BaseKind::Laplacian, 5, 1, 1.0).unwrap();
        assert_eq!(approx.hop_reach(), 6);
        let y = approx.apply(&impulse(16, 8).view()).unwrap();
        for (j, v) in y.iter().enumerate() {
            let hops = j.abs_diff(8);
            if hops > 6 {
                assert_eq!(*v, Complex64::new(0.0, 0.0));
            }
        }
    }

    #[test]
    fn rejects_bad_arguments() {
        let g = generate(GraphKind::Path { n: 4 }, 0).unwrap();
        assert!(ApproxTranslation::adjacency(&g, 3, 0.0).is_err());
        assert!(ApproxTranslation::laplacian(&g, BaseKind::Adjacency, 1, 1, 1.0).is_err());
        assert!(
            ApproxTranslation::laplacian_with_gap(&g, BaseKind::Laplacian, 1, 1, 1.0, 1.0).is_err()
        );
        let approx = ApproxTranslation::adjacency(&g, 2, 1.0).unwrap();
        let short = impulse(3, 0);
        assert!(matches!(
            approx.apply(&short.view()),
            Err(Error::LengthMismatch {
                expected: 4,
                got: 3
            })
        ));
    }

    #[test]
    fn disconnected_graph_rejected() {
        let g = crate::graph::load_graph("n 4\n0 1 1\n2 3 1").unwrap();
        assert!(matches!(
            ApproxTranslation::laplacian(&g, BaseKind::Laplacian, 1, 1, 1.0),
            Err(Error::Disconnected)
        ));
        assert!(matches!(
            ScaledMatrix::new(&g, BaseKind::Adjacency),
            Err(Error::Disconnected)
        ));
    }
}
