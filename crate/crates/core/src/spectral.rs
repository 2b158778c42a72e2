//! Dense symmetric eigendecomposition, the graph Fourier transform, reduced
//! frequencies for the three operator families, and spectral-gap quantities.

use ndarray::{Array1, Array2, ArrayView1, ArrayView2};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Which base matrix a spectral object is built from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BaseKind {
    /// Combinatorial Laplacian `L = D - A`, scaled by ρ.
    Laplacian,
    /// Normalized Laplacian `D^{-1/2} L D^{-1/2}`, scaled by 2.
    NormalizedLaplacian,
    /// Adjacency matrix, scaled by its largest eigenvalue.
    Adjacency,
}

impl BaseKind {
    /// Laplacian-type kinds share the `[0, 1]` scaled-eigenvalue interval
    /// and the square-root frequency map.
    pub fn is_laplacian_type(&self) -> bool {
        !matches!(self, BaseKind::Adjacency)
    }

    /// Upper end of the scaled-eigenvalue interval of `M`.
    pub fn interval_hi(&self) -> f64 {
        if self.is_laplacian_type() {
            1.0
        } else {
            2.0
        }
    }
}

impl std::fmt::Display for BaseKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            BaseKind::Laplacian => "laplacian",
            BaseKind::NormalizedLaplacian => "normalized_laplacian",
            BaseKind::Adjacency => "adjacency",
        };
        f.write_str(s)
    }
}

/// Plain eigendecomposition of a real symmetric matrix: ascending
/// eigenvalues and orthonormal eigenvector columns.
#[derive(Debug, Clone)]
pub struct Eigen {
    pub values: Vec<f64>,
    /// Column `l` is the eigenvector for `values[l]`.
    pub vectors: Array2<f64>,
}

const SYMMETRY_RTOL: f64 = 1e-12;
const MAX_SWEEPS: usize = 64;

/// Eigendecomposition of a real symmetric matrix by cyclic Jacobi
/// rotations.
///
/// Eigenvalues come back ascending; each eigenvector's largest-magnitude
/// entry is made positive so repeated runs serialize identically.
pub fn eig_sym(m: &ArrayView2<f64>) -> Result<Eigen> {
    let n = m.nrows();
    if n != m.ncols() {
        return Err(Error::LengthMismatch {
            expected: n,
            got: m.ncols(),
        });
    }
    let scale = m.iter().fold(0.0f64, |acc, &x| acc.max(x.abs()));
    for i in 0..n {
        for j in (i + 1)..n {
            let diff = (m[[i, j]] - m[[j, i]]).abs();
            if diff > SYMMETRY_RTOL * scale.max(1e-300) {
                return Err(Error::NotSymmetric { i, j, diff });
            }
        }
    }

    let mut a = m.to_owned();
    let mut v = Array2::<f64>::eye(n);

    // Frobenius norm of the whole matrix fixes the convergence scale.
    let fro: f64 = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    let stop = 1e-15 * fro.max(f64::MIN_POSITIVE);

    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        let off: f64 = {
            let mut s = 0.0;
            for p in 0..n {
                for q in (p + 1)..n {
                    s += a[[p, q]] * a[[p, q]];
                }
            }
            (2.0 * s).sqrt()
        };
        if off <= stop {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[[p, q]];
                if apq == 0.0 {
                    continue;
                }
                let app = a[[p, p]];
                let aqq = a[[q, q]];
                let theta = 0.5 * (aqq - app) / apq;
                // Stable choice of the smaller rotation angle.
                let t = if theta >= 0.0 {
                    1.0 / (theta + (1.0 + theta * theta).sqrt())
                } else {
                    -1.0 / (-theta + (1.0 + theta * theta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;

                for k in 0..n {
                    let akp = a[[k, p]];
                    let akq = a[[k, q]];
                    a[[k, p]] = c * akp - s * akq;
                    a[[k, q]] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[[p, k]];
                    let aqk = a[[q, k]];
                    a[[p, k]] = c * apk - s * aqk;
                    a[[q, k]] = s * apk + c * aqk;
                }
                for k in 0..n {
                    let vkp = v[[k, p]];
                    let vkq = v[[k, q]];
                    v[[k, p]] = c * vkp - s * vkq;
                    v[[k, q]] = s * vkp + c * vkq;
                }
            }
        }
    }
    if !converged {
        return Err(Error::NoConvergence(MAX_SWEEPS));
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[[i, i]].total_cmp(&a[[j, j]]));

    let mut values = Vec::with_capacity(n);
    let mut vectors = Array2::<f64>::zeros((n, n));
    for (dst, &src) in order.iter().enumerate() {
        values.push(a[[src, src]]);
        let mut max_abs = 0.0f64;
        let mut max_idx = 0usize;
        for k in 0..n {
            let x = v[[k, src]].abs();
            if x > max_abs {
                max_abs = x;
                max_idx = k;
            }
        }
        let flip = if v[[max_idx, src]] < 0.0 { -1.0 } else { 1.0 };
        for k in 0..n {
            vectors[[k, dst]] = flip * v[[k, src]];
        }
    }

    Ok(Eigen { values, vectors })
}

/// Orthonormal eigenbasis of one of the three base matrices of a graph,
/// together with the scale that maps eigenvalues into the reduced
/// frequency interval.
#[derive(Debug, Clone)]
pub struct SpectralBasis {
    kind: BaseKind,
    eigenvalues: Vec<f64>,
    eigenvectors: Array2<f64>,
    scale: f64,
}

/// Reduced frequencies `ν_l` and the phase angles `θ_l` the translation
/// operator applies.
#[derive(Debug, Clone)]
pub struct FrequencySet {
    pub nu: Vec<f64>,
    pub theta: Vec<f64>,
}

/// Spectral gap `ϱ` of the scaled base matrix and the derived series
/// parameter `ε = (1-ϱ)/(1+ϱ)`.
#[derive(Debug, Clone, Copy)]
pub struct SpectralGap {
    pub rho: f64,
    pub epsilon: f64,
}

/// `ε = (1-ϱ)/(1+ϱ)` for a hypothetical spectral gap, as used when
/// reproducing bound curves without a concrete graph.
pub fn epsilon_from_rho(rho: f64) -> f64 {
    (1.0 - rho) / (1.0 + rho)
}

impl SpectralBasis {
    /// Decomposes the chosen base matrix of a connected graph.
    pub fn for_graph(g: &Graph, kind: BaseKind) -> Result<Self> {
        if !g.is_connected() {
            return Err(Error::Disconnected);
        }
        let m = match kind {
            BaseKind::Laplacian => g.laplacian_matrix(),
            BaseKind::NormalizedLaplacian => g.normalized_laplacian_matrix()?,
            BaseKind::Adjacency => g.adjacency_matrix(),
        };
        let eig = eig_sym(&m.view())?;
        let mut eigenvalues = eig.values;
        let n = g.n();

        let lam_max = eigenvalues[n - 1].abs().max(f64::MIN_POSITIVE);
        if kind.is_laplacian_type() {
            // A PSD matrix of a connected graph has one (numerically) zero
            // eigenvalue; pin it so downstream phases are exact there.
            if eigenvalues[0].abs() > 1e-10 * lam_max {
                return Err(Error::EigenvalueOutOfRange {
                    value: eigenvalues[0],
                    lo: 0.0,
                    hi: 0.0,
                });
            }
            eigenvalues[0] = 0.0;
        }

        let scale = match kind {
            BaseKind::Laplacian => g.rho()?,
            BaseKind::NormalizedLaplacian => 2.0,
            BaseKind::Adjacency => {
                let gamma_max = eigenvalues[n - 1];
                if gamma_max <= 0.0 {
                    return Err(Error::NonPositiveScale(gamma_max));
                }
                gamma_max
            }
        };

        Ok(SpectralBasis {
            kind,
            eigenvalues,
            eigenvectors: eig.vectors,
            scale,
        })
    }

    pub fn kind(&self) -> BaseKind {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.eigenvalues.len()
    }

    /// Eigenvalues of the base matrix, ascending.
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    /// Orthonormal eigenvectors as matrix columns.
    pub fn eigenvectors(&self) -> &Array2<f64> {
        &self.eigenvectors
    }

    pub fn eigenvector(&self, l: usize) -> ArrayView1<'_, f64> {
        self.eigenvectors.column(l)
    }

    /// ρ for the Laplacian kind, 2 for the normalized kind, γ_max for the
    /// adjacency kind.
    pub fn scale(&self) -> f64 {
        self.scale
    }

    /// Eigenvalues of the scaled operator `M`: `λ/ρ`, `μ/2`, or
    /// `1 - γ/γ_max`. These live in `[0, 1]` (Laplacian kinds) or `[0, 2]`
    /// (adjacency), up to round-off.
    pub fn scaled_eigenvalues(&self) -> Vec<f64> {
        match self.kind {
            BaseKind::Laplacian | BaseKind::NormalizedLaplacian => {
                self.eigenvalues.iter().map(|&l| l / self.scale).collect()
            }
            BaseKind::Adjacency => self
                .eigenvalues
                .iter()
                .map(|&g| 1.0 - g / self.scale)
                .collect(),
        }
    }

    /// Forward graph Fourier transform `x̂ = Uᵀ x`.
    pub fn gft(&self, x: &ArrayView1<Complex64>) -> Result<Array1<Complex64>> {
        let n = self.n();
        if x.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                got: x.len(),
            });
        }
        let mut out = Array1::<Complex64>::zeros(n);
        for l in 0..n {
            let mut acc = Complex64::new(0.0, 0.0);
            for i in 0..n {
                acc += x[i] * self.eigenvectors[[i, l]];
            }
            out[l] = acc;
        }
        Ok(out)
    }

    /// Inverse transform `x = U x̂`.
    pub fn igft(&self, xs: &ArrayView1<Complex64>) -> Result<Array1<Complex64>> {
        let n = self.n();
        if xs.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                got: xs.len(),
            });
        }
        let mut out = Array1::<Complex64>::zeros(n);
        for i in 0..n {
            let mut acc = Complex64::new(0.0, 0.0);
            for l in 0..n {
                acc += xs[l] * self.eigenvectors[[i, l]];
            }
            out[i] = acc;
        }
        Ok(out)
    }

    /// Reduced frequencies and phase angles.
    ///
    /// Laplacian kinds: `ν = ½√(λ/scale)`, `θ = π√(λ/scale)`; tiny negative
    /// eigenvalues from round-off are clamped to zero before the square
    /// root. Adjacency: `ν = 1 - γ/γ_max`, `θ = π ν`.
    pub fn frequencies(&self) -> Result<FrequencySet> {
        let n = self.n();
        let mut nu = Vec::with_capacity(n);
        let mut theta = Vec::with_capacity(n);
        match self.kind {
            BaseKind::Laplacian | BaseKind::NormalizedLaplacian => {
                let lam_max = self.eigenvalues[n - 1].abs().max(f64::MIN_POSITIVE);
                for &lam in &self.eigenvalues {
                    let mut x = lam / self.scale;
                    if x < 0.0 {
                        if lam < -1e-12 * lam_max {
                            return Err(Error::EigenvalueOutOfRange {
                                value: lam,
                                lo: 0.0,
                                hi: self.scale,
                            });
                        }
                        x = 0.0;
                    }
                    if x > 1.0 + 1e-9 {
                        return Err(Error::EigenvalueOutOfRange {
                            value: lam,
                            lo: 0.0,
                            hi: self.scale,
                        });
                    }
                    let root = x.min(1.0).sqrt();
                    nu.push(0.5 * root);
                    theta.push(std::f64::consts::PI * root);
                }
            }
            BaseKind::Adjacency => {
                if self.scale <= 0.0 {
                    return Err(Error::NonPositiveScale(self.scale));
                }
                for &gam in &self.eigenvalues {
                    let x = 1.0 - gam / self.scale;
                    nu.push(x);
                    theta.push(std::f64::consts::PI * x);
                }
            }
        }
        Ok(FrequencySet { nu, theta })
    }

    /// Spectral gap of the scaled matrix: `ϱ = λ₁/scale` (Laplacian kinds
    /// only). Fails when the gap is numerically zero, which is the
    /// disconnected case.
    pub fn spectral_gap(&self) -> Result<SpectralGap> {
        if !self.kind.is_laplacian_type() {
            return Err(Error::InvalidParam(
                "spectral gap is defined for the Laplacian kinds".into(),
            ));
        }
        let n = self.n();
        let lam_max = self.eigenvalues[n - 1];
        let lam1 = self.eigenvalues[1];
        if lam1 <= 1e-12 * lam_max.abs() {
            return Err(Error::Disconnected);
        }
        let rho = lam1 / self.scale;
        Ok(SpectralGap {
            rho,
            epsilon: epsilon_from_rho(rho),
        })
    }
}
