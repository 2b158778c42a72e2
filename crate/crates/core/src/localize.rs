//! Impulse responses, hop-radius energy profiles, and the envelopes that
//! bound how much energy an exact translation can push past a given hop
//! radius.
//!
//! The envelope argument: a truncated operator of reach `d` moves nothing
//! past `d` hops, so outside any `r ≥ d` ball the exact impulse response
//! equals its approximation error there. Minimizing the scalar error bound
//! over all orders that fit inside `r` therefore bounds the outside-ball
//! amplitude, and its square the outside-ball energy.

use ndarray::{Array1, ArrayView1};
use num_complex::Complex64;

use crate::approx::bounds::{
    dc_error_term, empirical_sup_error, min_total_adjacency_for_radius, min_total_paper_for_radius,
    SymbolTruncation,
};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::spectral::{BaseKind, SpectralBasis};
use crate::translate::ExactTranslation;

/// Hop-energy profile of one exact impulse response.
#[derive(Debug, Clone)]
pub struct LocalizationProfile {
    pub center: usize,
    pub kind: BaseKind,
    pub alpha: f64,
    /// `E(r) = Σ_{d(center,j)=r} |y_j|²` for `r = 0..=r_max`.
    pub hop_energy: Vec<f64>,
    /// `C(r)`: cumulative energy fraction within radius `r`.
    pub cumulative_fraction: Vec<f64>,
    /// Eigenvalue-exact outside-ball energy bound per radius.
    pub envelope_oracle: Vec<f64>,
    /// Closed-formula outside-ball energy bound per radius.
    pub envelope_paper: Vec<f64>,
    /// Radii below this have no truncation order that fits, and their
    /// envelope is the trivial bound 1.
    pub feasible_from: usize,
}

/// One row of [`decay_report`].
#[derive(Debug, Clone)]
pub struct DecayRow {
    pub hop: usize,
    pub energy: f64,
    pub cum_fraction: f64,
    pub one_minus_cum: f64,
    pub envelope_oracle: f64,
    pub envelope_paper: f64,
    /// `envelope_oracle(r) / envelope_oracle(r-1)` across consecutive
    /// feasible radii.
    pub oracle_decay_ratio: Option<f64>,
}

/// Eigenvalue-exact envelope for radii `0..=r_max`.
///
/// Laplacian kinds minimize `sup-error(no DC) + dc_term·dc_weight` over
/// `P+Q ≤ r` and square it; `dc_weight` is the impulse's overlap with the
/// zero mode, `|u⁰_i|`. The adjacency kind minimizes the plain sup error
/// over `2K+1 ≤ r`, with envelope 1 at radius 0 where no order fits.
pub fn oracle_envelope(
    basis: &SpectralBasis,
    alpha: f64,
    dc_weight: f64,
    r_max: usize,
) -> Result<Vec<f64>> {
    let eigs = basis.scaled_eigenvalues();
    let mut env = Vec::with_capacity(r_max + 1);
    match basis.kind() {
        BaseKind::Laplacian | BaseKind::NormalizedLaplacian => {
            let epsilon = basis.spectral_gap()?.epsilon;
            let mut best = f64::INFINITY;
            for s in 0..=r_max {
                for q in 0..=s {
                    let p = s - q;
                    let sup = empirical_sup_error(
                        SymbolTruncation::Laplacian { p, q, epsilon },
                        alpha,
                        &eigs,
                        false,
                    )?;
                    let val = sup + dc_error_term(p, q, alpha, epsilon) * dc_weight;
                    best = best.min(val);
                }
                env.push(best * best);
            }
        }
        BaseKind::Adjacency => {
            let mut best = f64::INFINITY;
            for r in 0..=r_max {
                if r >= 1 && (r - 1) % 2 == 0 {
                    let k = (r - 1) / 2;
                    let sup =
                        empirical_sup_error(SymbolTruncation::Adjacency { k }, alpha, &eigs, true)?;
                    best = best.min(sup);
                }
                env.push(if best.is_finite() { best * best } else { 1.0 });
            }
        }
    }
    Ok(env)
}

/// Closed-formula envelope for radii `0..=r_max`, built from the displayed
/// total bounds alone (no DC correction, no spectrum).
pub fn paper_envelope(kind: BaseKind, alpha: f64, epsilon: f64, r_max: usize) -> Result<Vec<f64>> {
    let mut env = Vec::with_capacity(r_max + 1);
    for r in 0..=r_max {
        let val = if kind.is_laplacian_type() {
            Some(min_total_paper_for_radius(r, alpha, epsilon)?)
        } else {
            min_total_adjacency_for_radius(r, alpha)
        };
        env.push(match val {
            Some(v) => v * v,
            None => 1.0,
        });
    }
    Ok(env)
}

/// Exact impulse response at `center` and its hop-energy decay profile.
pub fn impulse_profile(
    g: &Graph,
    kind: BaseKind,
    alpha: f64,
    center: usize,
) -> Result<LocalizationProfile> {
    if center >= g.n() {
        return Err(Error::VertexOutOfRange {
            id: center,
            n: g.n(),
        });
    }
    let t = ExactTranslation::new(g, kind, alpha)?;
    let mut x = Array1::<Complex64>::zeros(g.n());
    x[center] = Complex64::new(1.0, 0.0);
    let y = t.apply(&x.view())?;

    let dist = g.hop_distances(center);
    let r_max = *dist.iter().max().expect("n >= 2");
    let mut hop_energy = vec![0.0; r_max + 1];
    for (j, &d) in dist.iter().enumerate() {
        hop_energy[d] += y[j].norm_sqr();
    }
    let total: f64 = hop_energy.iter().sum();
    let mut cumulative_fraction = Vec::with_capacity(r_max + 1);
    let mut acc = 0.0;
    for &e in &hop_energy {
        acc += e;
        cumulative_fraction.push(acc / total);
    }

    let (dc_weight, feasible_from) = if kind.is_laplacian_type() {
        (t.basis().eigenvector(0)[center].abs(), 0)
    } else {
        (0.0, 1)
    };
    let envelope_oracle = oracle_envelope(t.basis(), alpha, dc_weight, r_max)?;
    let epsilon = if kind.is_laplacian_type() {
        t.basis().spectral_gap()?.epsilon
    } else {
        0.0
    };
    let envelope_paper = paper_envelope(kind, alpha, epsilon, r_max)?;

    Ok(LocalizationProfile {
        center,
        kind,
        alpha,
        hop_energy,
        cumulative_fraction,
        envelope_oracle,
        envelope_paper,
        feasible_from,
    })
}

/// Smallest radius `r` such that the signal's energy strictly beyond `r`
/// is at most `tol`.
pub fn support_radius(
    g: &Graph,
    signal: &ArrayView1<Complex64>,
    center: usize,
    tol: f64,
) -> Result<usize> {
    if signal.len() != g.n() {
        return Err(Error::LengthMismatch {
            expected: g.n(),
            got: signal.len(),
        });
    }
    if center >= g.n() {
        return Err(Error::VertexOutOfRange {
            id: center,
            n: g.n(),
        });
    }
    let dist = g.hop_distances(center);
    let r_max = dist
        .iter()
        .filter(|&&d| d != usize::MAX)
        .max()
        .copied()
        .unwrap_or(0);
    let mut beyond = vec![0.0f64; r_max + 2];
    for (j, &d) in dist.iter().enumerate() {
        let e = signal[j].norm_sqr();
        let bucket = if d == usize::MAX { r_max + 1 } else { d };
        beyond[bucket] += e;
    }
    // beyond[r] currently holds E(r); turn it into energy strictly past r.
    let mut suffix = 0.0;
    let mut past = vec![0.0f64; r_max + 2];
    for (p, e) in past.iter_mut().zip(&beyond).rev() {
        *p = suffix;
        suffix += e;
    }
    match past[..=r_max].iter().position(|&p| p <= tol) {
        Some(r) => Ok(r),
        None => Ok(r_max + 1),
    }
}

/// Expands a profile into one row per radius, adding the geometric decay
/// ratio of the oracle envelope across consecutive feasible radii.
pub fn decay_report(profile: &LocalizationProfile) -> Vec<DecayRow> {
    let r_max = profile.hop_energy.len() - 1;
    (0..=r_max)
        .map(|r| {
            let ratio = if r > profile.feasible_from && profile.envelope_oracle[r - 1] > 0.0 {
                Some(profile.envelope_oracle[r] / profile.envelope_oracle[r - 1])
            } else {
                None
            };
            DecayRow {
                hop: r,
                energy: profile.hop_energy[r],
                cum_fraction: profile.cumulative_fraction[r],
                one_minus_cum: 1.0 - profile.cumulative_fraction[r],
                envelope_oracle: profile.envelope_oracle[r],
                envelope_paper: profile.envelope_paper[r],
                oracle_decay_ratio: ratio,
            }
        })
        .collect()
}
