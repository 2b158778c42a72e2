//! Deterministic graph generators for desk-scale experiments.
//!
//! Random families draw from a ChaCha8 stream seeded with the caller's
//! seed, so the same `(kind, seed)` always yields the same graph. Random
//! topologies are regenerated with an incremented seed until connected,
//! within a fixed retry budget.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// How many reseeded attempts a random generator gets to produce a
/// connected graph before giving up.
pub const CONNECT_RETRIES: usize = 64;

/// Graph family plus its parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GraphKind {
    /// Path on `n` vertices: edges (i, i+1).
    Path { n: usize },
    /// Cycle on `n ≥ 3` vertices.
    Cycle { n: usize },
    /// rows×cols grid, row-major vertex ids.
    Grid { rows: usize, cols: usize },
    /// Complete graph on `n` vertices.
    Complete { n: usize },
    /// Star: center vertex 0 with `leaves` pendant vertices.
    Star { leaves: usize },
    /// Erdős–Rényi G(n, p); each pair drawn independently.
    ErdosRenyi { n: usize, p: f64 },
    /// Random geometric graph: `n` points in the unit square, edge when
    /// the Euclidean distance is at most `radius`.
    Geometric { n: usize, radius: f64 },
}

impl GraphKind {
    /// True for families whose topology depends on the seed.
    pub fn is_random(&self) -> bool {
        matches!(
            self,
            GraphKind::ErdosRenyi { .. } | GraphKind::Geometric { .. }
        )
    }

    /// One-line parameter summary, used for edge-list header comments.
    pub fn summary(&self) -> String {
        match self {
            GraphKind::Path { n } => format!("kind=path n={n}"),
            GraphKind::Cycle { n } => format!("kind=cycle n={n}"),
            GraphKind::Grid { rows, cols } => format!("kind=grid rows={rows} cols={cols}"),
            GraphKind::Complete { n } => format!("kind=complete n={n}"),
            GraphKind::Star { leaves } => format!("kind=star leaves={leaves}"),
            GraphKind::ErdosRenyi { n, p } => format!("kind=erdos n={n} p={p}"),
            GraphKind::Geometric { n, radius } => format!("kind=geometric n={n} r={radius}"),
        }
    }
}

/// Generates a connected unit-weight graph.
pub fn generate(kind: GraphKind, seed: u64) -> Result<Graph> {
    generate_weighted(kind, seed, None)
}

/// Generates a connected graph; with `weight_range = Some((lo, hi))` each
/// edge weight is drawn uniformly from `[lo, hi]` instead of being 1.
pub fn generate_weighted(
    kind: GraphKind,
    seed: u64,
    weight_range: Option<(f64, f64)>,
) -> Result<Graph> {
    if let Some((lo, hi)) = weight_range {
        if !(lo.is_finite() && hi.is_finite()) || lo <= 0.0 || hi < lo {
            return Err(Error::InvalidParam(format!(
                "weight range [{lo}, {hi}] must satisfy 0 < lo <= hi"
            )));
        }
    }
    validate_params(kind)?;

    let attempts = if kind.is_random() { CONNECT_RETRIES } else { 1 };
    for attempt in 0..attempts {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(attempt as u64));
        let edges = topology(kind, &mut rng);
        let n = vertex_count(kind);
        let weighted: Vec<(usize, usize, f64)> = match weight_range {
            None => edges.into_iter().map(|(u, v)| (u, v, 1.0)).collect(),
            Some((lo, hi)) => edges
                .into_iter()
                .map(|(u, v)| (u, v, rng.random_range(lo..=hi)))
                .collect(),
        };
        let g = Graph::from_edges(n, weighted)?;
        if g.is_connected() {
            return Ok(g);
        }
        if !kind.is_random() {
            // Deterministic families are connected by construction.
            return Err(Error::Disconnected);
        }
    }
    Err(Error::RetryBudgetExhausted(CONNECT_RETRIES))
}

fn vertex_count(kind: GraphKind) -> usize {
    match kind {
        GraphKind::Path { n }
        | GraphKind::Cycle { n }
        | GraphKind::Complete { n }
        | GraphKind::ErdosRenyi { n, .. }
        | GraphKind::Geometric { n, .. } => n,
        GraphKind::Grid { rows, cols } => rows * cols,
        GraphKind::Star { leaves } => leaves + 1,
    }
}

fn validate_params(kind: GraphKind) -> Result<()> {
    let bad = |msg: String| Err(Error::InvalidParam(msg));
    match kind {
        GraphKind::Path { n } | GraphKind::Complete { n } => {
            if n < 2 {
                return bad(format!("need n >= 2, got {n}"));
            }
        }
        GraphKind::Cycle { n } => {
            if n < 3 {
                return bad(format!("cycle needs n >= 3, got {n}"));
            }
        }
        GraphKind::Grid { rows, cols } => {
            if rows == 0 || cols == 0 || rows * cols < 2 {
                return bad(format!("grid {rows}x{cols} is too small"));
            }
        }
        GraphKind::Star { leaves } => {
            if leaves < 1 {
                return bad("star needs at least one leaf".into());
            }
        }
        GraphKind::ErdosRenyi { n, p } => {
            if n < 2 {
                return bad(format!("need n >= 2, got {n}"));
            }
            if !(p > 0.0 && p <= 1.0) {
                return bad(format!("edge probability {p} must be in (0, 1]"));
            }
        }
        GraphKind::Geometric { n, radius } => {
            if n < 2 {
                return bad(format!("need n >= 2, got {n}"));
            }
            if radius <= 0.0 || !radius.is_finite() || radius.is_nan() {
                return bad(format!("connection radius {radius} must be positive"));
            }
        }
    }
    Ok(())
}

fn topology(kind: GraphKind, rng: &mut ChaCha8Rng) -> Vec<(usize, usize)> {
    match kind {
        GraphKind::Path { n } => (0..n - 1).map(|i| (i, i + 1)).collect(),
        GraphKind::Cycle { n } => (0..n).map(|i| (i, (i + 1) % n)).collect(),
        GraphKind::Grid { rows, cols } => {
            let mut e = Vec::new();
            for r in 0..rows {
                for c in 0..cols {
                    let id = r * cols + c;
                    if c + 1 < cols {
                        e.push((id, id + 1));
                    }
                    if r + 1 < rows {
                        e.push((id, id + cols));
                    }
                }
            }
            e
        }
        GraphKind::Complete { n } => {
            let mut e = Vec::new();
            for i in 0..n {
                for j in i + 1..n {
                    e.push((i, j));
                }
            }
            e
        }
        GraphKind::Star { leaves } => (1..=leaves).map(|i| (0, i)).collect(),
        GraphKind::ErdosRenyi { n, p } => {
            let mut e = Vec::new();
            for i in 0..n {
                for j in i + 1..n {
                    if rng.random::<f64>() < p {
                        e.push((i, j));
                    }
                }
            }
            e
        }
        GraphKind::Geometric { n, radius } => {
            let pts: Vec<(f64, f64)> = (0..n)
                .map(|_| (rng.random::<f64>(), rng.random::<f64>()))
                .collect();
            let r2 = radius * radius;
            let mut e = Vec::new();
            for i in 0..n {
                for j in i + 1..n {
                    let dx = pts[i].0 - pts[j].0;
                    let dy = pts[i].1 - pts[j].1;
                    if dx * dx + dy * dy <= r2 {
                        e.push((i, j));
                    }
                }
            }
            e
        }
    }
}
