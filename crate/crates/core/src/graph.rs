//! Undirected, positively weighted simple graphs: validation, edge-list I/O,
//! degree data, the spectral-scale constant, and hop distances.

use std::collections::VecDeque;
use std::hash::{Hash, Hasher};

use ndarray::Array2;

use crate::error::{Error, Result};
use crate::io::fmt_f64;

/// One undirected edge, stored once with `u < v`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub w: f64,
}

/// An undirected graph with strictly positive edge weights and no
/// self-loops or duplicate edges. Vertex ids are `0..n`.
///
/// The edge list is canonicalized (`u < v`, sorted) at construction, so
/// equality and hashing do not depend on input order. Instances are
/// immutable once built and safe to share across threads.
#[derive(Debug, Clone)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    neighbors: Vec<Vec<(usize, f64)>>,
    degrees: Vec<f64>,
}

/// Vertex degrees `d_i` and neighbor-averaged degrees
/// `d̄_i = Σ_j A_ij d_j / d_i`.
#[derive(Debug, Clone)]
pub struct DegreeData {
    pub degrees: Vec<f64>,
    pub neighbor_avg: Vec<f64>,
}

impl Graph {
    /// Builds a validated graph from an edge list. Edges may be given in any
    /// order and orientation; they are canonicalized internally.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, f64)>,
    {
        let mut canon: Vec<Edge> = Vec::new();
        for (u, v, w) in edges {
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            if !w.is_finite() || w <= 0.0 {
                return Err(Error::InvalidWeight { u, v, w });
            }
            let (a, b) = if u < v { (u, v) } else { (v, u) };
            canon.push(Edge { u: a, v: b, w });
        }
        if n < 2 {
            return Err(Error::TooFewVertices(n));
        }
        for e in &canon {
            if e.v >= n {
                return Err(Error::VertexOutOfRange { id: e.v, n });
            }
        }
        canon.sort_by_key(|e| (e.u, e.v));
        for pair in canon.windows(2) {
            if (pair[0].u, pair[0].v) == (pair[1].u, pair[1].v) {
                return Err(Error::DuplicateEdge(pair[0].u, pair[0].v));
            }
        }

        let mut neighbors = vec![Vec::new(); n];
        for e in &canon {
            neighbors[e.u].push((e.v, e.w));
            neighbors[e.v].push((e.u, e.w));
        }
        let degrees = neighbors
            .iter()
            .map(|nb| nb.iter().map(|&(_, w)| w).sum())
            .collect();

        Ok(Graph {
            n,
            edges: canon,
            neighbors,
            degrees,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    /// Weighted neighbor list of vertex `i`, ordered by neighbor id.
    pub fn neighbors(&self, i: usize) -> &[(usize, f64)] {
        &self.neighbors[i]
    }

    /// Weighted degrees `d_i = Σ_j A_ij`.
    pub fn degrees(&self) -> &[f64] {
        &self.degrees
    }

    /// Edge weight between `i` and `j`, zero when no edge exists.
    pub fn weight(&self, i: usize, j: usize) -> f64 {
        self.neighbors[i]
            .iter()
            .find(|&&(k, _)| k == j)
            .map_or(0.0, |&(_, w)| w)
    }

    /// Breadth-first connectivity check.
    pub fn is_connected(&self) -> bool {
        let d = self.hop_distances(0);
        d.iter().all(|&h| h != usize::MAX)
    }

    /// Degrees and neighbor-averaged degrees. Fails on zero-degree vertices,
    /// for which the average is undefined.
    pub fn degree_data(&self) -> Result<DegreeData> {
        let mut neighbor_avg = Vec::with_capacity(self.n);
        for (i, nb) in self.neighbors.iter().enumerate() {
            let d = self.degrees[i];
            if d <= 0.0 {
                return Err(Error::ZeroDegree(i));
            }
            let s: f64 = nb.iter().map(|&(j, w)| w * self.degrees[j]).sum();
            neighbor_avg.push(s / d);
        }
        Ok(DegreeData {
            degrees: self.degrees.clone(),
            neighbor_avg,
        })
    }

    /// The spectral-scale constant `ρ = sqrt(max_i 2 d_i (d_i + d̄_i))`,
    /// an upper bound on the largest Laplacian eigenvalue.
    pub fn rho(&self) -> Result<f64> {
        let dd = self.degree_data()?;
        let mut max = 0.0f64;
        for i in 0..self.n {
            let v = 2.0 * dd.degrees[i] * (dd.degrees[i] + dd.neighbor_avg[i]);
            max = max.max(v);
        }
        Ok(max.sqrt())
    }

    /// Dense adjacency matrix `A`.
    pub fn adjacency_matrix(&self) -> Array2<f64> {
        let mut a = Array2::zeros((self.n, self.n));
        for e in &self.edges {
            a[[e.u, e.v]] = e.w;
            a[[e.v, e.u]] = e.w;
        }
        a
    }

    /// Dense combinatorial Laplacian `L = D - A`.
    pub fn laplacian_matrix(&self) -> Array2<f64> {
        let mut l = Array2::zeros((self.n, self.n));
        for i in 0..self.n {
            l[[i, i]] = self.degrees[i];
        }
        for e in &self.edges {
            l[[e.u, e.v]] = -e.w;
            l[[e.v, e.u]] = -e.w;
        }
        l
    }

    /// Dense normalized Laplacian `D^{-1/2} L D^{-1/2}`. Fails on
    /// zero-degree vertices.
    pub fn normalized_laplacian_matrix(&self) -> Result<Array2<f64>> {
        let inv_sqrt = self.inv_sqrt_degrees()?;
        let mut l = Array2::zeros((self.n, self.n));
        for i in 0..self.n {
            l[[i, i]] = 1.0;
        }
        for e in &self.edges {
            let v = -e.w * inv_sqrt[e.u] * inv_sqrt[e.v];
            l[[e.u, e.v]] = v;
            l[[e.v, e.u]] = v;
        }
        Ok(l)
    }

    pub(crate) fn inv_sqrt_degrees(&self) -> Result<Vec<f64>> {
        self.degrees
            .iter()
            .enumerate()
            .map(|(i, &d)| {
                if d <= 0.0 {
                    Err(Error::ZeroDegree(i))
                } else {
                    Ok(1.0 / d.sqrt())
                }
            })
            .collect()
    }

    /// Unweighted hop distances from vertex `i` (plain breadth-first
    /// search). Unreachable vertices get `usize::MAX`.
    pub fn hop_distances(&self, i: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.n];
        dist[i] = 0;
        let mut queue = VecDeque::from([i]);
        while let Some(u) = queue.pop_front() {
            for &(v, _) in &self.neighbors[u] {
                if dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    /// Serializes to the edge-list document format accepted by
    /// [`load_graph`]. Each string in `comments` becomes a `#` header line.
    pub fn to_edge_list(&self, comments: &[&str]) -> String {
        let mut out = String::new();
        for c in comments {
            out.push_str("# ");
            out.push_str(c);
            out.push('\n');
        }
        out.push_str(&format!("n {}\n", self.n));
        for e in &self.edges {
            out.push_str(&format!("{} {} {}\n", e.u, e.v, fmt_f64(e.w)));
        }
        out
    }
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n
            && self.edges.len() == other.edges.len()
            && self
                .edges
                .iter()
                .zip(&other.edges)
                .all(|(a, b)| a.u == b.u && a.v == b.v && a.w == b.w)
    }
}

impl Eq for Graph {}

impl Hash for Graph {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.n.hash(state);
        for e in &self.edges {
            e.u.hash(state);
            e.v.hash(state);
            e.w.to_bits().hash(state);
        }
    }
}

/// Parses an edge-list document.
///
/// Lines are `u v w` with whitespace separation; `w` defaults to 1.0 when
/// omitted. `#` starts a comment (whole-line or trailing). An optional
/// header line `n <count>` fixes the vertex count; otherwise it is inferred
/// as one plus the largest id seen.
pub fn load_graph(text: &str) -> Result<Graph> {
    let mut declared_n: Option<usize> = None;
    let mut edges: Vec<(usize, usize, f64)> = Vec::new();
    let mut max_id = 0usize;

    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        let parse_err = |msg: String| Error::Parse {
            line: lineno + 1,
            msg,
        };

        if toks[0] == "n" {
            if toks.len() != 2 {
                return Err(parse_err("header must be `n <count>`".into()));
            }
            if declared_n.is_some() {
                return Err(parse_err("duplicate `n` header".into()));
            }
            let count: usize = toks[1]
                .parse()
                .map_err(|_| parse_err(format!("bad vertex count `{}`", toks[1])))?;
            declared_n = Some(count);
            continue;
        }

        if toks.len() < 2 || toks.len() > 3 {
            return Err(parse_err(format!("expected `u v [w]`, got `{line}`")));
        }
        let u: usize = toks[0]
            .parse()
            .map_err(|_| parse_err(format!("bad vertex id `{}`", toks[0])))?;
        let v: usize = toks[1]
            .parse()
            .map_err(|_| parse_err(format!("bad vertex id `{}`", toks[1])))?;
        let w: f64 = if toks.len() == 3 {
            toks[2]
                .parse()
                .map_err(|_| parse_err(format!("bad weight `{}`", toks[2])))?
        } else {
            1.0
        };
        max_id = max_id.max(u).max(v);
        edges.push((u, v, w));
    }

    let n = declared_n.unwrap_or(if edges.is_empty() { 0 } else { max_id + 1 });
    Graph::from_edges(n, edges)
}
