//! Weighted undirected graphs, their combinatorial Laplacian and its full
//! eigendecomposition.
//!
//! Graphs are small enough (a few thousand vertices at most) that every
//! matrix here is dense.

use std::collections::{BTreeMap, VecDeque};

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{dims, Error, Result};

/// Number of position resamplings tried before a sensor graph is declared
/// pathological.
pub const MAX_SENSOR_ATTEMPTS: u32 = 50;

/// One undirected edge `{u, v}` with a strictly positive weight.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub weight: f64,
}

/// A weighted undirected graph without self loops or parallel edges.
///
/// Edges are stored with `u < v`, sorted by `(u, v)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    num_vertices: usize,
    edges: Vec<Edge>,
    coords: Option<Vec<[f64; 2]>>,
}

impl Graph {
    /// Builds a graph, normalizing every edge to `u < v` and checking the
    /// structural invariants. Connectivity is *not* required here; see
    /// [`Graph::is_connected`].
    pub fn new(
        num_vertices: usize,
        edges: impl IntoIterator<Item = Edge>,
        coords: Option<Vec<[f64; 2]>>,
    ) -> Result<Self> {
        if num_vertices == 0 {
            return Err(Error::InvalidGraph("graph needs at least one vertex".into()));
        }
        let mut seen = BTreeMap::new();
        for e in edges {
            if e.u >= num_vertices || e.v >= num_vertices {
                return Err(Error::InvalidGraph(format!(
                    "edge ({}, {}) out of range for {num_vertices} vertices",
                    e.u, e.v
                )));
            }
            if e.u == e.v {
                return Err(Error::InvalidGraph(format!("self loop at vertex {}", e.u)));
            }
            if !(e.weight.is_finite() && e.weight > 0.0) {
                return Err(Error::InvalidGraph(format!(
                    "edge ({}, {}) has non-positive weight {}",
                    e.u, e.v, e.weight
                )));
            }
            let key = (e.u.min(e.v), e.u.max(e.v));
            if seen.insert(key, e.weight).is_some() {
                return Err(Error::InvalidGraph(format!(
                    "duplicate edge ({}, {})",
                    key.0, key.1
                )));
            }
        }
        if let Some(c) = &coords {
            if c.len() != num_vertices {
                return Err(Error::InvalidGraph(format!(
                    "{} coordinates for {num_vertices} vertices",
                    c.len()
                )));
            }
        }
        let edges = seen
            .into_iter()
            .map(|((u, v), weight)| Edge { u, v, weight })
            .collect();
        Ok(Self {
            num_vertices,
            edges,
            coords,
        })
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn coords(&self) -> Option<&[[f64; 2]]> {
        self.coords.as_deref()
    }

    pub fn is_connected(&self) -> bool {
        let mut adj = vec![Vec::new(); self.num_vertices];
        for e in &self.edges {
            adj[e.u].push(e.v);
            adj[e.v].push(e.u);
        }
        let mut visited = vec![false; self.num_vertices];
        let mut queue = VecDeque::from([0]);
        visited[0] = true;
        let mut count = 1;
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                if !visited[v] {
                    visited[v] = true;
                    count += 1;
                    queue.push_back(v);
                }
            }
        }
        count == self.num_vertices
    }

    pub fn ensure_connected(&self) -> Result<()> {
        if self.is_connected() {
            Ok(())
        } else {
            Err(Error::InvalidGraph("graph is not connected".into()))
        }
    }
}

/// Random geometric sensor graph.
///
/// `n` points are drawn uniformly in the unit square, each point is linked to
/// its `k` nearest neighbors (ties broken by index), and the relation is
/// symmetrized. Weights follow a Gaussian kernel `exp(-d² / 2σ²)` where `σ` is
/// the mean of all `n·k` nearest-neighbor distances. A disconnected draw is
/// retried with seed `seed + attempt`.
pub fn build_random_sensor_graph(n: usize, k: usize, seed: u64) -> Result<Graph> {
    if n < 2 || k == 0 || k >= n {
        return Err(Error::InvalidConfig(format!(
            "sensor graph needs n >= 2 and 0 < k < n (got n={n}, k={k})"
        )));
    }
    for attempt in 0..MAX_SENSOR_ATTEMPTS {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(u64::from(attempt)));
        let coords: Vec<[f64; 2]> = (0..n)
            .map(|_| [rng.random::<f64>(), rng.random::<f64>()])
            .collect();
        let graph = knn_graph(&coords, k)?;
        if graph.is_connected() {
            return Ok(graph);
        }
    }
    Err(Error::Disconnected {
        n,
        k,
        attempts: MAX_SENSOR_ATTEMPTS,
    })
}

fn knn_graph(coords: &[[f64; 2]], k: usize) -> Result<Graph> {
    let n = coords.len();
    let dist = |a: usize, b: usize| {
        let dx = coords[a][0] - coords[b][0];
        let dy = coords[a][1] - coords[b][1];
        dx.hypot(dy)
    };

    let mut pairs: BTreeMap<(usize, usize), f64> = BTreeMap::new();
    let mut dist_sum = 0.0;
    for u in 0..n {
        let mut others: Vec<(f64, usize)> =
            (0..n).filter(|&v| v != u).map(|v| (dist(u, v), v)).collect();
        others.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
        for &(d, v) in &others[..k] {
            dist_sum += d;
            pairs.insert((u.min(v), u.max(v)), d);
        }
    }
    let sigma = dist_sum / (n * k) as f64;
    let denom = 2.0 * sigma * sigma;

    let edges = pairs.into_iter().map(|((u, v), d)| Edge {
        u,
        v,
        // Coincident points would give sigma = 0; keep such edges at unit weight.
        weight: if denom > 0.0 { (-d * d / denom).exp() } else { 1.0 },
    });
    Graph::new(n, edges, Some(coords.to_vec()))
}

/// Combinatorial Laplacian `L = D - W`.
pub fn laplacian(g: &Graph) -> DMatrix<f64> {
    let n = g.num_vertices();
    let mut l = DMatrix::zeros(n, n);
    for e in g.edges() {
        l[(e.u, e.v)] -= e.weight;
        l[(e.v, e.u)] -= e.weight;
        l[(e.u, e.u)] += e.weight;
        l[(e.v, e.v)] += e.weight;
    }
    l
}

/// Eigenvalues in ascending order with the matching orthonormal eigenvectors
/// as columns.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub eigenvalues: DVector<f64>,
    pub eigenvectors: DMatrix<f64>,
}

impl Spectrum {
    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    pub fn max_eigenvalue(&self) -> f64 {
        self.eigenvalues.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }
}

/// Relative asymmetry accepted by [`eigendecompose`].
const SYMMETRY_TOL: f64 = 1e-12;

/// Full symmetric eigendecomposition.
///
/// Eigenvalues are sorted ascending. Each eigenvector is signed so that its
/// largest-magnitude entry is positive (the lowest index wins a tie), which
/// makes the result reproducible.
pub fn eigendecompose(l: &DMatrix<f64>) -> Result<Spectrum> {
    if !l.is_square() {
        return Err(Error::DimensionMismatch {
            op: "eigendecompose",
            expected: "square matrix".into(),
            got: dims(l.nrows(), l.ncols()),
        });
    }
    let scale = l.amax().max(f64::MIN_POSITIVE);
    let asymmetry = (l - l.transpose()).amax();
    if asymmetry > SYMMETRY_TOL * scale {
        return Err(Error::NotSymmetric { asymmetry });
    }

    let eig = SymmetricEigen::new(l.clone());
    let n = l.nrows();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]).then(a.cmp(&b)));

    let eigenvalues = DVector::from_iterator(n, order.iter().map(|&i| eig.eigenvalues[i]));
    let mut eigenvectors = DMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        let mut col = eig.eigenvectors.column(src).clone_owned();
        let mut pivot = 0;
        for i in 1..n {
            if col[i].abs() > col[pivot].abs() {
                pivot = i;
            }
        }
        if col[pivot] < 0.0 {
            col.neg_mut();
        }
        eigenvectors.set_column(dst, &col);
    }
    Ok(Spectrum {
        eigenvalues,
        eigenvectors,
    })
}

/// Laplacian spectrum of `g`.
pub fn laplacian_spectrum(g: &Graph) -> Result<Spectrum> {
    eigendecompose(&laplacian(g))
}
