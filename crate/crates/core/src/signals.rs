//! Synthetic graph signals: Gaussian Markov random fields and piecewise-linear
//! (anchored harmonic) signals.

use nalgebra::{Cholesky, DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, Spectrum};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SignalModel {
    /// Spectral power `1/(λ + eta)`.
    Gmrf { eta: f64 },
    /// Harmonic interpolation from a random fraction `density` of vertices.
    Pwl { density: f64 },
}

impl SignalModel {
    pub fn validate(&self) -> Result<()> {
        match *self {
            SignalModel::Gmrf { eta } if !(eta > 0.0 && eta.is_finite()) => Err(
                Error::InvalidConfig(format!("GMRF eta must be positive, got {eta}")),
            ),
            SignalModel::Pwl { density } if !(density > 0.0 && density <= 1.0) => Err(
                Error::InvalidConfig(format!("PWL density must lie in (0, 1], got {density}")),
            ),
            _ => Ok(()),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            SignalModel::Gmrf { .. } => "gmrf",
            SignalModel::Pwl { .. } => "pwl",
        }
    }
}

/// A signal model together with the seed of its draw.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SignalModelSpec {
    pub kind: SignalModel,
    pub seed: u64,
}

impl SignalModelSpec {
    pub fn generate(&self, g: &Graph, l: &DMatrix<f64>, spec: &Spectrum) -> Result<DVector<f64>> {
        match self.kind {
            SignalModel::Gmrf { eta } => gen_gmrf(spec, eta, self.seed),
            SignalModel::Pwl { density } => gen_pwl(g, l, density, self.seed),
        }
    }
}

/// `x = U g` with `g_i = w_i / √(λ_i + eta)`, `w ~ N(0, I)`.
pub fn gen_gmrf(spec: &Spectrum, eta: f64, seed: u64) -> Result<DVector<f64>> {
    SignalModel::Gmrf { eta }.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let coeffs = DVector::from_iterator(
        spec.len(),
        spec.eigenvalues.iter().map(|&lambda| {
            let w: f64 = StandardNormal.sample(&mut rng);
            // guard tiny negative round-off on λ₁ = 0
            w / (lambda.max(0.0) + eta).sqrt()
        }),
    );
    Ok(&spec.eigenvectors * coeffs)
}

/// Anchored harmonic signal.
///
/// `m = max(1, round(density·n))` anchors are drawn without replacement and
/// given values uniform on `[-1, 1]` (drawn in anchor order); every other
/// vertex solves `L_UU x_U = −L_UA x_A`.
pub fn gen_pwl(g: &Graph, l: &DMatrix<f64>, density: f64, seed: u64) -> Result<DVector<f64>> {
    SignalModel::Pwl { density }.validate()?;
    g.ensure_connected()?;
    let n = g.num_vertices();
    if l.nrows() != n || l.ncols() != n {
        return Err(Error::DimensionMismatch {
            op: "gen_pwl",
            expected: format!("{n}x{n} Laplacian"),
            got: format!("{}x{}", l.nrows(), l.ncols()),
        });
    }
    let m = ((density * n as f64).round() as usize).clamp(1, n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let anchors = rand::seq::index::sample(&mut rng, n, m).into_vec();

    let mut x = DVector::zeros(n);
    let mut is_anchor = vec![false; n];
    for &a in &anchors {
        x[a] = rng.random_range(-1.0..=1.0);
        is_anchor[a] = true;
    }
    if m == n {
        return Ok(x);
    }

    let free: Vec<usize> = (0..n).filter(|&i| !is_anchor[i]).collect();
    let l_uu = DMatrix::from_fn(free.len(), free.len(), |i, j| l[(free[i], free[j])]);
    let rhs = DVector::from_fn(free.len(), |i, _| {
        -anchors.iter().map(|&a| l[(free[i], a)] * x[a]).sum::<f64>()
    });
    let chol = Cholesky::new(l_uu)
        .ok_or_else(|| Error::InvalidGraph("interior Laplacian block is singular".into()))?;
    let xu = chol.solve(&rhs);
    for (i, &v) in free.iter().enumerate() {
        x[v] = xu[i];
    }
    Ok(x)
}

/// Indices of the anchors [`gen_pwl`] would draw for these parameters.
pub fn pwl_anchors(n: usize, density: f64, seed: u64) -> Vec<usize> {
    let m = ((density * n as f64).round() as usize).clamp(1, n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rand::seq::index::sample(&mut rng, n, m).into_vec()
}
