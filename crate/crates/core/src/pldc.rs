//! Sampling-operator design by proximal linearized DC iterations.
//!
//! The design maximizes `‖AS‖_*` over the Frobenius ball `‖S‖_F ≤ ε`, written
//! as the DC program `min ι_B(S) − ‖AS‖_*`. Each iteration linearizes the
//! concave part with a subgradient and takes a projected step:
//!
//! ```text
//! AS⁽ᵗ⁾ = [U_r | U_o] Σ [V_r | V_o]ᵀ
//! Z⁽ᵗ⁾   = Aᵀ (U_r V_rᵀ + U_o T V_oᵀ)          T ∈ {O, I}
//! S⁽ᵗ⁺¹⁾ = P_B(S⁽ᵗ⁾ + γ Z⁽ᵗ⁾)
//! ```
//!
//! The iterates stay in the ball, the objective `‖AS⁽ᵗ⁾‖_*` never decreases,
//! and the loop stops once `‖S⁽ᵗ⁺¹⁾ − S⁽ᵗ⁾‖_F / ‖S⁽ᵗ⁾‖_F ≤ stop_tol`.

use std::fmt;
use std::str::FromStr;

use nalgebra::{DMatrix, DVector};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{dims, Error, Result};

/// Choice of the free block `T` in the nuclear-norm subgradient.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TMode {
    /// `T = O`: keep only the leading rank-`r` part.
    #[default]
    Zero,
    /// `T = I`: the subgradient becomes `U Vᵀ`.
    Identity,
}

impl fmt::Display for TMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TMode::Zero => "zero",
            TMode::Identity => "identity",
        })
    }
}

impl FromStr for TMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "zero" | "o" | "O" => Ok(TMode::Zero),
            "identity" | "i" | "I" => Ok(TMode::Identity),
            other => Err(Error::InvalidConfig(format!(
                "unknown t-mode `{other}` (expected zero or identity)"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DesignConfig {
    pub epsilon: f64,
    pub gamma: f64,
    pub t_mode: TMode,
    pub stop_tol: f64,
    pub max_iter: usize,
    pub rank_tol: f64,
    pub seed: u64,
}

pub const DEFAULT_STOP_TOL: f64 = 1e-5;
pub const DEFAULT_MAX_ITER: usize = 10_000;
pub const DEFAULT_RANK_TOL: f64 = 1e-10;

impl DesignConfig {
    /// Experimental defaults for an `n`-vertex graph and `k` samples:
    /// `ε = √(nk)`, `γ = 1`, `T = O`, relative step tolerance `1e-5`.
    pub fn defaults_for(n: usize, k: usize) -> Self {
        Self {
            epsilon: ((n * k) as f64).sqrt(),
            gamma: 1.0,
            t_mode: TMode::Zero,
            stop_tol: DEFAULT_STOP_TOL,
            max_iter: DEFAULT_MAX_ITER,
            rank_tol: DEFAULT_RANK_TOL,
            seed: 0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidConfig(msg));
        if !(self.epsilon > 0.0 && self.epsilon.is_finite()) {
            return bad(format!("epsilon must be positive, got {}", self.epsilon));
        }
        if !(self.gamma > 0.0 && self.gamma.is_finite()) {
            return bad(format!("gamma must be positive, got {}", self.gamma));
        }
        if !(self.stop_tol > 0.0 && self.stop_tol < 1.0) {
            return bad(format!("stop_tol must lie in (0, 1), got {}", self.stop_tol));
        }
        if self.max_iter == 0 {
            return bad("max_iter must be positive".into());
        }
        if !(self.rank_tol > 0.0 && self.rank_tol <= 1e-4) {
            return bad(format!("rank_tol must lie in (0, 1e-4], got {}", self.rank_tol));
        }
        Ok(())
    }
}

/// One PLDC iteration `t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceRecord {
    pub iter: usize,
    /// `‖AS⁽ᵗ⁾‖_*`
    pub nuclear_norm: f64,
    /// `‖S⁽ᵗ⁺¹⁾ − S⁽ᵗ⁾‖_F`
    pub step_norm: f64,
    /// `‖S⁽ᵗ⁾‖_F`
    pub s_norm: f64,
}

#[derive(Debug, Clone)]
pub struct SamplingDesign {
    pub s: DMatrix<f64>,
    pub iterations: usize,
    pub trace: Vec<TraceRecord>,
    pub converged: bool,
}

impl SamplingDesign {
    /// Trace as CSV with columns `iter,nuclear_norm,step_norm`.
    pub fn trace_csv(&self) -> String {
        let mut out = String::from("iter,nuclear_norm,step_norm\n");
        for r in &self.trace {
            out.push_str(&format!("{},{},{}\n", r.iter, r.nuclear_norm, r.step_norm));
        }
        out
    }
}

/// Metric projection onto `{X : ‖X‖_F ≤ ε}`.
pub fn project_frobenius_ball(x: &DMatrix<f64>, epsilon: f64) -> DMatrix<f64> {
    let norm = x.norm();
    if norm <= epsilon {
        return x.clone();
    }
    let mut scale = epsilon / norm;
    let mut y = x * scale;
    // rounding in ε/‖X‖ can land one ulp outside the ball
    while y.norm() > epsilon {
        scale *= 1.0 - f64::EPSILON;
        y = x * scale;
    }
    y
}

/// Thin SVD with singular values sorted descending.
pub(crate) struct SortedSvd {
    pub u: DMatrix<f64>,
    pub sigma: DVector<f64>,
    pub v: DMatrix<f64>,
}

pub(crate) fn sorted_svd(m: &DMatrix<f64>) -> SortedSvd {
    let svd = m.clone().svd(true, true);
    let u = svd.u.expect("u requested");
    let v_t = svd.v_t.expect("v_t requested");
    let p = svd.singular_values.len();
    let mut order: Vec<usize> = (0..p).collect();
    order.sort_by(|&a, &b| {
        svd.singular_values[b]
            .total_cmp(&svd.singular_values[a])
            .then(a.cmp(&b))
    });
    let sigma = DVector::from_iterator(p, order.iter().map(|&i| svd.singular_values[i]));
    let mut su = DMatrix::zeros(u.nrows(), p);
    let mut sv = DMatrix::zeros(v_t.ncols(), p);
    for (dst, &src) in order.iter().enumerate() {
        su.set_column(dst, &u.column(src));
        sv.set_column(dst, &v_t.row(src).transpose());
    }
    SortedSvd { u: su, sigma, v: sv }
}

fn count_above(sigma: &DVector<f64>, rank_tol: f64) -> usize {
    let Some(&top) = sigma.iter().next() else {
        return 0;
    };
    if top <= 0.0 {
        return 0;
    }
    sigma.iter().filter(|&&s| s > rank_tol * top).count()
}

/// Number of singular values above `rank_tol · σ₁`.
pub fn rank_of(m: &DMatrix<f64>, rank_tol: f64) -> usize {
    if m.is_empty() {
        return 0;
    }
    count_above(&sorted_svd(m).sigma, rank_tol)
}

/// Sum of singular values.
pub fn nuclear_norm(m: &DMatrix<f64>) -> f64 {
    if m.is_empty() {
        return 0.0;
    }
    m.clone().singular_values().sum()
}

fn subgradient_from_svd(svd: &SortedSvd, t_mode: TMode, rank_tol: f64) -> Result<DMatrix<f64>> {
    let r = count_above(&svd.sigma, rank_tol);
    if r == 0 {
        return Err(Error::ZeroSubgradient);
    }
    let cols = match t_mode {
        TMode::Zero => r,
        TMode::Identity => svd.sigma.len(),
    };
    Ok(svd.u.columns(0, cols) * svd.v.columns(0, cols).transpose())
}

/// An element of `∂‖·‖_*(AS)`: `U_r V_rᵀ` for [`TMode::Zero`], `U Vᵀ` for
/// [`TMode::Identity`]. The rank `r` counts singular values above
/// `rank_tol · σ₁`.
pub fn nuclear_subgradient(as_: &DMatrix<f64>, t_mode: TMode, rank_tol: f64) -> Result<DMatrix<f64>> {
    if as_.is_empty() {
        return Err(Error::ZeroSubgradient);
    }
    subgradient_from_svd(&sorted_svd(as_), t_mode, rank_tol)
}

/// Standard Gaussian `n × k` matrix, entries drawn in column-major order.
pub fn gaussian_matrix(n: usize, k: usize, seed: u64) -> DMatrix<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    DMatrix::from_fn(n, k, |_, _| StandardNormal.sample(&mut rng))
}

/// Runs the PLDC iteration from a Gaussian start seeded by `cfg.seed`.
pub fn design_sampling_operator(a: &DMatrix<f64>, k: usize, cfg: &DesignConfig) -> Result<SamplingDesign> {
    cfg.validate()?;
    let n = a.nrows();
    if !a.is_square() || k == 0 || k >= n {
        return Err(Error::DimensionMismatch {
            op: "design_sampling_operator",
            expected: format!("square A and 0 < K < {n}"),
            got: format!("A {}, K = {k}", dims(a.nrows(), a.ncols())),
        });
    }
    let s0 = project_frobenius_ball(&gaussian_matrix(n, k, cfg.seed), cfg.epsilon);
    design_from(a, s0, cfg)
}

/// PLDC iteration from an explicit (feasible or not) starting point.
pub fn design_from(a: &DMatrix<f64>, s0: DMatrix<f64>, cfg: &DesignConfig) -> Result<SamplingDesign> {
    cfg.validate()?;
    if s0.nrows() != a.ncols() {
        return Err(Error::DimensionMismatch {
            op: "design_from",
            expected: format!("{} rows", a.ncols()),
            got: dims(s0.nrows(), s0.ncols()),
        });
    }
    let a_t = a.transpose();
    let mut s = project_frobenius_ball(&s0, cfg.epsilon);
    let mut trace = Vec::new();
    let mut converged = false;

    for iter in 0..cfg.max_iter {
        let svd = sorted_svd(&(a * &s));
        let g = subgradient_from_svd(&svd, cfg.t_mode, cfg.rank_tol)?;
        let z = &a_t * g;
        let next = project_frobenius_ball(&(&s + z * cfg.gamma), cfg.epsilon);

        let s_norm = s.norm();
        let step_norm = (&next - &s).norm();
        trace.push(TraceRecord {
            iter,
            nuclear_norm: svd.sigma.sum(),
            step_norm,
            s_norm,
        });
        s = next;
        if step_norm <= cfg.stop_tol * s_norm {
            converged = true;
            break;
        }
    }

    Ok(SamplingDesign {
        s,
        iterations: trace.len(),
        trace,
        converged,
    })
}
