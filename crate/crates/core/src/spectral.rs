//! Variation operators built from a spectral response on the Laplacian
//! eigenbasis.
//!
//! For a response `f` that is positive on every graph frequency, the operator
//! `F = U diag(f(λ)) Uᵀ` is symmetric positive definite. Its SVD is therefore
//! available from the eigendecomposition directly: `U_F = V_F = U` (columns
//! reordered so the singular values descend). The design problem works with
//!
//! ```text
//! A = Σ_F⁻¹ V_Fᵀ,    Sᵀ (FᵀF)⁻¹ S = (AS)ᵀ (AS)
//! ```
//!
//! so `Sᵀ(FᵀF)⁻¹S` is invertible exactly when `AS` has full column rank.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{dims, Error, Result};
use crate::graph::Spectrum;

/// Scalar response `λ ↦ f(λ)` applied to graph frequencies.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SpectralResponse {
    /// `f(λ) = slope·λ + offset`.
    Affine { slope: f64, offset: f64 },
}

impl SpectralResponse {
    pub fn affine(slope: f64, offset: f64) -> Self {
        SpectralResponse::Affine { slope, offset }
    }

    /// `f(λ) = λ + 0.1`, the response used in the sensor-graph experiments.
    pub fn shifted_identity() -> Self {
        Self::affine(1.0, 0.1)
    }

    pub fn eval(&self, lambda: f64) -> f64 {
        match *self {
            SpectralResponse::Affine { slope, offset } => slope * lambda + offset,
        }
    }
}

impl Default for SpectralResponse {
    fn default() -> Self {
        Self::shifted_identity()
    }
}

/// The variation operator `F`, its SVD factors and the derived matrix `A`.
#[derive(Debug, Clone)]
pub struct VariationOperator {
    pub f: DMatrix<f64>,
    pub u_f: DMatrix<f64>,
    /// Singular values of `F`, descending.
    pub sigma_f: DVector<f64>,
    pub v_f: DMatrix<f64>,
    pub a: DMatrix<f64>,
}

impl VariationOperator {
    pub fn dim(&self) -> usize {
        self.f.nrows()
    }

    /// `FᵀF`, assembled from the factors so it is exactly symmetric.
    pub fn gram(&self) -> DMatrix<f64> {
        let sq = self.sigma_f.map(|s| s * s);
        scale_columns(&self.v_f, &sq) * self.v_f.transpose()
    }
}

fn scale_columns(m: &DMatrix<f64>, d: &DVector<f64>) -> DMatrix<f64> {
    let mut out = m.clone();
    for (mut col, &s) in out.column_iter_mut().zip(d.iter()) {
        col *= s;
    }
    out
}

pub fn build_variation_operator(
    spec: &Spectrum,
    resp: SpectralResponse,
) -> Result<VariationOperator> {
    let n = spec.len();
    let values: Vec<f64> = spec.eigenvalues.iter().map(|&l| resp.eval(l)).collect();
    for (&eigenvalue, &value) in spec.eigenvalues.iter().zip(&values) {
        if !(value > 0.0 && value.is_finite()) {
            return Err(Error::NonPositiveResponse { eigenvalue, value });
        }
    }

    let u = &spec.eigenvectors;
    let f = scale_columns(u, &DVector::from_vec(values.clone())) * u.transpose();

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| values[b].total_cmp(&values[a]).then(a.cmp(&b)));
    let sigma_f = DVector::from_iterator(n, order.iter().map(|&i| values[i]));
    let mut v_f = DMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        v_f.set_column(dst, &u.column(src));
    }
    let mut a = v_f.transpose();
    for (mut row, &s) in a.row_iter_mut().zip(sigma_f.iter()) {
        row /= s;
    }

    Ok(VariationOperator {
        f,
        u_f: v_f.clone(),
        sigma_f,
        v_f,
        a,
    })
}

/// `A·S` for an `n × K` operator `S` with `K < n`.
pub fn apply_a(vo: &VariationOperator, s: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    let n = vo.dim();
    if s.nrows() != n || s.ncols() >= n {
        return Err(Error::DimensionMismatch {
            op: "apply_a",
            expected: format!("{n}xK with K < {n}"),
            got: dims(s.nrows(), s.ncols()),
        });
    }
    Ok(&vo.a * s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_random_sensor_graph, eigendecompose, laplacian, laplacian_spectrum};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_matrix(rows: usize, cols: usize, seed: u64) -> DMatrix<f64> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        DMatrix::from_fn(rows, cols, |_, _| rng.random_range(-1.0..1.0))
    }

    fn sensor_operator(n: usize, seed: u64) -> VariationOperator {
        let g = build_random_sensor_graph(n, 4.min(n - 1), seed).unwrap();
        let spec = laplacian_spectrum(&g).unwrap();
        build_variation_operator(&spec, SpectralResponse::shifted_identity()).unwrap()
    }

    #[test]
    fn p2_shifted_response() {
        let l = DMatrix::from_row_slice(2, 2, &[1.0, -1.0, -1.0, 1.0]);
        let spec = eigendecompose(&l).unwrap();
        let vo = build_variation_operator(&spec, SpectralResponse::shifted_identity()).unwrap();
        assert!((vo.sigma_f[0] - 2.1).abs() < 1e-12);
        assert!((vo.sigma_f[1] - 0.1).abs() < 1e-12);
        let fspec = eigendecompose(&vo.f).unwrap();
        assert!((fspec.eigenvalues[0] - 0.1).abs() < 1e-12);
        assert!((fspec.eigenvalues[1] - 2.1).abs() < 1e-12);
    }

    #[test]
    fn constant_response_is_identity() {
        let g = build_random_sensor_graph(12, 3, 1).unwrap();
        let spec = laplacian_spectrum(&g).unwrap();
        let vo = build_variation_operator(&spec, SpectralResponse::affine(0.0, 1.0)).unwrap();
        let id = DMatrix::<f64>::identity(12, 12);
        assert!((&vo.f - &id).amax() < 1e-12);
        // A = V_Fᵀ is orthogonal, equal to I only up to the eigenbasis; AᵀA = I.
        assert!((vo.a.transpose() * &vo.a - &id).amax() < 1e-12);
    }

    #[test]
    fn non_positive_response_rejected() {
        let l = DMatrix::from_row_slice(2, 2, &[1.0, -1.0, -1.0, 1.0]);
        let spec = eigendecompose(&l).unwrap();
        let err = build_variation_operator(&spec, SpectralResponse::affine(1.0, 0.0));
        assert!(matches!(err, Err(Error::NonPositiveResponse { .. })));
        let err = build_variation_operator(&spec, SpectralResponse::affine(-1.0, 1.0));
        assert!(matches!(err, Err(Error::NonPositiveResponse { .. })));
    }

    #[test]
    fn factor_invariants() {
        let vo = sensor_operator(32, 4);
        let smax = vo.sigma_f[0];
        assert!(vo.sigma_f.as_slice().windows(2).all(|w| w[0] >= w[1]));
        assert!(vo.sigma_f[31] > 1e-12 * smax);
        let recon = &vo.u_f * DMatrix::from_diagonal(&vo.sigma_f) * vo.v_f.transpose();
        assert!((recon - &vo.f).amax() <= 1e-8 * smax);
        assert!((&vo.f - vo.f.transpose()).amax() <= 1e-10 * smax);
    }

    #[test]
    fn gram_identity_against_dense_inverse() {
        let vo = sensor_operator(16, 8);
        let gram_inv = (vo.f.transpose() * &vo.f).try_inverse().unwrap();
        for seed in 0..5 {
            let s = random_matrix(16, 5, seed);
            let direct = s.transpose() * &gram_inv * &s;
            let as_ = &vo.a * &s;
            let via_a = as_.transpose() * &as_;
            assert!((via_a - &direct).amax() <= 1e-6 * direct.amax());
        }
    }

    #[test]
    fn parseval_smoothness() {
        let g = build_random_sensor_graph(20, 4, 3).unwrap();
        let spec = eigendecompose(&laplacian(&g)).unwrap();
        let resp = SpectralResponse::shifted_identity();
        let vo = build_variation_operator(&spec, resp).unwrap();
        let x = random_matrix(20, 1, 77).column(0).clone_owned();
        let lhs = (&vo.f * &x).norm_squared();
        let rhs: f64 = (0..20)
            .map(|i| {
                let coef = spec.eigenvectors.column(i).dot(&x);
                (resp.eval(spec.eigenvalues[i]) * coef).powi(2)
            })
            .sum();
        assert!((lhs - rhs).abs() <= 1e-8 * rhs);
    }

    #[test]
    fn apply_a_matches_naive_product() {
        let vo = sensor_operator(10, 2);
        let s = random_matrix(10, 3, 5);
        let got = apply_a(&vo, &s).unwrap();
        for i in 0..10 {
            for j in 0..3 {
                let mut acc = 0.0;
                for k in 0..10 {
                    acc += vo.a[(i, k)] * s[(k, j)];
                }
                assert!((got[(i, j)] - acc).abs() <= 1e-10);
            }
        }
        assert_eq!(apply_a(&vo, &DMatrix::zeros(10, 3)).unwrap(), DMatrix::zeros(10, 3));
    }

    #[test]
    fn apply_a_identity_and_shape_errors() {
        let spec = Spectrum {
            eigenvalues: DVector::from_vec(vec![1.0, 1.0, 1.0]),
            eigenvectors: DMatrix::identity(3, 3),
        };
        let vo = build_variation_operator(&spec, SpectralResponse::affine(1.0, 0.0)).unwrap();
        let s = random_matrix(3, 2, 1);
        assert_eq!(apply_a(&vo, &s).unwrap(), s);
        assert!(apply_a(&vo, &DMatrix::zeros(4, 2)).is_err());
        assert!(apply_a(&vo, &DMatrix::zeros(3, 3)).is_err());
    }

    #[test]
    fn rank_equivalence() {
        let vo = sensor_operator(12, 6);
        let gram_inv = (vo.f.transpose() * &vo.f).try_inverse().unwrap();
        let full = random_matrix(12, 4, 9);
        let mut deficient = full.clone();
        let c0 = deficient.column(0).clone_owned();
        deficient.set_column(3, &(c0 * 2.0));
        for (s, expect_full) in [(full, true), (deficient, false)] {
            let as_ = &vo.a * &s;
            let sv = as_.clone().svd(false, false).singular_values;
            let smin_as = sv.min() / sv.max();
            let m = s.transpose() * &gram_inv * &s;
            let ev = m.clone().symmetric_eigen().eigenvalues;
            let emin = ev.abs().min() / ev.abs().max();
            assert_eq!(smin_as > 1e-10, expect_full);
            assert_eq!(emin > 1e-10, expect_full);
        }
    }
}
