//! Least-squares generalized sampling under a smoothness prior.
//!
//! Given samples `c = Sᵀx`, the signal minimizing `‖Fx‖²` subject to
//! `Sᵀx = c` is
//!
//! ```text
//! x̃ = W H(Q) c,   W = Q = (FᵀF)⁻¹ S,   H(Q) = (SᵀQ)⁻¹
//! ```
//!
//! When `SᵀQ` is numerically singular the inverse is replaced by the
//! Moore–Penrose pseudo-inverse.

use nalgebra::{Cholesky, DMatrix, DVector};

use crate::error::{dims, Error, Result};
use crate::pldc::sorted_svd;
use crate::spectral::VariationOperator;

/// Default relative cutoff on the smallest singular value of `SᵀQ`.
pub const DEFAULT_INV_TOL: f64 = 1e-10;

#[derive(Debug, Clone)]
pub struct ReconstructionPipeline {
    pub s: DMatrix<f64>,
    pub q: DMatrix<f64>,
    pub w: DMatrix<f64>,
    pub h: DMatrix<f64>,
    pub used_pseudo_inverse: bool,
}

fn gram_cholesky(vo: &VariationOperator) -> Result<Cholesky<f64, nalgebra::Dyn>> {
    Cholesky::new(vo.gram()).ok_or_else(|| {
        Error::InvalidConfig("FᵀF is not positive definite".into())
    })
}

pub fn build_pipeline(
    vo: &VariationOperator,
    s: &DMatrix<f64>,
    inv_tol: f64,
) -> Result<ReconstructionPipeline> {
    let n = vo.dim();
    if s.nrows() != n || s.ncols() == 0 {
        return Err(Error::DimensionMismatch {
            op: "build_pipeline",
            expected: format!("{n}xK"),
            got: dims(s.nrows(), s.ncols()),
        });
    }
    if !(inv_tol > 0.0) {
        return Err(Error::InvalidConfig(format!("inv_tol must be positive, got {inv_tol}")));
    }

    let q = gram_cholesky(vo)?.solve(s);
    let stq = s.transpose() * &q;
    let stq = (&stq + stq.transpose()) * 0.5;

    let svd = sorted_svd(&stq);
    let smax = svd.sigma[0];
    let smin = svd.sigma[svd.sigma.len() - 1];
    let cutoff = inv_tol * smax;

    let inverse = if smax > 0.0 && smin > cutoff {
        Cholesky::new(stq.clone()).map(|c| c.inverse())
    } else {
        None
    };
    let (h, used_pseudo_inverse) = match inverse {
        Some(h) => (h, false),
        None => {
            let inv_sigma = svd.sigma.map(|s| if s > cutoff && s > 0.0 { 1.0 / s } else { 0.0 });
            let mut vs = svd.v.clone();
            for (mut col, &is) in vs.column_iter_mut().zip(inv_sigma.iter()) {
                col *= is;
            }
            (vs * svd.u.transpose(), true)
        }
    };

    Ok(ReconstructionPipeline {
        s: s.clone(),
        w: q.clone(),
        q,
        h,
        used_pseudo_inverse,
    })
}

/// `c = Sᵀx`.
pub fn sample(s: &DMatrix<f64>, x: &DVector<f64>) -> Result<DVector<f64>> {
    if s.nrows() != x.len() {
        return Err(Error::DimensionMismatch {
            op: "sample",
            expected: format!("signal of length {}", s.nrows()),
            got: x.len().to_string(),
        });
    }
    Ok(s.tr_mul(x))
}

/// `x̃ = W H c`.
pub fn reconstruct(p: &ReconstructionPipeline, c: &DVector<f64>) -> Result<DVector<f64>> {
    if c.len() != p.h.ncols() {
        return Err(Error::DimensionMismatch {
            op: "reconstruct",
            expected: format!("{} samples", p.h.ncols()),
            got: c.len().to_string(),
        });
    }
    Ok(&p.w * (&p.h * c))
}

/// Solves `argmin ‖Fx‖² s.t. Sᵀx = c` through the saddle-point system
///
/// ```text
/// [ FᵀF  S ] [x]   [0]
/// [ Sᵀ   0 ] [μ] = [c]
/// ```
///
/// independently of the `W H(Q)` route.
pub fn ls_oracle(vo: &VariationOperator, s: &DMatrix<f64>, c: &DVector<f64>) -> Result<DVector<f64>> {
    let n = vo.dim();
    let k = s.ncols();
    if s.nrows() != n || c.len() != k {
        return Err(Error::DimensionMismatch {
            op: "ls_oracle",
            expected: format!("S {n}xK and c of length K"),
            got: format!("S {}, c {}", dims(s.nrows(), k), c.len()),
        });
    }
    let mut kkt = DMatrix::zeros(n + k, n + k);
    kkt.view_mut((0, 0), (n, n)).copy_from(&(vo.f.transpose() * &vo.f));
    kkt.view_mut((0, n), (n, k)).copy_from(s);
    kkt.view_mut((n, 0), (k, n)).copy_from(&s.transpose());

    let sv = kkt.clone().singular_values();
    let (smax, smin) = (sv.max(), sv.min());
    if !(smax > 0.0) || smin <= 1e-13 * smax {
        return Err(Error::SingularKkt);
    }
    let mut rhs = DVector::zeros(n + k);
    rhs.rows_mut(n, k).copy_from(c);
    let sol = kkt.lu().solve(&rhs).ok_or(Error::SingularKkt)?;
    Ok(sol.rows(0, n).clone_owned())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_random_sensor_graph, laplacian_spectrum, Spectrum};
    use crate::spectral::{build_variation_operator, SpectralResponse};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn identity_operator(n: usize) -> VariationOperator {
        let spec = Spectrum {
            eigenvalues: DVector::from_element(n, 0.0),
            eigenvectors: DMatrix::identity(n, n),
        };
        build_variation_operator(&spec, SpectralResponse::affine(0.0, 1.0)).unwrap()
    }

    fn sensor_operator(n: usize, seed: u64) -> VariationOperator {
        let g = build_random_sensor_graph(n, 5, seed).unwrap();
        build_variation_operator(&laplacian_spectrum(&g).unwrap(), SpectralResponse::shifted_identity())
            .unwrap()
    }

    fn selection(n: usize, picks: &[usize]) -> DMatrix<f64> {
        let mut s = DMatrix::zeros(n, picks.len());
        for (j, &i) in picks.iter().enumerate() {
            s[(i, j)] = 1.0;
        }
        s
    }

    fn random_matrix(rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> DMatrix<f64> {
        DMatrix::from_fn(rows, cols, |_, _| rng.random_range(-1.0..1.0))
    }

    fn rel(a: &DVector<f64>, b: &DVector<f64>) -> f64 {
        (a - b).norm() / b.norm().max(f64::MIN_POSITIVE)
    }

    #[test]
    fn identity_prior_with_selection() {
        let vo = identity_operator(6);
        let s = selection(6, &[4, 1, 2]);
        let p = build_pipeline(&vo, &s, DEFAULT_INV_TOL).unwrap();
        assert!(!p.used_pseudo_inverse);
        assert!((&p.q - &s).amax() < 1e-12);
        assert!((&p.w - &s).amax() < 1e-12);
        assert!((&p.h - DMatrix::identity(3, 3)).amax() < 1e-12);
    }

    #[test]
    fn duplicate_columns_fall_back_to_pseudo_inverse() {
        let vo = sensor_operator(12, 1);
        let s = selection(12, &[3, 3, 7]);
        let p = build_pipeline(&vo, &s, DEFAULT_INV_TOL).unwrap();
        assert!(p.used_pseudo_inverse);
        // pinv still yields a consistent reconstruction on the sampled span
        let x = DVector::from_fn(12, |i, _| i as f64);
        let c = sample(&s, &x).unwrap();
        let xr = reconstruct(&p, &c).unwrap();
        assert!(rel(&sample(&s, &xr).unwrap(), &c) < 1e-8);
    }

    #[test]
    fn q_matches_dense_inverse_oracle() {
        let vo = sensor_operator(20, 2);
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let s = random_matrix(20, 4, &mut rng);
        let p = build_pipeline(&vo, &s, DEFAULT_INV_TOL).unwrap();
        let dense = (vo.f.transpose() * &vo.f).try_inverse().unwrap() * &s;
        assert!((&p.q - &dense).norm() <= 1e-8 * dense.norm());
        assert_eq!(p.w, p.q);
        let hs = &p.h * (s.transpose() * &p.q);
        assert!((hs - DMatrix::identity(4, 4)).amax() <= 1e-6);
    }

    #[test]
    fn sample_examples() {
        let s = selection(5, &[0, 3]);
        let x = DVector::from_vec(vec![1.0, 2.0, 3.0, 4.0, 5.0]);
        assert_eq!(sample(&s, &x).unwrap().as_slice(), &[1.0, 4.0]);
        assert_eq!(sample(&s, &DVector::zeros(5)).unwrap(), DVector::zeros(2));
        assert!(sample(&s, &DVector::zeros(4)).is_err());

        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let s = random_matrix(9, 3, &mut rng);
        let x = random_matrix(9, 1, &mut rng).column(0).clone_owned();
        let c = sample(&s, &x).unwrap();
        for j in 0..3 {
            let naive: f64 = (0..9).map(|i| s[(i, j)] * x[i]).sum();
            assert!((c[j] - naive).abs() <= 1e-12);
        }
    }

    #[test]
    fn reconstruct_zero_and_shape() {
        let vo = sensor_operator(10, 3);
        let s = selection(10, &[1, 5]);
        let p = build_pipeline(&vo, &s, DEFAULT_INV_TOL).unwrap();
        assert_eq!(reconstruct(&p, &DVector::zeros(2)).unwrap(), DVector::zeros(10));
        assert!(reconstruct(&p, &DVector::zeros(3)).is_err());
    }

    #[test]
    fn perfect_reconstruction_on_range_of_w() {
        let vo = sensor_operator(24, 5);
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let s = random_matrix(24, 6, &mut rng);
        let p = build_pipeline(&vo, &s, DEFAULT_INV_TOL).unwrap();
        for _ in 0..10 {
            let z = random_matrix(6, 1, &mut rng).column(0).clone_owned();
            let x = &p.w * z;
            let xr = reconstruct(&p, &sample(&s, &x).unwrap()).unwrap();
            assert!(rel(&xr, &x) <= 1e-8);
        }
    }

    #[test]
    fn oracle_identity_prior_completes_with_zeros() {
        let vo = identity_operator(5);
        let s = selection(5, &[1, 3]);
        let c = DVector::from_vec(vec![2.0, -1.0]);
        let x = ls_oracle(&vo, &s, &c).unwrap();
        let expected = DVector::from_vec(vec![0.0, 2.0, 0.0, -1.0, 0.0]);
        assert!((x - expected).amax() < 1e-12);
        assert_eq!(ls_oracle(&vo, &s, &DVector::zeros(2)).unwrap(), DVector::zeros(5));
    }

    #[test]
    fn oracle_is_optimal_among_feasible_probes() {
        let vo = sensor_operator(32, 7);
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        let s = random_matrix(32, 8, &mut rng);
        let c = random_matrix(8, 1, &mut rng).column(0).clone_owned();
        let x = ls_oracle(&vo, &s, &c).unwrap();
        assert!((s.tr_mul(&x) - &c).norm() <= 1e-9 * c.norm());
        let fx = (&vo.f * &x).norm();
        // feasible probes: x + (I - S(SᵀS)⁻¹Sᵀ) d
        let proj = DMatrix::identity(32, 32) - &s * (s.transpose() * &s).try_inverse().unwrap() * s.transpose();
        for _ in 0..100 {
            let d = random_matrix(32, 1, &mut rng).column(0).clone_owned();
            let y = &x + &proj * d;
            assert!((s.tr_mul(&y) - &c).norm() <= 1e-9 * c.norm());
            assert!(fx <= (&vo.f * y).norm() + 1e-12);
        }
    }

    #[test]
    fn oracle_rejects_degenerate_operator() {
        let vo = sensor_operator(8, 9);
        let s = selection(8, &[2, 2]);
        assert!(matches!(
            ls_oracle(&vo, &s, &DVector::from_vec(vec![1.0, 1.0])),
            Err(Error::SingularKkt)
        ));
    }

    #[test]
    fn pipeline_matches_oracle() {
        let vo = sensor_operator(32, 11);
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let s = random_matrix(32, 8, &mut rng);
        let p = build_pipeline(&vo, &s, DEFAULT_INV_TOL).unwrap();
        let x = random_matrix(32, 1, &mut rng).column(0).clone_owned();
        let c = sample(&s, &x).unwrap();
        let a = reconstruct(&p, &c).unwrap();
        let b = ls_oracle(&vo, &s, &c).unwrap();
        assert!(rel(&a, &b) <= 1e-8);
    }

    #[test]
    fn rejects_bad_inputs() {
        let vo = identity_operator(4);
        assert!(build_pipeline(&vo, &DMatrix::zeros(3, 2), DEFAULT_INV_TOL).is_err());
        assert!(build_pipeline(&vo, &DMatrix::identity(4, 2), 0.0).is_err());
        assert!(ls_oracle(&vo, &DMatrix::identity(4, 2), &DVector::zeros(3)).is_err());
    }
}
