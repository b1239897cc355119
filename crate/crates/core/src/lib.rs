//! Generalized sampling of smooth graph signals.
//!
//! A signal `x` on a weighted graph is observed through `K` linear samples
//! `c = Sᵀx`, where the columns of `S` may mix values from every vertex. Under
//! the smoothness prior `‖Fx‖ ≤ σ`, the least-squares reconstruction is
//! `x̃ = (FᵀF)⁻¹S (Sᵀ(FᵀF)⁻¹S)⁻¹ c`, which is only well defined when
//! `Sᵀ(FᵀF)⁻¹S` is invertible. This crate designs `S` so that it is, by
//! maximizing the nuclear norm `‖AS‖_*` over a Frobenius ball with proximal
//! linearized difference-of-convex iterations.
//!
//! | Module | Contents |
//! |--------|----------|
//! | [`graph`] | sensor graphs, Laplacian, eigendecomposition |
//! | [`spectral`] | variation operator `F`, its SVD, the matrix `A` |
//! | [`pldc`] | ball projection, nuclear-norm subgradient, the design loop |
//! | [`reconstruction`] | sampling, `W H(Q)` pipeline, KKT least-squares oracle |
//! | [`signals`] | GMRF and piecewise-linear signal generators |
//! | [`bench`] | Monte-Carlo harness, MSE, random-vertex baseline, CSV reports |
//! | [`svg`] | rendering a signal on a graph |
//! | [`io`] | text formats for graphs, matrices and signals |
//!
//! ```
//! use graph_gensamp::graph::{build_random_sensor_graph, laplacian_spectrum};
//! use graph_gensamp::pldc::{design_sampling_operator, rank_of, DesignConfig};
//! use graph_gensamp::reconstruction::{build_pipeline, reconstruct, sample, DEFAULT_INV_TOL};
//! use graph_gensamp::signals::gen_gmrf;
//! use graph_gensamp::spectral::{build_variation_operator, SpectralResponse};
//!
//! let (n, k) = (64, 8);
//! let graph = build_random_sensor_graph(n, 6, 1)?;
//! let spectrum = laplacian_spectrum(&graph)?;
//! let op = build_variation_operator(&spectrum, SpectralResponse::shifted_identity())?;
//!
//! let design = design_sampling_operator(&op.a, k, &DesignConfig::defaults_for(n, k))?;
//! assert!(design.converged);
//! assert_eq!(rank_of(&(&op.a * &design.s), 1e-8), k);
//!
//! let x = gen_gmrf(&spectrum, 0.1, 7)?;
//! let pipeline = build_pipeline(&op, &design.s, DEFAULT_INV_TOL)?;
//! let x_hat = reconstruct(&pipeline, &sample(&design.s, &x)?)?;
//! assert_eq!(x_hat.len(), n);
//! # Ok::<(), graph_gensamp::Error>(())
//! ```

pub mod bench;
pub mod error;
pub mod graph;
pub mod io;
pub mod pldc;
pub mod reconstruction;
pub mod signals;
pub mod spectral;
pub mod svg;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/graphs.md")]
    mod graphs {}
    #[doc = include_str!("../../../book/src/variation.md")]
    mod variation {}
    #[doc = include_str!("../../../book/src/design.md")]
    mod design {}
    #[doc = include_str!("../../../book/src/reconstruction.md")]
    mod reconstruction {}
    #[doc = include_str!("../../../book/src/signals.md")]
    mod signals {}
    #[doc = include_str!("../../../book/src/benchmark.md")]
    mod benchmark {}
}
