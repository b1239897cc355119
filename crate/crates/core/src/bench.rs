//! Monte-Carlo sampling-and-reconstruction experiments.
//!
//! Every trial draws a fresh sensor graph (unless `fixed_graph` is set), builds
//! `F` and `A`, designs a sampling operator, draws one signal and scores the
//! reconstruction of each method by MSE. All randomness comes from seeds
//! derived from `master_seed` and the trial index, so trials can run in
//! parallel and the report does not depend on scheduling.

use std::fmt::{self, Write as _};
use std::fs;
use std::path::{Path, PathBuf};

use nalgebra::{DMatrix, DVector};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::graph::{build_random_sensor_graph, eigendecompose, laplacian, Graph, Spectrum};
use crate::pldc::{design_sampling_operator, DesignConfig, TMode};
use crate::reconstruction::{build_pipeline, reconstruct, sample, DEFAULT_INV_TOL};
use crate::signals::{SignalModel, SignalModelSpec};
use crate::spectral::{build_variation_operator, SpectralResponse, VariationOperator};

/// `‖x̂ − x‖² / n`.
pub fn mse(x_hat: &DVector<f64>, x: &DVector<f64>) -> Result<f64> {
    if x_hat.len() != x.len() || x.is_empty() {
        return Err(Error::DimensionMismatch {
            op: "mse",
            expected: format!("non-empty vectors of equal length ({})", x.len()),
            got: x_hat.len().to_string(),
        });
    }
    Ok((x_hat - x).norm_squared() / x.len() as f64)
}

/// `n × k` matrix whose columns are distinct standard basis vectors chosen
/// uniformly without replacement.
pub fn random_vertex_sampler(n: usize, k: usize, seed: u64) -> Result<DMatrix<f64>> {
    if k > n {
        return Err(Error::InvalidConfig(format!(
            "cannot select {k} distinct vertices out of {n}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let picks = rand::seq::index::sample(&mut rng, n, k);
    let mut s = DMatrix::zeros(n, k);
    for (j, i) in picks.into_iter().enumerate() {
        s[(i, j)] = 1.0;
    }
    Ok(s)
}

pub fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Combines a seed with a stream index.
pub fn mix_seed(seed: u64, stream: u64) -> u64 {
    splitmix64(seed.wrapping_add(stream.wrapping_mul(0x9E37_79B9_7F4A_7C15)))
}

const GRAPH_STREAM: u64 = 1;
const DESIGN_STREAM: u64 = 2;
const SIGNAL_STREAM: u64 = 3;
const BASELINE_STREAM: u64 = 4;

/// Seeds of one trial.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TrialSeeds {
    pub graph: u64,
    pub design: u64,
    pub signal: u64,
    pub baseline: u64,
}

impl TrialSeeds {
    pub fn derive(cfg: &ExperimentConfig, trial_index: usize) -> Self {
        let trial = mix_seed(cfg.master_seed, trial_index as u64);
        let graph = if cfg.fixed_graph {
            mix_seed(cfg.master_seed, u64::MAX - GRAPH_STREAM)
        } else {
            mix_seed(trial, GRAPH_STREAM)
        };
        Self {
            graph,
            design: mix_seed(trial, DESIGN_STREAM),
            signal: mix_seed(trial, SIGNAL_STREAM),
            baseline: mix_seed(trial, BASELINE_STREAM),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Baseline {
    #[default]
    RandomVertex,
    None,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Method {
    Proposed,
    RandomVertex,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Proposed => "proposed",
            Method::RandomVertex => "random_vertex",
        })
    }
}

impl std::str::FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "proposed" => Ok(Method::Proposed),
            "random_vertex" => Ok(Method::RandomVertex),
            other => Err(Error::InvalidConfig(format!("unknown method `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub n: usize,
    pub k: usize,
    pub graph_k: usize,
    pub response: SpectralResponse,
    pub model: SignalModel,
    /// `seed` is ignored; each trial derives its own.
    pub design: DesignConfig,
    pub trials: usize,
    pub baseline: Baseline,
    pub master_seed: u64,
    pub output_dir: Option<PathBuf>,
    pub fixed_graph: bool,
    pub inv_tol: f64,
}

impl ExperimentConfig {
    /// The sensor-graph experiment: 256 vertices, 32 samples, 6-NN graph,
    /// `F(λ) = λ + 0.1`, 100 trials against random vertex selection.
    pub fn sensor_preset(model: SignalModel) -> Self {
        let (n, k) = (256, 32);
        Self {
            n,
            k,
            graph_k: 6,
            response: SpectralResponse::shifted_identity(),
            model,
            design: DesignConfig::defaults_for(n, k),
            trials: 100,
            baseline: Baseline::RandomVertex,
            master_seed: 0,
            output_dir: None,
            fixed_graph: false,
            inv_tol: DEFAULT_INV_TOL,
        }
    }

    pub fn sampling_ratio(&self) -> f64 {
        self.k as f64 / self.n as f64
    }

    pub fn validate(&self) -> Result<()> {
        if self.k == 0 || self.k >= self.n {
            return Err(Error::InvalidConfig(format!(
                "need 0 < K < n (got K={}, n={})",
                self.k, self.n
            )));
        }
        if self.trials == 0 {
            return Err(Error::InvalidConfig("trials must be at least 1".into()));
        }
        if self.graph_k == 0 || self.graph_k >= self.n {
            return Err(Error::InvalidConfig(format!(
                "graph_k must lie in (0, n) (got {})",
                self.graph_k
            )));
        }
        if !(self.inv_tol > 0.0) {
            return Err(Error::InvalidConfig("inv_tol must be positive".into()));
        }
        self.model.validate()?;
        self.design.validate()
    }

    /// Parses the TOML config file. Keys are the field names of this struct
    /// (`K` for the sample count); anything omitted takes the sensor-preset
    /// value, and `design.epsilon` defaults to `√(n·K)`.
    pub fn from_toml(text: &str) -> Result<Self> {
        let raw: RawConfig =
            toml::from_str(text).map_err(|e| Error::InvalidConfig(e.to_string()))?;
        let model = raw.model.unwrap_or(SignalModel::Gmrf { eta: 0.1 });
        let mut cfg = Self::sensor_preset(model);
        cfg.n = raw.n.unwrap_or(cfg.n);
        cfg.k = raw.k.unwrap_or(cfg.k);
        cfg.graph_k = raw.graph_k.unwrap_or(cfg.graph_k);
        cfg.response = raw.response.unwrap_or(cfg.response);
        cfg.trials = raw.trials.unwrap_or(cfg.trials);
        cfg.baseline = raw.baseline.unwrap_or(cfg.baseline);
        cfg.master_seed = raw.master_seed.unwrap_or(cfg.master_seed);
        cfg.output_dir = raw.output_dir.or(cfg.output_dir);
        cfg.fixed_graph = raw.fixed_graph.unwrap_or(cfg.fixed_graph);
        cfg.inv_tol = raw.inv_tol.unwrap_or(cfg.inv_tol);

        let d = raw.design.unwrap_or_default();
        let base = DesignConfig::defaults_for(cfg.n, cfg.k);
        cfg.design = DesignConfig {
            epsilon: d.epsilon.unwrap_or(base.epsilon),
            gamma: d.gamma.unwrap_or(base.gamma),
            t_mode: d.t_mode.unwrap_or(base.t_mode),
            stop_tol: d.stop_tol.unwrap_or(base.stop_tol),
            max_iter: d.max_iter.unwrap_or(base.max_iter),
            rank_tol: d.rank_tol.unwrap_or(base.rank_tol),
            seed: 0,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_toml(&fs::read_to_string(path)?)
    }

    fn methods(&self) -> Vec<Method> {
        match self.baseline {
            Baseline::RandomVertex => vec![Method::Proposed, Method::RandomVertex],
            Baseline::None => vec![Method::Proposed],
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    n: Option<usize>,
    #[serde(rename = "K")]
    k: Option<usize>,
    graph_k: Option<usize>,
    response: Option<SpectralResponse>,
    model: Option<SignalModel>,
    design: Option<RawDesign>,
    trials: Option<usize>,
    baseline: Option<Baseline>,
    master_seed: Option<u64>,
    output_dir: Option<PathBuf>,
    fixed_graph: Option<bool>,
    inv_tol: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDesign {
    epsilon: Option<f64>,
    gamma: Option<f64>,
    t_mode: Option<TMode>,
    stop_tol: Option<f64>,
    max_iter: Option<usize>,
    rank_tol: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrialRecord {
    pub trial: usize,
    pub method: Method,
    pub mse: f64,
    /// Zero for methods without an iterative design.
    pub design_iterations: usize,
    pub converged: bool,
    pub used_pseudo_inverse: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MethodSummary {
    pub method: Method,
    pub mean_mse: f64,
    /// Population standard deviation over trials.
    pub std_mse: f64,
    pub trials: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentReport {
    pub n: usize,
    pub k: usize,
    pub model: SignalModel,
    pub master_seed: u64,
    pub records: Vec<TrialRecord>,
    pub summaries: Vec<MethodSummary>,
}

/// Graph, Laplacian, spectrum and variation operator of one trial.
pub struct TrialSetup {
    pub graph: Graph,
    pub laplacian: DMatrix<f64>,
    pub spectrum: Spectrum,
    pub operator: VariationOperator,
}

impl TrialSetup {
    pub fn build(cfg: &ExperimentConfig, seeds: &TrialSeeds) -> Result<Self> {
        let graph = build_random_sensor_graph(cfg.n, cfg.graph_k, seeds.graph)?;
        let laplacian = laplacian(&graph);
        let spectrum = eigendecompose(&laplacian)?;
        let operator = build_variation_operator(&spectrum, cfg.response)?;
        Ok(Self {
            graph,
            laplacian,
            spectrum,
            operator,
        })
    }
}

fn score(
    setup: &TrialSetup,
    s: &DMatrix<f64>,
    x: &DVector<f64>,
    inv_tol: f64,
) -> Result<(f64, bool)> {
    let pipeline = build_pipeline(&setup.operator, s, inv_tol)?;
    let x_hat = reconstruct(&pipeline, &sample(s, x)?)?;
    Ok((mse(&x_hat, x)?, pipeline.used_pseudo_inverse))
}

pub fn run_trial(cfg: &ExperimentConfig, trial_index: usize) -> Result<Vec<TrialRecord>> {
    cfg.validate()?;
    let seeds = TrialSeeds::derive(cfg, trial_index);
    let setup = TrialSetup::build(cfg, &seeds)?;

    let signal = SignalModelSpec {
        kind: cfg.model,
        seed: seeds.signal,
    };
    let x = signal.generate(&setup.graph, &setup.laplacian, &setup.spectrum)?;

    let mut records = Vec::with_capacity(2);
    for method in cfg.methods() {
        let record = match method {
            Method::Proposed => {
                let design_cfg = DesignConfig {
                    seed: seeds.design,
                    ..cfg.design.clone()
                };
                let design = design_sampling_operator(&setup.operator.a, cfg.k, &design_cfg)?;
                let (mse, pinv) = score(&setup, &design.s, &x, cfg.inv_tol)?;
                TrialRecord {
                    trial: trial_index,
                    method,
                    mse,
                    design_iterations: design.iterations,
                    converged: design.converged,
                    used_pseudo_inverse: pinv,
                }
            }
            Method::RandomVertex => {
                let s = random_vertex_sampler(cfg.n, cfg.k, seeds.baseline)?;
                let (mse, pinv) = score(&setup, &s, &x, cfg.inv_tol)?;
                TrialRecord {
                    trial: trial_index,
                    method,
                    mse,
                    design_iterations: 0,
                    converged: true,
                    used_pseudo_inverse: pinv,
                }
            }
        };
        records.push(record);
    }
    Ok(records)
}

/// Mean and population standard deviation per method, in the order methods
/// first appear in `records`.
pub fn summarize(records: &[TrialRecord]) -> Vec<MethodSummary> {
    let mut methods: Vec<Method> = Vec::new();
    for r in records {
        if !methods.contains(&r.method) {
            methods.push(r.method);
        }
    }
    methods
        .into_iter()
        .map(|method| {
            let values: Vec<f64> = records
                .iter()
                .filter(|r| r.method == method)
                .map(|r| r.mse)
                .collect();
            let count = values.len() as f64;
            let mean = values.iter().sum::<f64>() / count;
            let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / count;
            MethodSummary {
                method,
                mean_mse: mean,
                std_mse: var.sqrt(),
                trials: values.len(),
            }
        })
        .collect()
}

/// Runs every trial (in parallel), aggregates, and writes `trials.csv` and
/// `summary.csv` to `cfg.output_dir` when set.
pub fn run_benchmark(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    cfg.validate()?;
    let results: Vec<Result<Vec<TrialRecord>>> = (0..cfg.trials)
        .into_par_iter()
        .map(|i| run_trial(cfg, i))
        .collect();

    let mut records = Vec::with_capacity(cfg.trials * 2);
    for (index, result) in results.into_iter().enumerate() {
        match result {
            Ok(r) => records.extend(r),
            Err(source) => {
                return Err(Error::Trial {
                    index,
                    source: Box::new(source),
                })
            }
        }
    }

    let report = ExperimentReport {
        n: cfg.n,
        k: cfg.k,
        model: cfg.model,
        master_seed: cfg.master_seed,
        summaries: summarize(&records),
        records,
    };
    if let Some(dir) = &cfg.output_dir {
        report.write_csv(dir)?;
    }
    Ok(report)
}

impl ExperimentReport {
    pub fn sampling_ratio(&self) -> f64 {
        self.k as f64 / self.n as f64
    }

    fn header(&self) -> String {
        format!(
            "# n={} K={} sampling_ratio={} model={} master_seed={}\n",
            self.n,
            self.k,
            self.sampling_ratio(),
            self.model.name(),
            self.master_seed
        )
    }

    pub fn trials_csv(&self) -> String {
        let mut out = self.header();
        out.push_str("trial,method,mse,design_iterations,converged,used_pseudo_inverse\n");
        for r in &self.records {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{}",
                r.trial, r.method, r.mse, r.design_iterations, r.converged, r.used_pseudo_inverse
            );
        }
        out
    }

    pub fn summary_csv(&self) -> String {
        let mut out = self.header();
        out.push_str("method,mean_mse,std_mse,trials\n");
        for s in &self.summaries {
            let _ = writeln!(out, "{},{},{},{}", s.method, s.mean_mse, s.std_mse, s.trials);
        }
        out
    }

    pub fn write_csv(&self, dir: &Path) -> Result<()> {
        fs::create_dir_all(dir)?;
        fs::write(dir.join("trials.csv"), self.trials_csv())?;
        fs::write(dir.join("summary.csv"), self.summary_csv())?;
        Ok(())
    }

    pub fn summary(&self, method: Method) -> Option<&MethodSummary> {
        self.summaries.iter().find(|s| s.method == method)
    }
}

/// Reads back the records of a `trials.csv`.
pub fn parse_trials_csv(text: &str) -> Result<Vec<TrialRecord>> {
    let bad = |line: usize, msg: &str| Error::Parse {
        line,
        msg: msg.to_string(),
    };
    let mut records = Vec::new();
    let mut header_seen = false;
    for (i, line) in text.lines().enumerate() {
        let no = i + 1;
        if line.starts_with('#') || line.trim().is_empty() {
            continue;
        }
        if !header_seen {
            header_seen = true;
            continue;
        }
        let f: Vec<&str> = line.split(',').collect();
        if f.len() != 6 {
            return Err(bad(no, "expected 6 fields"));
        }
        records.push(TrialRecord {
            trial: f[0].parse().map_err(|_| bad(no, "trial"))?,
            method: f[1].parse()?,
            mse: f[2].parse().map_err(|_| bad(no, "mse"))?,
            design_iterations: f[3].parse().map_err(|_| bad(no, "design_iterations"))?,
            converged: f[4].parse().map_err(|_| bad(no, "converged"))?,
            used_pseudo_inverse: f[5].parse().map_err(|_| bad(no, "used_pseudo_inverse"))?,
        });
    }
    Ok(records)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(model: SignalModel) -> ExperimentConfig {
        let mut cfg = ExperimentConfig::sensor_preset(model);
        cfg.n = 32;
        cfg.k = 4;
        cfg.graph_k = 5;
        cfg.design = DesignConfig::defaults_for(32, 4);
        cfg.trials = 3;
        cfg
    }

    #[test]
    fn mse_examples() {
        let x = DVector::from_vec(vec![1.0, 0.0]);
        assert_eq!(mse(&x, &x).unwrap(), 0.0);
        assert_eq!(mse(&DVector::zeros(2), &x).unwrap(), 0.5);
        assert!(mse(&DVector::zeros(3), &x).is_err());

        let a = crate::pldc::gaussian_matrix(17, 1, 1).column(0).clone_owned();
        let b = crate::pldc::gaussian_matrix(17, 1, 2).column(0).clone_owned();
        let mut acc = 0.0;
        for i in 0..17 {
            acc += (a[i] - b[i]) * (a[i] - b[i]);
        }
        assert!((mse(&a, &b).unwrap() - acc / 17.0).abs() <= 1e-12);
    }

    #[test]
    fn sampler_permutation_and_columns() {
        let s = random_vertex_sampler(4, 4, 3).unwrap();
        assert_eq!(s.row_sum().iter().copied().collect::<Vec<_>>(), vec![1.0; 4]);
        assert_eq!(s.column_sum().iter().copied().collect::<Vec<_>>(), vec![1.0; 4]);
        let s = random_vertex_sampler(10, 3, 1).unwrap();
        for col in s.column_iter() {
            assert_eq!(col.iter().filter(|&&v| v == 1.0).count(), 1);
            assert_eq!(col.iter().filter(|&&v| v == 0.0).count(), 9);
        }
        assert!(random_vertex_sampler(3, 4, 0).is_err());
    }

    #[test]
    fn sampler_is_uniform() {
        let mut counts = [0usize; 8];
        let draws = 10_000;
        for seed in 0..draws {
            let s = random_vertex_sampler(8, 2, seed).unwrap();
            for (i, c) in counts.iter_mut().enumerate() {
                if s.row(i).sum() > 0.0 {
                    *c += 1;
                }
            }
        }
        for c in counts {
            let freq = c as f64 / draws as f64;
            assert!((freq - 0.25).abs() <= 0.02, "{freq}");
        }
    }

    #[test]
    fn seeds_differ_per_trial_and_stream() {
        let cfg = small(SignalModel::Gmrf { eta: 0.1 });
        let a = TrialSeeds::derive(&cfg, 0);
        let b = TrialSeeds::derive(&cfg, 1);
        assert_ne!(a.graph, b.graph);
        assert_ne!(a.design, a.signal);
        let fixed = ExperimentConfig {
            fixed_graph: true,
            ..cfg
        };
        assert_eq!(
            TrialSeeds::derive(&fixed, 0).graph,
            TrialSeeds::derive(&fixed, 5).graph
        );
    }

    #[test]
    fn trial_is_deterministic() {
        let cfg = small(SignalModel::Gmrf { eta: 0.1 });
        let a = run_trial(&cfg, 2).unwrap();
        let b = run_trial(&cfg, 2).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 2);
        assert_eq!(a[0].method, Method::Proposed);
        assert!(a[0].design_iterations > 0);
    }

    #[test]
    fn single_trial_has_zero_std() {
        let mut cfg = small(SignalModel::Pwl { density: 0.125 });
        cfg.trials = 1;
        let report = run_benchmark(&cfg).unwrap();
        assert_eq!(report.records.len(), 2);
        assert!(report.summaries.iter().all(|s| s.std_mse == 0.0));
    }

    #[test]
    fn no_baseline_yields_one_method() {
        let mut cfg = small(SignalModel::Gmrf { eta: 0.1 });
        cfg.baseline = Baseline::None;
        let report = run_benchmark(&cfg).unwrap();
        assert_eq!(report.records.len(), cfg.trials);
        assert_eq!(report.summaries.len(), 1);
    }

    #[test]
    fn csv_roundtrip_recomputes_aggregates() {
        let cfg = small(SignalModel::Gmrf { eta: 0.1 });
        let report = run_benchmark(&cfg).unwrap();
        let parsed = parse_trials_csv(&report.trials_csv()).unwrap();
        assert_eq!(parsed, report.records);
        for (a, b) in summarize(&parsed).iter().zip(&report.summaries) {
            assert!((a.mean_mse - b.mean_mse).abs() <= 1e-12);
            assert!((a.std_mse - b.std_mse).abs() <= 1e-12);
        }
        assert!(report.trials_csv().starts_with("# n=32 K=4 sampling_ratio=0.125 model=gmrf"));
    }

    #[test]
    fn invalid_configs_are_rejected() {
        let base = small(SignalModel::Gmrf { eta: 0.1 });
        let mut c = base.clone();
        c.k = 32;
        assert!(run_benchmark(&c).is_err());
        let mut c = base.clone();
        c.trials = 0;
        assert!(c.validate().is_err());
        let mut c = base.clone();
        c.model = SignalModel::Pwl { density: 0.0 };
        assert!(c.validate().is_err());
    }

    #[test]
    fn trial_failures_name_the_trial() {
        let mut cfg = small(SignalModel::Gmrf { eta: 0.1 });
        // 1-NN graphs on 200 points are disconnected
        cfg.graph_k = 1;
        cfg.n = 200;
        cfg.design = DesignConfig::defaults_for(200, 4);
        match run_benchmark(&cfg) {
            Err(Error::Trial { index, .. }) => assert_eq!(index, 0),
            other => panic!("expected trial failure, got {other:?}"),
        }
    }

    #[test]
    fn toml_config() {
        let text = r#"
            n = 64
            K = 8
            trials = 5
            master_seed = 9
            fixed_graph = true
            baseline = "none"

            [model]
            kind = "pwl"
            density = 0.125

            [response]
            kind = "affine"
            slope = 2.0
            offset = 0.5

            [design]
            t_mode = "identity"
            gamma = 0.5
        "#;
        let cfg = ExperimentConfig::from_toml(text).unwrap();
        assert_eq!((cfg.n, cfg.k, cfg.trials, cfg.master_seed), (64, 8, 5, 9));
        assert!(cfg.fixed_graph);
        assert_eq!(cfg.baseline, Baseline::None);
        assert_eq!(cfg.model, SignalModel::Pwl { density: 0.125 });
        assert_eq!(cfg.response, SpectralResponse::affine(2.0, 0.5));
        assert_eq!(cfg.design.t_mode, TMode::Identity);
        assert_eq!(cfg.design.gamma, 0.5);
        assert!((cfg.design.epsilon - (512f64).sqrt()).abs() < 1e-12);
        assert_eq!(cfg.design.stop_tol, 1e-5);

        assert!(ExperimentConfig::from_toml("bogus = 1").is_err());
        assert!(ExperimentConfig::from_toml("n = 8\nK = 8").is_err());
    }

    #[test]
    fn preset_ratio_is_one_eighth() {
        let cfg = ExperimentConfig::sensor_preset(SignalModel::Gmrf { eta: 0.1 });
        assert_eq!(cfg.sampling_ratio(), 0.125);
        assert!((cfg.design.epsilon - (256.0f64 * 32.0).sqrt()).abs() < 1e-12);
    }
}
