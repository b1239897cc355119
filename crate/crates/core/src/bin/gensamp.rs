use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use graph_gensamp::bench::{run_benchmark, ExperimentConfig, Method};
use graph_gensamp::graph::{build_random_sensor_graph, laplacian, laplacian_spectrum};
use graph_gensamp::io::{
    read_graph, read_matrix, read_signal, write_graph, write_matrix, write_signal,
};
use graph_gensamp::pldc::{design_sampling_operator, DesignConfig, TMode};
use graph_gensamp::reconstruction::{build_pipeline, reconstruct, sample, DEFAULT_INV_TOL};
use graph_gensamp::signals::{gen_gmrf, gen_pwl};
use graph_gensamp::spectral::{build_variation_operator, SpectralResponse};
use graph_gensamp::svg::emit_svg;

#[derive(Parser)]
#[command(name = "gensamp", version, about = "Sampling-operator design and reconstruction for smooth graph signals")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a random k-NN sensor graph.
    Graph {
        #[arg(long, default_value_t = 256)]
        n: usize,
        #[arg(long, default_value_t = 6)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Draw a GMRF or piecewise-linear signal on a graph.
    Signal {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, value_enum, default_value_t = ModelKind::Gmrf)]
        model: ModelKind,
        #[arg(long, default_value_t = 0.1)]
        eta: f64,
        #[arg(long, default_value_t = 0.125)]
        density: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Design a sampling operator S for a graph; writes S.txt and trace.csv.
    Design {
        #[arg(long)]
        graph: PathBuf,
        /// Number of samples K.
        #[arg(long)]
        samples: usize,
        /// Take response and design parameters from an experiment config.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        t_mode: Option<TModeArg>,
        #[arg(long)]
        epsilon: Option<f64>,
        #[arg(long)]
        gamma: Option<f64>,
        #[arg(long)]
        stop_tol: Option<f64>,
        #[arg(long)]
        max_iter: Option<usize>,
        #[command(flatten)]
        response: ResponseArgs,
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
    },
    /// Sample a signal with S, reconstruct it and report the MSE.
    Reconstruct {
        #[arg(long)]
        graph: PathBuf,
        /// Sampling operator in matrix text format.
        #[arg(long)]
        sampling: PathBuf,
        #[arg(long)]
        signal: PathBuf,
        #[arg(long, default_value_t = DEFAULT_INV_TOL)]
        inv_tol: f64,
        #[command(flatten)]
        response: ResponseArgs,
        /// Where to write the reconstructed signal.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the Monte-Carlo benchmark and write trials.csv / summary.csv.
    Bench {
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out_dir: Option<PathBuf>,
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long)]
        fixed_graph: bool,
        #[arg(long)]
        t_mode: Option<TModeArg>,
    },
    /// Render a signal on a graph as SVG.
    Render {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        signal: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ModelKind {
    Gmrf,
    Pwl,
}

#[derive(Clone, Copy, ValueEnum)]
enum TModeArg {
    Zero,
    Identity,
}

impl From<TModeArg> for TMode {
    fn from(t: TModeArg) -> Self {
        match t {
            TModeArg::Zero => TMode::Zero,
            TModeArg::Identity => TMode::Identity,
        }
    }
}

#[derive(Args)]
struct ResponseArgs {
    /// Spectral response f(λ) = slope·λ + offset.
    #[arg(long, default_value_t = 1.0)]
    slope: f64,
    #[arg(long, default_value_t = 0.1)]
    offset: f64,
}

impl ResponseArgs {
    fn response(&self) -> SpectralResponse {
        SpectralResponse::affine(self.slope, self.offset)
    }
}

fn write(path: &Path, text: String) -> Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn main() -> Result<()> {
    match Cli::parse().command {
        Command::Graph { n, k, seed, out } => {
            let g = build_random_sensor_graph(n, k, seed).context("building sensor graph")?;
            write(&out, write_graph(&g))?;
            println!("graph: {} vertices, {} edges -> {}", n, g.edges().len(), out.display());
        }
        Command::Signal {
            graph,
            model,
            eta,
            density,
            seed,
            out,
        } => {
            let g = read_graph(&graph).with_context(|| format!("reading {}", graph.display()))?;
            let x = match model {
                ModelKind::Gmrf => gen_gmrf(&laplacian_spectrum(&g)?, eta, seed)?,
                ModelKind::Pwl => gen_pwl(&g, &laplacian(&g), density, seed)?,
            };
            write(&out, write_signal(&x))?;
        }
        Command::Design {
            graph,
            samples,
            config,
            seed,
            t_mode,
            epsilon,
            gamma,
            stop_tol,
            max_iter,
            response,
            out_dir,
        } => {
            let g = read_graph(&graph).with_context(|| format!("reading {}", graph.display()))?;
            let n = g.num_vertices();
            let (resp, mut cfg) = match config {
                Some(path) => {
                    let exp = ExperimentConfig::load(&path)
                        .with_context(|| format!("loading {}", path.display()))?;
                    let mut d = exp.design;
                    if exp.n != n || exp.k != samples {
                        d.epsilon = DesignConfig::defaults_for(n, samples).epsilon;
                    }
                    (exp.response, d)
                }
                None => (response.response(), DesignConfig::defaults_for(n, samples)),
            };
            cfg.seed = seed;
            if let Some(t) = t_mode {
                cfg.t_mode = t.into();
            }
            cfg.epsilon = epsilon.unwrap_or(cfg.epsilon);
            cfg.gamma = gamma.unwrap_or(cfg.gamma);
            cfg.stop_tol = stop_tol.unwrap_or(cfg.stop_tol);
            cfg.max_iter = max_iter.unwrap_or(cfg.max_iter);

            let op = build_variation_operator(&laplacian_spectrum(&g)?, resp)?;
            let design = design_sampling_operator(&op.a, samples, &cfg).context("design")?;
            fs::create_dir_all(&out_dir)?;
            write(&out_dir.join("S.txt"), write_matrix(&design.s))?;
            write(&out_dir.join("trace.csv"), design.trace_csv())?;
            let last = design.trace.last().map(|r| r.nuclear_norm).unwrap_or(0.0);
            println!(
                "design: {} iterations, converged={}, nuclear norm {last:.6}",
                design.iterations, design.converged
            );
        }
        Command::Reconstruct {
            graph,
            sampling,
            signal,
            inv_tol,
            response,
            out,
        } => {
            let g = read_graph(&graph).with_context(|| format!("reading {}", graph.display()))?;
            let s = read_matrix(&sampling).with_context(|| format!("reading {}", sampling.display()))?;
            let x = read_signal(&signal).with_context(|| format!("reading {}", signal.display()))?;
            let op = build_variation_operator(&laplacian_spectrum(&g)?, response.response())?;
            let pipeline = build_pipeline(&op, &s, inv_tol)?;
            let x_hat = reconstruct(&pipeline, &sample(&s, &x)?)?;
            let err = graph_gensamp::bench::mse(&x_hat, &x)?;
            if let Some(out) = out {
                write(&out, write_signal(&x_hat))?;
            }
            println!("mse {err}");
            if pipeline.used_pseudo_inverse {
                println!("note: SᵀQ was singular; used the pseudo-inverse");
            }
        }
        Command::Bench {
            config,
            seed,
            out_dir,
            trials,
            fixed_graph,
            t_mode,
        } => {
            let mut cfg = match config {
                Some(path) => ExperimentConfig::load(&path)
                    .with_context(|| format!("loading {}", path.display()))?,
                None => ExperimentConfig::from_toml("")?,
            };
            cfg.master_seed = seed.unwrap_or(cfg.master_seed);
            cfg.trials = trials.unwrap_or(cfg.trials);
            cfg.fixed_graph |= fixed_graph;
            if let Some(t) = t_mode {
                cfg.design.t_mode = t.into();
            }
            if out_dir.is_some() {
                cfg.output_dir = out_dir;
            }
            if cfg.output_dir.is_none() {
                cfg.output_dir = Some(PathBuf::from("."));
            }
            let report = run_benchmark(&cfg)?;
            println!(
                "n={} K={} ratio={} model={} trials={}",
                report.n,
                report.k,
                report.sampling_ratio(),
                report.model.name(),
                cfg.trials
            );
            for s in &report.summaries {
                println!("{:<14} mse {:.6} ± {:.6}", s.method.to_string(), s.mean_mse, s.std_mse);
            }
            let stalled = report
                .records
                .iter()
                .filter(|r| r.method == Method::Proposed && !r.converged)
                .count();
            if stalled > 0 {
                eprintln!("warning: {stalled} designs hit max_iter");
            }
        }
        Command::Render { graph, signal, out } => {
            let g = read_graph(&graph).with_context(|| format!("reading {}", graph.display()))?;
            let x = read_signal(&signal).with_context(|| format!("reading {}", signal.display()))?;
            if x.len() != g.num_vertices() {
                bail!("signal has {} values but the graph has {} vertices", x.len(), g.num_vertices());
            }
            emit_svg(&g, &x, &out)?;
        }
    }
    Ok(())
}
