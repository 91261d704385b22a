use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use specdist::distance::{build_density, classify, DensityParams};
use specdist::experiments::{
    run_growth, run_rate, run_trees, GrowthModel, GrowthParams, RateCase, RateParams, TreeParams, VERSION,
};
use specdist::graph::edge_list_string;
use specdist::matrix::{load_graph, load_graph_dir, matrix_for, SpectrumCache};
use specdist::{spectrum, Error, GraphSpec, Result, DEFAULT_SIGMA};

#[derive(Parser, Debug)]
#[command(name = "specdist", version, about = "Normalized-Laplacian spectral distance between graphs")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Gaussian kernel bandwidth.
    #[arg(long, global = true, default_value_t = DEFAULT_SIGMA)]
    sigma: f64,
    /// Density grid step [default: sigma/20].
    #[arg(long, global = true)]
    grid_step: Option<f64>,
    /// Seed for random generators.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Output file; stdout when omitted.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
}

impl Global {
    fn density(&self) -> Result<DensityParams> {
        let mut p = DensityParams::new(self.sigma);
        if let Some(h) = self.grid_step {
            p = p.with_step(h);
        }
        p.validate()?;
        Ok(p)
    }

    fn emit(&self, text: &str) -> Result<()> {
        match &self.output {
            Some(path) => fs::write(path, text)?,
            None => io::stdout().write_all(text.as_bytes())?,
        }
        Ok(())
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate a graph from a spec such as `tree:k=4,depth=6` or `ba:n=1000,m=2`.
    Generate { spec: String },
    /// Normalized-Laplacian spectrum of an edge-list file, as CSV.
    Spectrum { file: PathBuf },
    /// Spectral distance between two edge-list files.
    Distance {
        a: PathBuf,
        b: PathBuf,
        /// Write the density of A as CSV.
        #[arg(long)]
        density_a: Option<PathBuf>,
        /// Write the density of B as CSV.
        #[arg(long)]
        density_b: Option<PathBuf>,
    },
    /// Rank the spectral-class templates by distance to a graph.
    Classify { file: PathBuf },
    /// Pairwise distance matrix of every edge list in a directory (CSV + SVG).
    Matrix {
        dir: PathBuf,
        /// SVG heatmap path [default: output with .svg extension].
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Distance-vs-size experiments.
    #[command(subcommand)]
    Experiment(Experiment),
}

#[derive(Subcommand, Debug)]
enum Experiment {
    /// Two same-model groups grown from a base graph plus a contrast group.
    Growth {
        #[arg(long, default_value = "ba")]
        model: String,
        #[arg(long, default_value_t = 1000)]
        base_n: usize,
        #[arg(long, default_value_t = 5)]
        steps: usize,
        #[arg(long, default_value_t = 200)]
        step: usize,
        #[arg(long, default_value_t = 4.0)]
        avg_degree: f64,
        #[arg(long, default_value_t = 2)]
        m: usize,
        #[arg(long, default_value_t = 5)]
        init: usize,
    },
    /// Growing k-regular trees: same-k and cross-k curves.
    Trees {
        #[arg(long, value_delimiter = ',', default_value = "3,4")]
        ks: Vec<usize>,
        #[arg(long, default_value_t = 100)]
        base_n: usize,
        #[arg(long, default_value_t = 9)]
        steps: usize,
        #[arg(long, default_value_t = 100)]
        step: usize,
    },
    /// Log-log rate fit of D against size.
    Rate {
        /// complete, er (single edge deletion) or cube (sizes are dimensions).
        #[arg(long)]
        family: String,
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 4.0)]
        avg_degree: f64,
        /// Edges deleted (one at a time) per size for `er`; distances are averaged.
        #[arg(long, default_value_t = 5)]
        trials: usize,
    },
}

fn read_graph(path: &Path) -> Result<specdist::Graph> {
    load_graph(path).map(|g| g.graph)
}

fn run(cli: Cli) -> Result<()> {
    let g = &cli.global;
    match cli.command {
        Command::Generate { spec } => {
            let spec: GraphSpec = spec.parse()?;
            let graph = spec.generate(g.seed)?;
            g.emit(&edge_list_string(&graph))?;
            let summary = format!(
                "n {} edges {} average_degree {}",
                graph.n(),
                graph.edge_count(),
                graph.average_degree()?
            );
            if g.output.is_some() {
                println!("{summary}");
            } else {
                eprintln!("{summary}");
            }
        }
        Command::Spectrum { file } => {
            let s = spectrum(&read_graph(&file)?)?;
            g.emit(&s.to_csv())?;
        }
        Command::Distance { a, b, density_a, density_b } => {
            let params = g.density()?;
            let da = build_density(&spectrum(&read_graph(&a)?)?, params)?;
            let db = build_density(&spectrum(&read_graph(&b)?)?, params)?;
            let d = da.distance(&db)?;
            if let Some(p) = density_a {
                fs::write(p, da.to_csv())?;
            }
            if let Some(p) = density_b {
                fs::write(p, db.to_csv())?;
            }
            g.emit(&format!(
                "D {d:.16e}\nsigma {}\ngrid_step {}\n",
                params.sigma,
                params.realized_step()
            ))?;
        }
        Command::Classify { file } => {
            let params = g.density()?;
            let graph = read_graph(&file)?;
            let ranked = classify(&spectrum(&graph)?, params, Some(graph.average_degree()?))?;
            let mut out = String::from("template,distance,dropped_mass\n");
            for c in ranked {
                out.push_str(&format!("{},{:.16e},{:.16e}\n", c.template.name(), c.distance, c.dropped_mass));
            }
            g.emit(&out)?;
        }
        Command::Matrix { dir, svg } => {
            let params = g.density()?;
            let (graphs, warnings) = load_graph_dir(&dir)?;
            for w in &warnings {
                eprintln!("warning: {w}");
            }
            let m = matrix_for(&graphs, params, &mut SpectrumCache::new())?;
            let mut comments = vec![
                format!("directory {}", dir.display()),
                format!("sigma {}", params.sigma),
                format!("grid_step {}", params.step),
                format!("version {VERSION}"),
            ];
            comments.extend(warnings.iter().map(|w| format!("warning {w}")));
            g.emit(&m.to_csv(&comments))?;
            let svg = svg.or_else(|| g.output.as_ref().map(|o| o.with_extension("svg")));
            if let Some(p) = svg {
                fs::write(p, m.to_svg())?;
            }
        }
        Command::Experiment(e) => {
            let density = g.density()?;
            let csv = match e {
                Experiment::Growth { model, base_n, steps, step, avg_degree, m, init } => run_growth(&GrowthParams {
                    model: model.parse::<GrowthModel>()?,
                    base_n,
                    steps,
                    step,
                    avg_degree,
                    m,
                    init,
                    seed: g.seed,
                    density,
                })?
                .to_csv(),
                Experiment::Trees { ks, base_n, steps, step } => run_trees(&TreeParams {
                    ks,
                    base_n,
                    steps,
                    step,
                    density,
                })?
                .to_csv(),
                Experiment::Rate { family, sizes, avg_degree, trials } => {
                    let case = match family.as_str() {
                        "complete" => RateCase::Complete,
                        "er" => RateCase::ErEdgeDeletion { avg_degree, trials },
                        "cube" => RateCase::Hypercube,
                        other => {
                            return Err(Error::InvalidParameter(format!(
                                "unknown rate family {other:?}; expected complete, er or cube"
                            )))
                        }
                    };
                    let r = run_rate(&RateParams { case, sizes, seed: g.seed, density })?;
                    match (&r.fit, &r.fit_error) {
                        (Some(f), _) => eprintln!("slope {:.6} residual {:.3e}", f.slope, f.residual),
                        (None, Some(e)) => eprintln!("fit skipped: {e}"),
                        _ => {}
                    }
                    r.to_csv()
                }
            };
            g.emit(&csv)?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
