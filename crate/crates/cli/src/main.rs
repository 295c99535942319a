use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use graphspin::ensemble::{preset, run_sweep, write_atomic, write_sweep, ExperimentConfig, PRESETS};
use graphspin::format::sig12;
use graphspin::graphs::{site_ordering, OrderingKind};
use graphspin::hamiltonian::build;
use graphspin::observables::{corr_matrix, Axis};
use graphspin::solvers::{
    complete_xxz_spectrum, critical_point, ground_state, phase_flip_point, spectral_density, write_spectrum_csv,
    SolverOptions,
};
use graphspin::theorybench::{
    cut_concentration, diffmax_scaling, free_energy_convergence, lemma_s1_check, study_csv, study_sidecar,
    theorem_s2_check, ScalingFit,
};
use graphspin::{generate, preset_tfi, preset_xxz, EnsembleSpec, Error, RngSeed};

#[derive(Parser)]
#[command(name = "graphspin", version, about = "Spin models on graphs")]
struct Cli {
    /// Master seed for anything random.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Output file; stdout when absent (sweeps default to the config path).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads; all cores when absent.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a configured sweep and write the sweep and summary CSVs.
    Run {
        #[arg(long, conflicts_with = "preset", required_unless_present = "preset")]
        config: Option<PathBuf>,
        #[arg(long)]
        preset: Option<String>,
    },
    /// Draw one graph and write it as JSON.
    GenGraph {
        #[command(flatten)]
        graph: GraphArgs,
    },
    /// Closed-form complete-graph XXZ spectrum with degeneracies.
    Spectrum {
        #[arg(long = "L")]
        l: usize,
        #[arg(long, allow_hyphen_values = true)]
        delta: f64,
        #[arg(long = "J", default_value_t = 1.0, allow_hyphen_values = true)]
        j: f64,
    },
    /// Degeneracy-weighted histogram of the complete-graph spectrum.
    Density {
        #[arg(long = "L")]
        l: usize,
        #[arg(long, allow_hyphen_values = true)]
        delta: f64,
        #[arg(long = "J", default_value_t = 1.0, allow_hyphen_values = true)]
        j: f64,
        #[arg(long, default_value_t = 50)]
        bins: usize,
    },
    /// Semiclassical critical anisotropy of a cut graph.
    CriticalPoint {
        #[arg(long, default_value_t = 0.5)]
        lambda: f64,
        #[arg(long, default_value_t = 0.5)]
        p1: f64,
        #[arg(long, default_value_t = 1.0)]
        p2: f64,
        #[arg(long = "J", default_value_t = 1.0)]
        j: f64,
        /// Upper end of the numerical phase-boundary search.
        #[arg(long, default_value_t = 20.0)]
        delta_max: f64,
    },
    /// Scaling studies and bound checks.
    #[command(subcommand)]
    Theory(Theory),
    /// Ground-state correlation matrix of one drawn graph as an L x L CSV.
    CorrImage {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long, value_parser = ["xxz", "tfi"], default_value = "xxz")]
        model: String,
        /// Delta for xxz, h for tfi.
        #[arg(long, allow_hyphen_values = true)]
        value: f64,
        #[arg(long = "J", default_value_t = 1.0)]
        j: f64,
        #[arg(long, value_parser = ["x", "y", "z"], default_value = "z")]
        axis: String,
        #[arg(long, value_parser = ["identity", "cut_blocks", "irregular_center"])]
        ordering: Option<String>,
    },
}

#[derive(Args)]
struct GraphArgs {
    /// Ensemble as JSON, e.g. '{"kind":"er","p":0.5}'.
    #[arg(long)]
    ensemble: String,
    #[arg(long = "L")]
    l: usize,
    /// Draw index within the seed stream.
    #[arg(long, default_value_t = 0)]
    draw: u64,
}

#[derive(Subcommand)]
enum Theory {
    /// Largest |eigenvalue| of H(Complete) - H(ER(p)) versus L.
    Diffmax {
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        #[arg(long = "L", value_delimiter = ',', required = true)]
        ls: Vec<usize>,
        #[arg(long, default_value_t = 10)]
        draws: usize,
        #[arg(long, default_value_t = 1.5)]
        delta: f64,
        #[arg(long = "J", default_value_t = 1.0)]
        j: f64,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// Free-energy bound on random Hermitian and graph-Hamiltonian pairs.
    LemmaS1 {
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 64)]
        dim: usize,
        #[arg(long, value_delimiter = ',', default_value = "0.1,1,10,100")]
        betas: Vec<f64>,
    },
    /// Free-energy density gap between ER(p) and the complete graph.
    FreeEnergy {
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        #[arg(long = "L", value_delimiter = ',', required = true)]
        ls: Vec<usize>,
        #[arg(long, default_value_t = 10)]
        draws: usize,
        #[arg(long, value_delimiter = ',', default_value = "1")]
        betas: Vec<f64>,
        #[arg(long, default_value_t = 1.5)]
        delta: f64,
        #[arg(long = "J", default_value_t = 1.0)]
        j: f64,
    },
    /// Largest balanced-cut deviation of ER(p) from pL^2/4.
    Cuts {
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        #[arg(long = "L", value_delimiter = ',', required = true)]
        ls: Vec<usize>,
        #[arg(long, default_value_t = 10)]
        draws: usize,
        /// Sample this many cuts instead of enumerating all of them.
        #[arg(long)]
        sampled: Option<usize>,
    },
    /// Cut-graph ground energy density against the collective two-spin model.
    Pair {
        #[arg(long, default_value_t = 0.5)]
        lambda: f64,
        #[arg(long, default_value_t = 0.5)]
        p1: f64,
        #[arg(long, default_value_t = 1.0)]
        p2: f64,
        #[arg(long, default_value_t = 1.5)]
        delta: f64,
        #[arg(long = "J", default_value_t = 1.0)]
        j: f64,
        #[arg(long = "L", value_delimiter = ',', required = true)]
        ls: Vec<usize>,
        #[arg(long, default_value_t = 5)]
        draws: usize,
    },
}

/// Exit status 1 for anything the user can fix in the arguments or config.
fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Config(_) | Error::Parameter(_) | Error::Capacity { .. } | Error::Json(_) => 1,
        _ => 2,
    }
}

fn emit(out: Option<&Path>, text: &str) -> graphspin::Result<()> {
    match out {
        Some(p) => write_atomic(p, text.as_bytes()),
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

/// CSV to `--out` with the JSON sidecar beside it, or CSV to stdout and
/// JSON to stderr.
fn emit_study(out: Option<&Path>, fits: &[ScalingFit]) -> graphspin::Result<()> {
    let csv = study_csv(fits)?;
    let json = study_sidecar(fits);
    match out {
        Some(p) => {
            write_atomic(p, csv.as_bytes())?;
            write_atomic(&p.with_extension("json"), json.as_bytes())
        }
        None => {
            std::io::stdout().write_all(csv.as_bytes())?;
            std::io::stderr().write_all(json.as_bytes())?;
            Ok(())
        }
    }
}

fn parse_ensemble(text: &str) -> graphspin::Result<EnsembleSpec> {
    serde_json::from_str(text).map_err(|e| Error::Config(format!("ensemble: {e}")))
}

fn parse_ordering(name: &str) -> OrderingKind {
    match name {
        "cut_blocks" => OrderingKind::CutBlocks,
        "irregular_center" => OrderingKind::IrregularCenter,
        _ => OrderingKind::Identity,
    }
}

fn run(cli: Cli) -> graphspin::Result<()> {
    let seed = cli.seed.unwrap_or(0);
    let out = cli.out.as_deref();
    match cli.command {
        Command::Run { config, preset: name } => {
            let mut c = match (config, name) {
                (Some(path), _) => ExperimentConfig::read(&path)?,
                (None, Some(name)) => preset(&name).map_err(|_| {
                    Error::Config(format!("unknown preset {name:?}; known: {}", PRESETS.join(", ")))
                })?,
                (None, None) => unreachable!("clap requires one of them"),
            };
            if let Some(s) = cli.seed {
                c.master_seed = s;
            }
            let path = out
                .map(Path::to_path_buf)
                .or_else(|| c.output.clone())
                .unwrap_or_else(|| PathBuf::from("sweep.csv"));
            let result = run_sweep(&c)?;
            for p in write_sweep(&result, &path)? {
                eprintln!("wrote {}", p.display());
            }
            if !result.failures.is_empty() {
                eprintln!("{} of {} cells failed", result.failures.len(), result.failures.len() + result.records.len());
            }
            Ok(())
        }
        Command::GenGraph { graph } => {
            let spec = parse_ensemble(&graph.ensemble)?;
            let g = generate(&spec, graph.l, RngSeed::new(seed, graph.draw))?;
            emit(out, &(g.to_json() + "\n"))
        }
        Command::Spectrum { l, delta, j } => {
            let entries = complete_xxz_spectrum(l, j, delta)?;
            let mut buf = Vec::new();
            write_spectrum_csv(&entries, &mut buf)?;
            emit(out, std::str::from_utf8(&buf).expect("ascii"))
        }
        Command::Density { l, delta, j, bins } => {
            let d = spectral_density(l, j, delta, bins)?;
            let mut s = String::from("bin_lo,bin_hi,mass\n");
            for (i, m) in d.mass.iter().enumerate() {
                s += &format!("{},{},{}\n", sig12(d.edges[i]), sig12(d.edges[i + 1]), sig12(*m));
            }
            emit(out, &s)
        }
        Command::CriticalPoint { lambda, p1, p2, j, delta_max } => {
            EnsembleSpec::Cut { lambda, p1, p2 }.validate(2)?;
            let dc = critical_point(lambda, p1, p2, j);
            let flip = phase_flip_point(lambda, p1, p2, j, delta_max, 1e-10);
            let v = serde_json::json!({
                "lambda": lambda, "p1": p1, "p2": p2, "J": j,
                "critical_point": if dc.is_finite() { serde_json::json!(dc) } else { serde_json::Value::Null },
                "phase_flip": flip,
            });
            emit(out, &(serde_json::to_string_pretty(&v)? + "\n"))
        }
        Command::Theory(t) => match t {
            Theory::Diffmax { p, ls, draws, delta, j, tol } => {
                let opts = SolverOptions { tol, ..Default::default() };
                let fit = diffmax_scaling(&ls, &preset_xxz(j, delta), p, draws, seed, &opts)?;
                emit_study(out, &[fit])
            }
            Theory::LemmaS1 { trials, dim, betas } => {
                let r = lemma_s1_check(trials, dim, &betas, seed)?;
                emit(out, &(serde_json::to_string_pretty(&r)? + "\n"))
            }
            Theory::FreeEnergy { p, ls, draws, betas, delta, j } => {
                let fits = free_energy_convergence(&ls, p, &preset_xxz(j, delta), &betas, draws, seed)?;
                emit_study(out, &fits)
            }
            Theory::Cuts { p, ls, draws, sampled } => {
                let fit = cut_concentration(&ls, p, draws, sampled, seed)?;
                emit_study(out, &[fit])
            }
            Theory::Pair { lambda, p1, p2, delta, j, ls, draws } => {
                let fit = theorem_s2_check(&ls, lambda, p1, p2, j, delta, draws, seed)?;
                emit_study(out, &[fit])
            }
        },
        Command::CorrImage { graph, model, value, j, axis, ordering } => {
            let spec = parse_ensemble(&graph.ensemble)?;
            let s = RngSeed::new(seed, graph.draw);
            let g = generate(&spec, graph.l, s)?;
            let params = match model.as_str() {
                "tfi" => preset_tfi(value, true),
                _ => preset_xxz(j, value),
            };
            let gs = ground_state(&build(&g, &params)?, &SolverOptions::default(), s.child(1))?;
            let axis = match axis.as_str() {
                "x" => Axis::X,
                "y" => Axis::Y,
                _ => Axis::Z,
            };
            let kind = match ordering {
                Some(o) => parse_ordering(&o),
                None => match spec {
                    EnsembleSpec::Cut { .. } => OrderingKind::CutBlocks,
                    EnsembleSpec::Antiregular => OrderingKind::IrregularCenter,
                    _ => OrderingKind::Identity,
                },
            };
            let corr = corr_matrix(&gs.state, axis)?.reordered(&site_ordering(&g, kind)?)?;
            let mut buf = Vec::new();
            corr.write_csv(&mut buf)?;
            emit(out, std::str::from_utf8(&buf).expect("ascii"))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let pool = match cli.threads {
        Some(0) => {
            eprintln!("error: --threads must be positive");
            return ExitCode::from(1);
        }
        Some(n) => rayon::ThreadPoolBuilder::new().num_threads(n).build(),
        None => rayon::ThreadPoolBuilder::new().build(),
    };
    let pool = match pool {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    match pool.install(|| run(cli)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
