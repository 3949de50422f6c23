use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use qudo_core::models::{qubo_to_hobo, Model};
use qudo_core::qaoa::{grid_search, run_qaoa, QaoaResult, REGISTER_LIMIT};
use qudo_core::solvers::{solve_anneal, solve_exhaustive, AnnealConfig, SolveError, SolveResult, DEFAULT_CAP};
use qudo_core::transforms::{default_invalid_penalty, qudo_to_qubo, tqudo_to_hobo};
use qudo_core::validators::validate;

use crate::files::{read_solution, write_json, InstanceFile, Layout, ModelFile, SolveOutput};
use crate::CliError;

#[derive(Debug, Parser)]
#[command(name = "qudo", version, about = "Build, convert, solve and check QUBO/QUDO/T-QUDO/HOBO models")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    /// Exhaustive when the search space fits under --cap, annealing otherwise.
    Auto,
    Exhaustive,
    Anneal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Target {
    Qubo,
    Hobo,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Encode an instance file into a model file.
    Build {
        instance: PathBuf,
        #[arg(short, long)]
        out: PathBuf,
    },
    /// Rewrite a model in binary form, keeping the decoder.
    Convert {
        model: PathBuf,
        #[arg(long, value_enum)]
        to: Target,
        #[arg(short, long)]
        out: PathBuf,
    },
    /// Minimize a model and decode the best assignment.
    Solve {
        model: PathBuf,
        #[arg(long, value_enum, default_value = "auto")]
        method: Method,
        /// Largest search space enumerated exhaustively.
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: u128,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        threads: usize,
        #[arg(long)]
        sweeps: Option<usize>,
        #[arg(long)]
        restarts: Option<usize>,
        #[arg(long)]
        t_initial: Option<f64>,
        #[arg(long)]
        t_final: Option<f64>,
        /// Where to write the solve output JSON.
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Check a solution against the rules; exit 0 iff accepted.
    Validate { instance: PathBuf, solution: PathBuf },
    /// Simulate QAOA on a model's register.
    Qaoa {
        model: PathBuf,
        #[arg(long, default_value_t = 1)]
        layers: usize,
        /// Comma-separated `gamma,beta` per layer.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, conflicts_with = "grid")]
        angles: Option<Vec<f64>>,
        /// Single-layer grid search with this many points per angle.
        #[arg(long)]
        grid: Option<usize>,
    },
}

pub fn run(cli: &Cli) -> Result<(), CliError> {
    match &cli.command {
        Command::Build { instance, out } => build(instance, out),
        Command::Convert { model, to, out } => convert(model, *to, out),
        Command::Solve {
            model,
            method,
            cap,
            seed,
            threads,
            sweeps,
            restarts,
            t_initial,
            t_final,
            out,
        } => {
            let defaults = AnnealConfig::default();
            let cfg = AnnealConfig {
                t_initial: t_initial.unwrap_or(defaults.t_initial),
                t_final: t_final.unwrap_or(defaults.t_final),
                sweeps: sweeps.unwrap_or(defaults.sweeps),
                restarts: restarts.unwrap_or(defaults.restarts),
                seed: *seed,
                threads: *threads,
            };
            solve(model, *method, *cap, &cfg, out.as_deref())
        }
        Command::Validate { instance, solution } => check(instance, solution),
        Command::Qaoa {
            model,
            layers,
            angles,
            grid,
        } => qaoa(model, *layers, angles.as_deref(), *grid),
    }
}

fn dims_summary(dims: &[usize]) -> String {
    let mut counts: Vec<(usize, usize)> = Vec::new();
    for &d in dims {
        match counts.iter_mut().find(|(v, _)| *v == d) {
            Some((_, c)) => *c += 1,
            None => counts.push((d, 1)),
        }
    }
    counts
        .iter()
        .map(|(d, c)| format!("{c} x dim {d}"))
        .collect::<Vec<_>>()
        .join(", ")
}

fn describe(model: &Model) -> String {
    let dims = model.dims();
    format!("{} model, {} variables ({})", model.formalism(), dims.len(), dims_summary(&dims))
}

fn build(instance: &std::path::Path, out: &std::path::Path) -> Result<(), CliError> {
    let file = InstanceFile::read(instance)?;
    let enc = file.encode()?;
    let layout = Layout {
        decoder: enc.layout.clone(),
        encodings: Vec::new(),
        feasibility_threshold: enc.feasibility_threshold,
    };
    write_json(out, &ModelFile::from_model(&enc.model, Some(layout)))?;
    println!("{}: {}", file.problem, describe(&enc.model));
    match enc.feasibility_threshold {
        Some(t) => println!("feasibility threshold {t}"),
        None => println!("no feasibility threshold for these penalty weights"),
    }
    Ok(())
}

fn convert(path: &std::path::Path, to: Target, out: &std::path::Path) -> Result<(), CliError> {
    let file = ModelFile::read(path)?;
    let model = file.to_model()?;
    let mut layout = file.layout.clone();
    let fail = |e: &dyn std::fmt::Display| CliError::Failed(e.to_string());
    let (converted, encoding) = match (to, &model) {
        (Target::Qubo, Model::Qudo(m)) => {
            let (q, enc) = qudo_to_qubo(m).map_err(|e| fail(&e))?;
            (Model::Qudo(q), Some(enc))
        }
        (Target::Qubo, other) => {
            return Err(CliError::Usage(format!(
                "{} models have no quadratic binary form here; use --to hobo",
                other.formalism()
            )))
        }
        (Target::Hobo, Model::Qudo(m)) if m.is_qubo() => (Model::Hobo(qubo_to_hobo(m).map_err(|e| fail(&e))?), None),
        (Target::Hobo, Model::Qudo(m)) => {
            let (q, enc) = qudo_to_qubo(m).map_err(|e| fail(&e))?;
            (Model::Hobo(qubo_to_hobo(&q).map_err(|e| fail(&e))?), Some(enc))
        }
        (Target::Hobo, Model::TQudo(m)) => {
            // keep invalid codewords above the feasibility threshold too
            let lift = layout
                .as_ref()
                .and_then(|l| l.feasibility_threshold)
                .map_or(0.0, |t| (t - m.offset()).max(0.0));
            let penalty = default_invalid_penalty(m) + lift;
            let (h, enc) = tqudo_to_hobo(m, Some(penalty)).map_err(|e| fail(&e))?;
            (Model::Hobo(h), Some(enc))
        }
        (Target::Hobo, Model::Hobo(h)) => (Model::Hobo(h.clone()), None),
    };
    if let (Some(l), Some(enc)) = (layout.as_mut(), encoding) {
        l.encodings.push(enc);
    }
    write_json(out, &ModelFile::from_model(&converted, layout))?;
    println!("{} -> {}", describe(&model), describe(&converted));
    Ok(())
}

fn solve(
    path: &std::path::Path,
    method: Method,
    cap: u128,
    cfg: &AnnealConfig,
    out: Option<&std::path::Path>,
) -> Result<(), CliError> {
    let file = ModelFile::read(path)?;
    let model = file.to_model()?;
    let size = model
        .dims()
        .iter()
        .try_fold(1u128, |acc, &d| acc.checked_mul(d as u128));
    let method = match method {
        Method::Auto if size.is_some_and(|s| s <= cap) => Method::Exhaustive,
        Method::Auto => Method::Anneal,
        m => m,
    };
    let result: SolveResult = match method {
        Method::Exhaustive => solve_exhaustive(&model, cap).map_err(|e| match e {
            SolveError::SpaceTooLarge { .. } => CliError::Capacity(format!("{e}; try --method anneal")),
            other => CliError::Failed(other.to_string()),
        })?,
        _ => solve_anneal(&model, cfg).map_err(|e| match e {
            SolveError::Config(msg) => CliError::Usage(msg),
            other => CliError::Failed(other.to_string()),
        })?,
    };
    let method_name = if method == Method::Exhaustive { "exhaustive" } else { "anneal" };

    let mut output = SolveOutput {
        method: method_name.into(),
        result: result.clone(),
        source_values: None,
        solution: None,
        feasible: None,
        decode_error: None,
    };
    if let Some(layout) = &file.layout {
        output.feasible = layout.feasibility_threshold.map(|t| result.best_cost <= t);
        match layout.decode(result.best_assignment.values()) {
            Ok((source, sol)) => {
                output.source_values = Some(source);
                output.solution = Some(sol);
            }
            Err(e) => output.decode_error = Some(e),
        }
    }

    println!("method {method_name}");
    println!("best cost {}", result.best_cost);
    println!("assignment {:?}", result.best_assignment.values());
    if let Some(optima) = &result.all_optima {
        println!("optimal assignments {}", optima.len());
    }
    println!("evaluations {}", result.evaluations);
    if let Some(f) = output.feasible {
        println!("within feasibility threshold {f}");
    }
    if let Some(sol) = &output.solution {
        println!("solution {}", serde_json::to_string(sol).map_err(|e| CliError::Io(e.to_string()))?);
    }
    if let Some(e) = &output.decode_error {
        eprintln!("cannot decode best assignment: {e}");
    }
    if let Some(out) = out {
        write_json(out, &output)?;
    }
    Ok(())
}

fn check(instance: &std::path::Path, solution: &std::path::Path) -> Result<(), CliError> {
    let inst = InstanceFile::read(instance)?.instance()?;
    let sol = read_solution(solution)?;
    let report = validate(&inst, &sol).map_err(|e| CliError::Schema(e.to_string()))?;
    for (name, value) in &report.checks {
        println!("{name} {value}");
    }
    println!("accepted {}", report.accepted);
    if report.accepted {
        Ok(())
    } else {
        Err(CliError::Rejected("solution rejected".into()))
    }
}

fn qaoa(path: &std::path::Path, layers: usize, angles: Option<&[f64]>, grid: Option<usize>) -> Result<(), CliError> {
    let file = ModelFile::read(path)?;
    let model = file.to_model()?;
    let total = model
        .dims()
        .iter()
        .try_fold(1u128, |acc, &d| acc.checked_mul(d as u128));
    if !total.is_some_and(|t| t <= REGISTER_LIMIT as u128) {
        let shown = total.map_or_else(|| "more than 2^128".to_string(), |t| t.to_string());
        return Err(CliError::Capacity(format!(
            "register of total dimension {shown} exceeds the simulator limit of {REGISTER_LIMIT}"
        )));
    }
    let sim = |e: qudo_core::qaoa::QaoaError| CliError::Failed(e.to_string());
    let result: QaoaResult = match (angles, grid) {
        (_, Some(steps)) => {
            if layers != 1 {
                return Err(CliError::Usage("--grid searches a single layer; drop --layers".into()));
            }
            let (g, b, r) = grid_search(&model, steps).map_err(sim)?;
            println!("gamma {g}");
            println!("beta {b}");
            r
        }
        (Some(a), None) => {
            if a.len() != 2 * layers {
                return Err(CliError::Usage(format!(
                    "--angles needs {} values (gamma,beta per layer), got {}",
                    2 * layers,
                    a.len()
                )));
            }
            let gammas: Vec<f64> = a.iter().step_by(2).copied().collect();
            let betas: Vec<f64> = a.iter().skip(1).step_by(2).copied().collect();
            run_qaoa(&model, layers, &gammas, &betas).map_err(sim)?
        }
        (None, None) => return Err(CliError::Usage("give --angles or --grid".into())),
    };
    println!("expected cost {}", result.expected_cost);
    println!("top assignment {:?}", result.best_sampled_assignment.values());
    println!("probability {}", result.best_probability);
    println!("cost {}", result.best_cost);
    if let Some(layout) = &file.layout {
        if let Ok((_, sol)) = layout.decode(result.best_sampled_assignment.values()) {
            println!("solution {}", serde_json::to_string(&sol).map_err(|e| CliError::Io(e.to_string()))?);
        }
    }
    Ok(())
}
