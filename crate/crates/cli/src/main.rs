use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use ccgeom::harness::{intersection_json, parse_scene, render, run_experiment, symmetry_json, Experiment};
use ccgeom::space::ModelKind;
use ccgeom::symmetry::classify;
use ccgeom::GeomError;
use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "ccgeom", version, about = "Intersections and symmetries of convex bodies in S², E² and H²")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Intersect all bodies of a scene.
    Intersect {
        #[arg(long)]
        scene: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Classify the symmetries of the intersection of a scene.
    Symmetry {
        #[arg(long)]
        scene: PathBuf,
        #[arg(long, default_value_t = ccgeom::config::SYMMETRY_TOL)]
        tol: f64,
        #[arg(long)]
        report: PathBuf,
    },
    /// Run an experiment and write its report.
    Verify {
        #[arg(long, value_parser = parse_experiment)]
        experiment: Experiment,
        #[arg(long, default_value_t = 50)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Draw a scene as SVG.
    Render {
        #[arg(long)]
        scene: PathBuf,
        #[arg(long, value_enum, default_value_t = Model::Klein)]
        model: Model,
        #[arg(long)]
        svg: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Model {
    Klein,
    Poincare,
}

fn parse_experiment(s: &str) -> Result<Experiment, String> {
    s.parse().map_err(|e: GeomError| e.to_string())
}

/// Failures that are the caller's fault exit with 2.
enum Failure {
    Usage(anyhow::Error),
    Verdict(anyhow::Error),
}

fn classify_error(e: GeomError) -> Failure {
    match e {
        GeomError::Parse { .. } | GeomError::Io(_) => Failure::Usage(e.into()),
        other => Failure::Verdict(other.into()),
    }
}

fn write(path: &PathBuf, text: String) -> Result<(), Failure> {
    std::fs::write(path, text).with_context(|| format!("writing {}", path.display())).map_err(Failure::Usage)
}

fn execute(cmd: Command) -> Result<bool, Failure> {
    match cmd {
        Command::Intersect { scene, out } => {
            let scene = parse_scene(&scene).map_err(classify_error)?;
            let result = scene.intersection().map_err(classify_error)?;
            let json = intersection_json(&result).map_err(classify_error)?;
            write(&out, serde_json::to_string_pretty(&json).expect("json"))?;
            println!("{}", result.label());
            Ok(true)
        }
        Command::Symmetry { scene, tol, report } => {
            let scene = parse_scene(&scene).map_err(classify_error)?;
            let result = scene.intersection().map_err(classify_error)?;
            let region = result.region().ok_or_else(|| Failure::Verdict(GeomError::EmptyInterior.into()))?;
            let rep = classify(region, tol).map_err(classify_error)?;
            write(&report, serde_json::to_string_pretty(&symmetry_json(&rep)).expect("json"))?;
            println!("{}", rep.classification.label());
            Ok(true)
        }
        Command::Verify { experiment, trials, seed, csv, json } => {
            if trials == 0 {
                return Err(Failure::Usage(anyhow::anyhow!("--trials must be at least 1")));
            }
            let report = run_experiment(experiment, trials, seed).map_err(classify_error)?;
            if let Some(p) = csv {
                write(&p, report.to_csv().map_err(classify_error)?)?;
            }
            if let Some(p) = json {
                write(&p, serde_json::to_string_pretty(&report.summary()).expect("json"))?;
            }
            let s = report.summary();
            println!("{}: {} passed, {} failed, {} skipped", experiment.id(), s["passed"], s["failed"], s["skipped"]);
            Ok(report.verdict())
        }
        Command::Render { scene, model, svg } => {
            let scene = parse_scene(&scene).map_err(classify_error)?;
            let model = match model {
                Model::Klein => ModelKind::Collinear,
                Model::Poincare => ModelKind::Conformal,
            };
            render(&scene, model, &svg).map_err(classify_error)?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Verdict(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
