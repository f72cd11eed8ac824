//! `ecoord`: hyperbolic metrics from edge coordinates on the command line.

mod io;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use ecoord::coords::ECoordinate;
use ecoord::polytope::{check_cycles, check_feasibility, describe, t_from_shifts, Witness};
use ecoord::realize::verify_metric;
use ecoord::solver::{energy, extract_metric, forward_map, maximize, random_start, SolveConfig};
use ecoord::{Error, HexComplex};
use rand::rngs::StdRng;
use rand::SeedableRng;
use serde_json::json;

use io::{labelled, read_edge_values, read_triangulation, to_json};

const EXIT_INPUT: u8 = 2;
const EXIT_INFEASIBLE: u8 = 3;
const EXIT_NO_CONVERGENCE: u8 = 4;
const EXIT_VERIFICATION: u8 = 5;

/// Tolerance for the geometric check of solved metrics.
const VERIFY_TOL: f64 = 1e-8;

#[derive(Parser)]
#[command(
    name = "ecoord",
    version,
    about = "Hyperbolic metrics on triangulated surfaces from edge coordinates"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a triangulation file and print its counts and boundary cycles.
    Validate { file: PathBuf },
    /// Decide whether an E-coordinate comes from a hyperbolic metric.
    Feasible {
        file: PathBuf,
        #[arg(long)]
        z: PathBuf,
        /// Also test against at most this many enumerated fundamental cycles.
        #[arg(long, default_value_t = 10_000)]
        enumerate_limit: usize,
    },
    /// Compute the metric with the given E-coordinate.
    Solve {
        file: PathBuf,
        #[arg(long)]
        z: PathBuf,
        /// Gradient and edge-mismatch tolerance.
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long, default_value_t = 200)]
        max_iter: usize,
        /// Write the result here instead of standard output.
        #[arg(long)]
        json_out: Option<PathBuf>,
    },
    /// E-coordinate and boundary lengths of the metric with given edge lengths.
    Forward {
        file: PathBuf,
        #[arg(long)]
        lengths: PathBuf,
    },
    /// Energy along random segments of the slice, as CSV.
    EnergyProfile {
        file: PathBuf,
        #[arg(long)]
        z: PathBuf,
        /// Number of segments.
        #[arg(long, default_value_t = 1)]
        samples: usize,
        /// Points per segment, endpoints included.
        #[arg(long, default_value_t = 21)]
        points: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Boundary equalities and fundamental-cycle inequalities of the polytope.
    Polytope {
        file: PathBuf,
        #[arg(long, default_value_t = 10_000)]
        enumerate_limit: usize,
    },
}

#[derive(Debug)]
pub struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    pub fn input(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::Domain(_) | Error::Invalid(_) => EXIT_INPUT,
            Error::Infeasible(_) => EXIT_INFEASIBLE,
            Error::NonConvergence { .. } => EXIT_NO_CONVERGENCE,
            Error::Inconsistent(_) => EXIT_VERIFICATION,
            Error::Lp(_) => 1,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn coordinate(c: &HexComplex, path: &Path) -> Result<ECoordinate, Failure> {
    Ok(ECoordinate::new(c, read_edge_values(c, path)?)?)
}

fn run(cmd: Command) -> Result<(), Failure> {
    match cmd {
        Command::Validate { file } => validate(&file),
        Command::Feasible {
            file,
            z,
            enumerate_limit,
        } => feasible(&file, &z, enumerate_limit),
        Command::Solve {
            file,
            z,
            tol,
            max_iter,
            json_out,
        } => solve(&file, &z, tol, max_iter, json_out),
        Command::Forward { file, lengths } => forward(&file, &lengths),
        Command::EnergyProfile {
            file,
            z,
            samples,
            points,
            seed,
        } => energy_profile(&file, &z, samples, points, seed),
        Command::Polytope {
            file,
            enumerate_limit,
        } => polytope(&file, enumerate_limit),
    }
}

fn validate(file: &Path) -> Result<(), Failure> {
    let c = read_triangulation(file)?;
    println!(
        "hexagons={} edges={} xarcs={} chi={} boundary={}",
        c.hexagon_count(),
        c.edge_count(),
        c.arc_count(),
        c.euler_characteristic(),
        c.boundary_count()
    );
    for (k, b) in c.boundary_components().iter().enumerate() {
        let names: Vec<&str> = b.cycle.edges().into_iter().map(|e| c.label(e)).collect();
        println!("boundary {k}: {}", names.join(" "));
    }
    for w in c.warnings() {
        eprintln!("warning: {w}");
    }
    Ok(())
}

fn feasible(file: &Path, z: &Path, limit: usize) -> Result<(), Failure> {
    let c = read_triangulation(file)?;
    let z = coordinate(&c, z)?;
    let report = check_feasibility(&c, &z)?;
    let enumeration = c.enumerate_fundamental_cycles(limit);
    let violated: Vec<_> = check_cycles(&z, &enumeration.cycles)
        .into_iter()
        .map(|(cyc, sum)| {
            let names: Vec<&str> = cyc.edges().into_iter().map(|e| c.label(e)).collect();
            json!({ "edges": names, "sum": sum })
        })
        .collect();
    let witness = match &report.witness {
        Witness::Certificate { direction, value } => json!({
            "kind": "certificate",
            "direction": labelled(&c, direction),
            "value": value,
        }),
        w => serde_json::to_value(w).expect("witness serializes"),
    };
    let out = json!({
        "feasible": report.feasible,
        "verdict": report.verdict,
        "lp_minimum": report.lp_minimum,
        "edges": labelled(&c, z.values()),
        "boundary_values": report.boundary_values,
        "witness": witness,
        "violated_cycles": violated,
        "cycles_checked": enumeration.cycles.len(),
        "enumeration_truncated": enumeration.truncated,
    });
    println!("{}", to_json(&out));
    if report.feasible {
        Ok(())
    } else {
        Err(Failure {
            code: EXIT_INFEASIBLE,
            message: format!("not in the polytope (LP minimum {:e})", report.lp_minimum),
        })
    }
}

fn solve(
    file: &Path,
    z: &Path,
    tol: f64,
    max_iter: usize,
    json_out: Option<PathBuf>,
) -> Result<(), Failure> {
    let c = read_triangulation(file)?;
    let z = coordinate(&c, z)?;
    let cfg = SolveConfig {
        gradient_tol: tol,
        mismatch_tol: tol,
        max_iterations: max_iter,
        ..SolveConfig::default()
    };
    let (t, report) = maximize(&c, &z, &cfg)?;
    let metric = extract_metric(&c, &t, &cfg)?;
    let check = verify_metric(&c, &metric, VERIFY_TOL);
    let hexagons: Vec<_> = metric
        .hexagon_x
        .iter()
        .zip(&metric.hexagon_y)
        .map(|(x, y)| json!({ "x": x.values(), "y": y.values() }))
        .collect();
    let out = json!({
        "converged": report.converged,
        "verified": check.passed,
        "edges": labelled(&c, &metric.edge_lengths),
        "arc_lengths": metric.arc_lengths,
        "hexagons": hexagons,
        "boundary_lengths": metric.boundary_lengths,
        "mismatch": metric.mismatch,
        "report": {
            "iterations": report.iterations,
            "gradient_norm": report.gradient_norm,
            "mismatch": report.mismatch,
            "energy": report.energy,
            "achieved": labelled(&c, &report.achieved),
        },
        "verification": {
            "tolerance": check.tolerance,
            "edge_residuals": check.edge_residuals,
            "boundary_residuals": check.boundary_residuals,
            "failures": check.failures,
        },
    });
    let text = to_json(&out);
    match json_out {
        Some(path) => std::fs::write(&path, text + "\n")
            .map_err(|e| Failure::input(format!("{}: {e}", path.display())))?,
        None => println!("{text}"),
    }
    if check.passed {
        Ok(())
    } else {
        Err(Failure {
            code: EXIT_VERIFICATION,
            message: check.failures.join("; "),
        })
    }
}

fn forward(file: &Path, lengths: &Path) -> Result<(), Failure> {
    let c = read_triangulation(file)?;
    let lengths = read_edge_values(&c, lengths)?;
    let (z, boundary) = forward_map(&c, &lengths)?;
    let out = json!({
        "edges": labelled(&c, z.values()),
        "boundary_lengths": boundary,
    });
    println!("{}", to_json(&out));
    Ok(())
}

fn energy_profile(
    file: &Path,
    z: &Path,
    samples: usize,
    points: usize,
    seed: u64,
) -> Result<(), Failure> {
    let c = read_triangulation(file)?;
    let z = coordinate(&c, z)?;
    let mut rng = StdRng::seed_from_u64(seed);
    let mut csv = String::from("segment,s,energy\n");
    if samples > 0 && points < 2 {
        return Err(Failure::input("--points must be at least 2"));
    }
    for k in 0..samples {
        let a = random_start(&c, &z, &mut rng)?;
        let b = random_start(&c, &z, &mut rng)?;
        for i in 0..points {
            let s = i as f64 / (points - 1) as f64;
            let p: Vec<f64> = a
                .iter()
                .zip(&b)
                .map(|(u, v)| (1.0 - s) * u + s * v)
                .collect();
            let v = energy(&c, &t_from_shifts(&c, &z, &p))?;
            csv.push_str(&format!("{k},{s:.16e},{v:.16e}\n"));
        }
    }
    print!("{csv}");
    Ok(())
}

fn polytope(file: &Path, limit: usize) -> Result<(), Failure> {
    let c = read_triangulation(file)?;
    let d = describe(&c, limit);
    let names = |rows: &[Vec<usize>]| -> Vec<Vec<String>> {
        rows.iter()
            .map(|r| r.iter().map(|&e| c.label(e).to_string()).collect())
            .collect()
    };
    let out = json!({
        "equalities": names(&d.equalities),
        "inequalities": names(&d.inequalities),
        "truncated": d.truncated,
    });
    println!("{}", to_json(&out));
    Ok(())
}
