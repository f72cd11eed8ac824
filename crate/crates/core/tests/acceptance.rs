//! Acceptance checks, one line per criterion. Run with `cargo test --test acceptance`.

use std::time::Instant;

use ecoord::complex::GluingSpec;
use ecoord::coords::{cycle_sum, ECoordinate, LengthStructure};
use ecoord::fixtures;
use ecoord::hexgeom::{
    lambda1, lambda2, theta, theta_by_path_integral, theta_grad, theta_hessian, x_to_t, TTriple,
    XTriple,
};
use ecoord::polytope::{check_cycles, check_feasibility, Witness, FEASIBILITY_TOL};
use ecoord::realize::verify_metric;
use ecoord::solver::{
    extract_metric, forward_map, maximize, maximize_from, random_start, HyperbolicMetric,
    SolveConfig,
};
use ecoord::HexComplex;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

const C: f64 = 1.316_957_896_924_816_7;

type Outcome = Result<String, String>;

/// Metrics produced by the solver criteria, checked geometrically at the end.
struct Solved {
    metrics: Vec<(&'static str, HyperbolicMetric)>,
}

fn solver_fixtures() -> Vec<(&'static str, GluingSpec)> {
    vec![
        ("pants", fixtures::pants()),
        ("one-holed torus", fixtures::one_holed_torus()),
        ("four hexagons", fixtures::four_hexagons()),
    ]
}

fn random_lengths(rng: &mut StdRng, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.gen_range(0.3..3.0)).collect()
}

fn random_x(rng: &mut StdRng, lo: f64, hi: f64) -> XTriple {
    XTriple::new([0; 3].map(|_| rng.gen_range(lo..hi))).unwrap()
}

fn sup_dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(p, q)| (p - q).abs())
        .fold(0.0, f64::max)
}

fn symmetric_pants(solved: &mut Solved) -> Outcome {
    let start = Instant::now();
    let c = HexComplex::build(&fixtures::pants()).unwrap();
    let z = ECoordinate::new(&c, vec![C; 3]).unwrap();
    let cfg = SolveConfig::default();
    let (t, report) = maximize(&c, &z, &cfg).map_err(|e| e.to_string())?;
    let m = extract_metric(&c, &t, &cfg).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed().as_secs_f64();
    let edge_err = m
        .edge_lengths
        .iter()
        .map(|y| (y - C).abs())
        .fold(0.0, f64::max);
    let cuff_err = m
        .boundary_lengths
        .iter()
        .map(|l| (l - 2.0 * C).abs())
        .fold(0.0, f64::max);
    solved.metrics.push(("pants symmetric", m));
    let detail = format!(
        "edge error {edge_err:.1e}, cuff error {cuff_err:.1e}, {} iterations, {elapsed:.3}s",
        report.iterations
    );
    if report.converged && edge_err < 1e-8 && cuff_err < 1e-8 && elapsed < 1.0 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn round_trip(solved: &mut Solved) -> Outcome {
    let mut rng = StdRng::seed_from_u64(11);
    let cfg = SolveConfig::default();
    let mut parts = Vec::new();
    let mut ok = true;
    for (name, spec) in solver_fixtures() {
        let c = HexComplex::build(&spec).unwrap();
        let start = Instant::now();
        let mut worst = 0.0f64;
        let mut failures = 0;
        for _ in 0..50 {
            let lengths = random_lengths(&mut rng, c.edge_count());
            let (z, _) = forward_map(&c, &lengths).unwrap();
            match maximize(&c, &z, &cfg).and_then(|(t, _)| extract_metric(&c, &t, &cfg)) {
                Ok(m) => {
                    worst = worst.max(sup_dist(&m.edge_lengths, &lengths));
                    solved.metrics.push((name, m));
                }
                Err(_) => failures += 1,
            }
        }
        let elapsed = start.elapsed().as_secs_f64();
        ok &= failures == 0 && worst < 1e-8 && elapsed < 10.0;
        parts.push(format!(
            "{name}: max error {worst:.1e}, {failures} failed, {elapsed:.2}s"
        ));
    }
    let detail = parts.join("; ");
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn uniqueness(solved: &mut Solved) -> Outcome {
    let mut rng = StdRng::seed_from_u64(12);
    let cfg = SolveConfig::default();
    let mut parts = Vec::new();
    let mut ok = true;
    for (name, spec) in solver_fixtures() {
        let c = HexComplex::build(&spec).unwrap();
        let mut worst = 0.0f64;
        let mut failures = 0;
        for _ in 0..20 {
            let lengths = random_lengths(&mut rng, c.edge_count());
            let (z, _) = forward_map(&c, &lengths).unwrap();
            let mut sols: Vec<Vec<f64>> = Vec::new();
            for _ in 0..3 {
                let s0 = random_start(&c, &z, &mut rng).unwrap();
                match maximize_from(&c, &z, &s0, &cfg) {
                    Ok((t, _)) => {
                        if let Ok(m) = extract_metric(&c, &t, &cfg) {
                            solved.metrics.push((name, m));
                        }
                        sols.push(t.values().to_vec());
                    }
                    Err(_) => failures += 1,
                }
            }
            for i in 0..sols.len() {
                for j in i + 1..sols.len() {
                    worst = worst.max(sup_dist(&sols[i], &sols[j]));
                }
            }
        }
        ok &= failures == 0 && worst < 1e-8;
        parts.push(format!("{name}: max spread {worst:.1e}, {failures} failed"));
    }
    let detail = parts.join("; ");
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn closed_form_vs_path_integral() -> Outcome {
    let mut rng = StdRng::seed_from_u64(13);
    let mut worst = 0.0f64;
    for _ in 0..200 {
        let t = x_to_t(random_x(&mut rng, 0.1, 4.0));
        let a = theta(t).map_err(|e| e.to_string())?;
        let b = theta_by_path_integral(t, 48).map_err(|e| e.to_string())?;
        worst = worst.max((a - b).abs());
    }
    let detail = format!("200 points, max difference {worst:.1e}");
    if worst < 1e-8 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn derivative_suite() -> Outcome {
    let mut rng = StdRng::seed_from_u64(14);
    let (h1, h2) = (1e-5, 1e-5);
    let (mut grad_err, mut hess_err) = (0.0f64, 0.0f64);
    let (mut not_definite, mut not_dominant, mut failures) = (0, 0, 0);
    for _ in 0..1000 {
        let t = x_to_t(random_x(&mut rng, 0.3, 3.0)).values();
        let shifted = |i: usize, d: f64| {
            let mut p = t;
            p[i] += d;
            TTriple::new(p).unwrap()
        };
        let g = theta_grad(TTriple::new(t).unwrap()).unwrap();
        let h = theta_hessian(TTriple::new(t).unwrap()).unwrap();
        for i in 0..3 {
            let fd =
                (theta(shifted(i, h1)).unwrap() - theta(shifted(i, -h1)).unwrap()) / (2.0 * h1);
            grad_err = grad_err.max((fd - g[i]).abs());
            let gp = theta_grad(shifted(i, h2)).unwrap();
            let gm = theta_grad(shifted(i, -h2)).unwrap();
            for j in 0..3 {
                let fd = (gp[j] - gm[j]) / (2.0 * h2);
                hess_err = hess_err.max((fd - h.entry(j, i)).abs());
            }
        }
        if h.max_eigenvalue() >= 0.0 {
            not_definite += 1;
        }
        if !h.negated_is_diagonally_dominant() {
            not_dominant += 1;
        }
        if grad_err >= 1e-6 || hess_err >= 1e-5 {
            failures += 1;
        }
    }
    let detail = format!(
        "1000 points: gradient error {grad_err:.1e}, Hessian error {hess_err:.1e}, \
         {not_definite} not definite, {not_dominant} not dominant"
    );
    if failures == 0 && not_definite == 0 && not_dominant == 0 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

/// `m(u) ≤ 2θ ≤ M(u)` on `X_u = {Σ t = u, t_i + t_j ≥ 0}`, the triangle with
/// vertices `(−u, u, u)` and its permutations, sampled uniformly.
fn bounds() -> Outcome {
    let mut rng = StdRng::seed_from_u64(15);
    let (mut below, mut above) = (0, 0);
    let mut worst_low = f64::INFINITY;
    let mut worst_high = f64::INFINITY;
    for u in [0.5, 1.0, 2.0, 5.0] {
        let m = 2.0 * lambda1(u) - 2.0 * lambda2(u).unwrap();
        let big = lambda1(u) + 3.0 * lambda1(u / 3.0) - 3.0 * lambda2(2.0 * u / 3.0).unwrap();
        for _ in 0..100 {
            let (r1, r2): (f64, f64) = (rng.gen(), rng.gen());
            let (a, b) = if r1 + r2 > 1.0 {
                (1.0 - r1, 1.0 - r2)
            } else {
                (r1, r2)
            };
            let w = [a, b, 1.0 - a - b];
            // vertex k has −u in slot k and u elsewhere
            let t: [f64; 3] =
                std::array::from_fn(|i| (0..3).map(|k| w[k] * if i == k { -u } else { u }).sum());
            let v = 2.0 * theta(TTriple::new(t).unwrap()).unwrap();
            worst_low = worst_low.min(v - m);
            worst_high = worst_high.min(big - v);
            if v < m - 1e-9 {
                below += 1;
            }
            if v > big + 1e-9 {
                above += 1;
            }
        }
    }
    // For reference only: the same bounds on the sub-simplex t_i >= 0 (vertices (u,0,0)).
    let mut sub_violations = 0;
    for u in [0.5, 1.0, 2.0, 5.0] {
        let m = 2.0 * lambda1(u) - 2.0 * lambda2(u).unwrap();
        let big = lambda1(u) + 3.0 * lambda1(u / 3.0) - 3.0 * lambda2(2.0 * u / 3.0).unwrap();
        for _ in 0..100 {
            let (r1, r2): (f64, f64) = (rng.gen(), rng.gen());
            let (a, b) = if r1 + r2 > 1.0 {
                (1.0 - r1, 1.0 - r2)
            } else {
                (r1, r2)
            };
            let t = [a * u, b * u, (1.0 - a - b) * u];
            let v = 2.0 * theta(TTriple::new(t).unwrap()).unwrap();
            if v < m - 1e-9 || v > big + 1e-9 {
                sub_violations += 1;
            }
        }
    }
    let detail = format!(
        "400 points: {below} below m(u) (worst 2θ − m = {worst_low:.3e}), \
         {above} above M(u) (worst M − 2θ = {worst_high:.3e}); \
         on t_i >= 0 instead: {sub_violations}/400 violations"
    );
    if below == 0 && above == 0 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn cycle_identity() -> Outcome {
    let mut rng = StdRng::seed_from_u64(16);
    let mut parts = Vec::new();
    let mut ok = true;
    for (name, spec) in solver_fixtures() {
        let c = HexComplex::build(&spec).unwrap();
        let en = c.enumerate_fundamental_cycles(100_000);
        let mut worst = 0.0f64;
        for _ in 0..100 {
            let x: Vec<f64> = (0..c.arc_count())
                .map(|_| rng.gen_range(0.05..5.0))
                .collect();
            let x = LengthStructure::new(&c, x).unwrap();
            for cyc in &en.cycles {
                let (zs, xs) = cycle_sum(&c, &x, cyc);
                worst = worst.max((zs - xs).abs());
            }
        }
        ok &= worst < 1e-12 && !en.cycles.is_empty() && !en.truncated;
        parts.push(format!(
            "{name}: {} cycles, max difference {worst:.1e}",
            en.cycles.len()
        ));
    }
    let detail = parts.join("; ");
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

/// The rows of the cone `D`, built here without the library's helper.
fn cone_violation(c: &HexComplex, y: &[f64]) -> f64 {
    let mut worst = y.iter().fold(0.0f64, |w, &v| w.max(-v));
    for h in 0..c.hexagon_count() {
        let e = c.hexagon_edges(h).map(|e| y[e]);
        for k in 0..3 {
            worst = worst.max(e[k] - e[(k + 1) % 3] - e[(k + 2) % 3]);
        }
    }
    worst
}

fn duality() -> Outcome {
    let mut rng = StdRng::seed_from_u64(17);
    let mut parts = Vec::new();
    let mut ok = true;
    for (name, spec) in fixtures::all() {
        let c = HexComplex::build(&spec).unwrap();
        let cycles = c.enumerate_fundamental_cycles(100_000).cycles;
        let (mut agree, mut infeasible, mut bad_cert) = (0, 0, 0);
        for _ in 0..1000 {
            let z: Vec<f64> = (0..c.edge_count())
                .map(|_| rng.gen_range(-1.0..2.0))
                .collect();
            let z = ECoordinate::new(&c, z).unwrap();
            let report = check_feasibility(&c, &z).map_err(|e| e.to_string())?;
            let by_cycles = check_cycles(&z, &cycles).is_empty();
            if report.feasible == by_cycles {
                agree += 1;
            }
            if !report.feasible {
                infeasible += 1;
                match &report.witness {
                    Witness::Certificate { direction, .. } => {
                        let value: f64 = direction.iter().zip(z.values()).map(|(a, b)| a * b).sum();
                        let total: f64 = direction.iter().sum();
                        let in_cone = cone_violation(&c, direction) <= 1e-12;
                        if !(in_cone && value <= FEASIBILITY_TOL && (total - 1.0).abs() < 1e-9) {
                            bad_cert += 1;
                        }
                    }
                    Witness::Interior { .. } => bad_cert += 1,
                }
            }
        }
        ok &= agree == 1000 && bad_cert == 0;
        parts.push(format!(
            "{name}: {agree}/1000 agree, {infeasible} infeasible, {bad_cert} bad certificates"
        ));
    }
    let detail = parts.join("; ");
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn geometric_verification(solved: &Solved) -> Outcome {
    let mut failed = Vec::new();
    for (name, m) in &solved.metrics {
        let spec = solver_fixtures()
            .into_iter()
            .find(|(n, _)| name.starts_with(n))
            .unwrap()
            .1;
        let c = HexComplex::build(&spec).unwrap();
        let v = verify_metric(&c, m, 1e-8);
        if !v.passed {
            failed.push(format!("{name}: {}", v.failures.join(", ")));
        }
    }
    let detail = format!("{} metrics, {} failed", solved.metrics.len(), failed.len());
    if failed.is_empty() && !solved.metrics.is_empty() {
        Ok(detail)
    } else {
        Err(format!("{detail}: {}", failed.join("; ")))
    }
}

fn main() {
    let mut solved = Solved {
        metrics: Vec::new(),
    };
    let results: Vec<(&str, Outcome)> = vec![
        ("symmetric pants closed form", symmetric_pants(&mut solved)),
        ("round trip from edge lengths", round_trip(&mut solved)),
        ("uniqueness of the maximizer", uniqueness(&mut solved)),
        (
            "closed form vs path integral",
            closed_form_vs_path_integral(),
        ),
        ("derivative suite", derivative_suite()),
        ("energy bounds m(u) <= 2θ <= M(u)", bounds()),
        ("cycle sum identity", cycle_identity()),
        ("feasibility duality", duality()),
        ("geometric verification", geometric_verification(&solved)),
    ];
    let mut failed = 0;
    for (name, r) in &results {
        match r {
            Ok(d) => println!("PASS {name}: {d}"),
            Err(d) => {
                failed += 1;
                println!("FAIL {name}: {d}");
            }
        }
    }
    println!("{} passed, {failed} failed", results.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
