use std::io::Write;

use rayon::prelude::*;
use update_queues::{
    critical_delay, even_amplitude, odd_linear_approx, odd_solve, simulate, solve_fixed_point,
    Amplitude64, CriticalDelay, EvenMethod, OddAmplitude64, Params64, SolverConfig64, State64,
    Trajectory64,
};

use crate::config::{Command, MethodChoice, RunConfig};
use crate::error::{CliError, Result};
use crate::report::{Cell, Report};

/// Empirical amplitude below which a queue is reported as decayed.
pub const DECAYED_BELOW: f64 = 1e-3;

/// Horizon used by `simulate` and `compare` when none is given, in intervals.
pub const DEFAULT_HORIZON_INTERVALS: f64 = 300.0;

/// A finished command: the rows to emit plus solver warnings. Warnings are
/// kept in row order so diagnostics are as deterministic as the CSV.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub report: Report,
    pub warnings: Vec<String>,
}

impl Outcome {
    fn clean(report: Report) -> Self {
        Outcome {
            report,
            warnings: Vec::new(),
        }
    }
}

/// Executes `cfg`, writing CSV to the configured path or to `stdout`.
/// With an output path the 4-decimal console view goes to `stdout` instead.
/// Solver warnings go to `stderr`; any warning turns into exit status 3
/// once all output has been written.
pub fn run(cfg: &RunConfig, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<()> {
    let outcome = execute(cfg)?;
    for w in &outcome.warnings {
        writeln!(stderr, "warning: {w}").map_err(|e| CliError::io("<stderr>", e))?;
    }
    let csv = outcome
        .report
        .to_csv()
        .map_err(|e| CliError::io("<csv>", e))?;
    match &cfg.output_path {
        Some(path) => {
            std::fs::write(path, &csv).map_err(|e| CliError::io(path, e))?;
            let view = match cfg.command {
                Command::Simulate => {
                    format!(
                        "wrote {} samples to {}\n",
                        outcome.report.rows().len(),
                        path.display()
                    )
                }
                _ => outcome.report.to_console(),
            };
            stdout
                .write_all(view.as_bytes())
                .map_err(|e| CliError::io("<stdout>", e))?;
        }
        None => stdout
            .write_all(&csv)
            .map_err(|e| CliError::io("<stdout>", e))?,
    }
    stdout.flush().map_err(|e| CliError::io("<stdout>", e))?;
    if outcome.warnings.is_empty() {
        Ok(())
    } else {
        Err(CliError::NonConvergence(format!(
            "{} solve(s) failed",
            outcome.warnings.len()
        )))
    }
}

/// Computes the output of `cfg` without writing anything.
pub fn execute(cfg: &RunConfig) -> Result<Outcome> {
    match cfg.command {
        Command::Table => {
            let grid = cfg
                .delta_grid
                .as_deref()
                .ok_or_else(|| CliError::Usage("table needs --delta-grid".into()))?;
            if cfg.method.is_some() {
                return Err(CliError::Usage(
                    "table always reports every method; drop --method".into(),
                ));
            }
            emit_table(&cfg.params_at(grid[0])?, grid, &cfg.solver)
        }
        Command::Amplitude => amplitude_report(&cfg.params()?, cfg.method, &cfg.solver),
        Command::CriticalDelay => Ok(Outcome::clean(critical_delay_report(
            &cfg.params_at(cfg.delta.unwrap_or(1.0))?,
        ))),
        Command::Simulate => {
            let traj = run_simulation(cfg)?;
            Ok(Outcome::clean(trajectory_report(&traj)))
        }
        Command::Compare => compare(cfg),
    }
}

fn is_odd(params: &Params64) -> bool {
    params.n_queues() % 2 == 1
}

fn amplitude_cell(
    r: update_queues::Result<Amplitude64>,
    label: &str,
    delta: f64,
    warnings: &mut Vec<String>,
) -> Cell {
    match r {
        Ok(r) if r.converged => Cell::Num(r.amplitude),
        Ok(r) => {
            warnings.push(format!(
                "Δ={delta}: {label} did not converge (residual {:e})",
                r.residual
            ));
            Cell::Empty
        }
        Err(e) => {
            warnings.push(format!("Δ={delta}: {label}: {e}"));
            Cell::Empty
        }
    }
}

fn odd_pair(
    r: update_queues::Result<OddAmplitude64>,
    label: &str,
    delta: f64,
    warnings: &mut Vec<String>,
) -> (Cell, Cell) {
    match r {
        Ok(r) if r.converged => (Cell::Num(r.a1), Cell::Num(r.a2)),
        Ok(r) => {
            warnings.push(format!(
                "Δ={delta}: {label} did not converge (residual norm {:e})",
                r.residual_norm
            ));
            (Cell::Empty, Cell::Empty)
        }
        Err(e) => {
            warnings.push(format!("Δ={delta}: {label}: {e}"));
            (Cell::Empty, Cell::Empty)
        }
    }
}

fn fixed_point(params: &Params64, cfg: &SolverConfig64) -> update_queues::Result<Amplitude64> {
    if params.n_queues() == 2 {
        solve_fixed_point(params, cfg)
    } else {
        even_amplitude(params, EvenMethod::FixedPoint, cfg)
    }
}

/// Amplitudes over `grid` for the queue count and rates in `params` (its Δ
/// is ignored). Even N gives `delta,fixed_point,linear,quadratic`; odd N
/// gives `delta,nonlinear1,linear1,nonlinear2,linear2`. Rows are solved in
/// parallel and emitted in grid order; a failed solve leaves an empty cell.
pub fn emit_table(params: &Params64, grid: &[f64], cfg: &SolverConfig64) -> Result<Outcome> {
    if grid.is_empty() {
        return Err(CliError::Usage("delta grid is empty".into()));
    }
    let odd = is_odd(params);
    let rows: Vec<Result<(Vec<Cell>, Vec<String>)>> = grid
        .par_iter()
        .map(|&delta| {
            let p = params.with_delta(delta)?;
            let mut warnings = Vec::new();
            let row = if odd {
                let (nl1, nl2) = odd_pair(odd_solve(&p, cfg), "nonlinear", delta, &mut warnings);
                let (l1, l2) = odd_pair(odd_linear_approx(&p), "linear", delta, &mut warnings);
                vec![Cell::Num(delta), nl1, l1, nl2, l2]
            } else {
                vec![
                    Cell::Num(delta),
                    amplitude_cell(fixed_point(&p, cfg), "fixed point", delta, &mut warnings),
                    amplitude_cell(
                        even_amplitude(&p, EvenMethod::Linear, cfg),
                        "linear",
                        delta,
                        &mut warnings,
                    ),
                    amplitude_cell(
                        even_amplitude(&p, EvenMethod::Quadratic, cfg),
                        "quadratic",
                        delta,
                        &mut warnings,
                    ),
                ]
            };
            Ok((row, warnings))
        })
        .collect();

    let header: &[&str] = if odd {
        &["delta", "nonlinear1", "linear1", "nonlinear2", "linear2"]
    } else {
        &["delta", "fixed_point", "linear", "quadratic"]
    };
    let mut report = Report::new(header);
    let mut warnings = Vec::new();
    for row in rows {
        let (cells, w) = row?;
        report.push(cells);
        warnings.extend(w);
    }
    Ok(Outcome { report, warnings })
}

fn amplitude_report(
    params: &Params64,
    method: Option<MethodChoice>,
    cfg: &SolverConfig64,
) -> Result<Outcome> {
    let delta = params.delta();
    let mut warnings = Vec::new();
    if is_odd(params) {
        let methods = match method {
            None => vec![MethodChoice::Nonlinear, MethodChoice::Linear],
            Some(MethodChoice::Nonlinear | MethodChoice::FixedPoint) => {
                vec![MethodChoice::Nonlinear]
            }
            Some(MethodChoice::Linear) => vec![MethodChoice::Linear],
            Some(MethodChoice::Quadratic) => {
                return Err(CliError::Usage(
                    "no quadratic approximation exists for an odd number of queues".into(),
                ))
            }
        };
        let mut report = Report::new(&[
            "method",
            "l1",
            "u1",
            "l2",
            "u2",
            "a1",
            "a2",
            "converged",
            "iterations",
            "residual_norm",
        ]);
        for m in methods {
            let (name, r) = match m {
                MethodChoice::Linear => ("linear", odd_linear_approx(params)),
                _ => ("nonlinear", odd_solve(params, cfg)),
            };
            match r {
                Ok(r) => {
                    if !r.converged {
                        warnings.push(format!(
                            "Δ={delta}: {name} did not converge (residual norm {:e})",
                            r.residual_norm
                        ));
                    }
                    report.push(vec![
                        Cell::text(name),
                        Cell::Num(r.l1),
                        Cell::Num(r.u1),
                        Cell::Num(r.l2),
                        Cell::Num(r.u2),
                        Cell::Num(r.a1),
                        Cell::Num(r.a2),
                        Cell::text(r.converged.to_string()),
                        Cell::Int(r.iterations),
                        Cell::Num(r.residual_norm),
                    ]);
                }
                Err(e) => {
                    warnings.push(format!("Δ={delta}: {name}: {e}"));
                    let mut row = vec![Cell::text(name)];
                    row.extend(std::iter::repeat_n(Cell::Empty, 9));
                    report.push(row);
                }
            }
        }
        return Ok(Outcome { report, warnings });
    }

    let methods = match method {
        None => vec![
            MethodChoice::FixedPoint,
            MethodChoice::Linear,
            MethodChoice::Quadratic,
        ],
        Some(MethodChoice::Nonlinear) => vec![MethodChoice::FixedPoint],
        Some(m) => vec![m],
    };
    let mut report = Report::new(&[
        "method",
        "lower",
        "upper",
        "amplitude",
        "converged",
        "iterations",
        "residual",
    ]);
    for m in methods {
        let (fallback_name, r) = match m {
            MethodChoice::Linear => ("linear", even_amplitude(params, EvenMethod::Linear, cfg)),
            MethodChoice::Quadratic => (
                "quadratic",
                even_amplitude(params, EvenMethod::Quadratic, cfg),
            ),
            _ => ("fixed_point", fixed_point(params, cfg)),
        };
        match r {
            Ok(r) => {
                if !r.converged {
                    warnings.push(format!(
                        "Δ={delta}: {} did not converge (residual {:e})",
                        r.method.as_str(),
                        r.residual
                    ));
                }
                if r.degenerate_fallback {
                    warnings.push(format!(
                        "Δ={delta}: quadratic degenerated; linear value reported"
                    ));
                }
                report.push(vec![
                    Cell::text(r.method.as_str()),
                    Cell::Num(r.lower),
                    Cell::Num(r.upper),
                    Cell::Num(r.amplitude),
                    Cell::text(r.converged.to_string()),
                    Cell::Int(r.iterations),
                    Cell::Num(r.residual),
                ]);
            }
            Err(e) => {
                warnings.push(format!("Δ={delta}: {fallback_name}: {e}"));
                let mut row = vec![Cell::text(fallback_name)];
                row.extend(std::iter::repeat_n(Cell::Empty, 6));
                report.push(row);
            }
        }
    }
    Ok(Outcome { report, warnings })
}

fn critical_delay_report(params: &Params64) -> Report {
    let mut report = Report::new(&["n", "critical_delay"]);
    let value = match critical_delay(params) {
        CriticalDelay::Finite(v) => Cell::Num(v),
        CriticalDelay::NoFiniteThreshold => Cell::text("none"),
    };
    report.push(vec![Cell::Int(params.n_queues()), value]);
    report
}

fn run_simulation(cfg: &RunConfig) -> Result<Trajectory64> {
    let params = cfg.params()?;
    let horizon = cfg
        .horizon
        .unwrap_or(DEFAULT_HORIZON_INTERVALS * params.delta());
    let start = State64::perturbed(&params, &cfg.seed_perturbation)?;
    Ok(simulate(
        &start,
        &params,
        horizon,
        cfg.samples_per_interval,
    )?)
}

fn trajectory_report(traj: &Trajectory64) -> Report {
    let n = traj.params().n_queues();
    let names: Vec<String> = std::iter::once("t".to_string())
        .chain((1..=n).map(|i| format!("q{i}")))
        .collect();
    let header: Vec<&str> = names.iter().map(String::as_str).collect();
    let mut report = Report::new(&header);
    for s in traj.samples() {
        let mut row = vec![Cell::Num(s.time)];
        row.extend(s.state.values().iter().map(|&v| Cell::Num(v)));
        report.push(row);
    }
    report
}

/// Per-queue analytic prediction used by `compare`.
struct Prediction {
    method: String,
    amplitude: Option<f64>,
    linear: Option<f64>,
}

fn compare(cfg: &RunConfig) -> Result<Outcome> {
    let params = cfg.params()?;
    let traj = run_simulation(cfg)?;
    let burn_in = cfg.burn_in.unwrap_or_else(|| traj.settled_burn_in());
    if !(traj.horizon() > burn_in) {
        return Err(CliError::Usage(format!(
            "horizon {} must exceed burn-in {burn_in}",
            traj.horizon()
        )));
    }
    let amps = traj.empirical_amplitude(burn_in)?;
    let clusters = traj.phase_clusters(burn_in, 1e-6);
    let n = params.n_queues();
    let mut cluster_of = vec![0usize; n];
    for (k, c) in clusters.iter().enumerate() {
        for &i in c {
            cluster_of[i] = k;
        }
    }

    let delta = params.delta();
    let mut warnings = Vec::new();
    let predictions: Vec<Prediction> = if is_odd(&params) {
        let method = cfg.method.unwrap_or(MethodChoice::Nonlinear);
        let label = match method {
            MethodChoice::Linear => "linear",
            MethodChoice::Nonlinear | MethodChoice::FixedPoint => "nonlinear",
            MethodChoice::Quadratic => {
                return Err(CliError::Usage(
                    "no quadratic approximation exists for an odd number of queues".into(),
                ))
            }
        };
        let chosen = match method {
            MethodChoice::Linear => odd_linear_approx(&params),
            _ => odd_solve(&params, &cfg.solver),
        };
        let (a1, a2) = odd_pair(chosen, label, delta, &mut warnings);
        let (l1, l2) = odd_pair(odd_linear_approx(&params), "linear", delta, &mut warnings);
        let big = n.div_ceil(2);
        let mut sizes: Vec<usize> = clusters.iter().map(Vec::len).collect();
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        let textbook = sizes == [big, n - big];
        (0..n)
            .map(|i| {
                // with the two-cluster pattern the larger cluster carries A1;
                // otherwise each queue is matched to the closer prediction
                let first = if textbook {
                    clusters[cluster_of[i]].len() == big
                } else {
                    match (a1.as_f64(), a2.as_f64()) {
                        (Some(x), Some(y)) => {
                            (amps[i].amplitude - x).abs() <= (amps[i].amplitude - y).abs()
                        }
                        _ => true,
                    }
                };
                let (a, l, k) = if first { (&a1, &l1, 1) } else { (&a2, &l2, 2) };
                Prediction {
                    method: format!("{label}{k}"),
                    amplitude: a.as_f64(),
                    linear: l.as_f64(),
                }
            })
            .collect()
    } else {
        let method = cfg.method.unwrap_or(MethodChoice::FixedPoint);
        let r = match method {
            MethodChoice::Linear => even_amplitude(&params, EvenMethod::Linear, &cfg.solver),
            MethodChoice::Quadratic => even_amplitude(&params, EvenMethod::Quadratic, &cfg.solver),
            _ => fixed_point(&params, &cfg.solver),
        };
        let name = match (&r, method) {
            (Ok(r), _) => r.method.as_str().to_string(),
            (Err(_), MethodChoice::Linear) => "linear".into(),
            (Err(_), MethodChoice::Quadratic) => "quadratic".into(),
            (Err(_), _) => "fixed_point".into(),
        };
        let amplitude = amplitude_cell(r, &name, delta, &mut warnings).as_f64();
        let linear = amplitude_cell(
            even_amplitude(&params, EvenMethod::Linear, &cfg.solver),
            "linear",
            delta,
            &mut warnings,
        )
        .as_f64();
        (0..n)
            .map(|_| Prediction {
                method: name.clone(),
                amplitude,
                linear,
            })
            .collect()
    };

    let equilibrium = params.equilibrium_level();
    let opt = |v: Option<f64>| v.map_or(Cell::Empty, Cell::Num);
    let mut report = Report::new(&[
        "queue",
        "cluster",
        "empirical_min",
        "empirical_max",
        "empirical_amplitude",
        "analytic_method",
        "analytic_amplitude",
        "abs_error",
        "linear_amplitude",
        "equilibrium",
        "bar_low",
        "bar_high",
        "status",
    ]);
    for (i, (a, pred)) in amps.iter().zip(&predictions).enumerate() {
        let status = if a.amplitude < DECAYED_BELOW {
            "decayed"
        } else {
            "sustained"
        };
        report.push(vec![
            Cell::Int(i + 1),
            Cell::Int(cluster_of[i] + 1),
            Cell::Num(a.min),
            Cell::Num(a.max),
            Cell::Num(a.amplitude),
            Cell::text(pred.method.clone()),
            opt(pred.amplitude),
            opt(pred.amplitude.map(|x| (a.amplitude - x).abs())),
            opt(pred.linear),
            Cell::Num(equilibrium),
            opt(pred.amplitude.map(|x| equilibrium - x)),
            opt(pred.amplitude.map(|x| equilibrium + x)),
            Cell::text(status),
        ]);
    }
    Ok(Outcome { report, warnings })
}
