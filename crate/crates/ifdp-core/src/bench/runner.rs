//! Benchmark runner: (scenario × solver) cells over seeded instances, CSV
//! rows with failure/gap/time metrics, and per-figure plot-data emission.

use std::fmt;
use std::io::Write;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bench::{generate_instance, resolve_alpha, Scenario};
use crate::cga::{solve_cga, CgaOptions};
use crate::mfa::solve_mfa;
use crate::model::{earliest_completion, Instance, SolveStatus};
use crate::oracle;
use crate::tsa::{rtsa_lower_bound, solve_tsa, SliceMultiplier};
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum SolverKind {
    Tsa(SliceMultiplier),
    Cga,
    Mfa,
    Oracle,
    Edf,
    Continuous,
    MfaCga,
    /// Gap-bounded column generation against the relaxation bound, with the
    /// tolerance in percent.
    RtsaCga(f64),
    MfaRtsaCga(f64),
}

impl fmt::Display for SolverKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SolverKind::Tsa(m) => write!(f, "tsa-{}", m.label()),
            SolverKind::Cga => write!(f, "cga"),
            SolverKind::Mfa => write!(f, "mfa"),
            SolverKind::Oracle => write!(f, "oracle"),
            SolverKind::Edf => write!(f, "edf"),
            SolverKind::Continuous => write!(f, "continuous"),
            SolverKind::MfaCga => write!(f, "mfa-cga"),
            SolverKind::RtsaCga(p) => write!(f, "rtsa-cga-{p}"),
            SolverKind::MfaRtsaCga(p) => write!(f, "mfa-rtsa-cga-{p}"),
        }
    }
}

impl FromStr for SolverKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        if let Some(m) = s.strip_prefix("tsa-") {
            return Ok(SolverKind::Tsa(m.parse()?));
        }
        if let Some(p) = s.strip_prefix("mfa-rtsa-cga-") {
            return Ok(SolverKind::MfaRtsaCga(parse_pct(p)?));
        }
        if let Some(p) = s.strip_prefix("rtsa-cga-") {
            return Ok(SolverKind::RtsaCga(parse_pct(p)?));
        }
        match s {
            "cga" => Ok(SolverKind::Cga),
            "mfa" => Ok(SolverKind::Mfa),
            "oracle" => Ok(SolverKind::Oracle),
            "edf" => Ok(SolverKind::Edf),
            "continuous" => Ok(SolverKind::Continuous),
            "mfa-cga" => Ok(SolverKind::MfaCga),
            other => Err(Error::ParseError(format!("unknown solver `{other}`"))),
        }
    }
}

fn parse_pct(s: &str) -> Result<f64, Error> {
    let p: f64 = s
        .parse()
        .map_err(|_| Error::ParseError(format!("bad gap percentage `{s}`")))?;
    if !(p > 0.0) || !p.is_finite() {
        return Err(Error::ParseError("gap percentage must be positive".into()));
    }
    Ok(p)
}

impl TryFrom<String> for SolverKind {
    type Error = Error;
    fn try_from(s: String) -> Result<Self, Error> {
        s.parse()
    }
}

impl From<SolverKind> for String {
    fn from(k: SolverKind) -> String {
        k.to_string()
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BenchConfig {
    pub scenarios: Vec<Scenario>,
    pub solvers: Vec<SolverKind>,
    #[serde(default = "default_instances")]
    pub instances_per_cell: usize,
    #[serde(default)]
    pub time_limit: Option<f64>,
}

fn default_instances() -> usize {
    10
}

/// One CSV row: a (scenario, solver) cell aggregated over its instances.
#[derive(Clone, Debug)]
pub struct BenchRow {
    pub scenario: String,
    pub flow_count: usize,
    pub solver: String,
    pub instances: usize,
    /// No solution obtained (infeasible verdict, heuristic give-up, or limit).
    pub failure_pct: f64,
    /// Infeasible verdicts and heuristic give-ups.
    pub infeasible_pct: f64,
    /// Time-limit exits without a solution.
    pub timeout_pct: f64,
    /// Mean objective gap versus the exact reference, in percent.
    pub mean_gap_pct: Option<f64>,
    /// Mean wall time over instances where a solution was obtained.
    pub mean_time_s: Option<f64>,
    pub mean_phase1_s: Option<f64>,
    pub mean_phase2_s: Option<f64>,
    /// Mean total-time reduction versus plain column generation, percent.
    pub time_reduction_pct: Option<f64>,
}

pub const CSV_HEADER: &str = "scenario,flows,solver,instances,failure_pct,infeasible_pct,timeout_pct,mean_gap_pct,mean_time_s,mean_phase1_s,mean_phase2_s,time_reduction_pct";

impl BenchRow {
    pub fn to_csv(&self) -> String {
        let opt = |v: Option<f64>| v.map(|x| format!("{x:.4}")).unwrap_or_default();
        format!(
            "{},{},{},{},{:.1},{:.1},{:.1},{},{},{},{},{}",
            self.scenario,
            self.flow_count,
            self.solver,
            self.instances,
            self.failure_pct,
            self.infeasible_pct,
            self.timeout_pct,
            opt(self.mean_gap_pct),
            opt(self.mean_time_s),
            opt(self.mean_phase1_s),
            opt(self.mean_phase2_s),
            opt(self.time_reduction_pct),
        )
    }
}

struct CellResult {
    status: SolveStatus,
    objective: Option<f64>,
    time: f64,
    phase1: Option<f64>,
    phase2: Option<f64>,
}

struct Reference {
    status: SolveStatus,
    objective: Option<f64>,
    time: f64,
    phase1: f64,
    phase2: f64,
}

fn run_reference(inst: &Instance, time_limit: Option<f64>) -> Result<Reference, Error> {
    let outcome = solve_cga(
        inst,
        &CgaOptions {
            time_limit,
            ..CgaOptions::default()
        },
    )?;
    Ok(Reference {
        status: outcome.report.status,
        objective: outcome.report.objective,
        time: outcome.report.wall_time,
        phase1: outcome.phase1_time,
        phase2: outcome.phase2_time,
    })
}

fn rtsa_tolerance(inst: &Instance) -> Result<f64, Error> {
    let mut total = 0.0;
    for f in 0..inst.flow_count() {
        total += earliest_completion(inst, f)?;
    }
    Ok((1e-3 * total).max(1e-4))
}

fn run_solver(
    kind: SolverKind,
    inst: &Instance,
    time_limit: Option<f64>,
    reference: &Reference,
) -> Result<CellResult, Error> {
    let simple = |status: SolveStatus, objective: Option<f64>, time: f64| CellResult {
        status,
        objective,
        time,
        phase1: None,
        phase2: None,
    };
    match kind {
        SolverKind::Tsa(m) => {
            let (report, _) = solve_tsa(inst, m, time_limit)?;
            Ok(simple(report.status, report.objective, report.wall_time))
        }
        SolverKind::Cga => Ok(CellResult {
            status: reference.status,
            objective: reference.objective,
            time: reference.time,
            phase1: Some(reference.phase1),
            phase2: Some(reference.phase2),
        }),
        SolverKind::Mfa => {
            let (report, _) = solve_mfa(inst, time_limit)?;
            Ok(simple(report.status, report.objective, report.wall_time))
        }
        SolverKind::Oracle => {
            let (report, _) = oracle::solve_full_mp(inst)?;
            Ok(simple(report.status, report.objective, report.wall_time))
        }
        SolverKind::Edf => {
            let (report, _) = oracle::solve_edf_bottleneck(inst)?;
            Ok(simple(report.status, report.objective, report.wall_time))
        }
        SolverKind::Continuous => {
            let (report, _) = oracle::continuous_mode(inst, time_limit)?;
            Ok(simple(report.status, report.objective, report.wall_time))
        }
        SolverKind::MfaCga => {
            let started = std::time::Instant::now();
            let (mfa_report, warm) = solve_mfa(inst, time_limit)?;
            let outcome = solve_cga(
                inst,
                &CgaOptions {
                    warm_start: warm,
                    time_limit: time_limit.map(|l| (l - mfa_report.wall_time).max(0.0)),
                    ..CgaOptions::default()
                },
            )?;
            Ok(CellResult {
                status: outcome.report.status,
                objective: outcome.report.objective,
                time: started.elapsed().as_secs_f64(),
                phase1: Some(mfa_report.wall_time + outcome.phase1_time),
                phase2: Some(outcome.phase2_time),
            })
        }
        SolverKind::RtsaCga(p) | SolverKind::MfaRtsaCga(p) => {
            let started = std::time::Instant::now();
            let warm = if matches!(kind, SolverKind::MfaRtsaCga(_)) {
                solve_mfa(inst, time_limit)?.1
            } else {
                None
            };
            let bound = rtsa_lower_bound(inst, rtsa_tolerance(inst)?)?;
            let elapsed = started.elapsed().as_secs_f64();
            let outcome = solve_cga(
                inst,
                &CgaOptions {
                    warm_start: warm,
                    gap_bound: Some((bound, p)),
                    time_limit: time_limit.map(|l| (l - elapsed).max(0.0)),
                    ..CgaOptions::default()
                },
            )?;
            Ok(CellResult {
                status: outcome.report.status,
                objective: outcome.report.objective,
                time: started.elapsed().as_secs_f64(),
                phase1: Some(outcome.phase1_time),
                phase2: Some(outcome.phase2_time),
            })
        }
    }
}

fn solution_obtained(status: SolveStatus) -> bool {
    matches!(status, SolveStatus::Optimal | SolveStatus::Feasible)
}

/// Runs every (scenario, solver) cell over `instances_per_cell` seeds and
/// streams one CSV row per cell to `out` (header first, flushed per row).
/// Per-instance solver errors (e.g. oracle caps) count as failures.
pub fn run_benchmark(cfg: &BenchConfig, out: &mut dyn Write) -> Result<Vec<BenchRow>, Error> {
    writeln!(out, "{CSV_HEADER}").map_err(|e| Error::Io(e.to_string()))?;
    let mut rows = Vec::new();
    for scenario in &cfg.scenarios {
        // Generate (and cache) the cell's instances and reference runs.
        let mut instances: Vec<Option<(Instance, Reference)>> = Vec::new();
        for idx in 0..cfg.instances_per_cell {
            let seeded = Scenario {
                seed: scenario.seed + idx as u64,
                ..scenario.clone()
            };
            let prepared = resolve_alpha(&seeded)
                .and_then(|sc| generate_instance(&sc))
                .and_then(|inst| {
                    let reference = run_reference(&inst, cfg.time_limit)?;
                    Ok((inst, reference))
                });
            instances.push(prepared.ok());
        }
        for &solver in &cfg.solvers {
            let mut statuses = Vec::new();
            let mut gaps = Vec::new();
            let mut times = Vec::new();
            let mut phase1s = Vec::new();
            let mut phase2s = Vec::new();
            let mut reductions = Vec::new();
            for prepared in &instances {
                let Some((inst, reference)) = prepared else {
                    statuses.push(SolveStatus::NoSolution);
                    continue;
                };
                match run_solver(solver, inst, cfg.time_limit, reference) {
                    Err(_) => statuses.push(SolveStatus::NoSolution),
                    Ok(cell) => {
                        statuses.push(cell.status);
                        if solution_obtained(cell.status) {
                            times.push(cell.time);
                            if let (Some(obj), Some(reference_obj)) =
                                (cell.objective, reference.objective)
                            {
                                if reference_obj > 1e-12 && solver != SolverKind::Continuous {
                                    gaps.push(100.0 * (obj - reference_obj) / reference_obj);
                                }
                            }
                            if let Some(p) = cell.phase1 {
                                phase1s.push(p);
                            }
                            if let Some(p) = cell.phase2 {
                                phase2s.push(p);
                            }
                            if matches!(
                                solver,
                                SolverKind::MfaCga
                                    | SolverKind::RtsaCga(_)
                                    | SolverKind::MfaRtsaCga(_)
                            ) && reference.time > 1e-9
                            {
                                reductions
                                    .push(100.0 * (reference.time - cell.time) / reference.time);
                            }
                        }
                    }
                }
            }
            let n = statuses.len().max(1) as f64;
            let infeasible = statuses
                .iter()
                .filter(|s| matches!(s, SolveStatus::Infeasible | SolveStatus::NoSolution))
                .count() as f64;
            let timeout = statuses
                .iter()
                .filter(|s| matches!(s, SolveStatus::TimeLimit))
                .count() as f64;
            let mean = |v: &[f64]| {
                if v.is_empty() {
                    None
                } else {
                    Some(v.iter().sum::<f64>() / v.len() as f64)
                }
            };
            let row = BenchRow {
                scenario: scenario.label(),
                flow_count: scenario.flow_count,
                solver: solver.to_string(),
                instances: statuses.len(),
                failure_pct: 100.0 * (infeasible + timeout) / n,
                infeasible_pct: 100.0 * infeasible / n,
                timeout_pct: 100.0 * timeout / n,
                mean_gap_pct: mean(&gaps),
                mean_time_s: mean(&times),
                mean_phase1_s: mean(&phase1s),
                mean_phase2_s: mean(&phase2s),
                time_reduction_pct: mean(&reductions),
            };
            writeln!(out, "{}", row.to_csv()).map_err(|e| Error::Io(e.to_string()))?;
            out.flush().map_err(|e| Error::Io(e.to_string()))?;
            rows.push(row);
        }
    }
    Ok(rows)
}

/// Writes per-figure data series: objective gap versus flow count and
/// solution time versus flow count, one CSV each.
pub fn emit_plot_data(rows: &[BenchRow], dir: &std::path::Path) -> Result<(), Error> {
    std::fs::create_dir_all(dir).map_err(|e| Error::Io(e.to_string()))?;
    let mut gap = String::from("scenario,solver,flows,gap_pct\n");
    let mut time = String::from("scenario,solver,flows,time_s\n");
    for row in rows {
        if let Some(g) = row.mean_gap_pct {
            gap.push_str(&format!(
                "{},{},{},{:.4}\n",
                row.scenario, row.solver, row.flow_count, g
            ));
        }
        if let Some(t) = row.mean_time_s {
            time.push_str(&format!(
                "{},{},{},{:.4}\n",
                row.scenario, row.solver, row.flow_count, t
            ));
        }
    }
    std::fs::write(dir.join("gap_vs_flows.csv"), gap).map_err(|e| Error::Io(e.to_string()))?;
    std::fs::write(dir.join("time_vs_flows.csv"), time).map_err(|e| Error::Io(e.to_string()))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bench::Topology;

    #[test]
    fn solver_names_round_trip() {
        for name in [
            "tsa-1x",
            "tsa-2x",
            "tsa-3x",
            "cga",
            "mfa",
            "oracle",
            "edf",
            "continuous",
            "mfa-cga",
            "rtsa-cga-10",
            "mfa-rtsa-cga-12.5",
        ] {
            let kind: SolverKind = name.parse().unwrap();
            assert_eq!(kind.to_string(), name);
        }
        assert!("gurobi".parse::<SolverKind>().is_err());
    }

    #[test]
    fn empty_solver_list_gives_empty_table() {
        let cfg = BenchConfig {
            scenarios: vec![Scenario {
                flow_count: 3,
                ..Scenario::new(Topology::Triangle)
            }],
            solvers: vec![],
            instances_per_cell: 1,
            time_limit: None,
        };
        let mut sink = Vec::new();
        let rows = run_benchmark(&cfg, &mut sink).unwrap();
        assert!(rows.is_empty());
        let text = String::from_utf8(sink).unwrap();
        assert_eq!(text.trim(), CSV_HEADER);
    }

    #[test]
    fn triangle_cell_results_match_the_known_verdicts() {
        let cfg = BenchConfig {
            scenarios: vec![Scenario {
                flow_count: 3,
                ..Scenario::new(Topology::Triangle)
            }],
            solvers: vec![
                SolverKind::Tsa(SliceMultiplier::X1),
                SolverKind::Cga,
                SolverKind::Mfa,
            ],
            instances_per_cell: 1,
            time_limit: None,
        };
        let mut sink = Vec::new();
        let rows = run_benchmark(&cfg, &mut sink).unwrap();
        assert_eq!(rows.len(), 3);
        let tsa = &rows[0];
        assert_eq!(tsa.failure_pct, 100.0);
        assert_eq!(tsa.infeasible_pct, 100.0);
        let cga_row = &rows[1];
        assert_eq!(cga_row.failure_pct, 0.0);
        assert_eq!(cga_row.mean_gap_pct, Some(0.0));
        let mfa_row = &rows[2];
        assert_eq!(mfa_row.failure_pct, 0.0);
        assert!(mfa_row.mean_gap_pct.unwrap().abs() < 1e-6);
    }
}
