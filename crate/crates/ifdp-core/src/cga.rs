//! Column generation over end-to-end rate vectors.
//!
//! The master LP assigns a usage duration to every known rate vector,
//! subject to per-flow demand equalities and cumulative deadline rows that
//! partially order the vectors by their first positive flow index. Pricing
//! solves an integer rate-maximization subproblem parameterized by the first
//! flow allowed a positive rate, sweeping that index upward and skipping
//! past the first positive index of each optimum (the skipped subproblems
//! provably share the same optimal reduced cost). The loop terminates when
//! the sweep proves no column prices below the tolerance, which certifies
//! global optimality; a lower-bound/gap pair or a warm-start schedule can
//! shorten either phase.
//!
//! All flow indices in this module are internal (deadline-ascending).

use std::time::{Duration, Instant};

use crate::formulation::{
    add_allocation_block, extract_rate_vector, AllocationMode, FlowArcs,
};
use crate::lp::{solve_lp, LpProblem, LpStatus, Relation};
use crate::mip::{solve_mip_with, MipLimits, MipProblem, MipStatus};
use crate::model::{
    max_single_flow_rate, Instance, RateVector, Schedule, Segment, SolveReport, SolveStatus,
    POS_TOL,
};
use crate::Error;

/// Reduced-cost tolerance: pricing terminates once no column prices below
/// `-RC_TOL`.
pub const RC_TOL: f64 = 1e-7;

/// Componentwise tolerance of the duplicate-column guard.
pub const DUP_TOL: f64 = 1e-9;

/// A master-problem column: a rate vector and its first positive flow index.
#[derive(Clone, Debug)]
pub struct Column {
    pub vector: RateVector,
    pub first_positive: usize,
}

impl Column {
    pub fn new(vector: RateVector) -> Option<Self> {
        let first_positive = vector.first_positive()?;
        Some(Column {
            vector,
            first_positive,
        })
    }
}

/// Optimal dual values of a master solve: `lambda` from the demand rows,
/// `pi` from the deadline rows (zero for flows without one).
#[derive(Clone, Debug)]
pub struct DualPrices {
    pub lambda: Vec<f64>,
    pub pi: Vec<f64>,
}

/// State of a solved restricted master problem.
#[derive(Clone, Debug)]
pub struct RmpState {
    pub x: Vec<f64>,
    pub duals: DualPrices,
    /// Artificial-variable values; empty in phase II.
    pub artificials: Vec<f64>,
    pub objective: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Phase {
    /// Minimize total unmet demand via artificial variables.
    One,
    /// Minimize total schedule duration.
    Two,
}

/// Builds the restricted master LP over `columns`.
///
/// Row layout: one demand equality per flow (internal order), then one
/// deadline row per bounded-deadline flow (internal order). A column appears
/// in deadline row `f` iff its first positive index is at most `f`. Phase I
/// adds one artificial per demand row at unit cost; phase II prices columns
/// at unit cost and carries no artificials.
pub fn build_rmp(inst: &Instance, columns: &[Column], phase: Phase) -> LpProblem {
    let f_count = inst.flow_count();
    let mut lp = LpProblem::new();
    let column_cost = match phase {
        Phase::One => 0.0,
        Phase::Two => 1.0,
    };
    let x_vars: Vec<usize> = columns
        .iter()
        .map(|_| lp.add_var(column_cost, 0.0, f64::INFINITY))
        .collect();
    let art_vars: Vec<usize> = match phase {
        Phase::One => (0..f_count)
            .map(|_| lp.add_var(1.0, 0.0, f64::INFINITY))
            .collect(),
        Phase::Two => Vec::new(),
    };
    for f in 0..f_count {
        let mut coeffs: Vec<(usize, f64)> = Vec::new();
        for (v, col) in columns.iter().enumerate() {
            if col.vector.rates[f] > POS_TOL {
                coeffs.push((x_vars[v], col.vector.rates[f]));
            }
        }
        if phase == Phase::One {
            coeffs.push((art_vars[f], 1.0));
        }
        lp.add_row(&coeffs, Relation::Eq, inst.flows()[f].size);
    }
    for (f, flow) in inst.flows().iter().enumerate() {
        let Some(deadline) = flow.deadline else {
            continue;
        };
        let coeffs: Vec<(usize, f64)> = columns
            .iter()
            .enumerate()
            .filter(|(_, col)| col.first_positive <= f)
            .map(|(v, _)| (x_vars[v], 1.0))
            .collect();
        lp.add_row(&coeffs, Relation::Le, deadline);
    }
    lp
}

/// Solves the RMP; `None` when it is infeasible (possible only in phase II,
/// e.g. under an unlucky warm start).
pub fn solve_rmp(
    inst: &Instance,
    columns: &[Column],
    phase: Phase,
) -> Result<Option<RmpState>, Error> {
    let lp = build_rmp(inst, columns, phase);
    let sol = solve_lp(&lp)?;
    match sol.status {
        LpStatus::Infeasible => Ok(None),
        LpStatus::Unbounded => Err(Error::NumericalBreakdown(
            "master problem reported unbounded".into(),
        )),
        LpStatus::Optimal => {
            let f_count = inst.flow_count();
            let lambda = sol.duals[..f_count].to_vec();
            let mut pi = vec![0.0; f_count];
            let mut row = f_count;
            for (f, flow) in inst.flows().iter().enumerate() {
                if flow.deadline.is_some() {
                    pi[f] = sol.duals[row];
                    row += 1;
                }
            }
            // deadline rows are ≤ rows of a min problem: duals nonpositive
            debug_assert!(pi.iter().all(|&p| p <= 1e-9), "pi must be nonpositive");
            let artificials = match phase {
                Phase::One => sol.x[columns.len()..columns.len() + f_count].to_vec(),
                Phase::Two => Vec::new(),
            };
            Ok(Some(RmpState {
                x: sol.x[..columns.len()].to_vec(),
                duals: DualPrices { lambda, pi },
                artificials,
                objective: sol.objective,
            }))
        }
    }
}

/// Pricing context shared across subproblem solves.
struct PricingCtx<'a> {
    inst: &'a Instance,
    flow_arcs: &'a FlowArcs,
    r_upper: Option<&'a [f64]>,
    mode: AllocationMode,
}

/// One pricing subproblem solution.
#[derive(Clone, Debug)]
pub struct SpSolution {
    pub vector: RateVector,
    /// `column_cost − Σ λ_f r_f` at the solution.
    pub objective: f64,
    /// First flow with positive rate, if any.
    pub f_plus_plus: Option<usize>,
    /// False when a time limit interrupted the optimality proof.
    pub proven: bool,
}

/// Solves the pricing subproblem for a given first allowed index `f_plus`
/// at unit column cost (phase II). Flow indices are internal and 0-based.
pub fn solve_sp(
    inst: &Instance,
    duals: &DualPrices,
    f_plus: usize,
) -> Result<SpSolution, Error> {
    let flow_arcs = FlowArcs::new(inst, AllocationMode::Discrete);
    let ctx = PricingCtx {
        inst,
        flow_arcs: &flow_arcs,
        r_upper: None,
        mode: AllocationMode::Discrete,
    };
    solve_sp_ctx(&ctx, duals, f_plus, 1.0, None, None)
}

fn solve_sp_ctx(
    ctx: &PricingCtx<'_>,
    duals: &DualPrices,
    f_plus: usize,
    column_cost: f64,
    cutoff: Option<f64>,
    time_limit: Option<f64>,
) -> Result<SpSolution, Error> {
    let inst = ctx.inst;
    let net = inst.network();
    let f_count = inst.flow_count();
    // Flows below f_plus are fixed to zero rate. Flows with nonpositive
    // lambda are excluded as well: their rate is zero in some optimum, and
    // dropping them only raises the first positive index, which never
    // increases the reduced cost (pi is nonpositive).
    let active: Vec<bool> = (0..f_count)
        .map(|f| f >= f_plus && duals.lambda[f] > 1e-12)
        .collect();
    if !active.iter().any(|&a| a) {
        return Ok(SpSolution {
            vector: RateVector::zeros(f_count, net.arcs.len(), net.units.len()),
            objective: column_cost,
            f_plus_plus: None,
            proven: true,
        });
    }
    let mut lp = LpProblem::new();
    let mut integers = Vec::new();
    let vars = add_allocation_block(
        &mut lp,
        &mut integers,
        net,
        inst.flows(),
        &active,
        &ctx.flow_arcs.per_flow,
        ctx.mode,
        ctx.r_upper,
        None,
    );
    for f in 0..f_count {
        if let Some(rv) = vars.r[f] {
            lp.objective[rv] = -duals.lambda[f];
        }
    }
    let sol = solve_mip_with(
        &MipProblem { lp, integers },
        MipLimits {
            time_limit,
            cutoff: cutoff.map(|c| c - column_cost),
            node_limit: None,
        },
    )?;
    match sol.status {
        MipStatus::Infeasible => Err(Error::NumericalBreakdown(
            "pricing subproblem infeasible despite the zero solution".into(),
        )),
        MipStatus::TimeLimit => Ok(SpSolution {
            vector: RateVector::zeros(f_count, net.arcs.len(), net.units.len()),
            objective: column_cost,
            f_plus_plus: None,
            proven: false,
        }),
        MipStatus::Optimal | MipStatus::Feasible => {
            let vector = extract_rate_vector(&vars, &sol.x, net, ctx.mode);
            let f_plus_plus = vector.first_positive();
            Ok(SpSolution {
                vector,
                objective: column_cost + sol.objective,
                f_plus_plus,
                proven: sol.status == MipStatus::Optimal,
            })
        }
    }
}

/// Trace of one subproblem solve within a pricing sweep.
#[derive(Clone, Debug)]
pub struct SpTrace {
    pub f_plus: usize,
    pub f_plus_plus: Option<usize>,
    pub sp_objective: f64,
    pub theta: f64,
    pub duplicate: bool,
}

#[derive(Clone, Debug)]
pub struct PricingResult {
    /// Most negative newly priced column, if any.
    pub best: Option<Column>,
    /// Minimum reduced cost seen over the sweep (duplicates count as 0).
    pub theta: f64,
    /// Every non-duplicate column that priced below `-RC_TOL`.
    pub negatives: Vec<Column>,
    pub trace: Vec<SpTrace>,
    /// False when a limit interrupted the sweep before it was exhaustive.
    pub complete: bool,
}

/// Prices columns against `duals` at unit column cost with exact sweep
/// semantics (phase II defaults).
pub fn price(inst: &Instance, duals: &DualPrices) -> Result<PricingResult, Error> {
    let flow_arcs = FlowArcs::new(inst, AllocationMode::Discrete);
    let ctx = PricingCtx {
        inst,
        flow_arcs: &flow_arcs,
        r_upper: None,
        mode: AllocationMode::Discrete,
    };
    price_ctx(&ctx, duals, 1.0, &[], false, &Budget::unlimited())
}

/// The pricing sweep: start at the first flow, solve the subproblem, record
/// the reduced cost at the solution's first positive index, then jump past
/// that index. Suffix sums of `pi` turn subproblem objectives into reduced
/// costs. `existing` feeds the duplicate guard; a repriced known column is
/// treated as evidence that nothing negative remains at that index.
fn price_ctx(
    ctx: &PricingCtx<'_>,
    duals: &DualPrices,
    column_cost: f64,
    existing: &[Column],
    fast: bool,
    budget: &Budget,
) -> Result<PricingResult, Error> {
    let f_count = ctx.inst.flow_count();
    let mut pi_suffix = vec![0.0; f_count + 1];
    for f in (0..f_count).rev() {
        pi_suffix[f] = pi_suffix[f + 1] + duals.pi[f];
    }
    let cutoff = if fast {
        let min_suffix = pi_suffix[..f_count]
            .iter()
            .fold(f64::INFINITY, |a, &b| a.min(b));
        Some(min_suffix - RC_TOL)
    } else {
        None
    };

    let mut result = PricingResult {
        best: None,
        theta: f64::INFINITY,
        negatives: Vec::new(),
        trace: Vec::new(),
        complete: true,
    };
    let mut best_theta_new = f64::INFINITY;
    let mut f_plus = 0;
    while f_plus < f_count {
        if budget.expired() {
            result.complete = false;
            break;
        }
        let sp = solve_sp_ctx(ctx, duals, f_plus, column_cost, cutoff, budget.remaining())?;
        let Some(fpp) = sp.f_plus_plus else {
            // Zero vector is optimal: no improving support at or beyond
            // f_plus, hence none for any larger index either.
            result.trace.push(SpTrace {
                f_plus,
                f_plus_plus: None,
                sp_objective: sp.objective,
                theta: sp.objective,
                duplicate: false,
            });
            if sp.proven {
                result.theta = result.theta.min(sp.objective);
            } else {
                result.complete = false;
            }
            break;
        };
        let theta = sp.objective - pi_suffix[fpp];
        let duplicate = existing
            .iter()
            .map(|c| &c.vector)
            .chain(result.negatives.iter().map(|c| &c.vector))
            .any(|v| v.rates_close(&sp.vector, DUP_TOL));
        result.trace.push(SpTrace {
            f_plus,
            f_plus_plus: Some(fpp),
            sp_objective: sp.objective,
            theta,
            duplicate,
        });
        if duplicate {
            result.theta = result.theta.min(0.0);
        } else {
            result.theta = result.theta.min(theta);
            if theta < -RC_TOL {
                let column = Column {
                    vector: sp.vector,
                    first_positive: fpp,
                };
                if theta < best_theta_new {
                    best_theta_new = theta;
                    result.best = Some(column.clone());
                }
                result.negatives.push(column);
            }
        }
        if !sp.proven {
            // Without a proven optimum the skip is not justified; stop the
            // sweep and let the caller act on what was found.
            result.complete = false;
            break;
        }
        if fast && theta < -RC_TOL {
            // fast mode: one improving column is enough for this iteration
            result.complete = false;
            break;
        }
        f_plus = fpp + 1;
    }
    if result.trace.is_empty() {
        result.theta = column_cost;
    }
    Ok(result)
}

/// Wall-clock budget threaded through the loops; `None` means unlimited.
struct Budget {
    end: Option<Instant>,
}

impl Budget {
    fn new(limit: Option<f64>) -> Self {
        Budget {
            end: limit.map(|s| Instant::now() + Duration::from_secs_f64(s.max(0.0))),
        }
    }

    fn unlimited() -> Self {
        Budget { end: None }
    }

    fn remaining(&self) -> Option<f64> {
        self.end
            .map(|e| e.saturating_duration_since(Instant::now()).as_secs_f64())
    }

    fn expired(&self) -> bool {
        self.remaining().is_some_and(|r| r <= 0.0)
    }
}

/// Outcome of the feasibility phase.
pub enum Phase1Outcome {
    Feasible {
        columns: Vec<Column>,
        state: RmpState,
        iterations: u64,
    },
    /// Total unmet demand cannot be driven to zero; the final duals certify
    /// the verdict.
    Infeasible {
        residual: f64,
        certificate: DualPrices,
        iterations: u64,
    },
    TimeLimit {
        iterations: u64,
    },
}

/// Runs column generation on the unmet-demand objective until it reaches
/// zero or is proven positive.
pub fn phase1(inst: &Instance) -> Result<Phase1Outcome, Error> {
    let flow_arcs = FlowArcs::new(inst, AllocationMode::Discrete);
    let mut r_upper = Vec::with_capacity(inst.flow_count());
    for f in 0..inst.flow_count() {
        r_upper.push(max_single_flow_rate(inst, f)?);
    }
    let ctx = PricingCtx {
        inst,
        flow_arcs: &flow_arcs,
        r_upper: Some(&r_upper),
        mode: AllocationMode::Discrete,
    };
    phase1_ctx(&ctx, Vec::new(), false, &Budget::unlimited())
}

fn phase1_ctx(
    ctx: &PricingCtx<'_>,
    mut columns: Vec<Column>,
    fast: bool,
    budget: &Budget,
) -> Result<Phase1Outcome, Error> {
    let inst = ctx.inst;
    let total_size: f64 = inst.flows().iter().map(|f| f.size).sum();
    let mut iterations = 0;
    loop {
        let state = solve_rmp(inst, &columns, Phase::One)?
            .expect("phase-I master is always feasible");
        iterations += 1;
        if state.objective <= 1e-6 * total_size {
            return Ok(Phase1Outcome::Feasible {
                columns,
                state,
                iterations,
            });
        }
        if budget.expired() {
            return Ok(Phase1Outcome::TimeLimit { iterations });
        }
        let pricing = price_ctx(ctx, &state.duals, 0.0, &columns, fast, budget)?;
        if pricing.negatives.is_empty() {
            if pricing.complete {
                return Ok(Phase1Outcome::Infeasible {
                    residual: state.objective,
                    certificate: state.duals,
                    iterations,
                });
            }
            return Ok(Phase1Outcome::TimeLimit { iterations });
        }
        columns.extend(pricing.negatives);
        if iterations > 100_000 {
            return Err(Error::NumericalBreakdown(
                "phase I failed to converge".into(),
            ));
        }
    }
}

/// Result of schedule construction from a master optimum.
#[derive(Clone, Debug)]
pub struct ConstructedSchedule {
    pub schedule: Schedule,
    /// `checkpoints[f]`: time by which flow `f` is surely complete.
    pub checkpoints: Vec<f64>,
    /// First-positive scan operations; bounded by |V⁺| · F.
    pub bucket_ops: u64,
}

/// Buckets the positive-duration columns by first positive flow index and
/// emits them bucket by bucket (insertion order within a bucket).
pub fn construct_schedule(
    inst: &Instance,
    columns: &[Column],
    state: &RmpState,
) -> Result<ConstructedSchedule, Error> {
    let total_size: f64 = inst.flows().iter().map(|f| f.size).sum();
    if state
        .artificials
        .iter()
        .any(|&a| a > 1e-7 * (1.0 + total_size))
    {
        return Err(Error::InfeasibleState);
    }
    let f_count = inst.flow_count();
    let mut buckets: Vec<Vec<usize>> = vec![Vec::new(); f_count];
    let mut ops = 0u64;
    for (v, col) in columns.iter().enumerate() {
        if state.x.get(v).copied().unwrap_or(0.0) <= POS_TOL {
            continue;
        }
        let mut first = None;
        for (f, &r) in col.vector.rates.iter().enumerate() {
            ops += 1;
            if r > POS_TOL {
                first = Some(f);
                break;
            }
        }
        let first = first.expect("column has a positive rate");
        debug_assert_eq!(first, col.first_positive);
        buckets[first].push(v);
    }
    let mut schedule = Schedule::default();
    let mut checkpoints = vec![0.0; f_count];
    let mut clock = 0.0;
    for f in 0..f_count {
        for &v in &buckets[f] {
            schedule.segments.push(Segment {
                vector: columns[v].vector.clone(),
                duration: state.x[v],
            });
            clock += state.x[v];
        }
        checkpoints[f] = clock;
    }
    Ok(ConstructedSchedule {
        schedule,
        checkpoints,
        bucket_ops: ops,
    })
}

/// Converts a schedule into initial columns, deduplicating by rate vector
/// and dropping zero-rate segments.
pub fn schedule_to_columns(sched: &Schedule) -> Vec<Column> {
    let mut out: Vec<Column> = Vec::new();
    for seg in &sched.segments {
        if seg.duration <= 0.0 {
            continue;
        }
        let Some(col) = Column::new(seg.vector.clone()) else {
            continue;
        };
        if out.iter().any(|c| c.vector.rates_close(&col.vector, DUP_TOL)) {
            continue;
        }
        out.push(col);
    }
    out
}

#[derive(Clone, Debug, Default)]
pub struct CgaOptions {
    /// Seed the column pool from this schedule and skip phase I.
    pub warm_start: Option<Schedule>,
    /// `(lower_bound, p)`: stop once `(obj − lb)/lb ≤ p/100`, reporting a
    /// feasible solution with a proven gap.
    pub gap_bound: Option<(f64, f64)>,
    /// Accept the first improving column per sweep instead of the sweep
    /// minimum; termination still requires a final exact pass.
    pub fast_pricing: bool,
    pub time_limit: Option<f64>,
    /// Relax unit counts to reals (the continuous-allocation variant).
    pub continuous: bool,
    /// Solver name for the report; defaults to "cga".
    pub label: Option<String>,
}

#[derive(Clone, Debug)]
pub struct CgaOutcome {
    pub report: SolveReport,
    pub schedule: Option<Schedule>,
    pub state: Option<RmpState>,
    pub columns: Vec<Column>,
    /// Master objective after each phase-II iteration (nonincreasing).
    pub rmp_objectives: Vec<f64>,
    pub phase1_iterations: u64,
    pub phase2_iterations: u64,
    pub phase1_time: f64,
    pub phase2_time: f64,
}

/// Full solver: phase I (or warm start), then pricing iterations until
/// proven optimal, gap-bounded, or out of time.
pub fn solve_cga(inst: &Instance, options: &CgaOptions) -> Result<CgaOutcome, Error> {
    let started = Instant::now();
    let budget = Budget::new(options.time_limit);
    let label = options.label.clone().unwrap_or_else(|| "cga".into());
    let mode = if options.continuous {
        AllocationMode::Continuous
    } else {
        AllocationMode::Discrete
    };
    let flow_arcs = FlowArcs::new(inst, mode);
    let r_upper: Option<Vec<f64>> = if options.continuous {
        None
    } else {
        let mut v = Vec::with_capacity(inst.flow_count());
        for f in 0..inst.flow_count() {
            v.push(max_single_flow_rate(inst, f)?);
        }
        Some(v)
    };
    let ctx = PricingCtx {
        inst,
        flow_arcs: &flow_arcs,
        r_upper: r_upper.as_deref(),
        mode,
    };

    let mut outcome = CgaOutcome {
        report: SolveReport::new(&label, SolveStatus::TimeLimit),
        schedule: None,
        state: None,
        columns: Vec::new(),
        rmp_objectives: Vec::new(),
        phase1_iterations: 0,
        phase2_iterations: 0,
        phase1_time: 0.0,
        phase2_time: 0.0,
    };

    // Initial columns: warm start when it yields a phase-II-feasible pool,
    // otherwise phase I.
    let mut columns: Vec<Column> = Vec::new();
    let mut have_feasible_pool = false;
    if let Some(sched) = &options.warm_start {
        columns = schedule_to_columns(sched);
        if !columns.is_empty()
            && solve_rmp(inst, &columns, Phase::Two)?.is_some()
        {
            have_feasible_pool = true;
        }
    }
    if !have_feasible_pool {
        let phase1_started = Instant::now();
        let outcome1 = phase1_ctx(&ctx, std::mem::take(&mut columns), options.fast_pricing, &budget)?;
        outcome.phase1_time = phase1_started.elapsed().as_secs_f64();
        match outcome1 {
            Phase1Outcome::Feasible {
                columns: cols,
                iterations,
                ..
            } => {
                columns = cols;
                outcome.phase1_iterations = iterations;
            }
            Phase1Outcome::Infeasible {
                residual,
                iterations,
                ..
            } => {
                outcome.phase1_iterations = iterations;
                outcome.report.status = SolveStatus::Infeasible;
                outcome.report.iterations = iterations;
                outcome.report.wall_time = started.elapsed().as_secs_f64();
                outcome.report.note =
                    Some(format!("phase I proved unmet demand ≥ {residual:.6}"));
                return Ok(outcome);
            }
            Phase1Outcome::TimeLimit { iterations } => {
                outcome.phase1_iterations = iterations;
                outcome.report.status = SolveStatus::TimeLimit;
                outcome.report.iterations = iterations;
                outcome.report.wall_time = started.elapsed().as_secs_f64();
                return Ok(outcome);
            }
        }
    }

    // Phase II.
    let phase2_started = Instant::now();
    let status;
    let mut note = None;
    let mut state = loop {
        let state = solve_rmp(inst, &columns, Phase::Two)?.ok_or_else(|| {
            Error::NumericalBreakdown("phase-II master infeasible after phase I".into())
        })?;
        outcome.phase2_iterations += 1;
        if let Some(prev) = outcome.rmp_objectives.last() {
            debug_assert!(
                state.objective <= prev + 1e-7,
                "master objective must not increase"
            );
        }
        outcome.rmp_objectives.push(state.objective);

        if let Some((lb, p)) = options.gap_bound {
            if lb > POS_TOL && (state.objective - lb) / lb <= p / 100.0 + 1e-12 {
                status = SolveStatus::Feasible;
                note = Some(format!(
                    "stopped at proven gap ≤ {p}% against lower bound {lb}"
                ));
                outcome.report.lower_bound = Some(lb);
                break state;
            }
        }
        if budget.expired() {
            status = SolveStatus::TimeLimit;
            break state;
        }
        let pricing = price_ctx(
            &ctx,
            &state.duals,
            1.0,
            &columns,
            options.fast_pricing,
            &budget,
        )?;
        if pricing.negatives.is_empty() {
            if pricing.complete && pricing.theta >= -RC_TOL {
                status = SolveStatus::Optimal;
                outcome.report.lower_bound = Some(state.objective);
                break state;
            }
            status = SolveStatus::TimeLimit;
            break state;
        }
        columns.extend(pricing.negatives);
        if outcome.phase2_iterations > 100_000 {
            return Err(Error::NumericalBreakdown(
                "phase II failed to converge".into(),
            ));
        }
    };
    outcome.phase2_time = phase2_started.elapsed().as_secs_f64();

    // Re-solve once in case the loop broke before the last added columns
    // were priced into the master.
    if status == SolveStatus::TimeLimit {
        if let Some(better) = solve_rmp(inst, &columns, Phase::Two)? {
            if better.objective <= state.objective {
                state = better;
            }
        }
    }

    let constructed = construct_schedule(inst, &columns, &state)?;
    outcome.report.status = status;
    outcome.report.objective = Some(state.objective);
    outcome.report.iterations = outcome.phase1_iterations + outcome.phase2_iterations;
    outcome.report.wall_time = started.elapsed().as_secs_f64();
    if let Some(n) = note {
        outcome.report.note = Some(n);
    }
    outcome.report.check();
    outcome.schedule = Some(constructed.schedule);
    outcome.state = Some(state);
    outcome.columns = columns;
    Ok(outcome)
}
