//! Deadline-weighted max-flow heuristic: repeatedly maximize the weighted
//! sum of end-to-end rates, hold the optimal rate vector until the first
//! remaining flow completes, then repeat with that flow fixed to zero.
//! Fails with `NoSolution` when the next completing flow would miss its
//! deadline or when positive demand remains but no rate can be allocated;
//! such a failure says nothing about instance feasibility.

use std::time::Instant;

use crate::formulation::{
    add_allocation_block, extract_rate_vector, AllocationMode, FlowArcs,
};
use crate::lp::LpProblem;
use crate::mip::{solve_mip_with, MipLimits, MipProblem, MipStatus};
use crate::model::{
    max_single_flow_rate, Instance, RateVector, Schedule, Segment, SolveReport, SolveStatus,
    POS_TOL, TIME_ATOL,
};
use crate::Error;

/// Per-flow priority weights, strictly positive, internal order.
#[derive(Clone, Debug)]
pub struct MfaWeights {
    pub weights: Vec<f64>,
}

impl MfaWeights {
    /// The default weighting `1/t_f²`; flows without a deadline get ε=1e−6.
    pub fn default_for(inst: &Instance) -> Self {
        let weights = inst
            .flows()
            .iter()
            .map(|f| match f.deadline {
                Some(t) => 1.0 / (t * t),
                None => 1e-6,
            })
            .collect();
        MfaWeights { weights }
    }

    pub fn validate(&self, inst: &Instance) -> Result<(), Error> {
        if self.weights.len() != inst.flow_count() {
            return Err(Error::MalformedScenario(
                "weight vector length differs from flow count".into(),
            ));
        }
        if self.weights.iter().any(|&w| !(w > 0.0) || !w.is_finite()) {
            return Err(Error::MalformedScenario(
                "weights must be finite and strictly positive".into(),
            ));
        }
        Ok(())
    }
}

/// One iteration: the weighted-rate-maximal vector over the flows with
/// remaining demand (completed flows are fixed to zero rate).
pub fn mfa_step(
    inst: &Instance,
    remaining: &[f64],
    weights: &MfaWeights,
) -> Result<RateVector, Error> {
    let flow_arcs = FlowArcs::new(inst, AllocationMode::Discrete);
    let mut r_upper = Vec::with_capacity(inst.flow_count());
    for f in 0..inst.flow_count() {
        r_upper.push(max_single_flow_rate(inst, f)?);
    }
    mfa_step_ctx(inst, remaining, weights, &flow_arcs, &r_upper, None)
}

fn mfa_step_ctx(
    inst: &Instance,
    remaining: &[f64],
    weights: &MfaWeights,
    flow_arcs: &FlowArcs,
    r_upper: &[f64],
    time_limit: Option<f64>,
) -> Result<RateVector, Error> {
    assert!(
        remaining.iter().any(|&s| s > POS_TOL),
        "some demand must remain"
    );
    let net = inst.network();
    let active: Vec<bool> = remaining.iter().map(|&s| s > POS_TOL).collect();
    let mut lp = LpProblem::new();
    let mut integers = Vec::new();
    let vars = add_allocation_block(
        &mut lp,
        &mut integers,
        net,
        inst.flows(),
        &active,
        &flow_arcs.per_flow,
        AllocationMode::Discrete,
        Some(r_upper),
        None,
    );
    for f in 0..inst.flow_count() {
        if let Some(rv) = vars.r[f] {
            lp.objective[rv] = -weights.weights[f];
        }
    }
    let sol = solve_mip_with(
        &MipProblem { lp, integers },
        MipLimits {
            time_limit,
            ..MipLimits::default()
        },
    )?;
    match sol.status {
        MipStatus::Optimal | MipStatus::Feasible => {
            Ok(extract_rate_vector(&vars, &sol.x, net, AllocationMode::Discrete))
        }
        MipStatus::Infeasible => Err(Error::NumericalBreakdown(
            "weighted rate maximization infeasible despite the zero solution".into(),
        )),
        MipStatus::TimeLimit => Ok(RateVector::zeros(
            inst.flow_count(),
            net.arcs.len(),
            net.units.len(),
        )),
    }
}

/// Runs the heuristic with the default `1/t²` weights.
pub fn solve_mfa(
    inst: &Instance,
    time_limit: Option<f64>,
) -> Result<(SolveReport, Option<Schedule>), Error> {
    solve_mfa_weighted(inst, &MfaWeights::default_for(inst), time_limit)
}

pub fn solve_mfa_weighted(
    inst: &Instance,
    weights: &MfaWeights,
    time_limit: Option<f64>,
) -> Result<(SolveReport, Option<Schedule>), Error> {
    weights.validate(inst)?;
    let started = Instant::now();
    let f_count = inst.flow_count();
    let flow_arcs = FlowArcs::new(inst, AllocationMode::Discrete);
    let mut r_upper = Vec::with_capacity(f_count);
    for f in 0..f_count {
        r_upper.push(max_single_flow_rate(inst, f)?);
    }

    let sizes: Vec<f64> = inst.flows().iter().map(|f| f.size).collect();
    let mut remaining = sizes.clone();
    let rem_tol: Vec<f64> = sizes.iter().map(|s| 1e-9 * s.max(1.0)).collect();
    let mut clock = 0.0;
    let mut segments: Vec<Segment> = Vec::new();
    let mut iterations = 0u64;

    let mut report = SolveReport::new("mfa", SolveStatus::NoSolution);
    while remaining
        .iter()
        .zip(&rem_tol)
        .any(|(&s, &tol)| s > tol)
    {
        if let Some(limit) = time_limit {
            if started.elapsed().as_secs_f64() >= limit {
                report.status = SolveStatus::TimeLimit;
                report.iterations = iterations;
                report.wall_time = started.elapsed().as_secs_f64();
                return Ok((report, None));
            }
        }
        iterations += 1;
        debug_assert!(
            iterations <= f_count as u64,
            "every iteration completes at least one flow"
        );
        let work: Vec<f64> = remaining
            .iter()
            .zip(&rem_tol)
            .map(|(&s, &tol)| if s > tol { s } else { 0.0 })
            .collect();
        let rates = mfa_step_ctx(
            inst,
            &work,
            weights,
            &flow_arcs,
            &r_upper,
            time_limit.map(|l| (l - started.elapsed().as_secs_f64()).max(0.0)),
        )?;

        // delta: time until the first remaining flow completes
        let mut delta = f64::INFINITY;
        let mut completing = None;
        for f in 0..f_count {
            if work[f] > 0.0 && rates.rates[f] > POS_TOL {
                let t = work[f] / rates.rates[f];
                if t < delta - TIME_ATOL {
                    delta = t;
                    completing = Some(f);
                }
                // ties keep the smallest internal index, i.e. the tightest
                // deadline, since f ascends
            }
        }
        let Some(f_star) = completing else {
            let timed_out = time_limit
                .is_some_and(|limit| started.elapsed().as_secs_f64() >= limit);
            report.status = if timed_out {
                SolveStatus::TimeLimit
            } else {
                SolveStatus::NoSolution
            };
            report.iterations = iterations;
            report.wall_time = started.elapsed().as_secs_f64();
            if !timed_out {
                report.note = Some("no positive rate for the remaining demand".into());
            }
            return Ok((report, None));
        };
        if let Some(deadline) = inst.flows()[f_star].deadline {
            if clock + delta > deadline + TIME_ATOL {
                report.status = SolveStatus::NoSolution;
                report.iterations = iterations;
                report.wall_time = started.elapsed().as_secs_f64();
                report.note = Some(format!(
                    "flow {} would complete at {:.6} after its deadline {}",
                    inst.to_external(f_star),
                    clock + delta,
                    deadline
                ));
                return Ok((report, None));
            }
        }
        for f in 0..f_count {
            remaining[f] = (remaining[f] - rates.rates[f] * delta).max(0.0);
            debug_assert!(remaining[f] <= sizes[f] + 1e-9);
        }
        remaining[f_star] = 0.0;
        clock += delta;
        segments.push(Segment {
            vector: rates,
            duration: delta,
        });
    }

    report.status = SolveStatus::Feasible;
    report.objective = Some(clock);
    report.iterations = iterations;
    report.wall_time = started.elapsed().as_secs_f64();
    Ok((report, Some(Schedule { segments })))
}
