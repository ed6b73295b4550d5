//! Time-slicing solver: a mixed-integer program over a slice grid, one
//! capacity allocation per slice, plus the single-slice LP bisection that
//! yields a makespan lower bound.
//!
//! The model is exact with respect to its grid when every bounded deadline
//! coincides with a slice boundary (grids from [`make_slices`] always do).
//! Arbitrary grids are allowed; delivery is then restricted to the slices
//! that end at or before each deadline, which is conservative: the solver
//! may report infeasibility or a longer makespan than the true optimum even
//! on feasible instances. A too-coarse grid and a genuinely infeasible
//! instance are indistinguishable from the solver's verdict alone.

use std::str::FromStr;
use std::time::Instant;

use crate::formulation::{
    add_allocation_block, extract_rate_vector, AllocationMode, BlockVars, FlowArcs,
};
use crate::lp::{solve_lp, LpProblem, LpStatus, Relation};
use crate::mip::{solve_mip, MipProblem, MipStatus};
use crate::model::{
    earliest_completion, max_single_flow_rate, Instance, Schedule, Segment, SolveReport,
    SolveStatus, TIME_ATOL,
};
use crate::Error;

/// Slice-count multiplier relative to the flow count.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SliceMultiplier {
    X1,
    X2,
    X3,
}

impl SliceMultiplier {
    pub fn factor(self) -> usize {
        match self {
            SliceMultiplier::X1 => 1,
            SliceMultiplier::X2 => 2,
            SliceMultiplier::X3 => 3,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            SliceMultiplier::X1 => "1x",
            SliceMultiplier::X2 => "2x",
            SliceMultiplier::X3 => "3x",
        }
    }
}

impl FromStr for SliceMultiplier {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "1x" => Ok(SliceMultiplier::X1),
            "2x" => Ok(SliceMultiplier::X2),
            "3x" => Ok(SliceMultiplier::X3),
            other => Err(Error::ParseError(format!(
                "unknown slice multiplier `{other}` (expected 1x, 2x or 3x)"
            ))),
        }
    }
}

/// Strictly increasing slice boundaries starting at 0.
#[derive(Clone, Debug, PartialEq)]
pub struct SliceGrid {
    boundaries: Vec<f64>,
}

impl SliceGrid {
    /// `boundaries` must start at 0 and be strictly increasing with at least
    /// one slice.
    pub fn from_boundaries(boundaries: Vec<f64>) -> Result<Self, Error> {
        if boundaries.len() < 2 || boundaries[0] != 0.0 {
            return Err(Error::ParseError(
                "slice boundaries must start at 0 and define at least one slice".into(),
            ));
        }
        for w in boundaries.windows(2) {
            if !(w[1] > w[0]) || !w[1].is_finite() {
                return Err(Error::ParseError(
                    "slice boundaries must be finite and strictly increasing".into(),
                ));
            }
        }
        Ok(SliceGrid { boundaries })
    }

    pub fn boundaries(&self) -> &[f64] {
        &self.boundaries
    }

    pub fn slice_count(&self) -> usize {
        self.boundaries.len() - 1
    }

    pub fn slice_len(&self, t: usize) -> f64 {
        self.boundaries[t + 1] - self.boundaries[t]
    }

    pub fn slice_end(&self, t: usize) -> f64 {
        self.boundaries[t + 1]
    }

    /// True when every bounded deadline coincides with some boundary, the
    /// condition under which the sliced model is exact w.r.t. this grid.
    pub fn is_deadline_aligned(&self, inst: &Instance) -> bool {
        inst.flows().iter().all(|f| match f.deadline {
            None => true,
            Some(t) => self
                .boundaries
                .iter()
                .any(|&b| (b - t).abs() <= TIME_ATOL * (1.0 + t)),
        })
    }
}

/// Builds the slice grid: 1x puts boundaries at the distinct bounded
/// deadlines; 2x/3x then repeatedly bisect the longest slice (earliest one
/// among ties) until the slice count reaches `multiplier × F`. When some
/// deadline is unbounded the grid is extended to `horizon`, defaulting to
/// Σ_f e_f (an upper bound on sequential completion).
pub fn make_slices(
    inst: &Instance,
    multiplier: SliceMultiplier,
    horizon: Option<f64>,
) -> Result<SliceGrid, Error> {
    let mut deadlines: Vec<f64> = inst.flows().iter().filter_map(|f| f.deadline).collect();
    deadlines.sort_by(|a, b| a.partial_cmp(b).unwrap());
    deadlines.dedup();
    let any_unbounded = inst.flows().iter().any(|f| f.deadline.is_none());

    let mut boundaries = vec![0.0];
    boundaries.extend_from_slice(&deadlines);
    if deadlines.is_empty() {
        let h = match horizon {
            Some(h) if h > 0.0 => h,
            Some(_) => return Err(Error::ParseError("horizon must be positive".into())),
            None => return Err(Error::NoDeadlines),
        };
        boundaries.push(h);
    } else if any_unbounded {
        let h = match horizon {
            Some(h) => h,
            None => {
                let mut total = 0.0;
                for f in 0..inst.flow_count() {
                    total += earliest_completion(inst, f)?;
                }
                total
            }
        };
        if h > *boundaries.last().unwrap() + TIME_ATOL {
            boundaries.push(h);
        }
    }

    let target = multiplier.factor() * inst.flow_count();
    if multiplier != SliceMultiplier::X1 {
        while boundaries.len() - 1 < target {
            // bisect the earliest longest slice
            let mut best = 0;
            let mut best_len = boundaries[1] - boundaries[0];
            for t in 1..boundaries.len() - 1 {
                let len = boundaries[t + 1] - boundaries[t];
                if len > best_len + TIME_ATOL {
                    best = t;
                    best_len = len;
                }
            }
            boundaries.insert(best + 1, boundaries[best] + best_len / 2.0);
        }
    }
    SliceGrid::from_boundaries(boundaries)
}

/// Variable layout of a built sliced model, for solution extraction.
pub struct TsaModel {
    pub problem: MipProblem,
    blocks: Vec<BlockVars>,
    w: Vec<usize>,
}

/// Builds the sliced MIP: per slice one allocation block scaled by a binary
/// use indicator, demand equalities over the slices ending by each deadline,
/// rate/indicator linking, and consecutive-use ordering of the indicators.
pub fn build_tsa(inst: &Instance, grid: &SliceGrid) -> Result<TsaModel, Error> {
    let net = inst.network();
    let flows = inst.flows();
    let f_count = flows.len();
    let arcs = FlowArcs::new(inst, AllocationMode::Discrete);
    let mut r_upper = Vec::with_capacity(f_count);
    for f in 0..f_count {
        r_upper.push(max_single_flow_rate(inst, f)?);
    }

    let mut lp = LpProblem::new();
    let mut integers = Vec::new();
    let slices = grid.slice_count();
    let mut w = Vec::with_capacity(slices);
    let mut blocks = Vec::with_capacity(slices);
    for t in 0..slices {
        let wv = lp.add_var(grid.slice_len(t), 0.0, 1.0);
        integers.push(wv);
        w.push(wv);
        let block = add_allocation_block(
            &mut lp,
            &mut integers,
            net,
            flows,
            &vec![true; f_count],
            &arcs.per_flow,
            AllocationMode::Discrete,
            Some(&r_upper),
            Some(wv),
        );
        blocks.push(block);
    }

    // Entire demand delivered in the slices ending at or before the deadline.
    for (f, flow) in flows.iter().enumerate() {
        let mut coeffs: Vec<(usize, f64)> = Vec::new();
        for t in 0..slices {
            let in_window = match flow.deadline {
                None => true,
                Some(d) => grid.slice_end(t) <= d + TIME_ATOL * (1.0 + d),
            };
            if in_window {
                if let Some(rv) = blocks[t].r[f] {
                    coeffs.push((rv, grid.slice_len(t)));
                }
            }
        }
        lp.add_row(&coeffs, Relation::Eq, flow.size);
    }

    // |τ|·r ≤ s·w links the indicators to any positive rate.
    for t in 0..slices {
        for (f, flow) in flows.iter().enumerate() {
            if let Some(rv) = blocks[t].r[f] {
                lp.add_row(
                    &[(rv, grid.slice_len(t)), (w[t], -flow.size)],
                    Relation::Le,
                    0.0,
                );
            }
        }
    }

    // Slices are used consecutively from the start.
    for t in 1..slices {
        lp.add_row(&[(w[t], 1.0), (w[t - 1], -1.0)], Relation::Le, 0.0);
    }

    Ok(TsaModel {
        problem: MipProblem { lp, integers },
        blocks,
        w,
    })
}

/// Extracts one schedule segment per used slice (zero-rate used slices
/// included; finish times only advance on positive rates).
fn extract_schedule(inst: &Instance, grid: &SliceGrid, model: &TsaModel, x: &[f64]) -> Schedule {
    let mut segments = Vec::new();
    for t in 0..grid.slice_count() {
        if x[model.w[t]] < 0.5 {
            debug_assert!(
                (t + 1..grid.slice_count()).all(|u| x[model.w[u]] < 0.5),
                "used slices must form a prefix"
            );
            break;
        }
        let vector = extract_rate_vector(
            &model.blocks[t],
            x,
            inst.network(),
            AllocationMode::Discrete,
        );
        segments.push(Segment {
            vector,
            duration: grid.slice_len(t),
        });
    }
    Schedule { segments }
}

/// Solves the sliced model end to end for a standard grid.
pub fn solve_tsa(
    inst: &Instance,
    multiplier: SliceMultiplier,
    time_limit: Option<f64>,
) -> Result<(SolveReport, Option<Schedule>), Error> {
    let grid = make_slices(inst, multiplier, None)?;
    solve_tsa_on_grid(inst, &grid, time_limit, &format!("tsa-{}", multiplier.label()))
}

/// Solves the sliced model on an arbitrary grid.
pub fn solve_tsa_on_grid(
    inst: &Instance,
    grid: &SliceGrid,
    time_limit: Option<f64>,
    solver_name: &str,
) -> Result<(SolveReport, Option<Schedule>), Error> {
    let started = Instant::now();
    let model = build_tsa(inst, grid)?;
    let sol = solve_mip(&model.problem, time_limit)?;
    let mut report = SolveReport::new(solver_name, SolveStatus::Optimal);
    report.iterations = sol.nodes;
    report.wall_time = started.elapsed().as_secs_f64();
    match sol.status {
        MipStatus::Optimal | MipStatus::Feasible => {
            report.status = if sol.status == MipStatus::Optimal {
                SolveStatus::Optimal
            } else {
                SolveStatus::Feasible
            };
            report.objective = Some(sol.objective);
            report.lower_bound = Some(sol.best_bound);
            report.note = Some("bound is w.r.t. the slice grid, not the exact problem".into());
            let schedule = extract_schedule(inst, grid, &model, &sol.x);
            report.check();
            Ok((report, Some(schedule)))
        }
        MipStatus::Infeasible => {
            report.status = SolveStatus::Infeasible;
            report.note = Some(
                "grid-or-instance infeasible: a too-coarse grid and an infeasible instance are indistinguishable"
                    .into(),
            );
            Ok((report, None))
        }
        MipStatus::TimeLimit => {
            report.status = SolveStatus::TimeLimit;
            report.lower_bound = Some(sol.best_bound);
            report.note = Some("bound is w.r.t. the slice grid, not the exact problem".into());
            Ok((report, None))
        }
    }
}

/// Lower bound on the exact optimum: bisects the horizon `T` of the
/// single-slice LP relaxation (deadline rows dropped, unit counts
/// continuous) and returns the largest `T`, within `tol`, whose relaxation
/// is still infeasible. Returns 0 when even `T = tol` is feasible.
pub fn rtsa_lower_bound(inst: &Instance, tol: f64) -> Result<f64, Error> {
    assert!(tol > 0.0, "tolerance must be positive");
    let mut hi = 0.0;
    for f in 0..inst.flow_count() {
        hi += earliest_completion(inst, f)?; // Unreachable when a max rate is 0
    }
    if single_slice_feasible(inst, tol)? {
        return Ok(0.0);
    }
    if !single_slice_feasible(inst, hi)? {
        // sequential completion is always relaxation-feasible; numeric dust
        return Ok(hi);
    }
    let mut lo = tol;
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if single_slice_feasible(inst, mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(lo)
}

/// LP relaxation of the sliced model with the single slice `[0, T]` and no
/// deadline rows: can all demands be delivered simultaneously in time `T`?
fn single_slice_feasible(inst: &Instance, horizon: f64) -> Result<bool, Error> {
    let net = inst.network();
    let flows = inst.flows();
    let f_count = flows.len();
    let arcs = FlowArcs::new(inst, AllocationMode::Continuous);
    let mut lp = LpProblem::new();
    let mut integers = Vec::new();
    let wv = lp.add_var(horizon, 0.0, 1.0);
    let block = add_allocation_block(
        &mut lp,
        &mut integers,
        net,
        flows,
        &vec![true; f_count],
        &arcs.per_flow,
        AllocationMode::Continuous,
        None,
        Some(wv),
    );
    debug_assert!(integers.is_empty());
    for (f, flow) in flows.iter().enumerate() {
        let Some(rv) = block.r[f] else {
            return Ok(false); // no admissible arc: demand cannot move at all
        };
        lp.add_row(&[(rv, horizon)], Relation::Eq, flow.size);
        lp.add_row(&[(rv, horizon), (wv, -flow.size)], Relation::Le, 0.0);
    }
    let sol = solve_lp(&lp)?;
    Ok(sol.status != LpStatus::Infeasible)
}
