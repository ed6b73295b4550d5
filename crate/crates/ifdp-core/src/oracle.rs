//! Exact reference solvers for small instances: exhaustive enumeration of
//! maximal rate vectors with a master LP over all of them (ground truth for
//! column generation), an earliest-deadline-first solver for the
//! single-bottleneck special case, and the continuous-allocation variant.

use std::time::Instant;

use crate::cga::{self, CgaOptions, Column, Phase};
use crate::formulation::{self, admissible_arcs, AllocationMode};
use crate::lp::{LpProblem, Relation};
use crate::mip::{solve_mip, MipProblem};
use crate::model::{
    evaluate_schedule_with, max_single_flow_rate, Instance, RateVector, Schedule, Segment,
    SolveReport, SolveStatus, POS_TOL, TIME_ATOL,
};
use crate::Error;

/// Enumeration caps: node count, flow count, and the total number of
/// smallest-unit slots over all arcs (Σ floor(c/u_min)).
#[derive(Clone, Copy, Debug)]
pub struct EnumCaps {
    pub max_nodes: usize,
    pub max_flows: usize,
    pub max_unit_slots: usize,
}

impl Default for EnumCaps {
    fn default() -> Self {
        EnumCaps {
            max_nodes: 5,
            max_flows: 4,
            max_unit_slots: 12,
        }
    }
}

/// Combination limit guarding the cross-arc product enumeration.
const MAX_COMBINATIONS: f64 = 2_000_000.0;

/// Enumerates every maximal achievable rate vector: all integer unit
/// assignments per arc (reduced to Pareto-maximal per-arc grants), per-flow
/// max-flow on the granted capacities, then componentwise domination
/// pruning. The result is deduplicated and canonically ordered.
pub fn enumerate_rate_vectors(
    inst: &Instance,
    caps: EnumCaps,
) -> Result<Vec<RateVector>, Error> {
    enumerate_impl(inst, caps, true)
}

fn enumerate_impl(
    inst: &Instance,
    caps: EnumCaps,
    prune_dominated: bool,
) -> Result<Vec<RateVector>, Error> {
    let net = inst.network();
    let f_count = inst.flow_count();
    if net.node_count > caps.max_nodes {
        return Err(Error::TooLarge(format!(
            "{} nodes exceed the cap of {}",
            net.node_count, caps.max_nodes
        )));
    }
    if f_count > caps.max_flows {
        return Err(Error::TooLarge(format!(
            "{f_count} flows exceed the cap of {}",
            caps.max_flows
        )));
    }
    let u_min = net.units[0];
    let slots: usize = net
        .arcs
        .iter()
        .map(|a| (a.capacity / u_min).floor() as usize)
        .sum();
    if slots > caps.max_unit_slots {
        return Err(Error::TooLarge(format!(
            "{slots} unit slots exceed the cap of {}",
            caps.max_unit_slots
        )));
    }

    // Restrict each flow to arcs on some origin→destination path.
    let admissible: Vec<Vec<usize>> = inst
        .flows()
        .iter()
        .map(|f| admissible_arcs(net, f.origin, f.destination, AllocationMode::Discrete))
        .collect();
    let mut relevant: Vec<Vec<usize>> = vec![Vec::new(); net.arcs.len()]; // flows per arc
    for (f, arcs) in admissible.iter().enumerate() {
        for &a in arcs {
            relevant[a].push(f);
        }
    }

    // Per-arc grant options, Pareto-maximal in the granted-capacity vector.
    struct ArcOptions {
        arc: usize,
        /// (grant per relevant flow, unit counts per relevant flow)
        options: Vec<(Vec<f64>, Vec<Vec<f64>>)>,
    }
    let mut per_arc: Vec<ArcOptions> = Vec::new();
    let mut combinations = 1.0f64;
    for a in 0..net.arcs.len() {
        if relevant[a].is_empty() {
            continue;
        }
        let options = arc_grant_options(net.arcs[a].capacity, &net.units, relevant[a].len());
        combinations *= options.len() as f64;
        if combinations > MAX_COMBINATIONS {
            return Err(Error::TooLarge(
                "per-arc allocation combinations exceed the enumeration limit".into(),
            ));
        }
        per_arc.push(ArcOptions { arc: a, options });
    }

    // Cross product over arcs; per combination, each flow's rate is its
    // max-flow on the granted per-arc capacities (flows decouple once the
    // allocation is fixed).
    let mut kept: Vec<RateVector> = Vec::new();
    let mut choice = vec![0usize; per_arc.len()];
    loop {
        let mut grants = vec![vec![0.0; net.arcs.len()]; f_count];
        let mut counts = vec![vec![vec![0.0; net.units.len()]; net.arcs.len()]; f_count];
        for (slot, opt) in per_arc.iter().enumerate() {
            let (g, z) = &opt.options[choice[slot]];
            for (idx, &f) in relevant[opt.arc].iter().enumerate() {
                grants[f][opt.arc] = g[idx];
                counts[f][opt.arc] = z[idx].clone();
            }
        }
        let mut v = RateVector::zeros(f_count, net.arcs.len(), net.units.len());
        v.allocation = counts;
        for (f, flow) in inst.flows().iter().enumerate() {
            let (value, flows_on_arcs) = max_flow(
                net.node_count,
                &admissible[f],
                net,
                &grants[f],
                flow.origin,
                flow.destination,
            );
            v.rates[f] = value;
            v.arc_rates[f] = flows_on_arcs;
        }
        insert_vector(&mut kept, v, prune_dominated);

        // advance the mixed-radix counter
        let mut slot = 0;
        loop {
            if slot == per_arc.len() {
                // canonical order: lexicographically descending by rates
                kept.sort_by(|a, b| {
                    b.rates
                        .partial_cmp(&a.rates)
                        .unwrap_or(std::cmp::Ordering::Equal)
                });
                return Ok(kept);
            }
            choice[slot] += 1;
            if choice[slot] < per_arc[slot].options.len() {
                break;
            }
            choice[slot] = 0;
            slot += 1;
        }
    }
}

/// All Pareto-maximal ways to split one arc's capacity among `n` flows as
/// nonnegative integer unit combinations: (grant vector, unit counts).
fn arc_grant_options(capacity: f64, units: &[f64], n: usize) -> Vec<(Vec<f64>, Vec<Vec<f64>>)> {
    let mut raw: Vec<(Vec<f64>, Vec<Vec<f64>>)> = Vec::new();
    let mut counts = vec![vec![0.0; units.len()]; n];
    let mut grants = vec![0.0; n];
    fn rec(
        f: usize,
        m: usize,
        remaining: f64,
        units: &[f64],
        n: usize,
        counts: &mut Vec<Vec<f64>>,
        grants: &mut Vec<f64>,
        raw: &mut Vec<(Vec<f64>, Vec<Vec<f64>>)>,
    ) {
        if f == n {
            raw.push((grants.clone(), counts.clone()));
            return;
        }
        if m == units.len() {
            rec(f + 1, 0, remaining, units, n, counts, grants, raw);
            return;
        }
        let max_count = (remaining / units[m] + 1e-9).floor() as usize;
        for c in 0..=max_count {
            let used = c as f64 * units[m];
            counts[f][m] = c as f64;
            grants[f] += used;
            rec(f, m + 1, remaining - used, units, n, counts, grants, raw);
            grants[f] -= used;
            counts[f][m] = 0.0;
        }
    }
    rec(0, 0, capacity, units, n, &mut counts, &mut grants, &mut raw);

    // Pareto filter on grant vectors (dedup included).
    let mut kept: Vec<(Vec<f64>, Vec<Vec<f64>>)> = Vec::new();
    'outer: for cand in raw {
        let mut i = 0;
        while i < kept.len() {
            if dominates(&kept[i].0, &cand.0) {
                continue 'outer;
            }
            if dominates(&cand.0, &kept[i].0) {
                kept.swap_remove(i);
            } else {
                i += 1;
            }
        }
        kept.push(cand);
    }
    kept
}

/// a ≥ b componentwise (within tolerance).
fn dominates(a: &[f64], b: &[f64]) -> bool {
    a.iter().zip(b).all(|(x, y)| *x >= *y - 1e-9)
}

fn insert_vector(kept: &mut Vec<RateVector>, v: RateVector, prune: bool) {
    if v.rates.iter().all(|&r| r <= POS_TOL) {
        return;
    }
    if prune {
        let mut i = 0;
        while i < kept.len() {
            if dominates(&kept[i].rates, &v.rates) {
                return;
            }
            if dominates(&v.rates, &kept[i].rates) {
                kept.swap_remove(i);
            } else {
                i += 1;
            }
        }
    } else if kept.iter().any(|w| w.rates_close(&v, 1e-12)) {
        return;
    }
    kept.push(v);
}

/// Edmonds-Karp on the granted capacities of one flow; returns the flow
/// value and per-arc flow amounts.
fn max_flow(
    node_count: usize,
    arcs: &[usize],
    net: &crate::model::Network,
    capacity: &[f64],
    source: usize,
    sink: usize,
) -> (f64, Vec<f64>) {
    let mut flow = vec![0.0; net.arcs.len()];
    let mut value = 0.0;
    loop {
        // BFS over residual edges
        let mut parent: Vec<Option<(usize, bool)>> = vec![None; node_count]; // (arc, forward)
        let mut visited = vec![false; node_count];
        visited[source] = true;
        let mut queue = std::collections::VecDeque::from([source]);
        'bfs: while let Some(u) = queue.pop_front() {
            for &a in arcs {
                let arc = &net.arcs[a];
                if arc.tail == u && !visited[arc.head] && capacity[a] - flow[a] > 1e-9 {
                    visited[arc.head] = true;
                    parent[arc.head] = Some((a, true));
                    if arc.head == sink {
                        break 'bfs;
                    }
                    queue.push_back(arc.head);
                }
                if arc.head == u && !visited[arc.tail] && flow[a] > 1e-9 {
                    visited[arc.tail] = true;
                    parent[arc.tail] = Some((a, false));
                    if arc.tail == sink {
                        break 'bfs;
                    }
                    queue.push_back(arc.tail);
                }
            }
        }
        if !visited[sink] {
            return (value, flow);
        }
        // bottleneck along the path
        let mut bottleneck = f64::INFINITY;
        let mut node = sink;
        while node != source {
            let (a, forward) = parent[node].unwrap();
            bottleneck = bottleneck.min(if forward {
                capacity[a] - flow[a]
            } else {
                flow[a]
            });
            node = if forward { net.arcs[a].tail } else { net.arcs[a].head };
        }
        let mut node = sink;
        while node != source {
            let (a, forward) = parent[node].unwrap();
            if forward {
                flow[a] += bottleneck;
                node = net.arcs[a].tail;
            } else {
                flow[a] -= bottleneck;
                node = net.arcs[a].head;
            }
        }
        value += bottleneck;
    }
}

/// Ground truth: the master LP over every enumerated maximal rate vector,
/// with the standard bucket construction for the schedule.
pub fn solve_full_mp(inst: &Instance) -> Result<(SolveReport, Option<Schedule>), Error> {
    solve_full_mp_capped(inst, EnumCaps::default())
}

pub fn solve_full_mp_capped(
    inst: &Instance,
    caps: EnumCaps,
) -> Result<(SolveReport, Option<Schedule>), Error> {
    let started = Instant::now();
    let vectors = enumerate_rate_vectors(inst, caps)?;
    let columns: Vec<Column> = vectors.into_iter().filter_map(Column::new).collect();
    let mut report = SolveReport::new("oracle", SolveStatus::Optimal);
    report.iterations = columns.len() as u64;
    match cga::solve_rmp(inst, &columns, Phase::Two)? {
        None => {
            report.status = SolveStatus::Infeasible;
            report.wall_time = started.elapsed().as_secs_f64();
            Ok((report, None))
        }
        Some(state) => {
            report.objective = Some(state.objective);
            report.lower_bound = Some(state.objective);
            let built = cga::construct_schedule(inst, &columns, &state)?;
            report.wall_time = started.elapsed().as_secs_f64();
            report.check();
            Ok((report, Some(built.schedule)))
        }
    }
}

/// Largest value reachable as a nonnegative integer unit combination that
/// still fits under `capacity`.
fn usable_capacity(capacity: f64, units: &[f64]) -> Result<f64, Error> {
    let mut lp = LpProblem::new();
    let mut coeffs = Vec::new();
    for &u in units {
        let z = lp.add_var(-u, 0.0, (capacity / u).floor());
        coeffs.push((z, u));
    }
    lp.add_row(&coeffs, Relation::Le, capacity);
    let integers = (0..units.len()).collect();
    let sol = solve_mip(&MipProblem { lp, integers }, None)?;
    Ok(-sol.objective)
}

/// Earliest-deadline-first solver for the single-bottleneck case: verifies
/// that one arc is unavoidable for every flow and that each flow's maximum
/// rate equals that arc's usable capacity, then schedules the flows one at
/// a time in deadline order, each alone at its maximum rate. Under the
/// verified premise this order is optimal, so a missed deadline proves the
/// instance infeasible.
pub fn solve_edf_bottleneck(inst: &Instance) -> Result<(SolveReport, Option<Schedule>), Error> {
    let started = Instant::now();
    let net = inst.network();
    let f_count = inst.flow_count();

    // Arcs unavoidable for every flow.
    let mut shared: Option<Vec<usize>> = None;
    for flow in inst.flows() {
        let all = admissible_arcs(net, flow.origin, flow.destination, AllocationMode::Discrete);
        if all.is_empty() {
            return Err(Error::PremiseViolated(format!(
                "no usable path from {} to {}",
                flow.origin, flow.destination
            )));
        }
        let unavoidable: Vec<usize> = all
            .iter()
            .copied()
            .filter(|&a| {
                !reachable_without(net, flow.origin, flow.destination, a)
            })
            .collect();
        shared = Some(match shared {
            None => unavoidable,
            Some(prev) => prev.into_iter().filter(|a| unavoidable.contains(a)).collect(),
        });
    }
    let shared = shared.unwrap_or_default();
    if shared.is_empty() {
        return Err(Error::PremiseViolated(
            "no single arc lies on every path of every flow".into(),
        ));
    }

    // Non-redundancy: every flow's max rate equals the shared arc's usable
    // capacity.
    let mut rates = Vec::with_capacity(f_count);
    for f in 0..f_count {
        rates.push(max_single_flow_rate(inst, f)?);
    }
    let mut chosen = None;
    let mut last_mismatch = String::new();
    for &a in &shared {
        let cap = usable_capacity(net.arcs[a].capacity, &net.units)?;
        let ok = rates
            .iter()
            .all(|&r| (r - cap).abs() <= 1e-9 * (1.0 + cap));
        if ok {
            chosen = Some((a, cap));
            break;
        }
        last_mismatch = format!(
            "arc {a} has usable capacity {cap} but flow rates are {rates:?}"
        );
    }
    let Some((_, _)) = chosen else {
        return Err(Error::PremiseViolated(last_mismatch));
    };

    // Sequential earliest-deadline-first schedule, each flow alone at its
    // maximum rate.
    let mut report = SolveReport::new("edf", SolveStatus::Optimal);
    let mut segments = Vec::with_capacity(f_count);
    let mut clock = 0.0;
    for (f, flow) in inst.flows().iter().enumerate() {
        let (rate, witness) =
            formulation::max_single_flow(net, flow.origin, flow.destination)?;
        debug_assert!((rate - rates[f]).abs() <= 1e-9 * (1.0 + rate));
        let duration = flow.size / rate;
        clock += duration;
        if let Some(deadline) = flow.deadline {
            if clock > deadline + TIME_ATOL {
                report.status = SolveStatus::Infeasible;
                report.iterations = (f + 1) as u64;
                report.wall_time = started.elapsed().as_secs_f64();
                report.note = Some(format!(
                    "flow {} misses its deadline even under earliest-deadline-first; \
                     the instance is infeasible under the verified bottleneck premise",
                    inst.to_external(f)
                ));
                return Ok((report, None));
            }
        }
        let mut vector = RateVector::zeros(f_count, net.arcs.len(), net.units.len());
        vector.rates[f] = rate;
        vector.arc_rates[f] = witness.arc_rates;
        vector.allocation[f] = witness.allocation;
        segments.push(Segment {
            vector,
            duration,
        });
    }
    report.objective = Some(clock);
    report.lower_bound = Some(clock);
    report.iterations = f_count as u64;
    report.wall_time = started.elapsed().as_secs_f64();
    report.check();
    Ok((report, Some(Schedule { segments })))
}

/// Is `dest` still reachable from `origin` over usable arcs with `skip`
/// removed?
fn reachable_without(
    net: &crate::model::Network,
    origin: usize,
    dest: usize,
    skip: usize,
) -> bool {
    let mut visited = vec![false; net.node_count];
    visited[origin] = true;
    let mut queue = vec![origin];
    let u_min = net.units[0];
    while let Some(u) = queue.pop() {
        if u == dest {
            return true;
        }
        for (a, arc) in net.arcs.iter().enumerate() {
            if a == skip || arc.capacity < u_min {
                continue;
            }
            if arc.tail == u && !visited[arc.head] {
                visited[arc.head] = true;
                queue.push(arc.head);
            }
        }
    }
    visited[dest]
}

/// Column generation with the unit counts relaxed to reals: exact for the
/// continuous-allocation variant of the problem.
pub fn continuous_mode(
    inst: &Instance,
    time_limit: Option<f64>,
) -> Result<(SolveReport, Option<Schedule>), Error> {
    let outcome = cga::solve_cga(
        inst,
        &CgaOptions {
            continuous: true,
            time_limit,
            label: Some("continuous".into()),
            ..CgaOptions::default()
        },
    )?;
    if let Some(sched) = &outcome.schedule {
        debug_assert!(
            evaluate_schedule_with(inst, sched, AllocationMode::Continuous).feasible
                || outcome.report.status != SolveStatus::Optimal
        );
    }
    Ok((outcome.report, outcome.schedule))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bench;
    use crate::model::{evaluate_schedule, validate_instance, Arc, Flow, Network};

    #[test]
    fn fig1_maximal_vectors_are_the_three_unit_vectors() {
        let inst = bench::triangle();
        let vectors = enumerate_rate_vectors(&inst, EnumCaps::default()).unwrap();
        assert_eq!(vectors.len(), 3);
        let mut rates: Vec<Vec<f64>> = vectors.iter().map(|v| v.rates.clone()).collect();
        rates.sort_by(|a, b| b.partial_cmp(a).unwrap());
        assert_eq!(
            rates,
            vec![
                vec![1.0, 0.0, 0.0],
                vec![0.0, 1.0, 0.0],
                vec![0.0, 0.0, 1.0]
            ]
        );
    }

    #[test]
    fn single_arc_capacity_two_gives_rate_two() {
        let net = Network {
            node_count: 2,
            arcs: vec![Arc { tail: 0, head: 1, capacity: 2.0 }],
            units: vec![1.0],
        };
        let inst = validate_instance(
            net,
            vec![Flow { origin: 0, destination: 1, size: 1.0, deadline: Some(9.0) }],
        )
        .unwrap();
        let vectors = enumerate_rate_vectors(&inst, EnumCaps::default()).unwrap();
        assert_eq!(vectors.len(), 1);
        assert_eq!(vectors[0].rates, vec![2.0]);
    }

    #[test]
    fn disjoint_unit_paths_give_the_joint_vector() {
        let net = Network {
            node_count: 4,
            arcs: vec![
                Arc { tail: 0, head: 1, capacity: 1.0 },
                Arc { tail: 2, head: 3, capacity: 1.0 },
            ],
            units: vec![1.0],
        };
        let inst = validate_instance(
            net,
            vec![
                Flow { origin: 0, destination: 1, size: 1.0, deadline: Some(5.0) },
                Flow { origin: 2, destination: 3, size: 1.0, deadline: Some(5.0) },
            ],
        )
        .unwrap();
        let vectors = enumerate_rate_vectors(&inst, EnumCaps::default()).unwrap();
        assert_eq!(vectors.len(), 1);
        assert_eq!(vectors[0].rates, vec![1.0, 1.0]);
    }

    #[test]
    fn caps_are_enforced() {
        let inst = bench::triangle();
        assert!(matches!(
            enumerate_rate_vectors(
                &inst,
                EnumCaps { max_nodes: 2, ..EnumCaps::default() }
            ),
            Err(Error::TooLarge(_))
        ));
        assert!(matches!(
            enumerate_rate_vectors(
                &inst,
                EnumCaps { max_unit_slots: 2, ..EnumCaps::default() }
            ),
            Err(Error::TooLarge(_))
        ));
    }

    #[test]
    fn full_mp_solves_fig1_to_three() {
        let inst = bench::triangle();
        let (report, sched) = solve_full_mp(&inst).unwrap();
        assert_eq!(report.status, SolveStatus::Optimal);
        assert!((report.objective.unwrap() - 3.0).abs() < 1e-6);
        let eval = evaluate_schedule(&inst, &sched.unwrap());
        assert!(eval.feasible, "violations: {:?}", eval.violations);
    }

    #[test]
    fn full_mp_detects_infeasibility() {
        let inst = bench::triangle_with_deadlines(&[0.4, 2.0, 3.0]);
        let (report, sched) = solve_full_mp(&inst).unwrap();
        assert_eq!(report.status, SolveStatus::Infeasible);
        assert!(sched.is_none());
    }

    #[test]
    fn domination_pruning_preserves_the_optimum() {
        for inst in [bench::triangle(), bench::star()] {
            let caps = EnumCaps::default();
            let pruned = enumerate_impl(&inst, caps, true).unwrap();
            let unpruned = enumerate_impl(&inst, caps, false).unwrap();
            assert!(pruned.len() <= unpruned.len());
            let obj = |vectors: Vec<RateVector>| -> Option<f64> {
                let columns: Vec<Column> =
                    vectors.into_iter().filter_map(Column::new).collect();
                cga::solve_rmp(&inst, &columns, Phase::Two)
                    .unwrap()
                    .map(|s| s.objective)
            };
            let a = obj(pruned);
            let b = obj(unpruned);
            match (a, b) {
                (Some(x), Some(y)) => assert!((x - y).abs() < 1e-7),
                (None, None) => {}
                other => panic!("feasibility mismatch: {other:?}"),
            }
        }
    }

    fn bottleneck_instance(sizes: &[f64], deadlines: &[f64]) -> Instance {
        let net = Network {
            node_count: 2,
            arcs: vec![Arc { tail: 0, head: 1, capacity: 1.0 }],
            units: vec![1.0],
        };
        let flows = sizes
            .iter()
            .zip(deadlines)
            .map(|(&s, &d)| Flow {
                origin: 0,
                destination: 1,
                size: s,
                deadline: Some(d),
            })
            .collect();
        validate_instance(net, flows).unwrap()
    }

    #[test]
    fn edf_two_flows_completion_three() {
        let inst = bottleneck_instance(&[1.0, 2.0], &[1.0, 3.0]);
        let (report, sched) = solve_edf_bottleneck(&inst).unwrap();
        assert_eq!(report.status, SolveStatus::Optimal);
        assert!((report.objective.unwrap() - 3.0).abs() < 1e-9);
        let eval = evaluate_schedule(&inst, &sched.unwrap());
        assert!(eval.feasible, "violations: {:?}", eval.violations);
    }

    #[test]
    fn edf_single_flow() {
        let inst = bottleneck_instance(&[2.5], &[5.0]);
        let (report, _) = solve_edf_bottleneck(&inst).unwrap();
        assert_eq!(report.status, SolveStatus::Optimal);
        assert!((report.objective.unwrap() - 2.5).abs() < 1e-9);
    }

    #[test]
    fn edf_reports_infeasibility_on_missed_deadline() {
        let inst = bottleneck_instance(&[1.0, 2.0], &[1.0, 2.0]);
        let (report, sched) = solve_edf_bottleneck(&inst).unwrap();
        assert_eq!(report.status, SolveStatus::Infeasible);
        assert!(sched.is_none());
    }

    #[test]
    fn fig1_violates_the_bottleneck_premise() {
        let inst = bench::triangle();
        assert!(matches!(
            solve_edf_bottleneck(&inst),
            Err(Error::PremiseViolated(_))
        ));
    }

    #[test]
    fn continuous_fig1_reaches_two_and_a_half() {
        let inst = bench::triangle();
        let (report, sched) = continuous_mode(&inst, None).unwrap();
        assert_eq!(report.status, SolveStatus::Optimal);
        let obj = report.objective.unwrap();
        assert!((obj - 2.5).abs() < 1e-6, "objective {obj}");
        assert!(obj <= 3.0 + 1e-9, "relaxation below the discrete optimum");
        let eval =
            evaluate_schedule_with(&inst, &sched.unwrap(), AllocationMode::Continuous);
        assert!(eval.feasible, "violations: {:?}", eval.violations);
    }

    #[test]
    fn continuous_equals_discrete_on_unit_multiples() {
        let net = Network {
            node_count: 2,
            arcs: vec![Arc { tail: 0, head: 1, capacity: 2.0 }],
            units: vec![1.0],
        };
        let inst = validate_instance(
            net,
            vec![Flow { origin: 0, destination: 1, size: 4.0, deadline: Some(9.0) }],
        )
        .unwrap();
        let (cont, _) = continuous_mode(&inst, None).unwrap();
        let (disc, _) = solve_full_mp(&inst).unwrap();
        assert!((cont.objective.unwrap() - disc.objective.unwrap()).abs() < 1e-6);
    }
}
