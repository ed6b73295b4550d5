//! Shared machinery for building the flow-allocation MIPs: per-flow
//! admissible arc sets, the y/z/r variable block with conservation and
//! capacity rows, and solution extraction back into rate vectors.

use crate::lp::{LpProblem, Relation};
use crate::mip::{solve_mip, MipProblem, MipStatus};
use crate::model::{Flow, Instance, Network, RateVector};
use crate::Error;

/// Whether unit counts are integer-restricted or relaxed to reals.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AllocationMode {
    Discrete,
    Continuous,
}

/// An arc can carry flow iff at least one unit fits (discrete) or it has any
/// capacity at all (continuous relaxation).
fn arc_usable(arc_capacity: f64, units: &[f64], mode: AllocationMode) -> bool {
    match mode {
        AllocationMode::Discrete => units.first().is_some_and(|&u| u <= arc_capacity),
        AllocationMode::Continuous => arc_capacity > 0.0,
    }
}

/// Arcs lying on at least one origin→destination path of usable arcs.
/// Restricting a flow's variables to these is exact: cycles and dead ends
/// never contribute to its end-to-end rate.
pub(crate) fn admissible_arcs(
    net: &Network,
    origin: usize,
    dest: usize,
    mode: AllocationMode,
) -> Vec<usize> {
    let usable: Vec<bool> = net
        .arcs
        .iter()
        .map(|a| arc_usable(a.capacity, &net.units, mode))
        .collect();
    let reach = reachable(net, origin, &usable, false);
    let coreach = reachable(net, dest, &usable, true);
    (0..net.arcs.len())
        .filter(|&a| {
            usable[a] && reach[net.arcs[a].tail] && coreach[net.arcs[a].head]
        })
        .collect()
}

fn reachable(net: &Network, start: usize, usable: &[bool], backward: bool) -> Vec<bool> {
    let mut seen = vec![false; net.node_count];
    if start >= net.node_count {
        return seen;
    }
    seen[start] = true;
    let mut queue = vec![start];
    while let Some(node) = queue.pop() {
        for (a, arc) in net.arcs.iter().enumerate() {
            if !usable[a] {
                continue;
            }
            let (from, to) = if backward {
                (arc.head, arc.tail)
            } else {
                (arc.tail, arc.head)
            };
            if from == node && !seen[to] {
                seen[to] = true;
                queue.push(to);
            }
        }
    }
    seen
}

/// Per-flow admissible arc sets for an instance.
pub(crate) struct FlowArcs {
    pub per_flow: Vec<Vec<usize>>,
}

impl FlowArcs {
    pub fn new(inst: &Instance, mode: AllocationMode) -> Self {
        let per_flow = inst
            .flows()
            .iter()
            .map(|f| admissible_arcs(inst.network(), f.origin, f.destination, mode))
            .collect();
        FlowArcs { per_flow }
    }
}

/// Variable ids of one allocation block; `None` where a flow is inactive or
/// an arc is not admissible for it.
pub(crate) struct BlockVars {
    pub r: Vec<Option<usize>>,
    pub y: Vec<Vec<Option<usize>>>,
    /// First of `k` consecutive unit-count variables per (flow, arc).
    pub z: Vec<Vec<Option<usize>>>,
}

/// Adds rate, arc-rate and unit-count variables with flow conservation,
/// per-flow capacity linking and shared arc capacity rows.
///
/// `capacity_scale_var`: when set, arc capacity rows read Σ u·z ≤ c·w for
/// that variable `w` instead of a constant right-hand side.
/// `r_upper`: optional per-flow rate bounds (only valid in discrete mode
/// when derived from the integer single-flow maxima).
#[allow(clippy::too_many_arguments)]
pub(crate) fn add_allocation_block(
    lp: &mut LpProblem,
    integers: &mut Vec<usize>,
    net: &Network,
    flows: &[Flow],
    active: &[bool],
    admissible: &[Vec<usize>],
    mode: AllocationMode,
    r_upper: Option<&[f64]>,
    capacity_scale_var: Option<usize>,
) -> BlockVars {
    let f_count = flows.len();
    let a_count = net.arcs.len();
    let mut vars = BlockVars {
        r: vec![None; f_count],
        y: vec![vec![None; a_count]; f_count],
        z: vec![vec![None; a_count]; f_count],
    };

    for f in 0..f_count {
        if !active[f] {
            continue;
        }
        let r_ub = r_upper.map_or(f64::INFINITY, |u| u[f]);
        vars.r[f] = Some(lp.add_var(0.0, 0.0, r_ub));
        for &a in &admissible[f] {
            let cap = net.arcs[a].capacity;
            vars.y[f][a] = Some(lp.add_var(0.0, 0.0, cap));
            let z0 = lp.objective.len();
            for &u in net.units.iter() {
                let ub = match mode {
                    AllocationMode::Discrete => (cap / u).floor(),
                    AllocationMode::Continuous => cap / u,
                };
                let zv = lp.add_var(0.0, 0.0, ub);
                if mode == AllocationMode::Discrete {
                    integers.push(zv);
                }
            }
            vars.z[f][a] = Some(z0);
        }
    }

    // Flow conservation: out − in equals +r at the origin, −r at the
    // destination, 0 elsewhere.
    for f in 0..f_count {
        let Some(rv) = vars.r[f] else { continue };
        let mut touched = vec![false; net.node_count];
        touched[flows[f].origin] = true;
        touched[flows[f].destination] = true;
        for &a in &admissible[f] {
            touched[net.arcs[a].tail] = true;
            touched[net.arcs[a].head] = true;
        }
        for node in 0..net.node_count {
            if !touched[node] {
                continue;
            }
            let mut coeffs: Vec<(usize, f64)> = Vec::new();
            for &a in &admissible[f] {
                let yv = vars.y[f][a].unwrap();
                if net.arcs[a].tail == node {
                    coeffs.push((yv, 1.0));
                }
                if net.arcs[a].head == node {
                    coeffs.push((yv, -1.0));
                }
            }
            if node == flows[f].origin {
                coeffs.push((rv, -1.0));
            } else if node == flows[f].destination {
                coeffs.push((rv, 1.0));
            }
            if !coeffs.is_empty() {
                lp.add_row(&coeffs, Relation::Eq, 0.0);
            }
        }
    }

    // y bounded by the granted unit combination, per flow and arc.
    for f in 0..f_count {
        for a in 0..a_count {
            let (Some(yv), Some(z0)) = (vars.y[f][a], vars.z[f][a]) else {
                continue;
            };
            let mut coeffs = vec![(yv, 1.0)];
            for (m, &u) in net.units.iter().enumerate() {
                coeffs.push((z0 + m, -u));
            }
            lp.add_row(&coeffs, Relation::Le, 0.0);
        }
    }

    // Shared arc capacity over all active flows.
    for a in 0..a_count {
        let mut coeffs: Vec<(usize, f64)> = Vec::new();
        for f in 0..f_count {
            if let Some(z0) = vars.z[f][a] {
                for (m, &u) in net.units.iter().enumerate() {
                    coeffs.push((z0 + m, u));
                }
            }
        }
        if coeffs.is_empty() {
            continue;
        }
        match capacity_scale_var {
            Some(w) => {
                coeffs.push((w, -net.arcs[a].capacity));
                lp.add_row(&coeffs, Relation::Le, 0.0);
            }
            None => {
                lp.add_row(&coeffs, Relation::Le, net.arcs[a].capacity);
            }
        }
    }

    vars
}

/// Reads one allocation block of an LP/MIP solution back into a rate vector.
/// In discrete mode the unit counts are snapped to integers.
pub(crate) fn extract_rate_vector(
    vars: &BlockVars,
    x: &[f64],
    net: &Network,
    mode: AllocationMode,
) -> RateVector {
    let f_count = vars.r.len();
    let a_count = net.arcs.len();
    let k = net.units.len();
    let mut v = RateVector::zeros(f_count, a_count, k);
    let clean = |val: f64| if val.abs() < 1e-11 { 0.0 } else { val };
    for f in 0..f_count {
        if let Some(rv) = vars.r[f] {
            v.rates[f] = clean(x[rv]).max(0.0);
        }
        for a in 0..a_count {
            if let Some(yv) = vars.y[f][a] {
                v.arc_rates[f][a] = clean(x[yv]).max(0.0);
            }
            if let Some(z0) = vars.z[f][a] {
                for m in 0..k {
                    let raw = x[z0 + m].max(0.0);
                    v.allocation[f][a][m] = match mode {
                        AllocationMode::Discrete => raw.round(),
                        AllocationMode::Continuous => clean(raw),
                    };
                }
            }
        }
    }
    v
}

/// Witness of a single-flow maximum: arc rates and allocation for one flow.
pub(crate) struct SingleFlowWitness {
    pub arc_rates: Vec<f64>,
    pub allocation: Vec<Vec<f64>>,
}

/// Maximum end-to-end rate for one origin/destination pair under integer
/// allocation with the whole network dedicated to it.
pub(crate) fn max_single_flow(
    net: &Network,
    origin: usize,
    dest: usize,
) -> Result<(f64, SingleFlowWitness), Error> {
    let empty_witness = |net: &Network| SingleFlowWitness {
        arc_rates: vec![0.0; net.arcs.len()],
        allocation: vec![vec![0.0; net.units.len()]; net.arcs.len()],
    };
    let admissible = admissible_arcs(net, origin, dest, AllocationMode::Discrete);
    if admissible.is_empty() {
        return Ok((0.0, empty_witness(net)));
    }
    let flow = Flow {
        origin,
        destination: dest,
        size: 1.0,
        deadline: None,
    };
    let mut lp = LpProblem::new();
    let mut integers = Vec::new();
    let vars = add_allocation_block(
        &mut lp,
        &mut integers,
        net,
        std::slice::from_ref(&flow),
        &[true],
        std::slice::from_ref(&admissible),
        AllocationMode::Discrete,
        None,
        None,
    );
    let rv = vars.r[0].expect("active flow has a rate variable");
    lp.objective[rv] = -1.0;
    let sol = solve_mip(&MipProblem { lp, integers }, None)?;
    debug_assert_eq!(sol.status, MipStatus::Optimal, "zero flow is always feasible");
    let rate = (-sol.objective).max(0.0);
    let v = extract_rate_vector(&vars, &sol.x, net, AllocationMode::Discrete);
    Ok((
        rate,
        SingleFlowWitness {
            arc_rates: v.arc_rates.into_iter().next().unwrap(),
            allocation: v.allocation.into_iter().next().unwrap(),
        },
    ))
}
