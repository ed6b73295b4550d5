//! Instance and solution data model: network/flow types, normalization,
//! rate-vector and schedule feasibility checks, and the per-flow maximum
//! single-flow rate used for deadline calibration.
//!
//! Flows are kept in *internal* order, sorted ascending by deadline with
//! unbounded deadlines last (stable, so ties keep their input order). File
//! I/O and user-facing diagnostics use the *external* order of the input;
//! [`Instance::to_external`] and [`Instance::to_internal`] translate.

use crate::formulation::{self, AllocationMode};
use crate::Error;

/// Threshold above which a rate counts as strictly positive.
pub const POS_TOL: f64 = 1e-9;
/// Relative tolerance for demand satisfaction.
pub const DEMAND_RTOL: f64 = 1e-6;
/// Absolute tolerance for time comparisons.
pub const TIME_ATOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub struct Arc {
    pub tail: usize,
    pub head: usize,
    pub capacity: f64,
}

/// Directed network with discrete capacity units.
#[derive(Clone, Debug, PartialEq)]
pub struct Network {
    pub node_count: usize,
    pub arcs: Vec<Arc>,
    /// Allocation units, strictly positive, ascending, duplicate-free.
    pub units: Vec<f64>,
}

impl Network {
    pub fn arc_index(&self, tail: usize, head: usize) -> Option<usize> {
        self.arcs
            .iter()
            .position(|a| a.tail == tail && a.head == head)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Flow {
    pub origin: usize,
    pub destination: usize,
    pub size: f64,
    /// `None` means the flow has no deadline.
    pub deadline: Option<f64>,
}

/// A validated instance. Construct via [`validate_instance`].
#[derive(Clone, Debug)]
pub struct Instance {
    network: Network,
    flows: Vec<Flow>,
    to_internal: Vec<usize>,
    to_external: Vec<usize>,
}

impl Instance {
    pub fn network(&self) -> &Network {
        &self.network
    }

    /// Flows in internal (deadline-ascending) order.
    pub fn flows(&self) -> &[Flow] {
        &self.flows
    }

    pub fn flow_count(&self) -> usize {
        self.flows.len()
    }

    /// Maps an external flow index to its internal index.
    pub fn to_internal(&self, external: usize) -> usize {
        self.to_internal[external]
    }

    /// Maps an internal flow index back to the external input position.
    pub fn to_external(&self, internal: usize) -> usize {
        self.to_external[internal]
    }

    /// The permutation from external to internal indices.
    pub fn deadline_order(&self) -> &[usize] {
        &self.to_internal
    }

    /// Flows in the external order they were supplied in.
    pub fn external_flows(&self) -> Vec<Flow> {
        self.to_internal.iter().map(|&i| self.flows[i].clone()).collect()
    }
}

/// Validates and normalizes raw input into an [`Instance`], or reports every
/// violated invariant at once.
pub fn validate_instance(network: Network, flows: Vec<Flow>) -> Result<Instance, Error> {
    let mut problems: Vec<String> = Vec::new();
    if network.node_count == 0 {
        problems.push("node count must be positive".into());
    }
    let n = network.node_count;
    for (idx, a) in network.arcs.iter().enumerate() {
        if a.tail >= n || a.head >= n {
            problems.push(format!("arc {idx} references a node outside 0..{n}"));
        }
        if a.tail == a.head {
            problems.push(format!("arc {idx} is a self-loop at node {}", a.tail));
        }
        if !(a.capacity >= 0.0) || !a.capacity.is_finite() {
            problems.push(format!("arc {idx} capacity must be finite and >= 0"));
        }
        if network.arcs[..idx]
            .iter()
            .any(|b| b.tail == a.tail && b.head == a.head)
        {
            problems.push(format!("duplicate arc ({}, {})", a.tail, a.head));
        }
    }
    if network.units.is_empty() {
        problems.push("capacity unit set must be nonempty".into());
    }
    let mut units = network.units.clone();
    units.sort_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal));
    for (idx, &u) in units.iter().enumerate() {
        if !(u > 0.0) || !u.is_finite() {
            problems.push(format!("unit {idx} must be finite and > 0"));
        }
        if idx > 0 && units[idx - 1] == u {
            problems.push(format!("duplicate capacity unit {u}"));
        }
    }
    if flows.is_empty() {
        if !problems.is_empty() {
            return Err(Error::MalformedInstance(problems));
        }
        return Err(Error::EmptyFlows);
    }
    for (idx, f) in flows.iter().enumerate() {
        if f.origin >= n || f.destination >= n {
            problems.push(format!("flow {idx} references a node outside 0..{n}"));
        }
        if f.origin == f.destination {
            problems.push(format!("flow {idx} has equal origin and destination"));
        }
        if !(f.size > 0.0) || !f.size.is_finite() {
            problems.push(format!("flow {idx} size must be finite and > 0"));
        }
        if let Some(t) = f.deadline {
            if !(t > 0.0) || !t.is_finite() {
                problems.push(format!("flow {idx} deadline must be finite and > 0"));
            }
        }
    }
    if !problems.is_empty() {
        return Err(Error::MalformedInstance(problems));
    }

    // Stable sort: deadline ties keep their external order, unbounded last.
    let mut order: Vec<usize> = (0..flows.len()).collect();
    order.sort_by(|&a, &b| match (flows[a].deadline, flows[b].deadline) {
        (Some(x), Some(y)) => x.partial_cmp(&y).unwrap(),
        (Some(_), None) => std::cmp::Ordering::Less,
        (None, Some(_)) => std::cmp::Ordering::Greater,
        (None, None) => std::cmp::Ordering::Equal,
    });
    let mut to_internal = vec![0usize; flows.len()];
    for (internal, &external) in order.iter().enumerate() {
        to_internal[external] = internal;
    }
    let sorted: Vec<Flow> = order.iter().map(|&e| flows[e].clone()).collect();
    Ok(Instance {
        network: Network { units, ..network },
        flows: sorted,
        to_internal,
        to_external: order,
    })
}

/// An end-to-end rate vector together with its witnessing capacity
/// allocation. All flow indices are internal.
#[derive(Clone, Debug, PartialEq)]
pub struct RateVector {
    /// End-to-end rate per flow.
    pub rates: Vec<f64>,
    /// Arc rate y per flow and arc.
    pub arc_rates: Vec<Vec<f64>>,
    /// Unit counts z per flow, arc, and unit index. Integer-valued in
    /// discrete mode; may be fractional under continuous relaxation.
    pub allocation: Vec<Vec<Vec<f64>>>,
}

impl RateVector {
    pub fn zeros(flows: usize, arcs: usize, units: usize) -> Self {
        RateVector {
            rates: vec![0.0; flows],
            arc_rates: vec![vec![0.0; arcs]; flows],
            allocation: vec![vec![vec![0.0; units]; arcs]; flows],
        }
    }

    /// Smallest internal flow index with strictly positive rate.
    pub fn first_positive(&self) -> Option<usize> {
        self.rates.iter().position(|&r| r > POS_TOL)
    }

    /// Componentwise equality within `tol`, used for duplicate-column guards.
    pub fn rates_close(&self, other: &RateVector, tol: f64) -> bool {
        self.rates.len() == other.rates.len()
            && self
                .rates
                .iter()
                .zip(&other.rates)
                .all(|(a, b)| (a - b).abs() <= tol)
    }
}

/// Checks a rate vector against the network; returns every violation found.
pub fn validate_rate_vector(
    network: &Network,
    v: &RateVector,
    mode: AllocationMode,
) -> Vec<String> {
    let mut out = Vec::new();
    let a_count = network.arcs.len();
    let k = network.units.len();
    let f_count = v.rates.len();
    if v.arc_rates.len() != f_count
        || v.allocation.len() != f_count
        || v.arc_rates.iter().any(|r| r.len() != a_count)
        || v.allocation
            .iter()
            .any(|z| z.len() != a_count || z.iter().any(|zz| zz.len() != k))
    {
        out.push("rate vector dimensions do not match the network".into());
        return out;
    }
    for (f, &r) in v.rates.iter().enumerate() {
        if r < -POS_TOL {
            out.push(format!("flow {f} has negative rate {r}"));
        }
    }
    for f in 0..f_count {
        for a in 0..a_count {
            let y = v.arc_rates[f][a];
            if y < -POS_TOL {
                out.push(format!("flow {f} has negative arc rate on arc {a}"));
            }
            let mut granted = 0.0;
            for m in 0..k {
                let z = v.allocation[f][a][m];
                if z < -POS_TOL {
                    out.push(format!("flow {f} arc {a} unit {m} has negative count"));
                }
                if mode == AllocationMode::Discrete && (z - z.round()).abs() > 1e-6 {
                    out.push(format!(
                        "flow {f} arc {a} unit {m} count {z} is not an integer"
                    ));
                }
                granted += network.units[m] * z;
            }
            if y > granted + 1e-9 * (1.0 + granted) {
                out.push(format!(
                    "flow {f} arc {a} rate {y} exceeds allocated capacity {granted}"
                ));
            }
        }
    }
    for (a, arc) in network.arcs.iter().enumerate() {
        let used: f64 = (0..f_count)
            .map(|f| {
                (0..k)
                    .map(|m| network.units[m] * v.allocation[f][a][m])
                    .sum::<f64>()
            })
            .sum();
        if used > arc.capacity + 1e-9 * (1.0 + arc.capacity) {
            out.push(format!(
                "arc {a} total allocation {used} exceeds capacity {}",
                arc.capacity
            ));
        }
    }
    out
}

/// Flow-conservation check for one flow of a rate vector. Split out because
/// the schedule evaluator reports these per segment.
fn conservation_violations(
    network: &Network,
    v: &RateVector,
    flow: &Flow,
    f: usize,
    out: &mut Vec<String>,
) {
    let tol = 1e-6 * (1.0 + v.rates[f].abs());
    for node in 0..network.node_count {
        let mut imbalance = 0.0;
        for (a, arc) in network.arcs.iter().enumerate() {
            if arc.tail == node {
                imbalance += v.arc_rates[f][a];
            }
            if arc.head == node {
                imbalance -= v.arc_rates[f][a];
            }
        }
        let expected = if node == flow.origin {
            v.rates[f]
        } else if node == flow.destination {
            -v.rates[f]
        } else {
            0.0
        };
        if (imbalance - expected).abs() > tol {
            out.push(format!(
                "flow {f} violates conservation at node {node}: imbalance {imbalance}, expected {expected}"
            ));
        }
    }
}

/// Ordered sequence of (rate vector, duration) segments; the universal
/// solution representation across all solvers.
#[derive(Clone, Debug, PartialEq)]
pub struct Segment {
    pub vector: RateVector,
    pub duration: f64,
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct Schedule {
    pub segments: Vec<Segment>,
}

impl Schedule {
    pub fn completion_time(&self) -> f64 {
        self.segments.iter().map(|s| s.duration).sum()
    }
}

#[derive(Clone, Debug)]
pub struct ScheduleEvaluation {
    pub completion: f64,
    /// Data delivered per flow, internal order.
    pub per_flow_delivered: Vec<f64>,
    /// End time of the last segment with positive rate per flow (0 if never
    /// scheduled), internal order.
    pub per_flow_finish: Vec<f64>,
    pub feasible: bool,
    pub violations: Vec<String>,
}

/// Evaluates a schedule under discrete allocation semantics.
pub fn evaluate_schedule(inst: &Instance, sched: &Schedule) -> ScheduleEvaluation {
    evaluate_schedule_with(inst, sched, AllocationMode::Discrete)
}

/// Evaluates delivery, deadlines and per-segment vector feasibility.
/// `Continuous` mode skips the integrality check on unit counts (used for
/// relaxation solvers); everything else is identical.
pub fn evaluate_schedule_with(
    inst: &Instance,
    sched: &Schedule,
    mode: AllocationMode,
) -> ScheduleEvaluation {
    let f_count = inst.flow_count();
    let mut violations = Vec::new();
    let mut delivered = vec![0.0; f_count];
    let mut finish = vec![0.0; f_count];
    let mut clock = 0.0;
    for (s, seg) in sched.segments.iter().enumerate() {
        if !(seg.duration >= 0.0) {
            violations.push(format!("segment {s} has negative duration"));
            continue;
        }
        let vec_violations = validate_rate_vector(inst.network(), &seg.vector, mode);
        if vec_violations.is_empty() && seg.vector.rates.len() == f_count {
            let mut cons = Vec::new();
            for f in 0..f_count {
                conservation_violations(
                    inst.network(),
                    &seg.vector,
                    &inst.flows()[f],
                    f,
                    &mut cons,
                );
            }
            for c in cons {
                violations.push(format!("segment {s}: {c}"));
            }
        } else {
            for vv in vec_violations {
                violations.push(format!("segment {s}: {vv}"));
            }
        }
        clock += seg.duration;
        if seg.vector.rates.len() == f_count {
            for f in 0..f_count {
                let r = seg.vector.rates[f];
                delivered[f] += r * seg.duration;
                if r > POS_TOL {
                    finish[f] = clock;
                }
            }
        }
    }
    for f in 0..f_count {
        let flow = &inst.flows()[f];
        if (delivered[f] - flow.size).abs() > DEMAND_RTOL * flow.size.max(1.0) {
            violations.push(format!(
                "flow {} delivered {} of size {}",
                inst.to_external(f),
                delivered[f],
                flow.size
            ));
        }
        if let Some(t) = flow.deadline {
            if finish[f] > t + TIME_ATOL {
                violations.push(format!(
                    "flow {} finishes at {} after its deadline {}",
                    inst.to_external(f),
                    finish[f],
                    t
                ));
            }
        }
    }
    ScheduleEvaluation {
        completion: clock,
        per_flow_delivered: delivered,
        per_flow_finish: finish,
        feasible: violations.is_empty(),
        violations,
    }
}

/// Status of a solver run; `NoSolution` is the heuristic give-up verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolveStatus {
    Optimal,
    Feasible,
    Infeasible,
    TimeLimit,
    NoSolution,
}

impl std::fmt::Display for SolveStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            SolveStatus::Optimal => "optimal",
            SolveStatus::Feasible => "feasible",
            SolveStatus::Infeasible => "infeasible",
            SolveStatus::TimeLimit => "time-limit",
            SolveStatus::NoSolution => "no-solution",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug)]
pub struct SolveReport {
    pub solver: String,
    pub status: SolveStatus,
    pub objective: Option<f64>,
    pub lower_bound: Option<f64>,
    pub iterations: u64,
    pub wall_time: f64,
    pub note: Option<String>,
}

impl SolveReport {
    pub fn new(solver: &str, status: SolveStatus) -> Self {
        SolveReport {
            solver: solver.to_string(),
            status,
            objective: None,
            lower_bound: None,
            iterations: 0,
            wall_time: 0.0,
            note: None,
        }
    }

    /// Objective must never undercut the reported bound.
    pub fn check(&self) -> &Self {
        if let (Some(obj), Some(lb)) = (self.objective, self.lower_bound) {
            debug_assert!(obj >= lb - 1e-6, "objective {obj} below bound {lb}");
        }
        self
    }
}

/// Maximum end-to-end rate of internal flow `f` with every other flow absent,
/// under integer unit allocation; 0 if the destination is unreachable.
pub fn max_single_flow_rate(inst: &Instance, f: usize) -> Result<f64, Error> {
    let flow = &inst.flows()[f];
    max_rate_between(inst.network(), flow.origin, flow.destination)
}

/// Same computation for an (origin, destination) pair without an instance.
pub fn max_rate_between(network: &Network, origin: usize, dest: usize) -> Result<f64, Error> {
    formulation::max_single_flow(network, origin, dest).map(|(rate, _)| rate)
}

/// Earliest possible completion time of flow `f` given the whole network:
/// `size / max rate`. Errors with `Unreachable` when the max rate is zero.
pub fn earliest_completion(inst: &Instance, f: usize) -> Result<f64, Error> {
    let rate = max_single_flow_rate(inst, f)?;
    if rate <= POS_TOL {
        return Err(Error::Unreachable(inst.to_external(f)));
    }
    Ok(inst.flows()[f].size / rate)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bench;

    #[test]
    fn triangle_is_valid_and_ordered() {
        let inst = bench::triangle();
        assert_eq!(inst.flow_count(), 3);
        // external order A, B, C already ascending by deadline
        assert_eq!(inst.deadline_order(), &[0, 1, 2]);
        assert_eq!(inst.flows()[0].size, 0.5);
        assert_eq!(inst.flows()[2].deadline, Some(3.0));
    }

    #[test]
    fn zero_capacity_network_is_still_valid() {
        let network = Network {
            node_count: 2,
            arcs: vec![Arc {
                tail: 0,
                head: 1,
                capacity: 0.0,
            }],
            units: vec![1.0],
        };
        let flows = vec![Flow {
            origin: 0,
            destination: 1,
            size: 1.0,
            deadline: Some(1.0),
        }];
        assert!(validate_instance(network, flows).is_ok());
    }

    #[test]
    fn zero_size_flow_is_malformed() {
        let network = Network {
            node_count: 2,
            arcs: vec![Arc {
                tail: 0,
                head: 1,
                capacity: 1.0,
            }],
            units: vec![1.0],
        };
        let flows = vec![Flow {
            origin: 0,
            destination: 1,
            size: 0.0,
            deadline: Some(1.0),
        }];
        match validate_instance(network, flows) {
            Err(Error::MalformedInstance(v)) => {
                assert!(v.iter().any(|m| m.contains("size")));
            }
            other => panic!("expected MalformedInstance, got {other:?}"),
        }
    }

    #[test]
    fn all_violations_reported_at_once() {
        let network = Network {
            node_count: 2,
            arcs: vec![
                Arc {
                    tail: 0,
                    head: 0,
                    capacity: -1.0,
                },
                Arc {
                    tail: 0,
                    head: 5,
                    capacity: 1.0,
                },
            ],
            units: vec![],
        };
        let flows = vec![Flow {
            origin: 1,
            destination: 1,
            size: -2.0,
            deadline: Some(0.0),
        }];
        match validate_instance(network, flows) {
            Err(Error::MalformedInstance(v)) => assert!(v.len() >= 5, "got {v:?}"),
            other => panic!("expected MalformedInstance, got {other:?}"),
        }
    }

    #[test]
    fn empty_flow_list() {
        let network = Network {
            node_count: 2,
            arcs: vec![],
            units: vec![1.0],
        };
        assert!(matches!(
            validate_instance(network, vec![]),
            Err(Error::EmptyFlows)
        ));
    }

    #[test]
    fn normalization_is_idempotent() {
        let network = Network {
            node_count: 3,
            arcs: vec![
                Arc {
                    tail: 0,
                    head: 1,
                    capacity: 1.0,
                },
                Arc {
                    tail: 1,
                    head: 2,
                    capacity: 1.0,
                },
            ],
            units: vec![2.0, 1.0],
        };
        let flows = vec![
            Flow {
                origin: 0,
                destination: 2,
                size: 1.0,
                deadline: None,
            },
            Flow {
                origin: 1,
                destination: 2,
                size: 1.0,
                deadline: Some(2.0),
            },
            Flow {
                origin: 0,
                destination: 1,
                size: 1.0,
                deadline: Some(2.0),
            },
        ];
        let a = validate_instance(network, flows).unwrap();
        // unbounded sorts last; the deadline tie keeps external order 1 < 2
        assert_eq!(a.to_external, vec![1, 2, 0]);
        assert_eq!(a.network().units, vec![1.0, 2.0]);
        let b = validate_instance(a.network().clone(), a.external_flows()).unwrap();
        assert_eq!(a.to_external, b.to_external);
        assert_eq!(a.flows(), b.flows());
    }

    #[test]
    fn fig1_rate_of_flow_a_is_one() {
        let inst = bench::triangle();
        let r = max_single_flow_rate(&inst, 0).unwrap();
        assert!((r - 1.0).abs() < 1e-7);
        assert!((earliest_completion(&inst, 0).unwrap() - 0.5).abs() < 1e-7);
    }

    #[test]
    fn unreachable_destination_has_rate_zero() {
        let network = Network {
            node_count: 3,
            arcs: vec![Arc {
                tail: 0,
                head: 1,
                capacity: 1.0,
            }],
            units: vec![1.0],
        };
        let flows = vec![Flow {
            origin: 0,
            destination: 2,
            size: 1.0,
            deadline: Some(1.0),
        }];
        let inst = validate_instance(network, flows).unwrap();
        assert_eq!(max_single_flow_rate(&inst, 0).unwrap(), 0.0);
        assert!(matches!(
            earliest_completion(&inst, 0),
            Err(Error::Unreachable(0))
        ));
    }

    #[test]
    fn single_arc_capacity_ten_unit_two() {
        let network = Network {
            node_count: 2,
            arcs: vec![Arc {
                tail: 0,
                head: 1,
                capacity: 10.0,
            }],
            units: vec![2.0],
        };
        let flows = vec![Flow {
            origin: 0,
            destination: 1,
            size: 4.0,
            deadline: None,
        }];
        let inst = validate_instance(network, flows).unwrap();
        let r = max_single_flow_rate(&inst, 0).unwrap();
        assert!((r - 10.0).abs() < 1e-7, "5 units of size 2 saturate the arc");
    }

    fn unit_path_vector(inst: &Instance, f: usize, arcs: &[usize]) -> RateVector {
        let net = inst.network();
        let mut v = RateVector::zeros(inst.flow_count(), net.arcs.len(), net.units.len());
        v.rates[f] = 1.0;
        for &a in arcs {
            v.arc_rates[f][a] = 1.0;
            v.allocation[f][a][0] = 1.0;
        }
        v
    }

    /// The three Fig. 1 single-flow unit vectors (paths 0→1→2, 1→2→0, 2→0→1).
    pub(crate) fn triangle_unit_vectors(inst: &Instance) -> Vec<RateVector> {
        vec![
            unit_path_vector(inst, 0, &[0, 1]),
            unit_path_vector(inst, 1, &[1, 2]),
            unit_path_vector(inst, 2, &[2, 0]),
        ]
    }

    fn triangle_schedule(inst: &Instance, order: &[(usize, f64)]) -> Schedule {
        let vs = triangle_unit_vectors(inst);
        Schedule {
            segments: order
                .iter()
                .map(|&(f, d)| Segment {
                    vector: vs[f].clone(),
                    duration: d,
                })
                .collect(),
        }
    }

    #[test]
    fn fig1_sequential_schedule_is_feasible_with_completion_three() {
        let inst = bench::triangle();
        let s = triangle_schedule(&inst, &[(0, 0.5), (1, 1.5), (2, 1.0)]);
        let eval = evaluate_schedule(&inst, &s);
        assert!(eval.feasible, "violations: {:?}", eval.violations);
        assert!((eval.completion - 3.0).abs() < 1e-9);
    }

    #[test]
    fn empty_schedule_is_infeasible() {
        let inst = bench::triangle();
        let eval = evaluate_schedule(&inst, &Schedule::default());
        assert!(!eval.feasible);
        assert_eq!(eval.per_flow_delivered, vec![0.0; 3]);
    }

    #[test]
    fn fig1_b_first_misses_flow_a_deadline() {
        let inst = bench::triangle();
        let s = triangle_schedule(&inst, &[(1, 1.5), (0, 0.5), (2, 1.0)]);
        let eval = evaluate_schedule(&inst, &s);
        assert!(!eval.feasible);
        assert!((eval.per_flow_finish[0] - 2.0).abs() < 1e-9);
        assert!(eval
            .violations
            .iter()
            .any(|v| v.contains("deadline")));
    }

    #[test]
    fn permuting_segments_preserves_delivery() {
        let inst = bench::triangle();
        let a = triangle_schedule(&inst, &[(0, 0.5), (1, 1.5), (2, 1.0)]);
        let b = triangle_schedule(&inst, &[(2, 1.0), (1, 1.5), (0, 0.5)]);
        let ea = evaluate_schedule(&inst, &a);
        let eb = evaluate_schedule(&inst, &b);
        for f in 0..3 {
            assert!((ea.per_flow_delivered[f] - eb.per_flow_delivered[f]).abs() < 1e-12);
        }
        assert_eq!(ea.completion, eb.completion);
        assert!(ea.feasible && !eb.feasible);
    }

    #[test]
    fn capacity_violation_is_reported() {
        let inst = bench::triangle();
        let net = inst.network();
        let mut v = RateVector::zeros(3, net.arcs.len(), net.units.len());
        v.rates[0] = 2.0;
        v.arc_rates[0][0] = 2.0;
        v.arc_rates[0][1] = 2.0;
        v.allocation[0][0][0] = 2.0; // exceeds capacity 1
        v.allocation[0][1][0] = 2.0;
        let eval = evaluate_schedule(
            &inst,
            &Schedule {
                segments: vec![Segment {
                    vector: v,
                    duration: 0.25,
                }],
            },
        );
        assert!(!eval.feasible);
        assert!(eval
            .violations
            .iter()
            .any(|m| m.contains("exceeds capacity")));
    }
}
