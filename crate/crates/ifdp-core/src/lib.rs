//! Routing and time-scheduling of data flows over a capacitated network
//! where link capacity is handed out in discrete units and flows carry
//! delivery deadlines.
//!
//! The crate models instances of this integer-flow scheduling problem and
//! ships several solvers for the minimum-makespan objective:
//!
//! * [`tsa`] — a time-sliced mixed-integer formulation over a slice grid,
//!   plus a single-slice LP bisection that yields a makespan lower bound.
//! * [`cga`] — column generation over end-to-end rate vectors: restricted
//!   master LP, integer pricing subproblem with index skipping, schedule
//!   construction, and hybrid modes (warm start, gap-bounded termination).
//! * [`mfa`] — a fast deadline-weighted max-flow heuristic that may fail
//!   with `NoSolution`.
//! * [`oracle`] — exact reference solvers for small instances: full
//!   enumeration of maximal rate vectors, an earliest-deadline-first solver
//!   for single-bottleneck topologies, and a continuous-allocation mode.
//! * [`bench`] — scenario generation (including a 3-SAT reduction that
//!   produces hard instances), deadline calibration, and a benchmark runner
//!   with CSV output.
//!
//! Everything runs on the in-crate [`lp`] (two-phase bounded simplex) and
//! [`mip`] (branch and bound) engines; there is no external solver
//! dependency. All types are immutable after construction and the solver
//! entry points are pure functions of their inputs.

pub mod bench;
pub mod cga;
pub mod io;
pub mod lp;
pub mod mfa;
pub mod mip;
pub mod model;
pub mod oracle;
pub mod tsa;

pub(crate) mod formulation;

use std::fmt;

/// Crate-wide error type. Solver outcomes that are answers rather than
/// failures (infeasibility, time limit, heuristic `NoSolution`) are reported
/// through [`model::SolveStatus`], not through this enum.
#[derive(Clone, Debug, PartialEq)]
pub enum Error {
    /// Instance violates structural invariants; lists every violation found.
    MalformedInstance(Vec<String>),
    /// Instance has no flows.
    EmptyFlows,
    /// Instance or schedule file could not be parsed.
    ParseError(String),
    /// Underlying file I/O failed.
    Io(String),
    /// Simplex pivots fell below the numeric floor or iterations ran away.
    NumericalBreakdown(String),
    /// An integer variable was declared without a finite upper bound.
    UnboundedInteger(usize),
    /// Every deadline is unbounded and no grid horizon was supplied.
    NoDeadlines,
    /// A flow admits no positive end-to-end rate.
    Unreachable(usize),
    /// Schedule construction was asked for on an infeasible master state.
    InfeasibleState,
    /// Instance exceeds the enumeration caps of the exact oracle.
    TooLarge(String),
    /// Single-bottleneck premise could not be verified.
    PremiseViolated(String),
    /// Scenario sampling failed to find a connected origin/destination pair.
    Disconnected,
    /// Deadline-factor calibration found no feasible factor in its bracket.
    NeverFeasible,
    /// 3-SAT formula violates the reduction preconditions.
    PreconditionViolated(String),
    /// Scenario description is invalid.
    MalformedScenario(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::MalformedInstance(v) => write!(f, "malformed instance: {}", v.join("; ")),
            Error::EmptyFlows => write!(f, "instance has no flows"),
            Error::ParseError(m) => write!(f, "parse error: {m}"),
            Error::Io(m) => write!(f, "i/o error: {m}"),
            Error::NumericalBreakdown(m) => write!(f, "numerical breakdown: {m}"),
            Error::UnboundedInteger(j) => {
                write!(f, "integer variable {j} lacks a finite upper bound")
            }
            Error::NoDeadlines => write!(f, "no bounded deadline and no horizon given"),
            Error::Unreachable(flow) => {
                write!(f, "flow {flow} has maximum end-to-end rate zero")
            }
            Error::InfeasibleState => write!(f, "master state carries positive artificials"),
            Error::TooLarge(m) => write!(f, "instance exceeds oracle caps: {m}"),
            Error::PremiseViolated(m) => write!(f, "bottleneck premise not verified: {m}"),
            Error::Disconnected => write!(f, "could not sample a connected flow pair"),
            Error::NeverFeasible => write!(f, "no feasible deadline factor within bracket"),
            Error::PreconditionViolated(m) => write!(f, "formula precondition violated: {m}"),
            Error::MalformedScenario(m) => write!(f, "malformed scenario: {m}"),
        }
    }
}

impl std::error::Error for Error {}
