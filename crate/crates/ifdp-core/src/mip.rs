//! Branch and bound over the LP relaxation.
//!
//! Node order is best-bound-first after an initial depth-first dive that
//! produces an early incumbent; branching picks the most fractional integer
//! variable (ties by lowest index). Every integer variable must carry a
//! finite upper bound.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::time::Instant;

use crate::lp::{solve_lp_with_bounds, LpProblem, LpStatus};
use crate::Error;

/// Integrality tolerance, aligned with the LP tolerances.
pub const INT_TOL: f64 = 1e-6;

#[derive(Clone, Debug)]
pub struct MipProblem {
    pub lp: LpProblem,
    /// Indices of integer-restricted variables (binaries use bounds [0,1]).
    pub integers: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MipStatus {
    /// Proven optimum.
    Optimal,
    /// Limit hit with an incumbent at hand.
    Feasible,
    Infeasible,
    /// Limit hit before any incumbent was found.
    TimeLimit,
}

#[derive(Clone, Debug)]
pub struct MipSolution {
    pub status: MipStatus,
    pub x: Vec<f64>,
    pub objective: f64,
    /// Valid lower bound on the optimum (min sense).
    pub best_bound: f64,
    pub nodes: u64,
}

/// Search controls. `cutoff` stops the search as soon as an incumbent with
/// objective strictly below it is found (callers that only need *some*
/// sufficiently good solution use this to skip the optimality proof).
#[derive(Clone, Copy, Debug, Default)]
pub struct MipLimits {
    pub time_limit: Option<f64>,
    pub node_limit: Option<u64>,
    pub cutoff: Option<f64>,
}

pub fn solve_mip(p: &MipProblem, time_limit: Option<f64>) -> Result<MipSolution, Error> {
    solve_mip_with(
        p,
        MipLimits {
            time_limit,
            ..MipLimits::default()
        },
    )
}

struct Node {
    bound: f64,
    lower: Vec<f64>,
    upper: Vec<f64>,
    x: Vec<f64>,
}

impl PartialEq for Node {
    fn eq(&self, other: &Self) -> bool {
        self.bound == other.bound
    }
}
impl Eq for Node {}
impl PartialOrd for Node {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Node {
    // BinaryHeap is a max-heap; lowest bound must surface first.
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .bound
            .partial_cmp(&self.bound)
            .unwrap_or(Ordering::Equal)
    }
}

struct Search<'a> {
    prob: &'a MipProblem,
    limits: MipLimits,
    started: Instant,
    nodes: u64,
    incumbent: Option<(f64, Vec<f64>)>,
    #[cfg(debug_assertions)]
    last_popped_bound: f64,
}

enum NodeLp {
    Pruned,
    Fractional(Node),
    Integral(f64, Vec<f64>),
}

impl<'a> Search<'a> {
    fn out_of_budget(&self) -> bool {
        if let Some(t) = self.limits.time_limit {
            if self.started.elapsed().as_secs_f64() >= t {
                return true;
            }
        }
        if let Some(n) = self.limits.node_limit {
            if self.nodes >= n {
                return true;
            }
        }
        false
    }

    fn cutoff_reached(&self) -> bool {
        match (self.limits.cutoff, &self.incumbent) {
            (Some(c), Some((obj, _))) => *obj < c,
            _ => false,
        }
    }

    fn most_fractional(&self, x: &[f64]) -> Option<usize> {
        let mut best: Option<(usize, f64)> = None;
        for &j in &self.prob.integers {
            let frac = x[j] - x[j].floor();
            let dist = (frac - 0.5).abs();
            if frac > INT_TOL && frac < 1.0 - INT_TOL {
                match best {
                    Some((_, d)) if d <= dist => {}
                    _ => best = Some((j, dist)),
                }
            }
        }
        best.map(|(j, _)| j)
    }

    fn eval(&mut self, lower: Vec<f64>, upper: Vec<f64>) -> Result<NodeLp, Error> {
        self.nodes += 1;
        let sol = solve_lp_with_bounds(&self.prob.lp, &lower, &upper)?;
        match sol.status {
            LpStatus::Infeasible => Ok(NodeLp::Pruned),
            LpStatus::Unbounded => Err(Error::NumericalBreakdown(
                "integer relaxation unbounded despite finite integer bounds".into(),
            )),
            LpStatus::Optimal => {
                if let Some((inc, _)) = &self.incumbent {
                    if sol.objective >= *inc - 1e-9 {
                        return Ok(NodeLp::Pruned);
                    }
                }
                if self.most_fractional(&sol.x).is_none() {
                    Ok(NodeLp::Integral(sol.objective, sol.x))
                } else {
                    Ok(NodeLp::Fractional(Node {
                        bound: sol.objective,
                        lower,
                        upper,
                        x: sol.x,
                    }))
                }
            }
        }
    }

    fn offer_incumbent(&mut self, obj: f64, x: Vec<f64>) {
        if self.incumbent.as_ref().map_or(true, |(o, _)| obj < *o) {
            self.incumbent = Some((obj, x));
        }
    }

    fn children(&self, node: &Node) -> ((Vec<f64>, Vec<f64>), (Vec<f64>, Vec<f64>), usize) {
        let j = self
            .most_fractional(&node.x)
            .expect("fractional node has a branch variable");
        let v = node.x[j];
        let mut down_upper = node.upper.clone();
        down_upper[j] = v.floor();
        let mut up_lower = node.lower.clone();
        up_lower[j] = v.ceil();
        (
            (node.lower.clone(), down_upper),
            (up_lower, node.upper.clone()),
            j,
        )
    }
}

pub fn solve_mip_with(p: &MipProblem, limits: MipLimits) -> Result<MipSolution, Error> {
    for &j in &p.integers {
        if !p.lp.upper[j].is_finite() {
            return Err(Error::UnboundedInteger(j));
        }
    }

    let mut search = Search {
        prob: p,
        limits,
        started: Instant::now(),
        nodes: 0,
        incumbent: None,
        #[cfg(debug_assertions)]
        last_popped_bound: f64::NEG_INFINITY,
    };

    let root = match search.eval(p.lp.lower.clone(), p.lp.upper.clone())? {
        NodeLp::Pruned => {
            return Ok(MipSolution {
                status: MipStatus::Infeasible,
                x: vec![0.0; p.lp.num_vars()],
                objective: f64::INFINITY,
                best_bound: f64::INFINITY,
                nodes: search.nodes,
            })
        }
        NodeLp::Integral(obj, x) => {
            return Ok(MipSolution {
                status: MipStatus::Optimal,
                x,
                objective: obj,
                best_bound: obj,
                nodes: search.nodes,
            })
        }
        NodeLp::Fractional(node) => node,
    };
    let root_bound = root.bound;

    // One greedy dive: round the branch variable to its nearest value first.
    let mut open: BinaryHeap<Node> = BinaryHeap::new();
    let mut dive = Some(root);
    while let Some(node) = dive.take() {
        if search.out_of_budget() || search.cutoff_reached() {
            open.push(node);
            break;
        }
        let ((dl, du), (ul, uu), j) = search.children(&node);
        let frac = node.x[j] - node.x[j].floor();
        let (near, far) = if frac < 0.5 {
            ((dl, du), (ul, uu))
        } else {
            ((ul, uu), (dl, du))
        };
        for (which, (lo, up)) in [(0, near), (1, far)] {
            match search.eval(lo, up)? {
                NodeLp::Pruned => {}
                NodeLp::Integral(obj, x) => search.offer_incumbent(obj, x),
                NodeLp::Fractional(child) => {
                    if which == 0 && dive.is_none() && search.incumbent.is_none() {
                        dive = Some(child);
                    } else {
                        open.push(child);
                    }
                }
            }
        }
    }

    // Best-bound main loop.
    let mut interrupted = false;
    while let Some(node) = open.pop() {
        if let Some((inc, _)) = &search.incumbent {
            if node.bound >= *inc - 1e-9 {
                // best-first: every remaining node is at least as bad
                open.clear();
                break;
            }
        }
        if search.out_of_budget() || search.cutoff_reached() {
            open.push(node);
            interrupted = true;
            break;
        }
        #[cfg(debug_assertions)]
        {
            debug_assert!(
                node.bound >= search.last_popped_bound - 1e-7,
                "best-bound order must be monotone"
            );
            search.last_popped_bound = node.bound;
        }
        let ((dl, du), (ul, uu), _) = search.children(&node);
        for (lo, up) in [(dl, du), (ul, uu)] {
            match search.eval(lo, up)? {
                NodeLp::Pruned => {}
                NodeLp::Integral(obj, x) => search.offer_incumbent(obj, x),
                NodeLp::Fractional(child) => open.push(child),
            }
        }
    }

    let open_bound = open
        .iter()
        .map(|n| n.bound)
        .fold(f64::INFINITY, f64::min);
    let complete = !interrupted;
    match search.incumbent {
        Some((obj, x)) => Ok(MipSolution {
            status: if complete {
                MipStatus::Optimal
            } else {
                MipStatus::Feasible
            },
            x,
            objective: obj,
            best_bound: if complete { obj } else { open_bound.min(obj) },
            nodes: search.nodes,
        }),
        None => Ok(MipSolution {
            status: if complete {
                MipStatus::Infeasible
            } else {
                MipStatus::TimeLimit
            },
            x: vec![0.0; p.lp.num_vars()],
            objective: f64::INFINITY,
            best_bound: if complete {
                f64::INFINITY
            } else {
                open_bound.max(root_bound)
            },
            nodes: search.nodes,
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lp::{solve_lp, Relation};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn linked_binary_switch() {
        // max r (min -r) with r <= 2z, z binary, r <= 1.5  => r = 1.5, z = 1
        let mut lp = LpProblem::new();
        let r = lp.add_var(-1.0, 0.0, f64::INFINITY);
        let z = lp.add_var(0.0, 0.0, 1.0);
        lp.add_row(&[(r, 1.0), (z, -2.0)], Relation::Le, 0.0);
        lp.add_row(&[(r, 1.0)], Relation::Le, 1.5);
        let p = MipProblem {
            lp,
            integers: vec![z],
        };
        let s = solve_mip(&p, None).unwrap();
        assert_eq!(s.status, MipStatus::Optimal);
        assert!((s.objective + 1.5).abs() < 1e-9);
        assert!((s.x[z] - 1.0).abs() < INT_TOL);
    }

    #[test]
    fn fractional_equality_is_integer_infeasible() {
        let mut lp = LpProblem::new();
        let z = lp.add_var(0.0, 0.0, 5.0);
        lp.add_row(&[(z, 2.0)], Relation::Eq, 1.0);
        let p = MipProblem {
            lp,
            integers: vec![z],
        };
        let s = solve_mip(&p, None).unwrap();
        assert_eq!(s.status, MipStatus::Infeasible);
    }

    #[test]
    fn missing_integer_bound_is_rejected() {
        let mut lp = LpProblem::new();
        let z = lp.add_var(1.0, 0.0, f64::INFINITY);
        lp.add_row(&[(z, 1.0)], Relation::Ge, 1.0);
        let p = MipProblem {
            lp,
            integers: vec![z],
        };
        assert!(matches!(
            solve_mip(&p, None),
            Err(Error::UnboundedInteger(_))
        ));
    }

    #[test]
    fn cutoff_stops_after_good_incumbent() {
        // Knapsack: any solution below the cutoff suffices. The search may
        // stop early (Feasible) or close the tree anyway (Optimal), but the
        // incumbent must beat the cutoff and never cost more nodes than the
        // full proof.
        let knapsack = || {
            let mut lp = LpProblem::new();
            let vals = [4.0, 3.0, 2.5, 2.0, 1.0];
            let wts = [3.0, 2.0, 2.0, 1.5, 1.0];
            let vars: Vec<usize> = vals.iter().map(|&v| lp.add_var(-v, 0.0, 1.0)).collect();
            let coeffs: Vec<(usize, f64)> = vars.iter().copied().zip(wts).collect();
            lp.add_row(&coeffs, Relation::Le, 4.0);
            MipProblem {
                lp,
                integers: vars,
            }
        };
        let exact = solve_mip(&knapsack(), None).unwrap();
        assert_eq!(exact.status, MipStatus::Optimal);
        let s = solve_mip_with(
            &knapsack(),
            MipLimits {
                cutoff: Some(-5.0),
                ..MipLimits::default()
            },
        )
        .unwrap();
        assert!(s.objective < -5.0);
        assert!(s.objective >= exact.objective - 1e-9);
        assert!(s.nodes <= exact.nodes);
        assert!(matches!(s.status, MipStatus::Optimal | MipStatus::Feasible));
    }

    #[test]
    fn node_limit_reports_feasible_with_incumbent() {
        // Root is fractional; the dive finds an incumbent; a node limit
        // then interrupts the proof.
        let mut lp = LpProblem::new();
        let n = 6;
        let vars: Vec<usize> = (0..n)
            .map(|i| lp.add_var(-(3.0 + i as f64 * 0.1), 0.0, 1.0))
            .collect();
        let coeffs: Vec<(usize, f64)> = vars
            .iter()
            .copied()
            .zip([3.0, 2.9, 2.8, 2.7, 2.6, 2.5])
            .collect();
        lp.add_row(&coeffs, Relation::Le, 7.7);
        let p = MipProblem {
            lp,
            integers: vars,
        };
        let s = solve_mip_with(
            &p,
            MipLimits {
                node_limit: Some(6),
                ..MipLimits::default()
            },
        )
        .unwrap();
        if s.status == MipStatus::Feasible {
            assert!(s.objective.is_finite());
            assert!(s.best_bound <= s.objective + 1e-9);
        }
    }

    /// Exhaustive oracle: try every integer assignment, solve the continuous
    /// remainder by LP, keep the best.
    fn enumerate_oracle(p: &MipProblem) -> Option<f64> {
        fn rec(p: &MipProblem, k: usize, fixed: &mut Vec<(usize, f64)>, best: &mut Option<f64>) {
            if k == p.integers.len() {
                let mut lp = p.lp.clone();
                for &(j, v) in fixed.iter() {
                    lp.lower[j] = v;
                    lp.upper[j] = v;
                }
                if let Ok(s) = solve_lp(&lp) {
                    if s.status == LpStatus::Optimal
                        && best.map_or(true, |b| s.objective < b)
                    {
                        *best = Some(s.objective);
                    }
                }
                return;
            }
            let j = p.integers[k];
            let lo = p.lp.lower[j].ceil() as i64;
            let hi = p.lp.upper[j].floor() as i64;
            for v in lo..=hi {
                fixed.push((j, v as f64));
                rec(p, k + 1, fixed, best);
                fixed.pop();
            }
        }
        let mut best = None;
        rec(p, 0, &mut Vec::new(), &mut best);
        best
    }

    #[test]
    fn random_mips_match_enumeration() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x317b);
        for _ in 0..120 {
            let n_int = rng.gen_range(1..=4);
            let n_cont = rng.gen_range(0..=2);
            let mut lp = LpProblem::new();
            let mut integers = Vec::new();
            for _ in 0..n_int {
                integers.push(lp.add_var(
                    rng.gen_range(-5..=5) as f64,
                    0.0,
                    rng.gen_range(1..=3) as f64,
                ));
            }
            for _ in 0..n_cont {
                lp.add_var(rng.gen_range(-5..=5) as f64, 0.0, rng.gen_range(1..=4) as f64);
            }
            let n = lp.num_vars();
            for _ in 0..rng.gen_range(1..=3) {
                let coeffs: Vec<(usize, f64)> = (0..n)
                    .map(|j| (j, rng.gen_range(-4..=4) as f64))
                    .collect();
                let rel = if rng.gen_bool(0.5) {
                    Relation::Le
                } else {
                    Relation::Ge
                };
                lp.add_row(&coeffs, rel, rng.gen_range(-4..=6) as f64);
            }
            let p = MipProblem { lp, integers };
            let s = solve_mip(&p, None).unwrap();
            let oracle = enumerate_oracle(&p);
            match (s.status, oracle) {
                (MipStatus::Optimal, Some(obj)) => {
                    assert!(
                        (s.objective - obj).abs() <= 1e-6 * (1.0 + obj.abs()),
                        "objective {} vs oracle {}",
                        s.objective,
                        obj
                    );
                    for &j in &p.integers {
                        let v = s.x[j];
                        assert!((v - v.round()).abs() <= INT_TOL);
                    }
                }
                (MipStatus::Infeasible, None) => {}
                (st, orc) => panic!("mismatch {st:?} vs {orc:?}"),
            }
        }
    }
}
