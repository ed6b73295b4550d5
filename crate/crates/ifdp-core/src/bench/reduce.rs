//! Hard-instance generator: encodes a 3-CNF formula as a unit-capacity
//! routing instance with unit sizes and a common unit deadline, such that
//! the formula is satisfiable iff the instance is feasible.
//!
//! Per variable, a literal flow with exactly two paths sharing their first
//! arc; the arcs after the shared one stand for the variable's positive and
//! negative occurrences. Per clause, a clause flow with three four-arc
//! paths, each crossing the occurrence arc of one of its literals. Routing
//! a literal flow over the path of the *false* polarity frees the true
//! polarity's occurrence arcs for the clause flows.

use serde::{Deserialize, Serialize};

use crate::model::{validate_instance, Arc, Flow, Instance, Network};
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lit {
    pub var: usize,
    pub negated: bool,
}

pub type Clause = [Lit; 3];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Formula {
    pub var_count: usize,
    pub clauses: Vec<Clause>,
}

impl Formula {
    /// Occurrence counts (positive, negative) per variable.
    fn occurrence_counts(&self) -> (Vec<usize>, Vec<usize>) {
        let mut pos = vec![0usize; self.var_count];
        let mut neg = vec![0usize; self.var_count];
        for clause in &self.clauses {
            for lit in clause {
                if lit.negated {
                    neg[lit.var] += 1;
                } else {
                    pos[lit.var] += 1;
                }
            }
        }
        (pos, neg)
    }

    pub fn check_preconditions(&self) -> Result<(), Error> {
        if self.var_count == 0 || self.clauses.is_empty() {
            return Err(Error::PreconditionViolated(
                "formula needs at least one variable and one clause".into(),
            ));
        }
        for (c, clause) in self.clauses.iter().enumerate() {
            for lit in clause {
                if lit.var >= self.var_count {
                    return Err(Error::PreconditionViolated(format!(
                        "clause {c} references variable {} of {}",
                        lit.var, self.var_count
                    )));
                }
            }
            for i in 0..3 {
                for j in i + 1..3 {
                    if clause[i].var == clause[j].var {
                        let msg = if clause[i].negated != clause[j].negated {
                            format!("clause {c} contains a variable and its negation")
                        } else {
                            format!("clause {c} repeats a literal")
                        };
                        return Err(Error::PreconditionViolated(msg));
                    }
                }
            }
        }
        let k = self.clauses.len();
        let (pos, neg) = self.occurrence_counts();
        for v in 0..self.var_count {
            for (count, polarity) in [(pos[v], "positive"), (neg[v], "negative")] {
                if count == 0 {
                    return Err(Error::PreconditionViolated(format!(
                        "{polarity} literal of variable {v} appears in no clause"
                    )));
                }
                if count > k - 1 {
                    return Err(Error::PreconditionViolated(format!(
                        "{polarity} literal of variable {v} appears in {count} of {k} clauses (at most {} allowed)",
                        k - 1
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Builds the instance: unit capacities, unit allocation, all sizes and
/// deadlines one; literal flows first (external order), then clause flows.
/// Satisfiable formula ⇔ feasible instance with completion ≤ 1.
pub fn reduce_3sat(formula: &Formula) -> Result<Instance, Error> {
    formula.check_preconditions()?;
    let m = formula.var_count;
    let (pos_counts, neg_counts) = formula.occurrence_counts();

    let mut arcs: Vec<Arc> = Vec::new();
    let mut next_node = 0usize;
    let mut fresh = || {
        let n = next_node;
        next_node += 1;
        n
    };
    let push_arc = |arcs: &mut Vec<Arc>, tail: usize, head: usize| -> usize {
        arcs.push(Arc {
            tail,
            head,
            capacity: 1.0,
        });
        arcs.len() - 1
    };

    // Literal gadget per variable: origin, shared entry arc, then one chain
    // per polarity whose arcs are that polarity's occurrence arcs. The
    // negative chain runs through its own pre-destination node so the two
    // chains never share an arc (with a single occurrence on each side they
    // would otherwise both collapse to entry→destination).
    let mut origins = Vec::with_capacity(m);
    let mut dests = Vec::with_capacity(m);
    // occurrence_arcs[v][polarity][h] = arc id of the h-th occurrence
    let mut occurrence_arcs: Vec<[Vec<usize>; 2]> = Vec::with_capacity(m);
    for v in 0..m {
        let origin = fresh();
        let entry = fresh();
        let dest = fresh();
        push_arc(&mut arcs, origin, entry);
        let mut per_polarity: [Vec<usize>; 2] = [Vec::new(), Vec::new()];
        for (polarity, count) in [(0usize, pos_counts[v]), (1usize, neg_counts[v])] {
            let mut prev = entry;
            let chain_end = if polarity == 0 { dest } else { fresh() };
            for h in 0..count {
                let next = if h + 1 == count { chain_end } else { fresh() };
                per_polarity[polarity].push(push_arc(&mut arcs, prev, next));
                prev = next;
            }
            if polarity == 1 {
                push_arc(&mut arcs, chain_end, dest);
            }
        }
        origins.push(origin);
        dests.push(dest);
        occurrence_arcs.push(per_polarity);
    }

    // Clause gadget: shared entry arc plus, per literal, a bridge into the
    // head of its occurrence arc and a bridge out of its tail.
    let mut clause_origins = Vec::with_capacity(formula.clauses.len());
    let mut clause_dests = Vec::with_capacity(formula.clauses.len());
    let mut seen_occurrences = vec![[0usize; 2]; m];
    for clause in &formula.clauses {
        let origin = fresh();
        let entry = fresh();
        let dest = fresh();
        push_arc(&mut arcs, origin, entry);
        for lit in clause {
            let polarity = usize::from(lit.negated);
            let h = seen_occurrences[lit.var][polarity];
            seen_occurrences[lit.var][polarity] += 1;
            let occ_arc = occurrence_arcs[lit.var][polarity][h];
            let (occ_tail, occ_head) = (arcs[occ_arc].tail, arcs[occ_arc].head);
            push_arc(&mut arcs, entry, occ_tail);
            push_arc(&mut arcs, occ_head, dest);
        }
        clause_origins.push(origin);
        clause_dests.push(dest);
    }

    let network = Network {
        node_count: next_node,
        arcs,
        units: vec![1.0],
    };
    let mut flows = Vec::with_capacity(m + formula.clauses.len());
    for v in 0..m {
        flows.push(Flow {
            origin: origins[v],
            destination: dests[v],
            size: 1.0,
            deadline: Some(1.0),
        });
    }
    for c in 0..formula.clauses.len() {
        flows.push(Flow {
            origin: clause_origins[c],
            destination: clause_dests[c],
            size: 1.0,
            deadline: Some(1.0),
        });
    }
    validate_instance(network, flows)
}

/// Exhaustive satisfiability check; returns a satisfying assignment if one
/// exists. Intended for the small formulas the reduction tests use.
pub fn sat_brute_force(formula: &Formula) -> Option<Vec<bool>> {
    let m = formula.var_count;
    assert!(m < 26, "brute force is for small formulas");
    for mask in 0u64..(1 << m) {
        let assignment: Vec<bool> = (0..m).map(|v| mask & (1 << v) != 0).collect();
        let ok = formula.clauses.iter().all(|clause| {
            clause
                .iter()
                .any(|lit| assignment[lit.var] != lit.negated)
        });
        if ok {
            return Some(assignment);
        }
    }
    None
}

/// Parses DIMACS CNF. Every clause must have exactly three literals.
pub fn parse_dimacs(text: &str) -> Result<Formula, Error> {
    let mut var_count: Option<usize> = None;
    let mut clauses: Vec<Clause> = Vec::new();
    let mut current: Vec<Lit> = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('c') || line.starts_with('%') {
            continue;
        }
        if let Some(rest) = line.strip_prefix('p') {
            let mut parts = rest.split_whitespace();
            if parts.next() != Some("cnf") {
                return Err(Error::ParseError(format!(
                    "line {}: expected `p cnf <vars> <clauses>`",
                    lineno + 1
                )));
            }
            let vars: usize = parts
                .next()
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| {
                    Error::ParseError(format!("line {}: bad variable count", lineno + 1))
                })?;
            var_count = Some(vars);
            continue;
        }
        let vars = var_count.ok_or_else(|| {
            Error::ParseError(format!("line {}: clause before the `p cnf` header", lineno + 1))
        })?;
        for tok in line.split_whitespace() {
            let v: i64 = tok.parse().map_err(|_| {
                Error::ParseError(format!("line {}: bad literal `{tok}`", lineno + 1))
            })?;
            if v == 0 {
                let c: Clause = current.clone().try_into().map_err(|_| {
                    Error::ParseError(format!(
                        "line {}: clause has {} literals, exactly 3 required",
                        lineno + 1,
                        current.len()
                    ))
                })?;
                clauses.push(c);
                current.clear();
            } else {
                let var = v.unsigned_abs() as usize - 1;
                if var >= vars {
                    return Err(Error::ParseError(format!(
                        "line {}: literal {v} exceeds declared variable count {vars}",
                        lineno + 1
                    )));
                }
                current.push(Lit {
                    var,
                    negated: v < 0,
                });
            }
        }
    }
    if !current.is_empty() {
        return Err(Error::ParseError("unterminated final clause".into()));
    }
    let var_count =
        var_count.ok_or_else(|| Error::ParseError("missing `p cnf` header".into()))?;
    Ok(Formula { var_count, clauses })
}

/// All eight sign patterns over three variables: unsatisfiable, and every
/// literal appears four times. Dropping any one clause makes it satisfiable.
pub fn all_sign_patterns() -> Formula {
    let mut clauses = Vec::with_capacity(8);
    for mask in 0..8u8 {
        let lits: Vec<Lit> = (0..3)
            .map(|v| Lit {
                var: v,
                negated: mask & (1 << v) != 0,
            })
            .collect();
        clauses.push([lits[0], lits[1], lits[2]]);
    }
    Formula {
        var_count: 3,
        clauses,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lit(var: usize, negated: bool) -> Lit {
        Lit { var, negated }
    }

    #[test]
    fn missing_negations_violate_preconditions() {
        let formula = Formula {
            var_count: 3,
            clauses: vec![[lit(0, false), lit(1, false), lit(2, false)]],
        };
        assert!(matches!(
            reduce_3sat(&formula),
            Err(Error::PreconditionViolated(_))
        ));
    }

    #[test]
    fn variable_with_its_negation_in_one_clause_is_rejected() {
        let formula = Formula {
            var_count: 3,
            clauses: vec![[lit(0, false), lit(0, true), lit(1, false)]],
        };
        assert!(matches!(
            reduce_3sat(&formula),
            Err(Error::PreconditionViolated(_))
        ));
    }

    #[test]
    fn all_sign_patterns_is_unsat_and_each_subset_sat() {
        let full = all_sign_patterns();
        assert!(sat_brute_force(&full).is_none());
        for drop in 0..8 {
            let mut f = full.clone();
            f.clauses.remove(drop);
            assert!(sat_brute_force(&f).is_some());
            f.check_preconditions().unwrap();
        }
    }

    #[test]
    fn reduction_structure_follows_the_construction() {
        let formula = all_sign_patterns();
        let inst = reduce_3sat(&formula).unwrap();
        let m = 3;
        let k = 8;
        assert_eq!(inst.flow_count(), m + k);
        // Every flow has unit size and deadline.
        for f in inst.flows() {
            assert_eq!(f.size, 1.0);
            assert_eq!(f.deadline, Some(1.0));
        }
        // per variable: 1 shared arc + Z + Ẑ occurrence arcs (here 4 + 4)
        // + 1 negative-chain connector; per clause: 1 shared + 3 in-bridges
        // + 3 out-bridges
        let expected_arcs = m * (1 + 4 + 4 + 1) + k * 7;
        assert_eq!(inst.network().arcs.len(), expected_arcs);
        // per variable: origin, entry, destination, 3 + 3 interior chain
        // nodes, 1 negative pre-destination; per clause: 3 nodes
        assert_eq!(inst.network().node_count, m * (4 + 4 + 2) + 3 * k);
        for a in &inst.network().arcs {
            assert_eq!(a.capacity, 1.0);
        }
        assert_eq!(inst.network().units, vec![1.0]);
    }

    #[test]
    fn dimacs_round_trip() {
        let text = "c tiny\np cnf 3 2\n1 -2 3 0\n-1 2 -3 0\n";
        let f = parse_dimacs(text).unwrap();
        assert_eq!(f.var_count, 3);
        assert_eq!(f.clauses.len(), 2);
        assert_eq!(f.clauses[0][1], lit(1, true));
        assert_eq!(f.clauses[1][0], lit(0, true));
    }

    #[test]
    fn dimacs_rejects_wide_clauses() {
        let text = "p cnf 4 1\n1 2 3 4 0\n";
        assert!(matches!(parse_dimacs(text), Err(Error::ParseError(_))));
    }
}
