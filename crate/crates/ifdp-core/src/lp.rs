//! Dense two-phase primal simplex with bounded variables.
//!
//! Solves `min c·x  s.t.  A x {≤,=,≥} b,  l ≤ x ≤ u` and reports primal
//! values, one dual value per row and one reduced cost per variable.
//! Dual sign convention for minimization: `=` rows unrestricted, `≤` rows
//! nonpositive, `≥` rows nonnegative.

use crate::Error;

/// Relation of a constraint row.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

/// Termination status of an LP solve.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Clone, Debug)]
pub struct LpRow {
    /// Sparse (variable index, coefficient) pairs; indices are unique.
    pub coeffs: Vec<(usize, f64)>,
    pub relation: Relation,
    pub rhs: f64,
}

/// A linear program in minimization form.
#[derive(Clone, Debug, Default)]
pub struct LpProblem {
    pub objective: Vec<f64>,
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
    pub rows: Vec<LpRow>,
}

impl LpProblem {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    /// Adds a variable with objective cost `cost` and bounds `[lb, ub]`.
    /// `lb` must be finite; `ub` may be `f64::INFINITY`.
    pub fn add_var(&mut self, cost: f64, lb: f64, ub: f64) -> usize {
        assert!(lb.is_finite(), "variable lower bound must be finite");
        assert!(!ub.is_nan() && ub != f64::NEG_INFINITY);
        self.objective.push(cost);
        self.lower.push(lb);
        self.upper.push(ub);
        self.objective.len() - 1
    }

    /// Adds a constraint row; repeated variable indices are summed.
    pub fn add_row(&mut self, coeffs: &[(usize, f64)], relation: Relation, rhs: f64) -> usize {
        assert!(rhs.is_finite(), "row rhs must be finite");
        let mut merged: Vec<(usize, f64)> = Vec::with_capacity(coeffs.len());
        for &(j, a) in coeffs {
            assert!(j < self.num_vars(), "row references unknown variable");
            match merged.iter_mut().find(|(k, _)| *k == j) {
                Some((_, acc)) => *acc += a,
                None => merged.push((j, a)),
            }
        }
        self.rows.push(LpRow {
            coeffs: merged,
            relation,
            rhs,
        });
        self.rows.len() - 1
    }
}

/// Solution of an LP, valid in the problem's original variable space.
#[derive(Clone, Debug)]
pub struct LpSolution {
    pub status: LpStatus,
    pub x: Vec<f64>,
    pub objective: f64,
    /// One dual per row (zero for rows dropped as empty).
    pub duals: Vec<f64>,
    /// Reduced cost `c_j − y·A_j` per variable.
    pub reduced_costs: Vec<f64>,
}

const OPT_TOL: f64 = 1e-7;
const FEAS_TOL: f64 = 1e-8;
const PIVOT_MIN: f64 = 1e-11;
const DEGEN_TOL: f64 = 1e-10;
const BLAND_AFTER: usize = 1000;

#[derive(Clone, Copy, PartialEq, Eq)]
enum VarState {
    Basic,
    AtLower,
    AtUpper,
}

struct Tableau {
    m: usize,
    ncols: usize,
    n_struct: usize,
    first_artificial: usize,
    tab: Vec<f64>,
    obj: Vec<f64>,
    ub: Vec<f64>,
    state: Vec<VarState>,
    basis: Vec<usize>,
    beta: Vec<f64>,
    degenerate_pivots: usize,
}

enum PhaseEnd {
    Optimal,
    Unbounded,
}

impl Tableau {
    fn row(&self, i: usize) -> &[f64] {
        &self.tab[i * self.ncols..(i + 1) * self.ncols]
    }

    fn entry(&self, i: usize, j: usize) -> f64 {
        self.tab[i * self.ncols + j]
    }

    fn choose_entering(&self, bland: bool) -> Option<(usize, f64)> {
        let mut best: Option<(usize, f64, f64)> = None;
        for j in 0..self.first_artificial {
            let viol = match self.state[j] {
                VarState::AtLower if self.obj[j] < -OPT_TOL => -self.obj[j],
                VarState::AtUpper if self.obj[j] > OPT_TOL => self.obj[j],
                _ => continue,
            };
            let dir = if self.state[j] == VarState::AtLower {
                1.0
            } else {
                -1.0
            };
            if bland {
                return Some((j, dir));
            }
            if best.map_or(true, |(_, _, v)| viol > v) {
                best = Some((j, dir, viol));
            }
        }
        best.map(|(j, dir, _)| (j, dir))
    }

    /// Runs the simplex loop for the current objective row until optimality.
    fn iterate(&mut self) -> Result<PhaseEnd, Error> {
        let max_iters = 50_000 + 200 * (self.m + self.ncols);
        for _ in 0..max_iters {
            let bland = self.degenerate_pivots > BLAND_AFTER;
            let Some((enter, dir)) = self.choose_entering(bland) else {
                return Ok(PhaseEnd::Optimal);
            };
            match self.ratio_test_and_pivot(enter, dir, bland)? {
                StepOutcome::Moved => {}
                StepOutcome::Unbounded => return Ok(PhaseEnd::Unbounded),
            }
        }
        Err(Error::NumericalBreakdown(
            "simplex iteration limit exceeded".into(),
        ))
    }

    fn ratio_test_and_pivot(
        &mut self,
        enter: usize,
        dir: f64,
        bland: bool,
    ) -> Result<StepOutcome, Error> {
        // Step length capped by the entering variable's own span and by each
        // basic variable reaching one of its bounds.
        let mut t_best = self.ub[enter];
        let mut leave: Option<(usize, bool)> = None; // (row, leaves_at_upper)
        for i in 0..self.m {
            let a = dir * self.entry(i, enter);
            let b = self.basis[i];
            if a > PIVOT_MIN {
                let t = (self.beta[i]).max(0.0) / a;
                if t < t_best - DEGEN_TOL
                    || (t < t_best + DEGEN_TOL && self.better_leave(leave, i, enter, bland))
                {
                    t_best = t;
                    leave = Some((i, false));
                }
            } else if a < -PIVOT_MIN && self.ub[b].is_finite() {
                let t = (self.ub[b] - self.beta[i]).max(0.0) / (-a);
                if t < t_best - DEGEN_TOL
                    || (t < t_best + DEGEN_TOL && self.better_leave(leave, i, enter, bland))
                {
                    t_best = t;
                    leave = Some((i, true));
                }
            }
        }
        if t_best.is_infinite() {
            return Ok(StepOutcome::Unbounded);
        }
        if t_best <= DEGEN_TOL {
            self.degenerate_pivots += 1;
        }
        match leave {
            None => {
                // Bound flip: entering variable jumps to its opposite bound.
                let span = self.ub[enter];
                for i in 0..self.m {
                    self.beta[i] -= dir * span * self.entry(i, enter);
                }
                self.state[enter] = if dir > 0.0 {
                    VarState::AtUpper
                } else {
                    VarState::AtLower
                };
                Ok(StepOutcome::Moved)
            }
            Some((r, leaves_at_upper)) => {
                let pivot = self.entry(r, enter);
                if pivot.abs() < PIVOT_MIN {
                    return Err(Error::NumericalBreakdown(
                        "pivot magnitude below 1e-11".into(),
                    ));
                }
                let start = match self.state[enter] {
                    VarState::AtLower => 0.0,
                    VarState::AtUpper => self.ub[enter],
                    VarState::Basic => unreachable!("entering variable is nonbasic"),
                };
                for i in 0..self.m {
                    if i != r {
                        self.beta[i] -= dir * t_best * self.entry(i, enter);
                    }
                }
                let old_basic = self.basis[r];
                self.state[old_basic] = if leaves_at_upper {
                    VarState::AtUpper
                } else {
                    VarState::AtLower
                };
                self.basis[r] = enter;
                self.state[enter] = VarState::Basic;
                self.beta[r] = start + dir * t_best;
                self.eliminate(r, enter);
                Ok(StepOutcome::Moved)
            }
        }
    }

    /// Tie-break for the leaving row: largest pivot magnitude for stability,
    /// smallest basis index under Bland's rule.
    fn better_leave(&self, cur: Option<(usize, bool)>, i: usize, enter: usize, bland: bool) -> bool {
        match cur {
            None => true,
            Some((r, _)) => {
                if bland {
                    self.basis[i] < self.basis[r]
                } else {
                    self.entry(i, enter).abs() > self.entry(r, enter).abs()
                }
            }
        }
    }

    /// Gauss-Jordan elimination of column `col` against pivot row `r`.
    fn eliminate(&mut self, r: usize, col: usize) {
        let ncols = self.ncols;
        let pivot = self.tab[r * ncols + col];
        let inv = 1.0 / pivot;
        for v in &mut self.tab[r * ncols..(r + 1) * ncols] {
            *v *= inv;
        }
        self.tab[r * ncols + col] = 1.0;
        let pivot_row: Vec<f64> = self.row(r).to_vec();
        for i in 0..self.m {
            if i == r {
                continue;
            }
            let factor = self.tab[i * ncols + col];
            if factor.abs() > 1e-12 {
                let row = &mut self.tab[i * ncols..(i + 1) * ncols];
                for (v, p) in row.iter_mut().zip(&pivot_row) {
                    *v -= factor * p;
                }
                self.tab[i * ncols + col] = 0.0;
            }
        }
        let factor = self.obj[col];
        if factor.abs() > 1e-12 {
            for (v, p) in self.obj.iter_mut().zip(&pivot_row) {
                *v -= factor * p;
            }
            self.obj[col] = 0.0;
        }
    }

    /// Rebuilds the reduced-cost row for the cost vector `costs`
    /// (indexed over all tableau columns).
    fn reset_objective(&mut self, costs: &[f64]) {
        self.obj.copy_from_slice(costs);
        for i in 0..self.m {
            let cb = costs[self.basis[i]];
            if cb.abs() > 1e-12 {
                let row = self.row(i).to_vec();
                for (v, p) in self.obj.iter_mut().zip(&row) {
                    *v -= cb * p;
                }
            }
        }
        for i in 0..self.m {
            self.obj[self.basis[i]] = 0.0;
        }
    }
}

enum StepOutcome {
    Moved,
    Unbounded,
}

/// Solves the LP. `NumericalBreakdown` signals persistent tiny pivots or an
/// iteration runaway; callers may rescale and retry.
pub fn solve_lp(p: &LpProblem) -> Result<LpSolution, Error> {
    solve_lp_with_bounds(p, &p.lower, &p.upper)
}

/// Same as [`solve_lp`] with the variable bounds overridden; used by branch
/// and bound to avoid cloning the constraint rows at every node.
pub fn solve_lp_with_bounds(
    p: &LpProblem,
    lower: &[f64],
    upper: &[f64],
) -> Result<LpSolution, Error> {
    assert_eq!(lower.len(), p.num_vars());
    assert_eq!(upper.len(), p.num_vars());
    let n = p.num_vars();
    let infeasible = |p: &LpProblem| LpSolution {
        status: LpStatus::Infeasible,
        x: vec![0.0; p.num_vars()],
        objective: f64::INFINITY,
        duals: vec![0.0; p.rows.len()],
        reduced_costs: vec![0.0; p.num_vars()],
    };

    for j in 0..n {
        if upper[j] < lower[j] - FEAS_TOL {
            return Ok(infeasible(p));
        }
    }

    // Shift to x̂ = x − l so every variable has lower bound zero; drop empty
    // rows (their relation is checked against the shifted rhs directly).
    let mut kept: Vec<usize> = Vec::with_capacity(p.rows.len());
    let mut shifted_rhs: Vec<f64> = Vec::with_capacity(p.rows.len());
    for (idx, row) in p.rows.iter().enumerate() {
        let mut rhs = row.rhs;
        let mut all_zero = true;
        for &(j, a) in &row.coeffs {
            rhs -= a * lower[j];
            if a.abs() > 1e-12 {
                all_zero = false;
            }
        }
        if all_zero {
            let ok = match row.relation {
                Relation::Le => rhs >= -FEAS_TOL,
                Relation::Ge => rhs <= FEAS_TOL,
                Relation::Eq => rhs.abs() <= FEAS_TOL,
            };
            if !ok {
                return Ok(infeasible(p));
            }
        } else {
            kept.push(idx);
            shifted_rhs.push(rhs);
        }
    }

    let m = kept.len();
    let n_slack = kept
        .iter()
        .filter(|&&idx| p.rows[idx].relation != Relation::Eq)
        .count();
    let ncols = n + n_slack + m;
    let first_artificial = n + n_slack;

    let mut tab = vec![0.0; m * ncols];
    let mut sigma = vec![1.0; m];
    let mut basis = vec![0usize; m];
    let mut beta = vec![0.0; m];
    let mut ub = vec![f64::INFINITY; ncols];
    for j in 0..n {
        ub[j] = upper[j] - lower[j];
    }
    let mut state = vec![VarState::AtLower; ncols];

    let mut slack_at = n;
    for (i, &idx) in kept.iter().enumerate() {
        let row = &p.rows[idx];
        let flip = shifted_rhs[i] < 0.0;
        let s = if flip { -1.0 } else { 1.0 };
        sigma[i] = s;
        for &(j, a) in &row.coeffs {
            tab[i * ncols + j] = s * a;
        }
        let mut basic_from_slack = None;
        if row.relation != Relation::Eq {
            let coef = s * if row.relation == Relation::Le { 1.0 } else { -1.0 };
            tab[i * ncols + slack_at] = coef;
            if coef > 0.0 {
                basic_from_slack = Some(slack_at);
            }
            slack_at += 1;
        }
        let art = first_artificial + i;
        tab[i * ncols + art] = 1.0;
        beta[i] = s * shifted_rhs[i];
        let b = basic_from_slack.unwrap_or(art);
        basis[i] = b;
        state[b] = VarState::Basic;
    }

    let mut t = Tableau {
        m,
        ncols,
        n_struct: n,
        first_artificial,
        tab,
        obj: vec![0.0; ncols],
        ub,
        state,
        basis,
        beta,
        degenerate_pivots: 0,
    };

    // Phase I: minimize the sum of artificial values.
    let mut phase1_costs = vec![0.0; ncols];
    for c in &mut phase1_costs[first_artificial..] {
        *c = 1.0;
    }
    t.reset_objective(&phase1_costs);
    match t.iterate()? {
        PhaseEnd::Optimal => {}
        PhaseEnd::Unbounded => {
            return Err(Error::NumericalBreakdown(
                "phase-I objective reported unbounded".into(),
            ))
        }
    }
    let b_scale = 1.0 + shifted_rhs.iter().map(|v| v.abs()).sum::<f64>();
    let infeas: f64 = (0..m)
        .filter(|&i| t.basis[i] >= first_artificial)
        .map(|i| t.beta[i].max(0.0))
        .sum();
    if infeas > FEAS_TOL * b_scale {
        return Ok(infeasible(p));
    }

    // Pivot remaining zero-valued artificials out of the basis when the row
    // has any usable structural entry; rows without one are redundant.
    for r in 0..m {
        if t.basis[r] < first_artificial {
            continue;
        }
        let col = (0..first_artificial)
            .filter(|&j| t.state[j] != VarState::Basic)
            .find(|&j| t.entry(r, j).abs() > 1e-8);
        if let Some(col) = col {
            let old = t.basis[r];
            t.state[old] = VarState::AtLower;
            let start = match t.state[col] {
                VarState::AtLower => 0.0,
                VarState::AtUpper => t.ub[col],
                VarState::Basic => unreachable!(),
            };
            t.basis[r] = col;
            t.state[col] = VarState::Basic;
            t.beta[r] = start;
            t.eliminate(r, col);
        }
    }

    // Phase II with the real costs.
    let mut phase2_costs = vec![0.0; ncols];
    phase2_costs[..n].copy_from_slice(&p.objective);
    t.degenerate_pivots = 0;
    t.reset_objective(&phase2_costs);
    let status = match t.iterate()? {
        PhaseEnd::Optimal => LpStatus::Optimal,
        PhaseEnd::Unbounded => {
            return Ok(LpSolution {
                status: LpStatus::Unbounded,
                x: vec![0.0; n],
                objective: f64::NEG_INFINITY,
                duals: vec![0.0; p.rows.len()],
                reduced_costs: vec![0.0; n],
            })
        }
    };

    let mut x = vec![0.0; n];
    for j in 0..n {
        let v = match t.state[j] {
            VarState::AtLower => 0.0,
            VarState::AtUpper => t.ub[j],
            VarState::Basic => 0.0,
        };
        x[j] = v + lower[j];
    }
    for i in 0..m {
        let b = t.basis[i];
        if b < n {
            x[b] = t.beta[i] + lower[b];
        }
    }
    let objective = p
        .objective
        .iter()
        .zip(&x)
        .map(|(c, v)| c * v)
        .sum::<f64>();

    let mut duals = vec![0.0; p.rows.len()];
    for (i, &idx) in kept.iter().enumerate() {
        duals[idx] = -sigma[i] * t.obj[first_artificial + i];
    }
    let reduced_costs = t.obj[..t.n_struct].to_vec();

    Ok(LpSolution {
        status,
        x,
        objective,
        duals,
        reduced_costs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn assert_close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b} (tol {tol})");
    }

    #[test]
    fn single_ge_row_dual_is_one() {
        let mut p = LpProblem::new();
        let x = p.add_var(1.0, 0.0, f64::INFINITY);
        p.add_row(&[(x, 1.0)], Relation::Ge, 3.0);
        let s = solve_lp(&p).unwrap();
        assert_eq!(s.status, LpStatus::Optimal);
        assert_close(s.objective, 3.0, 1e-9);
        assert_close(s.duals[0], 1.0, 1e-9);
    }

    #[test]
    fn triangle_master_lp() {
        // min xa+xb+xc s.t. xa=0.5, xb=1.5, xc=1, xa<=1, xa+xb<=2, xa+xb+xc<=3
        let mut p = LpProblem::new();
        let xa = p.add_var(1.0, 0.0, f64::INFINITY);
        let xb = p.add_var(1.0, 0.0, f64::INFINITY);
        let xc = p.add_var(1.0, 0.0, f64::INFINITY);
        p.add_row(&[(xa, 1.0)], Relation::Eq, 0.5);
        p.add_row(&[(xb, 1.0)], Relation::Eq, 1.5);
        p.add_row(&[(xc, 1.0)], Relation::Eq, 1.0);
        p.add_row(&[(xa, 1.0)], Relation::Le, 1.0);
        p.add_row(&[(xa, 1.0), (xb, 1.0)], Relation::Le, 2.0);
        p.add_row(&[(xa, 1.0), (xb, 1.0), (xc, 1.0)], Relation::Le, 3.0);
        let s = solve_lp(&p).unwrap();
        assert_eq!(s.status, LpStatus::Optimal);
        assert_close(s.objective, 3.0, 1e-9);
        assert_close(s.x[0], 0.5, 1e-9);
        assert_close(s.x[1], 1.5, 1e-9);
        assert_close(s.x[2], 1.0, 1e-9);
    }

    #[test]
    fn contradictory_bounds_rows_infeasible() {
        let mut p = LpProblem::new();
        let x = p.add_var(0.0, 0.0, f64::INFINITY);
        p.add_row(&[(x, 1.0)], Relation::Le, 1.0);
        p.add_row(&[(x, 1.0)], Relation::Ge, 2.0);
        let s = solve_lp(&p).unwrap();
        assert_eq!(s.status, LpStatus::Infeasible);
    }

    #[test]
    fn unbounded_below() {
        let mut p = LpProblem::new();
        let x = p.add_var(-1.0, 0.0, f64::INFINITY);
        p.add_row(&[(x, 1.0)], Relation::Ge, 0.0);
        let s = solve_lp(&p).unwrap();
        assert_eq!(s.status, LpStatus::Unbounded);
    }

    #[test]
    fn variable_upper_bound_binds() {
        let mut p = LpProblem::new();
        let x = p.add_var(-1.0, 0.0, 2.5);
        let y = p.add_var(0.0, 0.0, 10.0);
        p.add_row(&[(x, 1.0), (y, 1.0)], Relation::Le, 7.0);
        let s = solve_lp(&p).unwrap();
        assert_eq!(s.status, LpStatus::Optimal);
        assert_close(s.objective, -2.5, 1e-9);
        assert_close(s.x[0], 2.5, 1e-9);
    }

    #[test]
    fn shifted_lower_bounds() {
        // min x+y with x >= 1.5, y in [2, 3], x+y >= 5
        let mut p = LpProblem::new();
        let x = p.add_var(1.0, 1.5, f64::INFINITY);
        let y = p.add_var(1.0, 2.0, 3.0);
        p.add_row(&[(x, 1.0), (y, 1.0)], Relation::Ge, 5.0);
        let s = solve_lp(&p).unwrap();
        assert_eq!(s.status, LpStatus::Optimal);
        assert_close(s.objective, 5.0, 1e-9);
        assert!(s.x[0] >= 1.5 - 1e-9 && s.x[1] >= 2.0 - 1e-9);
    }

    #[test]
    fn crossed_bounds_infeasible() {
        let mut p = LpProblem::new();
        p.add_var(1.0, 2.0, 1.0);
        let s = solve_lp(&p).unwrap();
        assert_eq!(s.status, LpStatus::Infeasible);
    }

    #[test]
    fn empty_row_checked_against_relation() {
        let mut p = LpProblem::new();
        let x = p.add_var(1.0, 0.0, 1.0);
        p.add_row(&[(x, 0.0)], Relation::Ge, 2.0);
        let s = solve_lp(&p).unwrap();
        assert_eq!(s.status, LpStatus::Infeasible);
    }

    // --- randomized cross-check against a vertex-enumeration oracle ---

    struct DenseLp {
        costs: Vec<f64>,
        lower: Vec<f64>,
        upper: Vec<f64>,
        rows: Vec<(Vec<f64>, Relation, f64)>,
    }

    fn solve_linear_system(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
        let n = b.len();
        for col in 0..n {
            let piv = (col..n).max_by(|&i, &j| {
                a[i][col].abs().partial_cmp(&a[j][col].abs()).unwrap()
            })?;
            if a[piv][col].abs() < 1e-9 {
                return None;
            }
            a.swap(col, piv);
            b.swap(col, piv);
            let d = a[col][col];
            for j in col..n {
                a[col][j] /= d;
            }
            b[col] /= d;
            for i in 0..n {
                if i != col && a[i][col].abs() > 0.0 {
                    let f = a[i][col];
                    for j in col..n {
                        a[i][j] -= f * a[col][j];
                    }
                    b[i] -= f * b[col];
                }
            }
        }
        Some(b)
    }

    /// Brute-force LP oracle: enumerate all candidate vertices formed by n
    /// active constraints (rows as equalities plus variable bounds).
    fn vertex_oracle(lp: &DenseLp) -> Option<(f64, Vec<f64>)> {
        let n = lp.costs.len();
        // Constraint pool: (normal, rhs) for rows and bounds.
        let mut pool: Vec<(Vec<f64>, f64)> = Vec::new();
        for (coeffs, _, rhs) in &lp.rows {
            pool.push((coeffs.clone(), *rhs));
        }
        for j in 0..n {
            let mut e = vec![0.0; n];
            e[j] = 1.0;
            pool.push((e.clone(), lp.lower[j]));
            pool.push((e, lp.upper[j]));
        }
        let k = pool.len();
        let mut best: Option<(f64, Vec<f64>)> = None;
        let mut combo: Vec<usize> = (0..n).collect();
        loop {
            let a: Vec<Vec<f64>> = combo.iter().map(|&i| pool[i].0.clone()).collect();
            let b: Vec<f64> = combo.iter().map(|&i| pool[i].1).collect();
            if let Some(x) = solve_linear_system(a, b) {
                if feasible(lp, &x) {
                    let obj: f64 = lp.costs.iter().zip(&x).map(|(c, v)| c * v).sum();
                    if best.as_ref().map_or(true, |(o, _)| obj < *o) {
                        best = Some((obj, x));
                    }
                }
            }
            // next combination
            let mut i = n;
            loop {
                if i == 0 {
                    return best;
                }
                i -= 1;
                if combo[i] != i + k - n {
                    combo[i] += 1;
                    for j in i + 1..n {
                        combo[j] = combo[j - 1] + 1;
                    }
                    break;
                }
            }
        }
    }

    fn feasible(lp: &DenseLp, x: &[f64]) -> bool {
        for (j, &v) in x.iter().enumerate() {
            if v < lp.lower[j] - 1e-7 || v > lp.upper[j] + 1e-7 {
                return false;
            }
        }
        for (coeffs, rel, rhs) in &lp.rows {
            let lhs: f64 = coeffs.iter().zip(x).map(|(a, v)| a * v).sum();
            let ok = match rel {
                Relation::Le => lhs <= rhs + 1e-7,
                Relation::Ge => lhs >= rhs - 1e-7,
                Relation::Eq => (lhs - rhs).abs() <= 1e-7,
            };
            if !ok {
                return false;
            }
        }
        true
    }

    fn to_problem(lp: &DenseLp) -> LpProblem {
        let mut p = LpProblem::new();
        for j in 0..lp.costs.len() {
            p.add_var(lp.costs[j], lp.lower[j], lp.upper[j]);
        }
        for (coeffs, rel, rhs) in &lp.rows {
            let sparse: Vec<(usize, f64)> =
                coeffs.iter().enumerate().map(|(j, &a)| (j, a)).collect();
            p.add_row(&sparse, *rel, *rhs);
        }
        p
    }

    #[test]
    fn random_lps_match_vertex_enumeration() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x1fdb);
        let mut optimal_seen = 0;
        let mut infeasible_seen = 0;
        for _ in 0..300 {
            let n = rng.gen_range(1..=5);
            let m = rng.gen_range(1..=4);
            let lp = DenseLp {
                costs: (0..n).map(|_| rng.gen_range(-5..=5) as f64).collect(),
                lower: vec![0.0; n],
                upper: (0..n).map(|_| rng.gen_range(1..=4) as f64).collect(),
                rows: (0..m)
                    .map(|_| {
                        let coeffs: Vec<f64> =
                            (0..n).map(|_| rng.gen_range(-5..=5) as f64).collect();
                        let rel = match rng.gen_range(0..3) {
                            0 => Relation::Le,
                            1 => Relation::Ge,
                            _ => Relation::Eq,
                        };
                        (coeffs, rel, rng.gen_range(-5..=5) as f64)
                    })
                    .collect(),
            };
            let s = solve_lp(&to_problem(&lp)).unwrap();
            let oracle = vertex_oracle(&lp);
            match (&s.status, oracle) {
                (LpStatus::Optimal, Some((obj, _))) => {
                    optimal_seen += 1;
                    assert_close(s.objective, obj, 1e-6);
                    assert!(feasible(&lp, &s.x), "simplex point must be feasible");
                    check_duality(&lp, &s);
                }
                (LpStatus::Infeasible, None) => infeasible_seen += 1,
                (st, orc) => panic!("status mismatch: {st:?} vs oracle {:?}", orc.map(|o| o.0)),
            }
        }
        // keep the generator honest: both verdicts must actually occur
        assert!(optimal_seen > 50, "too few optimal cases: {optimal_seen}");
        assert!(infeasible_seen > 10, "too few infeasible cases: {infeasible_seen}");
    }

    /// Strong duality with bound terms plus complementary slackness.
    fn check_duality(lp: &DenseLp, s: &LpSolution) {
        let tol = 1e-7 * (1.0 + s.objective.abs());
        let mut dual_obj: f64 = s
            .duals
            .iter()
            .zip(&lp.rows)
            .map(|(y, (_, _, rhs))| y * rhs)
            .sum();
        for j in 0..lp.costs.len() {
            let d = s.reduced_costs[j];
            // active bound contributes d_j * bound value
            if d > 1e-7 {
                dual_obj += d * lp.lower[j];
            } else if d < -1e-7 {
                dual_obj += d * lp.upper[j];
            }
        }
        assert_close(s.objective, dual_obj, tol.max(1e-6));
        for (i, (coeffs, rel, rhs)) in lp.rows.iter().enumerate() {
            let lhs: f64 = coeffs.iter().zip(&s.x).map(|(a, v)| a * v).sum();
            let y = s.duals[i];
            match rel {
                Relation::Le => assert!(y <= 1e-7, "≤ row dual must be nonpositive"),
                Relation::Ge => assert!(y >= -1e-7, "≥ row dual must be nonnegative"),
                Relation::Eq => {}
            }
            assert!(
                (y * (lhs - rhs)).abs() <= 1e-5 * (1.0 + y.abs()),
                "complementary slackness violated on row {i}"
            );
        }
    }

    #[test]
    fn degenerate_problem_terminates() {
        // Beale's cycling example (classic), must terminate at optimum -0.05.
        let mut p = LpProblem::new();
        let x1 = p.add_var(-0.75, 0.0, f64::INFINITY);
        let x2 = p.add_var(150.0, 0.0, f64::INFINITY);
        let x3 = p.add_var(-0.02, 0.0, f64::INFINITY);
        let x4 = p.add_var(6.0, 0.0, f64::INFINITY);
        p.add_row(
            &[(x1, 0.25), (x2, -60.0), (x3, -0.04), (x4, 9.0)],
            Relation::Le,
            0.0,
        );
        p.add_row(
            &[(x1, 0.5), (x2, -90.0), (x3, -0.02), (x4, 3.0)],
            Relation::Le,
            0.0,
        );
        p.add_row(&[(x3, 1.0)], Relation::Le, 1.0);
        let s = solve_lp(&p).unwrap();
        assert_eq!(s.status, LpStatus::Optimal);
        assert_close(s.objective, -0.05, 1e-9);
    }
}
