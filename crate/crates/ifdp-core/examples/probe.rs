use ifdp_core::bench::*;
use ifdp_core::cga::{solve_cga, CgaOptions};
use ifdp_core::model::SolveStatus;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::time::Instant;

fn main() {
    let t0 = Instant::now();
    let full = all_sign_patterns();
    let inst = reduce_3sat(&full).unwrap();
    println!("8-clause instance: {} nodes {} arcs {} flows", inst.network().node_count, inst.network().arcs.len(), inst.flow_count());
    let out = solve_cga(&inst, &CgaOptions::default()).unwrap();
    println!("8-clause (unsat): {:?} in {:.2}s (iters {})", out.report.status, t0.elapsed().as_secs_f64(), out.report.iterations);
    assert_eq!(out.report.status, SolveStatus::Infeasible);
    for drop in 0..8 {
        let t = Instant::now();
        let mut f = full.clone();
        f.clauses.remove(drop);
        let inst = reduce_3sat(&f).unwrap();
        let out = solve_cga(&inst, &CgaOptions::default()).unwrap();
        println!("drop {drop}: {:?} obj {:?} in {:.2}s", out.report.status, out.report.objective, t.elapsed().as_secs_f64());
    }
    // random formulas
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut done = 0;
    let t = Instant::now();
    while done < 20 {
        let m = rng.gen_range(3..=4usize);
        let k = rng.gen_range(3..=7usize);
        let clauses: Vec<[Lit;3]> = (0..k).map(|_| {
            let mut vars: Vec<usize> = (0..m).collect();
            for i in (1..vars.len()).rev() { let j = rng.gen_range(0..=i); vars.swap(i, j); }
            [0,1,2].map(|i| Lit { var: vars[i], negated: rng.gen_bool(0.5) })
        }).collect();
        let f = Formula { var_count: m, clauses };
        if f.check_preconditions().is_err() { continue; }
        let sat = sat_brute_force(&f).is_some();
        let inst = reduce_3sat(&f).unwrap();
        let out = solve_cga(&inst, &CgaOptions::default()).unwrap();
        let feas = out.report.status == SolveStatus::Optimal;
        assert_eq!(sat, feas, "mismatch on formula {f:?}");
        if feas { assert!(out.report.objective.unwrap() <= 1.0 + 1e-6); }
        done += 1;
    }
    println!("20 random formulas matched brute force in {:.2}s", t.elapsed().as_secs_f64());
}
