//! Scenario generation and benchmarking: bundled example instances, synthetic
//! topologies, seeded random flow sampling with deadline-factor calibration,
//! a 3-SAT-based hard-instance generator, and a CSV benchmark runner.
//!
//! The Small/Softlayer/Geant topologies are synthetic reconstructions that
//! match the published node and bidirectional-link counts (6/8, 11/17,
//! 22/36); the exact adjacency of the originals is not public, so only
//! counts and connectivity are reproduced.

mod reduce;
mod runner;

pub use reduce::{all_sign_patterns, parse_dimacs, reduce_3sat, sat_brute_force, Clause, Formula, Lit};
pub use runner::{
    emit_plot_data, run_benchmark, BenchConfig, BenchRow, SolverKind, CSV_HEADER,
};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::cga::{self, Phase1Outcome};
use crate::model::{
    max_rate_between, validate_instance, Arc, Flow, Instance, Network, POS_TOL,
};
use crate::Error;

/// The three-node ring example: three unit-capacity arcs, three flows with
/// one path each, any two of which share an arc.
pub fn triangle() -> Instance {
    triangle_with_deadlines(&[1.0, 2.0, 3.0])
}

/// The ring example with custom deadlines (sizes and routing unchanged).
pub fn triangle_with_deadlines(deadlines: &[f64]) -> Instance {
    assert_eq!(deadlines.len(), 3);
    let network = Network {
        node_count: 3,
        arcs: vec![
            Arc { tail: 0, head: 1, capacity: 1.0 },
            Arc { tail: 1, head: 2, capacity: 1.0 },
            Arc { tail: 2, head: 0, capacity: 1.0 },
        ],
        units: vec![1.0],
    };
    let sizes = [0.5, 1.5, 1.0];
    let origins = [(0, 2), (1, 0), (2, 1)];
    let flows = (0..3)
        .map(|f| Flow {
            origin: origins[f].0,
            destination: origins[f].1,
            size: sizes[f],
            deadline: Some(deadlines[f]),
        })
        .collect();
    validate_instance(network, flows).expect("bundled instance is valid")
}

/// Star-shaped example on five nodes: three unit flows into a hub-fed sink
/// plus a size-2 flow into the hub that conflicts with exactly one of them,
/// forcing a non-consecutive optimal placement for it.
pub fn star() -> Instance {
    let network = Network {
        node_count: 5,
        arcs: vec![
            Arc { tail: 0, head: 3, capacity: 1.0 },
            Arc { tail: 1, head: 3, capacity: 1.0 },
            Arc { tail: 2, head: 3, capacity: 1.0 },
            Arc { tail: 3, head: 4, capacity: 1.0 },
        ],
        units: vec![1.0],
    };
    let flows = vec![
        Flow { origin: 0, destination: 4, size: 1.0, deadline: Some(1.0) },
        Flow { origin: 1, destination: 4, size: 1.0, deadline: Some(2.0) },
        Flow { origin: 2, destination: 4, size: 1.0, deadline: Some(3.0) },
        Flow { origin: 1, destination: 3, size: 2.0, deadline: Some(3.0) },
    ];
    validate_instance(network, flows).expect("bundled instance is valid")
}

/// Deadline assignment rule for generated scenarios.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AlphaSpec {
    /// `t_f = alpha · e_f` with the given factor.
    Fixed(f64),
    /// Calibrate the smallest feasible factor per instance.
    Tight,
    /// Tight calibration raised by 30%.
    Moderate,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Topology {
    /// Bundled three-flow ring example (fixed flows).
    Triangle,
    /// Bundled five-node star example (fixed flows).
    Star,
    /// Synthetic 6-node, 8-link topology.
    Small,
    /// Synthetic 11-node, 17-link topology.
    Softlayer,
    /// Synthetic 22-node, 36-link topology.
    Geant,
    /// Network taken from an instance file at this path (flows ignored).
    Custom(String),
}

fn default_capacity() -> f64 {
    10.0
}
fn default_units() -> Vec<f64> {
    vec![2.0]
}
fn default_size_range() -> (f64, f64) {
    (1.0, 100.0)
}
fn default_flow_count() -> usize {
    5
}

/// A reproducible experiment cell: topology, flow count, deadline factor,
/// capacity parameters, and a seed.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub topology: Topology,
    #[serde(default = "default_flow_count")]
    pub flow_count: usize,
    #[serde(default)]
    pub alpha: Option<AlphaSpec>,
    /// Link capacity per direction.
    #[serde(default = "default_capacity")]
    pub capacity: f64,
    #[serde(default = "default_units")]
    pub units: Vec<f64>,
    #[serde(default = "default_size_range")]
    pub size_range: (f64, f64),
    #[serde(default)]
    pub seed: u64,
}

impl Scenario {
    pub fn new(topology: Topology) -> Self {
        Scenario {
            topology,
            flow_count: default_flow_count(),
            alpha: None,
            capacity: default_capacity(),
            units: default_units(),
            size_range: default_size_range(),
            seed: 0,
        }
    }

    pub fn validate(&self) -> Result<(), Error> {
        if let Some(AlphaSpec::Fixed(a)) = self.alpha {
            if !(a > 0.0) || !a.is_finite() {
                return Err(Error::MalformedScenario(
                    "deadline factor must be finite and positive".into(),
                ));
            }
        }
        let (lo, hi) = self.size_range;
        if !(lo > 0.0) || !(hi >= lo) || !hi.is_finite() {
            return Err(Error::MalformedScenario(
                "size range must be positive and ordered".into(),
            ));
        }
        if self.flow_count == 0 {
            return Err(Error::MalformedScenario("flow count must be positive".into()));
        }
        if !(self.capacity > 0.0) {
            return Err(Error::MalformedScenario("capacity must be positive".into()));
        }
        Ok(())
    }

    pub fn label(&self) -> String {
        let topo = match &self.topology {
            Topology::Triangle => "triangle".into(),
            Topology::Star => "star".into(),
            Topology::Small => "small".into(),
            Topology::Softlayer => "softlayer".into(),
            Topology::Geant => "geant".into(),
            Topology::Custom(path) => format!("custom({path})"),
        };
        let alpha = match self.alpha {
            None => "default".into(),
            Some(AlphaSpec::Fixed(a)) => format!("{a}"),
            Some(AlphaSpec::Tight) => "tight".into(),
            Some(AlphaSpec::Moderate) => "moderate".into(),
        };
        format!("{topo}-f{}-a{alpha}-s{}", self.flow_count, self.seed)
    }
}

fn ring_with_chords(nodes: usize, chords: &[(usize, usize)], capacity: f64, units: &[f64]) -> Network {
    let mut links: Vec<(usize, usize)> = (0..nodes).map(|i| (i, (i + 1) % nodes)).collect();
    links.extend_from_slice(chords);
    let mut arcs = Vec::with_capacity(2 * links.len());
    for &(a, b) in &links {
        arcs.push(Arc { tail: a, head: b, capacity });
        arcs.push(Arc { tail: b, head: a, capacity });
    }
    Network {
        node_count: nodes,
        arcs,
        units: units.to_vec(),
    }
}

/// Builds the network of a scenario's topology.
pub fn topology_network(sc: &Scenario) -> Result<Network, Error> {
    match &sc.topology {
        Topology::Triangle => Ok(triangle().network().clone()),
        Topology::Star => Ok(star().network().clone()),
        Topology::Small => Ok(ring_with_chords(
            6,
            &[(0, 3), (1, 4)],
            sc.capacity,
            &sc.units,
        )),
        Topology::Softlayer => Ok(ring_with_chords(
            11,
            &[(0, 4), (1, 6), (2, 8), (3, 9), (5, 10), (0, 7)],
            sc.capacity,
            &sc.units,
        )),
        Topology::Geant => Ok(ring_with_chords(
            22,
            &[
                (0, 11),
                (1, 7),
                (2, 14),
                (3, 17),
                (4, 9),
                (5, 19),
                (6, 12),
                (8, 16),
                (10, 20),
                (13, 18),
                (15, 21),
                (0, 6),
                (7, 17),
                (2, 20),
            ],
            sc.capacity,
            &sc.units,
        )),
        Topology::Custom(path) => {
            let inst = crate::io::read_instance(std::path::Path::new(path))?;
            Ok(inst.network().clone())
        }
    }
}

/// Generates the scenario instance. Bundled topologies (Triangle, Star)
/// return their fixed flows, rescaling deadlines to `alpha · e_f` when a
/// fixed factor is given. Random topologies sample origin/destination pairs
/// and sizes uniformly under the seed; deadlines are `alpha · e_f` and the
/// factor must already be resolved to `Fixed`.
pub fn generate_instance(sc: &Scenario) -> Result<Instance, Error> {
    sc.validate()?;
    match &sc.topology {
        Topology::Triangle | Topology::Star => {
            let base = if sc.topology == Topology::Triangle {
                triangle()
            } else {
                star()
            };
            match sc.alpha {
                None => Ok(base),
                Some(AlphaSpec::Fixed(alpha)) => {
                    let net = base.network().clone();
                    let flows = base
                        .external_flows()
                        .iter()
                        .map(|f| {
                            let rate = max_rate_between(&net, f.origin, f.destination)?;
                            Ok(Flow {
                                deadline: Some(alpha * f.size / rate),
                                ..f.clone()
                            })
                        })
                        .collect::<Result<Vec<_>, Error>>()?;
                    validate_instance(net, flows)
                }
                Some(_) => Err(Error::MalformedScenario(
                    "resolve tight/moderate alpha before generating".into(),
                )),
            }
        }
        _ => {
            let Some(AlphaSpec::Fixed(alpha)) = sc.alpha else {
                return Err(Error::MalformedScenario(
                    "random scenarios need a resolved (fixed) deadline factor".into(),
                ));
            };
            let net = topology_network(sc)?;
            let mut rng = ChaCha8Rng::seed_from_u64(sc.seed);
            let mut rate_cache: std::collections::HashMap<(usize, usize), f64> =
                std::collections::HashMap::new();
            let mut drawn = Vec::with_capacity(sc.flow_count);
            for _ in 0..sc.flow_count {
                let mut attempts = 0;
                let (o, d, rate) = loop {
                    attempts += 1;
                    if attempts > 100 {
                        return Err(Error::Disconnected);
                    }
                    let o = rng.gen_range(0..net.node_count);
                    let d = rng.gen_range(0..net.node_count);
                    if o == d {
                        continue;
                    }
                    let rate = match rate_cache.get(&(o, d)) {
                        Some(&r) => r,
                        None => {
                            let r = max_rate_between(&net, o, d)?;
                            rate_cache.insert((o, d), r);
                            r
                        }
                    };
                    if rate > POS_TOL {
                        break (o, d, rate);
                    }
                };
                let (lo, hi) = sc.size_range;
                let size = lo + rng.gen::<f64>() * (hi - lo);
                drawn.push((o, d, size, rate));
            }
            let flows = drawn
                .into_iter()
                .map(|(o, d, size, rate)| Flow {
                    origin: o,
                    destination: d,
                    size,
                    deadline: Some(alpha * size / rate),
                })
                .collect();
            validate_instance(net, flows)
        }
    }
}

/// Bisects the smallest deadline factor (tolerance 0.05, bracket (0, 4])
/// for which the instance generated from this scenario admits a feasible
/// solution, established by the column-generation feasibility phase.
pub fn tight_alpha(sc: &Scenario) -> Result<f64, Error> {
    let feasible = |alpha: f64| -> Result<bool, Error> {
        let probe = Scenario {
            alpha: Some(AlphaSpec::Fixed(alpha)),
            ..sc.clone()
        };
        let inst = generate_instance(&probe)?;
        Ok(matches!(cga::phase1(&inst)?, Phase1Outcome::Feasible { .. }))
    };
    let mut hi = 4.0;
    if !feasible(hi)? {
        return Err(Error::NeverFeasible);
    }
    let mut lo = 0.0;
    while hi - lo > 0.05 {
        let mid = 0.5 * (lo + hi);
        if feasible(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

/// Tight calibration raised by 30%.
pub fn moderate_alpha(sc: &Scenario) -> Result<f64, Error> {
    Ok(1.3 * tight_alpha(sc)?)
}

/// Resolves `Tight`/`Moderate` deadline factors to fixed ones.
pub fn resolve_alpha(sc: &Scenario) -> Result<Scenario, Error> {
    let alpha = match sc.alpha {
        Some(AlphaSpec::Tight) => Some(AlphaSpec::Fixed(tight_alpha(sc)?)),
        Some(AlphaSpec::Moderate) => Some(AlphaSpec::Fixed(moderate_alpha(sc)?)),
        ref other => other.clone(),
    };
    Ok(Scenario {
        alpha,
        ..sc.clone()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::earliest_completion;

    #[test]
    fn triangle_matches_the_published_numbers() {
        let inst = triangle();
        let sizes: Vec<f64> = inst.flows().iter().map(|f| f.size).collect();
        assert_eq!(sizes, vec![0.5, 1.5, 1.0]);
        let deadlines: Vec<f64> = inst.flows().iter().map(|f| f.deadline.unwrap()).collect();
        assert_eq!(deadlines, vec![1.0, 2.0, 3.0]);
        let e: Vec<f64> = (0..3)
            .map(|f| earliest_completion(&inst, f).unwrap())
            .collect();
        assert_eq!(e, vec![0.5, 1.5, 1.0]);
    }

    #[test]
    fn star_matches_the_reconstruction() {
        let inst = star();
        assert_eq!(inst.network().node_count, 5);
        assert_eq!(inst.network().arcs.len(), 4);
        assert_eq!(inst.flow_count(), 4);
        // flow D (1→3) conflicts with flow B (1→4) on arc (1,3)
        assert_eq!(inst.network().arc_index(1, 3), Some(1));
    }

    #[test]
    fn triangle_scenario_yields_the_bundled_instance() {
        let sc = Scenario {
            flow_count: 3,
            ..Scenario::new(Topology::Triangle)
        };
        let inst = generate_instance(&sc).unwrap();
        assert_eq!(inst.flows(), triangle().flows());
    }

    #[test]
    fn topology_counts_match_the_published_sizes() {
        for (topo, nodes, links) in [
            (Topology::Small, 6, 8),
            (Topology::Softlayer, 11, 17),
            (Topology::Geant, 22, 36),
        ] {
            let sc = Scenario::new(topo);
            let net = topology_network(&sc).unwrap();
            assert_eq!(net.node_count, nodes);
            assert_eq!(net.arcs.len(), 2 * links);
            // connected: every pair reaches every other via the ring
            for d in 1..net.node_count {
                assert!(max_rate_between(&net, 0, d).unwrap() > 0.0);
            }
            // no duplicate arcs
            for (idx, a) in net.arcs.iter().enumerate() {
                assert!(!net.arcs[..idx]
                    .iter()
                    .any(|b| b.tail == a.tail && b.head == a.head));
            }
        }
    }

    #[test]
    fn same_seed_is_deterministic() {
        let sc = Scenario {
            alpha: Some(AlphaSpec::Fixed(2.0)),
            seed: 42,
            ..Scenario::new(Topology::Small)
        };
        let a = generate_instance(&sc).unwrap();
        let b = generate_instance(&sc).unwrap();
        assert_eq!(a.flows(), b.flows());
    }

    #[test]
    fn deadlines_scale_with_alpha() {
        let sc = Scenario {
            alpha: Some(AlphaSpec::Fixed(1.7)),
            seed: 7,
            flow_count: 4,
            ..Scenario::new(Topology::Small)
        };
        let inst = generate_instance(&sc).unwrap();
        for f in 0..inst.flow_count() {
            let e = earliest_completion(&inst, f).unwrap();
            let t = inst.flows()[f].deadline.unwrap();
            assert!((t - 1.7 * e).abs() <= 1e-9 * (1.0 + t));
        }
    }

    #[test]
    fn tight_alpha_single_flow_is_one() {
        // one flow through one arc: the boundary factor is exactly 1
        let path = write_single_flow_instance();
        let sc = Scenario {
            flow_count: 1,
            alpha: Some(AlphaSpec::Tight),
            ..Scenario::new(Topology::Custom(path.to_string_lossy().into_owned()))
        };
        let alpha = tight_alpha(&sc).unwrap();
        assert!(
            (alpha - 1.0).abs() <= 0.05 + 1e-9,
            "tight factor {alpha} should be 1 within tolerance"
        );
        let _ = std::fs::remove_file(path);
    }

    fn write_single_flow_instance() -> std::path::PathBuf {
        let dir = std::env::temp_dir();
        let path = dir.join(format!("ifdp-tight-{}.json", std::process::id()));
        let net = Network {
            node_count: 2,
            arcs: vec![Arc { tail: 0, head: 1, capacity: 1.0 }],
            units: vec![1.0],
        };
        let inst = validate_instance(
            net,
            vec![Flow { origin: 0, destination: 1, size: 1.0, deadline: Some(1.0) }],
        )
        .unwrap();
        crate::io::write_instance(&path, &inst).unwrap();
        path
    }

    #[test]
    fn tight_alpha_on_the_triangle_is_two() {
        let sc = Scenario {
            flow_count: 3,
            alpha: Some(AlphaSpec::Tight),
            ..Scenario::new(Topology::Triangle)
        };
        let alpha = tight_alpha(&sc).unwrap();
        assert!(
            (alpha - 2.0).abs() <= 0.05 + 1e-9,
            "tight factor {alpha} should be 2 within tolerance"
        );
        // spot checks from both sides of the boundary
        let at = |a: f64| {
            generate_instance(&Scenario {
                alpha: Some(AlphaSpec::Fixed(a)),
                ..sc.clone()
            })
            .unwrap()
        };
        assert!(matches!(
            cga::phase1(&at(2.0)).unwrap(),
            Phase1Outcome::Feasible { .. }
        ));
        assert!(matches!(
            cga::phase1(&at(1.0)).unwrap(),
            Phase1Outcome::Infeasible { .. }
        ));
    }
}
