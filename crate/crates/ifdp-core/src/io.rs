//! Instance and schedule files: UTF-8 JSON with one canonical schema each.
//! Parsers reject unknown keys and report the offending field and location.
//!
//! Instance schema:
//! ```json
//! {
//!   "nodes": 3,
//!   "arcs": [{"i": 0, "j": 1, "cap": 1.0}],
//!   "units": [1.0],
//!   "flows": [{"origin": 0, "destination": 2, "size": 0.5, "deadline": 1.0}]
//! }
//! ```
//! `deadline` may be `null` for flows without one. Flows are written in
//! their external order.
//!
//! Schedule schema: a list of segments, each with a duration, the per-flow
//! end-to-end rates (external flow order), the nonzero per-arc rates and the
//! nonzero unit allocation counts:
//! ```json
//! {
//!   "segments": [{
//!     "duration": 0.5,
//!     "rates": [1.0, 0.0, 0.0],
//!     "arc_rates": [{"flow": 0, "i": 0, "j": 1, "rate": 1.0}],
//!     "allocation": [{"flow": 0, "i": 0, "j": 1, "unit_index": 0, "count": 1.0}]
//!   }]
//! }
//! ```

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::model::{
    validate_instance, Arc, Flow, Instance, Network, RateVector, Schedule, Segment,
};
use crate::Error;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct InstanceFile {
    nodes: usize,
    arcs: Vec<ArcEntry>,
    units: Vec<f64>,
    flows: Vec<FlowEntry>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ArcEntry {
    i: usize,
    j: usize,
    cap: f64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FlowEntry {
    origin: usize,
    destination: usize,
    size: f64,
    deadline: Option<f64>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ScheduleFile {
    segments: Vec<SegmentEntry>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SegmentEntry {
    duration: f64,
    rates: Vec<f64>,
    arc_rates: Vec<ArcRateEntry>,
    allocation: Vec<AllocationEntry>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ArcRateEntry {
    flow: usize,
    i: usize,
    j: usize,
    rate: f64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AllocationEntry {
    flow: usize,
    i: usize,
    j: usize,
    unit_index: usize,
    count: f64,
}

fn parse_err(e: serde_json::Error) -> Error {
    Error::ParseError(e.to_string())
}

pub fn instance_to_string(inst: &Instance) -> String {
    let file = InstanceFile {
        nodes: inst.network().node_count,
        arcs: inst
            .network()
            .arcs
            .iter()
            .map(|a| ArcEntry {
                i: a.tail,
                j: a.head,
                cap: a.capacity,
            })
            .collect(),
        units: inst.network().units.clone(),
        flows: inst
            .external_flows()
            .iter()
            .map(|f| FlowEntry {
                origin: f.origin,
                destination: f.destination,
                size: f.size,
                deadline: f.deadline,
            })
            .collect(),
    };
    serde_json::to_string_pretty(&file).expect("instance serializes")
}

pub fn instance_from_str(text: &str) -> Result<Instance, Error> {
    let file: InstanceFile = serde_json::from_str(text).map_err(parse_err)?;
    let network = Network {
        node_count: file.nodes,
        arcs: file
            .arcs
            .into_iter()
            .map(|a| Arc {
                tail: a.i,
                head: a.j,
                capacity: a.cap,
            })
            .collect(),
        units: file.units,
    };
    let flows = file
        .flows
        .into_iter()
        .map(|f| Flow {
            origin: f.origin,
            destination: f.destination,
            size: f.size,
            deadline: f.deadline,
        })
        .collect();
    validate_instance(network, flows)
}

pub fn read_instance(path: &Path) -> Result<Instance, Error> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    instance_from_str(&text)
}

pub fn write_instance(path: &Path, inst: &Instance) -> Result<(), Error> {
    fs::write(path, instance_to_string(inst))
        .map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

pub fn schedule_to_string(inst: &Instance, sched: &Schedule) -> String {
    let f_count = inst.flow_count();
    let net = inst.network();
    let segments = sched
        .segments
        .iter()
        .map(|seg| {
            let mut rates = vec![0.0; f_count];
            let mut arc_rates = Vec::new();
            let mut allocation = Vec::new();
            for internal in 0..f_count.min(seg.vector.rates.len()) {
                let external = inst.to_external(internal);
                rates[external] = seg.vector.rates[internal];
                for (a, arc) in net.arcs.iter().enumerate() {
                    let y = seg.vector.arc_rates[internal][a];
                    if y != 0.0 {
                        arc_rates.push(ArcRateEntry {
                            flow: external,
                            i: arc.tail,
                            j: arc.head,
                            rate: y,
                        });
                    }
                    for (m, &z) in seg.vector.allocation[internal][a].iter().enumerate() {
                        if z != 0.0 {
                            allocation.push(AllocationEntry {
                                flow: external,
                                i: arc.tail,
                                j: arc.head,
                                unit_index: m,
                                count: z,
                            });
                        }
                    }
                }
            }
            SegmentEntry {
                duration: seg.duration,
                rates,
                arc_rates,
                allocation,
            }
        })
        .collect();
    serde_json::to_string_pretty(&ScheduleFile { segments }).expect("schedule serializes")
}

pub fn schedule_from_str(inst: &Instance, text: &str) -> Result<Schedule, Error> {
    let file: ScheduleFile = serde_json::from_str(text).map_err(parse_err)?;
    let f_count = inst.flow_count();
    let net = inst.network();
    let mut segments = Vec::with_capacity(file.segments.len());
    for (s, entry) in file.segments.into_iter().enumerate() {
        if entry.rates.len() != f_count {
            return Err(Error::ParseError(format!(
                "segment {s} lists {} rates for {} flows",
                entry.rates.len(),
                f_count
            )));
        }
        let mut vector = RateVector::zeros(f_count, net.arcs.len(), net.units.len());
        for (external, &r) in entry.rates.iter().enumerate() {
            vector.rates[inst.to_internal(external)] = r;
        }
        for e in &entry.arc_rates {
            let internal = flow_index(inst, e.flow, s)?;
            let a = arc_index(net, e.i, e.j, s)?;
            vector.arc_rates[internal][a] = e.rate;
        }
        for e in &entry.allocation {
            let internal = flow_index(inst, e.flow, s)?;
            let a = arc_index(net, e.i, e.j, s)?;
            if e.unit_index >= net.units.len() {
                return Err(Error::ParseError(format!(
                    "segment {s} references unit_index {} of {} units",
                    e.unit_index,
                    net.units.len()
                )));
            }
            vector.allocation[internal][a][e.unit_index] = e.count;
        }
        segments.push(Segment {
            vector,
            duration: entry.duration,
        });
    }
    Ok(Schedule { segments })
}

fn flow_index(inst: &Instance, external: usize, segment: usize) -> Result<usize, Error> {
    if external >= inst.flow_count() {
        return Err(Error::ParseError(format!(
            "segment {segment} references flow {external} of {} flows",
            inst.flow_count()
        )));
    }
    Ok(inst.to_internal(external))
}

fn arc_index(net: &Network, i: usize, j: usize, segment: usize) -> Result<usize, Error> {
    net.arc_index(i, j).ok_or_else(|| {
        Error::ParseError(format!("segment {segment} references unknown arc ({i}, {j})"))
    })
}

pub fn read_schedule(path: &Path, inst: &Instance) -> Result<Schedule, Error> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    schedule_from_str(inst, &text)
}

pub fn write_schedule(path: &Path, inst: &Instance, sched: &Schedule) -> Result<(), Error> {
    fs::write(path, schedule_to_string(inst, sched))
        .map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bench;

    #[test]
    fn instance_round_trip() {
        let inst = bench::triangle();
        let text = instance_to_string(&inst);
        let back = instance_from_str(&text).unwrap();
        assert_eq!(inst.network(), back.network());
        assert_eq!(inst.flows(), back.flows());
        assert_eq!(inst.deadline_order(), back.deadline_order());
    }

    #[test]
    fn unknown_field_is_named() {
        let text = r#"{"nodes": 2, "arcs": [], "units": [1.0], "flows": [], "frobnicate": 1}"#;
        match instance_from_str(text) {
            Err(Error::ParseError(msg)) => assert!(msg.contains("frobnicate"), "{msg}"),
            other => panic!("expected ParseError, got {other:?}"),
        }
    }

    #[test]
    fn unknown_arc_field_is_named() {
        let text = r#"{"nodes": 2, "arcs": [{"i":0,"j":1,"cap":1.0,"weight":2}], "units":[1.0], "flows":[{"origin":0,"destination":1,"size":1.0,"deadline":null}]}"#;
        match instance_from_str(text) {
            Err(Error::ParseError(msg)) => assert!(msg.contains("weight"), "{msg}"),
            other => panic!("expected ParseError, got {other:?}"),
        }
    }

    #[test]
    fn null_deadline_reads_as_unbounded() {
        let text = r#"{"nodes": 2, "arcs": [{"i":0,"j":1,"cap":1.0}], "units":[1.0],
                       "flows":[{"origin":0,"destination":1,"size":1.0,"deadline":null}]}"#;
        let inst = instance_from_str(text).unwrap();
        assert_eq!(inst.flows()[0].deadline, None);
    }

    #[test]
    fn schedule_round_trip_is_exact() {
        let inst = bench::triangle();
        let net = inst.network();
        let mut v = RateVector::zeros(3, net.arcs.len(), net.units.len());
        v.rates[0] = 1.0 / 3.0; // exercise non-terminating binary fractions
        v.arc_rates[0][0] = 1.0 / 3.0;
        v.arc_rates[0][1] = 1.0 / 3.0;
        v.allocation[0][0][0] = 1.0;
        v.allocation[0][1][0] = 1.0;
        let sched = Schedule {
            segments: vec![
                Segment {
                    vector: v.clone(),
                    duration: 0.1 + 0.2, // 0.30000000000000004
                },
                Segment {
                    vector: v,
                    duration: 1.5,
                },
            ],
        };
        let text = schedule_to_string(&inst, &sched);
        let back = schedule_from_str(&inst, &text).unwrap();
        assert_eq!(sched, back);
    }

    #[test]
    fn schedule_with_unknown_arc_is_rejected() {
        let inst = bench::triangle();
        let text = r#"{"segments": [{"duration": 1.0, "rates": [0,0,0],
            "arc_rates": [{"flow":0,"i":0,"j":2,"rate":1.0}], "allocation": []}]}"#;
        match schedule_from_str(&inst, text) {
            Err(Error::ParseError(msg)) => assert!(msg.contains("(0, 2)"), "{msg}"),
            other => panic!("expected ParseError, got {other:?}"),
        }
    }
}
