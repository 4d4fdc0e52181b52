//! JSON interchange for circuits, diagrams and orderings.
//!
//! Angles are `[num, den]` in units of pi, or a string for symbolic ones.
//! Circuits may carry `inputs` and `outputs` wire lists (default: every
//! wire) and an `outcome` field on classically controlled gates. Diagrams
//! may carry `rows` next to `columns`.

use std::collections::BTreeMap;

use num_rational::Rational64;
use qcwidth_core::zx::{EdgeKind, Node, NodeKind, ZxDiagram};
use qcwidth_core::{Angle, Circuit, Gate};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AngleJson {
    Ratio([i64; 2]),
    Text(String),
}

impl AngleJson {
    pub fn from_angle(a: &Angle) -> Self {
        match a.ratio() {
            Some(r) => AngleJson::Ratio([*r.numer(), *r.denom()]),
            None => AngleJson::Text(a.to_string()),
        }
    }

    pub fn to_angle(&self) -> Result<Angle> {
        match self {
            AngleJson::Ratio([_, 0]) => Err(Error::Usage("angle with zero denominator".into())),
            AngleJson::Ratio([n, d]) => Ok(Angle::from_ratio(Rational64::new(*n, *d))),
            AngleJson::Text(s) => s.parse().map_err(Error::Usage),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GateJson {
    pub kind: String,
    pub qubits: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub angle: Option<AngleJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub outcome: Option<usize>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CircuitJson {
    pub n: usize,
    pub gates: Vec<GateJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inputs: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub outputs: Option<Vec<usize>>,
}

pub fn circuit_to_json(c: &Circuit) -> CircuitJson {
    let gates = c
        .gates
        .iter()
        .map(|g| {
            let (angle, outcome) = match g {
                Gate::Rz(_, a) | Gate::Rx(_, a) => (Some(AngleJson::from_angle(a)), None),
                Gate::CtrlX { outcome, .. } | Gate::CtrlZ { outcome, .. } => (None, Some(*outcome)),
                _ => (None, None),
            };
            GateJson {
                kind: g.name().to_string(),
                qubits: g.qubits(),
                angle,
                outcome,
            }
        })
        .collect();
    let all: Vec<usize> = (0..c.num_qubits).collect();
    CircuitJson {
        n: c.num_qubits,
        gates,
        inputs: (c.inputs != all).then(|| c.inputs.clone()),
        outputs: (c.outputs != all).then(|| c.outputs.clone()),
    }
}

pub fn circuit_from_json(j: &CircuitJson) -> Result<Circuit> {
    let mut c = Circuit::new(j.n);
    if let Some(i) = &j.inputs {
        c.inputs = i.clone();
    }
    if let Some(o) = &j.outputs {
        c.outputs = o.clone();
    }
    for (k, g) in j.gates.iter().enumerate() {
        let bad = |msg: String| Error::Usage(format!("gate {k}: {msg}"));
        let want = match g.kind.to_ascii_lowercase().as_str() {
            "cnot" | "cx" | "cz" => 2,
            _ => 1,
        };
        if g.qubits.len() != want {
            return Err(bad(format!("`{}` takes {want} qubits", g.kind)));
        }
        let q = g.qubits[0];
        let angle = || -> Result<Angle> {
            g.angle
                .as_ref()
                .ok_or_else(|| bad(format!("`{}` needs an angle", g.kind)))?
                .to_angle()
        };
        let outcome = || g.outcome.ok_or_else(|| bad(format!("`{}` needs an outcome", g.kind)));
        let gate = match g.kind.to_ascii_lowercase().as_str() {
            "h" => Gate::H(q),
            "x" => Gate::X(q),
            "z" => Gate::Z(q),
            "s" => Gate::S(q),
            "sdg" => Gate::Sdg(q),
            "t" => Gate::T(q),
            "tdg" => Gate::Tdg(q),
            "rz" => Gate::Rz(q, angle()?),
            "rx" => Gate::Rx(q, angle()?),
            "cnot" | "cx" => Gate::Cnot(q, g.qubits[1]),
            "cz" => Gate::Cz(q, g.qubits[1]),
            "prepplus" => Gate::PrepPlus(q),
            "prepzero" => Gate::PrepZero(q),
            "measx" => Gate::MeasX(q),
            "measz" => Gate::MeasZ(q),
            "ctrlx" => Gate::CtrlX { outcome: outcome()?, target: q },
            "ctrlz" => Gate::CtrlZ { outcome: outcome()?, target: q },
            other => return Err(bad(format!("unknown gate kind `{other}`"))),
        };
        c.gates.push(gate);
    }
    c.validate()?;
    Ok(c)
}

pub fn parse_circuit_json(text: &str) -> Result<Circuit> {
    circuit_from_json(&serde_json::from_str(text)?)
}

pub fn write_circuit_json(c: &Circuit) -> String {
    serde_json::to_string_pretty(&circuit_to_json(c)).expect("circuit json")
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NodeJson {
    pub id: usize,
    pub kind: String,
    pub phase: AngleJson,
    pub port: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DiagramJson {
    pub nodes: Vec<NodeJson>,
    pub edges: Vec<(usize, usize, String)>,
    #[serde(default)]
    pub columns: BTreeMap<usize, i64>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub rows: BTreeMap<usize, usize>,
}

pub fn diagram_to_json(d: &ZxDiagram) -> DiagramJson {
    let nodes = d
        .nodes()
        .map(|(id, n)| NodeJson {
            id,
            kind: match n.kind {
                NodeKind::Z => "Z",
                NodeKind::X => "X",
                NodeKind::Input => "in",
                NodeKind::Output => "out",
            }
            .to_string(),
            phase: AngleJson::from_angle(&n.phase),
            port: n.port,
        })
        .collect();
    let edges = d
        .edges()
        .iter()
        .map(|e| {
            let k = match e.kind {
                EdgeKind::Plain => "plain",
                EdgeKind::Hadamard => "h",
            };
            (e.a, e.b, k.to_string())
        })
        .collect();
    DiagramJson {
        nodes,
        edges,
        columns: d.columns.clone(),
        rows: d.rows.clone(),
    }
}

pub fn diagram_from_json(j: &DiagramJson) -> Result<ZxDiagram> {
    let mut d = ZxDiagram::new();
    for n in &j.nodes {
        let kind = match n.kind.as_str() {
            "Z" => NodeKind::Z,
            "X" => NodeKind::X,
            "in" => NodeKind::Input,
            "out" => NodeKind::Output,
            k => return Err(Error::Usage(format!("node {}: unknown kind `{k}`", n.id))),
        };
        let node = Node {
            kind,
            phase: n.phase.to_angle()?,
            port: n.port,
        };
        d.insert_with_id(n.id, node)?;
    }
    for (a, b, k) in &j.edges {
        let kind = match k.as_str() {
            "plain" => EdgeKind::Plain,
            "h" => EdgeKind::Hadamard,
            _ => return Err(Error::Usage(format!("edge {a}-{b}: unknown kind `{k}`"))),
        };
        if !d.contains(*a) || !d.contains(*b) {
            return Err(Error::Usage(format!("edge {a}-{b}: unknown node")));
        }
        d.add_edge(*a, *b, kind);
    }
    d.columns = j.columns.clone();
    d.rows = j.rows.clone();
    d.validate()?;
    Ok(d)
}

pub fn parse_diagram_json(text: &str) -> Result<ZxDiagram> {
    diagram_from_json(&serde_json::from_str(text)?)
}

pub fn write_diagram_json(d: &ZxDiagram) -> String {
    serde_json::to_string_pretty(&diagram_to_json(d)).expect("diagram json")
}

/// A vertex ordering with its width and, for interval layouts, the track
/// of each vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderingJson {
    pub order: Vec<usize>,
    pub width: usize,
    #[serde(default)]
    pub tracks: BTreeMap<usize, usize>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use qcwidth_core::zx::circuit_to_zx;

    #[test]
    fn circuit_round_trip() {
        let mut c = Circuit::new(2);
        c.inputs = vec![0];
        c.gates = vec![
            Gate::PrepPlus(1),
            Gate::Rz(0, Angle::pi_frac(3, 8)),
            Gate::Cz(0, 1),
            Gate::MeasX(0),
            Gate::CtrlX { outcome: 0, target: 1 },
            Gate::Rx(1, "a".parse().unwrap()),
        ];
        c.outputs = vec![1];
        let text = write_circuit_json(&c);
        assert!(text.contains("\"kind\": \"CtrlX\""));
        assert!(text.contains("\"outcome\": 0"));
        assert_eq!(parse_circuit_json(&text).unwrap(), c);
    }

    #[test]
    fn bare_field_names() {
        let c = parse_circuit_json(r#"{"n": 1, "gates": [{"kind": "Rz", "qubits": [0], "angle": [1, 4]}]}"#)
            .unwrap();
        assert_eq!(c.gates, vec![Gate::Rz(0, Angle::pi_frac(1, 4))]);
        assert!(parse_circuit_json(r#"{"n": 1, "gates": [{"kind": "Q", "qubits": [0]}]}"#).is_err());
    }

    #[test]
    fn diagram_round_trip() {
        let mut c = Circuit::new(2);
        c.gates = vec![Gate::H(0), Gate::T(1), Gate::Cnot(0, 1)];
        let d = circuit_to_zx(&c, &[]).unwrap();
        let text = write_diagram_json(&d);
        assert!(text.contains("\"in\""));
        let back = parse_diagram_json(&text).unwrap();
        assert_eq!(back, d);
    }

    #[test]
    fn ordering_shape() {
        let o = OrderingJson {
            order: vec![2, 0, 1],
            width: 1,
            tracks: [(0, 0), (1, 0), (2, 1)].into_iter().collect(),
        };
        let s = serde_json::to_string(&o).unwrap();
        assert_eq!(s, r#"{"order":[2,0,1],"width":1,"tracks":{"0":0,"1":0,"2":1}}"#);
    }
}
