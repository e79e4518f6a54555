//! JSON forms of graphs, layouts, code specifications and reports.
//!
//! Vertices are 1-based in every file. Vectors are digit strings such as
//! `"12220"` when `p ≤ 10` and integer arrays otherwise; both are accepted
//! on input. Output goes through `serde_json::Value`, whose maps are sorted,
//! so key order is canonical.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::catalog::Fixture;
use crate::code_space::CodeSpec;
use crate::error::{Error, Result};
use crate::graph_state::WeightedGraph;
use crate::kl::VerificationReport;
use crate::noise::ChannelLayout;
use crate::search::{expand_generators, SearchOutcome};
use crate::zp::{Modulus, ZVec};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphJson {
    pub p: u32,
    pub n: usize,
    /// `[a, b, w]` with `a < b`, 1-based.
    pub edges: Vec<(usize, usize, u32)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LayoutJson {
    pub channels: Vec<Vec<usize>>,
    #[serde(default)]
    pub noiseless: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum VecJson {
    Digits(String),
    Entries(Vec<i64>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CodeSpecJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub graph: GraphJson,
    pub layout: LayoutJson,
    pub d: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub clique: Option<Vec<VecJson>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<VecJson>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub graph_resolved: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<Vec<String>>,
}

fn one_based(v: usize, n: usize) -> Result<usize> {
    if v == 0 || v > n {
        return Err(Error::Format(format!("vertex {v} is outside 1..={n}")));
    }
    Ok(v - 1)
}

pub fn graph_to_json(g: &WeightedGraph) -> GraphJson {
    GraphJson {
        p: g.modulus().get(),
        n: g.n(),
        edges: g.edges().into_iter().map(|(a, b, w)| (a + 1, b + 1, w)).collect(),
    }
}

pub fn graph_from_json(j: &GraphJson) -> Result<WeightedGraph> {
    let p = Modulus::new(j.p)?;
    let mut edges = Vec::with_capacity(j.edges.len());
    let mut seen = BTreeSet::new();
    for &(a, b, w) in &j.edges {
        let (a, b) = (one_based(a, j.n)?, one_based(b, j.n)?);
        if !seen.insert((a.min(b), a.max(b))) {
            return Err(Error::Format(format!("edge ({}, {}) listed twice", a + 1, b + 1)));
        }
        edges.push((a, b, w));
    }
    WeightedGraph::from_edges(p, j.n, &edges)
}

pub fn layout_to_json(l: &ChannelLayout) -> LayoutJson {
    LayoutJson {
        channels: l
            .channels()
            .iter()
            .map(|ch| ch.iter().map(|v| v + 1).collect())
            .collect(),
        noiseless: l.noiseless().iter().map(|v| v + 1).collect(),
    }
}

/// `n` is the number of vertices covered by the channels.
pub fn layout_from_json(j: &LayoutJson) -> Result<ChannelLayout> {
    let n: usize = j.channels.iter().map(|c| c.len()).sum();
    let channels = j
        .channels
        .iter()
        .map(|ch| ch.iter().map(|&v| one_based(v, n)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    let noiseless = j
        .noiseless
        .iter()
        .map(|&v| one_based(v, n))
        .collect::<Result<BTreeSet<_>>>()?;
    ChannelLayout::new(n, channels, noiseless)
}

pub fn vec_to_json(v: &ZVec) -> VecJson {
    if v.modulus().get() <= 10 {
        VecJson::Digits(v.to_digit_string())
    } else {
        VecJson::Entries(v.entries().iter().map(|&x| x as i64).collect())
    }
}

pub fn vec_from_json(p: Modulus, n: usize, j: &VecJson) -> Result<ZVec> {
    let v = match j {
        VecJson::Digits(s) => {
            if p.get() > 10 {
                return Err(Error::Format(format!(
                    "digit string {s:?} is ambiguous for p = {}; use an integer array",
                    p.get()
                )));
            }
            ZVec::from_digits(p, s)?
        }
        VecJson::Entries(xs) => {
            let mut out = Vec::with_capacity(xs.len());
            for &x in xs {
                if x < 0 || x >= p.get() as i64 {
                    return Err(Error::Format(format!("residue {x} out of range for p = {}", p.get())));
                }
                out.push(x as u32);
            }
            ZVec::from_residues(p, out)?
        }
    };
    if v.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            actual: v.len(),
        });
    }
    Ok(v)
}

pub fn code_spec_to_json(spec: &CodeSpec) -> CodeSpecJson {
    CodeSpecJson {
        name: None,
        graph: graph_to_json(&spec.graph),
        layout: layout_to_json(&spec.layout),
        d: spec.d,
        clique: Some(spec.clique.iter().map(vec_to_json).collect()),
        generators: None,
        graph_resolved: None,
        provenance: None,
    }
}

pub fn fixture_to_json(f: &Fixture) -> CodeSpecJson {
    CodeSpecJson {
        name: Some(f.name.clone()),
        graph_resolved: Some(f.graph_resolved),
        provenance: Some(f.provenance.clone()),
        ..code_spec_to_json(&f.spec)
    }
}

pub fn code_spec_from_json(j: &CodeSpecJson) -> Result<CodeSpec> {
    let graph = graph_from_json(&j.graph)?;
    let layout = layout_from_json(&j.layout)?;
    let (p, n) = (graph.modulus(), graph.n());
    let parse = |xs: &[VecJson]| xs.iter().map(|x| vec_from_json(p, n, x)).collect::<Result<Vec<_>>>();
    let clique = match (&j.clique, &j.generators) {
        (Some(c), None) => parse(c)?,
        (None, Some(g)) => expand_generators(p, n, &parse(g)?)?,
        _ => {
            return Err(Error::Format(
                "exactly one of \"clique\" and \"generators\" is required".into(),
            ))
        }
    };
    CodeSpec::new(graph, layout, j.d, clique)
}

fn parse<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))
}

/// Pretty JSON with sorted keys and a trailing newline.
pub fn render<T: Serialize>(value: &T) -> String {
    let v: Value = serde_json::to_value(value).expect("serializable value");
    let mut s = serde_json::to_string_pretty(&v).expect("JSON value renders");
    s.push('\n');
    s
}

pub fn parse_graph(text: &str) -> Result<WeightedGraph> {
    graph_from_json(&parse(text)?)
}

pub fn parse_layout(text: &str) -> Result<ChannelLayout> {
    layout_from_json(&parse(text)?)
}

pub fn parse_code_spec(text: &str) -> Result<CodeSpec> {
    code_spec_from_json(&parse(text)?)
}

pub fn report_to_json(r: &VerificationReport) -> Value {
    let violations: Vec<Value> = r
        .violations
        .iter()
        .map(|v| {
            json!({
                "s": vec_to_json(v.error.s()),
                "t": vec_to_json(v.error.t()),
                "i": v.i,
                "j": v.j,
                "kind": v.kind,
            })
        })
        .collect();
    json!({
        "passed": r.passed,
        "errors_checked": r.errors_checked,
        "violations": violations,
        "f_consistent": r.f_consistent(),
    })
}

pub fn search_outcome_to_json(o: &SearchOutcome) -> Value {
    json!({
        "clique": o.clique.iter().map(vec_to_json).collect::<Vec<_>>(),
        "size": o.clique.len(),
        "status": o.status,
        "nodes_explored": o.nodes_explored,
        "candidates": o.candidates,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::paper_code_27;

    #[test]
    fn graph_round_trip() {
        let text = r#"{"p": 3, "n": 3, "edges": [[1, 2, 1], [2, 3, 2]]}"#;
        let g = parse_graph(text).unwrap();
        assert_eq!(g.weight(1, 2), 2);
        assert_eq!(parse_graph(&render(&graph_to_json(&g))).unwrap(), g);
        assert!(parse_graph(r#"{"p": 4, "n": 2, "edges": []}"#).is_err());
        assert!(parse_graph(r#"{"p": 3, "n": 2, "edges": [[0, 1, 1]]}"#).is_err());
        assert!(parse_graph(r#"{"p": 3, "n": 2, "edges": [], "extra": 1}"#).is_err());
    }

    #[test]
    fn layout_round_trip() {
        let l = parse_layout(r#"{"channels": [[1, 3], [2, 4]], "noiseless": [4]}"#).unwrap();
        assert_eq!(l.n(), 4);
        assert_eq!(l.channels()[1], vec![1, 3]);
        assert_eq!(parse_layout(&render(&layout_to_json(&l))).unwrap(), l);
    }

    #[test]
    fn fixture_round_trip_is_stable() {
        let f = paper_code_27();
        let text = render(&fixture_to_json(&f));
        let spec = parse_code_spec(&text).unwrap();
        assert_eq!(spec, f.spec);
        assert_eq!(render(&fixture_to_json(&f)), text);
    }

    #[test]
    fn generators_expand_on_load() {
        let text = r#"{"graph": {"p": 2, "n": 3, "edges": []},
                       "layout": {"channels": [[1], [2], [3]]},
                       "d": 1, "generators": ["110", "011"]}"#;
        assert_eq!(parse_code_spec(text).unwrap().k(), 4);
        let both = text.replace("\"d\": 1,", "\"d\": 1, \"clique\": [\"000\"],");
        assert!(parse_code_spec(&both).is_err());
    }

    #[test]
    fn large_moduli_use_arrays() {
        let p = Modulus::new(11).unwrap();
        let v = ZVec::from_residues(p, vec![10, 0]).unwrap();
        assert_eq!(vec_to_json(&v), VecJson::Entries(vec![10, 0]));
        assert!(vec_from_json(p, 2, &VecJson::Digits("10".into())).is_err());
        assert_eq!(vec_from_json(p, 2, &VecJson::Entries(vec![10, 0])).unwrap(), v);
    }
}
