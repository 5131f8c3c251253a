//! Graph document parsing and serialization.
//!
//! Documents are JSON objects:
//!
//! ```json
//! {
//!   "type": "edge-labeled",
//!   "alphabet": ["0", "1"],
//!   "vertices": ["A", "B"],
//!   "edges": [
//!     {"src": "A", "dst": "A", "label": "1"},
//!     {"src": "A", "dst": "B", "label": "0"},
//!     {"src": "B", "dst": "A", "label": "0"}
//!   ]
//! }
//! ```
//!
//! Vertex-labeled documents use `"type": "vertex-labeled"`, omit edge
//! labels, and carry a total `"vertex_labels"` map; they are converted on
//! parse by labeling every edge with the label of its source vertex (the
//! presented two-sided shift is the same under source or target convention,
//! the label sequence merely shifts by one index).
//!
//! Schema violations report the JSON pointer of the offending element.

use std::collections::BTreeMap;

use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::graph::LabeledGraph;
use crate::shift::ShiftHandle;
use crate::word::Alphabet;

pub const SCHEMA_VERSION: &str = "1";

fn expect_object<'v>(v: &'v Value, ptr: &str) -> Result<&'v Map<String, Value>> {
    v.as_object()
        .ok_or_else(|| Error::schema(ptr, "expected an object"))
}

fn expect_string<'v>(v: &'v Value, ptr: &str) -> Result<&'v str> {
    v.as_str()
        .ok_or_else(|| Error::schema(ptr, "expected a string"))
}

fn expect_array<'v>(v: &'v Value, ptr: &str) -> Result<&'v Vec<Value>> {
    v.as_array()
        .ok_or_else(|| Error::schema(ptr, "expected an array"))
}

fn required<'v>(obj: &'v Map<String, Value>, key: &str, ptr: &str) -> Result<&'v Value> {
    obj.get(key)
        .ok_or_else(|| Error::schema(format!("{ptr}/{key}"), "missing required field"))
}

/// Parses a graph document into a shift handle. The graph is trimmed; the
/// result may be the empty shift. Accepts documents produced by
/// [`serialize_presentation`], including machine-generated `^` names.
pub fn parse_presentation(text: &str) -> Result<ShiftHandle> {
    let graph = parse_graph(text)?;
    ShiftHandle::from_graph(graph)
}

/// Parses a graph document without trimming.
pub fn parse_graph(text: &str) -> Result<LabeledGraph> {
    let value: Value = serde_json::from_str(text)?;
    let root = expect_object(&value, "")?;

    for key in root.keys() {
        if !matches!(
            key.as_str(),
            "type" | "alphabet" | "vertices" | "edges" | "vertex_labels"
        ) {
            return Err(Error::schema(format!("/{key}"), "unknown field"));
        }
    }

    let kind = expect_string(required(root, "type", "")?, "/type")?;
    let vertex_labeled = match kind {
        "edge-labeled" => false,
        "vertex-labeled" => true,
        _ => {
            return Err(Error::schema(
                "/type",
                "expected \"edge-labeled\" or \"vertex-labeled\"",
            ))
        }
    };

    let alphabet_val = expect_array(required(root, "alphabet", "")?, "/alphabet")?;
    let mut alphabet_names = Vec::with_capacity(alphabet_val.len());
    for (i, v) in alphabet_val.iter().enumerate() {
        alphabet_names.push(expect_string(v, &format!("/alphabet/{i}"))?.to_string());
    }
    let alphabet = Alphabet::with_generated(alphabet_names)
        .map_err(|e| Error::schema("/alphabet", e.to_string()))?;

    let vertices_val = expect_array(required(root, "vertices", "")?, "/vertices")?;
    let mut vertex_names = Vec::with_capacity(vertices_val.len());
    for (i, v) in vertices_val.iter().enumerate() {
        vertex_names.push(expect_string(v, &format!("/vertices/{i}"))?.to_string());
    }
    let vertex_index: BTreeMap<&str, u32> = vertex_names
        .iter()
        .enumerate()
        .map(|(i, n)| (n.as_str(), i as u32))
        .collect();
    if vertex_index.len() != vertex_names.len() {
        return Err(Error::schema("/vertices", "duplicate vertex name"));
    }

    let vertex_labels: Option<Vec<u32>> = if vertex_labeled {
        let vl = required(root, "vertex_labels", "")?;
        let vl = expect_object(vl, "/vertex_labels")?;
        let mut labels = vec![None; vertex_names.len()];
        for (key, val) in vl {
            let ptr = format!("/vertex_labels/{key}");
            let Some(&v) = vertex_index.get(key.as_str()) else {
                return Err(Error::schema(ptr, "not a declared vertex"));
            };
            let name = expect_string(val, &ptr)?;
            let Some(sym) = alphabet.lookup(name) else {
                return Err(Error::schema(ptr, "label is not in the alphabet"));
            };
            labels[v as usize] = Some(sym);
        }
        let mut total = Vec::with_capacity(labels.len());
        for (i, l) in labels.into_iter().enumerate() {
            total.push(l.ok_or_else(|| {
                Error::schema(
                    "/vertex_labels",
                    format!("missing label for vertex {:?}", vertex_names[i]),
                )
            })?);
        }
        Some(total)
    } else {
        if root.contains_key("vertex_labels") {
            return Err(Error::schema(
                "/vertex_labels",
                "only allowed for vertex-labeled graphs",
            ));
        }
        None
    };

    let edges_val = expect_array(required(root, "edges", "")?, "/edges")?;
    let mut edges = Vec::with_capacity(edges_val.len());
    for (i, ev) in edges_val.iter().enumerate() {
        let ptr = format!("/edges/{i}");
        let eo = expect_object(ev, &ptr)?;
        for key in eo.keys() {
            if !matches!(key.as_str(), "src" | "dst" | "label") {
                return Err(Error::schema(format!("{ptr}/{key}"), "unknown field"));
            }
        }
        let src_name = expect_string(required(eo, "src", &ptr)?, &format!("{ptr}/src"))?;
        let dst_name = expect_string(required(eo, "dst", &ptr)?, &format!("{ptr}/dst"))?;
        let Some(&src) = vertex_index.get(src_name) else {
            return Err(Error::schema(format!("{ptr}/src"), "not a declared vertex"));
        };
        let Some(&dst) = vertex_index.get(dst_name) else {
            return Err(Error::schema(format!("{ptr}/dst"), "not a declared vertex"));
        };
        let label = match (&vertex_labels, eo.get("label")) {
            (Some(labels), None) => labels[src as usize],
            (Some(_), Some(_)) => {
                return Err(Error::schema(
                    format!("{ptr}/label"),
                    "vertex-labeled edges must not carry labels",
                ));
            }
            (None, Some(lv)) => {
                let name = expect_string(lv, &format!("{ptr}/label"))?;
                let Some(sym) = alphabet.lookup(name) else {
                    return Err(Error::schema(
                        format!("{ptr}/label"),
                        "label is not in the alphabet",
                    ));
                };
                sym
            }
            (None, None) => {
                return Err(Error::schema(format!("{ptr}/label"), "missing required field"));
            }
        };
        edges.push((src, dst, label));
    }

    LabeledGraph::new(alphabet, vertex_names, edges)
        .map_err(|e| Error::schema("", e.to_string()))
}

/// Serializes a graph in edge-labeled form. Output is stable: alphabet,
/// vertices, and edges appear in id order.
pub fn serialize_graph(g: &LabeledGraph) -> String {
    let mut root = Map::new();
    root.insert("type".into(), Value::String("edge-labeled".into()));
    root.insert(
        "alphabet".into(),
        Value::Array(
            g.alphabet()
                .names()
                .iter()
                .map(|s| Value::String(s.clone()))
                .collect(),
        ),
    );
    root.insert(
        "vertices".into(),
        Value::Array(
            g.vertex_names()
                .iter()
                .map(|s| Value::String(s.clone()))
                .collect(),
        ),
    );
    let edges = g
        .edges()
        .iter()
        .map(|e| {
            let mut eo = Map::new();
            eo.insert("src".into(), Value::String(g.vertex_name(e.src).into()));
            eo.insert("dst".into(), Value::String(g.vertex_name(e.dst).into()));
            eo.insert(
                "label".into(),
                Value::String(g.alphabet().name(e.label).into()),
            );
            Value::Object(eo)
        })
        .collect();
    root.insert("edges".into(), Value::Array(edges));
    serde_json::to_string_pretty(&Value::Object(root)).expect("graph document serialization")
}

/// Serializes the presentation underlying a handle.
pub fn serialize_presentation(handle: &ShiftHandle) -> String {
    serialize_graph(handle.graph())
}

/// Graphviz rendering of a labeled graph.
pub fn graph_to_dot(g: &LabeledGraph) -> String {
    let mut s = String::from("digraph {\n  rankdir=LR;\n");
    for v in g.vertices() {
        s.push_str(&format!("  v{v} [label=\"{}\"];\n", g.vertex_name(v)));
    }
    for e in g.edges() {
        s.push_str(&format!(
            "  v{} -> v{} [label=\"{}\"];\n",
            e.src,
            e.dst,
            g.alphabet().name(e.label)
        ));
    }
    s.push_str("}\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    const EVEN: &str = r#"{
        "type": "edge-labeled",
        "alphabet": ["0", "1"],
        "vertices": ["A", "B"],
        "edges": [
            {"src": "A", "dst": "A", "label": "1"},
            {"src": "A", "dst": "B", "label": "0"},
            {"src": "B", "dst": "A", "label": "0"}
        ]
    }"#;

    #[test]
    fn parse_edge_labeled() {
        let h = parse_presentation(EVEN).unwrap();
        assert_eq!(h.graph().vertex_count(), 2);
        assert_eq!(h.graph().edge_count(), 3);
    }

    #[test]
    fn round_trip_is_identity() {
        let h = parse_presentation(EVEN).unwrap();
        let text = serialize_presentation(&h);
        let h2 = parse_presentation(&text).unwrap();
        assert_eq!(h.graph(), h2.graph());
    }

    #[test]
    fn vertex_labeled_uses_source_labels() {
        let doc = r#"{
            "type": "vertex-labeled",
            "alphabet": ["u", "a"],
            "vertices": ["p", "q"],
            "edges": [
                {"src": "p", "dst": "q"},
                {"src": "q", "dst": "p"}
            ],
            "vertex_labels": {"p": "u", "q": "a"}
        }"#;
        let g = parse_graph(doc).unwrap();
        let e0 = g.edge(0);
        assert_eq!(g.alphabet().name(e0.label), "u");
        assert_eq!(g.alphabet().name(g.edge(1).label), "a");
    }

    #[test]
    fn schema_errors_carry_pointers() {
        let missing_label = r#"{
            "type": "edge-labeled",
            "alphabet": ["0"],
            "vertices": ["A"],
            "edges": [{"src": "A", "dst": "A"}]
        }"#;
        match parse_presentation(missing_label) {
            Err(Error::Schema { pointer, .. }) => assert_eq!(pointer, "/edges/0/label"),
            other => panic!("expected schema error, got {other:?}"),
        }
        let bad_vertex = r#"{
            "type": "edge-labeled",
            "alphabet": ["0"],
            "vertices": ["A"],
            "edges": [{"src": "A", "dst": "Z", "label": "0"}]
        }"#;
        match parse_presentation(bad_vertex) {
            Err(Error::Schema { pointer, .. }) => assert_eq!(pointer, "/edges/0/dst"),
            other => panic!("expected schema error, got {other:?}"),
        }
        match parse_presentation(r#"{"type": "ring"}"#) {
            Err(Error::Schema { pointer, .. }) => assert_eq!(pointer, "/type"),
            other => panic!("expected schema error, got {other:?}"),
        }
    }

    #[test]
    fn unknown_fields_rejected() {
        let doc = r#"{
            "type": "edge-labeled",
            "alphabet": ["0"],
            "vertices": ["A"],
            "edges": [],
            "color": "blue"
        }"#;
        assert!(matches!(parse_presentation(doc), Err(Error::Schema { .. })));
    }
}
