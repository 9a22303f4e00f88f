//! JSON interchange for trees and seriation reports.
//!
//! A node is `{"kind": "leaf", "label": 5}` or
//! `{"kind": "p" | "q", "children": [...]}`.

use serde_json::{json, Map, Value};

use seriation_core::{
    ComponentSpectrum, FiedlerInfo, IllPosedPolicy, IllPosedReason, Label, PQNode, PQTree,
    SeriationResult, TreeError, Warning,
};

#[derive(Debug, thiserror::Error)]
pub enum JsonError {
    #[error("invalid JSON: {0}")]
    Syntax(#[from] serde_json::Error),
    #[error("{path}: {message}")]
    Schema { path: String, message: String },
    #[error("invalid tree: {0}")]
    Tree(#[from] TreeError),
}

pub fn node_to_json(node: &PQNode) -> Value {
    match node {
        PQNode::Leaf(l) => json!({"kind": "leaf", "label": l}),
        PQNode::P(c) => {
            json!({"kind": "p", "children": c.iter().map(node_to_json).collect::<Vec<_>>()})
        }
        PQNode::Q(c) => {
            json!({"kind": "q", "children": c.iter().map(node_to_json).collect::<Vec<_>>()})
        }
    }
}

pub fn tree_to_json(tree: &PQTree) -> Value {
    node_to_json(tree.root())
}

/// Pretty-printed tree JSON with a trailing newline.
pub fn tree_to_string(tree: &PQTree) -> String {
    let mut s = serde_json::to_string_pretty(&tree_to_json(tree)).expect("tree JSON serializes");
    s.push('\n');
    s
}

pub fn tree_from_str(text: &str) -> Result<PQTree, JsonError> {
    let value: Value = serde_json::from_str(text)?;
    tree_from_json(&value)
}

pub fn tree_from_json(value: &Value) -> Result<PQTree, JsonError> {
    Ok(PQTree::new(node_from_json(value, "$")?)?)
}

fn schema(path: &str, message: impl Into<String>) -> JsonError {
    JsonError::Schema {
        path: path.to_string(),
        message: message.into(),
    }
}

fn node_from_json(value: &Value, path: &str) -> Result<PQNode, JsonError> {
    let obj = value
        .as_object()
        .ok_or_else(|| schema(path, "expected an object"))?;
    let kind = obj
        .get("kind")
        .and_then(Value::as_str)
        .ok_or_else(|| schema(path, "missing string field \"kind\""))?;
    match kind {
        "leaf" => {
            let label = obj
                .get("label")
                .and_then(Value::as_u64)
                .and_then(|l| Label::try_from(l).ok())
                .ok_or_else(|| {
                    schema(
                        &format!("{path}.label"),
                        "expected a non-negative integer label",
                    )
                })?;
            if obj.contains_key("children") {
                return Err(schema(path, "leaf must not have children"));
            }
            Ok(PQNode::Leaf(label))
        }
        "p" | "q" => {
            let children = obj
                .get("children")
                .and_then(Value::as_array)
                .ok_or_else(|| schema(&format!("{path}.children"), "expected an array"))?;
            if children.is_empty() {
                return Err(schema(
                    &format!("{path}.children"),
                    "internal node needs children",
                ));
            }
            let kids = children
                .iter()
                .enumerate()
                .map(|(i, c)| node_from_json(c, &format!("{path}.children[{i}]")))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(if kind == "p" {
                PQNode::P(kids)
            } else {
                PQNode::Q(kids)
            })
        }
        other => Err(schema(
            &format!("{path}.kind"),
            format!("unknown kind {other:?}"),
        )),
    }
}

pub fn policy_name(policy: IllPosedPolicy) -> &'static str {
    match policy {
        IllPosedPolicy::PCollapse => "p-collapse",
        IllPosedPolicy::FirstVector => "first-vector",
    }
}

fn fiedler_json(info: &FiedlerInfo) -> Value {
    json!({
        "value": info.value,
        "multiplicity": info.multiplicity,
        "eigengap": info.eigengap,
        "smallest_eigenvalues": info.smallest,
        "vector": info.vector,
    })
}

pub fn warning_json(w: &Warning) -> Value {
    match w {
        Warning::Binarized => json!({"kind": "binarized"}),
        Warning::IllPosed {
            units,
            reason,
            policy,
        } => {
            let mut obj = Map::new();
            obj.insert("kind".into(), json!("ill-posed"));
            obj.insert("units".into(), json!(units));
            obj.insert("policy".into(), json!(policy_name(*policy)));
            match reason {
                IllPosedReason::MultipleFiedler {
                    value,
                    multiplicity,
                    basis,
                } => {
                    obj.insert("reason".into(), json!("multiple-fiedler-value"));
                    obj.insert("fiedler_value".into(), json!(value));
                    obj.insert("multiplicity".into(), json!(multiplicity));
                    obj.insert("basis".into(), json!(basis));
                }
                IllPosedReason::TiedFiedler => {
                    obj.insert("reason".into(), json!("tied-fiedler-vector"));
                }
            }
            Value::Object(obj)
        }
    }
}

/// Machine-readable seriation report. The count is a decimal string.
pub fn report_json(result: &SeriationResult, frontiers: Option<&[Vec<Label>]>) -> Value {
    let components: Vec<Value> = result
        .components
        .iter()
        .map(|c| match &c.spectrum {
            ComponentSpectrum::Trivial { size } => json!({"units": c.units, "size": size}),
            ComponentSpectrum::Fiedler(info) => {
                json!({"units": c.units, "fiedler": fiedler_json(info)})
            }
        })
        .collect();
    let blocks: Vec<Value> = result
        .blocks
        .iter()
        .map(|b| json!({"depth": b.depth, "units": b.units, "fiedler": fiedler_json(&b.fiedler)}))
        .collect();
    let mut obj = Map::new();
    obj.insert("tree".into(), tree_to_json(&result.tree));
    obj.insert(
        "count".into(),
        json!(result.tree.count_frontiers().to_string()),
    );
    obj.insert("frontier".into(), json!(result.tree.frontier()));
    obj.insert("components".into(), json!(components));
    obj.insert("blocks".into(), json!(blocks));
    obj.insert(
        "warnings".into(),
        json!(result.warnings.iter().map(warning_json).collect::<Vec<_>>()),
    );
    if let Some(f) = frontiers {
        obj.insert("frontiers".into(), json!(f));
    }
    Value::Object(obj)
}
