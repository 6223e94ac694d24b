//! The on-disk JSON formats.
//!
//! Set system: `{"domain": ["a", ...], "family": [["a", "b"], ...]}`.
//! Member lists are unordered; unknown element names and duplicate members
//! are errors.
//!
//! Graph: `{"vertices": ["u", ...], "edges": [["u", "v"], ...], "loops": ["u", ...]}`.
//! An edge joining a vertex to itself is rejected; loops go in `loops`.

use serde::Deserialize;
use serde_json::{json, Value};

use crate::error::{CoreError, Result};
use crate::graphs::Graph;
use crate::set_system::SetSystem;

#[derive(Deserialize)]
struct SystemFile {
    domain: Vec<String>,
    family: Vec<Vec<String>>,
}

#[derive(Deserialize)]
struct GraphFile {
    vertices: Vec<String>,
    #[serde(default)]
    edges: Vec<(String, String)>,
    #[serde(default)]
    loops: Vec<String>,
}

/// Errors carry the serde diagnostics (line and column) for malformed JSON
/// and a typed `CoreError` for semantic problems.
#[derive(Debug, thiserror::Error)]
pub enum ParseError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Semantic(#[from] CoreError),
}

pub fn system_from_json(text: &str) -> std::result::Result<SetSystem, ParseError> {
    let file: SystemFile = serde_json::from_str(text)?;
    let domain: Vec<&str> = file.domain.iter().map(String::as_str).collect();
    let members: Vec<Vec<&str>> = file
        .family
        .iter()
        .map(|m| m.iter().map(String::as_str).collect())
        .collect();
    let members: Vec<&[&str]> = members.iter().map(Vec::as_slice).collect();
    Ok(SetSystem::from_names(&domain, &members)?)
}

pub fn system_to_json(s: &SetSystem) -> Value {
    let family: Vec<Vec<&str>> = s
        .family()
        .iter()
        .map(|m| m.iter().map(|e| s.element_name(e)).collect())
        .collect();
    json!({ "domain": s.domain_names(), "family": family })
}

pub fn graph_from_json(text: &str) -> std::result::Result<Graph, ParseError> {
    let file: GraphFile = serde_json::from_str(text)?;
    let mut g = Graph::new(file.vertices, !file.loops.is_empty())?;
    let lookup = |g: &Graph, name: &str| -> Result<usize> {
        g.vertex_id(name)
            .ok_or_else(|| CoreError::UnknownElement(name.to_string()))
    };
    for (u, v) in &file.edges {
        let (u, v) = (lookup(&g, u)?, lookup(&g, v)?);
        g.add_edge(u, v)?;
    }
    for v in &file.loops {
        let v = lookup(&g, v)?;
        g.add_loop(v)?;
    }
    Ok(g)
}

pub fn graph_to_json(g: &Graph) -> Value {
    let names = g.vertex_names();
    let edges: Vec<(&str, &str)> = g
        .edges()
        .iter()
        .map(|&(u, v)| (names[u].as_str(), names[v].as_str()))
        .collect();
    let loops: Vec<&str> = g
        .loop_vertices()
        .iter()
        .map(|&v| names[v].as_str())
        .collect();
    json!({ "vertices": names, "edges": edges, "loops": loops })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn system_round_trip() {
        let s = system_from_json(r#"{"domain":["x","y"],"family":[[],["y","x"]]}"#).unwrap();
        assert_eq!(s.family_size(), 2);
        let text = system_to_json(&s).to_string();
        assert_eq!(system_from_json(&text).unwrap(), s);
    }

    #[test]
    fn system_errors() {
        assert!(matches!(
            system_from_json(r#"{"domain":["x"],"family":[["x"],["x"]]}"#),
            Err(ParseError::Semantic(CoreError::DuplicateMember(_)))
        ));
        assert!(matches!(
            system_from_json(r#"{"domain":["x"],"family":[["q"]]}"#),
            Err(ParseError::Semantic(CoreError::UnknownElement(_)))
        ));
        assert!(matches!(system_from_json("{"), Err(ParseError::Json(_))));
    }

    #[test]
    fn graph_round_trip_and_errors() {
        let g = graph_from_json(r#"{"vertices":["a","b","c"],"edges":[["a","b"]],"loops":["c"]}"#)
            .unwrap();
        assert!(g.adjacent(0, 1));
        assert!(g.has_loop(2));
        let text = graph_to_json(&g).to_string();
        assert_eq!(graph_from_json(&text).unwrap(), g);

        assert!(matches!(
            graph_from_json(r#"{"vertices":["a"],"edges":[["a","a"]]}"#),
            Err(ParseError::Semantic(CoreError::EdgeIsLoop(_)))
        ));
    }
}
