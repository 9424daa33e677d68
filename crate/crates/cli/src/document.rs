//! JSON input documents.
//!
//! Four kinds share one file format, told apart by their keys:
//! `edges` holding objects (directed hypergraph), `edges` holding arrays
//! (hypergraph), `arrows` (digraph) and `vertex_map` (morphism).

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use dhpath_core::model::{Arrow, Digraph, DirectedHypergraph, Hypergraph};
use dhpath_core::{VertexId, VertexSet};
use serde::de::{MapAccess, Visitor};
use serde::{Deserialize, Deserializer, Serialize};
use serde_json::value::RawValue;
use serde_json::{json, Value};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Document {
    DirectedHypergraph(DirectedHypergraph),
    Digraph(Digraph),
    Hypergraph(Hypergraph),
    Morphism(BTreeMap<VertexId, VertexId>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DocumentKind {
    DirectedHypergraph,
    Digraph,
    Hypergraph,
    Morphism,
}

impl fmt::Display for DocumentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DocumentKind::DirectedHypergraph => "directed-hypergraph",
            DocumentKind::Digraph => "digraph",
            DocumentKind::Hypergraph => "hypergraph",
            DocumentKind::Morphism => "morphism",
        })
    }
}

#[derive(Debug, Error)]
pub enum DocumentError {
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },

    #[error("line {line}: duplicate {what} {item}")]
    Duplicate { what: &'static str, item: String, line: usize },

    #[error("line {line}: {source}")]
    Label { line: usize, source: dhpath_core::Error },

    #[error("{0}")]
    Invalid(dhpath_core::Error),

    #[error("unrecognised document: {0}")]
    UnknownKind(String),
}

type Parsed<T> = std::result::Result<T, DocumentError>;

impl Document {
    pub fn kind(&self) -> DocumentKind {
        match self {
            Document::DirectedHypergraph(_) => DocumentKind::DirectedHypergraph,
            Document::Digraph(_) => DocumentKind::Digraph,
            Document::Hypergraph(_) => DocumentKind::Hypergraph,
            Document::Morphism(_) => DocumentKind::Morphism,
        }
    }

    /// Vertex and edge counts; a morphism reports its domain size and zero.
    pub fn size(&self) -> (usize, usize) {
        match self {
            Document::DirectedHypergraph(g) => (g.vertices().len(), g.arrows().len()),
            Document::Digraph(d) => (d.vertices().len(), d.arrows().len()),
            Document::Hypergraph(h) => (h.vertices.len(), h.edges.len()),
            Document::Morphism(m) => (m.len(), 0),
        }
    }

    /// Canonical JSON form, accepted back by [`parse_document`].
    pub fn to_json(&self) -> String {
        let value = match self {
            Document::DirectedHypergraph(g) => json!({
                "vertices": labels(g.vertices()),
                "edges": g.arrows().iter()
                    .map(|a| json!({"origin": labels(&a.origin), "end": labels(&a.end)}))
                    .collect::<Vec<_>>(),
            }),
            Document::Digraph(d) => json!({
                "vertices": labels(d.vertices()),
                "arrows": d.arrows().iter().map(|(v, w)| json!([v.as_str(), w.as_str()])).collect::<Vec<_>>(),
            }),
            Document::Hypergraph(h) => json!({
                "vertices": labels(&h.vertices),
                "edges": h.edges.iter().map(labels).collect::<Vec<_>>(),
                "strict": h.strict,
            }),
            Document::Morphism(m) => {
                let map: serde_json::Map<String, Value> =
                    m.iter().map(|(v, w)| (v.as_str().to_string(), Value::from(w.as_str()))).collect();
                json!({ "vertex_map": map })
            }
        };
        let mut out = serde_json::to_string_pretty(&value).expect("JSON values always serialize");
        out.push('\n');
        out
    }
}

fn labels(s: &VertexSet) -> Vec<&str> {
    s.iter().map(VertexId::as_str).collect()
}

/// Parses and validates a document.
pub fn parse_document(text: &str) -> Parsed<Document> {
    let probe: serde_json::Map<String, Value> = serde_json::from_str(text).map_err(syntax)?;
    if probe.contains_key("vertex_map") {
        return parse_morphism(text).map(Document::Morphism);
    }
    if probe.contains_key("arrows") {
        return parse_digraph(text).map(Document::Digraph);
    }
    match probe.get("edges") {
        Some(Value::Array(edges)) if edges.first().is_some_and(Value::is_array) => {
            parse_hypergraph(text).map(Document::Hypergraph)
        }
        Some(_) => parse_directed(text).map(Document::DirectedHypergraph),
        None => Err(DocumentError::UnknownKind(
            "expected a key \"edges\", \"arrows\" or \"vertex_map\"".to_string(),
        )),
    }
}

fn syntax(e: serde_json::Error) -> DocumentError {
    DocumentError::Syntax {
        line: e.line(),
        column: e.column(),
        message: strip_position(&e.to_string()),
    }
}

/// serde_json appends " at line L column C"; the position is reported separately.
fn strip_position(message: &str) -> String {
    match message.rfind(" at line ") {
        Some(i) => message[..i].to_string(),
        None => message.to_string(),
    }
}

/// Line and column (both 1-based) of a raw value inside `text`.
fn position(text: &str, raw: &RawValue) -> (usize, usize) {
    let offset = (raw.get().as_ptr() as usize).saturating_sub(text.as_ptr() as usize).min(text.len());
    let before = &text[..offset];
    let line = before.matches('\n').count() + 1;
    let column = offset - before.rfind('\n').map_or(0, |i| i + 1) + 1;
    (line, column)
}

/// Parses one element, reporting failures at the element's position.
fn element<'a, T: Deserialize<'a>>(text: &str, raw: &'a RawValue) -> Parsed<T> {
    serde_json::from_str(raw.get()).map_err(|e| {
        let (line, column) = position(text, raw);
        DocumentError::Syntax {
            line,
            column,
            message: strip_position(&e.to_string()),
        }
    })
}

fn label(text: &str, raw: &RawValue) -> Parsed<VertexId> {
    let s: String = element(text, raw)?;
    VertexId::parse(&s).map_err(|source| DocumentError::Label {
        line: position(text, raw).0,
        source,
    })
}

/// Labels of a vertex list, rejecting repeats.
fn vertex_list(text: &str, raws: &[&RawValue], what: &'static str) -> Parsed<Vec<VertexId>> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::with_capacity(raws.len());
    for raw in raws {
        let v = label(text, raw)?;
        if !seen.insert(v.clone()) {
            return Err(DocumentError::Duplicate {
                what,
                item: v.to_string(),
                line: position(text, raw).0,
            });
        }
        out.push(v);
    }
    Ok(out)
}

/// Remembers the first index of every item and rejects repeats.
struct Seen<T> {
    first: HashMap<T, usize>,
    what: &'static str,
}

impl<T: std::hash::Hash + Eq> Seen<T> {
    fn new(what: &'static str) -> Self {
        Seen { first: HashMap::new(), what }
    }

    fn insert(&mut self, item: T, index: usize, text: &str, raw: &RawValue) -> Parsed<()> {
        if let Some(&first) = self.first.get(&item) {
            return Err(DocumentError::Duplicate {
                what: self.what,
                item: format!("{index} (same as {} {first})", self.what),
                line: position(text, raw).0,
            });
        }
        self.first.insert(item, index);
        Ok(())
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DirectedDoc<'a> {
    #[serde(borrow)]
    vertices: Vec<&'a RawValue>,
    #[serde(borrow)]
    edges: Vec<&'a RawValue>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct EdgeDoc<'a> {
    #[serde(borrow)]
    origin: Vec<&'a RawValue>,
    #[serde(borrow)]
    end: Vec<&'a RawValue>,
}

fn parse_directed(text: &str) -> Parsed<DirectedHypergraph> {
    let doc: DirectedDoc = serde_json::from_str(text).map_err(syntax)?;
    let vertices = vertex_list(text, &doc.vertices, "vertex")?;
    let mut seen = Seen::new("edge");
    let mut arrows = Vec::with_capacity(doc.edges.len());
    for (i, raw) in doc.edges.iter().enumerate() {
        let edge: EdgeDoc = element(text, raw)?;
        let origin: VertexSet = vertex_list(text, &edge.origin, "origin vertex")?.into_iter().collect();
        let end: VertexSet = vertex_list(text, &edge.end, "end vertex")?.into_iter().collect();
        let arrow = Arrow::new(origin, end);
        seen.insert(arrow.clone(), i, text, raw)?;
        arrows.push(arrow);
    }
    DirectedHypergraph::new(vertices.into_iter().collect(), arrows).map_err(DocumentError::Invalid)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DigraphDoc<'a> {
    #[serde(borrow)]
    vertices: Vec<&'a RawValue>,
    #[serde(borrow)]
    arrows: Vec<&'a RawValue>,
}

fn parse_digraph(text: &str) -> Parsed<Digraph> {
    let doc: DigraphDoc = serde_json::from_str(text).map_err(syntax)?;
    let vertices = vertex_list(text, &doc.vertices, "vertex")?;
    let mut seen = Seen::new("arrow");
    let mut arrows = BTreeSet::new();
    for (i, raw) in doc.arrows.iter().enumerate() {
        let (v, w): (String, String) = element(text, raw)?;
        let line = position(text, raw).0;
        let parse = |s: &str| VertexId::parse(s).map_err(|source| DocumentError::Label { line, source });
        let pair = (parse(&v)?, parse(&w)?);
        seen.insert(pair.clone(), i, text, raw)?;
        arrows.insert(pair);
    }
    Digraph::new(vertices.into_iter().collect(), arrows).map_err(DocumentError::Invalid)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct HypergraphDoc<'a> {
    #[serde(borrow)]
    vertices: Vec<&'a RawValue>,
    #[serde(borrow)]
    edges: Vec<&'a RawValue>,
    #[serde(default)]
    strict: bool,
}

fn parse_hypergraph(text: &str) -> Parsed<Hypergraph> {
    let doc: HypergraphDoc = serde_json::from_str(text).map_err(syntax)?;
    let vertices: VertexSet = vertex_list(text, &doc.vertices, "vertex")?.into_iter().collect();
    let mut seen = Seen::new("edge");
    let mut edges = BTreeSet::new();
    for (i, raw) in doc.edges.iter().enumerate() {
        let members: Vec<&RawValue> = element(text, raw)?;
        let edge: VertexSet = vertex_list(text, &members, "edge vertex")?.into_iter().collect();
        seen.insert(edge.clone(), i, text, raw)?;
        edges.insert(edge);
    }
    let h = Hypergraph {
        vertices,
        edges,
        strict: doc.strict,
    };
    let violations = h.validate();
    if violations.is_empty() {
        Ok(h)
    } else {
        Err(DocumentError::Invalid(dhpath_core::Error::Validation(violations)))
    }
}

/// Map entries in file order, duplicates included.
struct Entries<'a>(Vec<(String, &'a RawValue)>);

impl<'de: 'a, 'a> Deserialize<'de> for Entries<'a> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct EntriesVisitor<'a>(std::marker::PhantomData<&'a ()>);

        impl<'de: 'a, 'a> Visitor<'de> for EntriesVisitor<'a> {
            type Value = Entries<'a>;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("an object of vertex labels")
            }

            fn visit_map<M: MapAccess<'de>>(self, mut map: M) -> std::result::Result<Self::Value, M::Error> {
                let mut out = Vec::new();
                while let Some((k, v)) = map.next_entry::<String, &'a RawValue>()? {
                    out.push((k, v));
                }
                Ok(Entries(out))
            }
        }

        d.deserialize_map(EntriesVisitor(std::marker::PhantomData))
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MorphismDoc<'a> {
    #[serde(borrow)]
    vertex_map: Entries<'a>,
}

fn parse_morphism(text: &str) -> Parsed<BTreeMap<VertexId, VertexId>> {
    let doc: MorphismDoc = serde_json::from_str(text).map_err(syntax)?;
    let mut out = BTreeMap::new();
    for (key, raw) in doc.vertex_map.0 {
        let line = position(text, raw).0;
        let v = VertexId::parse(&key).map_err(|source| DocumentError::Label { line, source })?;
        let w = label(text, raw)?;
        if out.insert(v.clone(), w).is_some() {
            return Err(DocumentError::Duplicate {
                what: "map entry for",
                item: v.to_string(),
                line,
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn err(text: &str) -> String {
        parse_document(text).unwrap_err().to_string()
    }

    #[test]
    fn kinds_are_told_apart_by_keys() {
        let dh = r#"{"vertices":["a","b"],"edges":[{"origin":["a"],"end":["b"]}]}"#;
        let dg = r#"{"vertices":["a","b"],"arrows":[["a","b"]]}"#;
        let hg = r#"{"vertices":["a","b"],"edges":[["a","b"]]}"#;
        let mm = r#"{"vertex_map":{"a":"b"}}"#;
        let kinds: Vec<DocumentKind> = [dh, dg, hg, mm].iter().map(|t| parse_document(t).unwrap().kind()).collect();
        assert_eq!(
            kinds,
            [DocumentKind::DirectedHypergraph, DocumentKind::Digraph, DocumentKind::Hypergraph, DocumentKind::Morphism]
        );
    }

    #[test]
    fn empty_vertex_list() {
        assert_eq!(err(r#"{"vertices":[],"edges":[]}"#), "vertices must be non-empty");
    }

    #[test]
    fn overlapping_arrow_names_its_index() {
        let text = r#"{"vertices":["1","2"],"edges":[{"origin":["1"],"end":["2"]},{"origin":["1"],"end":["1","2"]}]}"#;
        assert_eq!(err(text), "arrow 1: origin and end share 1");
    }

    #[test]
    fn duplicates_carry_line_numbers() {
        let text = "{\n  \"vertices\": [\"1\",\n \"2\",\n \"1\"],\n  \"edges\": []\n}";
        assert_eq!(err(text), "line 4: duplicate vertex 1");
        let text = "{\"vertices\":[\"1\",\"2\"],\"edges\":[\n{\"origin\":[\"1\"],\"end\":[\"2\"]},\n{\"end\":[\"2\"],\"origin\":[\"1\"]}]}";
        assert_eq!(err(text), "line 3: duplicate edge 1 (same as edge 0)");
        let text = "{\"vertex_map\":{\n\"1\":\"a\",\n\"1\":\"b\"}}";
        assert_eq!(err(text), "line 3: duplicate map entry for 1");
    }

    #[test]
    fn unknown_fields_and_syntax_errors_have_positions() {
        let text = "{\"vertices\":[\"1\",\"2\"],\n\"edges\":[{\"origin\":[\"1\"],\"end\":[\"2\"],\"weight\":3}]}";
        let e = parse_document(text).unwrap_err();
        assert!(matches!(e, DocumentError::Syntax { line: 2, .. }), "{e}");
        assert!(e.to_string().contains("unknown field `weight`"));
        assert!(matches!(parse_document("{\"vertices\": [\n\"1\",,]}"), Err(DocumentError::Syntax { line: 2, .. })));
        assert!(matches!(parse_document("[1]"), Err(DocumentError::Syntax { .. })));
    }

    #[test]
    fn reserved_characters_are_rejected() {
        let text = r#"{"vertices":["a|b","c"],"edges":[{"origin":["a|b"],"end":["c"]}]}"#;
        assert!(err(text).contains("the character | is reserved"));
    }

    #[test]
    fn canonical_form_round_trips() {
        let texts = [
            r#"{"vertices":["2","1","3"],"edges":[{"origin":["1"],"end":["2","3"]},{"origin":["3"],"end":["1"]}]}"#,
            r#"{"vertices":["a","b","c"],"arrows":[["b","c"],["a","b"]]}"#,
            r#"{"vertices":["a","b","c"],"edges":[["a","b","c"],["c"]]}"#,
            r#"{"vertex_map":{"2":"b","1":"a"}}"#,
        ];
        for text in texts {
            let doc = parse_document(text).unwrap();
            let again = parse_document(&doc.to_json()).unwrap();
            assert_eq!(doc, again);
            assert_eq!(doc.to_json(), again.to_json());
        }
    }
}
