//! Inputs bundled with the binary, addressable by name wherever a file path is accepted.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy)]
pub struct Fixture {
    pub name: &'static str,
    pub file: &'static str,
    pub description: &'static str,
    pub text: &'static str,
}

macro_rules! fixture {
    ($name:literal, $file:literal, $description:literal) => {
        Fixture {
            name: $name,
            file: $file,
            description: $description,
            text: include_str!(concat!("../fixtures/", $file)),
        }
    };
}

pub const FIXTURES: [Fixture; 10] = [
    fixture!("ex34", "ex34.dhg.json", "four vertices, six arrows mixing single and double heads"),
    fixture!("ex314", "ex314.dhg.json", "six vertices with two double-headed arrows forming a loop"),
    fixture!("ex319", "ex319.dhg.json", "eight vertices; pairs {3,4}, {5,6}, {7,8} suspended between 1 and 2"),
    fixture!("ex32-g", "ex32-g.dhg.json", "two arrows out of 1 sharing head vertex 2"),
    fixture!("ex32-h", "ex32-h.dhg.json", "a single arrow {a} -> {b,c}"),
    fixture!("ex32-f", "ex32-f.map.json", "morphism ex32-g -> ex32-h merging 3 and 4"),
    fixture!("cycle3", "cycle3.dhg.json", "directed 3-cycle"),
    fixture!("cycle3-id", "cycle3-id.map.json", "identity of cycle3"),
    fixture!("cycle3-rot", "cycle3-rot.map.json", "rotation of cycle3 by one step"),
    fixture!("cycle3-rot2", "cycle3-rot2.map.json", "rotation of cycle3 by two steps"),
];

/// Looks a fixture up by name (`ex34`) or file name (`ex34.dhg.json`).
pub fn fixture(name: &str) -> Option<&'static Fixture> {
    FIXTURES.iter().find(|f| f.name == name || f.file == name)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixtureEntry {
    pub name: String,
    pub file: String,
    pub description: String,
}

impl From<&Fixture> for FixtureEntry {
    fn from(f: &Fixture) -> Self {
        FixtureEntry {
            name: f.name.to_string(),
            file: f.file.to_string(),
            description: f.description.to_string(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::document::{parse_document, DocumentKind};

    #[test]
    fn every_fixture_parses_and_round_trips() {
        for f in &FIXTURES {
            let doc = parse_document(f.text).unwrap_or_else(|e| panic!("{}: {e}", f.name));
            let expected = if f.file.ends_with(".map.json") {
                DocumentKind::Morphism
            } else {
                DocumentKind::DirectedHypergraph
            };
            assert_eq!(doc.kind(), expected, "{}", f.name);
            assert_eq!(parse_document(&doc.to_json()).unwrap(), doc, "{}", f.name);
        }
    }

    #[test]
    fn lookup_by_name_or_file() {
        assert_eq!(fixture("ex34").unwrap().file, "ex34.dhg.json");
        assert_eq!(fixture("ex34.dhg.json").unwrap().name, "ex34");
        assert!(fixture("ex35").is_none());
    }
}
