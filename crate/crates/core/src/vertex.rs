use std::borrow::Borrow;
use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Suffix marking the second copy of a vertex in a cylinder.
pub const PRIME_SUFFIX: char = '\'';
/// Separator used in product vertices (`v|i`) and subset vertices (`{a|b}`).
pub const SEPARATOR: char = '|';

/// A vertex label. Ordered lexicographically as text.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexId(String);

pub type VertexSet = BTreeSet<VertexId>;

impl VertexId {
    /// Label coming from user input: non-empty, no whitespace, and none of the
    /// reserved characters.
    pub fn parse(label: &str) -> Result<Self> {
        let reason = if label.is_empty() {
            Some("label is empty")
        } else if label.chars().any(char::is_whitespace) {
            Some("label contains whitespace")
        } else if label.contains(PRIME_SUFFIX) {
            Some("the character ' is reserved")
        } else if label.contains(SEPARATOR) {
            Some("the character | is reserved")
        } else {
            None
        };
        match reason {
            Some(reason) => Err(Error::InvalidLabel {
                label: label.to_string(),
                reason,
            }),
            None => Ok(VertexId(label.to_string())),
        }
    }

    /// Internal constructor; skips the reserved-character checks.
    pub fn new(label: impl Into<String>) -> Self {
        VertexId(label.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn primed(&self) -> VertexId {
        VertexId(format!("{}{}", self.0, PRIME_SUFFIX))
    }

    /// `v|i` for a product vertex.
    pub fn pair(&self, other: &VertexId) -> VertexId {
        VertexId(format!("{}{}{}", self.0, SEPARATOR, other.0))
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl Borrow<str> for VertexId {
    fn borrow(&self) -> &str {
        &self.0
    }
}

impl From<&str> for VertexId {
    fn from(s: &str) -> Self {
        VertexId::new(s)
    }
}

/// Canonical label of a vertex subset: sorted members joined by `|` in braces.
pub fn subset_label(set: &VertexSet) -> VertexId {
    let parts: Vec<&str> = set.iter().map(VertexId::as_str).collect();
    VertexId(format!("{{{}}}", parts.join("|")))
}

pub fn format_set(set: &VertexSet) -> String {
    let parts: Vec<&str> = set.iter().map(VertexId::as_str).collect();
    format!("{{{}}}", parts.join(","))
}

pub fn set_of<I, S>(labels: I) -> VertexSet
where
    I: IntoIterator<Item = S>,
    S: Into<VertexId>,
{
    labels.into_iter().map(Into::into).collect()
}

impl From<String> for VertexId {
    fn from(s: String) -> Self {
        VertexId(s)
    }
}
