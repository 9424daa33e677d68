//! The four path complexes attached to a directed hypergraph.
//!
//! * connective, density `c`: steps `v -> w` witnessed by at least `c`
//!   distinct arrows with `v` in the origin and `w` in the end;
//! * bold: paths that wander inside origins and ends and cross arrows in a
//!   chain where each landing set meets the next origin;
//! * non-directed, density `q`: every window of `q` consecutive vertices lies
//!   in some `origin ∪ end`;
//! * natural: walks in the digraph whose vertices are origins and ends.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};

use crate::complex::{Oracle, Path, PathComplexView};
use crate::error::{Error, Result};
use crate::linalg::Field;
use crate::model::{Digraph, DirectedHypergraph, Hypergraph};
use crate::omega::{self, BettiTable};
use crate::vertex::VertexId;

/// Walk complex of a digraph; stationary steps are accepted by the oracle.
pub fn digraph_complex(d: &Digraph, max_length: usize) -> PathComplexView {
    digraph_complex_labelled(d, max_length, "digraph")
}

fn digraph_complex_labelled(d: &Digraph, max_length: usize, label: &str) -> PathComplexView {
    let vertices: Vec<VertexId> = d.vertices().iter().cloned().collect();
    let n = vertices.len();
    let index: HashMap<&VertexId, usize> = vertices.iter().enumerate().map(|(i, v)| (v, i)).collect();
    let mut adj = vec![false; n * n];
    for (v, w) in d.arrows() {
        adj[index[v] * n + index[w]] = true;
    }
    let oracle: Oracle = Arc::new(move |p: &[usize]| p.windows(2).all(|w| w[0] == w[1] || adj[w[0] * n + w[1]]));
    PathComplexView::enumerate(vertices, max_length, label, oracle)
}

/// Connective complex of density `c`.
pub fn connective_view(g: &DirectedHypergraph, c: usize, max_length: usize) -> Result<PathComplexView> {
    if c == 0 {
        return Err(Error::InvalidDensity);
    }
    Ok(digraph_complex_labelled(
        &g.thresholded_digraph(c),
        max_length,
        &format!("connective(c={c})"),
    ))
}

/// Natural complex: walks in the digraph of origins and ends.
pub fn natural_view(g: &DirectedHypergraph, max_length: usize) -> PathComplexView {
    digraph_complex_labelled(&g.natural().digraph, max_length, "natural")
}

/// Non-directed complex of density `q` over the union hypergraph.
///
/// A path with `k` vertices is allowed when every run of `min(q, k)`
/// consecutive vertices lies inside one edge.
pub fn nondirected_view(g: &DirectedHypergraph, q: usize, max_length: usize) -> Result<PathComplexView> {
    if q == 0 {
        return Err(Error::InvalidDensity);
    }
    Ok(hypergraph_window_view(&g.epsilon(), q, max_length, &format!("nondirected(q={q})")))
}

/// Window complex of an arbitrary hypergraph.
pub fn hypergraph_window_view(h: &Hypergraph, q: usize, max_length: usize, label: &str) -> PathComplexView {
    let vertices: Vec<VertexId> = h.vertices.iter().cloned().collect();
    let n = vertices.len();
    let index: HashMap<&VertexId, usize> = vertices.iter().enumerate().map(|(i, v)| (v, i)).collect();
    let edges: Vec<Vec<bool>> = h
        .maximal_edges()
        .into_iter()
        .map(|e| {
            let mut row = vec![false; n];
            for v in e {
                row[index[v]] = true;
            }
            row
        })
        .collect();
    let oracle: Oracle = Arc::new(move |p: &[usize]| {
        let width = q.min(p.len());
        p.windows(width).all(|w| edges.iter().any(|e| w.iter().all(|&v| e[v])))
    });
    PathComplexView::enumerate(vertices, max_length, label, oracle)
}

/// Automaton states for bold-path membership; indices are arrow positions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BoldState {
    /// Still inside the origin of the first arrow to be crossed.
    InitA(usize),
    /// The whole path stays inside one end; no crossing.
    WholeB(usize),
    /// Landed in the end of the first arrow, waiting inside the origin of the second.
    Mid(usize, usize),
    /// Crossed the arrow and wandering inside its end.
    Fin(usize),
}

impl BoldState {
    fn accepting(&self) -> bool {
        !matches!(self, BoldState::Mid(..))
    }
}

/// Nondeterministic automaton recognising bold paths, over vertex indices.
pub struct BoldAutomaton {
    /// origin[e][v], end[e][v]
    origin: Vec<Vec<bool>>,
    end: Vec<Vec<bool>>,
    vertices: Vec<VertexId>,
}

type StateSet = Vec<BoldState>;

impl BoldAutomaton {
    pub fn new(g: &DirectedHypergraph) -> Self {
        let vertices: Vec<VertexId> = g.vertices().iter().cloned().collect();
        let index: HashMap<&VertexId, usize> = vertices.iter().enumerate().map(|(i, v)| (v, i)).collect();
        let mask = |s: &BTreeSet<VertexId>| {
            let mut row = vec![false; vertices.len()];
            for v in s {
                row[index[v]] = true;
            }
            row
        };
        BoldAutomaton {
            origin: g.arrows().iter().map(|a| mask(&a.origin)).collect(),
            end: g.arrows().iter().map(|a| mask(&a.end)).collect(),
            vertices: vertices.clone(),
        }
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn start(&self, v: usize) -> StateSet {
        let mut s = Vec::new();
        for e in 0..self.origin.len() {
            if self.origin[e][v] {
                s.push(BoldState::InitA(e));
            }
            if self.end[e][v] {
                s.push(BoldState::WholeB(e));
            }
        }
        s.sort();
        s
    }

    fn cross(&self, e: usize, v: usize, out: &mut BTreeSet<BoldState>) {
        out.insert(BoldState::Fin(e));
        for next in 0..self.origin.len() {
            if self.origin[next][v] {
                out.insert(BoldState::Mid(e, next));
            }
        }
    }

    /// States after stepping to vertex `v`.
    pub fn step(&self, states: &[BoldState], v: usize) -> StateSet {
        let mut out = BTreeSet::new();
        for &s in states {
            match s {
                BoldState::InitA(e) => {
                    if self.origin[e][v] {
                        out.insert(BoldState::InitA(e));
                    }
                    if self.end[e][v] {
                        self.cross(e, v, &mut out);
                    }
                }
                BoldState::WholeB(e) => {
                    if self.end[e][v] {
                        out.insert(BoldState::WholeB(e));
                    }
                }
                BoldState::Mid(d, e) => {
                    if self.end[d][v] && self.origin[e][v] {
                        out.insert(BoldState::Mid(d, e));
                    }
                    if self.end[e][v] {
                        self.cross(e, v, &mut out);
                    }
                }
                BoldState::Fin(e) => {
                    if self.end[e][v] {
                        out.insert(BoldState::Fin(e));
                    }
                }
            }
        }
        out.into_iter().collect()
    }

    pub fn accepts(&self, path: &[usize]) -> bool {
        let Some((&first, rest)) = path.split_first() else {
            return false;
        };
        let mut states = self.start(first);
        for &v in rest {
            if states.is_empty() {
                return false;
            }
            states = self.step(&states, v);
        }
        states.iter().any(BoldState::accepting)
    }
}

/// Bold membership for a path of vertex labels.
pub fn bold_contains(g: &DirectedHypergraph, path: &[VertexId]) -> Result<bool> {
    let automaton = BoldAutomaton::new(g);
    let idx = path
        .iter()
        .map(|v| automaton.vertices.binary_search(v).map_err(|_| Error::UnknownVertex(v.clone())))
        .collect::<Result<Vec<_>>>()?;
    Ok(!idx.is_empty() && automaton.accepts(&idx))
}

/// Bold complex, enumerated by depth-first search over (path, state set)
/// pairs with the determinized transition cached per (state set, vertex).
pub fn bold_view(g: &DirectedHypergraph, max_length: usize) -> PathComplexView {
    let automaton = Arc::new(BoldAutomaton::new(g));
    let n = automaton.vertices.len();
    let mut cache: HashMap<(Arc<StateSet>, usize), Arc<StateSet>> = HashMap::new();
    let mut paths = Vec::new();
    let mut stack: Vec<(Vec<usize>, Arc<StateSet>)> = Vec::new();
    for v in (0..n).rev() {
        let s = automaton.start(v);
        if !s.is_empty() {
            stack.push((vec![v], Arc::new(s)));
        }
    }
    while let Some((p, states)) = stack.pop() {
        // A non-empty state set always holds an accepting state: Mid(d, _)
        // survives only where Fin(d) does.
        debug_assert!(states.iter().any(BoldState::accepting));
        if p.len() <= max_length {
            let last = *p.last().unwrap();
            for v in (0..n).rev().filter(|&v| v != last) {
                let next = cache
                    .entry((states.clone(), v))
                    .or_insert_with(|| Arc::new(automaton.step(&states, v)))
                    .clone();
                if !next.is_empty() {
                    let mut q = p.clone();
                    q.push(v);
                    stack.push((q, next));
                }
            }
        }
        paths.push(Path(p));
    }
    let oracle_automaton = automaton.clone();
    let oracle: Oracle = Arc::new(move |p: &[usize]| oracle_automaton.accepts(p));
    PathComplexView::from_paths(automaton.vertices.clone(), max_length, "bold", paths, oracle)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TheoryKind {
    Connective,
    Bold,
    Nondirected,
    Natural,
}

impl TheoryKind {
    pub const ALL: [TheoryKind; 4] = [TheoryKind::Connective, TheoryKind::Bold, TheoryKind::Nondirected, TheoryKind::Natural];

    pub fn name(&self) -> &'static str {
        match self {
            TheoryKind::Connective => "connective",
            TheoryKind::Bold => "bold",
            TheoryKind::Nondirected => "nondirected",
            TheoryKind::Natural => "natural",
        }
    }

    pub fn uses_density(&self) -> bool {
        matches!(self, TheoryKind::Connective | TheoryKind::Nondirected)
    }
}

impl fmt::Display for TheoryKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TheoryKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        TheoryKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| format!("unknown theory {s:?} (expected connective, bold, nondirected or natural)"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheorySpec {
    pub kind: TheoryKind,
    /// Density for connective and non-directed theories; ignored otherwise.
    pub density: usize,
    pub max_dim: usize,
    pub field: Field,
}

impl TheorySpec {
    pub fn new(kind: TheoryKind, density: usize, max_dim: usize, field: Field) -> Result<Self> {
        if density == 0 {
            return Err(Error::InvalidDensity);
        }
        Ok(TheorySpec {
            kind,
            density,
            max_dim,
            field,
        })
    }
}

/// Path complex of the requested theory, truncated at `max_length`.
pub fn theory_view(g: &DirectedHypergraph, kind: TheoryKind, density: usize, max_length: usize) -> Result<PathComplexView> {
    match kind {
        TheoryKind::Connective => connective_view(g, density, max_length),
        TheoryKind::Bold => Ok(bold_view(g, max_length)),
        TheoryKind::Nondirected => nondirected_view(g, density, max_length),
        TheoryKind::Natural => Ok(natural_view(g, max_length)),
    }
}

pub fn theory_betti(g: &DirectedHypergraph, spec: &TheorySpec) -> Result<BettiTable> {
    let view = theory_view(g, spec.kind, spec.density, spec.max_dim + 1)?;
    omega::betti(&view, spec.max_dim, spec.field)
}

/// Shared transition cache for callers that test many bold paths.
pub struct BoldOracle {
    automaton: BoldAutomaton,
    cache: Mutex<HashMap<(StateSet, usize), StateSet>>,
}

impl BoldOracle {
    pub fn new(g: &DirectedHypergraph) -> Self {
        BoldOracle {
            automaton: BoldAutomaton::new(g),
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn contains(&self, path: &[usize]) -> bool {
        let Some((&first, rest)) = path.split_first() else {
            return false;
        };
        let mut states = self.automaton.start(first);
        let mut cache = self.cache.lock().unwrap();
        for &v in rest {
            if states.is_empty() {
                return false;
            }
            states = cache
                .entry((states.clone(), v))
                .or_insert_with(|| self.automaton.step(&states, v))
                .clone();
        }
        states.iter().any(BoldState::accepting)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ex34() -> DirectedHypergraph {
        DirectedHypergraph::from_labels(
            &["1", "2", "3", "4"],
            &[
                (&["1"], &["2"]),
                (&["2"], &["3", "4"]),
                (&["4"], &["1"]),
                (&["1"], &["2", "3"]),
                (&["2"], &["3"]),
                (&["2"], &["4"]),
            ],
        )
        .unwrap()
    }

    fn ones(view: &PathComplexView) -> Vec<String> {
        view.allowed(1).iter().map(|p| view.labels(p).iter().map(|v| v.as_str()).collect()).collect()
    }

    fn labels(xs: &[&str]) -> Vec<VertexId> {
        xs.iter().map(|&x| x.into()).collect()
    }

    #[test]
    fn connective_densities() {
        let g = ex34();
        assert_eq!(ones(&connective_view(&g, 1, 2).unwrap()), ["12", "13", "23", "24", "41"]);
        assert_eq!(ones(&connective_view(&g, 2, 2).unwrap()), ["12", "23", "24"]);
        assert!(ones(&connective_view(&g, 3, 2).unwrap()).is_empty());
        assert!(connective_view(&g, 0, 2).is_err());
    }

    #[test]
    fn bold_membership() {
        let g = ex34();
        assert!(bold_contains(&g, &labels(&["3", "2"])).unwrap());
        assert!(!bold_contains(&g, &labels(&["1", "4"])).unwrap());
        assert!(bold_contains(&g, &labels(&["1", "2", "3", "2", "3"])).unwrap());
        assert!(bold_contains(&g, &labels(&["3", "3", "4"])).unwrap());
        assert!(matches!(bold_contains(&g, &labels(&["9"])), Err(Error::UnknownVertex(_))));
    }

    #[test]
    fn bold_one_and_two_paths() {
        let v = bold_view(&ex34(), 4);
        let mut got = ones(&v);
        got.sort();
        assert_eq!(got, ["12", "13", "23", "24", "32", "34", "41", "43"]);
        assert_eq!(v.count(2), 12);
        assert!(v.check_consistency().is_none());
    }

    #[test]
    fn nondirected_short_paths_use_whole_window() {
        let g = ex34();
        let q2 = nondirected_view(&g, 2, 2).unwrap();
        let q3 = nondirected_view(&g, 3, 2).unwrap();
        assert_eq!(ones(&q2), ones(&q3));
        let q1 = nondirected_view(&g, 1, 2).unwrap();
        assert_eq!(q1.count(1), 12);
        assert_eq!(q1.count(2), 36);
    }

    #[test]
    fn natural_single_arrow() {
        let g = DirectedHypergraph::from_labels(&["a", "b"], &[(&["a"], &["b"])]).unwrap();
        let v = natural_view(&g, 3);
        let all: Vec<String> = v.all_allowed().map(|p| v.render(p)).collect();
        assert_eq!(all, ["({a})", "({b})", "({a} {b})"]);
    }

    #[test]
    fn theory_kind_parsing() {
        assert_eq!("bold".parse::<TheoryKind>().unwrap(), TheoryKind::Bold);
        assert!("simplicial".parse::<TheoryKind>().is_err());
    }

    #[test]
    fn bold_oracle_matches_automaton() {
        let g = ex34();
        let v = bold_view(&g, 3);
        let oracle = BoldOracle::new(&g);
        for p in v.all_allowed() {
            assert!(oracle.contains(&p.0));
        }
        assert!(!oracle.contains(&[0, 3]));
    }
}
