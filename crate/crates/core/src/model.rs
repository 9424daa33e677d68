//! Directed hypergraphs, hypergraphs and digraphs, with the constructions
//! relating them: the underlying digraph, the union hypergraph, the natural
//! digraph on origins and ends, box products and the hypergraph product.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::vertex::{format_set, subset_label, VertexId, VertexSet};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Arrow {
    pub origin: VertexSet,
    pub end: VertexSet,
}

impl Arrow {
    pub fn new(origin: VertexSet, end: VertexSet) -> Self {
        Arrow { origin, end }
    }
}

impl fmt::Display for Arrow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}->{}", format_set(&self.origin), format_set(&self.end))
    }
}

/// A structural problem found by [`DirectedHypergraph::validate`] or the
/// other model validators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    EmptyVertexSet,
    EmptyOrigin { arrow: usize },
    EmptyEnd { arrow: usize },
    NotDisjoint { arrow: usize, shared: Vec<VertexId> },
    DuplicateArrow { first: usize, second: usize },
    UnknownVertex { arrow: usize, vertex: VertexId },
    Uncovered { vertex: VertexId },
    Loop { vertex: VertexId },
    EmptyEdge { edge: usize },
    SingletonEdge { edge: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::EmptyVertexSet => write!(f, "vertices must be non-empty"),
            Violation::EmptyOrigin { arrow } => write!(f, "arrow {arrow}: origin must be non-empty"),
            Violation::EmptyEnd { arrow } => write!(f, "arrow {arrow}: end must be non-empty"),
            Violation::NotDisjoint { arrow, shared } => {
                let names: Vec<&str> = shared.iter().map(VertexId::as_str).collect();
                write!(f, "arrow {arrow}: origin and end share {}", names.join(", "))
            }
            Violation::DuplicateArrow { first, second } => {
                write!(f, "arrow {second} duplicates arrow {first}")
            }
            Violation::UnknownVertex { arrow, vertex } => {
                write!(f, "arrow {arrow}: vertex {vertex} is not in the vertex set")
            }
            Violation::Uncovered { vertex } => {
                write!(f, "vertex {vertex} is not covered by any arrow")
            }
            Violation::Loop { vertex } => write!(f, "loop at vertex {vertex}"),
            Violation::EmptyEdge { edge } => write!(f, "edge {edge} is empty"),
            Violation::SingletonEdge { edge } => {
                write!(f, "edge {edge} has a single element (strict mode)")
            }
        }
    }
}

/// Vertex set plus arrows, each an ordered pair of disjoint non-empty vertex
/// subsets. The arrow list keeps input order; equality of arrows is equality
/// of set pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectedHypergraph {
    vertices: VertexSet,
    arrows: Vec<Arrow>,
}

impl DirectedHypergraph {
    /// Validated constructor.
    pub fn new(vertices: VertexSet, arrows: Vec<Arrow>) -> Result<Self> {
        let g = Self::unchecked(vertices, arrows);
        let violations = g.validate();
        if violations.is_empty() {
            Ok(g)
        } else {
            Err(Error::Validation(violations))
        }
    }

    pub fn unchecked(vertices: VertexSet, arrows: Vec<Arrow>) -> Self {
        DirectedHypergraph { vertices, arrows }
    }

    /// Convenience constructor from label lists.
    pub fn from_labels(vertices: &[&str], arrows: &[(&[&str], &[&str])]) -> Result<Self> {
        let vertices = vertices.iter().map(|&v| VertexId::from(v)).collect();
        let arrows = arrows
            .iter()
            .map(|(a, b)| {
                Arrow::new(
                    a.iter().map(|&v| VertexId::from(v)).collect(),
                    b.iter().map(|&v| VertexId::from(v)).collect(),
                )
            })
            .collect();
        Self::new(vertices, arrows)
    }

    pub fn vertices(&self) -> &VertexSet {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    /// All structural violations, in a fixed order: vertex set, then per
    /// arrow, then duplicates, then cover.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        if self.vertices.is_empty() {
            out.push(Violation::EmptyVertexSet);
        }
        for (i, a) in self.arrows.iter().enumerate() {
            if a.origin.is_empty() {
                out.push(Violation::EmptyOrigin { arrow: i });
            }
            if a.end.is_empty() {
                out.push(Violation::EmptyEnd { arrow: i });
            }
            let shared: Vec<VertexId> = a.origin.intersection(&a.end).cloned().collect();
            if !shared.is_empty() {
                out.push(Violation::NotDisjoint { arrow: i, shared });
            }
            for v in a.origin.iter().chain(&a.end) {
                if !self.vertices.contains(v) {
                    out.push(Violation::UnknownVertex {
                        arrow: i,
                        vertex: v.clone(),
                    });
                }
            }
        }
        let mut seen: HashMap<&Arrow, usize> = HashMap::new();
        for (i, a) in self.arrows.iter().enumerate() {
            if let Some(&first) = seen.get(a) {
                out.push(Violation::DuplicateArrow { first, second: i });
            } else {
                seen.insert(a, i);
            }
        }
        let covered: BTreeSet<&VertexId> = self.arrows.iter().flat_map(|a| a.origin.iter().chain(&a.end)).collect();
        for v in &self.vertices {
            if !covered.contains(v) {
                out.push(Violation::Uncovered { vertex: v.clone() });
            }
        }
        out
    }

    pub fn arrow_index(&self, arrow: &Arrow) -> Option<usize> {
        self.arrows.iter().position(|a| a == arrow)
    }

    /// Origins, ends and their union.
    pub fn p_sets(&self) -> PSets {
        let origins: BTreeSet<VertexSet> = self.arrows.iter().map(|a| a.origin.clone()).collect();
        let ends: BTreeSet<VertexSet> = self.arrows.iter().map(|a| a.end.clone()).collect();
        let all = origins.union(&ends).cloned().collect();
        PSets { origins, ends, all }
    }

    /// Digraph with `v -> w` whenever some arrow has `v` in its origin and
    /// `w` in its end.
    pub fn gamma(&self) -> Digraph {
        self.thresholded_digraph(1)
    }

    /// Digraph with `v -> w` whenever at least `c` distinct arrows have `v`
    /// in the origin and `w` in the end.
    pub fn thresholded_digraph(&self, c: usize) -> Digraph {
        let mut count: BTreeMap<(VertexId, VertexId), usize> = BTreeMap::new();
        for a in &self.arrows {
            for v in &a.origin {
                for w in &a.end {
                    *count.entry((v.clone(), w.clone())).or_insert(0) += 1;
                }
            }
        }
        Digraph {
            vertices: self.vertices.clone(),
            arrows: count.into_iter().filter(|&(_, k)| k >= c).map(|(e, _)| e).collect(),
        }
    }

    /// Hypergraph whose edges are the unions `origin ∪ end`.
    pub fn epsilon(&self) -> Hypergraph {
        Hypergraph {
            vertices: self.vertices.clone(),
            edges: self.arrows.iter().map(|a| a.origin.union(&a.end).cloned().collect()).collect(),
            strict: false,
        }
    }

    /// Digraph on the origins and ends, one arrow per arrow of `self`.
    pub fn natural(&self) -> NaturalDigraph {
        let subsets: BTreeMap<VertexId, VertexSet> = self.p_sets().all.into_iter().map(|s| (subset_label(&s), s)).collect();
        let arrows = self
            .arrows
            .iter()
            .map(|a| (subset_label(&a.origin), subset_label(&a.end)))
            .collect();
        NaturalDigraph {
            digraph: Digraph {
                vertices: subsets.keys().cloned().collect(),
                arrows,
            },
            subsets,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PSets {
    pub origins: BTreeSet<VertexSet>,
    pub ends: BTreeSet<VertexSet>,
    pub all: BTreeSet<VertexSet>,
}

/// The natural digraph together with the subset each vertex stands for.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NaturalDigraph {
    pub digraph: Digraph,
    pub subsets: BTreeMap<VertexId, VertexSet>,
}

/// Hypergraph with set semantics on edges. In strict mode every edge must
/// have at least two elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypergraph {
    pub vertices: VertexSet,
    pub edges: BTreeSet<VertexSet>,
    pub strict: bool,
}

impl Hypergraph {
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        if self.vertices.is_empty() {
            out.push(Violation::EmptyVertexSet);
        }
        for (i, e) in self.edges.iter().enumerate() {
            if e.is_empty() {
                out.push(Violation::EmptyEdge { edge: i });
            } else if self.strict && e.len() < 2 {
                out.push(Violation::SingletonEdge { edge: i });
            }
            for v in e {
                if !self.vertices.contains(v) {
                    out.push(Violation::UnknownVertex {
                        arrow: i,
                        vertex: v.clone(),
                    });
                }
            }
        }
        let covered: BTreeSet<&VertexId> = self.edges.iter().flatten().collect();
        for v in &self.vertices {
            if !covered.contains(v) {
                out.push(Violation::Uncovered { vertex: v.clone() });
            }
        }
        out
    }

    /// Edges not strictly contained in another edge.
    pub fn maximal_edges(&self) -> Vec<&VertexSet> {
        self.edges
            .iter()
            .filter(|e| !self.edges.iter().any(|f| f.len() > e.len() && e.is_subset(f)))
            .collect()
    }
}

/// Largest edge product the hypergraph product will expand (subsets of an
/// `a x b` grid are enumerated, so `a * b` is bounded by this).
pub const PRODUCT_LIMIT: usize = 20;

/// Hypergraph product: vertices `V_X x V_Y` labelled `x|y`; edges are all
/// subsets whose projections are an edge of `X` and an edge of `Y`.
pub fn hypergraph_product(x: &Hypergraph, y: &Hypergraph) -> Result<Hypergraph> {
    let vertices: VertexSet = x.vertices.iter().flat_map(|a| y.vertices.iter().map(move |b| a.pair(b))).collect();
    let mut edges = BTreeSet::new();
    for ex in &x.edges {
        for ey in &y.edges {
            let size = ex.len() * ey.len();
            if size > PRODUCT_LIMIT {
                return Err(Error::ProductTooLarge {
                    size,
                    limit: PRODUCT_LIMIT,
                });
            }
            let cells: Vec<(usize, usize)> = (0..ex.len()).flat_map(|i| (0..ey.len()).map(move |j| (i, j))).collect();
            let xs: Vec<&VertexId> = ex.iter().collect();
            let ys: Vec<&VertexId> = ey.iter().collect();
            let full_x = (1u64 << ex.len()) - 1;
            let full_y = (1u64 << ey.len()) - 1;
            for mask in 1u64..(1u64 << size) {
                let (mut px, mut py) = (0u64, 0u64);
                for (k, &(i, j)) in cells.iter().enumerate() {
                    if mask >> k & 1 == 1 {
                        px |= 1 << i;
                        py |= 1 << j;
                    }
                }
                if px == full_x && py == full_y {
                    let edge: VertexSet = cells
                        .iter()
                        .enumerate()
                        .filter(|(k, _)| mask >> k & 1 == 1)
                        .map(|(_, &(i, j))| xs[i].pair(ys[j]))
                        .collect();
                    edges.insert(edge);
                }
            }
        }
    }
    Ok(Hypergraph {
        vertices,
        edges,
        strict: false,
    })
}

/// Loop-free digraph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Digraph {
    vertices: VertexSet,
    arrows: BTreeSet<(VertexId, VertexId)>,
}

impl Digraph {
    pub fn new(vertices: VertexSet, arrows: BTreeSet<(VertexId, VertexId)>) -> Result<Self> {
        let mut violations = Vec::new();
        if vertices.is_empty() {
            violations.push(Violation::EmptyVertexSet);
        }
        for (i, (v, w)) in arrows.iter().enumerate() {
            if v == w {
                violations.push(Violation::Loop { vertex: v.clone() });
            }
            for x in [v, w] {
                if !vertices.contains(x) {
                    violations.push(Violation::UnknownVertex {
                        arrow: i,
                        vertex: x.clone(),
                    });
                }
            }
        }
        if violations.is_empty() {
            Ok(Digraph { vertices, arrows })
        } else {
            Err(Error::Validation(violations))
        }
    }

    pub fn from_labels(vertices: &[&str], arrows: &[(&str, &str)]) -> Result<Self> {
        Self::new(
            vertices.iter().map(|&v| VertexId::from(v)).collect(),
            arrows.iter().map(|&(a, b)| (VertexId::from(a), VertexId::from(b))).collect(),
        )
    }

    pub fn vertices(&self) -> &VertexSet {
        &self.vertices
    }

    pub fn arrows(&self) -> &BTreeSet<(VertexId, VertexId)> {
        &self.arrows
    }

    pub fn has_arrow(&self, v: &VertexId, w: &VertexId) -> bool {
        self.arrows.contains(&(v.clone(), w.clone()))
    }

    /// Number of connected components of the underlying undirected graph.
    pub fn component_count(&self) -> usize {
        let index: HashMap<&VertexId, usize> = self.vertices.iter().enumerate().map(|(i, v)| (v, i)).collect();
        let mut adj = vec![Vec::new(); self.vertices.len()];
        for (v, w) in &self.arrows {
            adj[index[v]].push(index[w]);
            adj[index[w]].push(index[v]);
        }
        let mut seen = vec![false; adj.len()];
        let mut components = 0;
        for s in 0..adj.len() {
            if seen[s] {
                continue;
            }
            components += 1;
            let mut stack = vec![s];
            seen[s] = true;
            while let Some(u) = stack.pop() {
                for &x in &adj[u] {
                    if !seen[x] {
                        seen[x] = true;
                        stack.push(x);
                    }
                }
            }
        }
        components
    }

    /// The directed hypergraph with one arrow `{v} -> {w}` per arrow.
    /// Fails on isolated vertices, which no arrow would cover.
    pub fn to_hypergraph(&self) -> Result<DirectedHypergraph> {
        let arrows = self
            .arrows
            .iter()
            .map(|(v, w)| Arrow::new(BTreeSet::from([v.clone()]), BTreeSet::from([w.clone()])))
            .collect();
        DirectedHypergraph::new(self.vertices.clone(), arrows)
    }

    /// Cartesian product of digraphs with vertices `v|i`.
    pub fn box_product(&self, other: &Digraph) -> Digraph {
        let vertices = self.vertices.iter().flat_map(|v| other.vertices.iter().map(move |i| v.pair(i))).collect();
        let mut arrows = BTreeSet::new();
        for (v, w) in &self.arrows {
            for i in &other.vertices {
                arrows.insert((v.pair(i), w.pair(i)));
            }
        }
        for (i, j) in &other.arrows {
            for v in &self.vertices {
                arrows.insert((v.pair(i), v.pair(j)));
            }
        }
        Digraph { vertices, arrows }
    }

    /// Image of the digraph under a vertex relabelling.
    pub fn relabel(&self, map: &BTreeMap<VertexId, VertexId>) -> Digraph {
        let f = |v: &VertexId| map.get(v).cloned().unwrap_or_else(|| v.clone());
        Digraph {
            vertices: self.vertices.iter().map(f).collect(),
            arrows: self.arrows.iter().map(|(v, w)| (f(v), f(w))).collect(),
        }
    }
}

/// Box product of a directed hypergraph with a connected digraph.
///
/// Arrows: `A×{i} -> B×{i}` for each arrow `A -> B` and each non-isolated
/// `i`, then `C×{i} -> C×{j}` for each digraph arrow `i -> j` and each
/// origin-or-end `C`.
pub fn box_product(g: &DirectedHypergraph, d: &Digraph) -> Result<DirectedHypergraph> {
    if d.arrows().is_empty() || d.component_count() != 1 {
        return Err(Error::Disconnected);
    }
    let factor = d.to_hypergraph()?;
    box_product_hypergraphs(g, &factor)
}

/// Box product of two directed hypergraphs, vertices labelled `v|w`.
pub fn box_product_hypergraphs(g: &DirectedHypergraph, h: &DirectedHypergraph) -> Result<DirectedHypergraph> {
    let times = |a: &VertexSet, c: &VertexSet| -> VertexSet { a.iter().flat_map(|v| c.iter().map(move |i| v.pair(i))).collect() };
    let vertices: VertexSet = g.vertices().iter().flat_map(|v| h.vertices().iter().map(move |i| v.pair(i))).collect();
    let mut arrows = Vec::new();
    let h_sets = h.p_sets().all;
    let g_sets = g.p_sets().all;
    for a in g.arrows() {
        for c in &h_sets {
            arrows.push(Arrow::new(times(&a.origin, c), times(&a.end, c)));
        }
    }
    for b in h.arrows() {
        for a in &g_sets {
            arrows.push(Arrow::new(times(a, &b.origin), times(a, &b.end)));
        }
    }
    DirectedHypergraph::new(vertices, arrows)
}

/// A morphism of directed hypergraphs: a vertex map sending every arrow to
/// an arrow, with the induced arrow map recorded.
#[derive(Debug, Clone)]
pub struct DHMorphism {
    pub source: Arc<DirectedHypergraph>,
    pub target: Arc<DirectedHypergraph>,
    pub vertex_map: BTreeMap<VertexId, VertexId>,
    /// Source arrow index -> target arrow index.
    pub edge_map: Vec<usize>,
}

impl PartialEq for DHMorphism {
    fn eq(&self, other: &Self) -> bool {
        self.vertex_map == other.vertex_map && self.source == other.source && self.target == other.target
    }
}

impl Eq for DHMorphism {}

impl DHMorphism {
    pub fn apply(&self, v: &VertexId) -> &VertexId {
        &self.vertex_map[v]
    }

    pub fn image_set(&self, s: &VertexSet) -> VertexSet {
        s.iter().map(|v| self.vertex_map[v].clone()).collect()
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &DHMorphism) -> Result<DHMorphism> {
        if self.target != other.source {
            return Err(Error::MismatchedMorphisms);
        }
        let map = self
            .vertex_map
            .iter()
            .map(|(v, w)| (v.clone(), other.vertex_map[w].clone()))
            .collect();
        check_dh_morphism(self.source.clone(), other.target.clone(), &map)
    }

    /// Vertex map on the natural digraphs: each origin-or-end maps to its image set.
    pub fn natural_map(&self) -> BTreeMap<VertexId, VertexId> {
        self.source
            .p_sets()
            .all
            .iter()
            .map(|s| (subset_label(s), subset_label(&self.image_set(s))))
            .collect()
    }

    pub fn identity(g: Arc<DirectedHypergraph>) -> DHMorphism {
        let map = g.vertices().iter().map(|v| (v.clone(), v.clone())).collect();
        DHMorphism {
            edge_map: (0..g.arrows().len()).collect(),
            source: g.clone(),
            target: g,
            vertex_map: map,
        }
    }
}

/// Checks the morphism condition arrow by arrow, reporting the first arrow
/// whose image is not an arrow of `h`.
pub fn check_dh_morphism(
    g: Arc<DirectedHypergraph>,
    h: Arc<DirectedHypergraph>,
    vertex_map: &BTreeMap<VertexId, VertexId>,
) -> Result<DHMorphism> {
    let mut map = BTreeMap::new();
    for v in g.vertices() {
        let w = vertex_map.get(v).ok_or_else(|| Error::NotTotal(v.clone()))?;
        if !h.vertices().contains(w) {
            return Err(Error::ImageOutsideTarget {
                vertex: v.clone(),
                image: w.clone(),
            });
        }
        map.insert(v.clone(), w.clone());
    }
    let lookup: HashMap<&Arrow, usize> = h.arrows().iter().enumerate().map(|(i, a)| (a, i)).collect();
    let mut edge_map = Vec::with_capacity(g.arrows().len());
    for (i, a) in g.arrows().iter().enumerate() {
        let image = Arrow::new(
            a.origin.iter().map(|v| map[v].clone()).collect(),
            a.end.iter().map(|v| map[v].clone()).collect(),
        );
        match lookup.get(&image) {
            Some(&j) => edge_map.push(j),
            None => {
                return Err(Error::ArrowNotPreserved {
                    index: i,
                    arrow: a.to_string(),
                    image: image.to_string(),
                })
            }
        }
    }
    Ok(DHMorphism {
        source: g,
        target: h,
        vertex_map: map,
        edge_map,
    })
}

/// Checks that a vertex map carries every arrow of one digraph to an arrow of
/// another (or collapses it to a vertex). Returns the first offending arrow.
pub fn digraph_map_violation(
    source: &Digraph,
    target: &Digraph,
    map: &BTreeMap<VertexId, VertexId>,
) -> Option<(VertexId, VertexId)> {
    source
        .arrows()
        .iter()
        .find(|(v, w)| {
            let (a, b) = (&map[v], &map[w]);
            a != b && !target.has_arrow(a, b)
        })
        .cloned()
}

/// Checks that a vertex map carries every edge of one hypergraph into an
/// edge of another. Returns the first offending edge.
pub fn hypergraph_map_violation(
    source: &Hypergraph,
    target: &Hypergraph,
    map: &BTreeMap<VertexId, VertexId>,
) -> Option<VertexSet> {
    let edges: HashSet<&VertexSet> = target.edges.iter().collect();
    source
        .edges
        .iter()
        .find(|e| {
            let image: VertexSet = e.iter().map(|v| map[v].clone()).collect();
            !edges.contains(&image)
        })
        .cloned()
}
