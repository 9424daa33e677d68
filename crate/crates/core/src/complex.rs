//! Truncated path complexes.
//!
//! A [`PathComplexView`] fixes an ordered vertex list and enumerates the
//! allowed *regular* paths up to a length bound, together with a membership
//! oracle that also answers for paths containing stationary steps.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::vertex::VertexId;

/// A vertex sequence, stored as indices into a view's vertex list.
///
/// Because vertex lists are sorted by label, the derived ordering on index
/// sequences is the lexicographic order on labels.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Path(pub Vec<usize>);

impl Path {
    pub fn new(vertices: Vec<usize>) -> Self {
        assert!(!vertices.is_empty(), "paths have at least one vertex");
        Path(vertices)
    }

    /// Number of steps (one less than the number of vertices).
    pub fn length(&self) -> usize {
        self.0.len() - 1
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn is_regular(&self) -> bool {
        is_regular(&self.0)
    }
}

pub fn is_regular(vertices: &[usize]) -> bool {
    vertices.windows(2).all(|w| w[0] != w[1])
}

/// A formal integer combination of regular paths.
pub type Chain = BTreeMap<Path, i64>;

/// Alternating face sum with irregular faces dropped.
pub fn regular_boundary(p: &Path) -> Result<Chain> {
    if !p.is_regular() {
        return Err(Error::IrregularPath(format!("{:?}", p.0)));
    }
    let mut chain = Chain::new();
    if p.length() == 0 {
        return Ok(chain);
    }
    for k in 0..p.0.len() {
        let mut face = p.0.clone();
        face.remove(k);
        if !is_regular(&face) {
            continue;
        }
        let sign = if k % 2 == 0 { 1 } else { -1 };
        *chain.entry(Path(face)).or_insert(0) += sign;
    }
    chain.retain(|_, c| *c != 0);
    Ok(chain)
}

pub type Oracle = Arc<dyn Fn(&[usize]) -> bool + Send + Sync>;

/// An enumerable path complex truncated at `max_length`.
#[derive(Clone)]
pub struct PathComplexView {
    vertices: Vec<VertexId>,
    index: HashMap<VertexId, usize>,
    max_length: usize,
    allowed: Vec<Vec<Path>>,
    oracle: Oracle,
    label: String,
}

impl fmt::Debug for PathComplexView {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PathComplexView")
            .field("label", &self.label)
            .field("vertices", &self.vertices)
            .field("max_length", &self.max_length)
            .field(
                "counts",
                &self.allowed.iter().map(Vec::len).collect::<Vec<_>>(),
            )
            .finish()
    }
}

impl PathComplexView {
    /// Enumerates regular paths by one-vertex extension of allowed paths,
    /// which is complete for any family closed under dropping the last vertex.
    pub fn enumerate(
        vertices: Vec<VertexId>,
        max_length: usize,
        label: impl Into<String>,
        oracle: Oracle,
    ) -> Self {
        let vertices = sorted_unique(vertices);
        let n = vertices.len();
        let mut allowed: Vec<Vec<Path>> = Vec::with_capacity(max_length + 1);
        allowed.push((0..n).filter(|&v| oracle(&[v])).map(|v| Path(vec![v])).collect());
        let mut buf = Vec::new();
        for len in 1..=max_length {
            let mut level = Vec::new();
            for p in &allowed[len - 1] {
                let last = *p.0.last().unwrap();
                buf.clear();
                buf.extend_from_slice(&p.0);
                buf.push(0);
                for v in (0..n).filter(|&v| v != last) {
                    *buf.last_mut().unwrap() = v;
                    if oracle(&buf) {
                        level.push(Path(buf.clone()));
                    }
                }
            }
            allowed.push(level);
        }
        Self::assemble(vertices, max_length, allowed, oracle, label.into())
    }

    /// Builds a view from an explicit list of regular paths. Paths longer
    /// than `max_length` or irregular ones are ignored; duplicates merge.
    pub fn from_paths(
        vertices: Vec<VertexId>,
        max_length: usize,
        label: impl Into<String>,
        paths: impl IntoIterator<Item = Path>,
        oracle: Oracle,
    ) -> Self {
        let vertices = sorted_unique(vertices);
        let mut allowed: Vec<Vec<Path>> = vec![Vec::new(); max_length + 1];
        for p in paths {
            if p.length() <= max_length && p.is_regular() {
                allowed[p.length()].push(p);
            }
        }
        for level in allowed.iter_mut() {
            level.sort();
            level.dedup();
        }
        Self::assemble(vertices, max_length, allowed, oracle, label.into())
    }

    fn assemble(
        vertices: Vec<VertexId>,
        max_length: usize,
        allowed: Vec<Vec<Path>>,
        oracle: Oracle,
        label: String,
    ) -> Self {
        let index = vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.clone(), i))
            .collect();
        PathComplexView {
            vertices,
            index,
            max_length,
            allowed,
            oracle,
            label,
        }
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn vertex_index(&self, v: &VertexId) -> Option<usize> {
        self.index.get(v).copied()
    }

    pub fn max_length(&self) -> usize {
        self.max_length
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Allowed regular paths with `n + 1` vertices, in lexicographic order.
    /// Empty above the truncation bound.
    pub fn allowed(&self, n: usize) -> &[Path] {
        self.allowed.get(n).map_or(&[], Vec::as_slice)
    }

    pub fn all_allowed(&self) -> impl Iterator<Item = &Path> {
        self.allowed.iter().flatten()
    }

    pub fn count(&self, n: usize) -> usize {
        self.allowed(n).len()
    }

    /// Membership for arbitrary index sequences (stationary steps included).
    pub fn contains(&self, path: &[usize]) -> bool {
        !path.is_empty() && path.iter().all(|&v| v < self.vertices.len()) && (self.oracle)(path)
    }

    pub fn contains_labels(&self, path: &[VertexId]) -> bool {
        let idx: Option<Vec<usize>> = path.iter().map(|v| self.vertex_index(v)).collect();
        idx.is_some_and(|idx| self.contains(&idx))
    }

    pub fn labels(&self, p: &Path) -> Vec<VertexId> {
        p.0.iter().map(|&i| self.vertices[i].clone()).collect()
    }

    /// Human-readable path, e.g. `(1 2 3)`.
    pub fn render(&self, p: &Path) -> String {
        render_labels(&self.labels(p))
    }

    pub fn path_from_labels(&self, labels: &[&str]) -> Option<Path> {
        labels
            .iter()
            .map(|l| self.index.get(*l).copied())
            .collect::<Option<Vec<_>>>()
            .map(Path)
    }

    /// Allowed paths as label sequences, shortest first.
    pub fn labelled_paths(&self) -> Vec<Vec<VertexId>> {
        self.all_allowed().map(|p| self.labels(p)).collect()
    }

    /// Returns an enumerated path violating truncation closure or oracle
    /// agreement, if any.
    pub fn check_consistency(&self) -> Option<Path> {
        for p in self.all_allowed() {
            if !self.contains(&p.0) {
                return Some(p.clone());
            }
            if p.length() > 0 {
                let head = &p.0[..p.0.len() - 1];
                let tail = &p.0[1..];
                let found = |q: &[usize]| self.allowed(q.len() - 1).binary_search(&Path(q.to_vec())).is_ok();
                if !found(head) || !found(tail) {
                    return Some(p.clone());
                }
            }
        }
        None
    }
}

pub fn render_labels(labels: &[VertexId]) -> String {
    let parts: Vec<&str> = labels.iter().map(VertexId::as_str).collect();
    format!("({})", parts.join(" "))
}

fn sorted_unique(mut vertices: Vec<VertexId>) -> Vec<VertexId> {
    vertices.sort();
    vertices.dedup();
    vertices
}

/// The cylinder over a path complex: two copies of every allowed path plus,
/// for each allowed path and each position `k`, the path that jumps from the
/// first copy to the second at `k`.
///
/// The second copy of vertex `v` is labelled `v'`. A jump path over a source
/// path of length `n` has length `n + 1`, so only source paths up to
/// `max_length - 1` contribute jumps.
pub fn cylinder(view: &PathComplexView) -> PathComplexView {
    let mut labels: Vec<VertexId> = view.vertices().to_vec();
    labels.extend(view.vertices().iter().map(VertexId::primed));
    let mut sorted = labels.clone();
    sorted.sort();
    let pos: HashMap<&VertexId, usize> = sorted.iter().enumerate().map(|(i, v)| (v, i)).collect();
    let n = view.vertices().len();
    let lower: Vec<usize> = (0..n).map(|i| pos[&labels[i]]).collect();
    let upper: Vec<usize> = (0..n).map(|i| pos[&labels[n + i]]).collect();
    let max_length = view.max_length();

    let mut paths = Vec::new();
    for p in view.all_allowed() {
        paths.push(Path(p.0.iter().map(|&v| lower[v]).collect()));
        paths.push(Path(p.0.iter().map(|&v| upper[v]).collect()));
        if p.length() < max_length {
            for k in 0..p.0.len() {
                let mut q: Vec<usize> = p.0[..=k].iter().map(|&v| lower[v]).collect();
                q.extend(p.0[k..].iter().map(|&v| upper[v]));
                paths.push(Path(q));
            }
        }
    }

    // Oracle: decode each vertex to (base index, layer) and require at most one
    // layer change, which must be a jump v -> v'.
    let size = sorted.len();
    let mut decode = vec![(0usize, false); size];
    for i in 0..n {
        decode[lower[i]] = (i, false);
        decode[upper[i]] = (i, true);
    }
    let base = view.clone();
    let oracle: Oracle = Arc::new(move |path: &[usize]| {
        let dec: Vec<(usize, bool)> = path.iter().map(|&v| decode[v]).collect();
        let switch = dec.iter().position(|&(_, up)| up).unwrap_or(dec.len());
        if dec[switch..].iter().any(|&(_, up)| !up) {
            return false;
        }
        let verts: Vec<usize> = dec.iter().map(|&(b, _)| b).collect();
        if switch == 0 || switch == dec.len() {
            return base.contains(&verts);
        }
        if verts[switch - 1] != verts[switch] {
            return false;
        }
        let mut q = verts[..switch].to_vec();
        q.extend_from_slice(&verts[switch + 1..]);
        base.contains(&q)
    });
    PathComplexView::from_paths(sorted, max_length, format!("cylinder[{}]", view.label()), paths, oracle)
}

/// A vertex map between path complexes that sends allowed paths to allowed
/// paths.
#[derive(Debug, Clone)]
pub struct PCMorphism<'a> {
    pub source: &'a PathComplexView,
    pub target: &'a PathComplexView,
    /// Source vertex index -> target vertex index.
    pub vertex_map: Vec<usize>,
}

/// Outcome of a path-complex morphism check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathViolation {
    pub path: Vec<VertexId>,
    pub image: Vec<VertexId>,
}

impl fmt::Display for PathViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "path {} maps to {}, which is not allowed",
            render_labels(&self.path),
            render_labels(&self.image)
        )
    }
}

/// Checks that `vertex_map` induces a morphism `source -> target`.
///
/// Paths are checked shortest first, so a reported violation is a shortest
/// offending path. Images with repeated consecutive vertices are checked as-is
/// against the target's oracle.
pub fn check_pc_morphism<'a>(
    source: &'a PathComplexView,
    target: &'a PathComplexView,
    vertex_map: &BTreeMap<VertexId, VertexId>,
) -> Result<std::result::Result<PCMorphism<'a>, PathViolation>> {
    let mut map = Vec::with_capacity(source.vertices().len());
    for v in source.vertices() {
        let image = vertex_map.get(v).ok_or_else(|| Error::NotTotal(v.clone()))?;
        let idx = target.vertex_index(image).ok_or_else(|| Error::ImageOutsideTarget {
            vertex: v.clone(),
            image: image.clone(),
        })?;
        map.push(idx);
    }
    let depth = source.max_length().min(target.max_length());
    for n in 0..=depth {
        for p in source.allowed(n) {
            let image: Vec<usize> = p.0.iter().map(|&v| map[v]).collect();
            if !target.contains(&image) {
                return Ok(Err(PathViolation {
                    path: source.labels(p),
                    image: image.iter().map(|&i| target.vertices()[i].clone()).collect(),
                }));
            }
        }
    }
    Ok(Ok(PCMorphism {
        source,
        target,
        vertex_map: map,
    }))
}
