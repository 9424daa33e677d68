//! Homotopy of directed hypergraph morphisms.
//!
//! Two morphisms `f0, f1: G -> H` are one-step homotopic when the forced map
//! `(v, i) ↦ f_i(v)` on `G □ I₁` is a morphism for one of the two
//! orientations of `I₁`. Homotopy is the reflexive-transitive closure of that
//! relation, searched breadth-first over all morphisms `G -> H`.
//!
//! A morphism is never one-step homotopic to itself: the crossing arrow
//! `C×{0} -> C×{1}` would need an arrow `f(C) -> f(C)`, and origins and ends
//! are disjoint. Reflexivity comes from zero-step chains instead.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{box_product, check_dh_morphism, Arrow, DHMorphism, Digraph, DirectedHypergraph};
use crate::vertex::{VertexId, VertexSet};

/// Default bound on candidate vertex maps `|V_H|^|V_G|`.
pub const DEFAULT_CAP: u128 = 1_000_000;

/// Oriented path digraph on `0..=n`; `true` at position `i` means `i -> i+1`.
pub fn line_digraph(orientations: &[bool]) -> Digraph {
    let vertices = (0..=orientations.len()).map(|i| VertexId::new(i.to_string())).collect();
    let arrows = orientations
        .iter()
        .enumerate()
        .map(|(i, &forward)| {
            let (a, b) = (VertexId::new(i.to_string()), VertexId::new((i + 1).to_string()));
            if forward {
                (a, b)
            } else {
                (b, a)
            }
        })
        .collect();
    Digraph::new(vertices, arrows).expect("line digraph is loop-free")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Orientation {
    /// `0 -> 1`
    Forward,
    /// `1 -> 0`
    Backward,
}

impl Orientation {
    pub const BOTH: [Orientation; 2] = [Orientation::Forward, Orientation::Backward];

    pub fn line(self) -> Digraph {
        line_digraph(&[self == Orientation::Forward])
    }

    pub fn reversed(self) -> Orientation {
        match self {
            Orientation::Forward => Orientation::Backward,
            Orientation::Backward => Orientation::Forward,
        }
    }
}

impl fmt::Display for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Orientation::Forward => "0->1",
            Orientation::Backward => "1->0",
        })
    }
}

/// One verified move `from ≃₁ to`.
#[derive(Debug, Clone)]
pub struct HomotopyStep {
    pub from: DHMorphism,
    pub to: DHMorphism,
    pub orientation: Orientation,
    /// The morphism `G □ I₁ -> H` restricting to `from` and `to`.
    pub cylinder_map: DHMorphism,
}

/// A chain of one-step homotopies starting at `start`.
#[derive(Debug, Clone)]
pub struct HomotopyWitness {
    pub start: DHMorphism,
    pub steps: Vec<HomotopyStep>,
}

impl HomotopyWitness {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn end(&self) -> &DHMorphism {
        self.steps.last().map_or(&self.start, |s| &s.to)
    }
}

fn same_ends(f: &DHMorphism, g: &DHMorphism) -> bool {
    (Arc::ptr_eq(&f.source, &g.source) || f.source == g.source)
        && (Arc::ptr_eq(&f.target, &g.target) || f.target == g.target)
}

/// Fast test of the crossing family: every `C ∈ P₀₁(G)` needs the arrow
/// `f0(C) -> f1(C)` (forward) or `f1(C) -> f0(C)` (backward) in `H`. The two
/// layer families hold because `f0` and `f1` are morphisms.
struct CrossingTest {
    sets: Vec<VertexSet>,
    arrows: BTreeSet<(VertexSet, VertexSet)>,
}

impl CrossingTest {
    fn new(g: &DirectedHypergraph, h: &DirectedHypergraph) -> Self {
        CrossingTest {
            sets: g.p_sets().all.into_iter().collect(),
            arrows: h.arrows().iter().map(|a| (a.origin.clone(), a.end.clone())).collect(),
        }
    }

    fn holds(&self, f0: &BTreeMap<VertexId, VertexId>, f1: &BTreeMap<VertexId, VertexId>, o: Orientation) -> bool {
        let image = |f: &BTreeMap<VertexId, VertexId>, c: &VertexSet| -> VertexSet { c.iter().map(|v| f[v].clone()).collect() };
        self.sets.iter().all(|c| {
            let (a, b) = (image(f0, c), image(f1, c));
            let pair = match o {
                Orientation::Forward => (a, b),
                Orientation::Backward => (b, a),
            };
            self.arrows.contains(&pair)
        })
    }
}

/// Builds `G □ I₁` and checks the forced vertex map end to end.
fn cylinder_morphism(f0: &DHMorphism, f1: &DHMorphism, o: Orientation) -> Result<Option<DHMorphism>> {
    let product = Arc::new(box_product(&f0.source, &o.line())?);
    let (zero, one) = (VertexId::new("0"), VertexId::new("1"));
    let mut map = BTreeMap::new();
    for v in f0.source.vertices() {
        map.insert(v.pair(&zero), f0.apply(v).clone());
        map.insert(v.pair(&one), f1.apply(v).clone());
    }
    match check_dh_morphism(product, f0.target.clone(), &map) {
        Ok(m) => Ok(Some(m)),
        Err(Error::ArrowNotPreserved { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Tries both orientations of `I₁`, forward first, and returns the first
/// verified step.
pub fn one_step_homotopic(f0: &DHMorphism, f1: &DHMorphism) -> Result<Option<HomotopyStep>> {
    if !same_ends(f0, f1) {
        return Err(Error::MismatchedMorphisms);
    }
    for o in Orientation::BOTH {
        if let Some(cylinder_map) = cylinder_morphism(f0, f1, o)? {
            return Ok(Some(HomotopyStep {
                from: f0.clone(),
                to: f1.clone(),
                orientation: o,
                cylinder_map,
            }));
        }
    }
    Ok(None)
}

fn candidate_count(g: &DirectedHypergraph, h: &DirectedHypergraph) -> u128 {
    let base = h.vertices().len() as u128;
    let mut count: u128 = 1;
    for _ in 0..g.vertices().len() {
        count = count.saturating_mul(base);
    }
    count
}

/// All morphisms `G -> H`, ordered lexicographically by vertex map.
///
/// Refuses when `|V_H|^|V_G|` exceeds `cap`; there is no silent truncation.
pub fn enumerate_morphisms(g: &Arc<DirectedHypergraph>, h: &Arc<DirectedHypergraph>, cap: u128) -> Result<Vec<DHMorphism>> {
    let count = candidate_count(g, h);
    if count > cap {
        return Err(Error::CapExceeded { count, cap });
    }
    let sources: Vec<&VertexId> = g.vertices().iter().collect();
    let targets: Vec<&VertexId> = h.vertices().iter().collect();
    let position: HashMap<&VertexId, usize> = sources.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let target_arrows: BTreeSet<&Arrow> = h.arrows().iter().collect();
    // Arrows become checkable once their last vertex (in source order) is assigned.
    let mut ready: Vec<Vec<&Arrow>> = vec![Vec::new(); sources.len()];
    for a in g.arrows() {
        let last = a.origin.iter().chain(&a.end).map(|v| position[v]).max().unwrap();
        ready[last].push(a);
    }

    let mut out = Vec::new();
    let mut assignment: Vec<usize> = Vec::with_capacity(sources.len());
    fn image(a: &VertexSet, pos: &HashMap<&VertexId, usize>, asg: &[usize], targets: &[&VertexId]) -> VertexSet {
        a.iter().map(|v| targets[asg[pos[v]]].clone()).collect()
    }
    /// Sources, targets, source positions, arrows ready per depth, target arrows.
    type Context<'a> = (Vec<&'a VertexId>, Vec<&'a VertexId>, HashMap<&'a VertexId, usize>, Vec<Vec<&'a Arrow>>, BTreeSet<&'a Arrow>);
    fn go(
        depth: usize,
        assignment: &mut Vec<usize>,
        ctx: &Context<'_>,
        found: &mut Vec<BTreeMap<VertexId, VertexId>>,
    ) {
        let (sources, targets, position, ready, target_arrows) = ctx;
        if depth == sources.len() {
            found.push(
                sources
                    .iter()
                    .zip(assignment.iter())
                    .map(|(&v, &i)| (v.clone(), targets[i].clone()))
                    .collect(),
            );
            return;
        }
        for t in 0..targets.len() {
            assignment.push(t);
            let ok = ready[depth].iter().all(|a| {
                let im = Arrow::new(
                    image(&a.origin, position, assignment, targets),
                    image(&a.end, position, assignment, targets),
                );
                target_arrows.contains(&im)
            });
            if ok {
                go(depth + 1, assignment, ctx, found);
            }
            assignment.pop();
        }
    }
    let ctx = (sources, targets, position, ready, target_arrows);
    let mut maps = Vec::new();
    go(0, &mut assignment, &ctx, &mut maps);
    for map in maps {
        out.push(check_dh_morphism(g.clone(), h.clone(), &map)?);
    }
    Ok(out)
}

/// The one-step graph on an enumerated morphism space: for each morphism,
/// the sorted indices of morphisms one step away, with the orientation used.
pub fn one_step_graph(morphisms: &[DHMorphism]) -> Vec<Vec<(usize, Orientation)>> {
    let Some(first) = morphisms.first() else {
        return Vec::new();
    };
    let test = CrossingTest::new(&first.source, &first.target);
    morphisms
        .iter()
        .map(|f| {
            morphisms
                .iter()
                .enumerate()
                .filter_map(|(j, g)| {
                    Orientation::BOTH
                        .into_iter()
                        .find(|&o| test.holds(&f.vertex_map, &g.vertex_map, o))
                        .map(|o| (j, o))
                })
                .collect()
        })
        .collect()
}

/// Connected components of the one-step graph; `components[i]` is the
/// smallest morphism index in the class of morphism `i`.
pub fn homotopy_classes(graph: &[Vec<(usize, Orientation)>]) -> Vec<usize> {
    let mut class = vec![usize::MAX; graph.len()];
    for s in 0..graph.len() {
        if class[s] != usize::MAX {
            continue;
        }
        class[s] = s;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &(v, _) in &graph[u] {
                if class[v] == usize::MAX {
                    class[v] = s;
                    queue.push_back(v);
                }
            }
        }
    }
    class
}

/// Breadth-first search for a chain `f ≃₁ … ≃₁ g` of at most `max_steps`
/// moves. `None` means none within the bound, not a proof of non-homotopy.
pub fn homotopic(f: &DHMorphism, g: &DHMorphism, max_steps: usize, cap: u128) -> Result<Option<HomotopyWitness>> {
    if !same_ends(f, g) {
        return Err(Error::MismatchedMorphisms);
    }
    if f.vertex_map == g.vertex_map {
        return Ok(Some(HomotopyWitness {
            start: f.clone(),
            steps: Vec::new(),
        }));
    }
    let morphisms = enumerate_morphisms(&f.source, &f.target, cap)?;
    let find = |m: &DHMorphism| morphisms.iter().position(|x| x.vertex_map == m.vertex_map);
    let (Some(s), Some(t)) = (find(f), find(g)) else {
        return Ok(None);
    };
    let test = CrossingTest::new(&f.source, &f.target);
    let mut parent: Vec<Option<usize>> = vec![None; morphisms.len()];
    let mut depth = vec![usize::MAX; morphisms.len()];
    depth[s] = 0;
    let mut queue = VecDeque::from([s]);
    while let Some(u) = queue.pop_front() {
        if u == t || depth[u] == max_steps {
            continue;
        }
        for v in 0..morphisms.len() {
            if depth[v] != usize::MAX {
                continue;
            }
            let linked = Orientation::BOTH
                .into_iter()
                .any(|o| test.holds(&morphisms[u].vertex_map, &morphisms[v].vertex_map, o));
            if linked {
                depth[v] = depth[u] + 1;
                parent[v] = Some(u);
                queue.push_back(v);
            }
        }
    }
    if depth[t] == usize::MAX {
        return Ok(None);
    }
    let mut chain = vec![t];
    while let Some(p) = parent[*chain.last().unwrap()] {
        chain.push(p);
    }
    chain.reverse();
    let mut steps = Vec::with_capacity(chain.len() - 1);
    for w in chain.windows(2) {
        // Re-validate each step on the materialized box product.
        let step = one_step_homotopic(&morphisms[w[0]], &morphisms[w[1]])?
            .expect("crossing test and box-product check agree");
        steps.push(step);
    }
    Ok(Some(HomotopyWitness {
        start: f.clone(),
        steps,
    }))
}

/// A homotopy equivalence `f: G -> H`, `g: H -> G` with witnesses for
/// `g∘f ≃ id_G` and `f∘g ≃ id_H`.
#[derive(Debug, Clone)]
pub struct Equivalence {
    pub forward: DHMorphism,
    pub backward: DHMorphism,
    pub source_witness: HomotopyWitness,
    pub target_witness: HomotopyWitness,
}

/// Exhaustive search over morphism pairs, in lexicographic order.
pub fn homotopy_equivalent(
    g: &Arc<DirectedHypergraph>,
    h: &Arc<DirectedHypergraph>,
    max_steps: usize,
    cap: u128,
) -> Result<Option<Equivalence>> {
    let forward = enumerate_morphisms(g, h, cap)?;
    let backward = enumerate_morphisms(h, g, cap)?;
    if forward.is_empty() || backward.is_empty() {
        return Ok(None);
    }
    let id_g = DHMorphism::identity(g.clone());
    let id_h = DHMorphism::identity(h.clone());
    for f in &forward {
        for b in &backward {
            let Some(source_witness) = homotopic(&f.then(b)?, &id_g, max_steps, cap)? else {
                continue;
            };
            let Some(target_witness) = homotopic(&b.then(f)?, &id_h, max_steps, cap)? else {
                continue;
            };
            return Ok(Some(Equivalence {
                forward: f.clone(),
                backward: b.clone(),
                source_witness,
                target_witness,
            }));
        }
    }
    Ok(None)
}
