//! Seeded random directed hypergraphs for property checks.

use std::collections::BTreeSet;

use rand::Rng;

use crate::model::{Arrow, DirectedHypergraph};
use crate::vertex::{VertexId, VertexSet};

/// A random valid directed hypergraph on at most `max_vertices` vertices
/// (labelled `1..`) with between 1 and `max_arrows` distinct arrows.
///
/// Each arrow assigns every vertex to its origin, its end, or neither, and is
/// redrawn until both sides are non-empty. The vertex set is the union of the
/// arrows, so the cover condition holds by construction.
pub fn random_hypergraph<R: Rng + ?Sized>(rng: &mut R, max_vertices: usize, max_arrows: usize) -> DirectedHypergraph {
    assert!(max_vertices >= 2 && max_arrows >= 1, "need at least two vertices and one arrow");
    let n = rng.gen_range(2..=max_vertices);
    let k = rng.gen_range(1..=max_arrows);
    let labels: Vec<VertexId> = (1..=n).map(|i| VertexId::new(i.to_string())).collect();
    let mut seen = BTreeSet::new();
    let mut arrows = Vec::new();
    for _ in 0..k {
        let arrow = loop {
            let (mut origin, mut end) = (VertexSet::new(), VertexSet::new());
            for v in &labels {
                match rng.gen_range(0..3) {
                    0 => origin.insert(v.clone()),
                    1 => end.insert(v.clone()),
                    _ => false,
                };
            }
            if !origin.is_empty() && !end.is_empty() {
                break Arrow::new(origin, end);
            }
        };
        if seen.insert(arrow.clone()) {
            arrows.push(arrow);
        }
    }
    let vertices: VertexSet = arrows.iter().flat_map(|a| a.origin.iter().chain(&a.end).cloned()).collect();
    DirectedHypergraph::new(vertices, arrows).expect("sampled hypergraph is valid")
}

/// `count` hypergraphs from one seeded stream.
pub fn random_family<R: Rng + ?Sized>(rng: &mut R, count: usize, max_vertices: usize, max_arrows: usize) -> Vec<DirectedHypergraph> {
    (0..count).map(|_| random_hypergraph(rng, max_vertices, max_arrows)).collect()
}
