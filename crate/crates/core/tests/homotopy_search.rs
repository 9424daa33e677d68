use std::collections::BTreeMap;
use std::sync::Arc;

use dhpath_core::homotopy::{
    enumerate_morphisms, homotopic, homotopy_equivalent, one_step_homotopic, Orientation, DEFAULT_CAP,
};
use dhpath_core::model::{box_product, check_dh_morphism};
use dhpath_core::{DHMorphism, DirectedHypergraph, VertexId};

fn graph(vertices: &[&str], arrows: &[(&[&str], &[&str])]) -> Arc<DirectedHypergraph> {
    Arc::new(DirectedHypergraph::from_labels(vertices, arrows).unwrap())
}

fn ex32() -> (Arc<DirectedHypergraph>, Arc<DirectedHypergraph>, DHMorphism) {
    let g = graph(&["1", "2", "3", "4"], &[(&["1"], &["2", "3"]), (&["1"], &["2", "4"])]);
    let h = graph(&["a", "b", "c"], &[(&["a"], &["b", "c"])]);
    let map: BTreeMap<VertexId, VertexId> =
        [("1", "a"), ("2", "b"), ("3", "c"), ("4", "c")].iter().map(|&(v, w)| (v.into(), w.into())).collect();
    let f = check_dh_morphism(g.clone(), h.clone(), &map).unwrap();
    (g, h, f)
}

fn ex34() -> Arc<DirectedHypergraph> {
    graph(
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
}

#[test]
fn a_morphism_is_not_one_step_from_itself() {
    let (_, _, f) = ex32();
    assert!(one_step_homotopic(&f, &f).unwrap().is_none());
    assert!(homotopic(&f, &f, 0, DEFAULT_CAP).unwrap().unwrap().is_empty());
    let id = DHMorphism::identity(ex34());
    assert!(homotopic(&id, &id, 3, DEFAULT_CAP).unwrap().unwrap().is_empty());
}

#[test]
fn one_step_relation_is_symmetric_under_reversal() {
    let cycle = graph(&["1", "2", "3"], &[(&["1"], &["2"]), (&["2"], &["3"]), (&["3"], &["1"])]);
    let (g, h, _) = ex32();
    let fan = graph(&["1", "2", "3"], &[(&["1"], &["2"]), (&["1"], &["3"])]);
    for (src, tgt) in [(cycle.clone(), cycle), (g, h), (fan.clone(), fan)] {
        let all = enumerate_morphisms(&src, &tgt, DEFAULT_CAP).unwrap();
        for f0 in &all {
            for f1 in &all {
                let there = one_step_homotopic(f0, f1).unwrap();
                let back = one_step_homotopic(f1, f0).unwrap();
                assert_eq!(there.is_some(), back.is_some());
                if let (Some(a), Some(b)) = (there, back) {
                    // Whichever orientation is found first, its reverse works the other way.
                    if a.orientation == Orientation::Forward {
                        assert_eq!(b.orientation, Orientation::Backward);
                    }
                }
            }
        }
    }
}

#[test]
fn witnesses_are_valid_box_product_morphisms() {
    let cycle = graph(&["1", "2", "3"], &[(&["1"], &["2"]), (&["2"], &["3"]), (&["3"], &["1"])]);
    let all = enumerate_morphisms(&cycle, &cycle, DEFAULT_CAP).unwrap();
    for f in &all {
        for g in &all {
            let Some(w) = homotopic(f, g, 3, DEFAULT_CAP).unwrap() else {
                panic!("rotations are all homotopic");
            };
            assert!(w.len() <= 1);
            let mut current = w.start.clone();
            for step in &w.steps {
                assert_eq!(step.from.vertex_map, current.vertex_map);
                let product = Arc::new(box_product(&cycle, &step.orientation.line()).unwrap());
                assert_eq!(step.cylinder_map.source, product);
                check_dh_morphism(product, cycle.clone(), &step.cylinder_map.vertex_map).unwrap();
                current = step.to.clone();
            }
            assert_eq!(current.vertex_map, g.vertex_map);
        }
    }
}

#[test]
fn fan_fold_is_not_homotopic_to_identity() {
    // Every endomorphism of the fan fixes 1, and the crossing for {1} would
    // need an arrow {1} -> {1}.
    let fan = graph(&["1", "2", "3"], &[(&["1"], &["2"]), (&["1"], &["3"])]);
    let id = DHMorphism::identity(fan.clone());
    let fold: BTreeMap<VertexId, VertexId> = [("1", "1"), ("2", "2"), ("3", "2")].iter().map(|&(a, b)| (a.into(), b.into())).collect();
    let fold = check_dh_morphism(fan.clone(), fan.clone(), &fold).unwrap();
    assert!(homotopic(&id, &fold, 4, DEFAULT_CAP).unwrap().is_none());
}

#[test]
fn example_pair_is_not_equivalent() {
    // Endomorphisms of G fix 1, so only equal maps are homotopic; any
    // composite G -> H -> G identifies 3 with 4 and is not the identity.
    let (g, h, _) = ex32();
    let found = homotopy_equivalent(&g, &h, 3, DEFAULT_CAP).unwrap();
    assert!(found.is_none());
}
