//! Executable checks of structural laws relating the four theories to
//! products, cylinders, digraphs and homotopy.
//!
//! Each check returns a [`LawReport`] with a verdict and the first
//! counterexample in (length, label) order, so reports are deterministic.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::complex::{check_pc_morphism, cylinder, render_labels, PathComplexView};
use crate::error::{Error, Result};
use crate::homotopy::{enumerate_morphisms, homotopy_classes, one_step_graph, Orientation};
use crate::linalg::{DenseMatrix, Field};
use crate::model::{box_product, hypergraph_product, DHMorphism, DirectedHypergraph, Hypergraph};
use crate::omega::{self, build_omega, induced_homology_map_with, OmegaComplex};
use crate::theories::{self, digraph_complex, TheoryKind};
use crate::vertex::{subset_label, VertexId, VertexSet, SEPARATOR};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Law {
    /// Cylinder of the connective complex equals the connective complex of `G □ I₁`.
    ConnectiveCylinder,
    /// Cylinder of the bold complex is contained in the bold complex of `G □ I₁`.
    BoldCylinder,
    /// Same inclusion for the density-2 non-directed complex.
    NondirectedCylinder,
    /// Non-directed complex of `G □ I₁` inside that of the hypergraph product
    /// with the interval, plus a witness that the inclusion is strict.
    ProductCylinder,
    /// Natural digraph of `G □ I₁` equals the natural digraph of `G` boxed with `I₁`.
    NaturalBoxProduct,
    /// Connective homology at density 1 equals digraph homology of the underlying digraph.
    ConnectiveDigraph,
    /// Non-directed homology at density 1 is that of a point.
    FullWindow,
    /// Connective complexes shrink as the density grows.
    ConnectiveFiltration,
    /// Boundaries square to zero and respect the Omega bases.
    ChainComplex,
    /// Homotopic endomorphisms induce equal homology maps in all four theories.
    HomotopyInvariance,
}

impl Law {
    pub const ALL: [Law; 10] = [
        Law::ConnectiveCylinder,
        Law::BoldCylinder,
        Law::NondirectedCylinder,
        Law::ProductCylinder,
        Law::NaturalBoxProduct,
        Law::ConnectiveDigraph,
        Law::FullWindow,
        Law::ConnectiveFiltration,
        Law::ChainComplex,
        Law::HomotopyInvariance,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Law::ConnectiveCylinder => "connective-cylinder",
            Law::BoldCylinder => "bold-cylinder",
            Law::NondirectedCylinder => "nondirected-cylinder",
            Law::ProductCylinder => "product-cylinder",
            Law::NaturalBoxProduct => "natural-box-product",
            Law::ConnectiveDigraph => "connective-digraph",
            Law::FullWindow => "full-window",
            Law::ConnectiveFiltration => "connective-filtration",
            Law::ChainComplex => "chain-complex",
            Law::HomotopyInvariance => "homotopy-invariance",
        }
    }
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Law {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Law::ALL.into_iter().find(|l| l.name() == s).ok_or_else(|| {
            let names: Vec<&str> = Law::ALL.iter().map(Law::name).collect();
            format!("unknown law {s:?} (expected one of {})", names.join(", "))
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LawReport {
    pub law: Law,
    pub holds: bool,
    pub detail: String,
    pub counterexample: Option<String>,
}

impl LawReport {
    fn new(law: Law, holds: bool, detail: impl Into<String>, counterexample: Option<String>) -> Self {
        LawReport {
            law,
            holds,
            detail: detail.into(),
            counterexample,
        }
    }
}

/// Runs one law on `g`. Cylinder laws compare paths up to `max_length`;
/// homological laws use dimensions `0..max_length`.
pub fn check_law(g: &DirectedHypergraph, law: Law, max_length: usize) -> Result<LawReport> {
    let max_dim = max_length.saturating_sub(1);
    match law {
        Law::ConnectiveCylinder => connective_cylinder(g, max_length),
        Law::BoldCylinder => bold_cylinder(g, max_length),
        Law::NondirectedCylinder => nondirected_cylinder(g, max_length),
        Law::ProductCylinder => product_cylinder(g, 2, max_length),
        Law::NaturalBoxProduct => natural_box_product(g),
        Law::ConnectiveDigraph => connective_digraph(g, max_dim, Field::Rational),
        Law::FullWindow => full_window(g, max_dim, Field::Rational),
        Law::ConnectiveFiltration => connective_filtration(g, 3, max_length),
        Law::ChainComplex => chain_complex(g, max_dim, Field::Rational),
        Law::HomotopyInvariance => {
            let g = Arc::new(g.clone());
            homotopy_invariance(&g, &g, max_dim, crate::homotopy::DEFAULT_CAP)
        }
    }
}

type LabelledPath = Vec<VertexId>;

fn path_key(p: &LabelledPath) -> (usize, &LabelledPath) {
    (p.len(), p)
}

fn first_missing<'a>(from: &'a BTreeSet<LabelledPath>, within: &BTreeSet<LabelledPath>) -> Option<&'a LabelledPath> {
    from.iter().filter(|p| !within.contains(*p)).min_by(|a, b| path_key(a).cmp(&path_key(b)))
}

/// Splits a product label `v|i` at its first separator.
fn unpair(v: &VertexId) -> (VertexId, VertexId) {
    let (a, b) = v.as_str().split_once(SEPARATOR).expect("product label");
    (VertexId::new(a), VertexId::new(b))
}

/// `v|0 ↦ v`, `v|1 ↦ v'`.
fn cylinder_label(v: &VertexId) -> VertexId {
    let (base, layer) = unpair(v);
    if layer.as_str() == "0" {
        base
    } else {
        base.primed()
    }
}

fn relabelled_paths(view: &PathComplexView, f: impl Fn(&VertexId) -> VertexId) -> BTreeSet<LabelledPath> {
    view.labelled_paths().into_iter().map(|p| p.iter().map(&f).collect()).collect()
}

fn forward_cylinder(g: &DirectedHypergraph) -> Result<DirectedHypergraph> {
    box_product(g, &Orientation::Forward.line())
}

fn compare_cylinder(
    law: Law,
    cyl: &PathComplexView,
    product: &PathComplexView,
    equality: bool,
    max_length: usize,
) -> LawReport {
    let left: BTreeSet<LabelledPath> = cyl.labelled_paths().into_iter().collect();
    let right = relabelled_paths(product, cylinder_label);
    if let Some(p) = first_missing(&left, &right) {
        return LawReport::new(
            law,
            false,
            format!("cylinder path missing from the box-product complex (up to length {max_length})"),
            Some(render_labels(p)),
        );
    }
    if equality {
        if let Some(p) = first_missing(&right, &left) {
            return LawReport::new(
                law,
                false,
                format!("box-product path missing from the cylinder (up to length {max_length})"),
                Some(render_labels(p)),
            );
        }
    }
    let relation = if equality { "equal" } else { "included" };
    LawReport::new(
        law,
        true,
        format!("{relation}: {} cylinder paths, {} box-product paths (up to length {max_length})", left.len(), right.len()),
        None,
    )
}

pub fn connective_cylinder(g: &DirectedHypergraph, max_length: usize) -> Result<LawReport> {
    let cyl = cylinder(&theories::connective_view(g, 1, max_length)?);
    let product = theories::connective_view(&forward_cylinder(g)?, 1, max_length)?;
    Ok(compare_cylinder(Law::ConnectiveCylinder, &cyl, &product, true, max_length))
}

pub fn bold_cylinder(g: &DirectedHypergraph, max_length: usize) -> Result<LawReport> {
    let cyl = cylinder(&theories::bold_view(g, max_length));
    let product = theories::bold_view(&forward_cylinder(g)?, max_length);
    Ok(compare_cylinder(Law::BoldCylinder, &cyl, &product, false, max_length))
}

pub fn nondirected_cylinder(g: &DirectedHypergraph, max_length: usize) -> Result<LawReport> {
    let cyl = cylinder(&theories::nondirected_view(g, 2, max_length)?);
    let product = theories::nondirected_view(&forward_cylinder(g)?, 2, max_length)?;
    Ok(compare_cylinder(Law::NondirectedCylinder, &cyl, &product, false, max_length))
}

/// The interval hypergraph `({0,1}, {{0},{1},{0,1}})`.
pub fn interval() -> Hypergraph {
    let (a, b) = (VertexId::new("0"), VertexId::new("1"));
    Hypergraph {
        vertices: [a.clone(), b.clone()].into(),
        edges: [[a.clone()].into(), [b.clone()].into(), [a, b].into()].into(),
        strict: false,
    }
}

/// First `(v|0, w|1)` with `v` in an origin, `w` in the matching end, and no
/// origin-or-end containing both. Arrows and vertices are scanned in order.
pub fn strictness_witness(g: &DirectedHypergraph) -> Option<(VertexId, VertexId)> {
    let sets = g.p_sets().all;
    let (zero, one) = (VertexId::new("0"), VertexId::new("1"));
    g.arrows().iter().find_map(|a| {
        a.origin.iter().find_map(|v| {
            a.end
                .iter()
                .find(|w| !sets.iter().any(|s| s.contains(v) && s.contains(*w)))
                .map(|w| (v.pair(&zero), w.pair(&one)))
        })
    })
}

pub fn product_cylinder(g: &DirectedHypergraph, q: usize, max_length: usize) -> Result<LawReport> {
    if q < 2 {
        return Err(Error::InvalidDensity);
    }
    let small = theories::nondirected_view(&forward_cylinder(g)?, q, max_length)?;
    let product = hypergraph_product(&g.epsilon(), &interval())?;
    let large = theories::hypergraph_window_view(&product, q, max_length, "product");
    let left: BTreeSet<LabelledPath> = small.labelled_paths().into_iter().collect();
    let right: BTreeSet<LabelledPath> = large.labelled_paths().into_iter().collect();
    if let Some(p) = first_missing(&left, &right) {
        return Ok(LawReport::new(
            Law::ProductCylinder,
            false,
            "box-product path missing from the hypergraph product",
            Some(render_labels(p)),
        ));
    }
    let witness = strictness_witness(g).filter(|_| max_length >= 1).map(|(v, w)| vec![v, w]);
    match witness {
        Some(p) if left.contains(&p) || !right.contains(&p) => Ok(LawReport::new(
            Law::ProductCylinder,
            false,
            "candidate strictness witness does not separate the two complexes",
            Some(render_labels(&p)),
        )),
        Some(p) => Ok(LawReport::new(
            Law::ProductCylinder,
            true,
            format!("included, strictly: witness {} (q={q}, up to length {max_length})", render_labels(&p)),
            Some(render_labels(&p)),
        )),
        None => Ok(LawReport::new(
            Law::ProductCylinder,
            true,
            format!("included; no strictness witness of the crossing form (q={q}, up to length {max_length})"),
            None,
        )),
    }
}

pub fn natural_box_product(g: &DirectedHypergraph) -> Result<LawReport> {
    let law = Law::NaturalBoxProduct;
    let line = Orientation::Forward.line();
    let expected = g.natural().digraph.box_product(&line);
    let natural = forward_cylinder(g)?.natural();
    let mut relabel = BTreeMap::new();
    for (label, set) in &natural.subsets {
        let decoded: Vec<(VertexId, VertexId)> = set.iter().map(unpair).collect();
        let layers: BTreeSet<&VertexId> = decoded.iter().map(|(_, i)| i).collect();
        if layers.len() != 1 {
            return Ok(LawReport::new(law, false, "origin or end spans both layers", Some(label.to_string())));
        }
        let base: VertexSet = decoded.iter().map(|(v, _)| v.clone()).collect();
        relabel.insert(label.clone(), subset_label(&base).pair(layers.into_iter().next().unwrap()));
    }
    let got = natural.digraph.relabel(&relabel);
    if let Some(v) = expected.vertices().symmetric_difference(got.vertices()).next() {
        return Ok(LawReport::new(law, false, "vertex sets differ", Some(v.to_string())));
    }
    if let Some((v, w)) = expected.arrows().symmetric_difference(got.arrows()).next() {
        return Ok(LawReport::new(law, false, "arrow sets differ", Some(format!("{v} -> {w}"))));
    }
    Ok(LawReport::new(
        law,
        true,
        format!("equal: {} vertices, {} arrows", got.vertices().len(), got.arrows().len()),
        None,
    ))
}

fn format_betti(b: &[usize]) -> String {
    let parts: Vec<String> = b.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(", "))
}

pub fn connective_digraph(g: &DirectedHypergraph, max_dim: usize, field: Field) -> Result<LawReport> {
    let law = Law::ConnectiveDigraph;
    let left = omega::betti(&theories::connective_view(g, 1, max_dim + 1)?, max_dim, field)?;
    let right = omega::betti(&digraph_complex(&g.gamma(), max_dim + 1), max_dim, field)?;
    if left == right {
        Ok(LawReport::new(law, true, format!("equal Betti tables {}", format_betti(&left.betti())), None))
    } else {
        Ok(LawReport::new(
            law,
            false,
            "Betti tables differ",
            Some(format!("{} vs {}", format_betti(&left.betti()), format_betti(&right.betti()))),
        ))
    }
}

pub fn full_window(g: &DirectedHypergraph, max_dim: usize, field: Field) -> Result<LawReport> {
    let law = Law::FullWindow;
    let betti = omega::betti(&theories::nondirected_view(g, 1, max_dim + 1)?, max_dim, field)?.betti();
    let mut point = vec![0; max_dim + 1];
    point[0] = 1;
    let text = format_betti(&betti);
    Ok(if betti == point {
        LawReport::new(law, true, format!("β = {text}"), None)
    } else {
        LawReport::new(law, false, format!("expected {}", format_betti(&point)), Some(text))
    })
}

pub fn connective_filtration(g: &DirectedHypergraph, max_density: usize, max_length: usize) -> Result<LawReport> {
    let law = Law::ConnectiveFiltration;
    let views = (1..=max_density)
        .map(|c| theories::connective_view(g, c, max_length))
        .collect::<Result<Vec<_>>>()?;
    for (c, pair) in views.windows(2).enumerate() {
        let lower: BTreeSet<LabelledPath> = pair[0].labelled_paths().into_iter().collect();
        let upper: BTreeSet<LabelledPath> = pair[1].labelled_paths().into_iter().collect();
        if let Some(p) = first_missing(&upper, &lower) {
            return Ok(LawReport::new(
                law,
                false,
                format!("density {} path not allowed at density {}", c + 2, c + 1),
                Some(render_labels(p)),
            ));
        }
    }
    let counts: Vec<String> = views.iter().map(|v| v.all_allowed().count().to_string()).collect();
    Ok(LawReport::new(
        law,
        true,
        format!("nested for densities 1..={max_density}; path counts {}", counts.join(" ⊇ ")),
        None,
    ))
}

/// First defect of a built complex: `∂∂ ≠ 0`, or a boundary matrix that does
/// not agree with the raw boundary of the Omega basis.
pub fn chain_complex_defect(omega: &OmegaComplex) -> Result<Option<String>> {
    let field = omega.field;
    for n in 1..omega.levels.len() {
        let level = omega.level(n);
        let prev = omega.level(n - 1);
        let raw = level.allowed_boundary.mul(&level.omega_basis, field)?;
        let via_omega = prev.omega_basis.mul(&level.boundary, field)?;
        if raw != via_omega {
            return Ok(Some(format!("boundary in dimension {n} disagrees with the raw boundary of the Omega basis")));
        }
        if n >= 2 && !prev.boundary.mul(&level.boundary, field)?.is_zero() {
            return Ok(Some(format!("boundary squares to a nonzero map in dimension {n}")));
        }
    }
    Ok(None)
}

/// Every complex the engine can attach to `g`: connective and non-directed
/// at densities 1..=3, bold and natural.
pub fn all_views(g: &DirectedHypergraph, max_length: usize) -> Result<Vec<(String, PathComplexView)>> {
    let mut out = Vec::new();
    for c in 1..=3 {
        out.push((format!("connective(c={c})"), theories::connective_view(g, c, max_length)?));
    }
    out.push(("bold".to_string(), theories::bold_view(g, max_length)));
    for q in 1..=3 {
        out.push((format!("nondirected(q={q})"), theories::nondirected_view(g, q, max_length)?));
    }
    out.push(("natural".to_string(), theories::natural_view(g, max_length)));
    Ok(out)
}

pub fn chain_complex(g: &DirectedHypergraph, max_dim: usize, field: Field) -> Result<LawReport> {
    let law = Law::ChainComplex;
    let views = all_views(g, max_dim + 1)?;
    for (name, view) in &views {
        if let Some(p) = view.check_consistency() {
            return Ok(LawReport::new(law, false, format!("{name}: path set not closed"), Some(view.render(&p))));
        }
        let omega = build_omega(view, max_dim, field)?;
        if let Some(defect) = chain_complex_defect(&omega)? {
            return Ok(LawReport::new(law, false, name.clone(), Some(defect)));
        }
    }
    Ok(LawReport::new(
        law,
        true,
        format!("∂∂ = 0 and Omega closed for {} complexes through dimension {}", views.len(), max_dim + 1),
        None,
    ))
}

/// The four functorial complexes with the vertex map a morphism induces on each.
pub fn functorial_view(g: &DirectedHypergraph, kind: TheoryKind, max_length: usize) -> Result<PathComplexView> {
    match kind {
        TheoryKind::Connective => theories::connective_view(g, 1, max_length),
        TheoryKind::Nondirected => theories::nondirected_view(g, 2, max_length),
        TheoryKind::Bold => Ok(theories::bold_view(g, max_length)),
        TheoryKind::Natural => Ok(theories::natural_view(g, max_length)),
    }
}

fn induced_vertex_map(f: &DHMorphism, kind: TheoryKind) -> BTreeMap<VertexId, VertexId> {
    match kind {
        TheoryKind::Natural => f.natural_map(),
        _ => f.vertex_map.clone(),
    }
}

/// Induced homology matrices of `f` in dimensions `0..=max_dim` for one theory.
pub fn induced_matrices(
    f: &DHMorphism,
    kind: TheoryKind,
    source: (&PathComplexView, &OmegaComplex),
    target: (&PathComplexView, &OmegaComplex),
    max_dim: usize,
) -> Result<std::result::Result<Vec<DenseMatrix>, String>> {
    let map = induced_vertex_map(f, kind);
    let m = match check_pc_morphism(source.0, target.0, &map)? {
        Ok(m) => m,
        Err(v) => return Ok(Err(v.to_string())),
    };
    (0..=max_dim)
        .map(|n| induced_homology_map_with(&m, source.1, target.1, n).map(|h| h.matrix))
        .collect::<Result<Vec<_>>>()
        .map(Ok)
}

fn describe(f: &DHMorphism) -> String {
    let parts: Vec<String> = f.vertex_map.iter().map(|(v, w)| format!("{v}↦{w}")).collect();
    format!("[{}]", parts.join(" "))
}

/// For every pair of morphisms `G -> H` joined by a chain of one-step
/// homotopies, the induced homology matrices agree in all four theories.
pub fn homotopy_invariance(
    g: &Arc<DirectedHypergraph>,
    h: &Arc<DirectedHypergraph>,
    max_dim: usize,
    cap: u128,
) -> Result<LawReport> {
    let law = Law::HomotopyInvariance;
    let morphisms = enumerate_morphisms(g, h, cap)?;
    let classes = homotopy_classes(&one_step_graph(&morphisms));
    let homotopic_pairs = (0..morphisms.len()).filter(|&i| classes[i] != i).count();
    for kind in TheoryKind::ALL {
        let sv = functorial_view(g, kind, max_dim + 1)?;
        let tv = functorial_view(h, kind, max_dim + 1)?;
        let so = build_omega(&sv, max_dim, Field::Rational)?;
        let to = build_omega(&tv, max_dim, Field::Rational)?;
        let mut representative: BTreeMap<usize, Vec<DenseMatrix>> = BTreeMap::new();
        for (i, f) in morphisms.iter().enumerate() {
            let matrices = match induced_matrices(f, kind, (&sv, &so), (&tv, &to), max_dim)? {
                Ok(m) => m,
                Err(violation) => {
                    return Ok(LawReport::new(
                        law,
                        false,
                        format!("{kind}: {} does not induce a path-complex morphism", describe(f)),
                        Some(violation),
                    ))
                }
            };
            match representative.get(&classes[i]) {
                None => {
                    representative.insert(classes[i], matrices);
                }
                Some(expected) => {
                    if let Some(n) = (0..=max_dim).find(|&n| expected[n] != matrices[n]) {
                        return Ok(LawReport::new(
                            law,
                            false,
                            format!("{kind}: homotopic morphisms induce different maps in dimension {n}"),
                            Some(format!("{} vs {}", describe(&morphisms[classes[i]]), describe(f))),
                        ));
                    }
                }
            }
        }
    }
    Ok(LawReport::new(
        law,
        true,
        format!(
            "{} morphisms in {} homotopy classes; {} non-trivial pairs agree in all four theories through dimension {max_dim}",
            morphisms.len(),
            classes.iter().collect::<BTreeSet<_>>().len(),
            homotopic_pairs
        ),
        None,
    ))
}
