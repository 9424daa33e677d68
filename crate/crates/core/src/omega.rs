//! Regular path homology of a truncated path complex.
//!
//! For each dimension `n`, `Omega_n` is the subspace of the span of allowed
//! regular `n`-paths whose boundary has no component on non-allowed
//! `(n-1)`-paths. It is computed as the kernel of the boundary followed by the
//! projection onto the non-allowed coordinates.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::complex::{regular_boundary, PCMorphism, Path, PathComplexView};
use crate::error::{Error, Result};
use crate::linalg::{self, int, DenseMatrix, Field, Scalar};

/// One dimension of an [`OmegaComplex`].
#[derive(Debug, Clone)]
pub struct OmegaLevel {
    /// Allowed regular paths, lexicographic.
    pub allowed: Vec<Path>,
    /// Columns span Omega_n, written over `allowed`.
    pub omega_basis: DenseMatrix,
    /// Row of each basis vector's identity coordinate in `allowed`; the
    /// coefficient of a vector of Omega_n on basis vector `j` is its entry at
    /// `coordinates[j]`.
    pub coordinates: Vec<usize>,
    /// Boundary of allowed n-paths restricted to allowed (n-1)-paths.
    pub allowed_boundary: DenseMatrix,
    /// Boundary Omega_n -> Omega_{n-1} in the omega bases.
    pub boundary: DenseMatrix,
}

impl OmegaLevel {
    pub fn dim(&self) -> usize {
        self.omega_basis.cols()
    }

    /// Omega coordinates of a chain written over `allowed`, or `None` when the
    /// chain is not in Omega_n.
    pub fn omega_coordinates(&self, chain: &[Scalar], field: Field) -> Result<Option<Vec<Scalar>>> {
        let coeffs: Vec<Scalar> = self.coordinates.iter().map(|&r| chain[r].clone()).collect();
        let rebuilt = self.omega_basis.mul_vec(&coeffs, field)?;
        let chain: Vec<Scalar> = chain.iter().map(|x| field.normalize(x)).collect::<Result<_>>()?;
        Ok((rebuilt == chain).then_some(coeffs))
    }
}

#[derive(Debug, Clone)]
pub struct OmegaComplex {
    pub field: Field,
    /// Highest homology dimension the complex was built for.
    pub max_dim: usize,
    pub truncation: usize,
    /// Levels `0..=max_dim + 1`.
    pub levels: Vec<OmegaLevel>,
}

impl OmegaComplex {
    pub fn level(&self, n: usize) -> &OmegaLevel {
        &self.levels[n]
    }

    pub fn dim_omega(&self, n: usize) -> usize {
        self.levels[n].dim()
    }
}

/// Builds Omega_n and the boundary maps for `n <= max_dim + 1`.
pub fn build_omega(view: &PathComplexView, max_dim: usize, field: Field) -> Result<OmegaComplex> {
    let needed = max_dim + 1;
    if view.max_length() < needed {
        return Err(Error::Truncation {
            dim: max_dim,
            needed,
            have: view.max_length(),
        });
    }
    let mut levels: Vec<OmegaLevel> = Vec::with_capacity(needed + 1);
    for n in 0..=needed {
        let allowed = view.allowed(n).to_vec();
        let level = if n == 0 {
            let k = allowed.len();
            OmegaLevel {
                omega_basis: DenseMatrix::identity(k),
                coordinates: (0..k).collect(),
                allowed_boundary: DenseMatrix::zeros(0, k),
                boundary: DenseMatrix::zeros(0, k),
                allowed,
            }
        } else {
            let prev = &levels[n - 1];
            build_level(allowed, prev, field)?
        };
        levels.push(level);
    }
    Ok(OmegaComplex {
        field,
        max_dim,
        truncation: view.max_length(),
        levels,
    })
}

fn build_level(allowed: Vec<Path>, prev: &OmegaLevel, field: Field) -> Result<OmegaLevel> {
    let prev_index: HashMap<&Path, usize> = prev.allowed.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let mut outside: BTreeMap<Path, usize> = BTreeMap::new();
    let mut inside_entries = Vec::new();
    let mut outside_entries = Vec::new();
    for (j, p) in allowed.iter().enumerate() {
        for (face, c) in regular_boundary(p)? {
            match prev_index.get(&face) {
                Some(&i) => inside_entries.push((i, j, c)),
                None => {
                    let next = outside.len();
                    let i = *outside.entry(face).or_insert(next);
                    outside_entries.push((i, j, c));
                }
            }
        }
    }
    let cols = allowed.len();
    let mut constraint = DenseMatrix::zeros(outside.len(), cols);
    for (i, j, c) in outside_entries {
        constraint.set(i, j, int(c));
    }
    let mut allowed_boundary = DenseMatrix::zeros(prev.allowed.len(), cols);
    for (i, j, c) in inside_entries {
        allowed_boundary.set(i, j, int(c));
    }
    let allowed_boundary = allowed_boundary.normalize(field)?;

    // With no disallowed faces Omega_n is all of A_n; this skips a dense
    // kernel computation that dominates on complete complexes.
    let (omega_basis, coordinates) = if outside.is_empty() {
        (DenseMatrix::identity(cols), (0..cols).collect())
    } else {
        let linalg::Kernel {
            basis: kernel,
            free_columns: coordinates,
        } = linalg::kernel(&constraint, field)?;
        (DenseMatrix::from_columns(&kernel, cols)?, coordinates)
    };
    let dim = coordinates.len();

    let images = if outside.is_empty() {
        allowed_boundary.clone()
    } else {
        allowed_boundary.mul(&omega_basis, field)?
    };
    // A full previous level has the identity basis, so images are already coordinates.
    let boundary = if prev.dim() == prev.allowed.len() {
        images
    } else {
        let mut boundary = DenseMatrix::zeros(prev.dim(), dim);
        for j in 0..dim {
            let column = images.column(j);
            let coeffs = prev
                .omega_coordinates(&column, field)?
                .ok_or(Error::ChainMapLeavesOmega { dim: prev_dim(prev) })?;
            for (i, x) in coeffs.into_iter().enumerate() {
                boundary.set(i, j, x);
            }
        }
        boundary
    };
    Ok(OmegaLevel {
        allowed,
        omega_basis,
        coordinates,
        allowed_boundary,
        boundary,
    })
}

fn prev_dim(prev: &OmegaLevel) -> usize {
    prev.allowed.first().map_or(0, Path::length)
}

/// Per-dimension data of a homology computation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiRow {
    pub dim: usize,
    pub allowed: usize,
    pub dim_omega: usize,
    /// Rank of the boundary leaving this dimension.
    pub rank_boundary: usize,
    pub betti: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiTable {
    pub field: Field,
    pub max_dim: usize,
    pub truncation: usize,
    pub rows: Vec<BettiRow>,
    /// Rank of the boundary Omega_{max_dim+1} -> Omega_{max_dim}.
    pub rank_boundary_above: usize,
}

impl BettiTable {
    pub fn betti(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.betti).collect()
    }
}

pub fn betti_from_omega(omega: &OmegaComplex) -> Result<BettiTable> {
    let ranks: Vec<usize> = omega
        .levels
        .iter()
        .map(|l| linalg::rank(&l.boundary, omega.field))
        .collect::<Result<_>>()?;
    let rows = (0..=omega.max_dim)
        .map(|n| {
            let dim_omega = omega.dim_omega(n);
            BettiRow {
                dim: n,
                allowed: omega.levels[n].allowed.len(),
                dim_omega,
                rank_boundary: ranks[n],
                betti: dim_omega - ranks[n] - ranks[n + 1],
            }
        })
        .collect();
    Ok(BettiTable {
        field: omega.field,
        max_dim: omega.max_dim,
        truncation: omega.truncation,
        rows,
        rank_boundary_above: ranks[omega.max_dim + 1],
    })
}

/// Betti numbers in dimensions `0..=max_dim`.
pub fn betti(view: &PathComplexView, max_dim: usize, field: Field) -> Result<BettiTable> {
    betti_from_omega(&build_omega(view, max_dim, field)?)
}

/// Chosen homology basis in one dimension, in Omega coordinates.
#[derive(Debug, Clone)]
pub struct HomologyBasis {
    /// Independent boundaries spanning the image of the incoming boundary map.
    pub boundaries: Vec<Vec<Scalar>>,
    /// Cycle representatives of a basis of homology.
    pub representatives: Vec<Vec<Scalar>>,
}

/// Greedy choice: cycle-space basis vectors in order, each kept when it is
/// independent of the boundaries and the representatives kept so far.
pub fn homology_basis(omega: &OmegaComplex, n: usize) -> Result<HomologyBasis> {
    let field = omega.field;
    let dim = omega.dim_omega(n);
    let cycles = linalg::kernel_basis(&omega.levels[n].boundary, field)?;
    let incoming = &omega.levels[n + 1].boundary;
    let columns = incoming.columns();
    let boundaries: Vec<Vec<Scalar>> = linalg::independent_columns(&columns, dim, field)?
        .into_iter()
        .map(|j| columns[j].clone())
        .collect();
    let mut span = boundaries.clone();
    let mut representatives = Vec::new();
    for z in cycles {
        if linalg::solve_in_span(&span, &z, field)?.is_none() {
            span.push(z.clone());
            representatives.push(z);
        }
    }
    Ok(HomologyBasis {
        boundaries,
        representatives,
    })
}

/// Matrix of a homology map in the chosen bases: column `j` holds the image
/// of the `j`-th source representative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomologyMap {
    pub dim: usize,
    pub matrix: DenseMatrix,
}

/// Chain map on allowed n-paths: images with a repeated consecutive vertex
/// vanish; other images must be allowed in the target.
pub fn chain_map_matrix(m: &PCMorphism<'_>, source: &OmegaLevel, target: &OmegaLevel, n: usize) -> Result<DenseMatrix> {
    let index: HashMap<&Path, usize> = target.allowed.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let mut out = DenseMatrix::zeros(target.allowed.len(), source.allowed.len());
    for (j, p) in source.allowed.iter().enumerate() {
        let image = Path(p.0.iter().map(|&v| m.vertex_map[v]).collect());
        if !image.is_regular() {
            continue;
        }
        let i = index.get(&image).ok_or(Error::ChainMapLeavesOmega { dim: n })?;
        out.set(*i, j, Scalar::one());
    }
    Ok(out)
}

/// Induced map on n-th homology, computed from complexes built with
/// `build_omega(_, n, field)` on both sides.
pub fn induced_homology_map_with(
    m: &PCMorphism<'_>,
    source: &OmegaComplex,
    target: &OmegaComplex,
    n: usize,
) -> Result<HomologyMap> {
    let field = source.field;
    let src_basis = homology_basis(source, n)?;
    let tgt_basis = homology_basis(target, n)?;
    // Omega must be preserved one dimension up as well, since boundaries come from there.
    for d in [n, n + 1] {
        let chain = chain_map_matrix(m, source.level(d), target.level(d), d)?;
        let images = chain.mul(&source.level(d).omega_basis, field)?;
        for j in 0..images.cols() {
            if target.level(d).omega_coordinates(&images.column(j), field)?.is_none() {
                return Err(Error::ChainMapLeavesOmega { dim: d });
            }
        }
    }
    let chain = chain_map_matrix(m, source.level(n), target.level(n), n)?;
    let mut span = tgt_basis.boundaries.clone();
    let offset = span.len();
    span.extend(tgt_basis.representatives.iter().cloned());
    let mut matrix = DenseMatrix::zeros(tgt_basis.representatives.len(), src_basis.representatives.len());
    for (j, z) in src_basis.representatives.iter().enumerate() {
        let raw = source.level(n).omega_basis.mul_vec(z, field)?;
        let pushed = chain.mul_vec(&raw, field)?;
        let coords = target
            .level(n)
            .omega_coordinates(&pushed, field)?
            .ok_or(Error::ChainMapLeavesOmega { dim: n })?;
        let coeffs = linalg::solve_in_span(&span, &coords, field)?.ok_or(Error::ChainMapLeavesOmega { dim: n })?;
        for (i, x) in coeffs[offset..].iter().enumerate() {
            if !x.is_zero() {
                matrix.set(i, j, x.clone());
            }
        }
    }
    Ok(HomologyMap { dim: n, matrix })
}

pub fn induced_homology_map(m: &PCMorphism<'_>, n: usize, field: Field) -> Result<HomologyMap> {
    let source = build_omega(m.source, n, field)?;
    let target = build_omega(m.target, n, field)?;
    induced_homology_map_with(m, &source, &target, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::Oracle;
    use std::sync::Arc;

    fn digraph_view(n: usize, arrows: &[(usize, usize)], len: usize) -> PathComplexView {
        let arrows = arrows.to_vec();
        let oracle: Oracle = Arc::new(move |p: &[usize]| p.windows(2).all(|w| w[0] == w[1] || arrows.contains(&(w[0], w[1]))));
        let vertices = (0..n).map(|i| crate::vertex::VertexId::new(i.to_string())).collect();
        PathComplexView::enumerate(vertices, len, "digraph", oracle)
    }

    #[test]
    fn single_vertex() {
        let v = digraph_view(1, &[], 3);
        let t = betti(&v, 2, Field::Rational).unwrap();
        assert_eq!(t.betti(), vec![1, 0, 0]);
        assert_eq!(t.rows[0].dim_omega, 1);
        assert_eq!(t.rows[1].dim_omega, 0);
    }

    #[test]
    fn truncation_enforced() {
        let v = digraph_view(2, &[(0, 1)], 1);
        assert!(matches!(build_omega(&v, 1, Field::Rational), Err(Error::Truncation { needed: 2, .. })));
    }

    #[test]
    fn directed_triangle_cycle() {
        let v = digraph_view(3, &[(0, 1), (1, 2), (2, 0)], 3);
        assert_eq!(betti(&v, 2, Field::Rational).unwrap().betti(), vec![1, 1, 0]);
    }

    #[test]
    fn directed_square_is_filled() {
        // 0->1->3, 0->2->3: the square 013 - 023 lies in Omega_2
        let v = digraph_view(4, &[(0, 1), (1, 3), (0, 2), (2, 3)], 3);
        let omega = build_omega(&v, 2, Field::Rational).unwrap();
        assert_eq!(omega.dim_omega(2), 1);
        assert_eq!(betti_from_omega(&omega).unwrap().betti(), vec![1, 0, 0]);
    }

    #[test]
    fn boundary_squares_to_zero() {
        let v = digraph_view(4, &[(0, 1), (1, 2), (2, 0), (1, 3), (3, 1), (0, 3)], 4);
        let omega = build_omega(&v, 3, Field::Rational).unwrap();
        for n in 2..omega.levels.len() {
            let prod = omega.levels[n - 1].boundary.mul(&omega.levels[n].boundary, Field::Rational).unwrap();
            assert!(prod.is_zero(), "dim {n}");
        }
    }

    #[test]
    fn identity_induces_identity() {
        let v = digraph_view(3, &[(0, 1), (1, 2), (2, 0)], 3);
        let m = PCMorphism {
            source: &v,
            target: &v,
            vertex_map: vec![0, 1, 2],
        };
        for n in 0..2 {
            let h = induced_homology_map(&m, n, Field::Rational).unwrap();
            assert_eq!(h.matrix, DenseMatrix::identity(1));
        }
    }
}
