//! Exact linear algebra over the rationals and over prime fields.
//!
//! Every routine takes a [`Field`] describing the active coefficient field.
//! Matrices always store [`Scalar`] values (arbitrary precision rationals);
//! in prime-field mode the entries are reduced to residues in `[0, p)` on the
//! way in and results come back as integer scalars in that range.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub type Scalar = BigRational;

/// Coefficient field for every homology computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Field {
    #[default]
    Rational,
    /// Integers modulo a prime `p < 2^32`.
    Prime(u64),
}

impl Field {
    pub fn prime(p: u64) -> Result<Self> {
        if !(2..1 << 32).contains(&p) || !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not a prime below 2^32")));
        }
        Ok(Field::Prime(p))
    }

    /// Maps an arbitrary rational into the field's canonical representation.
    pub fn normalize(&self, x: &Scalar) -> Result<Scalar> {
        match *self {
            Field::Rational => Ok(x.clone()),
            Field::Prime(p) => Ok(Scalar::from_integer(BigInt::from(to_residue(x, p)?))),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Prime(p) => write!(f, "Fp:{p}"),
        }
    }
}

impl FromStr for Field {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "Q" {
            return Ok(Field::Rational);
        }
        match s.strip_prefix("Fp:").map(str::parse::<u64>) {
            Some(Ok(p)) => Field::prime(p),
            _ => Err(Error::InvalidField(format!(
                "expected \"Q\" or \"Fp:<prime>\", got {s:?}"
            ))),
        }
    }
}

impl Serialize for Field {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Field {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn to_residue(x: &Scalar, p: u64) -> Result<u64> {
    let pm = BigInt::from(p);
    let num = x.numer().mod_floor(&pm).to_u64().unwrap_or(0);
    let den = x.denom().mod_floor(&pm).to_u64().unwrap_or(0);
    if den == 0 {
        return Err(Error::InvalidField(format!(
            "denominator of {x} vanishes modulo {p}"
        )));
    }
    Ok(mul_mod(num, inv_mod(den, p), p))
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn inv_mod(a: u64, p: u64) -> u64 {
    // Fermat: a^(p-2)
    let mut base = a % p;
    let mut exp = p - 2;
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Row-major dense matrix of exact scalars.
#[derive(Clone, PartialEq, Eq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

impl DenseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        DenseMatrix {
            rows,
            cols,
            entries: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>, cols: usize) -> Result<Self> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: row.len(),
                });
            }
            entries.extend(row);
        }
        Ok(DenseMatrix {
            rows: n,
            cols,
            entries,
        })
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&x| Scalar::from_integer(x.into())).collect())
            .collect();
        Self::from_rows(rows, cols).expect("ragged integer matrix")
    }

    /// Builds a matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(columns: &[Vec<Scalar>], rows: usize) -> Result<Self> {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            if col.len() != rows {
                return Err(Error::DimensionMismatch {
                    expected: rows,
                    found: col.len(),
                });
            }
            for (i, x) in col.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, x: Scalar) {
        self.entries[r * self.cols + c] = x;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Scalar>> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    /// Matrix product; entries are reduced into `field` afterwards.
    pub fn mul(&self, other: &DenseMatrix, field: Field) -> Result<DenseMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if !b.is_zero() {
                        let idx = r * out.cols + c;
                        out.entries[idx] = &out.entries[idx] + a * b;
                    }
                }
            }
        }
        out.normalize(field)
    }

    pub fn mul_vec(&self, v: &[Scalar], field: Field) -> Result<Vec<Scalar>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        // Chains are sparse; only the non-zero coordinates contribute.
        let support: Vec<usize> = (0..v.len()).filter(|&k| !v[k].is_zero()).collect();
        let mut out = vec![Scalar::zero(); self.rows];
        for (r, slot) in out.iter_mut().enumerate() {
            let row = self.row(r);
            for &k in &support {
                if !row[k].is_zero() {
                    *slot += &row[k] * &v[k];
                }
            }
        }
        out.iter().map(|x| field.normalize(x)).collect()
    }

    pub fn normalize(mut self, field: Field) -> Result<Self> {
        if let Field::Prime(_) = field {
            for x in self.entries.iter_mut() {
                *x = field.normalize(x)?;
            }
        }
        Ok(self)
    }

    /// Rows rendered as integers when possible, otherwise as `p/q` strings.
    pub fn to_string_rows(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|r| self.row(r).iter().map(|x| x.to_string()).collect())
            .collect()
    }
}

impl fmt::Debug for DenseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "DenseMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

// Field-generic elimination. Rational values stay as BigRational; residues are u64.
trait Arith {
    type E: Clone;
    fn lift(&self, x: &Scalar) -> Result<Self::E>;
    fn lower(&self, x: &Self::E) -> Scalar;
    fn is_zero(&self, x: &Self::E) -> bool;
    fn zero(&self) -> Self::E;
    fn one(&self) -> Self::E;
    fn neg(&self, x: &Self::E) -> Self::E;
    fn inv(&self, x: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    /// `a - b * c`
    fn sub_mul(&self, a: &Self::E, b: &Self::E, c: &Self::E) -> Self::E;
}

struct Rationals;

impl Arith for Rationals {
    type E = Scalar;
    fn lift(&self, x: &Scalar) -> Result<Scalar> {
        Ok(x.clone())
    }
    fn lower(&self, x: &Scalar) -> Scalar {
        x.clone()
    }
    fn is_zero(&self, x: &Scalar) -> bool {
        x.is_zero()
    }
    fn zero(&self) -> Scalar {
        Scalar::zero()
    }
    fn one(&self) -> Scalar {
        Scalar::one()
    }
    fn neg(&self, x: &Scalar) -> Scalar {
        -x
    }
    fn inv(&self, x: &Scalar) -> Scalar {
        x.recip()
    }
    fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        a * b
    }
    fn sub_mul(&self, a: &Scalar, b: &Scalar, c: &Scalar) -> Scalar {
        a - b * c
    }
}

struct Residues(u64);

impl Arith for Residues {
    type E = u64;
    fn lift(&self, x: &Scalar) -> Result<u64> {
        to_residue(x, self.0)
    }
    fn lower(&self, x: &u64) -> Scalar {
        Scalar::from_integer(BigInt::from(*x))
    }
    fn is_zero(&self, x: &u64) -> bool {
        *x == 0
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn neg(&self, x: &u64) -> u64 {
        (self.0 - x) % self.0
    }
    fn inv(&self, x: &u64) -> u64 {
        inv_mod(*x, self.0)
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        mul_mod(*a, *b, self.0)
    }
    fn sub_mul(&self, a: &u64, b: &u64, c: &u64) -> u64 {
        let p = self.0;
        (a + p - mul_mod(*b, *c, p)) % p
    }
}

struct Echelon<E> {
    rows: Vec<Vec<E>>,
    pivots: Vec<usize>,
}

/// Reduced row echelon form; returns only the non-zero rows.
fn rref<A: Arith>(a: &A, mut rows: Vec<Vec<A::E>>, cols: usize) -> Echelon<A::E> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !a.is_zero(&rows[i][c])) else {
            continue;
        };
        rows.swap(r, p);
        let inv = a.inv(&rows[r][c]);
        for x in rows[r].iter_mut() {
            *x = a.mul(x, &inv);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || a.is_zero(&row[c]) {
                continue;
            }
            let factor = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !a.is_zero(y) {
                    *x = a.sub_mul(x, &factor, y);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    Echelon { rows, pivots }
}

fn lift_rows<A: Arith>(a: &A, m: &DenseMatrix) -> Result<Vec<Vec<A::E>>> {
    (0..m.rows())
        .map(|r| m.row(r).iter().map(|x| a.lift(x)).collect())
        .collect()
}

fn kernel_with<A: Arith>(a: &A, m: &DenseMatrix) -> Result<Kernel> {
    let ech = rref(a, lift_rows(a, m)?, m.cols());
    let mut is_pivot = vec![false; m.cols()];
    for &p in &ech.pivots {
        is_pivot[p] = true;
    }
    let free_columns: Vec<usize> = (0..m.cols()).filter(|&c| !is_pivot[c]).collect();
    let mut basis = Vec::new();
    for &free in &free_columns {
        let mut v = vec![a.zero(); m.cols()];
        v[free] = a.one();
        for (row, &p) in ech.rows.iter().zip(&ech.pivots) {
            v[p] = a.neg(&row[free]);
        }
        basis.push(v.iter().map(|x| a.lower(x)).collect());
    }
    Ok(Kernel { basis, free_columns })
}

/// Null space basis together with the free column owning each vector.
#[derive(Debug, Clone)]
pub struct Kernel {
    pub basis: Vec<Vec<Scalar>>,
    pub free_columns: Vec<usize>,
}

fn solve_with<A: Arith>(a: &A, basis: &[Vec<Scalar>], target: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
    let n = target.len();
    let k = basis.len();
    // augmented system [b_1 .. b_k | target], one row per coordinate
    let mut rows = Vec::with_capacity(n);
    for i in 0..n {
        let mut row = Vec::with_capacity(k + 1);
        for b in basis {
            row.push(a.lift(&b[i])?);
        }
        row.push(a.lift(&target[i])?);
        rows.push(row);
    }
    let ech = rref(a, rows, k + 1);
    if ech.pivots.last() == Some(&k) {
        return Ok(None);
    }
    let mut coeffs = vec![a.zero(); k];
    for (row, &p) in ech.rows.iter().zip(&ech.pivots) {
        coeffs[p] = row[k].clone();
    }
    Ok(Some(coeffs.iter().map(|x| a.lower(x)).collect()))
}

/// Fraction-free (Bareiss) forward elimination over the integers.
/// Each row is first scaled by the lcm of its denominators.
fn rank_fraction_free(m: &DenseMatrix) -> usize {
    let mut rows: Vec<Vec<BigInt>> = (0..m.rows())
        .map(|r| {
            let row = m.row(r);
            let lcm = row
                .iter()
                .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            row.iter()
                .map(|x| x.numer() * (&lcm / x.denom()))
                .collect()
        })
        .collect();
    let cols = m.cols();
    let mut rank = 0;
    let mut prev = BigInt::one();
    for c in 0..cols {
        if rank == rows.len() {
            break;
        }
        let Some(p) = (rank..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let (head, tail) = rows.split_at_mut(rank + 1);
        let pivot_row = &head[rank];
        let pivot = &pivot_row[c];
        for row in tail.iter_mut() {
            let factor = row[c].clone();
            for j in c..cols {
                let v = (pivot * &row[j] - &factor * &pivot_row[j]) / &prev;
                row[j] = v;
            }
        }
        prev = pivot.clone();
        rank += 1;
    }
    rank
}

type SparseRow = Vec<(usize, i64)>;

/// Row scaled to integers, as sorted `(column, value)` pairs; `None` if an
/// entry does not fit in `i64`.
fn sparse_integer_row(row: &[Scalar]) -> Option<SparseRow> {
    let lcm = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    row.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(c, x)| i64::try_from(x.numer() * (&lcm / x.denom())).ok().map(|v| (c, v)))
        .collect()
}

/// `b * row - a * pivot` divided by the gcd of its entries. The leading
/// entries cancel when `row` leads with `a` and `pivot` with `b`.
fn eliminate(row: &[(usize, i64)], a: i64, pivot: &[(usize, i64)], b: i64) -> Option<SparseRow> {
    let g = a.gcd(&b);
    let (a, b) = (a / g, b / g);
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < pivot.len() {
        let ci = row.get(i).map_or(usize::MAX, |e| e.0);
        let cj = pivot.get(j).map_or(usize::MAX, |e| e.0);
        let (c, x, y) = match ci.cmp(&cj) {
            std::cmp::Ordering::Less => {
                i += 1;
                (ci, row[i - 1].1, 0)
            }
            std::cmp::Ordering::Greater => {
                j += 1;
                (cj, 0, pivot[j - 1].1)
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
                (ci, row[i - 1].1, pivot[j - 1].1)
            }
        };
        let v = b.checked_mul(x)?.checked_sub(a.checked_mul(y)?)?;
        if v != 0 {
            out.push((c, v));
        }
    }
    let g = out.iter().fold(0i64, |acc, e| acc.gcd(&e.1));
    if g > 1 {
        for e in &mut out {
            e.1 /= g;
        }
    }
    Some(out)
}

/// Exact rank over Q by sparse integer elimination, one pivot per leading
/// column. Returns `None` on `i64` overflow.
fn rank_sparse_integer(m: &DenseMatrix) -> Option<usize> {
    let mut pivots: HashMap<usize, SparseRow> = HashMap::new();
    for r in 0..m.rows() {
        let mut row = sparse_integer_row(m.row(r))?;
        while let Some(&(lead, a)) = row.first() {
            match pivots.get(&lead) {
                Some(p) => row = eliminate(&row, a, p, p[0].1)?,
                None => {
                    pivots.insert(lead, row);
                    break;
                }
            }
        }
    }
    Some(pivots.len())
}

/// Rank of `m` over `field`.
pub fn rank(m: &DenseMatrix, field: Field) -> Result<usize> {
    match field {
        Field::Rational => Ok(rank_sparse_integer(m).unwrap_or_else(|| rank_fraction_free(m))),
        Field::Prime(p) => Ok(rref(&Residues(p), lift_rows(&Residues(p), m)?, m.cols())
            .pivots
            .len()),
    }
}

/// Canonical basis of the right null space.
///
/// One vector per non-pivot column of the reduced echelon form: it carries a
/// `1` in its own free column and `0` in every other free column.
pub fn kernel_basis(m: &DenseMatrix, field: Field) -> Result<Vec<Vec<Scalar>>> {
    Ok(kernel(m, field)?.basis)
}

pub fn kernel(m: &DenseMatrix, field: Field) -> Result<Kernel> {
    match field {
        Field::Rational => kernel_with(&Rationals, m),
        Field::Prime(p) => kernel_with(&Residues(p), m),
    }
}

/// Expresses `target` as a combination of `basis`, or returns `None` when it is
/// not in their span. Free coefficients (dependent basis) are set to zero.
pub fn solve_in_span(basis: &[Vec<Scalar>], target: &[Scalar], field: Field) -> Result<Option<Vec<Scalar>>> {
    if let Some(b) = basis.iter().find(|b| b.len() != target.len()) {
        return Err(Error::DimensionMismatch {
            expected: target.len(),
            found: b.len(),
        });
    }
    match field {
        Field::Rational => solve_with(&Rationals, basis, target),
        Field::Prime(p) => solve_with(&Residues(p), basis, target),
    }
}

/// Indices of a maximal linearly independent subset of `vectors`, chosen greedily
/// in order (the pivot columns of the matrix whose columns are `vectors`).
pub fn independent_columns(vectors: &[Vec<Scalar>], dim: usize, field: Field) -> Result<Vec<usize>> {
    let m = DenseMatrix::from_columns(vectors, dim)?;
    Ok(match field {
        Field::Rational => rref(&Rationals, lift_rows(&Rationals, &m)?, m.cols()).pivots,
        Field::Prime(p) => rref(&Residues(p), lift_rows(&Residues(p), &m)?, m.cols()).pivots,
    })
}

pub fn int(x: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(x))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vec<Scalar> {
        xs.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn sparse_rank_matches_bareiss() {
        let cases: [&[&[i64]]; 4] = [
            &[&[1, -1, 0], &[0, 1, -1], &[1, 0, -1]],
            &[&[2, 4, 6], &[3, 6, 9], &[0, 0, 5]],
            &[&[0, 0], &[0, 0]],
            &[&[0, 3, 0, 1], &[7, 0, 0, 0], &[0, 6, 0, 2], &[7, 3, 0, 1]],
        ];
        for rows in cases {
            let m = DenseMatrix::from_i64_rows(rows);
            assert_eq!(rank_sparse_integer(&m), Some(rank_fraction_free(&m)));
        }
    }

    #[test]
    fn overflow_falls_back_to_bareiss() {
        let big = i64::MAX / 2 + 1;
        let m = DenseMatrix::from_i64_rows(&[&[big, 3], &[3, big]]);
        assert_eq!(rank_sparse_integer(&m), None);
        assert_eq!(rank(&m, Field::Rational).unwrap(), 2);
        let third = Scalar::new(BigInt::from(1), BigInt::from(3));
        let m = DenseMatrix::from_rows(vec![vec![third.clone(), int(1)], vec![int(1), int(3)]], 2).unwrap();
        assert_eq!(rank(&m, Field::Rational).unwrap(), 1);
    }

    #[test]
    fn identity_rank() {
        assert_eq!(rank(&DenseMatrix::identity(3), Field::Rational).unwrap(), 3);
    }

    #[test]
    fn empty_matrices() {
        assert_eq!(rank(&DenseMatrix::zeros(0, 4), Field::Rational).unwrap(), 0);
        assert_eq!(rank(&DenseMatrix::zeros(3, 0), Field::Rational).unwrap(), 0);
        assert_eq!(kernel_basis(&DenseMatrix::zeros(0, 2), Field::Rational).unwrap().len(), 2);
    }

    #[test]
    fn zero_map_kernel_is_standard_basis() {
        let k = kernel_basis(&DenseMatrix::zeros(2, 3), Field::Rational).unwrap();
        assert_eq!(k, vec![v(&[1, 0, 0]), v(&[0, 1, 0]), v(&[0, 0, 1])]);
    }

    #[test]
    fn single_equation_kernel() {
        let m = DenseMatrix::from_i64_rows(&[&[1, -1]]);
        assert_eq!(kernel_basis(&m, Field::Rational).unwrap(), vec![v(&[1, 1])]);
    }

    #[test]
    fn solve_simple() {
        let basis = vec![v(&[1, 0])];
        assert_eq!(solve_in_span(&basis, &v(&[2, 0]), Field::Rational).unwrap(), Some(v(&[2])));
        assert_eq!(solve_in_span(&basis, &v(&[0, 1]), Field::Rational).unwrap(), None);
        assert!(matches!(
            solve_in_span(&basis, &v(&[0, 1, 2]), Field::Rational),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn prime_field_rank_differs_when_p_divides_det() {
        let m = DenseMatrix::from_i64_rows(&[&[2, 0], &[0, 3]]);
        assert_eq!(rank(&m, Field::Rational).unwrap(), 2);
        assert_eq!(rank(&m, Field::Prime(3)).unwrap(), 1);
        let k = kernel_basis(&m, Field::Prime(3)).unwrap();
        assert_eq!(k, vec![v(&[0, 1])]);
    }

    #[test]
    fn rational_entries() {
        let half = Scalar::new(1.into(), 2.into());
        let m = DenseMatrix::from_rows(vec![vec![half.clone(), int(1)], vec![int(1), int(2)]], 2).unwrap();
        assert_eq!(rank(&m, Field::Rational).unwrap(), 1);
        assert_eq!(rank(&m, Field::Prime(5)).unwrap(), 1);
    }

    #[test]
    fn field_parsing() {
        assert_eq!("Q".parse::<Field>().unwrap(), Field::Rational);
        assert_eq!("Fp:10007".parse::<Field>().unwrap(), Field::Prime(10007));
        assert!("Fp:10".parse::<Field>().is_err());
        assert!("R".parse::<Field>().is_err());
        assert_eq!(Field::Prime(7).to_string(), "Fp:7");
    }

    #[test]
    fn independent_columns_greedy() {
        let cols = vec![v(&[1, 0]), v(&[2, 0]), v(&[0, 1]), v(&[1, 1])];
        assert_eq!(independent_columns(&cols, 2, Field::Rational).unwrap(), vec![0, 2]);
    }
}
