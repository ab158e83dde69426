//! Exact linear algebra over the rationals.
//!
//! Everything here is pure and allocation-owning: matrices are dense, row-major,
//! and every subspace is stored by its reduced row-echelon basis so that two
//! subspaces are equal exactly when their representations are.

use std::fmt;

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Dense row-major matrix of exact rationals.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl DenseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        DenseMatrix { rows, cols, entries: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(DenseMatrix { rows: r, cols: c, entries: rows.into_iter().flatten().collect() })
    }

    /// Builds from a row-major list; panics if the length is wrong.
    pub fn from_vec(rows: usize, cols: usize, entries: Vec<Rational>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count must be rows*cols");
        DenseMatrix { rows, cols, entries }
    }

    /// Convenience constructor from small integers.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let entries = rows
            .iter()
            .flat_map(|row| {
                assert_eq!(row.len(), c);
                row.iter().map(|&v| Rational::from_int(v))
            })
            .collect();
        DenseMatrix { rows: r, cols: c, entries }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Rational> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Rational::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|r| {
                (0..self.cols).all(|c| {
                    let v = self.get(r, c);
                    if r == c {
                        v.is_one()
                    } else {
                        v.is_zero()
                    }
                })
            })
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

    pub fn mul(&self, rhs: &DenseMatrix) -> Result<DenseMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = &out.entries[i * rhs.cols + j];
                    out.entries[i * rhs.cols + j] = cur + &(a * b);
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch("vector length".into()));
        }
        Ok((0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect())
    }

    pub fn scale(&self, s: &Rational) -> DenseMatrix {
        DenseMatrix { rows: self.rows, cols: self.cols, entries: self.entries.iter().map(|e| e * s).collect() }
    }

    pub fn sub(&self, rhs: &DenseMatrix) -> Result<DenseMatrix> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::DimensionMismatch("matrix shapes differ".into()));
        }
        Ok(DenseMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn add(&self, rhs: &DenseMatrix) -> Result<DenseMatrix> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::DimensionMismatch("matrix shapes differ".into()));
        }
        Ok(DenseMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a + b).collect(),
        })
    }

    /// Submatrix picking the given rows and columns, in the given order.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> DenseMatrix {
        let mut out = Self::zeros(rows.len(), cols.len());
        for (i, &r) in rows.iter().enumerate() {
            for (j, &c) in cols.iter().enumerate() {
                out.set(i, j, self.get(r, c).clone());
            }
        }
        out
    }

    /// Stacks `self` above `other`.
    pub fn vstack(&self, other: &DenseMatrix) -> Result<DenseMatrix> {
        if self.cols != other.cols && self.rows > 0 && other.rows > 0 {
            return Err(Error::DimensionMismatch("column counts differ".into()));
        }
        let cols = if self.rows > 0 { self.cols } else { other.cols };
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        Ok(DenseMatrix { rows: self.rows + other.rows, cols, entries })
    }

    /// Reflection along the antidiagonal: `out[i][j] = self[n-1-j][m-1-i]`.
    pub fn antidiagonal_reflection(&self) -> DenseMatrix {
        let (m, n) = (self.rows, self.cols);
        let mut out = Self::zeros(n, m);
        for i in 0..n {
            for j in 0..m {
                out.set(i, j, self.get(m - 1 - j, n - 1 - i).clone());
            }
        }
        out
    }

    /// In-place Gauss-Jordan elimination; returns the pivot columns.
    fn reduce_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut pr = 0;
        for col in 0..self.cols {
            if pr >= self.rows {
                break;
            }
            let Some(found) = (pr..self.rows).find(|&r| !self.get(r, col).is_zero()) else {
                continue;
            };
            if found != pr {
                for c in 0..self.cols {
                    self.entries.swap(found * self.cols + c, pr * self.cols + c);
                }
            }
            let inv = self.get(pr, col).recip();
            if !inv.is_one() {
                for c in col..self.cols {
                    let v = self.get(pr, c) * &inv;
                    self.set(pr, c, v);
                }
            }
            for r in 0..self.rows {
                if r == pr {
                    continue;
                }
                let factor = self.get(r, col).clone();
                if factor.is_zero() {
                    continue;
                }
                for c in col..self.cols {
                    let p = self.get(pr, c);
                    if p.is_zero() {
                        continue;
                    }
                    let v = self.get(r, c) - &(&factor * p);
                    self.set(r, c, v);
                }
            }
            pivots.push(col);
            pr += 1;
        }
        pivots
    }

    /// Unique reduced row-echelon form (same shape, zero rows last).
    pub fn rref(&self) -> DenseMatrix {
        let mut m = self.clone();
        m.reduce_in_place();
        m
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.reduce_in_place().len()
    }

    /// Basis of the right null space `{x | self * x = 0}`, one vector per row, in RREF.
    pub fn kernel(&self) -> DenseMatrix {
        let mut m = self.clone();
        let pivots = m.reduce_in_place();
        let n = self.cols;
        let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
        let mut basis = DenseMatrix::zeros(free.len(), n);
        for (k, &f) in free.iter().enumerate() {
            basis.set(k, f, Rational::one());
            for (row, &pc) in pivots.iter().enumerate() {
                let v = -m.get(row, f);
                basis.set(k, pc, v);
            }
        }
        basis.rref()
    }

    /// Exact inverse; errors on a non-square or singular matrix.
    pub fn invert(&self) -> Result<DenseMatrix> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch(format!("cannot invert a {}x{} matrix", self.rows, self.cols)));
        }
        let n = self.rows;
        let mut aug = DenseMatrix::zeros(n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, n + r, Rational::one());
        }
        let pivots = aug.reduce_in_place();
        if pivots.len() < n || (n > 0 && pivots[n - 1] != n - 1) {
            return Err(Error::Singular);
        }
        let rows: Vec<usize> = (0..n).collect();
        let cols: Vec<usize> = (n..2 * n).collect();
        Ok(aug.select(&rows, &cols))
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }
}

impl fmt::Debug for DenseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

pub fn rref(m: &DenseMatrix) -> DenseMatrix {
    m.rref()
}

pub fn rank(m: &DenseMatrix) -> usize {
    m.rank()
}

pub fn invert(m: &DenseMatrix) -> Result<DenseMatrix> {
    m.invert()
}

/// A subspace of `Q^n`, stored by its canonical reduced row-echelon basis.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient_dim: usize,
    basis: DenseMatrix,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Subspace { ambient_dim, basis: DenseMatrix::zeros(0, ambient_dim) }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Subspace { ambient_dim, basis: DenseMatrix::identity(ambient_dim) }
    }

    /// Span of the rows of `m`.
    pub fn row_span(m: &DenseMatrix) -> Self {
        let r = m.rref();
        let rank = (0..r.rows()).take_while(|&i| r.row(i).iter().any(|x| !x.is_zero())).count();
        let rows: Vec<usize> = (0..rank).collect();
        let cols: Vec<usize> = (0..m.cols()).collect();
        Subspace { ambient_dim: m.cols(), basis: r.select(&rows, &cols) }
    }

    /// Span of the columns of `m`.
    pub fn column_span(m: &DenseMatrix) -> Self {
        Self::row_span(&m.transpose())
    }

    pub fn span(ambient_dim: usize, vectors: &[Vec<Rational>]) -> Result<Self> {
        if vectors.iter().any(|v| v.len() != ambient_dim) {
            return Err(Error::DimensionMismatch("vector length differs from ambient dimension".into()));
        }
        if vectors.is_empty() {
            return Ok(Self::zero(ambient_dim));
        }
        Ok(Self::row_span(&DenseMatrix::from_rows(vectors.to_vec())?))
    }

    /// Span of the coordinate vectors at the given positions.
    pub fn coordinate(ambient_dim: usize, positions: &[usize]) -> Self {
        let mut m = DenseMatrix::zeros(positions.len(), ambient_dim);
        for (k, &p) in positions.iter().enumerate() {
            m.set(k, p, Rational::one());
        }
        Self::row_span(&m)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &DenseMatrix {
        &self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient_dim
    }

    fn check_same_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::DimensionMismatch(format!(
                "ambient dimensions {} and {} differ",
                self.ambient_dim, other.ambient_dim
            )));
        }
        Ok(())
    }

    pub fn contains_vector(&self, v: &[Rational]) -> bool {
        if v.len() != self.ambient_dim {
            return false;
        }
        if v.iter().all(Rational::is_zero) {
            return true;
        }
        let m = self.basis.vstack(&DenseMatrix::from_vec(1, v.len(), v.to_vec())).expect("same width");
        m.rank() == self.dim()
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        if self.ambient_dim != other.ambient_dim {
            return false;
        }
        if self.dim() > other.dim() {
            return false;
        }
        other.sum(self).map(|s| s.dim() == other.dim()).unwrap_or(false)
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_same_ambient(other)?;
        Ok(Self::row_span(&self.basis.vstack(&other.basis)?))
    }

    /// `{f | f(v) = 0 for all v in self}` under the coordinate pairing.
    pub fn annihilator(&self) -> Subspace {
        if self.is_zero() {
            return Self::full(self.ambient_dim);
        }
        Subspace { ambient_dim: self.ambient_dim, basis: self.basis.kernel() }
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_same_ambient(other)?;
        Ok(self.annihilator().sum(&other.annihilator())?.annihilator())
    }

    /// Image under a linear map given by a matrix acting on column vectors.
    pub fn image(&self, m: &DenseMatrix) -> Result<Subspace> {
        if m.cols() != self.ambient_dim {
            return Err(Error::DimensionMismatch("map domain differs from ambient dimension".into()));
        }
        if self.is_zero() {
            return Ok(Self::zero(m.rows()));
        }
        Ok(Self::row_span(&self.basis.mul(&m.transpose())?))
    }

    /// Re-embeds into a larger coordinate space: coordinate `k` goes to `positions[k]`.
    pub fn embed(&self, new_ambient: usize, positions: &[usize]) -> Subspace {
        assert_eq!(positions.len(), self.ambient_dim);
        let mut m = DenseMatrix::zeros(self.dim(), new_ambient);
        for r in 0..self.dim() {
            for (k, &p) in positions.iter().enumerate() {
                m.set(r, p, self.basis.get(r, k).clone());
            }
        }
        Subspace::row_span(&m)
    }

    /// Relabels coordinates: coordinate `k` moves to `perm[k]`.
    pub fn permute(&self, perm: &[usize]) -> Subspace {
        self.embed(self.ambient_dim, perm)
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(dim {} in Q^{}: {:?})", self.dim(), self.ambient_dim, self.basis)
    }
}

pub fn annihilator(s: &Subspace) -> Subspace {
    s.annihilator()
}

pub fn intersect(a: &Subspace, b: &Subspace) -> Result<Subspace> {
    a.intersect(b)
}
