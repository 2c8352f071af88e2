//! Dense exact linear algebra over `Q` and `Q(i)`.
//!
//! Everything is Gauss-Jordan elimination on `Scalar` entries. The row
//! operations are recorded in a transform matrix `T` with `T * A = rref(A)`,
//! which gives consistency tests, solutions and cokernel witnesses without a
//! second elimination.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::{Field, Scalar};

#[derive(Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    field: Field,
    data: Vec<Scalar>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize, field: Field) -> Self {
        ExactMatrix { rows, cols, field, data: vec![Scalar::zero(field); rows * cols] }
    }

    pub fn identity(n: usize, field: Field) -> Self {
        let mut m = Self::zeros(n, n, field);
        for i in 0..n {
            m.data[i * n + i] = Scalar::one(field);
        }
        m
    }

    /// Builds a matrix from row vectors. `cols` is needed for the zero-row case.
    pub fn from_rows(field: Field, cols: usize, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::Shape(format!("row of length {} in a {cols}-column matrix", row.len())));
            }
            for s in row {
                if s.field() != field {
                    return Err(Error::FieldMismatch { left: field, right: s.field() });
                }
                data.push(s);
            }
        }
        Ok(ExactMatrix { rows: n, cols, field, data })
    }

    pub fn from_i64_rows(field: Field, rows: &[&[i64]]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_rows(
            field,
            cols,
            rows.iter().map(|r| r.iter().map(|&v| Scalar::from_i64(field, v)).collect()).collect(),
        )
    }

    /// Builds a matrix from column vectors of length `rows`.
    pub fn from_columns(field: Field, rows: usize, columns: &[Vec<Scalar>]) -> Result<Self> {
        let mut m = Self::zeros(rows, columns.len(), field);
        for (j, col) in columns.iter().enumerate() {
            if col.len() != rows {
                return Err(Error::Shape(format!("column of length {} in a {rows}-row matrix", col.len())));
            }
            for (i, s) in col.iter().enumerate() {
                if s.field() != field {
                    return Err(Error::FieldMismatch { left: field, right: s.field() });
                }
                m.data[i * m.cols + j] = s.clone();
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

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    /// Panics if `value` is from another field.
    pub fn set(&mut self, i: usize, j: usize, value: Scalar) {
        assert_eq!(value.field(), self.field, "matrix entry field");
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn mul(&self, other: &ExactMatrix) -> Result<ExactMatrix> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!("{}x{} times {}x{}", self.rows, self.cols, other.rows, other.cols)));
        }
        if self.field != other.field {
            return Err(Error::FieldMismatch { left: self.field, right: other.field });
        }
        let mut out = Self::zeros(self.rows, other.cols, self.field);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * out.cols + j;
                        out.data[idx] = &out.data[idx] + &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, got: v.len() });
        }
        if let Some(bad) = v.iter().find(|s| s.field() != self.field) {
            return Err(Error::FieldMismatch { left: self.field, right: bad.field() });
        }
        Ok((0..self.rows).map(|i| dot(self.row(i), v, self.field)).collect())
    }

    pub fn rref(&self) -> RrefResult {
        rref(self)
    }

    pub fn rank(&self) -> usize {
        rref(self).rank
    }
}

fn dot(a: &[Scalar], b: &[Scalar], field: Field) -> Scalar {
    let mut acc = Scalar::zero(field);
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc = &acc + &(x * y);
        }
    }
    acc
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ExactMatrix {}x{} over {}", self.rows, self.cols, self.field)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Output of Gauss-Jordan elimination.
#[derive(Clone, Debug)]
pub struct RrefResult {
    pub rref: ExactMatrix,
    pub rank: usize,
    /// Strictly increasing, one per pivot row.
    pub pivot_cols: Vec<usize>,
    /// Invertible row-operation record: `transform * original == rref`.
    pub transform: ExactMatrix,
}

/// Exact Gauss-Jordan elimination with pivots normalized to 1.
///
/// Among the rows still available for a column, the pivot is the nonzero entry
/// with the smallest total bit length (numerators plus denominators), ties
/// going to the lower row index.
pub fn rref(a: &ExactMatrix) -> RrefResult {
    let field = a.field;
    let (rows, cols) = (a.rows, a.cols);
    let mut m: Vec<Vec<Scalar>> = (0..rows).map(|i| a.row(i).to_vec()).collect();
    let mut t: Vec<Vec<Scalar>> = (0..rows)
        .map(|i| (0..rows).map(|j| if i == j { Scalar::one(field) } else { Scalar::zero(field) }).collect())
        .collect();
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let pivot = (r..rows).filter(|&i| !m[i][c].is_zero()).min_by_key(|&i| (m[i][c].bit_size(), i));
        let Some(p) = pivot else { continue };
        m.swap(r, p);
        t.swap(r, p);

        let inv = m[r][c].inv().expect("nonzero pivot");
        if !inv.is_one() {
            for v in m[r][c..].iter_mut().chain(t[r].iter_mut()) {
                if !v.is_zero() {
                    *v = &*v * &inv;
                }
            }
        }

        let pivot_row = m[r][c..].to_vec();
        let pivot_t = t[r].clone();
        let nz_m: Vec<usize> = (0..pivot_row.len()).filter(|&k| !pivot_row[k].is_zero()).collect();
        let nz_t: Vec<usize> = (0..rows).filter(|&k| !pivot_t[k].is_zero()).collect();
        for i in 0..rows {
            if i == r || m[i][c].is_zero() {
                continue;
            }
            let factor = m[i][c].clone();
            for &k in &nz_m {
                let v = &m[i][c + k] - &(&factor * &pivot_row[k]);
                m[i][c + k] = v;
            }
            for &k in &nz_t {
                let v = &t[i][k] - &(&factor * &pivot_t[k]);
                t[i][k] = v;
            }
        }
        pivot_cols.push(c);
        r += 1;
    }
    let rref = ExactMatrix { rows, cols, field, data: m.into_iter().flatten().collect() };
    let transform = ExactMatrix { rows, cols: rows, field, data: t.into_iter().flatten().collect() };
    RrefResult { rref, rank: r, pivot_cols, transform }
}

impl RrefResult {
    /// Solves `A x = b` for the eliminated `A`, free variables pinned to zero.
    /// `None` means `b` is outside the column space.
    pub fn solve_vec(&self, b: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
        let c = self.transform.mul_vec(b)?;
        if c[self.rank..].iter().any(|v| !v.is_zero()) {
            return Ok(None);
        }
        let mut x = vec![Scalar::zero(self.rref.field); self.rref.cols];
        for (k, &p) in self.pivot_cols.iter().enumerate() {
            x[p] = c[k].clone();
        }
        Ok(Some(x))
    }

    /// Whether the unit vector `e_j` lies in the column space.
    pub fn contains_unit(&self, j: usize) -> bool {
        (self.rank..self.transform.rows).all(|i| self.transform.get(i, j).is_zero())
    }

    pub fn nullspace_basis(&self) -> Vec<Vec<Scalar>> {
        let field = self.rref.field;
        let cols = self.rref.cols;
        let mut is_pivot = vec![false; cols];
        for &p in &self.pivot_cols {
            is_pivot[p] = true;
        }
        (0..cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = vec![Scalar::zero(field); cols];
                v[f] = Scalar::one(field);
                for (k, &p) in self.pivot_cols.iter().enumerate() {
                    v[p] = -self.rref.get(k, f);
                }
                v
            })
            .collect()
    }

    /// The first unit vector `e_j` outside the column space, if any.
    pub fn cokernel_witness(&self) -> Option<Vec<Scalar>> {
        let rows = self.transform.rows;
        if self.rank == rows {
            return None;
        }
        let field = self.rref.field;
        (0..rows).find(|&j| !self.contains_unit(j)).map(|j| {
            let mut v = vec![Scalar::zero(field); rows];
            v[j] = Scalar::one(field);
            v
        })
    }
}

/// Solves `A x = b` exactly; `Ok(None)` signals an inconsistent system.
/// Any returned solution has been re-multiplied and compared against `b`.
pub fn solve(a: &ExactMatrix, b: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
    if b.len() != a.rows {
        return Err(Error::DimensionMismatch { expected: a.rows, got: b.len() });
    }
    let Some(x) = rref(a).solve_vec(b)? else { return Ok(None) };
    if a.mul_vec(&x)? != b {
        return Err(Error::InvalidData("solution failed the A*x = b recheck".into()));
    }
    Ok(Some(x))
}

pub fn nullspace_basis(a: &ExactMatrix) -> Vec<Vec<Scalar>> {
    rref(a).nullspace_basis()
}

/// A vector `b` with `solve(a, b) == None`, or `None` when `a` has full row rank.
pub fn cokernel_witness(a: &ExactMatrix) -> Option<Vec<Scalar>> {
    rref(a).cokernel_witness()
}
