//! Dense exact matrices with reduced row-echelon form and kernels.
//!
//! Matrices are row-major and act on column vectors, so a linear map
//! `f: V -> W` is a `dim W x dim V` matrix with `f(e_i)` in column `i`.
//! All dimensions in scope are small (at most a few hundred), so dense
//! storage is the right trade.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use super::{ExactError, Field, Scalar, Subspace};

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// A linear map is just its matrix; rows index the target, columns the source.
pub type LinMap = Matrix;

impl Matrix {
    pub fn new(field: Field, rows: usize, cols: usize, data: Vec<Scalar>) -> Matrix {
        assert_eq!(data.len(), rows * cols, "entry count must be rows x cols");
        for s in &data {
            assert_eq!(s.field(), field, "entry from a different field");
        }
        Matrix {
            field,
            rows,
            cols,
            data,
        }
    }

    pub fn zeros(field: Field, rows: usize, cols: usize) -> Matrix {
        Matrix {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m[(i, i)] = field.one();
        }
        m
    }

    pub fn from_rows(field: Field, cols: usize, rows: Vec<Vec<Scalar>>) -> Matrix {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged row");
            data.extend(r);
        }
        Matrix::new(field, n, cols, data)
    }

    pub fn from_columns(field: Field, rows: usize, cols: Vec<Vec<Scalar>>) -> Matrix {
        let n = cols.len();
        let mut m = Matrix::zeros(field, rows, n);
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows, "ragged column");
            for i in 0..rows {
                m[(i, j)] = c[i].clone();
            }
        }
        m
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut m = Matrix::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(j, i)] = self[(i, j)].clone();
            }
        }
        m
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    /// Applies the matrix to a column vector.
    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols, "vector length must equal column count");
        let mut out = vec![self.field.zero(); self.rows];
        for i in 0..self.rows {
            let mut acc = self.field.zero();
            for j in 0..self.cols {
                let e = &self[(i, j)];
                if !e.is_zero() && !v[j].is_zero() {
                    acc = &acc + &(e * &v[j]);
                }
            }
            out[i] = acc;
        }
        out
    }

    /// Kronecker product; row/column index `(i1, i2)` maps to `i1 * rows2 + i2`,
    /// matching the tensor-basis convention used throughout.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.field, other.field);
        let mut m = Matrix::zeros(
            self.field,
            self.rows * other.rows,
            self.cols * other.cols,
        );
        for i1 in 0..self.rows {
            for j1 in 0..self.cols {
                let a = &self[(i1, j1)];
                if a.is_zero() {
                    continue;
                }
                for i2 in 0..other.rows {
                    for j2 in 0..other.cols {
                        let b = &other[(i2, j2)];
                        if !b.is_zero() {
                            m[(i1 * other.rows + i2, j1 * other.cols + j2)] = a * b;
                        }
                    }
                }
            }
        }
        m
    }

    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        assert_eq!(self.field, other.field);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix::new(self.field, self.rows + other.rows, self.cols, data)
    }

    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        assert_eq!(self.field, other.field);
        let mut m = Matrix::zeros(self.field, self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(i, j)] = self[(i, j)].clone();
            }
            for j in 0..other.cols {
                m[(i, self.cols + j)] = other[(i, j)].clone();
            }
        }
        m
    }

    /// Reduced row-echelon form together with the pivot columns.
    ///
    /// The result is the canonical RREF: pivots are 1, pivot columns are
    /// cleared above and below, pivot columns strictly increase.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m[(r, c)].inv().expect("pivot is nonzero");
            for j in c..m.cols {
                m[(r, j)] = &m[(r, j)] * &inv;
            }
            for i in 0..m.rows {
                if i != r && !m[(i, c)].is_zero() {
                    let factor = m[(i, c)].clone();
                    for j in c..m.cols {
                        let delta = &factor * &m[(r, j)];
                        m[(i, j)] = &m[(i, j)] - &delta;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// The kernel `{v : Mv = 0}` as a canonical subspace of the source.
    pub fn kernel(&self) -> Subspace {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Vec::with_capacity(free.len());
        for &f in &free {
            let mut v = vec![self.field.zero(); self.cols];
            v[f] = self.field.one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = -&r[(row, f)];
            }
            basis.push(v);
        }
        Subspace::from_generators(self.field, self.cols, basis)
    }

    /// Solves `Mx = b` exactly; free variables are set to zero. `None` when
    /// inconsistent.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(b.len(), self.rows);
        let rhs = Matrix::from_columns(self.field, self.rows, vec![b.to_vec()]);
        let aug = self.hstack(&rhs);
        let (r, pivots) = aug.rref();
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![self.field.zero(); self.cols];
        for (row, &p) in pivots.iter().enumerate() {
            x[p] = r[(row, self.cols)].clone();
        }
        Some(x)
    }

    /// Componentwise scaling.
    pub fn scale(&self, c: &Scalar) -> Matrix {
        let data = self.data.iter().map(|x| x * c).collect();
        Matrix::new(self.field, self.rows, self.cols, data)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Checks agreement of two maps given as matrices, for tests and verdicts.
    pub fn same_shape(&self, other: &Matrix) -> Result<(), ExactError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(ExactError::DimensionMismatch {
                expected: (self.rows, self.cols),
                got: (other.rows, other.cols),
            });
        }
        Ok(())
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "inner dimensions must agree");
        assert_eq!(self.field, rhs.field);
        let mut m = Matrix::zeros(self.field, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        let t = a * b;
                        m[(i, j)] = &m[(i, j)] + &t;
                    }
                }
            }
        }
        m
    }
}

impl Add for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        self.same_shape(rhs).expect("matrix addition shape");
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| a + b)
            .collect();
        Matrix::new(self.field, self.rows, self.cols, data)
    }
}

impl Sub for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        self.same_shape(rhs).expect("matrix subtraction shape");
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| a - b)
            .collect();
        Matrix::new(self.field, self.rows, self.cols, data)
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {}", self.rows, self.cols, self.field)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|s| s.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Vector helpers shared by the algebraic modules.
pub fn vec_add(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vec_sub(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vec_scale(c: &Scalar, a: &[Scalar]) -> Vec<Scalar> {
    a.iter().map(|x| c * x).collect()
}

pub fn vec_is_zero(a: &[Scalar]) -> bool {
    a.iter().all(Scalar::is_zero)
}

/// Tensor of two coordinate vectors under the `(i, j) -> i * dim2 + j` convention.
pub fn vec_tensor(a: &[Scalar], b: &[Scalar], field: Field) -> Vec<Scalar> {
    let mut out = vec![field.zero(); a.len() * b.len()];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i * b.len() + j] = x * y;
            }
        }
    }
    out
}

pub fn unit_vector(field: Field, dim: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![field.zero(); dim];
    v[i] = field.one();
    v
}
