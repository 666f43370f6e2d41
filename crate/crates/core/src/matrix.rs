//! Dense matrices over an exact field: products, reduced row-echelon form,
//! solving, kernels and inverses.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::field::{Field, FieldElement};
use crate::subspace::SubspaceBasis;
use crate::vector::{self, Vector};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    field: Field,
    data: Vec<FieldElement>,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Matrix {
        Matrix {
            rows,
            cols,
            field,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    /// Builds from row vectors; `cols` is needed when there are no rows.
    pub fn from_rows(field: Field, cols: usize, rows: Vec<Vector>) -> Matrix {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend(r);
        }
        Matrix {
            rows: n,
            cols,
            field,
            data,
        }
    }

    pub fn from_i64(field: Field, rows: &[&[i64]]) -> Matrix {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&x| field.from_i64(x)).collect())
            .collect();
        Matrix::from_rows(field, cols, rows)
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

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &FieldElement {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: FieldElement) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[FieldElement] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vectors(&self) -> Vec<Vector> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn entries(&self) -> &[FieldElement] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        vector::is_zero(&self.data)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            let acc = &mut out.data[i * other.cols..(i + 1) * other.cols];
            for k in 0..self.cols {
                vector::add_scaled(acc, self.get(i, k), other.row(k));
            }
        }
        out
    }

    /// The row vector `v * self`.
    pub fn vec_mul(&self, v: &[FieldElement]) -> Vector {
        assert_eq!(v.len(), self.rows, "vector-matrix shape mismatch");
        let mut acc = vector::zero_vector(self.field, self.cols);
        for (k, c) in v.iter().enumerate() {
            vector::add_scaled(&mut acc, c, self.row(k));
        }
        acc
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            field: self.field,
            data: vector::add(&self.data, &other.data),
        }
    }

    pub fn scale(&self, c: &FieldElement) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            field: self.field,
            data: vector::scale(c, &self.data),
        }
    }

    /// Rows `r0..r1`, columns `c0..c1`.
    pub fn block(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Matrix {
        let rows = (r0..r1).map(|i| self.row(i)[c0..c1].to_vec()).collect();
        Matrix::from_rows(self.field, c1 - c0, rows)
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &Matrix) {
        for i in 0..b.rows {
            for j in 0..b.cols {
                self.set(r0 + i, c0 + j, b.get(i, j).clone());
            }
        }
    }

    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        let rows = (0..self.rows)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.extend_from_slice(other.row(i));
                r
            })
            .collect();
        Matrix::from_rows(self.field, self.cols + other.cols, rows)
    }

    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            field: self.field,
            data,
        }
    }

    /// Reduced row-echelon form with zero rows dropped, and the pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut rows = self.row_vectors();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == rows.len() {
                break;
            }
            let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
                continue;
            };
            rows.swap(r, p);
            let inv = rows[r][c].inv().expect("nonzero pivot");
            if !inv.is_one() {
                for x in rows[r].iter_mut().skip(c) {
                    *x = &*x * &inv;
                }
            }
            let pivot_row = rows[r].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i != r && !row[c].is_zero() {
                    let f = -&row[c];
                    vector::add_scaled(&mut row[c..], &f, &pivot_row[c..]);
                }
            }
            pivots.push(c);
            r += 1;
        }
        rows.truncate(r);
        (Matrix::from_rows(self.field, self.cols, rows), pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let aug = self.hstack(&Matrix::identity(self.field, n));
        let (r, pivots) = aug.rref();
        if pivots.iter().take(n).enumerate().any(|(i, &p)| p != i) || pivots.len() < n {
            return None;
        }
        Some(r.block(0, n, n, 2 * n))
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }
}

/// Some `x` with `a * x = b`, free variables set to zero; `None` when
/// inconsistent.
pub fn solve(a: &Matrix, b: &Matrix) -> Option<Matrix> {
    assert_eq!(a.rows, b.rows, "solve: row counts differ");
    let n = a.cols;
    let (r, pivots) = a.hstack(b).rref();
    if pivots.last().is_some_and(|&p| p >= n) {
        return None;
    }
    let mut x = Matrix::zeros(a.field, n, b.cols);
    for (i, &p) in pivots.iter().enumerate() {
        for j in 0..b.cols {
            x.set(p, j, r.get(i, n + j).clone());
        }
    }
    Some(x)
}

/// Right null space `{v : a * v = 0}`.
pub fn kernel(a: &Matrix) -> SubspaceBasis {
    let n = a.cols;
    let (r, pivots) = a.rref();
    let mut basis = Vec::new();
    let mut pi = 0;
    for f in 0..n {
        if pi < pivots.len() && pivots[pi] == f {
            pi += 1;
            continue;
        }
        let mut v = vector::zero_vector(a.field, n);
        v[f] = a.field.one();
        for (i, &p) in pivots.iter().enumerate() {
            v[p] = -r.get(i, f);
        }
        basis.push(v);
    }
    SubspaceBasis::span(a.field, n, &basis)
}

/// Solution space of a homogeneous linear system given by its residual map:
/// column `k` of the system is the residual of the `k`-th unit vector.
pub fn solution_space(field: Field, nvars: usize, residual: impl Fn(&[FieldElement]) -> Vector) -> SubspaceBasis {
    let cols: Vec<Vector> = (0..nvars)
        .map(|k| residual(&vector::unit_vector(field, nvars, k)))
        .collect();
    let neq = cols.first().map_or(0, |c| c.len());
    let system = Matrix::from_rows(field, neq, cols).transpose();
    kernel(&system)
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl Serialize for Matrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rational
    }

    #[test]
    fn rref_examples() {
        let i2 = Matrix::identity(q(), 2);
        assert_eq!(i2.rref(), (i2.clone(), vec![0, 1]));

        let m = Matrix::from_i64(q(), &[&[2, 4], &[1, 2]]);
        let (r, p) = m.rref();
        assert_eq!(r, Matrix::from_i64(q(), &[&[1, 2]]));
        assert_eq!(p, vec![0]);

        let f3 = Field::prime(3).unwrap();
        let m = Matrix::from_i64(f3, &[&[1, 1], &[1, 2]]);
        assert_eq!(m.rref().0, Matrix::identity(f3, 2));
    }

    #[test]
    fn solve_examples() {
        let b = Matrix::from_i64(q(), &[&[3, -1], &[5, 7]]);
        assert_eq!(solve(&Matrix::identity(q(), 2), &b), Some(b));

        let a = Matrix::from_i64(q(), &[&[1, 1]]);
        let x = solve(&a, &Matrix::from_i64(q(), &[&[1]])).unwrap();
        assert_eq!(x, Matrix::from_i64(q(), &[&[1], &[0]]));

        let a = Matrix::from_i64(q(), &[&[1], &[1]]);
        assert_eq!(solve(&a, &Matrix::from_i64(q(), &[&[1], &[2]])), None);
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(kernel(&Matrix::identity(q(), 3)).dim(), 0);
        assert_eq!(kernel(&Matrix::zeros(q(), 2, 3)).dim(), 3);

        let a = Matrix::from_i64(q(), &[&[1, 2, 3]]);
        let k = kernel(&a);
        assert_eq!(k.dim(), 2);
        for v in k.vectors() {
            let col = Matrix::from_rows(q(), 1, v.iter().map(|x| vec![x.clone()]).collect());
            assert!(a.mul(&col).is_zero());
        }
    }

    #[test]
    fn inverse_round_trip() {
        let m = Matrix::from_i64(q(), &[&[2, 1], &[7, 4]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(q(), 2));
        assert!(Matrix::from_i64(q(), &[&[1, 2], &[2, 4]]).inverse().is_none());
        assert_eq!(Matrix::zeros(q(), 0, 0).inverse(), Some(Matrix::zeros(q(), 0, 0)));
    }
}
