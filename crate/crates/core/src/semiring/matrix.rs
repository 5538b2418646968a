use std::fmt;

use super::Semiring;
use crate::error::{Error, Result};

/// Dense row-major matrix over a semiring.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Semiring> Matrix<S> {
    pub fn new(rows: usize, cols: usize, data: Vec<S>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::dims("matrix data", rows * cols, data.len()));
        }
        Ok(Matrix { rows, cols, data })
    }

    /// Builds a matrix from rows; every row must have `cols` entries.
    pub fn from_rows(cols: usize, rows: Vec<Vec<S>>) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return Err(Error::dims(format!("matrix row {i}"), cols, row.len()));
            }
            data.extend(row);
        }
        Ok(Matrix {
            rows: n,
            cols,
            data,
        })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![S::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = S::one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &S {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: S) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[S] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<S> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<S>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                data.push(self.get(r, c).clone());
            }
        }
        Matrix {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn map<T: Semiring>(&self, f: impl FnMut(&S) -> T) -> Matrix<T> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }
}

impl<S: fmt::Display> fmt::Debug for Matrix<S> {
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
                write!(f, "{}", self.data[r * self.cols + c])?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

pub fn dot<S: Semiring>(a: &[S], b: &[S]) -> Result<S> {
    if a.len() != b.len() {
        return Err(Error::dims("dot product", a.len(), b.len()));
    }
    Ok(a.iter()
        .zip(b)
        .fold(S::zero(), |acc, (x, y)| acc.add(&x.mul(y))))
}

pub fn mat_mul<S: Semiring>(a: &Matrix<S>, b: &Matrix<S>) -> Result<Matrix<S>> {
    if a.cols != b.rows {
        return Err(Error::dims("matrix product", a.cols, b.rows));
    }
    let mut data = Vec::with_capacity(a.rows * b.cols);
    for r in 0..a.rows {
        for c in 0..b.cols {
            let mut acc = S::zero();
            for k in 0..a.cols {
                acc = acc.add(&a.get(r, k).mul(b.get(k, c)));
            }
            data.push(acc);
        }
    }
    Ok(Matrix {
        rows: a.rows,
        cols: b.cols,
        data,
    })
}

/// Column action `A·v`.
pub fn mat_vec<S: Semiring>(a: &Matrix<S>, v: &[S]) -> Result<Vec<S>> {
    if a.cols != v.len() {
        return Err(Error::dims("matrix-vector product", a.cols, v.len()));
    }
    (0..a.rows).map(|r| dot(a.row(r), v)).collect()
}

/// Row action `v·A`.
pub fn vec_mat<S: Semiring>(v: &[S], a: &Matrix<S>) -> Result<Vec<S>> {
    if a.rows != v.len() {
        return Err(Error::dims("vector-matrix product", a.rows, v.len()));
    }
    let mut out = vec![S::zero(); a.cols];
    for (r, x) in v.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (c, acc) in out.iter_mut().enumerate() {
            *acc = acc.add(&x.mul(a.get(r, c)));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semiring::{Boolean, Integer, Tropical};

    fn int_matrix(rows: &[&[i64]]) -> Matrix<Integer> {
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::from_rows(
            cols,
            rows.iter()
                .map(|r| r.iter().map(|&x| Integer::from(x)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn identity_is_neutral() {
        let m = int_matrix(&[&[1, -2, 3], &[0, 5, 7]]);
        assert_eq!(mat_mul(&Matrix::identity(2), &m).unwrap(), m);
        assert_eq!(mat_mul(&m, &Matrix::identity(3)).unwrap(), m);
    }

    #[test]
    fn boolean_product() {
        let a = Matrix::from_rows(2, vec![vec![Boolean(true), Boolean(true)]]).unwrap();
        let b = Matrix::from_rows(1, vec![vec![Boolean(false)], vec![Boolean(true)]]).unwrap();
        assert_eq!(mat_mul(&a, &b).unwrap().row(0), &[Boolean(true)]);
    }

    #[test]
    fn tropical_product() {
        let a = Matrix::from_rows(2, vec![vec![Tropical::finite(3), Tropical::finite(5)]]).unwrap();
        let b = Matrix::from_rows(
            1,
            vec![vec![Tropical::finite(2)], vec![Tropical::finite(4)]],
        )
        .unwrap();
        assert_eq!(mat_mul(&a, &b).unwrap().row(0), &[Tropical::finite(5)]);
    }

    #[test]
    fn vector_actions() {
        let swap = int_matrix(&[&[0, 1], &[1, 0]]);
        let e0 = vec![Integer::from(1), Integer::from(0)];
        assert_eq!(
            mat_vec(&swap, &e0).unwrap(),
            vec![Integer::from(0), Integer::from(1)]
        );
        let ones = vec![Integer::from(1), Integer::from(1)];
        assert_eq!(vec_mat(&ones, &swap).unwrap(), ones);
        let z = Matrix::<Integer>::zeros(2, 2);
        assert_eq!(mat_vec(&z, &ones).unwrap(), vec![Integer::from(0); 2]);
    }

    #[test]
    fn dimension_errors() {
        let a = int_matrix(&[&[1, 2]]);
        assert!(mat_mul(&a, &a).is_err());
        assert!(mat_vec(&a, &[Integer::from(1)]).is_err());
        assert!(vec_mat(&[Integer::from(1), Integer::from(1)], &a).is_err());
        assert!(Matrix::<Integer>::new(2, 2, vec![]).is_err());
        assert!(Matrix::from_rows(2, vec![vec![Integer::from(1)]]).is_err());
    }
}
