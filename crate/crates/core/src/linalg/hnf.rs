use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{Signed, Zero};

use super::ModuleBasis;
use crate::error::{Error, Result};
use crate::semiring::{Integer, Matrix};

/// Row-style Hermite normal form.
///
/// Returns `(H, U)` with `U·A = H` and `U` unimodular. Nonzero rows of `H` come
/// first, their pivot columns strictly increase, pivots are positive and every entry
/// above a pivot lies in `[0, pivot)`.
pub fn hnf(a: &Matrix<Integer>) -> (Matrix<Integer>, Matrix<Integer>) {
    let m = a.rows();
    let n = a.cols();
    let mut h: Vec<Vec<BigInt>> = (0..m)
        .map(|r| a.row(r).iter().map(|x| x.0.clone()).collect())
        .collect();
    let mut u: Vec<Vec<BigInt>> = (0..m)
        .map(|r| {
            (0..m)
                .map(|c| {
                    if r == c {
                        BigInt::from(1)
                    } else {
                        BigInt::zero()
                    }
                })
                .collect()
        })
        .collect();

    let mut r = 0;
    for c in 0..n {
        if r == m {
            break;
        }
        // Euclid on column c over rows r.., smallest nonzero magnitude as pivot
        loop {
            let pivot = (r..m)
                .filter(|&k| !h[k][c].is_zero())
                .min_by(|&x, &y| h[x][c].abs().cmp(&h[y][c].abs()));
            let Some(p) = pivot else { break };
            h.swap(r, p);
            u.swap(r, p);
            let mut clean = true;
            for k in r + 1..m {
                if h[k][c].is_zero() {
                    continue;
                }
                let q = h[k][c].div_floor(&h[r][c]);
                sub_multiple(&mut h, k, r, &q);
                sub_multiple(&mut u, k, r, &q);
                if !h[k][c].is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if h[r][c].is_zero() {
            continue;
        }
        if h[r][c].is_negative() {
            negate(&mut h[r]);
            negate(&mut u[r]);
        }
        for k in 0..r {
            let q = h[k][c].div_floor(&h[r][c]);
            if !q.is_zero() {
                sub_multiple(&mut h, k, r, &q);
                sub_multiple(&mut u, k, r, &q);
            }
        }
        r += 1;
    }

    (to_matrix(n, h), to_matrix(m, u))
}

fn sub_multiple(rows: &mut [Vec<BigInt>], target: usize, source: usize, q: &BigInt) {
    let (t, s) = if target < source {
        let (lo, hi) = rows.split_at_mut(source);
        (&mut lo[target], &hi[0])
    } else {
        let (lo, hi) = rows.split_at_mut(target);
        (&mut hi[0], &lo[source])
    };
    for (x, y) in t.iter_mut().zip(s) {
        *x -= q * y;
    }
}

fn negate(row: &mut [BigInt]) {
    for x in row {
        *x = -&*x;
    }
}

fn to_matrix(cols: usize, rows: Vec<Vec<BigInt>>) -> Matrix<Integer> {
    let rows = rows
        .into_iter()
        .map(|r| r.into_iter().map(Integer).collect())
        .collect();
    Matrix::from_rows(cols, rows).expect("rectangular by construction")
}

fn pivot_col(row: &[Integer]) -> Option<usize> {
    row.iter().position(|x| !x.0.is_zero())
}

/// Checks the canonical shape produced by [`hnf`], zero rows allowed only at the bottom.
pub fn is_hnf(rows: &[Vec<Integer>]) -> bool {
    let mut last: Option<usize> = None;
    let mut seen_zero = false;
    for (i, row) in rows.iter().enumerate() {
        let Some(p) = pivot_col(row) else {
            seen_zero = true;
            continue;
        };
        if seen_zero || last.is_some_and(|l| p <= l) {
            return false;
        }
        let pivot = &row[p].0;
        if !pivot.is_positive() {
            return false;
        }
        for above in &rows[..i] {
            let e = &above[p].0;
            if e.is_negative() || e >= pivot {
                return false;
            }
        }
        last = Some(p);
    }
    true
}

/// A lattice in `ℤ^n` given by the nonzero rows of its Hermite normal form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntegerBasis {
    dim: usize,
    rows: Vec<Vec<Integer>>,
}

impl IntegerBasis {
    /// Lattice generated by the rows of `m`.
    pub fn from_generators(m: &Matrix<Integer>) -> Self {
        let (h, _) = hnf(m);
        let rows = h
            .row_vecs()
            .into_iter()
            .filter(|r| pivot_col(r).is_some())
            .collect();
        IntegerBasis {
            dim: m.cols(),
            rows,
        }
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows
            .iter()
            .map(|r| pivot_col(r).expect("basis rows are nonzero"))
            .collect()
    }

    fn check_len(&self, v: &[Integer]) -> Result<()> {
        if v.len() != self.dim {
            return Err(Error::dims("lattice vector", self.dim, v.len()));
        }
        Ok(())
    }
}

impl ModuleBasis<Integer> for IntegerBasis {
    fn empty(dim: usize) -> Self {
        IntegerBasis {
            dim,
            rows: Vec::new(),
        }
    }

    fn dim(&self) -> usize {
        self.dim
    }

    fn rows(&self) -> &[Vec<Integer>] {
        &self.rows
    }

    fn insert(&mut self, v: &[Integer]) -> Result<bool> {
        if self.contains(v)? {
            return Ok(false);
        }
        let mut gens = self.rows.clone();
        gens.push(v.to_vec());
        let m = Matrix::from_rows(self.dim, gens)?;
        *self = IntegerBasis::from_generators(&m);
        Ok(true)
    }

    fn coordinates(&self, v: &[Integer]) -> Result<Option<Vec<Integer>>> {
        self.check_len(v)?;
        let mut rest: Vec<BigInt> = v.iter().map(|x| x.0.clone()).collect();
        let mut coeffs = Vec::with_capacity(self.rows.len());
        let mut start = 0;
        for row in &self.rows {
            let p = pivot_col(row).expect("basis rows are nonzero");
            if rest[start..p].iter().any(|x| !x.is_zero()) {
                return Ok(None);
            }
            let (q, rem) = rest[p].div_rem(&row[p].0);
            if !rem.is_zero() {
                return Ok(None);
            }
            if !q.is_zero() {
                for (x, y) in rest.iter_mut().zip(row) {
                    *x -= &q * &y.0;
                }
            }
            coeffs.push(Integer(q));
            start = p + 1;
        }
        if rest.iter().any(|x| !x.is_zero()) {
            return Ok(None);
        }
        Ok(Some(coeffs))
    }
}
