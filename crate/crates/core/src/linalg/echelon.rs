use super::ModuleBasis;
use crate::error::{Error, Result};
use crate::semiring::{Rational, Ring, Semiring};

/// A subspace of `ℚ^n` given by its reduced row echelon basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldBasis {
    dim: usize,
    rows: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
}

impl FieldBasis {
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn from_generators<'a>(
        dim: usize,
        gens: impl IntoIterator<Item = &'a [Rational]>,
    ) -> Result<Self> {
        let mut b = FieldBasis::empty(dim);
        for g in gens {
            b.insert(g)?;
        }
        Ok(b)
    }

    fn check_len(&self, v: &[Rational]) -> Result<()> {
        if v.len() != self.dim {
            return Err(Error::dims("subspace vector", self.dim, v.len()));
        }
        Ok(())
    }

    /// Subtracts the pivot components, returning the residue and the coefficients used.
    fn reduce(&self, v: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
        let mut rest = v.to_vec();
        let mut coeffs = Vec::with_capacity(self.rows.len());
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = rest[p].clone();
            if !c.is_zero() {
                axpy(&mut rest, &c, row);
            }
            coeffs.push(c);
        }
        (rest, coeffs)
    }
}

/// `target -= c · row`
fn axpy(target: &mut [Rational], c: &Rational, row: &[Rational]) {
    for (x, y) in target.iter_mut().zip(row) {
        if !y.is_zero() {
            *x = x.sub(&c.mul(y));
        }
    }
}

impl ModuleBasis<Rational> for FieldBasis {
    fn empty(dim: usize) -> Self {
        FieldBasis {
            dim,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    fn dim(&self) -> usize {
        self.dim
    }

    fn rows(&self) -> &[Vec<Rational>] {
        &self.rows
    }

    fn insert(&mut self, v: &[Rational]) -> Result<bool> {
        self.check_len(v)?;
        let (mut rest, _) = self.reduce(v);
        let Some(p) = rest.iter().position(|x| !x.is_zero()) else {
            return Ok(false);
        };
        let scale = rest[p].inv().expect("nonzero pivot");
        for x in rest.iter_mut() {
            *x = x.mul(&scale);
        }
        for row in self.rows.iter_mut() {
            let c = row[p].clone();
            if !c.is_zero() {
                axpy(row, &c, &rest);
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, rest);
        Ok(true)
    }

    fn coordinates(&self, v: &[Rational]) -> Result<Option<Vec<Rational>>> {
        self.check_len(v)?;
        let (rest, coeffs) = self.reduce(v);
        if rest.iter().all(Semiring::is_zero) {
            Ok(Some(coeffs))
        } else {
            Ok(None)
        }
    }
}
