//! Canonical bases of submodules of `S^n` for `S = ℚ` (reduced row echelon form)
//! and `S = ℤ` (row Hermite normal form).
//!
//! Both forms are unique for a given span or lattice, so two bases describe the
//! same submodule exactly when they are structurally equal.

mod echelon;
mod hnf;

pub use echelon::FieldBasis;
pub use hnf::{hnf, is_hnf, IntegerBasis};

use std::fmt;

use crate::error::Result;
use crate::semiring::{Integer, Rational, Ring};

/// A canonical basis of a submodule of `S^dim`.
pub trait ModuleBasis<S: Ring>: Clone + PartialEq + Eq + fmt::Debug + Send + Sync {
    /// The basis of the zero submodule.
    fn empty(dim: usize) -> Self;

    fn dim(&self) -> usize;

    fn rows(&self) -> &[Vec<S>];

    fn rank(&self) -> usize {
        self.rows().len()
    }

    /// Adds `v` to the generators. Returns whether the submodule grew.
    fn insert(&mut self, v: &[S]) -> Result<bool>;

    /// Coefficients `c` with `c·B = v`, or `None` when `v` lies outside the submodule.
    fn coordinates(&self, v: &[S]) -> Result<Option<Vec<S>>>;

    fn contains(&self, v: &[S]) -> Result<bool> {
        Ok(self.coordinates(v)?.is_some())
    }

    /// Linear combination `c·B`.
    fn combine(&self, coeffs: &[S]) -> Vec<S> {
        let mut out = vec![S::zero(); self.dim()];
        for (c, row) in coeffs.iter().zip(self.rows()) {
            for (acc, x) in out.iter_mut().zip(row) {
                *acc = acc.add(&c.mul(x));
            }
        }
        out
    }
}

/// Rings over which reachable submodules are computed exactly.
pub trait ExactDomain: Ring {
    type Basis: ModuleBasis<Self>;
}

impl ExactDomain for Integer {
    type Basis = IntegerBasis;
}

impl ExactDomain for Rational {
    type Basis = FieldBasis;
}
