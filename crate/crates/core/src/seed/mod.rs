//! Seeds and their mutations.

mod principal;
mod separation;
mod symbolic;

pub use principal::{check_positivity_assertions, FTracking, PositivityReport, PrincipalSeed};
pub use separation::{separation_reconstruct, y_hat};
pub use symbolic::{mutate_cluster, SymbolicSeed};

use alloc::vec::Vec;

use crate::error::Result;
use crate::matrix::ExchangeMatrix;
use crate::quiver::Quiver;
use crate::semifield::Semifield;

/// Anything that can be mutated at an index.
pub trait Mutable: Sized + Clone {
    fn mutate(&self, k: usize) -> Result<Self>;
}

/// Left-to-right composite mutation `mu_{i_r} ... mu_{i_1}`.
pub fn apply_sequence<T: Mutable>(seed: &T, seq: &[usize]) -> Result<T> {
    let mut cur = seed.clone();
    for &k in seq {
        cur = cur.mutate(k)?;
    }
    Ok(cur)
}

impl Mutable for ExchangeMatrix {
    fn mutate(&self, k: usize) -> Result<Self> {
        ExchangeMatrix::mutate(self, k)
    }
}

impl Mutable for Quiver {
    fn mutate(&self, k: usize) -> Result<Self> {
        Quiver::mutate(self, k)
    }
}

/// Coefficient exchange relation at `k` in any semifield.
pub fn mutate_coeffs<S: Semifield>(y: &[S], b: &ExchangeMatrix, k: usize) -> Result<Vec<S>> {
    b.check_index(k)?;
    let yk = &y[k];
    let one = yk.one_like();
    let mut out = Vec::with_capacity(y.len());
    for (i, yi) in y.iter().enumerate() {
        if i == k {
            out.push(yk.inv()?);
            continue;
        }
        let bki = b.get(k, i);
        let next = if bki == 0 {
            yi.clone()
        } else if bki > 0 {
            yi.mul(&one.oplus(&yk.inv()?)?.pow(-bki)?)?
        } else {
            yi.mul(&one.oplus(yk)?.pow(-bki)?)?
        };
        out.push(next);
    }
    Ok(out)
}

/// Exchange matrix with a coefficient tuple in a semifield `S`.
#[derive(Clone, Debug, PartialEq)]
pub struct CoeffSeed<S> {
    pub b: ExchangeMatrix,
    pub y: Vec<S>,
}

impl<S: Semifield> Mutable for CoeffSeed<S> {
    fn mutate(&self, k: usize) -> Result<Self> {
        Ok(Self { y: mutate_coeffs(&self.y, &self.b, k)?, b: self.b.mutate(k)? })
    }
}
