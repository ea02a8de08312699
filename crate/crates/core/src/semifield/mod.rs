//! Semifields used as coefficient domains.

mod monomial;
mod poly;
mod real;
mod sfrational;
mod tropical;

pub use monomial::Monomial;
pub(crate) use poly::bigint_to_f64;
pub use poly::{Poly, DEFAULT_MAX_TERMS};
pub use real::LogReal;
pub use sfrational::{sfr_add, sfr_div, sfr_eq, sfr_mul, trop_evaluate, SfRational};
pub use tropical::{SignClass, TropMonomial};

use crate::error::Result;

/// A semifield: an abelian multiplicative group with a commutative,
/// associative addition `oplus` distributing over multiplication.
///
/// Operations are fallible because exact representations carry size caps.
pub trait Semifield: Clone {
    fn one_like(&self) -> Self;
    fn mul(&self, rhs: &Self) -> Result<Self>;
    fn inv(&self) -> Result<Self>;
    fn oplus(&self, rhs: &Self) -> Result<Self>;

    fn div(&self, rhs: &Self) -> Result<Self> {
        self.mul(&rhs.inv()?)
    }

    fn pow(&self, e: i64) -> Result<Self> {
        let mut base = if e < 0 { self.inv()? } else { self.clone() };
        let mut k = e.unsigned_abs();
        let mut acc = self.one_like();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }
}
