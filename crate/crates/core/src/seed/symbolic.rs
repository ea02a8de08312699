use alloc::vec::Vec;

use super::{mutate_coeffs, Mutable};
use crate::error::{Error, Result};
use crate::matrix::ExchangeMatrix;
use crate::permutation::Permutation;
use crate::semifield::{Monomial, SfRational, DEFAULT_MAX_TERMS};

/// Seed over the universal semifield. Coefficients are functions of
/// `y_0..y_{n-1}` (variables `0..n`); cluster variables live in the joint
/// variables, with `x_i` numbered `n + i`.
#[derive(Clone, Debug)]
pub struct SymbolicSeed {
    b: ExchangeMatrix,
    x: Vec<SfRational>,
    y: Vec<SfRational>,
}

impl SymbolicSeed {
    pub fn initial(b: ExchangeMatrix) -> Self {
        Self::initial_with_cap(b, DEFAULT_MAX_TERMS)
    }

    pub fn initial_with_cap(b: ExchangeMatrix, cap: usize) -> Self {
        let n = b.n();
        let y = (0..n).map(|i| SfRational::var(i).with_max_terms(cap)).collect();
        let x = (0..n).map(|i| SfRational::var(n + i).with_max_terms(cap)).collect();
        Self { b, x, y }
    }

    pub fn from_parts(b: ExchangeMatrix, x: Vec<SfRational>, y: Vec<SfRational>) -> Result<Self> {
        let n = b.n();
        if x.len() != n || y.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: x.len().min(y.len()) });
        }
        Ok(Self { b, x, y })
    }

    pub fn n(&self) -> usize {
        self.b.n()
    }

    pub fn b(&self) -> &ExchangeMatrix {
        &self.b
    }

    pub fn x(&self) -> &[SfRational] {
        &self.x
    }

    pub fn y(&self) -> &[SfRational] {
        &self.y
    }

    /// Variable index of `x_i` in the joint variables.
    pub fn x_var(&self, i: usize) -> usize {
        self.n() + i
    }

    pub fn mutate(&self, k: usize) -> Result<Self> {
        let x = mutate_cluster(&self.x, &self.y, &self.b, k)?;
        let y = mutate_coeffs(&self.y, &self.b, k)?;
        Ok(Self { b: self.b.mutate(k)?, x, y })
    }

    /// Componentwise equality of the matrices, clusters and coefficients.
    pub fn seed_eq(&self, other: &Self) -> bool {
        self.b == other.b
            && self.x.iter().zip(&other.x).all(|(a, b)| a.sf_eq(b))
            && self.y.iter().zip(&other.y).all(|(a, b)| a.sf_eq(b))
    }

    /// First `i` with `x_{nu(i)} != reference.x_i` or `y_{nu(i)} != reference.y_i`.
    pub fn first_relabel_mismatch(&self, reference: &Self, nu: &Permutation) -> Option<usize> {
        (0..self.n()).find(|&i| {
            let j = nu.apply(i);
            !self.x[j].sf_eq(&reference.x[i]) || !self.y[j].sf_eq(&reference.y[i])
        })
    }
}

impl Mutable for SymbolicSeed {
    fn mutate(&self, k: usize) -> Result<Self> {
        SymbolicSeed::mutate(self, k)
    }
}

/// Cluster exchange relation at `k`:
/// `x''_k = (y_k prod_{b_jk>0} x_j^{b_jk} + prod_{b_jk<0} x_j^{-b_jk}) / ((1 + y_k) x_k)`.
pub fn mutate_cluster(x: &[SfRational], y: &[SfRational], b: &ExchangeMatrix, k: usize) -> Result<Vec<SfRational>> {
    b.check_index(k)?;
    let one = SfRational::one().with_max_terms(y[k].max_terms());
    let mut plus = y[k].clone();
    let mut minus = one.clone();
    for (j, xj) in x.iter().enumerate() {
        let bjk = b.get(j, k);
        if bjk > 0 {
            plus = plus.mul(&xj.pow(bjk)?)?;
        } else if bjk < 0 {
            minus = minus.mul(&xj.pow(-bjk)?)?;
        }
    }
    let top = plus.add(&minus)?;
    let bottom = one.add(&y[k])?.mul(&x[k])?;
    let mut out = x.to_vec();
    out[k] = top.div(&bottom)?;
    Ok(out)
}

/// Laurent monomial `x^a` in the joint variables of an `n`-index seed.
pub(crate) fn x_monomial(n: usize, exps: &[i64]) -> Monomial {
    Monomial::from_dense(exps, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semifield::Poly;
    use alloc::vec;

    fn a2() -> ExchangeMatrix {
        ExchangeMatrix::from_rows(&[vec![0, 1], vec![-1, 0]]).unwrap()
    }

    #[test]
    fn a2_cluster_step() {
        let s = SymbolicSeed::initial(a2()).mutate(0).unwrap();
        // (y1 + x2) / ((1 + y1) x1) with y1 = var 0, x1 = var 2, x2 = var 3
        let expect = SfRational::new(Poly::var(0).add(&Poly::var(3)), Poly::var(2).add(&Poly::var(0).mul(&Poly::var(2))))
            .unwrap();
        assert!(s.x()[0].sf_eq(&expect));
    }

    #[test]
    fn double_mutation_is_identity() {
        let s = SymbolicSeed::initial(a2());
        for k in 0..2 {
            assert!(s.mutate(k).unwrap().mutate(k).unwrap().seed_eq(&s));
        }
    }

    #[test]
    fn laurent_phenomenon_on_a2() {
        let s = super::super::apply_sequence(&SymbolicSeed::initial(a2()), &[0, 1, 0]).unwrap();
        for xi in s.x() {
            // x-dependence of the denominator is a monomial; polynomial factors involve y only
            let (_, den) = xi.factors();
            for (p, _) in den {
                assert!(p.terms().all(|(m, _)| m.iter().all(|(v, _)| v < 2)));
            }
        }
    }

    #[test]
    fn full_a2_period() {
        let s0 = SymbolicSeed::initial(a2());
        let s = super::super::apply_sequence(&s0, &[0, 1, 0, 1, 0, 1, 0, 1, 0, 1]).unwrap();
        assert!(s.seed_eq(&s0));
        let s8 = super::super::apply_sequence(&s0, &[0, 1, 0, 1, 0, 1, 0, 1]).unwrap();
        assert!(s8.first_relabel_mismatch(&s0, &Permutation::identity(2)).is_some());
    }
}
