use alloc::vec;
use alloc::vec::Vec;

use super::Semifield;
use crate::error::{Error, Result};

/// Element of the tropical semifield on `n` generators, stored as an exponent
/// vector. Multiplication adds exponents and `oplus` takes the componentwise minimum.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TropMonomial {
    exps: Vec<i64>,
}

/// Sign of a tropical monomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SignClass {
    Positive,
    Negative,
    Zero,
    Mixed,
}

impl TropMonomial {
    pub fn new(exps: Vec<i64>) -> Self {
        Self { exps }
    }

    pub fn one(n: usize) -> Self {
        Self { exps: vec![0; n] }
    }

    pub fn var(n: usize, v: usize) -> Self {
        let mut exps = vec![0; n];
        exps[v] = 1;
        Self { exps }
    }

    pub fn exponents(&self) -> &[i64] {
        &self.exps
    }

    pub fn len(&self) -> usize {
        self.exps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn sign(&self) -> SignClass {
        let pos = self.exps.iter().any(|&e| e > 0);
        let neg = self.exps.iter().any(|&e| e < 0);
        match (pos, neg) {
            (false, false) => SignClass::Zero,
            (true, false) => SignClass::Positive,
            (false, true) => SignClass::Negative,
            (true, true) => SignClass::Mixed,
        }
    }

    fn zip(&self, rhs: &Self, f: impl Fn(i64, i64) -> Option<i64>) -> Result<Self> {
        if self.exps.len() != rhs.exps.len() {
            return Err(Error::DimensionMismatch { expected: self.exps.len(), found: rhs.exps.len() });
        }
        let exps = self
            .exps
            .iter()
            .zip(&rhs.exps)
            .map(|(&a, &b)| f(a, b).ok_or(Error::Overflow))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { exps })
    }
}

impl Semifield for TropMonomial {
    fn one_like(&self) -> Self {
        Self::one(self.exps.len())
    }

    fn mul(&self, rhs: &Self) -> Result<Self> {
        self.zip(rhs, i64::checked_add)
    }

    fn inv(&self) -> Result<Self> {
        let exps = self.exps.iter().map(|e| e.checked_neg().ok_or(Error::Overflow)).collect::<Result<Vec<_>>>()?;
        Ok(Self { exps })
    }

    fn oplus(&self, rhs: &Self) -> Result<Self> {
        self.zip(rhs, |a, b| Some(a.min(b)))
    }

    fn pow(&self, e: i64) -> Result<Self> {
        let exps = self.exps.iter().map(|x| x.checked_mul(e).ok_or(Error::Overflow)).collect::<Result<Vec<_>>>()?;
        Ok(Self { exps })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tropical_ops() {
        let a = TropMonomial::new(vec![1, -2]);
        let b = TropMonomial::new(vec![0, 3]);
        assert_eq!(a.mul(&b).unwrap().exponents(), &[1, 1]);
        assert_eq!(a.oplus(&b).unwrap().exponents(), &[0, -2]);
        assert_eq!(a.inv().unwrap().exponents(), &[-1, 2]);
        assert_eq!(a.pow(-2).unwrap().exponents(), &[-2, 4]);
        assert!(a.mul(&TropMonomial::one(3)).is_err());
    }

    #[test]
    fn sign_classes() {
        assert_eq!(TropMonomial::new(vec![0, 2]).sign(), SignClass::Positive);
        assert_eq!(TropMonomial::new(vec![-1, 0]).sign(), SignClass::Negative);
        assert_eq!(TropMonomial::one(2).sign(), SignClass::Zero);
        assert_eq!(TropMonomial::new(vec![1, -1]).sign(), SignClass::Mixed);
    }
}
