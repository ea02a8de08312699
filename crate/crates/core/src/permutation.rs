//! Permutations of the index set.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// A bijection of `{0, .., n-1}`; `apply(i)` is `nu(i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Self { images: (0..n).collect() }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(Error::InvalidPermutation(format!("{images:?} is not a bijection of 0..{n}")));
            }
            seen[x] = true;
        }
        Ok(Self { images })
    }

    /// Build from disjoint cycles, e.g. `[[0, 1, 2]]` sends 0 to 1, 1 to 2 and 2 to 0.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<usize> = (0..n).collect();
        let mut touched = vec![false; n];
        for cyc in cycles {
            for (a, &x) in cyc.iter().enumerate() {
                if x >= n || touched[x] {
                    return Err(Error::InvalidPermutation(format!("bad cycle {cyc:?}")));
                }
                touched[x] = true;
                images[x] = cyc[(a + 1) % cyc.len()];
            }
        }
        Self::from_images(images)
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// `self ∘ other`: first `other`, then `self`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation { images: other.images.iter().map(|&x| self.images[x]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.len()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x] = i;
        }
        Permutation { images }
    }

    pub fn pow(&self, k: usize) -> Permutation {
        (0..k).fold(Permutation::identity(self.len()), |acc, _| self.compose(&acc))
    }

    /// Smallest `g >= 1` with `self^g = id`.
    pub fn order(&self) -> usize {
        let mut p = self.clone();
        let mut g = 1;
        while !p.is_identity() {
            p = self.compose(&p);
            g += 1;
        }
        g
    }

    /// Length of the orbit of `i`.
    pub fn orbit_len(&self, i: usize) -> usize {
        let mut j = self.apply(i);
        let mut k = 1;
        while j != i {
            j = self.apply(j);
            k += 1;
        }
        k
    }

    pub fn apply_seq(&self, seq: &[usize]) -> Vec<usize> {
        seq.iter().map(|&i| self.apply(i)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycles_order_and_inverse() {
        let rho = Permutation::from_cycles(6, &[vec![0, 1, 2, 3, 4, 5]]).unwrap();
        assert_eq!(rho.order(), 6);
        assert_eq!(rho.pow(2).order(), 3);
        assert!(rho.compose(&rho.inverse()).is_identity());
        assert_eq!(rho.apply_seq(&[0, 5]), vec![1, 0]);
        assert!(Permutation::from_images(vec![0, 0]).is_err());
    }
}
