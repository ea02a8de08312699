//! Skew-symmetrizable exchange matrices.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::permutation::Permutation;

/// Integer skew-symmetrizable matrix `B` together with a left symmetrizer `D`,
/// so that `d_i * b_ij == -d_j * b_ji` for all `i, j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExchangeMatrix {
    n: usize,
    b: Vec<i64>,
    d: Vec<i64>,
}

impl ExchangeMatrix {
    pub fn zero(n: usize) -> Self {
        Self { n, b: vec![0; n * n], d: vec![1; n] }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let n = rows.len();
        let mut b = Vec::with_capacity(n * n);
        for r in rows {
            if r.len() != n {
                return Err(Error::DimensionMismatch { expected: n, found: r.len() });
            }
            b.extend_from_slice(r);
        }
        Self::from_flat(n, b)
    }

    pub fn from_flat(n: usize, b: Vec<i64>) -> Result<Self> {
        if b.len() != n * n {
            return Err(Error::DimensionMismatch { expected: n * n, found: b.len() });
        }
        for i in 0..n {
            if b[i * n + i] != 0 {
                return Err(Error::NonzeroDiagonal(i));
            }
        }
        let d = symmetrizer(n, &b)?;
        Ok(Self { n, b, d })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.b[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.b[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        (0..self.n).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn as_flat(&self) -> &[i64] {
        &self.b
    }

    /// Left symmetrizer `d`, normalized to coprime positive entries per connected component.
    pub fn symmetrizer(&self) -> &[i64] {
        &self.d
    }

    /// Right symmetrizer weights `lcm(d) / d_i`.
    pub fn d_tilde(&self) -> Vec<i64> {
        let l = self.d.iter().fold(1i64, |acc, &x| acc.lcm(&x));
        self.d.iter().map(|&x| l / x).collect()
    }

    pub fn is_skew_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| self.get(i, j) == -self.get(j, i)))
    }

    pub fn check_index(&self, k: usize) -> Result<()> {
        if k < self.n {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange { index: k, n: self.n })
        }
    }

    /// Matrix mutation at `k`.
    pub fn mutate(&self, k: usize) -> Result<Self> {
        let mut out = self.clone();
        out.mutate_in_place(k)?;
        Ok(out)
    }

    pub fn mutate_in_place(&mut self, k: usize) -> Result<()> {
        self.check_index(k)?;
        let n = self.n;
        let old = self.b.clone();
        let at = |i: usize, j: usize| old[i * n + j];
        for i in 0..n {
            for j in 0..n {
                self.b[i * n + j] = if i == k || j == k {
                    -at(i, j)
                } else {
                    let (bik, bkj) = (at(i, k), at(k, j));
                    let delta = bik
                        .abs()
                        .checked_mul(bkj)
                        .and_then(|x| x.checked_add(bik.checked_mul(bkj.abs())?))
                        .ok_or(Error::Overflow)?
                        / 2;
                    at(i, j).checked_add(delta).ok_or(Error::Overflow)?
                };
            }
        }
        Ok(())
    }

    /// `nu(B)`: the matrix `B'` with `b'_{nu(i) nu(j)} = b_ij`.
    pub fn relabel(&self, nu: &Permutation) -> Result<Self> {
        if nu.len() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: nu.len() });
        }
        let n = self.n;
        let mut b = vec![0; n * n];
        let mut d = vec![0; n];
        for i in 0..n {
            d[nu.apply(i)] = self.d[i];
            for j in 0..n {
                b[nu.apply(i) * n + nu.apply(j)] = self.get(i, j);
            }
        }
        Ok(Self { n, b, d })
    }

    /// The opposite matrix `-B`.
    pub fn opposite(&self) -> Self {
        Self { n: self.n, b: self.b.iter().map(|x| -x).collect(), d: self.d.clone() }
    }

    /// Principal submatrix on `indices` (in the given order).
    pub fn restrict(&self, indices: &[usize]) -> Result<Self> {
        for &i in indices {
            self.check_index(i)?;
        }
        let m = indices.len();
        let b = indices.iter().flat_map(|&i| indices.iter().map(move |&j| (i, j))).map(|(i, j)| self.get(i, j)).collect();
        Self::from_flat(m, b)
    }

    /// First `(i, j)` where `self` and `other` differ.
    pub fn first_difference(&self, other: &Self) -> Option<(usize, usize)> {
        if self.n != other.n {
            return Some((0, 0));
        }
        (0..self.n).flat_map(|i| (0..self.n).map(move |j| (i, j))).find(|&(i, j)| self.get(i, j) != other.get(i, j))
    }
}

fn symmetrizer(n: usize, b: &[i64]) -> Result<Vec<i64>> {
    // d as reduced fractions, propagated along nonzero entries.
    let mut frac: Vec<Option<(i128, i128)>> = vec![None; n];
    let mut d = vec![0i64; n];
    for root in 0..n {
        if frac[root].is_some() {
            continue;
        }
        frac[root] = Some((1, 1));
        let mut comp = vec![root];
        let mut queue = VecDeque::from([root]);
        while let Some(i) = queue.pop_front() {
            let (pn, pd) = frac[i].unwrap();
            for j in 0..n {
                let (bij, bji) = (b[i * n + j] as i128, b[j * n + i] as i128);
                if bij == 0 && bji == 0 {
                    continue;
                }
                if bij == 0 || bji == 0 || bij.signum() == bji.signum() {
                    return Err(Error::NotSkewSymmetrizable { i, j });
                }
                // d_j = d_i * b_ij / (-b_ji)
                let (mut qn, mut qd) = (pn.checked_mul(bij).ok_or(Error::Overflow)?, pd.checked_mul(-bji).ok_or(Error::Overflow)?);
                let g = qn.gcd(&qd) * qd.signum();
                qn /= g;
                qd /= g;
                match frac[j] {
                    None => {
                        frac[j] = Some((qn, qd));
                        comp.push(j);
                        queue.push_back(j);
                    }
                    Some(existing) if existing == (qn, qd) => {}
                    Some(_) => return Err(Error::NotSkewSymmetrizable { i, j }),
                }
            }
        }
        let l = comp.iter().fold(1i128, |acc, &i| acc.lcm(&frac[i].unwrap().1));
        let ints: Vec<i128> = comp.iter().map(|&i| frac[i].unwrap().0 * (l / frac[i].unwrap().1)).collect();
        let g = ints.iter().fold(0i128, |acc, x| acc.gcd(x));
        for (&i, v) in comp.iter().zip(ints) {
            d[i] = i64::try_from(v / g).map_err(|_| Error::Overflow)?;
        }
    }
    Ok(d)
}
