use alloc::vec::Vec;
use core::cmp::Ordering;

/// Sparse Laurent monomial: sorted `(variable, exponent)` pairs with no zero exponents.
///
/// Ordering is lexicographic on the dense exponent vector (absent variables count as
/// exponent 0), scanning variables in increasing index. This is a group order on
/// `Z^n`, so it is compatible with multiplication and usable as a leading-term order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<(usize, i64)>,
}

impl Monomial {
    pub fn one() -> Self {
        Self { exps: Vec::new() }
    }

    pub fn var(v: usize) -> Self {
        Self { exps: alloc::vec![(v, 1)] }
    }

    pub fn from_pairs<I: IntoIterator<Item = (usize, i64)>>(pairs: I) -> Self {
        let mut exps: Vec<(usize, i64)> = Vec::new();
        let mut raw: Vec<(usize, i64)> = pairs.into_iter().collect();
        raw.sort_by_key(|&(v, _)| v);
        for (v, e) in raw {
            match exps.last_mut() {
                Some((lv, le)) if *lv == v => *le += e,
                _ => exps.push((v, e)),
            }
        }
        exps.retain(|&(_, e)| e != 0);
        Self { exps }
    }

    /// Dense exponent vector `e` read as `prod x_{offset+i}^{e_i}`.
    pub fn from_dense(e: &[i64], offset: usize) -> Self {
        Self {
            exps: e
                .iter()
                .enumerate()
                .filter(|(_, &x)| x != 0)
                .map(|(i, &x)| (i + offset, x))
                .collect(),
        }
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn exponent(&self, v: usize) -> i64 {
        self.exps
            .binary_search_by_key(&v, |&(x, _)| x)
            .map(|i| self.exps[i].1)
            .unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, i64)> + '_ {
        self.exps.iter().copied()
    }

    pub fn mul(&self, rhs: &Monomial) -> Monomial {
        Monomial { exps: merge(&self.exps, &rhs.exps, |a, b| a + b) }
    }

    pub fn inv(&self) -> Monomial {
        Monomial { exps: self.exps.iter().map(|&(v, e)| (v, -e)).collect() }
    }

    pub fn pow(&self, k: i64) -> Monomial {
        if k == 0 {
            return Monomial::one();
        }
        Monomial { exps: self.exps.iter().map(|&(v, e)| (v, e * k)).collect() }
    }

    /// Componentwise minimum, absent variables counting as 0.
    pub fn meet(&self, rhs: &Monomial) -> Monomial {
        Monomial { exps: merge(&self.exps, &rhs.exps, i64::min) }
    }

    /// Componentwise maximum, absent variables counting as 0.
    pub fn join(&self, rhs: &Monomial) -> Monomial {
        Monomial { exps: merge(&self.exps, &rhs.exps, i64::max) }
    }

    /// Substitute each variable by a monomial.
    pub fn substitute(&self, images: &dyn Fn(usize) -> Monomial) -> Monomial {
        self.exps
            .iter()
            .fold(Monomial::one(), |acc, &(v, e)| acc.mul(&images(v).pow(e)))
    }

    pub fn to_dense(&self, n: usize, offset: usize) -> Vec<i64> {
        let mut out = alloc::vec![0; n];
        for &(v, e) in &self.exps {
            if v >= offset && v < offset + n {
                out[v - offset] = e;
            }
        }
        out
    }

    pub fn max_var(&self) -> Option<usize> {
        self.exps.last().map(|&(v, _)| v)
    }
}

fn merge(a: &[(usize, i64)], b: &[(usize, i64)], f: impl Fn(i64, i64) -> i64) -> Vec<(usize, i64)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let (v, e) = if j >= b.len() || (i < a.len() && a[i].0 < b[j].0) {
            let r = (a[i].0, f(a[i].1, 0));
            i += 1;
            r
        } else if i >= a.len() || b[j].0 < a[i].0 {
            let r = (b[j].0, f(0, b[j].1));
            j += 1;
            r
        } else {
            let r = (a[i].0, f(a[i].1, b[j].1));
            i += 1;
            j += 1;
            r
        };
        if e != 0 {
            out.push((v, e));
        }
    }
    out
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b) = (&self.exps, &other.exps);
        let (mut i, mut j) = (0, 0);
        loop {
            match (a.get(i), b.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(&(_, e)), None) => return e.cmp(&0),
                (None, Some(&(_, e))) => return 0.cmp(&e),
                (Some(&(va, ea)), Some(&(vb, eb))) => {
                    if va < vb {
                        return ea.cmp(&0);
                    } else if vb < va {
                        return 0.cmp(&eb);
                    } else if ea != eb {
                        return ea.cmp(&eb);
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn merge_drops_zero_entries() {
        let a = Monomial::from_pairs([(0, 2), (3, -1)]);
        let b = Monomial::from_pairs([(0, -2), (1, 4)]);
        assert_eq!(a.mul(&b), Monomial::from_pairs([(1, 4), (3, -1)]));
        assert!(a.mul(&a.inv()).is_one());
    }

    #[test]
    fn dense_lex_order() {
        let y0 = Monomial::var(0);
        let y1 = Monomial::var(1);
        assert!(y0 > y1);
        assert!(y1 > Monomial::one());
        assert!(y0.inv() < Monomial::one());
        // compatible with multiplication
        let m = Monomial::from_pairs([(1, -3), (2, 5)]);
        assert!(y0.mul(&m) > y1.mul(&m));
    }

    #[test]
    fn min_treats_absent_as_zero() {
        let a = Monomial::from_pairs([(0, 1)]);
        let b = Monomial::from_pairs([(0, 1), (1, 1)]);
        assert_eq!(a.meet(&b), a);
        let c = Monomial::from_pairs([(0, -1), (1, 2)]);
        assert_eq!(Monomial::one().meet(&c), Monomial::from_pairs([(0, -1)]));
    }
}
