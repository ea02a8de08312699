use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::One;

use super::Mutable;
use crate::error::{Error, Result};
use crate::matrix::ExchangeMatrix;
use crate::semifield::{Monomial, Poly, SignClass, TropMonomial, DEFAULT_MAX_TERMS};

/// How F-polynomials are carried along a mutation sequence.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FTracking {
    /// Only `B`, `C` and `G`.
    Off,
    /// Exact integer polynomials; each recursion step asserts exact division.
    Exact,
    /// Truncated power series in `y` up to the given total degree. Division
    /// by an F-polynomial uses its series inverse, which exists because the
    /// constant term is 1.
    Truncated(u32),
}

/// Principal-coefficient seed: `(B, C, G, F)` plus the initial matrix and history.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrincipalSeed {
    init_b: ExchangeMatrix,
    b: ExchangeMatrix,
    c: Vec<i64>,
    g: Vec<i64>,
    f: Option<Vec<Poly>>,
    tracking: FTracking,
    history: Vec<usize>,
    max_terms: usize,
}

#[inline]
fn pos(a: i64) -> i64 {
    a.max(0)
}

fn ck_add(a: i64, b: i64) -> Result<i64> {
    a.checked_add(b).ok_or(Error::Overflow)
}

fn ck_mul(a: i64, b: i64) -> Result<i64> {
    a.checked_mul(b).ok_or(Error::Overflow)
}

fn total_degree(m: &Monomial) -> i64 {
    m.iter().map(|(_, e)| e).sum()
}

fn truncate(p: &Poly, deg: u32) -> Poly {
    Poly::from_terms(p.terms().filter(|(m, _)| total_degree(m) <= deg as i64).map(|(m, c)| (m.clone(), c.clone())))
}

fn pow_truncated(p: &Poly, mut e: u32, deg: u32) -> Poly {
    let mut base = truncate(p, deg);
    let mut acc = Poly::one();
    while e > 0 {
        if e & 1 == 1 {
            acc = truncate(&acc.mul(&base), deg);
        }
        e >>= 1;
        if e > 0 {
            base = truncate(&base.mul(&base), deg);
        }
    }
    acc
}

fn series_inverse(p: &Poly, deg: u32) -> Result<Poly> {
    if !p.constant_term().is_one() {
        return Err(Error::InvariantViolation("F-polynomial without constant term 1".into()));
    }
    let rest = p.sub(&Poly::one()).neg();
    let mut acc = Poly::one();
    let mut power = Poly::one();
    for _ in 0..deg {
        power = truncate(&power.mul(&rest), deg);
        if power.is_zero() {
            break;
        }
        acc = acc.add(&power);
    }
    Ok(acc)
}

impl PrincipalSeed {
    /// Initial seed: `C = G = I`, `F_i = 1`.
    pub fn new(b: ExchangeMatrix, tracking: FTracking) -> Self {
        let n = b.n();
        let mut id = vec![0; n * n];
        for i in 0..n {
            id[i * n + i] = 1;
        }
        let f = (tracking != FTracking::Off).then(|| vec![Poly::one(); n]);
        Self {
            init_b: b.clone(),
            b,
            c: id.clone(),
            g: id,
            f,
            tracking,
            history: Vec::new(),
            max_terms: DEFAULT_MAX_TERMS,
        }
    }

    pub fn with_max_terms(mut self, cap: usize) -> Self {
        self.max_terms = cap;
        self
    }

    /// Rebuild from stored parts, validating dimensions.
    pub fn from_parts(
        init_b: ExchangeMatrix,
        b: ExchangeMatrix,
        c: Vec<i64>,
        g: Vec<i64>,
        f: Option<Vec<Poly>>,
        history: Vec<usize>,
    ) -> Result<Self> {
        let n = b.n();
        if init_b.n() != n || c.len() != n * n || g.len() != n * n || f.as_ref().is_some_and(|f| f.len() != n) {
            return Err(Error::DimensionMismatch { expected: n, found: init_b.n() });
        }
        let tracking = if f.is_some() { FTracking::Exact } else { FTracking::Off };
        Ok(Self { init_b, b, c, g, f, tracking, history, max_terms: DEFAULT_MAX_TERMS })
    }

    pub fn n(&self) -> usize {
        self.b.n()
    }

    pub fn b(&self) -> &ExchangeMatrix {
        &self.b
    }

    pub fn initial_b(&self) -> &ExchangeMatrix {
        &self.init_b
    }

    pub fn tracking(&self) -> FTracking {
        self.tracking
    }

    pub fn history(&self) -> &[usize] {
        &self.history
    }

    #[inline]
    pub fn c_entry(&self, i: usize, j: usize) -> i64 {
        self.c[i * self.n() + j]
    }

    #[inline]
    pub fn g_entry(&self, i: usize, j: usize) -> i64 {
        self.g[i * self.n() + j]
    }

    /// The c-vector of index `j` (column `j` of `C`).
    pub fn c_vector(&self, j: usize) -> Vec<i64> {
        (0..self.n()).map(|i| self.c_entry(i, j)).collect()
    }

    pub fn g_vector(&self, j: usize) -> Vec<i64> {
        (0..self.n()).map(|i| self.g_entry(i, j)).collect()
    }

    /// Tropical coefficient `[y_j]_T` as a monomial in the initial coefficients.
    pub fn tropical_y(&self, j: usize) -> TropMonomial {
        TropMonomial::new(self.c_vector(j))
    }

    pub fn c_rows(&self) -> Vec<Vec<i64>> {
        let n = self.n();
        (0..n).map(|i| self.c[i * n..(i + 1) * n].to_vec()).collect()
    }

    pub fn g_rows(&self) -> Vec<Vec<i64>> {
        let n = self.n();
        (0..n).map(|i| self.g[i * n..(i + 1) * n].to_vec()).collect()
    }

    pub fn c_flat(&self) -> &[i64] {
        &self.c
    }

    pub fn f_polys(&self) -> Option<&[Poly]> {
        self.f.as_deref()
    }

    pub fn mutate_in_place(&mut self, k: usize) -> Result<()> {
        self.b.check_index(k)?;
        let n = self.n();
        if let Some(f) = &self.f {
            let ck = self.c_vector(k);
            let plus: Vec<i64> = ck.iter().map(|&x| pos(x)).collect();
            let minus: Vec<i64> = ck.iter().map(|&x| pos(-x)).collect();
            let mut t1 = Poly::monomial(Monomial::from_dense(&plus, 0), BigInt::one());
            let mut t2 = Poly::monomial(Monomial::from_dense(&minus, 0), BigInt::one());
            let cap = self.max_terms;
            let degree = match self.tracking {
                FTracking::Truncated(d) => Some(d),
                _ => None,
            };
            if let Some(d) = degree {
                t1 = truncate(&t1, d);
                t2 = truncate(&t2, d);
            }
            for (j, fj) in f.iter().enumerate() {
                let bjk = self.b.get(j, k);
                if bjk == 0 {
                    continue;
                }
                let e = u32::try_from(bjk.unsigned_abs()).map_err(|_| Error::Overflow)?;
                let target = if bjk > 0 { &mut t1 } else { &mut t2 };
                *target = match degree {
                    Some(d) => truncate(&target.mul(&pow_truncated(fj, e, d)), d),
                    None => target.mul_capped(&fj.pow_capped(e, cap)?, cap)?,
                };
            }
            let sum = t1.add(&t2);
            let next = match self.tracking {
                FTracking::Truncated(d) => truncate(&sum.mul(&series_inverse(&f[k], d)?), d),
                _ => sum.div_exact(&f[k]).ok_or(Error::InexactDivision(k))?,
            };
            self.f.as_mut().unwrap()[k] = next;
        }

        let mut gk = vec![0i64; n];
        for (i, slot) in gk.iter_mut().enumerate() {
            let mut v = -self.g_entry(i, k);
            for p in 0..n {
                v = ck_add(v, ck_mul(self.g_entry(i, p), pos(self.b.get(p, k)))?)?;
                v = ck_add(v, -ck_mul(self.init_b.get(i, p), pos(self.c_entry(p, k)))?)?;
            }
            *slot = v;
        }
        for (i, v) in gk.into_iter().enumerate() {
            self.g[i * n + k] = v;
        }

        let old = self.c.clone();
        for i in 0..n {
            let cik = old[i * n + k];
            for j in 0..n {
                if j == k {
                    self.c[i * n + j] = -cik;
                } else {
                    let bkj = self.b.get(k, j);
                    let delta = ck_add(ck_mul(cik.abs(), bkj)?, ck_mul(cik, bkj.abs())?)? / 2;
                    self.c[i * n + j] = ck_add(old[i * n + j], delta)?;
                }
            }
        }
        self.b.mutate_in_place(k)?;
        self.history.push(k);
        Ok(())
    }

    pub fn mutate(&self, k: usize) -> Result<Self> {
        let mut s = self.clone();
        s.mutate_in_place(k)?;
        Ok(s)
    }

    /// `C^T G`, row-major, in `i128` so that products of `i64` entries cannot overflow.
    pub fn ct_g(&self) -> Vec<i128> {
        let n = self.n();
        let mut out = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                out[a * n + b] = (0..n)
                    .map(|i| i128::from(self.c_entry(i, a)) * i128::from(self.g_entry(i, b)))
                    .fold(0i128, i128::saturating_add);
            }
        }
        out
    }

    pub fn ct_g_is_identity(&self) -> bool {
        let n = self.n();
        self.ct_g().iter().enumerate().all(|(idx, &v)| v == i128::from(idx / n == idx % n))
    }

    /// True if every column `j` of `C` equals `e_i` with `j = nu(i)`; `images[i] = nu(i)`.
    pub fn c_is_permuted_identity(&self, images: &[usize]) -> bool {
        self.first_c_mismatch(images).is_none()
    }

    /// First `i` whose column `nu(i)` of `C` is not `e_i`.
    pub fn first_c_mismatch(&self, images: &[usize]) -> Option<usize> {
        let n = self.n();
        (0..n).find(|&i| (0..n).any(|r| self.c_entry(r, images[i]) != i64::from(r == i)))
    }
}

impl Mutable for PrincipalSeed {
    fn mutate(&self, k: usize) -> Result<Self> {
        PrincipalSeed::mutate(self, k)
    }
}

/// Outcome of the sign-coherence and constant-term checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PositivityReport {
    pub skew_symmetric: bool,
    /// Per column of `C`: nonzero and all entries of one sign.
    pub c_sign_pure: Vec<bool>,
    /// Per row of `G`: entries do not take both signs.
    pub g_row_coherent: Vec<bool>,
    /// Per F-polynomial: constant term equals 1 (`None` if F is not tracked).
    pub f_constant_one: Vec<Option<bool>>,
}

impl PositivityReport {
    pub fn all_pass(&self) -> bool {
        self.c_sign_pure.iter().all(|&x| x)
            && self.g_row_coherent.iter().all(|&x| x)
            && self.f_constant_one.iter().all(|x| x.unwrap_or(true))
    }

    pub fn failures(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (j, ok) in self.c_sign_pure.iter().enumerate() {
            if !ok {
                out.push(format!("c-vector {} is zero or has mixed signs", j + 1));
            }
        }
        for (i, ok) in self.g_row_coherent.iter().enumerate() {
            if !ok {
                out.push(format!("row {} of G is not sign-coherent", i + 1));
            }
        }
        for (i, ok) in self.f_constant_one.iter().enumerate() {
            if *ok == Some(false) {
                out.push(format!("F-polynomial {} has constant term different from 1", i + 1));
            }
        }
        out
    }

    /// Failures are errors for skew-symmetric matrices and warnings otherwise.
    pub fn into_result(self) -> Result<Self> {
        if self.skew_symmetric && !self.all_pass() {
            return Err(Error::InvariantViolation(self.failures().join("; ")));
        }
        Ok(self)
    }
}

pub fn check_positivity_assertions(s: &PrincipalSeed) -> PositivityReport {
    let n = s.n();
    let c_sign_pure = (0..n)
        .map(|j| matches!(s.tropical_y(j).sign(), SignClass::Positive | SignClass::Negative))
        .collect();
    let g_row_coherent = (0..n)
        .map(|i| {
            let row = (0..n).map(|j| s.g_entry(i, j));
            !(row.clone().any(|x| x > 0) && row.into_iter().any(|x| x < 0))
        })
        .collect();
    let f_constant_one = match s.f_polys() {
        Some(f) => f.iter().map(|p| Some(p.constant_term().is_one())).collect(),
        None => vec![None; n],
    };
    PositivityReport { skew_symmetric: s.b.is_skew_symmetric(), c_sign_pure, g_row_coherent, f_constant_one }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2() -> ExchangeMatrix {
        ExchangeMatrix::from_rows(&[vec![0, 1], vec![-1, 0]]).unwrap()
    }

    #[test]
    fn a2_first_step() {
        let s = PrincipalSeed::new(a2(), FTracking::Exact).mutate(0).unwrap();
        assert_eq!(s.c_vector(0), vec![-1, 0]);
        assert_eq!(s.g_vector(0), vec![-1, 1]);
        assert_eq!(s.f_polys().unwrap()[0], Poly::one().add(&Poly::var(0)));
        assert!(s.ct_g_is_identity());
        assert!(check_positivity_assertions(&s).all_pass());
    }

    #[test]
    fn a2_full_period_returns_to_identity() {
        let mut s = PrincipalSeed::new(a2(), FTracking::Exact);
        for _ in 0..5 {
            s.mutate_in_place(0).unwrap();
            s.mutate_in_place(1).unwrap();
        }
        assert!(s.c_is_permuted_identity(&[0, 1]));
        assert!(s.f_polys().unwrap().iter().all(Poly::is_one));
        assert_eq!(s.history().len(), 10);
    }

    #[test]
    fn truncated_tracking_agrees_with_exact_low_degree_part() {
        let b = ExchangeMatrix::from_rows(&[vec![0, 1, 0], vec![-1, 0, 1], vec![0, -1, 0]]).unwrap();
        let seq = [0, 1, 2, 0, 1];
        let mut exact = PrincipalSeed::new(b.clone(), FTracking::Exact);
        let mut trunc = PrincipalSeed::new(b, FTracking::Truncated(2));
        for &k in &seq {
            exact.mutate_in_place(k).unwrap();
            trunc.mutate_in_place(k).unwrap();
        }
        for (e, t) in exact.f_polys().unwrap().iter().zip(trunc.f_polys().unwrap()) {
            assert_eq!(&truncate(e, 2), t);
        }
        assert_eq!(exact.c_rows(), trunc.c_rows());
    }

    #[test]
    fn initial_seed_passes_checks() {
        let s = PrincipalSeed::new(a2(), FTracking::Off);
        let r = check_positivity_assertions(&s);
        assert!(r.all_pass());
        assert_eq!(r.f_constant_one, vec![None, None]);
        assert!(s.clone().mutate(0).unwrap().mutate(0).unwrap().c_rows() == s.c_rows());
    }

    #[test]
    fn zero_constant_term_is_an_invariant_violation() {
        assert!(series_inverse(&Poly::var(0), 2).is_err());
    }
}
